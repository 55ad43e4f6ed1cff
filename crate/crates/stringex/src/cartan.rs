//! Symmetrizable generalized Cartan matrices.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A symmetrizable generalized Cartan matrix together with the minimal
/// positive integer symmetrizer (componentwise gcd 1 over the off-diagonal
/// support graph).
///
/// Levels are 1-based throughout: `a(i, j)` and `s(i)` take indices in
/// `[1, n]`, matching the serialized form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanMatrix {
    n: usize,
    entries: Vec<Vec<i64>>,
    symmetrizer: Vec<i64>,
}

impl CartanMatrix {
    /// Validates a square integer grid as a generalized Cartan matrix and
    /// computes its minimal symmetrizer by propagating the ratio constraints
    /// `s_i * a_ij = s_j * a_ji` over the support graph.
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self> {
        let n = entries.len();
        if n == 0 {
            return Err(Error::NotGeneralizedCartan("empty grid".into()));
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotGeneralizedCartan(format!(
                    "row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
            for (j, &a) in row.iter().enumerate() {
                if i == j && a != 2 {
                    return Err(Error::NotGeneralizedCartan(format!(
                        "diagonal entry a_{}{} = {a}, expected 2",
                        i + 1,
                        j + 1
                    )));
                }
                if i != j && a > 0 {
                    return Err(Error::NotGeneralizedCartan(format!(
                        "off-diagonal entry a_{}{} = {a} is positive",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if (entries[i][j] == 0) != (entries[j][i] == 0) {
                    return Err(Error::NotGeneralizedCartan(format!(
                        "a_{}{} = {} but a_{}{} = {}",
                        i + 1,
                        j + 1,
                        entries[i][j],
                        j + 1,
                        i + 1,
                        entries[j][i]
                    )));
                }
            }
        }
        let symmetrizer = minimal_symmetrizer(&entries)?;
        Ok(CartanMatrix {
            n,
            entries,
            symmetrizer,
        })
    }

    /// Rank of the matrix.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry `a_ij`, 1-based.
    pub fn a(&self, i: usize, j: usize) -> i64 {
        assert!(i >= 1 && i <= self.n && j >= 1 && j <= self.n);
        self.entries[i - 1][j - 1]
    }

    /// Symmetrizer value `s_i`, 1-based.
    pub fn s(&self, i: usize) -> i64 {
        assert!(i >= 1 && i <= self.n);
        self.symmetrizer[i - 1]
    }

    /// The full symmetrizer diagonal `(s_1, ..., s_n)`.
    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    /// The raw entry grid.
    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    /// True when the matrix equals its transpose.
    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.entries[i][j] == self.entries[j][i]))
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

/// Componentwise-minimal positive integers with `s_i * a_ij = s_j * a_ji`.
///
/// Walks each connected component of the off-diagonal support graph from a
/// root with `s = 1`, rescaling the whole component whenever a propagation
/// step would need a fraction, and divides out the component gcd at the end.
/// Cross-checks every edge; an inconsistent cycle means the matrix is not
/// symmetrizable.
fn minimal_symmetrizer(entries: &[Vec<i64>]) -> Result<Vec<i64>> {
    let n = entries.len();
    let mut s = vec![0i64; n];
    let mut component = vec![usize::MAX; n];

    for root in 0..n {
        if component[root] != usize::MAX {
            continue;
        }
        let comp_id = root;
        s[root] = 1;
        component[root] = comp_id;
        let mut queue = vec![root];
        let mut members = vec![root];
        while let Some(i) = queue.pop() {
            for j in 0..n {
                if j == i || entries[i][j] == 0 {
                    continue;
                }
                // s_j = s_i * a_ij / a_ji; scale the component if inexact.
                let num = s[i] * entries[i][j];
                let den = entries[j][i];
                if component[j] == usize::MAX {
                    let g = gcd(num, den);
                    let scale = (den / g).abs();
                    if scale > 1 {
                        for &k in &members {
                            s[k] *= scale;
                        }
                    }
                    s[j] = (s[i] * entries[i][j]) / entries[j][i];
                    debug_assert!(s[j] > 0);
                    component[j] = comp_id;
                    members.push(j);
                    queue.push(j);
                } else if s[i] * entries[i][j] != s[j] * entries[j][i] {
                    return Err(Error::NotSymmetrizable(format!(
                        "cycle through entries a_{}{} and a_{}{} is inconsistent",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        let g = members.iter().fold(0, |acc, &k| gcd(acc, s[k]));
        if g > 1 {
            for &k in &members {
                s[k] /= g;
            }
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_two_symmetric() {
        let a = CartanMatrix::new(vec![vec![2, -1], vec![-1, 2]]).unwrap();
        assert_eq!(a.symmetrizer(), &[1, 1]);
    }

    #[test]
    fn rank_two_asymmetric() {
        let a = CartanMatrix::new(vec![vec![2, -6], vec![-3, 2]]).unwrap();
        assert_eq!(a.symmetrizer(), &[1, 2]);
    }

    #[test]
    fn zero_asymmetry_rejected() {
        let err = CartanMatrix::new(vec![vec![2, -1], vec![0, 2]]).unwrap_err();
        assert!(matches!(err, Error::NotGeneralizedCartan(_)));
    }

    #[test]
    fn bad_diagonal_rejected() {
        let err = CartanMatrix::new(vec![vec![1, -1], vec![-1, 2]]).unwrap_err();
        assert!(matches!(err, Error::NotGeneralizedCartan(_)));
    }

    #[test]
    fn positive_off_diagonal_rejected() {
        let err = CartanMatrix::new(vec![vec![2, 1], vec![-1, 2]]).unwrap_err();
        assert!(matches!(err, Error::NotGeneralizedCartan(_)));
    }

    #[test]
    fn inconsistent_cycle_rejected() {
        // s2 = s1, s3 = s1/2 along the tree, but the 2-3 edge forces s2 = s3.
        let err = CartanMatrix::new(vec![
            vec![2, -1, -1],
            vec![-1, 2, -1],
            vec![-2, -1, 2],
        ])
        .unwrap_err();
        assert!(matches!(err, Error::NotSymmetrizable(_)));
    }

    #[test]
    fn rank_three_with_zero_pair() {
        let a = CartanMatrix::new(vec![
            vec![2, -6, -8],
            vec![-3, 2, 0],
            vec![-4, 0, 2],
        ])
        .unwrap();
        assert_eq!(a.symmetrizer(), &[1, 2, 2]);
    }

    #[test]
    fn disconnected_components_each_minimal() {
        let a = CartanMatrix::new(vec![
            vec![2, -6, 0],
            vec![-3, 2, 0],
            vec![0, 0, 2],
        ])
        .unwrap();
        assert_eq!(a.symmetrizer(), &[1, 2, 1]);
    }

    #[test]
    fn symmetrizer_makes_product_symmetric() {
        let grids = [
            vec![vec![2, -5, -7], vec![-5, 2, -9], vec![-7, -9, 2]],
            vec![vec![2, -6, -8], vec![-3, 2, -10], vec![-4, -10, 2]],
            vec![vec![2, -2, -3], vec![-2, 2, -4], vec![-3, -4, 2]],
        ];
        for grid in grids {
            let a = CartanMatrix::new(grid).unwrap();
            let n = a.n();
            for i in 1..=n {
                for j in 1..=n {
                    assert_eq!(a.s(i) * a.a(i, j), a.s(j) * a.a(j, i), "at ({i}, {j})");
                }
            }
        }
    }
}
