//! Mutation of skew-symmetrizable matrices and quivers, mutation sequences,
//! and a framed-matrix breadth-first search for reddening sequences.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::diagram::ClosedStringId;
use crate::exchange::{ExchangeMatrix, UsualQuiver};
use crate::{Error, Result};

/// An ordered list of mutation directions.
///
/// Convention: the sequence is written as function composition, so the
/// LAST direction in the list is applied FIRST. `[a, b, c]` means
/// `μ_a ∘ μ_b ∘ μ_c`: mutate at `c`, then `b`, then `a`. `apply_seq` folds
/// accordingly; since each mutation is an involution, the inverse of a
/// sequence is the reversed list.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MutationSeq {
    pub directions: Vec<ClosedStringId>,
}

impl MutationSeq {
    pub fn new(directions: Vec<ClosedStringId>) -> Self {
        MutationSeq { directions }
    }

    pub fn empty() -> Self {
        MutationSeq::default()
    }

    /// Directions in the order they are applied (right to left).
    pub fn application_order(&self) -> impl Iterator<Item = ClosedStringId> + '_ {
        self.directions.iter().rev().copied()
    }

    /// The inverse sequence.
    pub fn reversed(&self) -> MutationSeq {
        MutationSeq {
            directions: self.directions.iter().rev().copied().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }
}

/// Matrix mutation in direction `k`: negate row and column `k`, and add
/// `sgn(b_ik) max(b_ik b_kj, 0)` elsewhere.
pub fn mutate(matrix: &ExchangeMatrix, k: ClosedStringId) -> Result<ExchangeMatrix> {
    let ki = matrix.index_of(k)?;
    let n = matrix.len();
    let mut out = matrix.clone();
    for i in 0..n {
        for j in 0..n {
            let v = if i == ki || j == ki {
                -matrix.entry_at(i, j)
            } else {
                let bik = matrix.entry_at(i, ki);
                let bkj = matrix.entry_at(ki, j);
                matrix.entry_at(i, j) + bik.signum() * (bik * bkj).max(0)
            };
            out.set_at(i, j, v);
        }
    }
    Ok(out)
}

/// Applies a mutation sequence per the `MutationSeq` convention (rightmost
/// direction first).
pub fn apply_seq(matrix: &ExchangeMatrix, seq: &MutationSeq) -> Result<ExchangeMatrix> {
    let mut m = matrix.clone();
    for k in seq.application_order() {
        m = mutate(&m, k)?;
    }
    Ok(m)
}

/// Quiver mutation at `k`: add composite arrows through `k`, reverse the
/// arrows at `k`, then cancel 2-cycles.
pub fn mutate_quiver(quiver: &UsualQuiver, k: ClosedStringId) -> Result<UsualQuiver> {
    if !quiver.vertices.contains(&k) {
        return Err(Error::UnknownVertex(k));
    }
    let q = add_composites(quiver, k);
    let q = reverse_at(&q, k);
    Ok(cancel_two_cycles(&q))
}

fn add_composites(quiver: &UsualQuiver, k: ClosedStringId) -> UsualQuiver {
    let mut arrows = quiver.arrows.clone();
    for (&(i, mid1), &a) in &quiver.arrows {
        if mid1 != k {
            continue;
        }
        for (&(mid2, j), &b) in &quiver.arrows {
            if mid2 != k {
                continue;
            }
            *arrows.entry((i, j)).or_insert(0) += a * b;
        }
    }
    UsualQuiver {
        vertices: quiver.vertices.clone(),
        arrows,
    }
}

fn reverse_at(quiver: &UsualQuiver, k: ClosedStringId) -> UsualQuiver {
    let mut arrows = std::collections::BTreeMap::new();
    for (&(from, to), &q) in &quiver.arrows {
        let key = if from == k || to == k { (to, from) } else { (from, to) };
        *arrows.entry(key).or_insert(0) += q;
    }
    UsualQuiver {
        vertices: quiver.vertices.clone(),
        arrows,
    }
}

fn cancel_two_cycles(quiver: &UsualQuiver) -> UsualQuiver {
    let mut arrows = std::collections::BTreeMap::new();
    for (&(from, to), &q) in &quiver.arrows {
        if from == to {
            continue; // loops cannot arise here, but never keep one
        }
        let opposite = quiver.arrows.get(&(to, from)).copied().unwrap_or(0);
        let net = q - opposite;
        if net > 0 {
            arrows.insert((from, to), net);
        }
    }
    UsualQuiver {
        vertices: quiver.vertices.clone(),
        arrows,
    }
}

/// An exchange matrix extended by coefficient rows, mutated alongside it.
/// Starts from the identity; row `r` of `c` tracks the frozen copy of
/// vertex `r`, so the c-vectors are the columns.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FramedMatrix {
    labels: Vec<ClosedStringId>,
    principal: Vec<i64>,
    c: Vec<i64>,
}

impl FramedMatrix {
    pub fn new(matrix: &ExchangeMatrix) -> Self {
        let n = matrix.len();
        let mut c = vec![0i64; n * n];
        for i in 0..n {
            c[i * n + i] = 1;
        }
        FramedMatrix {
            labels: matrix.labels().to_vec(),
            principal: matrix.rows().into_iter().flatten().collect(),
            c,
        }
    }

    pub fn labels(&self) -> &[ClosedStringId] {
        &self.labels
    }

    pub fn principal(&self) -> ExchangeMatrix {
        ExchangeMatrix::from_parts(self.labels.clone(), self.principal.clone())
    }

    pub fn c_entry(&self, i: usize, j: usize) -> i64 {
        self.c[i * self.labels.len() + j]
    }

    /// Mutates principal and coefficient rows by the one rule.
    pub fn mutate(&self, k: ClosedStringId) -> Result<FramedMatrix> {
        let ki = self
            .labels
            .iter()
            .position(|l| *l == k)
            .ok_or(Error::UnknownVertex(k))?;
        let n = self.labels.len();
        let mut principal = vec![0i64; n * n];
        let mut c = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                principal[i * n + j] = if i == ki || j == ki {
                    -self.principal[i * n + j]
                } else {
                    let bik = self.principal[i * n + ki];
                    let bkj = self.principal[ki * n + j];
                    self.principal[i * n + j] + bik.signum() * (bik * bkj).max(0)
                };
                c[i * n + j] = if j == ki {
                    -self.c[i * n + j]
                } else {
                    let cik = self.c[i * n + ki];
                    let bkj = self.principal[ki * n + j];
                    self.c[i * n + j] + cik.signum() * (cik * bkj).max(0)
                };
            }
        }
        Ok(FramedMatrix {
            labels: self.labels.clone(),
            principal,
            c,
        })
    }

    /// The first c-vector (column) mixing strict signs, if any.
    pub fn incoherent_column(&self) -> Option<ClosedStringId> {
        let n = self.labels.len();
        (0..n)
            .find(|&j| {
                let col: Vec<i64> = (0..n).map(|i| self.c_entry(i, j)).collect();
                !(col.iter().all(|&v| v >= 0) || col.iter().all(|&v| v <= 0))
            })
            .map(|j| self.labels[j])
    }

    /// Reddening criterion: every entry of the c-matrix is non-positive.
    pub fn is_reddened(&self) -> bool {
        self.c.iter().all(|&v| v <= 0)
    }
}

/// Default vertex-count guard for `search_reddening`.
pub const REDDENING_GUARD: usize = 6;

/// Breadth-first search for a reddening sequence of at most `max_depth`
/// mutations, deduplicating framed states.
///
/// Returns the lexicographically least sequence among the shortest ones,
/// `Ok(None)` when the whole reachable state space was exhausted without
/// one, and `DepthExceeded` when the depth limit cut the search off. Set
/// `allow_large` to lift the vertex-count guard. Columns of every explored
/// c-matrix are checked for sign coherence.
pub fn search_reddening(
    matrix: &ExchangeMatrix,
    max_depth: usize,
    allow_large: bool,
) -> Result<Option<MutationSeq>> {
    if matrix.len() > REDDENING_GUARD && !allow_large {
        return Err(Error::SearchTooLarge {
            n: matrix.len(),
            limit: REDDENING_GUARD,
        });
    }
    let start = FramedMatrix::new(matrix);
    if let Some(col) = start.incoherent_column() {
        return Err(Error::SignCoherenceViolation(col));
    }
    if start.is_reddened() {
        return Ok(Some(MutationSeq::empty()));
    }
    let labels = start.labels().to_vec();
    let mut seen: HashMap<FramedMatrix, ()> = HashMap::new();
    seen.insert(start.clone(), ());
    let mut queue: VecDeque<(FramedMatrix, Vec<ClosedStringId>)> = VecDeque::new();
    queue.push_back((start, Vec::new()));
    let mut truncated = false;
    while let Some((state, path)) = queue.pop_front() {
        if path.len() == max_depth {
            truncated = true;
            continue;
        }
        for &k in &labels {
            let next = state.mutate(k)?;
            if seen.contains_key(&next) {
                continue;
            }
            if let Some(col) = next.incoherent_column() {
                return Err(Error::SignCoherenceViolation(col));
            }
            let mut next_path = path.clone();
            next_path.push(k);
            if next.is_reddened() {
                // Applied order k_1..k_d; written in composition order.
                next_path.reverse();
                return Ok(Some(MutationSeq::new(next_path)));
            }
            seen.insert(next.clone(), ());
            queue.push_back((next, next_path));
        }
    }
    if truncated {
        Err(Error::DepthExceeded(max_depth))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exchange::{exchange_matrix, usual_quiver};
    use crate::sample;
    use crate::word::ShuffleWord;
    use crate::CartanMatrix;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn id(s: &str) -> ClosedStringId {
        s.parse().unwrap()
    }

    fn gls_word() -> ShuffleWord {
        let a = CartanMatrix::new(vec![vec![2, -3, -2], vec![-3, 2, -2], vec![-2, -2, 2]]).unwrap();
        ShuffleWord::bottom(&[1, 2, 1, 3, 1, 2, 1, 2, 3, 2], a).unwrap()
    }

    #[test]
    fn mutation_is_involutive() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let m = sample::random_skew_symmetrizable(&mut rng, 4, 3);
            for &k in m.labels() {
                assert_eq!(mutate(&mutate(&m, k).unwrap(), k).unwrap(), m);
            }
        }
    }

    #[test]
    fn zero_matrix_is_fixed() {
        let labels: Vec<ClosedStringId> = (1..=3).map(|i| ClosedStringId::new(1, i)).collect();
        let zero = ExchangeMatrix::from_parts(labels.clone(), vec![0; 9]);
        for &k in &labels {
            assert_eq!(mutate(&zero, k).unwrap(), zero);
        }
    }

    #[test]
    fn unknown_vertex_is_reported() {
        let m = ExchangeMatrix::from_parts(vec![id("1:1")], vec![0]);
        assert_eq!(
            mutate(&m, id("2:1")).unwrap_err(),
            Error::UnknownVertex(id("2:1"))
        );
    }

    #[test]
    fn mutation_touches_only_connected_entries() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let m = sample::random_skew_symmetrizable(&mut rng, 4, 3);
            for &k in m.labels() {
                let ki = m.index_of(k).unwrap();
                let mm = mutate(&m, k).unwrap();
                for i in 0..m.len() {
                    for j in 0..m.len() {
                        if i == ki || j == ki {
                            continue;
                        }
                        if m.entry_at(i, ki) * m.entry_at(ki, j) <= 0 {
                            assert_eq!(mm.entry_at(i, j), m.entry_at(i, j));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn source_column_after_composed_sequence() {
        let b = exchange_matrix(&gls_word()).unwrap();
        // Apply 1:3 first, then 1:2; afterwards 1:1 is a source.
        let seq = MutationSeq::new(vec![id("1:2"), id("1:3")]);
        let b2 = apply_seq(&b, &seq).unwrap();
        let manual = mutate(&mutate(&b, id("1:3")).unwrap(), id("1:2")).unwrap();
        assert_eq!(b2, manual);
        let col = b2.column_of(id("1:1")).unwrap();
        assert!(col.values().all(|&v| v >= 0));
        assert!(col.values().any(|&v| v > 0));
    }

    #[test]
    fn apply_seq_inverts_with_reversed() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..50 {
            let m = sample::random_skew_symmetrizable(&mut rng, 4, 3);
            if m.is_empty() {
                continue;
            }
            let seq = sample::random_sequence(&mut rng, m.labels(), 6);
            let there = apply_seq(&m, &seq).unwrap();
            assert_eq!(apply_seq(&there, &seq.reversed()).unwrap(), m);
        }
        let empty = ExchangeMatrix::empty();
        assert_eq!(apply_seq(&empty, &MutationSeq::empty()).unwrap(), empty);
    }

    #[test]
    fn quiver_mutation_three_step_worked_example() {
        // 3-cycle 3 -> 1 -> 2 -> 3, mutated at 1.
        let v = |k: usize| ClosedStringId::new(k, 1);
        let mut arrows = std::collections::BTreeMap::new();
        arrows.insert((v(3), v(1)), 1);
        arrows.insert((v(1), v(2)), 1);
        arrows.insert((v(2), v(3)), 1);
        let q = UsualQuiver {
            vertices: vec![v(1), v(2), v(3)],
            arrows,
        };

        let staged = add_composites(&q, v(1));
        assert_eq!(staged.multiplicity(v(3), v(2)), 1);
        assert_eq!(staged.arrows.len(), 4);

        let reversed = reverse_at(&staged, v(1));
        assert_eq!(reversed.multiplicity(v(1), v(3)), 1);
        assert_eq!(reversed.multiplicity(v(2), v(1)), 1);
        assert_eq!(reversed.multiplicity(v(2), v(3)), 1);
        assert_eq!(reversed.multiplicity(v(3), v(2)), 1);

        let done = cancel_two_cycles(&reversed);
        assert_eq!(done, mutate_quiver(&q, v(1)).unwrap());
        assert_eq!(done.arrows.len(), 2);
        assert_eq!(done.multiplicity(v(1), v(3)), 1);
        assert_eq!(done.multiplicity(v(2), v(1)), 1);
    }

    #[test]
    fn quiver_and_matrix_mutation_commute() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..200 {
            let m = sample::random_skew_symmetric(&mut rng, 4, 3);
            let q = usual_quiver(&m).unwrap();
            for &k in m.labels() {
                let via_matrix = usual_quiver(&mutate(&m, k).unwrap()).unwrap();
                let via_quiver = mutate_quiver(&q, k).unwrap();
                assert_eq!(via_matrix, via_quiver);
            }
        }
    }

    #[test]
    fn single_vertex_quiver_is_fixed() {
        let q = UsualQuiver {
            vertices: vec![id("1:1")],
            arrows: std::collections::BTreeMap::new(),
        };
        assert_eq!(mutate_quiver(&q, id("1:1")).unwrap(), q);
    }

    #[test]
    fn framed_one_vertex_reddens_in_one_step() {
        let m = ExchangeMatrix::from_parts(vec![id("1:1")], vec![0]);
        let seq = search_reddening(&m, 4, false).unwrap().unwrap();
        assert_eq!(seq.directions, vec![id("1:1")]);
    }

    #[test]
    fn acyclic_two_vertex_reddens_in_two() {
        // One arrow 1:1 -> 1:2, i.e. b_{(1:2),(1:1)} = 1.
        let m = ExchangeMatrix::from_parts(vec![id("1:1"), id("1:2")], vec![0, -1, 1, 0]);
        let seq = search_reddening(&m, 4, false).unwrap().unwrap();
        assert_eq!(seq.len(), 2);
        let mut f = FramedMatrix::new(&m);
        for k in seq.application_order() {
            f = f.mutate(k).unwrap();
        }
        assert!(f.is_reddened());
    }

    #[test]
    fn markov_matrix_exceeds_depth() {
        let labels: Vec<ClosedStringId> = (1..=3).map(|i| ClosedStringId::new(1, i)).collect();
        let m = ExchangeMatrix::from_parts(labels, vec![0, 2, -2, -2, 0, 2, 2, -2, 0]);
        assert_eq!(
            search_reddening(&m, 3, false).unwrap_err(),
            Error::DepthExceeded(3)
        );
    }

    #[test]
    fn guard_rejects_large_matrices() {
        let labels: Vec<ClosedStringId> = (1..=7).map(|i| ClosedStringId::new(1, i)).collect();
        let m = ExchangeMatrix::from_parts(labels, vec![0; 49]);
        assert!(matches!(
            search_reddening(&m, 2, false),
            Err(Error::SearchTooLarge { n: 7, limit: 6 })
        ));
        // Overriding the guard: the zero matrix reddens by negating every
        // c-column once.
        let seq = search_reddening(&m, 8, true).unwrap().unwrap();
        assert_eq!(seq.len(), 7);
    }

    #[test]
    fn mutation_preserves_the_symmetrizer_diagonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for _ in 0..200 {
            let word = sample::random_word(&mut rng, 4, 10);
            let m = exchange_matrix(&word).unwrap();
            if m.is_empty() {
                continue;
            }
            let s = crate::exchange::skew_symmetrizer(&m, word.cartan()).unwrap();
            let seq = sample::random_sequence(&mut rng, m.labels(), 4);
            let mm = apply_seq(&m, &seq).unwrap();
            for i in 0..mm.len() {
                for j in 0..mm.len() {
                    assert_eq!(s[i] * mm.entry_at(i, j), -s[j] * mm.entry_at(j, i));
                }
            }
        }
    }
}
