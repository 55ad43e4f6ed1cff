//! Exchange matrices of string diagrams, with skew-symmetrizer, coloured-
//! quiver, and usual-quiver views.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::diagram::{build_diagram, ClosedStringId, Node, StringDiagram};
use crate::word::ShuffleWord;
use crate::{CartanMatrix, Error, Result};

/// Integer skew-symmetrizable matrix indexed by closed-string labels.
///
/// Freshly built matrices carry their labels in the `⪯` order (level, then
/// rank); `permuted` produces an explicitly reordered view.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExchangeMatrix {
    labels: Vec<ClosedStringId>,
    entries: Vec<i64>,
}

impl ExchangeMatrix {
    /// The empty matrix over no vertices.
    pub fn empty() -> Self {
        ExchangeMatrix {
            labels: Vec::new(),
            entries: Vec::new(),
        }
    }

    pub fn from_parts(labels: Vec<ClosedStringId>, entries: Vec<i64>) -> Self {
        assert_eq!(entries.len(), labels.len() * labels.len());
        ExchangeMatrix { labels, entries }
    }

    pub fn labels(&self) -> &[ClosedStringId] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn index_of(&self, label: ClosedStringId) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| *l == label)
            .ok_or(Error::UnknownVertex(label))
    }

    /// Entry by position, row-major.
    pub fn entry_at(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.labels.len() + j]
    }

    pub(crate) fn set_at(&mut self, i: usize, j: usize, v: i64) {
        let n = self.labels.len();
        self.entries[i * n + j] = v;
    }

    /// Entry by label pair.
    pub fn entry(&self, x: ClosedStringId, z: ClosedStringId) -> Result<i64> {
        Ok(self.entry_at(self.index_of(x)?, self.index_of(z)?))
    }

    /// Rows as nested vectors, row-major in label order.
    pub fn rows(&self) -> Vec<Vec<i64>> {
        let n = self.labels.len();
        (0..n)
            .map(|i| (0..n).map(|j| self.entry_at(i, j)).collect())
            .collect()
    }

    /// Column of `v` as a label-keyed map, diagonal excluded.
    pub fn column_of(&self, v: ClosedStringId) -> Result<BTreeMap<ClosedStringId, i64>> {
        let vi = self.index_of(v)?;
        Ok(self
            .labels
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != vi)
            .map(|(i, l)| (*l, self.entry_at(i, vi)))
            .collect())
    }

    pub fn is_skew_symmetric(&self) -> bool {
        let n = self.labels.len();
        (0..n).all(|i| (i..n).all(|j| self.entry_at(i, j) == -self.entry_at(j, i)))
    }

    /// The same matrix with rows and columns listed in `order`, which must
    /// be a permutation of the labels.
    pub fn permuted(&self, order: &[ClosedStringId]) -> Result<Self> {
        if order.len() != self.labels.len() {
            return Err(Error::LengthMismatch(format!(
                "permutation of length {} for {} labels",
                order.len(),
                self.labels.len()
            )));
        }
        let perm: Vec<usize> = order
            .iter()
            .map(|l| self.index_of(*l))
            .collect::<Result<_>>()?;
        let n = order.len();
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[i * n + j] = self.entry_at(perm[i], perm[j]);
            }
        }
        Ok(ExchangeMatrix {
            labels: order.to_vec(),
            entries,
        })
    }

    /// Renames labels through `map` (labels absent from the map keep their
    /// name) and re-sorts rows and columns into the `⪯` order.
    pub fn relabeled(&self, map: &BTreeMap<ClosedStringId, ClosedStringId>) -> Self {
        let renamed: Vec<ClosedStringId> = self
            .labels
            .iter()
            .map(|l| map.get(l).copied().unwrap_or(*l))
            .collect();
        let mut order: Vec<usize> = (0..renamed.len()).collect();
        order.sort_by_key(|&i| renamed[i]);
        let n = renamed.len();
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[i * n + j] = self.entry_at(order[i], order[j]);
            }
        }
        ExchangeMatrix {
            labels: order.iter().map(|&i| renamed[i]).collect(),
            entries,
        }
    }

    /// Deletes the row and column of `v`.
    pub fn without(&self, v: ClosedStringId) -> Result<Self> {
        let vi = self.index_of(v)?;
        let keep: Vec<usize> = (0..self.labels.len()).filter(|&i| i != vi).collect();
        let n = keep.len();
        let mut entries = vec![0; n * n];
        for (i, &oi) in keep.iter().enumerate() {
            for (j, &oj) in keep.iter().enumerate() {
                entries[i * n + j] = self.entry_at(oi, oj);
            }
        }
        Ok(ExchangeMatrix {
            labels: keep.iter().map(|&i| self.labels[i]).collect(),
            entries,
        })
    }

    /// Adjoins a new vertex with the given column; the row is forced by the
    /// per-level symmetrizer `s` via `s_x b_xv = -s_v b_vx`. Fails when a
    /// forced row entry is not an integer.
    pub fn adjoined(
        &self,
        v: ClosedStringId,
        column: &BTreeMap<ClosedStringId, i64>,
        level_symmetrizer: &[i64],
    ) -> Result<Self> {
        let mut labels = self.labels.clone();
        labels.push(v);
        labels.sort();
        let n = labels.len();
        let mut out = ExchangeMatrix {
            labels: labels.clone(),
            entries: vec![0; n * n],
        };
        for (i, x) in labels.iter().enumerate() {
            for (j, z) in labels.iter().enumerate() {
                if *x == v || *z == v {
                    continue;
                }
                out.entries[i * n + j] = self.entry(*x, *z)?;
            }
        }
        let s_of = |id: ClosedStringId| -> Result<i64> {
            level_symmetrizer
                .get(id.level - 1)
                .copied()
                .ok_or_else(|| Error::InvalidInstance(format!("no symmetrizer for level {}", id.level)))
        };
        let s_v = s_of(v)?;
        let vi = out.index_of(v)?;
        for (x, &b_xv) in column {
            let xi = out.index_of(*x)?;
            let num = -s_of(*x)? * b_xv;
            if num % s_v != 0 {
                return Err(Error::SymmetrizerCheckFailed(v, *x));
            }
            out.entries[xi * n + vi] = b_xv;
            out.entries[vi * n + xi] = num / s_v;
        }
        Ok(out)
    }

    /// Canonical JSON view: `{"labels": [...], "rows": [[...], ...]}`.
    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            labels: self.labels.clone(),
            rows: self.rows(),
        }
    }
}

/// Serialized matrix: row-major entries, labels naming both axes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub labels: Vec<ClosedStringId>,
    pub rows: Vec<Vec<i64>>,
}

impl MatrixJson {
    pub fn to_matrix(&self) -> Result<ExchangeMatrix> {
        let n = self.labels.len();
        if self.rows.len() != n || self.rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInstance(format!(
                "matrix rows do not form an {n}x{n} grid"
            )));
        }
        Ok(ExchangeMatrix::from_parts(
            self.labels.clone(),
            self.rows.iter().flatten().copied().collect(),
        ))
    }
}

/// The contribution of one node, with entries doubled so the half-integer
/// rules stay in integer arithmetic. Returns `(x, z, doubled)` triples.
///
/// For a node `m` on level `k` flanked by strings `x` (left) and `y`
/// (right): if both are closed, `b_xy` gains `ε(m)`; for every closed `z`
/// on another level `j` crossing the triangle of `m`, a closed `x` gains
/// `a_kj/2·ε(m)` against `z` and a closed `y` loses it, with the transposed
/// entries scaled by `a_jk` instead.
pub fn node_contribution(
    diagram: &StringDiagram,
    m: &Node,
) -> Vec<(ClosedStringId, ClosedStringId, i64)> {
    let a = diagram.word().cartan();
    let k = m.level;
    let eps = m.epsilon;
    let (x, y) = diagram.flanking_strings(m);
    let mut out = Vec::new();
    if let (Some(x), Some(y)) = (x, y) {
        out.push((x, y, 2 * eps));
        out.push((y, x, -2 * eps));
    }
    for z in diagram.closed_strings() {
        let j = z.id.level;
        if j == k || !(z.left_pos < m.triangle_pos && m.triangle_pos < z.right_pos) {
            continue;
        }
        if let Some(x) = x {
            out.push((x, z.id, a.a(k, j) * eps));
            out.push((z.id, x, -a.a(j, k) * eps));
        }
        if let Some(y) = y {
            out.push((y, z.id, -a.a(k, j) * eps));
            out.push((z.id, y, a.a(j, k) * eps));
        }
    }
    out
}

/// The exchange matrix of a word: the halved sum of all doubled node
/// contributions. Every summed entry is even on valid words; an odd one is
/// an internal bug.
pub fn exchange_matrix(word: &ShuffleWord) -> Result<ExchangeMatrix> {
    exchange_matrix_of(&build_diagram(word))
}

/// As `exchange_matrix`, from a prebuilt diagram.
pub fn exchange_matrix_of(diagram: &StringDiagram) -> Result<ExchangeMatrix> {
    let labels = diagram.labels();
    let n = labels.len();
    let index: BTreeMap<ClosedStringId, usize> =
        labels.iter().enumerate().map(|(i, l)| (*l, i)).collect();
    let mut doubled = vec![0i64; n * n];
    for node in diagram.nodes() {
        for (x, z, d) in node_contribution(diagram, &node) {
            doubled[index[&x] * n + index[&z]] += d;
        }
    }
    let mut entries = vec![0i64; n * n];
    for i in 0..n {
        for j in 0..n {
            let d = doubled[i * n + j];
            if d % 2 != 0 {
                return Err(Error::IntegralityViolation {
                    x: labels[i],
                    z: labels[j],
                    value: d,
                });
            }
            entries[i * n + j] = d / 2;
        }
    }
    Ok(ExchangeMatrix { labels, entries })
}

/// The diagonal `s'_x = s_{level(x)}` making `Diag(s') B` skew-symmetric;
/// verifies the identity entrywise.
pub fn skew_symmetrizer(matrix: &ExchangeMatrix, cartan: &CartanMatrix) -> Result<Vec<i64>> {
    let s: Vec<i64> = matrix.labels().iter().map(|l| cartan.s(l.level)).collect();
    for i in 0..matrix.len() {
        for j in 0..matrix.len() {
            if s[i] * matrix.entry_at(i, j) != -s[j] * matrix.entry_at(j, i) {
                return Err(Error::SymmetrizerCheckFailed(
                    matrix.labels()[i],
                    matrix.labels()[j],
                ));
            }
        }
    }
    Ok(s)
}

/// Lossless graphical encoding of a freshly built exchange matrix:
/// horizontal arrows between same-level strings, inclined arrows between
/// levels, with magnitudes recoverable from the Cartan matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColouredQuiver {
    pub vertices: Vec<ClosedStringId>,
    pub horizontal: Vec<(ClosedStringId, ClosedStringId)>,
    pub inclined: Vec<(ClosedStringId, ClosedStringId)>,
}

/// Builds the coloured quiver of `matrix`. Entries must satisfy the fresh-
/// matrix ranges (same level in `{0, ±1}`, cross levels in `{0, ±a_kj}`);
/// mutated matrices generally do not, and are rejected.
pub fn coloured_quiver(matrix: &ExchangeMatrix, cartan: &CartanMatrix) -> Result<ColouredQuiver> {
    let labels = matrix.labels();
    let mut horizontal = Vec::new();
    let mut inclined = Vec::new();
    for (i, &x) in labels.iter().enumerate() {
        for (j, &z) in labels.iter().enumerate() {
            if i == j {
                continue;
            }
            let b = matrix.entry_at(i, j);
            let out_of_range = |value| Error::EntryOutOfRange { x, z, value };
            if x.level == z.level {
                match b {
                    -1 => horizontal.push((x, z)),
                    0 | 1 => {}
                    other => return Err(out_of_range(other)),
                }
            } else {
                let a_kj = cartan.a(x.level, z.level);
                if b == a_kj && a_kj < 0 {
                    inclined.push((x, z));
                } else if b != 0 && b != -a_kj {
                    return Err(out_of_range(b));
                }
            }
        }
    }
    Ok(ColouredQuiver {
        vertices: labels.to_vec(),
        horizontal,
        inclined,
    })
}

impl ColouredQuiver {
    /// Reconstructs the exchange matrix from the quiver and the Cartan
    /// matrix; inverse of `coloured_quiver` on fresh matrices.
    pub fn to_matrix(&self, cartan: &CartanMatrix) -> Result<ExchangeMatrix> {
        let n = self.vertices.len();
        let mut out = ExchangeMatrix {
            labels: self.vertices.clone(),
            entries: vec![0; n * n],
        };
        for &(x, z) in &self.horizontal {
            let (i, j) = (out.index_of(x)?, out.index_of(z)?);
            out.set_at(i, j, -1);
            out.set_at(j, i, 1);
        }
        for &(x, z) in &self.inclined {
            let (i, j) = (out.index_of(x)?, out.index_of(z)?);
            out.set_at(i, j, cartan.a(x.level, z.level));
            out.set_at(j, i, -cartan.a(z.level, x.level));
        }
        Ok(out)
    }
}

/// Multigraph of a skew-symmetric matrix: `b_ij > 0` means `b_ij` arrows
/// from `j` to `i`. No loops, no 2-cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsualQuiver {
    pub vertices: Vec<ClosedStringId>,
    pub arrows: BTreeMap<(ClosedStringId, ClosedStringId), i64>,
}

/// Builds the usual quiver; the matrix must be skew-symmetric.
pub fn usual_quiver(matrix: &ExchangeMatrix) -> Result<UsualQuiver> {
    let labels = matrix.labels();
    for i in 0..labels.len() {
        for j in 0..labels.len() {
            if matrix.entry_at(i, j) != -matrix.entry_at(j, i) {
                return Err(Error::NotSkewSymmetric(labels[i], labels[j]));
            }
        }
    }
    let mut arrows = BTreeMap::new();
    for (i, &to) in labels.iter().enumerate() {
        for (j, &from) in labels.iter().enumerate() {
            let b = matrix.entry_at(i, j);
            if b > 0 {
                arrows.insert((from, to), b);
            }
        }
    }
    Ok(UsualQuiver {
        vertices: labels.to_vec(),
        arrows,
    })
}

impl UsualQuiver {
    /// Arrow multiplicity from `from` to `to` (0 when absent).
    pub fn multiplicity(&self, from: ClosedStringId, to: ClosedStringId) -> i64 {
        self.arrows.get(&(from, to)).copied().unwrap_or(0)
    }

    /// The skew-symmetric matrix `b_ij = |j→i| - |i→j|`.
    pub fn to_matrix(&self) -> ExchangeMatrix {
        let n = self.vertices.len();
        let mut out = ExchangeMatrix {
            labels: self.vertices.clone(),
            entries: vec![0; n * n],
        };
        for (&(from, to), &q) in &self.arrows {
            let i = out.index_of(to).expect("arrow endpoints are vertices");
            let j = out.index_of(from).expect("arrow endpoints are vertices");
            out.set_at(i, j, out.entry_at(i, j) + q);
            out.set_at(j, i, out.entry_at(j, i) - q);
        }
        out
    }
}
