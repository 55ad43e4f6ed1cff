//! Independent brute-force reconstruction of exchange-matrix entries, used
//! to cross-check the main construction. Shares only the domain types with
//! the `exchange` module; the traversal logic is separate on purpose.

use crate::diagram::{ClosedString, ClosedStringId, StringDiagram};
use crate::exchange::ExchangeMatrix;
use crate::{CartanMatrix, Error, Result};

/// Entry `b_xz` for strings on different levels, as the sum of the four
/// candidate contributions at the endpoints of `x` and of `z`, in doubled
/// arithmetic.
pub fn entry_by_four_terms(
    diagram: &StringDiagram,
    x: ClosedStringId,
    z: ClosedStringId,
) -> Result<i64> {
    let xs = *diagram.string(x)?;
    let zs = *diagram.string(z)?;
    if x.level == z.level {
        return Err(Error::SameLevel(x, z));
    }
    let a = diagram.word().cartan();
    let doubled = endpoint_terms(diagram, a, &xs, &zs);
    debug_assert_eq!(doubled % 2, 0);
    Ok(doubled / 2)
}

/// Doubled `b_xz` summed over the endpoints of both strings. For an
/// endpoint node `m` of `x` at triangle `t` crossed by `z`, the sign
/// depends on whether `x` ends at `m` from the left or starts there; the
/// endpoints of `z` contribute through the transposed rule.
fn endpoint_terms(
    diagram: &StringDiagram,
    a: &CartanMatrix,
    x: &ClosedString,
    z: &ClosedString,
) -> i64 {
    let k = x.id.level;
    let j = z.id.level;
    let sign_at = |level: usize, t: usize| -> i64 {
        diagram
            .nodes_on_level(level)
            .iter()
            .find(|n| n.triangle_pos == t)
            .expect("endpoint node exists")
            .epsilon
    };
    let strictly_inside = |s: &ClosedString, t: usize| s.left_pos < t && t < s.right_pos;

    let mut doubled = 0;
    // Endpoints of x: x is the RIGHT string of its left endpoint and the
    // LEFT string of its right endpoint.
    if strictly_inside(z, x.left_pos) {
        doubled += -a.a(k, j) * sign_at(k, x.left_pos);
    }
    if strictly_inside(z, x.right_pos) {
        doubled += a.a(k, j) * sign_at(k, x.right_pos);
    }
    // Endpoints of z, transposed roles: z is the right string of its left
    // endpoint (x picks up +a_kj/2 there) and the left string of its right
    // endpoint (x picks up -a_kj/2).
    if strictly_inside(x, z.left_pos) {
        doubled += a.a(k, j) * sign_at(j, z.left_pos);
    }
    if strictly_inside(x, z.right_pos) {
        doubled += -a.a(k, j) * sign_at(j, z.right_pos);
    }
    doubled
}

/// Entry `b_xz` for strings on one level: the sign of the shared node when
/// they are adjacent, zero otherwise.
pub fn same_level_entry(
    diagram: &StringDiagram,
    x: ClosedStringId,
    z: ClosedStringId,
) -> Result<i64> {
    let xs = *diagram.string(x)?;
    let zs = *diagram.string(z)?;
    if x.level != z.level {
        return Err(Error::SameLevel(x, z));
    }
    if x.index + 1 == z.index {
        Ok(diagram
            .nodes_on_level(x.level)
            .iter()
            .find(|n| n.triangle_pos == xs.right_pos)
            .expect("shared node exists")
            .epsilon)
    } else if z.index + 1 == x.index {
        Ok(-diagram
            .nodes_on_level(x.level)
            .iter()
            .find(|n| n.triangle_pos == zs.right_pos)
            .expect("shared node exists")
            .epsilon)
    } else {
        Ok(0)
    }
}

/// Full matrix assembled entry by entry from the two rules above.
pub fn oracle_matrix(diagram: &StringDiagram) -> Result<ExchangeMatrix> {
    let labels = diagram.labels();
    let n = labels.len();
    let mut entries = vec![0i64; n * n];
    for (i, &x) in labels.iter().enumerate() {
        for (j, &z) in labels.iter().enumerate() {
            if i == j {
                continue;
            }
            entries[i * n + j] = if x.level == z.level {
                same_level_entry(diagram, x, z)?
            } else {
                entry_by_four_terms(diagram, x, z)?
            };
        }
    }
    Ok(ExchangeMatrix::from_parts(labels, entries))
}

/// True when every same-level entry lies in `{0, ±1}` and every cross-level
/// entry between levels `k` and `j` lies in `{0, ±a_kj}`. Holds for freshly
/// built matrices; mutation generally breaks it.
pub fn check_entry_ranges(matrix: &ExchangeMatrix, cartan: &CartanMatrix) -> bool {
    let labels = matrix.labels();
    for (i, &x) in labels.iter().enumerate() {
        for (j, &z) in labels.iter().enumerate() {
            if i == j {
                if matrix.entry_at(i, j) != 0 {
                    return false;
                }
                continue;
            }
            let b = matrix.entry_at(i, j);
            let allowed = if x.level == z.level {
                1
            } else {
                cartan.a(x.level, z.level)
            };
            if b != 0 && b != allowed && b != -allowed {
                return false;
            }
        }
    }
    true
}
