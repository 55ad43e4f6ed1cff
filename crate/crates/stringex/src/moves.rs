//! Diagonal flips and boundary reductions on triangulations, with their
//! exchange-matrix effects, and the reduction of any word to the all-bottom
//! word of the concatenated sequence.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagram::{build_diagram, ClosedStringId};
use crate::mutation::MutationSeq;
use crate::word::{Letter, Origin, ShuffleWord};
use crate::{Error, Result};

/// Exchange-matrix effect of one flip: nothing when the swapped letters have
/// different values, a single mutation when they share one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FlipEffect {
    Identity,
    MutateAt { vertex: ClosedStringId },
}

/// The four boundary reductions: toggle the first or last letter between the
/// bottom and top base.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReductionKind {
    /// First letter bottom → top.
    Ld,
    /// First letter top → bottom.
    Lu,
    /// Last letter bottom → top.
    Rd,
    /// Last letter top → bottom.
    Ru,
}

impl fmt::Display for ReductionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReductionKind::Ld => "L_d",
            ReductionKind::Lu => "L_u",
            ReductionKind::Rd => "R_d",
            ReductionKind::Ru => "R_u",
        })
    }
}

/// Flips the diagonal between triangles `pos` and `pos + 1` (1-based).
///
/// The two letters must have opposite origins (they bound a quadrilateral
/// with one top and one bottom edge). Swapping letters with equal value `v`
/// mutates the level-`v` closed string between the two nodes; the vertex is
/// read off the pre-flip word, where the `pos`-side node has rank `r` on its
/// level and the string is `(v, r)`.
pub fn flip(word: &ShuffleWord, pos: usize) -> Result<(ShuffleWord, FlipEffect)> {
    if pos < 1 || pos >= word.len() {
        return Err(Error::PositionOutOfRange {
            pos,
            max: word.len().saturating_sub(1),
        });
    }
    let a = word.letter(pos);
    let b = word.letter(pos + 1);
    if a.origin == b.origin {
        return Err(Error::NotAQuadrilateral { pos });
    }
    let effect = if a.value == b.value {
        let diagram = build_diagram(word);
        let rank = diagram
            .nodes_on_level(a.value)
            .iter()
            .position(|n| n.triangle_pos == pos)
            .expect("letter at pos sits on its level")
            + 1;
        FlipEffect::MutateAt {
            vertex: ClosedStringId::new(a.value, rank),
        }
    } else {
        FlipEffect::Identity
    };
    let mut letters = word.letters().to_vec();
    letters.swap(pos - 1, pos);
    let flipped = ShuffleWord::from_letters(letters, word.cartan().clone())?;
    Ok((flipped, effect))
}

/// A sequence of flips from `from` to `to`, which must be shuffles of the
/// same sequence pair. Returns `(pos, effect)` pairs in application order.
///
/// Strategy: scan left to right; wherever the origin patterns first differ,
/// bubble the needed letter leftwards by adjacent flips. Every swap crosses
/// a `Top` letter over a `Bottom` one, so all intermediate words stay in the
/// shuffle class.
pub fn flip_path(from: &ShuffleWord, to: &ShuffleWord) -> Result<Vec<(usize, FlipEffect)>> {
    if !from.same_shuffle_class(to) {
        return Err(Error::NotSameShuffleClass);
    }
    let target = to.origins();
    let mut word = from.clone();
    let mut path = Vec::new();
    for p in 0..target.len() {
        if word.origins()[p] == target[p] {
            continue;
        }
        let q = (p + 1..target.len())
            .find(|&q| word.origins()[q] == target[p])
            .expect("same origin multiset");
        for pos in (p + 1..=q).rev() {
            let (next, effect) = flip(&word, pos)?;
            path.push((pos, effect));
            word = next;
        }
    }
    debug_assert_eq!(word, *to);
    Ok(path)
}

/// Applies one boundary reduction: toggles the origin of the first letter
/// (`Ld`, `Lu`) or the last (`Rd`, `Ru`). The exchange matrix and its labels
/// are untouched: the end triangle's node contributes nothing and no closed
/// string crosses it.
pub fn reduce(word: &ShuffleWord, kind: ReductionKind) -> Result<ShuffleWord> {
    let not_applicable = |reason: &str| Error::ReductionNotApplicable {
        kind,
        reason: reason.to_string(),
    };
    if word.is_empty() {
        return Err(not_applicable("empty word"));
    }
    let (pos, wanted) = match kind {
        ReductionKind::Ld => (1, Origin::Bottom),
        ReductionKind::Lu => (1, Origin::Top),
        ReductionKind::Rd => (word.len(), Origin::Bottom),
        ReductionKind::Ru => (word.len(), Origin::Top),
    };
    let letter = word.letter(pos);
    if letter.origin != wanted {
        return Err(not_applicable(&format!(
            "letter at position {pos} has origin {:?}",
            letter.origin
        )));
    }
    let mut letters = word.letters().to_vec();
    letters[pos - 1] = Letter {
        value: letter.value,
        origin: letter.origin.toggled(),
    };
    ShuffleWord::from_letters(letters, word.cartan().clone())
}

/// Reduces a word to the all-bottom word of the concatenation of its
/// reversed top sequence and its bottom sequence, recording the mutations.
///
/// Repeatedly bubbles the leftmost `Top` letter to the front by flips and
/// toggles it to the bottom base. The returned sequence `s` satisfies
/// `apply_seq(exchange_matrix(bottom), s) = exchange_matrix(word)` through
/// `label_map`; flips and front toggles never re-rank the surviving strings,
/// so the map is the identity on the shared label set (kept explicit for
/// serialized consumers).
pub fn reduce_to_bottom(
    word: &ShuffleWord,
) -> Result<(ShuffleWord, MutationSeq, BTreeMap<ClosedStringId, ClosedStringId>)> {
    let mut current = word.clone();
    let mut forward = Vec::new();
    loop {
        let Some(p) = current
            .letters()
            .iter()
            .position(|l| l.origin == Origin::Top)
            .map(|i| i + 1)
        else {
            break;
        };
        for pos in (1..p).rev() {
            let (next, effect) = flip(&current, pos)?;
            if let FlipEffect::MutateAt { vertex } = effect {
                forward.push(vertex);
            }
            current = next;
        }
        current = reduce(&current, ReductionKind::Lu)?;
    }
    // Forward effects f_1..f_p turned the original matrix into the bottom
    // one; undoing them applies f_p first, which in composition order is the
    // forward list itself.
    let seq = MutationSeq::new(forward);
    let label_map = build_diagram(&current)
        .labels()
        .into_iter()
        .map(|l| (l, l))
        .collect();
    Ok((current, seq, label_map))
}
