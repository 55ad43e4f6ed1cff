//! Membership machinery for the class of skew-symmetrizable matrices built
//! from the 1x1 zero matrix by mutations and source-sink extensions:
//! extension predicates, the source/sink mutation sequences of all-bottom
//! words, certificate generation, and replay verification.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::diagram::{build_diagram, ClosedStringId};
use crate::exchange::{exchange_matrix, ExchangeMatrix};
use crate::moves::reduce_to_bottom;
use crate::mutation::{apply_seq, MutationSeq};
use crate::word::ShuffleWord;
use crate::{Error, Result};

/// True when all cross entries `b_xy` with `x` in `part` and `y` outside it
/// share a weak sign.
pub fn is_triangular_extension(matrix: &ExchangeMatrix, part: &[ClosedStringId]) -> Result<bool> {
    let inside: Vec<usize> = part
        .iter()
        .map(|l| matrix.index_of(*l))
        .collect::<Result<_>>()?;
    let outside: Vec<usize> = (0..matrix.len()).filter(|i| !inside.contains(i)).collect();
    let cross: Vec<i64> = inside
        .iter()
        .flat_map(|&i| outside.iter().map(move |&j| (i, j)))
        .map(|(i, j)| matrix.entry_at(i, j))
        .collect();
    Ok(cross.iter().all(|&v| v >= 0) || cross.iter().all(|&v| v <= 0))
}

/// True when the column of `v` (diagonal excluded) is entrywise `>= 0` or
/// entrywise `<= 0`.
pub fn is_source_sink_extension(matrix: &ExchangeMatrix, v: ClosedStringId) -> Result<bool> {
    let col = matrix.column_of(v)?;
    Ok(sign_coherent(col.values().copied()))
}

fn sign_coherent(mut values: impl Iterator<Item = i64> + Clone) -> bool {
    values.clone().all(|v| v >= 0) || values.all(|v| v <= 0)
}

/// For a nonempty all-bottom word with first letter on level `j1` carrying
/// `m >= 1` closed strings: the composition `μ_{(j1,2)} ∘ ... ∘ μ_{(j1,m)}`
/// (rightmost applied first). After it, the column of `(j1, 1)` is
/// non-negative.
pub fn source_mutation_seq(word: &ShuffleWord) -> Result<MutationSeq> {
    let (level, m) = level_string_count(word, true)?;
    Ok(MutationSeq::new(
        (2..=m).map(|i| ClosedStringId::new(level, i)).collect(),
    ))
}

/// Dual sequence for the last letter's level `jl` with `m' >= 1` strings:
/// `μ_{(jl,m'-1)} ∘ ... ∘ μ_{(jl,1)}` (apply `(jl, 1)` first). After it, the
/// column of `(jl, m')` is non-positive.
pub fn sink_mutation_seq(word: &ShuffleWord) -> Result<MutationSeq> {
    let (level, m) = level_string_count(word, false)?;
    Ok(MutationSeq::new(
        (1..m).rev().map(|i| ClosedStringId::new(level, i)).collect(),
    ))
}

fn level_string_count(word: &ShuffleWord, first: bool) -> Result<(usize, usize)> {
    assert!(word.is_all_bottom(), "source/sink sequences need an all-bottom word");
    let letters = word.letters();
    let letter = if first {
        letters.first()
    } else {
        letters.last()
    }
    .ok_or(Error::LengthMismatch("empty word".into()))?;
    let m = build_diagram(word).closed_count_on_level(letter.value);
    if m == 0 {
        return Err(Error::LevelEmpty { level: letter.value });
    }
    Ok((letter.value, m))
}

/// One layer of a certificate, outermost first: the vertex adjoined at this
/// layer, the sequence making it a source, and its column in the mutated
/// matrix over the remaining vertices. Layers whose level had no closed
/// string adjoin nothing and are recorded with `skipped`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub vertex: ClosedStringId,
    pub mu: MutationSeq,
    pub connection: BTreeMap<ClosedStringId, i64>,
    pub skipped: bool,
}

/// Replayable witness that an exchange matrix is reachable from the empty
/// matrix by source-sink extensions and mutations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub steps: Vec<Step>,
    pub outer_mutations: MutationSeq,
    pub label_map: BTreeMap<ClosedStringId, ClosedStringId>,
    pub symmetrizer: Vec<i64>,
    pub target_labels: Vec<ClosedStringId>,
}

/// Builds a certificate for the exchange matrix of `word`.
///
/// First reduces to the all-bottom word, then peels its first letter layer
/// by layer: a layer with `m >= 1` strings on the first letter's level
/// records the source sequence and the connection column of `(j1, 1)`; a
/// layer with none is recorded as skipped. Connection columns are checked
/// for sign coherence at generation time.
pub fn certify_pprime(word: &ShuffleWord) -> Result<Certificate> {
    let (bottom, outer_mutations, label_map) = reduce_to_bottom(word)?;
    let mut steps = Vec::new();
    let mut current = bottom;
    while current.len() > 1 {
        let j1 = current.letter(1).value;
        let diagram = build_diagram(&current);
        let m = diagram.closed_count_on_level(j1);
        if m == 0 {
            steps.push(Step {
                vertex: ClosedStringId::new(j1, 1),
                mu: MutationSeq::empty(),
                connection: BTreeMap::new(),
                skipped: true,
            });
        } else {
            let mu = source_mutation_seq(&current)?;
            let mutated = apply_seq(&exchange_matrix(&current)?, &mu)?;
            let vertex = ClosedStringId::new(j1, 1);
            let connection = mutated.column_of(vertex)?;
            if !sign_coherent(connection.values().copied()) {
                return Err(Error::InternalLemmaViolation(vertex));
            }
            steps.push(Step {
                vertex,
                mu,
                connection,
                skipped: false,
            });
        }
        current = current.without_first();
    }
    let target = exchange_matrix(word)?;
    Ok(Certificate {
        steps,
        outer_mutations,
        label_map,
        symmetrizer: word.cartan().symmetrizer().to_vec(),
        target_labels: target.labels().to_vec(),
    })
}

impl Certificate {
    /// Steps that adjoin a vertex.
    pub fn extension_steps(&self) -> usize {
        self.steps.iter().filter(|s| !s.skipped).count()
    }
}

/// Replays a certificate against `matrix`; true exactly when the replay
/// reconstructs it.
pub fn verify_certificate(cert: &Certificate, matrix: &ExchangeMatrix) -> bool {
    replay(cert, matrix).is_ok()
}

/// As `verify_certificate`, reporting the first failing step.
pub fn replay(cert: &Certificate, matrix: &ExchangeMatrix) -> std::result::Result<(), String> {
    let mut current = ExchangeMatrix::empty();
    for (idx, step) in cert.steps.iter().enumerate().rev() {
        if step.skipped {
            continue;
        }
        let v = step.vertex;
        let fail = |msg: String| format!("step {idx} (vertex {v}): {msg}");

        // Labels of the inner layer shift up on the peeled level.
        let shift: BTreeMap<ClosedStringId, ClosedStringId> = current
            .labels()
            .iter()
            .filter(|l| l.level == v.level)
            .map(|l| (*l, ClosedStringId::new(l.level, l.index + 1)))
            .collect();
        let shifted = current.relabeled(&shift);

        let expected: Vec<ClosedStringId> = shifted.labels().to_vec();
        let got: Vec<ClosedStringId> = step.connection.keys().copied().collect();
        if expected != got {
            return Err(fail("connection keys do not match the inner vertex set".into()));
        }
        if !sign_coherent(step.connection.values().copied()) {
            return Err(fail("connection column is not sign-coherent".into()));
        }
        // The stored column lives in the mutated matrix: the extension
        // relates the mutated outer matrix to the mutated inner one, so the
        // layer's sequence is applied before adjoining and undone after.
        let premuted = apply_seq(&shifted, &step.mu).map_err(|e| fail(e.to_string()))?;
        let extended = premuted
            .adjoined(v, &step.connection, &cert.symmetrizer)
            .map_err(|e| fail(e.to_string()))?;
        if !is_source_sink_extension(&extended, v).map_err(|e| fail(e.to_string()))? {
            return Err(fail("not a source-sink extension".into()));
        }
        current = apply_seq(&extended, &step.mu.reversed()).map_err(|e| fail(e.to_string()))?;
    }
    let outer = apply_seq(&current, &cert.outer_mutations).map_err(|e| e.to_string())?;
    let renamed = outer.relabeled(&cert.label_map);
    if renamed.labels() != cert.target_labels.as_slice()
        || matrix.labels() != cert.target_labels.as_slice()
    {
        return Err("replayed labels do not match the target".into());
    }
    for (i, &x) in cert.target_labels.iter().enumerate() {
        for (j, &z) in cert.target_labels.iter().enumerate() {
            if renamed.entry_at(i, j) != matrix.entry_at(i, j) {
                return Err(format!(
                    "entry mismatch at ({x}, {z}): replayed {}, target {}",
                    renamed.entry_at(i, j),
                    matrix.entry_at(i, j)
                ));
            }
        }
    }
    Ok(())
}
