//! Seeded random instances for property tests and the CLI oracle runner.

use rand::Rng;

use crate::diagram::ClosedStringId;
use crate::exchange::ExchangeMatrix;
use crate::mutation::MutationSeq;
use crate::word::{Letter, Origin, ShuffleWord};
use crate::CartanMatrix;

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

/// A random symmetrizable generalized Cartan matrix of rank `1..=max_rank`.
///
/// Draws a target symmetrizer `d` and symmetric weights `g`, then sets
/// `a_ij = -g_ij d_j / gcd(d_i, d_j)` so the symmetrizer property holds by
/// construction.
pub fn random_cartan<R: Rng>(rng: &mut R, max_rank: usize) -> CartanMatrix {
    let n = rng.gen_range(1..=max_rank);
    let d: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
    let mut entries = vec![vec![0i64; n]; n];
    for i in 0..n {
        entries[i][i] = 2;
        for j in (i + 1)..n {
            let g: i64 = if rng.gen_bool(0.4) {
                0
            } else {
                rng.gen_range(1..=2)
            };
            let q = gcd(d[i], d[j]);
            entries[i][j] = -g * d[j] / q;
            entries[j][i] = -g * d[i] / q;
        }
    }
    CartanMatrix::new(entries).expect("constructed to be symmetrizable")
}

/// A random shuffle word over a random Cartan matrix.
pub fn random_word<R: Rng>(rng: &mut R, max_rank: usize, max_len: usize) -> ShuffleWord {
    let cartan = random_cartan(rng, max_rank);
    let n = cartan.n();
    let len = rng.gen_range(0..=max_len);
    let letters = (0..len)
        .map(|_| Letter {
            value: rng.gen_range(1..=n),
            origin: if rng.gen_bool(0.5) {
                Origin::Top
            } else {
                Origin::Bottom
            },
        })
        .collect();
    ShuffleWord::from_letters(letters, cartan).expect("letters drawn in range")
}

/// A random all-bottom word over a random Cartan matrix.
pub fn random_bottom_word<R: Rng>(rng: &mut R, max_rank: usize, max_len: usize) -> ShuffleWord {
    let cartan = random_cartan(rng, max_rank);
    let n = cartan.n();
    let len = rng.gen_range(0..=max_len);
    let values: Vec<usize> = (0..len).map(|_| rng.gen_range(1..=n)).collect();
    ShuffleWord::bottom(&values, cartan).expect("letters drawn in range")
}

fn search_labels(n: usize) -> Vec<ClosedStringId> {
    (1..=n).map(|i| ClosedStringId::new(i, 1)).collect()
}

/// A random skew-symmetric integer matrix with entries in `[-bound, bound]`.
pub fn random_skew_symmetric<R: Rng>(rng: &mut R, max_n: usize, bound: i64) -> ExchangeMatrix {
    let n = rng.gen_range(1..=max_n);
    let mut entries = vec![0i64; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let v = rng.gen_range(-bound..=bound);
            entries[i * n + j] = v;
            entries[j * n + i] = -v;
        }
    }
    ExchangeMatrix::from_parts(search_labels(n), entries)
}

/// A random skew-symmetrizable integer matrix: `Diag(d) B` is skew-symmetric
/// for a random positive diagonal `d`.
pub fn random_skew_symmetrizable<R: Rng>(rng: &mut R, max_n: usize, bound: i64) -> ExchangeMatrix {
    let n = rng.gen_range(1..=max_n);
    let d: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
    let mut entries = vec![0i64; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let u = rng.gen_range(-bound..=bound);
            let q = gcd(d[i], d[j]);
            entries[i * n + j] = u * d[j] / q;
            entries[j * n + i] = -u * d[i] / q;
        }
    }
    ExchangeMatrix::from_parts(search_labels(n), entries)
}

/// A random mutation sequence over `labels` of length `0..=max_len`.
pub fn random_sequence<R: Rng>(
    rng: &mut R,
    labels: &[ClosedStringId],
    max_len: usize,
) -> MutationSeq {
    let len = if labels.is_empty() {
        0
    } else {
        rng.gen_range(0..=max_len)
    };
    MutationSeq::new(
        (0..len)
            .map(|_| labels[rng.gen_range(0..labels.len())])
            .collect(),
    )
}
