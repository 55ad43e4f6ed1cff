//! Acceptance suite: one test per release criterion, each printing a
//! PASS line. Run with `cargo test --test acceptance -- --nocapture`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use stringex::diagram::build_diagram;
use stringex::dot::usual_to_dot;
use stringex::exchange::{exchange_matrix, skew_symmetrizer, usual_quiver, ExchangeMatrix};
use stringex::moves::{flip, reduce, reduce_to_bottom, FlipEffect, ReductionKind};
use stringex::mutation::{apply_seq, mutate, mutate_quiver, search_reddening, MutationSeq};
use stringex::oracle::{check_entry_ranges, oracle_matrix};
use stringex::pprime::{certify_pprime, is_source_sink_extension, verify_certificate};
use stringex::word::Origin;
use stringex::{sample, CartanMatrix, ClosedStringId, ShuffleWord};

fn id(s: &str) -> ClosedStringId {
    s.parse().unwrap()
}

fn origins(pattern: &str) -> Vec<Origin> {
    pattern
        .chars()
        .map(|c| Origin::from_char(c).unwrap())
        .collect()
}

fn cartan(entries: &[&[i64]]) -> CartanMatrix {
    CartanMatrix::new(entries.iter().map(|r| r.to_vec()).collect()).unwrap()
}

/// The eight-triangle trapezoid word with top (1,2,3), bottom (3,1,1,3,2).
fn trapezoid_word(a: CartanMatrix) -> ShuffleWord {
    ShuffleWord::new(&[1, 2, 3], &[3, 1, 1, 3, 2], &origins("BBBTTTBB"), a).unwrap()
}

/// The rank-2 double word: top (1,2,1), bottom (1,2,1).
fn double_word() -> ShuffleWord {
    let a = cartan(&[&[2, -1], &[-1, 2]]);
    ShuffleWord::new(&[1, 2, 1], &[1, 2, 1], &origins("BBBTTT"), a).unwrap()
}

/// The ten-letter bottom word over the symmetric rank-3 matrix.
fn ten_letter_word() -> ShuffleWord {
    let a = cartan(&[&[2, -3, -2], &[-3, 2, -2], &[-2, -2, 2]]);
    ShuffleWord::bottom(&[1, 2, 1, 3, 1, 2, 1, 2, 3, 2], a).unwrap()
}

/// The eleven-letter bottom word of the closing worked example.
fn eleven_letter_word() -> ShuffleWord {
    let a = cartan(&[&[2, -2, -3], &[-2, 2, -4], &[-3, -4, 2]]);
    ShuffleWord::bottom(&[2, 1, 3, 2, 1, 3, 1, 3, 2, 2, 1], a).unwrap()
}

/// Every named word used by the golden and walkthrough criteria.
fn paper_words() -> Vec<ShuffleWord> {
    vec![
        trapezoid_word(cartan(&[&[2, -5, -7], &[-5, 2, -9], &[-7, -9, 2]])),
        trapezoid_word(cartan(&[&[2, -6, -8], &[-3, 2, -10], &[-4, -10, 2]])),
        trapezoid_word(cartan(&[&[2, -6, -8], &[-3, 2, 0], &[-4, 0, 2]])),
        double_word(),
        ShuffleWord::bottom(
            &[1, 2, 1, 3, 1, 3, 2],
            cartan(&[&[2, -6, -8], &[-3, 2, -10], &[-4, -10, 2]]),
        )
        .unwrap(),
        ten_letter_word(),
        eleven_letter_word(),
    ]
}

fn assert_rows(m: &ExchangeMatrix, labels: &[&str], rows: &[&[i64]]) {
    let got: Vec<String> = m.labels().iter().map(|l| l.to_string()).collect();
    assert_eq!(got, labels, "label order");
    let expected: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
    assert_eq!(m.rows(), expected, "entries");
}

#[test]
fn criterion_01_golden_matrices() {
    let m = exchange_matrix(&trapezoid_word(cartan(&[
        &[2, -5, -7],
        &[-5, 2, -9],
        &[-7, -9, 2],
    ])))
    .unwrap();
    assert_rows(
        &m,
        &["1:1", "1:2", "2:1", "3:1", "3:2"],
        &[
            &[0, 1, 0, 0, 0],
            &[-1, 0, 0, 7, 0],
            &[0, 0, 0, -9, 9],
            &[0, -7, 9, 0, -1],
            &[0, 0, -9, 1, 0],
        ],
    );

    let m = exchange_matrix(&trapezoid_word(cartan(&[
        &[2, -6, -8],
        &[-3, 2, -10],
        &[-4, -10, 2],
    ])))
    .unwrap();
    assert_rows(
        &m,
        &["1:1", "1:2", "2:1", "3:1", "3:2"],
        &[
            &[0, 1, 0, 0, 0],
            &[-1, 0, 0, 8, 0],
            &[0, 0, 0, -10, 10],
            &[0, -4, 10, 0, -1],
            &[0, 0, -10, 1, 0],
        ],
    );

    let m = exchange_matrix(&trapezoid_word(cartan(&[
        &[2, -6, -8],
        &[-3, 2, 0],
        &[-4, 0, 2],
    ])))
    .unwrap();
    assert_rows(
        &m,
        &["1:1", "1:2", "2:1", "3:1", "3:2"],
        &[
            &[0, 1, 0, 0, 0],
            &[-1, 0, 0, 8, 0],
            &[0, 0, 0, 0, 0],
            &[0, -4, 0, 0, -1],
            &[0, 0, 0, 1, 0],
        ],
    );

    let m = exchange_matrix(&double_word()).unwrap();
    assert_rows(
        &m,
        &["1:1", "1:2", "1:3", "2:1"],
        &[
            &[0, 1, 0, -1],
            &[-1, 0, -1, 1],
            &[0, 1, 0, -1],
            &[1, -1, 1, 0],
        ],
    );

    let m = exchange_matrix(
        &ShuffleWord::bottom(
            &[1, 2, 1, 3, 1, 3, 2],
            cartan(&[&[2, -6, -8], &[-3, 2, -10], &[-4, -10, 2]]),
        )
        .unwrap(),
    )
    .unwrap();
    assert_rows(
        &m,
        &["1:1", "1:2", "2:1", "3:1"],
        &[&[0, 1, -6, 0], &[-1, 0, 0, -8], &[3, 0, 0, 0], &[0, 4, 0, 0]],
    );

    println!("ACCEPTANCE 01 PASS: all five published exchange matrices reproduced exactly");
}

#[test]
fn criterion_02_reordered_double_word_matrix() {
    let m = exchange_matrix(&double_word()).unwrap();
    let order: Vec<ClosedStringId> = ["1:1", "2:1", "1:2", "1:3"].iter().map(|s| id(s)).collect();
    let p = m.permuted(&order).unwrap();
    assert_eq!(
        p.rows(),
        vec![
            vec![0, -1, 1, 0],
            vec![1, 0, -1, 1],
            vec![-1, 1, 0, -1],
            vec![0, -1, 1, 0],
        ]
    );
    println!("ACCEPTANCE 02 PASS: reordered 4x4 matrix matches the published one");
}

#[test]
fn criterion_03_usual_quiver_golden() {
    let w = ten_letter_word();
    let q = usual_quiver(&exchange_matrix(&w).unwrap()).unwrap();
    assert_eq!(q.vertices.len(), 7);
    let expected: Vec<(&str, &str, i64)> = vec![
        ("1:2", "1:1", 1),
        ("1:3", "1:2", 1),
        ("2:2", "2:1", 1),
        ("2:3", "2:2", 1),
        ("1:1", "2:1", 3),
        ("1:2", "3:1", 2),
        ("1:3", "2:2", 3),
        ("2:1", "1:3", 3),
        ("2:1", "3:1", 2),
        ("3:1", "2:3", 2),
    ];
    assert_eq!(q.arrows.len(), expected.len());
    for (from, to, mult) in expected {
        assert_eq!(q.multiplicity(id(from), id(to)), mult, "{from} -> {to}");
    }
    let golden = include_str!("golden/ten_letter_usual.dot");
    assert_eq!(usual_to_dot(&q), golden, "DOT output drifted from the golden file");
    println!("ACCEPTANCE 03 PASS: 7-vertex usual quiver and DOT golden file match");
}

#[test]
fn criterion_04_mutation_laws() {
    let mut rng = ChaCha8Rng::seed_from_u64(401);
    for _ in 0..200 {
        let m = sample::random_skew_symmetric(&mut rng, 4, 3);
        let q = usual_quiver(&m).unwrap();
        for &k in m.labels() {
            let once = mutate(&m, k).unwrap();
            assert_eq!(mutate(&once, k).unwrap(), m, "involution");
            assert_eq!(
                usual_quiver(&once).unwrap(),
                mutate_quiver(&q, k).unwrap(),
                "matrix/quiver compatibility"
            );
        }
    }
    let mut count = 0;
    while count < 200 {
        let word = sample::random_word(&mut rng, 4, 10);
        let m = exchange_matrix(&word).unwrap();
        if m.is_empty() {
            continue;
        }
        let s = skew_symmetrizer(&m, word.cartan()).unwrap();
        for &k in m.labels() {
            let mm = mutate(&m, k).unwrap();
            for i in 0..mm.len() {
                for j in 0..mm.len() {
                    assert_eq!(
                        s[i] * mm.entry_at(i, j),
                        -s[j] * mm.entry_at(j, i),
                        "skew-symmetrizability with the fixed diagonal"
                    );
                }
            }
        }
        count += 1;
    }
    println!("ACCEPTANCE 04 PASS: mutation involution, quiver compatibility, and symmetrizer preservation on 200+200 instances");
}

#[test]
fn criterion_05_flip_effects() {
    let mut rng = ChaCha8Rng::seed_from_u64(501);
    let mut tested = 0;
    while tested < 500 {
        let word = sample::random_word(&mut rng, 4, 10);
        let flippable: Vec<usize> = (1..word.len())
            .filter(|&p| word.letter(p).origin != word.letter(p + 1).origin)
            .collect();
        if flippable.is_empty() {
            continue;
        }
        let pos = flippable[rng.gen_range(0..flippable.len())];
        let (flipped, effect) = flip(&word, pos).unwrap();
        let pre = exchange_matrix(&word).unwrap();
        let post = exchange_matrix(&flipped).unwrap();
        match effect {
            FlipEffect::Identity => {
                assert_ne!(word.letter(pos).value, word.letter(pos + 1).value);
                assert_eq!(pre, post, "unequal-value flip must preserve the matrix");
            }
            FlipEffect::MutateAt { vertex } => {
                assert_eq!(word.letter(pos).value, word.letter(pos + 1).value);
                assert_eq!(
                    post,
                    mutate(&pre, vertex).unwrap(),
                    "equal-value flip must mutate at the identified vertex"
                );
            }
        }
        tested += 1;
    }
    println!("ACCEPTANCE 05 PASS: flip effects verified on 500 random (word, pos) pairs");
}

#[test]
fn criterion_06_reductions_preserve_the_matrix() {
    // Named golden case: the front toggle on the trapezoid word.
    let w = trapezoid_word(cartan(&[&[2, -5, -7], &[-5, 2, -9], &[-7, -9, 2]]));
    let reduced = reduce(&w, ReductionKind::Ld).unwrap();
    assert_eq!(reduced.top_sequence(), vec![3, 1, 2, 3]);
    assert_eq!(reduced.bottom_sequence(), vec![1, 1, 3, 2]);
    let before = exchange_matrix(&w).unwrap();
    assert_eq!(exchange_matrix(&reduced).unwrap(), before);

    let kinds = [
        ReductionKind::Ld,
        ReductionKind::Lu,
        ReductionKind::Rd,
        ReductionKind::Ru,
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(601);
    let mut applied = 0;
    for _ in 0..500 {
        let word = sample::random_word(&mut rng, 4, 10);
        let m = exchange_matrix(&word).unwrap();
        for kind in kinds {
            let Ok(reduced) = reduce(&word, kind) else {
                continue;
            };
            let rm = exchange_matrix(&reduced).unwrap();
            assert_eq!(rm, m, "{kind} changed the matrix on word {word}");
            applied += 1;
        }
    }
    assert!(applied > 500, "reduction coverage too thin: {applied}");
    println!("ACCEPTANCE 06 PASS: all applicable reductions on 500 instances left the matrix unchanged ({applied} applications)");
}

#[test]
fn criterion_07_reduction_to_bottom_relation() {
    let check = |word: &ShuffleWord| {
        let (bottom, seq, map) = reduce_to_bottom(word).unwrap();
        let mut expected_bottom: Vec<usize> = word.top_sequence();
        expected_bottom.reverse();
        expected_bottom.extend(word.bottom_sequence());
        assert_eq!(bottom.values(), expected_bottom);
        let replayed = apply_seq(&exchange_matrix(&bottom).unwrap(), &seq)
            .unwrap()
            .relabeled(&map);
        assert_eq!(replayed, exchange_matrix(word).unwrap());
    };
    for word in paper_words() {
        check(&word);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(701);
    for _ in 0..200 {
        check(&sample::random_word(&mut rng, 4, 10));
    }
    println!("ACCEPTANCE 07 PASS: recorded mutations carry the bottom-word matrix back to the original on all paper and 200 random instances");
}

#[test]
fn criterion_08_source_and_sink_columns() {
    use stringex::pprime::{sink_mutation_seq, source_mutation_seq};

    // Named case: the ten-letter word.
    let w = ten_letter_word();
    let mu = source_mutation_seq(&w).unwrap();
    assert_eq!(mu, MutationSeq::new(vec![id("1:2"), id("1:3")]));
    let b = apply_seq(&exchange_matrix(&w).unwrap(), &mu).unwrap();
    assert!(b.column_of(id("1:1")).unwrap().values().all(|&v| v >= 0));
    assert!(is_source_sink_extension(&b, id("1:1")).unwrap());

    let mu2 = sink_mutation_seq(&w).unwrap();
    assert_eq!(mu2, MutationSeq::new(vec![id("2:2"), id("2:1")]));
    let b2 = apply_seq(&exchange_matrix(&w).unwrap(), &mu2).unwrap();
    assert!(b2.column_of(id("2:3")).unwrap().values().all(|&v| v <= 0));

    let mut rng = ChaCha8Rng::seed_from_u64(801);
    let mut tested = 0;
    while tested < 500 {
        let word = sample::random_bottom_word(&mut rng, 4, 10);
        if word.is_empty() {
            continue;
        }
        let m = exchange_matrix(&word).unwrap();
        let first = word.letter(1).value;
        if let Ok(mu) = source_mutation_seq(&word) {
            let mutated = apply_seq(&m, &mu).unwrap();
            let col = mutated.column_of(ClosedStringId::new(first, 1)).unwrap();
            assert!(col.values().all(|&v| v >= 0), "source column on {word}");
        }
        let last = word.letter(word.len()).value;
        if let Ok(mu) = sink_mutation_seq(&word) {
            let m_count = build_diagram(&word).closed_count_on_level(last);
            let mutated = apply_seq(&m, &mu).unwrap();
            let col = mutated
                .column_of(ClosedStringId::new(last, m_count))
                .unwrap();
            assert!(col.values().all(|&v| v <= 0), "sink column on {word}");
        }
        tested += 1;
    }
    println!("ACCEPTANCE 08 PASS: source/sink column signs hold on the named case and 500 random all-bottom words");
}

#[test]
fn criterion_09_certificates_replay() {
    let check = |word: &ShuffleWord| {
        let cert = certify_pprime(word).unwrap();
        let m = exchange_matrix(word).unwrap();
        assert!(verify_certificate(&cert, &m), "replay failed on {word}");
        assert_eq!(
            cert.extension_steps(),
            m.len(),
            "one extension per closed string"
        );
        for step in cert.steps.iter().filter(|s| !s.skipped) {
            let vals: Vec<i64> = step.connection.values().copied().collect();
            assert!(
                vals.iter().all(|&v| v >= 0) || vals.iter().all(|&v| v <= 0),
                "connection not sign-coherent at {}",
                step.vertex
            );
        }
    };
    for word in paper_words() {
        check(&word);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(901);
    for _ in 0..500 {
        check(&sample::random_word(&mut rng, 4, 10));
    }
    println!("ACCEPTANCE 09 PASS: certificates generate and replay on all paper and 500 random instances");
}

#[test]
fn criterion_10_worked_walkthroughs() {
    // (a) Toggling the first letter of the ten-letter word to the top and
    // sweeping it rightwards: nine flips with the published effect pattern.
    let start = reduce(&ten_letter_word(), ReductionKind::Ld).unwrap();
    let mut word = start;
    let mut effects = Vec::new();
    for pos in 1..=9 {
        let (next, effect) = flip(&word, pos).unwrap();
        effects.push(effect);
        word = next;
    }
    let mu = |s: &str| FlipEffect::MutateAt { vertex: id(s) };
    assert_eq!(
        effects,
        vec![
            FlipEffect::Identity,
            mu("1:1"),
            FlipEffect::Identity,
            mu("1:2"),
            FlipEffect::Identity,
            mu("1:3"),
            FlipEffect::Identity,
            FlipEffect::Identity,
            FlipEffect::Identity,
        ]
    );

    // (b) The closing example's chain: mutate the first letter's level to
    // expose a source, delete it, undo the mutations, and land on the
    // matrix of the shorter word. Five stages, compared freshly each time.
    let mut stage_word = eleven_letter_word();
    let mut current = exchange_matrix(&stage_word).unwrap();
    for _ in 0..4 {
        assert_eq!(current, exchange_matrix(&stage_word).unwrap());
        let j1 = stage_word.letter(1).value;
        let mu = stringex::pprime::source_mutation_seq(&stage_word).unwrap();
        let mutated = apply_seq(&current, &mu).unwrap();
        let vertex = ClosedStringId::new(j1, 1);
        let col = mutated.column_of(vertex).unwrap();
        assert!(col.values().all(|&v| v >= 0), "designated vertex is a source");
        let deleted = mutated.without(vertex).unwrap();
        let undone = apply_seq(&deleted, &mu.reversed()).unwrap();
        let shift: std::collections::BTreeMap<ClosedStringId, ClosedStringId> = undone
            .labels()
            .iter()
            .filter(|l| l.level == j1)
            .map(|l| (*l, ClosedStringId::new(l.level, l.index - 1)))
            .collect();
        current = undone.relabeled(&shift);
        stage_word = stage_word.without_first();
    }
    assert_eq!(current, exchange_matrix(&stage_word).unwrap());
    println!("ACCEPTANCE 10 PASS: nine-flip effect pattern and the five-stage source-removal chain both match");
}

#[test]
fn criterion_11_reddening_search() {
    let m = exchange_matrix(&double_word()).unwrap();
    let seq = search_reddening(&m, 12, false)
        .expect("search completes")
        .expect("a reddening sequence exists");
    assert!(seq.len() <= 12);

    let mut rng = ChaCha8Rng::seed_from_u64(1101);
    let mut found = 0;
    while found < 20 {
        let word = sample::random_word(&mut rng, 3, 6);
        let m = exchange_matrix(&word).unwrap();
        if m.is_empty() || m.len() > 5 {
            continue;
        }
        let seq = search_reddening(&m, 12, false)
            .expect("sign-coherent, within depth")
            .expect("a reddening sequence exists");
        assert!(seq.len() <= 12);
        found += 1;
    }
    println!("ACCEPTANCE 11 PASS: reddening sequences found within depth 12 for the 4-vertex golden case and 20 random instances");
}

#[test]
fn criterion_12_oracle_agreement() {
    let mut rng = ChaCha8Rng::seed_from_u64(1201);
    for _ in 0..1000 {
        let word = sample::random_word(&mut rng, 4, 12);
        let built = exchange_matrix(&word).unwrap();
        let oracle = oracle_matrix(&build_diagram(&word)).unwrap();
        assert_eq!(built, oracle, "oracle disagreement on {word}");
        assert!(
            check_entry_ranges(&built, word.cartan()),
            "entry ranges violated on {word}"
        );
    }
    println!("ACCEPTANCE 12 PASS: construction agrees with the independent oracle and entry ranges on 1000 instances");
}
