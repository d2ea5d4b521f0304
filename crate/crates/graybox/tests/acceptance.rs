//! Release gate: every check prints one `ACCEPT <name>: PASS (x.xs)` line and
//! enforces both its correctness condition and a wall-clock budget. The
//! checks pin published worked examples exactly, then verify the structural
//! claims (certificate agreement, additivity, optimal recombination, bounded
//! update cost) against brute-force oracles at scale.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use graybox::group_fourier::{
    fourier_transform_all, inverse_fourier, non_interacting_by_enumeration,
    non_interaction_certificate, walsh_noninteracting, walsh_spectrum, yor_irreps, BitString,
    FiniteGroup, Hypercube, Permutation, SymmetricGroup,
};
use graybox::perm_operators::{
    decompose_parents, enumerate_moves, px_perm_detailed, window_hill_climb, ScoreVector,
};
use graybox::perm_problems::{
    apply_position_move, generate_lop, generate_smtwtp, PermProblem, TourArcs,
};
use graybox::pseudo_boolean::{
    build_vig, decompose_move, generate_nk, px_binary_with_vig, FlipScores, WalshExpansion,
};
use graybox::{SelectPolicy, Tolerance};

fn accept(name: &str, budget: Duration, start: Instant) {
    let elapsed = start.elapsed();
    assert!(
        elapsed <= budget,
        "{name} took {:.1}s, budget {:.0}s",
        elapsed.as_secs_f64(),
        budget.as_secs_f64()
    );
    println!("ACCEPT {name}: PASS ({:.1}s)", elapsed.as_secs_f64());
}

fn rng_from(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The degree-3 two-dimensional standard irrep evaluates to six known
/// orthogonal matrices, entrywise within 1e-12.
#[test]
fn s3_irrep_matrices() {
    let start = Instant::now();
    let h = 0.5;
    let s = 3f64.sqrt() / 2.0;
    let expected: [(&str, [[f64; 2]; 2]); 6] = [
        ("(1)", [[1.0, 0.0], [0.0, 1.0]]),
        ("(2 3)", [[-h, s], [s, h]]),
        ("(1 2)", [[1.0, 0.0], [0.0, -1.0]]),
        ("(1 2 3)", [[-h, -s], [s, -h]]),
        ("(1 3 2)", [[-h, s], [-s, -h]]),
        ("(1 3)", [[-h, -s], [-s, h]]),
    ];

    let irreps = yor_irreps(3).expect("degree 3 is supported");
    let irrep = irreps
        .iter()
        .find(|r| r.partition().parts() == [2, 1])
        .expect("the hook-shaped partition is present");
    assert_eq!(irrep.dim(), 2);
    for (cycles, want) in expected {
        let g = Permutation::parse_cycles(cycles, 3).expect("valid cycle text");
        let m = irrep.matrix(&g);
        for r in 0..2 {
            for c in 0..2 {
                assert!(
                    (m[(r, c)] - want[r][c]).abs() <= 1e-12,
                    "{cycles} entry ({r},{c}): got {}, want {}",
                    m[(r, c)],
                    want[r][c]
                );
            }
        }
    }
    accept("s3_irrep_matrices", Duration::from_secs(1), start);
}

/// Insertion moves on the six-city cyclic fragment exchange exactly the
/// published arc sets, for both single moves and their composition.
#[test]
fn insertion_arc_effects() {
    let start = Instant::now();
    let tour = TourArcs::new(vec![10, 11, 12, 16, 17, 18]).expect("distinct cities");
    let sorted = |pairs: &[(u32, u32)]| {
        let mut v = pairs.to_vec();
        v.sort_unstable();
        v
    };

    let (removed, added) = tour.insertion_move_edges(11, 18).unwrap();
    assert_eq!(removed, sorted(&[(10, 11), (11, 12), (17, 18)]));
    assert_eq!(added, sorted(&[(10, 12), (17, 11), (11, 18)]));

    let (removed, added) = tour.insertion_move_edges(17, 12).unwrap();
    assert_eq!(removed, sorted(&[(16, 17), (17, 18), (11, 12)]));
    assert_eq!(added, sorted(&[(11, 17), (17, 12), (16, 18)]));

    let composed = tour
        .apply_insertion(11, 18)
        .unwrap()
        .apply_insertion(17, 12)
        .unwrap();
    let (removed, added) = tour.arc_diff(&composed);
    assert_eq!(removed, sorted(&[(16, 17), (17, 18), (10, 11), (11, 12)]));
    assert_eq!(added, sorted(&[(16, 11), (11, 18), (10, 17), (17, 12)]));

    accept("insertion_arc_effects", Duration::from_secs(1), start);
}

/// Three-variable regression: with spectrum support on the single variables,
/// the pair {1,2}, and the full triple, the all-bits move splits into
/// ({1,2}, {3}) while the {2,3} move admits no split; the certificate and the
/// definitional check agree on both verdicts.
#[test]
fn three_variable_split() {
    let start = Instant::now();
    let mask = |text: &str| BitString::parse(text).unwrap().mask();
    let terms: Vec<(u64, f64)> = vec![
        (mask("100"), 1.0),
        (mask("010"), -2.0),
        (mask("001"), 3.0),
        (mask("110"), 1.5),
        (mask("111"), 0.25),
    ];
    let f: Vec<f64> = (0..8u64)
        .map(|x| {
            terms
                .iter()
                .map(|&(lambda, w)| {
                    w * graybox::group_fourier::bits::walsh_sign_masks(lambda, x) as f64
                })
                .sum()
        })
        .collect();
    let group = Hypercube::new(3).unwrap();
    let coeffs = fourier_transform_all(&group, &f).unwrap();
    let pair = |a: &str, b: &str| {
        let ba = BitString::parse(a).unwrap();
        let bb = BitString::parse(b).unwrap();
        let scalar = walsh_noninteracting(&terms, ba.mask(), bb.mask(), Tolerance::Exact);
        let matrix =
            non_interaction_certificate(&group, &coeffs, &ba, &bb, Tolerance::Absolute(1e-9))
                .unwrap();
        let definitional =
            non_interacting_by_enumeration(&group, &f, &ba, &bb, Tolerance::Absolute(1e-9))
                .unwrap();
        assert_eq!(scalar, matrix, "certificate forms disagree on ({a},{b})");
        assert_eq!(scalar, definitional, "certificate vs definition on ({a},{b})");
        scalar
    };
    assert!(pair("110", "001"), "the split halves must not interact");
    assert!(!pair("001", "010"), "moves sharing the triple term must interact");

    let w = WalshExpansion::from_terms(3, terms.clone()).unwrap();
    let whole = BitString::parse("111").unwrap();
    let (a, b) = decompose_move(&whole, &w)
        .unwrap()
        .expect("the all-bits move splits");
    let got = [a.mask().min(b.mask()), a.mask().max(b.mask())];
    let want = [
        mask("110").min(mask("001")),
        mask("110").max(mask("001")),
    ];
    assert_eq!(got, want, "split parts differ");

    let pair_23 = BitString::parse("011").unwrap();
    assert!(
        decompose_move(&pair_23, &w).unwrap().is_none(),
        "the {{2,3}} move must not split"
    );

    accept("three_variable_split", Duration::from_secs(1), start);
}

/// The spectral certificate and the definitional enumeration agree on every
/// commuting move pair, across 100 functions on the degree-4 symmetric group
/// and 100 functions on 8-bit strings.
#[test]
fn certificate_vs_enumeration() {
    let start = Instant::now();

    let group = SymmetricGroup::new(4).unwrap();
    let order = group.order();
    let elements: Vec<Permutation> = (0..order).map(|i| group.element(i)).collect();
    let mut checked_s4 = 0usize;
    for fn_idx in 0..100u64 {
        let f: Vec<f64> = if fn_idx < 60 {
            let mut rng = rng_from(9_000 + fn_idx);
            (0..order).map(|_| rng.random_range(0..60) as f64).collect()
        } else {
            // Ordering objectives give structured spectra where commuting
            // pairs are sometimes genuinely non-interacting.
            let lop = generate_lop(4, 9_600 + fn_idx);
            elements
                .iter()
                .map(|p| lop.evaluate(p).unwrap())
                .collect()
        };
        let coeffs = fourier_transform_all(&group, &f).unwrap();
        for i in 0..order {
            for j in i..order {
                let (h1, h2) = (&elements[i], &elements[j]);
                if !group.commutes(h1, h2) {
                    continue;
                }
                let cert =
                    non_interaction_certificate(&group, &coeffs, h1, h2, Tolerance::Absolute(1e-9))
                        .unwrap();
                let enumerated =
                    non_interacting_by_enumeration(&group, &f, h1, h2, Tolerance::Absolute(1e-9))
                        .unwrap();
                assert_eq!(
                    cert, enumerated,
                    "disagreement at function {fn_idx}, pair ({i},{j})"
                );
                checked_s4 += 1;
            }
        }
    }
    assert!(checked_s4 >= 100 * 60, "too few commuting pairs exercised");

    let n = 8usize;
    let cube = Hypercube::new(n).unwrap();
    for fn_idx in 0..100u64 {
        let mut rng = rng_from(11_000 + fn_idx);
        let (f, terms): (Vec<f64>, Vec<(u64, f64)>) = if fn_idx < 60 {
            // Sparse integer spectrum confined to the low six bits, so pairs
            // touching only the high bits are certifiably non-interacting.
            let terms: Vec<(u64, f64)> = (0..rng.random_range(3..=8))
                .map(|_| {
                    (
                        rng.random_range(1..64u64),
                        rng.random_range(1..=9) as f64,
                    )
                })
                .collect();
            let f = (0..1u64 << n)
                .map(|x| {
                    terms
                        .iter()
                        .map(|&(lambda, w)| {
                            w * graybox::group_fourier::bits::walsh_sign_masks(lambda, x) as f64
                        })
                        .sum()
                })
                .collect();
            (f, terms)
        } else {
            let f: Vec<f64> = (0..1usize << n)
                .map(|_| rng.random_range(0..100) as f64)
                .collect();
            let spectrum = walsh_spectrum(&f).unwrap();
            let terms = spectrum
                .iter()
                .enumerate()
                .filter(|&(_, &w)| w != 0.0)
                .map(|(lambda, &w)| (lambda as u64, w))
                .collect();
            (f, terms)
        };

        let moves: Vec<u64> = (0..25).map(|_| rng.random_range(1..1u64 << n)).collect();
        for i in 0..moves.len() {
            for j in i + 1..moves.len() {
                let cert = walsh_noninteracting(&terms, moves[i], moves[j], Tolerance::Exact);
                let h1 = BitString::from_mask(moves[i], n).unwrap();
                let h2 = BitString::from_mask(moves[j], n).unwrap();
                let enumerated =
                    non_interacting_by_enumeration(&cube, &f, &h1, &h2, Tolerance::Exact).unwrap();
                assert_eq!(
                    cert, enumerated,
                    "disagreement at function {fn_idx}, masks {:b},{:b}",
                    moves[i], moves[j]
                );
            }
        }
    }

    accept("certificate_vs_enumeration", Duration::from_secs(120), start);
}

/// Forward-then-inverse transforms reconstruct 100 random functions on
/// symmetric groups up to degree 5 and 100 on bit strings up to width 12,
/// with max absolute error at most 1e-9.
#[test]
fn fourier_roundtrip() {
    let start = Instant::now();
    let mut worst: f64 = 0.0;

    for n in 2..=5usize {
        let group = SymmetricGroup::new(n).unwrap();
        for fn_idx in 0..25u64 {
            let mut rng = rng_from(21_000 + 100 * n as u64 + fn_idx);
            let f: Vec<f64> = (0..group.order())
                .map(|_| rng.random_range(-40.0..40.0))
                .collect();
            let coeffs = fourier_transform_all(&group, &f).unwrap();
            for (idx, &value) in f.iter().enumerate() {
                let back = inverse_fourier(&group, &coeffs, &group.element(idx)).unwrap();
                worst = worst.max((back - value).abs());
            }
        }
    }

    let cube = Hypercube::new(8).unwrap();
    for fn_idx in 0..20u64 {
        let mut rng = rng_from(23_000 + fn_idx);
        let f: Vec<f64> = (0..cube.order())
            .map(|_| rng.random_range(-40.0..40.0))
            .collect();
        let coeffs = fourier_transform_all(&cube, &f).unwrap();
        for (idx, &value) in f.iter().enumerate() {
            let back = inverse_fourier(&cube, &coeffs, &cube.element(idx)).unwrap();
            worst = worst.max((back - value).abs());
        }
    }
    for (n, count) in [(10usize, 40u64), (12, 40)] {
        for fn_idx in 0..count {
            let mut rng = rng_from(25_000 + 100 * n as u64 + fn_idx);
            let f: Vec<f64> = (0..1usize << n)
                .map(|_| rng.random_range(-40.0..40.0))
                .collect();
            let spectrum = walsh_spectrum(&f).unwrap();
            let back_twice = walsh_spectrum(&spectrum).unwrap();
            let scale = (1usize << n) as f64;
            for (idx, &value) in f.iter().enumerate() {
                worst = worst.max((back_twice[idx] / scale - value).abs());
            }
        }
    }
    assert!(worst <= 1e-9, "max reconstruction error {worst:e}");

    accept("fourier_roundtrip", Duration::from_secs(120), start);
}

/// Uniformly shuffled images on `[lo, lo + width)` embedded at `lo`.
fn window_shuffle(n: usize, lo: usize, width: usize, rng: &mut ChaCha8Rng) -> Permutation {
    let mut local: Vec<usize> = (0..width).collect();
    local.shuffle(rng);
    Permutation::embedded(n, lo, &local)
}

/// Random family of up to four moves in pairwise disjoint windows.
fn disjoint_window_family(
    n: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<(Permutation, usize, usize)> {
    let mut family = Vec::new();
    let mut next = 0usize;
    while next + 2 <= n && family.len() < 4 {
        let width = rng.random_range(2..=3usize).min(n - next);
        if rng.random_range(0..4) > 0 {
            family.push((window_shuffle(n, next, width, rng), next, next + width - 1));
            next += width + rng.random_range(0..2usize);
        } else {
            next += 1;
        }
    }
    if family.is_empty() {
        family.push((window_shuffle(n, 0, 2, rng), 0, 1));
    }
    family
}

/// Composed deltas over disjoint windows split exactly into the windowed
/// sums, across 100 instances of each permutation problem and 100 random
/// move families per instance.
#[test]
fn disjoint_window_additivity() {
    let start = Instant::now();
    for inst_idx in 0..100u64 {
        let n = 4 + (inst_idx as usize % 6);
        let lop = generate_lop(n, 31_000 + inst_idx);
        let smt = generate_smtwtp(n, 31_500 + inst_idx, 0.5, 0.5).unwrap();
        let problems: [&dyn PermProblem; 2] = [&lop, &smt];
        let mut rng = rng_from(32_000 + inst_idx);
        for _ in 0..100 {
            let sigma = Permutation::random(n, &mut rng);
            let family = disjoint_window_family(n, &mut rng);
            let composed = family
                .iter()
                .fold(Permutation::identity(n), |acc, (h, _, _)| acc.then(h));
            for problem in problems {
                let moved = apply_position_move(&sigma, &composed);
                let whole =
                    problem.evaluate(&moved).unwrap() - problem.evaluate(&sigma).unwrap();
                let sum: f64 = family
                    .iter()
                    .map(|(h, lo, hi)| problem.window_delta(&sigma, h, *lo, *hi).unwrap())
                    .sum();
                assert_eq!(whole, sum, "instance {inst_idx}, n {n}");
            }
        }
    }
    accept("disjoint_window_additivity", Duration::from_secs(120), start);
}

/// Crossover output equals the brute-force best over all component subsets
/// and never loses to a parent: 100 parent pairs on each permutation problem
/// and 100 on k-bounded bit strings.
#[test]
fn px_optimal_subset() {
    let start = Instant::now();

    for inst_idx in 0..100u64 {
        let n = 5 + (inst_idx as usize % 6);
        let lop = generate_lop(n, 41_000 + inst_idx);
        let smt = generate_smtwtp(n, 41_500 + inst_idx, 0.4, 0.6).unwrap();
        let problems: [&dyn PermProblem; 2] = [&lop, &smt];
        let mut rng = rng_from(42_000 + inst_idx);
        let sigma1 = Permutation::random(n, &mut rng);
        let sigma2 = Permutation::random(n, &mut rng);
        for problem in problems {
            let decomp = decompose_parents(problem, &sigma1, &sigma2).unwrap();
            let parts: Vec<&Permutation> = decomp.nontrivial().map(|c| &c.h).collect();
            let q = parts.len();
            assert!(q <= 12, "component count {q} exceeds the subset budget");
            let mut best = f64::INFINITY;
            for subset in 0..1usize << q {
                let composed = parts
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| subset >> i & 1 == 1)
                    .fold(Permutation::identity(n), |acc, (_, h)| acc.then(h));
                let child = apply_position_move(&sigma1, &composed);
                best = best.min(problem.evaluate(&child).unwrap());
            }
            let result = px_perm_detailed(problem, &sigma1, &sigma2).unwrap();
            let f_off = problem.evaluate(&result.offspring).unwrap();
            let f1 = problem.evaluate(&sigma1).unwrap();
            let f2 = problem.evaluate(&sigma2).unwrap();
            assert_eq!(f_off, best, "instance {inst_idx}: not the best subset");
            assert!(f_off <= f1.min(f2));
        }
    }

    let mut accepted = 0u64;
    let mut seed = 45_000u64;
    while accepted < 100 {
        seed += 1;
        let n = 10 + (seed as usize % 5);
        let k = 2 + (seed as usize % 2);
        let f = generate_nk(n, k, seed);
        let mut rng = rng_from(seed ^ 0x9e37);
        let p1 = BitString::from_mask(rng.random_range(0..1u64 << n), n).unwrap();
        let p2 = BitString::from_mask(rng.random_range(0..1u64 << n), n).unwrap();
        let vig = build_vig(&WalshExpansion::decompose(&f));
        let result = px_binary_with_vig(&f, &vig, &p1, &p2).unwrap();
        let q = result.components.len();
        if q > 12 {
            continue;
        }
        accepted += 1;
        let masks: Vec<u64> = result.components.iter().map(|c| c.mask).collect();
        let mut best = f64::INFINITY;
        for subset in 0..1usize << q {
            let combined = masks
                .iter()
                .enumerate()
                .filter(|(i, _)| subset >> i & 1 == 1)
                .fold(0u64, |acc, (_, m)| acc | m);
            let child = BitString::from_mask(p1.mask() ^ combined, n).unwrap();
            best = best.min(f.evaluate(&child).unwrap());
        }
        let f_off = f.evaluate(&result.offspring).unwrap();
        let f1 = f.evaluate(&p1).unwrap();
        let f2 = f.evaluate(&p2).unwrap();
        assert_eq!(f_off, best, "seed {seed}: not the best subset");
        assert!(f_off <= f1.min(f2));
    }

    accept("px_optimal_subset", Duration::from_secs(300), start);
}

/// Exhaustively confirms that no enabled window move improves the terminal
/// permutation.
fn assert_window_local_optimum(problem: &dyn PermProblem, sigma: &Permutation) {
    let n = sigma.len();
    for mv in enumerate_moves(n, &[2, 3]) {
        let (lo, hi) = mv.window();
        let d = problem
            .window_delta(sigma, &mv.to_perm(n), lo, hi)
            .unwrap();
        assert!(d >= 0.0, "move at {lo} still improves by {d}");
    }
}

/// Hill climbing with incremental scores: terminal solutions survive an
/// exhaustive improving-move scan, and every intermediate score entry equals
/// a fresh recomputation. 34 ordering, 33 scheduling, 33 k-bounded runs.
#[test]
fn hill_climber_terminal_scan() {
    let start = Instant::now();

    for inst_idx in 0..67u64 {
        let n = 50usize;
        let lop;
        let smt;
        let problem: &dyn PermProblem = if inst_idx < 34 {
            lop = generate_lop(n, 51_000 + inst_idx);
            &lop
        } else {
            smt = generate_smtwtp(n, 51_500 + inst_idx, 0.5, 0.5).unwrap();
            &smt
        };
        let mut rng = rng_from(52_000 + inst_idx);
        let mut sigma = Permutation::random(n, &mut rng);
        let mut sv = ScoreVector::init(problem, &sigma, &[2, 3]).unwrap();
        while let Some(idx) = sv.select(SelectPolicy::RandomImproving, &mut rng) {
            sv.apply(problem, &mut sigma, idx);
            let fresh = ScoreVector::init(problem, &sigma, &[2, 3]).unwrap();
            assert_eq!(sv.deltas(), fresh.deltas(), "instance {inst_idx}");
        }
        assert!(sv.is_local_optimum());
        assert_window_local_optimum(problem, &sigma);
    }

    for inst_idx in 0..33u64 {
        let n = 30usize;
        let f = generate_nk(n, 3, 53_000 + inst_idx);
        let mut rng = rng_from(54_000 + inst_idx);
        let mut x = BitString::from_mask(rng.random_range(0..1u64 << n), n).unwrap();
        let mut scores = FlipScores::new(&f, &x).unwrap();
        while let Some(bit) = scores.select(SelectPolicy::RandomImproving, &mut rng) {
            scores.apply(&f, &mut x, bit);
            let fresh = FlipScores::new(&f, &x).unwrap();
            assert_eq!(scores.scores(), fresh.scores(), "instance {inst_idx}");
        }
        assert!(scores.is_local_optimum());
        let fx = f.evaluate(&x).unwrap();
        for bit in 0..n {
            let d = f.evaluate(&x.flipped(bit)).unwrap() - fx;
            assert!(d >= 0.0, "bit {bit} still improves by {d}");
        }
    }

    accept("hill_climber_terminal_scan", Duration::from_secs(300), start);
}

/// The per-move update cost is bounded by 25 recomputed entries at every
/// size, and the measured maximum does not grow from the smallest size to
/// the largest.
#[test]
fn update_cost_bound() {
    let start = Instant::now();
    let sizes = [20usize, 50, 100, 200];
    let mut max_by_size = Vec::new();
    for (pos, &n) in sizes.iter().enumerate() {
        let mut size_max = 0usize;
        for seed in 0..3u64 {
            let lop = generate_lop(n, 61_000 + 10 * pos as u64 + seed);
            let smt = generate_smtwtp(n, 61_500 + 10 * pos as u64 + seed, 0.5, 0.5).unwrap();
            let problems: [&dyn PermProblem; 2] = [&lop, &smt];
            for problem in problems {
                let mut rng = rng_from(62_000 + 10 * pos as u64 + seed);
                let sigma0 = Permutation::random(n, &mut rng);
                let (_, trace) =
                    window_hill_climb(problem, &sigma0, &[2, 3], 63_000 + seed).unwrap();
                assert!(!trace.steps.is_empty(), "size {n}: no accepted moves measured");
                let worst = trace.max_recomputed();
                assert!(worst <= 25, "size {n}: {worst} entries recomputed");
                size_max = size_max.max(worst);
            }
        }
        max_by_size.push(size_max);
    }
    let smallest = max_by_size[0];
    let largest = *max_by_size.last().unwrap();
    assert!(
        largest <= smallest,
        "update cost grew with size: {max_by_size:?}"
    );
    accept("update_cost_bound", Duration::from_secs(120), start);
}
