//! Acceptance suite: one test per criterion, each printing a pass line and
//! enforcing its runtime budget. Run with
//! `cargo test -p prodexp --test acceptance --release -- --nocapture`.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use prodexp::codes::{dual, is_css_pair, reed_solomon, LinearCode};
use prodexp::complexes::{collection_complex, verify_expansion_cheeger_identity};
use prodexp::expansion::{
    agreement_test_constant, agreement_test_constant_direct, codeword_ratio, dinur_conversion,
    expansion_factor, extend_codeword_part, intersection_identity_check, rank_bound_check,
    robustness_constant, smb_expansion_check, upper_bound_witness, zero_rectangle_decompose,
};
use prodexp::gf::{field_create, Elt, Field};
use prodexp::harness::{
    run_expansion_census, run_lemma3_montecarlo, run_lemma4_montecarlo, run_lemma5_montecarlo,
    ExperimentConfig,
};
use prodexp::linalg::{qbinom, random_subspace_from_rng};
use prodexp::tensor::{boxplus_basis, boxplus_membership, CodeCollection, GridShape, TensorWord};
use prodexp::{rat, Caps, Rat};

fn gf2() -> Field {
    field_create(2, 1).unwrap()
}

fn rep3() -> LinearCode {
    LinearCode::from_generator(gf2(), 3, &[vec![1, 1, 1]]).unwrap()
}

fn even3() -> LinearCode {
    dual(&rep3())
}

fn finish(criterion: usize, what: &str, started: Instant, budget_secs: f64) {
    let elapsed = started.elapsed().as_secs_f64();
    println!("criterion {criterion}: PASS - {what} [{elapsed:.2}s]");
    assert!(
        elapsed < budget_secs,
        "criterion {criterion} exceeded its {budget_secs}s budget ({elapsed:.2}s)"
    );
}

/// Random proper code pair over GF(2) with n <= `max_n`.
fn random_proper_pair(rng: &mut ChaCha12Rng, max_n: usize) -> (LinearCode, LinearCode) {
    let f = gf2();
    let n = rng.gen_range(2..=max_n);
    let k1 = rng.gen_range(1..n);
    let k2 = rng.gen_range(1..n);
    let c1 = LinearCode::from_subspace(random_subspace_from_rng(&f, n, k1, rng).unwrap());
    let c2 = LinearCode::from_subspace(random_subspace_from_rng(&f, n, k2, rng).unwrap());
    (c1, c2)
}

#[test]
fn criterion_01_conductance_reproduction() {
    let started = Instant::now();
    let caps = Caps::default();
    let coll = CodeCollection::pair(rep3(), rep3()).unwrap();
    let report = expansion_factor(&coll, &caps).unwrap();
    assert_eq!(report.rho, rat(5, 9), "rho(Rep3, Rep3) must be 5/9 exactly");
    finish(1, "expansion_factor(Rep3, Rep3) = 5/9 = conductance of K_{3,3}", started, 1.0);
}

#[test]
fn criterion_02_agreement_equivalence() {
    let started = Instant::now();
    let caps = Caps::default();
    // named instances, including the direct pair-enumeration cross-check
    for (c1, c2) in [(rep3(), rep3()), (rep3(), even3())] {
        let coll = CodeCollection::pair(c1.clone(), c2.clone()).unwrap();
        let rho = expansion_factor(&coll, &caps).unwrap().rho;
        assert_eq!(agreement_test_constant(&c1, &c2, &caps).unwrap(), rho);
        assert_eq!(agreement_test_constant_direct(&c1, &c2, &caps).unwrap(), rho);
    }
    // 50 random proper pairs at q = 2, n <= 4, exact equality
    let mut rng = ChaCha12Rng::seed_from_u64(202);
    for _ in 0..50 {
        let (c1, c2) = random_proper_pair(&mut rng, 4);
        let coll = CodeCollection::pair(c1.clone(), c2.clone()).unwrap();
        let rho = expansion_factor(&coll, &caps).unwrap().rho;
        let agree = agreement_test_constant(&c1, &c2, &caps).unwrap();
        assert_eq!(rho, agree, "Lemma-1 equality failed on {c1:?} x {c2:?}");
    }
    finish(2, "expansion factor = agreement constant on 50 random + named pairs", started, 60.0);
}

#[test]
fn criterion_03_cheeger_identity() {
    let started = Instant::now();
    let caps = Caps::default();
    // the three named instances
    let pairs: Vec<CodeCollection> = vec![
        CodeCollection::pair(rep3(), rep3()).unwrap(),
        CodeCollection::pair(
            rep3(),
            LinearCode::from_subspace(prodexp::linalg::Subspace::full(gf2(), 3)),
        )
        .unwrap(),
        {
            let rep2 = LinearCode::from_generator(gf2(), 2, &[vec![1, 1]]).unwrap();
            CodeCollection::new(vec![rep2.clone(), rep2.clone(), rep2]).unwrap()
        },
    ];
    for coll in &pairs {
        let id = verify_expansion_cheeger_identity(coll, &caps).unwrap();
        assert!(
            id.holds,
            "rho = {} but h^(m-1)/m = {}",
            id.rho,
            id.cheeger / rat(coll.axes() as i64, 1)
        );
    }
    // 50 random tensor complexes: constructor enforces delta^2 = 0; check
    // acyclicity below the top and the Kunneth top dimension
    let mut rng = ChaCha12Rng::seed_from_u64(303);
    let fields = [field_create(2, 1).unwrap(), field_create(3, 1).unwrap()];
    for trial in 0..50 {
        let f = &fields[trial % 2];
        let m = 2 + trial % 2;
        let mut codes = Vec::new();
        for _ in 0..m {
            let n = rng.gen_range(2..=3);
            let k = rng.gen_range(0..=n);
            codes.push(LinearCode::from_subspace(
                random_subspace_from_rng(f, n, k, &mut rng).unwrap(),
            ));
        }
        let coll = CodeCollection::new(codes).unwrap();
        let cx = collection_complex(&coll).unwrap();
        for j in 0..m {
            assert_eq!(cx.cohomology_dim(j), 0, "H^{j} must vanish below the top");
        }
        let expected: usize = coll.codes().iter().map(|c| c.len() - c.dim()).product();
        assert_eq!(cx.cohomology_dim(m), expected);
    }
    finish(3, "rho = h^(m-1)/m on named instances; 50 random complexes acyclic", started, 300.0);
}

#[test]
fn criterion_04_css_pairs_not_expanding() {
    let started = Instant::now();
    let caps = Caps::default();
    // named: (Rep3, E3) exhaustively
    let coll = CodeCollection::pair(rep3(), even3()).unwrap();
    assert!(is_css_pair(&rep3(), &even3()).unwrap());
    let rho = expansion_factor(&coll, &caps).unwrap().rho;
    assert!(rho <= rat(1, 3), "CSS pair must have rho <= 1/n, got {rho}");
    // named: (RS_5^2, RS_5^3) via the exact identity-matrix witness ratio
    let rs2 = reed_solomon(5, 2).unwrap();
    let rs3 = reed_solomon(5, 3).unwrap();
    assert!(is_css_pair(&rs2, &rs3).unwrap());
    let f5 = rs2.field().clone();
    let mut id = TensorWord::zero(f5, GridShape::new(vec![5, 5]).unwrap());
    for i in 0..5 {
        id.data_mut()[i * 5 + i] = 1;
    }
    assert!(boxplus_membership(&id, &rs2, &rs3).unwrap());
    let rs_coll = CodeCollection::pair(rs2, rs3).unwrap();
    let bound = codeword_ratio(&id, &rs_coll, &caps).unwrap();
    assert!(bound <= rat(1, 5), "identity witness must certify rho <= 1/5");
    // 20 random CSS pairs: C2 := dual(D) for a random D inside C1, so that
    // C2^perp = D lies in C1 (the commutativity condition)
    let mut rng = ChaCha12Rng::seed_from_u64(404);
    let f = gf2();
    let mut built = 0;
    while built < 20 {
        let n = rng.gen_range(3..=4);
        let k1 = rng.gen_range(1..n);
        let c1 = LinearCode::from_subspace(random_subspace_from_rng(&f, n, k1, &mut rng).unwrap());
        // random subspace of C1 via a random full-rank message map
        let j = rng.gen_range(0..=k1);
        let msgs = random_subspace_from_rng(&f, k1, j, &mut rng).unwrap();
        let rows: Vec<Vec<Elt>> = msgs.basis_rows().map(|m| c1.generator().encode(m)).collect();
        let d = LinearCode::from_generator(f.clone(), n, &rows).unwrap();
        let c2 = dual(&d);
        assert!(is_css_pair(&c1, &c2).unwrap(), "sampled pair must be CSS");
        let coll = CodeCollection::pair(c1, c2).unwrap();
        let rho = expansion_factor(&coll, &caps).unwrap().rho;
        assert!(rho <= rat(1, n as i64), "CSS pair violates rho <= 1/n: {rho}");
        built += 1;
    }
    finish(4, "rho <= 1/n on 20 random CSS pairs, (Rep3,E3) and (RS_5^2,RS_5^3)", started, 60.0);
}

#[test]
fn criterion_05_singleton_style_upper_bound() {
    let started = Instant::now();
    let caps = Caps::default();
    // every exhaustively computed pair in the suite
    let mut rng = ChaCha12Rng::seed_from_u64(505);
    let mut suite: Vec<(LinearCode, LinearCode)> = vec![(rep3(), rep3()), (rep3(), even3())];
    for _ in 0..10 {
        suite.push(random_proper_pair(&mut rng, 4));
    }
    for (c1, c2) in &suite {
        if c1.len() != c2.len() {
            continue;
        }
        let n = c1.len() as i64;
        let coll = CodeCollection::pair(c1.clone(), c2.clone()).unwrap();
        let rho = expansion_factor(&coll, &caps).unwrap().rho;
        let eps1 = rat(n - c1.dim() as i64, n);
        let eps2 = rat(n - c2.dim() as i64, n);
        assert!(rho <= eps1 * eps2 + rat(1, n), "Proposition-style bound violated");
    }
    // witness construction on 100 random pairs up to n = 6
    let f = gf2();
    for _ in 0..100 {
        let n = rng.gen_range(2..=6);
        let k1 = rng.gen_range(1..=n);
        let k2 = rng.gen_range(1..=n);
        if k1 * k2 > 16 {
            continue; // keep the exact decomposition coset enumerable
        }
        let c1 = LinearCode::from_subspace(random_subspace_from_rng(&f, n, k1, &mut rng).unwrap());
        let c2 = LinearCode::from_subspace(random_subspace_from_rng(&f, n, k2, &mut rng).unwrap());
        let (y, bound) = upper_bound_witness(&c1, &c2, &caps).unwrap();
        assert!(
            y.weight() <= (n - k1) * (n - k2) + n,
            "witness weight exceeds eps1 eps2 n^2 + n"
        );
        assert!(bound <= rat(((n - k1) * (n - k2)) as i64, (n * n) as i64) + rat(1, n as i64));
    }
    finish(5, "rho <= eps1 eps2 + 1/n on the suite; witness weight on 100 pairs", started, 120.0);
}

#[test]
fn criterion_06_robustness_conversion() {
    let started = Instant::now();
    let caps = Caps::default();
    let rob = robustness_constant(&rep3(), &rep3(), &caps).unwrap();
    let converted = dinur_conversion(&rat(5, 9));
    assert_eq!(converted, rat(5, 28));
    assert!(
        rob >= converted,
        "robustness {rob} must dominate the converted 5/28"
    );
    finish(6, "robustness(Rep3, Rep3) >= 5/28 over all 512 matrices", started, 10.0);
}

#[test]
fn criterion_07_constructive_lemmas() {
    let started = Instant::now();
    let caps = Caps::default();
    let f = gf2();
    // intersection identity on 100 random operand tuples
    let mut rng = ChaCha12Rng::seed_from_u64(707);
    for _ in 0..100 {
        let n = rng.gen_range(3..=4);
        let x = random_subspace_from_rng(&f, n, rng.gen_range(0..=n), &mut rng).unwrap();
        let y = random_subspace_from_rng(&f, n, rng.gen_range(0..=n), &mut rng).unwrap();
        let c1 = LinearCode::from_subspace(
            random_subspace_from_rng(&f, n, rng.gen_range(0..=n), &mut rng).unwrap(),
        );
        let c2 = LinearCode::from_subspace(
            random_subspace_from_rng(&f, n, rng.gen_range(0..=n), &mut rng).unwrap(),
        );
        assert!(
            intersection_identity_check(&x, &y, &c1, &c2, &caps).unwrap(),
            "tensor intersection identity failed"
        );
    }
    // zero-rectangle reconstruction on 200 planted instances
    let mut planted = 0;
    while planted < 200 {
        let use_even = rng.gen_bool(0.5);
        let (c1, c2) = if use_even {
            (even3(), even3())
        } else {
            (rep3(), rep3())
        };
        let n = 3;
        let d1 = c1.min_distance(&caps).unwrap();
        let d2 = c2.min_distance(&caps).unwrap();
        let bar1 = rng.gen_range(0..d1.min(n));
        let bar2 = rng.gen_range(0..d2.min(n));
        let a1: Vec<usize> = (bar1..n).collect();
        let a2: Vec<usize> = (bar2..n).collect();
        let mut x = TensorWord::zero(f.clone(), GridShape::new(vec![n, n]).unwrap());
        for j in 0..bar2 {
            let msg: Vec<Elt> = (0..c1.dim()).map(|_| rng.gen_range(0..2)).collect();
            let cw = c1.generator().encode(&msg);
            for i in 0..n {
                x.data_mut()[i * n + j] = x.field().add(x.data()[i * n + j], cw[i]);
            }
        }
        for i in 0..bar1 {
            let msg: Vec<Elt> = (0..c2.dim()).map(|_| rng.gen_range(0..2)).collect();
            let cw = c2.generator().encode(&msg);
            for j in 0..n {
                x.data_mut()[i * n + j] = x.field().add(x.data()[i * n + j], cw[j]);
            }
        }
        if !x.to_matrix().submatrix(&a1, &a2).is_zero() {
            continue;
        }
        let (dd1, dd2) = zero_rectangle_decompose(&x, &a1, &a2, &c1, &c2, &caps).unwrap();
        assert_eq!(dd1.add(&dd2).unwrap(), x, "reconstruction must be exact");
        assert!(dd1.line_weight(0) <= n - a2.len());
        assert!(dd2.line_weight(1) <= n - a1.len());
        planted += 1;
    }
    // rank bound on every codeword of 10 enumerable instances
    for _ in 0..10 {
        let (c1, c2) = random_proper_pair(&mut rng, 4);
        let coll = CodeCollection::pair(c1.clone(), c2.clone()).unwrap();
        let basis = boxplus_basis(&coll, &caps).unwrap();
        for w in basis.elements() {
            let word = TensorWord::from_flat(f.clone(), coll.shape(), w).unwrap();
            let rb = rank_bound_check(&word, &c1, &c2).unwrap();
            assert!(rb.holds, "rank bound failed: {rb:?}");
        }
    }
    // extension postconditions on 200 random triples
    let coll = CodeCollection::pair(rep3(), even3()).unwrap();
    let basis = boxplus_basis(&coll, &caps).unwrap();
    for _ in 0..200 {
        let msg: Vec<Elt> = (0..basis.dim()).map(|_| rng.gen_range(0..2)).collect();
        let x = TensorWord::from_flat(f.clone(), coll.shape(), basis.encode(&msg)).unwrap();
        let pick = |rng: &mut ChaCha12Rng| -> Vec<usize> {
            let size = rng.gen_range(1..=3usize);
            let mut s: Vec<usize> = (0..3).collect();
            while s.len() > size {
                let idx = rng.gen_range(0..s.len());
                s.remove(idx);
            }
            s
        };
        let a1 = pick(&mut rng);
        let a2 = pick(&mut rng);
        let xp = extend_codeword_part(&x, &a1, &a2, &rep3(), &even3()).unwrap();
        let restricted = xp.to_matrix().submatrix(&a1, &a2);
        assert_eq!(restricted, x.to_matrix().submatrix(&a1, &a2));
        assert_eq!(xp.to_matrix().rank(), restricted.rank());
    }
    finish(7, "Lemmas: identity x100, rectangles x200, rank bound x10 codes, extension x200", started, 300.0);
}

#[test]
fn criterion_08_smb_round_trip() {
    let started = Instant::now();
    let caps = Caps::default();
    let mut rng = ChaCha12Rng::seed_from_u64(808);
    let mut suite: Vec<(LinearCode, LinearCode)> = vec![(rep3(), rep3()), (rep3(), even3())];
    for _ in 0..10 {
        // equal lengths for the variant
        let f = gf2();
        let n = rng.gen_range(3..=4);
        let k1 = rng.gen_range(1..n);
        let k2 = rng.gen_range(1..n);
        let c1 = LinearCode::from_subspace(random_subspace_from_rng(&f, n, k1, &mut rng).unwrap());
        let c2 = LinearCode::from_subspace(random_subspace_from_rng(&f, n, k2, &mut rng).unwrap());
        suite.push((c1, c2));
    }
    for (c1, c2) in &suite {
        let n = c1.len();
        let coll = CodeCollection::pair(c1.clone(), c2.clone()).unwrap();
        let rho = expansion_factor(&coll, &caps).unwrap().rho;
        let nn = Rat::from_integer(n as i64);
        // direction 1: rho-expansion implies the variant at the
        // instantiated parameters
        let s = rho * rho * nn * nn / rat(3, 1);
        let m = rho * rho * nn / rat(6, 1);
        let beta = rho / rat(3, 1);
        let rep = smb_expansion_check(c1, c2, &s, &m, &beta, &caps).unwrap();
        assert!(rep.holds, "instantiated variant failed on a rho-expanding pair");
        // direction 2: any passing triple lower-bounds the factor
        let implied = (s / (rat(2, 1) * nn * nn)).min(beta);
        assert!(rho >= implied, "conversion lower bound violated: {rho} < {implied}");
        // a second passing triple exercises the non-instantiated path
        let (s2, m2, b2) = (rat(0, 1), rat(1, 2), rat(1, 3));
        let rep2 = smb_expansion_check(c1, c2, &s2, &m2, &b2, &caps).unwrap();
        if rep2.holds {
            let implied2 = (s2 / (rat(2, 1) * nn * nn)).min(b2);
            assert!(rho >= implied2);
        }
    }
    finish(8, "(s,m,beta) round trip on the exhaustive suite", started, 300.0);
}

#[test]
fn criterion_09_probabilistic_bounds() {
    let started = Instant::now();
    let caps = Caps::default();
    // q-binomial two-sided bound, exact for q <= 5, n <= 8
    use num_bigint::BigUint;
    for q in [2u64, 3, 4, 5] {
        for n in 0..=8u64 {
            for k in 0..=n {
                let v = qbinom(n, k, q);
                let base = BigUint::from(q).pow((k * (n - k)) as u32);
                assert!(v >= base && v <= &base * 4u32, "qbinom bound at q={q} n={n} k={k}");
            }
        }
    }
    // Monte-Carlo frequencies at N in {10^3, 10^4}
    let r3 = run_lemma3_montecarlo(2, 8, 4, 4, 2, 10_000, 909, &caps).unwrap();
    assert!(r3.pass, "subspace-intersection frequency exceeded its bound");
    let r4 = run_lemma4_montecarlo(2, 6, 3, 3, None, 10_000, 910, &caps).unwrap();
    assert!(r4.pass, "membership frequency exceeded its bound");
    let r5 = run_lemma5_montecarlo(2, 8, 4, 1_000, 911, &caps).unwrap();
    assert!(r5.pass, "property-star failure frequency exceeded its bound");
    finish(9, "qbinom bounds exact; three Monte-Carlo bounds within 3 sigma", started, 300.0);
}

#[test]
fn criterion_10_subcollection_monotonicity() {
    let started = Instant::now();
    let caps = Caps::default();
    let f = gf2();
    let rep2 = LinearCode::from_generator(f.clone(), 2, &[vec![1, 1]]).unwrap();
    let triples = vec![
        CodeCollection::new(vec![rep2.clone(), rep2.clone(), rep2.clone()]).unwrap(),
        CodeCollection::new(vec![rep2.clone(), rep2.clone(), rep3()]).unwrap(),
        CodeCollection::new(vec![rep2.clone(), rep3(), even3()]).unwrap(),
    ];
    for coll in &triples {
        assert!(!coll.is_degenerate(), "monotonicity needs proper codes");
        let triple_rho = expansion_factor(coll, &caps).unwrap().rho;
        for pair_axes in [[0usize, 1], [0, 2], [1, 2]] {
            let sub = coll.subcollection(&pair_axes).unwrap();
            let pair_rho = expansion_factor(&sub, &caps).unwrap().rho;
            assert!(
                pair_rho >= triple_rho,
                "subcollection {pair_axes:?} has rho {pair_rho} < triple {triple_rho}"
            );
        }
    }
    finish(10, "every 2-subcollection at least as expanding as its triple", started, 120.0);
}

#[test]
fn criterion_11_census_reproducibility() {
    let started = Instant::now();
    let make = |seed: u64| ExperimentConfig {
        name: "acceptance-census".into(),
        q: 2,
        n: 4,
        k1: 2,
        k2: 2,
        trials: 50,
        seed,
        caps: Caps::default(),
    };
    let a = run_expansion_census(&make(7)).unwrap();
    let b = run_expansion_census(&make(7)).unwrap();
    assert_eq!(a.to_json(), b.to_json(), "same seed must give a byte-identical report");
    assert_eq!(a.to_csv(), b.to_csv());
    let c = run_expansion_census(&make(8)).unwrap();
    assert_ne!(a.to_json(), c.to_json(), "a different seed must change the trial log");
    assert_eq!(a.upper_bound_violations, 0);
    assert_eq!(c.upper_bound_violations, 0);
    assert_eq!(a.exact_trials, 50);
    finish(11, "census byte-identical under the seed; zero violations either way", started, 120.0);
}
