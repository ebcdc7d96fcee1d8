//! Acceptance battery. Each test covers one criterion and prints a single
//! pass/fail line; run with `--nocapture` to see them all.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};
use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use weylinv::exterior::{run_oracle, OracleReport};
use weylinv::genring::{GenFrame, MetricRule};
use weylinv::grassmann::verify_trace_identity;
use weylinv::invariants::InvariantSet;
use weylinv::matrix::Mat;
use weylinv::milnor::MilnorRing;
use weylinv::pairing::{
    check_classical, classify_bezoutiante, jacobian_factorization, verify_structure, DTable,
    Entry,
};
use weylinv::poly::Poly;
use weylinv::rootsys::TypeLabel;
use weylinv::scalar::{int, rat, Rat};

type TableCache = Mutex<HashMap<String, (Arc<DTable>, Duration)>>;

fn table(label: TypeLabel) -> (Arc<DTable>, Duration) {
    static CACHE: OnceLock<TableCache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    guard
        .entry(label.to_string())
        .or_insert_with(|| {
            let start = Instant::now();
            let t = DTable::compute(label).unwrap();
            (Arc::new(t), start.elapsed())
        })
        .clone()
}

fn oracle(label: &str) -> (Arc<OracleReport>, Duration) {
    static CACHE: OnceLock<Mutex<HashMap<String, (Arc<OracleReport>, Duration)>>> =
        OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    guard
        .entry(label.to_string())
        .or_insert_with(|| {
            let start = Instant::now();
            let rep = run_oracle(label).unwrap();
            (Arc::new(rep), start.elapsed())
        })
        .clone()
}

fn conclude(criterion: &str, failures: Vec<String>) {
    if failures.is_empty() {
        println!("{criterion}: PASS");
    } else {
        println!("{criterion}: FAIL");
        for f in &failures {
            println!("  {f}");
        }
    }
    assert!(failures.is_empty(), "{criterion} failed: {failures:?}");
}

/// The full expected d-table of an E type: Euler row and column, a frozen
/// inner block indexed by generator degree, zero elsewhere.
fn exceptional_expected(
    label: TypeLabel,
    inner: &[(usize, usize, Rat)],
) -> Vec<Vec<Entry>> {
    let degrees = label.degrees();
    let r = degrees.len();
    let pos = |deg: usize| degrees.iter().position(|&d| d == deg).unwrap();
    let mut want = vec![vec![Entry::new(); r]; r];
    for j in 0..r {
        want[0][j] = vec![(j + 1, int(degrees[j] as i64))];
        want[j][0] = want[0][j].clone();
    }
    for &(da, db, ref c) in inner {
        let (i, j) = (pos(da), pos(db));
        let k = pos(da + db - 2) + 1;
        want[i][j] = vec![(k, c.clone())];
        want[j][i] = want[i][j].clone();
    }
    want
}

fn check_table(label: TypeLabel, inner: &[(usize, usize, Rat)], failures: &mut Vec<String>) {
    let (t, elapsed) = table(label);
    let want = exceptional_expected(label, inner);
    for i in 0..t.rank() {
        for j in 0..t.rank() {
            if t.d[i][j] != want[i][j] {
                failures.push(format!(
                    "{label}: d({},{}) = {:?}, expected {:?}",
                    i + 1,
                    j + 1,
                    t.d[i][j],
                    want[i][j]
                ));
            }
        }
    }
    let budget = if label == TypeLabel::E(8) { 1800 } else { 60 };
    if elapsed > Duration::from_secs(budget) {
        failures.push(format!("{label}: table took {elapsed:?}, budget {budget}s"));
    }
}

#[test]
fn criterion_01_exceptional_tables() {
    let mut failures = Vec::new();
    let one = || int(1);
    check_table(
        TypeLabel::E(6),
        &[
            (5, 5, one()),
            (5, 6, one()),
            (5, 9, one()),
            (6, 8, rat(8, 9)),
        ],
        &mut failures,
    );
    check_table(
        TypeLabel::E(7),
        &[
            (6, 6, one()),
            (6, 8, one()),
            (6, 10, one()),
            (6, 14, one()),
            (8, 8, one()),
            (8, 12, rat(6, 7)),
            (10, 10, rat(5, 7)),
        ],
        &mut failures,
    );
    check_table(
        TypeLabel::E(8),
        &[
            (8, 8, one()),
            (8, 12, one()),
            (8, 14, one()),
            (8, 18, rat(9, 7)),
            (8, 24, one()),
            (12, 14, one()),
            (12, 20, rat(5, 6)),
            (14, 18, rat(3, 4)),
        ],
        &mut failures,
    );
    conclude("criterion 1 (exceptional d-tables, exact)", failures);
}

#[test]
fn criterion_02_classical_closed_forms() {
    let mut failures = Vec::new();
    let mut labels: Vec<TypeLabel> = (1..=8).map(TypeLabel::A).collect();
    labels.extend((2..=6).map(TypeLabel::C));
    labels.extend([TypeLabel::D(4), TypeLabel::D(5), TypeLabel::D(6)]);
    for label in labels {
        if let Err(e) = check_classical(label) {
            failures.push(e);
        }
    }
    // The two middle generators of D4 and D6 have vanishing self-pairings.
    for n in [4usize, 6] {
        let (t, _) = table(TypeLabel::D(n));
        for i in [n / 2 - 1, n / 2] {
            if !t.d[i][i].is_empty() {
                failures.push(format!("D{n}: d({},{}) should vanish", i + 1, i + 1));
            }
        }
    }
    conclude("criterion 2 (classical closed forms, exact)", failures);
}

#[test]
fn criterion_03_vanishing_pattern_all_types() {
    let mut failures = Vec::new();
    for label in TypeLabel::standard_set() {
        let (t, _) = table(label);
        let report = verify_structure(&t);
        println!("  {label}: {}", if report.ok { "PASS" } else { "FAIL" });
        if !report.ok {
            failures.extend(report.failures);
        }
    }
    conclude("criterion 3 (exponent vanishing criterion per type)", failures);
}

fn weighted_vectors(degs: &[usize], d: usize) -> Vec<Vec<u16>> {
    fn rec(degs: &[usize], d: usize, i: usize, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if i == degs.len() {
            if d == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for e in 0..=(d / degs[i]) {
            cur.push(e as u16);
            rec(degs, d - e * degs[i], i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(degs, d, 0, &mut Vec::new(), &mut out);
    out
}

fn random_homogeneous(frame: &GenFrame, d: usize, rng: &mut ChaCha8Rng) -> Option<Poly<Rat>> {
    let degs = frame.gen_degrees();
    let vectors = weighted_vectors(&degs, d);
    if vectors.is_empty() {
        return None;
    }
    let mut p = Poly::zero(degs.len());
    for e in &vectors {
        let c = rng.gen_range(-9i64..=9);
        if c != 0 {
            p = p.add(&Poly::monomial(degs.len(), e.clone(), int(c)));
        }
    }
    if p.is_zero() {
        p = Poly::monomial(degs.len(), vectors[0].clone(), int(1));
    }
    Some(p)
}

fn frame_gram(frame: &GenFrame, ambient: usize) -> Mat<Rat> {
    match &frame.metric {
        MetricRule::Identity => Mat::identity(ambient),
        MetricRule::OnesAdjusted { scale, t } => {
            Mat::from_fn(ambient, ambient, |h, l| {
                let delta = if h == l { int(1) } else { int(0) };
                (delta - t.clone()) * scale.clone()
            })
        }
    }
}

#[test]
fn criterion_04_frame_pairing_matches_coordinates() {
    let mut failures = Vec::new();
    let frames: Vec<(&str, GenFrame, usize, bool)> = vec![
        ("reflection frame", GenFrame::a_reflection(6), 6, true),
        ("even frame", GenFrame::even_sym(5), 5, false),
        ("pfaffian frame", GenFrame::even_pfaffian(4), 4, false),
        (
            "adjusted frame",
            GenFrame::full_sym(6, MetricRule::OnesAdjusted { scale: rat(2, 3), t: rat(1, 9) }),
            6,
            false,
        ),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(0x9e3779b97f4a7c15);
    for (name, frame, ambient, restrict) in &frames {
        let gram = frame_gram(frame, *ambient);
        let degs = frame.gen_degrees();
        let lo = *degs.iter().min().unwrap();
        let pairs: Vec<(usize, usize)> = (lo..=10)
            .flat_map(|da| (da..=10).map(move |db| (da, db)))
            .filter(|(da, db)| da + db <= 12)
            .collect();
        let mut checked = 0usize;
        'outer: while checked < 50 {
            for &(da, db) in &pairs {
                let (Some(a), Some(b)) = (
                    random_homogeneous(frame, da, &mut rng),
                    random_homogeneous(frame, db, &mut rng),
                ) else {
                    continue;
                };
                let lhs_frame = frame.pair(&a, &b);
                let mut lhs = frame.expand_to_coordinates(&lhs_frame).unwrap();
                let ax = frame.expand_to_coordinates(&a).unwrap();
                let bx = frame.expand_to_coordinates(&b).unwrap();
                let mut rhs = Poly::gradient_pairing(&ax, &bx, &gram);
                if *restrict {
                    lhs = lhs.restrict_last();
                    rhs = rhs.restrict_last();
                }
                if lhs != rhs {
                    failures.push(format!("{name}: mismatch at degrees ({da},{db})"));
                    break 'outer;
                }
                checked += 1;
                if checked >= 50 {
                    break;
                }
            }
        }
        println!("  {name}: {checked} random pairs agree");
    }
    conclude("criterion 4 (frame pairing = coordinate gradient pairing)", failures);
}

#[test]
fn criterion_05_milnor_cross_check() {
    let mut failures = Vec::new();
    for n in [6usize, 7, 8] {
        let label = TypeLabel::E(n);
        let ring = MilnorRing::build(label).unwrap();
        // Poincare polynomial of the ring = sum of t^(m_i - 1).
        let mut got: Vec<usize> =
            (0..ring.dim()).map(|i| ring.degree(&ring.basis_elem(i)).unwrap()).collect();
        got.sort_unstable();
        let mut want: Vec<usize> = label.exponents().iter().map(|m| m - 1).collect();
        want.sort_unstable();
        if got != want {
            failures.push(format!("{label}: basis degrees {got:?}, exponents-1 {want:?}"));
        }
        let (t, _) = table(label);
        if let Err(e) = ring.mask_matches(&t) {
            failures.push(e);
        }
    }
    conclude("criterion 5 (Milnor ring Poincare polynomial and mask)", failures);
}

#[test]
fn criterion_06_bezoutiante_antitriangular() {
    let mut failures = Vec::new();
    for label in TypeLabel::standard_set() {
        let (t, _) = table(label);
        let report = classify_bezoutiante(&t);
        if !report.ok {
            failures.extend(report.failures);
        }
    }
    conclude("criterion 6 (Bezoutiante antitriangularity per type)", failures);
}

#[test]
fn criterion_07_exterior_oracle_dimensions() {
    let mut failures = Vec::new();
    let mut total = Duration::ZERO;
    for name in ["sl2", "sl3"] {
        let (rep, elapsed) = oracle(name);
        total += elapsed;
        if rep.gamma_dims != rep.gamma_expected {
            failures.push(format!(
                "{name}: invariant dims {:?} vs {:?}",
                rep.gamma_dims, rep.gamma_expected
            ));
        }
        if rep.a_dims != rep.a_expected {
            failures.push(format!(
                "{name}: covariant dims {:?} vs {:?}",
                rep.a_dims, rep.a_expected
            ));
        }
        let r = if name == "sl2" { 1usize } else { 2 };
        if rep.dim_a != (1 << r) * r {
            failures.push(format!("{name}: dim A = {}, expected {}", rep.dim_a, (1 << r) * r));
        }
        for check in [
            "transgression-lands-in-invariants",
            "transgression-kills-products",
            "transgression-product-rule",
            "transgression-coboundary-rule",
            "multiplication-recovers-primitive",
            "f-matches-differential-construction",
            "pairing-symbol-rule",
            "isotropic-f",
            "isotropic-u",
            "transgressed-pairing",
            "pairing-structure",
            "free-module-basis",
            "matches-weyl-pairing-table",
        ] {
            if !rep.checks.iter().any(|c| c.name == check && c.pass) {
                failures.push(format!("{name}: check {check} did not pass"));
            }
        }
        // Exterior-side constants equal d/(m_i+m_j) from the symmetric side.
        let weyl = DTable::compute(if name == "sl2" { TypeLabel::A(1) } else { TypeLabel::A(2) })
            .unwrap();
        for i in 0..r {
            for j in 0..r {
                let want = match weyl.c_entry(i, j).as_slice() {
                    [(_, c)] => Some(c.clone()),
                    _ => None,
                };
                if rep.c_table[i][j] != want {
                    failures.push(format!(
                        "{name}: c({},{}) = {:?}, symmetric side {want:?}",
                        i + 1,
                        j + 1,
                        rep.c_table[i][j]
                    ));
                }
            }
        }
    }
    // The top-degree multiplication statements only make sense at rank two.
    let (sl3, _) = oracle("sl3");
    for check in ["top-primitive-multiplication", "no-even-terms-in-top-u-multiples"] {
        if !sl3.checks.iter().any(|c| c.name == check && c.pass) {
            failures.push(format!("sl3: check {check} did not pass"));
        }
    }
    if total > Duration::from_secs(120) {
        failures.push(format!("oracles took {total:?}, budget 120s"));
    }
    conclude("criterion 7 (exterior oracle: graded dimensions and constants)", failures);
}

#[test]
fn criterion_08_structural_identities() {
    let mut failures = Vec::new();
    for name in ["sl2", "sl3"] {
        let (rep, _) = oracle(name);
        for check in [
            "killing-invariance",
            "coboundary-squares-to-zero",
            "boundary-squares-to-zero",
            "laplacian-decomposition",
            "coboundary-extends-degree-one",
            "cartan-homotopy",
            "boundary-is-minus-adjoint",
            "contraction-of-coboundary",
            "invariants-are-cycles",
            "contracted-invariants-are-cocycles",
            "boundary-of-contraction",
            "half-turn-contraction",
            "psi-invariance",
            "covariants-are-invariant",
            "u-coboundary-scale",
        ] {
            if !rep.checks.iter().any(|c| c.name == check && c.pass) {
                failures.push(format!("{name}: identity {check} did not pass"));
            }
        }
    }
    conclude("criterion 8 (operator identity suite on sl2/sl3)", failures);
}

#[test]
fn criterion_09_grassmann_matrices() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in [2usize, 3] {
        match verify_trace_identity(n) {
            Ok(rep) => {
                if !rep.nilpotent {
                    failures.push(format!("n={n}: X^{} should vanish", 2 * n));
                }
                if !rep.matrix_reading && !rep.trace_reading {
                    failures.push(format!("n={n}: trace identity fails in both readings"));
                }
                if !rep.odd_traces_anticommute {
                    failures.push(format!("n={n}: odd traces should anticommute"));
                }
            }
            Err(e) => failures.push(e),
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(60) {
        failures.push(format!("grassmann checks took {elapsed:?}"));
    }
    conclude("criterion 9 (Grassmann matrix nilpotence and trace identity)", failures);
}

#[test]
fn criterion_10_jacobian_factorization() {
    let mut failures = Vec::new();
    for label in [TypeLabel::A(2), TypeLabel::A(3), TypeLabel::C(2), TypeLabel::G2] {
        match jacobian_factorization(label) {
            Ok(check) => {
                if check.ratio.is_zero() {
                    failures.push(format!("{label}: zero ratio"));
                }
            }
            Err(e) => failures.push(e),
        }
    }
    conclude("criterion 10 (Jacobian = rational multiple of the Weyl denominator)", failures);
}

/// Shape sanity for the helper used in criterion 4.
#[test]
fn weighted_vector_enumeration_is_complete() {
    let v = weighted_vectors(&[2, 3, 4], 6);
    assert_eq!(v.len(), 3, "6 = 2+2+2 = 2+4 = 3+3: {v:?}");
    assert!(weighted_vectors(&[2, 4], 5).is_empty());
}

/// (da, db) is symmetric, so criterion 4's frames back an InvariantSet whose
/// pair() must commute; spot check once here so the battery never relies on
/// argument order.
#[test]
fn pairing_is_symmetric_for_every_backend() {
    for label in [TypeLabel::A(3), TypeLabel::B(3), TypeLabel::G2] {
        let set = InvariantSet::<Rat>::build(label).unwrap();
        for i in 0..set.rank() {
            for j in 0..set.rank() {
                assert_eq!(
                    set.pair(&set.psis[i], &set.psis[j]),
                    set.pair(&set.psis[j], &set.psis[i]),
                    "{label}"
                );
            }
        }
    }
}
