//! Basic invariant sets psi_1..psi_r for the Weyl group of each type, plus
//! the linear algebra for expanding an invariant in psi-monomials and for
//! extracting its class modulo decomposables.
//!
//! Each classical family lives in a generator frame (symmetric functions of
//! a suitable kind), the exceptional E types get explicit seed polynomials
//! of low degree completed by repeated differential pairing, and G2/F4 fall
//! back to Weyl-averaged power sums of a linear form over raw coordinates.

use crate::genring::{GenFrame, MetricRule};
use crate::matrix::Mat;
use crate::poly::{Mono, Poly};
use crate::rootsys::{RootSystem, TypeLabel};
use crate::scalar::{rat, Qx, Rat, Scalar};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Computational home of an invariant set.
pub enum Backend {
    /// Polynomials in the generators of a frame.
    Frame(GenFrame),
    /// Polynomials in the ambient coordinates of a root system.
    Coords(Box<RootSystem>),
}

pub struct InvariantSet<S: Scalar> {
    pub label: TypeLabel,
    pub backend: Backend,
    /// psi_1..psi_r ordered by degree, ties ordered as in `exponents`.
    pub psis: Vec<Poly<S>>,
    pub degrees: Vec<usize>,
    pub exponents: Vec<usize>,
}

// Degree 2, 5 and 6 invariants of E6 as polynomials in the power sums of the
// 6-dimensional permutation representation of an S6 subgroup.
const E6_A2: &str = "(1/2)*p1^2 + (3/2)*p2";
const E6_A5: &str = "(11/20)*p1^5 - 6*p1^3*p2 + (27/4)*p1*p2^2 + (27/2)*p1^2*p3 \
                     - (27/2)*p2*p3 - (27/2)*p1*p4 + (81/5)*p5";
const E6_A6: &str = "(25/8)*p1^6 - (99/8)*p1^4*p2 - (297/8)*p1^2*p2^2 + (243/8)*p2^3 \
                     + 270*p1*p2*p3 - 135*p3^2 + (135/2)*p1^2*p4 - (405/2)*p2*p4 \
                     - 324*p1*p5 + 324*p6";

// Same for E7 over an S7 subgroup; the degree 6 and 8 seeds carry overall
// factors 10/3 and 10/7 which are applied after parsing.
const E7_A2: &str = "p1^2 + 2*p2";
const E7_A6_CORE: &str = "p1^6 - 12*p1^4*p2 + 36*p1^2*p2^2 - 6*p2^3 + 40*p1^3*p3 \
                          - 120*p1*p2*p3 + 40*p3^2 - 60*p1^2*p4 + 60*p2*p4 \
                          + 144*p1*p5 - 96*p6";
const E7_A8_CORE: &str = "p1^8 + 224*p1^6*p2 - 1680*p1^4*p2^2 + 840*p1^2*p2^3 \
                          + 420*p2^4 - 1568*p1^5*p3 + 12320*p1^3*p2*p3 \
                          - 12320*p1^2*p3^2 - 4480*p2*p3^2 + 5040*p1^4*p4 \
                          - 18480*p1^2*p2*p4 - 3360*p2^2*p4 + 20160*p1*p3*p4 \
                          - 1680*p4^2 - 18816*p1^3*p5 + 12096*p1*p2*p5 \
                          + 2688*p3*p5 + 33600*p1^2*p6 + 6720*p2*p6 - 34560*p1*p7";

// E8 seeds in the invariants of a D8 subsystem: even power sums p_2..p_14
// and the Pfaffian P. The sign of the P terms is tied to the orientation of
// the coordinates; this choice matches the root model in `rootsys`.
const E8_A8: &str = "10080*P - 105*p2^2*p4 + 105*p4^2 + 168*p2*p6 - 180*p8";
const E8_A12: &str = "103950*P*p2^2 + (10395/64)*p2^6 - 41580*P*p4 \
                      - (51975/32)*p2^4*p4 + (51975/16)*p2^2*p4^2 - (5775/8)*p4^3 \
                      + 3465*p2^3*p6 - 6930*p2*p4*p6 + 2772*p6^2 \
                      - (25245/4)*p2^2*p8 + (10395/2)*p4*p8 + 8316*p2*p10 - 7560*p12";

impl<S: Scalar> InvariantSet<S> {
    /// Construct the basic invariants of the given type. Types D(n) need a
    /// scalar that can hold square roots (`Qx`); everything else works over
    /// the rationals.
    pub fn build(label: TypeLabel) -> Result<Self, String> {
        Self::build_inner(label, None)
    }

    /// Build an exceptional E type from caller-supplied seed polynomials in
    /// place of the bundled ones, for sensitivity experiments. The three
    /// strings replace the bundled seeds in order; the normalization
    /// pipeline (scale factors and pairing completions) is unchanged.
    pub fn build_with_seeds(label: TypeLabel, seeds: &[String; 3]) -> Result<Self, String> {
        if !matches!(label, TypeLabel::E(_)) {
            return Err(format!("{label}: seed overrides only apply to E types"));
        }
        Self::build_inner(label, Some(seeds))
    }

    fn build_inner(label: TypeLabel, seeds: Option<&[String; 3]>) -> Result<Self, String> {
        let (backend, psis) = match label {
            TypeLabel::A(n) => build_a(n),
            TypeLabel::B(n) | TypeLabel::C(n) => build_even(n),
            TypeLabel::D(n) => build_d(n)?,
            TypeLabel::E(n) => build_e(n, seeds)?,
            TypeLabel::G2 | TypeLabel::F4 => build_averaged(label)?,
        };
        let set = InvariantSet {
            label,
            backend,
            psis,
            degrees: label.degrees(),
            exponents: label.exponents(),
        };
        set.check_shape()?;
        Ok(set)
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    fn check_shape(&self) -> Result<(), String> {
        if self.psis.len() != self.degrees.len() {
            return Err(format!(
                "{}: got {} invariants for rank {}",
                self.label,
                self.psis.len(),
                self.degrees.len()
            ));
        }
        for (i, (psi, &d)) in self.psis.iter().zip(&self.degrees).enumerate() {
            let ok = match &self.backend {
                Backend::Frame(f) => f.is_homogeneous(psi, d),
                Backend::Coords(_) => !psi.is_zero() && psi.homogeneous_degree() == Some(d),
            };
            if !ok {
                return Err(format!(
                    "{}: psi_{} is not homogeneous of degree {d}",
                    self.label,
                    i + 1
                ));
            }
        }
        Ok(())
    }

    /// The differential pairing (da, db) in this set's backend.
    pub fn pair(&self, a: &Poly<S>, b: &Poly<S>) -> Poly<S> {
        match &self.backend {
            Backend::Frame(f) => f.pair(a, b),
            Backend::Coords(rs) => {
                let gram = rs.gram.map(|c| S::from_rat(c.clone()));
                Poly::gradient_pairing(a, b, &gram)
            }
        }
    }

    /// Pairing of two basic invariants, 1-based indices.
    pub fn pair_basic(&self, i: usize, j: usize) -> Poly<S> {
        self.pair(&self.psis[i - 1], &self.psis[j - 1])
    }

    /// Degree of a homogeneous element in this backend's grading.
    pub fn degree_of(&self, f: &Poly<S>) -> Result<usize, String> {
        if f.is_zero() {
            return Err("zero polynomial has no degree".into());
        }
        match &self.backend {
            Backend::Frame(fr) => {
                let d = fr.xdegree(f).ok_or("empty polynomial")?;
                if fr.is_homogeneous(f, d) {
                    Ok(d)
                } else {
                    Err("inhomogeneous polynomial".into())
                }
            }
            Backend::Coords(_) => f.homogeneous_degree().ok_or_else(|| "inhomogeneous polynomial".into()),
        }
    }

    /// Write a homogeneous invariant as a linear combination of monomials in
    /// psi_1..psi_r and return the coefficients of the bare generators, i.e.
    /// the class of `f` modulo decomposables, as (1-based index, coefficient)
    /// pairs. Errors when `f` does not lie in the ring generated by the psi,
    /// which for a frame backend doubles as an invariance certificate.
    pub fn mod_squares(&self, f: &Poly<S>) -> Result<Vec<(usize, S)>, String> {
        if f.is_zero() {
            return Ok(Vec::new());
        }
        let d = self.degree_of(f)?;
        let exps = weighted_exponent_vectors(&self.degrees, d, 1);
        let sol = express_in_monomials(&self.psis, &exps, f).ok_or_else(|| {
            format!("{}: degree-{d} element is not a polynomial in the basic invariants", self.label)
        })?;
        let mut linear = Vec::new();
        for (e, c) in exps.iter().zip(sol) {
            if c.is_zero() {
                continue;
            }
            if e.iter().map(|&x| x as usize).sum::<usize>() == 1 {
                let idx = e.iter().position(|&x| x == 1).unwrap();
                linear.push((idx + 1, c));
            }
        }
        linear.sort_by_key(|(k, _)| *k);
        Ok(linear)
    }

    /// Whether a homogeneous invariant lies in the span of products of two or
    /// more basic invariants.
    pub fn is_decomposable(&self, f: &Poly<S>) -> Result<bool, String> {
        if f.is_zero() {
            return Ok(true);
        }
        let d = self.degree_of(f)?;
        Ok(decomposable_over(&self.psis, &self.degrees, f, d))
    }

    /// Check that every psi_i is genuinely a generator: nonzero and not in
    /// the span of products of the remaining ones.
    pub fn verify_generators(&self) -> Result<(), String> {
        for (i, psi) in self.psis.iter().enumerate() {
            if psi.is_zero() {
                return Err(format!("{}: psi_{} is zero", self.label, i + 1));
            }
            let mut others: Vec<Poly<S>> = Vec::new();
            let mut odeg = Vec::new();
            for (j, q) in self.psis.iter().enumerate() {
                if j != i {
                    others.push(q.clone());
                    odeg.push(self.degrees[j]);
                }
            }
            if decomposable_over(&others, &odeg, psi, self.degrees[i]) {
                return Err(format!(
                    "{}: psi_{} of degree {} is decomposable",
                    self.label,
                    i + 1,
                    self.degrees[i]
                ));
            }
        }
        Ok(())
    }

    /// Expand a frame-backed element into ambient coordinates; identity on
    /// coordinate backends.
    pub fn expand(&self, f: &Poly<S>) -> Result<Poly<S>, String> {
        match &self.backend {
            Backend::Frame(fr) => fr.expand_to_coordinates(f),
            Backend::Coords(_) => Ok(f.clone()),
        }
    }

    pub fn render(&self, f: &Poly<S>) -> String {
        match &self.backend {
            Backend::Frame(fr) => fr.render(f),
            Backend::Coords(_) => f.to_string(),
        }
    }
}

fn q_var<S: Scalar>(g: usize, idx: usize, deg: i64) -> Poly<S> {
    Poly::var(g, idx).scale(&S::from_rat(rat(1, deg)))
}

fn build_a<S: Scalar>(n: usize) -> (Backend, Vec<Poly<S>>) {
    let frame = GenFrame::a_reflection(n + 1);
    let g = frame.gen_count();
    // psi_i = q_{i+1} = p_{i+1}/(i+1), the generator at index i-1
    let psis = (1..=n).map(|i| q_var(g, i - 1, i as i64 + 1)).collect();
    (Backend::Frame(frame), psis)
}

fn build_even<S: Scalar>(n: usize) -> (Backend, Vec<Poly<S>>) {
    let frame = GenFrame::even_sym(n);
    let g = frame.gen_count();
    // psi_i = q_{2i} = p_{2i}/(2i)
    let psis = (1..=n).map(|i| q_var(g, i - 1, 2 * i as i64)).collect();
    (Backend::Frame(frame), psis)
}

fn build_d<S: Scalar>(n: usize) -> Result<(Backend, Vec<Poly<S>>), String> {
    let frame = GenFrame::even_pfaffian(n);
    let g = frame.gen_count();
    let pf = Poly::<S>::var(g, n - 1);
    let m = n / 2;
    let mut psis: Vec<Poly<S>> = Vec::with_capacity(n);
    if n % 2 == 1 {
        // q_2,..,q_{2m}, then sqrt(-2m) x_1..x_n in the middle degree n,
        // then q_{2m+2},..,q_{2n-2}.
        let rad = S::from_qx(Qx::sqrt(-2 * m as i64))
            .ok_or("type D needs the quadratic extension scalar")?;
        for i in 1..=m {
            psis.push(q_var(g, i - 1, 2 * i as i64));
        }
        psis.push(pf.scale(&rad));
        for i in m + 2..=n {
            psis.push(q_var(g, i - 2, 2 * i as i64 - 2));
        }
    } else {
        // the two middle invariants of degree n are q_n +- sqrt(-(n-1)) x_1..x_n
        let rad = S::from_qx(Qx::sqrt(-(2 * m as i64 - 1)))
            .ok_or("type D needs the quadratic extension scalar")?;
        for i in 1..m {
            psis.push(q_var(g, i - 1, 2 * i as i64));
        }
        let qm: Poly<S> = q_var(g, m - 1, 2 * m as i64);
        psis.push(qm.add(&pf.scale(&rad)));
        psis.push(qm.sub(&pf.scale(&rad)));
        for i in m + 2..=n {
            psis.push(q_var(g, i - 2, 2 * i as i64 - 2));
        }
    }
    Ok((Backend::Frame(frame), psis))
}

fn build_e<S: Scalar>(
    n: usize,
    seeds: Option<&[String; 3]>,
) -> Result<(Backend, Vec<Poly<S>>), String> {
    let half = S::from_rat(rat(1, 2));
    let seed = |i: usize, bundled: &str| -> String {
        seeds.map_or_else(|| bundled.to_string(), |s| s[i].clone())
    };
    match n {
        6 => {
            let frame = GenFrame::full_sym(
                6,
                MetricRule::OnesAdjusted { scale: rat(2, 3), t: rat(1, 9) },
            );
            let a2: Poly<S> = frame.parse(&seed(0, E6_A2))?;
            let a5: Poly<S> = frame.parse(&seed(1, E6_A5))?;
            let a6: Poly<S> = frame.parse(&seed(2, E6_A6))?;
            let a8 = frame.pair(&a5, &a5);
            let a9 = frame.pair(&a5, &a6);
            let a12 = frame.pair(&a5, &a9);
            let psis = vec![a2.scale(&half), a5, a6, a8, a9, a12];
            Ok((Backend::Frame(frame), psis))
        }
        7 => {
            let frame = GenFrame::full_sym(
                7,
                MetricRule::OnesAdjusted { scale: rat(1, 2), t: rat(1, 9) },
            );
            let a2: Poly<S> = frame.parse(&seed(0, E7_A2))?;
            let a6 = frame.parse::<S>(&seed(1, E7_A6_CORE))?.scale(&S::from_rat(rat(10, 3)));
            let a8 = frame.parse::<S>(&seed(2, E7_A8_CORE))?.scale(&S::from_rat(rat(10, 7)));
            let a10 = frame.pair(&a6, &a6);
            let a12 = frame.pair(&a6, &a8);
            let a14 = frame.pair(&a6, &a10);
            let a18 = frame.pair(&a6, &a14);
            let psis = vec![a2.scale(&half), a6, a8, a10, a12, a14, a18];
            Ok((Backend::Frame(frame), psis))
        }
        8 => {
            let frame = GenFrame::even_pfaffian(8);
            let a2: Poly<S> = frame.parse(&seed(0, "p2"))?;
            let a8: Poly<S> = frame.parse(&seed(1, E8_A8))?;
            let a12: Poly<S> = frame.parse(&seed(2, E8_A12))?;
            let a14 = frame.pair(&a8, &a8);
            let a18 = frame.pair(&a8, &a12);
            let a20 = frame.pair(&a8, &a14);
            let a24 = frame.pair(&a14, &a12);
            let a30 = frame.pair(&a8, &a24);
            let psis = vec![a2.scale(&half), a8, a12, a14, a18, a20, a24, a30];
            Ok((Backend::Frame(frame), psis))
        }
        _ => Err(format!("no exceptional type E{n}")),
    }
}

fn build_averaged<S: Scalar>(label: TypeLabel) -> Result<(Backend, Vec<Poly<S>>), String> {
    let rs = RootSystem::build(label)?;
    let group = rs.enumerate_weyl(10_000)?;
    let mut psis: Vec<Poly<S>> = vec![rs.half_metric_quadratic().lift()];
    let mut built_deg = vec![2usize];
    for &d in &label.degrees()[1..] {
        let mut found = None;
        for a in candidate_directions(rs.ambient) {
            let avg = rs.orbit_power_sum(&a, d, &group);
            if avg.is_zero() {
                continue;
            }
            let cand: Poly<S> = avg.lift();
            if !decomposable_over(&psis, &built_deg, &cand, d) {
                found = Some(cand);
                break;
            }
        }
        psis.push(found.ok_or_else(|| {
            format!("{label}: no indecomposable orbit average in degree {d}")
        })?);
        built_deg.push(d);
    }
    Ok((Backend::Coords(Box::new(rs)), psis))
}

/// Deterministic sequence of directions used to seed orbit averages:
/// (1,0,..), (1,2,0,..), .., (1,2,..,n), then geometric ones (1,m,m^2,..).
fn candidate_directions(n: usize) -> Vec<Vec<Rat>> {
    let mut out = Vec::new();
    for k in 1..=n {
        let mut a = vec![Rat::zero(); n];
        for (i, slot) in a.iter_mut().enumerate().take(k) {
            *slot = rat(i as i64 + 1, 1);
        }
        out.push(a);
    }
    for m in 2..=6i64 {
        let mut a = vec![Rat::zero(); n];
        let mut v = Rat::one();
        for slot in a.iter_mut() {
            *slot = v.clone();
            v *= rat(m, 1);
        }
        out.push(a);
    }
    out
}

/// All exponent vectors e with sum_i e_i * degrees[i] = target and at least
/// `min_factors` factors counted with multiplicity.
pub fn weighted_exponent_vectors(
    degrees: &[usize],
    target: usize,
    min_factors: usize,
) -> Vec<Vec<u16>> {
    fn rec(
        i: usize,
        left: usize,
        factors: usize,
        degrees: &[usize],
        min_factors: usize,
        cur: &mut Vec<u16>,
        out: &mut Vec<Vec<u16>>,
    ) {
        if i == degrees.len() {
            if left == 0 && factors >= min_factors {
                out.push(cur.clone());
            }
            return;
        }
        for e in 0..=left / degrees[i] {
            cur[i] = e as u16;
            rec(i + 1, left - e * degrees[i], factors + e, degrees, min_factors, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    let mut cur = vec![0u16; degrees.len()];
    rec(0, target, 0, degrees, min_factors, &mut cur, &mut out);
    out
}

fn psi_monomial<S: Scalar>(psis: &[Poly<S>], exps: &[u16]) -> Poly<S> {
    let nvars = psis.first().map(|p| p.nvars()).unwrap_or(0);
    let mut r = Poly::one(nvars);
    for (p, &e) in psis.iter().zip(exps) {
        if e > 0 {
            r = r.mul(&p.pow(e as usize));
        }
    }
    r
}

/// Solve f = sum_k c_k * prod_i psi_i^{exps_k_i} for the c_k. None when f is
/// not in the span; the solution is unique when the psi are algebraically
/// independent.
fn express_in_monomials<S: Scalar>(
    psis: &[Poly<S>],
    exps: &[Vec<u16>],
    f: &Poly<S>,
) -> Option<Vec<S>> {
    let basis: Vec<Poly<S>> = exps.iter().map(|e| psi_monomial(psis, e)).collect();
    let mut rows: BTreeMap<Mono, usize> = BTreeMap::new();
    for p in basis.iter().chain(std::iter::once(f)) {
        for (m, _) in p.terms() {
            let next = rows.len();
            rows.entry(m.clone()).or_insert(next);
        }
    }
    let nrows = rows.len();
    let mut mat = Mat::zero(nrows, basis.len());
    for (j, p) in basis.iter().enumerate() {
        for (m, c) in p.terms() {
            mat.set(rows[m], j, c.clone());
        }
    }
    let mut rhs = vec![S::zero(); nrows];
    for (m, c) in f.terms() {
        rhs[rows[m]] = c.clone();
    }
    mat.solve(&rhs)
}

/// Whether f (homogeneous of degree fdeg) lies in the span of products of at
/// least two of the given invariants.
pub fn decomposable_over<S: Scalar>(
    psis: &[Poly<S>],
    degrees: &[usize],
    f: &Poly<S>,
    fdeg: usize,
) -> bool {
    let exps = weighted_exponent_vectors(degrees, fdeg, 2);
    express_in_monomials(psis, &exps, f).is_some()
}
