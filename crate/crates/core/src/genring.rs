//! Polynomial rings on the basic-invariant generators of each Weyl type.
//!
//! A frame is a free polynomial ring on a finite set of generators (power
//! sums, possibly together with the product-of-coordinates generator), with
//! just enough Newton-identity machinery to rewrite out-of-range power sums
//! back into the generators. The differential pairing of two frame elements
//! is computed by the Leibniz rule from a precomputed generator-pair table,
//! so it never leaves the frame and never touches coordinates; coordinates
//! only appear in the explicit "expand" escape hatch used by oracles and
//! invariance checks.
//!
//! Frames:
//! * `FullSym(v)`: generators p_1..p_v, the full symmetric algebra (types
//!   E6, E7, with a rank-one-adjusted metric rule).
//! * `AReflection(v)`: v ambient coordinates, generators p_2..p_v, with the
//!   restriction rule p_1 = 0 (type A_{v-1} on the trace-zero hyperplane).
//! * `EvenSym(n)`: generators p_2, p_4, .., p_{2n} (types B_n and C_n).
//! * `EvenPfaffian(n)`: generators p_2, .., p_{2n-2} and P = x_1..x_n
//!   (type D_n; E8 reuses the n = 8 frame).

use crate::poly::Poly;
use crate::scalar::{int, rat, Rat, Scalar};
use num_traits::One;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FrameKind {
    FullSym { vars: usize },
    AReflection { ambient: usize },
    EvenSym { vars: usize },
    EvenPfaffian { vars: usize },
}

#[derive(Clone, Debug)]
pub struct GenDef {
    pub name: String,
    /// Degree as a polynomial in the underlying coordinates.
    pub degree: usize,
}

/// How the coordinate metric enters the generator pairing rule. With the
/// gram matrix c (I - t J) on the functionals (J all-ones), power sums pair
/// as p_i o p_j = c i j (p_{i+j-2} - t p_{i-1} p_{j-1}).
#[derive(Clone, PartialEq, Debug)]
pub enum MetricRule {
    Identity,
    OnesAdjusted { scale: Rat, t: Rat },
}

pub struct GenFrame {
    pub kind: FrameKind,
    pub gens: Vec<GenDef>,
    /// Number of underlying coordinates.
    pub underlying: usize,
    pub metric: MetricRule,
    max_power: usize,
    /// Reductions of power sums into the frame, indexed by the power in the
    /// coordinates; even frames populate even indices only.
    red: Vec<Option<Poly<Rat>>>,
    /// P o P for the Pfaffian frames: e_{n-1} of the squared coordinates.
    pf_pf: Option<Poly<Rat>>,
    /// Generator pairing table.
    table: Vec<Vec<Poly<Rat>>>,
}

const EXPAND_MAX_VARS: usize = 8;
const EXPAND_MAX_DEGREE: usize = 16;

// --- Newton identity machinery -------------------------------------------

/// e_0..e_upto as polynomials in the power sums p_1..p_avail (ring
/// variables 0..ringvars-1; p_i is variable i-1).
fn newton_elementaries(ringvars: usize, avail: usize, upto: usize) -> Vec<Poly<Rat>> {
    assert!(upto <= avail);
    let mut e: Vec<Poly<Rat>> = vec![Poly::one(ringvars)];
    for j in 1..=upto {
        let mut acc = Poly::zero(ringvars);
        for i in 1..=j {
            let term = e[j - i].mul(&Poly::var(ringvars, i - 1));
            acc = if i % 2 == 1 { acc.add(&term) } else { acc.sub(&term) };
        }
        e.push(acc.scale(&rat(1, j as i64)));
    }
    e
}

/// red[k] = p_k expressed in the ring generated by p_1..p_navail, where the
/// underlying variable count is `nvars` (so e_{nvars+1} = .. = 0) and e_top
/// optionally overrides e_{nvars} (the Pfaffian-squared rule). Valid for
/// k = 0..=maxp; red[0] is the constant nvars.
fn newton_reductions(
    ringvars: usize,
    navail: usize,
    nvars: usize,
    e_top: Option<Poly<Rat>>,
    maxp: usize,
) -> Vec<Poly<Rat>> {
    let mut e = newton_elementaries(ringvars, navail, nvars.min(navail));
    if let Some(top) = e_top {
        assert_eq!(e.len(), nvars); // e_nvars not derivable from the generators
        e.push(top);
    }
    assert!(e.len() >= nvars + 1 || nvars <= navail);
    let mut red: Vec<Poly<Rat>> = Vec::with_capacity(maxp + 1);
    red.push(Poly::constant(ringvars, int(nvars as i64)));
    for k in 1..=maxp {
        if k <= navail {
            red.push(Poly::var(ringvars, k - 1));
            continue;
        }
        // p_k = sum_{j=1}^{nvars} (-1)^{j+1} e_j p_{k-j}, valid for k >= nvars
        // with the convention p_0 = nvars.
        assert!(k >= nvars, "p_{k} is neither a generator nor reducible");
        let mut acc = Poly::zero(ringvars);
        for j in 1..=nvars {
            let term = e[j].mul(&red[k - j]);
            acc = if j % 2 == 1 { acc.add(&term) } else { acc.sub(&term) };
        }
        red.push(acc);
    }
    red
}

fn drop_var0(p: &Poly<Rat>) -> Poly<Rat> {
    let n = p.nvars();
    let mut out = Poly::zero(n - 1);
    for (m, c) in p.terms() {
        assert_eq!(m.0[0], 0, "variable 0 still occurs");
        out = out.add(&Poly::monomial(n - 1, m.0[1..].to_vec(), c.clone()));
    }
    out
}

impl GenFrame {
    pub fn full_sym(vars: usize, metric: MetricRule) -> GenFrame {
        Self::full_sym_with_max(vars, metric, 2 * vars)
    }

    pub fn full_sym_with_max(vars: usize, metric: MetricRule, max_power: usize) -> GenFrame {
        let max_power = max_power.max(2 * vars);
        let gens = (1..=vars)
            .map(|i| GenDef { name: format!("p{i}"), degree: i })
            .collect();
        let red_all = newton_reductions(vars, vars, vars, None, max_power);
        let red = red_all.into_iter().map(Some).collect();
        let mut f = GenFrame {
            kind: FrameKind::FullSym { vars },
            gens,
            underlying: vars,
            metric,
            max_power,
            red,
            pf_pf: None,
            table: Vec::new(),
        };
        f.build_table();
        f
    }

    pub fn a_reflection(ambient: usize) -> GenFrame {
        Self::a_reflection_with_max(ambient, 2 * ambient)
    }

    pub fn a_reflection_with_max(ambient: usize, max_power: usize) -> GenFrame {
        assert!(ambient >= 2);
        let max_power = max_power.max(2 * ambient);
        let gens = (2..=ambient)
            .map(|i| GenDef { name: format!("p{i}"), degree: i })
            .collect();
        let red_all = newton_reductions(ambient, ambient, ambient, None, max_power);
        let zero = Poly::zero(ambient - 1);
        let red: Vec<Option<Poly<Rat>>> = red_all
            .iter()
            .enumerate()
            .map(|(k, p)| {
                if k == 0 {
                    Some(Poly::constant(ambient - 1, int(ambient as i64)))
                } else if k == 1 {
                    Some(zero.clone())
                } else {
                    Some(drop_var0(&p.substitute(0, &Poly::zero(ambient))))
                }
            })
            .collect();
        let mut f = GenFrame {
            kind: FrameKind::AReflection { ambient },
            gens,
            underlying: ambient,
            metric: MetricRule::Identity,
            max_power,
            red,
            pf_pf: None,
            table: Vec::new(),
        };
        f.build_table();
        f
    }

    pub fn even_sym(vars: usize) -> GenFrame {
        let max_power = 4 * vars;
        let gens = (1..=vars)
            .map(|i| GenDef { name: format!("p{}", 2 * i), degree: 2 * i })
            .collect();
        let red_y = newton_reductions(vars, vars, vars, None, max_power / 2);
        let mut red = vec![None; max_power + 1];
        for (k, p) in red_y.into_iter().enumerate() {
            red[2 * k] = Some(p);
        }
        let mut f = GenFrame {
            kind: FrameKind::EvenSym { vars },
            gens,
            underlying: vars,
            metric: MetricRule::Identity,
            max_power,
            red,
            pf_pf: None,
            table: Vec::new(),
        };
        f.build_table();
        f
    }

    pub fn even_pfaffian(vars: usize) -> GenFrame {
        assert!(vars >= 2);
        let ringvars = vars; // y-power sums p_2..p_{2v-2} plus the product P
        let max_power = 4 * vars;
        let mut gens: Vec<GenDef> = (1..vars)
            .map(|i| GenDef { name: format!("p{}", 2 * i), degree: 2 * i })
            .collect();
        gens.push(GenDef { name: "P".into(), degree: vars });
        let pf = Poly::<Rat>::var(ringvars, vars - 1);
        let red_y = newton_reductions(
            ringvars,
            vars - 1,
            vars,
            Some(pf.mul(&pf)),
            max_power / 2,
        );
        let e = newton_elementaries(ringvars, vars - 1, vars - 1);
        let mut red = vec![None; max_power + 1];
        for (k, p) in red_y.into_iter().enumerate() {
            red[2 * k] = Some(p);
        }
        let mut f = GenFrame {
            kind: FrameKind::EvenPfaffian { vars },
            gens,
            underlying: vars,
            metric: MetricRule::Identity,
            max_power,
            red,
            pf_pf: Some(e[vars - 1].clone()),
            table: Vec::new(),
        };
        f.build_table();
        f
    }

    fn build_table(&mut self) {
        let n = self.gens.len();
        let mut table = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                row.push(self.gen_pair(i, j));
            }
            table.push(row);
        }
        self.table = table;
    }

    fn is_pfaffian_gen(&self, i: usize) -> bool {
        matches!(self.kind, FrameKind::EvenPfaffian { .. }) && i + 1 == self.gens.len()
    }

    /// The pairing of two generators, as an element of the frame.
    fn gen_pair(&self, i: usize, j: usize) -> Poly<Rat> {
        let n = self.gens.len();
        match (self.is_pfaffian_gen(i), self.is_pfaffian_gen(j)) {
            (true, true) => self.pf_pf.clone().unwrap(),
            (true, false) | (false, true) => {
                let a = if self.is_pfaffian_gen(i) { self.gens[j].degree } else { self.gens[i].degree };
                // p_a o P = a p_{a-2} P
                let base = self.reduce_power(a - 2).unwrap();
                base.mul(&Poly::var(n, n - 1)).scale(&int(a as i64))
            }
            (false, false) => {
                let a = self.gens[i].degree;
                let b = self.gens[j].degree;
                let ab = int((a * b) as i64);
                match &self.metric {
                    MetricRule::Identity => self.reduce_power(a + b - 2).unwrap().scale(&ab),
                    MetricRule::OnesAdjusted { scale, t } => {
                        let main = self.reduce_power(a + b - 2).unwrap();
                        let corr = self
                            .reduce_power(a - 1)
                            .unwrap()
                            .mul(&self.reduce_power(b - 1).unwrap());
                        main.sub(&corr.scale(t)).scale(&(ab * scale))
                    }
                }
            }
        }
    }

    pub fn gen_count(&self) -> usize {
        self.gens.len()
    }

    pub fn gen_degrees(&self) -> Vec<usize> {
        self.gens.iter().map(|g| g.degree).collect()
    }

    pub fn gen_index(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    /// p_k in the coordinates, rewritten into the frame generators.
    pub fn reduce_power(&self, k: usize) -> Result<Poly<Rat>, String> {
        if k > self.max_power {
            return Err(format!("power sum p_{k} beyond the reduction bound {}", self.max_power));
        }
        self.red[k]
            .clone()
            .ok_or_else(|| format!("power sum p_{k} does not arise in this frame"))
    }

    /// Differential pairing a o b by the Leibniz rule over the generator
    /// table.
    pub fn pair<S: Scalar>(&self, a: &Poly<S>, b: &Poly<S>) -> Poly<S> {
        let n = self.gens.len();
        assert_eq!(a.nvars(), n);
        assert_eq!(b.nvars(), n);
        let da: Vec<Poly<S>> = a.gradient();
        let db: Vec<Poly<S>> = b.gradient();
        let mut acc = Poly::zero(n);
        for i in 0..n {
            if da[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if db[j].is_zero() {
                    continue;
                }
                let t: Poly<S> = self.table[i][j].lift();
                acc = acc.add(&da[i].mul(&db[j]).mul(&t));
            }
        }
        acc
    }

    /// The generator as a polynomial in the underlying coordinates.
    pub fn gen_coordinate_poly(&self, i: usize) -> Poly<Rat> {
        let v = self.underlying;
        if self.is_pfaffian_gen(i) {
            return Poly::monomial(v, vec![1u16; v], Rat::one());
        }
        power_sum(v, self.gens[i].degree)
    }

    /// Expand a frame element into the underlying coordinates. Guarded: the
    /// expansion is only intended for oracle checks on small instances.
    pub fn expand_to_coordinates<S: Scalar>(&self, p: &Poly<S>) -> Result<Poly<S>, String> {
        let deg = self.xdegree(p).unwrap_or(0);
        if self.underlying > EXPAND_MAX_VARS || deg > EXPAND_MAX_DEGREE {
            return Err(format!(
                "expansion guard: {} coordinates at degree {deg} exceeds {EXPAND_MAX_VARS} vars / degree {EXPAND_MAX_DEGREE}",
                self.underlying
            ));
        }
        let subs: Vec<Poly<S>> =
            (0..self.gens.len()).map(|i| self.gen_coordinate_poly(i).lift()).collect();
        Ok(p.substitute_all(&subs))
    }

    /// Degree in the underlying coordinates.
    pub fn xdegree<S: Scalar>(&self, p: &Poly<S>) -> Option<usize> {
        let w = self.gen_degrees();
        p.weighted_degree(&w)
    }

    pub fn is_homogeneous<S: Scalar>(&self, p: &Poly<S>, d: usize) -> bool {
        let w = self.gen_degrees();
        !p.is_zero() && p.is_homogeneous_of_weight(&w, d)
    }

    pub fn parse<S: Scalar>(&self, s: &str) -> Result<Poly<S>, String> {
        Poly::parse_with(s, self.gens.len(), &|name: &str| self.gen_index(name))
    }

    pub fn render<S: Scalar>(&self, p: &Poly<S>) -> String {
        p.to_string_with(&|i| self.gens[i].name.clone())
    }
}

/// sum of x_h^k over v coordinates.
pub fn power_sum(v: usize, k: usize) -> Poly<Rat> {
    let mut p = Poly::zero(v);
    for h in 0..v {
        let mut e = vec![0u16; v];
        e[h] = k as u16;
        p = p.add(&Poly::monomial(v, e, Rat::one()));
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Mat;
    use crate::poly::Poly;
    use crate::scalar::int;
    use num_traits::Zero;

    fn expand(frame: &GenFrame, p: &Poly<Rat>) -> Poly<Rat> {
        frame.expand_to_coordinates(p).unwrap()
    }

    #[test]
    fn newton_reduction_three_variables_frozen() {
        // p_4 on three variables
        let f = GenFrame::full_sym(3, MetricRule::Identity);
        let p4 = f.reduce_power(4).unwrap();
        let expected = f
            .parse::<Rat>("(1/6)*p1^4 - p1^2*p2 + (1/2)*p2^2 + (4/3)*p1*p3")
            .unwrap();
        assert_eq!(p4, expected);
    }

    #[test]
    fn newton_reductions_match_coordinates() {
        for v in [2usize, 3, 4] {
            let f = GenFrame::full_sym(v, MetricRule::Identity);
            for k in v + 1..=(2 * v).min(8) {
                let red = f.reduce_power(k).unwrap();
                assert_eq!(expand(&f, &red), power_sum(v, k), "p_{k} on {v} vars");
            }
        }
    }

    #[test]
    fn even_frame_reductions_match_coordinates() {
        for v in [2usize, 3] {
            let f = GenFrame::even_sym(v);
            for k in (2 * v + 2..=4 * v).step_by(2) {
                let red = f.reduce_power(k).unwrap();
                assert_eq!(expand(&f, &red), power_sum(v, k), "p_{k} on {v} squared vars");
            }
            assert!(f.reduce_power(3).is_err(), "odd power sums never arise");
        }
    }

    #[test]
    fn pfaffian_frame_reductions_match_coordinates() {
        for v in [3usize, 4] {
            let f = GenFrame::even_pfaffian(v);
            for k in (2 * v..=2 * v + 4).step_by(2) {
                let red = f.reduce_power(k).unwrap();
                assert_eq!(expand(&f, &red), power_sum(v, k), "p_{k} on D_{v} frame");
            }
        }
    }

    #[test]
    fn a_frame_reduction_matches_restricted_coordinates() {
        // A_2: three ambient coordinates restricted to x3 = -(x1+x2)
        let amb = 3;
        let f = GenFrame::a_reflection(amb);
        let restrict = |p: &Poly<Rat>| -> Poly<Rat> {
            let s = Poly::parse("-x1 - x2", amb).unwrap();
            p.substitute(amb - 1, &s).truncate_vars(amb - 1)
        };
        for k in 4..=6 {
            let red = f.reduce_power(k).unwrap();
            assert_eq!(
                restrict(&expand(&f, &red)),
                restrict(&power_sum(amb, k)),
                "restricted p_{k}"
            );
        }
        assert!(f.reduce_power(1).unwrap().is_zero());
    }

    #[test]
    fn pfaffian_pair_rules_match_coordinates() {
        let v = 3;
        let f = GenFrame::even_pfaffian(v);
        let gram = Mat::identity(v);
        let names = ["p2", "p4", "P"];
        for a in 0..3 {
            for b in 0..3 {
                let ga = Poly::<Rat>::var(3, f.gen_index(names[a]).unwrap());
                let gb = Poly::<Rat>::var(3, f.gen_index(names[b]).unwrap());
                let frame_side = expand(&f, &f.pair(&ga, &gb));
                let coord_side = Poly::gradient_pairing(
                    &expand(&f, &ga),
                    &expand(&f, &gb),
                    &gram,
                );
                assert_eq!(frame_side, coord_side, "{} o {}", names[a], names[b]);
            }
        }
        // p_4 o P = 4 p_2 P, the corrected index
        let pair = f.pair(
            &Poly::<Rat>::var(3, 1),
            &Poly::<Rat>::var(3, 2),
        );
        assert_eq!(pair, f.parse("4*p2*P").unwrap());
    }

    #[test]
    fn pfaffian_self_pair_e8_frame() {
        let f = GenFrame::even_pfaffian(8);
        let pf = Poly::<Rat>::var(8, 7);
        let pp = f.pair(&pf, &pf);
        assert_eq!(pp.num_terms(), 15);
        assert_eq!(pp.coeff(&mono(&f, &[("p2", 7)])), rat(1, 5040));
        assert_eq!(pp.coeff(&mono(&f, &[("p2", 5), ("p4", 1)])), rat(-1, 240));
        assert_eq!(pp.coeff(&mono(&f, &[("p14", 1)])), rat(1, 7));
    }

    fn mono(f: &GenFrame, parts: &[(&str, u16)]) -> crate::poly::Mono {
        let mut e = vec![0u16; f.gen_count()];
        for (name, k) in parts {
            e[f.gen_index(name).unwrap()] = *k;
        }
        crate::poly::Mono(e)
    }

    #[test]
    fn ones_adjusted_rule_matches_coordinate_gram() {
        for (v, scale) in [(6usize, rat(2, 3)), (7, rat(1, 2))] {
            let f = GenFrame::full_sym(
                v,
                MetricRule::OnesAdjusted { scale: scale.clone(), t: rat(1, 9) },
            );
            let gram = Mat::from_fn(v, v, |i, j| {
                let base = if i == j { Rat::one() } else { Rat::zero() };
                (base - rat(1, 9)) * scale.clone()
            });
            for (a, b) in [(2usize, 2usize), (2, 3), (3, 4)] {
                let ga = Poly::<Rat>::var(v, a - 1);
                let gb = Poly::<Rat>::var(v, b - 1);
                let frame_side = expand(&f, &f.pair(&ga, &gb));
                let coord_side =
                    Poly::gradient_pairing(&power_sum(v, a), &power_sum(v, b), &gram);
                assert_eq!(frame_side, coord_side, "p_{a} o p_{b} at rank {v}");
            }
        }
    }

    #[test]
    fn leibniz_pairing_is_symmetric_and_biderivative() {
        let f = GenFrame::even_sym(3);
        let a: Poly<Rat> = f.parse("p2^2 - 3*p4").unwrap();
        let b: Poly<Rat> = f.parse("p6 + p2*p4").unwrap();
        assert_eq!(f.pair(&a, &b), f.pair(&b, &a));
        // o is a derivation in each slot: (a^2) o b = 2 a (a o b)
        let asq = a.mul(&a);
        assert_eq!(f.pair(&asq, &b), a.mul(&f.pair(&a, &b)).scale(&int(2)));
    }

    #[test]
    fn expansion_guard_rejects_large_requests() {
        let f = GenFrame::full_sym(6, MetricRule::Identity);
        let big = Poly::<Rat>::var(6, 5).pow(3); // degree 18 in coordinates
        assert!(f.expand_to_coordinates(&big).is_err());
    }
}
