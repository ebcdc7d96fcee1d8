//! Root systems of the simple types A-G, their Weyl groups, and the action
//! on polynomials.
//!
//! Every type is presented uniformly: an ambient coordinate space for h*, a
//! gram matrix G = ((dx_h, dx_k)) of the coordinate functionals, and the
//! roots as coefficient vectors of linear forms. Types A-D, F4 and E8 use
//! their standard rational coordinate models with G = I; G2 lives in
//! coordinates dual to its simple-root basis; E6 and E7 use rank-many
//! coordinates with the all-ones-adjusted gram that makes all roots
//! integral. Everything stays in exact rational arithmetic.
//!
//! A reflection about the root form c acts on coefficient vectors as
//! M = I - w u^T with w = 2c/(c^T G c), u = G c, and on polynomials by the
//! substitution x := x - u (w^T x), applied through the exact Taylor
//! expansion so that high-degree invariance checks stay cheap.

use crate::matrix::Mat;
use crate::poly::Poly;
use crate::scalar::{int, rat, Rat, Scalar};
use num_traits::{One, Signed, Zero};
use std::collections::HashSet;
use std::collections::VecDeque;
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum TypeLabel {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E(usize),
    F4,
    G2,
}

pub const MAX_CLASSICAL_RANK: usize = 12;

impl TypeLabel {
    pub fn parse(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let (fam, num) = s.split_at(1);
        let fam = fam.to_ascii_uppercase();
        let n: usize = num.parse().map_err(|_| format!("bad type label `{s}`"))?;
        let label = match fam.as_str() {
            "A" if (1..=MAX_CLASSICAL_RANK).contains(&n) => TypeLabel::A(n),
            "B" if (2..=MAX_CLASSICAL_RANK).contains(&n) => TypeLabel::B(n),
            "C" if (2..=MAX_CLASSICAL_RANK).contains(&n) => TypeLabel::C(n),
            "D" if (3..=MAX_CLASSICAL_RANK).contains(&n) => TypeLabel::D(n),
            "E" if (6..=8).contains(&n) => TypeLabel::E(n),
            "F" if n == 4 => TypeLabel::F4,
            "G" if n == 2 => TypeLabel::G2,
            _ => return Err(format!("unsupported type `{s}`")),
        };
        Ok(label)
    }

    pub fn rank(&self) -> usize {
        match *self {
            TypeLabel::A(n) | TypeLabel::B(n) | TypeLabel::C(n) | TypeLabel::D(n)
            | TypeLabel::E(n) => n,
            TypeLabel::F4 => 4,
            TypeLabel::G2 => 2,
        }
    }

    pub fn exponents(&self) -> Vec<usize> {
        match *self {
            TypeLabel::A(n) => (1..=n).collect(),
            TypeLabel::B(n) | TypeLabel::C(n) => (0..n).map(|i| 2 * i + 1).collect(),
            TypeLabel::D(n) => {
                let mut v: Vec<usize> = (0..n - 1).map(|i| 2 * i + 1).collect();
                v.push(n - 1);
                v.sort_unstable();
                v
            }
            TypeLabel::E(6) => vec![1, 4, 5, 7, 8, 11],
            TypeLabel::E(7) => vec![1, 5, 7, 9, 11, 13, 17],
            TypeLabel::E(8) => vec![1, 7, 11, 13, 17, 19, 23, 29],
            TypeLabel::E(_) => unreachable!(),
            TypeLabel::F4 => vec![1, 5, 7, 11],
            TypeLabel::G2 => vec![1, 5],
        }
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.exponents().iter().map(|m| m + 1).collect()
    }

    pub fn coxeter_number(&self) -> usize {
        *self.exponents().last().unwrap() + 1
    }

    pub fn weyl_order(&self) -> u128 {
        self.degrees().iter().map(|&d| d as u128).product()
    }

    /// The labels exercised by the test suite and CLI listings.
    pub fn standard_set() -> Vec<TypeLabel> {
        let mut v = Vec::new();
        for n in 1..=8 {
            v.push(TypeLabel::A(n));
        }
        for n in 2..=6 {
            v.push(TypeLabel::B(n));
            v.push(TypeLabel::C(n));
        }
        for n in 3..=8 {
            v.push(TypeLabel::D(n));
        }
        v.extend([TypeLabel::G2, TypeLabel::F4, TypeLabel::E(6), TypeLabel::E(7), TypeLabel::E(8)]);
        v
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            TypeLabel::A(n) => write!(f, "A{n}"),
            TypeLabel::B(n) => write!(f, "B{n}"),
            TypeLabel::C(n) => write!(f, "C{n}"),
            TypeLabel::D(n) => write!(f, "D{n}"),
            TypeLabel::E(n) => write!(f, "E{n}"),
            TypeLabel::F4 => write!(f, "F4"),
            TypeLabel::G2 => write!(f, "G2"),
        }
    }
}

pub struct RootSystem {
    pub label: TypeLabel,
    pub rank: usize,
    /// Number of coordinates of the model (rank + 1 for type A, rank else).
    pub ambient: usize,
    /// G = ((dx_h, dx_k)), the induced product on coordinate functionals.
    pub gram: Mat<Rat>,
    /// G^{-1}: gram matrix of the underlying vector-space basis.
    pub gram_inv: Mat<Rat>,
    /// Positive roots as coefficient vectors of linear forms.
    pub positive: Vec<Vec<Rat>>,
    /// Indices of the simple roots inside `positive`.
    pub simple_idx: Vec<usize>,
    pub exponents: Vec<usize>,
    pub degrees: Vec<usize>,
    pub coxeter: usize,
    pub weyl_order: u128,
}

fn e(n: usize, i: usize, c: i64) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); n];
    v[i] = int(c);
    v
}

fn e2(n: usize, i: usize, ci: i64, j: usize, cj: i64) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); n];
    v[i] = int(ci);
    v[j] = int(cj);
    v
}

fn vec_rat(entries: &[Rat]) -> Vec<Rat> {
    entries.to_vec()
}

/// All roots and the chosen simple system, as linear-form coefficient
/// vectors, plus the gram matrix of the coordinate functionals.
fn model(label: TypeLabel) -> (usize, Mat<Rat>, Vec<Vec<Rat>>, Vec<Vec<Rat>>) {
    match label {
        TypeLabel::A(n) => {
            let amb = n + 1;
            let mut roots = Vec::new();
            for i in 0..amb {
                for j in 0..amb {
                    if i != j {
                        roots.push(e2(amb, i, 1, j, -1));
                    }
                }
            }
            let simples = (0..n).map(|i| e2(amb, i, 1, i + 1, -1)).collect();
            (amb, Mat::identity(amb), roots, simples)
        }
        TypeLabel::B(n) => {
            let mut roots = Vec::new();
            for i in 0..n {
                roots.push(e(n, i, 1));
                roots.push(e(n, i, -1));
            }
            push_pm_pairs(n, &mut roots);
            let mut simples: Vec<Vec<Rat>> = (0..n - 1).map(|i| e2(n, i, 1, i + 1, -1)).collect();
            simples.push(e(n, n - 1, 1));
            (n, Mat::identity(n), roots, simples)
        }
        TypeLabel::C(n) => {
            let mut roots = Vec::new();
            for i in 0..n {
                roots.push(e(n, i, 2));
                roots.push(e(n, i, -2));
            }
            push_pm_pairs(n, &mut roots);
            let mut simples: Vec<Vec<Rat>> = (0..n - 1).map(|i| e2(n, i, 1, i + 1, -1)).collect();
            simples.push(e(n, n - 1, 2));
            (n, Mat::identity(n), roots, simples)
        }
        TypeLabel::D(n) => {
            let mut roots = Vec::new();
            push_pm_pairs(n, &mut roots);
            let mut simples: Vec<Vec<Rat>> = (0..n - 1).map(|i| e2(n, i, 1, i + 1, -1)).collect();
            simples.push(e2(n, n - 2, 1, n - 1, 1));
            (n, Mat::identity(n), roots, simples)
        }
        TypeLabel::G2 => {
            // Coordinates dual to the simple-root basis; B is the gram of
            // the simple roots with long roots of squared length 2, so the
            // functional gram is B^{-1} and a root with simple-basis
            // coordinates v becomes the form B v.
            let b = Mat::from_rows(vec![
                vec![rat(2, 3), int(-1)],
                vec![int(-1), int(2)],
            ]);
            let gram = b.inverse().unwrap();
            let alpha_coords: [[i64; 2]; 6] = [[1, 0], [0, 1], [1, 1], [2, 1], [3, 1], [3, 2]];
            let mut roots = Vec::new();
            for v in alpha_coords {
                let form = b.mul_vec(&[int(v[0]), int(v[1])]);
                roots.push(form.iter().map(|x| -x.clone()).collect());
                roots.push(form);
            }
            let simples = vec![b.col(0), b.col(1)];
            (2, gram, roots, simples)
        }
        TypeLabel::F4 => {
            let n = 4;
            let mut roots = Vec::new();
            for i in 0..n {
                roots.push(e(n, i, 1));
                roots.push(e(n, i, -1));
            }
            push_pm_pairs(n, &mut roots);
            for s1 in [1i64, -1] {
                for s2 in [1i64, -1] {
                    for s3 in [1i64, -1] {
                        for s4 in [1i64, -1] {
                            roots.push(vec![
                                rat(s1, 2),
                                rat(s2, 2),
                                rat(s3, 2),
                                rat(s4, 2),
                            ]);
                        }
                    }
                }
            }
            let simples = vec![
                e2(n, 1, 1, 2, -1),
                e2(n, 2, 1, 3, -1),
                e(n, 3, 1),
                vec_rat(&[rat(1, 2), rat(-1, 2), rat(-1, 2), rat(-1, 2)]),
            ];
            (n, Mat::identity(n), roots, simples)
        }
        TypeLabel::E(6) => {
            let n = 6;
            let gram = ones_adjusted_gram(n, rat(2, 3));
            let mut roots = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        roots.push(e2(n, i, 1, j, -1));
                    }
                }
            }
            for i in 0..n {
                for j in i + 1..n {
                    for k in j + 1..n {
                        let mut v = vec![Rat::zero(); n];
                        v[i] = int(1);
                        v[j] = int(1);
                        v[k] = int(1);
                        roots.push(v.iter().map(|x| -x.clone()).collect());
                        roots.push(v);
                    }
                }
            }
            roots.push(vec![int(1); n]);
            roots.push(vec![int(-1); n]);
            let mut simples: Vec<Vec<Rat>> = (0..5).map(|i| e2(n, i, 1, i + 1, -1)).collect();
            let mut a6 = vec![Rat::zero(); n];
            a6[3] = int(1);
            a6[4] = int(1);
            a6[5] = int(1);
            simples.push(a6);
            (n, gram, roots, simples)
        }
        TypeLabel::E(7) => {
            let n = 7;
            let gram = ones_adjusted_gram(n, rat(1, 2));
            let mut roots = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        roots.push(e2(n, i, 1, j, -1));
                    }
                }
            }
            for i in 0..n {
                for j in i + 1..n {
                    for k in j + 1..n {
                        let mut v = vec![Rat::zero(); n];
                        v[i] = int(1);
                        v[j] = int(1);
                        v[k] = int(1);
                        roots.push(v.iter().map(|x| -x.clone()).collect());
                        roots.push(v);
                    }
                }
            }
            for i in 0..n {
                let mut v = vec![int(1); n];
                v[i] = Rat::zero();
                roots.push(v.iter().map(|x| -x.clone()).collect());
                roots.push(v);
            }
            let mut simples: Vec<Vec<Rat>> = (0..6).map(|i| e2(n, i, 1, i + 1, -1)).collect();
            let mut a7 = vec![Rat::zero(); n];
            a7[4] = int(1);
            a7[5] = int(1);
            a7[6] = int(1);
            simples.push(a7);
            (n, gram, roots, simples)
        }
        TypeLabel::E(8) => {
            let n = 8;
            let mut roots = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    for (a, b) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                        roots.push(e2(n, i, a, j, b));
                    }
                }
            }
            // half-integer vectors with an even number of minus signs
            for mask in 0..256u32 {
                if mask.count_ones() % 2 == 0 {
                    let v: Vec<Rat> = (0..8)
                        .map(|i| if mask >> i & 1 == 1 { rat(-1, 2) } else { rat(1, 2) })
                        .collect();
                    roots.push(v.iter().map(|x| -x.clone()).collect());
                    roots.push(v);
                }
            }
            roots.sort();
            roots.dedup();
            let half = rat(1, 2);
            let mhalf = rat(-1, 2);
            let a1 = vec![
                half.clone(),
                mhalf.clone(),
                mhalf.clone(),
                mhalf.clone(),
                mhalf.clone(),
                mhalf.clone(),
                mhalf,
                half,
            ];
            let mut simples = vec![a1, e2(n, 0, 1, 1, 1)];
            for i in 0..6 {
                simples.push(e2(n, i + 1, -1, i, 1).iter().map(|x| -x.clone()).collect());
            }
            (n, Mat::identity(n), roots, simples)
        }
        TypeLabel::E(_) => unreachable!(),
    }
}

fn push_pm_pairs(n: usize, roots: &mut Vec<Vec<Rat>>) {
    for i in 0..n {
        for j in i + 1..n {
            for (a, b) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                roots.push(e2(n, i, a, j, b));
            }
        }
    }
}

/// c (I - J/9) where J is the all-ones matrix.
fn ones_adjusted_gram(n: usize, c: Rat) -> Mat<Rat> {
    Mat::from_fn(n, n, |i, j| {
        let base = if i == j { Rat::one() } else { Rat::zero() };
        (base - rat(1, 9)) * c.clone()
    })
}

fn gram_product(gram: &Mat<Rat>, a: &[Rat], b: &[Rat]) -> Rat {
    let gb = gram.mul_vec(b);
    a.iter().zip(&gb).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

impl RootSystem {
    pub fn build(label: TypeLabel) -> Result<RootSystem, String> {
        let (ambient, gram, all_roots, simples) = model(label);
        let rank = label.rank();
        assert_eq!(simples.len(), rank);
        assert!(gram.is_symmetric());
        // positive definiteness via leading principal minors
        for k in 1..=ambient {
            let sub = Mat::from_fn(k, k, |i, j| gram.get(i, j).clone());
            if sub.det() <= Rat::zero() {
                return Err(format!("{label}: functional gram is not positive definite"));
            }
        }
        let gram_inv = gram.inverse().ok_or("singular gram")?;

        // classify roots by the sign of their simple-basis coordinates
        let smat = Mat::from_fn(ambient, rank, |i, j| simples[j][i].clone());
        let mut positive = Vec::new();
        for r in &all_roots {
            let coords = smat
                .solve(r)
                .ok_or_else(|| format!("{label}: root outside the simple span"))?;
            let nonneg = coords.iter().all(|c| !c.is_negative());
            let nonpos = coords.iter().all(|c| !c.is_positive());
            if !nonneg && !nonpos {
                return Err(format!("{label}: root with mixed simple coordinates"));
            }
            if nonneg {
                positive.push(r.clone());
            }
        }
        let exponents = label.exponents();
        if positive.len() * 2 != all_roots.len() || positive.len() != exponents.iter().sum::<usize>()
        {
            return Err(format!(
                "{label}: {} positive roots, expected {}",
                positive.len(),
                exponents.iter().sum::<usize>()
            ));
        }
        let simple_idx: Vec<usize> = simples
            .iter()
            .map(|s| {
                positive
                    .iter()
                    .position(|r| r == s)
                    .ok_or_else(|| format!("{label}: simple root not positive"))
            })
            .collect::<Result<_, _>>()?;

        let rs = RootSystem {
            label,
            rank,
            ambient,
            gram,
            gram_inv,
            positive,
            simple_idx,
            degrees: label.degrees(),
            exponents,
            coxeter: label.coxeter_number(),
            weyl_order: label.weyl_order(),
        };
        rs.validate(&all_roots)?;
        Ok(rs)
    }

    fn validate(&self, all_roots: &[Vec<Rat>]) -> Result<(), String> {
        // at most two distinct root lengths
        let mut norms: Vec<Rat> = Vec::new();
        for r in all_roots {
            let n = gram_product(&self.gram, r, r);
            if !norms.contains(&n) {
                norms.push(n);
            }
        }
        if norms.len() > 2 {
            return Err(format!("{}: more than two root lengths", self.label));
        }
        // closure under all root reflections
        let set: HashSet<&[Rat]> = all_roots.iter().map(|r| r.as_slice()).collect();
        for r in &self.positive {
            let (mult, form) = self.reflection_substitution_for(r);
            for s in all_roots {
                let t = mult.iter().zip(s).fold(Rat::zero(), |acc, (a, b)| acc + a * b);
                let image: Vec<Rat> =
                    s.iter().zip(&form).map(|(a, m)| a - m * t.clone()).collect();
                if !set.contains(image.as_slice()) {
                    return Err(format!("{}: root set not reflection-closed", self.label));
                }
            }
        }
        // exponent symmetry m_i + m_{r+1-i} = h
        let r = self.rank;
        for i in 0..r {
            if self.exponents[i] + self.exponents[r - 1 - i] != self.coxeter {
                return Err(format!("{}: exponents fail the duality pairing", self.label));
            }
        }
        Ok(())
    }

    pub fn simple_roots(&self) -> Vec<&Vec<Rat>> {
        self.simple_idx.iter().map(|&i| &self.positive[i]).collect()
    }

    pub fn cartan_matrix(&self) -> Mat<Rat> {
        let s = self.simple_roots();
        Mat::from_fn(self.rank, self.rank, |i, j| {
            int(2) * gram_product(&self.gram, s[i], s[j]) / gram_product(&self.gram, s[j], s[j])
        })
    }

    /// (multiplier, form) of the substitution x := x - multiplier (form^T x)
    /// realizing the reflection about the root c.
    fn reflection_substitution_for(&self, c: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
        let mult = self.gram.mul_vec(c);
        let norm = c.iter().zip(&mult).fold(Rat::zero(), |acc, (a, b)| acc + a * b);
        let scale = int(2) / norm;
        let form: Vec<Rat> = c.iter().map(|x| x * scale.clone()).collect();
        (mult, form)
    }

    /// Reflection about positive root `idx` as a matrix on form coefficients.
    pub fn reflection_matrix(&self, idx: usize) -> Mat<Rat> {
        let c = &self.positive[idx];
        let (mult, form) = self.reflection_substitution_for(c);
        Mat::from_fn(self.ambient, self.ambient, |h, k| {
            let base = if h == k { Rat::one() } else { Rat::zero() };
            base - form[h].clone() * mult[k].clone()
        })
    }

    pub fn apply_reflection<S: Scalar>(&self, f: &Poly<S>, idx: usize) -> Poly<S> {
        let c = &self.positive[idx];
        let (mult, form) = self.reflection_substitution_for(c);
        let mult: Vec<S> = mult.into_iter().map(S::from_rat).collect();
        let form: Vec<S> = form.into_iter().map(S::from_rat).collect();
        f.apply_rank_one(&mult, &form)
    }

    /// Invariance under the whole Weyl group, tested on the simple
    /// reflections.
    pub fn is_invariant<S: Scalar>(&self, f: &Poly<S>) -> bool {
        self.simple_idx.iter().all(|&i| self.apply_reflection(f, i) == *f)
    }

    /// The canonical degree-2 invariant (1/2) x^T G^{-1} x. Its pairing
    /// with any invariant f is deg(f) * f by the Euler identity.
    pub fn half_metric_quadratic(&self) -> Poly<Rat> {
        let n = self.ambient;
        let mut p = Poly::zero(n);
        for h in 0..n {
            for k in h..n {
                let g = self.gram_inv.get(h, k).clone();
                if g.is_zero() {
                    continue;
                }
                let c = if h == k { g / int(2) } else { g };
                let mut e = vec![0u16; n];
                e[h] += 1;
                e[k] += 1;
                p = p.add(&Poly::monomial(n, e, c));
            }
        }
        p
    }

    /// Product of the positive root forms.
    pub fn weyl_denominator(&self) -> Poly<Rat> {
        let mut p = Poly::one(self.ambient);
        for r in &self.positive {
            p = p.mul(&Poly::linear_form(r));
        }
        p
    }

    /// The full Weyl group as matrices on form coefficients, by closure
    /// from the simple reflections. Errors out beyond `cap` elements.
    pub fn enumerate_weyl(&self, cap: usize) -> Result<Vec<Mat<Rat>>, String> {
        if self.weyl_order > cap as u128 {
            return Err(format!(
                "Weyl group of {} has {} elements, beyond the cap of {cap}",
                self.label, self.weyl_order
            ));
        }
        let gens: Vec<Mat<Rat>> =
            self.simple_idx.iter().map(|&i| self.reflection_matrix(i)).collect();
        let id = Mat::identity(self.ambient);
        let mut seen: HashSet<Mat<Rat>> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        let mut out = Vec::new();
        while let Some(m) = queue.pop_front() {
            out.push(m.clone());
            for g in &gens {
                let next = g * &m;
                if seen.insert(next.clone()) {
                    if seen.len() > cap {
                        return Err(format!("Weyl enumeration exceeded the cap of {cap}"));
                    }
                    queue.push_back(next);
                }
            }
        }
        if out.len() as u128 != self.weyl_order {
            return Err(format!(
                "enumerated {} elements, expected {}",
                out.len(),
                self.weyl_order
            ));
        }
        Ok(out)
    }

    /// sum over the group of (w a)^m for the linear form with coefficients a.
    pub fn orbit_power_sum(&self, a: &[Rat], m: usize, group: &[Mat<Rat>]) -> Poly<Rat> {
        let n = self.ambient;
        let monos = crate::poly::monomials_of_degree(n, m);
        let weights: Vec<Rat> = monos.iter().map(|e| crate::poly::multinomial(e)).collect();
        let mut acc: Vec<Rat> = vec![Rat::zero(); monos.len()];
        for w in group {
            let b = w.mul_vec(a);
            // power table b[h]^k
            let mut pows: Vec<Vec<Rat>> = Vec::with_capacity(n);
            for bh in &b {
                let mut col = Vec::with_capacity(m + 1);
                col.push(Rat::one());
                for k in 1..=m {
                    col.push(col[k - 1].clone() * bh);
                }
                pows.push(col);
            }
            for (t, e) in monos.iter().enumerate() {
                let mut prod = Rat::one();
                let mut zero = false;
                for (h, &eh) in e.iter().enumerate() {
                    if eh > 0 {
                        if b[h].is_zero() {
                            zero = true;
                            break;
                        }
                        prod = prod * pows[h][eh as usize].clone();
                    }
                }
                if !zero {
                    acc[t] = acc[t].clone() + prod;
                }
            }
        }
        let mut p = Poly::zero(n);
        for ((e, w), c) in monos.into_iter().zip(weights).into_iter().zip(acc) {
            p = p.add(&Poly::monomial(n, e, w * c));
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::mat_i64;

    #[test]
    fn builds_and_counts_all_standard_types() {
        for label in TypeLabel::standard_set() {
            let rs = RootSystem::build(label).unwrap();
            assert_eq!(
                rs.positive.len(),
                rs.exponents.iter().sum::<usize>(),
                "positive root count of {label}"
            );
            assert_eq!(rs.degrees.iter().map(|&d| d as u128).product::<u128>(), rs.weyl_order);
        }
    }

    #[test]
    fn cartan_matrices_match_references() {
        let check = |label: &str, rows: &[&[i64]]| {
            let rs = RootSystem::build(TypeLabel::parse(label).unwrap()).unwrap();
            assert_eq!(rs.cartan_matrix(), mat_i64(rows), "Cartan matrix of {label}");
        };
        check("A3", &[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
        check("B3", &[&[2, -1, 0], &[-1, 2, -2], &[0, -1, 2]]);
        check("C3", &[&[2, -1, 0], &[-1, 2, -1], &[0, -2, 2]]);
        check(
            "D4",
            &[&[2, -1, 0, 0], &[-1, 2, -1, -1], &[0, -1, 2, 0], &[0, -1, 0, 2]],
        );
        check("G2", &[&[2, -1], &[-3, 2]]);
        check(
            "F4",
            &[&[2, -1, 0, 0], &[-1, 2, -2, 0], &[0, -1, 2, -1], &[0, 0, -1, 2]],
        );
        check(
            "E6",
            &[
                &[2, -1, 0, 0, 0, 0],
                &[-1, 2, -1, 0, 0, 0],
                &[0, -1, 2, -1, 0, -1],
                &[0, 0, -1, 2, -1, 0],
                &[0, 0, 0, -1, 2, 0],
                &[0, 0, -1, 0, 0, 2],
            ],
        );
        check(
            "E7",
            &[
                &[2, -1, 0, 0, 0, 0, 0],
                &[-1, 2, -1, 0, 0, 0, 0],
                &[0, -1, 2, -1, 0, 0, 0],
                &[0, 0, -1, 2, -1, 0, -1],
                &[0, 0, 0, -1, 2, -1, 0],
                &[0, 0, 0, 0, -1, 2, 0],
                &[0, 0, 0, -1, 0, 0, 2],
            ],
        );
        check(
            "E8",
            &[
                &[2, 0, -1, 0, 0, 0, 0, 0],
                &[0, 2, 0, -1, 0, 0, 0, 0],
                &[-1, 0, 2, -1, 0, 0, 0, 0],
                &[0, -1, -1, 2, -1, 0, 0, 0],
                &[0, 0, 0, -1, 2, -1, 0, 0],
                &[0, 0, 0, 0, -1, 2, -1, 0],
                &[0, 0, 0, 0, 0, -1, 2, -1],
                &[0, 0, 0, 0, 0, 0, -1, 2],
            ],
        );
    }

    #[test]
    fn reflection_acts_as_transposition_in_type_a() {
        let rs = RootSystem::build(TypeLabel::A(2)).unwrap();
        let f = Poly::<Rat>::parse("x1^3 + 5*x2 - x3^2", 3).unwrap();
        // the simple root x1 - x2 swaps the first two coordinates
        let idx = rs.simple_idx[0];
        let g = rs.apply_reflection(&f, idx);
        assert_eq!(g, Poly::parse("x2^3 + 5*x1 - x3^2", 3).unwrap());
    }

    #[test]
    fn half_metric_quadratic_is_invariant_everywhere() {
        for label in TypeLabel::standard_set() {
            let rs = RootSystem::build(label).unwrap();
            let q = rs.half_metric_quadratic();
            assert!(rs.is_invariant(&q), "half-metric quadratic of {label}");
        }
    }

    #[test]
    fn euler_identity_for_the_half_metric_quadratic() {
        for label in ["A3", "G2", "E6", "E7", "E8"] {
            let rs = RootSystem::build(TypeLabel::parse(label).unwrap()).unwrap();
            let q = rs.half_metric_quadratic();
            let paired = Poly::gradient_pairing(&q, &q, &rs.gram);
            assert_eq!(paired, q.scale(&int(2)), "(dq, dq) = 2q for {label}");
        }
    }

    #[test]
    fn weyl_enumeration_small_groups() {
        for (label, order) in [("A2", 6u128), ("B2", 8), ("G2", 12), ("A3", 24), ("D4", 192)] {
            let rs = RootSystem::build(TypeLabel::parse(label).unwrap()).unwrap();
            let w = rs.enumerate_weyl(100_000).unwrap();
            assert_eq!(w.len() as u128, order, "order of W({label})");
        }
        let e7 = RootSystem::build(TypeLabel::E(7)).unwrap();
        assert!(e7.enumerate_weyl(1_000_000).is_err());
    }

    #[test]
    fn weyl_orders_match_known_values() {
        let expect: &[(&str, u128)] = &[
            ("G2", 12),
            ("F4", 1152),
            ("E6", 51840),
            ("E7", 2903040),
            ("E8", 696729600),
            ("D5", 1920),
        ];
        for (label, order) in expect {
            assert_eq!(TypeLabel::parse(label).unwrap().weyl_order(), *order);
        }
    }

    #[test]
    fn orbit_power_sum_is_invariant() {
        let rs = RootSystem::build(TypeLabel::G2).unwrap();
        let w = rs.enumerate_weyl(100).unwrap();
        let p = rs.orbit_power_sum(&[int(1), int(2)], 6, &w);
        assert!(!p.is_zero());
        assert!(rs.is_invariant(&p));
        // degree-2 orbit sum must be a multiple of the half-metric quadratic
        let q2 = rs.orbit_power_sum(&[int(1), int(2)], 2, &w);
        let q = rs.half_metric_quadratic();
        let ratio = q2.terms().next().map(|(m, c)| c.clone() / q.coeff(m)).unwrap();
        assert_eq!(q2, q.scale(&ratio));
    }

    #[test]
    fn weyl_denominator_degree_equals_positive_count() {
        let rs = RootSystem::build(TypeLabel::B(2)).unwrap();
        let d = rs.weyl_denominator();
        assert_eq!(d.degree(), Some(4));
        // x1 x2 (x1-x2)(x1+x2)
        let expected = Poly::<Rat>::parse("x1^3*x2 - x1*x2^3", 2).unwrap();
        assert!(d == expected || d == expected.neg());
    }
}
