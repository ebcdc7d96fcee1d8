//! Sparse multivariate polynomials over an exact scalar field.
//!
//! Monomials are exponent vectors ordered by graded lexicographic order;
//! terms live in a BTreeMap so every traversal (printing, serialization,
//! linear algebra on coefficients) is deterministic.

use crate::matrix::Mat;
use crate::scalar::{int, Rat, Scalar};
use num_traits::One;
use std::collections::BTreeMap;
use std::fmt;

/// Exponent vector of a monomial. Length always equals the ambient nvars.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono(pub Vec<u16>);

impl Mono {
    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn weighted_degree(&self, weights: &[usize]) -> usize {
        self.0.iter().zip(weights).map(|(&e, &w)| e as usize * w).sum()
    }

    fn mul(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct Poly<S> {
    nvars: usize,
    terms: BTreeMap<Mono, S>,
}

impl<S: Scalar> Poly<S> {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: S) -> Self {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Mono(vec![0; nvars]), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, S::one())
    }

    /// The variable x_{i} (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut e = vec![0u16; nvars];
        e[i] = 1;
        Poly::monomial(nvars, e, S::one())
    }

    pub fn monomial(nvars: usize, exps: Vec<u16>, c: S) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Mono(exps), c);
        }
        p
    }

    pub fn linear_form(coeffs: &[S]) -> Self {
        let n = coeffs.len();
        let mut p = Poly::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0u16; n];
                e[i] = 1;
                p.terms.insert(Mono(e), c.clone());
            }
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &S)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mono: &Mono) -> S {
        self.terms.get(mono).cloned().unwrap_or_else(S::zero)
    }

    pub fn constant_term(&self) -> S {
        self.coeff(&Mono(vec![0; self.nvars]))
    }

    /// Total degree; None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    pub fn weighted_degree(&self, weights: &[usize]) -> Option<usize> {
        self.terms.keys().map(|m| m.weighted_degree(weights)).max()
    }

    /// Some(d) if nonzero and every term has total degree d.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys();
        let d = it.next()?.degree();
        it.all(|m| m.degree() == d).then_some(d)
    }

    pub fn is_homogeneous_of_weight(&self, weights: &[usize], d: usize) -> bool {
        self.terms.keys().all(|m| m.weighted_degree(weights) == d)
    }

    fn insert_add(&mut self, m: Mono, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get().clone() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.insert_add(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, s: &S) -> Self {
        if s.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.clone() * s.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut r = Poly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                r.insert_add(m1.mul(m2), c1.clone() * c2.clone());
            }
        }
        r
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut r = Poly::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        r
    }

    pub fn derivative(&self, var: usize) -> Self {
        assert!(var < self.nvars);
        let mut r = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e > 0 {
                let mut exps = m.0.clone();
                exps[var] = e - 1;
                r.insert_add(Mono(exps), c.clone() * S::from_int(e as i64));
            }
        }
        r
    }

    pub fn gradient(&self) -> Vec<Self> {
        (0..self.nvars).map(|v| self.derivative(v)).collect()
    }

    /// Directional derivative sum_h w_h d/dx_h.
    pub fn dir_derivative(&self, w: &[S]) -> Self {
        assert_eq!(w.len(), self.nvars);
        let mut r = Poly::zero(self.nvars);
        for (h, wh) in w.iter().enumerate() {
            if !wh.is_zero() {
                r = r.add(&self.derivative(h).scale(wh));
            }
        }
        r
    }

    /// Substitute x_var := p, keeping nvars (p in the same variable set).
    pub fn substitute(&self, var: usize, p: &Self) -> Self {
        assert_eq!(self.nvars, p.nvars);
        let mut powers: Vec<Self> = vec![Poly::one(self.nvars)];
        let maxe = self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0) as usize;
        for _ in 0..maxe {
            powers.push(powers.last().unwrap().mul(p));
        }
        let mut r = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[var] as usize;
            let mut exps = m.0.clone();
            exps[var] = 0;
            let rest = Poly::monomial(self.nvars, exps, c.clone());
            r = r.add(&rest.mul(&powers[e]));
        }
        r
    }

    /// Substitute every variable: x_i := subs[i]. All subs share one nvars,
    /// which becomes the result's nvars.
    pub fn substitute_all(&self, subs: &[Self]) -> Self {
        assert_eq!(subs.len(), self.nvars);
        let out_vars = subs.first().map_or(0, |p| p.nvars);
        assert!(subs.iter().all(|p| p.nvars == out_vars));
        let mut r = Poly::zero(out_vars);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(out_vars, c.clone());
            for (v, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&subs[v].pow(e as usize));
                }
            }
            r = r.add(&term);
        }
        r
    }

    /// Drop trailing variables that never occur (used after eliminating a
    /// variable by substitution). Panics if a dropped variable occurs.
    pub fn truncate_vars(&self, new_nvars: usize) -> Self {
        assert!(new_nvars <= self.nvars);
        let mut r = Poly::zero(new_nvars);
        for (m, c) in &self.terms {
            assert!(
                m.0[new_nvars..].iter().all(|&e| e == 0),
                "variable beyond x{} still occurs",
                new_nvars
            );
            r.insert_add(Mono(m.0[..new_nvars].to_vec()), c.clone());
        }
        r
    }

    /// Substitute the last variable by minus the sum of the others and drop
    /// it (restriction to the hyperplane where the coordinates sum to zero).
    pub fn restrict_last(&self) -> Self {
        let n = self.nvars;
        assert!(n >= 1);
        let mut s = Poly::zero(n);
        for i in 0..n - 1 {
            s = s.sub(&Poly::var(n, i));
        }
        self.substitute(n - 1, &s).truncate_vars(n - 1)
    }

    /// Extend the variable set (new variables never occur).
    pub fn extend_vars(&self, new_nvars: usize) -> Self {
        assert!(new_nvars >= self.nvars);
        let mut r = Poly::zero(new_nvars);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e.resize(new_nvars, 0);
            r.terms.insert(Mono(e), c.clone());
        }
        r
    }

    pub fn eval(&self, point: &[S]) -> S {
        assert_eq!(point.len(), self.nvars);
        let mut acc = S::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t = t * point[v].clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Poly<T> {
        let mut r = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let v = f(c);
            if !v.is_zero() {
                r.terms.insert(m.clone(), v);
            }
        }
        r
    }

    /// The image of `self` under the rank-one substitution
    /// x := x - w * (u^T x), computed by the exact Taylor identity
    /// f(x - t w) = sum_k (-t)^k / k! (D_w^k f)(x) with t := u^T x
    /// substituted after expansion. Fast even when the full linear
    /// substitution would blow up, because D_w^k f dies at k = deg f.
    pub fn apply_rank_one(&self, w: &[S], u: &[S]) -> Self {
        assert_eq!(w.len(), self.nvars);
        assert_eq!(u.len(), self.nvars);
        let t = Poly::linear_form(u);
        let mut result = self.clone();
        let mut deriv = self.clone();
        let mut tpow = Poly::one(self.nvars);
        let mut factorial = Rat::one();
        let mut k: i64 = 0;
        loop {
            deriv = deriv.dir_derivative(w);
            if deriv.is_zero() {
                break;
            }
            k += 1;
            factorial = factorial * int(k);
            tpow = tpow.mul(&t);
            let sign = if k % 2 == 0 { factorial.recip() } else { -factorial.recip() };
            result = result.add(&deriv.mul(&tpow).scale(&S::from_rat(sign)));
        }
        result
    }

    /// sum_{h,k} (da/dx_h)(db/dx_k) gram[h][k].
    pub fn gradient_pairing(a: &Self, b: &Self, gram: &Mat<S>) -> Self {
        assert_eq!(a.nvars, b.nvars);
        assert_eq!(gram.rows(), a.nvars);
        assert_eq!(gram.cols(), a.nvars);
        let da: Vec<Self> = a.gradient();
        let db: Vec<Self> = b.gradient();
        let mut r = Poly::zero(a.nvars);
        for (h, dah) in da.iter().enumerate() {
            if dah.is_zero() {
                continue;
            }
            for (k, dbk) in db.iter().enumerate() {
                let g = gram.get(h, k);
                if !g.is_zero() && !dbk.is_zero() {
                    r = r.add(&dah.mul(dbk).scale(g));
                }
            }
        }
        r
    }
}

impl Poly<Rat> {
    pub fn lift<T: Scalar>(&self) -> Poly<T> {
        self.map_coeffs(|c| T::from_rat(c.clone()))
    }
}

// ---------------------------------------------------------------------------
// Text format: print and parse.
//
// Canonical output, descending graded-lex:
//   -105*x1^2*x2 + (3/2)*x3 - 4
// Coefficients: bare integers, parenthesized rationals, parenthesized
// radicals "(a+b*sqrt(d))". Unit coefficients are dropped before variables.
// ---------------------------------------------------------------------------

impl<S: Scalar> Poly<S> {
    fn mono_string(&self, m: &Mono, names: &dyn Fn(usize) -> String) -> String {
        let mut parts = Vec::new();
        for (v, &e) in m.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(names(v)),
                _ => parts.push(format!("{}^{}", names(v), e)),
            }
        }
        parts.join("*")
    }

    pub fn to_string_with(&self, names: &dyn Fn(usize) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let cs = c.coeff_string();
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => match cs.strip_prefix("(-") {
                    Some(rest) => (true, format!("({rest}")),
                    None => (false, cs),
                },
            };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let ms = self.mono_string(m, names);
            if ms.is_empty() {
                out.push_str(&mag);
            } else if mag == "1" {
                out.push_str(&ms);
            } else {
                out.push_str(&mag);
                out.push('*');
                out.push_str(&ms);
            }
        }
        out
    }

    /// Parse with a custom atom resolver mapping a name like "x3" or "p4"
    /// to a variable index, with a fixed variable count.
    pub fn parse_with(
        s: &str,
        nvars: usize,
        resolve: &dyn Fn(&str) -> Option<usize>,
    ) -> Result<Self, String> {
        let mut p = Poly::zero(nvars);
        for (sign, term) in split_terms(s)? {
            let (c, exps) = parse_term::<S>(&term, nvars, resolve)?;
            let c = if sign { -c } else { c };
            p.insert_add(Mono(exps), c);
        }
        Ok(p)
    }

    /// Parse with default variable names x1..xN (1-based in text).
    pub fn parse(s: &str, nvars: usize) -> Result<Self, String> {
        Poly::parse_with(s, nvars, &|name: &str| {
            let k: usize = name.strip_prefix('x')?.parse().ok()?;
            (1..=nvars).contains(&k).then(|| k - 1)
        })
    }
}

impl<S: Scalar> fmt::Display for Poly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_with(&|v| format!("x{}", v + 1)))
    }
}

/// Split "a - b + c" into signed top-level terms, respecting parentheses.
fn split_terms(s: &str) -> Result<Vec<(bool, String)>, String> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    let mut sign = false;
    let mut seen_any = false;
    for ch in s.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth = depth.checked_sub(1).ok_or("unbalanced parentheses")?;
                cur.push(ch);
            }
            '+' | '-' if depth == 0 && !cur.trim().is_empty() => {
                out.push((sign, cur.trim().to_string()));
                sign = ch == '-';
                cur = String::new();
                seen_any = true;
            }
            '+' | '-' if depth == 0 => {
                // leading or repeated sign
                if ch == '-' {
                    sign = !sign;
                }
            }
            _ => cur.push(ch),
        }
    }
    if depth != 0 {
        return Err("unbalanced parentheses".into());
    }
    if !cur.trim().is_empty() {
        out.push((sign, cur.trim().to_string()));
    } else if !seen_any && out.is_empty() {
        return Err("empty polynomial text".into());
    }
    if out.is_empty() {
        return Err("empty polynomial text".into());
    }
    Ok(out)
}

/// Split a term on top-level '*' into factors.
fn split_factors(term: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for ch in term.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth = depth.saturating_sub(1);
                cur.push(ch);
            }
            '*' if depth == 0 => {
                out.push(cur.trim().to_string());
                cur = String::new();
            }
            _ => cur.push(ch),
        }
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

fn parse_term<S: Scalar>(
    term: &str,
    nvars: usize,
    resolve: &dyn Fn(&str) -> Option<usize>,
) -> Result<(S, Vec<u16>), String> {
    let mut c = S::one();
    let mut exps = vec![0u16; nvars];
    for factor in split_factors(term) {
        if factor.is_empty() {
            return Err(format!("empty factor in `{term}`"));
        }
        let (base, exp) = match factor.split_once('^') {
            Some((b, e)) => {
                let e: u16 = e.trim().parse().map_err(|_| format!("bad exponent in `{factor}`"))?;
                (b.trim().to_string(), e)
            }
            None => (factor.clone(), 1),
        };
        if let Some(v) = resolve(&base) {
            exps[v] = exps[v]
                .checked_add(exp)
                .ok_or_else(|| format!("exponent overflow in `{term}`"))?;
        } else {
            // must be a coefficient token
            if base.chars().next().is_some_and(|c| c.is_ascii_alphabetic()) {
                return Err(format!("unknown variable `{base}`"));
            }
            if exp != 1 {
                return Err(format!("exponent on coefficient in `{factor}`"));
            }
            let v = S::parse_coeff(&base)?;
            c = c * v;
        }
    }
    Ok((c, exps))
}

/// All exponent vectors of the given total degree, ascending grlex order.
pub fn monomials_of_degree(nvars: usize, degree: usize) -> Vec<Vec<u16>> {
    let mut out = Vec::new();
    let mut cur = vec![0u16; nvars];
    fn rec(v: usize, left: usize, nvars: usize, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if v + 1 == nvars {
            cur[v] = left as u16;
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[v] = e as u16;
            rec(v + 1, left - e, nvars, cur, out);
        }
        cur[v] = 0;
    }
    if nvars == 0 {
        if degree == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(0, degree, nvars, &mut cur, &mut out);
    out.sort_by(|a, b| Mono(a.clone()).cmp(&Mono(b.clone())));
    out
}

/// Multinomial coefficient m! / prod(e_i!).
pub fn multinomial(exps: &[u16]) -> Rat {
    let mut acc = Rat::one();
    let mut total: i64 = 0;
    for &e in exps {
        for k in 1..=e as i64 {
            total += 1;
            acc = acc * int(total) / int(k);
        }
    }
    acc
}
