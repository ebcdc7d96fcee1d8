//! Weighted Milnor rings `C[x,y]/(p_x, p_y)` of the simple surface
//! singularities attached to E6, E7, E8. The graded ring is an independent
//! oracle for the pairing tables: a product of basis elements survives in the
//! quotient exactly when the corresponding table entry is nonzero.

use crate::pairing::DTable;
use crate::rootsys::TypeLabel;
use crate::scalar::{int, rat, Rat, Scalar};
use num_traits::Zero;
use std::collections::BTreeMap;

/// Element in normal form: monomial `x^i y^j` mapped to its coefficient.
pub type Elem = BTreeMap<(u32, u32), Rat>;

pub struct MilnorRing {
    pub label: TypeLabel,
    /// Weighted degree of x.
    pub wx: usize,
    /// Weighted degree of y.
    pub wy: usize,
    pub coxeter: usize,
    /// Normal-form monomial basis, sorted by weighted degree.
    pub basis: Vec<(u32, u32)>,
}

impl MilnorRing {
    pub fn build(label: TypeLabel) -> Result<MilnorRing, String> {
        // Monomial weights make the defining polynomial homogeneous of
        // degree equal to the Coxeter number.
        let (wx, wy, mut basis): (usize, usize, Vec<(u32, u32)>) = match label {
            // x^3 + y^4: ideal (x^2, y^3).
            TypeLabel::E(6) => (4, 3, cross(2, 3)),
            // x^3 + x y^3: ideal (3x^2 + y^3, x y^2).
            TypeLabel::E(7) => {
                (6, 4, vec![(0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (0, 3), (0, 4)])
            }
            // x^3 + y^5: ideal (x^2, y^4).
            TypeLabel::E(8) => (10, 6, cross(2, 4)),
            other => return Err(format!("no Milnor ring model for {other}")),
        };
        basis.sort_by_key(|&(i, j)| wx * i as usize + wy * j as usize);
        Ok(MilnorRing { label, wx, wy, coxeter: label.coxeter_number(), basis })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn mono_degree(&self, (i, j): (u32, u32)) -> usize {
        self.wx * i as usize + self.wy * j as usize
    }

    /// Degrees of the basis elements in order.
    pub fn degrees(&self) -> Vec<usize> {
        self.basis.iter().map(|&m| self.mono_degree(m)).collect()
    }

    /// Rewrite a single monomial into normal form.
    fn reduce_mono(&self, mono: (u32, u32), c: Rat) -> Elem {
        let (mut i, mut j) = mono;
        let mut c = c;
        match self.label {
            TypeLabel::E(6) => {
                if i >= 2 || j >= 3 {
                    return Elem::new();
                }
            }
            TypeLabel::E(8) => {
                if i >= 2 || j >= 4 {
                    return Elem::new();
                }
            }
            TypeLabel::E(7) => {
                // x^2 -> -(1/3) y^3, then x y^2 -> 0 and y^5 -> 0.
                while i >= 2 {
                    i -= 2;
                    j += 3;
                    c = c * rat(-1, 3);
                }
                if (i == 1 && j >= 2) || j >= 5 {
                    return Elem::new();
                }
            }
            _ => unreachable!(),
        }
        if c.is_zero() {
            return Elem::new();
        }
        let mut e = Elem::new();
        e.insert((i, j), c);
        e
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let mut out = Elem::new();
        for ((i1, j1), c1) in a {
            for ((i2, j2), c2) in b {
                for (m, c) in self.reduce_mono((i1 + i2, j1 + j2), c1 * c2) {
                    let entry = out.entry(m).or_insert_with(Rat::zero);
                    *entry = &*entry + &c;
                    if entry.is_zero() {
                        out.remove(&m);
                    }
                }
            }
        }
        out
    }

    pub fn basis_elem(&self, k: usize) -> Elem {
        let mut e = Elem::new();
        e.insert(self.basis[k], int(1));
        e
    }

    /// Weighted degree of a homogeneous element, if nonzero and homogeneous.
    pub fn degree(&self, e: &Elem) -> Option<usize> {
        let mut degs = e.keys().map(|&m| self.mono_degree(m));
        let d = degs.next()?;
        degs.all(|x| x == d).then_some(d)
    }

    /// The Givental rescaling `S(q) = ((deg q + 2)/h) q`.
    pub fn s_operator(&self, e: &Elem) -> Elem {
        let Some(d) = self.degree(e) else { return Elem::new() };
        let f = rat(d as i64 + 2, self.coxeter as i64);
        e.iter().map(|(m, c)| (*m, c * &f)).collect()
    }

    /// Vanishing mask over basis pairs: `true` where the product survives.
    pub fn pair_mask(&self) -> Vec<Vec<bool>> {
        (0..self.dim())
            .map(|i| {
                (0..self.dim())
                    .map(|j| !self.mul(&self.basis_elem(i), &self.basis_elem(j)).is_empty())
                    .collect()
            })
            .collect()
    }

    /// Compare the product mask against the nonzero mask of a pairing table.
    /// Basis element of degree `m_i - 1` corresponds to the generator of
    /// degree `m_i + 1`.
    pub fn mask_matches(&self, table: &DTable) -> Result<(), String> {
        if table.label != self.label {
            return Err(format!("table is for {}, ring is for {}", table.label, self.label));
        }
        if table.rank() != self.dim() {
            return Err("rank mismatch".into());
        }
        let mask = self.pair_mask();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let table_nonzero = !table.d[i][j].is_empty();
                if mask[i][j] != table_nonzero {
                    return Err(format!(
                        "{}: ring mask {} but table entry {} at generator pair ({}, {})",
                        self.label,
                        mask[i][j],
                        if table_nonzero { "nonzero" } else { "zero" },
                        table.degrees[i],
                        table.degrees[j],
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn render(&self, e: &Elem) -> String {
        if e.is_empty() {
            return "0".into();
        }
        let term = |(i, j): (u32, u32)| -> String {
            let mut parts = Vec::new();
            for (v, p) in [("x", i), ("y", j)] {
                match p {
                    0 => {}
                    1 => parts.push(v.to_string()),
                    _ => parts.push(format!("{v}^{p}")),
                }
            }
            if parts.is_empty() {
                "1".into()
            } else {
                parts.join("*")
            }
        };
        e.iter()
            .map(|(m, c)| {
                if c == &int(1) && *m != (0, 0) {
                    term(*m)
                } else if *m == (0, 0) {
                    c.coeff_string()
                } else {
                    format!("{}*{}", c.coeff_string(), term(*m))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn cross(imax: u32, jmax: u32) -> Vec<(u32, u32)> {
    (0..imax).flat_map(|i| (0..jmax).map(move |j| (i, j))).collect()
}
