use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt::Write as _;

use crate::error::CoreError;
use crate::field::PrimeField;
use crate::mono::{grevlex, Monomial};

/// A graded polynomial ring over a prime field with positive integer
/// variable weights. Acts as the arithmetic context for [`Polynomial`]
/// values; the active monomial order is grevlex throughout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyRing {
    field: PrimeField,
    vars: Vec<String>,
    weights: Vec<u32>,
}

impl PolyRing {
    pub fn new(field: PrimeField, vars: Vec<String>, weights: Vec<u32>) -> Result<Arc<Self>, CoreError> {
        if vars.len() != weights.len() {
            return Err(CoreError::ShapeMismatch(String::from(
                "variable and weight lists differ in length",
            )));
        }
        if weights.iter().any(|&w| w == 0) {
            return Err(CoreError::ShapeMismatch(String::from(
                "weights must be positive",
            )));
        }
        Ok(Arc::new(PolyRing { field, vars, weights }))
    }

    /// Unit-weight ring with the given variable names.
    pub fn standard(field: PrimeField, vars: &[&str]) -> Arc<Self> {
        let vars: Vec<String> = vars.iter().map(|s| String::from(*s)).collect();
        let weights = alloc::vec![1u32; vars.len()];
        PolyRing::new(field, vars, weights).unwrap()
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn n_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn weight_total(&self) -> i64 {
        self.weights.iter().map(|&w| w as i64).sum()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial { terms: Vec::new() }
    }

    pub fn one(&self) -> Polynomial {
        Polynomial {
            terms: alloc::vec![(Monomial::one(self.n_vars()), 1)],
        }
    }

    pub fn constant(&self, c: i64) -> Polynomial {
        let c = self.field.reduce_i64(c);
        if c == 0 {
            self.zero()
        } else {
            Polynomial {
                terms: alloc::vec![(Monomial::one(self.n_vars()), c)],
            }
        }
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial {
            terms: alloc::vec![(Monomial::var(i, self.n_vars(), &self.weights), 1)],
        }
    }

    pub fn monomial(&self, exps: &[u16]) -> Polynomial {
        assert_eq!(exps.len(), self.n_vars());
        Polynomial {
            terms: alloc::vec![(Monomial::new(exps, &self.weights), 1)],
        }
    }

    /// Normalizes an arbitrary term list into a polynomial.
    pub fn from_terms(&self, mut terms: Vec<(Monomial, u32)>) -> Polynomial {
        terms.retain(|(_, c)| *c % self.field.characteristic() != 0);
        terms.sort_by(|a, b| grevlex(&b.0, &a.0));
        let mut out: Vec<(Monomial, u32)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            let c = c % self.field.characteristic();
            if let Some(last) = out.last_mut() {
                if last.0 == m {
                    last.1 = self.field.add(last.1, c);
                    if last.1 == 0 {
                        out.pop();
                    }
                    continue;
                }
            }
            out.push((m, c));
        }
        Polynomial { terms: out }
    }

    pub fn add(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        let mut out = Vec::with_capacity(f.terms.len() + g.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < f.terms.len() && j < g.terms.len() {
            match grevlex(&f.terms[i].0, &g.terms[j].0) {
                Ordering::Greater => {
                    out.push(f.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(g.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = self.field.add(f.terms[i].1, g.terms[j].1);
                    if c != 0 {
                        out.push((f.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&f.terms[i..]);
        out.extend_from_slice(&g.terms[j..]);
        Polynomial { terms: out }
    }

    pub fn neg(&self, f: &Polynomial) -> Polynomial {
        Polynomial {
            terms: f
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), self.field.neg(*c)))
                .collect(),
        }
    }

    pub fn sub(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        self.add(f, &self.neg(g))
    }

    pub fn scalar_mul(&self, c: u32, f: &Polynomial) -> Polynomial {
        let c = c % self.field.characteristic();
        if c == 0 {
            return self.zero();
        }
        Polynomial {
            terms: f
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), self.field.mul(c, *a)))
                .collect(),
        }
    }

    /// Multiply by a single term `c * m`.
    pub fn term_mul(&self, c: u32, m: &Monomial, f: &Polynomial) -> Polynomial {
        if c == 0 {
            return self.zero();
        }
        Polynomial {
            terms: f
                .terms
                .iter()
                .map(|(fm, fc)| (m.mul(fm), self.field.mul(c, *fc)))
                .collect(),
        }
    }

    pub fn mul(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        let mut acc = self.zero();
        for (m, c) in &f.terms {
            acc = self.add(&acc, &self.term_mul(*c, m, g));
        }
        acc
    }

    /// Exact division `f / g`; panics if `g` does not divide `f` exactly
    /// (used by fraction-free determinant elimination, where divisions are
    /// exact by construction).
    pub fn exact_div(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        assert!(!g.is_zero(), "exact division by zero");
        let (gm, gc) = (&g.terms[0].0, g.terms[0].1);
        let gc_inv = self.field.inv(gc);
        let mut rem = f.clone();
        let mut quo: Vec<(Monomial, u32)> = Vec::new();
        while let Some((rm, rc)) = rem.terms.first().cloned() {
            assert!(gm.divides(&rm), "inexact polynomial division");
            let qm = gm.div(&rm);
            let qc = self.field.mul(rc, gc_inv);
            rem = self.sub(&rem, &self.term_mul(qc, &qm, g));
            quo.push((qm, qc));
        }
        self.from_terms(quo)
    }

    /// Weighted degree of every term when all agree.
    pub fn homogeneous_degree(&self, f: &Polynomial) -> Homogeneity {
        let mut it = f.terms.iter();
        let first = match it.next() {
            None => return Homogeneity::Zero,
            Some((m, _)) => m.degree(),
        };
        if it.all(|(m, _)| m.degree() == first) {
            Homogeneity::Degree(first)
        } else {
            Homogeneity::No
        }
    }

    pub fn is_homogeneous(&self, f: &Polynomial) -> bool {
        !matches!(self.homogeneous_degree(f), Homogeneity::No)
    }

    pub fn fmt_poly(&self, f: &Polynomial) -> String {
        if f.is_zero() {
            return String::from("0");
        }
        let mut s = String::new();
        for (i, (m, c)) in f.terms.iter().enumerate() {
            if i > 0 {
                s.push_str(" + ");
            }
            let mut printed = false;
            if *c != 1 || m.is_one() {
                let _ = write!(s, "{c}");
                printed = true;
            }
            for (v, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if printed {
                    s.push('*');
                }
                s.push_str(&self.vars[v]);
                if e > 1 {
                    let _ = write!(s, "^{e}");
                }
                printed = true;
            }
        }
        s
    }

    /// All monomials of exact weighted degree `d`, in descending grevlex
    /// order. Dense enumeration; fine for the corpus scale.
    pub fn monomials_of_degree(&self, d: i64) -> Vec<Monomial> {
        if d < 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut exps = alloc::vec![0u16; self.n_vars()];
        self.enum_rec(0, d as u32, &mut exps, &mut out);
        out.sort_by(|a, b| grevlex(b, a));
        out
    }

    fn enum_rec(&self, var: usize, rem: u32, exps: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if var == self.n_vars() {
            if rem == 0 {
                out.push(Monomial::new(exps, &self.weights));
            }
            return;
        }
        let w = self.weights[var];
        let max = rem / w;
        for e in 0..=max {
            exps[var] = e as u16;
            self.enum_rec(var + 1, rem - e * w, exps, out);
        }
        exps[var] = 0;
    }
}

/// Homogeneity verdict for one polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Homogeneity {
    /// The zero polynomial (homogeneous of every degree).
    Zero,
    Degree(u32),
    No,
}

/// Sorted term list over a [`PolyRing`]; terms are strictly descending in
/// grevlex and never carry zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    terms: Vec<(Monomial, u32)>,
}

impl Polynomial {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn lead(&self) -> Option<(&Monomial, u32)> {
        self.terms.first().map(|(m, c)| (m, *c))
    }

    /// Coefficient of the constant monomial, if present.
    pub fn constant_coeff(&self) -> u32 {
        self.terms
            .iter()
            .find(|(m, _)| m.is_one())
            .map(|(_, c)| *c)
            .unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.iter().all(|(m, _)| m.is_one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::DEFAULT_CHAR;

    fn ring2() -> Arc<PolyRing> {
        PolyRing::standard(PrimeField::new(DEFAULT_CHAR).unwrap(), &["x", "y"])
    }

    #[test]
    fn add_cancels() {
        let r = ring2();
        let x = r.var(0);
        let y = r.var(1);
        // (x + y) + (-x) = y
        let s = r.add(&r.add(&x, &y), &r.neg(&x));
        assert_eq!(s, y);
    }

    #[test]
    fn difference_of_squares() {
        let r = ring2();
        let x = r.var(0);
        let y = r.var(1);
        let prod = r.mul(&r.add(&x, &y), &r.sub(&x, &y));
        let expect = r.sub(&r.mul(&x, &x), &r.mul(&y, &y));
        assert_eq!(prod, expect);
    }

    #[test]
    fn mul_by_zero() {
        let r = ring2();
        let f = r.add(&r.var(0), &r.one());
        assert!(r.mul(&f, &r.zero()).is_zero());
    }

    #[test]
    fn homogeneity() {
        let r = PolyRing::standard(PrimeField::new(32003).unwrap(), &["x1", "x2", "x3"]);
        // x2^2 - x1 x3 is a quadric
        let f = r.sub(&r.monomial(&[0, 2, 0]), &r.monomial(&[1, 0, 1]));
        assert_eq!(r.homogeneous_degree(&f), Homogeneity::Degree(2));
        // y^2 - x^3 under weights (2, 3) is homogeneous of degree 6
        let w = PolyRing::new(
            PrimeField::new(32003).unwrap(),
            alloc::vec![String::from("x"), String::from("y")],
            alloc::vec![2, 3],
        )
        .unwrap();
        let g = w.sub(&w.monomial(&[0, 2]), &w.monomial(&[3, 0]));
        assert_eq!(w.homogeneous_degree(&g), Homogeneity::Degree(6));
        // x + x^2 is not homogeneous
        let r2 = ring2();
        let h = r2.add(&r2.var(0), &r2.monomial(&[2, 0]));
        assert_eq!(r2.homogeneous_degree(&h), Homogeneity::No);
        assert_eq!(r2.homogeneous_degree(&r2.zero()), Homogeneity::Zero);
    }

    #[test]
    fn exact_division() {
        let r = ring2();
        let x = r.var(0);
        let y = r.var(1);
        let f = r.mul(&r.add(&x, &y), &r.sub(&x, &y));
        assert_eq!(r.exact_div(&f, &r.add(&x, &y)), r.sub(&x, &y));
    }

    #[test]
    fn degree_enumeration() {
        let r = ring2();
        assert_eq!(r.monomials_of_degree(3).len(), 4);
        assert_eq!(r.monomials_of_degree(0).len(), 1);
        // weighted: degree 6 monomials of k[x,y], weights (2,3): x^3, y^2
        let w = PolyRing::new(
            PrimeField::new(32003).unwrap(),
            alloc::vec![String::from("x"), String::from("y")],
            alloc::vec![2, 3],
        )
        .unwrap();
        assert_eq!(w.monomials_of_degree(6).len(), 2);
        assert_eq!(w.monomials_of_degree(1).len(), 0);
    }

    #[test]
    fn display() {
        let r = ring2();
        let f = r.add(&r.mul(&r.var(0), &r.var(0)), &r.scalar_mul(5, &r.var(1)));
        assert_eq!(r.fmt_poly(&f), "x^2 + 5*y");
        assert_eq!(r.fmt_poly(&r.zero()), "0");
        assert_eq!(r.fmt_poly(&r.one()), "1");
    }
}
