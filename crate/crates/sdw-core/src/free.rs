use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::mono::{module_cmp, ModuleOrder, Monomial};
use crate::poly::{PolyRing, Polynomial};

/// One term of a free-module element: `coef * mono * e_comp`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModTerm {
    pub comp: u32,
    pub mono: Monomial,
    pub coef: u32,
}

/// Element of a graded free module, stored as a term list strictly
/// descending in the position-over-term extension of grevlex. Plain
/// polynomials are the one-component case.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ModElement {
    terms: Vec<ModTerm>,
}

const ORDER: ModuleOrder = ModuleOrder::PositionOverTerm;

impl ModElement {
    pub fn zero() -> Self {
        ModElement { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[ModTerm] {
        &self.terms
    }

    pub fn lead(&self) -> Option<&ModTerm> {
        self.terms.first()
    }

    /// Standard basis vector `e_comp`.
    pub fn unit(ring: &PolyRing, comp: u32) -> Self {
        ModElement {
            terms: alloc::vec![ModTerm {
                comp,
                mono: Monomial::one(ring.n_vars()),
                coef: 1,
            }],
        }
    }

    /// `f * e_comp`.
    pub fn from_poly(f: &Polynomial, comp: u32) -> Self {
        ModElement {
            terms: f
                .terms()
                .iter()
                .map(|(m, c)| ModTerm {
                    comp,
                    mono: m.clone(),
                    coef: *c,
                })
                .collect(),
        }
    }

    /// Builds from per-component polynomials.
    pub fn from_components(ring: &PolyRing, comps: &[Polynomial]) -> Self {
        let mut terms = Vec::new();
        for (i, f) in comps.iter().enumerate() {
            for (m, c) in f.terms() {
                terms.push(ModTerm {
                    comp: i as u32,
                    mono: m.clone(),
                    coef: *c,
                });
            }
        }
        Self::from_term_list(ring, terms)
    }

    pub fn from_term_list(ring: &PolyRing, mut terms: Vec<ModTerm>) -> Self {
        let p = ring.field().characteristic();
        terms.retain(|t| t.coef % p != 0);
        for t in &mut terms {
            t.coef %= p;
        }
        terms.sort_by(|a, b| module_cmp(ORDER, b.comp, &b.mono, a.comp, &a.mono));
        let mut out: Vec<ModTerm> = Vec::with_capacity(terms.len());
        for t in terms {
            if let Some(last) = out.last_mut() {
                if last.comp == t.comp && last.mono == t.mono {
                    last.coef = ring.field().add(last.coef, t.coef);
                    if last.coef == 0 {
                        out.pop();
                    }
                    continue;
                }
            }
            out.push(t);
        }
        ModElement { terms: out }
    }

    /// Wraps a term list that is already normalized (sorted strictly
    /// descending, nonzero canonical coefficients). Debug-checked.
    pub(crate) fn from_term_list_unchecked(terms: Vec<ModTerm>) -> Self {
        debug_assert!(terms.windows(2).all(|w| {
            module_cmp(ORDER, w[0].comp, &w[0].mono, w[1].comp, &w[1].mono) == Ordering::Greater
        }));
        ModElement { terms }
    }

    /// Extracts the polynomial in component `comp`.
    pub fn component(&self, ring: &PolyRing, comp: u32) -> Polynomial {
        ring.from_terms(
            self.terms
                .iter()
                .filter(|t| t.comp == comp)
                .map(|t| (t.mono.clone(), t.coef))
                .collect(),
        )
    }

    pub fn components(&self, ring: &PolyRing, n: usize) -> Vec<Polynomial> {
        (0..n).map(|i| self.component(ring, i as u32)).collect()
    }

    pub fn max_component(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.comp).max()
    }

    pub fn add(&self, ring: &PolyRing, other: &Self) -> Self {
        let f = ring.field();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let a = &self.terms[i];
            let b = &other.terms[j];
            match module_cmp(ORDER, a.comp, &a.mono, b.comp, &b.mono) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b.clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = f.add(a.coef, b.coef);
                    if c != 0 {
                        out.push(ModTerm {
                            comp: a.comp,
                            mono: a.mono.clone(),
                            coef: c,
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        ModElement { terms: out }
    }

    pub fn neg(&self, ring: &PolyRing) -> Self {
        ModElement {
            terms: self
                .terms
                .iter()
                .map(|t| ModTerm {
                    comp: t.comp,
                    mono: t.mono.clone(),
                    coef: ring.field().neg(t.coef),
                })
                .collect(),
        }
    }

    pub fn sub(&self, ring: &PolyRing, other: &Self) -> Self {
        self.add(ring, &other.neg(ring))
    }

    /// Multiply by the term `c * m`; preserves order.
    pub fn term_mul(&self, ring: &PolyRing, c: u32, m: &Monomial) -> Self {
        if c == 0 {
            return Self::zero();
        }
        ModElement {
            terms: self
                .terms
                .iter()
                .map(|t| ModTerm {
                    comp: t.comp,
                    mono: m.mul(&t.mono),
                    coef: ring.field().mul(c, t.coef),
                })
                .collect(),
        }
    }

    pub fn scalar_mul(&self, ring: &PolyRing, c: u32) -> Self {
        self.term_mul(ring, c, &Monomial::one(ring.n_vars()))
    }

    pub fn poly_mul(&self, ring: &PolyRing, f: &Polynomial) -> Self {
        let mut acc = Self::zero();
        for (m, c) in f.terms() {
            acc = acc.add(ring, &self.term_mul(ring, *c, m));
        }
        acc
    }

    /// Renumbers components by `comp -> comp + offset` (block embedding).
    pub fn shift_components(&self, offset: u32) -> Self {
        ModElement {
            terms: self
                .terms
                .iter()
                .map(|t| ModTerm {
                    comp: t.comp + offset,
                    mono: t.mono.clone(),
                    coef: t.coef,
                })
                .collect(),
        }
    }

    /// Keeps components in `lo..lo+len`, renumbered to start at zero.
    /// Sound for position-over-term: relative order is preserved.
    pub fn project_components(&self, lo: u32, len: u32) -> Self {
        ModElement {
            terms: self
                .terms
                .iter()
                .filter(|t| t.comp >= lo && t.comp < lo + len)
                .map(|t| ModTerm {
                    comp: t.comp - lo,
                    mono: t.mono.clone(),
                    coef: t.coef,
                })
                .collect(),
        }
    }

    /// Weighted degree of a homogeneous element w.r.t. generator degrees;
    /// `None` for zero or inhomogeneous elements.
    pub fn homogeneous_degree(&self, degs: &[i64]) -> Option<i64> {
        let mut it = self.terms.iter();
        let first = it.next()?;
        let d = first.mono.degree() as i64 + degs[first.comp as usize];
        for t in it {
            if t.mono.degree() as i64 + degs[t.comp as usize] != d {
                return None;
            }
        }
        Some(d)
    }

    pub fn is_homogeneous(&self, degs: &[i64]) -> bool {
        self.is_zero() || self.homogeneous_degree(degs).is_some()
    }

    /// Makes the lead coefficient 1.
    pub fn monic(&self, ring: &PolyRing) -> Self {
        match self.lead() {
            None => Self::zero(),
            Some(t) => self.scalar_mul(ring, ring.field().inv(t.coef)),
        }
    }
}
