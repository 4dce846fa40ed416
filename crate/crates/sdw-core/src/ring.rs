use alloc::sync::Arc;
use alloc::vec::Vec;
use once_cell::race::OnceBox;

use crate::error::CoreError;
use crate::free::ModElement;
use crate::groebner::{buchberger, GroebnerBasis};
use crate::poly::{PolyRing, Polynomial};
use crate::serre::RingInvariants;

/// A graded quotient `R = P / I` of a polynomial ring by a homogeneous
/// ideal (possibly zero, representing `P` itself). Stores the reduced
/// Groebner basis of `I` and lazily caches numerical invariants.
#[derive(Debug)]
pub struct QuotientRing {
    poly: Arc<PolyRing>,
    ideal_gens: Vec<Polynomial>,
    gb: GroebnerBasis,
    pub(crate) invariants: OnceBox<RingInvariants>,
}

impl PartialEq for QuotientRing {
    fn eq(&self, other: &Self) -> bool {
        // reduced Groebner bases are canonical per ideal and order
        self.poly == other.poly && self.gb.elements() == other.gb.elements()
    }
}
impl Eq for QuotientRing {}

impl QuotientRing {
    /// Builds `P / (gens)`. Rejects inhomogeneous generators and the unit
    /// ideal; the zero ideal is allowed and yields `P` itself.
    pub fn new(poly: Arc<PolyRing>, gens: Vec<Polynomial>) -> Result<Arc<Self>, CoreError> {
        for g in &gens {
            if !poly.is_homogeneous(g) {
                return Err(CoreError::Inhomogeneous(poly.fmt_poly(g)));
            }
        }
        let cols: Vec<ModElement> = gens
            .iter()
            .filter(|g| !g.is_zero())
            .map(|g| ModElement::from_poly(g, 0))
            .collect();
        let gb = buchberger(&poly, &[0], &cols);
        if gb
            .elements()
            .iter()
            .any(|e| e.lead().unwrap().mono.is_one())
        {
            return Err(CoreError::UnitIdeal);
        }
        Ok(Arc::new(QuotientRing {
            poly,
            ideal_gens: gens,
            gb,
            invariants: OnceBox::new(),
        }))
    }

    /// The polynomial ring itself as a quotient by the zero ideal.
    pub fn polynomial(poly: Arc<PolyRing>) -> Arc<Self> {
        QuotientRing::new(poly, Vec::new()).unwrap()
    }

    pub fn poly_ring(&self) -> &Arc<PolyRing> {
        &self.poly
    }

    /// Explicit generators as given at construction.
    pub fn ideal_gens(&self) -> &[Polynomial] {
        &self.ideal_gens
    }

    /// Reduced Groebner basis of the defining ideal, as polynomials.
    pub fn ideal_gb(&self) -> Vec<Polynomial> {
        self.gb
            .elements()
            .iter()
            .map(|e| e.component(&self.poly, 0))
            .collect()
    }

    pub fn ideal_gb_raw(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.gb.elements().is_empty()
    }

    /// Normal form of a polynomial modulo the defining ideal.
    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        if self.is_polynomial_ring() {
            return f.clone();
        }
        self.gb
            .normal_form(&self.poly, &ModElement::from_poly(f, 0))
            .component(&self.poly, 0)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.reduce(f).is_zero()
    }

    /// Columns `g * e_i` for every ideal Groebner basis element `g` and
    /// every component `i`; together with explicit relation columns these
    /// span the full relation module of a presented module.
    pub fn ideal_columns(&self, n_comps: usize) -> Vec<ModElement> {
        let mut out = Vec::new();
        for g in self.gb.elements() {
            for i in 0..n_comps {
                out.push(g.shift_components(i as u32));
            }
        }
        out
    }
}
