use alloc::boxed::Box;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::CoreError;
use crate::groebner::monomial_dimension;
use crate::homology::{free_resolution, ExtCalculator};
use crate::module::{fitting_ideal, minimal_presentation, Module, PresentedModule};
use crate::poly::Polynomial;
use crate::report::Provenance;
use crate::ring::QuotientRing;

/// Cached numerical invariants of a quotient ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingInvariants {
    pub dim: i64,
    pub depth: i64,
    pub codim: i64,
    pub is_cm: bool,
    /// The supremum of local depths; for a Cohen-Macaulay graded ring this
    /// is the depth at the irrelevant maximal ideal.
    pub d_sup_depth: i64,
}

/// Hypothesis bookkeeping for the theorem harnesses: each flag records
/// how it was established.
#[derive(Debug, Clone, Default)]
pub struct HypothesisFlags {
    /// `(S_n)` for the ring, at the recorded level.
    pub serre: Option<(i64, Provenance)>,
    /// `(G_n^C)` at the recorded level.
    pub g_condition: Option<(i64, Provenance)>,
    /// `(ES^C_n)` at the recorded level (never machine-verifiable here).
    pub es_condition: Option<(i64, Provenance)>,
    pub equidimensional: Option<Provenance>,
    pub generically_gorenstein: Option<Provenance>,
}

/// Three-valued verdict for Serre-type conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SnVerdict {
    True,
    /// Fails, witnessed by the cohomological degree where the codimension
    /// bound breaks.
    False { witness_j: usize },
    Unknown,
}

impl SnVerdict {
    pub fn is_true(&self) -> bool {
        matches!(self, SnVerdict::True)
    }
}

/// Three-valued verdict for the depth-based variant of the condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SnTildeVerdict {
    True,
    False { witness_j: usize },
    Unsupported,
}

/// Verdict for the Gorenstein-locus condition `(G_n^C)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GVerdict {
    True,
    /// The locus where the evaluation map fails to be an isomorphism has
    /// codimension at most `n` in the ring.
    False { locus_r_codim: i64 },
    Unknown,
}

impl GVerdict {
    pub fn is_true(&self) -> bool {
        matches!(self, GVerdict::True)
    }
}

/// Dimension of the module: the maximum over components of the dimension
/// of `P` modulo the lead-term ideal of the relation Groebner basis
/// (flat degeneration preserves Hilbert functions, hence dimension; the
/// value equals `dim P/Fitt_0(M)`). Zero modules report -1.
pub fn krull_dim(m: &Module) -> i64 {
    let n = m.poly_ring().n_vars();
    if m.n_gens() == 0 {
        return -1;
    }
    let mut best = -1i64;
    for i in 0..m.n_gens() as u32 {
        let supports: Vec<Vec<usize>> = m
            .rel_gb()
            .lead_terms()
            .filter(|t| t.comp == i)
            .map(|t| t.mono.support())
            .collect();
        best = best.max(monomial_dimension(n, &supports));
    }
    best
}

/// Reinterprets a module over `R = P/I` as a module over `P` itself
/// (the ideal columns become explicit relations).
pub fn as_p_module(m: &Module) -> Module {
    let p_ring = QuotientRing::polynomial(m.poly_ring().clone());
    PresentedModule::new(p_ring, m.gen_degs().to_vec(), m.full_rels())
        .expect("restriction of scalars")
}

/// Projective dimension over the ambient polynomial ring; finite by the
/// syzygy theorem (asserted).
pub fn pd_over_p(m: &Module) -> usize {
    let mp = as_p_module(m);
    let n = m.poly_ring().n_vars();
    let res = free_resolution(&mp, n + 1, true);
    let eff = res.effective_length();
    assert!(
        res.term(n + 1).n_gens() == 0,
        "resolution over the polynomial ring must stop by the variable count"
    );
    eff
}

/// Depth at the irrelevant maximal ideal via the Auslander-Buchsbaum
/// formula over the polynomial ambient. Errors on the zero module.
pub fn depth_graded(m: &Module) -> Result<i64, CoreError> {
    if m.is_zero_module() {
        return Err(CoreError::ZeroModule);
    }
    Ok(m.poly_ring().n_vars() as i64 - pd_over_p(m) as i64)
}

/// Ring invariants, computed once per ring.
pub fn ring_invariants(ring: &Arc<QuotientRing>) -> &RingInvariants {
    ring.invariants.get_or_init(|| {
        let rm = PresentedModule::ring_module(ring.clone());
        let dim = krull_dim(&rm);
        let depth = depth_graded(&rm).expect("quotient ring is nonzero");
        let codim = ring.poly_ring().n_vars() as i64 - dim;
        Box::new(RingInvariants {
            dim,
            depth,
            codim,
            is_cm: depth == dim,
            d_sup_depth: depth,
        })
    })
}

pub fn is_cm_ring(ring: &Arc<QuotientRing>) -> bool {
    ring_invariants(ring).is_cm
}

/// A module is Cohen-Macaulay when depth equals dimension.
pub fn is_cm_module(m: &Module) -> Result<bool, CoreError> {
    Ok(depth_graded(m)? == krull_dim(m))
}

/// Gorenstein means Cohen-Macaulay with a cyclic canonical module.
pub fn is_gorenstein(ring: &Arc<QuotientRing>, omega: &Module) -> bool {
    ring_invariants(ring).is_cm && crate::module::mu(omega) == 1
}

/// Serre condition `(S_n)` for a module over a ring verified to be
/// Cohen-Macaulay (hence equidimensional) or asserted equidimensional:
/// for every `j` above the ring's codimension, the support of
/// `Ext^j_P(M, P)` must have codimension at least `j + n`.
pub fn satisfies_sn(m: &Module, n: i64) -> SnVerdict {
    satisfies_sn_assuming(m, n, false)
}

pub fn satisfies_sn_assuming(m: &Module, n: i64, equidim_asserted: bool) -> SnVerdict {
    let ring = m.ring();
    if !ring_invariants(ring).is_cm && !equidim_asserted {
        return SnVerdict::Unknown;
    }
    if m.is_zero_module() {
        return SnVerdict::True;
    }
    let n_vars = m.poly_ring().n_vars();
    let c = ring_invariants(ring).codim;
    let m_p = as_p_module(m);
    let p_ring = m_p.ring().clone();
    let p_mod = PresentedModule::ring_module(p_ring);
    let calc = ExtCalculator::new(&m_p, &p_mod, n_vars);
    for j in (c as usize + 1)..=n_vars {
        if calc.ext_is_zero(j) {
            continue;
        }
        let ext = calc.ext(j);
        let codim_ext = n_vars as i64 - krull_dim(&ext);
        if codim_ext < j as i64 + n {
            return SnVerdict::False { witness_j: j };
        }
    }
    SnVerdict::True
}

/// Depth-based variant: over a Cohen-Macaulay ring the two conditions
/// coincide (local dimension equals local depth); otherwise unsupported.
pub fn satisfies_sn_tilde(m: &Module, n: i64) -> SnTildeVerdict {
    if !ring_invariants(m.ring()).is_cm {
        return SnTildeVerdict::Unsupported;
    }
    match satisfies_sn(m, n) {
        SnVerdict::True => SnTildeVerdict::True,
        SnVerdict::False { witness_j } => SnTildeVerdict::False { witness_j },
        SnVerdict::Unknown => SnTildeVerdict::Unsupported,
    }
}

/// `(G_n^C)` via the locus where `C` fails to localize to a canonical
/// module. For certified semidualizing `C` over a Cohen-Macaulay ring
/// with canonical module `ω`, the dual `Hom(C, ω)` is semidualizing
/// (hence faithful), so `C_p` is canonical iff `Hom(C, ω)_p` is cyclic.
/// The non-cyclic locus is the support of the exterior square of the
/// dual (the vanishing set of its first Fitting ideal), so the verdict is
/// its codimension inside `Spec R` exceeding `n`. Requires the ring to be
/// verified Cohen-Macaulay (`Unknown` otherwise).
pub fn check_g_condition(c: &Module, omega: &Module, n: i64) -> GVerdict {
    let ring = c.ring().clone();
    let inv = ring_invariants(&ring).clone();
    if !inv.is_cm {
        return GVerdict::Unknown;
    }
    let cdual = crate::module::hom_module(c, omega).module;
    let mp = minimal_presentation(&cdual).module;
    let locus_dim = krull_dim(&crate::module::exterior_square(&mp));
    if locus_dim < 0 {
        return GVerdict::True; // cyclic everywhere
    }
    let r_codim = inv.dim - locus_dim;
    if r_codim > n {
        GVerdict::True
    } else {
        GVerdict::False {
            locus_r_codim: r_codim,
        }
    }
}

/// `R_p` is Gorenstein (for Cohen-Macaulay `R` with canonical module
/// `omega`) iff `omega` is locally cyclic at `p`, i.e. the first Fitting
/// ideal is not contained in `p`. The prime is given by generators in the
/// ambient polynomial ring and must contain the defining ideal.
pub fn is_locally_gorenstein_at(
    ring: &Arc<QuotientRing>,
    omega: &Module,
    prime_gens: &[Polynomial],
) -> Result<bool, CoreError> {
    let poly = ring.poly_ring().clone();
    for g in prime_gens {
        if !poly.is_homogeneous(g) {
            return Err(CoreError::Inhomogeneous(poly.fmt_poly(g)));
        }
    }
    let cols: Vec<crate::free::ModElement> = prime_gens
        .iter()
        .map(|g| crate::free::ModElement::from_poly(g, 0))
        .collect();
    let gb = crate::groebner::buchberger(&poly, &[0], &cols);
    // the prime must contain the defining ideal to be a prime of R
    for f in ring.ideal_gens() {
        if !gb.reduces_to_zero(&poly, &crate::free::ModElement::from_poly(f, 0)) {
            return Err(CoreError::ShapeMismatch(alloc::format!(
                "prime does not contain the defining ideal: {}",
                poly.fmt_poly(f)
            )));
        }
    }
    match fitting_ideal(omega, 1) {
        None => Ok(true), // unit Fitting ideal: omega globally cyclic
        Some(minors) => Ok(minors
            .iter()
            .any(|m| !gb.reduces_to_zero(&poly, &crate::free::ModElement::from_poly(m, 0)))),
    }
}

/// Minimal generator count after pruning (used in reports).
pub fn minimal_gens(m: &Module) -> usize {
    minimal_presentation(m).module.n_gens()
}
