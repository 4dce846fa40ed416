use alloc::boxed::Box;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use once_cell::race::OnceBox;
use rand_core::{RngCore, SeedableRng};

use crate::error::CoreError;
use crate::free::{ModElement, ModTerm};
use crate::groebner::{
    buchberger, degree_basis, minimal_generator_indices, syzygies, GroebnerBasis,
};
use crate::mono::Monomial;
use crate::poly::{PolyRing, Polynomial};
use crate::ring::QuotientRing;

pub type Module = Arc<PresentedModule>;

/// A finitely presented graded module over a quotient ring `R = P/I`,
/// given by generator degrees and homogeneous relation columns over `P`.
/// The columns of the defining ideal times each generator are implicit
/// relations: all Groebner computation happens over the polynomial ring.
#[derive(Debug)]
pub struct PresentedModule {
    ring: Arc<QuotientRing>,
    gen_degs: Vec<i64>,
    rels: Vec<ModElement>,
    rel_gb: GroebnerBasis,
}

impl PartialEq for PresentedModule {
    /// Equality of presentations (same ring, generator degrees and
    /// explicit relations), not of abstract modules.
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.gen_degs == other.gen_degs && self.rels == other.rels
    }
}
impl Eq for PresentedModule {}

impl PresentedModule {
    pub fn new(
        ring: Arc<QuotientRing>,
        gen_degs: Vec<i64>,
        rels: Vec<ModElement>,
    ) -> Result<Module, CoreError> {
        let poly = ring.poly_ring().clone();
        for r in &rels {
            if let Some(t) = r.terms().iter().find(|t| t.comp as usize >= gen_degs.len()) {
                return Err(CoreError::ShapeMismatch(alloc::format!(
                    "relation touches component {} of a rank-{} module",
                    t.comp,
                    gen_degs.len()
                )));
            }
            if !r.is_homogeneous(&gen_degs) {
                return Err(CoreError::Inhomogeneous(String::from("relation column")));
            }
        }
        let mut cols: Vec<ModElement> = rels.iter().filter(|r| !r.is_zero()).cloned().collect();
        cols.extend(ring.ideal_columns(gen_degs.len()));
        let rel_gb = buchberger(&poly, &gen_degs, &cols);
        Ok(Arc::new(PresentedModule {
            ring,
            gen_degs,
            rels,
            rel_gb,
        }))
    }

    /// Free module with the given generator degrees (relations are the
    /// implicit ideal columns only).
    pub fn free(ring: Arc<QuotientRing>, gen_degs: Vec<i64>) -> Module {
        let poly = ring.poly_ring().clone();
        let gb = GroebnerBasis::from_known_basis(
            &poly,
            ring.ideal_columns(gen_degs.len()),
            ring.ideal_gb_raw().is_reduced(),
        );
        Arc::new(PresentedModule {
            ring,
            gen_degs,
            rels: Vec::new(),
            rel_gb: gb,
        })
    }

    /// The ring as a module over itself.
    pub fn ring_module(ring: Arc<QuotientRing>) -> Module {
        Self::free(ring, alloc::vec![0])
    }

    pub fn zero_module(ring: Arc<QuotientRing>) -> Module {
        Self::free(ring, Vec::new())
    }

    /// Residue field `R/m` as a module: one generator, all variables as
    /// relations.
    pub fn residue_field(ring: Arc<QuotientRing>) -> Module {
        let poly = ring.poly_ring().clone();
        let rels = (0..poly.n_vars())
            .map(|i| ModElement::from_poly(&poly.var(i), 0))
            .collect();
        Self::new(ring, alloc::vec![0], rels).unwrap()
    }

    /// Degree shift: `twist(s)` has graded pieces `M(s)_d = M_{s+d}`, so
    /// generator degrees drop by `s`.
    pub fn twist(&self, s: i64) -> Module {
        Arc::new(PresentedModule {
            ring: self.ring.clone(),
            gen_degs: self.gen_degs.iter().map(|d| d - s).collect(),
            rels: self.rels.clone(),
            rel_gb: self.rel_gb.clone(),
        })
    }

    /// Direct sum of twisted copies: blocks `parts[j].0.twist(parts[j].1)`.
    /// Block Groebner bases merge without new S-pairs since lead terms
    /// live in disjoint components.
    pub fn direct_sum(ring: Arc<QuotientRing>, parts: &[(&PresentedModule, i64)]) -> Module {
        let poly = ring.poly_ring().clone();
        let mut gen_degs = Vec::new();
        let mut rels = Vec::new();
        let mut gb_elems = Vec::new();
        let mut reduced = true;
        let mut offset = 0u32;
        for (m, tw) in parts {
            assert!(
                Arc::ptr_eq(&m.ring, &ring) || m.ring == ring,
                "direct sum over mismatched rings"
            );
            gen_degs.extend(m.gen_degs.iter().map(|d| d - tw));
            rels.extend(m.rels.iter().map(|r| r.shift_components(offset)));
            gb_elems.extend(
                m.rel_gb
                    .elements()
                    .iter()
                    .map(|e| e.shift_components(offset)),
            );
            reduced &= m.rel_gb.is_reduced();
            offset += m.n_gens() as u32;
        }
        let rel_gb = GroebnerBasis::from_known_basis(&poly, gb_elems, reduced);
        Arc::new(PresentedModule {
            ring,
            gen_degs,
            rels,
            rel_gb,
        })
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    pub fn poly_ring(&self) -> &Arc<PolyRing> {
        self.ring.poly_ring()
    }

    pub fn n_gens(&self) -> usize {
        self.gen_degs.len()
    }

    pub fn gen_degs(&self) -> &[i64] {
        &self.gen_degs
    }

    pub fn explicit_rels(&self) -> &[ModElement] {
        &self.rels
    }

    pub fn rel_gb(&self) -> &GroebnerBasis {
        &self.rel_gb
    }

    /// Explicit relations plus ideal columns: generators of the full
    /// relation submodule of the covering free module.
    pub fn full_rels(&self) -> Vec<ModElement> {
        let mut out: Vec<ModElement> = self.rels.iter().filter(|r| !r.is_zero()).cloned().collect();
        out.extend(self.ring.ideal_columns(self.n_gens()));
        out
    }

    /// Like [`full_rels`](Self::full_rels) but placing the raw defining
    /// ideal generators (not their Groebner basis) on the components, so
    /// consumers that must stay independent of Groebner data can use it.
    pub fn full_generating_rels(&self) -> Vec<ModElement> {
        let mut out: Vec<ModElement> = self.rels.iter().filter(|r| !r.is_zero()).cloned().collect();
        for f in self.ring.ideal_gens() {
            if f.is_zero() {
                continue;
            }
            for i in 0..self.n_gens() {
                out.push(ModElement::from_poly(f, i as u32));
            }
        }
        out
    }

    pub fn nf(&self, v: &ModElement) -> ModElement {
        self.rel_gb.normal_form(self.poly_ring(), v)
    }

    pub fn unit_element(&self, i: usize) -> ModElement {
        assert!(i < self.n_gens());
        ModElement::unit(self.poly_ring(), i as u32)
    }

    pub fn is_zero_module(&self) -> bool {
        (0..self.n_gens()).all(|i| self.nf(&self.unit_element(i)).is_zero())
    }

    /// `k`-basis of the degree-`d` graded piece (standard monomials).
    pub fn degree_basis(&self, d: i64) -> Vec<(u32, Monomial)> {
        let lead: Vec<(u32, Monomial)> = self
            .rel_gb
            .lead_terms()
            .map(|t| (t.comp, t.mono.clone()))
            .collect();
        degree_basis(self.poly_ring(), &self.gen_degs, &lead, d)
    }

    /// Graded dimensions over `lo..=hi`.
    pub fn hilbert_function(&self, lo: i64, hi: i64) -> Vec<u64> {
        (lo..=hi).map(|d| self.degree_basis(d).len() as u64).collect()
    }

    /// Smallest generator degree, if any generators exist.
    pub fn min_gen_degree(&self) -> Option<i64> {
        self.gen_degs.iter().copied().min()
    }

    pub fn max_gen_degree(&self) -> Option<i64> {
        self.gen_degs.iter().copied().max()
    }
}

/// Presentation of a subquotient `(span(gens) + span(base)) / span(base)`
/// living inside a graded free module; keeps the ambient generators and
/// supports expressing ambient elements in subquotient coordinates.
#[derive(Debug)]
pub struct Subquotient {
    pub module: Module,
    pub gens: Vec<ModElement>,
    pub ambient_degs: Vec<i64>,
    base: Vec<ModElement>,
    solver: OnceBox<LiftSolver>,
}

impl Subquotient {
    /// Expresses `v` (an ambient element) in the subquotient's generator
    /// coordinates, if `v` lies in `span(gens) + span(base)`.
    pub fn lift(&self, v: &ModElement) -> Option<ModElement> {
        let solver = self.solver.get_or_init(|| {
            Box::new(LiftSolver::new(
                self.module.poly_ring().clone(),
                &self.ambient_degs,
                &self.gens,
                &self.base,
            ))
        });
        solver.lift(v, self.gens.len())
    }
}

/// Tracked division data for expressing elements in terms of a generating
/// set: a raw Groebner basis of `[gens | base]` where every basis element
/// remembers its combination of the inputs.
#[derive(Debug)]
struct LiftSolver {
    ring: Arc<PolyRing>,
    basis: Vec<ModElement>,
    reps: Vec<ModElement>,
}

impl LiftSolver {
    fn new(ring: Arc<PolyRing>, degs: &[i64], gens: &[ModElement], base: &[ModElement]) -> Self {
        let mut eng = crate::groebner::GbEngine::new(&ring, degs, crate::groebner::GbMode::TrackReps);
        for g in gens {
            eng.add_input(g);
        }
        for b in base {
            eng.add_input(b);
        }
        eng.complete();
        let basis = eng.basis().to_vec();
        let reps = eng.representations().to_vec();
        LiftSolver { ring, basis, reps }
    }

    fn lift(&self, v: &ModElement, n_gens: usize) -> Option<ModElement> {
        let ring = &self.ring;
        let mut work = v.clone();
        let mut acc = ModElement::zero();
        'outer: while let Some(lt) = work.lead().cloned() {
            for (g, rep) in self.basis.iter().zip(&self.reps) {
                let glt = g.lead().unwrap();
                if glt.comp == lt.comp && glt.mono.divides(&lt.mono) {
                    let m = glt.mono.div(&lt.mono);
                    work = work.sub(ring, &g.term_mul(ring, lt.coef, &m));
                    acc = acc.add(ring, &rep.term_mul(ring, lt.coef, &m));
                    continue 'outer;
                }
            }
            return None;
        }
        Some(acc.project_components(0, n_gens as u32))
    }
}

/// Builds the subquotient presentation. When `minimize` is set, redundant
/// generators (those in the span of earlier ones and the base) are
/// dropped first.
pub fn subquotient(
    ring: Arc<QuotientRing>,
    ambient_degs: &[i64],
    gens: Vec<ModElement>,
    base: Vec<ModElement>,
    minimize: bool,
) -> Subquotient {
    let poly = ring.poly_ring().clone();
    let gens: Vec<ModElement> = if minimize {
        let kept = minimal_generator_indices(&poly, ambient_degs, &gens, &base);
        kept.into_iter().map(|i| gens[i].clone()).collect()
    } else {
        gens.into_iter().filter(|g| !g.is_zero()).collect()
    };
    let mut combined = gens.clone();
    combined.extend(base.iter().cloned());
    let syz = syzygies(&poly, ambient_degs, &combined);
    let n = gens.len() as u32;
    let rels: Vec<ModElement> = syz
        .iter()
        .map(|s| s.project_components(0, n))
        .filter(|s| !s.is_zero())
        .collect();
    let gen_degs: Vec<i64> = col_degrees(ambient_degs, &gens);
    let module = PresentedModule::new(ring, gen_degs, rels).expect("subquotient presentation");
    Subquotient {
        module,
        gens,
        ambient_degs: ambient_degs.to_vec(),
        base,
        solver: OnceBox::new(),
    }
}

fn col_degrees(ambient_degs: &[i64], cols: &[ModElement]) -> Vec<i64> {
    cols.iter()
        .map(|c| {
            c.homogeneous_degree(ambient_degs)
                .expect("inhomogeneous or zero column")
        })
        .collect()
}

/// A degree-zero homogeneous map of presented modules, stored as the
/// images of the source generators. Well-definedness (relations map into
/// relations) is checked at construction.
#[derive(Debug, Clone)]
pub struct ModuleMap {
    pub source: Module,
    pub target: Module,
    cols: Vec<ModElement>,
}

impl ModuleMap {
    pub fn new(source: Module, target: Module, cols: Vec<ModElement>) -> Result<Self, CoreError> {
        if source.ring() != target.ring() {
            return Err(CoreError::RingMismatch);
        }
        if cols.len() != source.n_gens() {
            return Err(CoreError::ShapeMismatch(alloc::format!(
                "{} columns for {} generators",
                cols.len(),
                source.n_gens()
            )));
        }
        for (j, c) in cols.iter().enumerate() {
            if !c.is_zero() {
                let d = c
                    .homogeneous_degree(target.gen_degs())
                    .ok_or_else(|| CoreError::Inhomogeneous(alloc::format!("column {j}")))?;
                if d != source.gen_degs()[j] {
                    return Err(CoreError::IllDefinedMap(alloc::format!(
                        "column {j} has degree {d}, expected {}",
                        source.gen_degs()[j]
                    )));
                }
            }
        }
        let map = ModuleMap {
            source,
            target,
            cols,
        };
        // relations of the source must land in the relation span of the
        // target; ideal columns do so automatically
        for r in map.source.explicit_rels() {
            if !map.target.nf(&map.apply(r)).is_zero() {
                return Err(CoreError::IllDefinedMap(String::from(
                    "a source relation does not map into target relations",
                )));
            }
        }
        Ok(map)
    }

    /// For maps that are well defined by construction; still validated in
    /// debug builds.
    pub fn new_unchecked(source: Module, target: Module, cols: Vec<ModElement>) -> Self {
        debug_assert!(
            ModuleMap::new(source.clone(), target.clone(), cols.clone()).is_ok(),
            "new_unchecked received an ill-defined map"
        );
        ModuleMap {
            source,
            target,
            cols,
        }
    }

    pub fn identity(m: &Module) -> Self {
        let cols = (0..m.n_gens()).map(|i| m.unit_element(i)).collect();
        ModuleMap {
            source: m.clone(),
            target: m.clone(),
            cols,
        }
    }

    pub fn zero_map(source: Module, target: Module) -> Self {
        let cols = alloc::vec![ModElement::zero(); source.n_gens()];
        ModuleMap {
            source,
            target,
            cols,
        }
    }

    pub fn cols(&self) -> &[ModElement] {
        &self.cols
    }

    /// Image of an element of the source's covering free module.
    pub fn apply(&self, v: &ModElement) -> ModElement {
        let ring = self.source.poly_ring();
        let mut acc = ModElement::zero();
        for t in v.terms() {
            acc = acc.add(
                ring,
                &self.cols[t.comp as usize].term_mul(ring, t.coef, &t.mono),
            );
        }
        acc
    }

    /// Composition `other . self` (apply `self` first).
    pub fn then(&self, other: &ModuleMap) -> ModuleMap {
        assert!(Arc::ptr_eq(&self.target, &other.source) || self.target == other.source);
        let cols = self.cols.iter().map(|c| other.apply(c)).collect();
        ModuleMap {
            source: self.source.clone(),
            target: other.target.clone(),
            cols,
        }
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        let ring = self.source.poly_ring();
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| a.add(ring, b))
            .collect();
        ModuleMap {
            source: self.source.clone(),
            target: self.target.clone(),
            cols,
        }
    }

    pub fn sub(&self, other: &ModuleMap) -> ModuleMap {
        let ring = self.source.poly_ring();
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| a.sub(ring, b))
            .collect();
        ModuleMap {
            source: self.source.clone(),
            target: self.target.clone(),
            cols,
        }
    }

    pub fn scalar_mul(&self, c: u32) -> ModuleMap {
        let ring = self.source.poly_ring();
        let cols = self.cols.iter().map(|x| x.scalar_mul(ring, c)).collect();
        ModuleMap {
            source: self.source.clone(),
            target: self.target.clone(),
            cols,
        }
    }

    /// Maps are equal when they agree modulo the target's relations.
    pub fn equals(&self, other: &ModuleMap) -> bool {
        self.cols
            .iter()
            .zip(&other.cols)
            .all(|(a, b)| {
                let ring = self.source.poly_ring();
                self.target.nf(&a.sub(ring, b)).is_zero()
            })
    }

    pub fn is_zero_map(&self) -> bool {
        self.cols.iter().all(|c| self.target.nf(c).is_zero())
    }

    /// Kernel as a presented module with its inclusion into the source.
    pub fn kernel(&self) -> (Module, ModuleMap) {
        let sub = self.kernel_subquotient();
        let incl = ModuleMap::new_unchecked(
            sub.module.clone(),
            self.source.clone(),
            sub.gens.clone(),
        );
        (sub.module, incl)
    }

    pub fn kernel_subquotient(&self) -> Subquotient {
        let poly = self.source.poly_ring().clone();
        let target_rels = self.target.full_rels();
        let mut combined: Vec<ModElement> = self.cols.clone();
        combined.extend(target_rels.iter().cloned());
        let syz = syzygies(&poly, self.target.gen_degs(), &combined);
        let n = self.source.n_gens() as u32;
        let gens: Vec<ModElement> = syz
            .iter()
            .map(|s| s.project_components(0, n))
            .filter(|s| !s.is_zero())
            .collect();
        subquotient(
            self.source.ring().clone(),
            self.source.gen_degs(),
            gens,
            self.source.full_rels(),
            true,
        )
    }

    /// Cheap exactness probe: the kernel vanishes iff every kernel
    /// generator lies in the source's relation span.
    pub fn kernel_is_zero(&self) -> bool {
        let poly = self.source.poly_ring().clone();
        let target_rels = self.target.full_rels();
        let mut combined: Vec<ModElement> = self.cols.clone();
        combined.extend(target_rels.iter().cloned());
        let syz = syzygies(&poly, self.target.gen_degs(), &combined);
        let n = self.source.n_gens() as u32;
        syz.iter()
            .all(|s| self.source.nf(&s.project_components(0, n)).is_zero())
    }

    /// Cokernel with the projection from the target.
    pub fn cokernel(&self) -> (Module, ModuleMap) {
        let mut rels: Vec<ModElement> = self.target.explicit_rels().to_vec();
        rels.extend(self.cols.iter().filter(|c| !c.is_zero()).cloned());
        let coker = PresentedModule::new(
            self.target.ring().clone(),
            self.target.gen_degs().to_vec(),
            rels,
        )
        .expect("cokernel presentation");
        let proj = ModuleMap::new_unchecked(
            self.target.clone(),
            coker.clone(),
            (0..self.target.n_gens())
                .map(|i| self.target.unit_element(i))
                .collect(),
        );
        (coker, proj)
    }

    /// Image as a submodule of the target, with its inclusion.
    pub fn image(&self) -> (Module, ModuleMap) {
        let sub = subquotient(
            self.target.ring().clone(),
            self.target.gen_degs(),
            self.cols.clone(),
            self.target.full_rels(),
            true,
        );
        let incl = ModuleMap::new_unchecked(
            sub.module.clone(),
            self.target.clone(),
            sub.gens.clone(),
        );
        (sub.module, incl)
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_surjective() && self.kernel_is_zero()
    }

    pub fn is_surjective(&self) -> bool {
        let (coker, _) = self.cokernel();
        coker.is_zero_module()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel_is_zero()
    }
}

/// Homology of a pair `g . f = 0` at the middle module:
/// `ker(g) / im(f)`, presented as a subquotient.
pub fn homology(f: &ModuleMap, g: &ModuleMap) -> Module {
    assert!(f.target == g.source);
    let ker = g.kernel_subquotient();
    // relations: ambient base of the middle module plus the image of f
    let mut base = g.source.full_rels();
    base.extend(f.cols.iter().filter(|c| !c.is_zero()).cloned());
    subquotient(
        g.source.ring().clone(),
        g.source.gen_degs(),
        ker.gens,
        base,
        true,
    )
    .module
}

/// Fast zero test for the homology at `g`'s source without building the
/// full presentation.
pub fn homology_is_zero(f: &ModuleMap, g: &ModuleMap) -> bool {
    let ker = g.kernel_subquotient();
    let poly = g.source.poly_ring().clone();
    let mut base = g.source.full_rels();
    base.extend(f.cols.iter().filter(|c| !c.is_zero()).cloned());
    let gb = buchberger(&poly, g.source.gen_degs(), &base);
    ker.gens.iter().all(|u| gb.reduces_to_zero(&poly, u))
}

/// Hom-module `Hom_R(M, N)` with its evaluation dictionary. The module is
/// computed as the kernel of `⊕_i N(a_i) -> ⊕_j N(D_j)` dualizing the
/// explicit relation columns of `M` (`a_i` generator degrees, `D_j`
/// relation column degrees).
#[derive(Debug)]
pub struct HomModule {
    pub module: Module,
    pub source: Module,
    pub target: Module,
    sub: Subquotient,
}

impl HomModule {
    /// Ambient element of generator `k`: blocks of size `g_N`, block `i`
    /// holding the value of the generator homomorphism at `e_i` of `M`.
    pub fn generator_ambient(&self, k: usize) -> &ModElement {
        &self.sub.gens[k]
    }

    /// Value of generator `k` at source generator `i`, as an element of
    /// the target's covering free module.
    pub fn generator_value(&self, k: usize, i: usize) -> ModElement {
        let g_n = self.target.n_gens() as u32;
        self.sub.gens[k].project_components(i as u32 * g_n, g_n)
    }

    /// Degree of the homomorphisms represented by generator `k`.
    pub fn generator_degree(&self, k: usize) -> i64 {
        self.module.gen_degs()[k]
    }

    /// Converts an element (coordinates over the Hom generators) into an
    /// actual map: a degree-`d` homomorphism is the degree-zero map
    /// `M -> N.twist(d)`.
    pub fn element_to_map(&self, coords: &ModElement) -> ModuleMap {
        let ring = self.module.poly_ring().clone();
        let d = coords
            .homogeneous_degree(self.module.gen_degs())
            .unwrap_or(0);
        let mut ambient = ModElement::zero();
        for t in coords.terms() {
            ambient = ambient.add(
                &ring,
                &self.sub.gens[t.comp as usize].term_mul(&ring, t.coef, &t.mono),
            );
        }
        let g_n = self.target.n_gens() as u32;
        let cols: Vec<ModElement> = (0..self.source.n_gens())
            .map(|i| ambient.project_components(i as u32 * g_n, g_n))
            .collect();
        let target = if d == 0 {
            self.target.clone()
        } else {
            self.target.twist(d)
        };
        ModuleMap::new_unchecked(self.source.clone(), target, cols)
    }

    /// Expresses an element of the covering space `⊕_i F_N(a_i)` in Hom
    /// generator coordinates, when it lies in the Hom module.
    pub fn lift_ambient(&self, v: &ModElement) -> Option<ModElement> {
        self.sub.lift(v)
    }

    /// Expresses a degree-`d` map `M -> N.twist(d)` in Hom coordinates.
    pub fn map_to_coords(&self, f: &ModuleMap) -> Option<ModElement> {
        let ring = self.module.poly_ring();
        let g_n = self.target.n_gens() as u32;
        let mut ambient = ModElement::zero();
        for (i, c) in f.cols().iter().enumerate() {
            ambient = ambient.add(ring, &c.shift_components(i as u32 * g_n));
        }
        self.sub.lift(&ambient)
    }

    /// Basis of the degree-zero homomorphisms as explicit maps.
    pub fn degree_zero_maps(&self) -> Vec<ModuleMap> {
        self.module
            .degree_basis(0)
            .into_iter()
            .map(|(comp, mono)| {
                let coords = ModElement::from_term_list(
                    self.module.poly_ring(),
                    alloc::vec![ModTerm {
                        comp,
                        mono,
                        coef: 1
                    }],
                );
                self.element_to_map(&coords)
            })
            .collect()
    }
}

/// Computes `Hom_R(M, N)`.
pub fn hom_module(m: &Module, n: &Module) -> HomModule {
    assert!(m.ring() == n.ring(), "Hom over mismatched rings");
    let ring = m.ring().clone();
    let poly = m.poly_ring().clone();
    let g_m = m.n_gens();
    let g_n = n.n_gens();
    // source of the condition map: ⊕_i N(a_i)
    let src_parts: Vec<(&PresentedModule, i64)> =
        m.gen_degs().iter().map(|&a| (n.as_ref(), a)).collect();
    let big_source = PresentedModule::direct_sum(ring.clone(), &src_parts);
    // relation columns of M impose the conditions; ideal columns act as
    // zero on N automatically
    let rels: Vec<&ModElement> = m.explicit_rels().iter().filter(|r| !r.is_zero()).collect();
    let rel_degs: Vec<i64> = rels
        .iter()
        .map(|r| r.homogeneous_degree(m.gen_degs()).unwrap())
        .collect();
    let tgt_parts: Vec<(&PresentedModule, i64)> =
        rel_degs.iter().map(|&d| (n.as_ref(), d)).collect();
    let big_target = PresentedModule::direct_sum(ring.clone(), &tgt_parts);
    // column for source generator (i, k): for each relation j, block j
    // gets B[i][j] * e_k
    let mut cols = Vec::with_capacity(g_m * g_n);
    for i in 0..g_m {
        for k in 0..g_n {
            let mut col = ModElement::zero();
            for (j, r) in rels.iter().enumerate() {
                let b = r.component(&poly, i as u32);
                if !b.is_zero() {
                    col = col.add(
                        &poly,
                        &ModElement::from_poly(&b, (j * g_n + k) as u32),
                    );
                }
            }
            cols.push(col);
        }
    }
    let phi = ModuleMap::new_unchecked(big_source.clone(), big_target, cols);
    let sub = phi.kernel_subquotient();
    HomModule {
        module: sub.module.clone(),
        source: m.clone(),
        target: n.clone(),
        sub,
    }
}

/// Tensor product `M ⊗_R N`.
pub fn tensor(m: &Module, n: &Module) -> Module {
    assert!(m.ring() == n.ring());
    let poly = m.poly_ring().clone();
    let g_n = n.n_gens();
    let mut gen_degs = Vec::with_capacity(m.n_gens() * g_n);
    for &a in m.gen_degs() {
        for &b in n.gen_degs() {
            gen_degs.push(a + b);
        }
    }
    let mut rels = Vec::new();
    for u in m.explicit_rels() {
        for k in 0..g_n {
            let terms: Vec<ModTerm> = u
                .terms()
                .iter()
                .map(|t| ModTerm {
                    comp: t.comp * g_n as u32 + k as u32,
                    mono: t.mono.clone(),
                    coef: t.coef,
                })
                .collect();
            rels.push(ModElement::from_term_list(&poly, terms));
        }
    }
    for v in n.explicit_rels() {
        for i in 0..m.n_gens() {
            let terms: Vec<ModTerm> = v
                .terms()
                .iter()
                .map(|t| ModTerm {
                    comp: (i * g_n) as u32 + t.comp,
                    mono: t.mono.clone(),
                    coef: t.coef,
                })
                .collect();
            rels.push(ModElement::from_term_list(&poly, terms));
        }
    }
    PresentedModule::new(m.ring().clone(), gen_degs, rels).expect("tensor presentation")
}

/// Exterior square `Λ² M`: generators `e_i ∧ e_j` for `i < j`, relations
/// `u ∧ e_j` over the explicit relation columns `u`. Its support is the
/// locus where `M` needs at least two generators (`Λ²` commutes with base
/// change to residue fields).
pub fn exterior_square(m: &Module) -> Module {
    let poly = m.poly_ring().clone();
    let g = m.n_gens();
    let pairs: Vec<(usize, usize)> = (0..g)
        .flat_map(|i| (i + 1..g).map(move |j| (i, j)))
        .collect();
    let pair_index = |i: usize, j: usize| -> usize {
        debug_assert!(i < j);
        // lexicographic position of (i, j) among ordered pairs
        (0..i).map(|a| g - 1 - a).sum::<usize>() + (j - i - 1)
    };
    let gen_degs: Vec<i64> = pairs
        .iter()
        .map(|&(i, j)| m.gen_degs()[i] + m.gen_degs()[j])
        .collect();
    let field = poly.field();
    let mut rels = Vec::new();
    for u in m.explicit_rels() {
        for j in 0..g {
            let mut col = ModElement::zero();
            for t in u.terms() {
                let i = t.comp as usize;
                let (a, b, coef) = if i < j {
                    (i, j, t.coef)
                } else if i > j {
                    (j, i, field.neg(t.coef))
                } else {
                    continue;
                };
                let term = ModElement::from_term_list(
                    &poly,
                    alloc::vec![ModTerm {
                        comp: pair_index(a, b) as u32,
                        mono: t.mono.clone(),
                        coef,
                    }],
                );
                col = col.add(&poly, &term);
            }
            if !col.is_zero() {
                rels.push(col);
            }
        }
    }
    PresentedModule::new(m.ring().clone(), gen_degs, rels).expect("exterior square presentation")
}

/// Minimal presentation with round-trip isomorphisms.
#[derive(Debug)]
pub struct MinimalPres {
    pub module: Module,
    pub to_min: ModuleMap,
    pub from_min: ModuleMap,
}

/// Computes the minimal presentation: prunes unit entries from the
/// relation columns (graded Nakayama: a unit entry can only occur in an
/// explicit generator, never first appear in a combination), then keeps a
/// minimal generating set of the relation module.
pub fn minimal_presentation(m: &Module) -> MinimalPres {
    let poly = m.poly_ring().clone();
    let field = poly.field();
    let mut cur_degs = m.gen_degs().to_vec();
    let mut cur_rels: Vec<ModElement> = m
        .explicit_rels()
        .iter()
        .filter(|r| !r.is_zero())
        .cloned()
        .collect();
    let mut to_cols: Vec<ModElement> = (0..m.n_gens())
        .map(|i| ModElement::unit(&poly, i as u32))
        .collect();
    let mut orig_of_cur: Vec<usize> = (0..m.n_gens()).collect();

    loop {
        let unit = cur_rels.iter().enumerate().find_map(|(t, r)| {
            r.terms()
                .iter()
                .find(|term| term.mono.is_one())
                .map(|term| (t, term.comp, term.coef))
        });
        let Some((t, comp, coef)) = unit else { break };
        let rel = cur_rels[t].clone();
        // e_comp = -c^{-1} (rel - c e_comp); homogeneity ensures the
        // substitute has no comp terms left
        let minus_unit = rel.sub(
            &poly,
            &ModElement::from_term_list(
                &poly,
                alloc::vec![ModTerm {
                    comp,
                    mono: Monomial::one(poly.n_vars()),
                    coef,
                }],
            ),
        );
        let sigma = minus_unit.scalar_mul(&poly, field.neg(field.inv(coef)));
        debug_assert!(sigma.terms().iter().all(|term| term.comp != comp));
        let substitute = |v: &ModElement| -> ModElement {
            let mut rest = Vec::new();
            let mut acc = ModElement::zero();
            for term in v.terms() {
                if term.comp == comp {
                    acc = acc.add(&poly, &sigma.term_mul(&poly, term.coef, &term.mono));
                } else {
                    rest.push(term.clone());
                }
            }
            let rest = ModElement::from_term_list(&poly, rest);
            drop_component(&rest.add(&poly, &acc), comp)
        };
        cur_rels = cur_rels
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != t)
            .map(|(_, r)| substitute(r))
            .filter(|r| !r.is_zero())
            .collect();
        to_cols = to_cols.iter().map(&substitute).collect();
        cur_degs.remove(comp as usize);
        orig_of_cur.remove(comp as usize);
    }

    // minimal generating set of the relation module
    let ring = m.ring().clone();
    let base = ring.ideal_columns(cur_degs.len());
    let kept = minimal_generator_indices(&poly, &cur_degs, &cur_rels, &base);
    let rels_min: Vec<ModElement> = kept.into_iter().map(|i| cur_rels[i].clone()).collect();
    let min_mod = PresentedModule::new(ring, cur_degs, rels_min).expect("minimal presentation");
    let to_min = ModuleMap::new_unchecked(m.clone(), min_mod.clone(), to_cols);
    let from_cols: Vec<ModElement> = orig_of_cur
        .iter()
        .map(|&i| ModElement::unit(&poly, i as u32))
        .collect();
    let from_min = ModuleMap::new_unchecked(min_mod.clone(), m.clone(), from_cols);
    MinimalPres {
        module: min_mod,
        to_min,
        from_min,
    }
}

fn drop_component(v: &ModElement, comp: u32) -> ModElement {
    // downward relabeling of components above `comp` preserves the
    // position-over-term order
    let terms: Vec<ModTerm> = v
        .terms()
        .iter()
        .map(|t| {
            debug_assert_ne!(t.comp, comp);
            ModTerm {
                comp: if t.comp > comp { t.comp - 1 } else { t.comp },
                mono: t.mono.clone(),
                coef: t.coef,
            }
        })
        .collect();
    ModElement::from_term_list_unchecked(terms)
}

/// Minimal number of generators.
pub fn mu(m: &Module) -> usize {
    minimal_presentation(m).module.n_gens()
}

/// Generators of the `j`-th Fitting ideal: the `(g - j)`-minors of the
/// full relation matrix of the minimal presentation (ideal columns
/// included, so the result is the preimage in `P` of the Fitting ideal
/// over `R`). Returns `None` for the unit ideal (when `j >= g`).
pub fn fitting_ideal(m: &Module, j: usize) -> Option<Vec<Polynomial>> {
    let pres = minimal_presentation(m).module;
    let poly = pres.poly_ring().clone();
    let g = pres.n_gens();
    if j >= g {
        return None; // unit ideal
    }
    let k = g - j;
    let cols = pres.full_rels();
    if k > cols.len() {
        return Some(Vec::new()); // zero ideal
    }
    let col_polys: Vec<Vec<Polynomial>> = cols
        .iter()
        .map(|c| (0..g).map(|i| c.component(&poly, i as u32)).collect())
        .collect();
    let mut minors: Vec<Polynomial> = Vec::new();
    let row_sets = subsets(g, k);
    let col_sets = subsets(cols.len(), k);
    for rs in &row_sets {
        for cs in &col_sets {
            let sub: Vec<Vec<Polynomial>> = rs
                .iter()
                .map(|&r| cs.iter().map(|&c| col_polys[c][r].clone()).collect())
                .collect();
            let d = poly_det(&poly, sub);
            if !d.is_zero() && !minors.contains(&d) {
                minors.push(d);
            }
        }
    }
    Some(minors)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Fraction-free (Bareiss) determinant of a square polynomial matrix;
/// divisions are exact over the domain.
pub fn poly_det(ring: &PolyRing, mut m: Vec<Vec<Polynomial>>) -> Polynomial {
    let n = m.len();
    if n == 0 {
        return ring.one();
    }
    for row in &m {
        assert_eq!(row.len(), n);
    }
    let mut sign = false;
    let mut prev = ring.one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return ring.zero();
            };
            m.swap(k, p);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let a = ring.mul(&m[k][k], &m[i][j]);
                let b = ring.mul(&m[i][k], &m[k][j]);
                let num = ring.sub(&a, &b);
                m[i][j] = if num.is_zero() {
                    ring.zero()
                } else {
                    ring.exact_div(&num, &prev)
                };
            }
            m[i][k] = ring.zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign {
        ring.neg(&det)
    } else {
        det
    }
}

/// Outcome of the randomized graded-isomorphism test.
#[derive(Debug)]
pub enum IsoResult {
    /// An explicit invertible degree-zero map.
    Yes(ModuleMap),
    /// A certificate that no isomorphism exists.
    No(IsoCertificate),
    /// Invariants agree but no witness was found within the trial budget.
    Unknown,
}

impl IsoResult {
    pub fn is_yes(&self) -> bool {
        matches!(self, IsoResult::Yes(_))
    }
    pub fn is_no(&self) -> bool {
        matches!(self, IsoResult::No(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoCertificate {
    MuMismatch(usize, usize),
    HilbertMismatch { degree: i64, left: u64, right: u64 },
    /// No nonzero degree-zero homomorphisms exist at all.
    NoDegreeZeroHom,
}

/// Randomized graded-isomorphism test. `No` verdicts carry certificates
/// (Hilbert or minimal-generator mismatch, or an exhausted degree-zero
/// Hom space); `Yes` carries an explicit invertible map; otherwise
/// `Unknown` after the trial budget.
pub fn is_isomorphic(m: &Module, n: &Module, trials: u32, seed: u64) -> IsoResult {
    if m.is_zero_module() && n.is_zero_module() {
        return IsoResult::Yes(ModuleMap::zero_map(m.clone(), n.clone()));
    }
    let mu_m = mu(m);
    let mu_n = mu(n);
    if mu_m != mu_n {
        return IsoResult::No(IsoCertificate::MuMismatch(mu_m, mu_n));
    }
    // Hilbert window: generator degrees up to a conservative horizon
    let lo = m
        .min_gen_degree()
        .into_iter()
        .chain(n.min_gen_degree())
        .min()
        .unwrap_or(0);
    let hi_base = m
        .max_gen_degree()
        .into_iter()
        .chain(n.max_gen_degree())
        .max()
        .unwrap_or(0);
    let hi = hi_base + m.poly_ring().n_vars() as i64 + 3;
    for d in lo..=hi {
        let a = m.degree_basis(d).len() as u64;
        let b = n.degree_basis(d).len() as u64;
        if a != b {
            return IsoResult::No(IsoCertificate::HilbertMismatch {
                degree: d,
                left: a,
                right: b,
            });
        }
    }
    let hom = hom_module(m, n);
    let basis = hom.degree_zero_maps();
    if basis.is_empty() {
        return IsoResult::No(IsoCertificate::NoDegreeZeroHom);
    }
    // deterministic first trials: the basis maps themselves
    for f in &basis {
        if f.is_isomorphism() {
            return IsoResult::Yes(f.clone());
        }
    }
    let p = m.poly_ring().field().characteristic();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let mut f = ModuleMap::zero_map(m.clone(), n.clone());
        for b in &basis {
            let c = (rng.next_u64() % p as u64) as u32;
            if c != 0 {
                f = f.add(&b.scalar_mul(c));
            }
        }
        if f.is_isomorphism() {
            return IsoResult::Yes(f);
        }
    }
    IsoResult::Unknown
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn artin_x2() -> Arc<QuotientRing> {
        let p = PolyRing::standard(PrimeField::new(32003).unwrap(), &["x"]);
        QuotientRing::new(p.clone(), alloc::vec![p.monomial(&[2])]).unwrap()
    }

    fn kxy_mod_xy() -> Arc<QuotientRing> {
        let p = PolyRing::standard(PrimeField::new(32003).unwrap(), &["x", "y"]);
        QuotientRing::new(p.clone(), alloc::vec![p.monomial(&[1, 1])]).unwrap()
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        let r = artin_x2();
        let m = PresentedModule::residue_field(r);
        let id = ModuleMap::identity(&m);
        assert!(id.kernel_is_zero());
        let (k, _) = id.kernel();
        assert!(k.is_zero_module());
    }

    #[test]
    fn kernel_of_multiplication_by_x() {
        // over k[x]/(x^2), kernel of R --x--> R is k in degree 1; the
        // degree-one multiplication is the degree-zero map R -> R(1)
        let r = artin_x2();
        let poly = r.poly_ring().clone();
        let rm = PresentedModule::ring_module(r.clone());
        let f = ModuleMap::new(
            rm.clone(),
            rm.twist(1),
            alloc::vec![ModElement::from_poly(&poly.var(0), 0)],
        )
        .unwrap();
        let (k, incl) = f.kernel();
        assert!(!k.is_zero_module());
        // Hilbert function of the kernel: k concentrated in one degree
        assert_eq!(k.hilbert_function(0, 3), alloc::vec![0, 1, 0, 0]);
        // composition f . incl = 0
        let comp = incl.then(&f);
        assert!(comp.is_zero_map());
        // kernel of the zero map M -> N is M
        let z = ModuleMap::zero_map(rm.clone(), rm.clone());
        let (kz, _) = z.kernel();
        assert_eq!(kz.hilbert_function(0, 2), rm.hilbert_function(0, 2));
    }

    #[test]
    fn cokernel_of_multiplication_by_x() {
        let r = artin_x2();
        let poly = r.poly_ring().clone();
        let rm = PresentedModule::ring_module(r.clone());
        let f = ModuleMap::new(
            rm.twist(-1),
            rm.clone(),
            alloc::vec![ModElement::from_poly(&poly.var(0), 0)],
        )
        .unwrap();
        let (c, proj) = f.cokernel();
        // coker(R(-1) --x--> R) = k
        assert_eq!(c.hilbert_function(0, 2), alloc::vec![1, 0, 0]);
        assert!(proj.is_surjective());
        // image of the zero map is zero
        let z = ModuleMap::zero_map(rm.clone(), rm.clone());
        let (im, _) = z.image();
        assert!(im.is_zero_module());
    }

    #[test]
    fn hom_r_n_is_n() {
        let r = kxy_mod_xy();
        let rm = PresentedModule::ring_module(r.clone());
        let n = PresentedModule::residue_field(r.clone());
        let h = hom_module(&rm, &n);
        assert_eq!(
            h.module.hilbert_function(0, 3),
            n.hilbert_function(0, 3),
            "Hom(R, N) = N"
        );
    }

    #[test]
    fn hom_socle_computations() {
        // Hom(k, k[x]/(x^2)) = socle = k in degree 1
        let r = artin_x2();
        let k = PresentedModule::residue_field(r.clone());
        let rm = PresentedModule::ring_module(r.clone());
        let h = hom_module(&k, &rm);
        assert_eq!(h.module.hilbert_function(0, 3), alloc::vec![0, 1, 0, 0]);
        // Hom(k, k[x,y]/(xy)) = 0 (depth-one target)
        let r2 = kxy_mod_xy();
        let k2 = PresentedModule::residue_field(r2.clone());
        let rm2 = PresentedModule::ring_module(r2.clone());
        let h2 = hom_module(&k2, &rm2);
        assert!(h2.module.is_zero_module());
    }

    #[test]
    fn hom_dictionary_values_satisfy_relations() {
        let r = artin_x2();
        let k = PresentedModule::residue_field(r.clone());
        let rm = PresentedModule::ring_module(r.clone());
        let h = hom_module(&k, &rm);
        for g in 0..h.module.n_gens() {
            let f = h.element_to_map(&ModElement::unit(h.module.poly_ring(), g as u32));
            // relations of k must map to zero in the (twisted) target
            for rel in k.explicit_rels() {
                assert!(f.target.nf(&f.apply(rel)).is_zero());
            }
        }
    }

    #[test]
    fn minimal_presentation_prunes_units() {
        // coker [[1,0],[0,x]] over k[x] is k[x]/(x)
        let p = PolyRing::standard(PrimeField::new(32003).unwrap(), &["x"]);
        let r = QuotientRing::polynomial(p.clone());
        let rel1 = ModElement::from_poly(&p.one(), 0); // e_0
        let rel2 = ModElement::from_poly(&p.var(0), 1); // x e_1
        let m = PresentedModule::new(r.clone(), alloc::vec![0, 0], alloc::vec![rel1, rel2]).unwrap();
        let min = minimal_presentation(&m);
        assert_eq!(min.module.n_gens(), 1);
        assert_eq!(min.module.explicit_rels().len(), 1);
        // round trips compose to identities
        assert!(min.to_min.then(&min.from_min).equals(&ModuleMap::identity(&m)) ||
                min.from_min.then(&min.to_min).equals(&ModuleMap::identity(&min.module)));
        assert!(min.from_min.then(&min.to_min).equals(&ModuleMap::identity(&min.module)));
        assert!(min.to_min.then(&min.from_min).equals(&ModuleMap::identity(&m)));
    }

    #[test]
    fn padded_free_module_minimizes_to_rank_one() {
        // R ⊕ (zero-padded) presentation collapses to R
        let r = artin_x2();
        let poly = r.poly_ring().clone();
        // two generators with e_1 = x * nothing... present R ⊕ 0 via
        // relation e_1 (a unit column in degree 0)
        let m = PresentedModule::new(
            r.clone(),
            alloc::vec![0, 0],
            alloc::vec![ModElement::from_poly(&poly.one(), 1)],
        )
        .unwrap();
        let min = minimal_presentation(&m);
        assert_eq!(min.module.n_gens(), 1);
        assert_eq!(mu(&m), 1);
    }

    #[test]
    fn fitting_of_ring_is_ideal() {
        let r = artin_x2();
        let rm = PresentedModule::ring_module(r.clone());
        assert_eq!(mu(&rm), 1);
        let f0 = fitting_ideal(&rm, 0).unwrap();
        // Fitt_0(R) = I = (x^2)
        let poly = r.poly_ring();
        assert_eq!(f0, alloc::vec![poly.monomial(&[2])]);
        // Fitt_1(R) with one generator: j >= g means unit ideal
        assert!(fitting_ideal(&rm, 1).is_none());
    }

    #[test]
    fn determinant_bareiss() {
        let p = PolyRing::standard(PrimeField::new(32003).unwrap(), &["x", "y"]);
        let x = p.var(0);
        let y = p.var(1);
        // det [[x, y], [y, x]] = x^2 - y^2
        let d = poly_det(&p, alloc::vec![
            alloc::vec![x.clone(), y.clone()],
            alloc::vec![y.clone(), x.clone()],
        ]);
        assert_eq!(d, p.sub(&p.mul(&x, &x), &p.mul(&y, &y)));
        // singular matrix
        let z = poly_det(&p, alloc::vec![
            alloc::vec![x.clone(), x.clone()],
            alloc::vec![x.clone(), x.clone()],
        ]);
        assert!(z.is_zero());
        // zero pivot needing a swap
        let s = poly_det(&p, alloc::vec![
            alloc::vec![p.zero(), y.clone()],
            alloc::vec![x.clone(), p.zero()],
        ]);
        assert_eq!(s, p.neg(&p.mul(&x, &y)));
    }

    #[test]
    fn iso_self_and_mismatches() {
        let r = artin_x2();
        let k = PresentedModule::residue_field(r.clone());
        let rm = PresentedModule::ring_module(r.clone());
        assert!(is_isomorphic(&k, &k, 8, 1).is_yes());
        assert!(is_isomorphic(&rm, &rm, 8, 1).is_yes());
        // R vs k differ in Hilbert function (1,1) vs (1,0)
        match is_isomorphic(&rm, &k, 8, 1) {
            IsoResult::No(IsoCertificate::HilbertMismatch { .. }) => {}
            other => panic!("expected Hilbert mismatch, got {other:?}"),
        }
    }

    #[test]
    fn tensor_with_ring_is_identity() {
        let r = kxy_mod_xy();
        let k = PresentedModule::residue_field(r.clone());
        let rm = PresentedModule::ring_module(r.clone());
        let t = tensor(&rm, &k);
        assert_eq!(t.hilbert_function(0, 3), k.hilbert_function(0, 3));
        let t2 = tensor(&k, &k);
        assert_eq!(t2.hilbert_function(0, 3), alloc::vec![1, 0, 0, 0]);
    }

    #[test]
    fn subquotient_exact_pair_is_zero() {
        // subquotient(ker, im) for an exact pair is zero:
        // R --x--> R --x--> R over k[x]/(x^2) at the middle spot
        let r = artin_x2();
        let poly = r.poly_ring().clone();
        let rm = PresentedModule::ring_module(r.clone());
        let f = ModuleMap::new(
            rm.twist(-1),
            rm.clone(),
            alloc::vec![ModElement::from_poly(&poly.var(0), 0)],
        )
        .unwrap();
        let g = ModuleMap::new(
            rm.clone(),
            rm.twist(1),
            alloc::vec![ModElement::from_poly(&poly.var(0), 0)],
        )
        .unwrap();
        assert!(homology_is_zero(&f, &g));
        let h = homology(&f, &g);
        assert!(h.is_zero_module());
    }
}
