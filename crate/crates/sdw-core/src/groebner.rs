use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::free::{ModElement, ModTerm};
use crate::mono::Monomial;
use crate::poly::{PolyRing, Polynomial};

/// A Groebner basis of a homogeneous submodule of a graded free module,
/// under the position-over-term extension of grevlex. Elements are monic.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    elements: Vec<ModElement>,
    /// divisor lookup: component of the lead term -> element indices
    by_comp: BTreeMap<u32, Vec<usize>>,
    reduced: bool,
}

impl GroebnerBasis {
    fn from_elements(elements: Vec<ModElement>, reduced: bool) -> Self {
        let mut by_comp: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for (i, e) in elements.iter().enumerate() {
            let lt = e.lead().expect("zero element in basis");
            by_comp.entry(lt.comp).or_default().push(i);
        }
        GroebnerBasis {
            elements,
            by_comp,
            reduced,
        }
    }

    /// Assembles a basis from elements already known to be a Groebner
    /// basis (e.g. block sums of bases with disjoint components).
    pub fn from_known_basis(ring: &PolyRing, elements: Vec<ModElement>, reduced: bool) -> Self {
        let elems = elements
            .into_iter()
            .filter(|e| !e.is_zero())
            .map(|e| e.monic(ring))
            .collect();
        Self::from_elements(elems, reduced)
    }

    pub fn elements(&self) -> &[ModElement] {
        &self.elements
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn lead_terms(&self) -> impl Iterator<Item = &ModTerm> {
        self.elements.iter().map(|e| e.lead().unwrap())
    }

    fn find_divisor(&self, comp: u32, mono: &Monomial) -> Option<usize> {
        self.by_comp.get(&comp).and_then(|idxs| {
            idxs.iter()
                .copied()
                .find(|&i| self.elements[i].lead().unwrap().mono.divides(mono))
        })
    }

    /// Fully reduced normal form: no term of the result is divisible by a
    /// lead term of the basis.
    pub fn normal_form(&self, ring: &PolyRing, v: &ModElement) -> ModElement {
        self.normal_form_inner(ring, v, None)
    }

    /// Normal form with division quotients: returns `(r, q)` with
    /// `v = sum q_i * g_i + r`.
    pub fn normal_form_track(
        &self,
        ring: &PolyRing,
        v: &ModElement,
    ) -> (ModElement, Vec<Polynomial>) {
        let mut quotients = alloc::vec![ring.zero(); self.elements.len()];
        let r = self.normal_form_inner(ring, v, Some(&mut quotients));
        (r, quotients)
    }

    fn normal_form_inner(
        &self,
        ring: &PolyRing,
        v: &ModElement,
        mut quotients: Option<&mut Vec<Polynomial>>,
    ) -> ModElement {
        let mut work = v.clone();
        let mut rem_terms: Vec<ModTerm> = Vec::new();
        'outer: while let Some(lt) = work.lead().cloned() {
            if let Some(i) = self.find_divisor(lt.comp, &lt.mono) {
                let g = &self.elements[i];
                let glt = g.lead().unwrap();
                let m = glt.mono.div(&lt.mono);
                // basis elements are monic
                let c = lt.coef;
                work = work.sub(ring, &g.term_mul(ring, c, &m));
                if let Some(q) = quotients.as_deref_mut() {
                    q[i] = ring.add(&q[i], &ring.from_terms(alloc::vec![(m, c)]));
                }
                continue 'outer;
            }
            // lead term irreducible: move to remainder, keep reducing tail
            rem_terms.push(lt.clone());
            work = work.sub(
                ring,
                &ModElement::from_term_list(ring, alloc::vec![lt]),
            );
        }
        ModElement::from_term_list(ring, rem_terms)
    }

    pub fn reduces_to_zero(&self, ring: &PolyRing, v: &ModElement) -> bool {
        self.normal_form(ring, v).is_zero()
    }
}

/// Engine mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GbMode {
    /// Just the basis; pair criteria enabled.
    Plain,
    /// Keep, for every basis element, its representation over the inputs;
    /// criteria stay enabled (they never invalidate representations).
    TrackReps,
    /// Additionally collect the syzygies arising from S-pairs reducing to
    /// zero (the Schreyer construction). Criteria are disabled so the
    /// collected syzygies generate the whole syzygy module.
    Syzygies,
}

/// Incremental Buchberger engine. Input columns are homogeneous elements
/// of one graded free module; the computed basis spans the same submodule.
pub struct GbEngine<'r> {
    ring: &'r PolyRing,
    mode: GbMode,
    n_inputs: usize,
    basis: Vec<ModElement>,
    /// lead coefficient before normalization is folded into reps
    reps: Vec<ModElement>,
    /// whether a basis element is supported in its lead component only
    /// (the coprime criterion is valid only for such pairs)
    single_comp: Vec<bool>,
    by_comp: BTreeMap<u32, Vec<usize>>,
    /// (degree of the S-pair, i, j), ascending — normal selection strategy
    pairs: BTreeSet<(i64, usize, usize)>,
    processed: BTreeSet<(usize, usize)>,
    syzygies: Vec<ModElement>,
    degs: Vec<i64>,
}

impl<'r> GbEngine<'r> {
    pub fn new(ring: &'r PolyRing, degs: &[i64], mode: GbMode) -> Self {
        GbEngine {
            ring,
            mode,
            n_inputs: 0,
            basis: Vec::new(),
            reps: Vec::new(),
            single_comp: Vec::new(),
            by_comp: BTreeMap::new(),
            pairs: BTreeSet::new(),
            processed: BTreeSet::new(),
            syzygies: Vec::new(),
            degs: degs.to_vec(),
        }
    }

    fn find_divisor(&self, comp: u32, mono: &Monomial) -> Option<usize> {
        self.by_comp.get(&comp).and_then(|idxs| {
            idxs.iter()
                .copied()
                .find(|&i| self.basis[i].lead().unwrap().mono.divides(mono))
        })
    }

    /// Full reduction against the current basis, tracking the combination
    /// used (in basis indices) when `track` is set.
    fn reduce(&self, v: ModElement, rep: ModElement) -> (ModElement, ModElement) {
        let ring = self.ring;
        let mut work = v;
        let mut rep = rep;
        let mut rem: Vec<ModTerm> = Vec::new();
        while let Some(lt) = work.lead().cloned() {
            if let Some(i) = self.find_divisor(lt.comp, &lt.mono) {
                let g = &self.basis[i];
                let m = g.lead().unwrap().mono.div(&lt.mono);
                work = work.sub(ring, &g.term_mul(ring, lt.coef, &m));
                if self.mode != GbMode::Plain {
                    rep = rep.sub(ring, &self.reps[i].term_mul(ring, lt.coef, &m));
                }
            } else {
                rem.push(lt.clone());
                work = work.sub(ring, &ModElement::from_term_list(ring, alloc::vec![lt]));
            }
        }
        (ModElement::from_term_list(ring, rem), rep)
    }

    fn push_basis(&mut self, elem: ModElement, rep: ModElement) {
        let ring = self.ring;
        let lead = elem.lead().unwrap().clone();
        let inv = ring.field().inv(lead.coef);
        let elem = elem.scalar_mul(ring, inv);
        let rep = rep.scalar_mul(ring, inv);
        let idx = self.basis.len();
        // queue S-pairs against same-component lead terms
        if let Some(existing) = self.by_comp.get(&lead.comp) {
            for &j in existing {
                let other = self.basis[j].lead().unwrap();
                let lcm = lead.mono.lcm(&other.mono, ring.weights());
                let deg = lcm.degree() as i64 + self.degs[lead.comp as usize];
                self.pairs.insert((deg, j, idx));
            }
        }
        self.by_comp.entry(lead.comp).or_default().push(idx);
        self.single_comp
            .push(elem.terms().iter().all(|t| t.comp == lead.comp));
        self.basis.push(elem);
        self.reps.push(rep);
    }

    /// Adds one input column (zero columns yield a unit syzygy).
    pub fn add_input(&mut self, col: &ModElement) {
        debug_assert!(col.is_homogeneous(&self.degs), "inhomogeneous input column");
        let idx = self.n_inputs;
        self.n_inputs += 1;
        let rep = ModElement::unit(self.ring, idx as u32);
        if col.is_zero() {
            if self.mode == GbMode::Syzygies {
                self.syzygies.push(rep);
            }
            return;
        }
        let (r, rep) = self.reduce(col.clone(), rep);
        if r.is_zero() {
            if self.mode == GbMode::Syzygies {
                self.syzygies.push(rep.neg(self.ring));
            }
        } else {
            self.push_basis(r, rep);
        }
    }

    /// Chain criterion: skip pair (i, j) when some k with processed pairs
    /// (i,k) and (j,k) has lead term dividing lcm(i, j). Only used when
    /// syzygies are not being collected.
    fn chain_skip(&self, i: usize, j: usize, lcm: &Monomial, comp: u32) -> bool {
        if let Some(idxs) = self.by_comp.get(&comp) {
            for &k in idxs {
                if k == i || k == j {
                    continue;
                }
                if self.basis[k].lead().unwrap().mono.divides(lcm)
                    && self.done(i.min(k), i.max(k))
                    && self.done(j.min(k), j.max(k))
                {
                    return true;
                }
            }
        }
        false
    }

    fn done(&self, a: usize, b: usize) -> bool {
        self.processed.contains(&(a, b))
    }

    /// Processes the pair queue to exhaustion.
    pub fn complete(&mut self) {
        let ring = self.ring;
        while let Some(&(deg, i, j)) = self.pairs.iter().next() {
            self.pairs.remove(&(deg, i, j));
            self.processed.insert((i, j));
            let (gi, gj) = (&self.basis[i], &self.basis[j]);
            let (li, lj) = (gi.lead().unwrap(), gj.lead().unwrap());
            debug_assert_eq!(li.comp, lj.comp);
            let lcm = li.mono.lcm(&lj.mono, ring.weights());
            if self.mode != GbMode::Syzygies {
                // the product criterion is a ring-level fact: it only
                // applies when both elements live in the lead component
                if self.single_comp[i]
                    && self.single_comp[j]
                    && li.mono.is_coprime_with(&lj.mono)
                {
                    continue;
                }
                if self.chain_skip(i, j, &lcm, li.comp) {
                    continue;
                }
            }
            let mi = li.mono.div(&lcm);
            let mj = lj.mono.div(&lcm);
            // basis elements are monic: S = m_i g_i - m_j g_j
            let s = gi
                .term_mul(ring, 1, &mi)
                .sub(ring, &gj.term_mul(ring, 1, &mj));
            let rep = if self.mode != GbMode::Plain {
                self.reps[i]
                    .term_mul(ring, 1, &mi)
                    .sub(ring, &self.reps[j].term_mul(ring, 1, &mj))
            } else {
                ModElement::zero()
            };
            let (r, rep) = self.reduce(s, rep);
            if r.is_zero() {
                if self.mode == GbMode::Syzygies && !rep.is_zero() {
                    self.syzygies.push(rep);
                }
            } else {
                self.push_basis(r, rep);
            }
        }
    }

    /// Incremental use: add an element mid-run and re-complete.
    pub fn add_and_complete(&mut self, col: &ModElement) {
        self.add_input(col);
        self.complete();
    }

    /// Normal form against the current (completed) basis.
    pub fn normal_form(&self, v: &ModElement) -> ModElement {
        let (r, _) = self.reduce(v.clone(), ModElement::zero());
        r
    }

    pub fn basis(&self) -> &[ModElement] {
        &self.basis
    }

    /// Representations of basis elements in input coordinates.
    pub fn representations(&self) -> &[ModElement] {
        &self.reps
    }

    pub fn take_syzygies(self) -> Vec<ModElement> {
        self.syzygies
    }

    /// Finishes into a reduced Groebner basis: minimal lead terms, tails
    /// fully reduced, monic, deterministically ordered.
    pub fn into_reduced(self) -> GroebnerBasis {
        self.into_reduced_with_reps().0
    }

    /// Minimal (lead-term-irredundant, monic, not tail-reduced) basis
    /// with representations; cheaper than full reduction when the basis
    /// is large and only generation data matters.
    pub fn into_minimal_with_reps(self) -> (GroebnerBasis, Vec<ModElement>) {
        let ring = self.ring;
        let mut keep: Vec<usize> = Vec::new();
        for i in 0..self.basis.len() {
            let li = self.basis[i].lead().unwrap();
            let redundant = (0..self.basis.len()).any(|j| {
                if i == j {
                    return false;
                }
                let lj = self.basis[j].lead().unwrap();
                lj.comp == li.comp
                    && lj.mono.divides(&li.mono)
                    && (lj.mono != li.mono || j < i)
            });
            if !redundant {
                keep.push(i);
            }
        }
        let mut pairs: Vec<(ModElement, ModElement)> = keep
            .into_iter()
            .map(|i| {
                let inv = ring.field().inv(self.basis[i].lead().unwrap().coef);
                (
                    self.basis[i].scalar_mul(ring, inv),
                    self.reps[i].scalar_mul(ring, inv),
                )
            })
            .collect();
        pairs.sort_by(|a, b| {
            let la = a.0.lead().unwrap();
            let lb = b.0.lead().unwrap();
            crate::mono::module_cmp(
                crate::mono::ModuleOrder::PositionOverTerm,
                lb.comp,
                &lb.mono,
                la.comp,
                &la.mono,
            )
        });
        let (elems, reps): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
        (GroebnerBasis::from_elements(elems, false), reps)
    }

    /// Reduced basis together with each element's representation over the
    /// original inputs (meaningful under `TrackReps`/`Syzygies`).
    pub fn into_reduced_with_reps(self) -> (GroebnerBasis, Vec<ModElement>) {
        let ring = self.ring;
        // minimalize: drop elements whose lead term is divisible by
        // another kept lead term
        let mut keep: Vec<usize> = Vec::new();
        for i in 0..self.basis.len() {
            let li = self.basis[i].lead().unwrap();
            let redundant = (0..self.basis.len()).any(|j| {
                if i == j {
                    return false;
                }
                let lj = self.basis[j].lead().unwrap();
                lj.comp == li.comp
                    && lj.mono.divides(&li.mono)
                    && (lj.mono != li.mono || j < i)
            });
            if !redundant {
                keep.push(i);
            }
        }
        let minimal: Vec<ModElement> = keep.iter().map(|&i| self.basis[i].clone()).collect();
        let minimal_reps: Vec<ModElement> = keep.iter().map(|&i| self.reps[i].clone()).collect();
        // tail-reduce each against the others, updating representations
        let mut reduced: Vec<(ModElement, ModElement)> = Vec::with_capacity(minimal.len());
        for i in 0..minimal.len() {
            let mut others: Vec<ModElement> = Vec::with_capacity(minimal.len() - 1);
            let mut other_reps: Vec<ModElement> = Vec::with_capacity(minimal.len() - 1);
            for (j, (e, r)) in minimal.iter().zip(&minimal_reps).enumerate() {
                if j != i {
                    others.push(e.clone());
                    other_reps.push(r.clone());
                }
            }
            let tmp = GroebnerBasis::from_elements(others, false);
            let (r, quotients) = tmp.normal_form_track(ring, &minimal[i]);
            debug_assert!(!r.is_zero());
            let mut rep = minimal_reps[i].clone();
            for (q, orep) in quotients.iter().zip(&other_reps) {
                for (m, c) in q.terms() {
                    rep = rep.sub(ring, &orep.term_mul(ring, *c, m));
                }
            }
            let inv = ring.field().inv(r.lead().unwrap().coef);
            reduced.push((r.scalar_mul(ring, inv), rep.scalar_mul(ring, inv)));
        }
        reduced.sort_by(|a, b| {
            let la = a.0.lead().unwrap();
            let lb = b.0.lead().unwrap();
            crate::mono::module_cmp(
                crate::mono::ModuleOrder::PositionOverTerm,
                lb.comp,
                &lb.mono,
                la.comp,
                &la.mono,
            )
        });
        let (elems, reps): (Vec<_>, Vec<_>) = reduced.into_iter().unzip();
        (GroebnerBasis::from_elements(elems, true), reps)
    }
}

/// Reduced Groebner basis of the submodule generated by homogeneous
/// columns.
pub fn buchberger(ring: &PolyRing, degs: &[i64], cols: &[ModElement]) -> GroebnerBasis {
    let mut eng = GbEngine::new(ring, degs, GbMode::Plain);
    for c in cols {
        eng.add_input(c);
    }
    eng.complete();
    eng.into_reduced()
}

/// Generators of the full syzygy module of the given columns, as elements
/// of `P^s` graded by the column degrees. `input . output = 0` exactly.
///
/// Three phases: a criteria-pruned reduced basis `G` with representations
/// `X` over the inputs (`G = F·X`), the expressions `Y` of the inputs
/// over `G` (`F = G·Y`), and the Schreyer generators of `Syz(G)` from an
/// unpruned pair sweep over the small reduced basis. Then
/// `Syz(F) = X·Syz(G) + im(Id - X·Y)` exactly.
pub fn syzygies(ring: &PolyRing, degs: &[i64], cols: &[ModElement]) -> Vec<ModElement> {
    let mut eng = GbEngine::new(ring, degs, GbMode::TrackReps);
    for c in cols {
        eng.add_input(c);
    }
    eng.complete();
    let (gb, x_reps) = eng.into_minimal_with_reps();
    let mut out: Vec<ModElement> = Vec::new();
    // apply X to a vector over the basis indices
    let apply_x = |v: &ModElement| -> ModElement {
        let mut acc = ModElement::zero();
        for t in v.terms() {
            acc = acc.add(ring, &x_reps[t.comp as usize].term_mul(ring, t.coef, &t.mono));
        }
        acc
    };
    // columns of Id - X·Y (covers zero inputs and redundancy relations)
    for (i, c) in cols.iter().enumerate() {
        let (r, y) = gb.normal_form_track(ring, c);
        assert!(r.is_zero(), "input must lie in its own span");
        let mut col = ModElement::unit(ring, i as u32);
        for (k, q) in y.iter().enumerate() {
            for (m, coef) in q.terms() {
                col = col.sub(ring, &x_reps[k].term_mul(ring, *coef, m));
            }
        }
        if !col.is_zero() {
            out.push(col);
        }
    }
    // Schreyer generators of Syz(G), mapped back through X
    let mut eng2 = GbEngine::new(ring, degs, GbMode::Syzygies);
    for g in gb.elements() {
        eng2.add_input(g);
    }
    eng2.complete();
    for sigma in eng2.take_syzygies() {
        let s = apply_x(&sigma);
        if !s.is_zero() {
            out.push(s);
        }
    }
    out
}

/// Indices of a minimal homogeneous generating subset of `cols` modulo the
/// submodule spanned by `base` (graded Nakayama: scan by ascending degree,
/// keep what does not reduce to zero against the span so far).
pub fn minimal_generator_indices(
    ring: &PolyRing,
    degs: &[i64],
    cols: &[ModElement],
    base: &[ModElement],
) -> Vec<usize> {
    let mut eng = GbEngine::new(ring, degs, GbMode::Plain);
    for b in base {
        eng.add_input(b);
    }
    eng.complete();
    let mut order: Vec<usize> = (0..cols.len()).collect();
    order.sort_by_key(|&i| {
        (
            cols[i].homogeneous_degree(degs).unwrap_or(i64::MIN),
            i,
        )
    });
    let mut kept = Vec::new();
    for i in order {
        if cols[i].is_zero() {
            continue;
        }
        if !eng.normal_form(&cols[i]).is_zero() {
            kept.push(i);
            eng.add_and_complete(&cols[i]);
        }
    }
    kept.sort_unstable();
    kept
}

/// Krull dimension of `P / L` for a monomial ideal `L` given by the
/// supports of its minimal generators: the size of the largest variable
/// subset containing no generator's support, computed by branching on the
/// support of an uncovered generator.
pub fn monomial_dimension(n_vars: usize, generator_supports: &[Vec<usize>]) -> i64 {
    if generator_supports.iter().any(|s| s.is_empty()) {
        // a unit generator: the quotient is the zero ring
        return -1;
    }
    fn min_cover(supports: &[Vec<usize>], excluded: &mut BTreeSet<usize>, best: &mut usize, used: usize) {
        if used >= *best {
            return;
        }
        match supports
            .iter()
            .find(|s| !s.iter().any(|v| excluded.contains(v)))
        {
            None => {
                *best = used;
            }
            Some(s) => {
                for &v in s {
                    excluded.insert(v);
                    min_cover(supports, excluded, best, used + 1);
                    excluded.remove(&v);
                }
            }
        }
    }
    let mut best = generator_supports
        .iter()
        .map(|s| s.len())
        .sum::<usize>()
        .min(n_vars);
    let mut excluded = BTreeSet::new();
    min_cover(generator_supports, &mut excluded, &mut best, 0);
    (n_vars - best) as i64
}

/// Monomials `m * e_comp` of weighted degree `d` (w.r.t. generator
/// degrees `degs`) outside the staircase of the given lead terms.
pub fn degree_basis(
    ring: &PolyRing,
    degs: &[i64],
    lead_terms: &[(u32, Monomial)],
    d: i64,
) -> Vec<(u32, Monomial)> {
    let mut out = Vec::new();
    for (comp, &gdeg) in degs.iter().enumerate() {
        let comp = comp as u32;
        for m in ring.monomials_of_degree(d - gdeg) {
            let covered = lead_terms
                .iter()
                .any(|(lc, lm)| *lc == comp && lm.divides(&m));
            if !covered {
                out.push((comp, m));
            }
        }
    }
    out
}
