//! Independent brute-force engine for finite-length instances.
//!
//! Modules are flattened to finite-dimensional graded vector spaces with
//! one action matrix per variable; resolutions, Hom and Ext are computed
//! with dense rank/nullspace/solve only. No Groebner reduction enters any
//! computation here (the main pipeline contributes only the finiteness
//! bound read off the relation staircase), so agreement with the Groebner
//! pipeline is a genuine differential test.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::CoreError;
use crate::field::PrimeField;
use crate::matrix::FMatrix;
use crate::module::Module;
use crate::mono::Monomial;
use crate::report::{CheckRecord, CheckReport, Verdict};
use crate::ring::QuotientRing;

/// A finite-length graded module presented concretely: degrees of a
/// `k`-basis plus one action matrix per ring variable.
#[derive(Debug, Clone)]
pub struct FiniteModule {
    pub basis_degs: Vec<i64>,
    pub var_action: Vec<FMatrix>,
    field: PrimeField,
    weights: Vec<u32>,
}

/// A finite-dimensional graded algebra: the ring flattened to a
/// [`FiniteModule`] together with the position of its identity.
#[derive(Debug, Clone)]
pub struct FiniteAlgebra {
    pub module: FiniteModule,
    pub unit: usize,
}

impl FiniteModule {
    pub fn dim(&self) -> usize {
        self.basis_degs.len()
    }

    pub fn dims_by_degree(&self) -> BTreeMap<i64, u64> {
        let mut out = BTreeMap::new();
        for &d in &self.basis_degs {
            *out.entry(d).or_insert(0) += 1;
        }
        out
    }

    fn degree_indices(&self, d: i64) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.basis_degs[i] == d).collect()
    }

    fn degrees_present(&self) -> Vec<i64> {
        let mut ds: Vec<i64> = self.basis_degs.clone();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    /// Applies the action of a monomial (product of variable matrices).
    fn mono_action(&self, mono: &Monomial, v: &[u32]) -> Vec<u32> {
        let mut acc = v.to_vec();
        for (var, &e) in mono.exps().iter().enumerate() {
            for _ in 0..e {
                acc = self.var_action[var].mul_vec(self.field, &acc);
            }
        }
        acc
    }

    /// Action matrices must commute pairwise (module over a commutative
    /// ring) — an invariant check.
    pub fn actions_commute(&self) -> bool {
        for a in 0..self.var_action.len() {
            for b in a + 1..self.var_action.len() {
                let ab = self.var_action[a].mul(self.field, &self.var_action[b]);
                let ba = self.var_action[b].mul(self.field, &self.var_action[a]);
                if ab != ba {
                    return false;
                }
            }
        }
        true
    }

    /// Evaluates a polynomial in the action matrices on a vector.
    pub fn poly_action(&self, f: &crate::poly::Polynomial, v: &[u32]) -> Vec<u32> {
        let mut acc = alloc::vec![0u32; self.dim()];
        for (m, c) in f.terms() {
            let image = self.mono_action(m, v);
            for (dst, &x) in acc.iter_mut().zip(&image) {
                *dst = self.field.add(*dst, self.field.mul(*c, x));
            }
        }
        acc
    }
}

/// Degreewise dense scaffolding for flattening a presentation: monomial
/// bases, relation row spaces in echelon form, and the chosen quotient
/// coordinates per degree.
struct DenseSlices {
    field: PrimeField,
    /// per degree: (monomial basis, index lookup, echelon rows, pivot
    /// columns, kept (non-pivot) columns)
    slices: BTreeMap<i64, Slice>,
}

struct Slice {
    monos: Vec<(u32, Monomial)>,
    index: BTreeMap<(u32, Vec<u16>), usize>,
    rows: FMatrix,
    pivots: Vec<usize>,
    kept: Vec<usize>,
}

impl DenseSlices {
    fn build(m: &Module, lo: i64, hi: i64) -> Self {
        let poly = m.poly_ring().clone();
        let field = poly.field();
        let rels = m.full_generating_rels();
        let rel_degs: Vec<i64> = rels
            .iter()
            .map(|r| r.homogeneous_degree(m.gen_degs()).unwrap())
            .collect();
        let mut slices = BTreeMap::new();
        for d in lo..=hi {
            let mut monos = Vec::new();
            let mut index = BTreeMap::new();
            for (comp, &gd) in m.gen_degs().iter().enumerate() {
                for mono in poly.monomials_of_degree(d - gd) {
                    index.insert((comp as u32, mono.exps().to_vec()), monos.len());
                    monos.push((comp as u32, mono));
                }
            }
            let mut rel_rows: Vec<Vec<u32>> = Vec::new();
            for (r, &rd) in rels.iter().zip(&rel_degs) {
                for mult in poly.monomials_of_degree(d - rd) {
                    let mut row = alloc::vec![0u32; monos.len()];
                    for t in r.terms() {
                        let m2 = mult.mul(&t.mono);
                        let idx = index[&(t.comp, m2.exps().to_vec())];
                        row[idx] = field.add(row[idx], t.coef);
                    }
                    rel_rows.push(row);
                }
            }
            let mut rows = FMatrix::from_rows(rel_rows);
            if rows.cols == 0 {
                rows = FMatrix::zeros(0, monos.len());
            }
            let pivots = rows.rref(field);
            let kept: Vec<usize> = (0..monos.len())
                .filter(|c| !pivots.contains(c))
                .collect();
            slices.insert(
                d,
                Slice {
                    monos,
                    index,
                    rows,
                    pivots,
                    kept,
                },
            );
        }
        DenseSlices { field, slices }
    }

    /// Reduces a degree-`d` coordinate vector modulo the relation row
    /// space and projects onto the kept coordinates.
    fn project(&self, d: i64, mut v: Vec<u32>) -> Vec<u32> {
        let slice = &self.slices[&d];
        for (ri, &p) in slice.pivots.iter().enumerate() {
            let c = v[p];
            if c != 0 {
                for j in 0..v.len() {
                    let sub = self.field.mul(c, slice.rows[(ri, j)]);
                    v[j] = self.field.sub(v[j], sub);
                }
            }
        }
        slice.kept.iter().map(|&c| v[c]).collect()
    }
}

/// Extracts a finiteness bound from the relation staircase: for every
/// component, each variable must occur as a pure power among the lead
/// terms. Errors on positive-dimensional input.
fn staircase_cap(m: &Module) -> Result<i64, CoreError> {
    let poly = m.poly_ring();
    let n_vars = poly.n_vars();
    let weights = poly.weights();
    let mut cap = m.gen_degs().iter().copied().min().unwrap_or(0);
    for comp in 0..m.n_gens() as u32 {
        let mut bound = m.gen_degs()[comp as usize];
        for v in 0..n_vars {
            let pure = m
                .rel_gb()
                .lead_terms()
                .filter(|t| t.comp == comp)
                .filter(|t| {
                    t.mono
                        .exps()
                        .iter()
                        .enumerate()
                        .all(|(w, &e)| w == v || e == 0)
                })
                .map(|t| t.mono.exps()[v])
                .min();
            match pure {
                None | Some(0) => {
                    return Err(CoreError::ShapeMismatch(String::from(
                        "module has positive dimension; the dense engine needs finite length",
                    )))
                }
                Some(a) => bound += (a as i64 - 1) * weights[v] as i64,
            }
        }
        cap = cap.max(bound);
    }
    Ok(cap)
}

/// Flattens a finite-length presented module to dense form. The Groebner
/// data is consulted only for the finiteness precondition and the degree
/// cap; bases and actions come from dense row reduction of the raw
/// relation multiples.
pub fn to_finite(m: &Module) -> Result<FiniteModule, CoreError> {
    let poly = m.poly_ring().clone();
    let field = poly.field();
    if m.n_gens() == 0 {
        return Ok(FiniteModule {
            basis_degs: Vec::new(),
            var_action: alloc::vec![FMatrix::zeros(0, 0); poly.n_vars()],
            field,
            weights: poly.weights().to_vec(),
        });
    }
    let cap = staircase_cap(m)?;
    let lo = *m.gen_degs().iter().min().unwrap();
    let max_w = *poly.weights().iter().max().unwrap() as i64;
    let slices = DenseSlices::build(m, lo, cap + max_w);
    // global basis: kept coordinates of each degree up to the cap
    let mut basis_degs = Vec::new();
    let mut offsets: BTreeMap<i64, usize> = BTreeMap::new();
    for d in lo..=cap {
        offsets.insert(d, basis_degs.len());
        let n = slices.slices[&d].kept.len();
        basis_degs.extend(core::iter::repeat(d).take(n));
    }
    for d in cap + 1..=cap + max_w {
        assert!(
            slices.slices[&d].kept.is_empty(),
            "staircase cap must bound the module"
        );
    }
    let dim = basis_degs.len();
    let mut var_action = Vec::with_capacity(poly.n_vars());
    for v in 0..poly.n_vars() {
        let w = poly.weights()[v] as i64;
        let mut mat = FMatrix::zeros(dim, dim);
        for d in lo..=cap {
            let slice = &slices.slices[&d];
            let src_off = offsets[&d];
            for (b, &mono_idx) in slice.kept.iter().enumerate() {
                let (comp, mono) = &slice.monos[mono_idx];
                let target_d = d + w;
                if target_d > cap + max_w {
                    continue;
                }
                let tslice = &slices.slices[&target_d];
                let shifted = mono.mul(&Monomial::var(v, poly.n_vars(), poly.weights()));
                let mut vec = alloc::vec![0u32; tslice.monos.len()];
                vec[tslice.index[&(*comp, shifted.exps().to_vec())]] = 1;
                let coords = slices.project(target_d, vec);
                if target_d <= cap {
                    let dst_off = offsets[&target_d];
                    for (j, &c) in coords.iter().enumerate() {
                        if c != 0 {
                            mat[(dst_off + j, src_off + b)] = c;
                        }
                    }
                } else {
                    assert!(coords.iter().all(|&c| c == 0));
                }
            }
        }
        var_action.push(mat);
    }
    Ok(FiniteModule {
        basis_degs,
        var_action,
        field,
        weights: poly.weights().to_vec(),
    })
}

/// Flattens the ring itself.
pub fn finite_algebra(ring: &Arc<QuotientRing>) -> Result<FiniteAlgebra, CoreError> {
    let rm = crate::module::PresentedModule::ring_module(ring.clone());
    let module = to_finite(&rm)?;
    let unit = module
        .basis_degs
        .iter()
        .position(|&d| d == 0)
        .expect("the identity spans degree zero");
    Ok(FiniteAlgebra { module, unit })
}

/// Free module `⊕_j A(-a_j)` over the algebra, in dense form, together
/// with the basis positions of its generators.
fn free_over(a: &FiniteAlgebra, shifts: &[i64]) -> (FiniteModule, Vec<usize>) {
    let adim = a.module.dim();
    let dim = adim * shifts.len();
    let mut basis_degs = Vec::with_capacity(dim);
    for &s in shifts {
        basis_degs.extend(a.module.basis_degs.iter().map(|&d| d + s));
    }
    let field = a.module.field;
    let mut var_action = Vec::with_capacity(a.module.var_action.len());
    for v in 0..a.module.var_action.len() {
        let mut mat = FMatrix::zeros(dim, dim);
        for blk in 0..shifts.len() {
            let off = blk * adim;
            for i in 0..adim {
                for j in 0..adim {
                    let c = a.module.var_action[v][(i, j)];
                    if c != 0 {
                        mat[(off + i, off + j)] = c;
                    }
                }
            }
        }
        var_action.push(mat);
    }
    let gens = (0..shifts.len()).map(|blk| blk * adim + a.unit).collect();
    (
        FiniteModule {
            basis_degs,
            var_action,
            field,
            weights: a.module.weights.clone(),
        },
        gens,
    )
}

/// Minimal homogeneous generators: a basis of `M / mM`, chosen among unit
/// vectors by ascending degree.
fn minimal_cover_gens(m: &FiniteModule) -> Vec<usize> {
    let field = m.field;
    let dim = m.dim();
    // span of mM: columns of all variable actions
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for act in &m.var_action {
        for j in 0..dim {
            let col: Vec<u32> = (0..dim).map(|i| act[(i, j)]).collect();
            if col.iter().any(|&c| c != 0) {
                rows.push(col);
            }
        }
    }
    let mut echelon = Echelon::new(field, dim);
    for r in rows {
        echelon.insert(r);
    }
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by_key(|&i| (m.basis_degs[i], i));
    let mut gens = Vec::new();
    for i in order {
        let mut e = alloc::vec![0u32; dim];
        e[i] = 1;
        if echelon.insert(e) {
            gens.push(i);
        }
    }
    gens.sort_unstable();
    gens
}

/// Incremental row echelon store.
struct Echelon {
    field: PrimeField,
    width: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Echelon {
    fn new(field: PrimeField, width: usize) -> Self {
        Echelon {
            field,
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// Reduces and inserts; returns true when the vector was independent.
    fn insert(&mut self, mut v: Vec<u32>) -> bool {
        debug_assert_eq!(v.len(), self.width);
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if c != 0 {
                for j in 0..self.width {
                    let sub = self.field.mul(c, row[j]);
                    v[j] = self.field.sub(v[j], sub);
                }
            }
        }
        match v.iter().position(|&c| c != 0) {
            None => false,
            Some(p) => {
                let inv = self.field.inv(v[p]);
                for x in v.iter_mut() {
                    *x = self.field.mul(*x, inv);
                }
                self.rows.push(v);
                self.pivots.push(p);
                true
            }
        }
    }
}

/// A dense free resolution over the algebra: shifts per level and, for
/// each generator at level `j >= 1`, its image as a vector in the free
/// module one level down.
pub struct DenseResolution {
    pub shifts: Vec<Vec<i64>>,
    pub diffs: Vec<Vec<Vec<u32>>>,
}

/// Resolves a finite module by iterated minimal covers and dense kernels.
pub fn dense_resolution(a: &FiniteAlgebra, m: &FiniteModule, len: usize) -> DenseResolution {
    let field = m.field;
    let mut shifts: Vec<Vec<i64>> = Vec::with_capacity(len + 1);
    let mut diffs: Vec<Vec<Vec<u32>>> = Vec::with_capacity(len);
    // current target with chosen generator images (in target coordinates)
    let mut target: FiniteModule = m.clone();
    let mut gen_images: Vec<Vec<u32>> = minimal_cover_gens(m)
        .into_iter()
        .map(|i| {
            let mut e = alloc::vec![0u32; m.dim()];
            e[i] = 1;
            e
        })
        .collect();
    let mut gen_degs: Vec<i64> = gen_images
        .iter()
        .map(|v| degree_of(&target, v))
        .collect();
    shifts.push(gen_degs.clone());
    for _ in 0..len {
        // the free cover and the dense matrix of the cover map
        let (free, free_gens) = free_over(a, &gen_degs);
        let phi = cover_matrix(a, &free, &free_gens, &target, &gen_images);
        let (kmod, kbasis) = kernel_module(&free, &phi, field);
        let kgens = minimal_cover_gens(&kmod);
        let new_images: Vec<Vec<u32>> = kgens.iter().map(|&i| kbasis[i].clone()).collect();
        let new_degs: Vec<i64> = kgens.iter().map(|&i| kmod.basis_degs[i]).collect();
        diffs.push(new_images.clone());
        shifts.push(new_degs.clone());
        // descend: next target is the kernel in its own coordinates
        gen_images = kgens
            .iter()
            .map(|&i| {
                let mut e = alloc::vec![0u32; kmod.dim()];
                e[i] = 1;
                e
            })
            .collect();
        gen_degs = new_degs;
        target = kmod;
    }
    DenseResolution { shifts, diffs }
}

fn degree_of(m: &FiniteModule, v: &[u32]) -> i64 {
    let idx = v
        .iter()
        .position(|&c| c != 0)
        .expect("degree of the zero vector");
    m.basis_degs[idx]
}

/// Dense matrix of the cover map `F -> M` sending generator `blk` to
/// `gen_images[blk]`.
fn cover_matrix(
    a: &FiniteAlgebra,
    free: &FiniteModule,
    _free_gens: &[usize],
    target: &FiniteModule,
    gen_images: &[Vec<u32>],
) -> FMatrix {
    // express every free-module basis vector (blk, b) as the algebra
    // basis element b acting on the block generator; we realize that
    // action on the target via a monomial representative of b, recovered
    // from the algebra's dense structure. Instead of tracking monomial
    // representatives, build the matrix degree by degree: each basis
    // vector of the free module is (algebra elt) * generator, and the
    // algebra element is itself a combination reachable from the unit by
    // variable actions. We propagate images along variable actions.
    let field = free.field;
    let adim = a.module.dim();
    let mut phi = FMatrix::zeros(target.dim(), free.dim());
    // order algebra basis by degree so predecessors are filled first
    let mut order: Vec<usize> = (0..adim).collect();
    order.sort_by_key(|&b| (a.module.basis_degs[b], b));
    for blk in 0..gen_images.len() {
        let off = blk * adim;
        // image of (blk, unit) is the generator image
        for (i, &c) in gen_images[blk].iter().enumerate() {
            phi[(i, off + a.unit)] = c;
        }
        // every other algebra basis element is reached from lower-degree
        // ones by a variable action: find, for each b, a variable v and
        // predecessor p with action_v(e_p) having nonzero coordinate at b
        let mut filled = alloc::vec![false; adim];
        filled[a.unit] = true;
        for &b in &order {
            if filled[b] {
                continue;
            }
            let mut found = false;
            'search: for v in 0..a.module.var_action.len() {
                for p in 0..adim {
                    if !filled[p] {
                        continue;
                    }
                    let c = a.module.var_action[v][(b, p)];
                    if c != 0 {
                        // e_b = c^{-1} * (x_v e_p - other terms); other
                        // terms have filled or unfilled coordinates --
                        // subtract the filled ones, and the unfilled ones
                        // must be zero for this propagation to be sound.
                        let col: Vec<u32> = (0..adim)
                            .map(|i| a.module.var_action[v][(i, p)])
                            .collect();
                        if col
                            .iter()
                            .enumerate()
                            .any(|(i, &ci)| ci != 0 && i != b && !filled[i])
                        {
                            continue;
                        }
                        let inv = field.inv(c);
                        // x_v * phi(e_p) in the target
                        let src: Vec<u32> =
                            (0..target.dim()).map(|i| phi[(i, off + p)]).collect();
                        let moved = target.var_action[v].mul_vec(field, &src);
                        let mut acc = moved;
                        for (i, &ci) in col.iter().enumerate() {
                            if ci != 0 && i != b {
                                // subtract ci * phi(e_i)
                                for t in 0..target.dim() {
                                    let sub = field.mul(ci, phi[(t, off + i)]);
                                    acc[t] = field.sub(acc[t], sub);
                                }
                            }
                        }
                        for t in 0..target.dim() {
                            phi[(t, off + b)] = field.mul(inv, acc[t]);
                        }
                        filled[b] = true;
                        found = true;
                        break 'search;
                    }
                }
            }
            assert!(found, "algebra basis element unreachable by variable actions");
        }
    }
    phi
}

/// Kernel of a dense degree-zero map from a free module, as a finite
/// module together with its basis vectors in the source coordinates.
fn kernel_module(source: &FiniteModule, phi: &FMatrix, field: PrimeField) -> (FiniteModule, Vec<Vec<u32>>) {
    let mut kbasis: Vec<Vec<u32>> = Vec::new();
    let mut kdegs: Vec<i64> = Vec::new();
    for d in source.degrees_present() {
        let idx = source.degree_indices(d);
        // submatrix of phi on those columns
        let mut sub = FMatrix::zeros(phi.rows, idx.len());
        for (cj, &j) in idx.iter().enumerate() {
            for i in 0..phi.rows {
                sub[(i, cj)] = phi[(i, j)];
            }
        }
        for ns in sub.nullspace(field) {
            let mut v = alloc::vec![0u32; source.dim()];
            for (cj, &j) in idx.iter().enumerate() {
                v[j] = ns[cj];
            }
            kbasis.push(v);
            kdegs.push(d);
        }
    }
    // actions: move a kernel basis vector with the source action, then
    // solve against the kernel basis of the target degree
    let dim = kbasis.len();
    let mut var_action = Vec::with_capacity(source.var_action.len());
    for v in 0..source.var_action.len() {
        let mut mat = FMatrix::zeros(dim, dim);
        for (j, kb) in kbasis.iter().enumerate() {
            let moved = source.var_action[v].mul_vec(field, kb);
            if moved.iter().all(|&c| c == 0) {
                continue;
            }
            let d = kdegs[j] + source.weights[v] as i64;
            let targets: Vec<usize> = (0..dim).filter(|&i| kdegs[i] == d).collect();
            let mut sys = FMatrix::zeros(source.dim(), targets.len());
            for (ci, &i) in targets.iter().enumerate() {
                for r in 0..source.dim() {
                    sys[(r, ci)] = kbasis[i][r];
                }
            }
            let sol = sys
                .solve(field, &moved)
                .expect("kernel is closed under the action");
            for (ci, &i) in targets.iter().enumerate() {
                if sol[ci] != 0 {
                    mat[(i, j)] = sol[ci];
                }
            }
        }
        var_action.push(mat);
    }
    (
        FiniteModule {
            basis_degs: kdegs,
            var_action,
            field,
            weights: source.weights.clone(),
        },
        kbasis,
    )
}

/// Graded dimensions of `Hom_A(M, N)`: solutions of the commuting-matrix
/// system, one degree at a time.
pub fn oracle_hom_dims(m: &FiniteModule, n: &FiniteModule) -> BTreeMap<i64, u64> {
    let field = m.field;
    let mut out = BTreeMap::new();
    if m.dim() == 0 || n.dim() == 0 {
        return out;
    }
    let lo = n.basis_degs.iter().min().unwrap() - m.basis_degs.iter().max().unwrap();
    let hi = n.basis_degs.iter().max().unwrap() - m.basis_degs.iter().min().unwrap();
    for t in lo..=hi {
        // unknowns: entries (e, f) with deg e = deg f + t
        let mut unknowns: Vec<(usize, usize)> = Vec::new();
        for e in 0..n.dim() {
            for f in 0..m.dim() {
                if n.basis_degs[e] == m.basis_degs[f] + t {
                    unknowns.push((e, f));
                }
            }
        }
        if unknowns.is_empty() {
            continue;
        }
        let lookup: BTreeMap<(usize, usize), usize> = unknowns
            .iter()
            .enumerate()
            .map(|(i, &p)| (p, i))
            .collect();
        // constraints: for each variable v, each source f, each target e:
        // sum_g Phi[e][g] A_v[g][f] - sum_h B_v[e][h] Phi[h][f] = 0
        let mut rows: Vec<Vec<u32>> = Vec::new();
        for v in 0..m.var_action.len() {
            for f in 0..m.dim() {
                for e in 0..n.dim() {
                    let mut row = alloc::vec![0u32; unknowns.len()];
                    let mut nonzero = false;
                    for g in 0..m.dim() {
                        let a = m.var_action[v][(g, f)];
                        if a != 0 {
                            if let Some(&u) = lookup.get(&(e, g)) {
                                row[u] = field.add(row[u], a);
                                nonzero = true;
                            }
                        }
                    }
                    for h in 0..n.dim() {
                        let b = n.var_action[v][(e, h)];
                        if b != 0 {
                            if let Some(&u) = lookup.get(&(h, f)) {
                                row[u] = field.sub(row[u], b);
                                nonzero = true;
                            }
                        }
                    }
                    if nonzero {
                        rows.push(row);
                    }
                }
            }
        }
        let nullity = if rows.is_empty() {
            unknowns.len()
        } else {
            unknowns.len() - FMatrix::from_rows(rows).rank(field)
        };
        if nullity > 0 {
            out.insert(t, nullity as u64);
        }
    }
    out
}

/// Graded dimensions of `Ext^i_A(M, N)` from a dense minimal resolution.
pub fn oracle_ext_dims(
    a: &FiniteAlgebra,
    i: usize,
    m: &FiniteModule,
    n: &FiniteModule,
) -> BTreeMap<i64, u64> {
    let res = dense_resolution(a, m, i + 1);
    ext_dims_from_resolution(a, &res, i, n)
}

/// Homology dimensions of the dualized resolution at spot `i`.
pub fn ext_dims_from_resolution(
    a: &FiniteAlgebra,
    res: &DenseResolution,
    i: usize,
    n: &FiniteModule,
) -> BTreeMap<i64, u64> {
    let field = n.field;
    let (src_degs, delta_out) = dual_delta(a, &res.shifts[i], &res.shifts[i + 1], &res.diffs[i], n);
    let delta_in: Option<(Vec<i64>, FMatrix)> = if i > 0 {
        Some(dual_delta(
            a,
            &res.shifts[i - 1],
            &res.shifts[i],
            &res.diffs[i - 1],
            n,
        ))
    } else {
        None
    };
    let mut out = BTreeMap::new();
    let mut degrees: Vec<i64> = src_degs.clone();
    degrees.sort_unstable();
    degrees.dedup();
    for d in degrees {
        let cols: Vec<usize> = (0..src_degs.len()).filter(|&j| src_degs[j] == d).collect();
        if cols.is_empty() {
            continue;
        }
        let mut outm = FMatrix::zeros(delta_out.rows, cols.len());
        for (cj, &j) in cols.iter().enumerate() {
            for r in 0..delta_out.rows {
                outm[(r, cj)] = delta_out[(r, j)];
            }
        }
        let ker = cols.len() - outm.rank(field);
        let im = match &delta_in {
            None => 0,
            Some((in_src_degs, din)) => {
                let in_cols: Vec<usize> = (0..in_src_degs.len())
                    .filter(|&j| in_src_degs[j] == d)
                    .collect();
                if in_cols.is_empty() {
                    0
                } else {
                    // restrict rows to the degree-d slice of the middle
                    let rows: Vec<usize> = cols.clone();
                    let mut inm = FMatrix::zeros(rows.len(), in_cols.len());
                    for (ri, &r) in rows.iter().enumerate() {
                        for (cj, &j) in in_cols.iter().enumerate() {
                            inm[(ri, cj)] = din[(r, j)];
                        }
                    }
                    inm.rank(field)
                }
            }
        };
        if ker > im {
            out.insert(d, (ker - im) as u64);
        }
    }
    out
}

/// The dual differential `Hom(F_j, N) -> Hom(F_{j+1}, N)` with the source
/// pair degrees.
fn dual_delta(
    a: &FiniteAlgebra,
    shifts_j: &[i64],
    shifts_next: &[i64],
    diff: &[Vec<u32>],
    n: &FiniteModule,
) -> (Vec<i64>, FMatrix) {
    let field = n.field;
    let adim = a.module.dim();
    let ndim = n.dim();
    let src_degs: Vec<i64> = shifts_j
        .iter()
        .flat_map(|&s| n.basis_degs.iter().map(move |&d| d - s))
        .collect();
    let tgt_len = shifts_next.len() * ndim;
    // precompute the action of each algebra basis element on N
    let action_on_n = algebra_action_on(a, n);
    let mut delta = FMatrix::zeros(tgt_len, src_degs.len());
    for (s, dvec) in diff.iter().enumerate() {
        debug_assert_eq!(dvec.len(), shifts_j.len() * adim);
        for t in 0..shifts_j.len() {
            for b in 0..adim {
                let c = dvec[t * adim + b];
                if c == 0 {
                    continue;
                }
                let act = &action_on_n[b];
                for e in 0..ndim {
                    // source pair (t, e) contributes to target pairs
                    // (s, e') with coefficient c * act[e'][e]
                    for ep in 0..ndim {
                        let coeff = act[(ep, e)];
                        if coeff != 0 {
                            let src = t * ndim + e;
                            let dst = s * ndim + ep;
                            delta[(dst, src)] =
                                field.add(delta[(dst, src)], field.mul(c, coeff));
                        }
                    }
                }
            }
        }
    }
    (src_degs, delta)
}

/// Realizes each algebra basis element as an operator on `N`, by
/// propagating from the unit along variable actions.
fn algebra_action_on(a: &FiniteAlgebra, n: &FiniteModule) -> Vec<FMatrix> {
    let field = n.field;
    let adim = a.module.dim();
    let mut out: Vec<Option<FMatrix>> = alloc::vec![None; adim];
    out[a.unit] = Some(FMatrix::identity(n.dim()));
    let mut order: Vec<usize> = (0..adim).collect();
    order.sort_by_key(|&b| (a.module.basis_degs[b], b));
    for &b in &order {
        if out[b].is_some() {
            continue;
        }
        let mut found = false;
        'search: for v in 0..a.module.var_action.len() {
            for p in 0..adim {
                if out[p].is_none() {
                    continue;
                }
                let c = a.module.var_action[v][(b, p)];
                if c == 0 {
                    continue;
                }
                let col: Vec<u32> = (0..adim).map(|i| a.module.var_action[v][(i, p)]).collect();
                if col
                    .iter()
                    .enumerate()
                    .any(|(i, &ci)| ci != 0 && i != b && out[i].is_none())
                {
                    continue;
                }
                let inv = field.inv(c);
                let mut acc = n.var_action[v].mul(field, out[p].as_ref().unwrap());
                for (i, &ci) in col.iter().enumerate() {
                    if ci != 0 && i != b {
                        let other = out[i].as_ref().unwrap();
                        for r in 0..n.dim() {
                            for cjj in 0..n.dim() {
                                let sub = field.mul(ci, other[(r, cjj)]);
                                acc[(r, cjj)] = field.sub(acc[(r, cjj)], sub);
                            }
                        }
                    }
                }
                for r in 0..n.dim() {
                    for cjj in 0..n.dim() {
                        acc[(r, cjj)] = field.mul(inv, acc[(r, cjj)]);
                    }
                }
                out[b] = Some(acc);
                found = true;
                break 'search;
            }
        }
        assert!(found, "algebra basis element unreachable from the unit");
    }
    out.into_iter().map(|m| m.unwrap()).collect()
}

/// The transpose with respect to `C`, in dense form: the cokernel of the
/// dualized first differential of a minimal dense resolution.
pub fn oracle_transpose(a: &FiniteAlgebra, m: &FiniteModule, c: &FiniteModule) -> FiniteModule {
    let res = dense_resolution(a, m, 1);
    let (src_degs, delta) = dual_delta(a, &res.shifts[0], &res.shifts[1], &res.diffs[0], c);
    // target of delta is Hom(F_1, C); build it as a finite module and
    // quotient by the image of delta
    let hom_f1 = hom_free_module(a, &res.shifts[1], c);
    let image: Vec<Vec<u32>> = (0..src_degs.len())
        .map(|j| (0..hom_f1.dim()).map(|i| delta[(i, j)]).collect())
        .collect();
    quotient_module(&hom_f1, &image)
}

/// `Hom(⊕ A(-a_j), C) = ⊕ C(a_j)` as a finite module.
fn hom_free_module(a: &FiniteAlgebra, shifts: &[i64], c: &FiniteModule) -> FiniteModule {
    let _ = a;
    let ndim = c.dim();
    let mut basis_degs = Vec::with_capacity(shifts.len() * ndim);
    for &s in shifts {
        basis_degs.extend(c.basis_degs.iter().map(|&d| d - s));
    }
    let field = c.field;
    let dim = basis_degs.len();
    let mut var_action = Vec::with_capacity(c.var_action.len());
    for v in 0..c.var_action.len() {
        let mut mat = FMatrix::zeros(dim, dim);
        for blk in 0..shifts.len() {
            let off = blk * ndim;
            for i in 0..ndim {
                for j in 0..ndim {
                    let cc = c.var_action[v][(i, j)];
                    if cc != 0 {
                        mat[(off + i, off + j)] = cc;
                    }
                }
            }
        }
        var_action.push(mat);
    }
    FiniteModule {
        basis_degs,
        var_action,
        field,
        weights: c.weights.clone(),
    }
}

/// Quotient of a finite module by the span of homogeneous vectors. The
/// quotient basis is the set of non-pivot coordinates of the fully
/// reduced row echelon form, so reduction lands exactly on it.
fn quotient_module(m: &FiniteModule, span: &[Vec<u32>]) -> FiniteModule {
    let field = m.field;
    let mut rows = FMatrix::from_rows(span.to_vec());
    if rows.cols == 0 {
        rows = FMatrix::zeros(0, m.dim());
    }
    let pivots = rows.rref(field);
    let kept: Vec<usize> = (0..m.dim()).filter(|c| !pivots.contains(c)).collect();
    let project = |v: Vec<u32>| -> Vec<u32> {
        let mut w = v;
        for (ri, &p) in pivots.iter().enumerate() {
            let c = w[p];
            if c != 0 {
                for j in 0..w.len() {
                    let sub = field.mul(c, rows[(ri, j)]);
                    w[j] = field.sub(w[j], sub);
                }
            }
        }
        debug_assert!(pivots.iter().all(|&p| w[p] == 0));
        kept.iter().map(|&i| w[i]).collect()
    };
    let dim = kept.len();
    let basis_degs: Vec<i64> = kept.iter().map(|&i| m.basis_degs[i]).collect();
    let mut var_action = Vec::with_capacity(m.var_action.len());
    for v in 0..m.var_action.len() {
        let mut mat = FMatrix::zeros(dim, dim);
        for (cj, &j) in kept.iter().enumerate() {
            let col: Vec<u32> = (0..m.dim()).map(|i| m.var_action[v][(i, j)]).collect();
            let proj = project(col);
            for (ri, &c) in proj.iter().enumerate() {
                if c != 0 {
                    mat[(ri, cj)] = c;
                }
            }
        }
        var_action.push(mat);
    }
    FiniteModule {
        basis_degs,
        var_action,
        field,
        weights: m.weights.clone(),
    }
}

/// Differential test: Groebner-pipeline Hom/Ext graded dimensions against
/// the dense engine, plus biduality-injectivity and torsionfreeness
/// cross-checks through the dense transpose.
pub fn differential_test(
    instances: &[(String, Vec<(String, Module)>)],
    i_max: usize,
    seed: u64,
) -> Result<CheckReport, CoreError> {
    let mut report = CheckReport::new(env!("CARGO_PKG_VERSION"), seed);
    for (ring_name, modules) in instances {
        if modules.is_empty() {
            continue;
        }
        let ring = modules[0].1.ring().clone();
        let algebra = finite_algebra(&ring)?;
        let rm = crate::module::PresentedModule::ring_module(ring.clone());
        let c_fin = to_finite(&rm)?;
        let finites: Vec<(String, FiniteModule, Module)> = modules
            .iter()
            .map(|(name, m)| Ok((name.clone(), to_finite(m)?, m.clone())))
            .collect::<Result<_, CoreError>>()?;
        for (name, fin, m) in &finites {
            // total dimension agrees with the Hilbert function
            let pipeline_total: u64 = hilbert_total(m);
            let ok_dim = pipeline_total == fin.dim() as u64 && fin.actions_commute();
            report.push(CheckRecord::new(
                &alloc::format!("finite_structure({ring_name}/{name})"),
                name,
                Verdict::from_bool(ok_dim),
                &alloc::format!("dense dim {}, staircase total {}", fin.dim(), pipeline_total),
            ));
            // Hom dims against the pipeline, both directions vs the ring
            for (other_name, other_fin, other_m) in &finites {
                let dense = oracle_hom_dims(fin, other_fin);
                let pipe = crate::module::hom_module(m, other_m).module;
                let ok = dims_match(&pipe, &dense);
                report.push(CheckRecord::new(
                    &alloc::format!("hom_dims({ring_name}/{name},{other_name})"),
                    name,
                    Verdict::from_bool(ok),
                    &alloc::format!("dense {:?}", dense),
                ));
            }
            // Ext dims against the pipeline
            let res = dense_resolution(&algebra, fin, i_max + 1);
            let calc = crate::homology::ExtCalculator::new(m, &rm, i_max);
            for i in 0..=i_max {
                let dense = ext_dims_from_resolution(&algebra, &res, i, &c_fin);
                let pipe = calc.ext(i);
                let ok = dims_match(&pipe, &dense);
                report.push(CheckRecord::new(
                    &alloc::format!("ext_dims({ring_name}/{name}, i={i})"),
                    name,
                    Verdict::from_bool(ok),
                    &alloc::format!("dense {:?}", dense),
                ));
            }
            // biduality injectivity and torsionfreeness via the dense
            // transpose
            let tr = oracle_transpose(&algebra, fin, &c_fin);
            let tr_res = dense_resolution(&algebra, &tr, i_max.max(1) + 1);
            let dense_tf1 = ext_dims_from_resolution(&algebra, &tr_res, 1, &c_fin).is_empty();
            let lambda_inj = crate::homology::lambda_map(m, &rm).kernel_is_zero();
            let pipe_tf1 = crate::semidual::is_n_c_torsionfree(m, &rm, 1).holds;
            report.push(CheckRecord::new(
                &alloc::format!("torsionfree_cross({ring_name}/{name})"),
                name,
                Verdict::from_bool(dense_tf1 == pipe_tf1 && dense_tf1 == lambda_inj),
                &alloc::format!(
                    "dense {}, pipeline {}, biduality injective {}",
                    dense_tf1, pipe_tf1, lambda_inj
                ),
            ));
        }
    }
    Ok(report)
}

fn hilbert_total(m: &Module) -> u64 {
    let Some(lo) = m.min_gen_degree() else {
        return 0;
    };
    // finite length: sum until the staircase is exhausted
    let hi = lo + 64;
    let mut total = 0;
    let mut zero_run = 0;
    for d in lo..=hi {
        let n = m.degree_basis(d).len() as u64;
        total += n;
        zero_run = if n == 0 { zero_run + 1 } else { 0 };
        if zero_run > 8 {
            break;
        }
    }
    total
}

/// Pipeline module vs dense degree map over a window covering both.
pub fn dims_match(pipeline: &Module, dense: &BTreeMap<i64, u64>) -> bool {
    let mut lo = dense.keys().next().copied().unwrap_or(0);
    let mut hi = dense.keys().last().copied().unwrap_or(0);
    if let Some(g) = pipeline.min_gen_degree() {
        lo = lo.min(g);
    }
    if let Some(g) = pipeline.max_gen_degree() {
        hi = hi.max(g + pipeline.poly_ring().n_vars() as i64 + 4);
    }
    for d in lo..=hi {
        let a = pipeline.degree_basis(d).len() as u64;
        let b = dense.get(&d).copied().unwrap_or(0);
        if a != b {
            return false;
        }
    }
    true
}
