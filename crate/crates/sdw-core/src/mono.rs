use alloc::vec::Vec;
use core::cmp::Ordering;
use smallvec::SmallVec;

/// Exponent vector with cached weighted degree.
///
/// The corpus stays at eight variables or fewer, so exponents live inline.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: SmallVec<[u16; 8]>,
    deg: u32,
}

impl Monomial {
    pub fn new(exps: &[u16], weights: &[u32]) -> Self {
        assert_eq!(exps.len(), weights.len(), "exponent/weight arity mismatch");
        let deg = exps
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as u32 * w)
            .sum();
        Monomial {
            exps: SmallVec::from_slice(exps),
            deg,
        }
    }

    pub fn one(n_vars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, n_vars),
            deg: 0,
        }
    }

    pub fn var(i: usize, n_vars: usize, weights: &[u32]) -> Self {
        let mut exps = SmallVec::from_elem(0u16, n_vars);
        exps[i] = 1;
        Monomial {
            exps,
            deg: weights[i],
        }
    }

    #[inline]
    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    #[inline]
    pub fn arity(&self) -> usize {
        self.exps.len()
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.deg == 0 && self.exps.iter().all(|&e| e == 0)
    }

    pub fn total_exponent(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.arity(), other.arity());
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(&a, &b)| a + b)
            .collect();
        Monomial {
            exps,
            deg: self.deg + other.deg,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.arity(), other.arity());
        self.exps.iter().zip(&other.exps).all(|(&a, &b)| a <= b)
    }

    /// `other / self`; caller guarantees divisibility.
    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        let exps = other
            .exps
            .iter()
            .zip(&self.exps)
            .map(|(&b, &a)| b - a)
            .collect();
        Monomial {
            exps,
            deg: other.deg - self.deg,
        }
    }

    pub fn lcm(&self, other: &Monomial, weights: &[u32]) -> Monomial {
        debug_assert_eq!(self.arity(), other.arity());
        let exps: SmallVec<[u16; 8]> = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(&a, &b)| a.max(b))
            .collect();
        let deg = exps
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as u32 * w)
            .sum();
        Monomial { exps, deg }
    }

    pub fn is_coprime_with(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    pub fn support(&self) -> Vec<usize> {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Graded reverse lexicographic comparison: higher weighted degree wins;
/// on ties the rightmost differing exponent decides, smaller exponent
/// winning.
pub fn grevlex(a: &Monomial, b: &Monomial) -> Ordering {
    match a.deg.cmp(&b.deg) {
        Ordering::Equal => {}
        ord => return ord,
    }
    for i in (0..a.exps.len()).rev() {
        match a.exps[i].cmp(&b.exps[i]) {
            Ordering::Equal => continue,
            // rightmost nonzero entry of a - b negative  =>  a > b
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}

/// How the ring order extends to free modules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ModuleOrder {
    /// Position over term: component index decides first (lower index
    /// greater), grevlex breaks ties. The default for all stored elements.
    #[default]
    PositionOverTerm,
    /// Term over position: grevlex on monomials first, lower component
    /// index breaking ties.
    TermOverPosition,
}

/// Compare two module terms `(component, monomial)` under the given order.
pub fn module_cmp(
    order: ModuleOrder,
    a_comp: u32,
    a_mono: &Monomial,
    b_comp: u32,
    b_mono: &Monomial,
) -> Ordering {
    match order {
        ModuleOrder::PositionOverTerm => match b_comp.cmp(&a_comp) {
            Ordering::Equal => grevlex(a_mono, b_mono),
            ord => ord,
        },
        ModuleOrder::TermOverPosition => match grevlex(a_mono, b_mono) {
            Ordering::Equal => b_comp.cmp(&a_comp),
            ord => ord,
        },
    }
}

/// Schreyer comparison induced by lead terms `lead[k] = (comp, mono)` of a
/// basis living in a free module ordered by `module_cmp(base, ..)`:
/// `e_i * m` against `e_j * m'` compares the products `m * lead[i]`,
/// `m' * lead[j]` there, lower basis index breaking ties.
pub fn schreyer_cmp(
    base: ModuleOrder,
    lead: &[(u32, Monomial)],
    i: u32,
    m: &Monomial,
    j: u32,
    m2: &Monomial,
) -> Ordering {
    let (ci, mi) = &lead[i as usize];
    let (cj, mj) = &lead[j as usize];
    match module_cmp(base, *ci, &m.mul(mi), *cj, &m2.mul(mj)) {
        Ordering::Equal => j.cmp(&i),
        ord => ord,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(exps: &[u16]) -> Monomial {
        let w = alloc::vec![1u32; exps.len()];
        Monomial::new(exps, &w)
    }

    #[test]
    fn grevlex_basics() {
        // x^2 y vs x y^2 under unit weights: x^2 y greater
        assert_eq!(grevlex(&m(&[2, 1]), &m(&[1, 2])), Ordering::Greater);
        // reflexivity
        assert_eq!(grevlex(&m(&[3, 1]), &m(&[3, 1])), Ordering::Equal);
        // degree-first under weights (2, 3): x vs y^2 has degrees 2 < 6
        let w = [2u32, 3];
        let x = Monomial::new(&[1, 0], &w);
        let y2 = Monomial::new(&[0, 2], &w);
        assert_eq!(grevlex(&x, &y2), Ordering::Less);
    }

    #[test]
    fn grevlex_classic_tie() {
        // same degree: x^2 z vs x y^2 — difference (1, -2, 1), rightmost
        // nonzero positive => x^2 z smaller
        assert_eq!(grevlex(&m(&[2, 0, 1]), &m(&[1, 2, 0])), Ordering::Less);
        // x^2 vs yz: rightmost nonzero of (2,-1,-1) is negative => greater
        assert_eq!(grevlex(&m(&[2, 0, 0]), &m(&[0, 1, 1])), Ordering::Greater);
    }

    #[test]
    fn mul_div_lcm() {
        let w = [1u32, 1, 1];
        let a = Monomial::new(&[2, 0, 1], &w);
        let b = Monomial::new(&[1, 1, 0], &w);
        let ab = a.mul(&b);
        assert_eq!(ab.exps(), &[3, 1, 1]);
        assert_eq!(ab.degree(), 5);
        assert!(b.divides(&ab));
        assert_eq!(b.div(&ab).exps(), a.exps());
        let l = a.lcm(&b, &w);
        assert_eq!(l.exps(), &[2, 1, 1]);
        assert!(!a.is_coprime_with(&b));
        assert!(Monomial::new(&[0, 2, 0], &w).is_coprime_with(&Monomial::new(&[1, 0, 1], &w)));
    }

    #[test]
    fn pot_order() {
        let a = m(&[0, 1]);
        let b = m(&[5, 5]);
        // lower component wins regardless of monomial
        assert_eq!(
            module_cmp(ModuleOrder::PositionOverTerm, 0, &a, 1, &b),
            Ordering::Greater
        );
        assert_eq!(
            module_cmp(ModuleOrder::TermOverPosition, 0, &a, 1, &b),
            Ordering::Less
        );
    }
}
