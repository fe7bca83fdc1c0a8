//! Sparse Laurent polynomials in `A = R[Γ]`.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::Error;
use crate::int::Int;
use crate::ordgroup::{exp_add, exp_neg, Exp, OrderedGroup};

/// Exact coefficient ring. Zero values are never stored, so no `zero()`
/// constructor is required; this lets number-field elements carry their
/// field by reference.
pub trait Coeff: Clone + PartialEq + fmt::Debug {
    fn coeff_is_zero(&self) -> bool;
    fn add_assign_ref(&mut self, rhs: &Self);
    fn sub_assign_ref(&mut self, rhs: &Self);
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
}

impl Coeff for Int {
    fn coeff_is_zero(&self) -> bool {
        Int::is_zero(self)
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }
    fn sub_assign_ref(&mut self, rhs: &Self) {
        *self -= rhs;
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

/// `Σ c_g ε^g`, terms sorted by raw lexicographic exponent order, no zero
/// coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly<C = Int> {
    terms: Vec<(Exp, C)>,
}

pub type Poly = LaurentPoly<Int>;

impl<C> Default for LaurentPoly<C> {
    fn default() -> Self {
        Self { terms: Vec::new() }
    }
}

impl<C: Coeff> LaurentPoly<C> {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn monomial(e: Exp, c: C) -> Self {
        if c.coeff_is_zero() {
            Self::zero()
        } else {
            Self {
                terms: alloc::vec![(e, c)],
            }
        }
    }

    /// Builds a normalized polynomial from arbitrary (possibly repeated,
    /// possibly zero) terms.
    pub fn from_terms(mut terms: Vec<(Exp, C)>) -> Self {
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Exp, C)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match out.last_mut() {
                Some((le, lc)) if *le == e => lc.add_assign_ref(&c),
                _ => {
                    if let Some((_, lc)) = out.last() {
                        if lc.coeff_is_zero() {
                            out.pop();
                        }
                    }
                    out.push((e, c));
                }
            }
        }
        if let Some((_, lc)) = out.last() {
            if lc.coeff_is_zero() {
                out.pop();
            }
        }
        Self { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Exp, C)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Exp, C)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Rank of the exponent vectors, if any term is stored.
    pub fn rank(&self) -> Option<usize> {
        self.terms.first().map(|(e, _)| e.len())
    }

    pub fn coeff(&self, e: &[i32]) -> Option<&C> {
        self.terms
            .binary_search_by(|(t, _)| t.as_slice().cmp(e))
            .ok()
            .map(|i| &self.terms[i].1)
    }

    fn merge(&self, rhs: &Self, negate: bool) -> Self {
        let (a, b) = (&self.terms, &rhs.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let c = if negate { b[j].1.neg_ref() } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let mut c = a[i].1.clone();
                    if negate {
                        c.sub_assign_ref(&b[j].1);
                    } else {
                        c.add_assign_ref(&b[j].1);
                    }
                    if !c.coeff_is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(e, c)| {
            (e.clone(), if negate { c.neg_ref() } else { c.clone() })
        }));
        Self { terms: out }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        self.merge(rhs, false)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        if rhs.is_zero() {
            return self.clone();
        }
        self.merge(rhs, true)
    }

    pub fn add_assign(&mut self, rhs: &Self) {
        if rhs.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = rhs.clone();
            return;
        }
        *self = self.merge(rhs, false);
    }

    pub fn sub_assign(&mut self, rhs: &Self) {
        if rhs.is_zero() {
            return;
        }
        *self = self.merge(rhs, true);
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg_ref())).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if self.terms.len() == 1 {
            let (e, c) = &self.terms[0];
            return rhs.mul_monomial(e, c);
        }
        if rhs.terms.len() == 1 {
            let (e, c) = &rhs.terms[0];
            return self.mul_monomial(e, c);
        }
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                terms.push((exp_add(ea, eb), ca.mul_ref(cb)));
            }
        }
        Self::from_terms(terms)
    }

    /// `self · c ε^e`; translation preserves the term order.
    pub fn mul_monomial(&self, e: &[i32], c: &C) -> Self {
        let terms = self
            .terms
            .iter()
            .filter_map(|(t, d)| {
                let p = d.mul_ref(c);
                (!p.coeff_is_zero()).then(|| (exp_add(t, e), p))
            })
            .collect();
        Self { terms }
    }

    pub fn shift(&self, e: &[i32]) -> Self {
        Self {
            terms: self.terms.iter().map(|(t, c)| (exp_add(t, e), c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter_map(|(t, d)| {
                    let p = d.mul_ref(c);
                    (!p.coeff_is_zero()).then(|| (t.clone(), p))
                })
                .collect(),
        }
    }

    /// `self += a · b`.
    pub fn add_product(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        let p = a.mul(b);
        self.add_assign(&p);
    }

    /// The ring involution `ε^g ↦ ε^{-g}`.
    pub fn bar(&self) -> Self {
        // Negation reverses the lexicographic order.
        Self {
            terms: self.terms.iter().rev().map(|(e, c)| (exp_neg(e), c.clone())).collect(),
        }
    }

    pub fn is_bar_invariant(&self) -> bool {
        *self == self.bar()
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> LaurentPoly<D> {
        LaurentPoly::from_terms(self.terms.iter().map(|(e, c)| (e.clone(), f(c))).collect())
    }

    /// Order-minimal exponent of the support.
    pub fn min_exponent(&self, g: &OrderedGroup) -> Option<&Exp> {
        self.terms
            .iter()
            .map(|(e, _)| e)
            .min_by(|a, b| g.compare(a, b))
    }

    pub fn max_exponent(&self, g: &OrderedGroup) -> Option<&Exp> {
        self.terms
            .iter()
            .map(|(e, _)| e)
            .max_by(|a, b| g.compare(a, b))
    }

    /// Leading (order-maximal) term.
    pub fn leading_term(&self, g: &OrderedGroup) -> Option<&(Exp, C)> {
        self.terms.iter().max_by(|a, b| g.compare(&a.0, &b.0))
    }

    /// Trailing (order-minimal) term.
    pub fn trailing_term(&self, g: &OrderedGroup) -> Option<&(Exp, C)> {
        self.terms.iter().min_by(|a, b| g.compare(&a.0, &b.0))
    }

    /// Splits `p = neg + c·ε^0 + pos` with `supp(neg) < 0 < supp(pos)`.
    pub fn split_by_sign(&self, g: &OrderedGroup) -> (Self, Option<C>, Self) {
        let mut neg = Vec::new();
        let mut pos = Vec::new();
        let mut constant = None;
        for (e, c) in &self.terms {
            match g.sign(e) {
                Ordering::Less => neg.push((e.clone(), c.clone())),
                Ordering::Greater => pos.push((e.clone(), c.clone())),
                Ordering::Equal => constant = Some(c.clone()),
            }
        }
        (Self { terms: neg }, constant, Self { terms: pos })
    }

    pub fn constant_term(&self) -> Option<&C> {
        self.terms.iter().find(|(e, _)| e.iter().all(|x| *x == 0)).map(|(_, c)| c)
    }

    /// All exponents strictly negative in the order, i.e. `p ∈ R[Γ_{<0}]`.
    pub fn in_negative_part(&self, g: &OrderedGroup) -> bool {
        self.terms.iter().all(|(e, _)| g.sign(e) == Ordering::Less)
    }

    pub fn in_positive_part(&self, g: &OrderedGroup) -> bool {
        self.terms.iter().all(|(e, _)| g.sign(e) == Ordering::Greater)
    }

    pub fn in_nonnegative_part(&self, g: &OrderedGroup) -> bool {
        self.terms.iter().all(|(e, _)| g.sign(e) != Ordering::Less)
    }

    /// Embeds exponents of rank `k` into rank `total` at coordinate `offset`.
    pub fn embed(&self, offset: usize, total: usize) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(e, c)| {
                    let mut x: Exp = smallvec::smallvec![0; total];
                    x[offset..offset + e.len()].copy_from_slice(e);
                    (x, c.clone())
                })
                .collect(),
        )
    }

    fn check_rank(&self, rhs: &Self) -> Result<(), Error> {
        match (self.rank(), rhs.rank()) {
            (Some(a), Some(b)) if a != b => Err(Error::RankMismatch {
                expected: a,
                found: b,
            }),
            _ => Ok(()),
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self, Error> {
        self.check_rank(rhs)?;
        Ok(self.add(rhs))
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self, Error> {
        self.check_rank(rhs)?;
        Ok(self.sub(rhs))
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, Error> {
        self.check_rank(rhs)?;
        Ok(self.mul(rhs))
    }
}

impl LaurentPoly<Int> {
    pub fn one(rank: usize) -> Self {
        Self::monomial(crate::ordgroup::zero_exp(rank), Int::ONE)
    }

    pub fn constant(rank: usize, c: Int) -> Self {
        Self::monomial(crate::ordgroup::zero_exp(rank), c)
    }

    /// `ε^e`.
    pub fn eps(e: Exp) -> Self {
        Self::monomial(e, Int::ONE)
    }

    /// Specialization `θ₁: ε^g ↦ 1`.
    pub fn theta1(&self) -> Int {
        let mut s = Int::ZERO;
        for (_, c) in &self.terms {
            s += c;
        }
        s
    }

    /// Exact quotient in `Z[Γ]`, `None` if `rhs` does not divide `self`.
    ///
    /// Long division on leading terms; `Γ` is totally ordered so the
    /// quotient support is bounded below by `min(self) - min(rhs)`.
    pub fn div_exact(&self, rhs: &Self, g: &OrderedGroup) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (lead_e, lead_c) = rhs.leading_term(g)?.clone();
        let floor = crate::ordgroup::exp_sub(
            self.min_exponent(g)?,
            rhs.min_exponent(g)?,
        );
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((e, c)) = rem.leading_term(g).cloned() {
            let qe = crate::ordgroup::exp_sub(&e, &lead_e);
            if g.compare(&qe, &floor) == Ordering::Less {
                return None;
            }
            let qc = c.div_exact(&lead_c)?;
            rem.sub_assign(&rhs.mul_monomial(&qe, &qc));
            quot.push((qe, qc));
        }
        Some(Self::from_terms(quot))
    }
}

impl<C: Coeff> Coeff for LaurentPoly<C> {
    fn coeff_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        self.add_assign(rhs);
    }
    fn sub_assign_ref(&mut self, rhs: &Self) {
        self.sub_assign(rhs);
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
}

impl<C: Coeff + fmt::Display> fmt::Display for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            if e.iter().any(|x| *x != 0) {
                write!(f, "*e^{e:?}")?;
            }
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.terms.iter().map(|(e, c)| (e.as_slice(), c)))
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use smallvec::smallvec;

    fn e1(x: i32) -> Exp {
        smallvec![x]
    }

    #[test]
    fn monomial_product_adds_exponents() {
        let p = Poly::eps(smallvec![1, 2]).mul(&Poly::eps(smallvec![3, -5]));
        assert_eq!(p, Poly::eps(smallvec![4, -3]));
    }

    #[test]
    fn difference_of_squares() {
        let a = 3;
        let plus = Poly::eps(e1(a)).add(&Poly::eps(e1(-a)));
        let minus = Poly::eps(e1(a)).sub(&Poly::eps(e1(-a)));
        assert_eq!(plus.mul(&minus), Poly::eps(e1(2 * a)).sub(&Poly::eps(e1(-2 * a))));
    }

    #[test]
    fn cancellation_gives_empty_map() {
        let p = Poly::from_terms(alloc::vec![(e1(2), Int::from(3)), (e1(-1), Int::from(-7))]);
        assert!(p.add(&p.neg()).is_zero());
        assert!(p.add(&p.neg()).terms().is_empty());
    }

    #[test]
    fn bar_examples() {
        let g: Exp = smallvec![2, -1];
        assert_eq!(Poly::eps(g.clone()).bar(), Poly::eps(exp_neg(&g)));
        let v = Poly::eps(e1(1)).add(&Poly::eps(e1(-1)));
        assert!(v.is_bar_invariant());
    }

    #[test]
    fn split_examples() {
        let z = OrderedGroup::integers();
        // ε^{2a} + 1 with a = 1
        let p = Poly::eps(e1(2)).add(&Poly::one(1));
        let (n, c, q) = p.split_by_sign(&z);
        assert!(n.is_zero());
        assert_eq!(c, Some(Int::ONE));
        assert_eq!(q, Poly::eps(e1(2)));
        let (n, c, q) = Poly::eps(e1(-1)).split_by_sign(&z);
        assert_eq!(n, Poly::eps(e1(-1)));
        assert!(c.is_none() && q.is_zero());
        let (n, c, q) = Poly::zero().split_by_sign(&z);
        assert!(n.is_zero() && c.is_none() && q.is_zero());
    }

    #[test]
    fn min_exponent_examples() {
        let z = OrderedGroup::integers();
        let v = Poly::eps(e1(1)).add(&Poly::eps(e1(-1)));
        assert_eq!(v.min_exponent(&z), Some(&e1(-1)));
        assert_eq!(Poly::one(2).min_exponent(&z), Some(&smallvec![0, 0]));
        assert_eq!(Poly::zero().min_exponent(&z), None);
    }

    #[test]
    fn rank_mismatch_is_an_error() {
        let a = Poly::eps(smallvec![1]);
        let b = Poly::eps(smallvec![1, 0]);
        assert!(a.checked_add(&b).is_err());
        assert!(a.checked_mul(&Poly::zero()).is_ok());
    }

    #[test]
    fn exact_division() {
        let z = OrderedGroup::integers();
        let v = Poly::eps(e1(1)).add(&Poly::eps(e1(-1)));
        let w = Poly::eps(e1(2)).sub(&Poly::one(1)).add(&Poly::eps(e1(-3)));
        let prod = v.mul(&w);
        assert_eq!(prod.div_exact(&v, &z), Some(w.clone()));
        assert_eq!(prod.add(&Poly::one(1)).div_exact(&v, &z), None);
    }
}
