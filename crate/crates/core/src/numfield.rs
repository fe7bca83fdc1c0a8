//! Exact arithmetic in real cyclotomic fields `Q(2cos(2π/N))`.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::poly::Coeff;

/// Dense polynomial over `Q`, coefficients from low to high degree.
pub type QPoly = Vec<BigRational>;

fn trim(p: &mut QPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn qpoly_mul(a: &[BigRational], b: &[BigRational]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn qpoly_sub(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
        let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
        out.push(x - y);
    }
    trim(&mut out);
    out
}

/// Division with remainder; `b` must be nonzero.
fn qpoly_divrem(a: &[BigRational], b: &[BigRational]) -> (QPoly, QPoly) {
    let mut r: QPoly = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = &b[db];
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let c = &r[r.len() - 1] / lead;
        for (i, bi) in b.iter().enumerate() {
            r[k + i] -= &c * bi;
        }
        q[k] = c;
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

/// Integer cyclotomic polynomial `Φ_n`.
pub fn cyclotomic(n: u32) -> QPoly {
    assert!(n >= 1);
    let mut num: QPoly = vec![BigRational::zero(); n as usize + 1];
    num[0] = -BigRational::one();
    num[n as usize] = BigRational::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let (q, r) = qpoly_divrem(&num, &cyclotomic(d));
            debug_assert!(r.is_empty());
            num = q;
        }
    }
    num
}

/// The field `Q(2cos(2π/N))`, realized as `Q[x]/(ψ_N)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumberField {
    conductor: u32,
    /// Monic minimal polynomial of the generator, low degree first.
    minpoly: QPoly,
}

impl NumberField {
    pub fn rationals() -> Arc<Self> {
        Self::real_cyclotomic(1)
    }

    /// `Q(2cos(2π/N))` with primitive element `x = 2cos(2π/N)`.
    pub fn real_cyclotomic(n: u32) -> Arc<Self> {
        let n = n.max(1);
        let minpoly = if n <= 2 {
            // 2cos(0) = 2, 2cos(π) = -2
            let r = if n == 1 { -2 } else { 2 };
            vec![BigRational::from_integer(r.into()), BigRational::one()]
        } else {
            let phi = cyclotomic(n);
            let d = (phi.len() - 1) / 2;
            // z^{-d} Φ(z) = a_d + Σ a_{d+j} (z^j + z^{-j})
            let x: QPoly = vec![BigRational::zero(), BigRational::one()];
            let mut cheb: Vec<QPoly> = vec![vec![BigRational::from_integer(2.into())], x.clone()];
            for j in 2..=d {
                let next = qpoly_sub(&qpoly_mul(&x, &cheb[j - 1]), &cheb[j - 2]);
                cheb.push(next);
            }
            let mut out: QPoly = vec![phi[d].clone()];
            for j in 1..=d {
                let term: QPoly = cheb[j].iter().map(|c| c * &phi[d + j]).collect();
                let n = out.len().max(term.len());
                out.resize(n, BigRational::zero());
                for (i, t) in term.into_iter().enumerate() {
                    out[i] += t;
                }
            }
            trim(&mut out);
            out
        };
        Arc::new(Self {
            conductor: n,
            minpoly,
        })
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    pub fn minpoly(&self) -> &[BigRational] {
        &self.minpoly
    }

    fn reduce(&self, mut p: QPoly) -> Vec<BigRational> {
        trim(&mut p);
        if p.len() > self.degree() {
            p = qpoly_divrem(&p, &self.minpoly).1;
        }
        p.resize(self.degree(), BigRational::zero());
        p
    }

    pub fn zero(self: &Arc<Self>) -> NfElem {
        NfElem {
            field: self.clone(),
            c: vec![BigRational::zero(); self.degree()],
        }
    }

    pub fn from_rational(self: &Arc<Self>, r: BigRational) -> NfElem {
        let mut e = self.zero();
        e.c[0] = r;
        e
    }

    pub fn from_int(self: &Arc<Self>, n: i64) -> NfElem {
        self.from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn one(self: &Arc<Self>) -> NfElem {
        self.from_int(1)
    }

    /// Element with the given power-basis coordinates.
    pub fn from_coords(self: &Arc<Self>, coords: Vec<BigRational>) -> NfElem {
        NfElem {
            field: self.clone(),
            c: self.reduce(coords),
        }
    }

    /// The primitive element `2cos(2π/N)`.
    pub fn generator(self: &Arc<Self>) -> NfElem {
        self.from_coords(vec![BigRational::zero(), BigRational::one()])
    }

    /// `2cos(2πj/N)` for any integer `j`.
    pub fn two_cos(self: &Arc<Self>, j: i64) -> NfElem {
        let n = self.conductor as i64;
        let j = j.rem_euclid(n) as usize;
        let x = self.generator();
        let mut prev = self.from_int(2);
        let mut cur = x.clone();
        if j == 0 {
            return prev;
        }
        for _ in 1..j {
            let next = x.mul_ref(&cur).sub(&prev);
            prev = cur;
            cur = next;
        }
        cur
    }
}

/// Element of a [`NumberField`], stored in the power basis.
#[derive(Clone)]
pub struct NfElem {
    field: Arc<NumberField>,
    c: Vec<BigRational>,
}

impl NfElem {
    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(|x| x.is_zero())
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.c[1..].iter().all(|x| x.is_zero()).then(|| &self.c[0])
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self {
            field: self.field.clone(),
            c: self.c.iter().zip(&rhs.c).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self {
            field: self.field.clone(),
            c: self.c.iter().zip(&rhs.c).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            field: self.field.clone(),
            c: self.c.iter().map(|a| -a).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.field.degree() == 1 {
            return Self {
                field: self.field.clone(),
                c: vec![&self.c[0] * &rhs.c[0]],
            };
        }
        Self {
            field: self.field.clone(),
            c: self.field.reduce(qpoly_mul(&self.c, &rhs.c)),
        }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self {
            field: self.field.clone(),
            c: self.c.iter().map(|a| a * r).collect(),
        }
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.field.degree() == 1 {
            return Some(Self {
                field: self.field.clone(),
                c: vec![self.c[0].recip()],
            });
        }
        let mut a: QPoly = self.c.clone();
        trim(&mut a);
        let mut b: QPoly = self.field.minpoly.clone();
        // invariant: s·self ≡ a, t·self ≡ b (mod minpoly)
        let mut s: QPoly = vec![BigRational::one()];
        let mut t: QPoly = Vec::new();
        while !b.is_empty() {
            let (q, r) = qpoly_divrem(&a, &b);
            let ns = qpoly_sub(&s, &qpoly_mul(&q, &t));
            a = b;
            b = r;
            s = t;
            t = ns;
        }
        // a is a nonzero constant since the minimal polynomial is irreducible
        if a.len() != 1 {
            return None;
        }
        let k = a[0].recip();
        let s: QPoly = s.into_iter().map(|x| x * &k).collect();
        Some(Self {
            field: self.field.clone(),
            c: self.field.reduce(s),
        })
    }

    /// Floating-point value under the embedding `x ↦ 2cos(2π/N)`. Used for
    /// display and test sanity checks only.
    pub fn approx(&self) -> f64 {
        let x = 2.0 * libm_cos(2.0 * core::f64::consts::PI / self.field.conductor as f64);
        let mut acc = 0.0;
        let mut pw = 1.0;
        for c in &self.c {
            acc += rat_to_f64(c) * pw;
            pw *= x;
        }
        acc
    }
}

fn rat_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

// Taylor series is adequate for display purposes and avoids a libm
// dependency in `no_std` builds.
fn libm_cos(x: f64) -> f64 {
    let x = x % (2.0 * core::f64::consts::PI);
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..30 {
        term *= -x * x / ((2 * k - 1) as f64 * (2 * k) as f64);
        sum += term;
    }
    sum
}

impl PartialEq for NfElem {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c
    }
}

impl Eq for NfElem {}

impl Hash for NfElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.c.hash(state);
    }
}

impl fmt::Debug for NfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for NfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, "{}", if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            first = false;
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                1 if a.is_one() => write!(f, "x")?,
                1 => write!(f, "{a}*x")?,
                _ if a.is_one() => write!(f, "x^{i}")?,
                _ => write!(f, "{a}*x^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Coeff for NfElem {
    fn coeff_is_zero(&self) -> bool {
        NfElem::is_zero(self)
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        for (a, b) in self.c.iter_mut().zip(&rhs.c) {
            *a += b;
        }
    }
    fn sub_assign_ref(&mut self, rhs: &Self) {
        for (a, b) in self.c.iter_mut().zip(&rhs.c) {
            *a -= b;
        }
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
}

impl Coeff for BigRational {
    fn coeff_is_zero(&self) -> bool {
        Zero::is_zero(self)
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
