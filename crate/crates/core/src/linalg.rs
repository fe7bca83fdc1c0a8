//! Exact dense linear algebra over fields, `Z` and `Z[Γ]`.

use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::int::Int;
use crate::numfield::NfElem;
use crate::ordgroup::OrderedGroup;
use crate::poly::{Coeff, Poly};

pub type Matrix<C> = Vec<Vec<C>>;

/// A coefficient domain with division. Constants are produced from an
/// existing element so that number-field elements can carry their field.
pub trait Field: Coeff {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn inv(&self) -> Option<Self>;
}

impl Field for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
}

impl Field for NfElem {
    fn zero_like(&self) -> Self {
        self.field().zero()
    }
    fn one_like(&self) -> Self {
        self.field().one()
    }
    fn inv(&self) -> Option<Self> {
        NfElem::inv(self)
    }
}

fn check_square<C>(m: &[Vec<C>]) -> Result<usize> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::Input("matrix is not square".into()));
    }
    Ok(n)
}

/// Gauss–Jordan inverse, pivoting on the first nonzero entry of each column.
pub fn inverse<F: Field>(m: &[Vec<F>]) -> Result<Matrix<F>> {
    let n = check_square(m)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let zero = m[0][0].zero_like();
    let one = m[0][0].one_like();
    let mut a: Matrix<F> = m.to_vec();
    let mut inv: Matrix<F> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { one.clone() } else { zero.clone() }).collect())
        .collect();
    for c in 0..n {
        let p = (c..n)
            .find(|&r| !a[r][c].coeff_is_zero())
            .ok_or_else(|| Error::Singular("matrix is singular".into()))?;
        a.swap(c, p);
        inv.swap(c, p);
        let f = a[c][c].inv().expect("nonzero pivot");
        for j in 0..n {
            a[c][j] = a[c][j].mul_ref(&f);
            inv[c][j] = inv[c][j].mul_ref(&f);
        }
        for r in 0..n {
            if r == c || a[r][c].coeff_is_zero() {
                continue;
            }
            let k = a[r][c].clone();
            for j in 0..n {
                let t = k.mul_ref(&a[c][j]);
                a[r][j].sub_assign_ref(&t);
                let t = k.mul_ref(&inv[c][j]);
                inv[r][j].sub_assign_ref(&t);
            }
        }
    }
    Ok(inv)
}

pub fn det<F: Field>(m: &[Vec<F>]) -> Result<F> {
    let n = check_square(m)?;
    let Some(first) = m.first().and_then(|r| r.first()) else {
        return Err(Error::Input("determinant of an empty matrix".into()));
    };
    let mut a: Matrix<F> = m.to_vec();
    let mut d = first.one_like();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].coeff_is_zero()) else {
            return Ok(first.zero_like());
        };
        if p != c {
            a.swap(c, p);
            d = d.neg_ref();
        }
        d = d.mul_ref(&a[c][c]);
        let f = a[c][c].inv().expect("nonzero pivot");
        for r in c + 1..n {
            if a[r][c].coeff_is_zero() {
                continue;
            }
            let k = a[r][c].mul_ref(&f);
            for j in c..n {
                let t = k.mul_ref(&a[c][j]);
                a[r][j].sub_assign_ref(&t);
            }
        }
    }
    Ok(d)
}

/// Fraction-free elimination on `[A | B]`: returns `(d, X)` with
/// `A X = d B` and `d = ±det A`, all entries integral.
pub fn bareiss_solve(a: &[Vec<Int>], b: &[Vec<Int>]) -> Result<(Int, Matrix<Int>)> {
    let n = check_square(a)?;
    if b.len() != n {
        return Err(Error::Input("right-hand side has the wrong number of rows".into()));
    }
    let k = b.first().map_or(0, |r| r.len());
    let mut m: Matrix<Int> = a
        .iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().chain(rb).cloned().collect())
        .collect();
    let w = n + k;
    let mut prev = Int::ONE;
    for c in 0..n {
        let p = (c..n)
            .find(|&r| !m[r][c].is_zero())
            .ok_or_else(|| Error::Singular("matrix is singular".into()))?;
        m.swap(c, p);
        for r in c + 1..n {
            for j in c + 1..w {
                let t = &(&m[c][c] * &m[r][j]) - &(&m[r][c] * &m[c][j]);
                m[r][j] = t.div_exact(&prev).expect("Bareiss division is exact");
            }
            m[r][c] = Int::ZERO;
        }
        prev = m[c][c].clone();
    }
    let d = prev;
    let mut x = vec![vec![Int::ZERO; k]; n];
    for j in 0..k {
        for i in (0..n).rev() {
            let mut acc = &d * &m[i][n + j];
            for t in i + 1..n {
                if !m[i][t].is_zero() {
                    acc -= &(&m[i][t] * &x[t][j]);
                }
            }
            x[i][j] = acc.div_exact(&m[i][i]).expect("back substitution is exact");
        }
    }
    Ok((d, x))
}

/// Bareiss determinant over `Z`.
pub fn det_int(a: &[Vec<Int>]) -> Result<Int> {
    let n = check_square(a)?;
    let mut m: Matrix<Int> = a.to_vec();
    let mut sign = false;
    let mut prev = Int::ONE;
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Ok(Int::ZERO);
        };
        if p != c {
            m.swap(c, p);
            sign = !sign;
        }
        for r in c + 1..n {
            for j in c + 1..n {
                let t = &(&m[c][c] * &m[r][j]) - &(&m[r][c] * &m[c][j]);
                m[r][j] = t.div_exact(&prev).expect("Bareiss division is exact");
            }
            m[r][c] = Int::ZERO;
        }
        prev = m[c][c].clone();
    }
    Ok(if sign { -prev } else { prev })
}

/// Bareiss determinant over the integral domain `Z[Γ]`.
pub fn det_poly(a: &[Vec<Poly>], g: &OrderedGroup, rank: usize) -> Result<Poly> {
    let n = check_square(a)?;
    let mut m: Matrix<Poly> = a.to_vec();
    let mut sign = false;
    let mut prev = Poly::one(rank);
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Ok(Poly::zero());
        };
        if p != c {
            m.swap(c, p);
            sign = !sign;
        }
        for r in c + 1..n {
            for j in c + 1..n {
                let t = m[c][c].mul(&m[r][j]).sub(&m[r][c].mul(&m[c][j]));
                m[r][j] = t
                    .div_exact(&prev, g)
                    .ok_or_else(|| Error::Consistency("inexact Bareiss step".into()))?;
            }
            m[r][c] = Poly::zero();
        }
        prev = m[c][c].clone();
    }
    if n == 0 {
        return Ok(prev);
    }
    Ok(if sign { prev.neg() } else { prev })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(a: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(a))
    }

    fn ints(rows: &[&[i64]]) -> Matrix<Int> {
        rows.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect()
    }

    #[test]
    fn rational_inverse_and_det() {
        let m: Matrix<BigRational> = vec![vec![q(0), q(2), q(1)], vec![q(1), q(1), q(0)], vec![q(3), q(0), q(1)]];
        let inv = inverse(&m).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let s = (0..3).fold(q(0), |acc, k| acc + &m[i][k] * &inv[k][j]);
                assert_eq!(s, q(i64::from(i == j)));
            }
        }
        assert_eq!(det(&m).unwrap(), q(-5));
        let sing: Matrix<BigRational> = vec![vec![q(1), q(2)], vec![q(2), q(4)]];
        assert!(matches!(inverse(&sing), Err(Error::Singular(_))));
    }

    #[test]
    fn bareiss_matches_cramer() {
        let a = ints(&[&[0, 2, 1], &[1, 1, 0], &[3, 0, 1]]);
        let b = ints(&[&[1, 0], &[0, 1], &[0, 0]]);
        let (d, x) = bareiss_solve(&a, &b).unwrap();
        assert_eq!(d.abs(), Int::from(5));
        for i in 0..3 {
            for j in 0..2 {
                let s = (0..3).fold(Int::ZERO, |acc, k| acc + &a[i][k] * &x[k][j]);
                assert_eq!(s, &d * &b[i][j]);
            }
        }
        assert_eq!(det_int(&a).unwrap(), Int::from(-5));
        assert_eq!(det_int(&ints(&[&[0, 1], &[1, 0]])).unwrap(), Int::from(-1));
    }
}
