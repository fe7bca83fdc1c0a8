//! Free abelian groups `Z^k` with a monomial order.
//!
//! An order is given by a full-rank rational weight matrix; exponent vectors
//! are compared lexicographically by their images under the rows.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::Zero;
use smallvec::SmallVec;

use crate::error::Error;

/// Exponent vector of a monomial `ε^g`, `g ∈ Z^k`.
pub type Exp = SmallVec<[i32; 4]>;

pub fn zero_exp(rank: usize) -> Exp {
    smallvec::smallvec![0; rank]
}

pub fn exp_add(a: &[i32], b: &[i32]) -> Exp {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn exp_sub(a: &[i32], b: &[i32]) -> Exp {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn exp_neg(a: &[i32]) -> Exp {
    a.iter().map(|x| -x).collect()
}

pub fn exp_scale(a: &[i32], k: i32) -> Exp {
    a.iter().map(|x| x * k).collect()
}

/// `Γ = Z^k` together with a compatible total order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedGroup {
    rank: usize,
    weights: Vec<Vec<Ratio<i64>>>,
    // Rows scaled by a positive integer; lexicographic signs are unchanged.
    int_rows: Vec<Vec<i64>>,
}

impl OrderedGroup {
    /// `Γ = Z` with its natural order.
    pub fn integers() -> Self {
        Self::new(alloc::vec![alloc::vec![Ratio::from_integer(1)]]).expect("1x1 identity")
    }

    /// Pure lexicographic order on `Z^k` by coordinates `order[0]`, `order[1]`, ...
    pub fn lex(rank: usize, order: &[usize]) -> Result<Self, Error> {
        let rows = order
            .iter()
            .map(|&i| {
                (0..rank)
                    .map(|j| Ratio::from_integer(i64::from(i == j)))
                    .collect()
            })
            .collect();
        Self::new(rows)
    }

    pub fn from_integer_weights(rows: &[Vec<i64>]) -> Result<Self, Error> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| Ratio::from_integer(x)).collect())
                .collect(),
        )
    }

    pub fn new(weights: Vec<Vec<Ratio<i64>>>) -> Result<Self, Error> {
        let rank = weights.len();
        if rank == 0 {
            return Err(Error::Input("monomial order needs rank >= 1".into()));
        }
        if weights.iter().any(|r| r.len() != rank) {
            return Err(Error::Input("weight matrix must be square".into()));
        }
        if rational_rank(&weights) != rank {
            return Err(Error::Input(
                "weight matrix is singular; it does not define a total order".into(),
            ));
        }
        let int_rows = weights
            .iter()
            .map(|row| {
                let l = row.iter().fold(1i64, |acc, q| acc.lcm(q.denom()));
                row.iter().map(|q| q.numer() * (l / q.denom())).collect()
            })
            .collect();
        Ok(Self {
            rank,
            weights,
            int_rows,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn weights(&self) -> &[Vec<Ratio<i64>>] {
        &self.weights
    }

    pub fn zero(&self) -> Exp {
        zero_exp(self.rank)
    }

    /// Lexicographic comparison of `(w_i · g)` against `(w_i · h)`.
    pub fn compare(&self, g: &[i32], h: &[i32]) -> Ordering {
        debug_assert_eq!(g.len(), self.rank);
        debug_assert_eq!(h.len(), self.rank);
        for row in &self.int_rows {
            let d: i128 = row
                .iter()
                .zip(g.iter().zip(h))
                .map(|(w, (a, b))| *w as i128 * (*a as i128 - *b as i128))
                .sum();
            match d.cmp(&0) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }

    pub fn try_compare(&self, g: &[i32], h: &[i32]) -> Result<Ordering, Error> {
        if g.len() != self.rank || h.len() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: if g.len() != self.rank { g.len() } else { h.len() },
            });
        }
        Ok(self.compare(g, h))
    }

    /// Sign of `g` relative to `0`.
    pub fn sign(&self, g: &[i32]) -> Ordering {
        for row in &self.int_rows {
            let d: i128 = row.iter().zip(g).map(|(w, a)| *w as i128 * *a as i128).sum();
            match d.cmp(&0) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }

    pub fn is_positive(&self, g: &[i32]) -> bool {
        self.sign(g) == Ordering::Greater
    }

    pub fn is_nonnegative(&self, g: &[i32]) -> bool {
        self.sign(g) != Ordering::Less
    }

    pub fn max<'a>(&self, g: &'a Exp, h: &'a Exp) -> &'a Exp {
        if self.compare(g, h) == Ordering::Less {
            h
        } else {
            g
        }
    }
}

fn rational_rank(rows: &[Vec<Ratio<i64>>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|q| BigRational::new(BigInt::from(*q.numer()), BigInt::from(*q.denom())))
                .collect()
        })
        .collect();
    let (n, cols) = (m.len(), m.first().map_or(0, |r| r.len()));
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..n).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in 0..n {
            if r != rank && !m[r][c].is_zero() {
                let f = &m[r][c] / &m[rank][c];
                for k in c..cols {
                    let t = &f * &m[rank][k];
                    m[r][k] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use smallvec::smallvec;

    #[test]
    fn rank_two_lex_makes_b_dominate() {
        // b = (0,1), a = (1,0); compare the second coordinate first.
        let g = OrderedGroup::from_integer_weights(&[alloc::vec![0, 1], alloc::vec![1, 0]]).unwrap();
        let five_a: Exp = smallvec![5, 0];
        let b: Exp = smallvec![0, 1];
        assert_eq!(g.compare(&five_a, &b), Ordering::Less);
        assert_eq!(g.compare(&b, &b), Ordering::Equal);
    }

    #[test]
    fn integer_order() {
        let g = OrderedGroup::integers();
        assert_eq!(g.compare(&[3], &[2]), Ordering::Greater);
        assert!(g.try_compare(&[3, 1], &[2]).is_err());
    }

    #[test]
    fn singular_weights_rejected() {
        assert!(OrderedGroup::from_integer_weights(&[alloc::vec![1, 2], alloc::vec![2, 4]]).is_err());
        let q = OrderedGroup::new(alloc::vec![
            alloc::vec![Ratio::new(1, 2), Ratio::new(1, 3)],
            alloc::vec![Ratio::new(0, 1), Ratio::new(1, 1)],
        ])
        .unwrap();
        assert_eq!(q.compare(&[2, -3], &[0, 0]), Ordering::Less);
    }
}
