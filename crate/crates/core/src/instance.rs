//! A concrete `(W, L, ≤)`: a finite Coxeter group, an ordered group `Γ`
//! and a weight function.

use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::coxeter::{CoxeterGroup, CoxeterMatrix};
use crate::error::{Error, Result};
use crate::ordgroup::{exp_neg, Exp, OrderedGroup};
use crate::poly::Poly;

/// `L(s) ∈ Γ_{>0}` for each generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightFunction {
    values: Vec<Exp>,
}

impl WeightFunction {
    pub fn new(values: Vec<Exp>) -> Self {
        Self { values }
    }

    /// `L(s) = 1 ∈ Z` for all generators.
    pub fn equal(rank: usize) -> Self {
        Self {
            values: (0..rank).map(|_| smallvec::smallvec![1]).collect(),
        }
    }

    /// Weights in `Γ = Z`.
    pub fn integers(values: &[i32]) -> Self {
        Self {
            values: values.iter().map(|&x| smallvec::smallvec![x]).collect(),
        }
    }

    pub fn get(&self, s: usize) -> &Exp {
        &self.values[s]
    }

    pub fn values(&self) -> &[Exp] {
        &self.values
    }

    /// `L(w)` for a reduced word.
    pub fn of_word(&self, word: &[u8], rank: usize) -> Exp {
        let mut e: Exp = smallvec::smallvec![0; rank];
        for &a in word {
            for (x, y) in e.iter_mut().zip(&self.values[a as usize]) {
                *x += y;
            }
        }
        e
    }
}

/// Everything needed to compute in the generic Iwahori–Hecke algebra.
#[derive(Clone, Debug)]
pub struct Instance {
    group: CoxeterGroup,
    gamma: OrderedGroup,
    weights: WeightFunction,
    v: Vec<Poly>,
    v_inv: Vec<Poly>,
    v_diff: Vec<Poly>,
    v_sum: Vec<Poly>,
}

impl Instance {
    pub fn new(group: CoxeterGroup, gamma: OrderedGroup, weights: WeightFunction) -> Result<Self> {
        let n = group.rank();
        if weights.values.len() != n {
            return Err(Error::Input(format!(
                "weight function has {} values for {} generators",
                weights.values.len(),
                n
            )));
        }
        for (s, l) in weights.values.iter().enumerate() {
            if l.len() != gamma.rank() {
                return Err(Error::RankMismatch {
                    expected: gamma.rank(),
                    found: l.len(),
                });
            }
            if gamma.sign(l) != Ordering::Greater {
                return Err(Error::Input(format!("L(s{}) must be positive", s + 1)));
            }
        }
        for s in 0..n {
            for t in s + 1..n {
                if group.generator_class(s) == group.generator_class(t)
                    && weights.values[s] != weights.values[t]
                {
                    return Err(Error::Input(format!(
                        "s{} and s{} are conjugate but have different weights",
                        s + 1,
                        t + 1
                    )));
                }
            }
        }
        let v: Vec<Poly> = weights.values.iter().map(|l| Poly::eps(l.clone())).collect();
        let v_inv: Vec<Poly> = weights.values.iter().map(|l| Poly::eps(exp_neg(l))).collect();
        let v_diff = v.iter().zip(&v_inv).map(|(a, b)| a.sub(b)).collect();
        let v_sum = v.iter().zip(&v_inv).map(|(a, b)| a.add(b)).collect();
        Ok(Self {
            group,
            gamma,
            weights,
            v,
            v_inv,
            v_diff,
            v_sum,
        })
    }

    /// Equal parameters `L(s) = 1` over `Γ = Z`.
    pub fn equal_parameters(matrix: CoxeterMatrix) -> Result<Self> {
        let n = matrix.rank();
        Self::new(
            CoxeterGroup::new(matrix)?,
            OrderedGroup::integers(),
            WeightFunction::equal(n),
        )
    }

    pub fn group(&self) -> &CoxeterGroup {
        &self.group
    }

    pub fn gamma(&self) -> &OrderedGroup {
        &self.gamma
    }

    pub fn weights(&self) -> &WeightFunction {
        &self.weights
    }

    /// Rank `k` of `Γ = Z^k`.
    pub fn gamma_rank(&self) -> usize {
        self.gamma.rank()
    }

    pub fn size(&self) -> usize {
        self.group.size()
    }

    /// `v_s = ε^{L(s)}`.
    pub fn v(&self, s: usize) -> &Poly {
        &self.v[s]
    }

    pub fn v_inv(&self, s: usize) -> &Poly {
        &self.v_inv[s]
    }

    /// `v_s - v_s^{-1}`.
    pub fn v_diff(&self, s: usize) -> &Poly {
        &self.v_diff[s]
    }

    /// `v_s + v_s^{-1}`.
    pub fn v_sum(&self, s: usize) -> &Poly {
        &self.v_sum[s]
    }

    pub fn one(&self) -> Poly {
        Poly::one(self.gamma.rank())
    }

    /// Same group and weights, with the weights and order doubled into
    /// `Γ ⊕ Γ` and the weights placed in block `block` (0 or 1).
    pub fn doubled(&self, block: usize) -> Result<Self> {
        let k = self.gamma.rank();
        let mut rows = Vec::with_capacity(2 * k);
        for b in 0..2 {
            for row in self.gamma.weights() {
                let mut r = alloc::vec![num_rational::Ratio::from_integer(0); 2 * k];
                r[b * k..(b + 1) * k].clone_from_slice(row);
                rows.push(r);
            }
        }
        let gamma = OrderedGroup::new(rows)?;
        let weights = WeightFunction::new(
            self.weights
                .values
                .iter()
                .map(|l| {
                    let mut e: Exp = smallvec::smallvec![0; 2 * k];
                    e[block * k..(block + 1) * k].copy_from_slice(l);
                    e
                })
                .collect(),
        );
        Self::new(self.group.clone(), gamma, weights)
    }
}
