//! Character tables of finite Coxeter groups and decomposition of class
//! functions into irreducibles.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numfield::{NfElem, NumberField};

/// A real-valued character table. Classes are given by a representative
/// word and their size; values lie in a common number field.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub field: Arc<NumberField>,
    pub labels: Vec<String>,
    pub class_words: Vec<Vec<u8>>,
    pub class_sizes: Vec<u64>,
    /// `values[i][c]`: character `i` on class `c`.
    pub values: Vec<Vec<NfElem>>,
}

impl CharacterTable {
    /// Builds and validates a table: class sizes sum to `group_order` and
    /// the rows are orthonormal for the class-size weighted inner product.
    pub fn new(
        field: Arc<NumberField>,
        labels: Vec<String>,
        class_words: Vec<Vec<u8>>,
        class_sizes: Vec<u64>,
        values: Vec<Vec<NfElem>>,
        group_order: usize,
    ) -> Result<Self> {
        let nc = class_words.len();
        if class_sizes.len() != nc || values.len() != labels.len() || values.len() != nc {
            return Err(Error::Input("character table shape is inconsistent".into()));
        }
        if values.iter().any(|r| r.len() != nc) {
            return Err(Error::Input("character table rows have wrong length".into()));
        }
        if class_sizes.iter().sum::<u64>() != group_order as u64 {
            return Err(Error::Input(format!(
                "class sizes sum to {}, expected {group_order}",
                class_sizes.iter().sum::<u64>()
            )));
        }
        let t = Self {
            field,
            labels,
            class_words,
            class_sizes,
            values,
        };
        for i in 0..t.values.len() {
            for j in 0..=i {
                let ip = t.inner_product(&t.values[i], &t.values[j]);
                let expect = if i == j { BigRational::one() } else { BigRational::zero() };
                if ip.as_rational() != Some(&expect) {
                    return Err(Error::Input(format!(
                        "character table is not orthonormal: <{}, {}> = {}",
                        t.labels[i], t.labels[j], ip
                    )));
                }
            }
        }
        Ok(t)
    }

    pub fn group_order(&self) -> u64 {
        self.class_sizes.iter().sum()
    }

    pub fn degree(&self, i: usize) -> i64 {
        // the identity class is the one with the empty word
        let c = self
            .class_words
            .iter()
            .position(|w| w.is_empty())
            .expect("identity class");
        self.values[i][c]
            .as_rational()
            .and_then(|r| r.to_integer().to_i64())
            .expect("degree is an integer")
    }

    /// `(1/|W|) Σ_c |c| χ(c) ψ(c)` for real-valued class functions.
    pub fn inner_product(&self, chi: &[NfElem], psi: &[NfElem]) -> NfElem {
        let mut acc = self.field.zero();
        for ((a, b), &size) in chi.iter().zip(psi).zip(&self.class_sizes) {
            let term = a.mul(b).scale(&BigRational::from_integer(BigInt::from(size)));
            acc = acc.add(&term);
        }
        acc.scale(&BigRational::new(BigInt::one(), BigInt::from(self.group_order())))
    }

    /// Multiplicities of the irreducibles in the class function `chi`.
    pub fn decompose(&self, chi: &[NfElem]) -> Result<Vec<i64>> {
        self.values
            .iter()
            .zip(&self.labels)
            .map(|(row, label)| {
                let ip = self.inner_product(chi, row);
                ip.as_rational()
                    .filter(|r| r.is_integer())
                    .and_then(|r| r.to_integer().to_i64())
                    .ok_or_else(|| {
                        Error::Consistency(format!("multiplicity of {label} is not an integer: {ip}"))
                    })
            })
            .collect()
    }

    pub fn decompose_integer(&self, chi: &[i64]) -> Result<Vec<i64>> {
        let v: Vec<NfElem> = chi.iter().map(|&x| self.field.from_int(x)).collect();
        self.decompose(&v)
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Built-in table of `I2(m)` with generators `s1 = 0`, `s2 = 1`.
    ///
    /// Rotations `(s1 s2)^k` take the value `2cos(2πjk/m)` on `ρ_j` and all
    /// reflections take the value 0. For even `m`, `ε_1` sends `s1 ↦ 1`,
    /// `s2 ↦ -1` and `ε_2` the reverse.
    pub fn dihedral(m: u32) -> Result<Self> {
        if m < 3 {
            return Err(Error::Input("dihedral character table needs m >= 3".into()));
        }
        let field = NumberField::real_cyclotomic(m);
        let even = m.is_multiple_of(2);
        let mut class_words: Vec<Vec<u8>> = Vec::new();
        let mut class_sizes: Vec<u64> = Vec::new();
        for k in 0..=m / 2 {
            class_words.push((0..2 * k).map(|i| (i % 2) as u8).collect());
            class_sizes.push(if k == 0 || (even && k == m / 2) { 1 } else { 2 });
        }
        let rot = class_words.len();
        if even {
            class_words.push(vec![0]);
            class_sizes.push(m as u64 / 2);
            class_words.push(vec![1]);
            class_sizes.push(m as u64 / 2);
        } else {
            class_words.push(vec![0]);
            class_sizes.push(m as u64);
        }
        let int = |x: i64| field.from_int(x);
        let mut labels: Vec<String> = Vec::new();
        let mut values: Vec<Vec<NfElem>> = Vec::new();
        let linear = |r: i64, a: i64, b: i64| -> Vec<NfElem> {
            let mut row: Vec<NfElem> = (0..rot).map(|k| int(r.pow(k as u32))).collect();
            row.push(int(a));
            if even {
                row.push(int(b));
            }
            row
        };
        labels.push("1_W".into());
        values.push(linear(1, 1, 1));
        if even {
            labels.push("eps_1".into());
            values.push(linear(-1, 1, -1));
        }
        let top = if even { (m - 2) / 2 } else { (m - 1) / 2 };
        for j in 1..=top {
            labels.push(format!("rho_{j}"));
            let mut row: Vec<NfElem> = (0..rot)
                .map(|k| field.two_cos(j as i64 * k as i64))
                .collect();
            row.push(field.zero());
            if even {
                row.push(field.zero());
            }
            values.push(row);
        }
        if even {
            labels.push("eps_2".into());
            values.push(linear(-1, -1, 1));
        }
        labels.push("eps".into());
        values.push(linear(1, -1, -1));
        Self::new(field, labels, class_words, class_sizes, values, 2 * m as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dihedral_tables_are_orthonormal() {
        for m in 3..=13 {
            let t = CharacterTable::dihedral(m).unwrap();
            let sq: i64 = (0..t.labels.len()).map(|i| t.degree(i).pow(2)).sum();
            assert_eq!(sq, 2 * m as i64);
        }
    }

    #[test]
    fn corrupted_table_is_rejected() {
        let t = CharacterTable::dihedral(4).unwrap();
        let mut values = t.values.clone();
        values[1][0] = t.field.from_int(2);
        let r = CharacterTable::new(
            t.field.clone(),
            t.labels.clone(),
            t.class_words.clone(),
            t.class_sizes.clone(),
            values,
            8,
        );
        assert!(matches!(r, Err(Error::Input(_))));
    }

    #[test]
    fn regular_character_decomposes_by_degrees() {
        let t = CharacterTable::dihedral(6).unwrap();
        let reg: Vec<i64> = t.class_words.iter().map(|w| if w.is_empty() { 12 } else { 0 }).collect();
        let mult = t.decompose_integer(&reg).unwrap();
        for (i, m) in mult.iter().enumerate() {
            assert_eq!(*m, t.degree(i));
        }
    }
}
