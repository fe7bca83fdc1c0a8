//! The a-function, `Δ`, `n_z`, the distinguished set `𝒟`, the structure
//! constants `γ` and Lusztig's ring `J`.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::coxeter::Elem;
use crate::error::{Error, Result};
use crate::hecke::{structure_column, HTable, KlTable, Row};
use crate::instance::Instance;
use crate::int::Int;
use crate::ordgroup::{exp_neg, Exp};
use crate::poly::{Coeff, Poly};

/// Something that yields the columns `x ↦ (z ↦ h_{x,y,z})` for fixed `y`.
pub trait StructureSource: Sync {
    fn column(&self, y: Elem) -> Vec<Row>;
}

impl StructureSource for HTable {
    fn column(&self, y: Elem) -> Vec<Row> {
        (0..self.size() as u32).map(|x| self.row(Elem(x), y).clone()).collect()
    }
}

/// Recomputes columns on demand instead of holding the `|W|²` table.
pub struct OnDemand<'a> {
    pub inst: &'a Instance,
    pub kl: &'a KlTable,
}

impl StructureSource for OnDemand<'_> {
    fn column(&self, y: Elem) -> Vec<Row> {
        structure_column(self.inst, self.kl, y)
    }
}

fn map_columns<T: Send>(n: usize, f: impl Fn(Elem) -> T + Sync + Send) -> Vec<T> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..n as u32).into_par_iter().map(|y| f(Elem(y))).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n as u32).map(|y| f(Elem(y))).collect()
    }
}

/// Owned contents of a [`JData`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JDataParts {
    pub a: Vec<Exp>,
    pub delta: Vec<Exp>,
    pub n: Vec<Int>,
    pub inverse: Vec<u32>,
    /// `prod[x·|W| + y]` as in [`JData::product_row`].
    pub prod: Vec<Vec<(u32, Int)>>,
}

/// Integer skeleton of the asymptotic ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JData {
    size: usize,
    a: Vec<Exp>,
    delta: Vec<Exp>,
    n: Vec<Int>,
    distinguished: Vec<Elem>,
    inverse: Vec<u32>,
    /// `prod[x·|W| + y]`: sparse `z ↦ γ_{x,y,z^{-1}}`, the coefficient of
    /// `t_z` in `t_x t_y`.
    prod: Vec<Vec<(u32, Int)>>,
}

impl JData {
    pub fn from_htable(inst: &Instance, kl: &KlTable, h: &HTable) -> Result<Self> {
        Self::compute(inst, kl, h)
    }

    /// Two passes over the columns: the first finds `a`, the second reads
    /// off `γ`. Only per-column aggregates are retained.
    pub fn compute(inst: &Instance, kl: &KlTable, src: &dyn StructureSource) -> Result<Self> {
        let g = inst.group();
        let gamma = inst.gamma();
        let n = inst.size();
        // pass 1: the order-minimal exponent in each z-column
        let mins: Vec<Vec<Option<Exp>>> = map_columns(n, |y| {
            let mut m: Vec<Option<Exp>> = vec![None; n];
            for row in src.column(y) {
                for (z, p) in row {
                    let e = p.min_exponent(gamma).expect("nonzero");
                    let slot = &mut m[z as usize];
                    if slot.as_ref().is_none_or(|c| gamma.compare(e, c) == Ordering::Less) {
                        *slot = Some(e.clone());
                    }
                }
            }
            m
        });
        let mut a: Vec<Exp> = Vec::with_capacity(n);
        for z in 0..n {
            let mut best: Option<&Exp> = None;
            for col in &mins {
                if let Some(e) = &col[z] {
                    if best.is_none_or(|b| gamma.compare(e, b) == Ordering::Less) {
                        best = Some(e);
                    }
                }
            }
            let best = best.ok_or_else(|| {
                Error::Consistency(alloc::format!("column {z} of the structure table is empty"))
            })?;
            let az = exp_neg(best);
            if gamma.sign(&az) == Ordering::Less {
                return Err(Error::Consistency(alloc::format!(
                    "a({}) would be negative",
                    g.word_string(Elem(z as u32))
                )));
            }
            a.push(az);
        }
        // pass 2: γ_{x,y,z^{-1}} is the coefficient of ε^{-a(z)} in h_{x,y,z}
        let cols: Vec<Vec<Vec<(u32, Int)>>> = map_columns(n, |y| {
            src.column(y)
                .into_iter()
                .map(|row| {
                    row.into_iter()
                        .filter_map(|(z, p)| {
                            let e = exp_neg(&a[z as usize]);
                            p.coeff(&e).map(|c| (z, c.clone()))
                        })
                        .collect()
                })
                .collect()
        });
        let mut prod = vec![Vec::new(); n * n];
        for (y, col) in cols.into_iter().enumerate() {
            for (x, row) in col.into_iter().enumerate() {
                prod[x * n + y] = row;
            }
        }
        let mut delta = Vec::with_capacity(n);
        let mut nz = Vec::with_capacity(n);
        for z in g.elements() {
            let p = kl.p(Elem::IDENTITY, z).filter(|p| !p.is_zero()).ok_or_else(|| {
                Error::Consistency(alloc::format!("p_{{1,{}}} vanishes", g.word_string(z)))
            })?;
            let (e, c) = p.leading_term(gamma).expect("nonzero");
            delta.push(exp_neg(e));
            nz.push(c.clone());
        }
        let distinguished = g.elements().filter(|z| a[z.id()] == delta[z.id()]).collect();
        Ok(Self {
            size: n,
            a,
            delta,
            n: nz,
            distinguished,
            inverse: g.elements().map(|w| g.inverse(w).0).collect(),
            prod,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// The stored parts, for serialization.
    pub fn to_parts(&self) -> JDataParts {
        JDataParts {
            a: self.a.clone(),
            delta: self.delta.clone(),
            n: self.n.clone(),
            inverse: self.inverse.clone(),
            prod: self.prod.clone(),
        }
    }

    /// Reassembles stored parts. Only shapes are checked; `𝒟` is derived.
    pub fn from_parts(parts: JDataParts) -> Result<Self> {
        let size = parts.a.len();
        if parts.delta.len() != size
            || parts.n.len() != size
            || parts.inverse.len() != size
            || parts.prod.len() != size * size
        {
            return Err(Error::Input("J data has wrong dimensions".into()));
        }
        let distinguished = (0..size as u32)
            .map(Elem)
            .filter(|z| parts.a[z.id()] == parts.delta[z.id()])
            .collect();
        Ok(Self {
            size,
            a: parts.a,
            delta: parts.delta,
            n: parts.n,
            distinguished,
            inverse: parts.inverse,
            prod: parts.prod,
        })
    }

    pub fn a(&self, z: Elem) -> &Exp {
        &self.a[z.id()]
    }

    pub fn a_values(&self) -> &[Exp] {
        &self.a
    }

    pub fn delta(&self, z: Elem) -> &Exp {
        &self.delta[z.id()]
    }

    pub fn n(&self, z: Elem) -> &Int {
        &self.n[z.id()]
    }

    pub fn distinguished(&self) -> &[Elem] {
        &self.distinguished
    }

    pub fn is_distinguished(&self, z: Elem) -> bool {
        self.distinguished.binary_search(&z).is_ok()
    }

    fn inv(&self, z: Elem) -> Elem {
        Elem(self.inverse[z.id()])
    }

    /// `γ_{x,y,z}`.
    pub fn gamma(&self, x: Elem, y: Elem, z: Elem) -> Int {
        let target = self.inv(z).0;
        let row = self.product_row(x, y);
        row.binary_search_by(|(t, _)| t.cmp(&target))
            .map_or(Int::ZERO, |i| row[i].1.clone())
    }

    /// `t_x t_y` as sparse `z ↦ γ_{x,y,z^{-1}}`.
    pub fn product_row(&self, x: Elem, y: Elem) -> &[(u32, Int)] {
        &self.prod[x.id() * self.size + y.id()]
    }

    /// Mutable access for negative-control experiments.
    pub fn product_rows_mut(&mut self) -> &mut [Vec<(u32, Int)>] {
        &mut self.prod
    }

    /// `1_J = Σ_{d∈𝒟} n_d t_d`.
    pub fn identity(&self) -> JElement {
        JElement::from_terms(
            self.distinguished
                .iter()
                .map(|d| (d.0, self.n[d.id()].clone()))
                .collect(),
        )
    }

    pub fn basis(&self, w: Elem) -> JElement {
        JElement::from_terms(vec![(w.0, Int::ONE)])
    }

    /// Product in `J`.
    pub fn multiply(&self, a: &JElement, b: &JElement) -> JElement {
        self.multiply_with(a, b, |x, y, g| &(x * y) * g)
    }

    /// Product in `J_A = A ⊗ J`.
    pub fn multiply_a(&self, a: &JElement<Poly>, b: &JElement<Poly>) -> JElement<Poly> {
        self.multiply_with(a, b, |x, y, g| x.mul(y).scale(g))
    }

    fn multiply_with<C: Coeff>(
        &self,
        a: &JElement<C>,
        b: &JElement<C>,
        f: impl Fn(&C, &C, &Int) -> C,
    ) -> JElement<C> {
        let mut acc: Vec<Option<C>> = vec![None; self.size];
        for (x, cx) in &a.terms {
            for (y, cy) in &b.terms {
                for (z, g) in &self.prod[*x as usize * self.size + *y as usize] {
                    let t = f(cx, cy, g);
                    match &mut acc[*z as usize] {
                        Some(c) => c.add_assign_ref(&t),
                        slot => *slot = Some(t),
                    }
                }
            }
        }
        JElement::from_terms(
            acc.into_iter()
                .enumerate()
                .filter_map(|(z, c)| c.map(|c| (z as u32, c)))
                .collect(),
        )
    }

    /// Checks `(t_x t_y) t_z = t_x (t_y t_z)` on the given triples.
    pub fn associativity_witness(
        &self,
        triples: impl IntoIterator<Item = (Elem, Elem, Elem)>,
    ) -> Option<(Elem, Elem, Elem)> {
        triples.into_iter().find(|&(x, y, z)| {
            let (tx, ty, tz) = (self.basis(x), self.basis(y), self.basis(z));
            self.multiply(&self.multiply(&tx, &ty), &tz) != self.multiply(&tx, &self.multiply(&ty, &tz))
        })
    }

    /// `φ(C_w) = Σ_{d∈𝒟} Σ_{a(z)=a(d)} h_{w,d,z} n_d t_z` for every `w`.
    pub fn phi(&self, src: &dyn StructureSource) -> Vec<JElement<Poly>> {
        let cols: Vec<Vec<Row>> = self.distinguished.iter().map(|&d| src.column(d)).collect();
        (0..self.size)
            .map(|w| {
                let mut acc: Vec<Poly> = vec![Poly::zero(); self.size];
                for (d, col) in self.distinguished.iter().zip(&cols) {
                    let nd = &self.n[d.id()];
                    for (z, h) in &col[w] {
                        if self.a[*z as usize] == self.a[d.id()] {
                            acc[*z as usize].add_assign(&h.scale(nd));
                        }
                    }
                }
                JElement::from_terms(
                    acc.into_iter()
                        .enumerate()
                        .filter(|(_, p)| !p.is_zero())
                        .map(|(z, p)| (z as u32, p))
                        .collect(),
                )
            })
            .collect()
    }
}

/// Sparse element `Σ c_w t_w` of `J` (or `J_A` with polynomial entries).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct JElement<C = Int> {
    terms: Vec<(u32, C)>,
}

impl<C: Coeff> JElement<C> {
    /// Sorts by index and drops zero coefficients; indices must be distinct.
    pub fn from_terms(mut terms: Vec<(u32, C)>) -> Self {
        terms.retain(|(_, c)| !c.coeff_is_zero());
        terms.sort_by_key(|(w, _)| *w);
        Self { terms }
    }

    pub fn terms(&self) -> &[(u32, C)] {
        &self.terms
    }

    pub fn coeff(&self, w: Elem) -> Option<&C> {
        self.terms
            .binary_search_by(|(z, _)| z.cmp(&w.0))
            .ok()
            .map(|i| &self.terms[i].1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (w, c) in &rhs.terms {
            match terms.binary_search_by(|(z, _)| z.cmp(w)) {
                Ok(i) => terms[i].1.add_assign_ref(c),
                Err(i) => terms.insert(i, (*w, c.clone())),
            }
        }
        Self::from_terms(terms)
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> JElement<D> {
        JElement::from_terms(self.terms.iter().map(|(w, c)| (*w, f(c))).collect())
    }
}
