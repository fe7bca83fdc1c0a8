//! The generic Iwahori–Hecke algebra: `T`-basis arithmetic, the bar
//! involution, the Kazhdan–Lusztig bases `C′` and `C`, μ-coefficients,
//! structure constants, the trace `τ` and the dual basis `D`.

use alloc::vec;
use alloc::vec::Vec;

use crate::coxeter::Elem;
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::poly::Poly;

/// Sparse row `z ↦ h_z`, sorted by `z`.
pub type Row = Vec<(u32, Poly)>;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    T,
    CPrime,
    C,
    D,
}

/// Element of `H`, as coordinates in the basis `basis`, indexed by element
/// id. Zero coordinates are empty polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeElement {
    pub basis: Basis,
    pub coords: Vec<Poly>,
}

impl HeckeElement {
    pub fn zero(basis: Basis, size: usize) -> Self {
        Self {
            basis,
            coords: vec![Poly::zero(); size],
        }
    }

    pub fn basis_vector(basis: Basis, size: usize, w: Elem, one: Poly) -> Self {
        let mut e = Self::zero(basis, size);
        e.coords[w.id()] = one;
        e
    }

    pub fn from_row(basis: Basis, size: usize, row: &[(u32, Poly)]) -> Self {
        let mut e = Self::zero(basis, size);
        for (z, p) in row {
            e.coords[*z as usize] = p.clone();
        }
        e
    }

    pub fn coeff(&self, w: Elem) -> &Poly {
        &self.coords[w.id()]
    }

    pub fn support(&self) -> impl Iterator<Item = (Elem, &Poly)> {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(i, p)| (Elem(i as u32), p))
    }

    pub fn to_row(&self) -> Row {
        self.support().map(|(w, p)| (w.0, p.clone())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|p| p.is_zero())
    }

    fn check_basis(&self, rhs: &Self) -> Result<()> {
        if self.basis != rhs.basis {
            return Err(Error::Input(alloc::format!(
                "basis mismatch: {:?} vs {:?}",
                self.basis,
                rhs.basis
            )));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_basis(rhs)?;
        Ok(Self {
            basis: self.basis,
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a.add(b)).collect(),
        })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.check_basis(rhs)?;
        Ok(Self {
            basis: self.basis,
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a.sub(b)).collect(),
        })
    }

    pub fn scale(&self, c: &Poly) -> Self {
        Self {
            basis: self.basis,
            coords: self.coords.iter().map(|a| a.mul(c)).collect(),
        }
    }
}

/// `T_s · h` in place, for `h` in the `T`-basis.
pub fn t_left_generator(inst: &Instance, s: usize, coords: &[Poly]) -> Vec<Poly> {
    let g = inst.group();
    let mut out = vec![Poly::zero(); coords.len()];
    for (w, c) in coords.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let w = Elem(w as u32);
        let sw = g.lmul(s, w);
        out[sw.id()].add_assign(c);
        if g.length(sw) < g.length(w) {
            out[w.id()].add_product(inst.v_diff(s), c);
        }
    }
    out
}

/// Product in the `T`-basis.
pub fn t_multiply(inst: &Instance, a: &HeckeElement, b: &HeckeElement) -> Result<HeckeElement> {
    if a.basis != Basis::T || b.basis != Basis::T {
        return Err(Error::Input("t_multiply expects T-basis elements".into()));
    }
    let g = inst.group();
    let mut acc = vec![Poly::zero(); inst.size()];
    for (x, c) in a.support() {
        let mut cur = b.coords.clone();
        for &s in g.word(x).iter().rev() {
            cur = t_left_generator(inst, s as usize, &cur);
        }
        for (dst, p) in acc.iter_mut().zip(&cur) {
            dst.add_product(c, p);
        }
    }
    Ok(HeckeElement {
        basis: Basis::T,
        coords: acc,
    })
}

/// `T_s^{-1} · h = T_s h - (v_s - v_s^{-1}) h`.
fn t_inv_left_generator(inst: &Instance, s: usize, coords: &[Poly]) -> Vec<Poly> {
    let mut out = t_left_generator(inst, s, coords);
    for (dst, c) in out.iter_mut().zip(coords) {
        if !c.is_zero() {
            dst.sub_assign(&c.mul(inst.v_diff(s)));
        }
    }
    out
}

/// `bar(T_w) = T_{w^{-1}}^{-1}` for every `w`, via
/// `bar(T_w) = T_s^{-1} bar(T_{sw})` with `s` the first letter of `w`.
pub fn bar_t_table(inst: &Instance) -> Vec<HeckeElement> {
    let g = inst.group();
    let n = inst.size();
    let mut out: Vec<HeckeElement> = Vec::with_capacity(n);
    out.push(HeckeElement::basis_vector(Basis::T, n, Elem::IDENTITY, inst.one()));
    for w in g.elements().skip(1) {
        let s = g.first_descent(w).unwrap();
        let prev = &out[g.lmul(s, w).id()];
        out.push(HeckeElement {
            basis: Basis::T,
            coords: t_inv_left_generator(inst, s, &prev.coords),
        });
    }
    out
}

/// The bar involution on a `T`-basis element.
pub fn bar_hecke(inst: &Instance, h: &HeckeElement, table: &[HeckeElement]) -> Result<HeckeElement> {
    if h.basis != Basis::T {
        return Err(Error::Input("bar_hecke expects a T-basis element".into()));
    }
    let mut acc = vec![Poly::zero(); inst.size()];
    for (w, c) in h.support() {
        let cb = c.bar();
        for (dst, p) in acc.iter_mut().zip(&table[w.id()].coords) {
            dst.add_product(&cb, p);
        }
    }
    Ok(HeckeElement {
        basis: Basis::T,
        coords: acc,
    })
}

/// `τ(h)`: the coefficient of `T_1`.
pub fn tau(h: &HeckeElement) -> Poly {
    h.coords[0].clone()
}

/// Kazhdan–Lusztig polynomials `p_{y,w}` and μ-coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KlTable {
    size: usize,
    rank: usize,
    /// `p[w]`: sparse `y ↦ p_{y,w}`, including `p_{w,w} = 1`.
    p: Vec<Row>,
    /// `mu[w·rank + s]`: for `sw > w`, the terms `z ↦ μ^s_{z,w}` with
    /// `z ≠ sw`.
    mu: Vec<Row>,
}

impl KlTable {
    /// Builds the table in ShortLex order: for each `w` and each `s` with
    /// `sw > w`, expands `C′_s C′_w` in the `T`-basis and peels off
    /// `C′_z` terms from the top until only `Z[Γ_{<0}]` coordinates remain.
    /// What is left is `C′_{sw}` when `s` is the first letter of `sw`.
    pub fn compute(inst: &Instance) -> Self {
        let g = inst.group();
        let n = inst.size();
        let rank = g.rank();
        let gamma = inst.gamma();
        let mut p: Vec<Row> = vec![Vec::new(); n];
        let mut mu: Vec<Row> = vec![Vec::new(); n * rank];
        p[0] = vec![(0, inst.one())];
        let mut x: Vec<Poly> = vec![Poly::zero(); n];
        for w in g.elements() {
            for s in 0..rank {
                let sw = g.lmul(s, w);
                if g.length(sw) < g.length(w) {
                    continue;
                }
                for (y, c) in &p[w.id()] {
                    let y = Elem(*y);
                    let sy = g.lmul(s, y);
                    x[sy.id()].add_assign(c);
                    let f = if g.length(sy) < g.length(y) {
                        inst.v(s)
                    } else {
                        inst.v_inv(s)
                    };
                    x[y.id()].add_assign(&c.mul(f));
                }
                let mut terms: Row = Vec::new();
                for z in (0..sw.id()).rev() {
                    if x[z].is_zero() {
                        continue;
                    }
                    let (_, c, pos) = x[z].split_by_sign(gamma);
                    if c.is_none() && pos.is_zero() {
                        continue;
                    }
                    let mut m = pos.add(&pos.bar());
                    if let Some(c) = c {
                        m.add_assign(&Poly::constant(inst.gamma_rank(), c));
                    }
                    for (y, q) in &p[z] {
                        x[*y as usize].sub_assign(&m.mul(q));
                    }
                    terms.push((z as u32, m));
                }
                terms.reverse();
                mu[w.id() * rank + s] = terms;
                let fill = g.first_descent(sw) == Some(s);
                let mut col: Row = Vec::new();
                for (y, c) in x.iter_mut().enumerate().take(sw.id() + 1) {
                    if !c.is_zero() {
                        let c = core::mem::take(c);
                        if fill {
                            col.push((y as u32, c));
                        }
                    }
                }
                if fill {
                    p[sw.id()] = col;
                }
            }
        }
        Self { size: n, rank, p, mu }
    }

    /// Reassembles a table from stored parts; the caller is responsible for
    /// consistency (used when loading from a cache).
    pub fn from_parts(size: usize, rank: usize, p: Vec<Row>, mu: Vec<Row>) -> Result<Self> {
        if p.len() != size || mu.len() != size * rank {
            return Err(Error::Input("KL table has wrong dimensions".into()));
        }
        Ok(Self { size, rank, p, mu })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `y ↦ p_{y,w}` including `y = w`.
    pub fn p_column(&self, w: Elem) -> &Row {
        &self.p[w.id()]
    }

    pub fn p(&self, y: Elem, w: Elem) -> Option<&Poly> {
        let col = &self.p[w.id()];
        col.binary_search_by(|(z, _)| z.cmp(&y.0)).ok().map(|i| &col[i].1)
    }

    /// μ-terms of `C_s C_w` for `sw > w`, excluding the leading `C_{sw}`.
    pub fn mu_row(&self, s: usize, w: Elem) -> &Row {
        &self.mu[w.id() * self.rank + s]
    }

    pub fn parts(&self) -> (&[Row], &[Row]) {
        (&self.p, &self.mu)
    }

    /// `C′_w` in the `T`-basis.
    pub fn c_prime(&self, w: Elem) -> HeckeElement {
        HeckeElement::from_row(Basis::T, self.size, &self.p[w.id()])
    }

    /// `C_w = (-1)^{l(w)} T_w + Σ (-1)^{l(y)} bar(p_{y,w}) T_y`.
    pub fn c_basis(&self, inst: &Instance, w: Elem) -> HeckeElement {
        let g = inst.group();
        let mut e = HeckeElement::zero(Basis::T, self.size);
        for (y, q) in &self.p[w.id()] {
            let b = q.bar();
            e.coords[*y as usize] = if g.length(Elem(*y)) % 2 == 1 { b.neg() } else { b };
        }
        e
    }

    /// The row `z ↦ h_{s,w,z}` of `C_s C_w`.
    pub fn generator_row(&self, inst: &Instance, s: usize, w: Elem) -> Row {
        let g = inst.group();
        let sw = g.lmul(s, w);
        if g.length(sw) < g.length(w) {
            return vec![(w.0, inst.v_sum(s).clone())];
        }
        let mut row = self.mu_row(s, w).clone();
        let pos = row.partition_point(|(z, _)| *z < sw.0);
        row.insert(pos, (sw.0, inst.one()));
        row
    }
}

/// Matrix of the `C`-basis in `T`-coordinates (column `w` is `C_w`),
/// upper unitriangular up to the signs `(-1)^{l(w)}` on the diagonal.
pub fn c_to_t_matrix(inst: &Instance, kl: &KlTable) -> Vec<Vec<Poly>> {
    inst.group()
        .elements()
        .map(|w| kl.c_basis(inst, w).coords)
        .collect()
}

/// Inverse of the `C`-to-`T` matrix: column `w` holds the `C`-coordinates
/// of `T_w`. Returned column-major like [`c_to_t_matrix`].
pub fn t_to_c_matrix(inst: &Instance, kl: &KlTable) -> Vec<Vec<Poly>> {
    let n = inst.size();
    let g = inst.group();
    let cols = c_to_t_matrix(inst, kl);
    let mut inv: Vec<Vec<Poly>> = Vec::with_capacity(n);
    for w in 0..n {
        // solve M x = e_w by back substitution
        let mut rhs = vec![Poly::zero(); n];
        rhs[w] = inst.one();
        let mut x = vec![Poly::zero(); n];
        for y in (0..=w).rev() {
            let r = core::mem::take(&mut rhs[y]);
            if r.is_zero() {
                continue;
            }
            let r = if g.length(Elem(y as u32)) % 2 == 1 { r.neg() } else { r };
            for (z, m) in cols[y].iter().enumerate().take(y) {
                if !m.is_zero() {
                    rhs[z].sub_assign(&m.mul(&r));
                }
            }
            x[y] = r;
        }
        inv.push(x);
    }
    inv
}

/// Expresses a `T`-basis element in the `C`-basis by unitriangular
/// elimination from the top.
pub fn t_to_c(inst: &Instance, kl: &KlTable, h: &HeckeElement) -> Result<HeckeElement> {
    if h.basis != Basis::T {
        return Err(Error::Input("t_to_c expects a T-basis element".into()));
    }
    let g = inst.group();
    let mut rest = h.coords.clone();
    let mut out = HeckeElement::zero(Basis::C, inst.size());
    for w in (0..inst.size()).rev() {
        if rest[w].is_zero() {
            continue;
        }
        let c = core::mem::take(&mut rest[w]);
        let c = if g.length(Elem(w as u32)) % 2 == 1 { c.neg() } else { c };
        let cw = kl.c_basis(inst, Elem(w as u32));
        for (y, q) in cw.support() {
            if y.id() != w {
                rest[y.id()].sub_assign(&c.mul(q));
            }
        }
        out.coords[w] = c;
    }
    Ok(out)
}

/// `C_x C_y` in the `C`-basis, via a `T`-basis product and elimination.
/// Independent of the μ-recursion used by [`structure_column`].
pub fn structure_row_direct(inst: &Instance, kl: &KlTable, x: Elem, y: Elem) -> Row {
    let a = kl.c_basis(inst, x);
    let b = kl.c_basis(inst, y);
    let prod = t_multiply(inst, &a, &b).expect("T-basis inputs");
    t_to_c(inst, kl, &prod).expect("T-basis input").to_row()
}

/// Dense accumulator with a touched list, for building sparse rows.
struct Accum {
    vals: Vec<Poly>,
    touched: Vec<u32>,
    mark: Vec<bool>,
}

impl Accum {
    fn new(n: usize) -> Self {
        Self {
            vals: vec![Poly::zero(); n],
            touched: Vec::new(),
            mark: vec![false; n],
        }
    }

    fn add(&mut self, z: u32, p: &Poly) {
        if !self.mark[z as usize] {
            self.mark[z as usize] = true;
            self.touched.push(z);
        }
        self.vals[z as usize].add_assign(p);
    }

    fn sub(&mut self, z: u32, p: &Poly) {
        if !self.mark[z as usize] {
            self.mark[z as usize] = true;
            self.touched.push(z);
        }
        self.vals[z as usize].sub_assign(p);
    }

    fn drain(&mut self) -> Row {
        self.touched.sort_unstable();
        let mut row = Vec::new();
        for &z in &self.touched {
            self.mark[z as usize] = false;
            let p = core::mem::take(&mut self.vals[z as usize]);
            if !p.is_zero() {
                row.push((z, p));
            }
        }
        self.touched.clear();
        row
    }
}

/// All rows `C_x C_y` for a fixed `y`, indexed by `x`. Uses
/// `C_x = C_s C_{sx} - Σ μ^s_{z,sx} C_z` with `s` the first letter of `x`.
pub fn structure_column(inst: &Instance, kl: &KlTable, y: Elem) -> Vec<Row> {
    let g = inst.group();
    let n = inst.size();
    let mut acc = Accum::new(n);
    let mut rows: Vec<Row> = Vec::with_capacity(n);
    rows.push(vec![(y.0, inst.one())]);
    let mut gen_rows: Vec<Option<Row>> = vec![None; n * g.rank()];
    for x in g.elements().skip(1) {
        let s = g.first_descent(x).unwrap();
        let u = g.lmul(s, x);
        for (t, c) in &rows[u.id()] {
            let key = *t as usize * g.rank() + s;
            if gen_rows[key].is_none() {
                gen_rows[key] = Some(kl.generator_row(inst, s, Elem(*t)));
            }
            for (z, h) in gen_rows[key].as_ref().unwrap() {
                acc.add(*z, &c.mul(h));
            }
        }
        for (z, m) in kl.mu_row(s, u) {
            for (t, c) in &rows[*z as usize] {
                acc.sub(*t, &m.mul(c));
            }
        }
        rows.push(acc.drain());
    }
    rows
}

/// Complete table of structure constants `h_{x,y,z}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HTable {
    size: usize,
    rows: Vec<Row>,
}

impl HTable {
    pub fn compute(inst: &Instance, kl: &KlTable) -> Self {
        let n = inst.size();
        #[cfg(feature = "parallel")]
        let cols: Vec<Vec<Row>> = {
            use rayon::prelude::*;
            (0..n as u32)
                .into_par_iter()
                .map(|y| structure_column(inst, kl, Elem(y)))
                .collect()
        };
        #[cfg(not(feature = "parallel"))]
        let cols: Vec<Vec<Row>> = (0..n as u32)
            .map(|y| structure_column(inst, kl, Elem(y)))
            .collect();
        let mut rows = vec![Vec::new(); n * n];
        for (y, col) in cols.into_iter().enumerate() {
            for (x, row) in col.into_iter().enumerate() {
                rows[x * n + y] = row;
            }
        }
        Self { size: n, rows }
    }

    pub fn from_rows(size: usize, rows: Vec<Row>) -> Result<Self> {
        if rows.len() != size * size {
            return Err(Error::Input("structure table has wrong dimensions".into()));
        }
        Ok(Self { size, rows })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// `z ↦ h_{x,y,z}`.
    pub fn row(&self, x: Elem, y: Elem) -> &Row {
        &self.rows[x.id() * self.size + y.id()]
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn get(&self, x: Elem, y: Elem, z: Elem) -> Option<&Poly> {
        let row = self.row(x, y);
        row.binary_search_by(|(t, _)| t.cmp(&z.0)).ok().map(|i| &row[i].1)
    }

    /// Mutable access for negative-control experiments.
    pub fn rows_mut(&mut self) -> &mut [Row] {
        &mut self.rows
    }
}

/// The dual basis: `D_w` in `T`-coordinates for every `w`, characterized by
/// `τ(C_x D_{y^{-1}}) = δ_{xy}`.
pub fn dual_basis(inst: &Instance, kl: &KlTable) -> Result<Vec<HeckeElement>> {
    let n = inst.size();
    let g = inst.group();
    // Gram matrix of τ on the T-basis; it must be a permutation matrix.
    let mut perm = vec![u32::MAX; n];
    for a in g.elements() {
        let ta = HeckeElement::basis_vector(Basis::T, n, a, inst.one());
        for b in g.elements() {
            if g.length(b) != g.length(a) {
                continue;
            }
            let tb = HeckeElement::basis_vector(Basis::T, n, b, inst.one());
            let t = tau(&t_multiply(inst, &ta, &tb)?);
            if t.is_zero() {
                continue;
            }
            if t != inst.one() || perm[a.id()] != u32::MAX {
                return Err(Error::Consistency("τ(T_a T_b) is not a permutation".into()));
            }
            perm[a.id()] = b.0;
        }
    }
    if perm.contains(&u32::MAX) {
        return Err(Error::Consistency("τ(T_a T_b) is singular".into()));
    }
    // M^T G D' = I with D' = G^{-1} (M^{-1})^T, column y of D' is D_{y^{-1}}
    let minv = t_to_c_matrix(inst, kl);
    let mut out = vec![HeckeElement::zero(Basis::T, n); n];
    for y in g.elements() {
        let mut d = HeckeElement::zero(Basis::T, n);
        // (G^{-1})_{a,b} = 1 iff perm[b] = a
        for b in 0..n {
            let q = &minv[b][y.id()];
            if !q.is_zero() {
                d.coords[perm[b] as usize] = q.clone();
            }
        }
        out[g.inverse(y).id()] = d;
    }
    Ok(out)
}

/// Checks `p_{y,w} ∈ Z[Γ_{<0}]` for `y ≠ w`, `p_{w,w} = 1`.
pub fn is_unitriangular(inst: &Instance, kl: &KlTable, w: Elem) -> bool {
    kl.p_column(w).iter().all(|(y, q)| {
        if *y == w.0 {
            *q == inst.one()
        } else {
            *y < w.0 && q.in_negative_part(inst.gamma())
        }
    })
}
