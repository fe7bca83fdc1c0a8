//! Lusztig's homomorphism `ψ: H → A[W]` and its certificate.
//!
//! `ψ = α ∘ φ` where `α` inverts the specialization `φ₁: Q[W] → J_Q`.
//! Both `θ₁(P)` and the specialized `C`-basis are integral, so `α` has
//! rational entries; it is stored as an integer matrix over a common
//! denominator and all identities are checked after clearing it.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Signed;

use crate::asymptotic::{JElement, StructureSource};
use crate::coxeter::{CoxeterGroup, Elem};
use crate::error::{Error, Result};
use crate::hecke::{t_to_c_matrix, KlTable};
use crate::instance::Instance;
use crate::int::Int;
use crate::linalg::{bareiss_solve, det_int, det_poly, Matrix};
use crate::poly::{LaurentPoly, Poly};

/// The matrix of `φ` (row `z`, column `w`: coefficient of `t_z` in
/// `φ(C_w)`) and its specialization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiMatrix {
    pub p: Matrix<Poly>,
    pub p1: Matrix<Int>,
}

impl PhiMatrix {
    pub fn new(phi: &[JElement<Poly>]) -> Self {
        let n = phi.len();
        let mut p = vec![vec![Poly::zero(); n]; n];
        for (w, e) in phi.iter().enumerate() {
            for (z, c) in e.terms() {
                p[*z as usize][w] = c.clone();
            }
        }
        let p1 = p.iter().map(|r| r.iter().map(Poly::theta1).collect()).collect();
        Self { p, p1 }
    }

    pub fn det_specialized(&self) -> Result<Int> {
        det_int(&self.p1)
    }

    pub fn det(&self, inst: &Instance) -> Result<Poly> {
        det_poly(&self.p, inst.gamma(), inst.gamma_rank())
    }
}

/// An element of `A[W]` with rational coefficients, sparse by group element.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GroupAlgebraElement {
    pub terms: Vec<(Elem, LaurentPoly<BigRational>)>,
}

/// `θ₁` of the `C`-basis in the group basis: entry `[u][w]` is
/// `(-1)^{l(u)} θ₁(p_{u,w})`.
pub fn specialized_c_matrix(inst: &Instance, kl: &KlTable) -> Matrix<Int> {
    let g = inst.group();
    let n = inst.size();
    let mut b = vec![vec![Int::ZERO; n]; n];
    for w in g.elements() {
        for (u, p) in kl.p_column(w) {
            let t = p.theta1();
            b[*u as usize][w.id()] = if g.length(Elem(*u)) % 2 == 1 { -t } else { t };
        }
    }
    b
}

/// `ψ` scaled by a positive integer `denom`: `images[w][u]` is the
/// coefficient of `u` in `denom · ψ(C_w)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Psi {
    denom: Int,
    alpha: Matrix<Int>,
    images: Vec<Vec<Poly>>,
}

fn gcd_all(d: &Int, m: &Matrix<Int>) -> BigInt {
    let mut g = d.to_bigint().abs();
    for row in m {
        for x in row {
            if !x.is_zero() {
                g = g.gcd(&x.to_bigint());
            }
        }
    }
    g
}

impl Psi {
    /// Solves `α θ₁(P) = B₁` by fraction-free elimination.
    pub fn construct(inst: &Instance, kl: &KlTable, phi: &PhiMatrix) -> Result<Self> {
        let n = phi.p1.len();
        let b1 = specialized_c_matrix(inst, kl);
        let p1t: Matrix<Int> = (0..n).map(|i| (0..n).map(|j| phi.p1[j][i].clone()).collect()).collect();
        let b1t: Matrix<Int> = (0..n).map(|i| (0..n).map(|j| b1[j][i].clone()).collect()).collect();
        let (d, x) = bareiss_solve(&p1t, &b1t).map_err(|e| match e {
            Error::Singular(_) => Error::Singular("det θ₁(P) = 0".into()),
            e => e,
        })?;
        let g = Int::from(gcd_all(&d, &x));
        let sign = if d.signum() < 0 { -Int::ONE } else { Int::ONE };
        let g = &g * &sign;
        let alpha: Matrix<Int> = (0..n)
            .map(|u| (0..n).map(|z| x[z][u].div_exact(&g).expect("gcd divides")).collect())
            .collect();
        let denom = d.div_exact(&g).expect("gcd divides");
        Ok(Self::from_alpha(denom, alpha, phi))
    }

    /// `ψ` for a given scaled `α` (row `u ∈ W`, column `z`).
    pub fn from_alpha(denom: Int, alpha: Matrix<Int>, phi: &PhiMatrix) -> Self {
        let n = alpha.len();
        let images = (0..n)
            .map(|w| {
                (0..n)
                    .map(|u| {
                        let mut acc = Poly::zero();
                        for z in 0..n {
                            if !alpha[u][z].is_zero() && !phi.p[z][w].is_zero() {
                                acc.add_assign(&phi.p[z][w].scale(&alpha[u][z]));
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        Self { denom, alpha, images }
    }

    pub fn denom(&self) -> &Int {
        &self.denom
    }

    /// `denom · α`.
    pub fn alpha(&self) -> &Matrix<Int> {
        &self.alpha
    }

    /// `denom · ψ(C_w)`, dense over `W`.
    pub fn scaled_c_image(&self, w: Elem) -> &[Poly] {
        &self.images[w.id()]
    }

    /// `denom · ψ(T_w)` for every `w` via `T_w = Σ_y N_{y,w} C_y`.
    pub fn scaled_t_images(&self, inst: &Instance, kl: &KlTable) -> Vec<Vec<Poly>> {
        let n = inst.size();
        t_to_c_matrix(inst, kl)
            .iter()
            .map(|col| {
                let mut acc = vec![Poly::zero(); n];
                for (y, c) in col.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for (a, b) in acc.iter_mut().zip(&self.images[y]) {
                        a.add_product(c, b);
                    }
                }
                acc
            })
            .collect()
    }

    fn unscale(&self, dense: &[Poly]) -> GroupAlgebraElement {
        let d = BigRational::from_integer(self.denom.to_bigint());
        GroupAlgebraElement {
            terms: dense
                .iter()
                .enumerate()
                .filter(|(_, p)| !p.is_zero())
                .map(|(u, p)| {
                    (
                        Elem(u as u32),
                        p.map_coeffs(|c| BigRational::from_integer(c.to_bigint()) / &d),
                    )
                })
                .collect(),
        }
    }

    pub fn c_image(&self, w: Elem) -> GroupAlgebraElement {
        self.unscale(&self.images[w.id()])
    }

    pub fn t_images(&self, inst: &Instance, kl: &KlTable) -> Vec<GroupAlgebraElement> {
        self.scaled_t_images(inst, kl).iter().map(|d| self.unscale(d)).collect()
    }
}

/// Outcome of the three checks on `ψ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoCertificate {
    pub pairs_checked: usize,
    pub homomorphism_witness: Option<(Elem, Elem)>,
    pub theta1_witness: Option<Elem>,
    /// Follows from `θ₁(det Q) = det θ₁(Q) = 1`.
    pub det_nonzero: bool,
}

impl IsoCertificate {
    pub fn passed(&self) -> bool {
        self.homomorphism_witness.is_none() && self.theta1_witness.is_none() && self.det_nonzero
    }
}

fn group_product(g: &CoxeterGroup, table: &[u32], a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let n = g.size();
    let mut out = vec![Poly::zero(); n];
    for (u, pa) in a.iter().enumerate() {
        if pa.is_zero() {
            continue;
        }
        for (v, pb) in b.iter().enumerate() {
            if !pb.is_zero() {
                out[table[u * n + v] as usize].add_product(pa, pb);
            }
        }
    }
    out
}

/// Checks `ψ(C_x)ψ(C_y) = Σ_z h_{x,y,z} ψ(C_z)` on `pairs`, `θ₁(Q) = 1`,
/// and hence `det Q ≠ 0`.
pub fn certify(
    inst: &Instance,
    kl: &KlTable,
    psi: &Psi,
    src: &dyn StructureSource,
    pairs: &[(Elem, Elem)],
) -> IsoCertificate {
    let g = inst.group();
    let n = g.size();
    let table: Vec<u32> = (0..n as u32)
        .flat_map(|x| (0..n as u32).map(move |y| (x, y)))
        .map(|(x, y)| g.mul(Elem(x), Elem(y)).0)
        .collect();
    let mut by_y: Vec<Vec<Elem>> = vec![Vec::new(); n];
    for &(x, y) in pairs {
        by_y[y.id()].push(x);
    }
    let check_column = |y: usize| -> Option<(Elem, Elem)> {
        if by_y[y].is_empty() {
            return None;
        }
        let col = src.column(Elem(y as u32));
        by_y[y].iter().copied().find(|&x| {
            let lhs = group_product(g, &table, &psi.images[x.id()], &psi.images[y]);
            let mut rhs = vec![Poly::zero(); n];
            for (z, h) in &col[x.id()] {
                let c = h.scale(&psi.denom);
                for (a, b) in rhs.iter_mut().zip(&psi.images[*z as usize]) {
                    a.add_product(&c, b);
                }
            }
            lhs != rhs
        })
        .map(|x| (x, Elem(y as u32)))
    };
    #[cfg(feature = "parallel")]
    let failures: Vec<Option<(Elem, Elem)>> = {
        use rayon::prelude::*;
        (0..n).into_par_iter().map(check_column).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let failures: Vec<Option<(Elem, Elem)>> = (0..n).map(check_column).collect();
    let homomorphism_witness = failures.into_iter().flatten().next();
    let t_images = psi.scaled_t_images(inst, kl);
    let theta1_witness = g.elements().find(|w| {
        t_images[w.id()].iter().enumerate().any(|(u, p)| {
            let expect = if u == w.id() { psi.denom.clone() } else { Int::ZERO };
            p.theta1() != expect
        })
    });
    IsoCertificate {
        pairs_checked: pairs.len(),
        homomorphism_witness,
        theta1_witness,
        det_nonzero: theta1_witness.is_none(),
    }
}
