//! Checks on the tables themselves rather than on Lusztig's properties:
//! the KL basis, the symmetries of `h`, the dual basis and the ring `J`.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{fail, first, Check, Status};
use crate::asymptotic::JData;
use crate::coxeter::Elem;
use crate::hecke::{bar_hecke, bar_t_table, dual_basis, is_unitriangular, t_multiply, tau, HTable, KlTable};
use crate::instance::Instance;
use crate::int::Int;
use crate::poly::Poly;

/// Limits for the exhaustive and sampled parts of the structure checks.
#[derive(Copy, Clone, Debug)]
pub struct StructureLimits {
    /// Symmetry checks are exhaustive up to this group order.
    pub symmetry: usize,
    /// Dual pairing is exhaustive up to this order.
    pub dual_exhaustive: usize,
    /// Dual pairing is sampled up to this order and skipped beyond.
    pub dual_sampled: usize,
    pub dual_samples: usize,
    /// Associativity is exhaustive up to this order.
    pub associativity: usize,
    pub associativity_samples: usize,
}

impl Default for StructureLimits {
    fn default() -> Self {
        Self {
            symmetry: 48,
            dual_exhaustive: 16,
            dual_sampled: 48,
            dual_samples: 400,
            associativity: 120,
            associativity_samples: 20_000,
        }
    }
}

fn check(name: &str, status: Status) -> Check {
    Check {
        name: name.to_string(),
        status,
    }
}

fn pairs(n: usize, exhaustive: bool, samples: usize, rng: &mut ChaCha8Rng) -> Vec<(Elem, Elem)> {
    if exhaustive {
        (0..n as u32).flat_map(|x| (0..n as u32).map(move |y| (Elem(x), Elem(y)))).collect()
    } else {
        (0..samples)
            .map(|_| (Elem(rng.random_range(0..n as u32)), Elem(rng.random_range(0..n as u32))))
            .collect()
    }
}

/// `kl_basis`: every `C′_w` is bar-invariant and unitriangular.
/// `h_symmetry`: `h_{x,y,z} = h_{y⁻¹,x⁻¹,z⁻¹}`.
/// `gamma_cyclic`: `γ_{x,y,z} = γ_{y,z,x}`.
/// `dual_pairing`: `τ(C_x D_{y⁻¹}) = δ_{xy}`.
pub fn hecke_checks(
    inst: &Instance,
    kl: &KlTable,
    h: Option<&HTable>,
    jd: &JData,
    limits: StructureLimits,
    seed: u64,
) -> Vec<Check> {
    let g = inst.group();
    let n = inst.size();
    let name = |w: Elem| g.word_string(w);
    let mut out = Vec::new();

    let bars = bar_t_table(inst);
    let kl_status = first(n, |w| {
        let w = Elem(w as u32);
        if !is_unitriangular(inst, kl, w) {
            return Some(fail(vec![w], format!("C′_{} is not unitriangular", name(w))));
        }
        let c = kl.c_prime(w);
        match bar_hecke(inst, &c, &bars) {
            Ok(b) if b == c => None,
            Ok(_) => Some(fail(vec![w], format!("C′_{} is not bar-invariant", name(w)))),
            Err(e) => Some(fail(vec![w], e.to_string())),
        }
    })
    .unwrap_or(Status::Pass);
    out.push(check("kl_basis", kl_status));

    let exhaustive = n <= limits.symmetry;
    let sym = match h {
        None => Status::Skipped("needs the full structure table".into()),
        Some(_) if !exhaustive => Status::Skipped(format!("|W| = {n} is above {}", limits.symmetry)),
        Some(h) => first(n * n, |i| {
            let (x, y) = (Elem((i / n) as u32), Elem((i % n) as u32));
            let mut mirrored: Vec<(u32, Poly)> = h
                .row(g.inverse(y), g.inverse(x))
                .iter()
                .map(|(z, p)| (g.inverse(Elem(*z)).0, p.clone()))
                .collect();
            mirrored.sort_by_key(|(z, _)| *z);
            (h.row(x, y) != &mirrored).then(|| {
                fail(
                    vec![x, y],
                    format!("h_{{x,y,·}} differs from h_{{y⁻¹,x⁻¹,·⁻¹}} at x = {}, y = {}", name(x), name(y)),
                )
            })
        })
        .unwrap_or(Status::Pass),
    };
    out.push(check("h_symmetry", sym));

    let cyc = if exhaustive {
        first(n * n, |i| {
            let (x, y) = (Elem((i / n) as u32), Elem((i % n) as u32));
            g.elements().find(|&z| jd.gamma(x, y, z) != jd.gamma(y, z, x)).map(|z| {
                fail(
                    vec![x, y, z],
                    format!("γ_{{x,y,z}} ≠ γ_{{y,z,x}} at ({}, {}, {})", name(x), name(y), name(z)),
                )
            })
        })
        .unwrap_or(Status::Pass)
    } else {
        Status::Skipped(format!("|W| = {n} is above {}", limits.symmetry))
    };
    out.push(check("gamma_cyclic", cyc));

    let dual = if n > limits.dual_sampled {
        Status::Skipped(format!("|W| = {n} is above {}", limits.dual_sampled))
    } else {
        match dual_basis(inst, kl) {
            Err(e) => fail(Vec::new(), e.to_string()),
            Ok(d) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let ps = pairs(n, n <= limits.dual_exhaustive, limits.dual_samples, &mut rng);
                let cs: Vec<_> = g.elements().map(|x| kl.c_basis(inst, x)).collect();
                first(ps.len(), |i| {
                    let (x, y) = ps[i];
                    let val = t_multiply(inst, &cs[x.id()], &d[g.inverse(y).id()]).map(|p| tau(&p));
                    let expect = if x == y { inst.one() } else { Poly::zero() };
                    match val {
                        Ok(v) if v == expect => None,
                        Ok(v) => Some(fail(
                            vec![x, y],
                            format!("τ(C_{} D_{{{}⁻¹}}) = {v}", name(x), name(y)),
                        )),
                        Err(e) => Some(fail(vec![x, y], e.to_string())),
                    }
                })
                .unwrap_or(Status::Pass)
            }
        }
    };
    out.push(check("dual_pairing", dual));
    out
}

/// `associativity`, `identity` (`1_J = Σ n_d t_d` is a two-sided unit) and
/// `orthogonality` (`Σ_{d∈𝒟} γ_{x⁻¹,y,d} n_d = δ_{xy}`).
pub fn ring_checks(inst: &Instance, jd: &JData, limits: StructureLimits, seed: u64) -> Vec<Check> {
    let g = inst.group();
    let n = inst.size();
    let name = |w: Elem| g.word_string(w);
    let mut out = Vec::new();

    let assoc = if n <= limits.associativity {
        first(n, |x| {
            let x = Elem(x as u32);
            jd.associativity_witness(g.elements().flat_map(|y| g.elements().map(move |z| (x, y, z))))
        })
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let triples: Vec<(Elem, Elem, Elem)> = (0..limits.associativity_samples)
            .map(|_| {
                let mut e = || Elem(rng.random_range(0..n as u32));
                (e(), e(), e())
            })
            .collect();
        first(triples.len(), |i| jd.associativity_witness([triples[i]]))
    };
    let assoc = assoc.map_or(Status::Pass, |(x, y, z)| {
        fail(
            vec![x, y, z],
            format!("(t_x t_y) t_z ≠ t_x (t_y t_z) at ({}, {}, {})", name(x), name(y), name(z)),
        )
    });
    out.push(check("associativity", assoc));

    let one = jd.identity();
    let unit = first(n, |w| {
        let w = Elem(w as u32);
        let t = jd.basis(w);
        (jd.multiply(&one, &t) != t || jd.multiply(&t, &one) != t)
            .then(|| fail(vec![w], format!("1_J t_{0} or t_{0} 1_J differs from t_{0}", name(w))))
    })
    .unwrap_or(Status::Pass);
    out.push(check("identity", unit));

    let orth = first(n * n, |i| {
        let (x, y) = (Elem((i / n) as u32), Elem((i % n) as u32));
        let s = jd
            .distinguished()
            .iter()
            .fold(Int::ZERO, |acc, &d| acc + &jd.gamma(g.inverse(x), y, d) * jd.n(d));
        (s != Int::from(i64::from(x == y))).then(|| {
            fail(
                vec![x, y],
                format!("Σ_d γ_{{x⁻¹,y,d}} n_d = {s} at x = {}, y = {}", name(x), name(y)),
            )
        })
    })
    .unwrap_or(Status::Pass);
    out.push(check("orthogonality", orth));
    out
}
