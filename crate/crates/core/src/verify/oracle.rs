//! Closed-form data for `I2(m)` with `L(s1) > L(s2)`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::{fail, Check, Status};
use crate::asymptotic::JData;
use crate::cells::{CellKind, CellModule, CellPartition};
use crate::chartable::CharacterTable;
use crate::coxeter::Elem;
use crate::error::{Error, Result};
use crate::hecke::KlTable;
use crate::instance::Instance;
use crate::ordgroup::{exp_add, exp_scale, exp_sub, Exp};
use crate::poly::Poly;

/// `1_k` (first letter `s1`) or `2_k` (first letter `s2`) as a word.
fn alt(first: u8, k: u32) -> Vec<u8> {
    (0..k).map(|i| ((first as u32 + i) % 2) as u8).collect()
}

/// One expected product `C_s C_w = Σ c_z C_z`.
#[derive(Clone, Debug)]
pub struct OracleProduct {
    pub family: u8,
    pub s: usize,
    pub w: Vec<u8>,
    pub terms: Vec<(Vec<u8>, Poly)>,
}

/// Everything the closed forms predict, with elements as reduced words.
#[derive(Clone, Debug)]
pub struct DihedralOracle {
    pub m: u32,
    pub products: Vec<OracleProduct>,
    /// `Δ` on every element.
    pub delta: Vec<(Vec<u8>, Exp)>,
    pub distinguished: Vec<Vec<u8>>,
    /// `n_d` for `d ∈ 𝒟`.
    pub n: Vec<(Vec<u8>, i64)>,
    /// Two-sided cells from the bottom of the order to the top.
    pub chain: Vec<Vec<Vec<u8>>>,
    /// Left cells with the labels they afford.
    pub left_cells: Vec<(Vec<Vec<u8>>, Vec<String>)>,
}

/// The closed forms for `m` even and `L(s1) = l1 > L(s2) = l2`.
pub fn dihedral_oracle(inst: &Instance) -> Result<DihedralOracle> {
    let g = inst.group();
    if g.rank() != 2 {
        return Err(Error::Input("the dihedral oracle needs a rank 2 group".into()));
    }
    let m = g.matrix().get(0, 1);
    let (l1, l2) = (inst.weights().get(0), inst.weights().get(1));
    if m % 2 == 1 {
        return Err(Error::Input(format!(
            "I2({m}) with m odd has conjugate generators, so only equal weights occur; the oracle covers L(s1) > L(s2)"
        )));
    }
    if inst.gamma().compare(l1, l2) != Ordering::Greater {
        return Err(Error::Input("the dihedral oracle needs L(s1) > L(s2)".into()));
    }
    let k = inst.gamma_rank();
    let one = Poly::one(k);
    let zeta = Poly::eps(exp_sub(l1, l2)).add(&Poly::eps(exp_sub(l2, l1)));
    let mut products = Vec::new();
    for j in 0..m {
        products.push(OracleProduct {
            family: 1,
            s: 0,
            w: alt(0, j + 1),
            terms: vec![(alt(0, j + 1), inst.v_sum(0).clone())],
        });
        products.push(OracleProduct {
            family: 2,
            s: 1,
            w: alt(1, j + 1),
            terms: vec![(alt(1, j + 1), inst.v_sum(1).clone())],
        });
        products.push(OracleProduct {
            family: 3,
            s: 1,
            w: alt(0, j),
            terms: vec![(alt(1, j + 1), one.clone())],
        });
        let mut terms = vec![(alt(0, j + 1), one.clone())];
        if j > 1 {
            terms.push((alt(0, j - 1), zeta.clone()));
        }
        if j > 3 {
            terms.push((alt(0, j - 3), one.clone()));
        }
        products.push(OracleProduct {
            family: 4,
            s: 0,
            w: alt(1, j),
            terms,
        });
    }
    let mut delta = Vec::new();
    for len in 0..=m {
        let i = len as i32;
        if len % 2 == 0 {
            let d = exp_scale(&exp_add(l1, l2), i / 2);
            delta.push((alt(0, len), d.clone()));
            if len != 0 && len != m {
                delta.push((alt(1, len), d));
            }
        } else {
            let kk = i / 2;
            delta.push((alt(0, len), exp_sub(&exp_scale(l1, kk + 1), &exp_scale(l2, kk))));
            let d2 = if len == 1 {
                l2.clone()
            } else {
                exp_add(&exp_scale(l1, kk), &exp_scale(l2, kk - 1))
            };
            delta.push((alt(1, len), d2));
        }
    }
    let distinguished = vec![alt(0, 0), alt(1, 1), alt(0, 1), alt(1, 3), alt(0, m - 1), alt(0, m)];
    let n = distinguished
        .iter()
        .map(|d| (d.clone(), if *d == alt(0, m - 1) { -1 } else { 1 }))
        .collect();
    let middle_a: Vec<Vec<u8>> = (1..=m - 2).map(|j| alt(if j % 2 == 1 { 0 } else { 1 }, j)).collect();
    let middle_b: Vec<Vec<u8>> = (2..=m - 1).map(|j| alt(if j % 2 == 0 { 0 } else { 1 }, j)).collect();
    let mut middle: Vec<Vec<u8>> = middle_a.iter().chain(&middle_b).cloned().collect();
    middle.sort();
    let chain = vec![
        vec![alt(0, m)],
        vec![alt(0, m - 1)],
        middle,
        vec![alt(1, 1)],
        vec![alt(0, 0)],
    ];
    let rhos: Vec<String> = (1..=(m - 2) / 2).map(|j| format!("rho_{j}")).collect();
    let left_cells = vec![
        (vec![alt(0, 0)], vec!["1_W".to_string()]),
        (vec![alt(1, 1)], vec!["eps_1".to_string()]),
        (middle_a, rhos.clone()),
        (middle_b, rhos),
        (vec![alt(0, m - 1)], vec!["eps_2".to_string()]),
        (vec![alt(0, m)], vec!["eps".to_string()]),
    ];
    Ok(DihedralOracle {
        m,
        products,
        delta,
        distinguished,
        n,
        chain,
        left_cells,
    })
}

fn sorted_set(g: &crate::coxeter::CoxeterGroup, words: &[Vec<u8>]) -> Vec<Elem> {
    let mut v: Vec<Elem> = words.iter().map(|w| g.from_word(w)).collect();
    v.sort();
    v
}

impl DihedralOracle {
    /// Compares the closed forms with computed data, one check per family
    /// of statements.
    pub fn compare(&self, inst: &Instance, kl: &KlTable, cells: &CellPartition, jd: &JData) -> Result<Vec<Check>> {
        let g = inst.group();
        let name = |w: Elem| g.word_string(w);
        let mut out = Vec::new();
        let mut push = |n: &str, status: Status| {
            out.push(Check {
                name: n.to_string(),
                status,
            })
        };

        for family in 1..=4u8 {
            let mut status = Status::Pass;
            for p in self.products.iter().filter(|p| p.family == family) {
                let w = g.from_word(&p.w);
                let mut expected: Vec<(u32, Poly)> = p.terms.iter().map(|(z, c)| (g.from_word(z).0, c.clone())).collect();
                expected.sort_by_key(|(z, _)| *z);
                let computed = kl.generator_row(inst, p.s, w);
                if computed != expected {
                    status = fail(
                        vec![g.generator(p.s), w],
                        format!("C_s{} C_{} differs from the closed form", p.s + 1, name(w)),
                    );
                    break;
                }
            }
            push(&format!("products_{family}"), status);
        }

        let delta = self
            .delta
            .iter()
            .map(|(w, d)| (g.from_word(w), d))
            .find(|(w, d)| jd.delta(*w) != *d)
            .map_or(Status::Pass, |(w, d)| {
                fail(vec![w], format!("Δ({}) = {:?}, expected {:?}", name(w), jd.delta(w), d))
            });
        push("delta", delta);

        let expected_d = sorted_set(g, &self.distinguished);
        let dist = if jd.distinguished() == expected_d.as_slice() {
            Status::Pass
        } else {
            fail(
                jd.distinguished().to_vec(),
                format!(
                    "𝒟 = {{{}}}",
                    jd.distinguished().iter().map(|&d| name(d)).collect::<Vec<_>>().join(", ")
                ),
            )
        };
        push("distinguished", dist);

        let nst = self
            .n
            .iter()
            .map(|(w, v)| (g.from_word(w), *v))
            .find(|(w, v)| jd.n(*w).to_i64() != Some(*v))
            .map_or(Status::Pass, |(w, v)| {
                fail(vec![w], format!("n_{} = {}, expected {v}", name(w), jd.n(w)))
            });
        push("n", nst);

        let chain: Vec<Vec<Elem>> = self.chain.iter().map(|c| sorted_set(g, c)).collect();
        let mut computed: Vec<Vec<Elem>> = cells.cells(CellKind::TwoSided).to_vec();
        computed.sort();
        let mut expected = chain.clone();
        expected.sort();
        let lr = cells.preorder(CellKind::TwoSided);
        let chain_status = if computed != expected {
            fail(Vec::new(), format!("{} two-sided cells, expected {}", computed.len(), expected.len()))
        } else {
            let mut st = Status::Pass;
            'outer: for i in 0..chain.len() {
                for j in 0..chain.len() {
                    let (x, y) = (chain[i][0], chain[j][0]);
                    if lr.leq(x, y) != (i <= j) {
                        st = fail(vec![x, y], format!("order between the cells of {} and {}", name(x), name(y)));
                        break 'outer;
                    }
                }
            }
            st
        };
        push("chain", chain_status);

        let mut left: Vec<Vec<Elem>> = cells.cells(CellKind::Left).to_vec();
        left.sort();
        let mut exp_left: Vec<Vec<Elem>> = self.left_cells.iter().map(|(c, _)| sorted_set(g, c)).collect();
        exp_left.sort();
        push(
            "left_cells",
            if left == exp_left {
                Status::Pass
            } else {
                fail(Vec::new(), "left cells differ".into())
            },
        );

        let table = CharacterTable::dihedral(self.m)?;
        let mut afford = Status::Pass;
        for (cell, labels) in &self.left_cells {
            let elems: Vec<Elem> = cell.iter().map(|w| g.from_word(w)).collect();
            let mult = CellModule::new(&elems, inst.size()).decompose(inst, kl, &table)?;
            let expected: Vec<i64> = table
                .labels
                .iter()
                .map(|l| labels.iter().filter(|x| *x == l).count() as i64)
                .collect();
            if mult != expected {
                afford = fail(vec![elems[0]], format!("left cell of {} affords {mult:?}", name(elems[0])));
                break;
            }
        }
        push("afforded", afford);
        Ok(out)
    }
}
