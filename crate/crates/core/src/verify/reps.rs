//! Invariants `a_λ`, `f_λ` of irreducible representations: built-in for
//! dihedral groups, and the static table for `F_4`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::{fail, Status};
use crate::asymptotic::JData;
use crate::cells::{CellKind, CellPartition};
use crate::chartable::CharacterTable;
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::numfield::NfElem;
use crate::ordgroup::{exp_add, exp_scale, exp_sub, zero_exp, Exp, OrderedGroup};

/// `a_λ` (and optionally `f_λ`) for each row of a character table.
#[derive(Clone, Debug)]
pub struct RepInvariantData {
    pub table: CharacterTable,
    pub a: Vec<Exp>,
    pub f: Option<Vec<NfElem>>,
}

impl RepInvariantData {
    pub fn new(table: CharacterTable, a: Vec<Exp>, f: Option<Vec<NfElem>>) -> Result<Self> {
        if a.len() != table.labels.len() || f.as_ref().is_some_and(|f| f.len() != a.len()) {
            return Err(Error::Input("representation data does not match the character table".into()));
        }
        Ok(Self { table, a, f })
    }

    /// The dihedral list, for generators `s1 = 0`, `s2 = 1`. If
    /// `L(s2) > L(s1)` the roles of the two generators are exchanged.
    pub fn dihedral(inst: &Instance) -> Result<Self> {
        let g = inst.group();
        if g.rank() != 2 {
            return Err(Error::Input("dihedral data needs a rank 2 group".into()));
        }
        let m = g.matrix().get(0, 1);
        let table = CharacterTable::dihedral(m)?;
        let (l1, l2) = (inst.weights().get(0), inst.weights().get(1));
        let gamma = inst.gamma();
        let half = (m / 2) as i32;
        let k = gamma.rank();
        let mut a = Vec::with_capacity(table.labels.len());
        for label in &table.labels {
            let v = match label.as_str() {
                "1_W" => zero_exp(k),
                "eps" if m % 2 == 1 => exp_scale(l1, m as i32),
                "eps" => exp_scale(&exp_add(l1, l2), half),
                l if l.starts_with("rho_") => gamma.max(l1, l2).clone(),
                "eps_1" | "eps_2" => {
                    // the linear character that is +1 on the heavier generator
                    let heavy_plus = (label == "eps_1") == (gamma.compare(l1, l2) != Ordering::Less);
                    let (big, small) = if gamma.compare(l1, l2) != Ordering::Less { (l1, l2) } else { (l2, l1) };
                    if heavy_plus {
                        small.clone()
                    } else {
                        exp_add(&exp_scale(&exp_sub(big, small), half), small)
                    }
                }
                other => return Err(Error::Consistency(format!("unexpected dihedral label {other}"))),
            };
            a.push(v);
        }
        let f = if m.is_multiple_of(2) && l1 != l2 {
            let field = table.field.clone();
            let mut f = Vec::new();
            for label in &table.labels {
                let v = match label.strip_prefix("rho_") {
                    Some(j) => {
                        let j: i64 = j.parse().map_err(|_| Error::Consistency("bad label".into()))?;
                        let denom = field.from_int(2).sub(&field.two_cos(2 * j));
                        field.from_int(m as i64).mul(&denom.inv().ok_or_else(|| Error::Singular("f_rho".into()))?)
                    }
                    None => field.one(),
                };
                f.push(v);
            }
            Some(f)
        } else {
            None
        };
        Self::new(table, a, f)
    }
}

/// The four parameter regimes of the `F_4` table, for `b ≥ a`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum F4Regime {
    BAboveTwoA,
    BEqualsTwoA,
    BBetween,
    BEqualsA,
}

/// Irreducible characters of `F_4` in table order.
pub const F4_LABELS: [&str; 25] = [
    "1_1", "1_2", "1_3", "1_4", "2_1", "2_2", "2_3", "2_4", "4_1", "9_1", "9_2", "9_3", "9_4", "6_1", "6_2",
    "12_1", "4_2", "4_3", "4_4", "4_5", "8_1", "8_2", "8_3", "8_4", "16_1",
];

/// Per label and regime: `(f_λ, coefficient of b, coefficient of a)` in `a_λ`.
const F4_TABLE: [[(u32, i32, i32); 4]; 25] = [
    [(1, 0, 0), (1, 0, 0), (1, 0, 0), (1, 0, 0)],
    [(1, 12, -9), (2, 0, 15), (1, 11, -7), (8, 0, 4)],
    [(1, 0, 3), (2, 0, 3), (1, -1, 5), (8, 0, 4)],
    [(1, 12, 12), (1, 0, 36), (1, 12, 12), (1, 0, 24)],
    [(1, 3, -3), (2, 0, 3), (1, 2, -1), (2, 0, 1)],
    [(1, 3, 9), (2, 0, 15), (1, 2, 11), (2, 0, 13)],
    [(1, 0, 1), (1, 0, 1), (1, 0, 1), (2, 0, 1)],
    [(1, 12, 1), (1, 0, 25), (1, 12, 1), (2, 0, 13)],
    [(2, 3, 1), (2, 0, 7), (2, 3, 1), (8, 0, 4)],
    [(1, 2, -1), (2, 0, 3), (1, 1, 1), (1, 0, 2)],
    [(1, 6, -2), (1, 0, 10), (1, 6, -2), (8, 0, 4)],
    [(1, 2, 2), (1, 0, 6), (1, 2, 2), (8, 0, 4)],
    [(1, 6, 3), (2, 0, 15), (1, 5, 5), (1, 0, 10)],
    [(3, 3, 1), (3, 0, 7), (3, 3, 1), (3, 0, 4)],
    [(3, 3, 1), (3, 0, 7), (3, 3, 1), (12, 0, 4)],
    [(6, 3, 1), (6, 0, 7), (6, 3, 1), (24, 0, 4)],
    [(1, 1, 0), (1, 0, 2), (1, 1, 0), (2, 0, 1)],
    [(1, 7, -3), (1, 0, 11), (1, 7, -3), (4, 0, 4)],
    [(1, 1, 3), (1, 0, 5), (1, 1, 3), (4, 0, 4)],
    [(1, 7, 6), (1, 0, 20), (1, 7, 6), (2, 0, 13)],
    [(1, 3, 0), (1, 0, 6), (1, 3, 0), (1, 0, 3)],
    [(1, 3, 6), (1, 0, 12), (1, 3, 6), (1, 0, 9)],
    [(1, 1, 1), (2, 0, 3), (1, 0, 3), (1, 0, 3)],
    [(1, 7, 1), (2, 0, 15), (1, 6, 3), (1, 0, 9)],
    [(2, 3, 1), (2, 0, 7), (2, 3, 1), (4, 0, 4)],
];

/// Two-sided cells carrying more than one irreducible.
fn f4_boxes(r: F4Regime) -> &'static [&'static [&'static str]] {
    const SIXTEEN: &[&str] = &["4_1", "6_1", "6_2", "12_1", "16_1"];
    match r {
        F4Regime::BAboveTwoA | F4Regime::BBetween => &[SIXTEEN],
        F4Regime::BEqualsTwoA => &[&["1_2", "2_2", "8_4", "9_4"], &["1_3", "2_1", "8_3", "9_1"], SIXTEEN],
        F4Regime::BEqualsA => &[
            &["2_1", "2_3", "4_2"],
            &["2_2", "2_4", "4_5"],
            &["1_2", "1_3", "4_1", "4_3", "4_4", "6_1", "6_2", "9_2", "9_3", "12_1", "16_1"],
        ],
    }
}

fn regime_column(r: F4Regime) -> usize {
    match r {
        F4Regime::BAboveTwoA => 0,
        F4Regime::BEqualsTwoA => 1,
        F4Regime::BBetween => 2,
        F4Regime::BEqualsA => 3,
    }
}

fn f4_degree(label: &str) -> u64 {
    label.split('_').next().and_then(|d| d.parse().ok()).expect("label")
}

/// Regime of `(a, b)` with `b ≥ a > 0`.
pub fn f4_regime(gamma: &OrderedGroup, a: &[i32], b: &[i32]) -> Option<F4Regime> {
    let two_a = exp_scale(a, 2);
    match (gamma.compare(b, a), gamma.compare(b, &two_a)) {
        (Ordering::Less, _) => None,
        (Ordering::Equal, _) => Some(F4Regime::BEqualsA),
        (_, Ordering::Greater) => Some(F4Regime::BAboveTwoA),
        (_, Ordering::Equal) => Some(F4Regime::BEqualsTwoA),
        (_, Ordering::Less) => Some(F4Regime::BBetween),
    }
}

/// `(f_λ, a_λ)` for each label of [`F4_LABELS`].
pub fn f4_invariants(r: F4Regime, a: &[i32], b: &[i32]) -> Vec<(u32, Exp)> {
    let col = regime_column(r);
    F4_TABLE
        .iter()
        .map(|row| {
            let (f, cb, ca) = row[col];
            (f, exp_add(&exp_scale(b, cb), &exp_scale(a, ca)))
        })
        .collect()
}

/// Expected two-sided cells as `(|cell|, a-value)`, sorted. A cell holding
/// the irreducibles `λ` has `Σ d_λ²` elements.
pub fn f4_expected_cells(r: F4Regime, a: &[i32], b: &[i32]) -> Vec<(u64, Exp)> {
    let inv = f4_invariants(r, a, b);
    let boxes = f4_boxes(r);
    let index = |l: &str| F4_LABELS.iter().position(|x| *x == l).expect("known label");
    let mut out: Vec<(u64, Exp)> = boxes
        .iter()
        .map(|bx| (bx.iter().map(|l| f4_degree(l).pow(2)).sum(), inv[index(bx[0])].1.clone()))
        .collect();
    for (i, l) in F4_LABELS.iter().enumerate() {
        if !boxes.iter().any(|bx| bx.contains(l)) {
            out.push((f4_degree(l).pow(2), inv[i].1.clone()));
        }
    }
    out.sort();
    out
}

/// Compares the computed two-sided cells of `F_4` (generators on the chain
/// with the double bond between the second and third) against the table.
pub fn f4_check_cells(inst: &Instance, cells: &CellPartition, jd: &JData) -> Status {
    let gamma = inst.gamma();
    let (mut a, mut b) = (inst.weights().get(0).clone(), inst.weights().get(2).clone());
    if gamma.compare(&b, &a) == Ordering::Less {
        core::mem::swap(&mut a, &mut b);
    }
    let regime = f4_regime(gamma, &a, &b).expect("b ≥ a after swapping");
    let expected = f4_expected_cells(regime, &a, &b);
    let mut found: Vec<(u64, Exp)> = Vec::new();
    for cell in cells.cells(CellKind::TwoSided) {
        let av = jd.a(cell[0]);
        if let Some(&z) = cell.iter().find(|&&z| jd.a(z) != av) {
            return fail(alloc::vec![cell[0], z], "a is not constant on a two-sided cell".into());
        }
        found.push((cell.len() as u64, av.clone()));
    }
    found.sort();
    if found == expected {
        Status::Pass
    } else {
        let missing: Vec<String> = expected
            .iter()
            .filter(|e| !found.contains(e))
            .map(|(n, a)| format!("({n}, {a:?})"))
            .collect();
        fail(
            Vec::new(),
            format!("{regime:?}: table cells not found among computed cells: {}", missing.join(", ")),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use smallvec::smallvec;

    #[test]
    fn f4_columns_agree_on_boundaries() {
        let a: Exp = smallvec![1];
        let eval = |r, b: i32| -> Vec<Exp> {
            f4_invariants(r, &a, &[b]).into_iter().map(|(_, e)| e).collect()
        };
        // b = 2a is the common boundary of the first three columns
        assert_eq!(eval(F4Regime::BAboveTwoA, 2), eval(F4Regime::BEqualsTwoA, 2));
        assert_eq!(eval(F4Regime::BBetween, 2), eval(F4Regime::BEqualsTwoA, 2));
        assert_eq!(eval(F4Regime::BBetween, 1), eval(F4Regime::BEqualsA, 1));
    }

    #[test]
    fn f4_boxes_partition_degrees() {
        for r in [F4Regime::BAboveTwoA, F4Regime::BEqualsTwoA, F4Regime::BBetween, F4Regime::BEqualsA] {
            let a: Exp = smallvec![1, 0];
            let b: Exp = smallvec![0, 1];
            let cells = f4_expected_cells(r, &a, &b);
            assert_eq!(cells.iter().map(|c| c.0).sum::<u64>(), 1152);
            let inv = f4_invariants(r, &a, &b);
            for bx in f4_boxes(r) {
                let i0 = F4_LABELS.iter().position(|l| l == &bx[0]).unwrap();
                for l in bx.iter() {
                    let i = F4_LABELS.iter().position(|x| x == l).unwrap();
                    assert_eq!(inv[i].1, inv[i0].1, "{r:?} {l}");
                }
            }
        }
        assert_eq!(f4_expected_cells(F4Regime::BAboveTwoA, &[1], &[5]).len(), 21);
        assert_eq!(f4_expected_cells(F4Regime::BEqualsTwoA, &[1], &[2]).len(), 15);
        assert_eq!(f4_expected_cells(F4Regime::BBetween, &[2], &[3]).len(), 21);
        assert_eq!(f4_expected_cells(F4Regime::BEqualsA, &[1], &[1]).len(), 11);
    }

    #[test]
    fn regime_under_lex_order() {
        let g = OrderedGroup::lex(2, &[1, 0]).unwrap();
        let r = f4_regime(&g, &[1, 0], &[0, 1]);
        assert_eq!(r, Some(F4Regime::BAboveTwoA));
    }
}
