mod common;

use common::*;
use hecke_core::asymptotic::*;
use hecke_core::coxeter::{CoxeterGroup, CoxeterMatrix, Elem};
use hecke_core::hecke::{HTable, KlTable};
use hecke_core::instance::{Instance, WeightFunction};
use hecke_core::int::Int;
use hecke_core::ordgroup::{exp_add, exp_scale, exp_sub, Exp, OrderedGroup};
use hecke_core::poly::Poly;

fn build(inst: &Instance) -> (KlTable, HTable, JData) {
    let kl = KlTable::compute(inst);
    let h = HTable::compute(inst, &kl);
    let jd = JData::from_htable(inst, &kl, &h).unwrap();
    (kl, h, jd)
}

fn a1(weight: i32) -> Instance {
    let g = CoxeterGroup::new(CoxeterMatrix::type_a(1).unwrap()).unwrap();
    Instance::new(g, OrderedGroup::integers(), WeightFunction::integers(&[weight])).unwrap()
}

fn unequal() -> Vec<(usize, Instance)> {
    let mut out = Vec::new();
    for m in [4, 6, 8] {
        out.push((m, dihedral(m as u32, 2, 1)));
        out.push((m, dihedral(m as u32, 3, 2)));
        out.push((m, dihedral_lex(m as u32)));
    }
    out
}

fn int(x: i64) -> Int {
    Int::from(x)
}

#[test]
fn rank_one() {
    let inst = a1(3);
    let (_, h, jd) = build(&inst);
    let (one, s) = (Elem::IDENTITY, Elem(1));
    assert_eq!(jd.a(one).as_slice(), &[0]);
    assert_eq!(jd.a(s).as_slice(), &[3]);
    assert_eq!(jd.gamma(s, s, s), int(1));
    assert_eq!(jd.gamma(one, one, one), int(1));
    assert_eq!(jd.multiply(&jd.basis(s), &jd.basis(s)), jd.basis(s));
    assert_eq!(jd.distinguished(), &[one, s]);
    assert_eq!(jd.identity(), jd.basis(one).add(&jd.basis(s)));
    let phi = jd.phi(&h);
    assert_eq!(phi[0], jd.identity().map(|c| Poly::constant(1, c.clone())));
    assert_eq!(phi[1], JElement::from_terms(vec![(1, inst.v_sum(0).clone())]));
}

#[test]
fn dihedral_a_values_follow_the_cells() {
    for (m, inst) in unequal() {
        let (_, _, jd) = build(&inst);
        let (b, a) = (inst.weights().get(0).clone(), inst.weights().get(1).clone());
        let half = m as i32 / 2;
        let zero: Exp = inst.gamma().zero();
        let a_eps2 = exp_add(&exp_scale(&exp_sub(&b, &a), half), &a);
        let a_eps = exp_scale(&exp_add(&b, &a), half);
        assert_eq!(jd.a(alt(&inst, 0, 0)), &zero);
        assert_eq!(jd.a(alt(&inst, 1, 1)), &a);
        assert_eq!(jd.a(alt(&inst, 0, m - 1)), &a_eps2);
        assert_eq!(jd.a(alt(&inst, 0, m)), &a_eps);
        for w in inst.group().elements() {
            let special = [0, 1, m - 1, m].iter().any(|&k| w == alt(&inst, if k == 1 { 1 } else { 0 }, k));
            if !special {
                assert_eq!(jd.a(w), &b, "m={m} w={}", inst.group().word_string(w));
            }
        }
    }
}

#[test]
fn dihedral_delta_distinguished_and_signs() {
    for (m, inst) in unequal() {
        let (_, _, jd) = build(&inst);
        let (b, a) = (inst.weights().get(0).clone(), inst.weights().get(1).clone());
        let lin = |p: i32, q: i32| exp_add(&exp_scale(&b, p), &exp_scale(&a, q));
        for k in 0..=m / 2 {
            let k32 = k as i32;
            assert_eq!(jd.delta(alt(&inst, 0, 2 * k)), &lin(k32, k32));
            assert_eq!(jd.delta(alt(&inst, 1, 2 * k)), &lin(k32, k32));
            if 2 * k < m {
                assert_eq!(jd.delta(alt(&inst, 0, 2 * k + 1)), &lin(k32 + 1, -k32));
                if k >= 1 {
                    assert_eq!(jd.delta(alt(&inst, 1, 2 * k + 1)), &lin(k32, k32 - 1));
                }
            }
        }
        assert_eq!(jd.delta(alt(&inst, 1, 1)), &a);
        let mut expect = vec![
            alt(&inst, 0, 0),
            alt(&inst, 1, 1),
            alt(&inst, 0, 1),
            alt(&inst, 1, 3),
            alt(&inst, 0, m - 1),
            alt(&inst, 0, m),
        ];
        expect.sort();
        assert_eq!(jd.distinguished(), expect.as_slice());
        for &d in &expect {
            // leading coefficient of p_{1,1_{2k+1}} is (-1)^k; cross-checked by an
            // independent bar-invariant solve
            let sign = if d == alt(&inst, 0, m - 1) && (m / 2) % 2 == 0 { -1 } else { 1 };
            assert_eq!(jd.n(d), &int(sign));
        }
    }
}

#[test]
fn symmetries() {
    for inst in [dihedral(4, 2, 1), dihedral(6, 3, 2), dihedral(8, 3, 1), dihedral(5, 1, 1), b2(3, 1)] {
        let (_, _, jd) = build(&inst);
        let g = inst.group();
        for x in g.elements() {
            let xi = g.inverse(x);
            assert_eq!(jd.a(x), jd.a(xi));
            assert_eq!(jd.delta(x), jd.delta(xi));
            assert_eq!(jd.n(x), jd.n(xi));
            for y in g.elements() {
                for z in g.elements() {
                    let c = jd.gamma(x, y, z);
                    assert_eq!(c, jd.gamma(y, z, x));
                    assert_eq!(c, jd.gamma(g.inverse(y), xi, g.inverse(z)));
                    if !c.is_zero() {
                        assert_eq!(jd.a(x), jd.a(y));
                        assert_eq!(jd.a(x), jd.a(z));
                    }
                }
            }
        }
    }
}

#[test]
fn ring_identity_and_orthogonality() {
    for inst in [dihedral(6, 3, 1), dihedral(6, 1, 1), b2(1, 2)] {
        let (_, _, jd) = build(&inst);
        let g = inst.group();
        let one = jd.identity();
        for w in g.elements() {
            assert_eq!(jd.multiply(&one, &jd.basis(w)), jd.basis(w));
            assert_eq!(jd.multiply(&jd.basis(w), &one), jd.basis(w));
        }
        for x in g.elements() {
            for y in g.elements() {
                let s = jd
                    .distinguished()
                    .iter()
                    .fold(Int::ZERO, |acc, &d| acc + &jd.gamma(g.inverse(x), y, d) * jd.n(d));
                assert_eq!(s, int(i64::from(x == y)));
            }
        }
        let n = g.size() as u32;
        let all = (0..n).flat_map(|x| (0..n).flat_map(move |y| (0..n).map(move |z| (Elem(x), Elem(y), Elem(z)))));
        assert_eq!(jd.associativity_witness(all), None);
    }
}

#[test]
fn phi_is_a_homomorphism() {
    for inst in [dihedral(4, 2, 1), dihedral(6, 3, 2), dihedral(8, 2, 1), dihedral_lex(6)] {
        let (_, h, jd) = build(&inst);
        let phi = jd.phi(&h);
        let g = inst.group();
        assert_eq!(phi[0], jd.identity().map(|c| Poly::constant(inst.gamma_rank(), c.clone())));
        for x in g.elements() {
            for y in g.elements() {
                let lhs = jd.multiply_a(&phi[x.id()], &phi[y.id()]);
                let mut rhs = JElement::default();
                for (z, c) in h.row(x, y) {
                    rhs = rhs.add(&phi[*z as usize].map(|p| p.mul(c)));
                }
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn on_demand_columns_agree_with_the_full_table() {
    for inst in [dihedral(6, 3, 2), b2(2, 1), equal(CoxeterMatrix::type_a(3).unwrap())] {
        let (kl, h, jd) = build(&inst);
        let streamed = JData::compute(&inst, &kl, &OnDemand { inst: &inst, kl: &kl }).unwrap();
        assert_eq!(jd, streamed);
        assert_eq!(jd.phi(&h), streamed.phi(&OnDemand { inst: &inst, kl: &kl }));
    }
}
