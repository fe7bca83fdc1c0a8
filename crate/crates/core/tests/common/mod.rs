#![allow(dead_code)]

use hecke_core::coxeter::{CoxeterGroup, CoxeterMatrix, Elem};
use hecke_core::instance::{Instance, WeightFunction};
use hecke_core::ordgroup::{Exp, OrderedGroup};
use hecke_core::poly::Poly;
use smallvec::smallvec;

pub fn dihedral(m: u32, l1: i32, l2: i32) -> Instance {
    let g = CoxeterGroup::new(CoxeterMatrix::dihedral(m).unwrap()).unwrap();
    Instance::new(g, OrderedGroup::integers(), WeightFunction::integers(&[l1, l2])).unwrap()
}

/// `L(s1) = b = (0,1)`, `L(s2) = a = (1,0)` with `b ≫ a`.
pub fn dihedral_lex(m: u32) -> Instance {
    let g = CoxeterGroup::new(CoxeterMatrix::dihedral(m).unwrap()).unwrap();
    Instance::new(
        g,
        OrderedGroup::lex(2, &[1, 0]).unwrap(),
        WeightFunction::new(vec![smallvec![0, 1], smallvec![1, 0]]),
    )
    .unwrap()
}

pub fn equal(m: CoxeterMatrix) -> Instance {
    Instance::equal_parameters(m).unwrap()
}

pub fn b2(lb: i32, la: i32) -> Instance {
    let g = CoxeterGroup::new(CoxeterMatrix::type_b(2).unwrap()).unwrap();
    Instance::new(g, OrderedGroup::integers(), WeightFunction::integers(&[lb, la])).unwrap()
}

/// `1_k = s1 s2 s1 …` (first = 0) or `2_k = s2 s1 s2 …` (first = 1).
pub fn alt(inst: &Instance, first: u8, k: usize) -> Elem {
    let word: Vec<u8> = (0..k).map(|i| (first + i as u8) % 2).collect();
    inst.group().from_word(&word)
}

pub fn eps(e: &[i32]) -> Poly {
    let e: Exp = e.iter().copied().collect();
    Poly::eps(e)
}

pub fn v(inst: &Instance, s: usize) -> Poly {
    inst.v(s).clone()
}

pub fn b3(lb: i32, la: i32) -> Instance {
    let g = CoxeterGroup::new(CoxeterMatrix::type_b(3).unwrap()).unwrap();
    Instance::new(g, OrderedGroup::integers(), WeightFunction::integers(&[lb, la, la])).unwrap()
}
