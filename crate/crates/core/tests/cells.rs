mod common;

use common::*;
use hecke_core::cells::*;
use hecke_core::chartable::CharacterTable;
use hecke_core::coxeter::{CoxeterMatrix, Elem};
use hecke_core::hecke::{HTable, KlTable};
use hecke_core::instance::Instance;
use hecke_core::poly::Poly;

fn setup(inst: &Instance) -> (KlTable, CellPartition) {
    let kl = KlTable::compute(inst);
    let cells = CellPartition::compute(inst, &kl);
    (kl, cells)
}

fn sorted(mut v: Vec<Elem>) -> Vec<Elem> {
    v.sort();
    v
}

fn unequal_dihedral() -> Vec<(u32, Instance)> {
    let mut out = Vec::new();
    for m in [4, 6, 8] {
        out.push((m, dihedral(m, 2, 1)));
        out.push((m, dihedral(m, 3, 2)));
        out.push((m, dihedral_lex(m)));
    }
    out
}

#[test]
fn dihedral_two_sided_chain() {
    for (m, inst) in unequal_dihedral() {
        let (_, cells) = setup(&inst);
        let a = |f, k| alt(&inst, f, k);
        let m = m as usize;
        let special = [a(0, 0), a(1, 1), a(0, m - 1), a(0, m)];
        let middle: Vec<Elem> = inst.group().elements().filter(|w| !special.contains(w)).collect();
        let chain = [vec![a(0, m)], vec![a(0, m - 1)], middle, vec![a(1, 1)], vec![a(0, 0)]];
        let two = cells.cells(CellKind::TwoSided);
        assert_eq!(two.len(), 5);
        let idx: Vec<usize> = chain
            .iter()
            .map(|c| {
                let i = cells.cell_of(CellKind::TwoSided, c[0]);
                assert_eq!(sorted(two[i].clone()), sorted(c.clone()));
                i
            })
            .collect();
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(cells.two_sided_leq(idx[i], idx[j]), i <= j, "m={m} {i} {j}");
            }
        }
    }
}

#[test]
fn dihedral_middle_left_cells() {
    for (m, inst) in unequal_dihedral() {
        let (_, cells) = setup(&inst);
        let m = m as usize;
        // {1_1, 2_2, 1_3, …, 2_{m-2}} and {1_2, 2_3, 1_4, …, 2_{m-1}}
        let first: Vec<Elem> = (1..=m - 2).map(|k| alt(&inst, if k % 2 == 1 { 0 } else { 1 }, k)).collect();
        let second: Vec<Elem> = (2..=m - 1).map(|k| alt(&inst, if k % 2 == 0 { 0 } else { 1 }, k)).collect();
        for c in [first, second] {
            let i = cells.cell_of(CellKind::Left, c[0]);
            assert_eq!(sorted(cells.cells(CellKind::Left)[i].clone()), sorted(c.clone()));
            assert_eq!(c.len(), m - 2);
        }
        let mid = cells.cell_of(CellKind::TwoSided, alt(&inst, 0, 1));
        assert_eq!(cells.left_cells_in(mid).len(), 2);
    }
}

#[test]
fn identity_is_its_own_cell() {
    for inst in [
        equal(CoxeterMatrix::type_a(2).unwrap()),
        equal(CoxeterMatrix::type_b(2).unwrap()),
        b2(3, 1),
        b2(1, 2),
    ] {
        let (_, cells) = setup(&inst);
        for kind in [CellKind::Left, CellKind::Right, CellKind::TwoSided] {
            let i = cells.cell_of(kind, Elem::IDENTITY);
            assert_eq!(cells.cells(kind)[i], vec![Elem::IDENTITY]);
        }
    }
}

#[test]
fn preorder_axioms_and_inverses() {
    for inst in [dihedral(6, 3, 1), b2(2, 1), equal(CoxeterMatrix::type_a(3).unwrap())] {
        let (_, cells) = setup(&inst);
        let g = inst.group();
        for kind in [CellKind::Left, CellKind::Right, CellKind::TwoSided] {
            let p = cells.preorder(kind);
            for x in g.elements() {
                assert!(p.leq(x, x));
                for y in g.elements() {
                    if !p.leq(x, y) {
                        continue;
                    }
                    for z in g.elements() {
                        if p.leq(y, z) {
                            assert!(p.leq(x, z));
                        }
                    }
                }
            }
        }
        for x in g.elements() {
            for y in g.elements() {
                let (xi, yi) = (g.inverse(x), g.inverse(y));
                assert_eq!(cells.preorder(CellKind::Right).leq(x, y), cells.preorder(CellKind::Left).leq(xi, yi));
                if cells.preorder(CellKind::Left).leq(x, y) {
                    assert!(cells.preorder(CellKind::TwoSided).leq(x, y));
                }
            }
            let l = cells.cell_of(CellKind::Left, x);
            let t = cells.cell_of(CellKind::TwoSided, x);
            for y in &cells.cells(CellKind::Left)[l] {
                assert_eq!(cells.cell_of(CellKind::TwoSided, *y), t);
            }
        }
    }
}

#[test]
fn generator_edges_close_under_all_products() {
    for inst in [dihedral(4, 2, 1), dihedral(6, 3, 2), dihedral(5, 1, 1), b2(3, 1), b2(1, 1)] {
        let (kl, cells) = setup(&inst);
        let h = HTable::compute(&inst, &kl);
        let left = cells.preorder(CellKind::Left);
        let right = cells.preorder(CellKind::Right);
        for x in inst.group().elements() {
            for w in inst.group().elements() {
                for (y, _) in h.row(x, w) {
                    assert!(left.leq(Elem(*y), w));
                    assert!(right.leq(Elem(*y), x));
                }
            }
        }
    }
}

#[test]
fn cell_module_law() {
    for inst in [dihedral(6, 3, 2), b2(2, 1), equal(CoxeterMatrix::type_a(3).unwrap())] {
        let (kl, cells) = setup(&inst);
        let h = HTable::compute(&inst, &kl);
        let g = inst.group();
        for cell in cells.cells(CellKind::Left) {
            let module = CellModule::new(cell, inst.size());
            let rho: Vec<PolyMatrix> = g.elements().map(|w| module.action(&h, w)).collect();
            for s in 0..g.rank() {
                assert_eq!(module.generator_action(&inst, &kl, s), rho[g.generator(s).id()]);
            }
            for x in g.elements() {
                for y in g.elements() {
                    let lhs = poly_mul(&rho[x.id()], &rho[y.id()]);
                    let d = module.dim();
                    let mut rhs = vec![vec![Poly::zero(); d]; d];
                    for (z, c) in h.row(x, y) {
                        for i in 0..d {
                            for j in 0..d {
                                rhs[i][j].add_product(c, &rho[*z as usize][i][j]);
                            }
                        }
                    }
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}

fn afforded(inst: &Instance, kl: &KlTable, table: &CharacterTable, cell: &[Elem]) -> Vec<i64> {
    CellModule::new(cell, inst.size()).decompose(inst, kl, table).unwrap()
}

fn only(table: &CharacterTable, labels: &[&str]) -> Vec<i64> {
    table
        .labels
        .iter()
        .map(|l| labels.iter().filter(|x| **x == l.as_str()).count() as i64)
        .collect()
}

#[test]
fn dihedral_cells_afford_the_listed_representations() {
    for (m, inst) in unequal_dihedral() {
        let (kl, cells) = setup(&inst);
        let table = CharacterTable::dihedral(m).unwrap();
        let mu = m as usize;
        let cell = |w: Elem| cells.cells(CellKind::Left)[cells.cell_of(CellKind::Left, w)].clone();
        assert_eq!(afforded(&inst, &kl, &table, &cell(alt(&inst, 0, 0))), only(&table, &["1_W"]));
        assert_eq!(afforded(&inst, &kl, &table, &cell(alt(&inst, 1, 1))), only(&table, &["eps_1"]));
        assert_eq!(afforded(&inst, &kl, &table, &cell(alt(&inst, 0, mu - 1))), only(&table, &["eps_2"]));
        assert_eq!(afforded(&inst, &kl, &table, &cell(alt(&inst, 0, mu))), only(&table, &["eps"]));
        let rhos: Vec<String> = (1..=(mu - 2) / 2).map(|j| format!("rho_{j}")).collect();
        let rhos: Vec<&str> = rhos.iter().map(|s| s.as_str()).collect();
        for w in [alt(&inst, 0, 1), alt(&inst, 0, 2)] {
            let c = cell(w);
            assert_eq!(c.len(), mu - 2);
            assert_eq!(afforded(&inst, &kl, &table, &c), only(&table, &rhos));
        }
    }
}

#[test]
fn left_cells_sum_to_regular_representation() {
    for inst in [dihedral(4, 2, 1), dihedral(4, 1, 1), dihedral(5, 1, 1)] {
        let m = if inst.size() == 8 { 4 } else { 5 };
        let (kl, cells) = setup(&inst);
        let table = CharacterTable::dihedral(m).unwrap();
        let mut total = vec![0i64; table.labels.len()];
        for c in cells.cells(CellKind::Left) {
            for (t, k) in total.iter_mut().zip(afforded(&inst, &kl, &table, c)) {
                *t += k;
            }
        }
        let degrees: Vec<i64> = (0..table.labels.len()).map(|i| table.degree(i)).collect();
        assert_eq!(total, degrees);
    }
}
