//! Left, right and two-sided cells and the associated cell modules.

use alloc::vec;
use alloc::vec::Vec;

use crate::chartable::CharacterTable;
use crate::coxeter::Elem;
use crate::error::{Error, Result};
use crate::hecke::{HTable, KlTable, Row};
use crate::instance::Instance;
use crate::int::Int;
use crate::numfield::NfElem;
use crate::poly::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CellKind {
    Left,
    Right,
    TwoSided,
}

/// Reflexive-transitive closure of a directed graph on `0..n`, stored as
/// bitsets: `y ≤ w` iff `y` is reachable from `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Preorder {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Preorder {
    /// `adj[w]` lists the `y` with an edge `w → y`.
    pub fn from_graph(adj: &[Vec<u32>]) -> Self {
        let n = adj.len();
        let words = n.div_ceil(64);
        let mut bits = vec![0u64; n * words];
        let mut stack: Vec<u32> = Vec::new();
        for w in 0..n {
            let row = &mut bits[w * words..(w + 1) * words];
            row[w / 64] |= 1 << (w % 64);
            stack.push(w as u32);
            while let Some(u) = stack.pop() {
                for &y in &adj[u as usize] {
                    let (i, b) = (y as usize / 64, y % 64);
                    if row[i] & (1 << b) == 0 {
                        row[i] |= 1 << b;
                        stack.push(y);
                    }
                }
            }
        }
        Self { n, words, bits }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn leq(&self, y: Elem, w: Elem) -> bool {
        self.bits[w.id() * self.words + y.id() / 64] & (1 << (y.id() % 64)) != 0
    }

    pub fn equiv(&self, x: Elem, y: Elem) -> bool {
        self.leq(x, y) && self.leq(y, x)
    }

    /// Elements `y ≤ w`.
    pub fn below(&self, w: Elem) -> impl Iterator<Item = Elem> + '_ {
        let row = &self.bits[w.id() * self.words..(w.id() + 1) * self.words];
        (0..self.n as u32).filter(move |&y| row[y as usize / 64] & (1 << (y % 64)) != 0).map(Elem)
    }

    /// Equivalence classes, ordered by their smallest element, and the
    /// class index of every element.
    pub fn classes(&self) -> (Vec<Vec<Elem>>, Vec<usize>) {
        let mut of = vec![usize::MAX; self.n];
        let mut classes: Vec<Vec<Elem>> = Vec::new();
        for x in 0..self.n as u32 {
            if of[x as usize] != usize::MAX {
                continue;
            }
            let k = classes.len();
            let class: Vec<Elem> = self
                .below(Elem(x))
                .filter(|&y| self.leq(Elem(x), y))
                .collect();
            for y in &class {
                of[y.id()] = k;
            }
            classes.push(class);
        }
        (classes, of)
    }
}

/// The three cell preorders of one instance and their cells.
#[derive(Clone, Debug)]
pub struct CellPartition {
    left: Preorder,
    right: Preorder,
    two_sided: Preorder,
    cells: [Vec<Vec<Elem>>; 3],
    cell_of: [Vec<usize>; 3],
}

fn slot(kind: CellKind) -> usize {
    match kind {
        CellKind::Left => 0,
        CellKind::Right => 1,
        CellKind::TwoSided => 2,
    }
}

impl CellPartition {
    /// Edges `w → y` whenever `h_{s,w,y} ≠ 0` for some generator `s`.
    pub fn compute(inst: &Instance, kl: &KlTable) -> Self {
        let g = inst.group();
        let adj: Vec<Vec<u32>> = g
            .elements()
            .map(|w| {
                let mut out: Vec<u32> = (0..g.rank())
                    .flat_map(|s| kl.generator_row(inst, s, w).into_iter().map(|(y, _)| y))
                    .collect();
                out.sort_unstable();
                out.dedup();
                out
            })
            .collect();
        let inv: Vec<u32> = g.elements().map(|w| g.inverse(w).0).collect();
        Self::from_left_graph(&adj, &inv)
    }

    /// Builds all three preorders from the left-multiplication graph and
    /// the inversion map.
    pub fn from_left_graph(adj: &[Vec<u32>], inv: &[u32]) -> Self {
        let n = adj.len();
        let mut right_adj: Vec<Vec<u32>> = vec![Vec::new(); n];
        for (w, out) in adj.iter().enumerate() {
            right_adj[inv[w] as usize] = out.iter().map(|&y| inv[y as usize]).collect();
        }
        let both: Vec<Vec<u32>> = adj
            .iter()
            .zip(&right_adj)
            .map(|(a, b)| {
                let mut v: Vec<u32> = a.iter().chain(b).copied().collect();
                v.sort_unstable();
                v.dedup();
                v
            })
            .collect();
        let left = Preorder::from_graph(adj);
        let right = Preorder::from_graph(&right_adj);
        let two_sided = Preorder::from_graph(&both);
        let (lc, lo) = left.classes();
        let (rc, ro) = right.classes();
        let (tc, to) = two_sided.classes();
        Self {
            left,
            right,
            two_sided,
            cells: [lc, rc, tc],
            cell_of: [lo, ro, to],
        }
    }

    pub fn preorder(&self, kind: CellKind) -> &Preorder {
        match kind {
            CellKind::Left => &self.left,
            CellKind::Right => &self.right,
            CellKind::TwoSided => &self.two_sided,
        }
    }

    pub fn cells(&self, kind: CellKind) -> &[Vec<Elem>] {
        &self.cells[slot(kind)]
    }

    pub fn cell_of(&self, kind: CellKind, w: Elem) -> usize {
        self.cell_of[slot(kind)][w.id()]
    }

    /// Induced partial order on two-sided cells: `i ≤ j`.
    pub fn two_sided_leq(&self, i: usize, j: usize) -> bool {
        let c = &self.cells[2];
        self.two_sided.leq(c[i][0], c[j][0])
    }

    /// Left cells contained in the two-sided cell `i`.
    pub fn left_cells_in(&self, i: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self.cells[2][i]
            .iter()
            .map(|&w| self.cell_of[0][w.id()])
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// The module `[𝔠]` of a left cell: `C_w.e_x = Σ_{y∈𝔠} h_{w,x,y} e_y`.
#[derive(Clone, Debug)]
pub struct CellModule {
    cell: Vec<Elem>,
    pos: Vec<Option<usize>>,
}

pub type PolyMatrix = Vec<Vec<Poly>>;
pub type IntMatrix = Vec<Vec<Int>>;

impl CellModule {
    pub fn new(cell: &[Elem], group_size: usize) -> Self {
        let mut pos = vec![None; group_size];
        for (i, w) in cell.iter().enumerate() {
            pos[w.id()] = Some(i);
        }
        Self {
            cell: cell.to_vec(),
            pos,
        }
    }

    pub fn cell(&self) -> &[Elem] {
        &self.cell
    }

    pub fn dim(&self) -> usize {
        self.cell.len()
    }

    fn fill(&self, mut row_of: impl FnMut(Elem) -> Row) -> PolyMatrix {
        let d = self.dim();
        let mut m = vec![vec![Poly::zero(); d]; d];
        for (j, &x) in self.cell.iter().enumerate() {
            for (y, h) in row_of(x) {
                if let Some(i) = self.pos[y as usize] {
                    m[i][j] = h;
                }
            }
        }
        m
    }

    /// `ρ(C_w)` with entry `[y][x] = h_{w,x,y}`.
    pub fn action(&self, h: &HTable, w: Elem) -> PolyMatrix {
        self.fill(|x| h.row(w, x).clone())
    }

    /// `ρ(C_s)` from the μ-rule alone.
    pub fn generator_action(&self, inst: &Instance, kl: &KlTable, s: usize) -> PolyMatrix {
        self.fill(|x| kl.generator_row(inst, s, x))
    }

    /// The specialized module `[𝔠]_1`: `s` acts by `1 - θ₁(ρ(C_s))`.
    pub fn specialized_generator(&self, inst: &Instance, kl: &KlTable, s: usize) -> IntMatrix {
        let m = self.generator_action(inst, kl, s);
        let d = self.dim();
        (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let t = m[i][j].theta1();
                        if i == j {
                            Int::ONE - t
                        } else {
                            -t
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// Character of `[𝔠]_1` on the given words.
    pub fn specialized_character(
        &self,
        inst: &Instance,
        kl: &KlTable,
        words: &[Vec<u8>],
    ) -> Vec<Int> {
        let gens: Vec<IntMatrix> = (0..inst.group().rank())
            .map(|s| self.specialized_generator(inst, kl, s))
            .collect();
        words
            .iter()
            .map(|w| {
                let mut m = int_identity(self.dim());
                for &s in w {
                    m = int_mul(&m, &gens[s as usize]);
                }
                (0..self.dim()).fold(Int::ZERO, |acc, i| acc + m[i][i].clone())
            })
            .collect()
    }

    /// Multiplicities of the irreducible characters of `table` in `[𝔠]_1`.
    pub fn decompose(&self, inst: &Instance, kl: &KlTable, table: &CharacterTable) -> Result<Vec<i64>> {
        let chi = self.specialized_character(inst, kl, &table.class_words);
        let vals: Vec<NfElem> = chi
            .iter()
            .map(|c| {
                c.to_i64()
                    .map(|x| table.field.from_int(x))
                    .ok_or_else(|| Error::Consistency("character value out of range".into()))
            })
            .collect::<Result<_>>()?;
        table.decompose(&vals)
    }
}

pub fn int_identity(d: usize) -> IntMatrix {
    (0..d)
        .map(|i| (0..d).map(|j| if i == j { Int::ONE } else { Int::ZERO }).collect())
        .collect()
}

pub fn int_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let (r, k) = (a.len(), b.len());
    let c = b.first().map_or(0, |row| row.len());
    let mut out = vec![vec![Int::ZERO; c]; r];
    for i in 0..r {
        for t in 0..k {
            if a[i][t].is_zero() {
                continue;
            }
            for j in 0..c {
                if !b[t][j].is_zero() {
                    out[i][j] += &(&a[i][t] * &b[t][j]);
                }
            }
        }
    }
    out
}

pub fn poly_mul(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
    let (r, k) = (a.len(), b.len());
    let c = b.first().map_or(0, |row| row.len());
    let mut out = vec![vec![Poly::zero(); c]; r];
    for i in 0..r {
        for t in 0..k {
            if a[i][t].is_zero() {
                continue;
            }
            for j in 0..c {
                if !b[t][j].is_zero() {
                    out[i][j].add_product(&a[i][t], &b[t][j]);
                }
            }
        }
    }
    out
}
