//! P15 in its three forms.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{fail, first, ConjectureReport, P15Mode, Status, Verifier, EXHAUSTIVE_LIMIT};
use crate::cells::CellKind;
use crate::coxeter::Elem;
use crate::hecke::{HTable, Row};
use crate::poly::Poly;

/// Sparse vector `y ↦ coefficient` accumulated densely.
struct Acc(Vec<Poly>);

impl Acc {
    fn new(n: usize) -> Self {
        Self(vec![Poly::zero(); n])
    }

    fn add(&mut self, y: u32, p: &Poly) {
        self.0[y as usize].add_assign(p);
    }

    fn sub(&mut self, other: &Acc) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            a.sub_assign(b);
        }
    }

    fn support(&self) -> impl Iterator<Item = Elem> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(y, _)| Elem(y as u32))
    }
}

impl Verifier<'_> {
    pub fn check_p15(&self, mode: P15Mode, prior: &ConjectureReport) -> Status {
        match mode {
            P15Mode::Star => {
                for (name, p) in [("P4", super::Property::P(4)), ("P11", super::Property::P(11))] {
                    let ok = match prior.status(name) {
                        Some(s) => s.is_pass(),
                        None => self.check(p).is_pass(),
                    };
                    if !ok {
                        return Status::Skipped(format!("{name} does not hold, so (*) is not equivalent to P15"));
                    }
                }
                self.p15_star(false)
            }
            P15Mode::Direct => match self.htable {
                Some(h) => self.p15_quadruples(h, false),
                None => Status::Skipped("direct mode needs the full structure table".into()),
            },
            P15Mode::Prime => match self.htable {
                Some(h) => self.p15_quadruples(h, true),
                None => Status::Skipped("P15' needs the full structure table".into()),
            },
        }
    }

    /// `e_w.C̆_t = Σ_y h_{w,t,y} e_y`, read off `C_t C_{w⁻¹}` through the
    /// anti-involution `C_x ↦ C_{x⁻¹}`.
    fn right_row(&self, w: Elem, t: usize) -> Row {
        self.kl
            .generator_row(self.inst, t, self.inv(w))
            .into_iter()
            .map(|(y, p)| (self.inv(Elem(y)).0, p))
            .collect()
    }

    /// Condition `(*)` with `C` in the first copy of `Γ` and `C̆` in the
    /// second. With `all` set, the cases `sw < w` or `wt < w` are checked
    /// as well.
    pub fn p15_star(&self, all: bool) -> Status {
        let g = self.inst.group();
        let k = self.inst.gamma_rank();
        let r = g.rank();
        let lr = self.cells.preorder(CellKind::TwoSided);
        let n = self.n();
        let left = |p: &Poly| p.embed(0, 2 * k);
        let right = |p: &Poly| p.embed(k, 2 * k);
        first(n * r * r, |i| {
            let w = Elem((i / (r * r)) as u32);
            let (s, t) = (i / r % r, i % r);
            let up = g.length(g.lmul(s, w)) > g.length(w) && g.length(g.rmul(w, t)) > g.length(w);
            if !all && !up {
                return None;
            }
            // (C_s.e_w).C̆_t
            let mut a = Acc::new(n);
            for (y1, h1) in self.kl.generator_row(self.inst, s, w) {
                let h1 = left(&h1);
                for (y, h2) in self.right_row(Elem(y1), t) {
                    a.add(y, &h1.mul(&right(&h2)));
                }
            }
            // C_s.(e_w.C̆_t)
            let mut b = Acc::new(n);
            for (y1, h1) in self.right_row(w, t) {
                let h1 = right(&h1);
                for (y, h2) in self.kl.generator_row(self.inst, s, Elem(y1)) {
                    b.add(y, &h1.mul(&left(&h2)));
                }
            }
            a.sub(&b);
            let bad = a.support().find(|&y| !(lr.leq(y, w) && !lr.equiv(y, w)));
            bad.map(|y| {
                fail(
                    vec![w, y],
                    format!(
                        "(*) fails for s = s{}, t = s{}, w = {}: coefficient of e_{} is nonzero",
                        s + 1,
                        t + 1,
                        self.w(w),
                        self.w(y)
                    ),
                )
            })
        })
        .unwrap_or(Status::Pass)
    }

    /// Both sides at `(x, x', w)` for all `y`; `prime` selects P15'.
    fn p15_sides(&self, h: &HTable, x: Elem, xp: Elem, w: Elem, prime: bool) -> (Acc, Acc) {
        let n = self.n();
        let k = self.inst.gamma_rank();
        let mut lhs = Acc::new(n);
        let mut rhs = Acc::new(n);
        if prime {
            let jd = self.jd;
            // Σ_u γ_{w,x',u⁻¹} h_{x,u,y}
            for (u, gam) in jd.product_row(w, xp) {
                for (y, p) in h.row(x, Elem(*u)) {
                    lhs.add(*y, &p.scale(gam));
                }
            }
            // Σ_u h_{x,w,u} γ_{u,x',y⁻¹}
            for (u, p) in h.row(x, w) {
                for (y, gam) in jd.product_row(Elem(*u), xp) {
                    rhs.add(*y, &p.scale(gam));
                }
            }
        } else {
            // the first tensor factor acts on the right, the second on the left
            for (y1, p1) in h.row(w, xp) {
                let p1 = p1.embed(k, 2 * k);
                for (y, p2) in h.row(x, Elem(*y1)) {
                    lhs.add(*y, &p1.mul(&p2.embed(0, 2 * k)));
                }
            }
            for (y1, p2) in h.row(x, w) {
                let p2 = p2.embed(0, 2 * k);
                for (y, p1) in h.row(Elem(*y1), xp) {
                    rhs.add(*y, &p1.embed(k, 2 * k).mul(&p2));
                }
            }
        }
        (lhs, rhs)
    }

    fn p15_quadruples(&self, h: &HTable, prime: bool) -> Status {
        let n = self.n();
        let jd = self.jd;
        let report = |x: Elem, xp: Elem, w: Elem, y: Elem| {
            let name = if prime { "P15'" } else { "P15" };
            fail(
                vec![x, xp, w, y],
                format!(
                    "{name} fails at x = {}, x' = {}, w = {}, y = {}",
                    self.w(x),
                    self.w(xp),
                    self.w(w),
                    self.w(y)
                ),
            )
        };
        if n <= EXHAUSTIVE_LIMIT {
            return first(n * n * n, |i| {
                let (x, xp, w) = (Elem((i / (n * n)) as u32), Elem((i / n % n) as u32), Elem((i % n) as u32));
                let (mut lhs, rhs) = self.p15_sides(h, x, xp, w, prime);
                lhs.sub(&rhs);
                let bad = lhs.support().find(|&y| jd.a(y) == jd.a(w));
                bad.map(|y| report(x, xp, w, y))
            })
            .unwrap_or(Status::Pass);
        }
        // stratified by the a-value of w: classes are visited round robin
        let mut classes: Vec<(crate::ordgroup::Exp, Vec<Elem>)> = Vec::new();
        for z in self.inst.group().elements() {
            match classes.iter_mut().find(|(a, _)| a == jd.a(z)) {
                Some((_, v)) => v.push(z),
                None => classes.push((jd.a(z).clone(), vec![z])),
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let draws: Vec<(Elem, Elem, Elem, Elem)> = (0..self.samples)
            .map(|i| {
                let class = &classes[i % classes.len()].1;
                let w = class[rng.random_range(0..class.len())];
                let y = class[rng.random_range(0..class.len())];
                let x = Elem(rng.random_range(0..n as u32));
                let xp = Elem(rng.random_range(0..n as u32));
                (x, xp, w, y)
            })
            .collect();
        first(draws.len(), |i| {
            let (x, xp, w, y) = draws[i];
            let (lhs, rhs) = self.p15_sides(h, x, xp, w, prime);
            (lhs.0[y.id()] != rhs.0[y.id()]).then(|| report(x, xp, w, y))
        })
        .unwrap_or(Status::Pass)
    }
}

