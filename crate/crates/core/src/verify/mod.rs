//! Machine verification of Lusztig's properties P1–P15 and of the
//! sufficient conditions E1–E4 on one concrete instance.
//!
//! Every check is a pure function of frozen tables. A failure carries a
//! witness tuple that can be re-evaluated by hand.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use crate::asymptotic::JData;
use crate::cells::{CellKind, CellPartition};
use crate::coxeter::Elem;
use crate::error::{Error, Result};
use crate::hecke::{HTable, KlTable};
use crate::instance::{Instance, WeightFunction};
use crate::int::Int;

mod negativity;
mod oracle;
mod p15;
mod reps;
mod structure;

pub use negativity::{find_negative, NegativeWitness};
pub use oracle::{dihedral_oracle, DihedralOracle, OracleProduct};
pub use structure::{hecke_checks, ring_checks, StructureLimits};
pub use reps::{f4_check_cells, f4_expected_cells, f4_invariants, f4_regime, F4Regime, RepInvariantData, F4_LABELS};

/// A concrete counterexample.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub elements: Vec<Elem>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail(Witness),
    Skipped(String),
}

impl Status {
    pub fn is_pass(&self) -> bool {
        matches!(self, Status::Pass)
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Status::Fail(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub status: Status,
}

/// Outcome of a verification run. `info` holds observations that are
/// reported but never asserted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConjectureReport {
    pub checks: Vec<Check>,
    pub info: Vec<(String, String)>,
}

impl ConjectureReport {
    /// No check failed. Skipped checks do not count as failures.
    pub fn passed(&self) -> bool {
        !self.checks.iter().any(|c| c.status.is_fail())
    }

    pub fn status(&self, name: &str) -> Option<&Status> {
        self.checks.iter().find(|c| c.name == name).map(|c| &c.status)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Property {
    /// `P1` … `P15`.
    P(u8),
    /// `E1` … `E4`.
    E(u8),
}

impl Property {
    /// P1–P15 followed by E1–E4.
    pub fn all() -> Vec<Property> {
        (1..=15).map(Property::P).chain((1..=4).map(Property::E)).collect()
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Property::P(n) => write!(f, "P{n}"),
            Property::E(n) => write!(f, "E{n}"),
        }
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Input(format!("unknown property {s:?}"));
        let (head, num) = s.split_at_checked(1).ok_or_else(bad)?;
        let n: u8 = num.parse().map_err(|_| bad())?;
        match head {
            "P" | "p" if (1..=15).contains(&n) => Ok(Property::P(n)),
            "E" | "e" if (1..=4).contains(&n) => Ok(Property::E(n)),
            _ => Err(bad()),
        }
    }
}

/// How P15 is checked.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash)]
pub enum P15Mode {
    /// The module condition `(*)` for generators `s, t`.
    #[default]
    Star,
    /// The identity in `Z[Γ] ⊗ Z[Γ]` itself.
    Direct,
    /// The single-`Γ` identity with `γ` on one side.
    Prime,
}

impl FromStr for P15Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "star" => Ok(P15Mode::Star),
            "direct" => Ok(P15Mode::Direct),
            "p15prime" | "prime" => Ok(P15Mode::Prime),
            _ => Err(Error::Input(format!("unknown P15 mode {s:?}"))),
        }
    }
}

impl fmt::Display for P15Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            P15Mode::Star => "star",
            P15Mode::Direct => "direct",
            P15Mode::Prime => "p15prime",
        })
    }
}

/// Default seed for sampled checks.
pub const DEFAULT_SEED: u64 = 0x0048_4543_4b45;

/// Quadruple checks are exhaustive up to this group order.
pub const EXHAUSTIVE_LIMIT: usize = 30;

/// Read-only view of the tables of one instance.
pub struct Verifier<'a> {
    inst: &'a Instance,
    kl: &'a KlTable,
    cells: &'a CellPartition,
    jd: &'a JData,
    htable: Option<&'a HTable>,
    rep: Option<&'a RepInvariantData>,
    seed: u64,
    samples: usize,
}

fn first<T: Send>(n: usize, f: impl Fn(usize) -> Option<T> + Sync + Send) -> Option<T> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..n).into_par_iter().find_map_first(f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).find_map(f)
    }
}

fn fail(elements: Vec<Elem>, detail: String) -> Status {
    Status::Fail(Witness { elements, detail })
}

impl<'a> Verifier<'a> {
    pub fn new(inst: &'a Instance, kl: &'a KlTable, cells: &'a CellPartition, jd: &'a JData) -> Self {
        Self {
            inst,
            kl,
            cells,
            jd,
            htable: None,
            rep: None,
            seed: DEFAULT_SEED,
            samples: 100_000,
        }
    }

    /// Enables the checks that need all structure constants.
    pub fn with_htable(mut self, h: &'a HTable) -> Self {
        self.htable = Some(h);
        self
    }

    pub fn with_rep_data(mut self, rep: &'a RepInvariantData) -> Self {
        self.rep = Some(rep);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Number of sampled quadruples above the exhaustive limit.
    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = samples;
        self
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    fn n(&self) -> usize {
        self.inst.size()
    }

    fn w(&self, x: Elem) -> String {
        self.inst.group().word_string(x)
    }

    fn inv(&self, x: Elem) -> Elem {
        self.inst.group().inverse(x)
    }

    fn cmp(&self, a: &[i32], b: &[i32]) -> Ordering {
        self.inst.gamma().compare(a, b)
    }

    /// Runs the requested properties in order. P15 in star mode reuses
    /// the outcome of P4 and P11 if they were requested too.
    pub fn run(&self, props: &[Property], mode: P15Mode) -> ConjectureReport {
        let mut report = ConjectureReport::default();
        for &p in props {
            let status = match p {
                Property::P(15) => {
                    let name = format!("P15:{mode}");
                    let status = self.check_p15(mode, &report);
                    report.checks.push(Check { name, status });
                    continue;
                }
                _ => self.check(p),
            };
            report.checks.push(Check {
                name: p.to_string(),
                status,
            });
        }
        let (closure, relation) = self.left_relation_from_j();
        report.info.push(("left_cells_from_J_closure".into(), closure.to_string()));
        report.info.push(("left_relation_from_J_is_equivalence".into(), relation.to_string()));
        report
    }

    pub fn check(&self, p: Property) -> Status {
        match p {
            Property::P(1) => self.p1(),
            Property::P(2) => self.p2(),
            Property::P(3) => self.p3(),
            Property::P(4) => self.p4(),
            Property::P(5) => self.p5(),
            Property::P(6) => self.p6(),
            Property::P(7) => self.p7(),
            Property::P(8) => self.p8(),
            Property::P(9) => self.same_a_same_cell(CellKind::Left),
            Property::P(10) => self.same_a_same_cell(CellKind::Right),
            Property::P(11) => self.same_a_same_cell(CellKind::TwoSided),
            Property::P(12) => self.p12(),
            Property::P(13) => self.p13(),
            Property::P(14) => self.p14(),
            Property::P(15) => self.check_p15(P15Mode::Star, &ConjectureReport::default()),
            Property::E(1) => self.e1(),
            Property::E(2) => self.e2(),
            Property::E(3) => self.e3(),
            Property::E(4) => self.e4(),
            other => Status::Skipped(format!("{other} is not a known property")),
        }
    }

    fn p1(&self) -> Status {
        let jd = self.jd;
        self.inst
            .group()
            .elements()
            .find(|&z| self.cmp(jd.a(z), jd.delta(z)) == Ordering::Greater)
            .map_or(Status::Pass, |z| {
                fail(
                    vec![z],
                    format!("a({}) = {:?} > Δ = {:?}", self.w(z), jd.a(z), jd.delta(z)),
                )
            })
    }

    /// Visits every nonzero `γ_{x,y,z}` until `f` reports a failure.
    fn find_gamma<T: Send>(&self, f: impl Fn(Elem, Elem, Elem, &Int) -> Option<T> + Sync + Send) -> Option<T> {
        let n = self.n();
        first(n * n, |i| {
            let (x, y) = (Elem((i / n) as u32), Elem((i % n) as u32));
            self.jd
                .product_row(x, y)
                .iter()
                .find_map(|(zi, g)| f(x, y, self.inv(Elem(*zi)), g))
        })
    }

    fn p2(&self) -> Status {
        let jd = self.jd;
        self.find_gamma(|x, y, d, _| {
            (jd.is_distinguished(d) && x != self.inv(y)).then(|| {
                fail(
                    vec![x, y, d],
                    format!("γ_{{{},{},{}}} ≠ 0 with x ≠ y⁻¹", self.w(x), self.w(y), self.w(d)),
                )
            })
        })
        .unwrap_or(Status::Pass)
    }

    /// The `d ∈ 𝒟` with `γ_{y⁻¹,y,d} ≠ 0`.
    fn partners(&self, y: Elem) -> Vec<(Elem, Int)> {
        let jd = self.jd;
        jd.product_row(self.inv(y), y)
            .iter()
            .map(|(z, g)| (self.inv(Elem(*z)), g.clone()))
            .filter(|(d, _)| jd.is_distinguished(*d))
            .collect()
    }

    fn p3(&self) -> Status {
        first(self.n(), |y| {
            let y = Elem(y as u32);
            let ds = self.partners(y);
            (ds.len() != 1).then(|| {
                let mut elements = vec![y];
                elements.extend(ds.iter().map(|(d, _)| *d));
                fail(
                    elements,
                    format!("{} elements d ∈ 𝒟 with γ_{{y⁻¹,y,d}} ≠ 0 for y = {}", ds.len(), self.w(y)),
                )
            })
        })
        .unwrap_or(Status::Pass)
    }

    fn p4(&self) -> Status {
        let lr = self.cells.preorder(CellKind::TwoSided);
        let jd = self.jd;
        first(self.n(), |z| {
            let z = Elem(z as u32);
            lr.below(z)
                .find(|&zp| self.cmp(jd.a(zp), jd.a(z)) == Ordering::Less)
                .map(|zp| {
                    fail(
                        vec![zp, z],
                        format!("{} ≤_LR {} but a decreases", self.w(zp), self.w(z)),
                    )
                })
        })
        .unwrap_or(Status::Pass)
    }

    fn p5(&self) -> Status {
        let jd = self.jd;
        first(self.n(), |y| {
            let y = Elem(y as u32);
            self.partners(y).into_iter().find_map(|(d, g)| {
                let nd = jd.n(d);
                let unit = nd.abs() == Int::ONE;
                (g != *nd || !unit).then(|| {
                    fail(
                        vec![y, d],
                        format!("γ_{{y⁻¹,y,d}} = {g}, n_d = {nd} for y = {}, d = {}", self.w(y), self.w(d)),
                    )
                })
            })
        })
        .unwrap_or(Status::Pass)
    }

    fn p6(&self) -> Status {
        self.jd
            .distinguished()
            .iter()
            .find(|&&d| self.inv(d) != d)
            .map_or(Status::Pass, |&d| fail(vec![d], format!("{} is not an involution", self.w(d))))
    }

    fn p7(&self) -> Status {
        let jd = self.jd;
        self.find_gamma(|x, y, z, g| {
            let other = jd.gamma(y, z, x);
            (other != *g).then(|| {
                fail(
                    vec![x, y, z],
                    format!(
                        "γ_{{{},{},{}}} = {g} but γ_{{y,z,x}} = {other}",
                        self.w(x),
                        self.w(y),
                        self.w(z)
                    ),
                )
            })
        })
        .unwrap_or(Status::Pass)
    }

    fn p8(&self) -> Status {
        let left = self.cells.preorder(CellKind::Left);
        self.find_gamma(|x, y, z, _| {
            let ok = left.equiv(x, self.inv(y)) && left.equiv(y, self.inv(z)) && left.equiv(z, self.inv(x));
            (!ok).then(|| {
                fail(
                    vec![x, y, z],
                    format!("γ_{{{},{},{}}} ≠ 0 across left cells", self.w(x), self.w(y), self.w(z)),
                )
            })
        })
        .unwrap_or(Status::Pass)
    }

    /// P9, P10, P11.
    fn same_a_same_cell(&self, kind: CellKind) -> Status {
        let pre = self.cells.preorder(kind);
        let jd = self.jd;
        first(self.n(), |z| {
            let z = Elem(z as u32);
            pre.below(z)
                .find(|&zp| jd.a(zp) == jd.a(z) && !pre.equiv(zp, z))
                .map(|zp| {
                    fail(
                        vec![zp, z],
                        format!("{} ≤ {} ({kind:?}) with equal a but not equivalent", self.w(zp), self.w(z)),
                    )
                })
        })
        .unwrap_or(Status::Pass)
    }

    /// Recomputes `a` inside every proper standard parabolic subgroup.
    fn p12(&self) -> Status {
        match self.p12_inner() {
            Ok(s) => s,
            Err(e) => Status::Skipped(format!("parabolic computation failed: {e}")),
        }
    }

    fn p12_inner(&self) -> Result<Status> {
        let g = self.inst.group();
        let r = g.rank();
        for mask in 1u32..(1 << r) - 1 {
            let gens: Vec<usize> = (0..r).filter(|s| mask >> s & 1 == 1).collect();
            let (sub, embed) = g.parabolic_system(&gens)?;
            let weights = WeightFunction::new(gens.iter().map(|&s| self.inst.weights().get(s).clone()).collect());
            let sub_inst = Instance::new(sub, self.inst.gamma().clone(), weights)?;
            let kl = KlTable::compute(&sub_inst);
            let h = HTable::compute(&sub_inst, &kl);
            let jd = JData::from_htable(&sub_inst, &kl, &h)?;
            for u in sub_inst.group().elements() {
                let w = embed[u.id()];
                if jd.a(u) != self.jd.a(w) {
                    return Ok(fail(
                        vec![w],
                        format!(
                            "a({}) = {:?} in W but {:?} in the parabolic on {:?}",
                            self.w(w),
                            self.jd.a(w),
                            jd.a(u),
                            gens.iter().map(|s| s + 1).collect::<Vec<_>>()
                        ),
                    ));
                }
            }
        }
        Ok(Status::Pass)
    }

    fn p13(&self) -> Status {
        let jd = self.jd;
        for cell in self.cells.cells(CellKind::Left) {
            let ds: Vec<Elem> = cell.iter().copied().filter(|&d| jd.is_distinguished(d)).collect();
            if ds.len() != 1 {
                let mut elements = vec![cell[0]];
                elements.extend(&ds);
                return fail(
                    elements,
                    format!("left cell of {} contains {} distinguished elements", self.w(cell[0]), ds.len()),
                );
            }
            let d = ds[0];
            if let Some(&x) = cell.iter().find(|&&x| jd.gamma(self.inv(x), x, d).is_zero()) {
                return fail(
                    vec![x, d],
                    format!("γ_{{x⁻¹,x,d}} = 0 for x = {}, d = {}", self.w(x), self.w(d)),
                );
            }
        }
        Status::Pass
    }

    fn p14(&self) -> Status {
        let lr = self.cells.preorder(CellKind::TwoSided);
        self.inst
            .group()
            .elements()
            .find(|&z| !lr.equiv(z, self.inv(z)))
            .map_or(Status::Pass, |z| fail(vec![z], format!("{} ≁_LR its inverse", self.w(z))))
    }

    fn e3(&self) -> Status {
        let left = self.cells.preorder(CellKind::Left);
        let lr = self.cells.preorder(CellKind::TwoSided);
        first(self.n(), |y| {
            let y = Elem(y as u32);
            left.below(y)
                .find(|&x| lr.equiv(x, y) && !left.equiv(x, y))
                .map(|x| {
                    fail(
                        vec![x, y],
                        format!("{} ≤_L {} and ∼_LR but not ∼_L", self.w(x), self.w(y)),
                    )
                })
        })
        .unwrap_or(Status::Pass)
    }

    fn e4(&self) -> Status {
        let jd = self.jd;
        for cell in self.cells.cells(CellKind::Left) {
            let min = cell
                .iter()
                .map(|&w| jd.delta(w))
                .min_by(|a, b| self.cmp(a, b))
                .expect("cells are nonempty");
            let at: Vec<Elem> = cell.iter().copied().filter(|&w| jd.delta(w) == min).collect();
            if at.len() != 1 {
                return fail(
                    at.clone(),
                    format!("Δ attains its minimum {:?} {} times in the left cell of {}", min, at.len(), self.w(cell[0])),
                );
            }
        }
        Status::Pass
    }

    /// Constituents of `[𝔠]_1` for every left cell, or why they are
    /// unavailable.
    fn attachment(&self) -> core::result::Result<(&'a RepInvariantData, Vec<Vec<usize>>), String> {
        let rep = self.rep.ok_or_else(|| String::from("no representation data for this instance"))?;
        let mut out = Vec::new();
        for cell in self.cells.cells(CellKind::Left) {
            let module = crate::cells::CellModule::new(cell, self.n());
            let mult = module
                .decompose(self.inst, self.kl, &rep.table)
                .map_err(|e| format!("cell decomposition failed: {e}"))?;
            out.push(mult.iter().enumerate().filter(|(_, &m)| m != 0).map(|(i, _)| i).collect());
        }
        Ok((rep, out))
    }

    /// `ã` on each left cell, checking that the constituents agree.
    fn a_tilde(&self) -> core::result::Result<core::result::Result<Vec<usize>, Status>, String> {
        let (rep, att) = self.attachment()?;
        let cells = self.cells.cells(CellKind::Left);
        let mut out = Vec::with_capacity(att.len());
        for (labels, cell) in att.iter().zip(cells) {
            let Some(&first) = labels.first() else {
                return Ok(Err(fail(vec![cell[0]], format!("left cell of {} affords nothing", self.w(cell[0])))));
            };
            if let Some(&other) = labels.iter().find(|&&l| rep.a[l] != rep.a[first]) {
                return Ok(Err(fail(
                    vec![cell[0]],
                    format!(
                        "left cell of {} affords {} and {} with different a",
                        self.w(cell[0]),
                        rep.table.labels[first],
                        rep.table.labels[other]
                    ),
                )));
            }
            out.push(first);
        }
        Ok(Ok(out))
    }

    fn e1(&self) -> Status {
        let lam = match self.a_tilde() {
            Err(reason) => return Status::Skipped(reason),
            Ok(Err(s)) => return s,
            Ok(Ok(l)) => l,
        };
        let rep = self.rep.expect("attachment succeeded");
        let cells = self.cells.cells(CellKind::Left);
        let left = self.cells.preorder(CellKind::Left);
        for (i, ci) in cells.iter().enumerate() {
            for (j, cj) in cells.iter().enumerate() {
                let (x, y) = (ci[0], cj[0]);
                if left.leq(x, y) && self.cmp(&rep.a[lam[j]], &rep.a[lam[i]]) == Ordering::Greater {
                    return fail(
                        vec![x, y],
                        format!(
                            "{} ≤_L {} but a_{} > a_{}",
                            self.w(x),
                            self.w(y),
                            rep.table.labels[lam[j]],
                            rep.table.labels[lam[i]]
                        ),
                    );
                }
            }
        }
        Status::Pass
    }

    fn e2(&self) -> Status {
        let lam = match self.a_tilde() {
            Err(reason) => return Status::Skipped(reason),
            Ok(Err(_)) => return Status::Skipped("E1 fails, so ã is not defined".into()),
            Ok(Ok(l)) => l,
        };
        let rep = self.rep.expect("attachment succeeded");
        let cells = self.cells.cells(CellKind::Left);
        let lr = self.cells.preorder(CellKind::TwoSided);
        for (i, ci) in cells.iter().enumerate() {
            for (j, cj) in cells.iter().enumerate() {
                let (x, y) = (ci[0], cj[0]);
                if lr.leq(x, y) && rep.a[lam[i]] == rep.a[lam[j]] && !lr.equiv(x, y) {
                    return fail(
                        vec![x, y],
                        format!("{} ≤_LR {} with equal a_λ but not ∼_LR", self.w(x), self.w(y)),
                    );
                }
            }
        }
        Status::Pass
    }

    /// `ã(z)` for every element when E1 holds.
    pub fn a_tilde_values(&self) -> Option<Vec<crate::ordgroup::Exp>> {
        let lam = self.a_tilde().ok()?.ok()?;
        let rep = self.rep?;
        Some(
            self.inst
                .group()
                .elements()
                .map(|z| rep.a[lam[self.cells.cell_of(CellKind::Left, z)]].clone())
                .collect(),
        )
    }

    /// Compares `∼_L` with the relation `x ↔_L y ⟺ ∃z γ_{x,y⁻¹,z} ≠ 0`:
    /// whether its transitive closure gives the left cells, and whether
    /// the relation is already an equivalence relation equal to `∼_L`.
    pub fn left_relation_from_j(&self) -> (bool, bool) {
        let n = self.n();
        let adj: Vec<Vec<u32>> = (0..n as u32)
            .map(|x| {
                (0..n as u32)
                    .filter(|&y| !self.jd.product_row(Elem(x), self.inv(Elem(y))).is_empty())
                    .collect()
            })
            .collect();
        let closure = crate::cells::Preorder::from_graph(&adj);
        let left = self.cells.preorder(CellKind::Left);
        let mut closure_ok = true;
        let mut relation_ok = true;
        for x in 0..n as u32 {
            for y in 0..n as u32 {
                let (ex, ey) = (Elem(x), Elem(y));
                let same = left.equiv(ex, ey);
                closure_ok &= closure.leq(ey, ex) == same;
                relation_ok &= adj[x as usize].binary_search(&y).is_ok() == same;
            }
        }
        (closure_ok, relation_ok)
    }
}
