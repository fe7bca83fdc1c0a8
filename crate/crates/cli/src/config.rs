//! Instance configuration: which group, which `Γ` and order, which weights.

use std::path::PathBuf;

use hecke_core::coxeter::{CoxeterGroup, CoxeterMatrix};
use hecke_core::instance::{Instance, WeightFunction};
use hecke_core::ordgroup::{Exp, OrderedGroup};
use hecke_core::verify::DEFAULT_SEED;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{input, CliResult};

/// Version of the on-disk table format. Part of every cache key.
pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupSpec {
    /// `A`, `B`, `D` (with `rank`), `I2` (with `m`), `H3`, `H4`, `F4`.
    Preset {
        name: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        rank: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        m: Option<u32>,
    },
    Matrix { rows: Vec<Vec<u32>> },
}

impl GroupSpec {
    pub fn preset(name: &str, rank: Option<usize>, m: Option<u32>) -> Self {
        GroupSpec::Preset {
            name: name.to_ascii_uppercase(),
            rank,
            m,
        }
    }

    pub fn matrix(&self) -> CliResult<CoxeterMatrix> {
        let rows = match self {
            GroupSpec::Matrix { rows } => return Ok(CoxeterMatrix::new(rows)?),
            GroupSpec::Preset { name, rank, m } => (name.as_str(), *rank, *m),
        };
        let need_rank = |r: Option<usize>| match r {
            Some(r) if r >= 1 => Ok(r),
            _ => input(format!("type {} needs --rank", rows.0)),
        };
        Ok(match rows {
            ("A", r, _) => CoxeterMatrix::type_a(need_rank(r)?)?,
            ("B" | "C", r, _) => CoxeterMatrix::type_b(need_rank(r)?)?,
            ("D", r, _) => CoxeterMatrix::type_d(need_rank(r)?)?,
            ("I2", _, Some(m)) => CoxeterMatrix::dihedral(m)?,
            ("I2", _, None) => return input("type I2 needs --m"),
            ("H3", _, _) => CoxeterMatrix::type_h3(),
            ("H4", _, _) => CoxeterMatrix::type_h4(),
            ("F4", _, _) => CoxeterMatrix::type_f4(),
            (other, _, _) => return input(format!("unknown preset {other:?}")),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceConfig {
    pub group: GroupSpec,
    /// `k` in `Γ = Z^k`.
    pub gamma_rank: usize,
    /// Rows of the weight matrix defining the monomial order.
    pub order_weights: Vec<Vec<i64>>,
    /// `L(s_i)` as an exponent vector, one per generator.
    pub weights: Vec<Vec<i32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cache_dir: Option<PathBuf>,
    #[serde(default = "default_seed")]
    pub seed: u64,
}

fn default_seed() -> u64 {
    DEFAULT_SEED
}

/// The part of a config that determines the tables.
#[derive(Serialize)]
struct TableKey<'a> {
    format_version: u32,
    group: &'a GroupSpec,
    gamma_rank: usize,
    order_weights: &'a [Vec<i64>],
    weights: &'a [Vec<i32>],
}

impl InstanceConfig {
    /// Builds a config from the usual flags. `weights` is
    /// `s1=3,s2=2` or, for `k > 1`, `s1=0:1,s2=1:0`; `order` is `lex`,
    /// `lex:1,0` or `weights:1,1;0,1`.
    pub fn from_flags(group: GroupSpec, weights: Option<&str>, order: Option<&str>) -> CliResult<Self> {
        let matrix = group.matrix()?;
        let rank = matrix.rank();
        let given = match weights {
            Some(w) => parse_weights(w, rank)?,
            None => vec![None; rank],
        };
        let k = given.iter().flatten().map(Vec::len).max().unwrap_or(1);
        if given.iter().flatten().any(|v| v.len() != k) {
            return input("all weights must have the same number of components");
        }
        // unspecified generators inherit from a conjugate one
        let classes = matrix.generator_classes();
        let mut filled = Vec::with_capacity(rank);
        for s in 0..rank {
            let v = given[s].clone().or_else(|| {
                (0..rank)
                    .find(|&t| classes[t] == classes[s] && given[t].is_some())
                    .and_then(|t| given[t].clone())
            });
            match v {
                Some(v) => filled.push(v),
                None if k == 1 => filled.push(vec![1]),
                None => return input(format!("no weight given for s{}", s + 1)),
            }
        }
        let order_weights = parse_order(order.unwrap_or("lex"), k)?;
        Ok(Self {
            group,
            gamma_rank: k,
            order_weights,
            weights: filled,
            cache_dir: None,
            seed: DEFAULT_SEED,
        })
    }

    pub fn instance(&self) -> CliResult<Instance> {
        let matrix = self.group.matrix()?;
        if self.weights.len() != matrix.rank() {
            return input(format!(
                "{} weights given for {} generators",
                self.weights.len(),
                matrix.rank()
            ));
        }
        if self.order_weights.len() != self.gamma_rank {
            return input("the order needs gamma_rank rows");
        }
        let gamma = OrderedGroup::from_integer_weights(&self.order_weights)?;
        let values: Vec<Exp> = self.weights.iter().map(|w| w.iter().copied().collect()).collect();
        let group = CoxeterGroup::new(matrix)?;
        Ok(Instance::new(group, gamma, WeightFunction::new(values))?)
    }

    /// SHA-256 over the canonical JSON of the table-relevant fields and
    /// the format version. Seed and cache location do not enter.
    pub fn hash(&self) -> String {
        self.hash_with_version(FORMAT_VERSION)
    }

    pub fn hash_with_version(&self, version: u32) -> String {
        let key = TableKey {
            format_version: version,
            group: &self.group,
            gamma_rank: self.gamma_rank,
            order_weights: &self.order_weights,
            weights: &self.weights,
        };
        let value = serde_json::to_value(&key).expect("config serializes");
        hex::encode(Sha256::digest(value.to_string().as_bytes()))
    }
}

fn parse_int<T: std::str::FromStr>(s: &str) -> CliResult<T> {
    s.trim().parse().or_else(|_| input(format!("not an integer: {s:?}")))
}

fn parse_weights(spec: &str, rank: usize) -> CliResult<Vec<Option<Vec<i32>>>> {
    let mut out = vec![None; rank];
    for part in spec.split(',').filter(|p| !p.trim().is_empty()) {
        let Some((name, value)) = part.split_once('=') else {
            return input(format!("expected s<i>=<value>, got {part:?}"));
        };
        let name = name.trim();
        let idx: usize = match name.strip_prefix('s') {
            Some(i) => parse_int(i)?,
            None => return input(format!("generator names look like s1, got {name:?}")),
        };
        if idx == 0 || idx > rank {
            return input(format!("generator {name} out of range 1..={rank}"));
        }
        let v = value.split(':').map(parse_int).collect::<CliResult<Vec<i32>>>()?;
        if out[idx - 1].replace(v).is_some() {
            return input(format!("weight for {name} given twice"));
        }
    }
    Ok(out)
}

fn parse_order(spec: &str, k: usize) -> CliResult<Vec<Vec<i64>>> {
    let (kind, rest) = spec.split_once(':').unwrap_or((spec, ""));
    match kind {
        "lex" => {
            let perm: Vec<usize> = if rest.is_empty() {
                (0..k).collect()
            } else {
                rest.split(',').map(parse_int).collect::<CliResult<_>>()?
            };
            let mut seen = perm.clone();
            seen.sort_unstable();
            if seen != (0..k).collect::<Vec<_>>() {
                return input(format!("lex order must permute 0..{k}"));
            }
            Ok(perm
                .iter()
                .map(|&i| (0..k).map(|j| i64::from(i == j)).collect())
                .collect())
        }
        "weights" => {
            let rows: Vec<Vec<i64>> = rest
                .split(';')
                .map(|r| r.split(',').map(parse_int).collect::<CliResult<Vec<i64>>>())
                .collect::<CliResult<_>>()?;
            if rows.len() != k || rows.iter().any(|r| r.len() != k) {
                return input(format!("order weight matrix must be {k}x{k}"));
            }
            Ok(rows)
        }
        _ => input(format!("unknown order {spec:?}; use lex, lex:<perm> or weights:<rows>")),
    }
}
