//! Computing, caching and reloading the tables of one instance.

use hecke_core::asymptotic::{JData, OnDemand, StructureSource};
use hecke_core::cells::CellPartition;
use hecke_core::hecke::{HTable, KlTable};
use hecke_core::instance::Instance;

use crate::cache::{Cache, Lookup};
use crate::config::InstanceConfig;
use crate::error::CliResult;

/// Above this order the full `|W|²` structure table is not built; columns
/// are recomputed on demand instead.
pub const HTABLE_LIMIT: usize = 400;

pub struct TableSet {
    pub inst: Instance,
    pub kl: KlTable,
    pub h: Option<HTable>,
    pub jd: JData,
    pub cells: CellPartition,
    /// Which tables came from the cache.
    pub cache_hits: Vec<&'static str>,
}

fn warn(msg: &str) {
    eprintln!("warning: {msg}; recomputing");
}

fn cached<T>(
    cache: Option<&Cache>,
    name: &'static str,
    hits: &mut Vec<&'static str>,
    load: impl Fn(&Cache) -> Lookup<T>,
    compute: impl FnOnce() -> CliResult<T>,
    store: impl Fn(&Cache, &T) -> CliResult<()>,
) -> CliResult<T> {
    if let Some(c) = cache {
        match load(c) {
            Lookup::Hit(t) => {
                hits.push(name);
                return Ok(t);
            }
            Lookup::Miss => {}
            Lookup::Invalid(m) => warn(&m),
        }
    }
    let t = compute()?;
    if let Some(c) = cache {
        if let Err(e) = store(c, &t) {
            eprintln!("warning: could not write the {name} table to the cache: {e}");
        }
    }
    Ok(t)
}

impl TableSet {
    pub fn build(cfg: &InstanceConfig, cache: Option<&Cache>) -> CliResult<Self> {
        let inst = cfg.instance()?;
        let n = inst.size();
        let rank = inst.group().rank();
        let mut hits = Vec::new();
        let kl = cached(
            cache,
            "kl",
            &mut hits,
            |c| c.load_kl(cfg, n, rank),
            || Ok(KlTable::compute(&inst)),
            |c, t| c.store_kl(cfg, t),
        )?;
        let h = if n <= HTABLE_LIMIT {
            Some(cached(
                cache,
                "h",
                &mut hits,
                |c| c.load_h(cfg, n),
                || Ok(HTable::compute(&inst, &kl)),
                |c, t| c.store_h(cfg, t),
            )?)
        } else {
            None
        };
        let jd = cached(
            cache,
            "j",
            &mut hits,
            |c| c.load_j(cfg, n),
            || {
                Ok(match &h {
                    Some(h) => JData::from_htable(&inst, &kl, h)?,
                    None => JData::compute(&inst, &kl, &OnDemand { inst: &inst, kl: &kl })?,
                })
            },
            |c, t| c.store_j(cfg, t),
        )?;
        let cells = CellPartition::compute(&inst, &kl);
        Ok(Self {
            inst,
            kl,
            h,
            jd,
            cells,
            cache_hits: hits,
        })
    }

    /// Runs `f` with the structure constants, from the table if present.
    pub fn with_source<R>(&self, f: impl FnOnce(&dyn StructureSource) -> R) -> R {
        match &self.h {
            Some(h) => f(h),
            None => f(&OnDemand {
                inst: &self.inst,
                kl: &self.kl,
            }),
        }
    }
}
