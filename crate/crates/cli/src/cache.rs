//! Content-addressed table cache. Files are named by the config hash and
//! wrap their payload in an envelope carrying the format version.

use std::fs;
use std::path::{Path, PathBuf};

use hecke_core::asymptotic::{JData, JDataParts};
use hecke_core::hecke::{HTable, KlTable};
use serde_json::{json, Value};

use crate::config::{InstanceConfig, FORMAT_VERSION};
use crate::error::{input, CliResult};
use crate::json;

/// Environment variable overriding the default cache directory.
pub const CACHE_ENV: &str = "HECKE_CACHE_DIR";

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum TableKind {
    Kl,
    H,
    J,
}

impl TableKind {
    fn name(self) -> &'static str {
        match self {
            TableKind::Kl => "kl",
            TableKind::H => "h",
            TableKind::J => "j",
        }
    }
}

/// Outcome of a lookup.
#[derive(Debug)]
pub enum Lookup<T> {
    Hit(T),
    Miss,
    /// The file exists but could not be used; the reason is printed.
    Invalid(String),
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    /// `explicit`, else `$HECKE_CACHE_DIR`, else the user cache directory.
    pub fn locate(explicit: Option<&Path>) -> Self {
        if let Some(p) = explicit {
            return Self::new(p);
        }
        if let Some(p) = std::env::var_os(CACHE_ENV).filter(|p| !p.is_empty()) {
            return Self::new(p);
        }
        let base = std::env::var_os("XDG_CACHE_HOME")
            .map(PathBuf::from)
            .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))
            .unwrap_or_else(|| PathBuf::from("."));
        Self::new(base.join("hecke"))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, cfg: &InstanceConfig, kind: TableKind) -> PathBuf {
        self.dir.join(format!("{}.{}.json", cfg.hash(), kind.name()))
    }

    fn read(&self, cfg: &InstanceConfig, kind: TableKind) -> Lookup<Value> {
        let path = self.path(cfg, kind);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Lookup::Miss,
            Err(e) => return Lookup::Invalid(format!("{}: {e}", path.display())),
        };
        let v: Value = match serde_json::from_str(&text) {
            Ok(v) => v,
            Err(e) => return Lookup::Invalid(format!("{}: {e}", path.display())),
        };
        let version = v.get("format_version").and_then(Value::as_u64);
        if version != Some(u64::from(FORMAT_VERSION)) {
            return Lookup::Invalid(format!(
                "{}: format version {version:?}, expected {FORMAT_VERSION}",
                path.display()
            ));
        }
        if v.get("config_hash").and_then(Value::as_str) != Some(cfg.hash().as_str()) {
            return Lookup::Invalid(format!("{}: config hash does not match", path.display()));
        }
        match v.get("data") {
            Some(d) => Lookup::Hit(d.clone()),
            None => Lookup::Invalid(format!("{}: no data", path.display())),
        }
    }

    fn write(&self, cfg: &InstanceConfig, kind: TableKind, data: Value) -> CliResult<()> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path(cfg, kind);
        let envelope = json!({
            "format_version": FORMAT_VERSION,
            "config_hash": cfg.hash(),
            "kind": kind.name(),
            "data": data,
        });
        // write then rename so readers never see a partial file
        let tmp = path.with_extension(format!("json.tmp{}", std::process::id()));
        fs::write(&tmp, envelope.to_string())?;
        fs::rename(&tmp, &path)?;
        Ok(())
    }

    fn load<T>(&self, cfg: &InstanceConfig, kind: TableKind, decode: impl Fn(&Value) -> CliResult<T>) -> Lookup<T> {
        match self.read(cfg, kind) {
            Lookup::Hit(v) => match decode(&v) {
                Ok(t) => Lookup::Hit(t),
                Err(e) => Lookup::Invalid(format!("{}: {e}", self.path(cfg, kind).display())),
            },
            Lookup::Miss => Lookup::Miss,
            Lookup::Invalid(m) => Lookup::Invalid(m),
        }
    }

    pub fn load_kl(&self, cfg: &InstanceConfig, size: usize, rank: usize) -> Lookup<KlTable> {
        self.load(cfg, TableKind::Kl, |v| decode_kl(v, size, rank))
    }

    pub fn store_kl(&self, cfg: &InstanceConfig, kl: &KlTable) -> CliResult<()> {
        self.write(cfg, TableKind::Kl, encode_kl(kl))
    }

    pub fn load_h(&self, cfg: &InstanceConfig, size: usize) -> Lookup<HTable> {
        self.load(cfg, TableKind::H, |v| decode_h(v, size))
    }

    pub fn store_h(&self, cfg: &InstanceConfig, h: &HTable) -> CliResult<()> {
        self.write(cfg, TableKind::H, encode_h(h))
    }

    pub fn load_j(&self, cfg: &InstanceConfig, size: usize) -> Lookup<JData> {
        self.load(cfg, TableKind::J, |v| decode_j(v, size))
    }

    pub fn store_j(&self, cfg: &InstanceConfig, jd: &JData) -> CliResult<()> {
        self.write(cfg, TableKind::J, encode_j(jd))
    }
}

fn rows(v: Option<&Value>) -> CliResult<Vec<hecke_core::hecke::Row>> {
    match v.and_then(Value::as_array) {
        Some(arr) => arr.iter().map(json::parse_row).collect(),
        None => input("missing row list"),
    }
}

pub fn encode_kl(kl: &KlTable) -> Value {
    let (p, mu) = kl.parts();
    json!({
        "size": kl.size(),
        "rank": kl.rank(),
        "p": p.iter().map(json::row).collect::<Vec<_>>(),
        "mu": mu.iter().map(json::row).collect::<Vec<_>>(),
    })
}

pub fn decode_kl(v: &Value, size: usize, rank: usize) -> CliResult<KlTable> {
    if v.get("size").and_then(Value::as_u64) != Some(size as u64)
        || v.get("rank").and_then(Value::as_u64) != Some(rank as u64)
    {
        return input("KL table is for a different group");
    }
    Ok(KlTable::from_parts(size, rank, rows(v.get("p"))?, rows(v.get("mu"))?)?)
}

pub fn encode_h(h: &HTable) -> Value {
    json!({
        "size": h.size(),
        "rows": h.rows().iter().map(json::row).collect::<Vec<_>>(),
    })
}

pub fn decode_h(v: &Value, size: usize) -> CliResult<HTable> {
    if v.get("size").and_then(Value::as_u64) != Some(size as u64) {
        return input("structure table is for a different group");
    }
    Ok(HTable::from_rows(size, rows(v.get("rows"))?)?)
}

pub fn encode_j(jd: &JData) -> Value {
    let p = jd.to_parts();
    json!({
        "a": p.a.iter().map(|e| json::exp(e)).collect::<Vec<_>>(),
        "delta": p.delta.iter().map(|e| json::exp(e)).collect::<Vec<_>>(),
        "n": p.n.iter().map(json::int).collect::<Vec<_>>(),
        "inverse": p.inverse,
        "prod": p.prod.iter().map(|r| r.iter().map(|(z, c)| json!([z, json::int(c)])).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

fn list<'a>(v: &'a Value, key: &str) -> CliResult<&'a Vec<Value>> {
    match v.get(key).and_then(Value::as_array) {
        Some(a) => Ok(a),
        None => input(format!("missing {key}")),
    }
}

pub fn decode_j(v: &Value, size: usize) -> CliResult<JData> {
    let exps = |key| list(v, key)?.iter().map(json::parse_exp).collect::<CliResult<Vec<_>>>();
    let inverse = list(v, "inverse")?
        .iter()
        .map(|x| match x.as_u64().and_then(|x| u32::try_from(x).ok()) {
            Some(x) => Ok(x),
            None => input("bad inverse entry"),
        })
        .collect::<CliResult<Vec<u32>>>()?;
    let prod = list(v, "prod")?
        .iter()
        .map(|r| match r.as_array() {
            Some(r) => r
                .iter()
                .map(|e| match e.as_array().map(Vec::as_slice) {
                    Some([z, c]) => match z.as_u64().and_then(|z| u32::try_from(z).ok()) {
                        Some(z) => Ok((z, json::parse_int(c)?)),
                        None => input("bad product index"),
                    },
                    _ => input("a product entry is [index, integer]"),
                })
                .collect::<CliResult<Vec<_>>>(),
            None => input("a product row must be an array"),
        })
        .collect::<CliResult<Vec<_>>>()?;
    let parts = JDataParts {
        a: exps("a")?,
        delta: exps("delta")?,
        n: list(v, "n")?.iter().map(json::parse_int).collect::<CliResult<_>>()?,
        inverse,
        prod,
    };
    if parts.a.len() != size {
        return input("J data is for a different group");
    }
    Ok(JData::from_parts(parts)?)
}
