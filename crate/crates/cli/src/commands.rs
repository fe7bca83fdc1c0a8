//! One runner per subcommand. Each returns a JSON report and whether all
//! requested checks passed.

use std::collections::BTreeMap;

use hecke_core::cells::CellKind;
use hecke_core::coxeter::{CoxeterGroup, Elem};
use hecke_core::iso::{certify, PhiMatrix, Psi};
use hecke_core::verify::{
    dihedral_oracle, f4_check_cells, find_negative, hecke_checks, ring_checks, Check, NegativeWitness, P15Mode,
    Property, RepInvariantData, Status, StructureLimits, Verifier,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::cache::Cache;
use crate::chartable_file;
use crate::cli::{Cli, Command, GlobalArgs, InstanceArgs};
use crate::config::{GroupSpec, InstanceConfig};
use crate::error::{input, CliResult};
use crate::json;
use crate::tables::TableSet;

/// ψ is certified on all pairs up to this order and on a sample above.
pub const PSI_ALL_PAIRS: usize = 48;

#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Value,
    pub passed: bool,
}

impl Outcome {
    fn ok(report: Value) -> Self {
        Self { report, passed: true }
    }
}

pub fn config_from_args(args: &InstanceArgs) -> CliResult<InstanceConfig> {
    let mut cfg = if let Some(path) = &args.config {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str::<InstanceConfig>(&text)?
    } else {
        let group = match (&args.matrix, &args.group_type) {
            (Some(m), _) => GroupSpec::Matrix {
                rows: m
                    .split(';')
                    .map(|r| r.split(',').map(|x| x.trim().parse::<u32>()).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<_, _>>()
                    .or_else(|_| input(format!("bad Coxeter matrix {m:?}")))?,
            },
            (None, Some(t)) => GroupSpec::preset(t, args.rank, args.m),
            (None, None) => return input("give --type, --matrix or --config"),
        };
        InstanceConfig::from_flags(group, args.weights.as_deref(), args.order.as_deref())?
    };
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    Ok(cfg)
}

fn cache_for(global: &GlobalArgs, cfg: &InstanceConfig) -> Option<Cache> {
    if global.no_cache {
        return None;
    }
    Some(Cache::locate(global.cache_dir.as_deref().or(cfg.cache_dir.as_deref())))
}

fn meta(cfg: &InstanceConfig, command: &str) -> Value {
    json!({
        "command": command,
        "version": env!("CARGO_PKG_VERSION"),
        "config_hash": cfg.hash(),
        "seed": cfg.seed,
        "config": cfg,
    })
}

fn status_json(g: &CoxeterGroup, s: &Status) -> Value {
    match s {
        Status::Pass => json!({"status": "pass"}),
        Status::Fail(w) => json!({
            "status": "fail",
            "witness": {"elements": json::elems(g, &w.elements), "detail": w.detail},
        }),
        Status::Skipped(r) => json!({"status": "skipped", "reason": r}),
    }
}

pub fn checks_json(g: &CoxeterGroup, checks: &[Check]) -> Value {
    Value::Array(
        checks
            .iter()
            .map(|c| {
                let mut v = status_json(g, &c.status);
                v["name"] = json!(c.name);
                v
            })
            .collect(),
    )
}

fn negative_json(g: &CoxeterGroup, w: &NegativeWitness) -> Value {
    match w {
        NegativeWitness::P { y, w, poly } => json!({
            "kind": "p", "y": json::elem(g, *y), "w": json::elem(g, *w), "poly": json::poly(poly),
        }),
        NegativeWitness::H { x, y, z, poly } => json!({
            "kind": "h", "x": json::elem(g, *x), "y": json::elem(g, *y), "z": json::elem(g, *z), "poly": json::poly(poly),
        }),
    }
}

fn gamma_json(t: &TableSet) -> Value {
    let g = t.inst.group();
    let mut out = Vec::new();
    for x in g.elements() {
        for y in g.elements() {
            for (z, c) in t.jd.product_row(x, y) {
                // t_x t_y ∋ c t_z means γ_{x,y,z⁻¹} = c
                out.push(json!({
                    "x": json::elem(g, x),
                    "y": json::elem(g, y),
                    "z": json::elem(g, g.inverse(Elem(*z))),
                    "gamma": json::int(c),
                }));
            }
        }
    }
    Value::Array(out)
}

fn pairs(n: usize, samples: usize, seed: u64) -> Vec<(Elem, Elem)> {
    if n <= PSI_ALL_PAIRS {
        return (0..n as u32).flat_map(|x| (0..n as u32).map(move |y| (Elem(x), Elem(y)))).collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|_| (Elem(rng.random_range(0..n as u32)), Elem(rng.random_range(0..n as u32))))
        .collect()
}

pub fn parse_props(spec: &str) -> CliResult<Vec<Property>> {
    if spec.trim().eq_ignore_ascii_case("all") {
        return Ok(Property::all());
    }
    let mut props = spec
        .split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| p.trim().parse::<Property>())
        .collect::<Result<Vec<_>, _>>()?;
    props.sort();
    props.dedup();
    Ok(props)
}

fn with_tables(global: &GlobalArgs, args: &InstanceArgs, command: &str) -> CliResult<(InstanceConfig, TableSet, Value)> {
    let cfg = config_from_args(args)?;
    let tables = TableSet::build(&cfg, cache_for(global, &cfg).as_ref())?;
    let mut m = meta(&cfg, command);
    m["cache_hits"] = json!(tables.cache_hits);
    Ok((cfg, tables, m))
}

pub fn execute(cli: &Cli) -> CliResult<Outcome> {
    if let Some(n) = cli.global.threads {
        // a second initialisation in the same process is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let global = &cli.global;
    match &cli.command {
        Command::Klpolys(args) => {
            let (_, t, meta) = with_tables(global, args, "klpolys")?;
            let g = t.inst.group();
            let mut p = Vec::new();
            let mut mu = Vec::new();
            for w in g.elements() {
                for (y, q) in t.kl.p_column(w) {
                    p.push(json!({"y": json::elem(g, Elem(*y)), "w": json::elem(g, w), "p": json::poly(q)}));
                }
                for s in 0..g.rank() {
                    let row = t.kl.mu_row(s, w);
                    if !row.is_empty() {
                        mu.push(json!({
                            "s": s + 1,
                            "w": json::elem(g, w),
                            "terms": row.iter().map(|(z, q)| json!({"z": json::elem(g, Elem(*z)), "mu": json::poly(q)})).collect::<Vec<_>>(),
                        }));
                    }
                }
            }
            Ok(Outcome::ok(json!({
                "meta": meta,
                "elements": g.elements().map(|w| json::elem(g, w)).collect::<Vec<_>>(),
                "p": p,
                "mu": mu,
            })))
        }
        Command::Hconsts(args) => {
            let (_, t, meta) = with_tables(global, args, "hconsts")?;
            let g = t.inst.group();
            let mut rows = Vec::new();
            t.with_source(|src| {
                for y in g.elements() {
                    for (x, row) in src.column(y).iter().enumerate() {
                        for (z, h) in row {
                            rows.push((x, y.0, json!({
                                "x": json::elem(g, Elem(x as u32)),
                                "y": json::elem(g, y),
                                "z": json::elem(g, Elem(*z)),
                                "h": json::poly(h),
                            })));
                        }
                    }
                }
            });
            rows.sort_by_key(|(x, y, _)| (*x, *y));
            Ok(Outcome::ok(json!({"meta": meta, "h": rows.into_iter().map(|(_, _, v)| v).collect::<Vec<_>>()})))
        }
        Command::Cells(args) => {
            let (_, t, meta) = with_tables(global, args, "cells")?;
            let g = t.inst.group();
            let list = |k: CellKind| t.cells.cells(k).iter().map(|c| json::elems(g, c)).collect::<Vec<_>>();
            let two = t.cells.cells(CellKind::TwoSided);
            let mut order = Vec::new();
            for i in 0..two.len() {
                for j in 0..two.len() {
                    if i != j && t.cells.two_sided_leq(i, j) {
                        order.push(json!([i, j]));
                    }
                }
            }
            Ok(Outcome::ok(json!({
                "meta": meta,
                "left": list(CellKind::Left),
                "right": list(CellKind::Right),
                "two_sided": list(CellKind::TwoSided),
                "two_sided_leq": order,
                "two_sided_a": two.iter().map(|c| json::exp(t.jd.a(c[0]))).collect::<Vec<_>>(),
            })))
        }
        Command::Afn(args) => {
            let (_, t, meta) = with_tables(global, args, "afn")?;
            let g = t.inst.group();
            let elements: Vec<Value> = g
                .elements()
                .map(|w| {
                    json!({
                        "w": json::elem(g, w),
                        "a": json::exp(t.jd.a(w)),
                        "delta": json::exp(t.jd.delta(w)),
                        "n": json::int(t.jd.n(w)),
                        "distinguished": t.jd.is_distinguished(w),
                    })
                })
                .collect();
            Ok(Outcome::ok(json!({
                "meta": meta,
                "elements": elements,
                "distinguished": json::elems(g, t.jd.distinguished()),
                "gamma": gamma_json(&t),
            })))
        }
        Command::Jring(args) => {
            let (cfg, t, meta) = with_tables(global, args, "jring")?;
            let g = t.inst.group();
            let checks = ring_checks(&t.inst, &t.jd, StructureLimits::default(), cfg.seed);
            let passed = checks.iter().all(|c| !c.status.is_fail());
            Ok(Outcome {
                report: json!({
                    "meta": meta,
                    "gamma": gamma_json(&t),
                    "identity": t.jd.distinguished().iter()
                        .map(|&d| json!({"d": json::elem(g, d), "n": json::int(t.jd.n(d))}))
                        .collect::<Vec<_>>(),
                    "checks": checks_json(g, &checks),
                }),
                passed,
            })
        }
        Command::Phi(args) => {
            let (_, t, meta) = with_tables(global, args, "phi")?;
            let g = t.inst.group();
            let phi = t.with_source(|src| t.jd.phi(src));
            let rows: Vec<Value> = g
                .elements()
                .map(|w| {
                    json!({
                        "w": json::elem(g, w),
                        "terms": phi[w.id()].terms().iter()
                            .map(|(z, p)| json!({"z": json::elem(g, Elem(*z)), "c": json::poly(p)}))
                            .collect::<Vec<_>>(),
                    })
                })
                .collect();
            Ok(Outcome::ok(json!({"meta": meta, "phi": rows})))
        }
        Command::Psi { instance, samples } => {
            let (cfg, t, meta) = with_tables(global, instance, "psi")?;
            let g = t.inst.group();
            let phi = PhiMatrix::new(&t.with_source(|src| t.jd.phi(src)));
            let psi = Psi::construct(&t.inst, &t.kl, &phi)?;
            let ps = pairs(g.size(), *samples, cfg.seed);
            let cert = t.with_source(|src| certify(&t.inst, &t.kl, &psi, src, &ps));
            let image = |e: &hecke_core::iso::GroupAlgebraElement| {
                e.terms
                    .iter()
                    .map(|(u, p)| json!({"u": json::elem(g, *u), "c": json::rational_poly(p)}))
                    .collect::<Vec<_>>()
            };
            let t_images = psi.t_images(&t.inst, &t.kl);
            Ok(Outcome {
                report: json!({
                    "meta": meta,
                    "c_images": g.elements().map(|w| json!({"w": json::elem(g, w), "image": image(&psi.c_image(w))})).collect::<Vec<_>>(),
                    "t_generators": (0..g.rank()).map(|s| json!({"s": s + 1, "image": image(&t_images[g.generator(s).id()])})).collect::<Vec<_>>(),
                    "certificate": {
                        "pairs_checked": cert.pairs_checked,
                        "exhaustive": g.size() <= PSI_ALL_PAIRS,
                        "homomorphism": cert.homomorphism_witness.map_or(json!("pass"), |(x, y)| json!({"fail": [json::elem(g, x), json::elem(g, y)]})),
                        "theta1_identity": cert.theta1_witness.map_or(json!("pass"), |w| json!({"fail": json::elem(g, w)})),
                        "det_nonzero": cert.det_nonzero,
                    },
                }),
                passed: cert.passed(),
            })
        }
        Command::Verify {
            instance,
            props,
            p15_mode,
            samples,
            chartable,
            structure,
        } => {
            let props = parse_props(props)?;
            let mode: P15Mode = p15_mode.parse()?;
            let (cfg, t, meta) = with_tables(global, instance, "verify")?;
            let g = t.inst.group();
            let rep = match chartable {
                Some(path) => Some(chartable_file::load_rep_data(path, g)?),
                None if g.rank() == 2 => Some(RepInvariantData::dihedral(&t.inst)?),
                None => None,
            };
            let mut v = Verifier::new(&t.inst, &t.kl, &t.cells, &t.jd)
                .with_seed(cfg.seed)
                .with_samples(*samples);
            if let Some(h) = &t.h {
                v = v.with_htable(h);
            }
            if let Some(r) = &rep {
                v = v.with_rep_data(r);
            }
            let report = v.run(&props, mode);
            let mut passed = report.passed();
            let mut out = json!({
                "meta": meta,
                "p15_mode": mode.to_string(),
                "checks": checks_json(g, &report.checks),
                "info": report.info.iter().cloned().collect::<BTreeMap<_, _>>(),
            });
            if matches!(&cfg.group, GroupSpec::Preset { name, .. } if name == "F4") {
                let st = f4_check_cells(&t.inst, &t.cells, &t.jd);
                passed &= !st.is_fail();
                out["f4_cells"] = status_json(g, &st);
            }
            if *structure {
                let limits = StructureLimits::default();
                let mut checks = hecke_checks(&t.inst, &t.kl, t.h.as_ref(), &t.jd, limits, cfg.seed);
                checks.extend(ring_checks(&t.inst, &t.jd, limits, cfg.seed));
                passed &= !checks.iter().any(|c| c.status.is_fail());
                out["structure"] = checks_json(g, &checks);
            }
            out["result"] = json!(if passed { "pass" } else { "fail" });
            Ok(Outcome { report: out, passed })
        }
        Command::OracleDihedral {
            m,
            weights,
            order,
            compare,
        } => {
            let args = InstanceArgs {
                group_type: Some("I2".into()),
                m: Some(*m),
                weights: weights.clone(),
                order: order.clone(),
                ..InstanceArgs::default()
            };
            let cfg = config_from_args(&args)?;
            let inst = cfg.instance()?;
            let o = dihedral_oracle(&inst)?;
            let g = inst.group();
            let w = |word: &[u8]| json::elem(g, g.from_word(word));
            let mut out = json!({
                "meta": meta(&cfg, "oracle-dihedral"),
                "products": o.products.iter().map(|p| json!({
                    "family": p.family,
                    "s": p.s + 1,
                    "w": w(&p.w),
                    "terms": p.terms.iter().map(|(z, c)| json!({"z": w(z), "c": json::poly(c)})).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
                "delta": o.delta.iter().map(|(x, d)| json!({"w": w(x), "delta": json::exp(d)})).collect::<Vec<_>>(),
                "distinguished": o.distinguished.iter().map(|x| w(x)).collect::<Vec<_>>(),
                "n": o.n.iter().map(|(x, v)| json!({"w": w(x), "n": v})).collect::<Vec<_>>(),
                "chain": o.chain.iter().map(|c| c.iter().map(|x| w(x)).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "left_cells": o.left_cells.iter().map(|(c, l)| json!({"cell": c.iter().map(|x| w(x)).collect::<Vec<_>>(), "labels": l})).collect::<Vec<_>>(),
            });
            let mut passed = true;
            if *compare {
                let t = TableSet::build(&cfg, cache_for(global, &cfg).as_ref())?;
                let checks = o.compare(&t.inst, &t.kl, &t.cells, &t.jd)?;
                passed = !checks.iter().any(|c| c.status.is_fail());
                out["checks"] = checks_json(g, &checks);
                out["result"] = json!(if passed { "oracle match" } else { "oracle mismatch" });
            }
            Ok(Outcome { report: out, passed })
        }
        Command::Negativity { max_weight } => negativity(global, *max_weight),
    }
}

fn negativity(global: &GlobalArgs, max_weight: i32) -> CliResult<Outcome> {
    if max_weight < 2 {
        return input("--max-weight must be at least 2");
    }
    let mut runs = Vec::new();
    let mut first: Option<Value> = None;
    for preset in ["I2", "B"] {
        for b in 1..=max_weight {
            for a in 1..=max_weight {
                if a == b {
                    continue;
                }
                let (rank, m) = if preset == "I2" { (None, Some(4)) } else { (Some(2), None) };
                let cfg = InstanceConfig::from_flags(
                    GroupSpec::preset(preset, rank, m),
                    Some(&format!("s1={b},s2={a}")),
                    None,
                )?;
                let t = TableSet::build(&cfg, cache_for(global, &cfg).as_ref())?;
                let g = t.inst.group();
                let found = find_negative(&t.kl, t.h.as_ref()).map(|w| negative_json(g, &w));
                let entry = json!({"group": cfg.group, "weights": cfg.weights, "witness": found});
                if first.is_none() && found.is_some() {
                    first = Some(entry.clone());
                }
                runs.push(entry);
            }
        }
    }
    let passed = first.is_some();
    Ok(Outcome {
        report: json!({
            "meta": {"command": "negativity", "version": env!("CARGO_PKG_VERSION"), "max_weight": max_weight},
            "instances": runs,
            "first_witness": first,
            "result": if passed { "negative coefficient found" } else { "none found" },
        }),
        passed,
    })
}

/// Writes the report: to `--out` if given, else to stdout.
pub fn write_report(global: &GlobalArgs, o: &Outcome) -> CliResult<()> {
    let text = serde_json::to_string_pretty(&o.report)? + "\n";
    match &global.out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
        }
    }
    Ok(())
}
