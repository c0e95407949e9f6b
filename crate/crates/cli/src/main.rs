//! Batch front-end: JSON ingestion, one subcommand per toolkit operation,
//! and reproducible report emission.
//!
//! Exit codes: 0 on success/pass, 1 when a mathematical check fails, 2 on
//! malformed input. A structured report is always emitted on stdout.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use saturate_core::envelope::{
    is_absolutely_irreducible, is_saturated_points, nori_envelope_with_cap,
    saturation_closure_with_cap,
};
use saturate_core::ff::{embedding, field_create, Field};
use saturate_core::json::{FrobTableJson, GroupJson, RepWeightsJson, WeightsCheckJson};
use saturate_core::matgrp::{group_closure, FiniteMatrixGroup, SquareMatrix, DEFAULT_ORDER_CAP};
use saturate_core::rootdata::{
    dynkin_height, low_alcove_check, weight_conditions, RepWeights, RootSystem, SimpleType,
};
use saturate_core::weilres::{weilres_group, weilres_saturation_check, RestrictionContext};

#[derive(Parser)]
#[command(name = "saturate", version, about = "Exact matrix-group toolkit over finite fields")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Clone)]
enum Cmd {
    /// Compute the envelope of the group generated by the input
    Envelope {
        group: PathBuf,
        /// Extension degree over the group's field
        #[arg(long, default_value_t = 1)]
        ext: usize,
        /// Closure cap (overrides SATURATE_CAP)
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Point-level saturation test of the generated group
    SaturateCheck {
        group: PathBuf,
        #[arg(long, default_value_t = 1)]
        ext: usize,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Subgroup generated by the elements of ell-power order
    GammaPlus {
        group: PathBuf,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Burnside absolute-irreducibility test
    Irreducible {
        group: PathBuf,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Dynkin height of a weight multiset
    Height {
        rep: PathBuf,
        /// Also report whether the representation is of low ell-height
        #[arg(long)]
        ell: Option<u64>,
    },
    /// Coxeter number of an irreducible type, with the rho cross-check
    Coxeter {
        #[arg(long = "type")]
        stype: String,
        #[arg(long)]
        rank: usize,
    },
    /// Low-alcove inequality for a dominant weight
    Alcove {
        #[arg(long = "type")]
        stype: String,
        #[arg(long)]
        rank: usize,
        /// Dominant weight in fundamental coordinates, comma separated
        #[arg(long, value_delimiter = ',')]
        mu: Vec<i64>,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        ell: u64,
    },
    /// Torus-weight conditions (i)-(iii) from a weights/phi/ell descriptor
    WeightsCheck { input: PathBuf },
    /// Weil-restrict the generated group down to a smaller field
    Weilres {
        group: PathBuf,
        #[arg(long = "down-to")]
        down_to: PathBuf,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Frobenius characteristic-polynomial table checks
    Frob {
        #[command(subcommand)]
        sub: FrobCmd,
    },
    /// Run every check listed in a manifest and aggregate the outcomes
    Corpus { manifest: PathBuf },
}

#[derive(Subcommand, Clone)]
enum FrobCmd {
    /// Plainness / purity / shape validation of a polynomial table
    Validate {
        table: PathBuf,
        #[arg(long)]
        weight: Option<i64>,
    },
}

#[derive(Serialize)]
struct RunReport {
    schema: u32,
    version: &'static str,
    command: String,
    inputs_digest: String,
    results: Value,
    timing_ms: u128,
}

struct Outcome {
    results: Value,
    exit: i32,
}

#[derive(Debug)]
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn read_file(digest: &mut Sha256, path: &Path) -> Result<String, InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    digest.update(text.as_bytes());
    Ok(text)
}

fn resolve_cap(flag: Option<usize>) -> usize {
    flag.or_else(|| {
        std::env::var("SATURATE_CAP")
            .ok()
            .and_then(|v| v.parse().ok())
    })
    .unwrap_or(DEFAULT_ORDER_CAP)
}

fn load_closure(
    digest: &mut Sha256,
    path: &Path,
    cap: usize,
) -> Result<(Field, FiniteMatrixGroup), InputError> {
    let text = read_file(digest, path)?;
    let gj: GroupJson = serde_json::from_str(&text)?;
    let (field, n, gens) = gj.to_generators()?;
    let group = if gens.is_empty() {
        FiniteMatrixGroup::trivial(&field, n)
    } else {
        group_closure(&gens, cap)?
    };
    Ok((field, group))
}

fn extend_group(
    group: &FiniteMatrixGroup,
    ext: usize,
    cap: usize,
) -> Result<FiniteMatrixGroup, InputError> {
    if ext <= 1 {
        return Ok(group.clone());
    }
    let field = group.field();
    let big = field_create(field.ell(), field.degree() * ext, None)?;
    let emb = embedding(field, &big)?;
    let gens: Vec<SquareMatrix> = if group.generators().is_empty() {
        group.iter().map(|m| m.embed(&emb)).collect()
    } else {
        group.generators().iter().map(|m| m.embed(&emb)).collect()
    };
    if gens.is_empty() {
        return Ok(FiniteMatrixGroup::trivial(&big, group.dim()));
    }
    Ok(group_closure(&gens, cap)?)
}

fn parse_system(stype: &str, rank: usize) -> Result<RootSystem, InputError> {
    Ok(RootSystem::new(SimpleType::parse(stype)?, rank)?)
}

fn execute(cmd: &Cmd, digest: &mut Sha256) -> Result<Outcome, InputError> {
    match cmd {
        Cmd::Envelope { group, ext, cap } => {
            let cap = resolve_cap(*cap);
            let (_, g) = load_closure(digest, group, cap)?;
            let g = extend_group(&g, *ext, cap)?;
            let gp = g.gamma_plus()?;
            let env = nori_envelope_with_cap(&g, cap)?;
            let results = json!({
                "order": env.group.order(),
                "lie_dim": env.lie_dim(),
                "stable": env.stable,
                "saturated": is_saturated_points(&env.group)?,
                "irreducible": is_absolutely_irreducible(&env.group),
                "input_order": g.order(),
                "gamma_plus_order": gp.order(),
            });
            Ok(Outcome { results, exit: 0 })
        }
        Cmd::SaturateCheck { group, ext, cap } => {
            let cap = resolve_cap(*cap);
            let (_, g) = load_closure(digest, group, cap)?;
            let g = extend_group(&g, *ext, cap)?;
            let saturated = is_saturated_points(&g)?;
            let closure = saturation_closure_with_cap(&g, 1, cap)?;
            let results = json!({
                "order": g.order(),
                "saturated": saturated,
                "saturation_closure_order": closure.order(),
            });
            Ok(Outcome {
                results,
                exit: i32::from(!saturated),
            })
        }
        Cmd::GammaPlus { group, cap } => {
            let cap = resolve_cap(*cap);
            let (_, g) = load_closure(digest, group, cap)?;
            let gp = g.gamma_plus()?;
            let results = json!({
                "order": g.order(),
                "gamma_plus_order": gp.order(),
            });
            Ok(Outcome { results, exit: 0 })
        }
        Cmd::Irreducible { group, cap } => {
            let cap = resolve_cap(*cap);
            let (_, g) = load_closure(digest, group, cap)?;
            let irr = is_absolutely_irreducible(&g);
            Ok(Outcome {
                results: json!({"order": g.order(), "irreducible": irr}),
                exit: i32::from(!irr),
            })
        }
        Cmd::Height { rep, ell } => {
            let text = read_file(digest, rep)?;
            let rj: RepWeightsJson = serde_json::from_str(&text)?;
            let system = rj.system.to_semisimple()?;
            let rep = RepWeights::new(system, rj.weights)?;
            let h = dynkin_height(&rep);
            let mut results = json!({"height": h, "dim": rep.dim()});
            let mut exit = 0;
            if let Some(ell) = ell {
                let low = (*ell as i64) > h;
                results["low"] = json!(low);
                exit = i32::from(!low);
            }
            Ok(Outcome { results, exit })
        }
        Cmd::Coxeter { stype, rank } => {
            let rs = parse_system(stype, *rank)?;
            let h = rs.coxeter_number();
            let h_rho = rs.coxeter_via_rho();
            Ok(Outcome {
                results: json!({"h": h, "h_via_rho": h_rho}),
                exit: i32::from(h != h_rho),
            })
        }
        Cmd::Alcove {
            stype,
            rank,
            mu,
            n,
            ell,
        } => {
            let rs = parse_system(stype, *rank)?;
            let pass = low_alcove_check(&rs, mu, *n, *ell)?;
            Ok(Outcome {
                results: json!({"pass": pass}),
                exit: i32::from(!pass),
            })
        }
        Cmd::WeightsCheck { input } => {
            let text = read_file(digest, input)?;
            let wj: WeightsCheckJson = serde_json::from_str(&text)?;
            let rep = weight_conditions(&wj.weights, &wj.phi, wj.ell);
            let pass = rep.all_pass();
            Ok(Outcome {
                results: json!({
                    "multiplicity_one": rep.multiplicity_one,
                    "reduced": rep.reduced,
                    "exponents_bounded": rep.exponents_bounded,
                    "witnesses": rep.witnesses,
                }),
                exit: i32::from(!pass),
            })
        }
        Cmd::Weilres {
            group,
            down_to,
            cap,
        } => {
            let cap = resolve_cap(*cap);
            let (big, g) = load_closure(digest, group, cap)?;
            let text = read_file(digest, down_to)?;
            let fj: saturate_core::json::FieldJson = serde_json::from_str(&text)?;
            let small = fj.to_field()?;
            let ctx = RestrictionContext::new(&big, &small)?;
            let img = weilres_group(&ctx, &g)?;
            let rep = weilres_saturation_check(&ctx, &g)?;
            Ok(Outcome {
                results: json!({
                    "order": img.order(),
                    "n": img.dim(),
                    "saturated": rep.saturated,
                    "hypothesis_ok": rep.hypothesis_ok,
                }),
                exit: i32::from(!rep.saturated),
            })
        }
        Cmd::Frob { sub } => match sub {
            FrobCmd::Validate { table, weight } => {
                let text = read_file(digest, table)?;
                let tj: FrobTableJson = serde_json::from_str(&text)?;
                let t = tj.to_table()?;
                let report = saturate_core::frobenius::validate_table(&t, *weight)?;
                let entries: Vec<Value> = report
                    .entries
                    .iter()
                    .map(|e| {
                        json!({
                            "id": e.id,
                            "pass": e.pass(),
                            "degree_ok": e.degree_ok,
                            "q_ok": e.q_ok,
                            "plain_ok": e.plain_ok,
                            "plain_necessary_only": e.plain_necessary_only,
                            "max_deviation": e.purity.as_ref().map(|p| p.max_deviation),
                            "norm_identity": e.purity.as_ref().and_then(|p| p.norm_identity),
                            "witnesses": e.witnesses,
                        })
                    })
                    .collect();
                Ok(Outcome {
                    results: json!({"pass": report.pass, "entries": entries}),
                    exit: i32::from(!report.pass),
                })
            }
        },
        Cmd::Corpus { manifest } => {
            let text = read_file(digest, manifest)?;
            let mj: Value = serde_json::from_str(&text)?;
            let base = manifest.parent().unwrap_or(Path::new("."));
            let checks = mj
                .get("checks")
                .and_then(|c| c.as_array())
                .ok_or_else(|| InputError("manifest is missing a \"checks\" array".into()))?;
            let mut results = vec![];
            let mut all_ok = true;
            for check in checks {
                let name = check
                    .get("name")
                    .and_then(|n| n.as_str())
                    .unwrap_or("(unnamed)");
                let args: Vec<String> = check
                    .get("args")
                    .and_then(|a| a.as_array())
                    .ok_or_else(|| InputError(format!("check {name:?} has no args")))?
                    .iter()
                    .map(|v| v.as_str().map(str::to_string))
                    .collect::<Option<_>>()
                    .ok_or_else(|| InputError(format!("check {name:?} has non-string args")))?;
                let expect_exit = check
                    .get("expect_exit")
                    .and_then(|e| e.as_i64())
                    .unwrap_or(0) as i32;
                let mut argv = vec!["saturate".to_string()];
                argv.extend(args);
                let sub = Cli::try_parse_from(
                    argv.iter().map(|s| resolve_arg(s, base)),
                )
                .map_err(|e| InputError(format!("check {name:?}: {e}")))?;
                let mut sub_digest = Sha256::new();
                let (exit, sub_results) = match execute(&sub.cmd, &mut sub_digest) {
                    Ok(o) => (o.exit, o.results),
                    Err(e) => (2, json!({"error": e.0})),
                };
                let mut matched = exit == expect_exit;
                if let Some(expect) = check.get("expect") {
                    matched &= subset_match(expect, &sub_results);
                }
                all_ok &= matched;
                results.push(json!({
                    "name": name,
                    "exit": exit,
                    "expect_exit": expect_exit,
                    "matched": matched,
                    "results": sub_results,
                }));
            }
            Ok(Outcome {
                results: json!({"pass": all_ok, "checks": results}),
                exit: i32::from(!all_ok),
            })
        }
    }
}

/// Resolve file-looking arguments of a corpus check relative to the
/// manifest's directory.
fn resolve_arg(arg: &str, base: &Path) -> String {
    if arg.ends_with(".json") && !Path::new(arg).is_absolute() {
        base.join(arg).to_string_lossy().into_owned()
    } else {
        arg.to_string()
    }
}

/// Every key in `expect` must appear in `actual` with an equal value
/// (recursively for objects).
fn subset_match(expect: &Value, actual: &Value) -> bool {
    match (expect, actual) {
        (Value::Object(e), Value::Object(a)) => e
            .iter()
            .all(|(k, v)| a.get(k).map(|av| subset_match(v, av)).unwrap_or(false)),
        (e, a) => e == a,
    }
}

fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // clap handles --help/--version with success exits
            e.exit();
        }
    };
    let started = Instant::now();
    let mut digest = Sha256::new();
    let (results, exit) = match execute(&cli.cmd, &mut digest) {
        Ok(o) => (o.results, o.exit),
        Err(e) => {
            eprintln!("error: {}", e.0);
            (json!({"error": e.0}), 2)
        }
    };
    let report = RunReport {
        schema: 1,
        version: env!("CARGO_PKG_VERSION"),
        command: argv[1..].join(" "),
        inputs_digest: format!("{:x}", digest.finalize()),
        results,
        timing_ms: started.elapsed().as_millis(),
    };
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
    std::process::exit(exit);
}
