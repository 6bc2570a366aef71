//! Batch front end for `sdr-core`.
//!
//! Every subcommand reads at most one family file (a path, or `-` for
//! standard input) and produces one JSON document. Counts are decimal
//! strings. Member positions in output are 1-based; elements are reported by
//! label.

use clap::{Args, Parser, Subcommand};
use sdr_core::{
    canonical_form, census_with, chang_u, construct_bar, construct_star, count_sdr,
    descent_probe_with, enumerate_sdrs, equivalence_classes, tight_sets, valued_u,
    verify_extremal_with, Execution, FamilyFile, IndexSet, SearchBudget, SearchReport, SearchSpec,
    SearchStatus, Valuation,
};
use serde_json::{json, Value};
use std::io::Read;
use std::time::Duration;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Error,
    Incomplete,
}

#[derive(Debug)]
pub struct CommandResult {
    pub status: Status,
    /// Absent on error.
    pub payload: Option<Value>,
    pub diagnostics: Vec<String>,
    /// 0 ok, 1 domain error, 2 usage error, 3 incomplete search.
    pub exit_code: i32,
}

impl CommandResult {
    fn ok(payload: Value) -> Self {
        CommandResult {
            status: Status::Ok,
            payload: Some(payload),
            diagnostics: Vec::new(),
            exit_code: 0,
        }
    }

    fn error(message: String, exit_code: i32) -> Self {
        CommandResult {
            status: Status::Error,
            payload: None,
            diagnostics: vec![message],
            exit_code,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "sdr",
    version,
    about = "Systems of distinct representatives: counts, pairs, extremal search"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Valued {
    #[arg(long)]
    t: Option<usize>,
    /// Weights a_1 .. a_n, space or comma separated.
    #[arg(long, num_args = 1.., value_delimiter = ',')]
    valuation: Option<Vec<usize>>,
}

#[derive(Args, Debug)]
struct Required {
    #[arg(long)]
    t: usize,
    #[arg(long, num_args = 1.., value_delimiter = ',', required = true)]
    valuation: Vec<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact number of SDRs.
    Count { file: String },
    /// List SDRs as label sequences.
    Enumerate {
        file: String,
        #[arg(long)]
        limit: usize,
    },
    /// (t, n)-family and valued-family membership.
    Verify {
        file: String,
        #[command(flatten)]
        valued: Valued,
    },
    /// Exclusive and saturated pair census.
    Pairs {
        file: String,
        #[command(flatten)]
        valued: Valued,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Exchange x for y in every member holding x but not y.
    Transform {
        file: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[command(flatten)]
        valued: Valued,
    },
    /// Tight sets and the equivalence classes they generate.
    Classes {
        file: String,
        #[command(flatten)]
        valued: Valued,
    },
    /// Closed-form SDR count of the extremal family.
    Formula {
        #[arg(long)]
        t: usize,
        #[arg(
            long,
            conflicts_with = "valuation",
            required_unless_present = "valuation"
        )]
        n: Option<usize>,
        #[arg(long, num_args = 1.., value_delimiter = ',')]
        valuation: Option<Vec<usize>>,
    },
    /// Build an extremal family.
    #[command(subcommand)]
    Construct(Construct),
    /// Exhaustive minimum search over valued families.
    Search {
        #[command(flatten)]
        valued: Required,
        #[arg(long)]
        ground_cap: Option<usize>,
        /// Keep one family per minimising class.
        #[arg(long)]
        collect: bool,
        #[arg(long)]
        jobs: Option<usize>,
        /// Echoed only; the search is deterministic.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        max_families: Option<u64>,
        #[arg(long)]
        max_seconds: Option<f64>,
    },
    /// Randomised descent walks from sampled valued families.
    Descent {
        #[command(flatten)]
        valued: Required,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        ground_cap: Option<usize>,
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum Construct {
    /// A_i = {i, n+1, ..., n+t}.
    Star {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        n: usize,
    },
    /// Private blocks of sizes a_i around a shared block of t elements.
    Bar {
        #[command(flatten)]
        valued: Required,
    },
}

struct Failure(String);

impl From<sdr_core::Error> for Failure {
    fn from(e: sdr_core::Error) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = std::result::Result<CommandResult, Failure>;

/// Runs with the process's standard input and reports search progress on
/// standard error.
pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with(argv, &mut std::io::stdin(), &|line| eprintln!("{line}"))
}

pub fn run_with<I, T>(
    argv: I,
    stdin: &mut dyn Read,
    progress: &(dyn Fn(&str) + Sync),
) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    CommandResult::ok(Value::String(text))
                }
                _ => CommandResult::error(text, 2),
            };
        }
    };
    match dispatch(cli.command, stdin, progress) {
        Ok(result) => result,
        Err(Failure(message)) => CommandResult::error(message, 1),
    }
}

fn dispatch(command: Command, stdin: &mut dyn Read, progress: &(dyn Fn(&str) + Sync)) -> Outcome {
    match command {
        Command::Count { file } => {
            let f = load(&file, stdin)?;
            Ok(CommandResult::ok(
                json!({ "n_sdr": count_sdr(&f.family).to_string() }),
            ))
        }
        Command::Enumerate { file, limit } => {
            let f = load(&file, stdin)?.family;
            let list = enumerate_sdrs(&f, limit);
            let sequences: Vec<Vec<&str>> = list
                .sequences
                .iter()
                .map(|seq| seq.iter().map(|&x| f.label(x)).collect())
                .collect();
            Ok(CommandResult::ok(json!({
                "sequences": sequences,
                "listed": sequences.len(),
                "truncated": list.truncated,
            })))
        }
        Command::Verify { file, valued } => verify(load(&file, stdin)?, valued),
        Command::Pairs { file, valued, jobs } => {
            let file = load(&file, stdin)?;
            let (t, a) = resolve(&file, valued)?;
            let f = &file.family;
            let census = with_jobs(jobs, || census_with(f, t, &a, Execution::default()))??;
            let pairs: Vec<Value> = census
                .reports
                .iter()
                .map(|r| {
                    json!({
                        "x": f.label(r.x),
                        "y": f.label(r.y),
                        "saturated": r.saturated,
                        "witness": r.witness.map(positions),
                    })
                })
                .collect();
            Ok(CommandResult::ok(json!({
                "t": t,
                "valuation": a.as_slice(),
                "nep": census.nep,
                "nsp": census.nsp,
                "bound": census.bound.to_string(),
                "theorems_apply": census.theorems_apply,
                "exclusive_pairs": pairs,
            })))
        }
        Command::Transform { file, x, y, valued } => transform(load(&file, stdin)?, &x, &y, valued),
        Command::Classes { file, valued } => {
            let file = load(&file, stdin)?;
            let (t, a) = resolve(&file, valued)?;
            let f = &file.family;
            let tight: Vec<Value> = tight_sets(f, t, &a)?
                .iter()
                .map(|ts| json!({ "members": positions(ts.indices), "union_size": ts.union_size }))
                .collect();
            let classes: Vec<Vec<usize>> = equivalence_classes(f, t, &a)?
                .into_iter()
                .map(positions)
                .collect();
            Ok(CommandResult::ok(json!({
                "t": t,
                "valuation": a.as_slice(),
                "classes": classes,
                "tight_sets": tight,
            })))
        }
        Command::Formula { t, n, valuation } => {
            let value = match (n, valuation) {
                (Some(n), _) => chang_u(t, n),
                (None, Some(a)) => valued_u(t, &Valuation::new(a)?),
                (None, None) => unreachable!("clap requires --n or --valuation"),
            };
            Ok(CommandResult::ok(json!({ "value": value.to_string() })))
        }
        Command::Construct(c) => {
            let (family, t, a) = match c {
                Construct::Star { t, n } => {
                    if n == 0 {
                        return Err(sdr_core::Error::NoMembers.into());
                    }
                    (construct_star(t, n), t, Valuation::ones(n))
                }
                Construct::Bar { valued } => {
                    let a = Valuation::new(valued.valuation)?;
                    (construct_bar(valued.t, &a), valued.t, a)
                }
            };
            let file = FamilyFile {
                family,
                t: Some(t),
                valuation: Some(a),
            };
            Ok(CommandResult::ok(file.to_json()))
        }
        Command::Search {
            valued,
            ground_cap,
            collect,
            jobs,
            seed,
            max_families,
            max_seconds,
        } => {
            let a = Valuation::new(valued.valuation)?;
            let mut spec = match ground_cap {
                Some(cap) => SearchSpec::with_ground_cap(valued.t, a, cap)?,
                None => SearchSpec::new(valued.t, a)?,
            };
            if collect {
                spec = spec.collecting();
            }
            let max_duration = match max_seconds {
                Some(s) if !(s.is_finite() && s >= 0.0) => {
                    return Err(Failure(format!(
                        "--max-seconds must be a non-negative number, got {s}"
                    )))
                }
                Some(s) => Some(Duration::from_secs_f64(s)),
                None => None,
            };
            let budget = SearchBudget {
                max_families,
                max_duration,
            };
            let report = with_jobs(jobs, || {
                verify_extremal_with(&spec, Execution::default(), &budget, |p| {
                    progress(&format!(
                        "shard {}/{}: {} families, minimum {}",
                        p.shard + 1,
                        p.shards,
                        p.families,
                        p.minimum
                            .as_ref()
                            .map_or("-".to_string(), |m| m.to_string())
                    ))
                })
            })??;
            Ok(search_result(&report, seed))
        }
        Command::Descent {
            valued,
            samples,
            seed,
            ground_cap,
            jobs,
        } => {
            let a = Valuation::new(valued.valuation)?;
            let spec = match ground_cap {
                Some(cap) => SearchSpec::with_ground_cap(valued.t, a, cap)?,
                None => SearchSpec::new(valued.t, a)?,
            };
            let r = with_jobs(jobs, || {
                descent_probe_with(&spec, samples, seed, Execution::default())
            })??;
            Ok(CommandResult::ok(json!({
                "t": r.t,
                "valuation": r.valuation,
                "ground_cap": spec.ground_cap,
                "seed": r.seed,
                "samples_requested": r.samples_requested,
                "sampled": r.sampled,
                "sampling_failures": r.sampling_failures,
                "rejections": r.rejections,
                "steps": r.steps,
                "non_decreasing_steps": r.non_decreasing_steps,
                "invalid_steps": r.invalid_steps,
                "unsaturated_fixpoints": r.unsaturated_fixpoints,
                "bound_violations": r.bound_violations,
                "runaway_walks": r.runaway_walks,
                "fixpoints_bar": r.fixpoints_bar,
                "violations": r.violations(),
            })))
        }
    }
}

fn load(path: &str, stdin: &mut dyn Read) -> std::result::Result<FamilyFile, Failure> {
    let mut text = String::new();
    if path == "-" {
        stdin
            .read_to_string(&mut text)
            .map_err(|e| Failure(format!("reading standard input: {e}")))?;
    } else {
        text =
            std::fs::read_to_string(path).map_err(|e| Failure(format!("reading {path}: {e}")))?;
    }
    Ok(FamilyFile::parse(&text)?)
}

/// Flags override the file's metadata.
fn resolve(file: &FamilyFile, valued: Valued) -> std::result::Result<(usize, Valuation), Failure> {
    let t = valued
        .t
        .or(file.t)
        .ok_or_else(|| Failure("no --t given and the family file has no \"t\"".into()))?;
    let a = match valued.valuation {
        Some(a) => Valuation::new(a)?,
        None => file
            .valuation
            .clone()
            .ok_or_else(|| Failure("no --valuation given and the family file has none".into()))?,
    };
    Ok((t, a))
}

fn verify(file: FamilyFile, valued: Valued) -> Outcome {
    let f = &file.family;
    let t = valued
        .t
        .or(file.t)
        .ok_or_else(|| Failure("no --t given and the family file has no \"t\"".into()))?;
    let given = match valued.valuation {
        Some(a) => Some(Valuation::new(a)?),
        None => file.valuation.clone(),
    };
    // Without weights, a_i = |A_i| - t is the only candidate.
    let (a, inferred) = match given {
        Some(a) => (Some(a), false),
        None => {
            let sizes: Option<Vec<usize>> = f
                .members()
                .iter()
                .map(|s| s.len().checked_sub(t).filter(|&ai| ai > 0))
                .collect();
            (
                sizes.map(|s| Valuation::new(s).expect("positive weights")),
                true,
            )
        }
    };
    let is_valued = match &a {
        Some(a) => f.is_valued_family(t, a)?,
        None => false,
    };
    Ok(CommandResult::ok(json!({
        "t": t,
        "is_t_family": f.is_t_family(t),
        "is_valued": is_valued,
        "valuation": a.as_ref().map(|a| a.as_slice().to_vec()),
        "valuation_inferred": inferred,
    })))
}

fn transform(file: FamilyFile, x: &str, y: &str, valued: Valued) -> Outcome {
    let f = &file.family;
    let lookup = |label: &str| {
        f.ground()
            .lookup(label)
            .ok_or_else(|| Failure(sdr_core::Error::UnknownLabel(label.to_string()).to_string()))
    };
    let (xi, yi) = (lookup(x)?, lookup(y)?);
    let exchange = f.exchange(xi, yi)?;
    let g = &exchange.family;
    let moved = f.member_indices(xi)?.difference(f.member_indices(yi)?);

    let t = valued.t.or(file.t);
    let a = match valued.valuation {
        Some(a) => Some(Valuation::new(a)?),
        None => file.valuation.clone(),
    };
    let mut diagnostics = Vec::new();
    let (deltas, valued_after) = match (t, &a) {
        (Some(t), Some(a)) if f.is_valued_family(t, a)? => {
            let mut rows = Vec::new();
            for ts in tight_sets(f, t, a)? {
                let after = g.union_size(ts.indices)?;
                rows.push(json!({
                    "members": positions(ts.indices),
                    "before": ts.union_size,
                    "after": after,
                    "delta": after as i64 - ts.union_size as i64,
                }));
            }
            (Some(rows), Some(g.is_valued_family(t, a)?))
        }
        (Some(_), Some(_)) => {
            diagnostics.push("family is not valued; tight-set deltas omitted".to_string());
            (None, None)
        }
        _ => {
            diagnostics.push("no t and valuation; tight-set deltas omitted".to_string());
            (None, None)
        }
    };
    let out = FamilyFile {
        family: g.clone(),
        t: file.t,
        valuation: file.valuation.clone(),
    };
    let mut result = CommandResult::ok(json!({
        "family": out.to_json(),
        "moved_members": positions(moved),
        "dropped": exchange.dropped.map(|_| x),
        "tight_set_deltas": deltas,
        "valued_after": valued_after,
    }));
    result.diagnostics = diagnostics;
    Ok(result)
}

fn search_result(report: &SearchReport, seed: u64) -> CommandResult {
    let complete = report.status == SearchStatus::Complete;
    let representatives: Vec<Value> = report
        .representatives
        .iter()
        .map(|f| {
            let file = FamilyFile {
                family: f.clone(),
                t: Some(report.t),
                valuation: Some(report.valuation.clone()),
            };
            json!({
                "family": file.to_json(),
                "is_bar": f.is_bar_family(report.t, &report.valuation).unwrap_or(false),
                "canonical": hex::encode(canonical_form(f, Some(&report.valuation))),
            })
        })
        .collect();
    let payload = json!({
        "t": report.t,
        "valuation": report.valuation.as_slice(),
        "ground_cap": report.ground_cap,
        "seed": seed,
        "status": if complete { "complete" } else { "incomplete" },
        "minimum": report.minimum.as_ref().map(|m| m.to_string()),
        "closed_form": report.closed_form.to_string(),
        "minimizers": report.minimizers.iter().map(hex::encode).collect::<Vec<_>>(),
        "representatives": representatives,
        "families_scanned": report.families_scanned,
        "canonical_classes": report.canonical_classes,
        "unique_bar": report.unique_bar,
        "shards": report.shards,
    });
    if complete {
        return CommandResult::ok(payload);
    }
    CommandResult {
        status: Status::Incomplete,
        payload: Some(payload),
        diagnostics: vec!["search budget exhausted; results are partial".to_string()],
        exit_code: 3,
    }
}

fn positions(set: IndexSet) -> Vec<usize> {
    set.iter().map(|i| i + 1).collect()
}

#[cfg(feature = "parallel")]
fn with_jobs<R: Send>(
    jobs: Option<usize>,
    f: impl FnOnce() -> R + Send,
) -> std::result::Result<R, Failure> {
    match jobs {
        None => Ok(f()),
        Some(0) => Err(Failure("--jobs must be at least 1".into())),
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map(|pool| pool.install(f))
            .map_err(|e| Failure(format!("building thread pool: {e}"))),
    }
}

#[cfg(not(feature = "parallel"))]
fn with_jobs<R: Send>(
    jobs: Option<usize>,
    f: impl FnOnce() -> R + Send,
) -> std::result::Result<R, Failure> {
    match jobs {
        Some(0) => Err(Failure("--jobs must be at least 1".into())),
        _ => Ok(f()),
    }
}
