//! `mfcheck`: reproducible verification runs with JSON reports.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use mf_core::bicone::{
    bicone_dimension_check, bicone_fiber_check, bicone_samples, smoothness_crosscheck,
};
use mf_core::centralizer_lab::{condition_star, conjecture_check};
use mf_core::exactpoly::{parse_rational, Rational};
use mf_core::groebner::{regular_sequence_verdict, GbCache, GbOptions, MonomialOrder, Verdict};
use mf_core::invariants::{invariant_generators, verify_invariance, InvariantFamily};
use mf_core::liealg::{
    build_classical, jordan_triple, principal_sl2, vector_to_strings, AlgebraKind, LieAlgebraData,
    SL2Triple, REGULAR_POINT_ATTEMPTS,
};
use mf_core::poisson::commutativity_report;
use mf_core::shift::mf_generators;

/// Environment variable overriding the default cache directory.
pub const CACHE_ENV: &str = "MFCHECK_CACHE_DIR";

pub const EXIT_TRUE: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "mfcheck",
    version,
    about = "Exact checks for argument-shift families of classical Lie algebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Algebra type: gl, sl, so or sp.
    #[arg(long = "type", global = true)]
    pub kind: Option<String>,
    /// Matrix size n.
    #[arg(long, global = true)]
    pub size: Option<usize>,
    /// Jordan block sizes of the nilpotent, e.g. `2,1`.
    #[arg(long, global = true)]
    pub partition: Option<String>,
    /// `e`, `ef`, `h`, `zero`, `random-regular`, or comma-separated rationals.
    #[arg(long, global = true, default_value = "e")]
    pub xi: String,
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = OrderArg::Degrevlex)]
    pub order: OrderArg,
    #[arg(long, global = true)]
    pub timeout_secs: Option<u64>,
    /// Groebner basis cache; defaults to the MFCHECK_CACHE_DIR variable.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderArg {
    Degrevlex,
    Lex,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum BiconeMode {
    Dimension,
    Fiber,
    Smoothness,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build the algebra and verify its structure constants and form.
    Algebra,
    /// Invariant generators and the degree-sum condition.
    Invariants,
    /// Shift family at xi.
    Mf,
    /// Poisson brackets of all pairs in the shift family.
    Commute,
    /// Regular-sequence verdict for the shift family at xi.
    Regseq {
        /// Use the invariant generators alone (the nilpotent cone).
        #[arg(long)]
        nilcone: bool,
    },
    /// Nilpotent bicone checks.
    Bicone {
        #[arg(long, value_enum, default_value_t = BiconeMode::Dimension)]
        mode: BiconeMode,
        /// Number of seeded sample pairs for the smoothness check.
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Condition (*) for the nilpotent given by --partition.
    Star,
    /// Regular-sequence check for the shift family of a centralizer.
    Conjecture {
        /// Run every partition of --size.
        #[arg(long)]
        all_partitions: bool,
        /// Parallel jobs for --all-partitions.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Add wall-clock times to the rows (breaks byte-identical output).
        #[arg(long)]
        timings: bool,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Algebra => "algebra",
            Command::Invariants => "invariants",
            Command::Mf => "mf",
            Command::Commute => "commute",
            Command::Regseq { .. } => "regseq",
            Command::Bicone { .. } => "bicone",
            Command::Star => "star",
            Command::Conjecture { .. } => "conjecture",
        }
    }
}

/// Exit code plus the report (with its digest).
#[derive(Debug, Clone)]
pub struct Outcome {
    pub exit_code: i32,
    pub report: Value,
}

pub fn exit_for(verdict: Verdict) -> i32 {
    match verdict {
        Verdict::True => EXIT_TRUE,
        Verdict::False => EXIT_FALSE,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn exit_for_bool(b: bool) -> i32 {
    if b {
        EXIT_TRUE
    } else {
        EXIT_FALSE
    }
}

/// SHA-256 over the canonical (key-sorted, compact) JSON text.
pub fn report_digest(report: &Value) -> String {
    let text = serde_json::to_string(report).expect("values always serialize");
    hex::encode(Sha256::digest(text.as_bytes()))
}

fn to_value<T: Serialize>(v: &T) -> anyhow::Result<Value> {
    Ok(serde_json::to_value(v)?)
}

struct Setup {
    algebra: LieAlgebraData,
    family: Result<InvariantFamily, mf_core::Error>,
    opts: GbOptions,
}

impl Setup {
    /// Invariants are unavailable for some types (`so_2m`); only commands
    /// that need them fail.
    fn family(&self) -> anyhow::Result<&InvariantFamily> {
        self.family.as_ref().map_err(|e| anyhow!("{e}"))
    }
}

fn algebra_of(common: &Common) -> anyhow::Result<LieAlgebraData> {
    let kind_text = common
        .kind
        .as_deref()
        .ok_or_else(|| anyhow!("--type is required"))?;
    let kind = AlgebraKind::parse(kind_text)
        .filter(|k| *k != AlgebraKind::Centralizer)
        .ok_or_else(|| anyhow!("unknown algebra type {kind_text:?}"))?;
    let size = common.size.ok_or_else(|| anyhow!("--size is required"))?;
    Ok(build_classical(kind, size)?)
}

fn gb_options(common: &Common) -> anyhow::Result<GbOptions> {
    let order = match common.order {
        OrderArg::Degrevlex => MonomialOrder::degrevlex(),
        OrderArg::Lex => MonomialOrder::lex(),
    };
    let timeout = match common.timeout_secs {
        Some(0) => bail!("--timeout-secs must be positive"),
        Some(s) => Some(Duration::from_secs(s)),
        None => None,
    };
    let dir = common
        .cache_dir
        .clone()
        .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from));
    Ok(GbOptions {
        order,
        timeout,
        cache: dir.map(GbCache::new),
    })
}

pub fn parse_partition(text: &str) -> anyhow::Result<Vec<usize>> {
    text.split(',')
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .with_context(|| format!("bad partition part {p:?}"))
        })
        .collect()
}

/// Partitions of `n` in decreasing lexicographic order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// The point `xi` named on the command line, with the number of draws for
/// `random-regular`.
fn resolve_xi(
    l: &LieAlgebraData,
    spec: &str,
    seed: u64,
) -> anyhow::Result<(Vec<Rational>, Option<usize>)> {
    let n = l.dim();
    let xi = match spec {
        "e" => principal_sl2(l)?.e,
        "h" => principal_sl2(l)?.h,
        "ef" => {
            let t = principal_sl2(l)?;
            t.e.iter().zip(&t.f).map(|(a, b)| a + b).collect()
        }
        "zero" => vec![Rational::from_integer(0.into()); n],
        "random-regular" => {
            let (p, attempts) = l.random_regular_point(seed, REGULAR_POINT_ATTEMPTS)?;
            return Ok((p, Some(attempts)));
        }
        explicit => {
            let v = explicit
                .split(',')
                .map(|s| {
                    parse_rational(s.trim()).ok_or_else(|| anyhow!("bad rational {s:?} in --xi"))
                })
                .collect::<anyhow::Result<Vec<_>>>()?;
            if v.len() != n {
                bail!(
                    "--xi has {} entries, the algebra has dimension {n}",
                    v.len()
                );
            }
            v
        }
    };
    Ok((xi, None))
}

fn triple_for(l: &LieAlgebraData, partition: Option<&[usize]>) -> anyhow::Result<SL2Triple> {
    Ok(match partition {
        Some(p) => jordan_triple(l, p)?,
        None => principal_sl2(l)?,
    })
}

fn algebra_summary(l: &LieAlgebraData) -> Value {
    let idx = l.index_of();
    json!({
        "type": l.kind.name(),
        "size": l.size,
        "dim": l.dim(),
        "rank": l.rank,
        "index": idx.index,
        "b": idx.b(),
    })
}

/// Run one parsed command. Errors are usage or input errors (exit 3).
pub fn execute(cli: &Cli) -> anyhow::Result<Outcome> {
    let common = &cli.common;
    let algebra = algebra_of(common)?;
    let family = invariant_generators(&algebra);
    let opts = gb_options(common)?;
    let ctx = Setup {
        algebra,
        family,
        opts,
    };
    let partition = common
        .partition
        .as_deref()
        .map(parse_partition)
        .transpose()?;
    let mut params = serde_json::Map::new();
    if let Some(p) = &partition {
        params.insert("partition".into(), json!(p));
    }
    params.insert("order".into(), json!(ctx.opts.order.to_string()));

    let (exit_code, result) = match &cli.command {
        Command::Algebra => run_algebra(&ctx)?,
        Command::Invariants => run_invariants(&ctx)?,
        Command::Mf | Command::Commute | Command::Regseq { .. } => {
            let (xi, attempts) = resolve_xi(&ctx.algebra, &common.xi, common.seed)?;
            params.insert("xi_spec".into(), json!(common.xi));
            params.insert("xi".into(), json!(vector_to_strings(&xi)));
            if let Some(a) = attempts {
                params.insert("seed".into(), json!(common.seed));
                params.insert("attempts".into(), json!(a));
            }
            run_shift_command(&ctx, &cli.command, &xi)?
        }
        Command::Bicone { mode, samples } => {
            params.insert("mode".into(), json!(format!("{mode:?}").to_lowercase()));
            match mode {
                BiconeMode::Dimension => {
                    let rep = bicone_dimension_check(&ctx.algebra, ctx.family()?, &ctx.opts)?;
                    (exit_for(rep.report.verdict), to_value(&rep)?)
                }
                BiconeMode::Fiber => {
                    let (e, _) = resolve_xi(&ctx.algebra, &common.xi, common.seed)?;
                    params.insert("xi_spec".into(), json!(common.xi));
                    let rep = bicone_fiber_check(&ctx.algebra, ctx.family()?, &e, &ctx.opts)?;
                    let code = match (rep.report.verdict, rep.agrees_with_mf) {
                        (Verdict::Inconclusive, _) | (_, None) => EXIT_INCONCLUSIVE,
                        (Verdict::True, Some(true)) => EXIT_TRUE,
                        _ => EXIT_FALSE,
                    };
                    (code, to_value(&rep)?)
                }
                BiconeMode::Smoothness => {
                    params.insert("seed".into(), json!(common.seed));
                    params.insert("samples".into(), json!(samples));
                    let pairs = bicone_samples(&ctx.algebra, common.seed, *samples)?;
                    let rep = smoothness_crosscheck(ctx.family()?, &pairs)?;
                    (exit_for_bool(rep.all_agree()), to_value(&rep)?)
                }
            }
        }
        Command::Star => {
            let t = triple_for(&ctx.algebra, partition.as_deref())?;
            let rep = condition_star(&ctx.algebra, ctx.family()?, &t)?;
            (exit_for_bool(rep.verdict && rep.invariant), to_value(&rep)?)
        }
        Command::Conjecture {
            all_partitions,
            jobs,
            timings,
        } => {
            params.insert("seed".into(), json!(common.seed));
            let parts: Vec<Option<Vec<usize>>> = if *all_partitions {
                partitions(ctx.algebra.size).into_iter().map(Some).collect()
            } else {
                vec![partition.clone()]
            };
            run_conjecture(&ctx, &parts, common.seed, (*jobs).max(1), *timings)?
        }
    };

    let mut report = json!({
        "command": cli.command.name(),
        "algebra": algebra_summary(&ctx.algebra),
        "parameters": Value::Object(params),
        "result": result,
        "exit_code": exit_code,
    });
    let digest = report_digest(&report);
    report["report_digest"] = json!(digest);
    Ok(Outcome { exit_code, report })
}

fn run_algebra(ctx: &Setup) -> anyhow::Result<(i32, Value)> {
    let l = &ctx.algebra;
    let jacobi = l.jacobi_violation();
    let form = l.form_invariance_violation();
    let idx = l.index_of();
    let ok = jacobi.is_none() && form.is_none() && l.verify_structure().is_ok();
    let result = json!({
        "labels": l.labels,
        "jacobi_violation": jacobi,
        "form_invariance_violation": form,
        "has_form": l.form.is_some(),
        "generic_rank": idx.generic_rank,
        "index_mode": format!("{:?}", idx.mode).to_lowercase(),
        "verified": ok,
    });
    Ok((exit_for_bool(ok), result))
}

fn run_invariants(ctx: &Setup) -> anyhow::Result<(i32, Value)> {
    let fam = ctx.family()?;
    let invariant = fam
        .generators
        .iter()
        .map(|p| verify_invariance(&ctx.algebra, p))
        .collect::<Result<Vec<_>, _>>()?;
    let b = ctx.algebra.b();
    let sum = fam.degree_sum() as usize;
    let ok = sum == b && invariant.iter().all(|&x| x);
    let result = json!({
        "degrees": fam.degrees,
        "generators": fam.generators.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "invariant": invariant,
        "degree_sum": sum,
        "b": b,
        "degree_sum_equals_b": sum == b,
    });
    Ok((exit_for_bool(ok), result))
}

fn run_shift_command(ctx: &Setup, cmd: &Command, xi: &[Rational]) -> anyhow::Result<(i32, Value)> {
    let fam = ctx.family()?;
    let set = mf_generators(fam, xi)?;
    let regular = ctx.algebra.is_regular_point(xi)?;
    Ok(match cmd {
        Command::Mf => (
            EXIT_TRUE,
            json!({ "xi_regular": regular, "family": to_value(&set)? }),
        ),
        Command::Commute => {
            let rep = commutativity_report(&ctx.algebra, &set)?;
            (
                exit_for_bool(rep.commutes()),
                json!({ "xi_regular": regular, "commutativity": to_value(&rep)? }),
            )
        }
        Command::Regseq { nilcone } => {
            let (gens, degenerate) = if *nilcone {
                (fam.generators.clone(), false)
            } else {
                (set.polynomials(), set.degenerate())
            };
            let rep = regular_sequence_verdict(&gens, ctx.algebra.dim(), &ctx.opts)?;
            let result = json!({
                "family": if *nilcone { "invariants" } else { "shift" },
                "xi_regular": regular,
                "degenerate": degenerate,
                "generators": gens.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "report": to_value(&rep)?,
            });
            (exit_for(rep.verdict), result)
        }
        _ => unreachable!("not a shift command"),
    })
}

fn run_conjecture(
    ctx: &Setup,
    parts: &[Option<Vec<usize>>],
    seed: u64,
    jobs: usize,
    timings: bool,
) -> anyhow::Result<(i32, Value)> {
    let job = |p: &Option<Vec<usize>>| -> (Option<Verdict>, Value) {
        let start = Instant::now();
        let outcome = triple_for(&ctx.algebra, p.as_deref()).and_then(|t| {
            Ok(conjecture_check(
                &ctx.algebra,
                ctx.family()?,
                &t,
                seed,
                &ctx.opts,
            )?)
        });
        let elapsed = start.elapsed();
        eprintln!("conjecture {:?}: {:.3}s", p, elapsed.as_secs_f64());
        let mut row = match &outcome {
            Ok(rep) => json!({
                "partition": p,
                "b": rep.star.b,
                "degrees": rep.star.degrees,
                "generators": rep.star.generators,
                "xi": rep.xi,
                "verdict": rep.report.verdict,
                "report": rep,
            }),
            Err(e) => json!({ "partition": p, "verdict": "error", "error": e.to_string() }),
        };
        if timings {
            row["elapsed_ms"] = json!(elapsed.as_millis() as u64);
        }
        (outcome.ok().map(|r| r.report.verdict), row)
    };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?;
    let results: Vec<(Option<Verdict>, Value)> =
        pool.install(|| parts.par_iter().map(job).collect());
    let verdicts: Vec<Option<Verdict>> = results.iter().map(|(v, _)| *v).collect();
    let code = if verdicts
        .iter()
        .any(|v| matches!(v, None | Some(Verdict::False)))
    {
        EXIT_FALSE
    } else if verdicts.contains(&Some(Verdict::Inconclusive)) {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_TRUE
    };
    let rows: Vec<Value> = results.into_iter().map(|(_, r)| r).collect();
    Ok((code, json!({ "rows": rows })))
}

/// Parse arguments, run, and write the report. Returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_TRUE
            };
            let _ = e.print();
            return code;
        }
    };
    let start = Instant::now();
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return EXIT_USAGE;
        }
    };
    eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    let text =
        serde_json::to_string_pretty(&outcome.report).expect("values always serialize") + "\n";
    match &cli.common.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: writing {}: {e}", path.display());
                return EXIT_USAGE;
            }
        }
        None => print!("{text}"),
    }
    outcome.exit_code
}
