mod parser;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use tqmzv::cache::DiskCache;
use tqmzv::coef::{parse_rational, rational_to_f64};
use tqmzv::lemmas::{verify_lemma, Lemma};
use tqmzv::maps::s_map_t;
use tqmzv::numeric::{numeric_eval, zeta_q_star_f64};
use tqmzv::relations::{
    csf_instances, default_order, hoffman_instances, kawashima_instances, kernel_instances, Instance, Order,
    VerificationReport, Verifier,
};
use tqmzv::{CoefPoly, Evaluator, Index, NcPoly, QSeries, Rational};

#[derive(Parser)]
#[command(name = "tqmzv", version, about = "Exact t-interpolated q-MZV algebra, evaluation and relation checks")]
struct Cli {
    /// Directory for the persistent q-series cache.
    #[arg(long, global = true, env = "TQMZV_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Expand an expression into a normalized polynomial.
    Expand {
        expr: String,
        /// Substitute a rational value for t.
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        t: Option<Rational>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Evaluate an index ("2,1") or expression as a q-series or a float.
    Eval {
        target: String,
        #[command(flatten)]
        opts: EvalOpts,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        t: Option<Rational>,
    },
    /// Evaluate the star value of an index.
    EvalStar {
        index: String,
        #[command(flatten)]
        opts: EvalOpts,
    },
    /// Check a family of relations; prints one JSON report per instance.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct EvalOpts {
    /// Truncation order N (result is exact mod q^(N+1)); default weight + 12.
    #[arg(long)]
    order: Option<usize>,
    /// Evaluate numerically at this q in (0, 1) instead.
    #[arg(long, value_parser = rational)]
    q: Option<Rational>,
    /// Target accuracy of numeric evaluation.
    #[arg(long, default_value_t = 1e-12)]
    eps: f64,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Kawashima,
    Csf,
    Hoffman,
    Kernel,
    Lemmas,
    All,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    /// Largest weight (letters for words, sum of parts for indices).
    #[arg(long)]
    max_weight: Option<usize>,
    #[arg(long)]
    max_depth: Option<usize>,
    /// Values of m for the Kawashima-type relation.
    #[arg(long, value_delimiter = ',')]
    m: Vec<u32>,
    /// Tensor degrees n for the kernel check.
    #[arg(long, value_delimiter = ',')]
    n: Vec<usize>,
    /// Fixed truncation order; default weight + 12 per instance.
    #[arg(long)]
    order: Option<usize>,
    /// Specialize t to this rational before verifying.
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    t: Option<Rational>,
    /// Check a random subset of this many instances.
    #[arg(long)]
    sample: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write reports here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// Failures that end the run: usage/domain problems exit with 2.
struct Fatal(String);

impl<E: std::fmt::Display> From<E> for Fatal {
    fn from(e: E) -> Self {
        Fatal(e.to_string())
    }
}

type Outcome = Result<bool, Fatal>;

fn evaluator(cache_dir: &Option<PathBuf>) -> Evaluator {
    match cache_dir {
        Some(dir) => Evaluator::with_disk_cache(DiskCache::open(dir)),
        None => Evaluator::new(),
    }
}

fn render_poly(p: &NcPoly, format: Format) -> String {
    match format {
        Format::Json => p.to_json(),
        Format::Text => p.to_z_string().unwrap_or_else(|| p.to_string()),
    }
}

fn render_series(s: &QSeries, format: Format) -> String {
    match format {
        Format::Json => s.to_json(),
        Format::Text => s.to_string(),
    }
}

fn render_float(v: f64, q: &Rational, t: Option<&Rational>, format: Format) -> String {
    match format {
        Format::Json => {
            let t = t.map(tqmzv::coef::rational_to_string);
            json!({ "q": tqmzv::coef::rational_to_string(q), "t": t, "value": v }).to_string()
        }
        Format::Text => format!("{v:.17e}"),
    }
}

fn is_index(s: &str) -> bool {
    !s.is_empty() && s.split(',').all(|p| !p.trim().is_empty() && p.trim().chars().all(|c| c.is_ascii_digit()))
}

fn max_grading(p: &NcPoly) -> usize {
    p.gradings().into_iter().max().unwrap_or(0)
}

fn q_float(q: &Rational) -> Result<f64, Fatal> {
    let v = rational_to_f64(q);
    if v > 0.0 && v < 1.0 {
        Ok(v)
    } else {
        Err(Fatal(format!("--q must lie strictly between 0 and 1, got {q}")))
    }
}

fn cmd_expand(expr: &str, t: Option<Rational>, format: Format) -> Outcome {
    let mut p = parser::parse_expr(expr)?;
    if let Some(t) = t {
        p = p.subst_t(&t);
    }
    println!("{}", render_poly(&p, format));
    Ok(true)
}

fn cmd_eval(cli: &Cli, target: &str, opts: &EvalOpts, t: Option<Rational>) -> Outcome {
    let (poly, idx) = if is_index(target) {
        let idx: Index = target.parse()?;
        (NcPoly::zs(idx.parts()), Some(idx))
    } else {
        (parser::parse_expr(target)?, None)
    };
    if let Some(q) = &opts.q {
        let qf = q_float(q)?;
        let tf = match &t {
            Some(t) => rational_to_f64(t),
            None if s_map_t(&poly)?.iter().all(|(_, c)| c.deg_t() == 0) => 0.0,
            None => return Err(Fatal("value depends on t; pass --t".into())),
        };
        let v = numeric_eval(&poly, qf, tf, opts.eps)?;
        println!("{}", render_float(v, q, t.as_ref(), opts.format));
        return Ok(true);
    }
    let order = opts.order.unwrap_or_else(|| default_order(max_grading(&poly)));
    let ev = evaluator(&cli.cache_dir);
    let mut series = match idx {
        Some(idx) => ev.zeta_q_t(&idx, order)?,
        None => ev.z_eval(&poly, order)?,
    };
    if let Some(t) = &t {
        series = series.subst_t(t);
    }
    println!("{}", render_series(&series, opts.format));
    Ok(true)
}

fn cmd_eval_star(cli: &Cli, index: &str, opts: &EvalOpts) -> Outcome {
    let idx: Index = index.parse()?;
    if let Some(q) = &opts.q {
        let v = zeta_q_star_f64(&idx, q_float(q)?, opts.eps)?;
        println!("{}", render_float(v, q, None, opts.format));
        return Ok(true);
    }
    let order = opts.order.unwrap_or_else(|| default_order(idx.weight() as usize));
    let series = evaluator(&cli.cache_dir).zeta_q_star(&idx, order)?;
    println!("{}", render_series(&series, opts.format));
    Ok(true)
}

enum Job {
    Relation(Instance),
    Lemma(Lemma),
}

fn jobs(args: &VerifyArgs) -> Vec<Job> {
    let suites: &[Suite] = match args.suite {
        Suite::All => &[Suite::Kawashima, Suite::Csf, Suite::Hoffman, Suite::Kernel, Suite::Lemmas],
        ref s => std::slice::from_ref(s),
    };
    let mut out = Vec::new();
    for suite in suites {
        let rel = |v: Vec<Instance>| v.into_iter().map(Job::Relation);
        match suite {
            Suite::Kawashima => {
                let ms = if args.m.is_empty() { vec![1, 2, 3] } else { args.m.clone() };
                out.extend(rel(kawashima_instances(&ms, args.max_weight.unwrap_or(3))));
            }
            Suite::Csf => {
                let w = args.max_weight.unwrap_or(6) as u32;
                out.extend(rel(csf_instances(w, args.max_depth.unwrap_or(4))));
            }
            Suite::Hoffman => {
                let w = args.max_weight.unwrap_or(6) as u32;
                out.extend(rel(hoffman_instances(w, args.max_depth.unwrap_or(w as usize))));
            }
            Suite::Kernel => {
                let ns = if args.n.is_empty() { vec![1, 2] } else { args.n.clone() };
                out.extend(rel(kernel_instances(args.max_weight.unwrap_or(5), &ns)));
            }
            Suite::Lemmas => out.extend(Lemma::ALL.into_iter().map(Job::Lemma)),
            Suite::All => unreachable!(),
        }
    }
    out
}

fn cmd_verify(cli: &Cli, args: &VerifyArgs) -> Outcome {
    let mut jobs = jobs(args);
    if let Some(k) = args.sample {
        let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
        jobs.shuffle(&mut rng);
        jobs.truncate(k);
    }
    let t = args.t.clone().map_or_else(CoefPoly::t, CoefPoly::constant);
    let verifier = Verifier::with_evaluator(Arc::new(evaluator(&cli.cache_dir)), t);
    let order = args.order.map_or(Order::ByWeight, Order::Fixed);
    let lemma_weight = args.max_weight.unwrap_or(4);
    let reports: Vec<VerificationReport> = jobs
        .par_iter()
        .map(|job| match job {
            Job::Relation(i) => i.run(&verifier, order),
            Job::Lemma(l) => verify_lemma(*l, lemma_weight),
        })
        .collect::<tqmzv::Result<_>>()?;
    let mut sink: Box<dyn Write> = match &args.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    for r in &reports {
        writeln!(sink, "{}", r.to_json_line())?;
    }
    sink.flush()?;
    let passed = reports.iter().filter(|r| r.passed()).count();
    eprintln!("verify: {passed} of {} instances passed", reports.len());
    Ok(passed == reports.len())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.cmd {
        Cmd::Expand { expr, t, format } => cmd_expand(expr, t.clone(), *format),
        Cmd::Eval { target, opts, t } => cmd_eval(&cli, target, opts, t.clone()),
        Cmd::EvalStar { index, opts } => cmd_eval_star(&cli, index, opts),
        Cmd::Verify(args) => cmd_verify(&cli, args),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Fatal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
