use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use vcsp_core::analysis::{classify_with_limit, oriented_poset, ClassLabel, Poset, SmoothCert};
use vcsp_core::format::{instance_to_json, landscape_from_json, matousek_to_json, AnyLandscape};
use vcsp_core::generators::{
    haken_luby, haken_luby_metadata, matousek_metadata, random_instance, random_metadata,
    subsetsum_metadata, subsetsum_split, subsetsum_star, Filter, Matousek, MatousekSpec,
    RandomSpec, ScopePolicy,
};
use vcsp_core::oracle::{FitnessTable, OracleConfig};
use vcsp_core::search::{run, StepRule};
use vcsp_core::Landscape;
use vcsp_harness::{
    run_experiment, run_experiment_with_workers, workers_from_env, ExperimentConfig, StartArg,
};

#[derive(Parser)]
#[command(
    name = "vcsp",
    version,
    about = "Binary Boolean VCSPs, their fitness landscapes and local search"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance file.
    Gen {
        #[command(subcommand)]
        family: GenFamily,
        /// Output file; stdout when omitted.
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Arc kinds, classification and smoothness certificate of a VCSP.
    Analyze {
        #[arg(long)]
        instance: PathBuf,
        /// Largest background size enumerated per edge.
        #[arg(long, default_value_t = vcsp_core::analysis::DEFAULT_BACKGROUND_LIMIT)]
        limit: usize,
    },
    /// Brute-force checks over the whole cube.
    Oracle {
        check: OracleCheck,
        #[arg(long)]
        instance: PathBuf,
        /// First index, for sign-dependence.
        #[arg(long)]
        i: Option<usize>,
        /// Second index, for sign-dependence.
        #[arg(long)]
        j: Option<usize>,
    },
    /// One local search run.
    Search {
        #[arg(long)]
        rule: StepRule,
        #[arg(long)]
        instance: PathBuf,
        /// A bit string, `zeros` or `random:<seed>`.
        #[arg(long, default_value = "zeros")]
        start: StartArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1_000_000)]
        cap: usize,
        /// Write the trace as JSON lines.
        #[arg(long)]
        trace_out: Option<PathBuf>,
    },
    /// Run an experiment config; exits non-zero if a bound check fails.
    Bench(BenchArgs),
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    config: PathBuf,
    /// Per-trial CSV report.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Full JSON report.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Leave out the timestamp line of the CSV.
    #[arg(long)]
    no_timestamp: bool,
    /// Worker threads; overrides VCSP_WORKERS.
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Subcommand)]
enum GenFamily {
    HakenLuby {
        #[arg(long)]
        g: usize,
    },
    Matousek {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = PolicyArg::Random)]
        policy: PolicyArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
    },
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.3)]
        density: f64,
        #[arg(long, default_value_t = 8)]
        weight_bound: u64,
        #[arg(long, value_enum, default_value_t = FilterArg::Any)]
        filter: FilterArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long)]
        tie_free: bool,
        #[arg(long)]
        tree: bool,
        /// Candidates drawn before giving up.
        #[arg(long, default_value_t = 100_000)]
        budget: usize,
    },
    SubsetsumStar {
        /// Comma-separated positive weights.
        #[arg(long, value_delimiter = ',')]
        a: Vec<u64>,
        #[arg(long)]
        target: u64,
    },
    SubsetsumSplit {
        #[arg(long, value_delimiter = ',')]
        a: Vec<u64>,
        #[arg(long)]
        target: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PolicyArg {
    Singleton,
    FullPrefix,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum FilterArg {
    Any,
    TieFree,
    Directed,
    Oriented,
    Smooth,
    ConditionallySmooth,
    Tree,
}

impl From<FilterArg> for Filter {
    fn from(f: FilterArg) -> Self {
        match f {
            FilterArg::Any => Filter::Any,
            FilterArg::TieFree => Filter::TieFree,
            FilterArg::Directed => Filter::Directed,
            FilterArg::Oriented => Filter::Oriented,
            FilterArg::Smooth => Filter::Smooth,
            FilterArg::ConditionallySmooth => Filter::ConditionallySmooth,
            FilterArg::Tree => Filter::Tree,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleCheck {
    Semismooth,
    LocalPeaks,
    ConditionallySmooth,
    SignDependence,
    LongestAscent,
    MaxSteepest,
    Ties,
    RecursivelyCombed,
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => {
            fs::write(p, format!("{text}\n")).with_context(|| format!("writing {}", p.display()))
        }
        None => print_stdout(&format!("{text}\n")),
    }
}

/// Writes to stdout, treating a closed pipe (e.g. `| head`) as success.
fn print_stdout(text: &str) -> Result<()> {
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        r => Ok(r?),
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize")
}

fn load(path: &Path) -> Result<AnyLandscape> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let (f, _) =
        landscape_from_json(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(f)
}

fn gen(family: GenFamily) -> Result<String> {
    Ok(match family {
        GenFamily::HakenLuby { g } => {
            instance_to_json(&haken_luby(g)?, Some(haken_luby_metadata(g)))
        }
        GenFamily::Matousek {
            n,
            policy,
            seed,
            density,
        } => {
            let policy = match policy {
                PolicyArg::Singleton => ScopePolicy::Singleton,
                PolicyArg::FullPrefix => ScopePolicy::FullPrefix,
                PolicyArg::Random => ScopePolicy::Random { seed, density },
            };
            let spec = MatousekSpec::from_policy(n, policy)?;
            let meta = matousek_metadata(&spec, Some(policy));
            matousek_to_json(&Matousek::new(spec)?, Some(meta))
        }
        GenFamily::Random {
            n,
            density,
            weight_bound,
            filter,
            seed,
            max_degree,
            tie_free,
            tree,
            budget,
        } => {
            let mut spec = RandomSpec::new(n, density, weight_bound, filter.into());
            spec.max_degree = max_degree;
            spec.tie_free = tie_free;
            spec.tree = tree;
            let (c, candidate) = random_instance(&spec, seed, budget)?;
            instance_to_json(&c, Some(random_metadata(&spec, seed, candidate)))
        }
        GenFamily::SubsetsumStar { a, target } => instance_to_json(
            &subsetsum_star(&a, target)?,
            Some(subsetsum_metadata("star", &a, target)),
        ),
        GenFamily::SubsetsumSplit { a, target } => instance_to_json(
            &subsetsum_split(&a, target)?,
            Some(subsetsum_metadata("split", &a, target)),
        ),
    })
}

fn poset_json(p: &Poset) -> Value {
    json!({"levels": p.levels(), "height": p.height(), "width": p.width()})
}

fn cert_json(cert: &SmoothCert) -> Value {
    json!({
        "levels": cert.order.levels(),
        "rounds": cert.rounds,
        "height": cert.order.height(),
        "width": cert.order.width(),
        "peak": cert.peak.to_string(),
    })
}

fn analyze(path: &Path, limit: usize) -> Result<Value> {
    let f = load(path)?;
    let Some(c) = f.as_vcsp() else {
        bail!("analyze needs a VCSP instance; use `vcsp oracle` for other landscapes");
    };
    let cls = classify_with_limit(c, limit)?;
    let poset = match cls.label {
        ClassLabel::Oriented => Some(poset_json(&oriented_poset(&cls.arcs)?)),
        _ => None,
    };
    let cert = vcsp_core::analysis::conditionally_smooth(c);
    Ok(json!({
        "n": c.n(),
        "edges": cls.arcs.edges,
        "label": cls.label.to_string(),
        "witness": cls.witness,
        "tie_degenerate": cls.arcs.tie_degenerate(),
        "poset": poset,
        "conditionally_smooth": cert.as_ref().map(cert_json),
    }))
}

fn oracle(check: OracleCheck, path: &Path, i: Option<usize>, j: Option<usize>) -> Result<Value> {
    let f = load(path)?;
    let cfg = OracleConfig::default();
    let n = f.dim();
    let cap = match check {
        OracleCheck::LocalPeaks
        | OracleCheck::LongestAscent
        | OracleCheck::MaxSteepest
        | OracleCheck::Ties => cfg.single_pass_cap,
        _ => cfg.sweep_cap,
    };
    let table = FitnessTable::build(&f, cap)?;
    Ok(match check {
        OracleCheck::Semismooth => serde_json::to_value(table.semismooth_verdict())?,
        OracleCheck::LocalPeaks => {
            let peaks: Vec<String> = table
                .local_peaks()
                .iter()
                .map(ToString::to_string)
                .collect();
            json!({"count": peaks.len(), "peaks": peaks})
        }
        OracleCheck::ConditionallySmooth => match table.conditionally_smooth() {
            Some(cert) => {
                let verified = table.verify_smooth_cert(&cert).is_none();
                json!({"conditionally_smooth": true, "certificate": cert_json(&cert), "verified": verified})
            }
            None => json!({"conditionally_smooth": false}),
        },
        OracleCheck::SignDependence => {
            let (Some(i), Some(j)) = (i, j) else {
                bail!("sign-dependence needs --i and --j");
            };
            if i >= n || j >= n || i == j {
                bail!("need two distinct indices below {n}");
            }
            let sd = table.sign_dependence(i, j);
            json!({"arc_kind": sd.arc_kind(), "i_on_j": sd.i_on_j, "j_on_i": sd.j_on_i, "rse": sd.rse})
        }
        OracleCheck::LongestAscent => {
            let (len, from, to) = table.longest_ascent();
            json!({"length": len, "from": from.to_string(), "to": to.to_string()})
        }
        OracleCheck::MaxSteepest => {
            let (len, start) = table.max_steepest_length();
            json!({"length": len, "start": start.to_string()})
        }
        OracleCheck::Ties => json!({"tie": table.find_tie()}),
        OracleCheck::RecursivelyCombed => {
            json!({"recursively_combed": table.is_recursively_combed()})
        }
    })
}

fn search(
    rule: &StepRule,
    path: &Path,
    start: &StartArg,
    seed: u64,
    cap: usize,
    trace_out: Option<&Path>,
) -> Result<Value> {
    let f = load(path)?;
    let x0 = start.resolve(f.dim());
    let trace = run(rule, &f, &x0, seed, cap)?;
    if let Some(p) = trace_out {
        fs::write(p, trace.to_json_lines()).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(json!({
        "rule": trace.rule,
        "seed": seed,
        "start": x0.to_string(),
        "steps": trace.num_steps(),
        "terminated": trace.terminated,
        "final": trace.final_assignment().to_string(),
        "final_fitness": trace.final_fitness().to_string(),
    }))
}

fn bench(args: &BenchArgs) -> Result<bool> {
    let text = fs::read_to_string(&args.config)
        .with_context(|| format!("reading {}", args.config.display()))?;
    let cfg = ExperimentConfig::from_json(&text)?;
    let report = match args.workers.or_else(workers_from_env) {
        Some(w) => run_experiment_with_workers(&cfg, w)?,
        None => run_experiment(&cfg)?,
    };
    if let Some(p) = &args.csv {
        let file = fs::File::create(p).with_context(|| format!("creating {}", p.display()))?;
        report.write_csv(std::io::BufWriter::new(file), !args.no_timestamp)?;
    }
    if let Some(p) = &args.json {
        fs::write(p, report.to_json()).with_context(|| format!("writing {}", p.display()))?;
    }
    print_stdout(&report.summary_table())?;
    let failures = report.failures();
    for g in &failures {
        eprintln!(
            "bound {} violated: {} on {} (mean {:.3}, max {}, bound {:?}, capped {})",
            g.bound_name.as_deref().unwrap_or("?"),
            g.rule,
            g.instance_id,
            g.mean,
            g.max,
            g.bound_value,
            g.capped
        );
    }
    Ok(failures.is_empty())
}

fn main() -> Result<ExitCode> {
    let cli = Cli::parse();
    match cli.command {
        Command::Gen { family, out } => emit(&gen(family)?, out.as_deref())?,
        Command::Analyze { instance, limit } => emit(&pretty(&analyze(&instance, limit)?), None)?,
        Command::Oracle {
            check,
            instance,
            i,
            j,
        } => emit(&pretty(&oracle(check, &instance, i, j)?), None)?,
        Command::Search {
            rule,
            instance,
            start,
            seed,
            cap,
            trace_out,
        } => emit(
            &pretty(&search(
                &rule,
                &instance,
                &start,
                seed,
                cap,
                trace_out.as_deref(),
            )?),
            None,
        )?,
        Command::Bench(args) => {
            if !bench(&args)? {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
