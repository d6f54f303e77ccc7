//! Running an experiment: instance preparation, trials on a worker pool, and the
//! fold into a report.

use std::collections::HashSet;
use std::fs;

use rayon::prelude::*;
use vcsp_core::analysis::{conditionally_smooth, correct_border, SmoothCert};
use vcsp_core::format::{landscape_from_json, AnyLandscape};
use vcsp_core::generators::{haken_luby, random_instances, Matousek, MatousekSpec, ScopePolicy};
use vcsp_core::rng::trial_seed;
use vcsp_core::search::bounds::{evaluate, BoundInputs, BoundKind};
use vcsp_core::search::{run, StepRule, Termination};
use vcsp_core::Landscape;

use crate::config::{ExperimentConfig, InstanceSource, StartPolicy};
use crate::report::{BoundReport, GroupSummary, TrialRecord};
use crate::HarnessError;

/// Largest dimension for exhaustive starts.
pub const EXHAUSTIVE_CAP: usize = 22;

/// A landscape ready for trials. `cert` is present when the landscape is
/// certified conditionally smooth, and only then are bounds evaluated.
#[derive(Clone, Debug)]
pub struct PreparedInstance {
    pub id: String,
    pub family: String,
    pub f: AnyLandscape,
    pub cert: Option<SmoothCert>,
}

impl PreparedInstance {
    pub fn new(id: impl Into<String>, family: impl Into<String>, f: AnyLandscape) -> Self {
        let cert = match &f {
            AnyLandscape::Vcsp(c) => conditionally_smooth(c),
            AnyLandscape::Matousek(m) => Some(m.certificate()),
        };
        PreparedInstance {
            id: id.into(),
            family: family.into(),
            f,
            cert,
        }
    }

    /// Height and width of the certified order, 0 without a certificate.
    pub fn shape(&self) -> (usize, usize) {
        self.cert
            .as_ref()
            .map_or((0, 0), |c| (c.order.height(), c.order.width()))
    }
}

fn policy_tag(p: &ScopePolicy) -> String {
    match p {
        ScopePolicy::Singleton => "singleton".into(),
        ScopePolicy::FullPrefix => "full-prefix".into(),
        ScopePolicy::Random { seed, density } => format!("random-{seed}-{density}"),
    }
}

pub fn prepare(source: &InstanceSource) -> Result<Vec<PreparedInstance>, HarnessError> {
    Ok(match source {
        InstanceSource::File { path } => {
            let text = fs::read_to_string(path).map_err(|e| HarnessError::Io {
                path: path.display().to_string(),
                source: e,
            })?;
            let (f, meta) = landscape_from_json(&text)?;
            let family = meta
                .as_ref()
                .and_then(|m| m.get("family"))
                .and_then(|v| v.as_str())
                .unwrap_or("file")
                .to_string();
            let id = path.file_stem().map_or_else(
                || path.display().to_string(),
                |s| s.to_string_lossy().into_owned(),
            );
            vec![PreparedInstance::new(id, family, f)]
        }
        InstanceSource::HakenLuby { g } => {
            let c = haken_luby(*g)?;
            vec![PreparedInstance::new(
                format!("haken-luby-{g}"),
                "haken_luby",
                AnyLandscape::Vcsp(c),
            )]
        }
        InstanceSource::Matousek { n, policy } => {
            let m = Matousek::new(MatousekSpec::from_policy(*n, *policy)?)?;
            vec![PreparedInstance::new(
                format!("matousek-{n}-{}", policy_tag(policy)),
                "matousek",
                AnyLandscape::Matousek(m),
            )]
        }
        InstanceSource::Random {
            spec,
            seed,
            count,
            budget,
        } => random_instances(spec, *seed, *count, *budget)?
            .into_iter()
            .enumerate()
            .map(|(k, c)| {
                PreparedInstance::new(
                    format!("random-{seed}-{k}"),
                    "random",
                    AnyLandscape::Vcsp(c),
                )
            })
            .collect(),
    })
}

pub fn prepare_all(sources: &[InstanceSource]) -> Result<Vec<PreparedInstance>, HarnessError> {
    let mut out = Vec::new();
    for s in sources {
        out.extend(prepare(s)?);
    }
    let mut seen = HashSet::new();
    for p in &out {
        if !seen.insert(p.id.clone()) {
            return Err(HarnessError::Config(format!(
                "duplicate instance id {}",
                p.id
            )));
        }
    }
    Ok(out)
}

/// Bound checked for `rule` on `inst` under the enabled checks, if any.
pub fn bound_for(
    cfg: &ExperimentConfig,
    inst: &PreparedInstance,
    rule: &StepRule,
) -> Option<BoundKind> {
    inst.cert.as_ref()?;
    let kind = BoundKind::for_rule(rule)?;
    let enabled = if kind.is_expectation() {
        cfg.checks.expectation
    } else {
        cfg.checks.per_run
    };
    enabled.then_some(kind)
}

fn trials_for(cfg: &ExperimentConfig, n: usize) -> Result<u64, HarnessError> {
    if cfg.start == StartPolicy::Exhaustive {
        if n > EXHAUSTIVE_CAP {
            return Err(HarnessError::Config(format!(
                "exhaustive starts on {n} variables exceed the cap of {EXHAUSTIVE_CAP}"
            )));
        }
        Ok(1 << n)
    } else {
        Ok(cfg.trials)
    }
}

fn slug(s: &str) -> String {
    s.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '-' {
                c
            } else {
                '_'
            }
        })
        .collect()
}

fn run_trial(
    cfg: &ExperimentConfig,
    inst: &PreparedInstance,
    rule: &StepRule,
    bound: Option<BoundKind>,
    k: u64,
) -> Result<TrialRecord, HarnessError> {
    let n = inst.f.dim();
    let seed = trial_seed(cfg.base_seed, k);
    let x0 = cfg.start.start(n, k, seed);
    let trace = run(rule, &inst.f, &x0, seed, cfg.cap)?;
    if let Some(dir) = &cfg.trace_dir {
        let path = dir.join(format!(
            "{}_{}_{k}.jsonl",
            slug(&inst.id),
            slug(&rule.name())
        ));
        fs::write(&path, trace.to_json_lines()).map_err(|e| HarnessError::Io {
            path: path.display().to_string(),
            source: e,
        })?;
    }
    let (height, width) = inst.shape();
    let steps = trace.num_steps();
    let (bound_value, within_bound) = match (bound, &inst.cert) {
        (Some(kind), Some(cert)) => {
            let at = BoundInputs {
                n,
                width,
                height,
                start_height: correct_border(&inst.f, cert, &x0).height,
            };
            let v = evaluate(kind, rule, &at);
            // expectation flags are filled in once the group mean is known
            let ok = (!kind.is_expectation())
                .then(|| trace.terminated == Termination::Peak && steps as f64 <= v);
            (Some(v), ok)
        }
        _ => (None, None),
    };
    Ok(TrialRecord {
        instance_id: inst.id.clone(),
        family: inst.family.clone(),
        n,
        rule: rule.name(),
        seed,
        start: x0,
        steps,
        terminated: trace.terminated,
        final_fitness: trace.final_fitness().to_string(),
        height,
        width,
        bound_name: bound.map(|b| b.name().to_string()),
        bound_value,
        within_bound,
    })
}

fn summarize(rows: &mut [TrialRecord], bound: Option<BoundKind>) -> GroupSummary {
    let first = &rows[0];
    let mut steps: Vec<usize> = rows.iter().map(|r| r.steps).collect();
    steps.sort_unstable();
    let trials = rows.len();
    let mean = steps.iter().map(|&s| s as f64).sum::<f64>() / trials as f64;
    let median = if trials % 2 == 1 {
        steps[trials / 2] as f64
    } else {
        (steps[trials / 2 - 1] + steps[trials / 2]) as f64 / 2.0
    };
    let capped = rows
        .iter()
        .filter(|r| r.terminated == Termination::Cap)
        .count();
    let mut summary = GroupSummary {
        instance_id: first.instance_id.clone(),
        family: first.family.clone(),
        n: first.n,
        rule: first.rule.clone(),
        trials,
        capped,
        mean,
        median,
        max: *steps.last().expect("non-empty group"),
        height: first.height,
        width: first.width,
        bound_name: first.bound_name.clone(),
        bound_value: None,
        within_bound: None,
    };
    let Some(kind) = bound else {
        return summary;
    };
    if kind.is_expectation() {
        let v = first.bound_value.expect("bound rows carry a value");
        // a capped trial makes the mean a lower estimate, so it cannot pass
        let ok = capped == 0 && mean <= v;
        for r in rows.iter_mut() {
            r.within_bound = Some(ok);
        }
        summary.bound_value = Some(v);
        summary.within_bound = Some(ok);
    } else {
        summary.bound_value = rows.iter().filter_map(|r| r.bound_value).reduce(f64::max);
        summary.within_bound = Some(rows.iter().all(|r| r.within_bound == Some(true)));
    }
    summary
}

/// Runs every (instance, rule, trial) triple on the current rayon pool. Rows and
/// groups come out in (instance, rule, trial) order whatever the schedule.
pub fn run_prepared(
    cfg: &ExperimentConfig,
    instances: &[PreparedInstance],
) -> Result<BoundReport, HarnessError> {
    cfg.validate()?;
    let mut jobs = Vec::new();
    for (a, inst) in instances.iter().enumerate() {
        let count = trials_for(cfg, inst.f.dim())?;
        for b in 0..cfg.rules.len() {
            jobs.extend((0..count).map(|k| (a, b, k)));
        }
    }
    if let Some(dir) = &cfg.trace_dir {
        fs::create_dir_all(dir).map_err(|e| HarnessError::Io {
            path: dir.display().to_string(),
            source: e,
        })?;
    }
    let rows: Vec<TrialRecord> = jobs
        .par_iter()
        .map(|&(a, b, k)| {
            let inst = &instances[a];
            let rule = &cfg.rules[b];
            run_trial(cfg, inst, rule, bound_for(cfg, inst, rule), k)
        })
        .collect::<Result<_, _>>()?;
    let mut report = BoundReport {
        name: cfg.name.clone(),
        base_seed: cfg.base_seed,
        groups: Vec::new(),
        trials: rows,
    };
    let mut start = 0;
    for inst in instances {
        let count = trials_for(cfg, inst.f.dim())? as usize;
        for rule in &cfg.rules {
            if count == 0 {
                continue;
            }
            let group = &mut report.trials[start..start + count];
            report
                .groups
                .push(summarize(group, bound_for(cfg, inst, rule)));
            start += count;
        }
    }
    Ok(report)
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<BoundReport, HarnessError> {
    let instances = prepare_all(&cfg.instances)?;
    run_prepared(cfg, &instances)
}

/// [`run_experiment`] on a dedicated pool of `workers` threads.
pub fn run_experiment_with_workers(
    cfg: &ExperimentConfig,
    workers: usize,
) -> Result<BoundReport, HarnessError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| HarnessError::Config(format!("worker pool: {e}")))?;
    pool.install(|| run_experiment(cfg))
}

/// Worker count from `VCSP_WORKERS`, if set and valid.
pub fn workers_from_env() -> Option<usize> {
    std::env::var(crate::WORKERS_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|&w| w > 0)
}
