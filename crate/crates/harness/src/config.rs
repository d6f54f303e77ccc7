//! Experiment configuration.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use rand::Rng as _;
use serde::{Deserialize, Serialize};
use vcsp_core::generators::{RandomSpec, ScopePolicy};
use vcsp_core::rng::{rng_from_seed, trial_seed};
use vcsp_core::search::StepRule;
use vcsp_core::Assignment;

use crate::HarnessError;

/// Where the landscapes of an experiment come from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "kebab-case")]
pub enum InstanceSource {
    /// An instance or Matoušek file written by `vcsp gen`.
    File {
        path: PathBuf,
    },
    HakenLuby {
        g: usize,
    },
    Matousek {
        n: usize,
        policy: ScopePolicy,
    },
    /// `count` accepted draws from the rejection sampler.
    Random {
        spec: RandomSpec,
        seed: u64,
        count: usize,
        #[serde(default = "default_budget")]
        budget: usize,
    },
}

fn default_budget() -> usize {
    100_000
}

/// How the start of each trial is chosen.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StartPolicy {
    Zeros,
    /// Uniform, drawn from the trial seed.
    #[default]
    Random,
    /// Every assignment once, in code order; the trial count is ignored.
    Exhaustive,
    Fixed(Assignment),
}

impl StartPolicy {
    /// Start of trial `k` with seed `seed` on `n` variables.
    pub fn start(&self, n: usize, k: u64, seed: u64) -> Assignment {
        match self {
            StartPolicy::Zeros => Assignment::zeros(n),
            StartPolicy::Random => random_start(n, seed),
            StartPolicy::Exhaustive => Assignment::from_code(n, k),
            StartPolicy::Fixed(x) => x.clone(),
        }
    }
}

/// A uniform assignment from its own stream, so the search stream of `seed` is untouched.
pub fn random_start(n: usize, seed: u64) -> Assignment {
    let mut rng = rng_from_seed(trial_seed(seed, u64::MAX));
    let bits: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    Assignment::from_bools(&bits)
}

/// Start syntax on the command line: a bit string, `zeros`, or `random:<seed>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StartArg {
    Bits(Assignment),
    Zeros,
    Random(u64),
}

impl StartArg {
    pub fn resolve(&self, n: usize) -> Assignment {
        match self {
            StartArg::Bits(x) => x.clone(),
            StartArg::Zeros => Assignment::zeros(n),
            StartArg::Random(seed) => random_start(n, *seed),
        }
    }
}

impl FromStr for StartArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "zeros" {
            return Ok(StartArg::Zeros);
        }
        if let Some(seed) = s.strip_prefix("random:") {
            return seed
                .parse()
                .map(StartArg::Random)
                .map_err(|e| format!("bad seed {seed:?}: {e}"));
        }
        s.parse::<Assignment>()
            .map(StartArg::Bits)
            .map_err(|e| format!("start {s:?} is not zeros, random:<seed> or a bit string: {e}"))
    }
}

impl fmt::Display for StartArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StartArg::Bits(x) => write!(f, "{x}"),
            StartArg::Zeros => f.write_str("zeros"),
            StartArg::Random(s) => write!(f, "random:{s}"),
        }
    }
}

/// Which bound families are checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundChecks {
    /// Bounds every single run must meet.
    #[serde(default = "yes")]
    pub per_run: bool,
    /// Bounds on the mean over trials.
    #[serde(default = "yes")]
    pub expectation: bool,
}

fn yes() -> bool {
    true
}

impl Default for BoundChecks {
    fn default() -> Self {
        BoundChecks {
            per_run: true,
            expectation: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub name: String,
    pub instances: Vec<InstanceSource>,
    pub rules: Vec<StepRule>,
    pub base_seed: u64,
    /// Trials per (instance, rule) pair.
    pub trials: u64,
    #[serde(default)]
    pub start: StartPolicy,
    #[serde(default = "default_cap")]
    pub cap: usize,
    #[serde(default)]
    pub checks: BoundChecks,
    /// One JSON-lines trace per trial is written here when set.
    #[serde(default)]
    pub trace_dir: Option<PathBuf>,
}

fn default_cap() -> usize {
    1_000_000
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, HarnessError> {
        let cfg: ExperimentConfig =
            serde_json::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("configs serialize")
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.cap == 0 {
            return Err(HarnessError::Config("step cap must be positive".into()));
        }
        for rule in &self.rules {
            rule.validate()
                .map_err(|e| HarnessError::Config(format!("rule {rule}: {e}")))?;
        }
        Ok(())
    }
}
