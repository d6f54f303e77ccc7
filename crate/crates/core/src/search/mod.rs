//! Local search rules behind a uniform driver with seeded randomness and
//! replayable traces.
//!
//! Unspecified tie-breaks always go to the lowest index.

mod anneal;
pub mod bounds;
mod facet;
mod history;
mod rules;

use std::fmt;
use std::str::FromStr;

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::analysis::{correct_border, SmoothCert};
use crate::assignment::Assignment;
use crate::error::SearchError;
use crate::fitness::FitnessValue;
use crate::instance::{is_local_peak, Landscape};
use crate::rng::{rng_from_seed, Rng, RNG_NAME};

pub use anneal::AnnealingSchedule;
pub use facet::random_facet_run;
pub use history::{HistoryKind, HistoryState};
pub use rules::{
    antipodal_step, history_step, jump_to_best_step, kernighan_lin_step, kl_neighborhood,
    random_ascent_step, random_jump_step, simulated_annealing_step, steepest_index, steepest_step,
    JUMP_TO_BEST_CAP,
};

fn default_jtb_cap() -> usize {
    JUMP_TO_BEST_CAP
}

/// A local search rule and its parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum StepRule {
    SteepestAscent,
    RandomAscent,
    /// With probability `epsilon` a RandomAscent step, otherwise a step of `inner`.
    Shaken {
        inner: Box<StepRule>,
        epsilon: f64,
    },
    SimulatedAnnealing {
        #[serde(default)]
        schedule: AnnealingSchedule,
    },
    History {
        kind: HistoryKind,
    },
    AntipodalJump,
    JumpToBest {
        #[serde(default = "default_jtb_cap")]
        cap: usize,
    },
    RandomJump,
    KernighanLin,
    RandomFacet,
}

impl StepRule {
    /// Canonical name; parses back with [`FromStr`] for every rule with default
    /// parameters, and for shaken rules.
    pub fn name(&self) -> String {
        match self {
            StepRule::SteepestAscent => "steepest-ascent".into(),
            StepRule::RandomAscent => "random-ascent".into(),
            StepRule::Shaken { inner, epsilon } => format!("shaken:{epsilon}:{}", inner.name()),
            StepRule::SimulatedAnnealing { .. } => "simulated-annealing".into(),
            StepRule::History { kind } => kind.name().into(),
            StepRule::AntipodalJump => "antipodal-jump".into(),
            StepRule::JumpToBest { .. } => "jump-to-best".into(),
            StepRule::RandomJump => "random-jump".into(),
            StepRule::KernighanLin => "kernighan-lin".into(),
            StepRule::RandomFacet => "random-facet".into(),
        }
    }

    /// Single-flip rules that only take strictly improving steps.
    pub fn is_adjacent_ascent(&self) -> bool {
        matches!(
            self,
            StepRule::SteepestAscent
                | StepRule::RandomAscent
                | StepRule::Shaken { .. }
                | StepRule::History { .. }
        )
    }

    /// Rules whose every step strictly increases fitness on semismooth landscapes.
    pub fn follows_ascents(&self) -> bool {
        !matches!(
            self,
            StepRule::SimulatedAnnealing { .. } | StepRule::RandomJump
        )
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        match self {
            StepRule::Shaken { inner, epsilon } => {
                if !(*epsilon > 0.0 && *epsilon <= 1.0) {
                    return Err(SearchError::InvalidParameter(format!(
                        "shaking probability {epsilon} outside (0, 1]"
                    )));
                }
                match **inner {
                    StepRule::SteepestAscent
                    | StepRule::RandomAscent
                    | StepRule::History { .. } => Ok(()),
                    _ => Err(SearchError::InvalidParameter(format!(
                        "{} cannot be shaken; use an ascent-following single-flip rule",
                        inner.name()
                    ))),
                }
            }
            StepRule::SimulatedAnnealing { schedule } => schedule.validate(),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for StepRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for StepRule {
    type Err = SearchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(rest) = s.strip_prefix("shaken:") {
            let (eps, inner) = rest.split_once(':').ok_or_else(|| {
                SearchError::InvalidParameter(format!("expected shaken:<epsilon>:<rule>, got {s}"))
            })?;
            let epsilon: f64 = eps.parse().map_err(|_| {
                SearchError::InvalidParameter(format!("bad shaking probability {eps}"))
            })?;
            let rule = StepRule::Shaken {
                inner: Box::new(inner.parse()?),
                epsilon,
            };
            rule.validate()?;
            return Ok(rule);
        }
        if let Some(kind) = HistoryKind::ALL.iter().find(|k| k.name() == s) {
            return Ok(StepRule::History { kind: *kind });
        }
        Ok(match s {
            "steepest-ascent" | "steepest" => StepRule::SteepestAscent,
            "random-ascent" => StepRule::RandomAscent,
            "simulated-annealing" => StepRule::SimulatedAnnealing {
                schedule: AnnealingSchedule::default(),
            },
            "antipodal-jump" => StepRule::AntipodalJump,
            "jump-to-best" => StepRule::JumpToBest {
                cap: JUMP_TO_BEST_CAP,
            },
            "random-jump" => StepRule::RandomJump,
            "kernighan-lin" => StepRule::KernighanLin,
            "random-facet" => StepRule::RandomFacet,
            _ => return Err(SearchError::InvalidParameter(format!("unknown rule {s}"))),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Termination {
    Peak,
    Cap,
}

impl fmt::Display for Termination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Termination::Peak => "peak",
            Termination::Cap => "cap",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    /// Indices flipped by the step, ascending; empty when the step stayed put.
    pub flipped: Vec<usize>,
    pub fitness: FitnessValue,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchTrace {
    pub rule: String,
    pub rng: String,
    pub seed: u64,
    pub start: Assignment,
    pub start_fitness: FitnessValue,
    pub steps: Vec<TraceStep>,
    pub terminated: Termination,
}

#[derive(Serialize, Deserialize)]
struct TraceHeader {
    rule: String,
    rng: String,
    seed: u64,
    start: Assignment,
    start_fitness: FitnessValue,
    terminated: Termination,
    num_steps: usize,
}

#[derive(Serialize, Deserialize)]
struct TraceLine {
    step: usize,
    flipped: Vec<usize>,
    fitness: FitnessValue,
}

impl SearchTrace {
    pub fn num_steps(&self) -> usize {
        self.steps.len()
    }

    /// `x⁰, x¹, …, x^T`.
    pub fn assignments(&self) -> Vec<Assignment> {
        let mut x = self.start.clone();
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        out.push(x.clone());
        for s in &self.steps {
            x.flip_all(&s.flipped);
            out.push(x.clone());
        }
        out
    }

    pub fn final_assignment(&self) -> Assignment {
        let mut x = self.start.clone();
        for s in &self.steps {
            x.flip_all(&s.flipped);
        }
        x
    }

    pub fn final_fitness(&self) -> &FitnessValue {
        self.steps
            .last()
            .map_or(&self.start_fitness, |s| &s.fitness)
    }

    /// Every recorded fitness is strictly above the previous one.
    pub fn is_strict_ascent(&self) -> bool {
        let mut prev = &self.start_fitness;
        for s in &self.steps {
            if s.fitness <= *prev {
                return false;
            }
            prev = &s.fitness;
        }
        true
    }

    /// Re-applies the recorded flips on `f`, checking every fitness value and the
    /// termination reason. Returns the final assignment.
    pub fn replay<L: Landscape + ?Sized>(&self, f: &L) -> Result<Assignment, SearchError> {
        self.start.check_len(f.dim())?;
        let mismatch = |step, reason: String| SearchError::ReplayMismatch { step, reason };
        if f.fitness(&self.start) != self.start_fitness {
            return Err(mismatch(0, "start fitness differs".into()));
        }
        let mut x = self.start.clone();
        for (k, s) in self.steps.iter().enumerate() {
            if let Some(&i) = s.flipped.iter().find(|&&i| i >= f.dim()) {
                return Err(mismatch(k + 1, format!("index {i} out of range")));
            }
            x.flip_all(&s.flipped);
            let v = f.fitness(&x);
            if v != s.fitness {
                return Err(mismatch(
                    k + 1,
                    format!("fitness {v} recorded as {}", s.fitness),
                ));
            }
        }
        if self.terminated == Termination::Peak && !is_local_peak(f, &x) {
            return Err(mismatch(
                self.steps.len(),
                "marked as a peak but an improving flip remains".into(),
            ));
        }
        Ok(x)
    }

    /// A header line, then one line per step.
    pub fn to_json_lines(&self) -> String {
        let header = TraceHeader {
            rule: self.rule.clone(),
            rng: self.rng.clone(),
            seed: self.seed,
            start: self.start.clone(),
            start_fitness: self.start_fitness.clone(),
            terminated: self.terminated,
            num_steps: self.steps.len(),
        };
        let mut out = serde_json::to_string(&header).expect("header serializes");
        out.push('\n');
        for (k, s) in self.steps.iter().enumerate() {
            let line = TraceLine {
                step: k + 1,
                flipped: s.flipped.clone(),
                fitness: s.fitness.clone(),
            };
            out.push_str(&serde_json::to_string(&line).expect("step serializes"));
            out.push('\n');
        }
        out
    }

    pub fn from_json_lines(text: &str) -> Result<Self, SearchError> {
        let bad =
            |e: serde_json::Error| SearchError::InvalidParameter(format!("malformed trace: {e}"));
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header: TraceHeader = serde_json::from_str(
            lines
                .next()
                .ok_or_else(|| SearchError::InvalidParameter("empty trace".into()))?,
        )
        .map_err(bad)?;
        let mut steps = Vec::with_capacity(header.num_steps);
        for (k, l) in lines.enumerate() {
            let line: TraceLine = serde_json::from_str(l).map_err(bad)?;
            if line.step != k + 1 {
                return Err(SearchError::InvalidParameter(format!(
                    "step {} out of order",
                    line.step
                )));
            }
            steps.push(TraceStep {
                flipped: line.flipped,
                fitness: line.fitness,
            });
        }
        if steps.len() != header.num_steps {
            return Err(SearchError::InvalidParameter(format!(
                "header announces {} steps, found {}",
                header.num_steps,
                steps.len()
            )));
        }
        Ok(SearchTrace {
            rule: header.rule,
            rng: header.rng,
            seed: header.seed,
            start: header.start,
            start_fitness: header.start_fitness,
            steps,
            terminated: header.terminated,
        })
    }
}

/// A RandomAscent step with probability `epsilon`, otherwise a step of `inner`.
pub fn shaken_step<L: Landscape + ?Sized>(
    inner: &StepRule,
    epsilon: f64,
    f: &L,
    x: &Assignment,
    rng: &mut Rng,
    hist: Option<&mut HistoryState>,
) -> Result<Assignment, SearchError> {
    let shake = rng.gen_bool(epsilon);
    let y = match (shake, inner) {
        (true, _) | (false, StepRule::RandomAscent) => random_ascent_step(f, x, rng)?,
        (false, StepRule::SteepestAscent) => steepest_step(f, x)?,
        (false, StepRule::History { .. }) => {
            let h = hist.ok_or_else(|| {
                SearchError::InvalidParameter("history rule needs a history state".into())
            })?;
            return history_step(f, x, h);
        }
        (false, other) => {
            return Err(SearchError::InvalidParameter(format!(
                "{} cannot be shaken",
                other.name()
            )));
        }
    };
    // flips taken by the shake still count in the inner rule's history
    if let Some(h) = hist {
        let i = x.differing(&y)[0];
        h.record(i, &y);
    }
    Ok(y)
}

struct Stepper {
    rng: Rng,
    hist: Option<HistoryState>,
    t: u64,
}

impl Stepper {
    fn new(rule: &StepRule, x0: &Assignment, seed: u64) -> Self {
        let kind = match rule {
            StepRule::History { kind } => Some(*kind),
            StepRule::Shaken { inner, .. } => match **inner {
                StepRule::History { kind } => Some(kind),
                _ => None,
            },
            _ => None,
        };
        Stepper {
            rng: rng_from_seed(seed),
            hist: kind.map(|k| HistoryState::new(k, x0)),
            t: 0,
        }
    }

    fn step<L: Landscape + ?Sized>(
        &mut self,
        rule: &StepRule,
        f: &L,
        x: &Assignment,
    ) -> Result<Assignment, SearchError> {
        let y = match rule {
            StepRule::SteepestAscent => steepest_step(f, x),
            StepRule::RandomAscent => random_ascent_step(f, x, &mut self.rng),
            StepRule::Shaken { inner, epsilon } => {
                shaken_step(inner, *epsilon, f, x, &mut self.rng, self.hist.as_mut())
            }
            StepRule::SimulatedAnnealing { schedule } => {
                simulated_annealing_step(f, x, self.t, schedule, &mut self.rng)
            }
            StepRule::History { .. } => {
                history_step(f, x, self.hist.as_mut().expect("history rule has state"))
            }
            StepRule::AntipodalJump => antipodal_step(f, x),
            StepRule::JumpToBest { cap } => jump_to_best_step(f, x, *cap),
            StepRule::RandomJump => random_jump_step(f, x, &mut self.rng),
            StepRule::KernighanLin => kernighan_lin_step(f, x),
            StepRule::RandomFacet => unreachable!("RandomFacet is not a stepwise rule"),
        }?;
        self.t += 1;
        Ok(y)
    }
}

/// Runs `rule` from `x0` until no flip improves or `cap` steps were taken.
pub fn run<L: Landscape + ?Sized>(
    rule: &StepRule,
    f: &L,
    x0: &Assignment,
    seed: u64,
    cap: usize,
) -> Result<SearchTrace, SearchError> {
    x0.check_len(f.dim())?;
    rule.validate()?;
    if cap == 0 {
        return Err(SearchError::InvalidParameter(
            "step cap must be positive".into(),
        ));
    }
    if *rule == StepRule::RandomFacet {
        return random_facet_run(f, x0, seed, cap);
    }
    let mut stepper = Stepper::new(rule, x0, seed);
    let mut x = x0.clone();
    let mut steps = Vec::new();
    let terminated = loop {
        if is_local_peak(f, &x) {
            break Termination::Peak;
        }
        if steps.len() >= cap {
            break Termination::Cap;
        }
        let y = stepper.step(rule, f, &x)?;
        steps.push(TraceStep {
            flipped: x.differing(&y),
            fitness: f.fitness(&y),
        });
        x = y;
    };
    Ok(SearchTrace {
        rule: rule.name(),
        rng: RNG_NAME.into(),
        seed,
        start: x0.clone(),
        start_fitness: f.fitness(x0),
        steps,
        terminated,
    })
}

/// Greedy ascent along a smoothness certificate: each step flips the lowest
/// index at the border `φ⊕(x)`.
pub fn certificate_ascent<L: Landscape + ?Sized>(
    f: &L,
    cert: &SmoothCert,
    x0: &Assignment,
    cap: usize,
) -> Result<SearchTrace, SearchError> {
    x0.check_len(f.dim())?;
    let mut x = x0.clone();
    let mut steps = Vec::new();
    let terminated = loop {
        if is_local_peak(f, &x) {
            break Termination::Peak;
        }
        if steps.len() >= cap {
            break Termination::Cap;
        }
        let border = correct_border(f, cert, &x).border;
        let &i = border.first().ok_or_else(|| {
            SearchError::InvalidParameter(format!("certificate leaves no border at non-peak {x}"))
        })?;
        x.flip(i);
        steps.push(TraceStep {
            flipped: vec![i],
            fitness: f.fitness(&x),
        });
    };
    Ok(SearchTrace {
        rule: "certificate-ascent".into(),
        rng: RNG_NAME.into(),
        seed: 0,
        start: x0.clone(),
        start_fitness: f.fitness(x0),
        steps,
        terminated,
    })
}
