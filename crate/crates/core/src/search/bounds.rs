//! Step-count bounds for conditionally-smooth landscapes, as functions of the
//! order's height and width.

use serde::{Deserialize, Serialize};

use crate::search::anneal::AnnealingSchedule;
use crate::search::StepRule;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    /// Every run takes at most `height_f(x⁰)` steps.
    StartHeight,
    /// Every run takes at most `2·width·height` steps.
    TwiceWidthHeight,
    /// Mean steps at most `n + w(1 + ln w)·C(h − 1, 2)`.
    RandomAscent,
    /// Mean steps at most `(1/ε)` times the RandomAscent bound.
    Shaken,
    /// Mean steps at most `(log₂ w + 2)·h`.
    RandomJump,
    /// Mean steps at most `τ^α + n²(e^α − 1)/α`.
    Annealing,
}

impl BoundKind {
    pub fn name(self) -> &'static str {
        match self {
            BoundKind::StartHeight => "start-height",
            BoundKind::TwiceWidthHeight => "twice-width-height",
            BoundKind::RandomAscent => "random-ascent",
            BoundKind::Shaken => "shaken",
            BoundKind::RandomJump => "random-jump",
            BoundKind::Annealing => "annealing",
        }
    }

    /// Expectation bounds are checked on the sample mean, the others on every run.
    pub fn is_expectation(self) -> bool {
        !matches!(self, BoundKind::StartHeight | BoundKind::TwiceWidthHeight)
    }

    /// The bound proved for `rule`, if any. `StartHeight` for KernighanLin also
    /// needs semismoothness, which the caller must establish.
    pub fn for_rule(rule: &StepRule) -> Option<BoundKind> {
        match rule {
            StepRule::AntipodalJump | StepRule::JumpToBest { .. } | StepRule::KernighanLin => {
                Some(BoundKind::StartHeight)
            }
            StepRule::History {
                kind: crate::search::HistoryKind::Zadeh,
            } => Some(BoundKind::TwiceWidthHeight),
            StepRule::RandomAscent => Some(BoundKind::RandomAscent),
            StepRule::Shaken { .. } => Some(BoundKind::Shaken),
            StepRule::RandomJump => Some(BoundKind::RandomJump),
            StepRule::SimulatedAnnealing { .. } => Some(BoundKind::Annealing),
            _ => None,
        }
    }
}

/// Structural quantities a bound is evaluated at.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundInputs {
    pub n: usize,
    pub width: usize,
    pub height: usize,
    /// `height_f(x⁰)` for per-start bounds.
    pub start_height: usize,
}

/// `C(k, 2)` for a possibly negative `k`, which is 0 below 2.
pub fn choose2(k: i64) -> f64 {
    if k < 2 {
        0.0
    } else {
        (k * (k - 1) / 2) as f64
    }
}

pub fn random_ascent_bound(n: usize, width: usize, height: usize) -> f64 {
    let w = width as f64;
    let spread = if width == 0 { 0.0 } else { w * (1.0 + w.ln()) };
    n as f64 + spread * choose2(height as i64 - 1)
}

pub fn random_jump_bound(width: usize, height: usize) -> f64 {
    if width == 0 {
        return 0.0;
    }
    ((width as f64).log2() + 2.0) * height as f64
}

pub fn twice_width_height(width: usize, height: usize) -> f64 {
    (2 * width * height) as f64
}

pub fn evaluate(kind: BoundKind, rule: &StepRule, at: &BoundInputs) -> f64 {
    match kind {
        BoundKind::StartHeight => at.start_height as f64,
        BoundKind::TwiceWidthHeight => twice_width_height(at.width, at.height),
        BoundKind::RandomAscent => random_ascent_bound(at.n, at.width, at.height),
        BoundKind::Shaken => {
            let eps = match rule {
                StepRule::Shaken { epsilon, .. } => *epsilon,
                _ => 1.0,
            };
            random_ascent_bound(at.n, at.width, at.height) / eps
        }
        BoundKind::RandomJump => random_jump_bound(at.width, at.height),
        BoundKind::Annealing => {
            let schedule = match rule {
                StepRule::SimulatedAnnealing { schedule } => *schedule,
                _ => AnnealingSchedule::default(),
            };
            schedule.step_bound(at.n)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formulas() {
        assert_eq!(choose2(3), 3.0);
        assert_eq!(choose2(1), 0.0);
        assert_eq!(choose2(-1), 0.0);
        // w = 1: the log term vanishes
        assert_eq!(random_ascent_bound(5, 1, 4), 5.0 + 3.0);
        let b = random_ascent_bound(10, 3, 5);
        assert!((b - (10.0 + 3.0 * (1.0 + 3f64.ln()) * 6.0)).abs() < 1e-12);
        assert_eq!(random_jump_bound(4, 3), 12.0);
        assert_eq!(random_jump_bound(0, 0), 0.0);
        assert_eq!(twice_width_height(3, 4), 24.0);
    }

    #[test]
    fn rule_assignment() {
        assert_eq!(
            BoundKind::for_rule(&StepRule::JumpToBest { cap: 25 }),
            Some(BoundKind::StartHeight)
        );
        assert_eq!(BoundKind::for_rule(&StepRule::SteepestAscent), None);
        assert!(BoundKind::RandomAscent.is_expectation());
        assert!(!BoundKind::TwiceWidthHeight.is_expectation());
    }
}
