//! Annealing schedules.

use serde::{Deserialize, Serialize};

use crate::error::SearchError;

/// `r_t(Δf) = exp(−Δf / K(t))` with `K(t) = K₀·γ^t`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnnealingSchedule {
    /// Initial temperature. `None` means `n`, the landscape dimension.
    #[serde(default)]
    pub k0: Option<f64>,
    pub gamma: f64,
    pub alpha: f64,
}

impl Default for AnnealingSchedule {
    fn default() -> Self {
        AnnealingSchedule {
            k0: None,
            gamma: 0.99,
            alpha: 1.0,
        }
    }
}

impl AnnealingSchedule {
    pub fn validate(&self) -> Result<(), SearchError> {
        if let Some(k0) = self.k0 {
            if !(k0 > 0.0 && k0.is_finite()) {
                return Err(SearchError::InvalidParameter(format!(
                    "initial temperature {k0} must be positive"
                )));
            }
        }
        if !(self.gamma > 0.0 && self.gamma < 1.0) {
            return Err(SearchError::InvalidParameter(format!(
                "decay {} outside (0, 1)",
                self.gamma
            )));
        }
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return Err(SearchError::InvalidParameter(format!(
                "alpha {} must be positive",
                self.alpha
            )));
        }
        Ok(())
    }

    fn k0_for(&self, n: usize) -> f64 {
        self.k0.unwrap_or(n.max(1) as f64)
    }

    pub fn temperature(&self, n: usize, t: u64) -> f64 {
        self.k0_for(n) * self.gamma.powf(t as f64)
    }

    /// Probability of accepting a downstep of size `delta > 0` at step `t`.
    pub fn downstep_probability(&self, n: usize, t: u64, delta: f64) -> f64 {
        let k = self.temperature(n, t);
        if k <= 0.0 {
            0.0
        } else {
            (-delta / k).exp()
        }
    }

    /// Burn-in `τ^α = inf{t : r_t(1) ≤ α/n}`.
    ///
    /// The closed form `t ≥ ln(K₀·ln(n/α)) / ln(1/γ)` is rounded and then
    /// corrected against the schedule itself, so floating-point rounding never
    /// moves the answer.
    pub fn burn_in(&self, n: usize) -> u64 {
        let target = self.alpha / n.max(1) as f64;
        if target >= 1.0 {
            return 0;
        }
        let ln_ratio = (1.0 / target).ln();
        let closed = (self.k0_for(n) * ln_ratio).ln() / (1.0 / self.gamma).ln();
        let mut t = if closed.is_finite() && closed > 0.0 {
            closed.ceil() as u64
        } else {
            0
        };
        while t > 0 && self.downstep_probability(n, t - 1, 1.0) <= target {
            t -= 1;
        }
        while self.downstep_probability(n, t, 1.0) > target {
            t += 1;
        }
        t
    }

    /// `τ^α + n²(e^α − 1)/α`.
    pub fn step_bound(&self, n: usize) -> f64 {
        let nf = n as f64;
        self.burn_in(n) as f64 + nf * nf * (self.alpha.exp() - 1.0) / self.alpha
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn burn_in_is_the_first_cold_enough_step() {
        let s = AnnealingSchedule::default();
        for n in [2, 5, 14, 30] {
            let tau = s.burn_in(n);
            assert!(s.downstep_probability(n, tau, 1.0) <= 1.0 / n as f64);
            if tau > 0 {
                assert!(s.downstep_probability(n, tau - 1, 1.0) > 1.0 / n as f64);
            }
        }
        assert_eq!(s.burn_in(1), 0);
    }

    #[test]
    fn probabilities_are_monotone() {
        let s = AnnealingSchedule {
            k0: Some(4.0),
            gamma: 0.9,
            alpha: 1.0,
        };
        assert!(s.downstep_probability(8, 3, 1.0) > s.downstep_probability(8, 4, 1.0));
        assert!(s.downstep_probability(8, 3, 1.0) > s.downstep_probability(8, 3, 2.0));
        assert!(s.downstep_probability(8, 100_000, 1.0) < 1e-12);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(AnnealingSchedule {
            k0: None,
            gamma: 1.0,
            alpha: 1.0
        }
        .validate()
        .is_err());
        assert!(AnnealingSchedule {
            k0: Some(-1.0),
            gamma: 0.5,
            alpha: 1.0
        }
        .validate()
        .is_err());
        assert!(AnnealingSchedule::default().validate().is_ok());
    }
}
