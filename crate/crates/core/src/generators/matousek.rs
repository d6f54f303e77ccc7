//! Matoušek parity landscapes: `f(x) = −Σ_i 2^{n−1−i} · parity(x[R_i])` with
//! `i ∈ R_i ⊆ [0, i]`.

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::analysis::{Poset, SmoothCert};
use crate::assignment::Assignment;
use crate::error::GeneratorError;
use crate::fitness::FitnessValue;
use crate::instance::Landscape;
use crate::rng::rng_from_seed;

/// How the scopes `R_i` are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "policy", rename_all = "snake_case")]
pub enum ScopePolicy {
    /// `R_i = {i}`.
    Singleton,
    /// `R_i = [0, i]`.
    FullPrefix,
    /// Each `j < i` joins `R_i` independently with probability `density`.
    Random { seed: u64, density: f64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatousekSpec {
    pub n: usize,
    /// `scopes[i]` is `R_i`, ascending.
    pub scopes: Vec<Vec<usize>>,
}

impl MatousekSpec {
    pub fn from_policy(n: usize, policy: ScopePolicy) -> Result<Self, GeneratorError> {
        let scopes = match policy {
            ScopePolicy::Singleton => (0..n).map(|i| vec![i]).collect(),
            ScopePolicy::FullPrefix => (0..n).map(|i| (0..=i).collect()).collect(),
            ScopePolicy::Random { seed, density } => {
                if !(0.0..=1.0).contains(&density) {
                    return Err(GeneratorError::InvalidInput(format!(
                        "density {density} outside [0, 1]"
                    )));
                }
                let mut rng = rng_from_seed(seed);
                (0..n)
                    .map(|i| {
                        let mut r: Vec<usize> = (0..i).filter(|_| rng.gen_bool(density)).collect();
                        r.push(i);
                        r
                    })
                    .collect()
            }
        };
        Ok(MatousekSpec { n, scopes })
    }

    pub fn validate(&self) -> Result<(), GeneratorError> {
        if self.scopes.len() != self.n {
            return Err(GeneratorError::InvalidInput(format!(
                "{} scopes for {} variables",
                self.scopes.len(),
                self.n
            )));
        }
        for (i, r) in self.scopes.iter().enumerate() {
            if !r.contains(&i) {
                return Err(GeneratorError::InvalidInput(format!(
                    "scope {i} does not contain {i}"
                )));
            }
            if let Some(j) = r.iter().find(|&&j| j > i) {
                return Err(GeneratorError::InvalidInput(format!(
                    "scope {i} contains later index {j}"
                )));
            }
            let mut sorted = r.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != r.len() {
                return Err(GeneratorError::InvalidInput(format!(
                    "scope {i} repeats an index"
                )));
            }
        }
        Ok(())
    }
}

/// A Matoušek landscape ready for evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matousek {
    spec: MatousekSpec,
}

impl Matousek {
    pub fn new(spec: MatousekSpec) -> Result<Self, GeneratorError> {
        spec.validate()?;
        Ok(Matousek { spec })
    }

    pub fn spec(&self) -> &MatousekSpec {
        &self.spec
    }

    /// Certificate built from the scopes: `j ≺ i` for `j ∈ R_i ∖ {i}`, peak `0`.
    /// The flip of `i` is decided by the parity of `R_i`, whose weight exceeds the
    /// weights of all later parities together.
    pub fn certificate(&self) -> SmoothCert {
        let n = self.spec.n;
        let pairs = self
            .spec
            .scopes
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().filter(move |&&j| j != i).map(move |&j| (j, i)));
        let order = Poset::from_relations(n, pairs).expect("scopes only reach back");
        let mut depth = vec![0usize; n];
        for i in 0..n {
            depth[i] = self.spec.scopes[i]
                .iter()
                .filter(|&&j| j != i)
                .map(|&j| depth[j] + 1)
                .max()
                .unwrap_or(0);
        }
        let mut rounds = vec![Vec::new(); depth.iter().max().map_or(0, |d| d + 1)];
        for (i, &d) in depth.iter().enumerate() {
            rounds[d].push(i);
        }
        SmoothCert {
            order,
            peak: Assignment::zeros(n),
            rounds,
        }
    }

    fn parity(&self, x: &Assignment, i: usize) -> bool {
        self.spec.scopes[i].iter().fold(false, |p, &j| p ^ x.get(j))
    }
}

pub fn matousek(spec: MatousekSpec) -> Result<Matousek, GeneratorError> {
    Matousek::new(spec)
}

impl Landscape for Matousek {
    fn dim(&self) -> usize {
        self.spec.n
    }

    fn fitness(&self, x: &Assignment) -> FitnessValue {
        let n = self.spec.n;
        assert_eq!(x.len(), n, "assignment length does not match landscape");
        if n < 63 {
            let v: i64 = (0..n)
                .filter(|&i| self.parity(x, i))
                .map(|i| 1i64 << (n - 1 - i))
                .sum();
            FitnessValue::from(-v)
        } else {
            let v: FitnessValue = (0..n)
                .filter(|&i| self.parity(x, i))
                .map(|i| FitnessValue::pow(2, (n - 1 - i) as u32))
                .sum();
            -v
        }
    }
}

pub fn matousek_metadata(spec: &MatousekSpec, policy: Option<ScopePolicy>) -> serde_json::Value {
    serde_json::json!({
        "family": "matousek",
        "parameters": {"n": spec.n, "policy": policy},
        "index_mapping": "variable i is bit i; scopes are 0-based",
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::FitnessTable;

    #[test]
    fn two_variable_values() {
        let m = Matousek::new(MatousekSpec {
            n: 2,
            scopes: vec![vec![0], vec![0, 1]],
        })
        .unwrap();
        let f = |s: &str| m.fitness(&s.parse().unwrap());
        assert_eq!(f("00"), 0);
        assert_eq!(f("10"), -3);
        assert_eq!(f("01"), -1);
        assert_eq!(f("11"), -2);
        let t = FitnessTable::build(&m, 16).unwrap();
        assert_eq!(t.local_peaks(), vec![Assignment::zeros(2)]);
    }

    #[test]
    fn singleton_is_smooth() {
        let m =
            Matousek::new(MatousekSpec::from_policy(6, ScopePolicy::Singleton).unwrap()).unwrap();
        let t = FitnessTable::build(&m, 16).unwrap();
        let cert = t.conditionally_smooth().unwrap();
        assert_eq!(cert.rounds.len(), 1);
        assert_eq!(cert.peak, Assignment::zeros(6));
    }

    #[test]
    fn scope_certificate_verifies() {
        for policy in [
            ScopePolicy::Singleton,
            ScopePolicy::FullPrefix,
            ScopePolicy::Random {
                seed: 9,
                density: 0.3,
            },
        ] {
            let m = Matousek::new(MatousekSpec::from_policy(8, policy).unwrap()).unwrap();
            let cert = m.certificate();
            assert_eq!(
                FitnessTable::build(&m, 16)
                    .unwrap()
                    .verify_smooth_cert(&cert),
                None
            );
            assert!(cert.order.refines_index_order());
        }
        let full =
            Matousek::new(MatousekSpec::from_policy(5, ScopePolicy::FullPrefix).unwrap()).unwrap();
        assert_eq!(full.certificate().order.height(), 5);
    }

    #[test]
    fn random_scopes_are_valid_and_seeded() {
        let a = MatousekSpec::from_policy(
            12,
            ScopePolicy::Random {
                seed: 5,
                density: 0.5,
            },
        )
        .unwrap();
        let b = MatousekSpec::from_policy(
            12,
            ScopePolicy::Random {
                seed: 5,
                density: 0.5,
            },
        )
        .unwrap();
        assert_eq!(a, b);
        a.validate().unwrap();
        let full = MatousekSpec::from_policy(4, ScopePolicy::FullPrefix).unwrap();
        assert_eq!(full.scopes[3], vec![0, 1, 2, 3]);
        assert!(MatousekSpec::from_policy(
            3,
            ScopePolicy::Random {
                seed: 0,
                density: 2.0
            }
        )
        .is_err());
    }

    #[test]
    fn rejects_bad_scopes() {
        assert!(Matousek::new(MatousekSpec {
            n: 2,
            scopes: vec![vec![0], vec![0]]
        })
        .is_err());
        assert!(Matousek::new(MatousekSpec {
            n: 2,
            scopes: vec![vec![0, 1], vec![1]]
        })
        .is_err());
        assert!(Matousek::new(MatousekSpec {
            n: 2,
            scopes: vec![vec![0]]
        })
        .is_err());
    }

    #[test]
    fn wide_landscapes_use_exact_arithmetic() {
        let m =
            Matousek::new(MatousekSpec::from_policy(70, ScopePolicy::Singleton).unwrap()).unwrap();
        let mut x = Assignment::zeros(70);
        x.set(0, true);
        assert_eq!(m.fitness(&x), -FitnessValue::pow(2, 69));
        assert_eq!(
            m.fitness(&Assignment::ones(70)),
            -(FitnessValue::pow(2, 70) - 1)
        );
    }
}
