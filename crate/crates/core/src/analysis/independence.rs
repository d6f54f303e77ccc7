//! Conditional sign independence and recognition of conditionally-smooth VCSPs.

use serde::{Deserialize, Serialize};

use crate::analysis::poset::Poset;
use crate::assignment::Assignment;
use crate::error::{AnalysisError, CoreError};
use crate::fitness::FitnessValue;
use crate::instance::VcspInstance;

/// A strict order `≺` together with the peak `x*` of a `≺`-smooth landscape.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmoothCert {
    pub order: Poset,
    pub peak: Assignment,
    /// Indices fixed in each round of the recognition, in round order.
    #[serde(default)]
    pub rounds: Vec<Vec<usize>>,
}

fn membership(n: usize, s: &[usize]) -> Result<Vec<bool>, CoreError> {
    let mut m = vec![false; n];
    for &j in s {
        if j >= n {
            return Err(CoreError::IndexOutOfRange { index: j, n });
        }
        m[j] = true;
    }
    Ok(m)
}

/// `c_i + Σ_{j∈N(i)∩S} y_j c_{ij}`: the effective unary with coordinates outside `S` read as 0.
fn conditioned_unary(c: &VcspInstance, i: usize, in_s: &[bool], y: &Assignment) -> FitnessValue {
    let mut acc = c.unary(i).clone();
    for (j, w) in c.neighbors(i) {
        if in_s[*j] && y.get(*j) {
            acc += w;
        }
    }
    acc
}

fn sign_independent_masked(c: &VcspInstance, i: usize, in_s: &[bool], y: &Assignment) -> bool {
    let hat = conditioned_unary(c, i, in_s, y);
    let sign = hat.signum();
    let mut flip = FitnessValue::ZERO;
    for (j, w) in c.neighbors(i) {
        if !in_s[*j] && w.signum() != sign {
            flip += w;
        }
    }
    hat.abs() > flip.abs()
}

/// True when `i` has the same preferred value throughout the face fixing `S` to `y[S]`.
///
/// Coordinates of `y` outside `S` are ignored. A vanishing conditioned unary is
/// never independent.
pub fn conditionally_sign_independent(
    c: &VcspInstance,
    i: usize,
    s: &[usize],
    y: &Assignment,
) -> Result<bool, AnalysisError> {
    y.check_len(c.n())?;
    if i >= c.n() {
        return Err(CoreError::IndexOutOfRange { index: i, n: c.n() }.into());
    }
    let in_s = membership(c.n(), s)?;
    if in_s[i] {
        return Err(AnalysisError::IndexInConditioningSet(i));
    }
    Ok(sign_independent_masked(c, i, &in_s, y))
}

/// True when every variable is sign-independent, i.e. the landscape is smooth.
pub fn is_smooth(c: &VcspInstance) -> bool {
    let in_s = vec![false; c.n()];
    let zero = Assignment::zeros(c.n());
    (0..c.n()).all(|i| sign_independent_masked(c, i, &in_s, &zero))
}

/// Greedy layered recognition. Each round fixes every free index that is
/// sign-independent given the indices fixed so far, at its preferred value,
/// and places it above all previously fixed indices. Returns `None` when a round
/// fixes nothing.
pub fn conditionally_smooth(c: &VcspInstance) -> Option<SmoothCert> {
    let n = c.n();
    let mut in_s = vec![false; n];
    let mut peak = Assignment::zeros(n);
    let mut rounds: Vec<Vec<usize>> = Vec::new();
    let mut fixed = 0;
    while fixed < n {
        let mut next = peak.clone();
        let mut round = Vec::new();
        for i in (0..n).filter(|&i| !in_s[i]) {
            if sign_independent_masked(c, i, &in_s, &peak) {
                if conditioned_unary(c, i, &in_s, &peak).is_positive() {
                    next.set(i, true);
                }
                round.push(i);
            }
        }
        if round.is_empty() {
            return None;
        }
        for &i in &round {
            in_s[i] = true;
        }
        fixed += round.len();
        peak = next;
        rounds.push(round);
    }
    Some(SmoothCert {
        order: Poset::from_layers(n, &rounds),
        peak,
        rounds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::test_instances::*;

    #[test]
    fn sign_independence_examples() {
        let a = no_arc();
        let zero = Assignment::zeros(2);
        assert!(conditionally_sign_independent(&a, 0, &[], &zero).unwrap());
        let b = one_way();
        assert!(!conditionally_sign_independent(&b, 1, &[], &zero).unwrap());
        assert!(conditionally_sign_independent(&b, 0, &[], &zero).unwrap());
        let mut iso = VcspInstance::new(2);
        iso.add_unary(0, -1).unwrap();
        assert!(conditionally_sign_independent(&iso, 0, &[], &zero).unwrap());
        // no unary and no neighbours: the preference is undetermined
        assert!(!conditionally_sign_independent(&iso, 1, &[], &zero).unwrap());
        assert_eq!(
            conditionally_sign_independent(&b, 0, &[0], &zero),
            Err(AnalysisError::IndexInConditioningSet(0))
        );
    }

    #[test]
    fn conditioning_ignores_free_coordinates() {
        let b = one_way();
        // y_0 = 1 outside S must be ignored
        let y: Assignment = "10".parse().unwrap();
        assert!(!conditionally_sign_independent(&b, 1, &[], &y).unwrap());
        // with i fixed to 1, j prefers 0: ĉ = 1 − 2
        assert!(conditionally_sign_independent(&b, 1, &[0], &y).unwrap());
    }

    #[test]
    fn one_way_is_conditionally_smooth() {
        let cert = conditionally_smooth(&one_way()).unwrap();
        assert_eq!(cert.peak.to_string(), "10");
        assert!(cert.order.less(0, 1));
        assert_eq!(cert.rounds, vec![vec![0], vec![1]]);
    }

    #[test]
    fn bidirected_is_not() {
        assert!(conditionally_smooth(&bidirected()).is_none());
    }

    #[test]
    fn smooth_instances_take_one_round() {
        let c = VcspInstance::from_constraints(
            3,
            [(vec![0], 5), (vec![1], -4), (vec![2], 3), (vec![0, 2], -1)],
        )
        .unwrap();
        assert!(is_smooth(&c));
        let cert = conditionally_smooth(&c).unwrap();
        assert_eq!(cert.order.height(), 1);
        assert_eq!(cert.peak.to_string(), "101");
    }
}
