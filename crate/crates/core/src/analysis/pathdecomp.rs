//! Verification of a claimed path decomposition of the constraint graph.

use serde::{Deserialize, Serialize};

use crate::instance::VcspInstance;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathDecompositionCheck {
    pub valid: bool,
    /// Largest bag size minus one.
    pub width: usize,
    /// First axiom violation found, if any.
    pub problem: Option<String>,
}

/// Checks that every variable lies in a bag, every edge lies inside a bag, and
/// the bags containing any one variable are consecutive.
pub fn verify_path_decomposition(c: &VcspInstance, bags: &[Vec<usize>]) -> PathDecompositionCheck {
    let n = c.n();
    let width = bags
        .iter()
        .map(Vec::len)
        .max()
        .unwrap_or(0)
        .saturating_sub(1);
    let fail = |msg: String| PathDecompositionCheck {
        valid: false,
        width,
        problem: Some(msg),
    };
    let mut first = vec![None::<usize>; n];
    let mut last = vec![0usize; n];
    let mut count = vec![0usize; n];
    for (b, bag) in bags.iter().enumerate() {
        let mut sorted = bag.clone();
        sorted.sort_unstable();
        sorted.dedup();
        for &v in &sorted {
            if v >= n {
                return fail(format!("bag {b} contains {v}, outside [0, {n})"));
            }
            first[v].get_or_insert(b);
            last[v] = b;
            count[v] += 1;
        }
    }
    if let Some(v) = (0..n).find(|&v| first[v].is_none()) {
        return fail(format!("variable {v} is in no bag"));
    }
    if let Some(v) = (0..n).find(|&v| last[v] + 1 - first[v].unwrap() != count[v]) {
        return fail(format!("bags containing {v} are not consecutive"));
    }
    for (i, j) in c.edges() {
        if !bags.iter().any(|bag| bag.contains(&i) && bag.contains(&j)) {
            return fail(format!("edge {{{i}, {j}}} is in no bag"));
        }
    }
    PathDecompositionCheck {
        valid: true,
        width,
        problem: None,
    }
}
