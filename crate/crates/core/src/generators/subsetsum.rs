//! VCSP gadgets encoding positive SubsetSum instances on the edge `{c, l}`.
//!
//! Index layout: `c = 0`, `l = 1`, leaf `0` at index 2, leaf `i ∈ 1..=n` at index `2 + i`.

use serde_json::json;

use crate::error::GeneratorError;
use crate::fitness::FitnessValue;
use crate::instance::VcspInstance;

pub const CENTER: usize = 0;
pub const LINK: usize = 1;

/// Index of leaf `i` (`0 ≤ i ≤ n`).
pub fn leaf(i: usize) -> usize {
    2 + i
}

fn check(a: &[u64], target: u64) -> Result<(), GeneratorError> {
    if target == 0 || a.contains(&0) {
        return Err(GeneratorError::InvalidInput(
            "SubsetSum weights and target must be positive".into(),
        ));
    }
    Ok(())
}

/// Star centred at `c`: `{c, l}` is bidirected exactly when some subset of `a` sums to `target`.
pub fn subsetsum_star(a: &[u64], target: u64) -> Result<VcspInstance, GeneratorError> {
    check(a, target)?;
    let t = FitnessValue::from(target);
    let mut c = VcspInstance::new(a.len() + 3);
    c.add_unary(CENTER, 3)?;
    c.add_unary(LINK, 1)?;
    c.add_unary(leaf(0), -1)?;
    c.add_binary(CENTER, LINK, -2)?;
    c.add_binary(CENTER, leaf(0), -(&t * 4 + 2))?;
    for (k, &ak) in a.iter().enumerate() {
        c.add_unary(leaf(k + 1), 1)?;
        c.add_binary(CENTER, leaf(k + 1), FitnessValue::from(ak) * 4)?;
    }
    Ok(c)
}

/// Complete split graph on the clique `{c, l}` and the leaves: `{c, l}` carries both
/// one-way arcs exactly when some subset of `a` sums to `target`, and is never bidirected.
///
/// Leaf unaries are `M + 1` with `M = T + Σa`. That is smaller than `4T + 2` whenever
/// `Σa < 3T + 1`, and then the leaves are not sign-independent, so the instance as a
/// whole need not be directed. Only the edge `{c, l}` is guaranteed.
pub fn subsetsum_split(a: &[u64], target: u64) -> Result<VcspInstance, GeneratorError> {
    check(a, target)?;
    let t = FitnessValue::from(target);
    let m: FitnessValue = a
        .iter()
        .map(|&x| FitnessValue::from(x))
        .sum::<FitnessValue>()
        + &t;
    let mut c = VcspInstance::new(a.len() + 3);
    c.add_unary(CENTER, 3)?;
    c.add_unary(LINK, 1)?;
    c.add_binary(CENTER, LINK, -2)?;
    let w0 = &t * 4 + 2;
    c.add_unary(leaf(0), &m + 1)?;
    c.add_binary(CENTER, leaf(0), -w0.clone())?;
    c.add_binary(LINK, leaf(0), w0)?;
    for (k, &ak) in a.iter().enumerate() {
        let w = FitnessValue::from(ak) * 4;
        c.add_unary(leaf(k + 1), &m + 1)?;
        c.add_binary(CENTER, leaf(k + 1), w.clone())?;
        c.add_binary(LINK, leaf(k + 1), -w)?;
    }
    Ok(c)
}

/// Brute-force SubsetSum decision (non-empty subsets; the target is positive anyway).
pub fn subset_sum_exists(a: &[u64], target: u64) -> bool {
    let mut reachable = std::collections::BTreeSet::from([0u64]);
    for &x in a {
        let next: Vec<u64> = reachable
            .iter()
            .map(|&s| s + x)
            .filter(|&s| s <= target)
            .collect();
        reachable.extend(next);
    }
    reachable.contains(&target)
}

pub fn subsetsum_metadata(kind: &str, a: &[u64], target: u64) -> serde_json::Value {
    let mut mapping = vec!["c".to_string(), "l".to_string()];
    mapping.extend((0..=a.len()).map(|i| i.to_string()));
    json!({
        "family": format!("subsetsum_{kind}"),
        "parameters": {"a": a, "target": target},
        "index_mapping": mapping,
    })
}
