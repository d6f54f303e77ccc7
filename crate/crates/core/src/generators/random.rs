//! Seeded random VCSP instances, optionally rejection-sampled into a structural class.

use rand::seq::SliceRandom;
use rand::Rng as _;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{classify, conditionally_smooth, is_smooth, ClassLabel};
use crate::error::GeneratorError;
use crate::instance::VcspInstance;
use crate::rng::{rng_from_seed, trial_seed, Rng};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Filter {
    Any,
    /// No single flip anywhere leaves fitness unchanged.
    TieFree,
    Directed,
    Oriented,
    Smooth,
    ConditionallySmooth,
    /// Constraint graph is a random spanning tree.
    Tree,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RandomSpec {
    pub n: usize,
    /// Probability that each pair carries a binary constraint.
    pub edge_density: f64,
    /// Weights are uniform over `[−bound, bound] ∖ {0}`.
    pub weight_bound: u64,
    #[serde(default)]
    pub max_degree: Option<usize>,
    pub filter: Filter,
    /// Additionally require tie-freeness, whatever the filter.
    #[serde(default)]
    pub tie_free: bool,
    /// Draw a random spanning tree instead of independent edges, whatever the filter.
    #[serde(default)]
    pub tree: bool,
}

impl RandomSpec {
    pub fn new(n: usize, edge_density: f64, weight_bound: u64, filter: Filter) -> Self {
        RandomSpec {
            n,
            edge_density,
            weight_bound,
            max_degree: None,
            filter,
            tie_free: false,
            tree: false,
        }
    }

    pub fn with_max_degree(mut self, d: usize) -> Self {
        self.max_degree = Some(d);
        self
    }

    pub fn with_tie_free(mut self) -> Self {
        self.tie_free = true;
        self
    }

    pub fn with_tree(mut self) -> Self {
        self.tree = true;
        self
    }
}

fn weight(rng: &mut Rng, bound: i64) -> i64 {
    let v = rng.gen_range(-bound..bound);
    if v >= 0 {
        v + 1
    } else {
        v
    }
}

/// One unfiltered draw from `seed`.
pub fn sample_instance(spec: &RandomSpec, seed: u64) -> VcspInstance {
    let mut rng = rng_from_seed(seed);
    let n = spec.n;
    let bound = spec.weight_bound as i64;
    let mut c = VcspInstance::new(n);
    for i in 0..n {
        c.add_unary(i, weight(&mut rng, bound))
            .expect("fresh unary");
    }
    let cap = spec.max_degree.unwrap_or(usize::MAX);
    if spec.tree || spec.filter == Filter::Tree {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        for k in 1..n {
            // attach to an earlier vertex that still has room
            let room: Vec<usize> = order[..k]
                .iter()
                .copied()
                .filter(|&p| c.degree(p) < cap)
                .collect();
            if let Some(&p) = room.get(rng.gen_range(0..room.len().max(1))) {
                c.add_binary(p, order[k], weight(&mut rng, bound))
                    .expect("fresh edge");
            }
        }
    } else {
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(spec.edge_density) && c.degree(i) < cap && c.degree(j) < cap {
                    c.add_binary(i, j, weight(&mut rng, bound))
                        .expect("fresh edge");
                }
            }
        }
    }
    c
}

/// True when the instance passes the spec's filter.
pub fn accepts(spec: &RandomSpec, c: &VcspInstance) -> bool {
    if spec.tie_free && !c.is_tie_free() {
        return false;
    }
    match spec.filter {
        Filter::Any => true,
        Filter::TieFree => c.is_tie_free(),
        Filter::Tree => c.is_forest(),
        Filter::Smooth => is_smooth(c),
        Filter::ConditionallySmooth => conditionally_smooth(c).is_some(),
        Filter::Directed => classify(c).is_ok_and(|cl| cl.label != ClassLabel::NotDirected),
        Filter::Oriented => classify(c).is_ok_and(|cl| cl.label == ClassLabel::Oriented),
    }
}

/// Draws candidates with seeds `trial_seed(seed, 0), trial_seed(seed, 1), …` and
/// returns the first accepted one with its candidate number. Candidates are checked
/// in parallel batches, but the result is always the lowest accepted candidate.
pub fn random_instance(
    spec: &RandomSpec,
    seed: u64,
    budget: usize,
) -> Result<(VcspInstance, usize), GeneratorError> {
    if !(0.0..=1.0).contains(&spec.edge_density) {
        return Err(GeneratorError::InvalidInput(format!(
            "edge density {} outside [0, 1]",
            spec.edge_density
        )));
    }
    if spec.weight_bound == 0 || spec.weight_bound > i64::MAX as u64 / 2 {
        return Err(GeneratorError::InvalidInput(
            "weight bound must be positive".into(),
        ));
    }
    const BATCH: usize = 64;
    let mut start = 0;
    while start < budget {
        let end = (start + BATCH).min(budget);
        let found = (start..end).into_par_iter().find_map_first(|t| {
            let c = sample_instance(spec, trial_seed(seed, t as u64));
            accepts(spec, &c).then_some((c, t))
        });
        if let Some(hit) = found {
            return Ok(hit);
        }
        start = end;
    }
    Err(GeneratorError::BudgetExhausted {
        budget,
        tried: budget,
        accepted: 0,
    })
}

/// `count` accepted instances, drawing candidates in seed order from a single stream.
pub fn random_instances(
    spec: &RandomSpec,
    seed: u64,
    count: usize,
    budget: usize,
) -> Result<Vec<VcspInstance>, GeneratorError> {
    let mut out = Vec::with_capacity(count);
    let mut tried = 0;
    while out.len() < count {
        if tried >= budget {
            return Err(GeneratorError::BudgetExhausted {
                budget,
                tried,
                accepted: out.len(),
            });
        }
        let end = (tried + 64).min(budget);
        let batch: Vec<Option<VcspInstance>> = (tried..end)
            .into_par_iter()
            .map(|t| {
                let c = sample_instance(spec, trial_seed(seed, t as u64));
                accepts(spec, &c).then_some(c)
            })
            .collect();
        out.extend(batch.into_iter().flatten().take(count - out.len()));
        tried = end;
    }
    Ok(out)
}

pub fn random_metadata(spec: &RandomSpec, seed: u64, candidate: usize) -> serde_json::Value {
    serde_json::json!({
        "family": "random",
        "parameters": {"spec": spec, "seed": seed, "candidate": candidate},
        "index_mapping": "identity",
    })
}
