//! Arc directions on constraint edges and the directed / oriented classification.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::poset::Poset;
use crate::assignment::Assignment;
use crate::error::{AnalysisError, CoreError};
use crate::fitness::FitnessValue;
use crate::instance::VcspInstance;

/// Default cap on `|N(i) ∪ N(j) ∖ {i, j}|` for background enumeration.
pub const DEFAULT_BACKGROUND_LIMIT: usize = 24;

/// Direction data for an edge `{i, j}`, read relative to the pair order `(i, j)`.
///
/// `Forward` is the arc `i → j`: some background lets `i` reverse the preferred
/// value of `j`, so `j` sign-depends on `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArcKind {
    None,
    Forward,
    Backward,
    BothOneWay,
    Bidirected,
}

impl ArcKind {
    /// The same edge seen from the pair `(j, i)`.
    pub fn reversed(self) -> Self {
        match self {
            ArcKind::Forward => ArcKind::Backward,
            ArcKind::Backward => ArcKind::Forward,
            k => k,
        }
    }
}

/// Arc data for one edge with `i < j`, including a background for each arc found.
///
/// Backgrounds are full assignments that are zero on `i`, `j` and on every
/// variable outside `N(i) ∪ N(j)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeArcs {
    pub i: usize,
    pub j: usize,
    pub kind: ArcKind,
    pub forward_witness: Option<Assignment>,
    pub backward_witness: Option<Assignment>,
    pub bidirected_witness: Option<Assignment>,
    /// Some background makes a flip of `i` or `j` leave fitness unchanged.
    pub tie_degenerate: bool,
}

fn mismatched(w: &FitnessValue, hat: &FitnessValue) -> bool {
    w.signum() != hat.signum()
}

fn beats(w: &FitnessValue, hat: &FitnessValue) -> bool {
    w.abs() > hat.abs() && mismatched(w, hat)
}

/// Arc direction of the edge `{i, j}` with the default background limit.
pub fn arc_direction(c: &VcspInstance, i: usize, j: usize) -> Result<EdgeArcs, AnalysisError> {
    arc_direction_with_limit(c, i, j, DEFAULT_BACKGROUND_LIMIT)
}

/// Enumerates every assignment of `N(i) ∪ N(j) ∖ {i, j}` in Gray-code order.
///
/// The arc `i → j` holds when some background `y` has `|c_ij| > |ĉ_j(y, {i,j})|` with
/// opposite signs, `j → i` likewise with `ĉ_i`, and the edge is bidirected when a
/// single background satisfies both. A zero effective unary counts as a sign mismatch.
/// The returned record is relative to `(i, j)` as passed.
pub fn arc_direction_with_limit(
    c: &VcspInstance,
    i: usize,
    j: usize,
    limit: usize,
) -> Result<EdgeArcs, AnalysisError> {
    let n = c.n();
    for k in [i, j] {
        if k >= n {
            return Err(CoreError::IndexOutOfRange { index: k, n }.into());
        }
    }
    if !c.has_edge(i, j) {
        return Err(AnalysisError::NotAnEdge(i, j));
    }
    let w = c.binary(i, j);
    let mut background: Vec<usize> = c
        .neighbor_indices(i)
        .chain(c.neighbor_indices(j))
        .filter(|&k| k != i && k != j)
        .collect();
    background.sort_unstable();
    background.dedup();
    if background.len() > limit {
        return Err(AnalysisError::DegreeLimit {
            i,
            j,
            background: background.len(),
            limit,
        });
    }
    let wi: Vec<FitnessValue> = background.iter().map(|&k| c.binary(i, k)).collect();
    let wj: Vec<FitnessValue> = background.iter().map(|&k| c.binary(j, k)).collect();

    let mut x = Assignment::zeros(n);
    let mut hat_i = c.unary(i).clone();
    let mut hat_j = c.unary(j).clone();
    let mut out = EdgeArcs {
        i,
        j,
        kind: ArcKind::None,
        forward_witness: None,
        backward_witness: None,
        bidirected_witness: None,
        tie_degenerate: false,
    };
    let total = 1u64 << background.len();
    for step in 0..total {
        if step > 0 {
            let b = step.trailing_zeros() as usize;
            let k = background[b];
            if x.get(k) {
                hat_i -= &wi[b];
                hat_j -= &wj[b];
            } else {
                hat_i += &wi[b];
                hat_j += &wj[b];
            }
            x.flip(k);
        }
        if !out.tie_degenerate {
            out.tie_degenerate = hat_i.is_zero()
                || hat_j.is_zero()
                || (&hat_i + &w).is_zero()
                || (&hat_j + &w).is_zero();
        }
        let fwd = beats(&w, &hat_j);
        let bwd = beats(&w, &hat_i);
        if fwd && bwd {
            out.kind = ArcKind::Bidirected;
            out.bidirected_witness = Some(x);
            out.forward_witness = None;
            out.backward_witness = None;
            return Ok(out);
        }
        if fwd && out.forward_witness.is_none() {
            out.forward_witness = Some(x.clone());
        }
        if bwd && out.backward_witness.is_none() {
            out.backward_witness = Some(x.clone());
        }
    }
    out.kind = match (
        out.forward_witness.is_some(),
        out.backward_witness.is_some(),
    ) {
        (false, false) => ArcKind::None,
        (true, false) => ArcKind::Forward,
        (false, true) => ArcKind::Backward,
        (true, true) => ArcKind::BothOneWay,
    };
    Ok(out)
}

/// Arc data for every edge, in lexicographic edge order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcSet {
    pub n: usize,
    pub edges: Vec<EdgeArcs>,
}

impl ArcSet {
    /// Runs [`arc_direction_with_limit`] on every edge in parallel.
    pub fn compute(c: &VcspInstance, limit: usize) -> Result<Self, AnalysisError> {
        let pairs: Vec<(usize, usize)> = c.edges().collect();
        let edges = pairs
            .par_iter()
            .map(|&(i, j)| arc_direction_with_limit(c, i, j, limit))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ArcSet { n: c.n(), edges })
    }

    pub fn edge(&self, i: usize, j: usize) -> Option<&EdgeArcs> {
        let key = (i.min(j), i.max(j));
        self.edges
            .binary_search_by(|e| (e.i, e.j).cmp(&key))
            .ok()
            .map(|k| &self.edges[k])
    }

    /// Kind of `{i, j}` relative to the pair order `(i, j)`; `None` if not an edge.
    pub fn kind(&self, i: usize, j: usize) -> Option<ArcKind> {
        self.edge(i, j)
            .map(|e| if i <= j { e.kind } else { e.kind.reversed() })
    }

    /// One-way arcs `(a, b)` meaning `a → b`.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for e in &self.edges {
            match e.kind {
                ArcKind::Forward => out.push((e.i, e.j)),
                ArcKind::Backward => out.push((e.j, e.i)),
                ArcKind::BothOneWay => {
                    out.push((e.i, e.j));
                    out.push((e.j, e.i));
                }
                ArcKind::None | ArcKind::Bidirected => {}
            }
        }
        out
    }

    pub fn is_directed(&self) -> bool {
        self.edges.iter().all(|e| e.kind != ArcKind::Bidirected)
    }

    pub fn is_oriented(&self) -> bool {
        self.edges
            .iter()
            .all(|e| !matches!(e.kind, ArcKind::Bidirected | ArcKind::BothOneWay))
    }

    pub fn tie_degenerate(&self) -> bool {
        self.edges.iter().any(|e| e.tie_degenerate)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassLabel {
    NotDirected,
    DirectedNotOriented,
    Oriented,
}

impl std::fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ClassLabel::NotDirected => "not-directed",
            ClassLabel::DirectedNotOriented => "directed-not-oriented",
            ClassLabel::Oriented => "oriented",
        })
    }
}

/// Evidence for a negative classification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClassWitness {
    Bidirected {
        edge: (usize, usize),
        background: Assignment,
    },
    BothOneWay {
        edge: (usize, usize),
        forward: Assignment,
        backward: Assignment,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub label: ClassLabel,
    pub witness: Option<ClassWitness>,
    pub arcs: ArcSet,
}

pub fn classify(c: &VcspInstance) -> Result<Classification, AnalysisError> {
    classify_with_limit(c, DEFAULT_BACKGROUND_LIMIT)
}

/// The witness is taken from the first offending edge in lexicographic order.
pub fn classify_with_limit(
    c: &VcspInstance,
    limit: usize,
) -> Result<Classification, AnalysisError> {
    let arcs = ArcSet::compute(c, limit)?;
    let bidirected = arcs.edges.iter().find(|e| e.kind == ArcKind::Bidirected);
    let both = arcs.edges.iter().find(|e| e.kind == ArcKind::BothOneWay);
    let (label, witness) = if let Some(e) = bidirected {
        let background = e
            .bidirected_witness
            .clone()
            .expect("bidirected edges carry a witness");
        (
            ClassLabel::NotDirected,
            Some(ClassWitness::Bidirected {
                edge: (e.i, e.j),
                background,
            }),
        )
    } else if let Some(e) = both {
        let forward = e.forward_witness.clone().expect("forward witness");
        let backward = e.backward_witness.clone().expect("backward witness");
        (
            ClassLabel::DirectedNotOriented,
            Some(ClassWitness::BothOneWay {
                edge: (e.i, e.j),
                forward,
                backward,
            }),
        )
    } else {
        (ClassLabel::Oriented, None)
    };
    Ok(Classification {
        label,
        witness,
        arcs,
    })
}

/// Transitive closure of the arcs of an oriented instance, `a → b` giving `a ≺ b`.
pub fn oriented_poset(arcs: &ArcSet) -> Result<Poset, AnalysisError> {
    if !arcs.is_oriented() {
        return Err(AnalysisError::NotOriented);
    }
    Poset::from_relations(arcs.n, arcs.arcs()).map_err(AnalysisError::CycleDetected)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::test_instances::*;

    #[test]
    fn small_instances() {
        assert_eq!(arc_direction(&no_arc(), 0, 1).unwrap().kind, ArcKind::None);
        let b = arc_direction(&one_way(), 0, 1).unwrap();
        assert_eq!(b.kind, ArcKind::Forward);
        assert_eq!(b.forward_witness.unwrap().to_string(), "00");
        assert_eq!(
            arc_direction(&one_way(), 1, 0).unwrap().kind,
            ArcKind::Backward
        );
        let c = arc_direction(&two_one_way(), 0, 1).unwrap();
        assert_eq!(c.kind, ArcKind::BothOneWay);
        // i → j needs x_k = 1 (ĉ_j = 3 − 2x_k); j → i needs x_k = 0 (ĉ_i = 1 + 2x_k)
        assert_eq!(c.forward_witness.unwrap().to_string(), "001");
        assert_eq!(c.backward_witness.unwrap().to_string(), "000");
        assert!(!c.tie_degenerate);
        let d = arc_direction(&bidirected(), 0, 1).unwrap();
        assert_eq!(d.kind, ArcKind::Bidirected);
        assert_eq!(d.bidirected_witness.unwrap().to_string(), "00");
    }

    #[test]
    fn classification_labels() {
        assert_eq!(
            classify(&bidirected()).unwrap().label,
            ClassLabel::NotDirected
        );
        let c = classify(&two_one_way()).unwrap();
        assert_eq!(c.label, ClassLabel::DirectedNotOriented);
        assert!(matches!(
            c.witness,
            Some(ClassWitness::BothOneWay { edge: (0, 1), .. })
        ));
        let b = classify(&one_way()).unwrap();
        assert_eq!(b.label, ClassLabel::Oriented);
        let p = oriented_poset(&b.arcs).unwrap();
        assert!(p.less(0, 1));
        assert_eq!((p.height(), p.width()), (2, 1));
        assert_eq!(oriented_poset(&c.arcs), Err(AnalysisError::NotOriented));
    }

    #[test]
    fn unconstrained_pairs() {
        let mut c = VcspInstance::new(4);
        c.add_unary(0, 2).unwrap();
        let cl = classify(&c).unwrap();
        assert_eq!(cl.label, ClassLabel::Oriented);
        let p = oriented_poset(&cl.arcs).unwrap();
        assert_eq!((p.height(), p.width()), (1, 4));
        assert_eq!(arc_direction(&c, 0, 1), Err(AnalysisError::NotAnEdge(0, 1)));
    }

    #[test]
    fn degree_limit() {
        let mut c = VcspInstance::new(6);
        for k in 2..6 {
            c.add_binary(0, k, 1).unwrap();
        }
        c.add_binary(0, 1, 3).unwrap();
        assert!(matches!(
            arc_direction_with_limit(&c, 0, 1, 3),
            Err(AnalysisError::DegreeLimit {
                background: 4,
                limit: 3,
                ..
            })
        ));
        assert!(arc_direction_with_limit(&c, 0, 1, 4).is_ok());
    }

    #[test]
    fn tie_flag() {
        // ĉ_j = 2 = −c_ij at the only background, so flipping j at x_i = 1 is neutral
        assert!(
            arc_direction(&two_var(3, 2, -2), 0, 1)
                .unwrap()
                .tie_degenerate
        );
        assert!(!arc_direction(&one_way(), 0, 1).unwrap().tie_degenerate);
    }
}
