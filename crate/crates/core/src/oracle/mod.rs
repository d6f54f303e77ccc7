//! Brute-force ground truth over the full hypercube, for small dimensions.
//!
//! Everything here works from a dense [`FitnessTable`] and the raw definitions
//! (strict and non-strict fitness comparisons), never from constraint weights,
//! so it can arbitrate the weight-based recognition in [`crate::analysis`].

mod table;

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use table::submasks;
pub use table::{FitnessTable, OracleConfig};

use crate::analysis::{ArcKind, Poset, SmoothCert};
use crate::assignment::Assignment;
use crate::error::OracleError;
use crate::instance::{Landscape, VcspInstance};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    /// `indices = [i, j]`: `i` sign-depends on `j` in `background`.
    SignDep,
    /// `indices = [i, j]`: reciprocal sign epistasis in `background`.
    Rse,
    /// `indices` are the free dimensions of a face with two or more local peaks;
    /// the other coordinates are fixed to `background`.
    BadSubcube,
    /// `indices = [i]`: flipping `i` at `background` leaves fitness unchanged.
    Tie,
    /// `indices = [j]`: `background` agrees with the peak below `j`, yet setting
    /// `j` to `preferred` is not strictly better.
    OrderViolation,
}

/// A replayable certificate for a claim about a landscape.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub kind: WitnessKind,
    pub background: Assignment,
    pub indices: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preferred: Option<bool>,
}

fn sign_depends_at<L: Landscape + ?Sized>(f: &L, x: &Assignment, i: usize, j: usize) -> bool {
    let fx = f.fitness(x);
    let xj = x.flipped(j);
    f.fitness(&x.flipped(i)) > fx && f.fitness(&xj.flipped(i)) <= f.fitness(&xj)
}

impl Witness {
    fn new(kind: WitnessKind, background: Assignment, indices: Vec<usize>) -> Self {
        Witness {
            kind,
            background,
            indices,
            preferred: None,
        }
    }

    /// Re-evaluates the claimed inequality pattern with fresh fitness evaluations.
    pub fn replay<L: Landscape + ?Sized>(&self, f: &L) -> bool {
        if self.background.len() != f.dim() || self.indices.iter().any(|&i| i >= f.dim()) {
            return false;
        }
        let x = &self.background;
        match (self.kind, self.indices.as_slice()) {
            (WitnessKind::SignDep, &[i, j]) => i != j && sign_depends_at(f, x, i, j),
            (WitnessKind::Rse, &[i, j]) => {
                i != j && sign_depends_at(f, x, i, j) && sign_depends_at(f, x, j, i)
            }
            (WitnessKind::Tie, &[i]) => f.fitness(&x.flipped(i)) == f.fitness(x),
            (WitnessKind::OrderViolation, &[j]) => match self.preferred {
                Some(v) => {
                    let mut good = x.clone();
                    good.set(j, v);
                    f.fitness(&good) <= f.fitness(&good.flipped(j))
                }
                None => false,
            },
            (WitnessKind::BadSubcube, free) => {
                if free.len() > 24 {
                    return false;
                }
                let mut peaks = 0;
                for sub in 0u64..1 << free.len() {
                    let mut y = x.clone();
                    for (b, &i) in free.iter().enumerate() {
                        y.set(i, sub >> b & 1 == 1);
                    }
                    let fy = f.fitness(&y);
                    if free.iter().all(|&i| f.fitness(&y.flipped(i)) <= fy) {
                        peaks += 1;
                    }
                }
                peaks >= 2
            }
            _ => false,
        }
    }
}

/// First backgrounds (in code order) witnessing each sign-dependence relation of a pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignDependence {
    /// `i` sign-depends on `j`.
    pub i_on_j: Option<Witness>,
    /// `j` sign-depends on `i`.
    pub j_on_i: Option<Witness>,
    pub rse: Option<Witness>,
}

impl SignDependence {
    /// The arc kind of `(i, j)` implied by the relations: `i → j` when `j` sign-depends on `i`.
    pub fn arc_kind(&self) -> ArcKind {
        if self.rse.is_some() {
            return ArcKind::Bidirected;
        }
        match (self.j_on_i.is_some(), self.i_on_j.is_some()) {
            (false, false) => ArcKind::None,
            (true, false) => ArcKind::Forward,
            (false, true) => ArcKind::Backward,
            (true, true) => ArcKind::BothOneWay,
        }
    }
}

#[inline]
fn depends(t: &FitnessTable, x: usize, i: usize, j: usize) -> bool {
    t.improves(x, i) && !t.improves(x ^ (1 << j), i)
}

impl FitnessTable {
    pub fn sign_dependence(&self, i: usize, j: usize) -> SignDependence {
        assert!(
            i < self.n() && j < self.n() && i != j,
            "bad index pair ({i}, {j})"
        );
        let mut out = SignDependence {
            i_on_j: None,
            j_on_i: None,
            rse: None,
        };
        for x in 0..self.len() {
            let ij = depends(self, x, i, j);
            let ji = depends(self, x, j, i);
            if ij && out.i_on_j.is_none() {
                out.i_on_j = Some(Witness::new(
                    WitnessKind::SignDep,
                    self.assignment(x),
                    vec![i, j],
                ));
            }
            if ji && out.j_on_i.is_none() {
                out.j_on_i = Some(Witness::new(
                    WitnessKind::SignDep,
                    self.assignment(x),
                    vec![j, i],
                ));
            }
            if ij && ji {
                out.rse = Some(Witness::new(
                    WitnessKind::Rse,
                    self.assignment(x),
                    vec![i, j],
                ));
                break;
            }
        }
        out
    }

    /// First pair (lexicographic) with reciprocal sign epistasis.
    pub fn find_rse(&self) -> Option<Witness> {
        let n = self.n();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        pairs.par_iter().find_map_first(|&(i, j)| {
            (0..self.len())
                .find(|&x| depends(self, x, i, j) && depends(self, x, j, i))
                .map(|x| Witness::new(WitnessKind::Rse, self.assignment(x), vec![i, j]))
        })
    }

    /// Checks every face for a unique local peak. Face `(S, y)` is identified by
    /// the ternary number with digit 2 on free dimensions and `y_i` elsewhere;
    /// `x` is a peak of every face whose free set lies inside `φ⁻(x)`. Stops at
    /// the first face that collects a second peak, so the work is at most `3^n + 1`
    /// increments.
    pub fn find_bad_subcube(&self) -> Option<Witness> {
        let n = self.n();
        let pow3: Vec<usize> = (0..n).map(|i| 3usize.pow(i as u32)).collect();
        let mut seen = vec![false; 3usize.pow(n as u32)];
        for x in 0..self.len() {
            let base: usize = (0..n).filter(|&i| x >> i & 1 == 1).map(|i| pow3[i]).sum();
            let inmap = self.non_improving_mask(x) as usize;
            for s in submasks(inmap) {
                let id = base
                    + (0..n)
                        .filter(|&i| s >> i & 1 == 1)
                        .map(|i| (2 - (x >> i & 1)) * pow3[i])
                        .sum::<usize>();
                if std::mem::replace(&mut seen[id], true) {
                    let free: Vec<usize> = (0..n).filter(|&i| s >> i & 1 == 1).collect();
                    return Some(Witness::new(
                        WitnessKind::BadSubcube,
                        self.assignment(x & !s),
                        free,
                    ));
                }
            }
        }
        None
    }

    /// `Σ_x 2^{|φ⁻(x)|}`, which equals `3^n` exactly when every face has one peak.
    pub fn peak_incidence_count(&self) -> u128 {
        (0..self.len())
            .into_par_iter()
            .map(|x| 1u128 << self.non_improving_mask(x).count_ones())
            .sum()
    }

    /// First flip (in code, then index order) that leaves fitness unchanged.
    pub fn find_tie(&self) -> Option<Witness> {
        (0..self.len()).find_map(|x| {
            (0..self.n())
                .find(|&i| self.value(x ^ (1 << i)) == self.value(x))
                .map(|i| Witness::new(WitnessKind::Tie, self.assignment(x), vec![i]))
        })
    }

    pub fn local_peaks(&self) -> Vec<Assignment> {
        (0..self.len())
            .into_par_iter()
            .filter(|&x| self.is_peak(x))
            .map(|x| self.assignment(x))
            .collect()
    }

    /// Preferred value of `j` on the face that fixes `fixed` to `y` and frees the rest:
    /// `Some(v)` when every assignment of the face strictly prefers `x_j = v`.
    pub fn face_preference(&self, fixed: usize, y: usize, j: usize) -> Option<bool> {
        let n = self.n();
        assert_eq!(fixed >> j & 1, 0, "dimension {j} is fixed");
        let free = ((1usize << n) - 1) & !fixed & !(1 << j);
        let base = y & fixed;
        let mut pref = None;
        for s in submasks(free) {
            let x0 = base | s;
            let x1 = x0 | 1 << j;
            let v = match self.value(x1).cmp(self.value(x0)) {
                std::cmp::Ordering::Greater => true,
                std::cmp::Ordering::Less => false,
                std::cmp::Ordering::Equal => return None,
            };
            match pref {
                None => pref = Some(v),
                Some(p) if p != v => return None,
                _ => {}
            }
        }
        pref
    }

    /// Greedy recognition from the definitions: each round fixes every free index
    /// with a strict preferred value on the current face, at that value.
    pub fn conditionally_smooth(&self) -> Option<SmoothCert> {
        let n = self.n();
        let mut fixed = 0usize;
        let mut peak = 0usize;
        let mut rounds = Vec::new();
        while fixed != (1 << n) - 1 {
            let round: Vec<(usize, bool)> = (0..n)
                .into_par_iter()
                .filter(|&i| fixed >> i & 1 == 0)
                .filter_map(|i| self.face_preference(fixed, peak, i).map(|v| (i, v)))
                .collect();
            if round.is_empty() {
                return None;
            }
            for &(i, v) in &round {
                fixed |= 1 << i;
                if v {
                    peak |= 1 << i;
                }
            }
            rounds.push(round.into_iter().map(|(i, _)| i).collect::<Vec<_>>());
        }
        Some(SmoothCert {
            order: Poset::from_layers(n, &rounds),
            peak: self.assignment(peak),
            rounds,
        })
    }

    /// Checks the `≺`-smooth condition for every `j` and every assignment that
    /// agrees with the peak on `↓j`.
    pub fn verify_smooth_cert(&self, cert: &SmoothCert) -> Option<Witness> {
        let n = self.n();
        let Some(peak) = cert.peak.code().map(|c| c as usize) else {
            return Some(Witness::new(
                WitnessKind::OrderViolation,
                cert.peak.clone(),
                vec![],
            ));
        };
        if cert.peak.len() != n || cert.order.len() != n {
            return Some(Witness::new(
                WitnessKind::OrderViolation,
                cert.peak.clone(),
                vec![],
            ));
        }
        (0..n).into_par_iter().find_map_first(|j| {
            let down = cert
                .order
                .down_set(j)
                .into_iter()
                .fold(0usize, |m, i| m | 1 << i);
            let free = ((1usize << n) - 1) & !down & !(1 << j);
            let want = peak >> j & 1;
            submasks(free).find_map(|s| {
                let good = (peak & down) | s | (want << j);
                (self.value(good) <= self.value(good ^ (1 << j))).then(|| Witness {
                    kind: WitnessKind::OrderViolation,
                    background: self.assignment(good),
                    indices: vec![j],
                    preferred: Some(want == 1),
                })
            })
        })
    }

    /// Longest strictly increasing path of single flips, as `(length, start, end)`.
    pub fn longest_ascent(&self) -> (usize, Assignment, Assignment) {
        let order = self.descending_order();
        let mut best = vec![0u32; self.len()];
        let mut next = vec![u32::MAX; self.len()];
        for &x in &order {
            let x = x as usize;
            for i in 0..self.n() {
                let y = x ^ (1 << i);
                if self.value(y) > self.value(x) && best[y] + 1 > best[x] {
                    best[x] = best[y] + 1;
                    next[x] = y as u32;
                }
            }
        }
        let start = (0..self.len())
            .max_by_key(|&x| (best[x], std::cmp::Reverse(x)))
            .unwrap_or(0);
        let mut end = start;
        while next[end] != u32::MAX {
            end = next[end] as usize;
        }
        (
            best[start] as usize,
            self.assignment(start),
            self.assignment(end),
        )
    }

    /// Exact expected number of RandomAscent steps from every code, by dynamic
    /// programming in decreasing fitness order.
    pub fn random_ascent_expectation(&self) -> Vec<f64> {
        let order = self.descending_order();
        let mut e = vec![0f64; self.len()];
        for &x in &order {
            let x = x as usize;
            let (mut sum, mut k) = (0f64, 0u32);
            for i in 0..self.n() {
                if self.improves(x, i) {
                    sum += e[x ^ (1 << i)];
                    k += 1;
                }
            }
            if k > 0 {
                e[x] = 1.0 + sum / k as f64;
            }
        }
        e
    }

    /// Successor under steepest ascent (largest gain, lowest index on ties).
    pub fn steepest_successor(&self, x: usize) -> Option<usize> {
        let mut best: Option<usize> = None;
        for i in 0..self.n() {
            let y = x ^ (1 << i);
            if self.value(y) > self.value(x) && best.is_none_or(|b| self.value(y) > self.value(b)) {
                best = Some(y);
            }
        }
        best
    }

    /// Steepest-ascent run length from every start; returns the maximum and the
    /// lowest start code attaining it.
    pub fn max_steepest_length(&self) -> (usize, Assignment) {
        let succ: Vec<u32> = (0..self.len())
            .into_par_iter()
            .map(|x| self.steepest_successor(x).map_or(u32::MAX, |y| y as u32))
            .collect();
        let order = self.descending_order();
        let mut len = vec![0u32; self.len()];
        for &x in &order {
            let s = succ[x as usize];
            if s != u32::MAX {
                len[x as usize] = len[s as usize] + 1;
            }
        }
        let start = (0..self.len())
            .max_by_key(|&x| (len[x], std::cmp::Reverse(x)))
            .unwrap_or(0);
        (len[start] as usize, self.assignment(start))
    }

    /// Recursive combing predicate on a semismooth landscape: the landscape is
    /// smooth, or it is combed along some dimension and both facets across that
    /// dimension are recursively combed.
    pub fn is_recursively_combed(&self) -> bool {
        let n = self.n();
        if self.find_rse().is_some() {
            return false;
        }
        let mut memo = HashMap::new();
        self.rec_combed(((1usize << n) - 1, 0), &mut memo)
    }

    fn rec_combed(
        &self,
        (free, base): (usize, usize),
        memo: &mut HashMap<(usize, usize), bool>,
    ) -> bool {
        if let Some(&v) = memo.get(&(free, base)) {
            return v;
        }
        let n = self.n();
        let fixed = ((1usize << n) - 1) & !free;
        let combed: Vec<usize> = (0..n)
            .filter(|&i| free >> i & 1 == 1 && self.face_preference(fixed, base, i).is_some())
            .collect();
        let result = combed.len() == free.count_ones() as usize
            || combed.iter().any(|&i| {
                let rest = free & !(1 << i);
                self.rec_combed((rest, base & !(1 << i)), memo)
                    && self.rec_combed((rest, base | 1 << i), memo)
            });
        memo.insert((free, base), result);
        result
    }
}

pub fn sign_dependence_oracle<L: Landscape + ?Sized>(
    f: &L,
    i: usize,
    j: usize,
    cfg: &OracleConfig,
) -> Result<SignDependence, OracleError> {
    cfg.check_sweep(f.dim())?;
    Ok(FitnessTable::build(f, cfg.sweep_cap)?.sign_dependence(i, j))
}

/// Result of the two semismoothness checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemismoothVerdict {
    pub semismooth: bool,
    pub rse: Option<Witness>,
    pub bad_subcube: Option<Witness>,
    /// The pairwise and the face-by-face checks reached the same answer.
    pub methods_agree: bool,
}

impl FitnessTable {
    pub fn semismooth_verdict(&self) -> SemismoothVerdict {
        let rse = self.find_rse();
        let bad_subcube = self.find_bad_subcube();
        let counted = self.peak_incidence_count() == 3u128.pow(self.n() as u32);
        let methods_agree =
            rse.is_none() == bad_subcube.is_none() && counted == bad_subcube.is_none();
        SemismoothVerdict {
            semismooth: rse.is_none(),
            rse,
            bad_subcube,
            methods_agree,
        }
    }
}

pub fn is_semismooth<L: Landscape + ?Sized>(
    f: &L,
    cfg: &OracleConfig,
) -> Result<SemismoothVerdict, OracleError> {
    cfg.check_sweep(f.dim())?;
    Ok(FitnessTable::build(f, cfg.sweep_cap)?.semismooth_verdict())
}

pub fn local_peaks<L: Landscape + ?Sized>(
    f: &L,
    cfg: &OracleConfig,
) -> Result<Vec<Assignment>, OracleError> {
    Ok(FitnessTable::build(f, cfg.single_pass_cap)?.local_peaks())
}

pub fn conditionally_smooth_oracle<L: Landscape + ?Sized>(
    f: &L,
    cfg: &OracleConfig,
) -> Result<Option<SmoothCert>, OracleError> {
    cfg.check_sweep(f.dim())?;
    Ok(FitnessTable::build(f, cfg.sweep_cap)?.conditionally_smooth())
}

/// Exhaustive check of a `≺`-smooth certificate; `None` means it holds.
pub fn verify_smooth_cert<L: Landscape + ?Sized>(
    f: &L,
    cert: &SmoothCert,
    cfg: &OracleConfig,
) -> Result<Option<Witness>, OracleError> {
    Ok(FitnessTable::build(f, cfg.single_pass_cap)?.verify_smooth_cert(cert))
}

pub fn longest_ascent<L: Landscape + ?Sized>(
    f: &L,
    cfg: &OracleConfig,
) -> Result<(usize, Assignment, Assignment), OracleError> {
    Ok(FitnessTable::build(f, cfg.single_pass_cap)?.longest_ascent())
}

pub fn max_steepest_length<L: Landscape + ?Sized>(
    f: &L,
    cfg: &OracleConfig,
) -> Result<(usize, Assignment), OracleError> {
    Ok(FitnessTable::build(f, cfg.single_pass_cap)?.max_steepest_length())
}

/// Outcome of stitching two one-way witnesses on an edge whose endpoints share no neighbour.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stitch {
    /// Common neighbours exist, or one of the two sign dependences is absent.
    PremiseFails,
    Rse(Witness),
    /// None of the four settings of `(x_i, x_j)` on the stitched background is an RSE witness.
    Failed(Assignment),
}

/// Combines a background where `j` sign-depends on `i` (restricted to `N(j) ∖ {i}`)
/// with one where `i` sign-depends on `j` (restricted to `N(i) ∖ {j}`), then tries
/// the four values of `(x_i, x_j)`.
pub fn stitched_rse(c: &VcspInstance, table: &FitnessTable, i: usize, j: usize) -> Stitch {
    let ni: Vec<usize> = c.neighbor_indices(i).filter(|&k| k != j).collect();
    let nj: Vec<usize> = c.neighbor_indices(j).filter(|&k| k != i).collect();
    if ni.iter().any(|k| nj.contains(k)) {
        return Stitch::PremiseFails;
    }
    let sd = table.sign_dependence(i, j);
    let (Some(x), Some(z)) = (sd.j_on_i, sd.i_on_j) else {
        return Stitch::PremiseFails;
    };
    let mut w = Assignment::zeros(c.n());
    for &k in &nj {
        w.set(k, x.background.get(k));
    }
    for &k in &ni {
        w.set(k, z.background.get(k));
    }
    for (a, b) in [(false, false), (true, false), (false, true), (true, true)] {
        w.set(i, a);
        w.set(j, b);
        let code = w.code().expect("table dimensions fit in a code") as usize;
        if depends(table, code, i, j) && depends(table, code, j, i) {
            return Stitch::Rse(Witness::new(WitnessKind::Rse, w, vec![i, j]));
        }
    }
    Stitch::Failed(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::test_instances::*;

    fn table(c: &VcspInstance) -> FitnessTable {
        FitnessTable::build(c, 16).unwrap()
    }

    #[test]
    fn sign_dependence_examples() {
        let d = table(&bidirected()).sign_dependence(0, 1);
        assert!(d.rse.as_ref().unwrap().replay(&bidirected()));
        assert_eq!(d.arc_kind(), ArcKind::Bidirected);
        let b = table(&one_way()).sign_dependence(0, 1);
        assert!(b.i_on_j.is_none() && b.rse.is_none());
        assert!(b.j_on_i.as_ref().unwrap().replay(&one_way()));
        assert_eq!(b.arc_kind(), ArcKind::Forward);
        assert_eq!(
            table(&two_one_way()).sign_dependence(0, 1).arc_kind(),
            ArcKind::BothOneWay
        );
        assert_eq!(
            table(&no_arc()).sign_dependence(0, 1).arc_kind(),
            ArcKind::None
        );
    }

    #[test]
    fn semismooth_examples() {
        let v = table(&bidirected()).semismooth_verdict();
        assert!(!v.semismooth && v.methods_agree);
        assert!(v.rse.unwrap().replay(&bidirected()));
        assert!(v.bad_subcube.unwrap().replay(&bidirected()));
        let v = table(&two_one_way()).semismooth_verdict();
        assert!(v.semismooth && v.methods_agree);
        let mut single = VcspInstance::new(1);
        single.add_unary(0, 4).unwrap();
        assert!(table(&single).semismooth_verdict().semismooth);
    }

    #[test]
    fn peaks_and_ascents() {
        let b = one_way();
        let t = table(&b);
        assert_eq!(t.local_peaks(), vec!["10".parse().unwrap()]);
        // fitness 0, 1, 2, 3 along 00 → 01 → 11 → 10
        let (len, start, end) = t.longest_ascent();
        assert_eq!(
            (len, start.to_string(), end.to_string()),
            (3, "00".into(), "10".into())
        );
        assert_eq!(t.max_steepest_length(), (2, "01".parse().unwrap()));
        let mut neg = VcspInstance::new(3);
        for i in 0..3 {
            neg.add_unary(i, -(i as i64) - 1).unwrap();
        }
        assert_eq!(table(&neg).local_peaks(), vec![Assignment::zeros(3)]);
    }

    #[test]
    fn recognition_and_certificates() {
        let t = table(&one_way());
        let cert = t.conditionally_smooth().unwrap();
        assert_eq!(cert.peak.to_string(), "10");
        assert!(t.verify_smooth_cert(&cert).is_none());
        assert!(table(&bidirected()).conditionally_smooth().is_none());
        // claiming the wrong peak is caught and replays
        let bad = SmoothCert {
            peak: "00".parse().unwrap(),
            ..cert
        };
        let w = t.verify_smooth_cert(&bad).unwrap();
        assert!(w.replay(&one_way()));
    }

    #[test]
    fn ties_are_found() {
        let t = table(&two_var(3, 2, -2));
        let w = t.find_tie().unwrap();
        assert!(w.replay(&two_var(3, 2, -2)));
        assert!(table(&one_way()).find_tie().is_none());
    }

    #[test]
    fn combing() {
        assert!(table(&one_way()).is_recursively_combed());
        assert!(!table(&bidirected()).is_recursively_combed());
    }

    #[test]
    fn caps_are_enforced() {
        let c = VcspInstance::new(17);
        let cfg = OracleConfig::default();
        assert_eq!(
            is_semismooth(&c, &cfg).unwrap_err(),
            OracleError::DimensionCap { n: 17, cap: 16 }
        );
        assert!(local_peaks(&c, &cfg).is_ok());
        let small = OracleConfig {
            sweep_cap: 4,
            single_pass_cap: 4,
        };
        assert!(local_peaks(&VcspInstance::new(5), &small).is_err());
    }

    #[test]
    fn stitching_on_a_path() {
        // k – i – j – m with no common neighbours of i and j
        let c = VcspInstance::from_constraints(
            4,
            [
                (vec![0], 1),
                (vec![1], 1),
                (vec![2], 3),
                (vec![3], -3),
                (vec![0, 1], -2),
                (vec![0, 2], -3),
                (vec![1, 3], 4),
            ],
        )
        .unwrap();
        let t = table(&c);
        match stitched_rse(&c, &t, 0, 1) {
            Stitch::Rse(w) => assert!(w.replay(&c)),
            Stitch::PremiseFails => {}
            Stitch::Failed(w) => panic!("stitch failed at {w}"),
        }
    }
}
