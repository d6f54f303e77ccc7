//! Single steps of each rule. Every function returns the next assignment.

use rand::Rng as _;

use crate::assignment::Assignment;
use crate::error::SearchError;
use crate::fitness::FitnessValue;
use crate::instance::{improving_flips, Landscape};
use crate::rng::Rng;
use crate::search::anneal::AnnealingSchedule;
use crate::search::history::HistoryState;

/// Default limit on `|φ⁺|` for exhaustive JumpToBest.
pub const JUMP_TO_BEST_CAP: usize = 25;

fn at_peak(rule: &str) -> SearchError {
    SearchError::AtPeak {
        rule: rule.to_string(),
    }
}

fn improving_or_peak<L: Landscape + ?Sized>(
    f: &L,
    x: &Assignment,
    rule: &str,
) -> Result<Vec<usize>, SearchError> {
    x.check_len(f.dim())?;
    let up = improving_flips(f, x);
    if up.is_empty() {
        Err(at_peak(rule))
    } else {
        Ok(up)
    }
}

/// Index of the largest-gain flip, lowest index on ties, if any flip improves.
pub fn steepest_index<L: Landscape + ?Sized>(f: &L, x: &Assignment) -> Option<usize> {
    let mut best: Option<(usize, FitnessValue)> = None;
    for i in 0..f.dim() {
        let g = f.flip_gain(x, i);
        if g.is_positive() && best.as_ref().is_none_or(|(_, b)| g > *b) {
            best = Some((i, g));
        }
    }
    best.map(|(i, _)| i)
}

pub fn steepest_step<L: Landscape + ?Sized>(
    f: &L,
    x: &Assignment,
) -> Result<Assignment, SearchError> {
    x.check_len(f.dim())?;
    steepest_index(f, x)
        .map(|i| x.flipped(i))
        .ok_or_else(|| at_peak("steepest"))
}

pub(crate) fn random_ascent_index<L: Landscape + ?Sized>(
    f: &L,
    x: &Assignment,
    rng: &mut Rng,
) -> Result<usize, SearchError> {
    let up = improving_or_peak(f, x, "random-ascent")?;
    Ok(up[rng.gen_range(0..up.len())])
}

pub fn random_ascent_step<L: Landscape + ?Sized>(
    f: &L,
    x: &Assignment,
    rng: &mut Rng,
) -> Result<Assignment, SearchError> {
    random_ascent_index(f, x, rng).map(|i| x.flipped(i))
}

pub fn history_step<L: Landscape + ?Sized>(
    f: &L,
    x: &Assignment,
    hist: &mut HistoryState,
) -> Result<Assignment, SearchError> {
    let up = improving_or_peak(f, x, hist.kind.name())?;
    let i = hist.select(x, &up).expect("non-empty");
    let y = x.flipped(i);
    hist.record(i, &y);
    Ok(y)
}

/// One SimulatedAnnealing step at time `t`: a uniform candidate flip, accepted
/// outright if it improves and with probability `r_t(−Δf)` otherwise.
pub fn simulated_annealing_step<L: Landscape + ?Sized>(
    f: &L,
    x: &Assignment,
    t: u64,
    schedule: &AnnealingSchedule,
    rng: &mut Rng,
) -> Result<Assignment, SearchError> {
    x.check_len(f.dim())?;
    let n = f.dim();
    if n == 0 {
        return Ok(x.clone());
    }
    let i = rng.gen_range(0..n);
    let gain = f.flip_gain(x, i);
    // one draw per step keeps the stream aligned whatever the outcome
    let u: f64 = rng.gen();
    if gain.is_positive() {
        return Ok(x.flipped(i));
    }
    let p = schedule.downstep_probability(n, t, -gain.to_f64());
    Ok(if u < p { x.flipped(i) } else { x.clone() })
}

pub fn antipodal_step<L: Landscape + ?Sized>(
    f: &L,
    x: &Assignment,
) -> Result<Assignment, SearchError> {
    let up = improving_or_peak(f, x, "antipodal-jump")?;
    Ok(x.with_flips(&up))
}

/// Best assignment on the face spanned by `φ⁺(x)`, lexicographically smallest on ties.
pub fn jump_to_best_step<L: Landscape + ?Sized>(
    f: &L,
    x: &Assignment,
    cap: usize,
) -> Result<Assignment, SearchError> {
    let up = improving_or_peak(f, x, "jump-to-best")?;
    if up.len() > cap || up.len() >= 64 {
        return Err(SearchError::FaceCap {
            size: up.len(),
            cap,
        });
    }
    let mut best: Option<(FitnessValue, Assignment)> = None;
    let mut y = x.clone();
    for mask in 0u64..1 << up.len() {
        for (b, &i) in up.iter().enumerate() {
            y.set(i, x.get(i) ^ (mask >> b & 1 == 1));
        }
        let v = f.fitness(&y);
        let better = match &best {
            None => true,
            Some((bv, by)) => v > *bv || (v == *bv && y.lex_cmp(by).is_lt()),
        };
        if better {
            best = Some((v, y.clone()));
        }
    }
    Ok(best.expect("face is non-empty").1)
}

/// Flips each improving index independently with probability 1/2.
pub fn random_jump_step<L: Landscape + ?Sized>(
    f: &L,
    x: &Assignment,
    rng: &mut Rng,
) -> Result<Assignment, SearchError> {
    let up = improving_or_peak(f, x, "random-jump")?;
    let chosen: Vec<usize> = up.into_iter().filter(|_| rng.gen_bool(0.5)).collect();
    Ok(x.with_flips(&chosen))
}

/// The greedy sequence `y¹, …, yⁿ`: each step flips the remaining index whose flip
/// leaves the highest fitness, lowest index on ties.
pub fn kl_neighborhood<L: Landscape + ?Sized>(
    f: &L,
    x: &Assignment,
) -> Result<Vec<Assignment>, SearchError> {
    x.check_len(f.dim())?;
    let n = f.dim();
    let mut remaining = vec![true; n];
    let mut y = x.clone();
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best: Option<(usize, FitnessValue)> = None;
        for i in (0..n).filter(|&i| remaining[i]) {
            let g = f.flip_gain(&y, i);
            if best.as_ref().is_none_or(|(_, b)| g > *b) {
                best = Some((i, g));
            }
        }
        let (i, _) = best.expect("an index remains");
        remaining[i] = false;
        y.flip(i);
        out.push(y.clone());
    }
    Ok(out)
}

/// Fittest member of the KL neighbourhood, earliest on ties.
pub fn kernighan_lin_step<L: Landscape + ?Sized>(
    f: &L,
    x: &Assignment,
) -> Result<Assignment, SearchError> {
    improving_or_peak(f, x, "kernighan-lin")?;
    let mut best: Option<(FitnessValue, Assignment)> = None;
    for y in kl_neighborhood(f, x)? {
        let v = f.fitness(&y);
        if best.as_ref().is_none_or(|(b, _)| v > *b) {
            best = Some((v, y));
        }
    }
    Ok(best.expect("n ≥ 1 at a non-peak").1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::test_instances::*;
    use crate::instance::VcspInstance;
    use crate::rng::rng_from_seed;

    fn a(s: &str) -> Assignment {
        s.parse().unwrap()
    }

    #[test]
    fn steepest_examples() {
        let c = one_way();
        assert_eq!(steepest_step(&c, &a("00")).unwrap(), a("10"));
        assert_eq!(steepest_step(&c, &a("01")).unwrap(), a("11"));
        assert!(matches!(
            steepest_step(&c, &a("10")),
            Err(SearchError::AtPeak { .. })
        ));
        // equal gains everywhere: lowest index wins
        let mut star = VcspInstance::new(4);
        for i in 0..4 {
            star.add_unary(i, 2).unwrap();
        }
        assert_eq!(steepest_step(&star, &a("0000")).unwrap(), a("1000"));
    }

    #[test]
    fn jump_rules_on_one_way() {
        let c = one_way();
        assert_eq!(
            jump_to_best_step(&c, &a("00"), JUMP_TO_BEST_CAP).unwrap(),
            a("10")
        );
        assert_eq!(antipodal_step(&c, &a("01")).unwrap(), a("11"));
        assert_eq!(
            kl_neighborhood(&c, &a("00")).unwrap(),
            vec![a("10"), a("11")]
        );
        assert_eq!(kernighan_lin_step(&c, &a("00")).unwrap(), a("10"));
        assert!(matches!(
            jump_to_best_step(&c, &a("00"), 1),
            Err(SearchError::FaceCap { size: 2, cap: 1 })
        ));
    }

    #[test]
    fn kl_single_variable() {
        let mut c = VcspInstance::new(1);
        c.add_unary(0, -1).unwrap();
        assert_eq!(kl_neighborhood(&c, &a("0")).unwrap(), vec![a("1")]);
    }

    #[test]
    fn random_ascent_is_uniform_over_improving() {
        let c = one_way();
        let first_i = (0..10_000u64)
            .filter(|&s| {
                random_ascent_step(&c, &a("00"), &mut rng_from_seed(s)).unwrap() == a("10")
            })
            .count();
        let freq = first_i as f64 / 10_000.0;
        assert!((freq - 0.5).abs() <= 0.02, "frequency {freq}");
    }

    #[test]
    fn random_jump_single_index_is_a_coin() {
        let c = one_way();
        // at 11 only j improves
        let moved = (0..4000u64)
            .filter(|&s| random_jump_step(&c, &a("11"), &mut rng_from_seed(s)).unwrap() == a("10"))
            .count();
        assert!((moved as f64 / 4000.0 - 0.5).abs() < 0.03);
    }

    #[test]
    fn zero_temperature_annealing_never_descends() {
        let c = one_way();
        let cold = AnnealingSchedule {
            k0: Some(1e-300),
            gamma: 0.5,
            alpha: 1.0,
        };
        let mut rng = rng_from_seed(3);
        let mut x = a("01");
        for t in 0..200 {
            let y = simulated_annealing_step(&c, &x, t, &cold, &mut rng).unwrap();
            assert!(c.fitness(&y) >= c.fitness(&x));
            x = y;
        }
        assert_eq!(x, a("10"));
    }
}
