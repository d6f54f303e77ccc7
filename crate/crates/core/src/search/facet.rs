//! RandomFacet on the faces of `{0,1}^n`.
//!
//! On a face with free set `F`: if `|F| = 1`, move to the better endpoint;
//! otherwise pick `i ∈ F` uniformly, solve the facet `F ∖ {i}` from the current
//! vertex, and if flipping `i` then improves, flip it and solve the opposite facet.
//! Each vertex move is one step.

use rand::Rng as _;

use crate::assignment::Assignment;
use crate::error::SearchError;
use crate::instance::{is_local_peak, Landscape};
use crate::rng::{rng_from_seed, Rng, RNG_NAME};
use crate::search::{SearchTrace, Termination, TraceStep};

struct Facet<'a, L: ?Sized> {
    f: &'a L,
    rng: Rng,
    x: Assignment,
    steps: Vec<TraceStep>,
    cap: usize,
}

impl<L: Landscape + ?Sized> Facet<'_, L> {
    fn capped(&self) -> bool {
        self.steps.len() >= self.cap
    }

    fn try_move(&mut self, i: usize) -> bool {
        if !self.f.flip_gain(&self.x, i).is_positive() {
            return false;
        }
        self.x.flip(i);
        self.steps.push(TraceStep {
            flipped: vec![i],
            fitness: self.f.fitness(&self.x),
        });
        true
    }

    fn solve(&mut self, free: &[usize]) -> Result<(), SearchError> {
        match free {
            [] => return Ok(()),
            [i] => {
                self.try_move(*i);
                return Ok(());
            }
            _ => {}
        }
        let k = self.rng.gen_range(0..free.len());
        let i = free[k];
        let rest: Vec<usize> = free.iter().copied().filter(|&j| j != i).collect();
        self.solve(&rest)?;
        if self.capped() {
            return Ok(());
        }
        if self.try_move(i) {
            if self.capped() {
                return Ok(());
            }
            self.solve(&rest)?;
            if self.capped() {
                return Ok(());
            }
        }
        // on a semismooth landscape the recursion ends at the sink of the face
        if let Some(&j) = free
            .iter()
            .find(|&&j| self.f.flip_gain(&self.x, j).is_positive())
        {
            return Err(SearchError::NotSemismooth(format!(
                "RandomFacet stopped at {} on a face of dimension {} with index {j} still improving",
                self.x,
                free.len()
            )));
        }
        Ok(())
    }
}

pub fn random_facet_run<L: Landscape + ?Sized>(
    f: &L,
    x0: &Assignment,
    seed: u64,
    cap: usize,
) -> Result<SearchTrace, SearchError> {
    x0.check_len(f.dim())?;
    if cap == 0 {
        return Err(SearchError::InvalidParameter(
            "step cap must be positive".into(),
        ));
    }
    let mut run = Facet {
        f,
        rng: rng_from_seed(seed),
        x: x0.clone(),
        steps: Vec::new(),
        cap,
    };
    let all: Vec<usize> = (0..f.dim()).collect();
    run.solve(&all)?;
    let terminated = if is_local_peak(f, &run.x) {
        Termination::Peak
    } else if run.capped() {
        Termination::Cap
    } else {
        return Err(SearchError::NotSemismooth(format!(
            "RandomFacet ended at non-peak {}",
            run.x
        )));
    };
    Ok(SearchTrace {
        rule: "random-facet".into(),
        rng: RNG_NAME.into(),
        seed,
        start: x0.clone(),
        start_fitness: f.fitness(x0),
        steps: run.steps,
        terminated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::test_instances::*;
    use crate::instance::VcspInstance;

    #[test]
    fn one_variable_takes_at_most_one_move() {
        let mut c = VcspInstance::new(1);
        c.add_unary(0, 1).unwrap();
        for s in 0..10 {
            for x in ["0", "1"] {
                let t = random_facet_run(&c, &x.parse().unwrap(), s, 100).unwrap();
                assert!(t.steps.len() <= 1);
                assert_eq!(t.final_assignment(), "1".parse().unwrap());
            }
        }
    }

    #[test]
    fn reaches_the_peak_of_small_examples() {
        let c = two_one_way();
        for s in 0..20 {
            let t = random_facet_run(&c, &Assignment::zeros(3), s, 100).unwrap();
            assert_eq!(t.terminated, Termination::Peak);
            t.replay(&c).unwrap();
        }
    }

    struct Table(Vec<i64>);

    impl Landscape for Table {
        fn dim(&self) -> usize {
            3
        }
        fn fitness(&self, x: &Assignment) -> crate::fitness::FitnessValue {
            self.0[x.code().unwrap() as usize].into()
        }
    }

    fn permutations(k: usize) -> Vec<Vec<i64>> {
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(k - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, (k - 1) as i64);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn errors_exactly_off_semismooth_landscapes() {
        let mut caught = 0;
        for values in permutations(8) {
            let t = Table(values);
            let semismooth = crate::oracle::FitnessTable::build(&t, 16)
                .unwrap()
                .find_rse()
                .is_none();
            for seed in 0..3 {
                match random_facet_run(&t, &Assignment::zeros(3), seed, 1000) {
                    Ok(tr) => assert_eq!(tr.terminated, Termination::Peak),
                    Err(SearchError::NotSemismooth(_)) => {
                        assert!(!semismooth);
                        caught += 1;
                    }
                    Err(e) => panic!("{e}"),
                }
            }
        }
        assert!(caught > 0);
    }
}
