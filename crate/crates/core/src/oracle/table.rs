use rayon::prelude::*;

use crate::assignment::Assignment;
use crate::error::OracleError;
use crate::fitness::FitnessValue;
use crate::instance::Landscape;

/// Dimension limits for exhaustive enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    /// Limit for checks that sweep `{0,1}^n` once per index pair or per face.
    pub sweep_cap: usize,
    /// Limit for checks that make a single pass over a fitness table.
    pub single_pass_cap: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            sweep_cap: 16,
            single_pass_cap: 22,
        }
    }
}

impl OracleConfig {
    pub(crate) fn check_sweep(&self, n: usize) -> Result<(), OracleError> {
        check(n, self.sweep_cap)
    }
}

fn check(n: usize, cap: usize) -> Result<(), OracleError> {
    if n > cap || n >= 32 {
        Err(OracleError::DimensionCap { n, cap })
    } else {
        Ok(())
    }
}

/// Fitness of every assignment, indexed by its bit code (bit `i` is variable `i`).
#[derive(Clone, Debug)]
pub struct FitnessTable {
    n: usize,
    values: Vec<FitnessValue>,
}

impl FitnessTable {
    pub fn build<L: Landscape + ?Sized>(f: &L, cap: usize) -> Result<Self, OracleError> {
        let n = f.dim();
        check(n, cap)?;
        let values = (0..1u64 << n)
            .into_par_iter()
            .map(|code| f.fitness(&Assignment::from_code(n, code)))
            .collect();
        Ok(FitnessTable { n, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[inline]
    pub fn value(&self, code: usize) -> &FitnessValue {
        &self.values[code]
    }

    /// Flipping `i` at `code` strictly increases fitness.
    #[inline]
    pub fn improves(&self, code: usize, i: usize) -> bool {
        self.values[code ^ (1 << i)] > self.values[code]
    }

    /// Bit mask of `φ⁻` at `code`.
    pub fn non_improving_mask(&self, code: usize) -> u32 {
        (0..self.n)
            .filter(|&i| !self.improves(code, i))
            .fold(0, |m, i| m | 1 << i)
    }

    pub fn is_peak(&self, code: usize) -> bool {
        (0..self.n).all(|i| !self.improves(code, i))
    }

    pub fn assignment(&self, code: usize) -> Assignment {
        Assignment::from_code(self.n, code as u64)
    }

    /// Codes ordered by decreasing fitness, ties by increasing code.
    pub(crate) fn descending_order(&self) -> Vec<u32> {
        let mut order: Vec<u32> = (0..self.values.len() as u32).collect();
        order.par_sort_unstable_by(|&a, &b| {
            self.values[b as usize]
                .cmp(&self.values[a as usize])
                .then(a.cmp(&b))
        });
        order
    }
}

/// Iterates the submasks of `mask`, including 0 and `mask` itself.
pub(crate) fn submasks(mask: usize) -> impl Iterator<Item = usize> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            Some((cur - 1) & mask)
        };
        Some(cur)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn submask_enumeration() {
        let mut v: Vec<usize> = submasks(0b1010).collect();
        v.sort_unstable();
        assert_eq!(v, vec![0, 0b10, 0b1000, 0b1010]);
        assert_eq!(submasks(0).collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn caps() {
        let cfg = OracleConfig::default();
        assert!(cfg.check_sweep(16).is_ok());
        assert_eq!(
            cfg.check_sweep(17),
            Err(OracleError::DimensionCap { n: 17, cap: 16 })
        );
    }
}
