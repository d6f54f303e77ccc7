//! Binary Boolean VCSP instances and the fitness landscapes they implement.

use std::collections::BTreeMap;

use crate::assignment::{Assignment, PartialAssignment};
use crate::error::CoreError;
use crate::fitness::FitnessValue;

/// A fitness function on `{0,1}^dim` with single-bit-flip adjacency.
pub trait Landscape: Sync {
    fn dim(&self) -> usize;

    /// Exact fitness; panics if `x.len() != self.dim()`.
    fn fitness(&self, x: &Assignment) -> FitnessValue;

    /// `f(x[i ↦ ¬x_i]) − f(x)`. Implementations may override with a cheaper local formula.
    fn flip_gain(&self, x: &Assignment, i: usize) -> FitnessValue {
        &self.fitness(&x.flipped(i)) - &self.fitness(x)
    }
}

impl<L: Landscape + ?Sized> Landscape for &L {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn fitness(&self, x: &Assignment) -> FitnessValue {
        (**self).fitness(x)
    }
    fn flip_gain(&self, x: &Assignment, i: usize) -> FitnessValue {
        (**self).flip_gain(x, i)
    }
}

impl<L: Landscape + ?Sized + Send> Landscape for Box<L> {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn fitness(&self, x: &Assignment) -> FitnessValue {
        (**self).fitness(x)
    }
    fn flip_gain(&self, x: &Assignment, i: usize) -> FitnessValue {
        (**self).flip_gain(x, i)
    }
}

/// Improving (`φ⁺`) and non-improving (`φ⁻`) flips at an assignment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlipMaps {
    pub improving: Vec<usize>,
    pub worsening: Vec<usize>,
}

/// Splits `[0, n)` into strictly improving flips and the rest. A flip that leaves
/// fitness unchanged counts as worsening.
pub fn out_in_maps<L: Landscape + ?Sized>(f: &L, x: &Assignment) -> FlipMaps {
    assert_eq!(
        x.len(),
        f.dim(),
        "assignment length does not match landscape"
    );
    let (improving, worsening) = (0..f.dim()).partition(|&i| f.flip_gain(x, i).is_positive());
    FlipMaps {
        improving,
        worsening,
    }
}

pub fn improving_flips<L: Landscape + ?Sized>(f: &L, x: &Assignment) -> Vec<usize> {
    (0..f.dim())
        .filter(|&i| f.flip_gain(x, i).is_positive())
        .collect()
}

pub fn is_local_peak<L: Landscape + ?Sized>(f: &L, x: &Assignment) -> bool {
    (0..f.dim()).all(|i| !f.flip_gain(x, i).is_positive())
}

/// Weighted unary and binary constraints over `n` Boolean variables.
///
/// Stored weights are never zero; an absent constraint has weight 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VcspInstance {
    n: usize,
    unary: Vec<FitnessValue>,
    binary: BTreeMap<(usize, usize), FitnessValue>,
    adjacency: Vec<Vec<(usize, FitnessValue)>>,
}

impl VcspInstance {
    pub fn new(n: usize) -> Self {
        VcspInstance {
            n,
            unary: vec![FitnessValue::ZERO; n],
            binary: BTreeMap::new(),
            adjacency: vec![Vec::new(); n],
        }
    }

    /// Builds an instance from `(scope, weight)` pairs; rejects bad scopes, duplicates and zero weights.
    pub fn from_constraints<I, W>(n: usize, constraints: I) -> Result<Self, CoreError>
    where
        I: IntoIterator<Item = (Vec<usize>, W)>,
        W: Into<FitnessValue>,
    {
        let mut c = VcspInstance::new(n);
        for (scope, w) in constraints {
            c.add_constraint(&scope, w.into())?;
        }
        Ok(c)
    }

    pub fn add_constraint(&mut self, scope: &[usize], w: FitnessValue) -> Result<(), CoreError> {
        match *scope {
            [i] => self.add_unary(i, w),
            [i, j] => self.add_binary(i, j, w),
            _ => Err(CoreError::BadScope(scope.to_vec())),
        }
    }

    pub fn add_unary(&mut self, i: usize, w: impl Into<FitnessValue>) -> Result<(), CoreError> {
        let w = w.into();
        self.check_index(i)?;
        if w.is_zero() {
            return Err(CoreError::ZeroWeight(vec![i]));
        }
        if !self.unary[i].is_zero() {
            return Err(CoreError::DuplicateScope(vec![i]));
        }
        self.unary[i] = w;
        Ok(())
    }

    pub fn add_binary(
        &mut self,
        i: usize,
        j: usize,
        w: impl Into<FitnessValue>,
    ) -> Result<(), CoreError> {
        let w = w.into();
        self.check_index(i)?;
        self.check_index(j)?;
        if i == j {
            return Err(CoreError::BadScope(vec![i, j]));
        }
        let key = (i.min(j), i.max(j));
        if w.is_zero() {
            return Err(CoreError::ZeroWeight(vec![key.0, key.1]));
        }
        if self.binary.contains_key(&key) {
            return Err(CoreError::DuplicateScope(vec![key.0, key.1]));
        }
        self.binary.insert(key, w.clone());
        for (a, b) in [(i, j), (j, i)] {
            let row = &mut self.adjacency[a];
            let pos = row.partition_point(|(k, _)| *k < b);
            row.insert(pos, (b, w.clone()));
        }
        Ok(())
    }

    fn check_index(&self, i: usize) -> Result<(), CoreError> {
        if i < self.n {
            Ok(())
        } else {
            Err(CoreError::IndexOutOfRange {
                index: i,
                n: self.n,
            })
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `c_i`, zero when absent.
    pub fn unary(&self, i: usize) -> &FitnessValue {
        &self.unary[i]
    }

    /// `c_{ij}`, zero when absent.
    pub fn binary(&self, i: usize, j: usize) -> FitnessValue {
        self.binary
            .get(&(i.min(j), i.max(j)))
            .cloned()
            .unwrap_or_default()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.binary.contains_key(&(i.min(j), i.max(j)))
    }

    /// Edges `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.binary.keys().copied()
    }

    pub fn binary_constraints(&self) -> impl Iterator<Item = ((usize, usize), &FitnessValue)> {
        self.binary.iter().map(|(k, v)| (*k, v))
    }

    pub fn unary_constraints(&self) -> impl Iterator<Item = (usize, &FitnessValue)> {
        self.unary.iter().enumerate().filter(|(_, w)| !w.is_zero())
    }

    pub fn num_edges(&self) -> usize {
        self.binary.len()
    }

    /// Neighbours of `i` with the connecting weight, ascending by index.
    pub fn neighbors(&self, i: usize) -> &[(usize, FitnessValue)] {
        &self.adjacency[i]
    }

    pub fn neighbor_indices(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[i].iter().map(|(j, _)| *j)
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].len()
    }

    /// Maximum degree `Δ` of the constraint graph.
    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Checked evaluation of `Σ c_S Π_{j∈S} x_j`.
    pub fn evaluate(&self, x: &Assignment) -> Result<FitnessValue, CoreError> {
        x.check_len(self.n)?;
        Ok(self.fitness(x))
    }

    /// `f(x[i ↦ ¬x_i]) − f(x)` computed from the constraints incident on `i`.
    pub fn fitness_delta(&self, x: &Assignment, i: usize) -> Result<FitnessValue, CoreError> {
        x.check_len(self.n)?;
        self.check_index(i)?;
        Ok(self.flip_gain(x, i))
    }

    /// Effective unary `ĉ_i(x, S) = c_i + Σ_{j∈N(i)∖S} x_j c_{ij}`.
    pub fn effective_unary(
        &self,
        i: usize,
        x: &Assignment,
        excluded: &[usize],
    ) -> Result<FitnessValue, CoreError> {
        x.check_len(self.n)?;
        self.check_index(i)?;
        let mut acc = self.unary[i].clone();
        for (j, w) in &self.adjacency[i] {
            if x.get(*j) && !excluded.contains(j) {
                acc += w;
            }
        }
        Ok(acc)
    }

    /// Effective unary for a partial assignment. Coordinates outside `N(i)∖S` are
    /// irrelevant (read as 0); every coordinate in `N(i)∖S` must be defined.
    pub fn effective_unary_partial(
        &self,
        i: usize,
        y: &PartialAssignment,
        excluded: &[usize],
    ) -> Result<FitnessValue, CoreError> {
        if y.len() != self.n {
            return Err(CoreError::DimensionMismatch {
                expected: self.n,
                found: y.len(),
            });
        }
        self.check_index(i)?;
        let mut acc = self.unary[i].clone();
        for (j, w) in &self.adjacency[i] {
            if excluded.contains(j) {
                continue;
            }
            match y.get(*j) {
                None => return Err(CoreError::Undefined(*j)),
                Some(true) => acc += w,
                Some(false) => {}
            }
        }
        Ok(acc)
    }

    /// `ĉ_i(x, {i})` without bounds checks: the gain of setting `x_i` from 0 to 1.
    #[inline]
    pub(crate) fn local_field(&self, x: &Assignment, i: usize) -> FitnessValue {
        let mut acc = self.unary[i].clone();
        for (j, w) in &self.adjacency[i] {
            if x.get(*j) {
                acc += w;
            }
        }
        acc
    }

    /// True when no single flip anywhere leaves fitness unchanged, i.e. no
    /// `c_i + Σ_{j∈T} c_{ij}` vanishes for any `T ⊆ N(i)`. Costs `Σ_i 2^{deg(i)}`.
    pub fn is_tie_free(&self) -> bool {
        (0..self.n).all(|i| {
            let ws: Vec<&FitnessValue> = self.adjacency[i].iter().map(|(_, w)| w).collect();
            let mut field = self.unary[i].clone();
            if field.is_zero() {
                return false;
            }
            // Gray-code walk over subsets of N(i)
            let mut gray = 0u64;
            for k in 1u64..(1u64 << ws.len()) {
                let bit = k.trailing_zeros() as usize;
                if gray >> bit & 1 == 1 {
                    field -= ws[bit];
                } else {
                    field += ws[bit];
                }
                gray ^= 1 << bit;
                if field.is_zero() {
                    return false;
                }
            }
            true
        })
    }

    /// True when the constraint graph has no triangle.
    pub fn is_triangle_free(&self) -> bool {
        self.edges().all(|(i, j)| {
            let ni = &self.adjacency[i];
            !self.adjacency[j]
                .iter()
                .any(|(k, _)| ni.iter().any(|(m, _)| m == k))
        })
    }

    /// True when the constraint graph is a forest.
    pub fn is_forest(&self) -> bool {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut a: usize) -> usize {
            while p[a] != a {
                p[a] = p[p[a]];
                a = p[a];
            }
            a
        }
        for (i, j) in self.edges() {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a == b {
                return false;
            }
            parent[a] = b;
        }
        true
    }
}

impl Landscape for VcspInstance {
    fn dim(&self) -> usize {
        self.n
    }

    fn fitness(&self, x: &Assignment) -> FitnessValue {
        assert_eq!(x.len(), self.n, "assignment length does not match instance");
        let mut acc = FitnessValue::ZERO;
        for i in x.ones_indices() {
            acc += &self.unary[i];
            for (j, w) in &self.adjacency[i] {
                if *j > i && x.get(*j) {
                    acc += w;
                }
            }
        }
        acc
    }

    #[inline]
    fn flip_gain(&self, x: &Assignment, i: usize) -> FitnessValue {
        let field = self.local_field(x, i);
        if x.get(i) {
            -field
        } else {
            field
        }
    }
}
