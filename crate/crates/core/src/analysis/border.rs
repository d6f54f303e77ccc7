//! Correct and border index sets relative to a `≺`-smooth certificate.

use serde::{Deserialize, Serialize};

use crate::analysis::independence::SmoothCert;
use crate::assignment::Assignment;
use crate::instance::{improving_flips, Landscape};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BorderInfo {
    /// `φ⊖(x)`: indices `i` with every `j ⪯ i` non-improving.
    pub correct: Vec<usize>,
    /// `φ⊕(x)`: improving indices whose strict down set is entirely non-improving.
    pub border: Vec<usize>,
    /// Height of `≺` restricted to the free indices `[n] ∖ φ⊖(x)`.
    pub height: usize,
    /// Width of `≺` restricted to the free indices.
    pub width: usize,
}

impl BorderInfo {
    pub fn free(&self, n: usize) -> Vec<usize> {
        let mut correct = vec![false; n];
        for &i in &self.correct {
            correct[i] = true;
        }
        (0..n).filter(|&i| !correct[i]).collect()
    }
}

pub fn correct_border<L: Landscape + ?Sized>(
    f: &L,
    cert: &SmoothCert,
    x: &Assignment,
) -> BorderInfo {
    let n = f.dim();
    assert_eq!(x.len(), n, "assignment length does not match landscape");
    let mut improving = vec![false; n];
    for i in improving_flips(f, x) {
        improving[i] = true;
    }
    let order = &cert.order;
    let below_clean = |i: usize| order.down_set(i).into_iter().all(|j| !improving[j]);
    let correct: Vec<usize> = (0..n)
        .filter(|&i| !improving[i] && below_clean(i))
        .collect();
    let border: Vec<usize> = (0..n).filter(|&i| improving[i] && below_clean(i)).collect();
    let mut is_correct = vec![false; n];
    for &i in &correct {
        is_correct[i] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&i| !is_correct[i]).collect();
    BorderInfo {
        height: order.height_of(&free),
        width: order.width_of(&free),
        correct,
        border,
    }
}

/// `height_f(x)`.
pub fn free_height<L: Landscape + ?Sized>(f: &L, cert: &SmoothCert, x: &Assignment) -> usize {
    correct_border(f, cert, x).height
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::independence::conditionally_smooth;
    use crate::instance::test_instances::one_way;

    #[test]
    fn at_the_peak_everything_is_correct() {
        let c = one_way();
        let cert = conditionally_smooth(&c).unwrap();
        let b = correct_border(&c, &cert, &cert.peak);
        assert_eq!(b.correct, vec![0, 1]);
        assert!(b.border.is_empty());
        assert_eq!((b.height, b.width), (0, 0));
    }

    #[test]
    fn one_way_from_zero() {
        let c = one_way();
        let cert = conditionally_smooth(&c).unwrap();
        let b = correct_border(&c, &cert, &Assignment::zeros(2));
        assert_eq!(b.border, vec![0]);
        assert!(b.correct.is_empty());
        assert_eq!((b.height, b.width), (2, 1));
        // at 11 only j is wrong, and i below it is already correct
        let b = correct_border(&c, &cert, &"11".parse().unwrap());
        assert_eq!((b.correct.clone(), b.border.clone()), (vec![0], vec![1]));
        assert_eq!(b.free(2), vec![1]);
        assert_eq!(b.height, 1);
    }
}
