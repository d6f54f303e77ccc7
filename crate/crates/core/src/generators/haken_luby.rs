//! Chains of Haken-Luby gadgets: oriented VCSPs with exponentially long
//! steepest ascents.
//!
//! Gadget `k ∈ 1..=g` owns variables `(k, 1..=7)`, stored at index `7(k − 1) + (i − 1)`.

use serde_json::json;

use crate::error::GeneratorError;
use crate::fitness::FitnessValue;
use crate::instance::VcspInstance;

/// 0-based index of variable `(k, i)`, with `k ≥ 1` and `1 ≤ i ≤ 7`.
pub fn hl_index(k: usize, i: usize) -> usize {
    assert!(k >= 1 && (1..=7).contains(&i), "no variable ({k}, {i})");
    7 * (k - 1) + (i - 1)
}

/// `M_k = 5(6^k − 6)/6`, so `M_1 = 0`.
pub fn hl_m(k: usize) -> FitnessValue {
    FitnessValue::pow(6, (k - 1) as u32) * 5 - 5
}

pub fn haken_luby(g: usize) -> Result<VcspInstance, GeneratorError> {
    if g == 0 {
        return Err(GeneratorError::InvalidInput(
            "gadget count must be at least 1".into(),
        ));
    }
    let big_k = FitnessValue::from((2 * g + 1) as i64);
    let mut c = VcspInstance::new(7 * g);
    for k in 1..=g {
        let m = hl_m(k);
        let eps = (g + 1 - k) as i64;
        // (a·M + b)·K
        let lin = |a: i64, b: i64| (&m * a + b) * &big_k;
        let id = |i| hl_index(k, i);

        let top = lin(6, 24);
        c.add_unary(id(1), if k == g { top } else { -top })?;
        c.add_unary(id(2), -(lin(3, 10) + eps))?;
        c.add_unary(id(3), -lin(3, 11))?;
        c.add_unary(id(4), -lin(3, 9))?;
        c.add_unary(id(5), -lin(2, 7))?;
        c.add_unary(id(6), -lin(3, 9))?;
        c.add_unary(id(7), -lin(1, 1))?;

        c.add_binary(id(1), id(2), lin(3, 10) + 2 * eps)?;
        c.add_binary(id(1), id(3), lin(3, 12))?;
        c.add_binary(id(2), id(4), lin(3, 10))?;
        c.add_binary(id(3), id(6), lin(3, 10))?;
        c.add_binary(id(4), id(5), lin(2, 6))?;
        c.add_binary(id(6), id(5), lin(2, 6))?;
        c.add_binary(id(4), id(7), lin(1, 2))?;
        c.add_binary(id(6), id(7), lin(1, 2))?;
        c.add_binary(id(5), id(7), -lin(2, 4))?;

        if k >= 2 {
            // the link weight has two closed forms; they must agree
            let link = &m * &big_k;
            let prev = hl_m(k - 1);
            let alt = (prev * 6 + 25) * &big_k;
            assert_eq!(link, alt, "chain link weights disagree at gadget {k}");
            c.add_binary(id(7), hl_index(k - 1, 1), link)?;
        }
    }
    Ok(c)
}

/// Bag sequence of width 3, listed from gadget `g` down to gadget 1.
pub fn haken_luby_path_decomposition(g: usize) -> Vec<Vec<usize>> {
    let mut bags: Vec<Vec<usize>> = Vec::new();
    for k in (1..=g).rev() {
        let id = |i| hl_index(k, i);
        let mut gadget = Vec::new();
        if k < g {
            gadget.push(vec![hl_index(k + 1, 7), id(1)]);
        }
        gadget.push(vec![id(1), id(2), id(3), id(4)]);
        gadget.push(vec![id(3), id(4), id(5), id(6)]);
        gadget.push(vec![id(4), id(5), id(6), id(7)]);
        if k > 1 {
            gadget.push(vec![id(7), hl_index(k - 1, 1)]);
        }
        for bag in gadget {
            if bags.last() != Some(&bag) {
                bags.push(bag);
            }
        }
    }
    bags
}

pub fn haken_luby_metadata(g: usize) -> serde_json::Value {
    let mapping: Vec<String> = (1..=g)
        .flat_map(|k| (1..=7).map(move |i| format!("({k},{i})")))
        .collect();
    json!({
        "family": "haken_luby",
        "parameters": {"g": g},
        "index_mapping": mapping,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::verify_path_decomposition;
    use crate::assignment::Assignment;

    #[test]
    fn single_gadget_weights() {
        let c = haken_luby(1).unwrap();
        assert_eq!(c.n(), 7);
        assert_eq!(*c.unary(hl_index(1, 1)), 72);
        assert_eq!(c.binary(hl_index(1, 5), hl_index(1, 7)), -12);
        assert_eq!(c.binary(hl_index(1, 1), hl_index(1, 2)), 32);
        assert_eq!(*c.unary(hl_index(1, 2)), -31);
        assert_eq!(c.num_edges(), 9);
    }

    #[test]
    fn constants() {
        assert_eq!(hl_m(1), 0);
        assert_eq!(hl_m(2), 25);
        assert_eq!(hl_m(3), 175);
        // 5(6^40 − 6)/6 = 5·6^39 − 5
        let big = hl_m(40);
        assert!(big.to_i64().is_none());
        assert_eq!(big.to_string(), "11139578782369778389865704980475");
    }

    #[test]
    fn chain_links() {
        let c = haken_luby(3).unwrap();
        assert_eq!(c.n(), 21);
        // K = 7, M_2 = 25, M_3 = 175
        assert_eq!(c.binary(hl_index(2, 7), hl_index(1, 1)), 175);
        assert_eq!(c.binary(hl_index(3, 7), hl_index(2, 1)), 1225);
        assert!(!c.has_edge(hl_index(1, 7), hl_index(1, 1)));
        assert!(c.unary(hl_index(3, 1)).is_positive());
        assert!(c.unary(hl_index(2, 1)).is_negative());
    }

    #[test]
    fn path_decompositions() {
        assert_eq!(haken_luby_path_decomposition(1).len(), 3);
        for g in 1..=4 {
            let c = haken_luby(g).unwrap();
            let check = verify_path_decomposition(&c, &haken_luby_path_decomposition(g));
            assert!(check.valid, "g = {g}: {:?}", check.problem);
            assert_eq!(check.width, 3);
        }
    }

    #[test]
    fn worked_effective_unaries() {
        let g = 4;
        let c = haken_luby(g).unwrap();
        let big_k = FitnessValue::from(9i64);
        for k in 1..=g {
            let m = hl_m(k);
            let s = [hl_index(k, 5), hl_index(k, 7)];
            let mut x = Assignment::zeros(c.n());
            x.set(hl_index(k, 4), true);
            x.set(hl_index(k, 6), true);
            let want = (&m * 2 + 5) * &big_k;
            assert_eq!(c.effective_unary(hl_index(k, 5), &x, &s).unwrap(), want);
            let mut y = Assignment::zeros(c.n());
            y.set(hl_index(k, 4), true);
            assert_eq!(c.effective_unary(hl_index(k, 7), &y, &s).unwrap(), big_k);
        }
    }

    #[test]
    fn rejects_zero_gadgets() {
        assert!(haken_luby(0).is_err());
    }
}
