//! Strict partial orders on `[0, n)` with level sets, height and width.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Fixed-size bit set over `[0, n)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub(crate) struct BitRow(Vec<u64>);

impl BitRow {
    pub(crate) fn new(n: usize) -> Self {
        BitRow(vec![0; n.div_ceil(64)])
    }
    #[inline]
    pub(crate) fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
    #[inline]
    pub(crate) fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    pub(crate) fn union_with(&mut self, other: &BitRow) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }
    pub(crate) fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &bits)| {
            let mut bits = bits;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let t = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(w * 64 + t)
            })
        })
    }
}

impl fmt::Debug for BitRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A strict partial order `≺` stored as its transitive closure.
///
/// `below[j]` is the down set `↓j = {i | i ≺ j}`.
#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    n: usize,
    below: Vec<BitRow>,
    above: Vec<BitRow>,
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Poset")
            .field("n", &self.n)
            .field("hasse", &self.hasse_edges())
            .finish()
    }
}

impl Poset {
    /// The empty order: every pair incomparable.
    pub fn antichain(n: usize) -> Self {
        Poset {
            n,
            below: vec![BitRow::new(n); n],
            above: vec![BitRow::new(n); n],
        }
    }

    /// Total order `order[0] ≺ order[1] ≺ …`; `order` must be a permutation of `[0, n)`.
    pub fn chain(order: &[usize]) -> Self {
        let pairs = order.windows(2).map(|w| (w[0], w[1]));
        Poset::from_relations(order.len(), pairs).expect("a chain has no cycle")
    }

    /// Transitive closure of the relations `a ≺ b`. On a cycle, returns the
    /// elements lying on some cycle.
    pub fn from_relations(
        n: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, Vec<usize>> {
        let mut below = vec![BitRow::new(n); n];
        for (a, b) in pairs {
            assert!(
                a < n && b < n,
                "relation ({a}, {b}) out of range for {n} elements"
            );
            below[b].insert(a);
        }
        // Warshall: if k ≺ j then everything below k is below j
        for k in 0..n {
            let row_k = below[k].clone();
            for row in below.iter_mut() {
                if row.get(k) {
                    row.union_with(&row_k);
                }
            }
        }
        let cyclic: Vec<usize> = (0..n).filter(|&i| below[i].get(i)).collect();
        if !cyclic.is_empty() {
            return Err(cyclic);
        }
        let mut above = vec![BitRow::new(n); n];
        for (j, row) in below.iter().enumerate() {
            for i in row.iter() {
                above[i].insert(j);
            }
        }
        Ok(Poset { n, below, above })
    }

    /// Order in which every element of `layers[a]` precedes every element of `layers[b]` for `a < b`.
    pub fn from_layers(n: usize, layers: &[Vec<usize>]) -> Self {
        let mut p = Poset::antichain(n);
        let mut earlier = BitRow::new(n);
        for layer in layers {
            for &t in layer {
                p.below[t] = earlier.clone();
                for s in earlier.iter() {
                    p.above[s].insert(t);
                }
            }
            for &t in layer {
                earlier.insert(t);
            }
        }
        p
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// `a ≺ b`.
    pub fn less(&self, a: usize, b: usize) -> bool {
        self.below[b].get(a)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.less(a, b) || self.less(b, a)
    }

    /// `↓j = {i | i ≺ j}`, ascending.
    pub fn down_set(&self, j: usize) -> Vec<usize> {
        self.below[j].iter().collect()
    }

    /// `↑i = {j | i ⪯ j}`, ascending (includes `i`).
    pub fn up_set(&self, i: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self.above[i].iter().collect();
        let pos = v.partition_point(|&j| j < i);
        v.insert(pos, i);
        v
    }

    /// All related pairs `(a, b)` with `a ≺ b`.
    pub fn relations(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|b| self.below[b].iter().map(move |a| (a, b)))
            .collect()
    }

    /// Cover relations of the order.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        self.relations()
            .into_iter()
            .filter(|&(a, b)| !self.above[a].iter().any(|m| self.less(m, b)))
            .collect()
    }

    /// True when `self` contains every relation of `other`.
    pub fn extends(&self, other: &Poset) -> bool {
        self.n == other.n && other.relations().into_iter().all(|(a, b)| self.less(a, b))
    }

    /// True when `a ≺ b` implies `a < b` as integers.
    pub fn refines_index_order(&self) -> bool {
        self.relations().into_iter().all(|(a, b)| a < b)
    }

    /// `height(↑i)` for every `i`: the number of elements on a longest chain starting at `i`.
    fn up_heights(&self, members: &[bool]) -> Vec<usize> {
        let mut h = vec![0usize; self.n];
        // j ≻ i implies ↑j ⊊ ↑i, so increasing |↑i| is a valid processing order
        let mut order: Vec<usize> = (0..self.n).filter(|&i| members[i]).collect();
        order.sort_by_key(|&i| self.above[i].iter().filter(|&j| members[j]).count());
        for &i in &order {
            h[i] = 1 + self.above[i]
                .iter()
                .filter(|&j| members[j])
                .map(|j| h[j])
                .max()
                .unwrap_or(0);
        }
        h
    }

    /// Level sets `S_l = {i | height(↑i) = l}`, returned with `levels()[l - 1] = S_l`.
    /// `S_1` holds the maximal elements.
    pub fn levels(&self) -> Vec<Vec<usize>> {
        self.levels_of(&(0..self.n).collect::<Vec<_>>())
    }

    /// Level sets of the order restricted to `subset`.
    pub fn levels_of(&self, subset: &[usize]) -> Vec<Vec<usize>> {
        let members = self.mask(subset);
        let h = self.up_heights(&members);
        let height = subset.iter().map(|&i| h[i]).max().unwrap_or(0);
        let mut levels = vec![Vec::new(); height];
        for i in 0..self.n {
            if members[i] {
                levels[h[i] - 1].push(i);
            }
        }
        levels
    }

    /// The level `l` with `i ∈ S_l`.
    pub fn level_of(&self, i: usize) -> usize {
        self.up_heights(&vec![true; self.n])[i]
    }

    /// Length of a longest chain.
    pub fn height(&self) -> usize {
        self.height_of(&(0..self.n).collect::<Vec<_>>())
    }

    pub fn height_of(&self, subset: &[usize]) -> usize {
        let members = self.mask(subset);
        let h = self.up_heights(&members);
        subset.iter().map(|&i| h[i]).max().unwrap_or(0)
    }

    /// Size of a largest antichain.
    pub fn width(&self) -> usize {
        self.width_of(&(0..self.n).collect::<Vec<_>>())
    }

    /// Width of the order restricted to `subset`, by Dilworth's theorem: the
    /// minimum chain cover has `|subset| − ν` chains, where `ν` is a maximum matching
    /// in the bipartite graph with an edge `a → b` whenever `a ≺ b`.
    pub fn width_of(&self, subset: &[usize]) -> usize {
        let members = self.mask(subset);
        let elems: Vec<usize> = (0..self.n).filter(|&i| members[i]).collect();
        let adj: Vec<Vec<usize>> = elems
            .iter()
            .map(|&a| self.above[a].iter().filter(|&b| members[b]).collect())
            .collect();
        let mut match_right: Vec<Option<usize>> = vec![None; self.n];
        let mut matched = 0;
        for left in 0..elems.len() {
            let mut seen = vec![false; self.n];
            if augment(left, &adj, &mut match_right, &mut seen) {
                matched += 1;
            }
        }
        elems.len() - matched
    }

    fn mask(&self, subset: &[usize]) -> Vec<bool> {
        let mut m = vec![false; self.n];
        for &i in subset {
            m[i] = true;
        }
        m
    }
}

// Kuhn's augmenting path search; `left` indexes into the element list, right side is by element.
fn augment(
    left: usize,
    adj: &[Vec<usize>],
    match_right: &mut [Option<usize>],
    seen: &mut [bool],
) -> bool {
    for &b in &adj[left] {
        if seen[b] {
            continue;
        }
        seen[b] = true;
        if match_right[b].is_none_or(|l| augment(l, adj, match_right, seen)) {
            match_right[b] = Some(left);
            return true;
        }
    }
    false
}

/// Serialized form: the element count and the cover relations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct PosetRepr {
    n: usize,
    hasse: Vec<(usize, usize)>,
}

impl Serialize for Poset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PosetRepr {
            n: self.n,
            hasse: self.hasse_edges(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poset {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = PosetRepr::deserialize(d)?;
        if let Some(&(a, b)) = r.hasse.iter().find(|&&(a, b)| a >= r.n || b >= r.n) {
            return Err(serde::de::Error::custom(format!(
                "relation ({a}, {b}) out of range"
            )));
        }
        Poset::from_relations(r.n, r.hasse)
            .map_err(|c| serde::de::Error::custom(format!("cyclic relations through {c:?}")))
    }
}

/// Brute-force width and height for cross-checking on small orders.
#[cfg(test)]
pub(crate) fn brute_width_height(p: &Poset) -> (usize, usize) {
    let n = p.len();
    let mut width = 0;
    let mut height = 0;
    for mask in 0u32..(1 << n) {
        let elems: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let pairs = || {
            elems
                .iter()
                .flat_map(|&a| elems.iter().map(move |&b| (a, b)))
                .filter(|(a, b)| a != b)
        };
        if pairs().all(|(a, b)| !p.comparable(a, b)) {
            width = width.max(elems.len());
        }
        if pairs().all(|(a, b)| p.comparable(a, b)) {
            height = height.max(elems.len());
        }
    }
    (width, height)
}
