//! Finite posets with at most [`MAX_POINTS`] points.
//!
//! Each point stores the bitmask of the points below it and above it, so
//! closures, downsets and induced subposets are a handful of word operations.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Largest number of points a poset may have (one bit per point in a `u32`).
pub const MAX_POINTS: usize = 24;

/// A set of points, one bit per point index.
pub type Mask = u32;

#[inline]
pub fn bit(i: usize) -> Mask {
    1 << i
}

/// Iterates over the indices of the set bits of `m`, lowest first.
pub fn bits(mut m: Mask) -> impl Iterator<Item = usize> {
    core::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinPoset {
    names: Vec<String>,
    /// `down[i]` holds every `j` with `j ≤ i`, including `i`.
    down: Vec<Mask>,
    /// `up[i]` holds every `j` with `i ≤ j`, including `i`.
    up: Vec<Mask>,
}

impl FinPoset {
    /// Builds a poset from pairs `(i, j)` meaning `i ≤ j`; the reflexive-transitive
    /// closure is taken and antisymmetry is checked.
    pub fn new(names: Vec<String>, relations: &[(usize, usize)]) -> Result<Self> {
        let n = names.len();
        if n > MAX_POINTS {
            return Err(Error::Capacity(format!(
                "{n} points, at most {MAX_POINTS} supported"
            )));
        }
        let mut seen = BTreeMap::new();
        for (i, name) in names.iter().enumerate() {
            if seen.insert(name.as_str(), i).is_some() {
                return Err(Error::Invalid(format!("duplicate point name {name:?}")));
            }
        }
        let mut down: Vec<Mask> = (0..n).map(bit).collect();
        for &(i, j) in relations {
            if i >= n || j >= n {
                return Err(Error::Invalid(format!("relation ({i}, {j}) out of range")));
            }
            down[j] |= bit(i);
        }
        // Warshall on bit rows.
        for k in 0..n {
            for i in 0..n {
                if down[i] & bit(k) != 0 {
                    down[i] |= down[k];
                }
            }
        }
        for i in 0..n {
            for j in bits(down[i]) {
                if j != i && down[j] & bit(i) != 0 {
                    return Err(Error::Invalid(format!(
                        "order relation is cyclic between {:?} and {:?}",
                        names[i], names[j]
                    )));
                }
            }
        }
        Ok(Self::from_down_rows(names, down))
    }

    /// Poset with points `p0, p1, …` and the given `(i, j)` relations meaning `i ≤ j`.
    pub fn unnamed(n: usize, relations: &[(usize, usize)]) -> Result<Self> {
        Self::new((0..n).map(|i| format!("p{i}")).collect(), relations)
    }

    /// Builds a poset from named covering pairs `(a, b)` meaning `a < b`.
    pub fn from_covers(points: &[&str], covers: &[(&str, &str)]) -> Result<Self> {
        let names: Vec<String> = points.iter().map(|s| s.to_string()).collect();
        let index = |s: &str| {
            names
                .iter()
                .position(|p| p == s)
                .ok_or_else(|| Error::Invalid(format!("unknown point {s:?}")))
        };
        let mut rel = Vec::with_capacity(covers.len());
        for (a, b) in covers {
            rel.push((index(a)?, index(b)?));
        }
        Self::new(names, &rel)
    }

    pub fn antichain(n: usize) -> Result<Self> {
        Self::unnamed(n, &[])
    }

    pub fn chain(n: usize) -> Result<Self> {
        let rel: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::unnamed(n, &rel)
    }

    fn from_down_rows(names: Vec<String>, down: Vec<Mask>) -> Self {
        let n = down.len();
        let mut up = alloc::vec![0; n];
        for (i, &d) in down.iter().enumerate() {
            for j in bits(d) {
                up[j] |= bit(i);
            }
        }
        FinPoset { names, down, up }
    }

    pub fn len(&self) -> usize {
        self.down.len()
    }

    pub fn is_empty(&self) -> bool {
        self.down.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|p| p == name)
    }

    /// Mask of every point.
    pub fn full(&self) -> Mask {
        if self.len() == 32 {
            Mask::MAX
        } else {
            bit(self.len()) - 1
        }
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.down[j] & bit(i) != 0
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    /// Points below `i`, including `i`.
    pub fn down(&self, i: usize) -> Mask {
        self.down[i]
    }

    /// Points above `i`, including `i`.
    pub fn up(&self, i: usize) -> Mask {
        self.up[i]
    }

    pub fn down_closure(&self, m: Mask) -> Mask {
        bits(m).fold(0, |acc, i| acc | self.down[i])
    }

    pub fn up_closure(&self, m: Mask) -> Mask {
        bits(m).fold(0, |acc, i| acc | self.up[i])
    }

    pub fn is_downset(&self, m: Mask) -> bool {
        m & !self.full() == 0 && self.down_closure(m) == m
    }

    pub fn is_upset(&self, m: Mask) -> bool {
        m & !self.full() == 0 && self.up_closure(m) == m
    }

    /// Points of `m` with nothing strictly above them inside `m`.
    pub fn maximal_in(&self, m: Mask) -> Mask {
        bits(m)
            .filter(|&i| self.up[i] & m == bit(i))
            .fold(0, |acc, i| acc | bit(i))
    }

    /// Points of `m` with nothing strictly below them inside `m`.
    pub fn minimal_in(&self, m: Mask) -> Mask {
        bits(m)
            .filter(|&i| self.down[i] & m == bit(i))
            .fold(0, |acc, i| acc | bit(i))
    }

    pub fn maximal(&self) -> Mask {
        self.maximal_in(self.full())
    }

    pub fn minimal(&self) -> Mask {
        self.minimal_in(self.full())
    }

    /// Covering pairs `(i, j)`: `i < j` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for j in 0..self.len() {
            let strict = self.down[j] & !bit(j);
            for i in bits(self.maximal_in(strict)) {
                out.push((i, j));
            }
        }
        out.sort_unstable();
        out
    }

    /// The subposet on the points of `m`, together with the index in `self` of
    /// each of its points (in increasing order).
    pub fn induced(&self, m: Mask) -> (FinPoset, Vec<usize>) {
        let emb: Vec<usize> = bits(m & self.full()).collect();
        let names = emb.iter().map(|&i| self.names[i].clone()).collect();
        let down = emb
            .iter()
            .map(|&i| compress(self.down[i] & m, &emb))
            .collect();
        (Self::from_down_rows(names, down), emb)
    }

    /// The same points with the order reversed.
    pub fn opposite(&self) -> FinPoset {
        FinPoset {
            names: self.names.clone(),
            down: self.up.clone(),
            up: self.down.clone(),
        }
    }

    /// Points listed so that every point comes after all points below it.
    pub fn linear_extension(&self, m: Mask) -> Vec<usize> {
        let mut pts: Vec<usize> = bits(m).collect();
        pts.sort_by_key(|&i| (self.down[i].count_ones(), i));
        pts
    }

    /// Number of edges in a longest chain of `m`, or `-1` when `m` is empty.
    pub fn height_in(&self, m: Mask) -> i32 {
        let mut len = [0i32; 32];
        let mut best = -1;
        for i in self.linear_extension(m) {
            let below = self.down[i] & m & !bit(i);
            let l = bits(below).map(|j| len[j] + 1).max().unwrap_or(0);
            len[i] = l;
            best = best.max(l);
        }
        best
    }

    pub fn height(&self) -> i32 {
        self.height_in(self.full())
    }

    /// All downsets of the subposet on `m`, as masks in `self`'s indexing.
    pub fn downsets_in(&self, m: Mask) -> Vec<Mask> {
        let order = self.linear_extension(m);
        let mut out = Vec::new();
        fn rec(p: &FinPoset, m: Mask, order: &[usize], cur: Mask, out: &mut Vec<Mask>) {
            match order.split_first() {
                None => out.push(cur),
                Some((&i, rest)) => {
                    rec(p, m, rest, cur, out);
                    let below = p.down[i] & m & !bit(i);
                    if below & !cur == 0 {
                        rec(p, m, rest, cur | bit(i), out);
                    }
                }
            }
        }
        rec(self, m, &order, 0, &mut out);
        out.sort_unstable();
        out
    }

    pub fn downsets(&self) -> Vec<Mask> {
        self.downsets_in(self.full())
    }

    /// A labelling-independent description of the poset: two posets are
    /// isomorphic exactly when their canonical forms are equal.
    pub fn canonical_form(&self) -> CanonicalForm {
        canonical_form(self)
    }

    pub fn is_isomorphic(&self, other: &FinPoset) -> bool {
        self.len() == other.len()
            && self.down.iter().map(|d| d.count_ones()).sum::<u32>()
                == other.down.iter().map(|d| d.count_ones()).sum::<u32>()
            && self.canonical_form() == other.canonical_form()
    }
}

/// Re-indexes a mask of `emb`-points into `0..emb.len()`.
pub fn compress(m: Mask, emb: &[usize]) -> Mask {
    emb.iter()
        .enumerate()
        .filter(|(_, &i)| m & bit(i) != 0)
        .fold(0, |acc, (k, _)| acc | bit(k))
}

/// Inverse of [`compress`].
pub fn expand(m: Mask, emb: &[usize]) -> Mask {
    bits(m).fold(0, |acc, k| acc | bit(emb[k]))
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    /// Row `k` is the down-set of the `k`-th point in canonical order.
    pub rows: Vec<Mask>,
}

fn canonical_form(p: &FinPoset) -> CanonicalForm {
    let n = p.len();
    let initial: Vec<u32> = (0..n)
        .map(|i| (p.down[i].count_ones() << 8) | p.up[i].count_ones())
        .collect();
    let mut best: Option<Vec<Mask>> = None;
    search(p, rank(&initial), &mut best);
    CanonicalForm {
        rows: best.unwrap_or_default(),
    }
}

/// Replaces arbitrary colour values by their rank among the distinct values.
fn rank(colors: &[u32]) -> Vec<u32> {
    let mut vals: Vec<u32> = colors.to_vec();
    vals.sort_unstable();
    vals.dedup();
    colors
        .iter()
        .map(|c| vals.binary_search(c).unwrap() as u32)
        .collect()
}

fn refine(p: &FinPoset, mut colors: Vec<u32>) -> Vec<u32> {
    let n = p.len();
    loop {
        let classes = colors
            .iter()
            .collect::<alloc::collections::BTreeSet<_>>()
            .len();
        let mut sigs: Vec<(u32, Vec<u32>, Vec<u32>)> = Vec::with_capacity(n);
        for i in 0..n {
            let mut below: Vec<u32> = bits(p.down[i] & !bit(i)).map(|j| colors[j]).collect();
            let mut above: Vec<u32> = bits(p.up[i] & !bit(i)).map(|j| colors[j]).collect();
            below.sort_unstable();
            above.sort_unstable();
            sigs.push((colors[i], below, above));
        }
        let mut distinct = sigs.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<u32> = sigs
            .iter()
            .map(|s| distinct.binary_search(s).unwrap() as u32)
            .collect();
        if distinct.len() == classes {
            return next;
        }
        colors = next;
    }
}

fn search(p: &FinPoset, colors: Vec<u32>, best: &mut Option<Vec<Mask>>) {
    let colors = refine(p, colors);
    let n = p.len();
    let mut counts = alloc::vec![0usize; n];
    for &c in &colors {
        counts[c as usize] += 1;
    }
    let Some(cell) = (0..n).find(|&c| counts[c] > 1) else {
        // Discrete colouring: colour = canonical position.
        let mut pos = alloc::vec![0usize; n];
        for (i, &c) in colors.iter().enumerate() {
            pos[c as usize] = i;
        }
        let perm: Vec<usize> = colors.iter().map(|&c| c as usize).collect();
        let rows: Vec<Mask> = pos
            .iter()
            .map(|&i| bits(p.down[i]).fold(0, |acc, j| acc | bit(perm[j])))
            .collect();
        if best.as_ref().is_none_or(|b| rows < *b) {
            *best = Some(rows);
        }
        return;
    };
    let members: Vec<usize> = (0..n).filter(|&i| colors[i] as usize == cell).collect();
    let mut tried: Vec<usize> = Vec::new();
    for &v in &members {
        // Twins (same strict down- and up-sets) are swapped by an automorphism.
        let twin = tried.iter().any(|&u| {
            p.down[u] & !bit(u) == p.down[v] & !bit(v) && p.up[u] & !bit(u) == p.up[v] & !bit(v)
        });
        if twin {
            continue;
        }
        tried.push(v);
        let split: Vec<u32> = colors
            .iter()
            .enumerate()
            .map(|(i, &c)| if i == v { 2 * c } else { 2 * c + 1 })
            .collect();
        search(p, rank(&split), best);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_and_cycles() {
        let p = FinPoset::unnamed(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(p.leq(0, 2));
        assert_eq!(p.height(), 2);
        assert!(FinPoset::unnamed(2, &[(0, 1), (1, 0)]).is_err());
        assert!(FinPoset::antichain(25).is_err());
    }

    #[test]
    fn downsets_of_small_posets() {
        assert_eq!(FinPoset::antichain(2).unwrap().downsets().len(), 4);
        assert_eq!(FinPoset::chain(4).unwrap().downsets().len(), 5);
        let v = FinPoset::unnamed(3, &[(0, 1), (0, 2)]).unwrap();
        // ∅, {0}, {0,1}, {0,2}, {0,1,2}
        assert_eq!(v.downsets().len(), 5);
    }

    #[test]
    fn covers_drop_transitive_edges() {
        let p = FinPoset::unnamed(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(p.covers(), alloc::vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn canonical_form_ignores_labels() {
        let a = FinPoset::unnamed(4, &[(0, 1), (0, 2), (3, 2)]).unwrap();
        let b = FinPoset::unnamed(4, &[(3, 2), (3, 0), (1, 0)]).unwrap();
        let c = FinPoset::unnamed(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(a.is_isomorphic(&b));
        assert!(!a.is_isomorphic(&c));
        assert!(FinPoset::antichain(20)
            .unwrap()
            .is_isomorphic(&FinPoset::antichain(20).unwrap()));
    }
}
