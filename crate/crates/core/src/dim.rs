//! Boundaries and the Krull, Jacobson and Heitmann dimensions of finite
//! distributive lattices.
//!
//! Every lattice met during a boundary recursion is a quotient of the lattice
//! we started from, hence the downset lattice of a subset `z` of the original
//! points with the induced order. The recursions below work directly on these
//! subsets and memoize on them.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lattice::{FinDistLattice, LatElem, LatFilter, LatIdeal, LatQuotientMap};
use crate::poset::{bit, bits, FinPoset, Mask};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundaryKind {
    /// Upper Krull boundary ideal `↓x ∨ (0 : x)`.
    KrullUpper,
    /// Lower Krull boundary filter `↑(x ∧ (1 \ x))`.
    KrullLower,
    /// Heitmann boundary ideal `↓x ∨ (J(0) : x)`.
    Heitmann,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundarySpec {
    pub kind: BoundaryKind,
    pub x: LatElem,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DimKind {
    Kdim,
    Jdim,
    Hdim,
}

/// How [`kdim_with`] evaluates the Krull dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KdimStrategy {
    /// Recursion over upper boundaries of every element.
    UpperBoundary,
    /// Recursion over lower boundaries of every element.
    LowerBoundary,
    /// Recursion over upper boundaries of the join-irreducible elements only.
    Generators,
    /// Longest chain of prime points.
    Chain,
}

pub fn krull_boundary_ideal(t: &FinDistLattice, x: LatElem) -> LatIdeal {
    LatIdeal::principal(t.join(x, t.neg(x)))
}

pub fn krull_boundary_filter(t: &FinDistLattice, x: LatElem) -> LatFilter {
    LatFilter::principal(t.meet(x, t.difference(t.top(), x)))
}

pub fn heitmann_boundary_ideal(t: &FinDistLattice, x: LatElem) -> LatIdeal {
    let j0 = t
        .jacobson_radical(&LatIdeal::principal(t.bottom()))
        .generator;
    LatIdeal::principal(t.join(x, t.transporter(j0, x)))
}

/// The boundary quotient `T/(K^x = 0)`, `T/(K_x = 1)` or `T/(H^x = 0)`.
pub fn boundary_quotient(t: &FinDistLattice, spec: BoundarySpec) -> LatQuotientMap {
    match spec.kind {
        BoundaryKind::KrullUpper => {
            let k = krull_boundary_ideal(t, spec.x);
            assert_eq!(
                t.neg(k.generator),
                t.bottom(),
                "upper Krull boundary must have zero annihilator"
            );
            t.quotient_by_ideal(&k)
        }
        BoundaryKind::KrullLower => t.quotient_by_filter(&krull_boundary_filter(t, spec.x)),
        BoundaryKind::Heitmann => t.quotient_by_ideal(&heitmann_boundary_ideal(t, spec.x)),
    }
}

// Surviving points of each boundary quotient of the sublattice on `z`, for an
// element `x ⊆ z` of that sublattice.

fn upper_survivors(p: &FinPoset, z: Mask, x: Mask) -> Mask {
    bits(z & !x)
        .filter(|&q| p.down(q) & x != 0)
        .fold(0, |acc, q| acc | bit(q))
}

fn lower_survivors(p: &FinPoset, z: Mask, x: Mask) -> Mask {
    bits(x)
        .filter(|&q| p.up(q) & z & !x != 0)
        .fold(0, |acc, q| acc | bit(q))
}

fn heitmann_survivors(p: &FinPoset, z: Mask, x: Mask) -> Mask {
    let max = p.maximal_in(z);
    bits(z & !x)
        .filter(|&q| p.down(q) & x & max != 0)
        .fold(0, |acc, q| acc | bit(q))
}

fn candidates(p: &FinPoset, z: Mask, all: bool) -> Vec<Mask> {
    if all {
        p.downsets_in(z)
    } else {
        bits(z).map(|q| p.down(q) & z).collect()
    }
}

/// A dimension together with a sequence of elements realizing it: each step
/// is the element whose boundary was taken, as a mask over the original points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimTrace {
    pub value: i32,
    pub steps: Vec<Mask>,
}

struct Recursion<'a> {
    poset: &'a FinPoset,
    survivors: fn(&FinPoset, Mask, Mask) -> Mask,
    all_elements: bool,
    memo: BTreeMap<Mask, (i32, Mask)>,
}

impl Recursion<'_> {
    fn dim(&mut self, z: Mask) -> i32 {
        if z == 0 {
            return -1;
        }
        if let Some(&(d, _)) = self.memo.get(&z) {
            return d;
        }
        let mut best = (-1, 0);
        for x in candidates(self.poset, z, self.all_elements) {
            let sub = (self.survivors)(self.poset, z, x);
            debug_assert!(sub & !z == 0 && sub != z);
            let d = self.dim(sub);
            if d > best.0 {
                best = (d, x);
            }
        }
        let out = (best.0 + 1, best.1);
        self.memo.insert(z, out);
        out.0
    }

    fn trace(&mut self, mut z: Mask) -> DimTrace {
        let value = self.dim(z);
        let mut steps = Vec::new();
        while z != 0 {
            let (_, x) = self.memo[&z];
            steps.push(x);
            z = (self.survivors)(self.poset, z, x);
        }
        DimTrace { value, steps }
    }
}

fn recursion(
    p: &FinPoset,
    survivors: fn(&FinPoset, Mask, Mask) -> Mask,
    all: bool,
) -> Recursion<'_> {
    Recursion {
        poset: p,
        survivors,
        all_elements: all,
        memo: BTreeMap::new(),
    }
}

pub fn kdim(t: &FinDistLattice) -> i32 {
    kdim_with(t, KdimStrategy::Chain)
}

pub fn kdim_with(t: &FinDistLattice, strategy: KdimStrategy) -> i32 {
    let p = t.base();
    match strategy {
        KdimStrategy::Chain => p.height(),
        KdimStrategy::UpperBoundary => recursion(p, upper_survivors, true).dim(p.full()),
        KdimStrategy::LowerBoundary => recursion(p, lower_survivors, true).dim(p.full()),
        KdimStrategy::Generators => recursion(p, upper_survivors, false).dim(p.full()),
    }
}

/// Krull dimension with the sequence of upper-boundary elements that realizes it.
pub fn kdim_trace(t: &FinDistLattice) -> DimTrace {
    recursion(t.base(), upper_survivors, false).trace(t.base().full())
}

/// The predicate `Kdim T ≤ ℓ`, evaluated by its inductive definition over
/// join-irreducible elements.
pub fn kdim_at_most(t: &FinDistLattice, l: i32) -> bool {
    fn at_most(p: &FinPoset, z: Mask, l: i32) -> bool {
        if z == 0 {
            return true;
        }
        l >= 0 && bits(z).all(|q| at_most(p, upper_survivors(p, z, p.down(q) & z), l - 1))
    }
    at_most(t.base(), t.base().full(), l)
}

/// Krull dimension of the Heitmann lattice.
pub fn jdim(t: &FinDistLattice) -> i32 {
    kdim(&t.heitmann_lattice().target)
}

/// Heitmann dimension by recursion over the Heitmann boundaries of the
/// join-irreducible elements; `J(0)` is recomputed in every quotient.
pub fn hdim(t: &FinDistLattice) -> i32 {
    recursion(t.base(), heitmann_survivors, false).dim(t.base().full())
}

/// Heitmann dimension by recursion over the boundaries of every element.
pub fn hdim_all_elements(t: &FinDistLattice) -> i32 {
    recursion(t.base(), heitmann_survivors, true).dim(t.base().full())
}

pub fn hdim_trace(t: &FinDistLattice) -> DimTrace {
    recursion(t.base(), heitmann_survivors, false).trace(t.base().full())
}

pub fn dim(t: &FinDistLattice, kind: DimKind) -> i32 {
    match kind {
        DimKind::Kdim => kdim(t),
        DimKind::Jdim => jdim(t),
        DimKind::Hdim => hdim(t),
    }
}

/// Looks for `a_0, …, a_ℓ` with `a_0 ∧ x_0 ≤ 0`, `a_i ∧ x_i ≤ a_{i−1} ∨ x_{i−1}`
/// and `1 ≤ a_ℓ ∨ x_ℓ`, searching every element at every step.
///
/// The search only remembers the reachable values of `a_i ∨ x_i`, so it is
/// exhaustive without enumerating all tuples.
pub fn kdim_global_check(t: &FinDistLattice, xs: &[LatElem]) -> Option<Vec<LatElem>> {
    let elems = t.elements();
    // For each level: reachable value of a_i ∨ x_i ↦ (a_i, previous value).
    let mut levels: Vec<BTreeMap<LatElem, (LatElem, LatElem)>> = Vec::with_capacity(xs.len());
    let mut frontier: Vec<LatElem> = vec![t.bottom()];
    for &x in xs {
        let mut level = BTreeMap::new();
        for &prev in &frontier {
            for &a in &elems {
                if t.leq(t.meet(a, x), prev) {
                    level.entry(t.join(a, x)).or_insert((a, prev));
                }
            }
        }
        frontier = level.keys().copied().collect();
        levels.push(level);
    }
    if xs.is_empty() {
        return (t.top() == t.bottom()).then(Vec::new);
    }
    let mut cur = t.top();
    let mut out = vec![t.bottom(); xs.len()];
    for (i, level) in levels.iter().enumerate().rev() {
        let &(a, prev) = level.get(&cur)?;
        out[i] = a;
        cur = prev;
    }
    Some(out)
}

/// `x_ℓ ∨ (x_ℓ → (⋯ (x_1 ∨ (x_1 → (x_0 ∨ ¬x_0))) ⋯))`; equal to `1` for every
/// sequence of length `ℓ + 1` exactly when `Kdim T ≤ ℓ`.
pub fn heyting_dim_formula(t: &FinDistLattice, xs: &[LatElem]) -> LatElem {
    let mut v = t.bottom();
    for &x in xs {
        v = t.join(x, t.implies(x, v));
    }
    v
}

/// The order dual of [`heyting_dim_formula`]: `w_{ℓ+1} = 1`,
/// `w_k = x_k ∧ (w_{k+1} − x_k)`, so the innermost term is `x_ℓ ∧ (1 − x_ℓ)`.
/// `w_0 = 0` for every sequence of length `ℓ + 1` exactly when `Kdim T ≤ ℓ`.
pub fn brouwer_dim_formula(t: &FinDistLattice, xs: &[LatElem]) -> LatElem {
    let mut w = t.top();
    for &x in xs.iter().rev() {
        w = t.meet(x, t.brouwer_minus(w, x));
    }
    w
}

/// Whether `s` together with `0` and `1` generates `t` under `∨` and `∧`.
pub fn generates(t: &FinDistLattice, s: &[LatElem]) -> bool {
    let target = t.count();
    let mut seen: alloc::collections::BTreeSet<LatElem> = s.iter().copied().collect();
    seen.insert(t.bottom());
    seen.insert(t.top());
    loop {
        let cur: Vec<LatElem> = seen.iter().copied().collect();
        let before = seen.len();
        for &a in &cur {
            for &b in &cur {
                seen.insert(t.meet(a, b));
                seen.insert(t.join(a, b));
            }
        }
        if seen.len() == target {
            return true;
        }
        if seen.len() == before {
            return false;
        }
    }
}

/// Checks `dim T ≤ ℓ` by taking boundaries only at elements of the generating
/// set `s` (mapped down into each successive quotient).
pub fn generator_restricted_dim_check(
    t: &FinDistLattice,
    s: &[LatElem],
    kind: DimKind,
    l: i32,
) -> Result<bool> {
    for &x in s {
        t.elem(x.0)?;
    }
    if !generates(t, s) {
        return Err(Error::Invalid(format!(
            "the {} given elements do not generate the lattice",
            s.len()
        )));
    }
    let p = t.base();
    let survivors: fn(&FinPoset, Mask, Mask) -> Mask = match kind {
        DimKind::Kdim => upper_survivors,
        DimKind::Hdim => heitmann_survivors,
        DimKind::Jdim => {
            let he = t.heitmann_lattice();
            let mapped: Vec<LatElem> = s.iter().map(|&x| he.map(x)).collect();
            return generator_restricted_dim_check(&he.target, &mapped, DimKind::Kdim, l);
        }
    };
    fn check(
        p: &FinPoset,
        survivors: fn(&FinPoset, Mask, Mask) -> Mask,
        s: &[LatElem],
        z: Mask,
        l: i32,
    ) -> bool {
        if z == 0 {
            return true;
        }
        l >= 0
            && s.iter()
                .all(|x| check(p, survivors, s, survivors(p, z, x.0 & z), l - 1))
    }
    Ok(check(p, survivors, s, p.full(), l))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> FinDistLattice {
        FinDistLattice::new(FinPoset::chain(n).unwrap())
    }

    fn all_strategies(t: &FinDistLattice) -> [i32; 4] {
        [
            kdim_with(t, KdimStrategy::UpperBoundary),
            kdim_with(t, KdimStrategy::LowerBoundary),
            kdim_with(t, KdimStrategy::Generators),
            kdim_with(t, KdimStrategy::Chain),
        ]
    }

    #[test]
    fn small_kdims() {
        assert_eq!(all_strategies(&FinDistLattice::trivial()), [-1; 4]);
        assert_eq!(
            all_strategies(&FinDistLattice::new(FinPoset::antichain(3).unwrap())),
            [0; 4]
        );
        for k in 1..6 {
            assert_eq!(all_strategies(&chain(k)), [k as i32 - 1; 4]);
        }
    }

    #[test]
    fn boundary_of_middle_of_three_chain() {
        let t = chain(2);
        let x = LatElem(0b01);
        assert_eq!(krull_boundary_ideal(&t, x).generator, x);
        let q = boundary_quotient(
            &t,
            BoundarySpec {
                kind: BoundaryKind::KrullUpper,
                x,
            },
        );
        assert_eq!(q.target.count(), 2);
        for x in [t.bottom(), t.top()] {
            let q = boundary_quotient(
                &t,
                BoundarySpec {
                    kind: BoundaryKind::KrullUpper,
                    x,
                },
            );
            assert!(q.target.is_trivial());
        }
    }

    #[test]
    fn global_check_on_three_chain() {
        let t = chain(2);
        let x = LatElem(0b01);
        assert!(kdim_global_check(&t, &[x]).is_none());
        assert!(kdim_global_check(&t, &[x, t.top()]).is_some());
        assert_ne!(heyting_dim_formula(&t, &[x]), t.top());
        for a in t.elements() {
            for b in t.elements() {
                assert_eq!(heyting_dim_formula(&t, &[a, b]), t.top());
                assert_eq!(brouwer_dim_formula(&t, &[a, b]), t.bottom());
            }
        }
    }

    #[test]
    fn boolean_global_check_uses_complement() {
        let t = FinDistLattice::new(FinPoset::antichain(2).unwrap());
        for x in t.elements() {
            let a = kdim_global_check(&t, &[x]).unwrap();
            assert_eq!(a[0], t.neg(x));
        }
    }

    #[test]
    fn jdim_and_hdim_small() {
        let b = FinDistLattice::new(FinPoset::antichain(2).unwrap());
        assert_eq!((jdim(&b), hdim(&b)), (0, 0));
        assert_eq!((jdim(&chain(2)), hdim(&chain(2))), (0, 0));
        assert_eq!(hdim(&FinDistLattice::trivial()), -1);
    }

    #[test]
    fn generator_checks() {
        let b = FinDistLattice::new(FinPoset::antichain(2).unwrap());
        let atoms = [LatElem(0b01), LatElem(0b10)];
        assert!(generator_restricted_dim_check(&b, &atoms, DimKind::Kdim, 0).unwrap());
        let t = chain(2);
        let x = [LatElem(0b01)];
        assert!(generator_restricted_dim_check(&t, &x, DimKind::Kdim, 1).unwrap());
        assert!(!generator_restricted_dim_check(&t, &x, DimKind::Kdim, 0).unwrap());
        assert!(generator_restricted_dim_check(&chain(3), &x, DimKind::Kdim, 2).is_err());
    }
}
