//! Finite distributive lattices presented by their prime posets.
//!
//! An element is a downset of the base poset, stored as a bitmask. Meet and
//! join are intersection and union, a point `p` of the base is the prime
//! ideal of elements whose mask avoids `p`, and `p ≤ q` in the base means
//! that `q` lies in the closure of `p`. Every quotient of a finite
//! distributive lattice is the downset lattice of a subset of the points,
//! which is how [`LatQuotientMap`] stores it.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::poset::{bit, bits, compress, expand, FinPoset, Mask};

/// A downset of the base poset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatElem(pub Mask);

impl LatElem {
    pub fn mask(self) -> Mask {
        self.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinDistLattice {
    base: FinPoset,
}

impl FinDistLattice {
    /// The lattice of downsets of `base`.
    pub fn new(base: FinPoset) -> Self {
        FinDistLattice { base }
    }

    /// The one-element lattice, in which `0 = 1`.
    pub fn trivial() -> Self {
        FinDistLattice {
            base: FinPoset::antichain(0).expect("empty poset"),
        }
    }

    pub fn base(&self) -> &FinPoset {
        &self.base
    }

    pub fn is_trivial(&self) -> bool {
        self.base.is_empty()
    }

    pub fn bottom(&self) -> LatElem {
        LatElem(0)
    }

    pub fn top(&self) -> LatElem {
        LatElem(self.base.full())
    }

    /// Checks that `m` is a downset and wraps it.
    pub fn elem(&self, m: Mask) -> Result<LatElem> {
        if self.base.is_downset(m) {
            Ok(LatElem(m))
        } else {
            Err(Error::Invalid(format!("mask {m:#b} is not a downset")))
        }
    }

    /// The principal downset `↓p` of a base point; these are exactly the
    /// join-irreducible elements.
    pub fn principal(&self, p: usize) -> LatElem {
        LatElem(self.base.down(p))
    }

    pub fn join_irreducibles(&self) -> Vec<LatElem> {
        (0..self.base.len()).map(|p| self.principal(p)).collect()
    }

    /// Smallest element containing the given points.
    pub fn generated_by_points(&self, m: Mask) -> LatElem {
        LatElem(self.base.down_closure(m))
    }

    /// Every element, in increasing mask order.
    pub fn elements(&self) -> Vec<LatElem> {
        self.base.downsets().into_iter().map(LatElem).collect()
    }

    pub fn count(&self) -> usize {
        self.base.downsets().len()
    }

    pub fn meet(&self, a: LatElem, b: LatElem) -> LatElem {
        LatElem(a.0 & b.0)
    }

    pub fn join(&self, a: LatElem, b: LatElem) -> LatElem {
        LatElem(a.0 | b.0)
    }

    pub fn leq(&self, a: LatElem, b: LatElem) -> bool {
        a.0 & !b.0 == 0
    }

    pub fn meet_all(&self, xs: &[LatElem]) -> LatElem {
        xs.iter().fold(self.top(), |acc, &x| self.meet(acc, x))
    }

    pub fn join_all(&self, xs: &[LatElem]) -> LatElem {
        xs.iter().fold(self.bottom(), |acc, &x| self.join(acc, x))
    }

    /// Heyting implication `a → b`: the largest `z` with `z ∧ a ≤ b`.
    pub fn implies(&self, a: LatElem, b: LatElem) -> LatElem {
        let bad = a.0 & !b.0;
        let m = (0..self.base.len())
            .filter(|&p| self.base.down(p) & bad == 0)
            .fold(0, |acc, p| acc | bit(p));
        LatElem(m)
    }

    /// Pseudo-complement `¬a = a → 0`.
    pub fn neg(&self, a: LatElem) -> LatElem {
        self.implies(a, self.bottom())
    }

    /// Transporter `b : a`, the largest `x` with `x ∧ a ≤ b`.
    pub fn transporter(&self, b: LatElem, a: LatElem) -> LatElem {
        self.implies(a, b)
    }

    /// Difference `b \ a`, the least `x` with `b ≤ x ∨ a`.
    pub fn difference(&self, b: LatElem, a: LatElem) -> LatElem {
        LatElem(self.base.down_closure(b.0 & !a.0))
    }

    /// Brouwer subtraction `a − b`, the least `x` with `a ≤ x ∨ b`.
    pub fn brouwer_minus(&self, a: LatElem, b: LatElem) -> LatElem {
        self.difference(a, b)
    }

    /// Boolean complement of `a`, when it has one.
    pub fn complement(&self, a: LatElem) -> Option<LatElem> {
        let c = self.base.full() & !a.0;
        self.base.is_downset(c).then_some(LatElem(c))
    }

    pub fn is_boolean(&self) -> bool {
        self.base.height() <= 0
    }

    /// Maximal points of the base: the maximal prime ideals.
    pub fn max_points(&self) -> Mask {
        self.base.maximal()
    }

    /// Jacobson radical of a (principal) ideal.
    ///
    /// For `J = ↓j` an element `a` is in `J_T(J)` iff `j ∨ x = 1` for every `x`
    /// with `a ∨ x = 1`. The smallest such `x` is `1 \ a`, whose points are
    /// those below a point outside `a`, so the condition reads: every maximal
    /// point in `a` is in `j`. [`Self::jacobson_radical_by_definition`]
    /// evaluates the quantified formula directly.
    pub fn jacobson_radical(&self, ideal: &LatIdeal) -> LatIdeal {
        let lost = self.max_points() & !ideal.generator.0;
        LatIdeal::principal(LatElem(self.base.full() & !lost))
    }

    /// Jacobson radical by exhaustive evaluation of
    /// `{a : ∀x (a ∨ x = 1 ⟹ ∃z ∈ J, z ∨ x = 1)}`.
    pub fn jacobson_radical_by_definition(&self, ideal: &LatIdeal) -> LatIdeal {
        let elems = self.elements();
        let top = self.top();
        let inside = ideal.members(self);
        let members: Vec<LatElem> = elems
            .iter()
            .copied()
            .filter(|&a| {
                elems.iter().all(|&x| {
                    self.join(a, x) != top || inside.iter().any(|&z| self.join(z, x) == top)
                })
            })
            .collect();
        LatIdeal::principal(self.join_all(&members))
    }

    /// `T/(J = 0, U = 1)`: the surviving primes contain every element of `J`
    /// and avoid every element of `U`.
    pub fn quotient(&self, zero: &[LatElem], one: &[LatElem]) -> LatQuotientMap {
        let killed = self.join_all(zero).0;
        let kept = self.meet_all(one).0;
        self.restrict(kept & !killed)
    }

    pub fn quotient_by_ideal(&self, ideal: &LatIdeal) -> LatQuotientMap {
        self.restrict(self.base.full() & !ideal.generator.0)
    }

    pub fn quotient_by_filter(&self, filter: &LatFilter) -> LatQuotientMap {
        self.restrict(filter.generator.0)
    }

    /// Quotient whose primes are exactly the points of `z`.
    pub fn restrict(&self, z: Mask) -> LatQuotientMap {
        let (sub, emb) = self.base.induced(z & self.base.full());
        LatQuotientMap {
            source: self.clone(),
            target: FinDistLattice::new(sub),
            embedding: emb,
        }
    }

    /// Heitmann lattice: `a ⪯ b` iff `a ∈ J_T(↓b)`, i.e. iff the maximal points
    /// of `a` lie in `b`; the quotient keeps only the maximal points.
    pub fn heitmann_lattice(&self) -> LatQuotientMap {
        self.restrict(self.max_points())
    }

    /// The preorder of the Heitmann lattice, evaluated through the Jacobson
    /// radical of each principal ideal.
    pub fn heitmann_leq(&self, a: LatElem, b: LatElem) -> bool {
        self.jacobson_radical(&LatIdeal::principal(b)).contains(a)
    }

    /// Weakly Jacobson test `T = He(T)`: every point is maximal.
    pub fn is_weakly_jacobson(&self) -> bool {
        self.max_points() == self.base.full()
    }

    /// The Boolean lattice of all subsets of the points, with the embedding of
    /// `self` given by the identity on masks.
    pub fn boolean_closure(&self) -> FinDistLattice {
        let names = self.base.names().to_vec();
        FinDistLattice::new(FinPoset::new(names, &[]).expect("antichain"))
    }

    /// The opposite lattice; see [`Self::to_opposite`] for the element map.
    pub fn opposite(&self) -> FinDistLattice {
        FinDistLattice::new(self.base.opposite())
    }

    /// Order-reversing bijection from `self` onto [`Self::opposite`].
    pub fn to_opposite(&self, a: LatElem) -> LatElem {
        LatElem(self.base.full() & !a.0)
    }
}

/// An ideal of a finite lattice; always principal, stored by its generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LatIdeal {
    pub generator: LatElem,
}

impl LatIdeal {
    pub fn principal(g: LatElem) -> Self {
        LatIdeal { generator: g }
    }

    /// Ideal generated by a finite set (the downset of its join).
    pub fn generated(t: &FinDistLattice, xs: &[LatElem]) -> Self {
        Self::principal(t.join_all(xs))
    }

    pub fn contains(&self, a: LatElem) -> bool {
        a.0 & !self.generator.0 == 0
    }

    pub fn members(&self, t: &FinDistLattice) -> Vec<LatElem> {
        t.elements()
            .into_iter()
            .filter(|&a| self.contains(a))
            .collect()
    }

    pub fn intersect(&self, other: &LatIdeal) -> LatIdeal {
        Self::principal(LatElem(self.generator.0 & other.generator.0))
    }

    pub fn join(&self, other: &LatIdeal) -> LatIdeal {
        Self::principal(LatElem(self.generator.0 | other.generator.0))
    }
}

/// A filter of a finite lattice; always principal, stored by its generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LatFilter {
    pub generator: LatElem,
}

impl LatFilter {
    pub fn principal(g: LatElem) -> Self {
        LatFilter { generator: g }
    }

    pub fn generated(t: &FinDistLattice, xs: &[LatElem]) -> Self {
        Self::principal(t.meet_all(xs))
    }

    pub fn contains(&self, a: LatElem) -> bool {
        self.generator.0 & !a.0 == 0
    }

    pub fn members(&self, t: &FinDistLattice) -> Vec<LatElem> {
        t.elements()
            .into_iter()
            .filter(|&a| self.contains(a))
            .collect()
    }
}

/// A surjective lattice morphism `source → target` given by the inclusion of
/// the target's points among the source's points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatQuotientMap {
    pub source: FinDistLattice,
    pub target: FinDistLattice,
    /// Source index of each target point.
    pub embedding: Vec<usize>,
}

impl LatQuotientMap {
    pub fn identity(t: &FinDistLattice) -> Self {
        t.restrict(t.base().full())
    }

    /// The surviving points, as a mask over the source points.
    pub fn image(&self) -> Mask {
        expand(self.target.base().full(), &self.embedding)
    }

    pub fn map(&self, a: LatElem) -> LatElem {
        LatElem(compress(a.0, &self.embedding))
    }

    /// The largest source element mapping onto `b`.
    pub fn lift_max(&self, b: LatElem) -> LatElem {
        let outside = self.source.base().full() & !self.image();
        let want = expand(b.0, &self.embedding) | outside;
        // Largest downset inside `want`.
        let base = self.source.base();
        LatElem(
            (0..base.len())
                .filter(|&p| base.down(p) & !want == 0)
                .fold(0, |acc, p| acc | bit(p)),
        )
    }

    pub fn leq_in_target(&self, a: LatElem, b: LatElem) -> bool {
        self.target.leq(self.map(a), self.map(b))
    }

    pub fn is_identity(&self) -> bool {
        self.embedding.len() == self.source.base().len()
    }

    /// `next ∘ self`, for `next` a quotient of `self.target`.
    pub fn then(&self, next: &LatQuotientMap) -> LatQuotientMap {
        let z = expand(next.image(), &self.embedding);
        self.source.restrict(z)
    }
}

/// Whether the pieces of a gluing diagram are quotients by principal ideals
/// (closed subspaces of the spectrum) or by principal filters (open ones).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GlueKind {
    Ideal,
    Filter,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Overlap {
    pub i: usize,
    pub j: usize,
    /// Element of lattice `i` whose quotient is the shared piece.
    pub s_ij: LatElem,
    /// Element of lattice `j` whose quotient is the shared piece.
    pub s_ji: LatElem,
}

/// Lattices `T_i` with the overlaps `T_i/(s_ij) ≅ T_j/(s_ji)`, the
/// identification being by point names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlueDiagram {
    pub kind: GlueKind,
    pub lattices: Vec<FinDistLattice>,
    pub overlaps: Vec<Overlap>,
}

#[derive(Clone, Debug)]
pub struct Glued {
    pub lattice: FinDistLattice,
    /// Projection onto each piece.
    pub projections: Vec<LatQuotientMap>,
    /// `s_i` with `T_i = T/(s_i = 0)` (ideal kind) or `T/(s_i = 1)` (filter kind).
    pub generators: Vec<LatElem>,
}

fn piece_points(kind: GlueKind, t: &FinDistLattice, s: LatElem) -> Mask {
    match kind {
        GlueKind::Ideal => t.base().full() & !s.0,
        GlueKind::Filter => s.0,
    }
}

/// Cuts `t` into the quotients by the `cover` elements; for the ideal kind
/// their meet must be `0`, for the filter kind their join must be `1`.
pub fn decompose(t: &FinDistLattice, cover: &[LatElem], kind: GlueKind) -> Result<GlueDiagram> {
    match kind {
        GlueKind::Ideal if t.meet_all(cover) != t.bottom() => {
            return Err(Error::Invalid("covering ideals do not meet in 0".into()))
        }
        GlueKind::Filter if t.join_all(cover) != t.top() => {
            return Err(Error::Invalid("covering filters do not join to 1".into()))
        }
        _ => {}
    }
    let maps: Vec<LatQuotientMap> = cover
        .iter()
        .map(|&s| t.restrict(piece_points(kind, t, s)))
        .collect();
    let mut overlaps = Vec::new();
    for i in 0..cover.len() {
        for j in i + 1..cover.len() {
            overlaps.push(Overlap {
                i,
                j,
                s_ij: maps[i].map(cover[j]),
                s_ji: maps[j].map(cover[i]),
            });
        }
    }
    Ok(GlueDiagram {
        kind,
        lattices: maps.into_iter().map(|m| m.target).collect(),
        overlaps,
    })
}

/// Projective limit of a gluing diagram.
///
/// Points are identified by name. Each declared overlap must describe the same
/// named subposet from both sides, and lattices without a declared overlap may
/// not share points.
pub fn glue(diagram: &GlueDiagram) -> Result<Glued> {
    let kind = diagram.kind;
    let n = diagram.lattices.len();
    let mut names: Vec<String> = Vec::new();
    for t in &diagram.lattices {
        for name in t.base().names() {
            if !names.contains(name) {
                names.push(name.clone());
            }
        }
    }
    if names.len() > crate::poset::MAX_POINTS {
        return Err(Error::Capacity(format!(
            "glued poset has {} points",
            names.len()
        )));
    }
    let global = |t: &FinDistLattice, p: usize| -> usize {
        names.iter().position(|q| q == t.base().name(p)).unwrap()
    };
    let global_mask =
        |t: &FinDistLattice, m: Mask| bits(m).fold(0 as Mask, |acc, p| acc | bit(global(t, p)));

    for ov in &diagram.overlaps {
        if ov.i >= n || ov.j >= n || ov.i == ov.j {
            return Err(Error::Invalid(format!(
                "overlap ({}, {}) out of range",
                ov.i, ov.j
            )));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let (ti, tj) = (&diagram.lattices[i], &diagram.lattices[j]);
            let shared = global_mask(ti, ti.base().full()) & global_mask(tj, tj.base().full());
            let ov = diagram
                .overlaps
                .iter()
                .find(|o| (o.i, o.j) == (i, j) || (o.i, o.j) == (j, i));
            let Some(ov) = ov else {
                if shared != 0 {
                    return Err(Error::Invalid(format!(
                        "lattices {i} and {j} share points but no overlap is declared"
                    )));
                }
                continue;
            };
            let (s_i, s_j) = if ov.i == i {
                (ov.s_ij, ov.s_ji)
            } else {
                (ov.s_ji, ov.s_ij)
            };
            ti.elem(s_i.0)?;
            tj.elem(s_j.0)?;
            let zi = global_mask(ti, piece_points(kind, ti, s_i));
            let zj = global_mask(tj, piece_points(kind, tj, s_j));
            if zi != zj {
                return Err(Error::Invalid(format!(
                    "commutation fails on overlap ({i}, {j}): the two quotients have different points"
                )));
            }
            if zi != shared {
                return Err(Error::Invalid(format!(
                    "commutation fails on overlap ({i}, {j}): lattices share points outside the overlap"
                )));
            }
            for p in bits(piece_points(kind, ti, s_i)) {
                for q in bits(piece_points(kind, ti, s_i)) {
                    let gp = ti.base().name(p);
                    let gq = ti.base().name(q);
                    let (pj, qj) = (
                        tj.base().index_of(gp).unwrap(),
                        tj.base().index_of(gq).unwrap(),
                    );
                    if ti.base().leq(p, q) != tj.base().leq(pj, qj) {
                        return Err(Error::Invalid(format!(
                            "commutation fails on overlap ({i}, {j}): order of {gp:?} and {gq:?} differs"
                        )));
                    }
                }
            }
        }
    }

    let mut rel = Vec::new();
    for t in &diagram.lattices {
        for (p, q) in t.base().covers() {
            rel.push((global(t, p), global(t, q)));
        }
    }
    let base = FinPoset::new(names.clone(), &rel)?;
    let lattice = FinDistLattice::new(base.clone());
    let mut projections = Vec::with_capacity(n);
    let mut generators = Vec::with_capacity(n);
    for (i, t) in diagram.lattices.iter().enumerate() {
        let emb: Vec<usize> = (0..t.base().len()).map(|p| global(t, p)).collect();
        let piece = expand(t.base().full(), &emb);
        let closed_ok = match kind {
            GlueKind::Ideal => base.is_upset(piece),
            GlueKind::Filter => base.is_downset(piece),
        };
        if !closed_ok {
            return Err(Error::Invalid(format!(
                "lattice {i} is not a principal piece of the limit"
            )));
        }
        for p in 0..t.base().len() {
            for q in 0..t.base().len() {
                if t.base().leq(p, q) != base.leq(emb[p], emb[q]) {
                    return Err(Error::Invalid(format!(
                        "lattice {i} does not embed: order of {:?} and {:?} changes in the limit",
                        t.base().name(p),
                        t.base().name(q)
                    )));
                }
            }
        }
        // Targets keep their own point order, so the embedding need not be increasing.
        let proj = LatQuotientMap {
            source: lattice.clone(),
            target: t.clone(),
            embedding: emb.clone(),
        };
        let s = match kind {
            GlueKind::Ideal => LatElem(base.full() & !piece),
            GlueKind::Filter => LatElem(piece),
        };
        // Section of the projection: x ↦ x ∨ s (ideal kind) or x ↦ x (filter kind).
        let section = |x: LatElem| match kind {
            GlueKind::Ideal => LatElem(expand(x.0, &emb) | s.0),
            GlueKind::Filter => LatElem(expand(x.0, &emb)),
        };
        let mut probes = t.join_irreducibles();
        probes.push(t.bottom());
        probes.push(t.top());
        for x in probes {
            let y = section(x);
            if !base.is_downset(y.0) || proj.map(y) != x {
                return Err(Error::Invalid(format!(
                    "projection onto lattice {i} is not split by its section"
                )));
            }
        }
        projections.push(proj);
        generators.push(s);
    }
    Ok(Glued {
        lattice,
        projections,
        generators,
    })
}
