//! Finite spectral spaces: the prime poset of a lattice seen as a space whose
//! open sets are the downsets and whose closure operator is upward closure.

use alloc::vec::Vec;

use crate::error::Result;
use crate::lattice::{
    self, FinDistLattice, GlueDiagram, GlueKind, LatElem, LatIdeal, LatQuotientMap,
};
use crate::poset::{bits, FinPoset, Mask};

/// A set of points of a spectrum; any subset of a finite spectral space is
/// closed in the patch topology, hence a spectral subspace.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpectralSubset {
    pub members: Mask,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpecSubsets {
    pub max: Mask,
    pub min: Mask,
    /// Points `p` whose prime ideal equals its own Jacobson radical.
    pub jspec: Mask,
    /// Points of the Heitmann lattice, as points of the original spectrum.
    pub jspec_closure: Mask,
}

/// Lattices up to this many elements get the Jacobson radical of each prime
/// evaluated from the quantified definition; larger ones use the closed form.
const DEFINITION_LIMIT: usize = 1 << 11;

/// The prime ideal of a point: the elements whose mask avoids it.
pub fn prime_ideal(t: &FinDistLattice, p: usize) -> LatIdeal {
    LatIdeal::principal(LatElem(t.base().full() & !t.base().up(p)))
}

pub fn spec_subsets(t: &FinDistLattice) -> SpecSubsets {
    let base = t.base();
    let by_definition = t.count() <= DEFINITION_LIMIT;
    let jspec = (0..base.len())
        .filter(|&p| {
            let ideal = prime_ideal(t, p);
            let j = if by_definition {
                t.jacobson_radical_by_definition(&ideal)
            } else {
                t.jacobson_radical(&ideal)
            };
            j == ideal
        })
        .fold(0, |acc, p| acc | crate::poset::bit(p));
    SpecSubsets {
        max: base.maximal(),
        min: base.minimal(),
        jspec,
        jspec_closure: t.heitmann_lattice().image(),
    }
}

/// The quotient whose primes are exactly `z`: `a ⪯ b` iff `D(a) ∩ Z ⊆ D(b) ∩ Z`.
pub fn subspace_lattice(t: &FinDistLattice, z: SpectralSubset) -> LatQuotientMap {
    t.restrict(z.members)
}

/// Closure in the spectral topology (upward closure).
pub fn closure(t: &FinDistLattice, m: Mask) -> Mask {
    t.base().up_closure(m)
}

/// Topological boundary of the basic open `D(x)`:
/// `closure(D(x)) ∩ closure(complement of D(x))`.
pub fn topological_boundary(t: &FinDistLattice, x: LatElem) -> Mask {
    let rest = t.base().full() & !x.0;
    closure(t, x.0) & closure(t, rest)
}

/// Two spaces share the quasi-compact open `u_ij ⊆ X_i`, identified by point
/// names with `u_ji ⊆ X_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpenOverlap {
    pub i: usize,
    pub j: usize,
    pub u_ij: Mask,
    pub u_ji: Mask,
}

/// Glues finite spectral spaces along quasi-compact opens (downsets). Each
/// input embeds in the result as an open subspace.
pub fn glue_spectra(spaces: &[FinPoset], overlaps: &[OpenOverlap]) -> Result<FinPoset> {
    let diagram = GlueDiagram {
        kind: GlueKind::Filter,
        lattices: spaces.iter().cloned().map(FinDistLattice::new).collect(),
        overlaps: overlaps
            .iter()
            .map(|o| lattice::Overlap {
                i: o.i,
                j: o.j,
                s_ij: LatElem(o.u_ij),
                s_ji: LatElem(o.u_ji),
            })
            .collect(),
    };
    Ok(lattice::glue(&diagram)?.lattice.base().clone())
}

/// Point names of a mask, for display.
pub fn point_names(p: &FinPoset, m: Mask) -> Vec<&str> {
    bits(m).map(|i| p.name(i)).collect()
}
