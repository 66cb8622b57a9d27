//! Certificate-producing generator reduction: Kronecker, Bass stable range,
//! combinations of matrix columns, Serre splitting, Forster–Swan bounds and
//! Bass cancellation.
//!
//! Rings are `A = K[X]/M` through [`RadQuotientRing`]. Dimension hypotheses
//! stated with the Heitmann dimension are used through the Krull boundary,
//! which is the Heitmann boundary for a finitely generated algebra over a
//! field (`J(0) = √0`). They are not checked up front: the inductive
//! constructions reach a base case that is decided by membership, and a
//! failed base case is reported as [`Error::Hypothesis`].

use alloc::vec::Vec;

use crate::error::Result;
use crate::poly::{krull_dimension, IdealRep, MembershipWitness, MonomialOrder, Poly};
use crate::zariski::RadQuotientRing;

pub mod bass;
pub mod cert;
pub mod combine;
pub mod kronecker;
pub mod matrix;
pub mod modules;

pub use bass::{bass_stable_range, unimodular_to_e1};
pub use cert::{
    inverse_script, replay, script_matrix, CertKind, CertValue, ElemOp, LabelledWitness,
    ReductionCert,
};
pub use combine::{matrix_combine, minor_step, swan_mainlemma, unimodular_column, MatrixMode};
pub use kronecker::{
    gcd_trick, kronecker_reduce, kronecker_reduce_localized, kronecker_step, localized_lemma,
    localized_multiple,
};
pub use matrix::{Minor, PolyMatrix};
pub use modules::{
    bass_cancel, default_generator_target, fitting_bound_holds, fitting_ideal,
    forster_swan_generate, module_membership, serre_split,
};

/// The Heitmann boundary of one element, remembering where the saturation
/// generators sit in the new modulus `[M | b | (M : b^∞)]`.
pub(crate) struct BoundaryStep {
    pub quotient: RadQuotientRing,
    offset: usize,
    saturation: Vec<Poly>,
}

pub(crate) fn boundary_step(r: &RadQuotientRing, b: &Poly) -> Result<BoundaryStep> {
    let bd = r.heitmann_boundary(core::slice::from_ref(b))?;
    Ok(BoundaryStep {
        offset: r.modulus().gens().len() + 1,
        saturation: bd.saturations[0].ideal.gens().to_vec(),
        quotient: bd.quotient,
    })
}

impl BoundaryStep {
    /// The part of a membership over `quotient.modulus ++ extra` that comes
    /// from the saturation; it is an `x` with `x·b ∈ √M`.
    pub fn saturation_part(&self, w: &MembershipWitness) -> Poly {
        let ring = self.quotient.ring();
        self.saturation
            .iter()
            .enumerate()
            .fold(Poly::zero(ring), |acc, (j, s)| {
                &acc + &(&w.cofactors[self.offset + j] * s)
            })
    }
}

/// `b₀, x₀, …, b_{k−1}, x_{k−1}`.
pub(crate) fn pairs_prefix(bs: &[Poly], xs: &[Poly], k: usize) -> Vec<Poly> {
    bs[..k]
        .iter()
        .zip(&xs[..k])
        .flat_map(|(b, x)| [b.clone(), x.clone()])
        .collect()
}

/// `Kdim((A/M)[ν⁻¹])`, as the dimension of `M + ⟨tν − 1⟩` in one more
/// variable.
pub fn localized_krull_dim(r: &RadQuotientRing, nu: &Poly) -> Result<i64> {
    let base = r.ring();
    let ext = base.extend_front(1, MonomialOrder::GrevLex);
    let map: Vec<usize> = (1..=base.nvars()).collect();
    let t = Poly::var(&ext, 0);
    let mut gens: Vec<Poly> = r
        .modulus()
        .gens()
        .iter()
        .map(|g| g.map_into(&ext, &map))
        .collect();
    gens.push(&(&t * &nu.map_into(&ext, &map)) - &Poly::one(&ext));
    krull_dimension(&IdealRep::new(&ext, gens)?)
}

pub(crate) fn verify_kind(c: &ReductionCert) -> Result<()> {
    match c.kind {
        CertKind::GcdTrick => kronecker::verify_gcd_trick(c),
        CertKind::KroneckerStep => kronecker::verify_kronecker_step(c),
        CertKind::KroneckerReduce | CertKind::KroneckerLocalized => kronecker::verify_reduce(c),
        CertKind::BassStableRange => bass::verify_bass(c),
        CertKind::UnimodularToE1 => bass::verify_unimodular(c),
        CertKind::MatrixCombine => combine::verify_matrix_combine(c),
        CertKind::SwanMainLemma => combine::verify_mainlemma(c),
        CertKind::MinorStep => combine::verify_minor_step(c),
        CertKind::SerreSplit => modules::verify_serre(c),
        CertKind::ForsterSwan => modules::verify_swan(c),
        CertKind::BassCancel => modules::verify_cancel(c),
    }
}
