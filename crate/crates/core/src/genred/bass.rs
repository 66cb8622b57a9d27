//! Bass stable range and reduction of unimodular vectors to `e₁`.

use alloc::format;
use alloc::vec::Vec;

use super::boundary_step;
use super::cert::{replay, CertBuilder, CertKind, CertValue, ElemOp, ReductionCert};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::zariski::RadQuotientRing;

fn shifted(bs: &[Poly], xs: &[Poly], a: &Poly) -> Vec<Poly> {
    bs.iter().zip(xs).map(|(b, x)| b + &(a * x)).collect()
}

/// From `1 ∈ ⟨a, b₁, …, bₙ⟩` and `Kdim(A/M) < n`, elements `xᵢ` with
/// `1 ∈ ⟨b₁ + ax₁, …, bₙ + axₙ⟩`.
pub fn bass_stable_range(r: &RadQuotientRing, a: &Poly, bs: &[Poly]) -> Result<ReductionCert> {
    let mut b = CertBuilder::new(CertKind::BassStableRange, r);
    b.put("a", CertValue::Poly(a.clone()));
    b.put("bs", CertValue::Vector(bs.to_vec()));
    let mut hyp = alloc::vec![a.clone()];
    hyp.extend(bs.iter().cloned());
    b.hypothesis_unit("hyp", &hyp)?;
    let xs = bass_rec(r, a, bs)?;
    let outs = shifted(bs, &xs, a);
    b.put("xs", CertValue::Vector(xs));
    b.unit("unimodular", &outs)?;
    b.finish()
}

pub(crate) fn verify_bass(c: &ReductionCert) -> Result<()> {
    let (a, bs, xs) = (c.poly("a")?, c.vector("bs")?, c.vector("xs")?);
    if bs.len() != xs.len() {
        return Err(Error::Verification("xs and bs differ in length".into()));
    }
    let k = c.checker();
    let mut hyp = alloc::vec![a.clone()];
    hyp.extend(bs.iter().cloned());
    k.unit("hyp", &hyp)?;
    k.unit("unimodular", &shifted(bs, xs, a))
}

/// Induction on `n` through the Heitmann boundary of `bₙ`: the recursive
/// call makes `L` unimodular modulo the boundary, and the saturation part of
/// that membership is `xₙ` (so `xₙbₙ ∈ √M` and `1 ∈ ⟨L, bₙ, xₙ⟩`).
pub(crate) fn bass_rec(r: &RadQuotientRing, a: &Poly, bs: &[Poly]) -> Result<Vec<Poly>> {
    r.ring().budget().check_cancel()?;
    let n = bs.len();
    if n == 0 {
        return if r.is_trivial()? {
            Ok(Vec::new())
        } else {
            Err(Error::Hypothesis(
                "dimension bound fails: the ring survives all boundaries".into(),
            ))
        };
    }
    let step = boundary_step(r, &bs[n - 1])?;
    let mut xs = bass_rec(&step.quotient, a, &bs[..n - 1])?;
    let l = shifted(&bs[..n - 1], &xs, a);
    let w = step
        .quotient
        .unit_in(&l)?
        .ok_or_else(|| Error::Verification("lost unimodularity on the boundary".into()))?;
    xs.push(step.saturation_part(&w));
    Ok(xs)
}

/// Elementary operations taking the unimodular `v` to `e₁` modulo `M`.
pub(crate) fn e1_script(r: &RadQuotientRing, v: &[Poly]) -> Result<Vec<ElemOp>> {
    let ring = r.ring();
    let mut script = Vec::new();
    if v.is_empty() {
        return Err(Error::Invalid("empty vector".into()));
    }
    let a = &v[0];
    if a.is_one() && v[1..].iter().all(Poly::is_zero) {
        return Ok(script);
    }
    let xs = bass_rec(r, a, &v[1..])?;
    let bs = shifted(&v[1..], &xs, a);
    for (i, x) in xs.iter().enumerate() {
        if !x.is_zero() {
            script.push(ElemOp {
                target: i + 1,
                source: 0,
                coeff: x.clone(),
            });
        }
    }
    let w = r
        .unit_in(&bs)?
        .ok_or_else(|| Error::Verification("Bass step did not give a unimodular tail".into()))?;
    let offset = r.modulus().gens().len();
    let one_minus_a = &Poly::one(ring) - a;
    for i in 0..bs.len() {
        let c = &one_minus_a * &w.cofactors[offset + i];
        if !c.is_zero() {
            script.push(ElemOp {
                target: 0,
                source: i + 1,
                coeff: c,
            });
        }
    }
    for (i, b) in bs.iter().enumerate() {
        if !b.is_zero() {
            script.push(ElemOp {
                target: i + 1,
                source: 0,
                coeff: -b,
            });
        }
    }
    Ok(script)
}

fn e1_residuals(v: &[Poly]) -> Vec<Poly> {
    v.iter()
        .enumerate()
        .map(|(i, c)| {
            if i == 0 {
                c - &Poly::one(c.ring())
            } else {
                c.clone()
            }
        })
        .collect()
}

/// Add-multiple operations mapping the unimodular `v` to `(1, 0, …, 0)`;
/// the replay is part of the certificate.
pub fn unimodular_to_e1(r: &RadQuotientRing, v: &[Poly]) -> Result<ReductionCert> {
    let mut b = CertBuilder::new(CertKind::UnimodularToE1, r);
    b.put("v", CertValue::Vector(v.to_vec()));
    b.hypothesis_unit("hyp", v)?;
    let script = e1_script(r, v)?;
    let end = replay(&script, v)?;
    b.vanish("replay", &e1_residuals(&end))?;
    b.put("script", CertValue::Script(script));
    b.finish()
}

pub(crate) fn verify_unimodular(c: &ReductionCert) -> Result<()> {
    let (v, script) = (c.vector("v")?, c.script("script")?);
    let k = c.checker();
    k.unit("hyp", v)?;
    let end = replay(script, v)?;
    k.vanish("replay", &e1_residuals(&end))
        .map_err(|e| match e {
            Error::Verification(m) => Error::Verification(format!("replay: {m}")),
            e => e,
        })
}
