//! Radical-preserving generator reduction: the gcd trick, the Kronecker step
//! and its two iterated forms (through complementary sequences, and through
//! boundaries of the localization `A[a⁻¹]`).

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::cert::{CertBuilder, CertKind, CertValue, ReductionCert};
use super::{boundary_step, pairs_prefix};
use crate::error::{Error, Result};
use crate::poly::{krull_dimension, Poly};
use crate::zariski::{dim_cert_search, verify_complementary, RadQuotientRing};

/// From `uv ∈ √M`, witnesses for `D(u, v) = D(u + v)`.
pub fn gcd_trick(r: &RadQuotientRing, u: &Poly, v: &Poly) -> Result<ReductionCert> {
    let mut b = CertBuilder::new(CertKind::GcdTrick, r);
    b.put("u", CertValue::Poly(u.clone()));
    b.put("v", CertValue::Poly(v.clone()));
    b.hypothesis_radical("hyp", &u.checked_mul(v)?, &[])?;
    let s = u + v;
    b.radical("u", u, core::slice::from_ref(&s))?;
    b.radical("v", v, core::slice::from_ref(&s))?;
    b.finish()
}

pub(crate) fn verify_gcd_trick(c: &ReductionCert) -> Result<()> {
    let (u, v) = (c.poly("u")?, c.poly("v")?);
    let k = c.checker();
    let s = u + v;
    k.radical("hyp", &(u * v), &[])?;
    k.radical("u", u, core::slice::from_ref(&s))?;
    k.radical("v", v, core::slice::from_ref(&s))
}

fn shifted(bs: &[Poly], xs: &[Poly], a: &Poly) -> Vec<Poly> {
    bs.iter().zip(xs).map(|(b, x)| b + &(a * x)).collect()
}

/// For complementary `bs`, `xs`: `D(a, b₁, …, bₙ) = D(b₁ + ax₁, …, bₙ + axₙ)`.
///
/// Level `k` records `a ∈ √(M + ⟨b₀, x₀, …, b_{k−1}, x_{k−1}⟩ + ⟨outputs from k⟩)`,
/// i.e. the claim inside the quotient by the first `k` pairs; level `n` is
/// the trivial ring and level `0` the conclusion.
pub fn kronecker_step(
    r: &RadQuotientRing,
    bs: &[Poly],
    xs: &[Poly],
    a: &Poly,
) -> Result<ReductionCert> {
    if bs.len() != xs.len() {
        return Err(Error::Invalid("sequences of different lengths".into()));
    }
    let check = verify_complementary(r, bs, xs)?;
    let mut b = CertBuilder::new(CertKind::KroneckerStep, r);
    b.put("bs", CertValue::Vector(bs.to_vec()));
    b.put("xs", CertValue::Vector(xs.to_vec()));
    b.put("a", CertValue::Poly(a.clone()));
    let n = bs.len();
    for (i, q) in check.inequalities.iter().enumerate() {
        let Some(w) = &q.witness else {
            return Err(Error::Hypothesis(format!("not complementary: {}", q.label)));
        };
        let label = if i == n {
            String::from("comp-unit")
        } else {
            format!("comp[{i}]")
        };
        b.witness(&label, w.clone());
    }
    let outs = shifted(bs, xs, a);
    b.put("outputs", CertValue::Vector(outs.clone()));
    for k in (0..=n).rev() {
        let mut gens = pairs_prefix(bs, xs, k);
        gens.extend(outs[k..].iter().cloned());
        b.radical(&format!("level[{k}]"), a, &gens)?;
    }
    for k in 0..n {
        let prod = &bs[k] * &(a * &xs[k]);
        b.radical(&format!("gcd[{k}]"), &prod, &pairs_prefix(bs, xs, k))?;
    }
    for (i, bi) in bs.iter().enumerate() {
        b.radical(&format!("back[{i}]"), bi, &outs)?;
    }
    b.finish()
}

pub(crate) fn verify_kronecker_step(c: &ReductionCert) -> Result<()> {
    let (bs, xs, a) = (c.vector("bs")?, c.vector("xs")?, c.poly("a")?);
    let outs = c.vector("outputs")?;
    let n = bs.len();
    if xs.len() != n || outs != shifted(bs, xs, a).as_slice() {
        return Err(Error::Verification("outputs do not match the data".into()));
    }
    let k = c.checker();
    for i in 0..n {
        let prod = &bs[i] * &xs[i];
        if i == 0 {
            k.radical("comp[0]", &prod, &[])?;
        } else {
            k.radical(
                &format!("comp[{i}]"),
                &prod,
                &[bs[i - 1].clone(), xs[i - 1].clone()],
            )?;
        }
    }
    match n {
        0 => k.unit("comp-unit", &[])?,
        _ => k.unit("comp-unit", &[bs[n - 1].clone(), xs[n - 1].clone()])?,
    }
    for l in 0..=n {
        let mut gens = pairs_prefix(bs, xs, l);
        gens.extend(outs[l..].iter().cloned());
        k.radical(&format!("level[{l}]"), a, &gens)?;
    }
    for l in 0..n {
        let prod = &bs[l] * &(a * &xs[l]);
        k.radical(&format!("gcd[{l}]"), &prod, &pairs_prefix(bs, xs, l))?;
    }
    for (i, bi) in bs.iter().enumerate() {
        k.radical(&format!("back[{i}]"), bi, outs)?;
    }
    Ok(())
}

/// Number of generators a reduction may stop at: `Kdim(A/M) + 1`.
fn generator_bound(r: &RadQuotientRing) -> Result<usize> {
    Ok((r.krull_dim()? + 1).max(0) as usize)
}

fn two_way(b: &mut CertBuilder, inputs: &[Poly], outputs: &[Poly]) -> Result<()> {
    for (i, g) in inputs.iter().enumerate() {
        b.radical(&format!("fwd[{i}]"), g, outputs)?;
    }
    for (j, h) in outputs.iter().enumerate() {
        b.member(&format!("back[{j}]"), h, inputs)?;
    }
    Ok(())
}

/// Radically equivalent generators, at most `Kdim(A/M) + 1` of them, each
/// of the form `bᵢ + cᵢ` with `cᵢ` in the ideal of the dropped generators.
/// Complements come from [`dim_cert_search`].
pub fn kronecker_reduce(
    r: &RadQuotientRing,
    gens: &[Poly],
    degree_bound: u32,
) -> Result<ReductionCert> {
    let bound = generator_bound(r)?;
    let mut b = CertBuilder::new(CertKind::KroneckerReduce, r);
    b.put("inputs", CertValue::Vector(gens.to_vec()));
    b.put("bound", CertValue::Int(bound as i64));
    let mut current = gens.to_vec();
    while current.len() > bound {
        r.ring().budget().check_cancel()?;
        if bound == 0 {
            // Trivial ring: the empty family already has the full radical.
            current.clear();
            break;
        }
        let bs = &current[..bound];
        let a = current[bound].clone();
        let cert = dim_cert_search(r, bs, degree_bound)?.ok_or_else(|| {
            Error::Hypothesis("no collapse certificate within the dimension bound".into())
        })?;
        let step = kronecker_step(r, bs, &cert.complements, &a)?;
        let mut next = step.vector("outputs")?.to_vec();
        next.extend(current[bound + 1..].iter().cloned());
        b.step(step);
        current = next;
    }
    b.put("outputs", CertValue::Vector(current.clone()));
    two_way(&mut b, gens, &current)?;
    b.finish()
}

/// The same reduction through [`localized_lemma`]: each dropped generator
/// `a` updates the kept ones to `L + aX` with `D(a, L) = D(L + aX)`.
pub fn kronecker_reduce_localized(r: &RadQuotientRing, gens: &[Poly]) -> Result<ReductionCert> {
    let bound = generator_bound(r)?;
    let mut b = CertBuilder::new(CertKind::KroneckerLocalized, r);
    b.put("inputs", CertValue::Vector(gens.to_vec()));
    b.put("bound", CertValue::Int(bound as i64));
    let mut current: Vec<Poly> = gens.iter().take(bound).cloned().collect();
    for a in gens.iter().skip(bound) {
        r.ring().budget().check_cancel()?;
        let xs = localized_lemma(r, a, a, &current)?;
        current = shifted(&current, &xs, a);
    }
    b.put("outputs", CertValue::Vector(current.clone()));
    two_way(&mut b, gens, &current)?;
    b.finish()
}

pub(crate) fn verify_reduce(c: &ReductionCert) -> Result<()> {
    let (inputs, outputs) = (c.vector("inputs")?, c.vector("outputs")?);
    let bound = c.int("bound")?;
    let modulus = crate::poly::IdealRep::new(&c.ring, c.modulus.clone())?;
    if bound != (krull_dimension(&modulus)? + 1).max(0) {
        return Err(Error::Verification(
            "generator bound is not Kdim + 1".into(),
        ));
    }
    if outputs.len() as i64 > bound {
        return Err(Error::Verification("too many output generators".into()));
    }
    let k = c.checker();
    for (i, g) in inputs.iter().enumerate() {
        k.radical(&format!("fwd[{i}]"), g, outputs)?;
    }
    for (j, h) in outputs.iter().enumerate() {
        k.member(&format!("back[{j}]"), h, inputs)?;
    }
    Ok(())
}

/// Given `D(b) ≤ D(a) ≤ D(b, L)` and the dimension bound on `A[a⁻¹]`, finds
/// `X` with `D(L + bX) = D(b, L)`.
///
/// Everything is decided by membership `a ∈ √(·)`, which is `1 ∈ ·` in
/// `A[a⁻¹]`; boundaries are therefore taken in `A` and only ever tested
/// after inverting `a`.
pub fn localized_lemma(r: &RadQuotientRing, a: &Poly, b: &Poly, l: &[Poly]) -> Result<Vec<Poly>> {
    if r.in_radical(b, core::slice::from_ref(a))?.is_none() {
        return Err(Error::Hypothesis("D(b) ≤ D(a) fails".into()));
    }
    let mut bl = alloc::vec![b.clone()];
    bl.extend(l.iter().cloned());
    if r.in_radical(a, &bl)?.is_none() {
        return Err(Error::Hypothesis("D(a) ≤ D(b, L) fails".into()));
    }
    localized_rec(r, a, b, l)
}

fn localized_rec(r: &RadQuotientRing, a: &Poly, b: &Poly, l: &[Poly]) -> Result<Vec<Poly>> {
    r.ring().budget().check_cancel()?;
    let n = l.len();
    if n == 0 {
        return match r.in_radical(a, &[])? {
            Some(_) => Ok(Vec::new()),
            None => Err(Error::Hypothesis(
                "dimension bound fails for the localization".into(),
            )),
        };
    }
    let step = boundary_step(r, &l[n - 1])?;
    let mut xs = localized_rec(&step.quotient, a, b, &l[..n - 1])?;
    let z = shifted(&l[..n - 1], &xs, b);
    let w = step
        .quotient
        .in_radical(a, &z)?
        .ok_or_else(|| Error::Verification("lost a ∈ D(Z) on the boundary".into()))?;
    xs.push(step.saturation_part(&w));
    Ok(xs)
}

/// `X = aY` with `a ∈ D(L − aX)`: the localized lemma with `b = a²`.
pub fn localized_multiple(r: &RadQuotientRing, a: &Poly, l: &[Poly]) -> Result<Vec<Poly>> {
    let xs = localized_lemma(r, a, &(a * a), l)?;
    Ok(xs.iter().map(|x| -&(a * x)).collect())
}
