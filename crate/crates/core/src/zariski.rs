//! The Zariski lattice of `A = K[X]/M`, decided lazily through radical
//! membership: ring-side Krull and Heitmann boundaries, iterated boundaries
//! and Krull-dimension certificates.
//!
//! Rings here are finitely generated algebras over a field, hence Jacobson
//! rings: `J_A(I) = √I`, and the Heitmann boundary of `j` coincides with its
//! Krull boundary. That assumption is carried explicitly as
//! [`JacobsonPolicy`].

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::poly::{
    ideal_member, intersection, krull_dimension, radical_member, saturation, IdealRep,
    MembershipWitness, Poly, Ring, Saturation,
};

/// Default cap on the degree of certificate cofactors.
pub const DEFAULT_DEGREE_BOUND: u32 = 30;

/// How `J_A(I)` is decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JacobsonPolicy {
    /// `A` is a Jacobson ring, so `J_A(I) = √I`.
    JacobsonRing,
}

/// `A/√M`, with `√M` only ever accessed through radical membership.
#[derive(Clone, Debug)]
pub struct RadQuotientRing {
    ring: Arc<Ring>,
    modulus: IdealRep,
    policy: JacobsonPolicy,
}

/// `R/K_R(j)` together with the saturations `(M : jᵢ^∞)` it was built from.
#[derive(Clone, Debug)]
pub struct Boundary {
    pub quotient: RadQuotientRing,
    pub element: Vec<Poly>,
    pub saturations: Vec<Saturation>,
}

impl RadQuotientRing {
    pub fn new(ring: &Arc<Ring>, modulus: Vec<Poly>) -> Result<Self> {
        Ok(RadQuotientRing {
            ring: ring.clone(),
            modulus: IdealRep::new(ring, modulus)?,
            policy: JacobsonPolicy::JacobsonRing,
        })
    }

    pub fn whole(ring: &Arc<Ring>) -> Self {
        RadQuotientRing {
            ring: ring.clone(),
            modulus: IdealRep::zero(ring),
            policy: JacobsonPolicy::JacobsonRing,
        }
    }

    pub fn from_ideal(modulus: IdealRep) -> Self {
        RadQuotientRing {
            ring: modulus.ring().clone(),
            modulus,
            policy: JacobsonPolicy::JacobsonRing,
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn modulus(&self) -> &IdealRep {
        &self.modulus
    }

    pub fn policy(&self) -> JacobsonPolicy {
        self.policy
    }

    pub fn is_trivial(&self) -> Result<bool> {
        self.modulus.is_unit()
    }

    /// `A/(M + ⟨more⟩)`.
    pub fn quotient_by(&self, more: &[Poly]) -> Result<Self> {
        Ok(RadQuotientRing {
            ring: self.ring.clone(),
            modulus: self.modulus.with(more)?,
            policy: self.policy,
        })
    }

    /// Witness for `f ∈ √(M + ⟨js⟩)`, over the generators `M ++ js`.
    pub fn in_radical(&self, f: &Poly, js: &[Poly]) -> Result<Option<MembershipWitness>> {
        radical_member(f, &self.modulus.with(js)?)
    }

    /// Witness for `1 ∈ M + ⟨js⟩`.
    pub fn unit_in(&self, js: &[Poly]) -> Result<Option<MembershipWitness>> {
        ideal_member(&Poly::one(&self.ring), &self.modulus.with(js)?)
    }

    /// `J`-membership `f ∈ J(M + ⟨js⟩)`, decided through the policy.
    pub fn in_jacobson(&self, f: &Poly, js: &[Poly]) -> Result<Option<MembershipWitness>> {
        match self.policy {
            JacobsonPolicy::JacobsonRing => self.in_radical(f, js),
        }
    }

    /// `D(u) ≤ D(v)`: one radical witness per generator of `u`.
    pub fn leq(&self, u: &[Poly], v: &[Poly]) -> Result<Option<Vec<MembershipWitness>>> {
        let target = self.modulus.with(v)?;
        let mut out = Vec::with_capacity(u.len());
        for f in u {
            match radical_member(f, &target)? {
                Some(w) => out.push(w),
                None => return Ok(None),
            }
        }
        Ok(Some(out))
    }

    /// Upper Krull boundary `M + ⟨j⟩ + ⋂ᵢ (M : jᵢ^∞)`.
    pub fn krull_boundary(&self, j: &[Poly]) -> Result<Boundary> {
        let mut saturations = Vec::with_capacity(j.len());
        for x in j {
            saturations.push(saturation(&self.modulus, x)?);
        }
        let mut meet: Option<IdealRep> = None;
        for s in &saturations {
            meet = Some(match meet {
                None => s.ideal.clone(),
                Some(m) => intersection(&m, &s.ideal)?,
            });
        }
        let mut gens = self.modulus.gens().to_vec();
        gens.extend(j.iter().cloned());
        match meet {
            Some(m) => gens.extend(m.gens().iter().cloned()),
            // The empty ideal has (0 : ∅) = A.
            None => gens.push(Poly::one(&self.ring)),
        }
        Ok(Boundary {
            quotient: RadQuotientRing::new(&self.ring, gens)?,
            element: j.to_vec(),
            saturations,
        })
    }

    /// Heitmann boundary `⟨j⟩ + (J(0) : j)`; under the Jacobson policy the
    /// same ideal as the Krull boundary.
    pub fn heitmann_boundary(&self, j: &[Poly]) -> Result<Boundary> {
        match self.policy {
            JacobsonPolicy::JacobsonRing => self.krull_boundary(j),
        }
    }

    /// Whether `0 ∈ x^ℕ(1 + xA)`, i.e. `1 ∈ (M : x^∞) + xA`: the lower Krull
    /// boundary of `x` is the trivial ring.
    pub fn lower_boundary_collapses(&self, x: &Poly) -> Result<Option<MembershipWitness>> {
        let sat = saturation(&self.modulus, x)?;
        ideal_member(
            &Poly::one(&self.ring),
            &sat.ideal.with(core::slice::from_ref(x))?,
        )
    }

    /// Krull dimension of `A/M` (`-1` when trivial).
    pub fn krull_dim(&self) -> Result<i64> {
        krull_dimension(&self.modulus)
    }
}

/// `D(gens) ∈ Zar A`.
#[derive(Clone, Debug)]
pub struct ZarElem {
    pub ring: Arc<Ring>,
    pub gens: Vec<Poly>,
}

impl ZarElem {
    pub fn new(ring: &Arc<Ring>, gens: Vec<Poly>) -> Result<Self> {
        for g in &gens {
            g.check_ring(&Poly::zero(ring))?;
        }
        Ok(ZarElem {
            ring: ring.clone(),
            gens,
        })
    }

    pub fn join(&self, other: &ZarElem) -> Result<ZarElem> {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        ZarElem::new(&self.ring, gens)
    }

    /// `D(u) ∧ D(v) = D(uᵢvⱼ)`.
    pub fn meet(&self, other: &ZarElem) -> Result<ZarElem> {
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.checked_mul(b)?);
            }
        }
        ZarElem::new(&self.ring, gens)
    }
}

/// `D(u) ≤ D(v)` in `Zar A`, with per-generator radical witnesses.
pub fn zar_leq(u: &ZarElem, v: &ZarElem) -> Result<Option<Vec<MembershipWitness>>> {
    if !Arc::ptr_eq(&u.ring, &v.ring) && *u.ring != *v.ring {
        return Err(Error::RingMismatch);
    }
    RadQuotientRing::whole(&u.ring).leq(&u.gens, &v.gens)
}

pub fn zar_eq(u: &ZarElem, v: &ZarElem) -> Result<bool> {
    Ok(zar_leq(u, v)?.is_some() && zar_leq(v, u)?.is_some())
}

/// One step `I_{k+1} = I_k + ⟨x_k⟩ + (I_k : x_k^∞)` of an iterated boundary.
#[derive(Clone, Debug)]
pub struct BoundaryLevel {
    pub x: Poly,
    pub before: IdealRep,
    pub saturation: Saturation,
    pub after: IdealRep,
}

/// Iterated upper Krull boundary, folding `xs` from the first element on.
pub fn iterated_boundary(r: &RadQuotientRing, xs: &[Poly]) -> Result<Vec<BoundaryLevel>> {
    let mut levels = Vec::with_capacity(xs.len());
    let mut current = r.modulus.clone();
    for x in xs {
        r.ring.budget().check_cancel()?;
        let sat = saturation(&current, x)?;
        let mut gens = current.gens().to_vec();
        gens.push(x.clone());
        gens.extend(sat.ideal.gens().iter().cloned());
        let after = IdealRep::new(&r.ring, gens)?;
        levels.push(BoundaryLevel {
            x: x.clone(),
            before: current,
            saturation: sat,
            after: after.clone(),
        });
        current = after;
    }
    Ok(levels)
}

/// Whether `1 ∈ K[x₀, …, x_ℓ]`.
pub fn sequence_collapses(r: &RadQuotientRing, xs: &[Poly]) -> Result<bool> {
    match iterated_boundary(r, xs)?.last() {
        Some(level) => level.after.is_unit(),
        None => r.is_trivial(),
    }
}

/// A Krull-dimension certificate for one sequence `x₀, …, x_ℓ`:
/// `x₀^{m₀}(x₁^{m₁}(⋯(x_ℓ^{m_ℓ}(1 + a_ℓx_ℓ) + ⋯) + a₁x₁) + a₀x₀) ∈ M`.
#[derive(Clone, Debug)]
pub struct DimCert {
    pub ring: Arc<Ring>,
    pub modulus: Vec<Poly>,
    pub xs: Vec<Poly>,
    pub ms: Vec<u32>,
    pub cofactors: Vec<Poly>,
    pub complements: Vec<Poly>,
    /// The collapse expression as a combination of the modulus generators.
    pub identity: MembershipWitness,
}

/// The left side of the collapse identity, with `y` in the innermost slot.
pub fn collapse_expression(xs: &[Poly], ms: &[u32], cofactors: &[Poly], y: &Poly) -> Poly {
    let mut acc = y.clone();
    for k in (0..xs.len()).rev() {
        acc = &xs[k].pow(ms[k]) * &(&acc + &(&cofactors[k] * &xs[k]));
    }
    acc
}

/// `b_ℓ = 1 + a_ℓx_ℓ`, `b_{k−1} = x_k^{m_k}b_k + a_{k−1}x_{k−1}`.
pub fn complements_from(xs: &[Poly], ms: &[u32], cofactors: &[Poly]) -> Vec<Poly> {
    let n = xs.len();
    if n == 0 {
        return Vec::new();
    }
    let ring = xs[0].ring();
    let mut bs = alloc::vec![Poly::zero(ring); n];
    bs[n - 1] = &Poly::one(ring) + &(&cofactors[n - 1] * &xs[n - 1]);
    for k in (1..n).rev() {
        bs[k - 1] = &(&xs[k].pow(ms[k]) * &bs[k]) + &(&cofactors[k - 1] * &xs[k - 1]);
    }
    bs
}

/// Searches for a collapse certificate of `xs` by computing the iterated
/// boundary and unwinding its saturation and membership witnesses. `None`
/// when the iterated boundary is proper.
pub fn dim_cert_search(
    r: &RadQuotientRing,
    xs: &[Poly],
    degree_bound: u32,
) -> Result<Option<DimCert>> {
    let ring = &r.ring;
    for x in xs {
        x.check_ring(&Poly::zero(ring))?;
    }
    if xs.is_empty() {
        return Ok(None);
    }
    let levels = iterated_boundary(r, xs)?;
    if !levels.last().unwrap().after.is_unit()? {
        return Ok(None);
    }
    let n = xs.len();
    let mut ms = alloc::vec![0u32; n];
    let mut cofactors = alloc::vec![Poly::zero(ring); n];
    let mut y = Poly::one(ring);
    for k in (0..n).rev() {
        let level = &levels[k];
        let w = ideal_member(&y, &level.after)?
            .ok_or_else(|| Error::Verification(format!("lost membership at level {k}")))?;
        // `after` is [before | x | saturation]; the x-cofactor gives a_k.
        let split = level.before.gens().len();
        let a = -&w.cofactors[split];
        ms[k] = level.saturation.exponent;
        y = &xs[k].pow(ms[k]) * &(&y + &(&a * &xs[k]));
        if a.degree() > degree_bound as i64 || y.degree() > degree_bound as i64 {
            return Err(Error::Budget(format!(
                "certificate degree exceeds bound {degree_bound}"
            )));
        }
        cofactors[k] = a;
    }
    let identity = ideal_member(&y, r.modulus())?
        .ok_or_else(|| Error::Verification("collapse expression not in the modulus".into()))?;
    let cert = DimCert {
        ring: ring.clone(),
        modulus: r.modulus.gens().to_vec(),
        xs: xs.to_vec(),
        complements: complements_from(xs, &ms, &cofactors),
        ms,
        cofactors,
        identity,
    };
    if !cert.identity_holds() {
        return Err(Error::Verification(
            "assembled collapse identity fails".into(),
        ));
    }
    Ok(Some(cert))
}

impl DimCert {
    pub fn collapse_expression(&self) -> Poly {
        collapse_expression(&self.xs, &self.ms, &self.cofactors, &Poly::one(&self.ring))
    }

    /// The collapse expression is recomputed and matched against the stored
    /// combination of modulus generators.
    pub fn identity_holds(&self) -> bool {
        let lengths_ok = self.ms.len() == self.xs.len()
            && self.cofactors.len() == self.xs.len()
            && self.complements.len() == self.xs.len();
        lengths_ok
            && self.identity.generators == self.modulus
            && self.identity.exponent == 1
            && self.identity.element == self.collapse_expression()
            && self.identity.verify()
    }

    pub fn verify(&self) -> Result<bool> {
        if !self.identity_holds() {
            return Ok(false);
        }
        if complements_from(&self.xs, &self.ms, &self.cofactors) != self.complements {
            return Ok(false);
        }
        let r = RadQuotientRing::new(&self.ring, self.modulus.clone())?;
        Ok(verify_complementary(&r, &self.complements, &self.xs)?.holds)
    }
}

/// One inequality of a complementary pair of sequences.
#[derive(Clone, Debug)]
pub struct Inequality {
    pub label: String,
    pub witness: Option<MembershipWitness>,
}

#[derive(Clone, Debug)]
pub struct ComplementaryCheck {
    pub holds: bool,
    pub inequalities: Vec<Inequality>,
}

/// Checks `D(b₀x₀) = 0`, `D(bᵢxᵢ) ≤ D(b_{i−1}, x_{i−1})`, `1 = D(b_ℓ, x_ℓ)`.
pub fn verify_complementary(
    r: &RadQuotientRing,
    bs: &[Poly],
    xs: &[Poly],
) -> Result<ComplementaryCheck> {
    if bs.len() != xs.len() {
        return Err(Error::Invalid("sequences of different lengths".into()));
    }
    let mut inequalities = Vec::new();
    let n = xs.len();
    for i in 0..n {
        let prod = &bs[i] * &xs[i];
        let (label, js) = if i == 0 {
            (String::from("D(b0*x0) = 0"), Vec::new())
        } else {
            (
                format!("D(b{i}*x{i}) <= D(b{}, x{})", i - 1, i - 1),
                alloc::vec![bs[i - 1].clone(), xs[i - 1].clone()],
            )
        };
        inequalities.push(Inequality {
            label,
            witness: r.in_radical(&prod, &js)?,
        });
    }
    let last = if n == 0 {
        r.unit_in(&[])?
    } else {
        r.unit_in(&[bs[n - 1].clone(), xs[n - 1].clone()])?
    };
    inequalities.push(Inequality {
        label: if n == 0 {
            String::from("1 = D(0)")
        } else {
            format!("1 = D(b{0}, x{0})", n - 1)
        },
        witness: last,
    });
    let holds = inequalities.iter().all(|q| q.witness.is_some());
    Ok(ComplementaryCheck {
        holds,
        inequalities,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, parse_poly_list};

    fn qx() -> Arc<Ring> {
        Ring::new(0, &["x"]).unwrap()
    }

    #[test]
    fn boundaries_in_one_variable() {
        let r = qx();
        let a = RadQuotientRing::whole(&r);
        let x = parse_poly(&r, "x").unwrap();
        let b = a.krull_boundary(core::slice::from_ref(&x)).unwrap();
        assert!(b
            .quotient
            .modulus()
            .same_ideal(&IdealRep::new(&r, alloc::vec![x.clone()]).unwrap())
            .unwrap());
        let nil = RadQuotientRing::new(&r, parse_poly_list(&r, "x^2").unwrap()).unwrap();
        assert!(nil
            .krull_boundary(core::slice::from_ref(&x))
            .unwrap()
            .quotient
            .is_trivial()
            .unwrap());
        assert!(a
            .krull_boundary(&[Poly::one(&r)])
            .unwrap()
            .quotient
            .is_trivial()
            .unwrap());
        // The transporter of anything by 0 is the whole ring.
        assert!(a
            .heitmann_boundary(&[Poly::zero(&r)])
            .unwrap()
            .quotient
            .is_trivial()
            .unwrap());
    }

    #[test]
    fn certificate_for_x_and_one_plus_x() {
        let r = qx();
        let a = RadQuotientRing::whole(&r);
        let xs = parse_poly_list(&r, "x, 1+x").unwrap();
        assert!(sequence_collapses(&a, &xs).unwrap());
        let cert = dim_cert_search(&a, &xs, DEFAULT_DEGREE_BOUND)
            .unwrap()
            .unwrap();
        assert!(cert.collapse_expression().is_zero());
        assert!(cert.verify().unwrap());
        assert!(dim_cert_search(&a, &xs[..1], DEFAULT_DEGREE_BOUND)
            .unwrap()
            .is_none());
        let bad = verify_complementary(&a, &[Poly::zero(&r), Poly::zero(&r)], &xs).unwrap();
        assert!(!bad.holds);
    }

    #[test]
    fn zariski_relations() {
        let r = Ring::new(0, &["x", "y"]).unwrap();
        let z = |s: &str| ZarElem::new(&r, parse_poly_list(&r, s).unwrap()).unwrap();
        assert!(zar_eq(&z("x*y"), &z("x").meet(&z("y")).unwrap()).unwrap());
        assert!(zar_leq(&z("x+y"), &z("x").join(&z("y")).unwrap())
            .unwrap()
            .is_some());
        assert!(zar_eq(&z("x^2"), &z("x")).unwrap());
        assert!(zar_leq(&z("x"), &z("y")).unwrap().is_none());
    }
}
