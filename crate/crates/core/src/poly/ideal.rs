//! Ideals, membership witnesses and the elimination-based ideal operations.

use alloc::format;
use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec::Vec;

use once_cell::race::OnceBox;

use super::groebner::{divide, GroebnerBasis};
use super::polynomial::same_ring;
use super::{Monomial, MonomialOrder, Poly, Ring};
use crate::error::{Error, Result};

/// The ideal `⟨gens⟩` with a lazily computed, cofactor-tracked Gröbner basis.
pub struct IdealRep {
    ring: Arc<Ring>,
    gens: Vec<Poly>,
    gb: OnceBox<GroebnerBasis>,
}

impl Clone for IdealRep {
    fn clone(&self) -> Self {
        IdealRep {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            gb: self.gb.clone(),
        }
    }
}

impl core::fmt::Debug for IdealRep {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_list().entries(self.gens.iter()).finish()
    }
}

impl IdealRep {
    pub fn new(ring: &Arc<Ring>, gens: Vec<Poly>) -> Result<IdealRep> {
        if gens.iter().any(|g| !same_ring(g.ring(), ring)) {
            return Err(Error::RingMismatch);
        }
        Ok(IdealRep {
            ring: ring.clone(),
            gens,
            gb: OnceBox::new(),
        })
    }

    pub fn zero(ring: &Arc<Ring>) -> IdealRep {
        IdealRep::new(ring, Vec::new()).unwrap()
    }

    pub fn unit(ring: &Arc<Ring>) -> IdealRep {
        IdealRep::new(ring, alloc::vec![Poly::one(ring)]).unwrap()
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    /// The tracked Gröbner basis; computed once, shared by clones made after.
    pub fn groebner(&self) -> Result<&GroebnerBasis> {
        self.gb.get_or_try_init(|| {
            GroebnerBasis::compute(&self.ring, &self.gens, true).map(alloc::boxed::Box::new)
        })
    }

    pub fn contains(&self, f: &Poly) -> Result<bool> {
        Ok(self.groebner()?.contains(f))
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.groebner()?.is_unit())
    }

    pub fn normal_form(&self, f: &Poly) -> Result<Poly> {
        Ok(self.groebner()?.normal_form(f))
    }

    /// `self + ⟨more⟩`.
    pub fn with(&self, more: &[Poly]) -> Result<IdealRep> {
        let mut gens = self.gens.clone();
        gens.extend(more.iter().cloned());
        IdealRep::new(&self.ring, gens)
    }

    pub fn sum(&self, other: &IdealRep) -> Result<IdealRep> {
        self.with(&other.gens)
    }

    pub fn product(&self, other: &IdealRep) -> Result<IdealRep> {
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.checked_mul(b)?);
            }
        }
        IdealRep::new(&self.ring, gens)
    }

    pub fn same_ideal(&self, other: &IdealRep) -> Result<bool> {
        Ok(self.groebner()? == other.groebner()?)
    }
}

/// `Σ cofactors[i] · generators[i] = element^exponent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipWitness {
    pub element: Poly,
    pub generators: Vec<Poly>,
    pub cofactors: Vec<Poly>,
    pub exponent: u32,
}

impl MembershipWitness {
    pub fn combination(&self) -> Poly {
        let ring = self.element.ring();
        self.cofactors
            .iter()
            .zip(&self.generators)
            .fold(Poly::zero(ring), |acc, (c, g)| &acc + &(c * g))
    }

    pub fn verify(&self) -> bool {
        self.cofactors.len() == self.generators.len()
            && self.combination() == self.element.pow(self.exponent)
    }
}

fn checked_witness(w: MembershipWitness) -> Result<MembershipWitness> {
    if w.verify() {
        Ok(w)
    } else {
        Err(Error::Verification(format!(
            "membership witness for {} does not re-verify",
            w.element
        )))
    }
}

/// Cofactors of `f` in the generators of `ideal`, or `None` if `f ∉ ideal`.
pub fn ideal_member(f: &Poly, ideal: &IdealRep) -> Result<Option<MembershipWitness>> {
    f.check_ring(&Poly::zero(&ideal.ring))?;
    let Some(cofactors) = ideal.groebner()?.express(f) else {
        return Ok(None);
    };
    checked_witness(MembershipWitness {
        element: f.clone(),
        generators: ideal.gens.clone(),
        cofactors,
        exponent: 1,
    })
    .map(Some)
}

/// Ring with one fresh variable `t` in front, eliminated first.
fn elimination_ring(ring: &Arc<Ring>) -> Arc<Ring> {
    ring.extend_front(1, MonomialOrder::Block(1))
}

fn lift(p: &Poly, ext: &Arc<Ring>) -> Poly {
    let map: Vec<usize> = (1..=p.ring().nvars()).collect();
    p.map_into(ext, &map)
}

/// Back to the base ring; the `t` exponent must be zero.
fn contract(p: &Poly, base: &Arc<Ring>) -> Poly {
    let terms = p
        .terms()
        .iter()
        .map(|(m, c)| {
            debug_assert_eq!(m.exps()[0], 0);
            (Monomial::new(m.exps()[1..].to_vec()), c.clone())
        })
        .collect();
    Poly::from_terms(base, terms)
}

/// Basis elements free of `t`, moved back to the base ring.
fn eliminate_t(ext_gens: &[Poly], ext: &Arc<Ring>, base: &Arc<Ring>) -> Result<Vec<Poly>> {
    let gb = GroebnerBasis::compute(ext, ext_gens, false)?;
    Ok(gb
        .basis()
        .iter()
        .filter(|b| b.degree_in(0) == 0)
        .map(|b| contract(b, base))
        .collect())
}

fn rabinowitsch(f: &Poly, ideal: &IdealRep) -> (Arc<Ring>, Vec<Poly>) {
    let ext = elimination_ring(&ideal.ring);
    let t = Poly::var(&ext, 0);
    let mut gens: Vec<Poly> = ideal.gens.iter().map(|g| lift(g, &ext)).collect();
    gens.push(&Poly::one(&ext) - &(&t * &lift(f, &ext)));
    (ext, gens)
}

/// Decides `f ∈ √ideal` (`1 ∈ ideal + ⟨1 − t·f⟩`), then finds the least `k`
/// with `f^k ∈ ideal` and its cofactors.
pub fn radical_member(f: &Poly, ideal: &IdealRep) -> Result<Option<MembershipWitness>> {
    f.check_ring(&Poly::zero(&ideal.ring))?;
    if let Some(w) = ideal_member(f, ideal)? {
        return Ok(Some(w));
    }
    let (ext, gens) = rabinowitsch(f, ideal);
    if !GroebnerBasis::compute(&ext, &gens, false)?.is_unit() {
        return Ok(None);
    }
    let gb = ideal.groebner()?;
    let budget = ideal.ring.budget();
    let mut nf = gb.normal_form(f);
    for k in 2..=budget.max_radical_exponent {
        budget.check_cancel()?;
        nf = gb.normal_form(&(&nf * f));
        if nf.is_zero() {
            let cofactors = gb.express(&f.pow(k)).expect("normal form vanished");
            return checked_witness(MembershipWitness {
                element: f.clone(),
                generators: ideal.gens.clone(),
                cofactors,
                exponent: k,
            })
            .map(Some);
        }
    }
    Err(Error::Budget(format!(
        "radical exponent exceeds {}",
        budget.max_radical_exponent
    )))
}

/// The textbook route to a radical witness: from
/// `1 = Σ cᵢ(t)gᵢ + c(t)(1 − tf)` substitute `t = 1/f` and clear
/// denominators with `f^K`, `K` the largest `t`-degree. The exponent is
/// usually not minimal.
pub fn radical_member_by_substitution(
    f: &Poly,
    ideal: &IdealRep,
) -> Result<Option<MembershipWitness>> {
    f.check_ring(&Poly::zero(&ideal.ring))?;
    let (ext, gens) = rabinowitsch(f, ideal);
    let gb = GroebnerBasis::compute(&ext, &gens, true)?;
    let Some(cof) = gb.express(&Poly::one(&ext)) else {
        return Ok(None);
    };
    let n = ideal.gens.len();
    let top = cof[..n]
        .iter()
        .map(|c| c.degree_in(0))
        .max()
        .unwrap_or(0)
        .max(1);
    let base = &ideal.ring;
    // cᵢ(1/f)·f^K = Σ_d c_{i,d}·f^{K−d}
    let cofactors = cof[..n]
        .iter()
        .map(|c| {
            let mut acc = Poly::zero(base);
            for (m, coeff) in c.terms() {
                let d = m.exps()[0];
                let rest = Monomial::new(m.exps()[1..].to_vec());
                acc = &acc + &f.pow(top - d).mul_term(&rest, coeff);
            }
            acc
        })
        .collect();
    checked_witness(MembershipWitness {
        element: f.clone(),
        generators: ideal.gens.clone(),
        cofactors,
        exponent: top,
    })
    .map(Some)
}

/// `(ideal : f)`, from `ideal ∩ ⟨f⟩` by elimination.
pub fn ideal_quotient(ideal: &IdealRep, f: &Poly) -> Result<IdealRep> {
    let base = &ideal.ring;
    f.check_ring(&Poly::zero(base))?;
    if f.is_zero() {
        return Ok(IdealRep::unit(base));
    }
    let meet = intersection(ideal, &IdealRep::new(base, alloc::vec![f.clone()])?)?;
    let gens = meet
        .gens
        .iter()
        .map(|g| {
            g.div_exact(f).ok_or_else(|| {
                Error::Verification("intersection element not divisible".to_string())
            })
        })
        .collect::<Result<Vec<_>>>()?;
    IdealRep::new(base, gens)
}

/// `a ∩ b` as the `t`-free part of `t·a + (1 − t)·b`.
pub fn intersection(a: &IdealRep, b: &IdealRep) -> Result<IdealRep> {
    let base = &a.ring;
    if !same_ring(base, &b.ring) {
        return Err(Error::RingMismatch);
    }
    let ext = elimination_ring(base);
    let t = Poly::var(&ext, 0);
    let s = &Poly::one(&ext) - &t;
    let mut gens: Vec<Poly> = a.gens.iter().map(|g| &t * &lift(g, &ext)).collect();
    gens.extend(b.gens.iter().map(|g| &s * &lift(g, &ext)));
    IdealRep::new(base, eliminate_t(&gens, &ext, base)?)
}

/// `(I : f^∞)` with the stabilization exponent `e` and, for each generator
/// `s` of the saturation, a witness that `f^e·s ∈ I`.
#[derive(Clone, Debug)]
pub struct Saturation {
    pub ideal: IdealRep,
    pub exponent: u32,
    pub witnesses: Vec<MembershipWitness>,
}

pub fn saturation(ideal: &IdealRep, f: &Poly) -> Result<Saturation> {
    let base = &ideal.ring;
    f.check_ring(&Poly::zero(base))?;
    let sat = if f.is_zero() {
        IdealRep::unit(base)
    } else if f.is_constant() {
        ideal.clone()
    } else {
        let (ext, gens) = rabinowitsch(f, ideal);
        IdealRep::new(base, eliminate_t(&gens, &ext, base)?)?
    };
    let gb = ideal.groebner()?;
    let budget = base.budget();
    let mut exponent = if f.is_zero() { 1 } else { 0 };
    for s in sat.gens() {
        let mut e = 0;
        let mut nf = gb.normal_form(s);
        while !nf.is_zero() {
            budget.check_cancel()?;
            e += 1;
            if e > budget.max_radical_exponent {
                return Err(Error::Budget(format!(
                    "saturation exponent exceeds {}",
                    budget.max_radical_exponent
                )));
            }
            nf = gb.normal_form(&(&nf * f));
        }
        exponent = exponent.max(e);
    }
    let fe = f.pow(exponent);
    let witnesses = sat
        .gens()
        .iter()
        .map(|s| {
            let target = &fe * s;
            let cofactors = gb.express(&target).expect("saturation exponent checked");
            checked_witness(MembershipWitness {
                element: target,
                generators: ideal.gens.clone(),
                cofactors,
                exponent: 1,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Saturation {
        ideal: sat,
        exponent,
        witnesses,
    })
}

/// Krull dimension of `A/ideal` (`-1` for the unit ideal): the largest set
/// of variables containing the support of no leading monomial.
pub fn krull_dimension(ideal: &IdealRep) -> Result<i64> {
    let gb = ideal.groebner()?;
    if gb.is_unit() {
        return Ok(-1);
    }
    let n = ideal.ring.nvars();
    if n > 20 {
        return Err(Error::Capacity(format!(
            "{n} variables is too many for subset search"
        )));
    }
    let supports: Vec<u32> = gb
        .leading_monomials()
        .iter()
        .map(|m| {
            m.exps()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .fold(0u32, |acc, (i, _)| acc | (1 << i))
        })
        .collect();
    let best = (0u32..(1 << n))
        .filter(|&set| supports.iter().all(|&s| s & !set != 0))
        .map(|set| set.count_ones())
        .max()
        .unwrap_or(0);
    Ok(best as i64)
}

/// Quotients of `f` by arbitrary divisors (plain multivariate division).
pub fn reduce_by(f: &Poly, divisors: &[Poly]) -> (Vec<Poly>, Poly) {
    divide(f, divisors)
}
