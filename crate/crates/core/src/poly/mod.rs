//! Exact multivariate polynomials over `ℚ` and `𝔽p`, Gröbner bases with
//! cofactor tracking, and the ideal operations built on them.

mod groebner;
mod ideal;
mod monomial;
mod parse;
mod polynomial;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::sync::atomic::{AtomicBool, Ordering};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use groebner::{groebner, GroebnerBasis};
pub use ideal::{
    ideal_member, ideal_quotient, intersection, krull_dimension, radical_member,
    radical_member_by_substitution, reduce_by, saturation, IdealRep, MembershipWitness, Saturation,
};
pub use monomial::Monomial;
pub use parse::{parse_poly, parse_poly_list};
pub use polynomial::Poly;

/// Exact coefficient. In characteristic `p` only integers in `0..p` occur.
pub type Coeff = BigRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic order.
    GrevLex,
    /// The first `k` variables form a block compared first (by grevlex), the
    /// rest are compared afterwards (by grevlex); eliminates the first block.
    Block(usize),
}

/// Limits on a single Gröbner basis computation. Exceeding any of them is
/// reported as [`Error::Budget`] rather than running on.
#[derive(Clone, Debug)]
pub struct Budget {
    /// Maximum number of S-pairs reduced.
    pub max_pairs: usize,
    /// Maximum total degree of a basis element.
    pub max_degree: u32,
    /// Largest exponent tried when extracting `f^k ∈ I` from `f ∈ √I`.
    pub max_radical_exponent: u32,
    /// Cooperative cancellation: computations stop once this is set.
    pub cancel: Option<Arc<AtomicBool>>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_pairs: 50_000,
            max_degree: 60,
            max_radical_exponent: 256,
            cancel: None,
        }
    }
}

impl Budget {
    pub fn check_cancel(&self) -> Result<()> {
        match &self.cancel {
            Some(flag) if flag.load(Ordering::Relaxed) => Err(Error::Cancelled),
            _ => Ok(()),
        }
    }
}

/// `K[x_1, …, x_n]` with `K = ℚ` (characteristic 0) or `𝔽p`.
#[derive(Clone, Debug)]
pub struct Ring {
    characteristic: u64,
    vars: Vec<String>,
    order: MonomialOrder,
    budget: Budget,
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.characteristic == other.characteristic
            && self.vars == other.vars
            && self.order == other.order
    }
}

impl Eq for Ring {}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_')
}

impl Ring {
    /// Ring with graded reverse lexicographic order and the default budget.
    pub fn new(characteristic: u64, vars: &[&str]) -> Result<Arc<Ring>> {
        Self::with_budget(
            characteristic,
            vars.iter().map(|s| s.to_string()).collect(),
            Budget::default(),
        )
    }

    pub fn with_budget(
        characteristic: u64,
        vars: Vec<String>,
        budget: Budget,
    ) -> Result<Arc<Ring>> {
        if characteristic != 0 && !is_prime(characteristic) {
            return Err(Error::Invalid(format!(
                "characteristic {characteristic} is neither 0 nor prime"
            )));
        }
        if characteristic > u32::MAX as u64 {
            return Err(Error::Invalid("characteristic too large".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            if !valid_name(v) {
                return Err(Error::Invalid(format!("bad variable name {v:?}")));
            }
            if vars[..i].contains(v) {
                return Err(Error::Invalid(format!("duplicate variable {v:?}")));
            }
        }
        Ok(Arc::new(Ring {
            characteristic,
            vars,
            order: MonomialOrder::GrevLex,
            budget,
        }))
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn budget(&self) -> &Budget {
        &self.budget
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// The same ring with `k` fresh variables in front and the given order;
    /// used for elimination and the auxiliary-variable trick.
    pub fn extend_front(&self, k: usize, order: MonomialOrder) -> Arc<Ring> {
        let mut vars: Vec<String> = Vec::with_capacity(self.vars.len() + k);
        let mut n = 0;
        while vars.len() < k {
            let name = format!("_t{n}");
            n += 1;
            if !self.vars.contains(&name) {
                vars.push(name);
            }
        }
        vars.extend(self.vars.iter().cloned());
        Arc::new(Ring {
            characteristic: self.characteristic,
            vars,
            order,
            budget: self.budget.clone(),
        })
    }

    /// The same ring with fresh variables appended under `names`.
    pub fn extend_back(&self, names: &[String]) -> Result<Arc<Ring>> {
        let mut vars = self.vars.clone();
        vars.extend(names.iter().cloned());
        let mut r = Ring::with_budget(self.characteristic, vars, self.budget.clone())?;
        Arc::make_mut(&mut r).order = self.order;
        Ok(r)
    }

    /// Canonical representative of a coefficient.
    pub fn normalize(&self, c: Coeff) -> Coeff {
        if self.characteristic == 0 {
            return c;
        }
        let p = BigInt::from(self.characteristic);
        let num = c.numer().mod_floor_positive(&p);
        let den = c.denom().mod_floor_positive(&p);
        let inv = den.modpow(&(&p - 2u32), &p);
        BigRational::from_integer((num * inv) % &p)
    }

    pub fn coeff_from_int(&self, n: i64) -> Coeff {
        self.normalize(BigRational::from_integer(BigInt::from(n)))
    }

    /// Whether a rational literal makes sense here (no division by `p`).
    pub fn admits(&self, c: &Coeff) -> bool {
        self.characteristic == 0
            || (c.denom() % BigInt::from(self.characteristic)) != BigInt::zero()
    }

    pub fn inv(&self, c: &Coeff) -> Coeff {
        debug_assert!(!c.is_zero());
        self.normalize(c.recip())
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.normalize(a + b)
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.normalize(a * b)
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        self.normalize(-a)
    }

    pub fn one(&self) -> Coeff {
        Coeff::one()
    }
}

trait ModFloor {
    fn mod_floor_positive(&self, p: &BigInt) -> BigInt;
}

impl ModFloor for BigInt {
    fn mod_floor_positive(&self, p: &BigInt) -> BigInt {
        let r = self % p;
        if r.is_negative() {
            r + p
        } else {
            r
        }
    }
}
