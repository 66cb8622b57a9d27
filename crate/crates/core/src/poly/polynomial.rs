use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Coeff, Monomial, Ring};
use crate::error::{Error, Result};

/// A polynomial: terms sorted strictly decreasing in the ring's monomial
/// order, no zero coefficients, coefficients in canonical form.
#[derive(Clone)]
pub struct Poly {
    ring: Arc<Ring>,
    terms: Vec<(Monomial, Coeff)>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && same_ring(&self.ring, &other.ring)
    }
}

impl Eq for Poly {}

pub(crate) fn same_ring(a: &Arc<Ring>, b: &Arc<Ring>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Poly {
    pub fn zero(ring: &Arc<Ring>) -> Poly {
        Poly {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Arc<Ring>) -> Poly {
        Self::constant(ring, Coeff::one())
    }

    pub fn constant(ring: &Arc<Ring>, c: Coeff) -> Poly {
        Self::term(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn from_int(ring: &Arc<Ring>, n: i64) -> Poly {
        Self::constant(ring, ring.coeff_from_int(n))
    }

    pub fn var(ring: &Arc<Ring>, i: usize) -> Poly {
        Self::term(ring, Monomial::var(ring.nvars(), i), Coeff::one())
    }

    pub fn term(ring: &Arc<Ring>, m: Monomial, c: Coeff) -> Poly {
        let c = ring.normalize(c);
        let terms = if c.is_zero() {
            Vec::new()
        } else {
            alloc::vec![(m, c)]
        };
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(ring: &Arc<Ring>, mut terms: Vec<(Monomial, Coeff)>) -> Poly {
        let order = ring.order();
        terms.sort_by(|a, b| b.0.cmp_in(&a.0, order));
        let mut out: Vec<(Monomial, Coeff)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = &last.1 + c,
                _ => out.push((m, c)),
            }
        }
        let terms = out
            .into_iter()
            .filter_map(|(m, c)| {
                let c = ring.normalize(c);
                (!c.is_zero()).then_some((m, c))
            })
            .collect();
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&Coeff> {
        self.terms.first().map(|t| &t.1)
    }

    /// Total degree; `-1` for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.terms
            .iter()
            .map(|(m, _)| m.degree() as i64)
            .max()
            .unwrap_or(-1)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.exps()[var])
            .max()
            .unwrap_or(0)
    }

    pub fn check_ring(&self, other: &Poly) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        Ok(self.product(other))
    }

    fn merge(&self, other: &Poly, negate: bool) -> Poly {
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let r = &self.ring;
        let sign = |c: &Coeff| if negate { r.neg(c) } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp_in(&b[j].0, order) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), sign(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        r.normalize(&a[i].1 - &b[j].1)
                    } else {
                        r.add(&a[i].1, &b[j].1)
                    };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), sign(c))));
        Poly {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    fn product(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.ring);
        }
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Poly::zero(&self.ring);
        for (m, c) in &small.terms {
            acc = acc.merge(&big.mul_term(m, c), false);
        }
        acc
    }

    /// `c · m · self`.
    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        let r = &self.ring;
        let terms = self
            .terms
            .iter()
            .map(|(n, d)| (n.mul(m), r.mul(c, d)))
            .collect();
        Poly {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn scale(&self, c: &Coeff) -> Poly {
        self.mul_term(&Monomial::one(self.ring.nvars()), c)
    }

    /// `self − c · m · g`.
    pub fn sub_mul_term(&self, c: &Coeff, m: &Monomial, g: &Poly) -> Poly {
        self.merge(&g.mul_term(m, c), true)
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(&self.ring);
        for _ in 0..k {
            acc = acc.product(self);
        }
        acc
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Poly {
        match self.leading_coeff() {
            None => self.clone(),
            Some(c) => self.scale(&self.ring.inv(c)),
        }
    }

    /// Replaces variable `var` by `value`.
    pub fn substitute(&self, var: usize, value: &Poly) -> Result<Poly> {
        self.check_ring(value)?;
        let n = self.ring.nvars();
        let mut acc = Poly::zero(&self.ring);
        let mut powers: Vec<Poly> = alloc::vec![Poly::one(&self.ring)];
        for (m, c) in &self.terms {
            let e = m.exps()[var] as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap().product(value);
                powers.push(next);
            }
            let mut rest = m.exps().to_vec();
            rest[var] = 0;
            debug_assert_eq!(rest.len(), n);
            acc = acc.merge(&powers[e].mul_term(&Monomial::new(rest), c), false);
        }
        Ok(acc)
    }

    /// Moves the polynomial into `target`, sending variable `i` to
    /// `var_map[i]`.
    pub fn map_into(&self, target: &Arc<Ring>, var_map: &[usize]) -> Poly {
        let n = target.nvars();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = alloc::vec![0; n];
                for (i, &k) in m.exps().iter().enumerate() {
                    e[var_map[i]] += k;
                }
                (Monomial::new(e), c.clone())
            })
            .collect();
        Poly::from_terms(target, terms)
    }

    /// Exact quotient `self / g`, if `g` divides `self`.
    pub fn div_exact(&self, g: &Poly) -> Option<Poly> {
        if g.is_zero() {
            return self.is_zero().then(|| self.clone());
        }
        let lm = g.leading_monomial().unwrap();
        let lc_inv = self.ring.inv(g.leading_coeff().unwrap());
        let mut rest = self.clone();
        let mut q = Vec::new();
        while let Some((m, c)) = rest.terms.first().cloned() {
            if !lm.divides(&m) {
                return None;
            }
            let t = lm.quotient_of(&m);
            let k = self.ring.mul(&c, &lc_inv);
            rest = rest.sub_mul_term(&k, &t, g);
            q.push((t, k));
        }
        Some(Poly::from_terms(&self.ring, q))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let vars = self.ring.vars();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = self.ring.characteristic() == 0 && *c < Coeff::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            if k == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            let mut parts: Vec<alloc::string::String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                parts.push(alloc::format!("{abs}"));
            }
            for (i, &e) in m.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => parts.push(vars[i].clone()),
                    _ => parts.push(alloc::format!("{}^{}", vars[i], e)),
                }
            }
            f.write_str(&parts.join("*"))?;
        }
        Ok(())
    }
}

fn assert_same(a: &Poly, b: &Poly) {
    assert!(
        same_ring(&a.ring, &b.ring),
        "arithmetic between polynomials of different rings"
    );
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_same(self, rhs);
        self.merge(rhs, false)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert_same(self, rhs);
        self.merge(rhs, true)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_same(self, rhs);
        self.product(rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::zero(&self.ring).merge(self, true)
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}
