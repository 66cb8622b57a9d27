//! Buchberger's algorithm with optional cofactor tracking.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::polynomial::same_ring;
use super::{Coeff, Monomial, Poly, Ring};
use crate::error::{Error, Result};

/// A reduced Gröbner basis of `⟨gens⟩`. When tracked, `to_gens[i]` writes
/// `basis[i]` in the input generators and `from_gens[j]` writes `gens[j]` in
/// the basis.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Arc<Ring>,
    gens: Vec<Poly>,
    basis: Vec<Poly>,
    to_gens: Option<Vec<Vec<Poly>>>,
    from_gens: Option<Vec<Vec<Poly>>>,
}

/// Tracked Gröbner basis of the ideal generated by `gens` in `ring`.
pub fn groebner(ring: &Arc<Ring>, gens: &[Poly]) -> Result<GroebnerBasis> {
    GroebnerBasis::compute(ring, gens, true)
}

/// Division of `f` by `divisors`: quotients and the fully reduced remainder.
pub(crate) fn divide(f: &Poly, divisors: &[Poly]) -> (Vec<Poly>, Poly) {
    let ring = f.ring();
    let mut q: Vec<Vec<(Monomial, Coeff)>> = alloc::vec![Vec::new(); divisors.len()];
    let mut rem: Vec<(Monomial, Coeff)> = Vec::new();
    let inv: Vec<Coeff> = divisors
        .iter()
        .map(|g| ring.inv(g.leading_coeff().expect("zero divisor")))
        .collect();
    let mut p = f.clone();
    while let Some((m, c)) = p.terms().first().cloned() {
        let hit = divisors
            .iter()
            .position(|g| g.leading_monomial().unwrap().divides(&m));
        match hit {
            Some(i) => {
                let t = divisors[i].leading_monomial().unwrap().quotient_of(&m);
                let k = ring.mul(&c, &inv[i]);
                p = p.sub_mul_term(&k, &t, &divisors[i]);
                q[i].push((t, k));
            }
            None => {
                let lead = Poly::term(ring, m.clone(), c.clone());
                p = &p - &lead;
                rem.push((m, c));
            }
        }
    }
    let quotients = q.into_iter().map(|t| Poly::from_terms(ring, t)).collect();
    (quotients, Poly::from_terms(ring, rem))
}

/// `Σ coeffs[i] · rows[i]`, where every row has `width` entries.
fn combine(ring: &Arc<Ring>, coeffs: &[Poly], rows: &[Vec<Poly>], width: usize) -> Vec<Poly> {
    let mut out = alloc::vec![Poly::zero(ring); width];
    for (c, row) in coeffs.iter().zip(rows) {
        if c.is_zero() {
            continue;
        }
        for (o, r) in out.iter_mut().zip(row) {
            if !r.is_zero() {
                *o = &*o + &(c * r);
            }
        }
    }
    out
}

struct Work {
    ring: Arc<Ring>,
    width: usize,
    track: bool,
    polys: Vec<Poly>,
    cofs: Vec<Vec<Poly>>,
    pending: BTreeSet<(usize, usize)>,
}

impl Work {
    fn lm(&self, i: usize) -> &Monomial {
        self.polys[i].leading_monomial().unwrap()
    }

    /// Reduces `f` (with cofactor row `cof`) against everything so far.
    fn reduce(&self, f: &Poly, cof: &[Poly]) -> (Poly, Vec<Poly>) {
        let (q, r) = divide(f, &self.polys);
        if !self.track {
            return (r, Vec::new());
        }
        let sub = combine(&self.ring, &q, &self.cofs, self.width);
        let row = cof.iter().zip(&sub).map(|(a, b)| a - b).collect();
        (r, row)
    }

    fn add(&mut self, f: Poly, cof: Vec<Poly>) {
        let lc = self.ring.inv(f.leading_coeff().unwrap());
        let f = f.scale(&lc);
        let cof = if self.track {
            cof.iter().map(|c| c.scale(&lc)).collect()
        } else {
            cof
        };
        let n = self.polys.len();
        self.polys.push(f);
        self.cofs.push(cof);
        for i in 0..n {
            self.pending.insert((i, n));
        }
    }

    /// Product and chain criteria.
    fn skippable(&self, i: usize, j: usize) -> bool {
        let (a, b) = (self.lm(i), self.lm(j));
        if a.coprime(b) {
            return true;
        }
        let l = a.lcm(b);
        (0..self.polys.len()).any(|k| {
            k != i
                && k != j
                && self.lm(k).divides(&l)
                && !self.pending.contains(&(i.min(k), i.max(k)))
                && !self.pending.contains(&(j.min(k), j.max(k)))
        })
    }

    fn spoly(&self, i: usize, j: usize) -> (Poly, Vec<Poly>) {
        let (f, g) = (&self.polys[i], &self.polys[j]);
        let l = self.lm(i).lcm(self.lm(j));
        let ti = self.lm(i).quotient_of(&l);
        let tj = self.lm(j).quotient_of(&l);
        let one = Coeff::from_integer(1.into());
        let s = &f.mul_term(&ti, &one) - &g.mul_term(&tj, &one);
        if !self.track {
            return (s, Vec::new());
        }
        let row = self.cofs[i]
            .iter()
            .zip(&self.cofs[j])
            .map(|(a, b)| &a.mul_term(&ti, &one) - &b.mul_term(&tj, &one))
            .collect();
        (s, row)
    }

    fn next_pair(&self) -> Option<(usize, usize)> {
        let order = self.ring.order();
        self.pending.iter().copied().min_by(|&(a, b), &(c, d)| {
            let l1 = self.lm(a).lcm(self.lm(b));
            let l2 = self.lm(c).lcm(self.lm(d));
            l1.cmp_in(&l2, order).then((a, b).cmp(&(c, d)))
        })
    }
}

impl GroebnerBasis {
    pub fn compute(ring: &Arc<Ring>, gens: &[Poly], track: bool) -> Result<GroebnerBasis> {
        for g in gens {
            if !same_ring(g.ring(), ring) {
                return Err(Error::RingMismatch);
            }
        }
        let budget = ring.budget();
        let width = gens.len();
        let mut w = Work {
            ring: ring.clone(),
            width,
            track,
            polys: Vec::new(),
            cofs: Vec::new(),
            pending: BTreeSet::new(),
        };
        for (j, g) in gens.iter().enumerate() {
            let unit: Vec<Poly> = if track {
                (0..width)
                    .map(|k| {
                        if k == j {
                            Poly::one(ring)
                        } else {
                            Poly::zero(ring)
                        }
                    })
                    .collect()
            } else {
                Vec::new()
            };
            let (r, cof) = w.reduce(g, &unit);
            if !r.is_zero() {
                w.add(r, cof);
            }
        }
        let mut pairs_done = 0usize;
        while let Some((i, j)) = w.next_pair() {
            budget.check_cancel()?;
            w.pending.remove(&(i, j));
            if w.skippable(i, j) {
                continue;
            }
            pairs_done += 1;
            if pairs_done > budget.max_pairs {
                return Err(Error::Budget(format!(
                    "Gröbner basis exceeded {} S-pairs",
                    budget.max_pairs
                )));
            }
            let (s, cof) = w.spoly(i, j);
            let (r, cof) = w.reduce(&s, &cof);
            if r.is_zero() {
                continue;
            }
            if r.degree() > budget.max_degree as i64 {
                return Err(Error::Budget(format!(
                    "Gröbner basis element of degree {} exceeds bound {}",
                    r.degree(),
                    budget.max_degree
                )));
            }
            let unit = r.is_constant();
            w.add(r, cof);
            if unit {
                // The ideal is everything; no further pairs needed.
                w.pending.clear();
            }
        }
        Ok(Self::finish(ring, gens, w))
    }

    fn finish(ring: &Arc<Ring>, gens: &[Poly], w: Work) -> GroebnerBasis {
        let order = ring.order();
        let n = w.polys.len();
        // Minimalize: keep one element per minimal leading monomial.
        let mut keep: Vec<usize> = Vec::new();
        for i in 0..n {
            let redundant =
                (0..n).any(|k| k != i && w.lm(k).divides(w.lm(i)) && (w.lm(k) != w.lm(i) || k < i));
            if !redundant {
                keep.push(i);
            }
        }
        keep.sort_by(|&a, &b| w.lm(b).cmp_in(w.lm(a), order));
        let mut basis: Vec<Poly> = keep.iter().map(|&i| w.polys[i].clone()).collect();
        let mut cofs: Vec<Vec<Poly>> = if w.track {
            keep.iter().map(|&i| w.cofs[i].clone()).collect()
        } else {
            Vec::new()
        };
        // Interreduce: tails reduced by the others (leading terms are stable).
        for i in 0..basis.len() {
            let others: Vec<Poly> = basis
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i)
                .map(|(_, p)| p.clone())
                .collect();
            let (q, r) = divide(&basis[i], &others);
            // The leading term survives since no other leading monomial divides it.
            if w.track {
                let other_cofs: Vec<Vec<Poly>> = cofs
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != i)
                    .map(|(_, c)| c.clone())
                    .collect();
                let sub = combine(ring, &q, &other_cofs, w.width);
                cofs[i] = cofs[i].iter().zip(&sub).map(|(a, b)| a - b).collect();
            }
            basis[i] = r;
        }
        let from_gens = w.track.then(|| {
            gens.iter()
                .map(|g| {
                    let (q, r) = divide(g, &basis);
                    debug_assert!(r.is_zero());
                    q
                })
                .collect()
        });
        GroebnerBasis {
            ring: ring.clone(),
            gens: gens.to_vec(),
            basis,
            to_gens: w.track.then_some(cofs),
            from_gens,
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn basis(&self) -> &[Poly] {
        &self.basis
    }

    pub fn is_tracked(&self) -> bool {
        self.to_gens.is_some()
    }

    pub fn to_gens(&self) -> Option<&[Vec<Poly>]> {
        self.to_gens.as_deref()
    }

    pub fn from_gens(&self) -> Option<&[Vec<Poly>]> {
        self.from_gens.as_deref()
    }

    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_one()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis
            .iter()
            .map(|b| b.leading_monomial().unwrap().clone())
            .collect()
    }

    pub fn normal_form(&self, f: &Poly) -> Poly {
        divide(f, &self.basis).1
    }

    /// Quotients with respect to the basis and the remainder.
    pub fn reduce(&self, f: &Poly) -> (Vec<Poly>, Poly) {
        divide(f, &self.basis)
    }

    pub fn contains(&self, f: &Poly) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Cofactors of `f` in the input generators, if `f` is in the ideal.
    /// Requires a tracked basis.
    pub fn express(&self, f: &Poly) -> Option<Vec<Poly>> {
        let to = self
            .to_gens
            .as_ref()
            .expect("express needs a tracked basis");
        let (q, r) = divide(f, &self.basis);
        r.is_zero()
            .then(|| combine(&self.ring, &q, to, self.gens.len()))
    }

    /// Re-checks both conversion directions by exact arithmetic.
    pub fn verify(&self) -> bool {
        let (Some(to), Some(from)) = (&self.to_gens, &self.from_gens) else {
            return self.gens.iter().all(|g| self.contains(g));
        };
        let to_ok = self.basis.iter().zip(to).all(|(b, row)| {
            let s = row
                .iter()
                .zip(&self.gens)
                .fold(Poly::zero(&self.ring), |acc, (c, g)| &acc + &(c * g));
            &s == b
        });
        let from_ok = self.gens.iter().zip(from).all(|(g, row)| {
            let s = row
                .iter()
                .zip(&self.basis)
                .fold(Poly::zero(&self.ring), |acc, (c, b)| &acc + &(c * b));
            &s == g
        });
        to_ok && from_ok
    }
}

impl PartialEq for GroebnerBasis {
    /// Equality of ideals: reduced bases are unique.
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.basis == other.basis
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly_list;

    #[test]
    fn small_bases() {
        let r = Ring::new(0, &["x", "y"]).unwrap();
        let g = groebner(&r, &parse_poly_list(&r, "x+y, x-y").unwrap()).unwrap();
        assert_eq!(g.basis(), &parse_poly_list(&r, "x, y").unwrap()[..]);
        assert!(g.verify());
        let g = groebner(&r, &parse_poly_list(&r, "x, 1+x").unwrap()).unwrap();
        assert!(g.is_unit());
        assert!(g.verify());
        let g = groebner(&r, &parse_poly_list(&r, "x^2*y - 1, x*y^2 - x").unwrap()).unwrap();
        assert!(g.verify());
        let again = groebner(&r, g.basis()).unwrap();
        assert_eq!(again.basis(), g.basis());
    }
}
