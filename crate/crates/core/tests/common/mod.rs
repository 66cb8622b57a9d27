//! Random inputs and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use heitmann_core::genred::PolyMatrix;
use heitmann_core::{FinDistLattice, FinPoset, Poly, Ring};
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;

/// A random partial order on `n` points: each pair `i < j` is related with
/// probability `p`, then transitively closed by the constructor.
pub fn random_poset<R: Rng>(rng: &mut R, n: usize, p: f64) -> FinPoset {
    let mut rel = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                rel.push((i, j));
            }
        }
    }
    FinPoset::unnamed(n, &rel).unwrap()
}

pub fn random_lattice<R: Rng>(rng: &mut R, max_points: usize) -> FinDistLattice {
    let n = rng.gen_range(0..=max_points);
    let p = rng.gen_range(0.1..0.7);
    FinDistLattice::new(random_poset(rng, n, p))
}

/// Longest chain of points, by depth-first search over the strict order.
pub fn longest_chain(p: &FinPoset) -> i32 {
    fn from(p: &FinPoset, i: usize, memo: &mut Vec<Option<i32>>) -> i32 {
        if let Some(d) = memo[i] {
            return d;
        }
        let mut best = 0;
        for j in 0..p.len() {
            if p.lt(i, j) {
                best = best.max(1 + from(p, j, memo));
            }
        }
        memo[i] = Some(best);
        best
    }
    let mut memo = vec![None; p.len()];
    (0..p.len())
        .map(|i| from(p, i, &mut memo))
        .max()
        .unwrap_or(-1)
}

/// The fan with three maxima and a chain of length `l` above a shared
/// minimal point.
pub fn fan_and_chain(l: usize) -> FinPoset {
    let mut names: Vec<String> = vec!["m".into(), "f1".into(), "f2".into(), "f3".into()];
    let mut covers = vec![
        ("m".to_string(), "f1".to_string()),
        ("m".into(), "f2".into()),
        ("m".into(), "f3".into()),
    ];
    let mut prev = "m".to_string();
    for i in 1..=l {
        let c = format!("c{i}");
        names.push(c.clone());
        covers.push((prev, c.clone()));
        prev = c;
    }
    let pts: Vec<&str> = names.iter().map(String::as_str).collect();
    let cov: Vec<(&str, &str)> = covers
        .iter()
        .map(|(a, b)| (a.as_str(), b.as_str()))
        .collect();
    FinPoset::from_covers(&pts, &cov).unwrap()
}

pub fn random_poly<R: Rng>(rng: &mut R, ring: &Arc<Ring>, max_deg: u32) -> Poly {
    let nv = ring.nvars();
    let mut p = Poly::zero(ring);
    let terms = rng.gen_range(1..=3);
    for _ in 0..terms {
        let mut m = Poly::from_int(ring, rng.gen_range(-3..=3));
        let deg = rng.gen_range(0..=max_deg);
        for _ in 0..deg {
            m = &m * &Poly::var(ring, rng.gen_range(0..nv.max(1)));
        }
        p = &p + &m;
    }
    if p.is_zero() {
        Poly::var(ring, 0)
    } else {
        p
    }
}

// Univariate polynomials over ℚ, lowest degree first, no trailing zeros.

pub type UPoly = Vec<BigRational>;

fn trim(mut p: UPoly) -> UPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

pub fn upoly(p: &Poly) -> UPoly {
    let mut out = Vec::new();
    for (m, c) in p.terms() {
        let d = m.degree() as usize;
        if out.len() <= d {
            out.resize(d + 1, BigRational::zero());
        }
        out[d] = c.clone();
    }
    trim(out)
}

fn udeg(p: &UPoly) -> i64 {
    p.len() as i64 - 1
}

fn usub(a: &UPoly, b: &UPoly) -> UPoly {
    let n = a.len().max(b.len());
    let z = BigRational::zero();
    trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
            .collect(),
    )
}

fn umul(a: &UPoly, b: &UPoly) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn udivrem(a: &UPoly, b: &UPoly) -> (UPoly, UPoly) {
    let mut r = a.clone();
    let mut q = vec![BigRational::zero(); a.len().saturating_sub(b.len()) + 1];
    let lead = b.last().unwrap();
    while udeg(&r) >= udeg(b) {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / lead;
        let mut t = vec![BigRational::zero(); shift];
        t.push(c.clone());
        q[shift] += c;
        r = usub(&r, &umul(&t, b));
    }
    (trim(q), r)
}

fn is_unit(p: &UPoly) -> bool {
    p.len() == 1
}

/// Diagonal of the Smith normal form of a matrix over `ℚ[x]`, by row and
/// column operations with Euclidean division.
pub fn smith_diagonal(rows: usize, cols: usize, entries: &[UPoly]) -> Vec<UPoly> {
    let mut m: Vec<Vec<UPoly>> = (0..rows)
        .map(|i| entries[i * cols..(i + 1) * cols].to_vec())
        .collect();
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            // Smallest-degree nonzero entry of the remaining block to (t, t).
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !m[i][j].is_empty()
                        && best.is_none_or(|(bi, bj)| udeg(&m[i][j]) < udeg(&m[bi][bj]))
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return diag;
            };
            m.swap(t, bi);
            for row in m.iter_mut() {
                row.swap(t, bj);
            }
            let pivot = m[t][t].clone();
            let mut clean = true;
            for i in t + 1..rows {
                let (q, _) = udivrem(&m[i][t], &pivot);
                for j in t..cols {
                    let v = usub(&m[i][j], &umul(&q, &m[t][j]));
                    m[i][j] = v;
                }
                clean &= m[i][t].is_empty();
            }
            for j in t + 1..cols {
                let (q, _) = udivrem(&m[t][j], &pivot);
                for i in t..rows {
                    let v = usub(&m[i][j], &umul(&q, &m[i][t]));
                    m[i][j] = v;
                }
                clean &= m[t][j].is_empty();
            }
            if !clean {
                continue;
            }
            // The pivot must divide the rest of the block.
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !udivrem(&m[i][j], &pivot).1.is_empty());
            match bad {
                Some((i, _)) => {
                    for j in t..cols {
                        let v = usub(&m[t][j], &m[i][j].iter().map(|c| -c).collect());
                        m[t][j] = trim(v);
                    }
                }
                None => {
                    diag.push(pivot);
                    break;
                }
            }
        }
    }
    diag
}

/// Minimal number of generators of the cokernel of `f`, and its free rank.
pub fn smith_generator_count(f: &PolyMatrix) -> (usize, usize) {
    let entries: Vec<UPoly> = f.entries().iter().map(upoly).collect();
    let diag = smith_diagonal(f.rows(), f.cols(), &entries);
    let free = f.rows() - diag.len();
    (free + diag.iter().filter(|d| !is_unit(d)).count(), free)
}
