//! Combining the columns of a matrix into a unimodular one.

use alloc::format;
use alloc::vec::Vec;

use super::cert::{CertBuilder, CertKind, CertValue, ReductionCert};
use super::kronecker::localized_multiple;
use super::matrix::{Minor, PolyMatrix};
use super::{boundary_step, localized_krull_dim};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::zariski::RadQuotientRing;

/// `v + Σ xᵢ·columns[i]`.
pub(crate) fn combine(v: &[Poly], xs: &[Poly], columns: &[Vec<Poly>]) -> Vec<Poly> {
    let mut out = v.to_vec();
    for (x, c) in xs.iter().zip(columns) {
        if x.is_zero() {
            continue;
        }
        for (o, e) in out.iter_mut().zip(c) {
            *o = &*o + &(x * e);
        }
    }
    out
}

fn conclusion_gens(a: &Poly, bs: &[Poly], xs: &[Poly], l: &[Poly], ls: &[Vec<Poly>]) -> Vec<Poly> {
    let mut g: Vec<Poly> = bs.iter().zip(xs).map(|(b, x)| b + &(a * x)).collect();
    g.extend(combine(l, xs, ls));
    g
}

/// From `1 = D(a, b₁, …, b_k) ∨ D(L)` and `Kdim(A/M) < k`, multiples
/// `xᵢ = a·yᵢ` with `1 = D(b₁ + ax₁, …, b_k + ax_k) ∨ D(L + Σ xᵢLᵢ)`.
pub fn swan_mainlemma(
    r: &RadQuotientRing,
    a: &Poly,
    bs: &[Poly],
    l: &[Poly],
    ls: &[Vec<Poly>],
) -> Result<ReductionCert> {
    if ls.len() != bs.len() || ls.iter().any(|c| c.len() != l.len()) {
        return Err(Error::Invalid("carrier vectors do not match".into()));
    }
    let ring = r.ring();
    let mut b = CertBuilder::new(CertKind::SwanMainLemma, r);
    b.put("a", CertValue::Poly(a.clone()));
    b.put("bs", CertValue::Vector(bs.to_vec()));
    b.put("L", CertValue::Vector(l.to_vec()));
    b.put(
        "Ls",
        CertValue::Matrix(PolyMatrix::from_columns(ring, l.len(), ls)?),
    );
    let mut hyp = alloc::vec![a.clone()];
    hyp.extend(bs.iter().cloned());
    hyp.extend(l.iter().cloned());
    b.hypothesis_unit("hyp", &hyp)?;
    let ys = mainlemma_rec(r, a, bs, l, ls)?;
    let xs: Vec<Poly> = ys.iter().map(|y| a * y).collect();
    b.unit("conclusion", &conclusion_gens(a, bs, &xs, l, ls))?;
    b.put("ys", CertValue::Vector(ys));
    b.put("xs", CertValue::Vector(xs));
    b.finish()
}

pub(crate) fn verify_mainlemma(c: &ReductionCert) -> Result<()> {
    let (a, bs, l) = (c.poly("a")?, c.vector("bs")?, c.vector("L")?);
    let ls = c.matrix("Ls")?.columns();
    let (xs, ys) = (c.vector("xs")?, c.vector("ys")?);
    if ls.len() != bs.len() || xs.len() != bs.len() || ys.len() != bs.len() {
        return Err(Error::Verification("lengths do not match".into()));
    }
    if xs.iter().zip(ys).any(|(x, y)| *x != a * y) {
        return Err(Error::Verification("some x is not a times its y".into()));
    }
    let k = c.checker();
    let mut hyp = alloc::vec![a.clone()];
    hyp.extend(bs.iter().cloned());
    hyp.extend(l.iter().cloned());
    k.unit("hyp", &hyp)?;
    k.unit("conclusion", &conclusion_gens(a, bs, xs, l, &ls))
}

/// Induction on `k` through the Heitmann boundary of `b_k`; returns the
/// `yᵢ` (so `xᵢ = a·yᵢ`).
fn mainlemma_rec(
    r: &RadQuotientRing,
    a: &Poly,
    bs: &[Poly],
    l: &[Poly],
    ls: &[Vec<Poly>],
) -> Result<Vec<Poly>> {
    r.ring().budget().check_cancel()?;
    let k = bs.len();
    if k == 0 {
        return match r.unit_in(l)? {
            Some(_) => Ok(Vec::new()),
            None => Err(Error::Hypothesis(
                "dimension bound fails: carrier not unimodular after all boundaries".into(),
            )),
        };
    }
    let step = boundary_step(r, &bs[k - 1])?;
    let mut ys = mainlemma_rec(&step.quotient, a, &bs[..k - 1], l, &ls[..k - 1])?;
    let xs: Vec<Poly> = ys.iter().map(|y| a * y).collect();
    let gens = conclusion_gens(a, &bs[..k - 1], &xs, l, &ls[..k - 1]);
    let w = step
        .quotient
        .unit_in(&gens)?
        .ok_or_else(|| Error::Verification("lost unimodularity on the boundary".into()))?;
    ys.push(step.saturation_part(&w));
    Ok(ys)
}

/// For a `k`-minor `ν` of `G` (rows and columns given) with
/// `1 = D(ν) ∨ D(C)`: coefficients `x` for the chosen columns with
/// `C + Σ xᵢGᵢ` unimodular.
pub fn minor_step(
    r: &RadQuotientRing,
    c: &[Poly],
    g: &PolyMatrix,
    rows: &[usize],
    cols: &[usize],
) -> Result<ReductionCert> {
    if rows.len() != cols.len() || c.len() != g.rows() {
        return Err(Error::Invalid("minor shape does not match".into()));
    }
    let sub = g.submatrix(rows, cols);
    let nu = sub.det()?;
    let c_rows: Vec<Poly> = rows.iter().map(|&i| c[i].clone()).collect();
    let bs = (0..cols.len())
        .map(|i| sub.with_column(i, &c_rows).det())
        .collect::<Result<Vec<_>>>()?;
    let ls: Vec<Vec<Poly>> = cols.iter().map(|&j| g.column(j)).collect();
    let mut b = CertBuilder::new(CertKind::MinorStep, r);
    b.put("C", CertValue::Vector(c.to_vec()));
    b.put("G", CertValue::Matrix(g.clone()));
    b.put("rows", CertValue::Indices(rows.to_vec()));
    b.put("cols", CertValue::Indices(cols.to_vec()));
    let mut hyp = alloc::vec![nu.clone()];
    hyp.extend(c.iter().cloned());
    b.hypothesis_unit("hyp", &hyp)?;
    let lemma = swan_mainlemma(r, &nu, &bs, c, &ls)?;
    let xs = lemma.vector("xs")?.to_vec();
    b.step(lemma);
    let combined = combine(c, &xs, &ls);
    b.unit("conclusion", &combined)?;
    b.put("x", CertValue::Vector(xs));
    b.put("combined", CertValue::Vector(combined));
    b.finish()
}

pub(crate) fn verify_minor_step(c: &ReductionCert) -> Result<()> {
    let (v, g) = (c.vector("C")?, c.matrix("G")?);
    let (rows, cols) = (c.indices("rows")?, c.indices("cols")?);
    let (xs, combined) = (c.vector("x")?, c.vector("combined")?);
    if rows.iter().any(|&i| i >= g.rows()) || cols.iter().any(|&j| j >= g.cols()) {
        return Err(Error::Verification("minor indices out of range".into()));
    }
    let nu = g.submatrix(rows, cols).det()?;
    let ls: Vec<Vec<Poly>> = cols.iter().map(|&j| g.column(j)).collect();
    if xs.len() != cols.len() || combine(v, xs, &ls) != combined {
        return Err(Error::Verification("combined column does not match".into()));
    }
    let k = c.checker();
    let mut hyp = alloc::vec![nu];
    hyp.extend(v.iter().cloned());
    k.unit("hyp", &hyp)?;
    k.unit("conclusion", combined)
}

/// Result of combining columns: coefficients, the new column, sub-steps.
pub(crate) struct Combination {
    pub t: Vec<Poly>,
    pub column: Vec<Poly>,
    pub steps: Vec<ReductionCert>,
}

/// From `D(C) ∨ Δ_k(G) = 1` and `Kdim(A/M) < k`: `t` with `C + Σ tᵢGᵢ`
/// unimodular. The minors `ν₁, …, ν_s` needed for `1 ∈ ⟨C, ν⟩` are handled
/// one at a time, `νᵢ` modulo `ν_{i+1}, …, ν_s`.
pub(crate) fn unimodular_combination(
    r: &RadQuotientRing,
    c: &[Poly],
    g: &PolyMatrix,
    k: usize,
) -> Result<Combination> {
    let ring = r.ring();
    let mut t = alloc::vec![Poly::zero(ring); g.cols()];
    if r.unit_in(c)?.is_some() {
        return Ok(Combination {
            t,
            column: c.to_vec(),
            steps: Vec::new(),
        });
    }
    let mut minors: Vec<_> = g
        .minors(k)?
        .into_iter()
        .filter(|m| !m.value.is_zero())
        .collect();
    minors.sort_by_key(|m| (m.value.degree(), m.value.len()));
    let chosen = few_minors(r, c, &minors)?
        .ok_or_else(|| Error::Hypothesis(format!("D(C) ∨ Δ_{k}(G) is not 1")))?;
    let mut column = c.to_vec();
    let mut steps = Vec::new();
    for (i, m) in chosen.iter().enumerate() {
        let later: Vec<Poly> = chosen[i + 1..].iter().map(|m| m.value.clone()).collect();
        let ri = r.quotient_by(&later)?;
        let step = minor_step(&ri, &column, g, &m.rows, &m.cols)?;
        for (x, &j) in step.vector("x")?.iter().zip(&m.cols) {
            t[j] = &t[j] + x;
        }
        column = step.vector("combined")?.to_vec();
        steps.push(step);
    }
    if r.unit_in(&column)?.is_none() {
        return Err(Error::Verification(
            "combined column is not unimodular".into(),
        ));
    }
    Ok(Combination { t, column, steps })
}

/// A short list of minors with `1 ∈ ⟨C, chosen⟩`: minors are added in
/// order until the unit ideal is reached, then each one that is not needed
/// is dropped. Every minor costs one round of the main lemma, and the
/// degrees compound from one round to the next.
fn few_minors<'a>(
    r: &RadQuotientRing,
    c: &[Poly],
    minors: &'a [Minor],
) -> Result<Option<Vec<&'a Minor>>> {
    let unit_with = |chosen: &[&Minor]| {
        let mut gens = c.to_vec();
        gens.extend(chosen.iter().map(|m| m.value.clone()));
        r.unit_in(&gens).map(|w| w.is_some())
    };
    let mut chosen: Vec<&Minor> = Vec::new();
    for m in minors {
        if unit_with(&chosen)? {
            break;
        }
        chosen.push(m);
    }
    if !unit_with(&chosen)? {
        return Ok(None);
    }
    let mut i = 0;
    while i < chosen.len() {
        let mut fewer = chosen.clone();
        fewer.remove(i);
        if unit_with(&fewer)? {
            chosen = fewer;
        } else {
            i += 1;
        }
    }
    Ok(Some(chosen))
}

/// Which theorem [`matrix_combine`] applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixMode {
    /// `D(C₀, Δ_k(F)) ≤ D(C₀ + Σ tᵢCᵢ)`, with `Kdim(A[ν⁻¹]) < k` checked
    /// for every nonzero `k`-minor `ν` of the remaining columns.
    KrullLocalized,
    /// From `Δ_k(F) = 1` and `Kdim(A/M) < k`: `C₀ + Σ tᵢCᵢ` unimodular.
    HdimGlobal,
}

impl MatrixMode {
    fn code(self) -> i64 {
        match self {
            MatrixMode::KrullLocalized => 0,
            MatrixMode::HdimGlobal => 1,
        }
    }
}

fn split(f: &PolyMatrix) -> Result<(Vec<Poly>, PolyMatrix)> {
    if f.cols() == 0 {
        return Err(Error::Invalid("matrix without columns".into()));
    }
    let rest: Vec<usize> = (1..f.cols()).collect();
    Ok((f.column(0), f.select_columns(&rest)))
}

/// Coefficients `t₁, …, t_p` for the columns `C₁, …, C_p` of `F`.
pub fn matrix_combine(
    r: &RadQuotientRing,
    f: &PolyMatrix,
    k: usize,
    mode: MatrixMode,
) -> Result<ReductionCert> {
    let (c0, g) = split(f)?;
    let mut b = CertBuilder::new(CertKind::MatrixCombine, r);
    b.put("F", CertValue::Matrix(f.clone()));
    b.put("k", CertValue::Int(k as i64));
    b.put("mode", CertValue::Int(mode.code()));
    let (t, column) = match mode {
        MatrixMode::HdimGlobal => {
            b.hypothesis_unit("hyp", &f.determinantal(k)?)?;
            let comb = unimodular_combination(r, &c0, &g, k)?;
            for s in comb.steps {
                b.step(s);
            }
            b.unit("unimodular", &comb.column)?;
            (comb.t, comb.column)
        }
        MatrixMode::KrullLocalized => {
            let (t, column, dims) = localized_combination(r, &c0, &g, k)?;
            b.put("local-dims", CertValue::Indices(dims));
            for (i, e) in c0.iter().enumerate().filter(|(_, e)| !e.is_zero()) {
                b.radical(&format!("c0[{i}]"), e, &column)?;
            }
            for (j, m) in f.determinantal(k)?.iter().enumerate() {
                b.radical(&format!("minor[{j}]"), m, &column)?;
            }
            (t, column)
        }
    };
    b.put("t", CertValue::Vector(t));
    b.put("combined", CertValue::Vector(column));
    b.finish()
}

/// For each nonzero `k`-minor `δ` of `G` (rows `R`, columns `S`), Cramer's
/// rule on `G[R, S]`: with `L = adj(G[R,S])·(−C[R])` pick `X = δY` with
/// `δ ∈ D(L − δX)`, so `δ ∈ D(G[R,S]X + C[R])`; then `C += G[:,S]·X`.
/// Returns `t`, the new column and `Kdim(A[δ⁻¹]) + 1` per minor.
fn localized_combination(
    r: &RadQuotientRing,
    c0: &[Poly],
    g: &PolyMatrix,
    k: usize,
) -> Result<(Vec<Poly>, Vec<Poly>, Vec<usize>)> {
    let ring = r.ring();
    let mut t = alloc::vec![Poly::zero(ring); g.cols()];
    let mut column = c0.to_vec();
    let mut dims = Vec::new();
    for m in g.minors(k)? {
        if m.value.is_zero() {
            continue;
        }
        let d = localized_krull_dim(r, &m.value)?;
        dims.push((d + 1) as usize);
        if d >= k as i64 {
            return Err(Error::Hypothesis(format!(
                "Kdim of the localization at a {k}-minor is {d}, not below {k}"
            )));
        }
        let sub = g.submatrix(&m.rows, &m.cols);
        let neg: Vec<Poly> = m.rows.iter().map(|&i| -&column[i]).collect();
        let l = sub.adjugate()?.apply(&neg)?;
        let xs = localized_multiple(r, &m.value, &l)?;
        let cols: Vec<Vec<Poly>> = m.cols.iter().map(|&j| g.column(j)).collect();
        column = combine(&column, &xs, &cols);
        for (x, &j) in xs.iter().zip(&m.cols) {
            t[j] = &t[j] + x;
        }
    }
    Ok((t, column, dims))
}

pub(crate) fn verify_matrix_combine(c: &ReductionCert) -> Result<()> {
    let f = c.matrix("F")?;
    let (c0, g) = split(f)?;
    let (t, column) = (c.vector("t")?, c.vector("combined")?);
    if t.len() != g.cols() || combine(&c0, t, &g.columns()) != column {
        return Err(Error::Verification("combined column does not match".into()));
    }
    let k = c.int("k")? as usize;
    let ch = c.checker();
    match c.int("mode")? {
        1 => {
            ch.unit("hyp", &f.determinantal(k)?)?;
            ch.unit("unimodular", column)
        }
        0 => {
            for (i, e) in c0.iter().enumerate().filter(|(_, e)| !e.is_zero()) {
                ch.radical(&format!("c0[{i}]"), e, column)?;
            }
            for (j, m) in f.determinantal(k)?.iter().enumerate() {
                ch.radical(&format!("minor[{j}]"), m, column)?;
            }
            Ok(())
        }
        _ => Err(Error::Verification("unknown combination mode".into())),
    }
}

/// Iterates the combination over `k = 1, …, p` in `A/Δ_{k+1}(F)`, ending
/// with a unimodular column. Needs `1 ∈ Δ₁(F)` and the dimension bounds
/// `Kdim(A/Δ_{k+1}(F)) < k`.
pub fn unimodular_column(r: &RadQuotientRing, f: &PolyMatrix) -> Result<ReductionCert> {
    let (c0, g) = split(f)?;
    let mut b = CertBuilder::new(CertKind::MatrixCombine, r);
    b.put("F", CertValue::Matrix(f.clone()));
    b.put("k", CertValue::Int(1));
    b.put("mode", CertValue::Int(MatrixMode::HdimGlobal.code()));
    b.hypothesis_unit("hyp", &f.determinantal(1)?)?;
    let ring = r.ring();
    let mut t = alloc::vec![Poly::zero(ring); g.cols()];
    let mut column = c0;
    for k in 1..=g.cols().max(1) {
        let rk = r.quotient_by(&f.determinantal(k + 1)?)?;
        let comb = unimodular_combination(&rk, &column, &g, k)?;
        for (acc, x) in t.iter_mut().zip(&comb.t) {
            *acc = &*acc + x;
        }
        column = comb.column;
        for s in comb.steps {
            b.step(s);
        }
    }
    b.unit("unimodular", &column)?;
    b.put("t", CertValue::Vector(t));
    b.put("combined", CertValue::Vector(column));
    b.finish()
}
