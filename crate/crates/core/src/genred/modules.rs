//! Projective and finitely presented modules: splitting off a free rank-one
//! summand, regenerating a module with fewer generators, cancellation.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::bass::e1_script;
use super::cert::{inverse_script, script_matrix, CertBuilder, CertKind, CertValue, ReductionCert};
use super::combine::{combine, unimodular_combination};
use super::matrix::PolyMatrix;
use crate::error::{Error, Result};
use crate::poly::{ideal_member, IdealRep, Monomial, Poly, Ring};
use crate::zariski::RadQuotientRing;

fn dot(ring: &Arc<Ring>, a: &[Poly], b: &[Poly]) -> Poly {
    a.iter()
        .zip(b)
        .fold(Poly::zero(ring), |acc, (x, y)| &acc + &(x * y))
}

fn minus_identity(m: &PolyMatrix) -> Result<Vec<Poly>> {
    let id = PolyMatrix::identity(m.ring(), m.rows());
    Ok(m.sub(&id)?.entries().to_vec())
}

fn sub_vec(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn check_idempotent(b: &mut CertBuilder, f: &PolyMatrix) -> Result<()> {
    if f.rows() != f.cols() {
        return Err(Error::Invalid("projection matrix must be square".into()));
    }
    let sq = f.mul(f)?;
    let res = sq.sub(f)?.entries().to_vec();
    b.vanish("idempotent", &res)
        .map_err(|_| Error::Invalid("matrix is not idempotent".into()))
}

/// For an idempotent `F` with `Δ_k(F) = 1` and `Kdim(A/M) < k`: a
/// unimodular `C` in the image of `F` and `λ` with `λ(C) = 1`, so that
/// `Im F = A·C ⊕ (Im F ∩ ker λ)`.
pub fn serre_split(r: &RadQuotientRing, f: &PolyMatrix, k: usize) -> Result<ReductionCert> {
    let mut b = CertBuilder::new(CertKind::SerreSplit, r);
    b.put("F", CertValue::Matrix(f.clone()));
    b.put("k", CertValue::Int(k as i64));
    check_idempotent(&mut b, f)?;
    if f.cols() == 0 {
        return Err(Error::Invalid("empty projection matrix".into()));
    }
    b.hypothesis_unit("hyp", &f.determinantal(k)?)?;
    let rest: Vec<usize> = (1..f.cols()).collect();
    let comb = unimodular_combination(r, &f.column(0), &f.select_columns(&rest), k)?;
    for s in comb.steps {
        b.step(s);
    }
    let c = comb.column;
    let w = r
        .unit_in(&c)?
        .ok_or_else(|| Error::Verification("combined column is not unimodular".into()))?;
    let offset = r.modulus().gens().len();
    let lambda = w.cofactors[offset..].to_vec();
    b.vanish("fc", &sub_vec(&f.apply(&c)?, &c))?;
    b.vanish(
        "lambda",
        &[&dot(r.ring(), &lambda, &c) - &Poly::one(r.ring())],
    )?;
    b.put("t", CertValue::Vector(comb.t));
    b.put("C", CertValue::Vector(c));
    b.put("lambda", CertValue::Vector(lambda));
    b.finish()
}

pub(crate) fn verify_serre(c: &ReductionCert) -> Result<()> {
    let f = c.matrix("F")?;
    let (t, col, lambda) = (c.vector("t")?, c.vector("C")?, c.vector("lambda")?);
    if f.rows() != f.cols() || f.cols() == 0 || t.len() + 1 != f.cols() || lambda.len() != col.len()
    {
        return Err(Error::Verification("shapes do not match".into()));
    }
    let cols = f.columns();
    if combine(&cols[0], t, &cols[1..]) != col {
        return Err(Error::Verification(
            "C is not the stated combination".into(),
        ));
    }
    let k = c.checker();
    k.vanish("idempotent", f.mul(f)?.sub(f)?.entries())?;
    k.vanish("fc", &sub_vec(&f.apply(col)?, col))?;
    k.vanish(
        "lambda",
        &[&dot(&c.ring, lambda, col) - &Poly::one(&c.ring)],
    )
}

/// Coefficients `z` with `target = Σ zⱼ·columns[j]` modulo `M·Aᵠ`, found
/// by flattening vectors to linear forms in fresh tag variables.
pub fn module_membership(
    r: &RadQuotientRing,
    target: &[Poly],
    columns: &[Vec<Poly>],
) -> Result<Option<Vec<Poly>>> {
    let base = r.ring();
    let q = target.len();
    let nvars = base.nvars();
    let mut prefix = String::from("_e");
    while base.vars().iter().any(|v| v.starts_with(prefix.as_str())) {
        prefix.push('_');
    }
    let names: Vec<String> = (0..q).map(|i| format!("{prefix}{i}")).collect();
    let ext = base.extend_back(&names)?;
    let map: Vec<usize> = (0..nvars).collect();
    let lift = |p: &Poly| p.map_into(&ext, &map);
    let tag = |i: usize| Poly::var(&ext, nvars + i);
    let flatten = |v: &[Poly]| {
        v.iter()
            .enumerate()
            .fold(Poly::zero(&ext), |acc, (i, e)| &acc + &(&lift(e) * &tag(i)))
    };
    let mut gens: Vec<Poly> = columns.iter().map(|c| flatten(c)).collect();
    for m in r.modulus().gens() {
        for i in 0..q {
            gens.push(&lift(m) * &tag(i));
        }
    }
    for i in 0..q {
        for j in i..q {
            gens.push(&tag(i) * &tag(j));
        }
    }
    let ideal = IdealRep::new(&ext, gens)?;
    let Some(w) = ideal_member(&flatten(target), &ideal)? else {
        return Ok(None);
    };
    // The tag-degree-one part of the identity only involves the tag-free
    // part of the column cofactors.
    let coeffs = w.cofactors[..columns.len()]
        .iter()
        .map(|cof| {
            let terms = cof
                .terms()
                .iter()
                .filter(|(m, _)| m.exps()[nvars..].iter().all(|&e| e == 0))
                .map(|(m, c)| (Monomial::new(m.exps()[..nvars].to_vec()), c.clone()))
                .collect();
            Poly::from_terms(base, terms)
        })
        .collect();
    Ok(Some(coeffs))
}

/// Fitting ideal `f_k = Δ_{q−k}` of a presentation with `q` rows.
pub fn fitting_ideal(presentation: &PolyMatrix, k: usize) -> Result<Vec<Poly>> {
    let q = presentation.rows();
    if k >= q {
        return Ok(alloc::vec![Poly::one(presentation.ring())]);
    }
    presentation.determinantal(q - k)
}

/// Whether `Kdim(A/f_k) < m − k` for `k = 0, …, m`.
pub fn fitting_bound_holds(
    r: &RadQuotientRing,
    presentation: &PolyMatrix,
    m: usize,
) -> Result<bool> {
    for k in 0..=m {
        let d = r
            .quotient_by(&fitting_ideal(presentation, k)?)?
            .krull_dim()?;
        if d >= (m - k) as i64 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Least `m ≤ q` meeting the Fitting-ideal dimension bounds (`q` if none).
pub fn default_generator_target(r: &RadQuotientRing, presentation: &PolyMatrix) -> Result<usize> {
    let q = presentation.rows();
    for m in 0..q {
        if fitting_bound_holds(r, presentation, m)? {
            return Ok(m);
        }
    }
    Ok(q)
}

/// Regenerates the module `A^q / (Im F + M·A^q)` by `m` elements, given as
/// the columns of `W`; `[W | F]·Z ≡ I` modulo `M` shows they generate.
///
/// Each round works modulo `Δ_q(F)`, which annihilates the module: a
/// relation `C` unimodular there is built by combining the relations over
/// `A/Δ₂, A/Δ₃, …`, elementary operations take `C` to `e₁`, and the first
/// generator of the transformed basis is dropped.
pub fn forster_swan_generate(
    r: &RadQuotientRing,
    presentation: &PolyMatrix,
    target: Option<usize>,
) -> Result<ReductionCert> {
    let ring = r.ring();
    let q = presentation.rows();
    let m = match target {
        Some(m) => {
            if m < q && !fitting_bound_holds(r, presentation, m)? {
                return Err(Error::Hypothesis(format!(
                    "Fitting ideals do not satisfy the dimension bounds for {m} generators"
                )));
            }
            m.min(q)
        }
        None => default_generator_target(r, presentation)?,
    };
    let mut b = CertBuilder::new(CertKind::ForsterSwan, r);
    b.put("presentation", CertValue::Matrix(presentation.clone()));
    b.put("target", CertValue::Int(m as i64));
    let mut cur = presentation.clone();
    let mut w = PolyMatrix::identity(ring, q);
    let mut qc = q;
    while qc > m {
        ring.budget().check_cancel()?;
        let ann = r.quotient_by(&cur.determinantal(qc)?)?;
        let c = match unimodular_relation(&ann, &cur)? {
            Some(c) => c,
            None => {
                let mut c = alloc::vec![Poly::zero(ring); qc];
                for k in 1..qc {
                    let rk = ann.quotient_by(&cur.determinantal(k + 1)?)?;
                    c = unimodular_combination(&rk, &c, &cur, k)?.column;
                }
                c
            }
        };
        if ann.unit_in(&c)?.is_none() {
            return Err(Error::Hypothesis("no unimodular relation found".into()));
        }
        let script = e1_script(&ann, &c)?;
        let e = script_matrix(ring, qc, &script)?;
        let e_inv = script_matrix(ring, qc, &inverse_script(&script))?;
        let ef = e.mul(&cur)?;
        let keep: Vec<usize> = (1..qc).collect();
        let all_cols: Vec<usize> = (0..ef.cols()).collect();
        cur = ef.submatrix(&keep, &all_cols);
        w = w.mul(&e_inv.select_columns(&keep))?;
        qc -= 1;
    }
    let mut columns = w.columns();
    columns.extend(presentation.columns());
    let mut z_cols = Vec::with_capacity(q);
    for j in 0..q {
        let mut e = alloc::vec![Poly::zero(ring); q];
        e[j] = Poly::one(ring);
        let z = module_membership(r, &e, &columns)?
            .ok_or_else(|| Error::Verification("old generator outside the new span".into()))?;
        z_cols.push(z);
    }
    let z = PolyMatrix::from_columns(ring, columns.len(), &z_cols)?;
    let wf = w.hstack(presentation)?;
    b.vanish("span", &minus_identity(&wf.mul(&z)?)?)?;
    b.put("W", CertValue::Matrix(w));
    b.put("Z", CertValue::Matrix(z));
    b.finish()
}

/// A column of `f` that is already unimodular, the one of least degree.
fn unimodular_relation(r: &RadQuotientRing, f: &PolyMatrix) -> Result<Option<Vec<Poly>>> {
    let mut cols = f.columns();
    cols.sort_by_key(|c| c.iter().map(Poly::degree).max());
    for c in cols {
        if r.unit_in(&c)?.is_some() {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

pub(crate) fn verify_swan(c: &ReductionCert) -> Result<()> {
    let (f, w, z) = (c.matrix("presentation")?, c.matrix("W")?, c.matrix("Z")?);
    let m = c.int("target")?;
    if w.rows() != f.rows() || w.cols() as i64 != m || z.rows() != w.cols() + f.cols() {
        return Err(Error::Verification("shapes do not match".into()));
    }
    let prod = w.hstack(f)?.mul(z)?;
    if prod.rows() != prod.cols() {
        return Err(Error::Verification("span matrix is not square".into()));
    }
    c.checker().vanish("span", &minus_identity(&prod)?)
}

/// The three automorphisms of `N ⊕ A` and their inverses, as matrices on
/// `A^{m+1}`.
fn cancellation_matrices(
    c: &[Poly],
    a: &Poly,
    cp: &[Poly],
    lambda: &[Poly],
) -> Result<[PolyMatrix; 6]> {
    let ring = a.ring();
    let n = c.len();
    let id = |m: &mut PolyMatrix| {
        for i in 0..n {
            m.set(i, i, Poly::one(ring));
        }
        m.set(n, n, Poly::one(ring));
    };
    let shifted: Vec<Poly> = c.iter().zip(cp).map(|(x, y)| x + &(a * y)).collect();
    let lambda_c = dot(ring, lambda, c);
    let mut psi1 = PolyMatrix::zero(ring, n + 1, n + 1);
    let mut psi1_inv = PolyMatrix::zero(ring, n + 1, n + 1);
    let mut psi2 = PolyMatrix::zero(ring, n + 1, n + 1);
    let mut psi2_inv = PolyMatrix::zero(ring, n + 1, n + 1);
    let mut psi3 = PolyMatrix::zero(ring, n + 1, n + 1);
    let mut psi3_inv = PolyMatrix::zero(ring, n + 1, n + 1);
    for m in [&mut psi2, &mut psi2_inv, &mut psi3, &mut psi3_inv] {
        id(m);
    }
    for i in 0..n {
        psi1.set(i, i, Poly::one(ring));
        psi1.set(i, n, cp[i].clone());
        psi1.set(n, i, -&(a * &lambda[i]));
        psi1_inv.set(i, n, -&cp[i]);
        psi1_inv.set(n, i, a * &lambda[i]);
        for j in 0..n {
            let delta = if i == j {
                Poly::one(ring)
            } else {
                Poly::zero(ring)
            };
            psi1_inv.set(i, j, &delta - &(a * &(&cp[i] * &lambda[j])));
        }
        psi2.set(n, i, lambda[i].clone());
        psi2_inv.set(n, i, -&lambda[i]);
        psi3.set(i, n, -&shifted[i]);
        psi3_inv.set(i, n, shifted[i].clone());
    }
    psi1.set(n, n, lambda_c);
    psi1_inv.set(n, n, Poly::one(ring));
    Ok([psi1, psi1_inv, psi2, psi2_inv, psi3, psi3_inv])
}

const PSI_NAMES: [&str; 6] = ["psi1", "psi1-inv", "psi2", "psi2-inv", "psi3", "psi3-inv"];

fn cancellation_residuals(
    p: &PolyMatrix,
    c: &[Poly],
    a: &Poly,
    cp: &[Poly],
    lambda: &[Poly],
    psis: &[PolyMatrix; 6],
) -> Result<Vec<(String, Vec<Poly>)>> {
    let ring = a.ring();
    let n = c.len();
    let shifted: Vec<Poly> = c.iter().zip(cp).map(|(x, y)| x + &(a * y)).collect();
    let mut out = alloc::vec![
        ("idempotent".into(), p.mul(p)?.sub(p)?.entries().to_vec()),
        ("c-in-image".into(), sub_vec(&p.apply(c)?, c)),
        ("cp-in-image".into(), sub_vec(&p.apply(cp)?, cp)),
        (
            "lambda".into(),
            alloc::vec![&dot(ring, lambda, &shifted) - &Poly::one(ring)]
        ),
    ];
    let mut start = c.to_vec();
    start.push(a.clone());
    let end = psis[4].apply(&psis[2].apply(&psis[0].apply(&start)?)?)?;
    let mut goal = alloc::vec![Poly::zero(ring); n];
    goal.push(Poly::one(ring));
    out.push(("replay".into(), sub_vec(&end, &goal)));
    for i in 0..3 {
        let (f, g) = (&psis[2 * i], &psis[2 * i + 1]);
        out.push((format!("psi{}-right", i + 1), minus_identity(&f.mul(g)?)?));
        out.push((format!("psi{}-left", i + 1), minus_identity(&g.mul(f)?)?));
    }
    Ok(out)
}

/// Cancellation of `A` in `N ⊕ A`, `N = Im P`: for `C ∈ N` with
/// `1 = D(C) ∨ D(a)`, `Δ_k(P) = 1` and `Kdim(A/M) < k`, three automorphisms
/// of `N ⊕ A` whose composite sends `(C, a)` to `(0, 1)`:
/// `ψ₁(V, x) = (V + xC′, λ(xC − aV))`, `ψ₂(V, x) = (V, x + λ(V))`,
/// `ψ₃(V, x) = (V − x(C + aC′), x)`, where `C′ ∈ N` and `λ(C + aC′) = 1`.
pub fn bass_cancel(
    r: &RadQuotientRing,
    p: &PolyMatrix,
    c: &[Poly],
    a: &Poly,
    k: usize,
) -> Result<ReductionCert> {
    if c.len() != p.rows() {
        return Err(Error::Invalid(
            "vector does not match the projection".into(),
        ));
    }
    let mut b = CertBuilder::new(CertKind::BassCancel, r);
    b.put("P", CertValue::Matrix(p.clone()));
    b.put("C", CertValue::Vector(c.to_vec()));
    b.put("a", CertValue::Poly(a.clone()));
    b.put("k", CertValue::Int(k as i64));
    check_idempotent(&mut b, p)?;
    let mut hyp = c.to_vec();
    hyp.push(a.clone());
    b.hypothesis_unit("hyp", &hyp)?;
    b.hypothesis_unit("hyp-minors", &p.determinantal(k)?)?;
    // Combining C with the columns a·Pᵢ: Δ_k(aP) ∨ D(C) = D(a) ∨ D(C) = 1.
    let scaled = PolyMatrix::new(
        p.ring(),
        p.rows(),
        p.cols(),
        p.entries().iter().map(|e| a * e).collect(),
    )?;
    let comb = unimodular_combination(r, c, &scaled, k)?;
    for s in comb.steps {
        b.step(s);
    }
    let cp = p.apply(&comb.t)?;
    let w = r
        .unit_in(&comb.column)?
        .ok_or_else(|| Error::Verification("C + aC' is not unimodular".into()))?;
    let lambda = w.cofactors[r.modulus().gens().len()..].to_vec();
    let psis = cancellation_matrices(c, a, &cp, &lambda)?;
    for (label, res) in cancellation_residuals(p, c, a, &cp, &lambda, &psis)? {
        if label != "idempotent" {
            b.vanish(&label, &res)?;
        }
    }
    b.put("Cprime", CertValue::Vector(cp));
    b.put("lambda", CertValue::Vector(lambda));
    for (name, m) in PSI_NAMES.iter().zip(psis) {
        b.put(name, CertValue::Matrix(m));
    }
    b.finish()
}

pub(crate) fn verify_cancel(c: &ReductionCert) -> Result<()> {
    let p = c.matrix("P")?;
    let (v, a) = (c.vector("C")?, c.poly("a")?);
    let (cp, lambda) = (c.vector("Cprime")?, c.vector("lambda")?);
    let n = p.rows();
    if p.cols() != n || v.len() != n || cp.len() != n || lambda.len() != n {
        return Err(Error::Verification("shapes do not match".into()));
    }
    let psis = cancellation_matrices(v, a, cp, lambda)?;
    for (name, m) in PSI_NAMES.iter().zip(&psis) {
        if c.matrix(name)? != m {
            return Err(Error::Verification(format!(
                "{name} is not the stated automorphism"
            )));
        }
    }
    let k = c.checker();
    let mut hyp = v.to_vec();
    hyp.push(a.clone());
    k.unit("hyp", &hyp)?;
    for (label, res) in cancellation_residuals(p, v, a, cp, lambda, &psis)? {
        k.vanish(&label, &res)?;
    }
    Ok(())
}
