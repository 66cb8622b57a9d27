use std::sync::Arc;

use heitmann_core::genred::*;
use heitmann_core::poly::{parse_poly, parse_poly_list, radical_member, IdealRep};
use heitmann_core::zariski::{dim_cert_search, RadQuotientRing, DEFAULT_DEGREE_BOUND};
use heitmann_core::{Error, Poly, Ring};

fn ring(vars: &[&str]) -> Arc<Ring> {
    Ring::new(0, vars).unwrap()
}

fn polys(r: &Arc<Ring>, s: &str) -> Vec<Poly> {
    parse_poly_list(r, s).unwrap()
}

fn matrix(r: &Arc<Ring>, rows: &[&str]) -> PolyMatrix {
    PolyMatrix::from_rows(r, rows.iter().map(|row| polys(r, row)).collect()).unwrap()
}

fn same_radical(r: &Arc<Ring>, a: &[Poly], b: &[Poly]) -> bool {
    let ia = IdealRep::new(r, a.to_vec()).unwrap();
    let ib = IdealRep::new(r, b.to_vec()).unwrap();
    a.iter().all(|f| radical_member(f, &ib).unwrap().is_some())
        && b.iter().all(|f| radical_member(f, &ia).unwrap().is_some())
}

#[test]
fn gcd_trick_examples() {
    let r = ring(&["x", "y"]);
    let a = RadQuotientRing::new(&r, polys(&r, "x*y")).unwrap();
    let p = |s| parse_poly(&r, s).unwrap();
    gcd_trick(&a, &p("x"), &p("y")).unwrap().verify().unwrap();
    let nil = RadQuotientRing::new(&r, polys(&r, "x^2")).unwrap();
    gcd_trick(&nil, &p("x"), &p("-x"))
        .unwrap()
        .verify()
        .unwrap();
    let whole = RadQuotientRing::whole(&r);
    gcd_trick(&whole, &p("0"), &p("y"))
        .unwrap()
        .verify()
        .unwrap();
    assert!(matches!(
        gcd_trick(&whole, &p("x"), &p("y")),
        Err(Error::Hypothesis(_))
    ));
}

#[test]
fn kronecker_step_from_a_certificate() {
    let r = ring(&["x"]);
    let a = RadQuotientRing::whole(&r);
    let xs = polys(&r, "x, 1+x");
    let cert = dim_cert_search(&a, &xs, DEFAULT_DEGREE_BOUND)
        .unwrap()
        .unwrap();
    for g in polys(&r, "x^2 - 3, 0, 7*x + 2") {
        let step = kronecker_step(&a, &xs, &cert.complements, &g).unwrap();
        step.verify().unwrap();
    }
    let bad = kronecker_step(&a, &xs, &polys(&r, "0, 0"), &parse_poly(&r, "x").unwrap());
    assert!(matches!(bad, Err(Error::Hypothesis(_))));
    let trivial = RadQuotientRing::new(&r, polys(&r, "1")).unwrap();
    kronecker_step(&trivial, &[], &[], &parse_poly(&r, "x").unwrap())
        .unwrap()
        .verify()
        .unwrap();
}

#[test]
fn kronecker_in_one_variable() {
    let r = ring(&["x"]);
    let a = RadQuotientRing::whole(&r);
    let gens = polys(&r, "x, x+x^2, x^3");
    let cert = kronecker_reduce(&a, &gens, DEFAULT_DEGREE_BOUND).unwrap();
    cert.verify().unwrap();
    let out = cert.vector("outputs").unwrap();
    assert!(out.len() <= 2);
    assert!(same_radical(&r, &gens, out));
    let loc = kronecker_reduce_localized(&a, &gens).unwrap();
    loc.verify().unwrap();
    assert!(same_radical(&r, &gens, loc.vector("outputs").unwrap()));
    let short = kronecker_reduce(&a, &gens[..2], DEFAULT_DEGREE_BOUND).unwrap();
    assert_eq!(short.vector("outputs").unwrap(), &gens[..2]);
}

#[test]
fn kronecker_in_two_variables() {
    let r = ring(&["x", "y"]);
    let a = RadQuotientRing::whole(&r);
    let gens = polys(&r, "x^2 - y, x*y, y^2 + x, x - 1, y^3");
    let cert = kronecker_reduce(&a, &gens, DEFAULT_DEGREE_BOUND).unwrap();
    cert.verify().unwrap();
    assert!(cert.vector("outputs").unwrap().len() <= 3);
    let loc = kronecker_reduce_localized(&a, &gens).unwrap();
    loc.verify().unwrap();
    assert!(loc.vector("outputs").unwrap().len() <= 3);
}

#[test]
fn bass_and_unimodular_vectors() {
    let r = ring(&["x"]);
    let a = RadQuotientRing::whole(&r);
    let p = |s| parse_poly(&r, s).unwrap();
    let cert = bass_stable_range(&a, &p("x"), &polys(&r, "1+x, x^2")).unwrap();
    cert.verify().unwrap();
    let bad = bass_stable_range(&a, &p("x"), &polys(&r, "x^2, x^3"));
    assert!(matches!(bad, Err(Error::Hypothesis(_))));

    let e1 = unimodular_to_e1(&a, &polys(&r, "1, 0, 0")).unwrap();
    assert!(e1.script("script").unwrap().is_empty());
    let v = polys(&r, "x, 1+x, x^2");
    let cert = unimodular_to_e1(&a, &v).unwrap();
    cert.verify().unwrap();
    let end = replay(cert.script("script").unwrap(), &v).unwrap();
    assert_eq!(end, polys(&r, "1, 0, 0"));
    assert!(unimodular_to_e1(&a, &polys(&r, "x, x^2, x")).is_err());

    let q = ring(&[]);
    let field = RadQuotientRing::whole(&q);
    let c = bass_stable_range(&field, &Poly::one(&q), &[Poly::zero(&q)]).unwrap();
    c.verify().unwrap();
}

#[test]
fn tampering_is_detected() {
    let r = ring(&["x"]);
    let a = RadQuotientRing::whole(&r);
    let v = polys(&r, "x, 1+x, x^2");
    let mut cert = unimodular_to_e1(&a, &v).unwrap();
    if let Some(CertValue::Script(s)) = cert.data.get_mut("script") {
        s[0].coeff = &s[0].coeff + &Poly::one(&r);
    }
    assert!(cert.verify().is_err());
    let mut k = kronecker_reduce(&a, &polys(&r, "x, x+x^2, x^3"), 30).unwrap();
    k.data
        .insert("outputs".into(), CertValue::Vector(polys(&r, "x^2, 1")));
    assert!(k.verify().is_err());
}

#[test]
fn combining_columns() {
    let r = ring(&["x"]);
    let a = RadQuotientRing::whole(&r);
    let f = matrix(&r, &["1, 0, x", "0, 1, x"]);
    let c = matrix_combine(&a, &f, 2, MatrixMode::HdimGlobal).unwrap();
    c.verify().unwrap();
    assert!(c.vector("t").unwrap().iter().all(Poly::is_zero));

    let g = matrix(&r, &["x, 1+x, x^2", "x^2, x, 1"]);
    let c = matrix_combine(&a, &g, 2, MatrixMode::HdimGlobal).unwrap();
    c.verify().unwrap();
    let c = unimodular_column(&a, &g).unwrap();
    c.verify().unwrap();

    let q = ring(&[]);
    let field = RadQuotientRing::whole(&q);
    let sq = matrix(&q, &["0, 2, 1", "0, 1, 1"]);
    let c = matrix_combine(&field, &sq, 2, MatrixMode::KrullLocalized).unwrap();
    c.verify().unwrap();
    assert!(field
        .unit_in(c.vector("combined").unwrap())
        .unwrap()
        .is_some());

    let loc = matrix_combine(
        &a,
        &matrix(&r, &["x^2, x, 1+x", "x, 0, x"]),
        1,
        MatrixMode::KrullLocalized,
    );
    match loc {
        Ok(c) => c.verify().unwrap(),
        Err(e) => assert!(matches!(e, Error::Hypothesis(_)), "{e}"),
    }
}

#[test]
fn main_lemma_and_minor_step() {
    let r = ring(&["x"]);
    let a = RadQuotientRing::whole(&r);
    let p = |s| parse_poly(&r, s).unwrap();
    let cert = swan_mainlemma(
        &a,
        &p("x"),
        &polys(&r, "1+x, x^2"),
        &polys(&r, "x^3"),
        &[polys(&r, "1"), polys(&r, "x")],
    )
    .unwrap();
    cert.verify().unwrap();
    let xs = cert.vector("xs").unwrap();
    assert!(xs
        .iter()
        .all(|x| x.div_exact(&p("x")).is_some() || x.is_zero()));
    let empty = swan_mainlemma(&a, &p("x"), &[], &polys(&r, "1, x"), &[]).unwrap();
    empty.verify().unwrap();

    let g = matrix(&r, &["x, 1", "1+x, x^2"]);
    let step = minor_step(&a, &polys(&r, "x^2, x"), &g, &[0, 1], &[0, 1]).unwrap();
    step.verify().unwrap();
}

#[test]
fn serre_splitting() {
    let r = ring(&["x"]);
    let a = RadQuotientRing::whole(&r);
    let id = PolyMatrix::identity(&r, 2);
    let cert = serre_split(&a, &id, 1).unwrap();
    cert.verify().unwrap();
    assert_eq!(cert.vector("C").unwrap(), polys(&r, "1, 0").as_slice());

    let q = ring(&[]);
    let diag = matrix(&q, &["1, 0, 0", "0, 1, 0", "0, 0, 0"]);
    let cert = serre_split(&RadQuotientRing::whole(&q), &diag, 1).unwrap();
    assert_eq!(cert.vector("C").unwrap(), polys(&q, "1, 0, 0").as_slice());

    let rank1 = matrix(&r, &["1, 0", "x, 0"]);
    serre_split(&a, &rank1, 1).unwrap().verify().unwrap();
    let not_idem = matrix(&r, &["x, 0", "0, 1"]);
    assert!(matches!(
        serre_split(&a, &not_idem, 1),
        Err(Error::Invalid(_))
    ));

    // A rank-two projection conjugated by an elementary matrix.
    let u = matrix(&r, &["1, x, 0", "0, 1, 0", "x^2, 0, 1"]);
    let u_inv = matrix(&r, &["1, -x, 0", "0, 1, 0", "-x^2, x^3, 1"]);
    let d = matrix(&r, &["0, 0, 0", "0, 1, 0", "0, 0, 1"]);
    let f = u.mul(&d).unwrap().mul(&u_inv).unwrap();
    let cert = serre_split(&a, &f, 2).unwrap();
    cert.verify().unwrap();
}

#[test]
fn forster_swan_small() {
    let r = ring(&["x"]);
    let a = RadQuotientRing::whole(&r);
    // Zero module.
    let zero = matrix(&r, &["1, 0", "0, 1"]);
    let cert = forster_swan_generate(&a, &zero, None).unwrap();
    cert.verify().unwrap();
    assert_eq!(cert.matrix("W").unwrap().cols(), 0);
    // Free module of rank 2 with no relations.
    let free = PolyMatrix::zero(&r, 2, 0);
    let cert = forster_swan_generate(&a, &free, Some(2)).unwrap();
    cert.verify().unwrap();
    // ℚ[x]/(x) ⊕ ℚ[x]/(x+1) on three generators, the third redundant.
    let f = matrix(&r, &["x, 0, 0, 1", "0, x+1, 0, 0", "0, 0, 1, -1"]);
    let m = default_generator_target(&a, &f).unwrap();
    assert_eq!(m, 1);
    let cert = forster_swan_generate(&a, &f, None).unwrap();
    cert.verify().unwrap();
    assert_eq!(cert.matrix("W").unwrap().cols(), 1);
}

#[test]
fn cancellation() {
    let q = ring(&[]);
    let field = RadQuotientRing::whole(&q);
    let id = PolyMatrix::identity(&q, 2);
    let cert = bass_cancel(&field, &id, &polys(&q, "1, 0"), &Poly::zero(&q), 1).unwrap();
    cert.verify().unwrap();
    assert_eq!(cert.vector("lambda").unwrap(), polys(&q, "1, 0").as_slice());

    let r = ring(&["x"]);
    let a = RadQuotientRing::whole(&r);
    let id = PolyMatrix::identity(&r, 2);
    let one = bass_cancel(&a, &id, &polys(&r, "x, x^2"), &Poly::one(&r), 2).unwrap();
    one.verify().unwrap();
    let cert = bass_cancel(
        &a,
        &id,
        &polys(&r, "x^2, x+1"),
        &parse_poly(&r, "x^3").unwrap(),
        2,
    )
    .unwrap();
    cert.verify().unwrap();
}
