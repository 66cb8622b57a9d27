//! JSON formats. Polynomials are written in the text syntax inside strings.

use std::collections::BTreeMap;
use std::sync::Arc;

use heitmann_core::genred::{
    CertKind, CertValue, ElemOp, LabelledWitness, PolyMatrix, ReductionCert,
};
use heitmann_core::poly::{parse_poly, parse_poly_list};
use heitmann_core::poset::{bits, Mask};
use heitmann_core::zariski::{ComplementaryCheck, DimCert};
use heitmann_core::{Budget, FinPoset, MembershipWitness, Poly, Ring};
use serde_json::{json, Map, Value};

use crate::CliError;

type Result<T> = std::result::Result<T, CliError>;

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| bad(format!("missing field {key:?}")))
}

fn as_str<'a>(v: &'a Value, what: &str) -> Result<&'a str> {
    v.as_str()
        .ok_or_else(|| bad(format!("{what} must be a string")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| bad(format!("{what} must be an array")))
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| bad(format!("{what} must be a non-negative integer")))
}

// Posets: {"points": [names], "covers": [[lower, upper], ...]}.

pub fn poset_to_json(p: &FinPoset) -> Value {
    let covers: Vec<Value> = p
        .covers()
        .into_iter()
        .map(|(a, b)| json!([p.name(a), p.name(b)]))
        .collect();
    json!({ "points": p.names(), "covers": covers })
}

pub fn poset_from_json(v: &Value) -> Result<FinPoset> {
    let points: Vec<&str> = as_array(field(v, "points")?, "points")?
        .iter()
        .map(|p| as_str(p, "a point name"))
        .collect::<Result<_>>()?;
    let covers = match v.get("covers") {
        Some(c) => as_array(c, "covers")?
            .iter()
            .map(|pair| match pair.as_array().map(Vec::as_slice) {
                Some([a, b]) => Ok((as_str(a, "a cover end")?, as_str(b, "a cover end")?)),
                _ => Err(bad("each cover must be a pair of point names")),
            })
            .collect::<Result<Vec<_>>>()?,
        None => Vec::new(),
    };
    Ok(FinPoset::from_covers(&points, &covers)?)
}

/// A set of points given by name, as a mask.
pub fn mask_from_names(p: &FinPoset, names: &[&str]) -> Result<Mask> {
    names.iter().try_fold(0, |acc, n| {
        p.index_of(n.trim())
            .map(|i| acc | (1 << i))
            .ok_or_else(|| bad(format!("unknown point {n:?}")))
    })
}

pub fn mask_from_json(p: &FinPoset, v: &Value) -> Result<Mask> {
    let names: Vec<&str> = as_array(v, "a point set")?
        .iter()
        .map(|n| as_str(n, "a point name"))
        .collect::<Result<_>>()?;
    mask_from_names(p, &names)
}

pub fn mask_to_json(p: &FinPoset, m: Mask) -> Value {
    Value::Array(bits(m).map(|i| Value::from(p.name(i))).collect())
}

// Rings: {"char": 0, "vars": ["x", "y"]}.

pub fn ring_to_json(r: &Ring) -> Value {
    json!({ "char": r.characteristic(), "vars": r.vars() })
}

pub fn ring_from_json(v: &Value, budget: &Budget) -> Result<Arc<Ring>> {
    let characteristic = field(v, "char")?
        .as_u64()
        .ok_or_else(|| bad("char must be a non-negative integer"))?;
    let vars = as_array(field(v, "vars")?, "vars")?
        .iter()
        .map(|x| as_str(x, "a variable name").map(str::to_string))
        .collect::<Result<Vec<_>>>()?;
    Ok(Ring::with_budget(characteristic, vars, budget.clone())?)
}

pub fn poly_to_json(f: &Poly) -> Value {
    Value::from(f.to_string())
}

pub fn poly_from_json(r: &Arc<Ring>, v: &Value) -> Result<Poly> {
    Ok(parse_poly(r, as_str(v, "a polynomial")?)?)
}

pub fn polys_to_json(fs: &[Poly]) -> Value {
    Value::Array(fs.iter().map(poly_to_json).collect())
}

/// Either an array of polynomial strings or one comma-separated string.
pub fn polys_from_json(r: &Arc<Ring>, v: &Value) -> Result<Vec<Poly>> {
    match v {
        Value::String(s) => Ok(parse_poly_list(r, s)?),
        _ => as_array(v, "a polynomial list")?
            .iter()
            .map(|f| poly_from_json(r, f))
            .collect(),
    }
}

pub fn matrix_to_json(m: &PolyMatrix) -> Value {
    json!({ "rows": m.rows(), "cols": m.cols(), "entries": polys_to_json(m.entries()) })
}

pub fn matrix_from_json(r: &Arc<Ring>, v: &Value) -> Result<PolyMatrix> {
    let rows = as_usize(field(v, "rows")?, "rows")?;
    let cols = as_usize(field(v, "cols")?, "cols")?;
    let entries = polys_from_json(r, field(v, "entries")?)?;
    if entries.len() != rows * cols {
        return Err(bad(format!(
            "{rows}x{cols} matrix with {} entries",
            entries.len()
        )));
    }
    if cols == 0 {
        return Ok(PolyMatrix::zero(r, rows, 0));
    }
    Ok(PolyMatrix::from_rows(
        r,
        entries.chunks(cols).map(<[Poly]>::to_vec).collect(),
    )?)
}

/// Rows separated by `;`, entries by `,`.
pub fn matrix_from_text(r: &Arc<Ring>, text: &str) -> Result<PolyMatrix> {
    let rows = text
        .split(';')
        .map(|row| parse_poly_list(r, row))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(PolyMatrix::from_rows(r, rows)?)
}

pub fn witness_to_json(w: &MembershipWitness) -> Value {
    json!({
        "element": poly_to_json(&w.element),
        "generators": polys_to_json(&w.generators),
        "cofactors": polys_to_json(&w.cofactors),
        "exponent": w.exponent,
    })
}

pub fn witness_from_json(r: &Arc<Ring>, v: &Value) -> Result<MembershipWitness> {
    let exponent = field(v, "exponent")?
        .as_u64()
        .and_then(|e| u32::try_from(e).ok())
        .ok_or_else(|| bad("exponent must be a small non-negative integer"))?;
    Ok(MembershipWitness {
        element: poly_from_json(r, field(v, "element")?)?,
        generators: polys_from_json(r, field(v, "generators")?)?,
        cofactors: polys_from_json(r, field(v, "cofactors")?)?,
        exponent,
    })
}

fn value_to_json(v: &CertValue) -> Value {
    match v {
        CertValue::Poly(f) => json!({ "poly": poly_to_json(f) }),
        CertValue::Vector(fs) => json!({ "vector": polys_to_json(fs) }),
        CertValue::Matrix(m) => json!({ "matrix": matrix_to_json(m) }),
        CertValue::Script(ops) => {
            let ops: Vec<Value> = ops
                .iter()
                .map(|op| json!({ "target": op.target, "source": op.source, "coeff": poly_to_json(&op.coeff) }))
                .collect();
            json!({ "script": ops })
        }
        CertValue::Int(n) => json!({ "int": n }),
        CertValue::Indices(is) => json!({ "indices": is }),
    }
}

fn value_from_json(r: &Arc<Ring>, v: &Value) -> Result<CertValue> {
    let obj = v
        .as_object()
        .filter(|o| o.len() == 1)
        .ok_or_else(|| bad("a certificate value must be an object with one tag"))?;
    let (tag, inner) = obj.iter().next().unwrap();
    Ok(match tag.as_str() {
        "poly" => CertValue::Poly(poly_from_json(r, inner)?),
        "vector" => CertValue::Vector(polys_from_json(r, inner)?),
        "matrix" => CertValue::Matrix(matrix_from_json(r, inner)?),
        "script" => CertValue::Script(
            as_array(inner, "script")?
                .iter()
                .map(|op| {
                    Ok(ElemOp {
                        target: as_usize(field(op, "target")?, "target")?,
                        source: as_usize(field(op, "source")?, "source")?,
                        coeff: poly_from_json(r, field(op, "coeff")?)?,
                    })
                })
                .collect::<Result<_>>()?,
        ),
        "int" => CertValue::Int(
            inner
                .as_i64()
                .ok_or_else(|| bad("int must be an integer"))?,
        ),
        "indices" => CertValue::Indices(
            as_array(inner, "indices")?
                .iter()
                .map(|i| as_usize(i, "an index"))
                .collect::<Result<_>>()?,
        ),
        other => return Err(bad(format!("unknown value tag {other:?}"))),
    })
}

pub fn cert_to_json(c: &ReductionCert) -> Value {
    let data: Map<String, Value> = c
        .data
        .iter()
        .map(|(k, v)| (k.clone(), value_to_json(v)))
        .collect();
    let witnesses: Vec<Value> = c
        .witnesses
        .iter()
        .map(|w| {
            let mut o = json!({ "label": w.label });
            o.as_object_mut()
                .unwrap()
                .extend(witness_to_json(&w.witness).as_object().unwrap().clone());
            o
        })
        .collect();
    json!({
        "kind": c.kind.name(),
        "ring": ring_to_json(&c.ring),
        "modulus": polys_to_json(&c.modulus),
        "data": data,
        "witnesses": witnesses,
        "steps": c.steps.iter().map(cert_to_json).collect::<Vec<_>>(),
    })
}

pub fn cert_from_json(v: &Value, budget: &Budget) -> Result<ReductionCert> {
    let kind_name = as_str(field(v, "kind")?, "kind")?;
    let kind = CertKind::from_name(kind_name)
        .ok_or_else(|| bad(format!("unknown certificate kind {kind_name:?}")))?;
    let ring = ring_from_json(field(v, "ring")?, budget)?;
    let modulus = polys_from_json(&ring, field(v, "modulus")?)?;
    let data = field(v, "data")?
        .as_object()
        .ok_or_else(|| bad("data must be an object"))?
        .iter()
        .map(|(k, x)| Ok((k.clone(), value_from_json(&ring, x)?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    let witnesses = as_array(field(v, "witnesses")?, "witnesses")?
        .iter()
        .map(|w| {
            Ok(LabelledWitness {
                label: as_str(field(w, "label")?, "label")?.to_string(),
                witness: witness_from_json(&ring, w)?,
            })
        })
        .collect::<Result<_>>()?;
    let steps = match v.get("steps") {
        Some(s) => as_array(s, "steps")?
            .iter()
            .map(|s| cert_from_json(s, budget))
            .collect::<Result<_>>()?,
        None => Vec::new(),
    };
    Ok(ReductionCert {
        kind,
        ring,
        modulus,
        data,
        witnesses,
        steps,
    })
}

/// Kind tag of the Krull dimension certificate format.
pub const DIM_CERT_KIND: &str = "kdim-cert";

pub fn dim_cert_to_json(c: &DimCert, check: &ComplementaryCheck) -> Value {
    let inequalities: Vec<Value> = check
        .inequalities
        .iter()
        .map(|q| {
            json!({
                "label": q.label,
                "holds": q.witness.is_some(),
                "witness": q.witness.as_ref().map(witness_to_json),
            })
        })
        .collect();
    json!({
        "kind": DIM_CERT_KIND,
        "ring": ring_to_json(&c.ring),
        "modulus": polys_to_json(&c.modulus),
        "xs": polys_to_json(&c.xs),
        "ms": c.ms,
        "as": polys_to_json(&c.cofactors),
        "bs": polys_to_json(&c.complements),
        "identity": witness_to_json(&c.identity),
        "verification": {
            "identityHolds": c.identity_holds(),
            "inequalities": inequalities,
        },
    })
}

pub fn dim_cert_from_json(v: &Value, budget: &Budget) -> Result<DimCert> {
    let ring = ring_from_json(field(v, "ring")?, budget)?;
    let ms = as_array(field(v, "ms")?, "ms")?
        .iter()
        .map(|m| {
            m.as_u64()
                .and_then(|m| u32::try_from(m).ok())
                .ok_or_else(|| bad("ms must hold small non-negative integers"))
        })
        .collect::<Result<_>>()?;
    Ok(DimCert {
        modulus: polys_from_json(&ring, field(v, "modulus")?)?,
        xs: polys_from_json(&ring, field(v, "xs")?)?,
        ms,
        cofactors: polys_from_json(&ring, field(v, "as")?)?,
        complements: polys_from_json(&ring, field(v, "bs")?)?,
        identity: witness_from_json(&ring, field(v, "identity")?)?,
        ring,
    })
}
