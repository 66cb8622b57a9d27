//! Reduction certificates: echoed inputs, outputs and labelled membership
//! witnesses, re-checkable with nothing but polynomial arithmetic.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::matrix::PolyMatrix;
use crate::error::{Error, Result};
use crate::poly::{ideal_member, IdealRep, MembershipWitness, Poly, Ring};
use crate::zariski::RadQuotientRing;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CertKind {
    GcdTrick,
    KroneckerStep,
    KroneckerReduce,
    KroneckerLocalized,
    BassStableRange,
    UnimodularToE1,
    MatrixCombine,
    SwanMainLemma,
    MinorStep,
    SerreSplit,
    ForsterSwan,
    BassCancel,
}

impl CertKind {
    pub const ALL: [CertKind; 12] = [
        CertKind::GcdTrick,
        CertKind::KroneckerStep,
        CertKind::KroneckerReduce,
        CertKind::KroneckerLocalized,
        CertKind::BassStableRange,
        CertKind::UnimodularToE1,
        CertKind::MatrixCombine,
        CertKind::SwanMainLemma,
        CertKind::MinorStep,
        CertKind::SerreSplit,
        CertKind::ForsterSwan,
        CertKind::BassCancel,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CertKind::GcdTrick => "gcd-trick",
            CertKind::KroneckerStep => "kronecker-step",
            CertKind::KroneckerReduce => "kronecker",
            CertKind::KroneckerLocalized => "kronecker-localized",
            CertKind::BassStableRange => "bass",
            CertKind::UnimodularToE1 => "unimod-e1",
            CertKind::MatrixCombine => "matrix-combine",
            CertKind::SwanMainLemma => "swan-main-lemma",
            CertKind::MinorStep => "minor-step",
            CertKind::SerreSplit => "serre-split",
            CertKind::ForsterSwan => "swan",
            CertKind::BassCancel => "cancel",
        }
    }

    pub fn from_name(name: &str) -> Option<CertKind> {
        CertKind::ALL.into_iter().find(|k| k.name() == name)
    }
}

/// `v[target] += coeff · v[source]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ElemOp {
    pub target: usize,
    pub source: usize,
    pub coeff: Poly,
}

pub fn replay(script: &[ElemOp], v: &[Poly]) -> Result<Vec<Poly>> {
    let mut v = v.to_vec();
    for op in script {
        if op.target == op.source || op.target >= v.len() || op.source >= v.len() {
            return Err(Error::Invalid("malformed elementary operation".into()));
        }
        let add = op.coeff.checked_mul(&v[op.source])?;
        v[op.target] = v[op.target].checked_add(&add)?;
    }
    Ok(v)
}

/// The matrix `E` with `E·v = replay(script, v)`.
pub fn script_matrix(ring: &Arc<Ring>, n: usize, script: &[ElemOp]) -> Result<PolyMatrix> {
    let columns = (0..n)
        .map(|j| {
            let mut e = alloc::vec![Poly::zero(ring); n];
            e[j] = Poly::one(ring);
            replay(script, &e)
        })
        .collect::<Result<Vec<_>>>()?;
    PolyMatrix::from_columns(ring, n, &columns)
}

/// The script undoing `script`.
pub fn inverse_script(script: &[ElemOp]) -> Vec<ElemOp> {
    script
        .iter()
        .rev()
        .map(|op| ElemOp {
            target: op.target,
            source: op.source,
            coeff: -&op.coeff,
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub enum CertValue {
    Poly(Poly),
    Vector(Vec<Poly>),
    Matrix(PolyMatrix),
    Script(Vec<ElemOp>),
    Int(i64),
    Indices(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct LabelledWitness {
    pub label: String,
    pub witness: MembershipWitness,
}

#[derive(Clone, Debug)]
pub struct ReductionCert {
    pub kind: CertKind,
    pub ring: Arc<Ring>,
    pub modulus: Vec<Poly>,
    pub data: BTreeMap<String, CertValue>,
    pub witnesses: Vec<LabelledWitness>,
    /// Certificates of intermediate steps, checked recursively.
    pub steps: Vec<ReductionCert>,
}

impl ReductionCert {
    pub fn get(&self, key: &str) -> Result<&CertValue> {
        self.data
            .get(key)
            .ok_or_else(|| Error::Verification(format!("certificate lacks {key:?}")))
    }

    pub fn poly(&self, key: &str) -> Result<&Poly> {
        match self.get(key)? {
            CertValue::Poly(p) => Ok(p),
            _ => Err(shape(key, "a polynomial")),
        }
    }

    pub fn vector(&self, key: &str) -> Result<&[Poly]> {
        match self.get(key)? {
            CertValue::Vector(v) => Ok(v),
            _ => Err(shape(key, "a vector")),
        }
    }

    pub fn matrix(&self, key: &str) -> Result<&PolyMatrix> {
        match self.get(key)? {
            CertValue::Matrix(m) => Ok(m),
            _ => Err(shape(key, "a matrix")),
        }
    }

    pub fn script(&self, key: &str) -> Result<&[ElemOp]> {
        match self.get(key)? {
            CertValue::Script(s) => Ok(s),
            _ => Err(shape(key, "a script")),
        }
    }

    pub fn int(&self, key: &str) -> Result<i64> {
        match self.get(key)? {
            CertValue::Int(n) => Ok(*n),
            _ => Err(shape(key, "an integer")),
        }
    }

    pub fn indices(&self, key: &str) -> Result<&[usize]> {
        match self.get(key)? {
            CertValue::Indices(v) => Ok(v),
            _ => Err(shape(key, "an index list")),
        }
    }

    pub fn witness(&self, label: &str) -> Result<&MembershipWitness> {
        self.witnesses
            .iter()
            .find(|w| w.label == label)
            .map(|w| &w.witness)
            .ok_or_else(|| Error::Verification(format!("no witness labelled {label:?}")))
    }

    /// Re-derives every claim of the certificate.
    pub fn verify(&self) -> Result<()> {
        let zero = Poly::zero(&self.ring);
        for p in &self.modulus {
            p.check_ring(&zero)?;
        }
        for w in &self.witnesses {
            if !w.witness.verify() {
                return Err(Error::Verification(format!(
                    "witness {:?} does not re-verify",
                    w.label
                )));
            }
        }
        for s in &self.steps {
            s.verify()?;
        }
        super::verify_kind(self)
    }

    pub fn is_valid(&self) -> bool {
        self.verify().is_ok()
    }

    pub(crate) fn checker(&self) -> Checker<'_> {
        Checker { cert: self }
    }
}

fn shape(key: &str, what: &str) -> Error {
    Error::Verification(format!("{key:?} is not {what}"))
}

/// Matches stored witnesses against claims recomputed from the data.
pub(crate) struct Checker<'a> {
    cert: &'a ReductionCert,
}

impl Checker<'_> {
    fn generators(&self, extra: &[Poly]) -> Vec<Poly> {
        let mut g = self.cert.modulus.clone();
        g.extend(extra.iter().cloned());
        g
    }

    fn matches(&self, label: &str, f: &Poly, extra: &[Poly]) -> Result<&MembershipWitness> {
        let w = self.cert.witness(label)?;
        if w.element != *f || w.generators != self.generators(extra) || !w.verify() {
            return Err(Error::Verification(format!(
                "witness {label:?} does not prove the claimed membership"
            )));
        }
        Ok(w)
    }

    /// `f ∈ √(M + ⟨extra⟩)`.
    pub fn radical(&self, label: &str, f: &Poly, extra: &[Poly]) -> Result<()> {
        self.matches(label, f, extra).map(|_| ())
    }

    /// `f ∈ M + ⟨extra⟩`.
    pub fn member(&self, label: &str, f: &Poly, extra: &[Poly]) -> Result<()> {
        let w = self.matches(label, f, extra)?;
        if w.exponent != 1 {
            return Err(Error::Verification(format!(
                "witness {label:?} has exponent {}",
                w.exponent
            )));
        }
        Ok(())
    }

    pub fn unit(&self, label: &str, extra: &[Poly]) -> Result<()> {
        self.member(label, &Poly::one(&self.cert.ring), extra)
    }

    /// Every nonzero residual lies in `M`.
    pub fn vanish(&self, prefix: &str, residuals: &[Poly]) -> Result<()> {
        for (i, r) in residuals.iter().enumerate() {
            if !r.is_zero() {
                self.member(&format!("{prefix}[{i}]"), r, &[])?;
            }
        }
        Ok(())
    }
}

/// Collects data and witnesses while an algorithm runs.
pub(crate) struct CertBuilder {
    cert: ReductionCert,
    rad: RadQuotientRing,
}

impl CertBuilder {
    pub fn new(kind: CertKind, r: &RadQuotientRing) -> Self {
        CertBuilder {
            cert: ReductionCert {
                kind,
                ring: r.ring().clone(),
                modulus: r.modulus().gens().to_vec(),
                data: BTreeMap::new(),
                witnesses: Vec::new(),
                steps: Vec::new(),
            },
            rad: r.clone(),
        }
    }

    pub fn put(&mut self, key: &str, value: CertValue) {
        self.cert.data.insert(key.to_string(), value);
    }

    pub fn step(&mut self, sub: ReductionCert) {
        self.cert.steps.push(sub);
    }

    fn push(&mut self, label: String, witness: MembershipWitness) {
        self.cert.witnesses.push(LabelledWitness { label, witness });
    }

    /// Records a witness computed elsewhere.
    pub fn witness(&mut self, label: &str, witness: MembershipWitness) {
        self.push(label.to_string(), witness);
    }

    /// Records `f ∈ √(M + ⟨extra⟩)`; a missing witness means the theory was
    /// contradicted, so it is reported as a verification failure.
    pub fn radical(&mut self, label: &str, f: &Poly, extra: &[Poly]) -> Result<()> {
        match self.rad.in_radical(f, extra)? {
            Some(w) => {
                self.push(label.to_string(), w);
                Ok(())
            }
            None => Err(Error::Verification(format!(
                "claim {label:?} failed: {f} not in radical"
            ))),
        }
    }

    pub fn member(&mut self, label: &str, f: &Poly, extra: &[Poly]) -> Result<()> {
        match ideal_member(f, &self.rad.modulus().with(extra)?)? {
            Some(w) => {
                self.push(label.to_string(), w);
                Ok(())
            }
            None => Err(Error::Verification(format!(
                "claim {label:?} failed: {f} not in ideal"
            ))),
        }
    }

    pub fn unit(&mut self, label: &str, extra: &[Poly]) -> Result<()> {
        let one = Poly::one(self.rad.ring());
        self.member(label, &one, extra)
    }

    /// As [`CertBuilder::unit`], but a failure is the caller's hypothesis.
    pub fn hypothesis_unit(&mut self, label: &str, extra: &[Poly]) -> Result<()> {
        match self.rad.unit_in(extra)? {
            Some(w) => {
                self.push(label.to_string(), w);
                Ok(())
            }
            None => Err(Error::Hypothesis(format!("{label}: 1 is not in the ideal"))),
        }
    }

    pub fn hypothesis_radical(&mut self, label: &str, f: &Poly, extra: &[Poly]) -> Result<()> {
        match self.rad.in_radical(f, extra)? {
            Some(w) => {
                self.push(label.to_string(), w);
                Ok(())
            }
            None => Err(Error::Hypothesis(format!(
                "{label}: {f} is not in the radical"
            ))),
        }
    }

    pub fn vanish(&mut self, prefix: &str, residuals: &[Poly]) -> Result<()> {
        let modulus: &IdealRep = self.rad.modulus();
        let modulus = modulus.clone();
        for (i, r) in residuals.iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            match ideal_member(r, &modulus)? {
                Some(w) => self.push(format!("{prefix}[{i}]"), w),
                None => {
                    return Err(Error::Verification(format!(
                        "residual {prefix}[{i}] = {r} is not in the modulus"
                    )))
                }
            }
        }
        Ok(())
    }

    pub fn finish(self) -> Result<ReductionCert> {
        self.cert.verify()?;
        Ok(self.cert)
    }
}
