use std::sync::Arc;

use heitmann_core::dim::{self, DimKind, KdimStrategy};
use heitmann_core::genred::{self, ReductionCert};
use heitmann_core::lattice::{self, GlueDiagram, GlueKind, Overlap};
use heitmann_core::poly::{parse_poly, parse_poly_list};
use heitmann_core::spectra::{self, OpenOverlap};
use heitmann_core::zariski::{dim_cert_search, verify_complementary, RadQuotientRing};
use heitmann_core::{Budget, FinDistLattice, FinPoset, LatElem, Ring};
use serde_json::{json, Value};

use crate::json::*;
use crate::{
    read_json, CliError, Command, DimArg, LatticeCmd, RingArgs, RingCmd, SpectraCmd, StrategyArg,
};

type Result<T> = std::result::Result<T, CliError>;

pub(crate) fn dispatch(cmd: &Command, budget: &Budget) -> Result<String> {
    let value = match cmd {
        Command::Lattice(c) => lattice_cmd(c)?,
        Command::Spectra(c) => spectra_cmd(c)?,
        Command::Ring(c) => ring_cmd(c, budget)?,
        Command::Verify { cert } => verify(&read_json(cert)?, budget)?,
    };
    Ok(match value {
        Value::Number(n) => n.to_string(),
        v => serde_json::to_string_pretty(&v).expect("JSON values serialize"),
    })
}

fn read_lattice(path: &std::path::Path) -> Result<FinDistLattice> {
    Ok(FinDistLattice::new(poset_from_json(&read_json(path)?)?))
}

fn names(list: &str) -> Vec<&str> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect()
}

fn lattice_cmd(cmd: &LatticeCmd) -> Result<Value> {
    match cmd {
        LatticeCmd::Dim {
            kind,
            poset,
            strategy,
        } => {
            let t = read_lattice(poset)?;
            let d = match (kind, strategy) {
                (DimArg::Kdim, Some(s)) => dim::kdim_with(
                    &t,
                    match s {
                        StrategyArg::Upper => KdimStrategy::UpperBoundary,
                        StrategyArg::Lower => KdimStrategy::LowerBoundary,
                        StrategyArg::Generators => KdimStrategy::Generators,
                        StrategyArg::Chain => KdimStrategy::Chain,
                    },
                ),
                (_, Some(_)) => {
                    return Err(CliError::Input("--strategy only applies to kdim".into()))
                }
                (DimArg::Kdim, None) => dim::dim(&t, DimKind::Kdim),
                (DimArg::Jdim, None) => dim::dim(&t, DimKind::Jdim),
                (DimArg::Hdim, None) => dim::dim(&t, DimKind::Hdim),
            };
            Ok(json!(d))
        }
        LatticeCmd::Info { poset } => {
            let t = read_lattice(poset)?;
            let p = t.base();
            let trace = dim::kdim_trace(&t);
            Ok(json!({
                "points": p.len(),
                "elements": t.count(),
                "kdim": trace.value,
                "jdim": dim::jdim(&t),
                "hdim": dim::hdim(&t),
                "boolean": t.is_boolean(),
                "weaklyJacobson": t.is_weakly_jacobson(),
                "maximal": mask_to_json(p, p.maximal()),
                "minimal": mask_to_json(p, p.minimal()),
                "kdimSequence": trace.steps.iter().map(|&m| mask_to_json(p, m)).collect::<Vec<_>>(),
            }))
        }
        LatticeCmd::Glue { diagram } => {
            let d = read_json(diagram)?;
            let kind = match d.get("kind").and_then(Value::as_str) {
                Some("ideal") | None => GlueKind::Ideal,
                Some("filter") => GlueKind::Filter,
                Some(other) => return Err(CliError::Input(format!("unknown glue kind {other:?}"))),
            };
            let lattices = array(&d, "lattices")?
                .iter()
                .map(|p| Ok(FinDistLattice::new(poset_from_json(p)?)))
                .collect::<Result<Vec<_>>>()?;
            let mut overlaps = Vec::new();
            for o in array(&d, "overlaps")? {
                let (i, j) = (index(o, "i")?, index(o, "j")?);
                let element = |k: usize, key: &str| -> Result<LatElem> {
                    let t = lattices
                        .get(k)
                        .ok_or_else(|| CliError::Input(format!("overlap names lattice {k}")))?;
                    let pts = mask_from_json(t.base(), o.get(key).unwrap_or(&Value::Null))?;
                    Ok(t.generated_by_points(pts))
                };
                overlaps.push(Overlap {
                    i,
                    j,
                    s_ij: element(i, "s_ij")?,
                    s_ji: element(j, "s_ji")?,
                });
            }
            let glued = lattice::glue(&GlueDiagram {
                kind,
                lattices,
                overlaps,
            })?;
            let p = glued.lattice.base();
            Ok(json!({
                "poset": poset_to_json(p),
                "generators": glued.generators.iter().map(|g| mask_to_json(p, g.0)).collect::<Vec<_>>(),
            }))
        }
        LatticeCmd::Quotient { poset, zero, one } => {
            let t = read_lattice(poset)?;
            let elem = |list: &str| -> Result<LatElem> {
                Ok(t.generated_by_points(mask_from_names(t.base(), &names(list))?))
            };
            let zeros: Vec<LatElem> = names(zero).into_iter().map(elem).collect::<Result<_>>()?;
            let ones: Vec<LatElem> = names(one).into_iter().map(elem).collect::<Result<_>>()?;
            let q = t.quotient(&zeros, &ones);
            Ok(poset_to_json(q.target.base()))
        }
    }
}

fn array<'a>(v: &'a Value, key: &str) -> Result<&'a Vec<Value>> {
    v.get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| CliError::Input(format!("{key:?} must be an array")))
}

fn index(v: &Value, key: &str) -> Result<usize> {
    v.get(key)
        .and_then(Value::as_u64)
        .map(|n| n as usize)
        .ok_or_else(|| CliError::Input(format!("{key:?} must be an index")))
}

fn spectra_cmd(cmd: &SpectraCmd) -> Result<Value> {
    match cmd {
        SpectraCmd::Info { poset } => {
            let t = read_lattice(poset)?;
            let p = t.base();
            let s = spectra::spec_subsets(&t);
            Ok(json!({
                "max": mask_to_json(p, s.max),
                "min": mask_to_json(p, s.min),
                "jspec": mask_to_json(p, s.jspec),
                "Jspec": mask_to_json(p, s.jspec_closure),
                "kdim": dim::kdim(&t),
                "jdim": dim::jdim(&t),
                "hdim": dim::hdim(&t),
            }))
        }
        SpectraCmd::Glue { diagram } => {
            let d = read_json(diagram)?;
            let spaces = array(&d, "spaces")?
                .iter()
                .map(poset_from_json)
                .collect::<Result<Vec<FinPoset>>>()?;
            let mut overlaps = Vec::new();
            for o in array(&d, "overlaps")? {
                let (i, j) = (index(o, "i")?, index(o, "j")?);
                let mask = |k: usize, key: &str| -> Result<u32> {
                    let s = spaces
                        .get(k)
                        .ok_or_else(|| CliError::Input(format!("overlap names space {k}")))?;
                    mask_from_json(s, o.get(key).unwrap_or(&Value::Null))
                };
                overlaps.push(OpenOverlap {
                    i,
                    j,
                    u_ij: mask(i, "u_ij")?,
                    u_ji: mask(j, "u_ji")?,
                });
            }
            Ok(poset_to_json(&spectra::glue_spectra(&spaces, &overlaps)?))
        }
    }
}

fn quotient_ring(args: &RingArgs, budget: &Budget) -> Result<(Arc<Ring>, RadQuotientRing)> {
    let ring = ring_from_json(&read_json(&args.ring)?, budget)?;
    let modulus = parse_poly_list(&ring, &args.modulus)?;
    let r = RadQuotientRing::new(&ring, modulus)?;
    Ok((ring, r))
}

fn ring_cmd(cmd: &RingCmd, budget: &Budget) -> Result<Value> {
    let cert: ReductionCert = match cmd {
        RingCmd::KdimCert {
            ring,
            xs,
            degree_bound,
        } => {
            let (ring, r) = quotient_ring(ring, budget)?;
            let xs = parse_poly_list(&ring, xs)?;
            let cert = dim_cert_search(&r, &xs, *degree_bound)?.ok_or_else(|| {
                heitmann_core::Error::Hypothesis(
                    "the sequence does not collapse within the degree bound".into(),
                )
            })?;
            let check = verify_complementary(&r, &cert.complements, &cert.xs)?;
            return Ok(dim_cert_to_json(&cert, &check));
        }
        RingCmd::Kronecker {
            ring,
            gens,
            degree_bound,
            localized,
        } => {
            let (ring, r) = quotient_ring(ring, budget)?;
            let gens = parse_poly_list(&ring, gens)?;
            if *localized {
                genred::kronecker_reduce_localized(&r, &gens)?
            } else {
                genred::kronecker_reduce(&r, &gens, *degree_bound)?
            }
        }
        RingCmd::Bass { ring, a, bs } => {
            let (ring, r) = quotient_ring(ring, budget)?;
            genred::bass_stable_range(&r, &parse_poly(&ring, a)?, &parse_poly_list(&ring, bs)?)?
        }
        RingCmd::UnimodE1 { ring, v } => {
            let (ring, r) = quotient_ring(ring, budget)?;
            genred::unimodular_to_e1(&r, &parse_poly_list(&ring, v)?)?
        }
        RingCmd::SerreSplit { ring, matrix, k } => {
            let (ring, r) = quotient_ring(ring, budget)?;
            genred::serre_split(&r, &matrix_from_text(&ring, matrix)?, *k)?
        }
        RingCmd::Swan {
            ring,
            presentation,
            target,
        } => {
            let (ring, r) = quotient_ring(ring, budget)?;
            genred::forster_swan_generate(&r, &matrix_from_text(&ring, presentation)?, *target)?
        }
        RingCmd::Cancel {
            ring,
            projection,
            c,
            a,
            k,
        } => {
            let (ring, r) = quotient_ring(ring, budget)?;
            genred::bass_cancel(
                &r,
                &matrix_from_text(&ring, projection)?,
                &parse_poly_list(&ring, c)?,
                &parse_poly(&ring, a)?,
                *k,
            )?
        }
    };
    Ok(cert_to_json(&cert))
}

fn verify(v: &Value, budget: &Budget) -> Result<Value> {
    if v.get("kind").and_then(Value::as_str) == Some(DIM_CERT_KIND) {
        let cert = dim_cert_from_json(v, budget)?;
        return match cert.verify() {
            Ok(true) => Ok(json!({ "kind": DIM_CERT_KIND, "valid": true })),
            Ok(false) => Err(CliError::Rejected(
                "collapse certificate does not check".into(),
            )),
            Err(e) => Err(CliError::Rejected(e.to_string())),
        };
    }
    let cert = cert_from_json(v, budget)?;
    match cert.verify() {
        Ok(()) => Ok(json!({ "kind": cert.kind.name(), "valid": true })),
        Err(e) if e.kind() == heitmann_core::ErrorKind::Resource => Err(e.into()),
        Err(e) => Err(CliError::Rejected(e.to_string())),
    }
}
