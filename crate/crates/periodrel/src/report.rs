//! JSON reports for certificates and verdicts, and the `--pretty` text view.

use periodrel_core::ideal::{MembershipEvidence, MembershipStatus, MembershipVerdict, RadicalityReport, WitnessSource};
use periodrel_core::relations::{ConstructionKind, RelationCertificate, StructuralEvidence};
use periodrel_core::{Matrix, MultiPoly, QuadScalar, Rational, Scalar};
use serde_json::{json, Value};

use crate::json::Json;

/// Finite floats as numbers, others as strings (`"inf"`, `"nan"`).
pub fn real(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        json!(format!("{x}"))
    }
}

fn lift(m: &Matrix<Rational>) -> Matrix<QuadScalar> {
    m.map(|x| QuadScalar::rational(x.clone()))
}

pub fn witness_source(s: WitnessSource) -> Value {
    match s {
        WitnessSource::Identity => json!("identity"),
        WitnessSource::IdentityPair => json!("identity_pair"),
        WitnessSource::IdentitySymmetric => json!("identity_symmetric"),
        WitnessSource::Sampled(k) => json!({ "sampled": k }),
        WitnessSource::Explicit => json!("explicit"),
    }
}

pub fn status(s: MembershipStatus) -> &'static str {
    match s {
        MembershipStatus::InIdealCertified => "in_ideal_certified",
        MembershipStatus::NotInIdealCertified => "not_in_ideal_certified",
        MembershipStatus::Undecided => "undecided",
    }
}

/// A witness is re-evaluated against `p` so the report carries both values.
pub fn membership(v: &MembershipVerdict<QuadScalar>, p: &MultiPoly<QuadScalar>) -> Value {
    let evidence = match &v.evidence {
        MembershipEvidence::Witness { y, z, value, source } => {
            let re = p.eval_yz(&lift(y), &lift(z)).ok();
            json!({
                "kind": "witness",
                "y": y.to_json(),
                "z": z.to_json(),
                "value": value.to_json(),
                "reevaluated": re.as_ref().map(Json::to_json),
                "reevaluation_matches": re.as_ref() == Some(value),
                "source": witness_source(*source),
            })
        }
        MembershipEvidence::Remainder(r) => json!({
            "kind": "groebner_remainder",
            "remainders": r.iter().map(Json::to_json).collect::<Vec<_>>(),
        }),
        MembershipEvidence::None => json!({ "kind": "none" }),
    };
    json!({ "status": status(v.status), "evidence": evidence, "points_tested": v.points_tested })
}

fn kind(k: ConstructionKind) -> &'static str {
    match k {
        ConstructionKind::NonArch => "nonarch",
        ConstructionKind::Case3 => "case3",
        ConstructionKind::Global => "global",
    }
}

pub fn certificate(c: &RelationCertificate<QuadScalar>) -> Value {
    let structural: Vec<Value> = c
        .structural
        .iter()
        .map(|s| match s {
            StructuralEvidence::RowPermutationChanges { polynomial, perm } => {
                json!({ "kind": "row_permutation_changes", "polynomial": polynomial, "perm": perm })
            }
            StructuralEvidence::GeneratorsRescaled { scale } => {
                json!({ "kind": "generators_rescaled", "scale": scale.to_json() })
            }
            StructuralEvidence::PrimeIdeal { note } => json!({ "kind": "prime_ideal", "note": note }),
        })
        .collect();
    json!({
        "g": c.g,
        "kind": kind(c.kind),
        "degree": c.degree,
        "homogeneous": c.polynomial.is_homogeneous(),
        "certified": c.is_certified(),
        "polynomial": c.polynomial.to_json(),
        "vanishing_evidence": c.vanishing_evidence.iter()
            .map(|r| json!({ "data_id": r.data_id, "is_zero": r.is_zero }))
            .collect::<Vec<_>>(),
        "nontriviality": membership(&c.nontriviality, &c.polynomial),
        "structural": structural,
        "factors": c.factors.iter().map(certificate).collect::<Vec<_>>(),
    })
}

pub fn radicality(r: &RadicalityReport) -> Value {
    json!({
        "g": r.g,
        "m": r.m,
        "rank": r.rank,
        "verdict": match r.verdict {
            periodrel_core::ideal::RadicalityVerdict::Radical => "radical",
            periodrel_core::ideal::RadicalityVerdict::WitnessInsufficient => "witness_insufficient",
        },
        "witness_y": r.witness_y.to_json(),
        "witness_z": r.witness_z.to_json(),
        "witness_source": witness_source(r.witness_source),
        "witness_on_v": r.witness_on_v,
        "primality": r.primality,
    })
}

/// Polynomial in the `Y_ij`/`Z_ij` notation, for text output.
pub fn poly_text<S: Scalar>(p: &MultiPoly<S>) -> String {
    p.to_string()
}

/// Indented `key: value` rendering of a JSON report.
pub fn pretty(v: &Value) -> String {
    let mut out = String::new();
    render(v, 0, &mut out);
    out
}

fn scalar_text(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Object(o) if o.is_empty() => Some("{}".into()),
        Value::Array(a) if a.is_empty() => Some("[]".into()),
        Value::Object(o) if o.contains_key("d") && o.len() == 3 => {
            let f = |k: &str| o[k].as_str().unwrap_or("?").to_string();
            Some(format!("{} + {}·√{}", f("a"), f("b"), o["d"]))
        }
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => {
            Some(format!("[{}]", a.iter().filter_map(scalar_text).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match scalar_text(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render(x, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                match scalar_text(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        render(x, indent + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar_text(other).unwrap_or_default())),
    }
}
