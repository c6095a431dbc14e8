//! Report bodies. Every integer is written as a decimal string and every
//! object has a fixed key order, so equal inputs give byte-equal output.

use serde_json::{json, Value};

use rzeta_core::report::{Evidence, GrowthRow, PeriodicityCheck, WitnessIdentity};
use rzeta_core::zeta::{pade_reconstruct, PadeOutcome};
use rzeta_core::{
    Certificate, DichotomyReport, Error, ExtNat, FpPoly, IPoly, Instance, Provenance, Rat, RationalFn, Verdict,
};

use crate::CliError;

fn s<T: ToString>(v: T) -> Value {
    Value::String(v.to_string())
}

fn strings<T: ToString>(vs: impl IntoIterator<Item = T>) -> Value {
    Value::Array(vs.into_iter().map(s).collect())
}

pub fn poly_json(p: &IPoly) -> Value {
    if p.is_zero() {
        return strings(["0"]);
    }
    strings(p.coeffs())
}

pub fn rational_json(f: &RationalFn) -> Value {
    json!({ "num": poly_json(f.num()), "den": poly_json(f.den()) })
}

fn fpoly_json(w: &FpPoly) -> Value {
    json!({ "p": s(w.prime()), "coeffs": strings(w.coeffs()) })
}

fn growth_json(rows: &[GrowthRow]) -> Value {
    Value::Array(
        rows.iter()
            .map(|g| json!({ "window": s(g.window), "order": s(g.order), "validated": g.validated }))
            .collect(),
    )
}

fn check_json(c: &PeriodicityCheck) -> Value {
    json!({ "e": s(c.e), "n_e": s(c.n_e), "value": s(&c.value), "k": strings(&c.ks) })
}

fn identity_json(w: &WitnessIdentity) -> Value {
    json!({ "k": s(w.k), "exponent": s(w.exponent), "value": s(&w.value) })
}

pub fn certificate_json(c: &Certificate) -> Value {
    match c {
        Certificate::PadicUnitEigenvalue { p, gamma, q, r0, r, checks } => json!({
            "type": "padic_unit_eigenvalue",
            "p": s(p),
            "gamma": s(gamma),
            "q": s(q),
            "r0": s(r0),
            "r": s(r),
            "checks": checks.iter().map(check_json).collect::<Vec<_>>(),
        }),
        Certificate::TorsionWitness { component, p, place, degree, order, identities } => json!({
            "type": "torsion_witness",
            "component": s(component),
            "p": s(p),
            "place": fpoly_json(place),
            "degree": s(degree),
            "order": s(order),
            "identities": identities.iter().map(identity_json).collect::<Vec<_>>(),
        }),
        Certificate::RationalXiWitness { component, xi, prime, order } => json!({
            "type": "rational_xi_witness",
            "component": s(component),
            "xi": s(xi),
            "prime": s(prime),
            "order": s(order),
        }),
    }
}

fn pade_json(p: &PadeOutcome) -> Value {
    match p {
        PadeOutcome::Rational { zeta, terms } => json!({
            "outcome": "rational",
            "terms": s(terms),
            "zeta": rational_json(zeta),
        }),
        PadeOutcome::NoStabilize { terms } => json!({ "outcome": "no_stabilize", "terms": s(terms) }),
    }
}

fn evidence_json(e: &Evidence) -> Value {
    json!({
        "sequence": strings(&e.sequence),
        "growth": growth_json(&e.growth),
        "pade": pade_json(&e.pade),
        "radius": e.radius.map(|r| s(format!("{r:.12}"))),
    })
}

pub fn classify_json(kind: &str, rep: &DichotomyReport) -> Value {
    let mut out = serde_json::Map::new();
    out.insert("kind".into(), s(kind));
    out.insert("verdict".into(), s(rep.verdict.name()));
    let (provenance, rule) = match &rep.provenance {
        Provenance::Structural(rule) => ("structural", Value::String((*rule).into())),
        Provenance::Empirical => ("empirical", Value::Null),
    };
    out.insert("provenance".into(), s(provenance));
    out.insert("rule".into(), rule);
    match &rep.verdict {
        Verdict::Rational(f) => {
            out.insert("zeta".into(), rational_json(f));
        }
        Verdict::NaturalBoundary(c) => {
            out.insert("certificate".into(), certificate_json(c));
        }
        Verdict::ApparentIrrational(rows) => {
            out.insert("growth".into(), growth_json(rows));
        }
        Verdict::NotTame(n) => {
            out.insert("n".into(), s(n));
        }
    }
    out.insert("proof_window".into(), rep.proof_window.map(s).unwrap_or(Value::Null));
    out.insert("evidence".into(), rep.evidence.as_ref().map(evidence_json).unwrap_or(Value::Null));
    out.insert("notes".into(), strings(&rep.notes));
    Value::Object(out)
}

pub fn not_tame_json(kind: &str, n: u64) -> Value {
    json!({ "kind": kind, "verdict": "not_tame", "n": s(n) })
}

/// `(n, R(n))` for `n = 1..=max_n`.
pub fn rnum_rows(instance: &Instance, max_n: usize) -> Result<Vec<(u64, ExtNat)>, CliError> {
    (1..=max_n as u64)
        .map(|n| Ok((n, instance.reidemeister(n)?)))
        .collect()
}

pub fn rnum_json(kind: &str, rows: &[(u64, ExtNat)]) -> Value {
    json!({
        "kind": kind,
        "sequence": rows.iter().map(|(n, r)| json!({ "n": s(n), "R_n": s(r) })).collect::<Vec<_>>(),
    })
}

/// A two-column CSV table with a header row.
pub fn csv_table<A: ToString, B: ToString>(header: [&str; 2], rows: impl IntoIterator<Item = (A, B)>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for (a, b) in rows {
        w.write_record([a.to_string(), b.to_string()]).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

/// Zeta coefficients over the window and the outcome of rational
/// reconstruction.
pub struct ZetaOutput {
    pub coeffs: Vec<Rat>,
    pub pade: PadeOutcome,
}

pub fn zeta_output(instance: &Instance, window: usize) -> Result<ZetaOutput, CliError> {
    if window < 8 {
        return Err(Error::OutOfRange("Padé window must be at least 8").into());
    }
    let series = instance.zeta(window)?;
    let pade = pade_reconstruct(&series)?;
    Ok(ZetaOutput {
        coeffs: series.coeffs().to_vec(),
        pade,
    })
}

pub fn zeta_json(kind: &str, z: &ZetaOutput) -> Value {
    let mut out = serde_json::Map::new();
    out.insert("kind".into(), s(kind));
    out.insert("terms".into(), s(z.coeffs.len()));
    out.insert("series".into(), strings(&z.coeffs));
    out.insert("reconstruction".into(), pade_json(&z.pade));
    out.insert("zeta".into(), z.pade.rational().map(rational_json).unwrap_or(Value::Null));
    Value::Object(out)
}

/// Pretty JSON with a trailing newline.
pub fn to_text(v: &Value) -> String {
    let mut text = serde_json::to_string_pretty(v).expect("values built here always serialize");
    text.push('\n');
    text
}
