//! Re-parsing emitted reports and re-checking everything in them that can be
//! checked without the original instance.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::Value;

use rzeta_core::arith::{parse_rat, rat_pow_p};
use rzeta_core::fpoly::mult_order_of_t;
use rzeta_core::zeta::zeta_series;
use rzeta_core::{ExtNat, FpPoly, IPoly, Place, Prime, Rat, RationalFn};

use crate::CliError;

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Invariant(msg.into())
}

fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value, CliError> {
    v.get(key).ok_or_else(|| CliError::Parse(format!("missing field {key:?}")))
}

fn text<'a>(v: &'a Value, key: &str) -> Result<&'a str, CliError> {
    get(v, key)?
        .as_str()
        .ok_or_else(|| CliError::Parse(format!("field {key:?} must be a string")))
}

fn array<'a>(v: &'a Value, key: &str) -> Result<&'a [Value], CliError> {
    get(v, key)?
        .as_array()
        .map(Vec::as_slice)
        .ok_or_else(|| CliError::Parse(format!("field {key:?} must be an array")))
}

fn parse<T: FromStr>(s: &str) -> Result<T, CliError> {
    s.parse().map_err(|_| CliError::Parse(format!("malformed number {s:?}")))
}

fn num<T: FromStr>(v: &Value, key: &str) -> Result<T, CliError> {
    parse(text(v, key)?)
}

fn items<T: FromStr>(vs: &[Value]) -> Result<Vec<T>, CliError> {
    vs.iter()
        .map(|x| {
            x.as_str()
                .ok_or_else(|| CliError::Parse("expected a string entry".into()))
                .and_then(parse)
        })
        .collect()
}

fn rats(vs: &[Value]) -> Result<Vec<Rat>, CliError> {
    vs.iter()
        .map(|x| {
            let t = x.as_str().ok_or_else(|| CliError::Parse("expected a string entry".into()))?;
            parse_rat(t).map_err(|e| CliError::Parse(format!("{t:?}: {e}")))
        })
        .collect()
}

/// Reads `{"num": [...], "den": [...]}` and insists it is already canonical.
pub fn parse_rational(v: &Value) -> Result<RationalFn, CliError> {
    let num = IPoly::new(items::<BigInt>(array(v, "num")?)?);
    let den = IPoly::new(items::<BigInt>(array(v, "den")?)?);
    let f = RationalFn::from_ipolys(&num, &den)?;
    if f.num() != &num || f.den() != &den {
        return Err(bad("zeta is not in canonical form"));
    }
    Ok(f)
}

fn check_series(f: &RationalFn, coeffs: &[Rat]) -> Result<(), CliError> {
    if f.series(coeffs.len()) != coeffs {
        return Err(bad("closed form does not reproduce the series"));
    }
    Ok(())
}

fn check_pade(v: &Value, coeffs: Option<&[Rat]>) -> Result<(), CliError> {
    let terms: usize = num(v, "terms")?;
    match text(v, "outcome")? {
        "rational" => {
            let f = parse_rational(get(v, "zeta")?)?;
            if let Some(c) = coeffs {
                check_series(&f, &c[..terms.min(c.len())])?;
            }
            Ok(())
        }
        "no_stabilize" => Ok(()),
        other => Err(CliError::Parse(format!("unknown reconstruction outcome {other:?}"))),
    }
}

fn check_growth(vs: &[Value]) -> Result<(), CliError> {
    for g in vs {
        let _: usize = num(g, "window")?;
        let _: usize = num(g, "order")?;
        get(g, "validated")?
            .as_bool()
            .ok_or_else(|| CliError::Parse("\"validated\" must be a boolean".into()))?;
    }
    Ok(())
}

fn coprime_to(k: u64, n: u64) -> bool {
    k.gcd(&n) == 1
}

fn check_certificate(c: &Value) -> Result<(), CliError> {
    match text(c, "type")? {
        "padic_unit_eigenvalue" => {
            let p: u64 = num(c, "p")?;
            let q: u64 = num(c, "q")?;
            let gamma: u64 = num(c, "gamma")?;
            let r: u32 = num(c, "r")?;
            let r0: u32 = num(c, "r0")?;
            Prime::new(p)?;
            Prime::new(q)?;
            if q == p || r != r0 + 1 {
                return Err(bad("certificate parameters are inconsistent"));
            }
            for check in array(c, "checks")? {
                let e: u32 = num(check, "e")?;
                let n_e: u64 = num(check, "n_e")?;
                let expected = q
                    .checked_pow(e)
                    .and_then(|x| x.checked_mul(gamma))
                    .and_then(|x| x.checked_mul(p.checked_pow(r)?));
                if expected != Some(n_e) {
                    return Err(bad("n(e) does not match q^e gamma p^r"));
                }
                let value: ExtNat = num(check, "value")?;
                if !value.is_finite() {
                    return Err(bad("periodicity value must be finite"));
                }
                let ks: Vec<u64> = items(array(check, "k")?)?;
                if ks.iter().any(|&k| k < 2 || !coprime_to(k, n_e)) {
                    return Err(bad("multipliers must be at least 2 and coprime to n(e)"));
                }
            }
            Ok(())
        }
        "torsion_witness" => {
            let p = Prime::new(num(c, "p")?)?;
            let place = get(c, "place")?;
            if num::<u64>(place, "p")? != p.get() {
                return Err(bad("place characteristic differs from p"));
            }
            let w = FpPoly::new(p, items(array(place, "coeffs")?)?);
            let Place::Finite(w) = Place::finite(w)? else {
                unreachable!("Place::finite builds a finite place")
            };
            let degree: usize = num(c, "degree")?;
            let order: u64 = num(c, "order")?;
            if w.degree() != Some(degree) || w.is_t() {
                return Err(bad("witness place has the wrong degree or is (t)"));
            }
            if mult_order_of_t(&w)? != order {
                return Err(bad("order of t at the witness place is wrong"));
            }
            for id in array(c, "identities")? {
                let k: u32 = num(id, "k")?;
                let exponent: u64 = num(id, "exponent")?;
                let value = parse_rat(text(id, "value")?)?;
                let pk = p.get().pow(k);
                if exponent != order * pk || value != rat_pow_p(p, -((pk * degree as u64) as i64)) {
                    return Err(bad("witness identity fails"));
                }
            }
            Ok(())
        }
        "rational_xi_witness" => {
            let prime = Prime::new(num(c, "prime")?)?;
            let xi = parse_rat(text(c, "xi")?)?;
            let order: u64 = num(c, "order")?;
            let pb = prime.to_bigint();
            if (xi.numer() % &pb).is_zero() || (xi.denom() % &pb).is_zero() {
                return Err(bad("xi is not a unit at the witness prime"));
            }
            // xi mod p as num * den^(p-2)
            let x = (xi.numer() * xi.denom().modpow(&(&pb - 2u32), &pb)).mod_floor(&pb);
            let mut y = x.clone();
            let mut k = 1u64;
            while !y.is_one() {
                y = (&y * &x) % &pb;
                k += 1;
            }
            if k != order {
                return Err(bad("order of xi modulo the witness prime is wrong"));
            }
            Ok(())
        }
        other => Err(CliError::Parse(format!("unknown certificate type {other:?}"))),
    }
}

fn check_classify(v: &Value) -> Result<(), CliError> {
    text(v, "kind")?;
    let verdict = text(v, "verdict")?;
    if verdict == "not_tame" {
        let n: u64 = num(v, "n")?;
        return if n == 0 { Err(bad("not_tame index must be positive")) } else { Ok(()) };
    }
    match text(v, "provenance")? {
        "structural" => {
            text(v, "rule")?;
        }
        "empirical" => {}
        other => return Err(CliError::Parse(format!("unknown provenance {other:?}"))),
    }
    let closed = match verdict {
        "rational" => Some(parse_rational(get(v, "zeta")?)?),
        "natural_boundary" => {
            check_certificate(get(v, "certificate")?)?;
            None
        }
        "apparent_irrational" => {
            check_growth(array(v, "growth")?)?;
            None
        }
        other => return Err(CliError::Parse(format!("unknown verdict {other:?}"))),
    };
    let proof_window = match get(v, "proof_window")? {
        Value::Null => None,
        Value::String(t) => Some(parse::<usize>(t)?),
        _ => return Err(CliError::Parse("\"proof_window\" must be a string or null".into())),
    };
    let evidence = get(v, "evidence")?;
    if !evidence.is_null() {
        let seq: Vec<ExtNat> = items(array(evidence, "sequence")?)?;
        check_growth(array(evidence, "growth")?)?;
        let coeffs = zeta_series(&seq).ok().map(|s| s.coeffs().to_vec());
        check_pade(get(evidence, "pade")?, coeffs.as_deref())?;
        if let (Some(f), Some(c)) = (&closed, &coeffs) {
            let upto = proof_window.map_or(c.len(), |w| w.min(c.len()));
            check_series(f, &c[..upto])?;
        }
        match get(evidence, "radius")? {
            Value::Null => {}
            Value::String(t) => {
                let r: f64 = parse(t)?;
                if r.is_nan() || r <= 0.0 {
                    return Err(bad("radius estimate must be positive"));
                }
            }
            _ => return Err(CliError::Parse("\"radius\" must be a string or null".into())),
        }
    }
    items::<String>(array(v, "notes")?)?;
    Ok(())
}

fn check_zeta(v: &Value) -> Result<(), CliError> {
    text(v, "kind")?;
    let coeffs = rats(array(v, "series")?)?;
    if num::<usize>(v, "terms")? != coeffs.len() {
        return Err(bad("term count differs from the series length"));
    }
    if coeffs.first() != Some(&Rat::one()) {
        return Err(bad("zeta series must start with 1"));
    }
    let recon = get(v, "reconstruction")?;
    check_pade(recon, Some(&coeffs))?;
    match (text(recon, "outcome")?, get(v, "zeta")?) {
        ("rational", z) => {
            if parse_rational(z)? != parse_rational(get(recon, "zeta")?)? {
                return Err(bad("zeta differs from the reconstruction"));
            }
        }
        (_, Value::Null) => {}
        _ => return Err(bad("closed form given without a reconstruction")),
    }
    Ok(())
}

fn check_rnum(v: &Value) -> Result<(), CliError> {
    text(v, "kind")?;
    for (i, row) in array(v, "sequence")?.iter().enumerate() {
        let n: u64 = num(row, "n")?;
        if n != i as u64 + 1 {
            return Err(bad("sequence indices must run 1, 2, 3, ..."));
        }
        let _: ExtNat = num(row, "R_n")?;
    }
    Ok(())
}

/// Re-parses any JSON body this tool emits and re-checks it.
pub fn validate_report(text_in: &str) -> Result<&'static str, CliError> {
    let v: Value = serde_json::from_str(text_in).map_err(|e| CliError::Parse(e.to_string()))?;
    if v.get("verdict").is_some() {
        check_classify(&v)?;
        Ok("classify")
    } else if v.get("series").is_some() {
        check_zeta(&v)?;
        Ok("zeta")
    } else if v.get("sequence").is_some() {
        check_rnum(&v)?;
        Ok("rnum")
    } else {
        Err(CliError::Parse("not a report body".into()))
    }
}
