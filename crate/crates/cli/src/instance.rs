//! Instance files: JSON in, validated core instances out.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::Deserialize;
use serde_json::Value;

use rzeta_core::arith::parse_rat;
use rzeta_core::torsion::{PlaceSet, TorsionComponent, XiComponent};
use rzeta_core::{FpPoly, IMat, Instance, LayeredPair, PadicEndo, Place, Prime, Rat, RationalXiSpec, TorsionModuleSpec};

use crate::CliError;

/// Default cap on matrix dimension when `TZ_MAX_DIM` is unset.
pub const DEFAULT_MAX_DIM: usize = 8;

/// An integer or rational given either as a JSON number or a decimal string.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum Num {
    Int(i64),
    Text(String),
}

impl Num {
    fn integer(&self) -> Result<BigInt, CliError> {
        match self {
            Num::Int(v) => Ok(BigInt::from(*v)),
            Num::Text(s) => {
                BigInt::from_str(s.trim()).map_err(|_| CliError::Parse(format!("not an integer: {s:?}")))
            }
        }
    }

    fn rational(&self) -> Result<Rat, CliError> {
        match self {
            Num::Int(v) => Ok(Rat::from_integer(BigInt::from(*v))),
            Num::Text(s) => parse_rat(s).map_err(|e| CliError::Parse(format!("{s:?}: {e}"))),
        }
    }

    fn prime(&self) -> Result<Prime, CliError> {
        Ok(Prime::from_bigint(&self.integer()?)?)
    }
}

type Rows = Vec<Vec<Num>>;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawComponent {
    p: Num,
    #[serde(rename = "S")]
    s: Option<Vec<Vec<Num>>>,
    #[serde(rename = "P")]
    places_p: Option<Vec<Vec<Num>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawXi {
    xi: Num,
    #[serde(rename = "S", default)]
    s: Vec<Num>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLayer {
    #[serde(rename = "A")]
    a: Rows,
    #[serde(rename = "B")]
    b: Option<Rows>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum RawInstance {
    Padic {
        p: Num,
        matrix: Rows,
    },
    Torsion {
        components: Vec<RawComponent>,
    },
    RationalXi {
        components: Vec<RawXi>,
    },
    AbelianPair {
        #[serde(rename = "A")]
        a: Rows,
        #[serde(rename = "B")]
        b: Rows,
    },
    Nilpotent {
        layers: Vec<RawLayer>,
    },
}

/// Run parameters that may be given in the instance file under `"options"`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    pub max_n: Option<usize>,
    pub window: Option<usize>,
    pub samples: Option<usize>,
}

impl Options {
    /// Fields set in `self` win over those in `other`.
    pub fn or(self, other: Options) -> Options {
        Options {
            max_n: self.max_n.or(other.max_n),
            window: self.window.or(other.window),
            samples: self.samples.or(other.samples),
        }
    }
}

#[derive(Clone, Debug)]
pub struct InstanceFile {
    pub instance: Instance,
    pub options: Options,
}

fn int_matrix(rows: &Rows, max_dim: usize) -> Result<IMat, CliError> {
    check_dim(rows.len(), max_dim)?;
    let big = rows
        .iter()
        .map(|r| r.iter().map(Num::integer).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(IMat::from_rows(&big)?)
}

fn check_dim(d: usize, max_dim: usize) -> Result<(), CliError> {
    if d == 0 {
        return Err(CliError::Invariant("matrix must be nonempty".into()));
    }
    if d > max_dim {
        return Err(CliError::Invariant(format!("dimension {d} exceeds TZ_MAX_DIM = {max_dim}")));
    }
    Ok(())
}

fn places(p: Prime, list: &[Vec<Num>]) -> Result<Vec<Place>, CliError> {
    list.iter()
        .map(|coeffs| {
            let c = coeffs.iter().map(Num::integer).collect::<Result<Vec<_>, _>>()?;
            Ok(Place::finite(FpPoly::from_bigints(p, &c))?)
        })
        .collect()
}

fn build(raw: RawInstance, max_dim: usize) -> Result<Instance, CliError> {
    Ok(match raw {
        RawInstance::Padic { p, matrix } => {
            check_dim(matrix.len(), max_dim)?;
            let rows = matrix
                .iter()
                .map(|r| r.iter().map(Num::rational).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?;
            Instance::Padic(PadicEndo::new(p.prime()?, rows)?)
        }
        RawInstance::Torsion { components } => {
            let comps = components
                .iter()
                .map(|c| {
                    let p = c.p.prime()?;
                    let places = match (&c.s, &c.places_p) {
                        (Some(s), None) => PlaceSet::S(places(p, s)?),
                        (None, Some(list)) => PlaceSet::P(places(p, list)?),
                        _ => return Err(CliError::Parse("each component needs exactly one of \"S\" and \"P\"".into())),
                    };
                    Ok(TorsionComponent { p, places })
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            Instance::Torsion(TorsionModuleSpec::new(comps)?)
        }
        RawInstance::RationalXi { components } => {
            let comps = components
                .iter()
                .map(|c| {
                    let s = c.s.iter().map(Num::prime).collect::<Result<Vec<_>, _>>()?;
                    Ok(XiComponent::new(c.xi.rational()?, s)?)
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            Instance::RationalXi(RationalXiSpec::new(comps))
        }
        RawInstance::AbelianPair { a, b } => {
            Instance::AbelianPair(int_matrix(&a, max_dim)?, int_matrix(&b, max_dim)?)
        }
        RawInstance::Nilpotent { layers } => {
            let pairs = layers
                .iter()
                .map(|l| {
                    let a = int_matrix(&l.a, max_dim)?;
                    let b = match &l.b {
                        Some(b) => int_matrix(b, max_dim)?,
                        None => IMat::identity(a.dim()),
                    };
                    Ok((a, b))
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            let pair = LayeredPair::new(pairs)?;
            if pair.rank() > max_dim {
                return Err(CliError::Invariant(format!(
                    "total rank {} exceeds TZ_MAX_DIM = {max_dim}",
                    pair.rank()
                )));
            }
            Instance::Nilpotent(pair)
        }
    })
}

/// Parses and validates an instance file. Malformed JSON or an unknown shape
/// is a parse error; data that parses but breaks a module invariant is an
/// invariant violation.
pub fn parse_instance(text: &str, max_dim: usize) -> Result<InstanceFile, CliError> {
    let mut value: Value = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    let options = match value.as_object_mut().and_then(|m| m.remove("options")) {
        Some(o) => serde_json::from_value(o).map_err(|e| CliError::Parse(format!("options: {e}")))?,
        None => Options::default(),
    };
    let raw: RawInstance = serde_json::from_value(value).map_err(|e| CliError::Parse(e.to_string()))?;
    Ok(InstanceFile {
        instance: build(raw, max_dim)?,
        options,
    })
}

/// `TZ_MAX_DIM`, or the default when unset.
pub fn max_dim_from_env(var: Option<&str>) -> Result<usize, CliError> {
    match var {
        None => Ok(DEFAULT_MAX_DIM),
        Some(s) => s
            .trim()
            .parse()
            .map_err(|_| CliError::Parse(format!("TZ_MAX_DIM must be a positive integer, got {s:?}"))),
    }
}
