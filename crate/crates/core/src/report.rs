//! Verdicts, certificates and evidence attached to a classification.

use alloc::string::String;
use alloc::vec::Vec;

use crate::arith::{ExtNat, Prime};
use crate::fpoly::FpPoly;
use crate::zeta::{PadeOutcome, RationalFn};
use crate::Rat;

/// Outcome of a tameness test.
#[derive(Clone, Debug, PartialEq)]
pub enum TameResult {
    /// Every iterate has a finite Reidemeister number (proved).
    Tame,
    /// `n` is the least iterate with an infinite Reidemeister number.
    NotTame { n: u64 },
    /// Finite for all `n <= horizon`; no proof beyond that.
    TameUpTo {
        horizon: u64,
        separation: Vec<LayerSeparation>,
    },
}

impl TameResult {
    pub fn is_tame(&self) -> bool {
        !matches!(self, TameResult::NotTame { .. })
    }
}

/// Floating-point spectral radius estimates for one layer pair. Advisory
/// only: nothing exact depends on these numbers.
#[derive(Clone, Debug, PartialEq)]
pub struct LayerSeparation {
    pub layer: usize,
    pub radius_a: f64,
    pub radius_b: f64,
}

/// One verified equality `R(k n(e)) = R(n(e))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicityCheck {
    pub e: u32,
    pub n_e: u64,
    pub value: ExtNat,
    pub ks: Vec<u64>,
}

/// One verified value `|t^(l_w p^k) - 1|_w = p^(-p^k d_w)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessIdentity {
    pub k: u32,
    pub exponent: u64,
    pub value: Rat,
}

/// Finite, re-checkable evidence for a natural boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Unit eigenvalue of a p-adic endomorphism. `gamma` is the lcm of the
    /// multiplicative orders of the nonzero residue eigenvalues, and
    /// `n(e) = q^e gamma p^r`.
    PadicUnitEigenvalue {
        p: Prime,
        gamma: u64,
        q: Prime,
        r0: u32,
        r: u32,
        checks: Vec<PeriodicityCheck>,
    },
    /// A place `w != (t)` among the excluded places of a torsion component.
    TorsionWitness {
        component: usize,
        p: Prime,
        place: FpPoly,
        degree: usize,
        order: u64,
        identities: Vec<WitnessIdentity>,
    },
    /// A prime in `S` at which `xi` is a unit; `order` is the order of
    /// `xi mod p`.
    RationalXiWitness {
        component: usize,
        xi: Rat,
        prime: Prime,
        order: u64,
    },
}

/// Berlekamp-Massey order of the Reidemeister sequence on one window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthRow {
    pub window: usize,
    pub order: usize,
    pub validated: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    Rational(RationalFn),
    NaturalBoundary(Certificate),
    ApparentIrrational(Vec<GrowthRow>),
    NotTame(u64),
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Rational(_) => "rational",
            Verdict::NaturalBoundary(_) => "natural_boundary",
            Verdict::ApparentIrrational(_) => "apparent_irrational",
            Verdict::NotTame(_) => "not_tame",
        }
    }

    pub fn rational(&self) -> Option<&RationalFn> {
        match self {
            Verdict::Rational(f) => Some(f),
            _ => None,
        }
    }
}

/// Which rule produced the verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Structural(&'static str),
    Empirical,
}

/// Numerical side data collected over a finite window.
#[derive(Clone, Debug, PartialEq)]
pub struct Evidence {
    /// `R(1), .., R(N)`.
    pub sequence: Vec<ExtNat>,
    pub growth: Vec<GrowthRow>,
    pub pade: PadeOutcome,
    /// Root-test estimate of the radius of convergence.
    pub radius: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DichotomyReport {
    pub verdict: Verdict,
    pub provenance: Provenance,
    /// Number of zeta coefficients a rational verdict was re-expanded
    /// against.
    pub proof_window: Option<usize>,
    pub evidence: Option<Evidence>,
    pub notes: Vec<String>,
}

impl DichotomyReport {
    pub fn structural(verdict: Verdict, rule: &'static str) -> DichotomyReport {
        DichotomyReport {
            verdict,
            provenance: Provenance::Structural(rule),
            proof_window: None,
            evidence: None,
            notes: Vec::new(),
        }
    }
}
