//! Routing an instance to its structural classifier and attaching
//! finite-window evidence.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::ExtNat;
use crate::lattice::IMat;
use crate::nilpotent::LayeredPair;
use crate::padic::PadicEndo;
use crate::report::{DichotomyReport, Evidence, GrowthRow, Provenance, Verdict};
use crate::torsion::{RationalXiSpec, TorsionModuleSpec};
use crate::zeta::{berlekamp_massey, pade_reconstruct, radius_estimate, zeta_series, PadeOutcome, QSeries};
use crate::{Error, Rat, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Padic(PadicEndo),
    Torsion(TorsionModuleSpec),
    RationalXi(RationalXiSpec),
    AbelianPair(IMat, IMat),
    Nilpotent(LayeredPair),
}

impl Instance {
    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Padic(_) => "padic",
            Instance::Torsion(_) => "torsion",
            Instance::RationalXi(_) => "rational_xi",
            Instance::AbelianPair(..) => "abelian_pair",
            Instance::Nilpotent(_) => "nilpotent",
        }
    }

    /// `R(phi^n)`, or the coincidence number for pairs.
    pub fn reidemeister(&self, n: u64) -> Result<ExtNat> {
        match self {
            Instance::Padic(e) => e.reidemeister(n),
            Instance::Torsion(s) => s.reidemeister(n),
            Instance::RationalXi(s) => s.reidemeister(n),
            Instance::AbelianPair(a, b) => {
                if n == 0 {
                    return Err(Error::OutOfRange("iterate index must be positive"));
                }
                crate::lattice::coincidence_r(a, b, n)
            }
            Instance::Nilpotent(l) => l.reidemeister(n),
        }
    }

    /// `R(1), .., R(count)`.
    pub fn sequence(&self, count: usize) -> Result<Vec<ExtNat>> {
        (1..=count as u64).map(|n| self.reidemeister(n)).collect()
    }

    /// Zeta coefficients `c_0..c_{terms-1}`; fails with the first infinite
    /// iterate.
    pub fn zeta(&self, terms: usize) -> Result<QSeries> {
        zeta_series(&self.sequence(terms.saturating_sub(1))?)
    }

    fn structural(&self, policy: &Policy) -> Result<Option<DichotomyReport>> {
        match self {
            Instance::Padic(e) => e.classify(policy.samples).map(Some),
            Instance::Torsion(s) => s.classify().map(Some),
            Instance::RationalXi(s) => s.classify().map(Some),
            Instance::AbelianPair(a, b) => {
                LayeredPair::new(vec![(a.clone(), b.clone())])?.classify(policy.window)
            }
            Instance::Nilpotent(l) => l.classify(policy.window),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Policy {
    /// Length of the Reidemeister sequence kept as evidence.
    pub max_n: usize,
    /// Number of zeta coefficients handed to Padé reconstruction.
    pub window: usize,
    /// Coprime multipliers checked per certificate exponent.
    pub samples: usize,
    /// Windows for the Berlekamp-Massey growth table.
    pub growth_windows: Vec<usize>,
}

impl Default for Policy {
    fn default() -> Policy {
        Policy {
            max_n: 32,
            window: 32,
            samples: 5,
            growth_windows: vec![16, 32, 64],
        }
    }
}

fn collect_evidence(instance: &Instance, policy: &Policy) -> Result<Evidence> {
    let longest = policy
        .growth_windows
        .iter()
        .copied()
        .chain([policy.max_n, policy.window.saturating_sub(1)])
        .max()
        .unwrap_or(0);
    let seq = instance.sequence(longest)?;
    if let Some(n) = seq.iter().position(|v| !v.is_finite()) {
        return Err(Error::NotTame(n as u64 + 1));
    }
    let values: Vec<Rat> = seq
        .iter()
        .map(|v| Rat::from_integer(v.to_bigint().expect("finite")))
        .collect();
    let mut growth = Vec::new();
    for &w in &policy.growth_windows {
        if w >= 4 {
            let rec = berlekamp_massey(&values[..w])?;
            growth.push(GrowthRow {
                window: w,
                order: rec.order,
                validated: rec.validated,
            });
        }
    }
    let series = zeta_series(&seq[..policy.window.saturating_sub(1)])?;
    let pade = pade_reconstruct(&series)?;
    let sequence = seq[..policy.max_n.min(seq.len())].to_vec();
    let radius = radius_estimate(&sequence);
    Ok(Evidence {
        sequence,
        growth,
        pade,
        radius,
    })
}

/// Structural verdict from the owning module, with evidence over the
/// policy windows.
///
/// The structural verdict always wins. A rational closed form whose total
/// degree fits the Padé window must be reproduced exactly by the
/// reconstruction; a natural-boundary verdict must not be contradicted by a
/// stabilized reconstruction. Either conflict is a hard error.
pub fn classify_instance(instance: &Instance, policy: &Policy) -> Result<DichotomyReport> {
    if policy.window < 8 {
        return Err(Error::OutOfRange("Padé window must be at least 8"));
    }
    let structural = instance.structural(policy)?;
    let evidence = collect_evidence(instance, policy)?;
    let mut report = match structural {
        Some(mut rep) => {
            match (&rep.verdict, &evidence.pade) {
                (Verdict::Rational(f), PadeOutcome::Rational { zeta, .. }) if zeta != f => {
                    return Err(Error::Inconsistent("reconstructed zeta differs from closed form"));
                }
                (Verdict::Rational(f), PadeOutcome::NoStabilize { .. })
                    if f.total_degree() + 4 <= policy.window =>
                {
                    return Err(Error::Inconsistent("closed form not reproduced by reconstruction"));
                }
                (Verdict::Rational(f), _) => {
                    // re-expand the closed form against the full series window
                    let series = instance.zeta(policy.window)?;
                    if f.series(policy.window) != series.coeffs() {
                        return Err(Error::Inconsistent("closed form disagrees with the series"));
                    }
                    rep.proof_window = Some(rep.proof_window.unwrap_or(0).max(policy.window));
                }
                (Verdict::NaturalBoundary(_), PadeOutcome::Rational { .. }) => {
                    return Err(Error::Inconsistent("natural boundary but the series stabilized"));
                }
                _ => {}
            }
            rep
        }
        None => {
            let mut rep = match &evidence.pade {
                PadeOutcome::Rational { zeta, terms } => DichotomyReport {
                    verdict: Verdict::Rational(zeta.clone()),
                    provenance: Provenance::Empirical,
                    proof_window: Some(*terms),
                    evidence: None,
                    notes: Vec::new(),
                },
                PadeOutcome::NoStabilize { .. } => DichotomyReport {
                    verdict: Verdict::ApparentIrrational(evidence.growth.clone()),
                    provenance: Provenance::Empirical,
                    proof_window: None,
                    evidence: None,
                    notes: Vec::new(),
                },
            };
            rep.notes
                .push("no structural classifier applies: non-commuting layer pair".to_string());
            rep
        }
    };
    report.evidence = Some(evidence);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeta::RationalFn;

    #[test]
    fn classify_instance_examples() {
        let policy = Policy::default();
        let a4 = Instance::Padic(PadicEndo::from_i64(3, &[vec![4]]).unwrap());
        let rep = classify_instance(&a4, &policy).unwrap();
        assert!(matches!(rep.verdict, Verdict::NaturalBoundary(_)));
        let orders: Vec<usize> = rep.evidence.unwrap().growth.iter().map(|g| g.order).collect();
        assert!(orders.windows(2).all(|w| w[0] < w[1]), "{orders:?}");

        let tors = Instance::Torsion(TorsionModuleSpec::s_mode(2, &[&[0, 1]]).unwrap());
        let rep = classify_instance(&tors, &policy).unwrap();
        assert_eq!(rep.verdict, Verdict::Rational(RationalFn::from_i64(&[1], &[1, -2]).unwrap()));

        let pair = Instance::AbelianPair(IMat::from_i64([[2]]), IMat::from_i64([[3]]));
        let rep = classify_instance(&pair, &policy).unwrap();
        assert_eq!(rep.verdict, Verdict::Rational(RationalFn::from_i64(&[1, -2], &[1, -3]).unwrap()));
        assert_eq!(rep.proof_window, Some(32));
    }

    #[test]
    fn not_tame_is_an_error() {
        let pair = Instance::AbelianPair(IMat::from_i64([[2]]), IMat::from_i64([[-2]]));
        assert_eq!(classify_instance(&pair, &Policy::default()), Err(Error::NotTame(2)));
    }
}
