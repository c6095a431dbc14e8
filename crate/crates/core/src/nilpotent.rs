//! Coincidence Reidemeister numbers of endomorphism pairs of torsion-free
//! nilpotent groups, given by their action on the free abelian factors of
//! an adapted lower central series.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{ToPrimitive, Zero};

use crate::arith::ExtNat;
use crate::lattice::{coincidence_r, det, exterior_power, IMat};
use crate::report::{DichotomyReport, LayerSeparation, TameResult, Verdict};
use crate::zeta::{pade_reconstruct, zeta_series, PadeOutcome};
use crate::{Error, Result};

/// Largest total rank for which the commuting-layer classifier runs; the
/// closed form has degree up to `2^rank`.
pub const MAX_CLASSIFY_RANK: usize = 7;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayeredPair {
    layers: Vec<(IMat, IMat)>,
}

impl LayeredPair {
    pub fn new(layers: Vec<(IMat, IMat)>) -> Result<LayeredPair> {
        if layers.is_empty() {
            return Err(Error::OutOfRange("at least one layer is required"));
        }
        for (a, b) in &layers {
            if a.dim() != b.dim() {
                return Err(Error::DimensionMismatch(a.dim(), b.dim()));
            }
        }
        Ok(LayeredPair { layers })
    }

    /// Single-endomorphism mode: every `B_k` is the identity.
    pub fn single(layers: Vec<IMat>) -> Result<LayeredPair> {
        LayeredPair::new(
            layers
                .into_iter()
                .map(|a| {
                    let id = IMat::identity(a.dim());
                    (a, id)
                })
                .collect(),
        )
    }

    pub fn layers(&self) -> &[(IMat, IMat)] {
        &self.layers
    }

    pub fn rank(&self) -> usize {
        self.layers.iter().map(|(a, _)| a.dim()).sum()
    }

    /// `R(phi^n, psi^n)` as the product of the layer numbers.
    pub fn reidemeister(&self, n: u64) -> Result<ExtNat> {
        if n == 0 {
            return Err(Error::OutOfRange("iterate index must be positive"));
        }
        self.layers.iter().map(|(a, b)| coincidence_r(a, b, n)).product()
    }

    pub fn is_commuting(&self) -> bool {
        self.layers
            .iter()
            .all(|(a, b)| commuting_check(a, b).unwrap_or(false))
    }

    /// First `n <= horizon` with an infinite value, else `TameUpTo` with
    /// floating-point spectral radii of each layer.
    pub fn tame_scan(&self, horizon: u64) -> Result<TameResult> {
        for n in 1..=horizon {
            if !self.reidemeister(n)?.is_finite() {
                return Ok(TameResult::NotTame { n });
            }
        }
        let separation = self
            .layers
            .iter()
            .enumerate()
            .map(|(layer, (a, b))| LayerSeparation {
                layer,
                radius_a: spectral_radius_estimate(a),
                radius_b: spectral_radius_estimate(b),
            })
            .collect();
        Ok(TameResult::TameUpTo {
            horizon,
            separation,
        })
    }

    /// Exact tameness for commuting layers.
    ///
    /// For a commuting pair the eigenvalue ratios `xi / eta` lie in fields
    /// of degree at most `d`, so a ratio that is a root of unity has an
    /// order `m` with `euler_phi(m) <= d`, hence `m <= 2 d^2 + 2`. Scanning
    /// those `n` decides tameness for all `n`.
    pub fn tame_check(&self) -> Result<TameResult> {
        if !self.is_commuting() {
            return Err(Error::Unsupported("non-commuting layer pair"));
        }
        let d = self.layers.iter().map(|(a, _)| a.dim()).max().unwrap_or(0) as u64;
        match self.tame_scan(2 * d * d + 2)? {
            TameResult::TameUpTo { .. } => Ok(TameResult::Tame),
            other => Ok(other),
        }
    }

    /// Structural classification for commuting layers; `None` when some
    /// layer pair does not commute.
    ///
    /// For commuting tame layers `R(n)` is, up to a sign pattern `eps s^n`,
    /// `prod_k prod_i (xi_{k,i}^n - eta_{k,i}^n)`: a sum of at most
    /// `2^rank` exponentials with coefficients `±1`. The zeta function is
    /// therefore rational of total degree at most `2^rank`, and Padé
    /// reconstruction over `2^rank + 4` coefficients is guaranteed to
    /// return it.
    pub fn classify(&self, window: usize) -> Result<Option<DichotomyReport>> {
        if !self.is_commuting() {
            return Ok(None);
        }
        if let TameResult::NotTame { n } = self.tame_check()? {
            return Err(Error::NotTame(n));
        }
        let rank = self.rank();
        if rank > MAX_CLASSIFY_RANK {
            return Err(Error::Unsupported("total rank too large for exact reconstruction"));
        }
        let terms = window.max((1usize << rank) + 4).max(8);
        let seq = (1..terms as u64)
            .map(|n| self.reidemeister(n))
            .collect::<Result<Vec<_>>>()?;
        let series = zeta_series(&seq)?;
        match pade_reconstruct(&series)? {
            PadeOutcome::Rational { zeta, terms } => {
                let mut report =
                    DichotomyReport::structural(Verdict::Rational(zeta), "commuting tame layers");
                report.proof_window = Some(terms);
                Ok(Some(report))
            }
            PadeOutcome::NoStabilize { .. } => Err(Error::ReconstructionFailed(
                "commuting layers must give a rational zeta function",
            )),
        }
    }
}

/// Layers `(A, I_2)` and `(Λ^2 A, [[1]])` of the free class-2 nilpotent
/// group on two generators.
pub fn heisenberg_layers(a: &IMat) -> Result<LayeredPair> {
    if a.dim() != 2 {
        return Err(Error::DimensionMismatch(2, a.dim()));
    }
    let top = exterior_power(a, 2)?;
    LayeredPair::single(vec![a.clone(), top])
}

/// The matrix of `psi^-1 phi`, namely `B^-1 A`.
pub fn reduce_pair_to_single(a: &IMat, b: &IMat) -> Result<IMat> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(a.dim(), b.dim()));
    }
    let d = det(b);
    if d.is_zero() {
        return Err(Error::NotInvertible);
    }
    let prod = b.adjugate().mul(a)?;
    let entries = prod
        .entries()
        .iter()
        .map(|x| {
            if (x % &d).is_zero() {
                Ok(x / &d)
            } else {
                Err(Error::NotIntegral)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    IMat::new(a.dim(), entries)
}

pub fn commuting_check(a: &IMat, b: &IMat) -> Result<bool> {
    Ok(a.mul(b)? == b.mul(a)?)
}

/// `||A^k||^(1/k)` for `k = 64`, in floating point with rescaling.
fn spectral_radius_estimate(a: &IMat) -> f64 {
    const K: u32 = 64;
    let d = a.dim();
    let m: Vec<f64> = a.entries().iter().map(|x| x.to_f64().unwrap_or(f64::MAX)).collect();
    let mut x: Vec<f64> = IMat::identity(d).entries().iter().map(|v| v.to_f64().unwrap_or(0.0)).collect();
    let mut log_scale = 0.0;
    for _ in 0..K {
        let mut y = vec![0.0; d * d];
        for i in 0..d {
            for k in 0..d {
                for j in 0..d {
                    y[i * d + j] += x[i * d + k] * m[k * d + j];
                }
            }
        }
        let norm = y.iter().fold(0.0f64, |acc, v| acc.max(libm::fabs(*v)));
        if norm == 0.0 {
            return 0.0;
        }
        log_scale += libm::log(norm);
        x = y.into_iter().map(|v| v / norm).collect();
    }
    libm::exp(log_scale / K as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m1(v: i64) -> IMat {
        IMat::from_i64([[v]])
    }

    #[test]
    fn coincidence_examples() {
        let pair = LayeredPair::new(vec![(m1(2), m1(3))]).unwrap();
        assert_eq!(pair.reidemeister(2).unwrap(), ExtNat::from_u64(5));

        let h = heisenberg_layers(&IMat::from_i64([[2, 0], [0, 2]])).unwrap();
        assert_eq!(h.reidemeister(1).unwrap(), ExtNat::from_u64(3));

        let same = LayeredPair::new(vec![(m1(5), m1(5)), (m1(2), m1(3))]).unwrap();
        assert_eq!(same.reidemeister(1).unwrap(), ExtNat::Infinite);
    }

    #[test]
    fn heisenberg_examples() {
        let h = heisenberg_layers(&IMat::from_i64([[2, 0], [0, 2]])).unwrap();
        assert_eq!(h.layers()[1].0, m1(4));
        let h = heisenberg_layers(&IMat::identity(2)).unwrap();
        assert_eq!(h.layers()[1].0, m1(1));
        let h = heisenberg_layers(&IMat::from_i64([[1, 1], [0, 1]])).unwrap();
        assert_eq!(h.layers()[1].0, m1(1));
        assert!(heisenberg_layers(&m1(2)).is_err());
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce_pair_to_single(&m1(2), &m1(-1)).unwrap(), m1(-2));
        let swap = IMat::from_i64([[0, 1], [1, 0]]);
        assert_eq!(reduce_pair_to_single(&swap, &IMat::identity(2)).unwrap(), swap);
        let a = IMat::from_i64([[6, 0], [0, 6]]);
        let b = IMat::from_i64([[2, 0], [0, 3]]);
        assert_eq!(reduce_pair_to_single(&a, &b).unwrap(), IMat::from_i64([[3, 0], [0, 2]]));
        assert_eq!(reduce_pair_to_single(&m1(1), &m1(0)), Err(Error::NotInvertible));
        assert_eq!(reduce_pair_to_single(&m1(1), &m1(2)), Err(Error::NotIntegral));
    }

    #[test]
    fn commuting_examples() {
        assert!(commuting_check(&m1(2), &m1(3)).unwrap());
        let a = IMat::from_i64([[1, 1], [0, 1]]);
        let b = IMat::from_i64([[1, 0], [1, 1]]);
        assert!(!commuting_check(&a, &b).unwrap());
        assert!(commuting_check(&a, &a.pow(3)).unwrap());
    }

    #[test]
    fn tame_scan_examples() {
        let p = LayeredPair::new(vec![(m1(2), m1(3))]).unwrap();
        let TameResult::TameUpTo { horizon, separation } = p.tame_scan(20).unwrap() else {
            panic!()
        };
        assert_eq!(horizon, 20);
        assert!((separation[0].radius_a - 2.0).abs() < 1e-9);
        assert!((separation[0].radius_b - 3.0).abs() < 1e-9);

        let q = LayeredPair::new(vec![(m1(2), m1(-2))]).unwrap();
        assert_eq!(q.tame_scan(20).unwrap(), TameResult::NotTame { n: 2 });
        assert_eq!(q.tame_check().unwrap(), TameResult::NotTame { n: 2 });
        let i = LayeredPair::new(vec![(IMat::identity(2), IMat::identity(2))]).unwrap();
        assert_eq!(i.tame_scan(1).unwrap(), TameResult::NotTame { n: 1 });
    }

    #[test]
    fn classify_heisenberg() {
        let h = heisenberg_layers(&IMat::from_i64([[2, 0], [0, 2]])).unwrap();
        let rep = h.classify(12).unwrap().unwrap();
        // R(n) = (2^n - 1)^2 (4^n - 1)
        let Verdict::Rational(f) = rep.verdict else { panic!() };
        let b = f.log_derivative_series(16).unwrap();
        for n in 1..=16u32 {
            let r = (num_bigint::BigInt::from(2).pow(n) - 1u32).pow(2) * (num_bigint::BigInt::from(4).pow(n) - 1u32);
            assert_eq!(b[n as usize - 1], crate::Rat::from_integer(r));
        }
    }

    #[test]
    fn non_commuting_has_no_structural_verdict() {
        let a = IMat::from_i64([[2, 1], [0, 2]]);
        let b = IMat::from_i64([[5, 0], [1, 5]]);
        let p = LayeredPair::new(vec![(a, b)]).unwrap();
        assert_eq!(p.classify(32).unwrap(), None);
    }
}
