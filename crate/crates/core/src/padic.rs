//! Endomorphisms of `Z_p^d` given by matrices of p-integral rationals.
//!
//! `R(phi^n) = |det(Phi^n - I)|_p^-1 = p^(v_p(det(Phi^n - I)))`. The entries
//! are scaled by their common denominator `D` (a p-adic unit) so all work
//! happens on the integer matrix `M = D Phi`, where
//! `v_p(det(Phi^n - I)) = v_p(det(M^n - D^n I))`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{vp, vp_rat, ExtNat, Prime, Valuation};
use crate::fpoly::{unit_root_order, FpPoly};
use crate::lattice::{charpoly, det, root_of_unity_orders, IMat};
use crate::poly::QPoly;
use crate::report::{Certificate, DichotomyReport, PeriodicityCheck, TameResult, Verdict};
use crate::zeta::RationalFn;
use crate::{Error, Rat, Result};

/// Exponents `e` for which the periodicity certificate is checked.
pub const CERTIFICATE_EXPONENTS: [u32; 3] = [1, 2, 3];

const MAX_R_SCAN: u32 = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicEndo {
    p: Prime,
    dim: usize,
    matrix: Vec<Rat>,
    scaled: IMat,
    denom: BigInt,
    charpoly: QPoly,
    bad_orders: Vec<u64>,
}

impl PadicEndo {
    pub fn new(p: Prime, rows: Vec<Vec<Rat>>) -> Result<PadicEndo> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::OutOfRange("dimension must be at least 1"));
        }
        for r in &rows {
            if r.len() != dim {
                return Err(Error::DimensionMismatch(dim, r.len()));
            }
        }
        let matrix: Vec<Rat> = rows.into_iter().flatten().collect();
        if matrix
            .iter()
            .any(|x| matches!(vp_rat(x, p), Valuation::Finite(v) if v < 0))
        {
            return Err(Error::NotPIntegral);
        }
        let denom = matrix.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let scaled = IMat::new(
            dim,
            matrix.iter().map(|x| (x * &denom).to_integer()).collect(),
        )?;
        // chi_Phi(X) = D^-d chi_M(D X)
        let cm = charpoly(&scaled);
        let dpow = Rat::from_integer(denom.pow(dim as u32));
        let mut scale = Rat::one();
        let mut coeffs = Vec::with_capacity(dim + 1);
        for c in cm.coeffs() {
            coeffs.push(Rat::from_integer(c.clone()) * &scale / &dpow);
            scale *= Rat::from_integer(denom.clone());
        }
        let charpoly = QPoly::new(coeffs);
        let bad_orders = root_of_unity_orders(&charpoly);
        Ok(PadicEndo {
            p,
            dim,
            matrix,
            scaled,
            denom,
            charpoly,
            bad_orders,
        })
    }

    pub fn from_i64(p: u64, rows: &[Vec<i64>]) -> Result<PadicEndo> {
        let p = Prime::new(p)?;
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| Rat::from_integer(x.into())).collect())
            .collect();
        PadicEndo::new(p, rows)
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rat {
        &self.matrix[i * self.dim + j]
    }

    pub fn charpoly(&self) -> &QPoly {
        &self.charpoly
    }

    /// Characteristic polynomial reduced mod p: `prod (X - residue(lambda_i))`.
    pub fn residue_charpoly(&self) -> FpPoly {
        let p = self.p.get();
        let coeffs: Vec<u64> = (0..=self.dim)
            .map(|i| rat_mod_p(&self.charpoly.coeff(i), p))
            .collect();
        FpPoly::new(self.p, coeffs)
    }

    /// All eigenvalues have `|lambda|_p < 1` exactly when every residue
    /// eigenvalue is 0.
    pub fn is_topologically_nilpotent(&self) -> bool {
        let r = self.residue_charpoly();
        r.degree() == Some(self.dim) && r.coeffs()[..self.dim].iter().all(|&c| c == 0)
    }

    /// `v_p(det(Phi^n - I))`, or `None` when the determinant vanishes.
    pub fn valuation(&self, n: u64) -> Result<Option<u64>> {
        if n == 0 {
            return Err(Error::OutOfRange("iterate index must be positive"));
        }
        if self.bad_orders.iter().any(|m| n % m == 0) {
            return Ok(None);
        }
        let mut k = 64u32;
        loop {
            if let Some(v) = self.valuation_mod(n, k) {
                return Ok(Some(v));
            }
            k *= 2;
        }
    }

    /// Elimination modulo `p^k` with minimal-valuation pivots; `None` when
    /// the precision is insufficient to certify the valuation.
    fn valuation_mod(&self, n: u64, k: u32) -> Option<u64> {
        let p = BigUint::from(self.p.get());
        let modulus = p.pow(k);
        let d = self.dim;
        let m: Vec<BigUint> = self
            .scaled
            .entries()
            .iter()
            .map(|x| to_residue(x, &modulus))
            .collect();
        let mut a = mat_pow_mod(&m, d, n, &modulus);
        let dn = to_residue(&self.denom, &modulus).modpow(&BigUint::from(n), &modulus);
        for i in 0..d {
            let idx = i * d + i;
            a[idx] = (&a[idx] + &modulus - &dn) % &modulus;
        }
        vp_det_mod(a, d, &p, k, &modulus)
    }

    /// `R(phi^n)` computed modulo growing powers of `p`.
    pub fn reidemeister(&self, n: u64) -> Result<ExtNat> {
        Ok(match self.valuation(n)? {
            None => ExtNat::Infinite,
            Some(v) => ExtNat::Finite(BigUint::from(self.p.get()).pow(v as u32)),
        })
    }

    /// `R(phi^n)` from the exact rational determinant; slow, used as a
    /// cross-check of [`PadicEndo::reidemeister`].
    pub fn reidemeister_exact(&self, n: u64) -> Result<ExtNat> {
        if n == 0 {
            return Err(Error::OutOfRange("iterate index must be positive"));
        }
        let dn = self.denom.pow(n as u32);
        let x = self.scaled.pow(n).sub(&IMat::scalar(self.dim, dn))?;
        Ok(match vp(&det(&x), self.p) {
            Valuation::Infinite => ExtNat::Infinite,
            Valuation::Finite(v) => ExtNat::Finite(BigUint::from(self.p.get()).pow(v as u32)),
        })
    }

    /// No eigenvalue is a root of unity; `m` ranges over all orders with
    /// `euler_phi(m) <= d`.
    pub fn tame_check(&self) -> TameResult {
        match self.bad_orders.first() {
            Some(&m) => TameResult::NotTame { n: m },
            None => TameResult::Tame,
        }
    }

    /// Rational with zeta `1/(1 - z)` when all eigenvalues are topologically
    /// nilpotent; otherwise a natural boundary with a periodicity
    /// certificate.
    pub fn classify(&self, samples: usize) -> Result<DichotomyReport> {
        if let TameResult::NotTame { n } = self.tame_check() {
            return Err(Error::NotTame(n));
        }
        if self.is_topologically_nilpotent() {
            let zeta = RationalFn::from_i64(&[1], &[1, -1])?;
            return Ok(DichotomyReport::structural(
                Verdict::Rational(zeta),
                "residue characteristic polynomial is X^d",
            ));
        }
        let cert = self.boundary_certificate(samples)?;
        Ok(DichotomyReport::structural(
            Verdict::NaturalBoundary(cert),
            "unit eigenvalue",
        ))
    }

    /// Finds `gamma`, `q`, `r` and checks `R(phi^(k n(e))) = R(phi^(n(e)))`
    /// for `samples` values of `k` coprime to `n(e) = q^e gamma p^r`.
    pub fn boundary_certificate(&self, samples: usize) -> Result<Certificate> {
        if let TameResult::NotTame { n } = self.tame_check() {
            return Err(Error::NotTame(n));
        }
        if self.is_topologically_nilpotent() {
            return Err(Error::Unsupported("no unit eigenvalue"));
        }
        let p = self.p.get();
        let gamma = unit_root_order(&self.residue_charpoly())?;
        let q = self.p.least_other();

        let mut vals = Vec::new();
        for r in 0..=MAX_R_SCAN + 3 {
            let n = checked_mul_pow(gamma, p, r)?;
            vals.push(self.valuation(n)?.ok_or(Error::CertificateFailure("infinite value"))?);
        }
        let inc: Vec<i64> = vals.windows(2).map(|w| w[1] as i64 - w[0] as i64).collect();
        let r0 = (0..=MAX_R_SCAN as usize)
            .find(|&r| inc[r] == inc[r + 1] && inc[r] == inc[r + 2])
            .ok_or(Error::CertificateFailure("valuation increments did not stabilize"))?
            as u32;
        let r = r0 + 1;

        let mut checks = Vec::new();
        for e in CERTIFICATE_EXPONENTS {
            let n_e = checked_mul_pow(checked_mul_pow(gamma, p, r)?, q.get(), e)?;
            let value = self.reidemeister(n_e)?;
            let ks: Vec<u64> = (2u64..).filter(|k| k.gcd(&n_e) == 1).take(samples).collect();
            for &k in &ks {
                let kn = n_e.checked_mul(k).ok_or(Error::OutOfRange("iterate index overflow"))?;
                if self.reidemeister(kn)? != value {
                    return Err(Error::CertificateFailure("periodicity of Reidemeister numbers"));
                }
            }
            checks.push(PeriodicityCheck { e, n_e, value, ks });
        }
        Ok(Certificate::PadicUnitEigenvalue {
            p: self.p,
            gamma,
            q,
            r0,
            r,
            checks,
        })
    }

    /// For `d = 1` and a unit `a`: the first `n <= n_max` with
    /// `n |a^n - 1|_p < |a^gamma - 1|_p / gamma`, if any.
    pub fn growth_bound_violation(&self, n_max: u64) -> Result<Option<u64>> {
        if self.dim != 1 || self.is_topologically_nilpotent() {
            return Err(Error::Unsupported("growth bound needs a 1-dimensional unit"));
        }
        if let TameResult::NotTame { n } = self.tame_check() {
            return Err(Error::NotTame(n));
        }
        let gamma = unit_root_order(&self.residue_charpoly())?;
        let p = BigUint::from(self.p.get());
        let v_gamma = self.valuation(gamma)?.ok_or(Error::NotTame(gamma))?;
        // n p^-v_n >= p^-v_gamma / gamma  <=>  n gamma p^v_gamma >= p^v_n
        let rhs_base = BigUint::from(gamma) * p.pow(v_gamma as u32);
        for n in 1..=n_max {
            let v_n = self.valuation(n)?.ok_or(Error::NotTame(n))?;
            if &rhs_base * BigUint::from(n) < p.pow(v_n as u32) {
                return Ok(Some(n));
            }
        }
        Ok(None)
    }
}

fn checked_mul_pow(base: u64, p: u64, e: u32) -> Result<u64> {
    p.checked_pow(e)
        .and_then(|x| x.checked_mul(base))
        .ok_or(Error::OutOfRange("iterate index overflow"))
}

fn rat_mod_p(x: &Rat, p: u64) -> u64 {
    let pb = BigInt::from(p);
    let num = x.numer().mod_floor(&pb);
    let den = x.denom().mod_floor(&pb);
    let inv = den.modpow(&BigInt::from(p - 2), &pb);
    let r = (num * inv).mod_floor(&pb);
    u64::try_from(&r).expect("reduced below p")
}

fn to_residue(x: &BigInt, modulus: &BigUint) -> BigUint {
    let m = BigInt::from_biguint(Sign::Plus, modulus.clone());
    x.mod_floor(&m).to_biguint().expect("nonnegative residue")
}

fn mat_mul_mod(a: &[BigUint], b: &[BigUint], d: usize, modulus: &BigUint) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero(); d * d];
    for i in 0..d {
        for k in 0..d {
            let aik = &a[i * d + k];
            if aik.is_zero() {
                continue;
            }
            for j in 0..d {
                out[i * d + j] += aik * &b[k * d + j];
            }
        }
        for j in 0..d {
            out[i * d + j] %= modulus;
        }
    }
    out
}

fn mat_pow_mod(m: &[BigUint], d: usize, mut n: u64, modulus: &BigUint) -> Vec<BigUint> {
    let mut result = vec![BigUint::zero(); d * d];
    for i in 0..d {
        result[i * d + i] = BigUint::one() % modulus;
    }
    let mut base = m.to_vec();
    while n > 0 {
        if n & 1 == 1 {
            result = mat_mul_mod(&result, &base, d, modulus);
        }
        n >>= 1;
        if n > 0 {
            base = mat_mul_mod(&base, &base, d, modulus);
        }
    }
    result
}

fn val_mod(x: &BigUint, p: &BigUint, k: u32) -> u32 {
    if x.is_zero() {
        return k;
    }
    let mut v = 0;
    let mut y = x.clone();
    while (&y % p).is_zero() {
        y /= p;
        v += 1;
    }
    v
}

fn inverse_mod(u: &BigUint, modulus: &BigUint) -> BigUint {
    let a = BigInt::from_biguint(Sign::Plus, u.clone());
    let m = BigInt::from_biguint(Sign::Plus, modulus.clone());
    let g = a.extended_gcd(&m);
    debug_assert!(g.gcd.is_one());
    g.x.mod_floor(&m).to_biguint().expect("nonnegative residue")
}

fn vp_det_mod(mut a: Vec<BigUint>, d: usize, p: &BigUint, k: u32, modulus: &BigUint) -> Option<u64> {
    let mut total = 0u64;
    for c in 0..d {
        let mut best: Option<(u32, usize, usize)> = None;
        for i in c..d {
            for j in c..d {
                let v = val_mod(&a[i * d + j], p, k);
                if best.is_none_or(|(bv, _, _)| v < bv) {
                    best = Some((v, i, j));
                }
            }
        }
        let (v, bi, bj) = best.expect("nonempty block");
        if v >= k {
            return None;
        }
        if bi != c {
            for j in 0..d {
                a.swap(bi * d + j, c * d + j);
            }
        }
        if bj != c {
            for i in 0..d {
                a.swap(i * d + bj, i * d + c);
            }
        }
        total += v as u64;
        if total >= k as u64 {
            return None;
        }
        let pv = p.pow(v);
        let unit = &a[c * d + c] / &pv;
        let unit_inv = inverse_mod(&unit, modulus);
        for i in (c + 1)..d {
            let e = &a[i * d + c];
            if e.is_zero() {
                continue;
            }
            let f = (e / &pv) * &unit_inv % modulus;
            for j in c..d {
                let sub = &f * &a[c * d + j] % modulus;
                a[i * d + j] = (&a[i * d + j] + modulus - sub) % modulus;
            }
        }
    }
    Some(total)
}
