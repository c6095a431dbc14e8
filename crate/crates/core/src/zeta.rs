//! Zeta series, linear-recurrence detection, rational reconstruction and the
//! Lefschetz cross-check for torus maps.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::ExtNat;
use crate::lattice::{charpoly, coker_order, count_real_eigs, exterior_power, root_of_unity_orders, IMat, IPoly};
use crate::poly::{Poly, QPoly};
use crate::{Error, Rat, Result};

/// A truncated power series with exact rational coefficients `c_0..c_{N-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<Rat>,
}

impl QSeries {
    pub fn new(coeffs: Vec<Rat>) -> QSeries {
        QSeries { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> QSeries {
        QSeries::new(coeffs.iter().map(|&c| Rat::from_integer(c.into())).collect())
    }

    /// Number of known terms.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn to_poly(&self) -> QPoly {
        QPoly::new(self.coeffs.clone())
    }
}

/// `exp(sum_{n>=1} R(n) z^n / n)` through `z^len(r)`, from the recurrence
/// `n c_n = sum_{k=1}^{n} R(k) c_{n-k}` (that is, `F' = G' F`).
///
/// `r[i]` holds `R(i + 1)`. An infinite entry means the instance is not tame.
pub fn zeta_series(r: &[ExtNat]) -> Result<QSeries> {
    let values: Vec<BigInt> = r
        .iter()
        .enumerate()
        .map(|(i, v)| v.to_bigint().ok_or(Error::NotTame(i as u64 + 1)))
        .collect::<Result<_>>()?;
    let mut c: Vec<Rat> = Vec::with_capacity(values.len() + 1);
    c.push(Rat::one());
    for n in 1..=values.len() {
        let mut acc = Rat::zero();
        for k in 1..=n {
            acc += Rat::from_integer(values[k - 1].clone()) * &c[n - k];
        }
        c.push(acc / Rat::from_integer(BigInt::from(n)));
    }
    Ok(QSeries::new(c))
}

/// An exact rational function `num / den` in canonical form: coprime,
/// integer coefficients with joint content 1, `den(0) > 0`.
///
/// When the function has a power series with integer coefficients this
/// forces `den(0) = 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFn {
    num: IPoly,
    den: IPoly,
}

impl RationalFn {
    pub fn from_qpolys(num: &QPoly, den: &QPoly) -> Result<RationalFn> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let g = num.gcd(den);
        let (mut n, mut d) = if g.degree().unwrap_or(0) > 0 {
            (num.exact_div(&g)?, den.exact_div(&g)?)
        } else {
            (num.clone(), den.clone())
        };
        let d0 = d.coeff(0);
        if d0.is_zero() {
            return Err(Error::OutOfRange("denominator vanishes at z = 0"));
        }
        let inv = d0.recip();
        n = n.scale(&inv);
        d = d.scale(&inv);
        let lcm = n
            .coeffs()
            .iter()
            .chain(d.coeffs())
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let l = Rat::from_integer(lcm);
        let ni: IPoly = n.map(|c| (c * &l).to_integer());
        let di: IPoly = d.map(|c| (c * &l).to_integer());
        let content = ni.content().gcd(&di.content());
        Ok(RationalFn {
            num: ni.map(|c| c / &content),
            den: di.map(|c| c / &content),
        })
    }

    pub fn from_ipolys(num: &IPoly, den: &IPoly) -> Result<RationalFn> {
        RationalFn::from_qpolys(&num.to_rat(), &den.to_rat())
    }

    /// Shorthand for tests and examples: coefficient lists, lowest first.
    pub fn from_i64(num: &[i64], den: &[i64]) -> Result<RationalFn> {
        RationalFn::from_ipolys(&IPoly::from_i64(num), &IPoly::from_i64(den))
    }

    pub fn one() -> RationalFn {
        RationalFn {
            num: IPoly::one(),
            den: IPoly::one(),
        }
    }

    /// Zeta function of `R(n) = sum_i c_i w_i^n`, namely
    /// `prod_i (1 - w_i z)^(-c_i)`.
    pub fn from_exponential_sum(terms: &[(Rat, i64)]) -> RationalFn {
        let mut num = QPoly::one();
        let mut den = QPoly::one();
        for (w, c) in terms {
            let factor = QPoly::new(vec![Rat::one(), -w.clone()]);
            for _ in 0..c.unsigned_abs() {
                if *c > 0 {
                    den = &den * &factor;
                } else {
                    num = &num * &factor;
                }
            }
        }
        RationalFn::from_qpolys(&num, &den).expect("den(0) = 1")
    }

    /// Total degree `deg num + deg den`.
    pub fn total_degree(&self) -> usize {
        self.num.degree().unwrap_or(0) + self.den.degree().unwrap_or(0)
    }

    pub fn num(&self) -> &IPoly {
        &self.num
    }

    pub fn den(&self) -> &IPoly {
        &self.den
    }

    /// First `n` power-series coefficients.
    pub fn series(&self, n: usize) -> Vec<Rat> {
        self.num
            .to_rat()
            .series_div(&self.den.to_rat(), n)
            .expect("canonical denominator has nonzero constant term")
    }

    pub fn mul(&self, other: &RationalFn) -> RationalFn {
        RationalFn::from_ipolys(&(&self.num * &other.num), &(&self.den * &other.den))
            .expect("product of canonical forms")
    }

    pub fn inverse(&self) -> Result<RationalFn> {
        RationalFn::from_ipolys(&self.den, &self.num)
    }

    /// `f(c z)`.
    pub fn compose_scale(&self, c: i64) -> RationalFn {
        let c = BigInt::from(c);
        RationalFn::from_ipolys(&self.num.compose_scale(&c), &self.den.compose_scale(&c))
            .expect("scaling keeps den(0)")
    }

    /// Coefficients `b_1..b_n` of `z f'(z) / f(z)`.
    pub fn log_derivative_series(&self, n: usize) -> Result<Vec<Rat>> {
        let num = self.num.to_rat();
        let den = self.den.to_rat();
        let top = &(&num.derivative() * &den) - &(&num * &den.derivative());
        let top = &top * &QPoly::x();
        let bottom = &num * &den;
        let s = top.series_div(&bottom, n + 1)?;
        Ok(s[1..].to_vec())
    }
}

impl fmt::Debug for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}) / ({:?})", self.num, self.den)
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

/// Output of [`berlekamp_massey`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recurrence {
    /// Minimal recurrence order over the whole window.
    pub order: usize,
    /// Connection polynomial `C(z) = 1 + c_1 z + .. + c_L z^L`, with
    /// `sum_j c_j a_{n-j} = 0` for `n > L`.
    pub connection: QPoly,
    /// `sum_{n>=1} a_n z^n` as the rational function `z P(z) / C(z)`.
    pub generating: RationalFn,
    /// Whether the recurrence found on the first three quarters of the
    /// window also predicts the held-out last quarter.
    pub validated: bool,
}

/// Fraction-free Berlekamp-Massey: the sequence is scaled to integers and
/// the connection polynomial is kept primitive, since a recurrence is only
/// defined up to a constant factor.
fn bm_core(a: &[Rat]) -> (usize, Vec<Rat>) {
    let lcm = a.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let a: Vec<BigInt> = a.iter().map(|x| (x * Rat::from_integer(lcm.clone())).to_integer()).collect();
    let mut c = vec![BigInt::one()];
    let mut b = vec![BigInt::one()];
    let mut l = 0usize;
    let mut m = 1usize;
    let mut bd = BigInt::one();
    for n in 0..a.len() {
        let mut d = BigInt::zero();
        for i in 0..=l.min(c.len() - 1) {
            d += &c[i] * &a[n - i];
        }
        if d.is_zero() {
            m += 1;
            continue;
        }
        let prev = c.clone();
        let mut next: Vec<BigInt> = c.iter().map(|x| x * &bd).collect();
        if next.len() < b.len() + m {
            next.resize(b.len() + m, BigInt::zero());
        }
        for (i, bi) in b.iter().enumerate() {
            next[i + m] -= &d * bi;
        }
        let g = next.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        c = next.into_iter().map(|x| x / &g).collect();
        if 2 * l <= n {
            l = n + 1 - l;
            b = prev;
            bd = d;
            m = 1;
        } else {
            m += 1;
        }
    }
    c.resize(l + 1, BigInt::zero());
    let c0 = Rat::from_integer(c[0].clone());
    (l, c.into_iter().map(|x| Rat::from_integer(x) / &c0).collect())
}

fn predicts(conn: &[Rat], a: &[Rat], from: usize) -> bool {
    let l = conn.len() - 1;
    (from.max(l)..a.len()).all(|n| {
        let mut s = a[n].clone();
        for j in 1..=l {
            s += &conn[j] * &a[n - j];
        }
        s.is_zero()
    })
}

/// Shortest linear recurrence for `a_1, a_2, ...` over the rationals.
pub fn berlekamp_massey(a: &[Rat]) -> Result<Recurrence> {
    if a.len() < 4 {
        return Err(Error::OutOfRange("window must hold at least 4 terms"));
    }
    let (order, conn) = bm_core(a);
    let train = (3 * a.len()).div_ceil(4);
    let (_, train_conn) = bm_core(&a[..train]);
    let validated = predicts(&train_conn, a, train);

    let connection = QPoly::new(conn);
    let series = QPoly::new(a.to_vec());
    let p = (&connection * &series).truncate(order);
    let num = &p * &QPoly::x();
    let generating = RationalFn::from_qpolys(&num, &connection)?;
    Ok(Recurrence {
        order,
        connection,
        generating,
        validated,
    })
}

/// Result of [`pade_reconstruct`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PadeOutcome {
    /// A rational function reproducing every coefficient of the window.
    Rational { zeta: RationalFn, terms: usize },
    NoStabilize { terms: usize },
}

impl PadeOutcome {
    pub fn rational(&self) -> Option<&RationalFn> {
        match self {
            PadeOutcome::Rational { zeta, .. } => Some(zeta),
            PadeOutcome::NoStabilize { .. } => None,
        }
    }
}

fn candidate(r: &QPoly, t: &QPoly, target: &[Rat]) -> Option<RationalFn> {
    let (mut r, mut t) = (r.clone(), t.clone());
    let k = t.x_adic_valuation()?;
    if k > 0 {
        if r.x_adic_valuation().is_some_and(|v| v < k) {
            return None;
        }
        r = r.shift_down(k);
        t = t.shift_down(k);
    }
    let f = RationalFn::from_qpolys(&r, &t).ok()?;
    (f.series(target.len()) == target).then_some(f)
}

/// Divides `(r, t)` by their joint content; the relation `r = t S mod z^k`
/// is homogeneous, so this keeps the remainders small at no cost.
fn normalize_pair(r: IPoly, t: IPoly) -> (IPoly, IPoly) {
    let g = r.content().gcd(&t.content());
    if g.is_zero() || g.is_one() {
        return (r, t);
    }
    (r.map(|c| c / &g), t.map(|c| c / &g))
}

/// Smallest-degree rational function `P/Q` (`deg P + deg Q <= N - 4`)
/// whose expansion matches all `N` known coefficients.
///
/// Any such function is, up to a common factor, one of the remainder and
/// cofactor pairs of the extended Euclidean algorithm on
/// `(z^(N-3), S mod z^(N-3))`, so a single run covers every antidiagonal
/// `L + M <= N - 4`. Each pair is re-expanded over the full window and the
/// match of least total degree is returned. The run uses pseudo-division
/// over the integers.
pub fn pade_reconstruct(s: &QSeries) -> Result<PadeOutcome> {
    let n = s.len();
    if n < 8 {
        return Err(Error::OutOfRange("Padé reconstruction needs at least 8 terms"));
    }
    let full = s.coeffs();
    let lcm = full.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let scale = Rat::from_integer(lcm.clone());
    let series: IPoly = Poly::new(full.iter().map(|c| (c * &scale).to_integer()).collect());
    let total = n - 4;
    let mut r0 = IPoly::monomial(BigInt::one(), total + 1);
    let mut r1 = series.truncate(total + 1);
    let mut t0 = IPoly::zero();
    let mut t1 = IPoly::one();
    let mut best: Option<RationalFn> = None;
    loop {
        // r1 = t1 (lcm S): cheap necessary condition before a canonical form
        if (&t1 * &series).truncate(n) == r1 {
            let t = t1.map(|c| c * &lcm);
            if let Some(f) = candidate(&r1.to_rat(), &t.to_rat(), full) {
                if best.as_ref().is_none_or(|b| f.total_degree() < b.total_degree()) {
                    best = Some(f);
                }
            }
        }
        if r1.is_zero() {
            break;
        }
        let (m, q, r2) = r0.pseudo_div_rem(&r1)?;
        let t2 = &t0.map(|c| c * &m) - &(&q * &t1);
        let (r2, t2) = normalize_pair(r2, t2);
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    Ok(match best {
        Some(zeta) => PadeOutcome::Rational { zeta, terms: n },
        None => PadeOutcome::NoStabilize { terms: n },
    })
}

/// `det(I - M z)` as a polynomial in `z`: the reversed characteristic
/// polynomial.
pub fn det_one_minus_mz(m: &IMat) -> IPoly {
    let mut c = charpoly(m).into_coeffs();
    c.reverse();
    Poly::new(c)
}

/// Lefschetz zeta function of a torus map with linearization `F`:
/// `prod_k det(I - Λ^k F z)^((-1)^(k+1))`.
pub fn lefschetz_zeta(f: &IMat) -> RationalFn {
    let mut num = IPoly::one();
    let mut den = IPoly::one();
    for k in 0..=f.dim() {
        let lk = exterior_power(f, k).expect("k <= dim");
        let factor = det_one_minus_mz(&lk);
        if k % 2 == 1 {
            num = &num * &factor;
        } else {
            den = &den * &factor;
        }
    }
    RationalFn::from_ipolys(&num, &den).expect("den(0) = 1")
}

/// Report of [`verify_nilpotent_identity`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LefschetzCheck {
    /// Real eigenvalues below -1, with multiplicity.
    pub p: usize,
    /// Real eigenvalues of absolute value above 1, with multiplicity.
    pub r: usize,
    pub reconstructed: RationalFn,
    pub predicted: RationalFn,
    pub terms: usize,
}

/// Reconstructs `R_phi(z)` for the torus map `F` from `terms` series
/// coefficients and checks it equals `L_f((-1)^p z)^((-1)^r)` exactly.
pub fn verify_nilpotent_identity(f: &IMat, terms: usize) -> Result<LefschetzCheck> {
    let cp = charpoly(f);
    if let Some(&m) = root_of_unity_orders(&cp.to_rat()).first() {
        return Err(Error::NotTame(m));
    }
    let (p, r) = count_real_eigs(&cp)?;
    let id = IMat::identity(f.dim());
    let mut seq = Vec::with_capacity(terms);
    let mut power = IMat::identity(f.dim());
    for _ in 1..terms {
        power = power.mul(f)?;
        seq.push(coker_order(&power.sub(&id)?));
    }
    let series = zeta_series(&seq)?;
    let reconstructed = match pade_reconstruct(&series)? {
        PadeOutcome::Rational { zeta, .. } => zeta,
        PadeOutcome::NoStabilize { .. } => {
            return Err(Error::ReconstructionFailed("torus zeta series did not stabilize"))
        }
    };
    let mut predicted = lefschetz_zeta(f).compose_scale(if p % 2 == 1 { -1 } else { 1 });
    if r % 2 == 1 {
        predicted = predicted.inverse()?;
    }
    if reconstructed != predicted {
        return Err(Error::Inconsistent("Lefschetz identity"));
    }
    Ok(LefschetzCheck {
        p,
        r,
        reconstructed,
        predicted,
        terms,
    })
}

/// Lower bound used for display: `(max_{n in [N/2, N]} R(n)^(1/n))^-1`,
/// the root-test estimate of the radius of convergence.
pub fn radius_estimate(r: &[ExtNat]) -> Option<f64> {
    let n = r.len();
    if n < 2 {
        return None;
    }
    let mut best: f64 = 0.0;
    for (i, v) in r.iter().enumerate().skip(n / 2) {
        let v = v.finite()?;
        if v.is_zero() {
            continue;
        }
        // log2 from the leading 53 bits
        let shift = v.bits().saturating_sub(53);
        let top: u64 = u64::try_from(&(v >> shift)).ok()?;
        let log2 = libm::log2(top as f64) + shift as f64;
        let root = libm::exp2(log2 / (i as f64 + 1.0));
        best = best.max(root);
    }
    (best > 0.0).then(|| 1.0 / best)
}

/// Whether every value is a nonnegative integer; series of Reidemeister
/// zeta functions always are.
pub fn integral(values: &[Rat]) -> bool {
    values.iter().all(|v| v.is_integer() && !v.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(f: impl Fn(u32) -> i64, n: u32) -> Vec<ExtNat> {
        (1..=n).map(|k| ExtNat::from_u64(f(k) as u64)).collect()
    }

    fn rats(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| Rat::from_integer(x.into())).collect()
    }

    #[test]
    fn zeta_series_examples() {
        let ones = zeta_series(&seq(|_| 1, 6)).unwrap();
        assert_eq!(ones, QSeries::from_i64(&[1; 7]));
        let s = zeta_series(&seq(|n| 3i64.pow(n) - 2i64.pow(n), 3)).unwrap();
        assert_eq!(s, QSeries::from_i64(&[1, 1, 3, 9]));
        let s = zeta_series(&seq(|n| 2i64.pow(n) - 1, 3)).unwrap();
        assert_eq!(s, QSeries::from_i64(&[1, 1, 2, 4]));
        let bad = [ExtNat::one(), ExtNat::Infinite];
        assert_eq!(zeta_series(&bad), Err(Error::NotTame(2)));
    }

    #[test]
    fn rational_fn_canonical_form() {
        let f = RationalFn::from_i64(&[2, -4], &[2, -6]).unwrap();
        assert_eq!(f, RationalFn::from_i64(&[1, -2], &[1, -3]).unwrap());
        // common factor (1 - z) cancels
        let g = RationalFn::from_i64(&[1, -3, 2], &[1, -4, 3]).unwrap();
        assert_eq!(g, f);
        assert_eq!(f.series(4), rats(&[1, 1, 3, 9]));
        assert!(RationalFn::from_i64(&[1], &[0, 1]).is_err());
    }

    #[test]
    fn bm_examples() {
        let ones = berlekamp_massey(&rats(&[1; 8])).unwrap();
        assert_eq!(ones.order, 1);
        assert_eq!(ones.generating, RationalFn::from_i64(&[0, 1], &[1, -1]).unwrap());
        assert!(ones.validated);

        let a: Vec<i64> = (1..=10).map(|n| 3i64.pow(n) - 2i64.pow(n)).collect();
        let rec = berlekamp_massey(&rats(&a)).unwrap();
        assert_eq!(rec.order, 2);
        assert_eq!(rec.generating, RationalFn::from_i64(&[0, 1], &[1, -5, 6]).unwrap());
        assert!(rec.validated);

        assert!(berlekamp_massey(&rats(&[1, 2, 3])).is_err());
    }

    #[test]
    fn bm_unstable_on_natural_boundary_sequence() {
        // R(j) = 2^(j - 2^v_2(j)) for the F_2[t, 1/t, 1/(t-1)] example
        let a: Vec<Rat> = (1..=24u32)
            .map(|j| {
                let v = j.trailing_zeros();
                Rat::from_integer(BigInt::from(2).pow(j - (1 << v)))
            })
            .collect();
        let rec = berlekamp_massey(&a).unwrap();
        assert_eq!(rec.order, 12);
        assert!(!rec.validated);
    }

    #[test]
    fn pade_examples() {
        let target = RationalFn::from_i64(&[1, -2], &[1, -3]).unwrap();
        let s = QSeries::new(target.series(12));
        assert_eq!(pade_reconstruct(&s).unwrap().rational(), Some(&target));

        let ones = QSeries::from_i64(&[1; 10]);
        let geo = RationalFn::from_i64(&[1], &[1, -1]).unwrap();
        assert_eq!(pade_reconstruct(&ones).unwrap().rational(), Some(&geo));

        assert!(pade_reconstruct(&QSeries::from_i64(&[1; 7])).is_err());
    }

    #[test]
    fn pade_handles_numerator_of_higher_degree() {
        let target = RationalFn::from_i64(&[1, 0, 0, 5, 1], &[1, 2]).unwrap();
        let s = QSeries::new(target.series(16));
        assert_eq!(pade_reconstruct(&s).unwrap().rational(), Some(&target));
    }

    #[test]
    fn lefschetz_examples() {
        assert_eq!(
            lefschetz_zeta(&IMat::from_i64([[2]])),
            RationalFn::from_i64(&[1, -2], &[1, -1]).unwrap()
        );
        assert_eq!(lefschetz_zeta(&IMat::identity(1)), RationalFn::one());
        // det(I - F z) / ((1 - z)(1 + z))
        assert_eq!(
            lefschetz_zeta(&IMat::from_i64([[0, 1], [1, 1]])),
            RationalFn::from_i64(&[1, -1, -1], &[1, 0, -1]).unwrap()
        );
    }

    #[test]
    fn lefschetz_identity_examples() {
        let c = verify_nilpotent_identity(&IMat::from_i64([[2]]), 16).unwrap();
        assert_eq!((c.p, c.r), (0, 1));
        assert_eq!(c.reconstructed, RationalFn::from_i64(&[1, -1], &[1, -2]).unwrap());

        let c = verify_nilpotent_identity(&IMat::from_i64([[-2]]), 16).unwrap();
        assert_eq!((c.p, c.r), (1, 1));

        let c = verify_nilpotent_identity(&IMat::from_i64([[0, 1], [1, 1]]), 16).unwrap();
        assert_eq!((c.p, c.r), (0, 1));
        assert_eq!(c.reconstructed, RationalFn::from_i64(&[1, 0, -1], &[1, -1, -1]).unwrap());

        assert_eq!(
            verify_nilpotent_identity(&IMat::from_i64([[0, -1], [1, 0]]), 16),
            Err(Error::NotTame(4))
        );
    }

    #[test]
    fn log_derivative_recovers_sequence() {
        let f = RationalFn::from_i64(&[1, -2], &[1, -3]).unwrap();
        let b = f.log_derivative_series(6).unwrap();
        let expect: Vec<i64> = (1..=6).map(|n| 3i64.pow(n) - 2i64.pow(n)).collect();
        assert_eq!(b, rats(&expect));
    }

    #[test]
    fn radius_of_geometric_growth() {
        let r = seq(|n| 3i64.pow(n), 30);
        let est = radius_estimate(&r).unwrap();
        assert!((est - 1.0 / 3.0).abs() < 1e-9);
    }
}
