//! Exact integer and rational substrate: primes, p-adic valuations, p-adic
//! absolute values and the extended naturals used for Reidemeister numbers.

use alloc::vec::Vec;
use core::fmt;
use core::ops::Mul;
use core::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Rat, Result};

/// A rational prime below 2^64, checked deterministically on construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Prime> {
        if is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    /// Accepts an arbitrary big integer; anything at or above 2^64 is rejected.
    pub fn from_bigint(p: &BigInt) -> Result<Prime> {
        match p.to_u64() {
            Some(v) => Prime::new(v),
            None => Err(Error::PrimeTooLarge),
        }
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    pub fn to_bigint(self) -> BigInt {
        BigInt::from(self.0)
    }

    /// Smallest prime different from `self`.
    pub fn least_other(self) -> Prime {
        if self.0 == 2 {
            Prime(3)
        } else {
            Prime(2)
        }
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic primality for all of `u64`: trial division by small primes,
/// then Miller-Rabin with the first twelve prime bases.
pub fn is_prime(n: u64) -> bool {
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &q in &SMALL {
        if n % q == 0 {
            return n == q;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

/// Prime factorization of `n > 0`, primes ascending with exponents.
pub fn factor_u64(n: u64) -> Vec<(u64, u32)> {
    fn split(n: u64, out: &mut Vec<u64>) {
        if n == 1 {
            return;
        }
        if is_prime(n) {
            out.push(n);
            return;
        }
        let d = pollard_rho(n);
        split(d, out);
        split(n / d, out);
    }
    let mut n = n;
    let mut primes = Vec::new();
    for q in 2u64..1000 {
        while n % q == 0 {
            primes.push(q);
            n /= q;
        }
    }
    split(n, &mut primes);
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for q in primes {
        match out.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => out.push((q, 1)),
        }
    }
    out
}

/// Euler's totient of a small positive integer.
pub fn euler_phi(n: u64) -> u64 {
    factor_u64(n)
        .into_iter()
        .fold(1, |acc, (q, e)| acc * (q - 1) * q.pow(e - 1))
}

/// A p-adic valuation: a (possibly negative) integer, or infinity for zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

/// Largest `e` with `p^e | x`; infinite for `x = 0`.
pub fn vp(x: &BigInt, p: Prime) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinite;
    }
    let p = p.to_bigint();
    let mut x = x.abs();
    let mut e = 0i64;
    loop {
        let (q, r) = x.div_rem(&p);
        if !r.is_zero() {
            return Valuation::Finite(e);
        }
        x = q;
        e += 1;
    }
}

/// `vp(num) - vp(den)` for a reduced rational.
pub fn vp_rat(x: &Rat, p: Prime) -> Valuation {
    match (vp(x.numer(), p), vp(x.denom(), p)) {
        (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a - b),
        _ => Valuation::Infinite,
    }
}

/// `p^k` as an exact rational, `k` of either sign.
pub fn rat_pow_p(p: Prime, k: i64) -> Rat {
    let base = p.to_bigint();
    let mag = num_traits::pow(base, k.unsigned_abs() as usize);
    if k >= 0 {
        Rat::from_integer(mag)
    } else {
        Rat::new(BigInt::one(), mag)
    }
}

/// The normalized p-adic absolute value `p^(-vp(x))`, exact. Zero is rejected.
pub fn abs_p(x: &Rat, p: Prime) -> Result<Rat> {
    match vp_rat(x, p) {
        Valuation::Finite(v) => Ok(rat_pow_p(p, -v)),
        Valuation::Infinite => Err(Error::ZeroValue),
    }
}

/// Extended naturals: a non-negative integer or `Infinite`.
///
/// Reidemeister numbers live here; an infinite class count is a legitimate
/// outcome, not an error.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtNat {
    Finite(BigUint),
    Infinite,
}

impl ExtNat {
    pub fn from_u64(v: u64) -> ExtNat {
        ExtNat::Finite(BigUint::from(v))
    }

    pub fn one() -> ExtNat {
        ExtNat::Finite(BigUint::one())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtNat::Finite(_))
    }

    pub fn finite(&self) -> Option<&BigUint> {
        match self {
            ExtNat::Finite(v) => Some(v),
            ExtNat::Infinite => None,
        }
    }

    /// `|x|` of a big integer, with zero mapped to `Infinite`. This is the
    /// cokernel-order convention: `|Z^d / M Z^d| = |det M|` or infinity.
    pub fn coker_from_det(det: &BigInt) -> ExtNat {
        if det.is_zero() {
            ExtNat::Infinite
        } else {
            ExtNat::Finite(det.magnitude().clone())
        }
    }

    pub fn to_bigint(&self) -> Option<BigInt> {
        self.finite().map(|v| BigInt::from_biguint(Sign::Plus, v.clone()))
    }
}

impl Mul for ExtNat {
    type Output = ExtNat;

    /// Any product involving `Infinite` is `Infinite`.
    fn mul(self, rhs: ExtNat) -> ExtNat {
        match (self, rhs) {
            (ExtNat::Finite(a), ExtNat::Finite(b)) => ExtNat::Finite(a * b),
            _ => ExtNat::Infinite,
        }
    }
}

impl core::iter::Product for ExtNat {
    fn product<I: Iterator<Item = ExtNat>>(iter: I) -> ExtNat {
        iter.fold(ExtNat::one(), |a, b| a * b)
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Finite(v) => write!(f, "{v}"),
            ExtNat::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for ExtNat {
    type Err = Error;

    fn from_str(s: &str) -> Result<ExtNat> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s.eq_ignore_ascii_case("infinity") {
            return Ok(ExtNat::Infinite);
        }
        BigUint::from_str(s)
            .map(ExtNat::Finite)
            .map_err(|_| Error::Parse("extended natural"))
    }
}

/// Parses `"a"` or `"a/b"` into a reduced rational.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n = BigInt::from_str(n).map_err(|_| Error::Parse("rational numerator"))?;
    let d = BigInt::from_str(d).map_err(|_| Error::Parse("rational denominator"))?;
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rat::new(n, d))
}

/// Exact integer value of a rational, if it has one.
pub fn rat_to_integer(x: &Rat) -> Option<BigInt> {
    if x.is_integer() {
        Some(x.numer().clone())
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn p(v: u64) -> Prime {
        Prime::new(v).unwrap()
    }

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn vp_examples() {
        assert_eq!(vp(&BigInt::from(12), p(2)), Valuation::Finite(2));
        assert_eq!(vp(&BigInt::zero(), p(5)), Valuation::Infinite);
        assert_eq!(vp(&BigInt::from(4095), p(3)), Valuation::Finite(2));
        assert_eq!(vp(&BigInt::from(-24), p(2)), Valuation::Finite(3));
    }

    #[test]
    fn vp_rat_examples() {
        assert_eq!(vp_rat(&q(3, 8), p(2)), Valuation::Finite(-3));
        assert_eq!(vp_rat(&q(1, 1), p(7)), Valuation::Finite(0));
        assert_eq!(vp_rat(&q(6, 5), p(3)), Valuation::Finite(1));
        // 9/63 reduces to 1/7
        assert_eq!(vp_rat(&q(9, 63), p(3)), Valuation::Finite(0));
        assert_eq!(vp_rat(&q(0, 1), p(3)), Valuation::Infinite);
    }

    #[test]
    fn abs_p_examples() {
        assert_eq!(abs_p(&q(4, 1), p(2)).unwrap(), q(1, 4));
        assert_eq!(abs_p(&q(3, 1), p(2)).unwrap(), q(1, 1));
        assert_eq!(abs_p(&q(80, 1), p(3)).unwrap(), q(1, 1));
        assert_eq!(abs_p(&q(1, 9), p(3)).unwrap(), q(9, 1));
        assert!(matches!(abs_p(&q(0, 1), p(3)), Err(Error::ZeroValue)));
    }

    #[test]
    fn prime_checks() {
        assert!(matches!(Prime::new(1), Err(Error::NotPrime(1))));
        assert!(matches!(Prime::new(91), Err(Error::NotPrime(91))));
        assert!(Prime::new(2).is_ok());
        assert!(Prime::new(18_446_744_073_709_551_557).is_ok());
        // strong pseudoprime to bases 2, 3, 5, 7
        assert!(!is_prime(3_215_031_751));
        assert!(matches!(
            Prime::from_bigint(&(BigInt::one() << 70)),
            Err(Error::PrimeTooLarge)
        ));
        let sieve: Vec<u64> = (0..100).filter(|&n| is_prime(n)).collect();
        assert_eq!(sieve.len(), 25);
    }

    #[test]
    fn factorization() {
        assert_eq!(factor_u64(4095), [(3, 2), (5, 1), (7, 1), (13, 1)]);
        assert_eq!(factor_u64(1), []);
        let big = 1_000_000_007u64 * 998_244_353;
        assert_eq!(factor_u64(big), [(998_244_353, 1), (1_000_000_007, 1)]);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(1), 1);
    }

    #[test]
    fn extnat_arithmetic() {
        let three = ExtNat::from_u64(3);
        assert_eq!(three.clone() * ExtNat::from_u64(4), ExtNat::from_u64(12));
        assert_eq!(three.clone() * ExtNat::Infinite, ExtNat::Infinite);
        assert_eq!(ExtNat::Infinite.to_string(), "inf");
        assert_eq!("inf".parse::<ExtNat>().unwrap(), ExtNat::Infinite);
        assert_eq!("12".parse::<ExtNat>().unwrap(), ExtNat::from_u64(12));
        assert_eq!(ExtNat::coker_from_det(&BigInt::from(-5)), ExtNat::from_u64(5));
        assert_eq!(ExtNat::coker_from_det(&BigInt::zero()), ExtNat::Infinite);
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rat("6/4").unwrap(), q(3, 2));
        assert_eq!(parse_rat("-7").unwrap(), q(-7, 1));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }
}
