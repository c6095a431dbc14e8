//! Dense univariate polynomials over an exact coefficient ring.
//!
//! Coefficients are stored lowest degree first with no trailing zeros, so the
//! zero polynomial is the empty vector.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Num, One, Signed, Zero};

use crate::arith::Prime;
use crate::fpoly::FpPoly;
use crate::{Error, Rat, Result};

/// Word-sized primes for the modular coprimality test.
const COPRIME_TEST_PRIMES: [u64; 3] = [2_305_843_009_213_693_951, 4_611_686_018_427_387_847, 9_223_372_036_854_775_783];

pub trait Coeff: Clone + PartialEq + Num + Neg<Output = Self> + fmt::Debug {}
impl<T: Clone + PartialEq + Num + Neg<Output = T> + fmt::Debug> Coeff for T {}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

pub type QPoly = Poly<Rat>;

impl<T: Coeff> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![T::one()] }
    }

    pub fn constant(c: T) -> Self {
        Poly::new(vec![c])
    }

    /// `c * X^k`.
    pub fn monomial(c: T, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Poly::new(coeffs)
    }

    pub fn x() -> Self {
        Poly::monomial(T::one(), 1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn lead(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn derivative(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len().saturating_sub(1));
        let mut k = T::zero();
        for c in self.coeffs.iter().skip(1) {
            k = k + T::one();
            out.push(c.clone() * k.clone());
        }
        Poly::new(out)
    }

    /// Reduction modulo `X^n`.
    pub fn truncate(&self, n: usize) -> Self {
        Poly::new(self.coeffs.iter().take(n).cloned().collect())
    }

    /// `p(c X)`.
    pub fn compose_scale(&self, c: &T) -> Self {
        let mut pw = T::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a.clone() * pw.clone());
            pw = pw * c.clone();
        }
        Poly::new(out)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Low-order valuation: the index of the first nonzero coefficient.
    pub fn x_adic_valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Drops the factor `X^k` from a polynomial divisible by it.
    pub fn shift_down(&self, k: usize) -> Self {
        Poly::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    pub fn map<U: Coeff>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<T: Coeff> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<T: Coeff> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<T: Coeff> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<T: Coeff> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<T: Coeff + fmt::Display> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})X")?,
                _ => write!(f, "({c})X^{i}")?,
            }
        }
        Ok(())
    }
}

impl<T: Coeff> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

impl Poly<BigInt> {
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn to_rat(&self) -> QPoly {
        self.map(|c| Rat::from_integer(c.clone()))
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content; zero stays zero.
    pub fn primitive_part(&self) -> Self {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        self.map(|c| c / &g)
    }

    /// Pseudo-division: `(m, q, r)` with `m self = q d + r`, `deg r < deg d`
    /// and `m = lead(d)^(deg self - deg d + 1)`.
    pub fn pseudo_div_rem(&self, d: &Self) -> Result<(BigInt, Self, Self)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lead = d.lead().unwrap().clone();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((BigInt::one(), Poly::zero(), self.clone()));
        }
        let steps = r.len() - dd;
        let mut q = vec![BigInt::zero(); steps];
        for i in (0..steps).rev() {
            let c = r[i + dd].clone();
            for x in q.iter_mut() {
                *x *= &lead;
            }
            for x in r.iter_mut() {
                *x *= &lead;
            }
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[i + j] -= &c * dc;
                }
                q[i] += c;
            }
        }
        r.truncate(dd);
        Ok((num_traits::pow(lead, steps), Poly::new(q), Poly::new(r)))
    }

    /// Sufficient test for `gcd = 1`. Reduction modulo a prime not dividing
    /// `lead(self)` keeps the degree of the true gcd, so a constant gcd mod
    /// `p` proves a constant gcd over `Q`.
    fn coprime_mod_word_prime(&self, other: &Self) -> bool {
        let Some(lead) = self.lead() else {
            return false;
        };
        if other.is_zero() {
            return false;
        }
        COPRIME_TEST_PRIMES.iter().any(|&q| {
            let q = Prime::new(q).expect("constant primes");
            if (lead % q.to_bigint()).is_zero() {
                return false;
            }
            let a = FpPoly::from_bigints(q, &self.coeffs);
            let b = FpPoly::from_bigints(q, &other.coeffs);
            a.gcd(&b).ok().and_then(|g| g.degree()) == Some(0)
        })
    }

    /// Primitive gcd over `Z[x]` with positive leading coefficient.
    pub fn gcd_primitive(&self, other: &Self) -> Self {
        if self.coprime_mod_word_prime(other) {
            return Poly::one();
        }
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        while !b.is_zero() {
            let (_, _, r) = a.pseudo_div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.primitive_part();
        }
        if a.lead().is_some_and(|l| l.is_negative()) {
            a = -&a;
        }
        a
    }
}

impl QPoly {
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Rat::from_integer(BigInt::from(c))).collect())
    }

    pub fn monic(&self) -> QPoly {
        match self.lead() {
            Some(l) => {
                let inv = l.recip();
                self.scale(&inv)
            }
            None => QPoly::zero(),
        }
    }

    pub fn div_rem(&self, d: &QPoly) -> Result<(QPoly, QPoly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = d.lead().unwrap().recip();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((QPoly::zero(), self.clone()));
        }
        let mut q = vec![Rat::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = r[i + dd].clone() * lead_inv.clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[i + j] = r[i + j].clone() - c.clone() * dc.clone();
            }
            q[i] = c;
        }
        r.truncate(dd);
        Ok((QPoly::new(q), QPoly::new(r)))
    }

    pub fn rem(&self, d: &QPoly) -> Result<QPoly> {
        self.div_rem(d).map(|(_, r)| r)
    }

    /// Exact quotient; errors if `d` does not divide `self`.
    pub fn exact_div(&self, d: &QPoly) -> Result<QPoly> {
        let (q, r) = self.div_rem(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::OutOfRange("inexact polynomial division"))
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    ///
    /// Computed as a primitive remainder sequence over `Z[x]`.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        self.primitive_integer()
            .gcd_primitive(&other.primitive_integer())
            .to_rat()
            .monic()
    }

    /// Clears denominators and removes the content, keeping the sign of the
    /// leading coefficient.
    pub fn primitive_integer(&self) -> Poly<BigInt> {
        let l = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Poly<BigInt> =
            self.map(|c| (c * Rat::from_integer(l.clone())).to_integer());
        let g = ints.content();
        if g.is_zero() {
            return ints;
        }
        ints.map(|c| c / &g)
    }

    /// Power series `1/self mod X^n`; needs a nonzero constant term.
    pub fn series_inverse(&self, n: usize) -> Result<QPoly> {
        let c0 = self.coeff(0);
        if c0.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inv0 = c0.recip();
        let mut out: Vec<Rat> = Vec::with_capacity(n);
        for k in 0..n {
            if k == 0 {
                out.push(inv0.clone());
                continue;
            }
            let mut s = Rat::zero();
            for j in 1..=k.min(self.coeffs.len().saturating_sub(1)) {
                s += self.coeffs[j].clone() * out[k - j].clone();
            }
            out.push(-s * inv0.clone());
        }
        Ok(QPoly::new(out))
    }

    /// First `n` coefficients of the power series `self / den`.
    pub fn series_div(&self, den: &QPoly, n: usize) -> Result<Vec<Rat>> {
        let inv = den.series_inverse(n)?;
        let prod = (self * &inv).truncate(n);
        Ok((0..n).map(|i| prod.coeff(i)).collect())
    }

    /// Square-free decomposition over Q: pairs `(f_i, i)` with the `f_i`
    /// monic, square-free and pairwise coprime, `self = c * prod f_i^i`.
    pub fn squarefree_decomposition(&self) -> Vec<(QPoly, usize)> {
        // Yun's algorithm
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let mut a = f.gcd(&df);
        let mut b = f.exact_div(&a).expect("gcd divides");
        let mut c = df.exact_div(&a).expect("gcd divides");
        let mut i = 1;
        loop {
            let d = &c - &b.derivative();
            if b.degree() == Some(0) {
                break;
            }
            a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.exact_div(&a).expect("gcd divides");
            c = d.exact_div(&a).expect("gcd divides");
            i += 1;
        }
        out
    }

    /// Exact sign of the polynomial at `x`.
    pub fn sign_at(&self, x: &Rat) -> i8 {
        sign_of(&self.eval(x))
    }

    /// Sign as `X -> +inf` (`positive = true`) or `X -> -inf`.
    pub fn sign_at_infinity(&self, positive: bool) -> i8 {
        match (self.lead(), self.degree()) {
            (Some(l), Some(d)) => {
                let s = sign_of(l);
                if positive || d % 2 == 0 {
                    s
                } else {
                    -s
                }
            }
            _ => 0,
        }
    }
}

pub(crate) fn sign_of(x: &Rat) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// The `m`-th cyclotomic polynomial over Z.
pub fn cyclotomic(m: u64) -> Poly<BigInt> {
    assert!(m >= 1, "cyclotomic index must be positive");
    let mut num = QPoly::monomial(Rat::one(), m as usize);
    num = &num - &QPoly::one();
    for d in 1..m {
        if m % d == 0 {
            num = num
                .exact_div(&cyclotomic(d).to_rat())
                .expect("cyclotomic factors divide X^m - 1");
        }
    }
    num.map(|c| c.to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_ops() {
        let a = QPoly::from_i64(&[1, 1]);
        let b = QPoly::from_i64(&[-1, 1]);
        assert_eq!(&a * &b, QPoly::from_i64(&[-1, 0, 1]));
        assert_eq!(&a + &b, QPoly::from_i64(&[0, 2]));
        assert_eq!(&a - &a, QPoly::zero());
        assert_eq!(QPoly::from_i64(&[0, 0, 3]).derivative(), QPoly::from_i64(&[0, 6]));
        assert_eq!(a.pow(3), QPoly::from_i64(&[1, 3, 3, 1]));
    }

    #[test]
    fn division_and_gcd() {
        let f = QPoly::from_i64(&[-1, 0, 0, 1]);
        let (q, r) = f.div_rem(&QPoly::from_i64(&[-1, 1])).unwrap();
        assert_eq!(q, QPoly::from_i64(&[1, 1, 1]));
        assert!(r.is_zero());
        let g = QPoly::from_i64(&[-1, 0, 1]).gcd(&QPoly::from_i64(&[1, 2, 1]));
        assert_eq!(g, QPoly::from_i64(&[1, 1]));
        assert!(f.div_rem(&QPoly::zero()).is_err());
    }

    #[test]
    fn series_inverse_geometric() {
        let inv = QPoly::from_i64(&[1, -2]).series_inverse(5).unwrap();
        assert_eq!(inv, QPoly::from_i64(&[1, 2, 4, 8, 16]));
    }

    #[test]
    fn squarefree_parts() {
        // (X-1)^2 (X+2)
        let f = &QPoly::from_i64(&[-1, 1]).pow(2) * &QPoly::from_i64(&[2, 1]);
        let parts = f.squarefree_decomposition();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0], (QPoly::from_i64(&[2, 1]), 1));
        assert_eq!(parts[1], (QPoly::from_i64(&[-1, 1]), 2));
    }

    #[test]
    fn cyclotomics() {
        assert_eq!(cyclotomic(1), Poly::<BigInt>::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic(4), Poly::<BigInt>::from_i64(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), Poly::<BigInt>::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), Poly::<BigInt>::from_i64(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn primitive_integer_form() {
        let f = QPoly::new(alloc::vec![
            Rat::new(1.into(), 2.into()),
            Rat::new((-3).into(), 4.into())
        ]);
        assert_eq!(f.primitive_integer(), Poly::<BigInt>::from_i64(&[2, -3]));
    }
}
