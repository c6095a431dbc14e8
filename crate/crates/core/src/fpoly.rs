//! Polynomials over the prime field `F_p`, places of the rational function
//! field `F_p(t)` with their normalized absolute values, and the
//! factorization of `t^n - 1`.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::One;

use crate::arith::{factor_u64, rat_pow_p, Prime};
use crate::{Error, Rat, Result};

/// Largest residue degree accepted by [`mult_order_of_t`].
pub const MAX_ORDER_DEGREE: usize = 16;

/// A polynomial over `F_p`, coefficients lowest degree first, trimmed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: Prime,
    coeffs: Vec<u64>,
}

#[inline]
fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
fn addm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

#[inline]
fn subm(a: u64, b: u64, p: u64) -> u64 {
    addm(a, p - b, p)
}

fn invm(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    let (mut b, mut e, mut r) = (a % p, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, b, p);
        }
        b = mulm(b, b, p);
        e >>= 1;
    }
    r
}

impl FpPoly {
    /// Builds from non-negative coefficients, reducing mod `p`.
    pub fn new(p: Prime, coeffs: Vec<u64>) -> FpPoly {
        let pv = p.get();
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % pv).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    /// Builds from signed coefficients, reducing mod `p`.
    pub fn from_i64(p: Prime, coeffs: &[i64]) -> FpPoly {
        let pv = p.get() as i128;
        FpPoly::new(
            p,
            coeffs
                .iter()
                .map(|&c| (c as i128).rem_euclid(pv) as u64)
                .collect(),
        )
    }

    pub fn from_bigints(p: Prime, coeffs: &[BigInt]) -> FpPoly {
        let pb = p.to_bigint();
        FpPoly::new(
            p,
            coeffs
                .iter()
                .map(|c| {
                    let r = c.mod_floor(&pb);
                    u64::try_from(&r).expect("reduced below p")
                })
                .collect(),
        )
    }

    pub fn zero(p: Prime) -> FpPoly {
        FpPoly { p, coeffs: Vec::new() }
    }

    pub fn one(p: Prime) -> FpPoly {
        FpPoly::new(p, vec![1])
    }

    /// The indeterminate `t`.
    pub fn t(p: Prime) -> FpPoly {
        FpPoly::new(p, vec![0, 1])
    }

    /// `t^n - 1`.
    pub fn t_pow_minus_one(p: Prime, n: usize) -> FpPoly {
        let mut c = vec![0u64; n + 1];
        c[n] = 1;
        c[0] = p.get() - 1;
        if n == 0 {
            return FpPoly::zero(p);
        }
        FpPoly::new(p, c)
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn is_t(&self) -> bool {
        self.coeffs == [0, 1]
    }

    fn check(&self, other: &FpPoly) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(Error::CharacteristicMismatch(self.p.get(), other.p.get()))
        }
    }

    pub fn monic(&self) -> FpPoly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&l) => {
                let inv = invm(l, self.p.get());
                self.scale(inv)
            }
        }
    }

    fn scale(&self, c: u64) -> FpPoly {
        let p = self.p.get();
        FpPoly::new(self.p, self.coeffs.iter().map(|&a| mulm(a, c, p)).collect())
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.p.get();
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| addm(mulm(acc, x, p), c, p))
    }

    pub fn derivative(&self) -> FpPoly {
        let p = self.p.get();
        FpPoly::new(
            self.p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mulm(c, i as u64 % p, p))
                .collect(),
        )
    }

    fn add_raw(&self, other: &FpPoly) -> FpPoly {
        let p = self.p.get();
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[u64], i: usize| v.get(i).copied().unwrap_or(0);
        FpPoly::new(
            self.p,
            (0..n)
                .map(|i| addm(get(&self.coeffs, i), get(&other.coeffs, i), p))
                .collect(),
        )
    }

    fn sub_raw(&self, other: &FpPoly) -> FpPoly {
        let p = self.p.get();
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[u64], i: usize| v.get(i).copied().unwrap_or(0);
        FpPoly::new(
            self.p,
            (0..n)
                .map(|i| subm(get(&self.coeffs, i), get(&other.coeffs, i), p))
                .collect(),
        )
    }

    fn mul_raw(&self, other: &FpPoly) -> FpPoly {
        if self.is_zero() || other.is_zero() {
            return FpPoly::zero(self.p);
        }
        let p = self.p.get();
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = addm(out[i + j], mulm(a, b, p), p);
            }
        }
        FpPoly::new(self.p, out)
    }

    fn div_rem_raw(&self, d: &FpPoly) -> Result<(FpPoly, FpPoly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let p = self.p.get();
        if self.coeffs.len() <= dd {
            return Ok((FpPoly::zero(self.p), self.clone()));
        }
        let inv = invm(*d.coeffs.last().unwrap(), p);
        let mut r = self.coeffs.clone();
        let mut q = vec![0u64; r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = mulm(r[i + dd], inv, p);
            if c == 0 {
                continue;
            }
            for (j, &dc) in d.coeffs.iter().enumerate() {
                r[i + j] = subm(r[i + j], mulm(c, dc, p), p);
            }
            q[i] = c;
        }
        r.truncate(dd);
        Ok((FpPoly::new(self.p, q), FpPoly::new(self.p, r)))
    }

    fn rem_raw(&self, d: &FpPoly) -> FpPoly {
        self.div_rem_raw(d).expect("nonzero modulus").1
    }

    fn gcd_raw(&self, other: &FpPoly) -> FpPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem_raw(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    fn pow_mod_raw(&self, exp: &BigUint, m: &FpPoly) -> FpPoly {
        let mut acc = FpPoly::one(self.p).rem_raw(m);
        let base = self.rem_raw(m);
        for i in (0..exp.bits()).rev() {
            acc = acc.mul_raw(&acc).rem_raw(m);
            if exp.bit(i) {
                acc = acc.mul_raw(&base).rem_raw(m);
            }
        }
        acc
    }

    pub fn add(&self, other: &FpPoly) -> Result<FpPoly> {
        self.check(other)?;
        Ok(self.add_raw(other))
    }

    pub fn sub(&self, other: &FpPoly) -> Result<FpPoly> {
        self.check(other)?;
        Ok(self.sub_raw(other))
    }

    pub fn mul(&self, other: &FpPoly) -> Result<FpPoly> {
        self.check(other)?;
        Ok(self.mul_raw(other))
    }

    /// `(q, r)` with `self = q d + r`, `deg r < deg d`.
    pub fn div_rem(&self, d: &FpPoly) -> Result<(FpPoly, FpPoly)> {
        self.check(d)?;
        self.div_rem_raw(d)
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &FpPoly) -> Result<FpPoly> {
        self.check(other)?;
        Ok(self.gcd_raw(other))
    }

    /// `self^exp mod m`.
    pub fn pow_mod(&self, exp: &BigUint, m: &FpPoly) -> Result<FpPoly> {
        self.check(m)?;
        if m.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow_mod_raw(exp, m))
    }

    pub fn pow(&self, e: u64) -> FpPoly {
        let mut acc = FpPoly::one(self.p);
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_raw(&b);
            }
            b = b.mul_raw(&b);
            e >>= 1;
        }
        acc
    }

    /// `t^(p^k) mod self`, by `k` Frobenius steps.
    fn t_frobenius(&self, k: usize) -> FpPoly {
        let p = BigUint::from(self.p.get());
        let mut x = FpPoly::t(self.p).rem_raw(self);
        for _ in 0..k {
            x = x.pow_mod_raw(&p, self);
        }
        x
    }
}

impl PartialOrd for FpPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree first, then coefficients from the top down.
impl Ord for FpPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.p
            .cmp(&other.p)
            .then(self.coeffs.len().cmp(&other.coeffs.len()))
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpPoly(p={}, {:?})", self.p, self.coeffs)
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let show_c = c != 1 || i == 0;
            match (i, show_c) {
                (0, _) => write!(f, "{c}")?,
                (1, false) => f.write_str("t")?,
                (1, true) => write!(f, "{c}t")?,
                (_, false) => write!(f, "t^{i}")?,
                (_, true) => write!(f, "{c}t^{i}")?,
            }
        }
        Ok(())
    }
}

/// Rabin's test: `w | t^(p^d) - t` and `gcd(w, t^(p^(d/q)) - t) = 1` for
/// every prime `q | d`.
pub fn is_irreducible(w: &FpPoly) -> bool {
    let d = match w.degree() {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    if d == 1 {
        return true;
    }
    let w = w.monic();
    let t = FpPoly::t(w.p);
    if !w.t_frobenius(d).sub_raw(&t).rem_raw(&w).is_zero() {
        return false;
    }
    factor_u64(d as u64).into_iter().all(|(q, _)| {
        let h = w.t_frobenius(d / q as usize).sub_raw(&t);
        w.gcd_raw(&h).degree() == Some(0)
    })
}

/// A place of `F_p(t)`: the infinite place or a monic irreducible polynomial.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Infinite,
    Finite(FpPoly),
}

impl Place {
    pub fn finite(w: FpPoly) -> Result<Place> {
        if !w.is_monic() {
            return Err(Error::InvalidPlace("place polynomial must be monic"));
        }
        if !is_irreducible(&w) {
            return Err(Error::InvalidPlace("place polynomial must be irreducible"));
        }
        Ok(Place::Finite(w))
    }

    /// The place `(t)`.
    pub fn t(p: Prime) -> Place {
        Place::Finite(FpPoly::t(p))
    }

    pub fn degree(&self) -> usize {
        match self {
            Place::Infinite => 1,
            Place::Finite(w) => w.degree().unwrap_or(0),
        }
    }

    pub fn is_t(&self) -> bool {
        matches!(self, Place::Finite(w) if w.is_t())
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinite => f.write_str("inf"),
            Place::Finite(w) => write!(f, "({w})"),
        }
    }
}

/// Order of `f` at a place: multiplicity of `w` for finite places, `-deg f`
/// at infinity.
pub fn ord_at_place(f: &FpPoly, v: &Place) -> Result<i64> {
    let deg = f.degree().ok_or(Error::ZeroValue)?;
    match v {
        Place::Infinite => Ok(-(deg as i64)),
        Place::Finite(w) => {
            f.check(w)?;
            let mut g = f.clone();
            let mut k = 0i64;
            loop {
                let (q, r) = g.div_rem_raw(w)?;
                if !r.is_zero() {
                    return Ok(k);
                }
                g = q;
                k += 1;
            }
        }
    }
}

/// Normalized absolute value `p^(-ord_v(f) * deg v)`.
pub fn abs_at_place(f: &FpPoly, v: &Place) -> Result<Rat> {
    let ord = ord_at_place(f, v)?;
    Ok(rat_pow_p(f.p, -ord * v.degree() as i64))
}

/// Exact order of `t` modulo `h`, given that `t^multiple = 1 mod h`.
fn order_of_t_dividing(h: &FpPoly, multiple: u64) -> u64 {
    let t = FpPoly::t(h.p);
    let one = FpPoly::one(h.p).rem_raw(h);
    let mut order = multiple;
    for (q, _) in factor_u64(multiple) {
        while order % q == 0 {
            let cand = order / q;
            if t.pow_mod_raw(&BigUint::from(cand), h) == one {
                order = cand;
            } else {
                break;
            }
        }
    }
    order
}

fn checked_prime_power(p: Prime, d: usize) -> Result<u64> {
    (0..d).try_fold(1u64, |acc, _| acc.checked_mul(p.get()))
        .ok_or(Error::OutOfRange("residue field too large"))
}

/// Multiplicative order of the image of `t` in `F_p[t]/(w)`.
pub fn mult_order_of_t(w: &FpPoly) -> Result<u64> {
    let d = w.degree().ok_or(Error::ZeroValue)?;
    if d == 0 {
        return Err(Error::InvalidPlace("constant polynomial"));
    }
    if w.monic().is_t() {
        return Err(Error::InvalidPlace("t has no multiplicative order modulo t"));
    }
    if d > MAX_ORDER_DEGREE {
        return Err(Error::OutOfRange("residue degree above cap"));
    }
    let q = checked_prime_power(w.p, d)?;
    Ok(order_of_t_dividing(&w.monic(), q - 1))
}

/// Least common multiple of the multiplicative orders of the nonzero roots
/// of `g` in an algebraic closure of `F_p`.
///
/// Roots are grouped by the degree of their minimal polynomial
/// (distinct-degree splitting); within a block of degree `k` every root has
/// order dividing `p^k - 1`. Returns 1 if `g` has no nonzero roots.
pub fn unit_root_order(g: &FpPoly) -> Result<u64> {
    if g.is_zero() {
        return Err(Error::ZeroValue);
    }
    let p = g.p;
    let t = FpPoly::t(p);
    let mut rest = g.monic();
    while rest.coeffs.first() == Some(&0) {
        rest = rest.div_rem_raw(&t)?.0;
    }
    let mut lcm = 1u64;
    let mut k = 1usize;
    while rest.degree().unwrap_or(0) > 0 {
        let frob = rest.t_frobenius(k).sub_raw(&t);
        let block = rest.gcd_raw(&frob);
        if block.degree().unwrap_or(0) > 0 {
            let q = checked_prime_power(p, k)?;
            lcm = lcm.lcm(&order_of_t_dividing(&block, q - 1));
            loop {
                let g = rest.gcd_raw(&block);
                if g.degree() == Some(0) {
                    break;
                }
                rest = rest.div_rem_raw(&g)?.0;
            }
        }
        k += 1;
    }
    Ok(lcm)
}

/// Multiplicative order of `p` modulo `m` (`gcd(p, m) = 1`).
fn order_mod(p: u64, m: u64) -> u64 {
    if m == 1 {
        return 1;
    }
    let mut x = p % m;
    let mut k = 1;
    while x != 1 {
        x = mulm(x, p, m);
        k += 1;
    }
    k
}

/// First monic irreducible polynomial of degree `d` in enumeration order.
fn first_irreducible(p: Prime, d: usize) -> FpPoly {
    let pv = p.get();
    let mut digits = vec![0u64; d];
    loop {
        let mut c = digits.clone();
        c.push(1);
        let w = FpPoly::new(p, c);
        if is_irreducible(&w) {
            return w;
        }
        for x in digits.iter_mut() {
            *x += 1;
            if *x < pv {
                break;
            }
            *x = 0;
        }
    }
}

/// Arithmetic in `F_p[x]/(f)` for irreducible `f`: the splitting field used to
/// read off the irreducible factors of `t^m - 1` from cyclotomic cosets.
struct ExtField {
    modulus: FpPoly,
}

impl ExtField {
    fn mul(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        a.mul_raw(b).rem_raw(&self.modulus)
    }

    fn pow(&self, a: &FpPoly, e: &BigUint) -> FpPoly {
        a.pow_mod_raw(e, &self.modulus)
    }

    fn is_one(&self, a: &FpPoly) -> bool {
        a.coeffs == [1]
    }

    /// `prod_{i in coset} (X - zeta^i)`, whose coefficients lie in `F_p`.
    fn min_poly(&self, zeta: &FpPoly, coset: &[u64]) -> Result<FpPoly> {
        let p = self.modulus.p;
        // coefficients in the extension, lowest first
        let mut acc: Vec<FpPoly> = vec![FpPoly::one(p)];
        for &i in coset {
            let root = self.pow(zeta, &BigUint::from(i));
            let mut next = vec![FpPoly::zero(p); acc.len() + 1];
            for (j, c) in acc.iter().enumerate() {
                next[j + 1] = next[j + 1].add_raw(c);
                next[j] = next[j].sub_raw(&self.mul(c, &root));
            }
            acc = next;
        }
        let mut out = Vec::with_capacity(acc.len());
        for c in acc {
            match c.degree() {
                None => out.push(0),
                Some(0) => out.push(c.coeffs[0]),
                Some(_) => return Err(Error::CertificateFailure("coset polynomial not over F_p")),
            }
        }
        Ok(FpPoly::new(p, out))
    }
}

/// Factorization of `t^n - 1` over `F_p` into monic irreducibles with
/// multiplicities, sorted by degree then coefficients.
///
/// With `n = m p^k`, `p ∤ m`, the factors of `t^m - 1` are the minimal
/// polynomials of the cyclotomic cosets `{i, ip, ip^2, ...}` mod `m`; each
/// appears in `t^n - 1` with multiplicity `p^k`.
pub fn factor_tn_minus_1(n: u64, p: Prime) -> Result<Vec<(FpPoly, u64)>> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be positive"));
    }
    let pv = p.get();
    let mut m = n;
    let mut mult = 1u64;
    while m % pv == 0 {
        m /= pv;
        mult *= pv;
    }
    let degree = order_mod(pv, m) as usize;
    let field = ExtField {
        modulus: first_irreducible(p, degree),
    };
    let group_order = num_traits::pow(BigUint::from(pv), degree) - BigUint::one();
    let cofactor = &group_order / BigUint::from(m);
    let prime_divisors: Vec<u64> = factor_u64(m).into_iter().map(|(q, _)| q).collect();

    // primitive m-th root of unity: g^((p^D - 1)/m) for the first suitable g
    let mut counter = 1u64;
    let zeta = loop {
        let mut digits = Vec::with_capacity(degree);
        let mut c = counter;
        for _ in 0..degree {
            digits.push(c % pv);
            c /= pv;
        }
        counter += 1;
        let g = FpPoly::new(p, digits);
        if g.is_zero() {
            continue;
        }
        let z = field.pow(&g, &cofactor);
        let primitive = prime_divisors
            .iter()
            .all(|&q| !field.is_one(&field.pow(&z, &BigUint::from(m / q))));
        if primitive {
            break z;
        }
    };

    let mut seen = vec![false; m as usize];
    let mut factors = Vec::new();
    for start in 0..m {
        if seen[start as usize] {
            continue;
        }
        let mut coset = Vec::new();
        let mut i = start;
        while !seen[i as usize] {
            seen[i as usize] = true;
            coset.push(i);
            i = mulm(i, pv, m);
        }
        factors.push((field.min_poly(&zeta, &coset)?, mult));
    }
    factors.sort();
    Ok(factors)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pr(v: u64) -> Prime {
        Prime::new(v).unwrap()
    }

    fn fp(p: u64, c: &[i64]) -> FpPoly {
        FpPoly::from_i64(pr(p), c)
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(fp(2, &[0, 1, 1]).gcd(&fp(2, &[1, 1])).unwrap(), fp(2, &[1, 1]));
        assert_eq!(fp(2, &[1, 1]).mul(&fp(2, &[1, 1, 1])).unwrap(), fp(2, &[1, 0, 0, 1]));
        let (q, r) = fp(3, &[-1, 0, 0, 1]).div_rem(&fp(3, &[-1, 1])).unwrap();
        assert_eq!(q, fp(3, &[1, 1, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn arithmetic_errors() {
        assert_eq!(
            fp(2, &[1, 1]).add(&fp(3, &[1, 1])),
            Err(Error::CharacteristicMismatch(2, 3))
        );
        assert_eq!(fp(2, &[1, 1]).div_rem(&FpPoly::zero(pr(2))), Err(Error::DivisionByZero));
    }

    #[test]
    fn pow_mod_matches_repeated_multiplication() {
        let m = fp(5, &[2, 0, 1, 1]);
        let a = fp(5, &[3, 1]);
        let by_pow = a.pow_mod(&BigUint::from(13u32), &m).unwrap();
        let by_mul = a.pow(13).div_rem(&m).unwrap().1;
        assert_eq!(by_pow, by_mul);
    }

    #[test]
    fn irreducibility_examples() {
        assert!(is_irreducible(&fp(2, &[1, 1, 1])));
        assert!(!is_irreducible(&fp(2, &[1, 0, 1])));
        assert!(is_irreducible(&fp(3, &[1, 0, 1])));
        assert!(is_irreducible(&fp(2, &[1, 1, 0, 0, 1])));
        // (t^2+t+1)^2 over F_2
        assert!(!is_irreducible(&fp(2, &[1, 0, 1, 0, 1])));
    }

    #[test]
    fn irreducible_counts_match_necklace_formula() {
        // number of monic irreducibles of degree d over F_2: 2, 1, 2, 3, 6
        let expected = [2usize, 1, 2, 3, 6];
        for (d, &count) in (1..=5).zip(expected.iter()) {
            let mut n = 0;
            for bits in 0u64..(1 << d) {
                let mut c: Vec<u64> = (0..d).map(|i| (bits >> i) & 1).collect();
                c.push(1);
                if is_irreducible(&FpPoly::new(pr(2), c)) {
                    n += 1;
                }
            }
            assert_eq!(n, count, "degree {d}");
        }
    }

    #[test]
    fn factor_examples() {
        assert_eq!(
            factor_tn_minus_1(3, pr(2)).unwrap(),
            [(fp(2, &[1, 1]), 1), (fp(2, &[1, 1, 1]), 1)]
        );
        assert_eq!(factor_tn_minus_1(4, pr(2)).unwrap(), [(fp(2, &[1, 1]), 4)]);
        for p in [2, 3, 5, 7] {
            assert_eq!(factor_tn_minus_1(1, pr(p)).unwrap(), [(fp(p, &[-1, 1]), 1)]);
        }
    }

    #[test]
    fn factorization_reassembles() {
        for p in [2u64, 3, 5, 7] {
            for n in 1..=40u64 {
                let factors = factor_tn_minus_1(n, pr(p)).unwrap();
                let prod = factors
                    .iter()
                    .fold(FpPoly::one(pr(p)), |acc, (f, e)| acc.mul_raw(&f.pow(*e)));
                assert_eq!(prod, FpPoly::t_pow_minus_one(pr(p), n as usize), "p={p} n={n}");
                assert!(factors.iter().all(|(f, _)| is_irreducible(f) && f.is_monic()));
            }
        }
    }

    #[test]
    fn squarefree_when_coprime() {
        for p in [2u64, 3, 5] {
            for m in (1..=30u64).filter(|m| m % p != 0) {
                let factors = factor_tn_minus_1(m, pr(p)).unwrap();
                assert!(factors.iter().all(|(_, e)| *e == 1));
                let f = FpPoly::t_pow_minus_one(pr(p), m as usize);
                assert_eq!(f.gcd(&f.derivative()).unwrap().degree(), Some(0));
            }
        }
    }

    #[test]
    fn place_orders_and_absolute_values() {
        let f = FpPoly::t_pow_minus_one(pr(2), 3);
        let w = Place::finite(fp(2, &[1, 1])).unwrap();
        assert_eq!(ord_at_place(&f, &w).unwrap(), 1);
        assert_eq!(ord_at_place(&f, &Place::Infinite).unwrap(), -3);
        let f4 = FpPoly::t_pow_minus_one(pr(2), 4);
        assert_eq!(ord_at_place(&f4, &w).unwrap(), 4);

        let w2 = Place::finite(fp(2, &[1, 1, 1])).unwrap();
        assert_eq!(abs_at_place(&f, &w2).unwrap(), Rat::new(1.into(), 4.into()));
        assert_eq!(abs_at_place(&f, &Place::Infinite).unwrap(), Rat::from_integer(8.into()));
        for j in 1..20 {
            let g = FpPoly::t_pow_minus_one(pr(2), j);
            assert_eq!(abs_at_place(&g, &Place::t(pr(2))).unwrap(), Rat::one());
        }
        assert_eq!(ord_at_place(&FpPoly::zero(pr(2)), &w), Err(Error::ZeroValue));
    }

    #[test]
    fn invalid_places_rejected() {
        assert!(Place::finite(fp(2, &[1, 0, 1])).is_err());
        assert!(Place::finite(fp(3, &[1, 2])).is_err());
        assert!(Place::finite(fp(3, &[2, 1])).is_ok());
    }

    #[test]
    fn multiplicative_orders() {
        assert_eq!(mult_order_of_t(&fp(3, &[-1, 1])).unwrap(), 1);
        assert_eq!(mult_order_of_t(&fp(2, &[1, 1, 1])).unwrap(), 3);
        assert_eq!(mult_order_of_t(&fp(2, &[1, 1])).unwrap(), 1);
        assert_eq!(mult_order_of_t(&fp(3, &[1, 0, 1])).unwrap(), 4);
        assert!(mult_order_of_t(&FpPoly::t(pr(5))).is_err());
        // t^4 + t + 1 is primitive over F_2
        assert_eq!(mult_order_of_t(&fp(2, &[1, 1, 0, 0, 1])).unwrap(), 15);
    }

    #[test]
    fn unit_root_orders() {
        // t^2 (t - 2) over F_7: root 2 has order 3
        let g = fp(7, &[0, 0, -2, 1]);
        assert_eq!(unit_root_order(&g).unwrap(), 3);
        // (t+1)(t^2+t+1) over F_2
        assert_eq!(unit_root_order(&fp(2, &[1, 0, 0, 1])).unwrap(), 3);
        assert_eq!(unit_root_order(&fp(5, &[0, 0, 1])).unwrap(), 1);
    }
}
