//! Torsion abelian groups described by place data over `F_p(t)`, and the
//! analogous data over `Q`.
//!
//! A component with prime `p` and excluded places `S` is the module
//! `F_p[t]` localized away from `S`, with `t` acting as multiplication.
//! Its contribution to `R(phi^j)` is `|t^j - 1|_inf * prod_{v in S} |t^j - 1|_v`.
//! The place data is taken as the definition of the instance; no group
//! presentation is checked.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{abs_p, rat_pow_p, vp_rat, ExtNat, Prime, Valuation};
use crate::fpoly::{abs_at_place, mult_order_of_t, FpPoly, Place};
use crate::report::{Certificate, DichotomyReport, Verdict, WitnessIdentity};
use crate::zeta::RationalFn;
use crate::{Error, Rat, Result};

/// Which finite places a component lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlaceSet {
    /// The places at which the module is supported; only finite lists.
    P(Vec<Place>),
    /// The excluded finite places.
    S(Vec<Place>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionComponent {
    pub p: Prime,
    pub places: PlaceSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TorsionModuleSpec {
    components: Vec<TorsionComponent>,
}

fn check_places(p: Prime, places: &[Place]) -> Result<()> {
    for v in places {
        match v {
            Place::Infinite => return Err(Error::InvalidPlace("only finite places may be listed")),
            Place::Finite(w) if w.prime() != p => {
                return Err(Error::CharacteristicMismatch(w.prime().get(), p.get()))
            }
            Place::Finite(_) => {}
        }
    }
    Ok(())
}

impl TorsionModuleSpec {
    pub fn new(components: Vec<TorsionComponent>) -> Result<TorsionModuleSpec> {
        for c in &components {
            match &c.places {
                PlaceSet::P(v) | PlaceSet::S(v) => check_places(c.p, v)?,
            }
        }
        Ok(TorsionModuleSpec { components })
    }

    /// Shorthand for a single S-mode component; places are coefficient
    /// lists, lowest degree first.
    pub fn s_mode(p: u64, places: &[&[i64]]) -> Result<TorsionModuleSpec> {
        let p = Prime::new(p)?;
        let places = places
            .iter()
            .map(|c| Place::finite(FpPoly::from_i64(p, c)))
            .collect::<Result<_>>()?;
        TorsionModuleSpec::new(alloc::vec![TorsionComponent {
            p,
            places: PlaceSet::S(places),
        }])
    }

    pub fn components(&self) -> &[TorsionComponent] {
        &self.components
    }

    /// `R(phi^j)`; a non-integral product means the place data is
    /// inconsistent.
    pub fn reidemeister(&self, j: u64) -> Result<ExtNat> {
        if j == 0 {
            return Err(Error::OutOfRange("iterate index must be positive"));
        }
        let mut total = Rat::one();
        for c in &self.components {
            let f = FpPoly::t_pow_minus_one(c.p, j as usize);
            match &c.places {
                PlaceSet::S(s) => {
                    total *= rat_pow_p(c.p, j as i64);
                    for v in s {
                        total *= abs_at_place(&f, v)?;
                    }
                }
                PlaceSet::P(ps) => {
                    for v in ps {
                        total /= abs_at_place(&f, v)?;
                    }
                }
            }
        }
        if !total.is_integer() || !total.is_positive() {
            return Err(Error::NonIntegral);
        }
        Ok(ExtNat::Finite(total.to_integer().to_biguint().expect("positive")))
    }

    pub fn entropy(&self) -> EntropyValue {
        EntropyValue::new(self.components.iter().map(|c| c.p).collect())
    }

    /// Rational with zeta `(1 - e^h z)^-1` when no component excludes a
    /// place other than `(t)`; otherwise a natural boundary witnessed by the
    /// first such place.
    pub fn classify(&self) -> Result<DichotomyReport> {
        let mut witness = None;
        for (i, c) in self.components.iter().enumerate() {
            let PlaceSet::S(s) = &c.places else {
                return Err(Error::PModeUnsupported);
            };
            if witness.is_none() {
                witness = s.iter().find(|v| !v.is_t()).map(|v| (i, c.p, v.clone()));
            }
        }
        let Some((component, p, Place::Finite(w))) = witness else {
            let e_h = Rat::from_integer(BigInt::from(self.entropy().exp_h().clone()));
            let zeta = RationalFn::from_exponential_sum(&[(e_h, 1)]);
            return Ok(DichotomyReport::structural(
                Verdict::Rational(zeta),
                "every excluded place is (t)",
            ));
        };
        let cert = witness_certificate(component, p, &w)?;
        Ok(DichotomyReport::structural(
            Verdict::NaturalBoundary(cert),
            "excluded place other than (t)",
        ))
    }
}

/// Checks `|t^(l_w p^k) - 1|_w = p^(-p^k d_w)` for `k = 0..=3`.
pub fn witness_identities(p: Prime, w: &FpPoly) -> Result<(usize, u64, Vec<WitnessIdentity>)> {
    let d = w.degree().ok_or(Error::ZeroValue)?;
    let l = mult_order_of_t(w)?;
    let place = Place::finite(w.clone())?;
    let mut out = Vec::new();
    for k in 0..=3u32 {
        let pk = p.get().pow(k);
        let exponent = l * pk;
        let value = abs_at_place(&FpPoly::t_pow_minus_one(p, exponent as usize), &place)?;
        if value != rat_pow_p(p, -((pk * d as u64) as i64)) {
            return Err(Error::CertificateFailure("witness identity"));
        }
        out.push(WitnessIdentity { k, exponent, value });
    }
    Ok((d, l, out))
}

fn witness_certificate(component: usize, p: Prime, w: &FpPoly) -> Result<Certificate> {
    let (degree, order, identities) = witness_identities(p, w)?;
    Ok(Certificate::TorsionWitness {
        component,
        p,
        place: w.clone(),
        degree,
        order,
        identities,
    })
}

/// Topological entropy `h = sum log p(i)`; the multiset of primes is the
/// exact value, the decimal string is for display.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntropyValue {
    primes: Vec<Prime>,
    exp_h: BigUint,
}

impl EntropyValue {
    pub fn new(mut primes: Vec<Prime>) -> EntropyValue {
        primes.sort();
        let exp_h = primes.iter().map(|p| BigUint::from(p.get())).product();
        EntropyValue { primes, exp_h }
    }

    pub fn primes(&self) -> &[Prime] {
        &self.primes
    }

    /// `e^h`, an exact integer.
    pub fn exp_h(&self) -> &BigUint {
        &self.exp_h
    }

    pub fn as_f64(&self) -> f64 {
        self.primes.iter().map(|p| libm::log(p.get() as f64)).sum()
    }

    pub fn display(&self) -> String {
        format!("{:.12}", self.as_f64())
    }
}

/// One component of the rational analogue: `xi` acting on `Z[1/S]`-type
/// data, contributing `|xi^j - 1|_inf * prod_{p in S} |xi^j - 1|_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XiComponent {
    xi: Rat,
    s: Vec<Prime>,
}

impl XiComponent {
    pub fn new(xi: Rat, s: Vec<Prime>) -> Result<XiComponent> {
        if xi.is_zero() {
            return Err(Error::ZeroValue);
        }
        if xi.abs().is_one() {
            return Err(Error::UnitAtInfinity);
        }
        Ok(XiComponent { xi, s })
    }

    pub fn xi(&self) -> &Rat {
        &self.xi
    }

    pub fn primes(&self) -> &[Prime] {
        &self.s
    }

    /// `R_i(j) = sum c w^j` as `(w, c)` pairs.
    fn exponential_terms(&self) -> Vec<(Rat, i64)> {
        let one = Rat::one();
        let a = &self.xi;
        let mut terms = if a.abs() > one {
            if a.is_positive() {
                alloc::vec![(a.clone(), 1), (one, -1)]
            } else {
                alloc::vec![(a.abs(), 1), (-one, -1)]
            }
        } else {
            alloc::vec![(one, 1), (a.clone(), -1)]
        };
        let mut growth = Rat::one();
        for &p in &self.s {
            if let Valuation::Finite(v) = vp_rat(a, p) {
                if v < 0 {
                    growth *= rat_pow_p(p, -v);
                }
            }
        }
        for t in &mut terms {
            t.0 *= &growth;
        }
        terms
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RationalXiSpec {
    components: Vec<XiComponent>,
}

impl RationalXiSpec {
    pub fn new(components: Vec<XiComponent>) -> RationalXiSpec {
        RationalXiSpec { components }
    }

    pub fn single(xi: Rat, s: &[u64]) -> Result<RationalXiSpec> {
        let s = s.iter().map(|&p| Prime::new(p)).collect::<Result<_>>()?;
        Ok(RationalXiSpec::new(alloc::vec![XiComponent::new(xi, s)?]))
    }

    pub fn components(&self) -> &[XiComponent] {
        &self.components
    }

    pub fn reidemeister(&self, j: u64) -> Result<ExtNat> {
        if j == 0 {
            return Err(Error::OutOfRange("iterate index must be positive"));
        }
        let mut total = Rat::one();
        for c in &self.components {
            let x = num_traits::pow(c.xi.clone(), j as usize) - Rat::one();
            total *= x.abs();
            for &p in &c.s {
                total *= abs_p(&x, p)?;
            }
        }
        if !total.is_integer() {
            return Err(Error::NonIntegral);
        }
        Ok(ExtNat::Finite(total.to_integer().to_biguint().expect("positive")))
    }

    /// Natural boundary iff `xi_i` is a unit at some listed prime;
    /// otherwise rational, with the closed form read off the
    /// exponential-sum expansion of `R`.
    pub fn classify(&self) -> Result<DichotomyReport> {
        for (component, c) in self.components.iter().enumerate() {
            for &p in &c.s {
                if vp_rat(&c.xi, p) == Valuation::Finite(0) {
                    let order = residue_order(&c.xi, p)?;
                    return Ok(DichotomyReport::structural(
                        Verdict::NaturalBoundary(Certificate::RationalXiWitness {
                            component,
                            xi: c.xi.clone(),
                            prime: p,
                            order,
                        }),
                        "xi is a unit at a listed prime",
                    ));
                }
            }
        }
        let mut terms: Vec<(Rat, i64)> = alloc::vec![(Rat::one(), 1)];
        for c in &self.components {
            let mut next = Vec::new();
            for (w1, c1) in &terms {
                for (w2, c2) in c.exponential_terms() {
                    next.push((w1 * w2, c1 * c2));
                }
            }
            terms = next;
        }
        Ok(DichotomyReport::structural(
            Verdict::Rational(RationalFn::from_exponential_sum(&terms)),
            "xi is a non-unit at every listed prime",
        ))
    }
}

/// Multiplicative order of `x mod p` for a p-adic unit `x`.
fn residue_order(x: &Rat, p: Prime) -> Result<u64> {
    let pb = BigInt::from(p.get());
    let inv = x.denom().modpow(&(&pb - 2u32), &pb);
    let r = (x.numer() * inv).mod_floor(&pb).to_u64().ok_or(Error::ZeroValue)?;
    if r == 0 {
        return Err(Error::ZeroValue);
    }
    let m = p.get();
    let pow = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = ((acc as u128 * b as u128) % m as u128) as u64;
            }
            b = ((b as u128 * b as u128) % m as u128) as u64;
            e >>= 1;
        }
        acc
    };
    let mut order = m - 1;
    for (q, _) in crate::arith::factor_u64(m - 1) {
        while order % q == 0 && pow(r, order / q) == 1 {
            order /= q;
        }
    }
    Ok(order)
}
