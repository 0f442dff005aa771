//! Exact scalar fields: the rationals and prime fields `Z/pZ`.
//!
//! Every computation in the crate is generic over [`Field`]; the two
//! implementations are [`Rationals`] (big rationals, exact) and [`ModP`]
//! (residues modulo an odd prime below `2^32`, so products fit in a `u64`).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default working prime, `2^31 - 1`.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;
/// Cross-check prime used alongside [`DEFAULT_PRIME`].
pub const DEFAULT_PRIME2: u64 = 2_147_483_629;

/// Which arithmetic a value or computation lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regime {
    Rational,
    ModP(u64),
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regime::Rational => write!(f, "Q"),
            Regime::ModP(p) => write!(f, "GF({p})"),
        }
    }
}

/// A field element tagged with its regime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Rational(BigRational),
    ModP { value: u64, p: u64 },
}

impl Scalar {
    pub fn regime(&self) -> Regime {
        match self {
            Scalar::Rational(_) => Regime::Rational,
            Scalar::ModP { p, .. } => Regime::ModP(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::ModP { value, .. } => *value == 0,
        }
    }

    pub fn rational(num: i64, den: i64) -> Scalar {
        Scalar::Rational(BigRational::new(num.into(), den.into()))
    }

    pub fn mod_p(value: i64, p: u64) -> Result<Scalar> {
        let f = ModP::new(p)?;
        Ok(Scalar::ModP {
            value: f.from_i64(value),
            p,
        })
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::ModP { value, p } => write!(f, "{value} (mod {p})"),
        }
    }
}

/// Arithmetic over an exact field. Field values carry their own context
/// (the modulus), so two `ModP` fields with different primes compare unequal.
#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Send + Sync;

    fn regime(&self) -> Regime;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_rational(&self, v: &BigRational) -> Result<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn to_scalar(&self, a: &Self::Elem) -> Scalar;

    /// `acc += b * c`
    fn mul_add_assign(&self, acc: &mut Self::Elem, b: &Self::Elem, c: &Self::Elem) {
        *acc = self.add(acc, &self.mul(b, c));
    }

    /// `acc -= b * c`
    fn mul_sub_assign(&self, acc: &mut Self::Elem, b: &Self::Elem, c: &Self::Elem) {
        *acc = self.sub(acc, &self.mul(b, c));
    }
}

/// The rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn regime(&self) -> Regime {
        Regime::Rational
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_rational(&self, v: &BigRational) -> Result<BigRational> {
        Ok(v.clone())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn to_scalar(&self, a: &BigRational) -> Scalar {
        Scalar::Rational(a.clone())
    }
    fn mul_add_assign(&self, acc: &mut BigRational, b: &BigRational, c: &BigRational) {
        *acc += b * c;
    }
    fn mul_sub_assign(&self, acc: &mut BigRational, b: &BigRational, c: &BigRational) {
        *acc -= b * c;
    }
}

/// The prime field `Z/pZ` for an odd prime `p < 2^32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModP {
    p: u64,
}

impl ModP {
    pub fn new(p: u64) -> Result<ModP> {
        if p <= 2 || p >= 1 << 32 || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(ModP { p })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    fn reduce_bigint(&self, v: &BigInt) -> u64 {
        let r = v.mod_floor(&BigInt::from(self.p));
        r.to_u64().expect("residue fits in u64")
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
}

impl Field for ModP {
    type Elem = u64;

    fn regime(&self) -> Regime {
        Regime::ModP(self.p)
    }
    #[inline]
    fn zero(&self) -> u64 {
        0
    }
    #[inline]
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        (v as i128).rem_euclid(self.p as i128) as u64
    }
    fn from_rational(&self, v: &BigRational) -> Result<u64> {
        let num = self.reduce_bigint(v.numer());
        let den = self.reduce_bigint(v.denom());
        let inv = self
            .inv(&den)
            .ok_or_else(|| Error::NotInvertibleModP(v.to_string(), self.p))?;
        Ok(num * inv % self.p)
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        (!u64::is_multiple_of(*a, self.p)).then(|| self.pow(*a, self.p - 2))
    }
    fn to_scalar(&self, a: &u64) -> Scalar {
        Scalar::ModP { value: *a, p: self.p }
    }
    #[inline]
    fn mul_add_assign(&self, acc: &mut u64, b: &u64, c: &u64) {
        *acc = (*acc + b * c % self.p) % self.p;
    }
    #[inline]
    fn mul_sub_assign(&self, acc: &mut u64, b: &u64, c: &u64) {
        let t = b * c % self.p;
        *acc = if *acc >= t { *acc - t } else { *acc + self.p - t };
    }
}

/// Deterministic primality test by trial division (inputs are below `2^32`).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if u64::is_multiple_of(n, 2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if u64::is_multiple_of(n, d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Symmetric lift of a residue to the interval `(-p/2, p/2]`.
pub fn symmetric_lift(value: u64, p: u64) -> i64 {
    if value > p / 2 {
        value as i64 - p as i64
    } else {
        value as i64
    }
}
