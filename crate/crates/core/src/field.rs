//! Coefficient fields: prime fields GF(p) and the rationals.
//!
//! All arithmetic in this crate is exact. A [`Field`] value is the runtime
//! description of the coefficient field; scalars carry no field tag of their
//! own, so every operation goes through the field.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::fmt;

use crate::error::Error;

/// Largest prime accepted for GF(p) coefficients.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

/// Largest prime for which polynomial factoring by exhaustive root search is
/// attempted. Canonical forms over larger primes keep unsplit factors as
/// residual blocks.
pub const MAX_FACTOR_PRIME: u64 = 1 << 20;

/// The coefficient field: GF(p) for a prime p, or Q.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Field {
    Prime(u64),
    Rationals,
}

/// A field element. `Fp` values are kept reduced to `0..p`; rationals are in
/// lowest terms with positive denominator (enforced by `BigRational`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Scalar {
    Fp(u64),
    Rat(BigRational),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl Field {
    /// Construct GF(p), checking primality and the size bound.
    pub fn prime(p: u64) -> Result<Field, Error> {
        if p > MAX_PRIME || !is_prime(p) {
            return Err(Error::InvalidField(format!(
                "{p} is not a prime in the supported range"
            )));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Prime(_) => Scalar::Fp(0),
            Field::Rationals => Scalar::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Prime(_) => Scalar::Fp(1),
            Field::Rationals => Scalar::Rat(BigRational::one()),
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Prime(p) => {
                let r = n.rem_euclid(*p as i64) as u64;
                Scalar::Fp(r)
            }
            Field::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
        }
    }

    /// Parse a fraction `a/b`; for GF(p) this is a·b⁻¹ mod p.
    pub fn from_fraction(&self, num: i64, den: i64) -> Result<Scalar, Error> {
        if den == 0 {
            return Err(Error::InvalidInput("fraction with zero denominator".into()));
        }
        match self {
            Field::Prime(_) => {
                let d = self.from_i64(den);
                if self.is_zero(&d) {
                    return Err(Error::InvalidInput(format!(
                        "denominator {den} is zero in the prime field"
                    )));
                }
                Ok(self.mul(&self.from_i64(num), &self.inv(&d)?))
            }
            Field::Rationals => Ok(Scalar::Rat(BigRational::new(
                BigInt::from(num),
                BigInt::from(den),
            ))),
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Fp(v) => *v == 0,
            Scalar::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Fp(v) => *v == 1,
            Scalar::Rat(r) => r.is_one(),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp((x + y) % p),
            (Field::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            _ => panic!("scalar does not belong to field {self:?}"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Field::Prime(p), Scalar::Fp(x)) => Scalar::Fp(if *x == 0 { 0 } else { p - x }),
            (Field::Rationals, Scalar::Rat(x)) => Scalar::Rat(-x),
            _ => panic!("scalar does not belong to field {self:?}"),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => {
                Scalar::Fp(((*x as u128 * *y as u128) % *p as u128) as u64)
            }
            (Field::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            _ => panic!("scalar does not belong to field {self:?}"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar, Error> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        match (self, a) {
            (Field::Prime(p), Scalar::Fp(x)) => {
                // extended Euclid on (x, p)
                let (mut t, mut new_t) = (0i128, 1i128);
                let (mut r, mut new_r) = (*p as i128, *x as i128);
                while new_r != 0 {
                    let q = r / new_r;
                    (t, new_t) = (new_t, t - q * new_t);
                    (r, new_r) = (new_r, r - q * new_r);
                }
                debug_assert_eq!(r, 1);
                Ok(Scalar::Fp(t.rem_euclid(*p as i128) as u64))
            }
            (Field::Rationals, Scalar::Rat(x)) => Ok(Scalar::Rat(x.recip())),
            _ => panic!("scalar does not belong to field {self:?}"),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar, Error> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Every element of the field, for root searches. Only available for
    /// small prime fields.
    pub fn enumerate(&self) -> Option<Vec<Scalar>> {
        match self {
            Field::Prime(p) if *p <= MAX_FACTOR_PRIME => {
                Some((0..*p).map(Scalar::Fp).collect())
            }
            _ => None,
        }
    }

    pub fn format(&self, a: &Scalar) -> String {
        match a {
            Scalar::Fp(v) => v.to_string(),
            Scalar::Rat(r) => {
                if r.is_integer() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime(p) => write!(f, "GF({p})"),
            Field::Rationals => write!(f, "Q"),
        }
    }
}

impl Scalar {
    /// Rational value as (numer, denom) when over Q and small enough to fit.
    pub fn as_rational(&self) -> Option<(&BigInt, &BigInt)> {
        match self {
            Scalar::Rat(r) => Some((r.numer(), r.denom())),
            Scalar::Fp(_) => None,
        }
    }

    pub fn rat(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Fp(_) => None,
        }
    }
}

/// Deterministic total order used when sorting eigenvalues for reports.
pub fn scalar_sort_key(a: &Scalar) -> (u64, BigRational) {
    match a {
        Scalar::Fp(v) => (*v, BigRational::zero()),
        Scalar::Rat(r) => {
            let sign = if r.is_negative() { 1 } else { 0 };
            (sign, r.abs())
        }
    }
}
