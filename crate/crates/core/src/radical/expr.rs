use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::interval::Enclosure;
use super::RadicalNumber;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::numeric::{factorize, floor_root, Rational};

/// Arithmetic over rationals and real roots of positive integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RadicalExpr {
    Rational(Rational),
    /// `radicand^(1/degree)`, the positive real root.
    Root { degree: u32, radicand: BigInt },
    Add(Box<RadicalExpr>, Box<RadicalExpr>),
    Sub(Box<RadicalExpr>, Box<RadicalExpr>),
    Mul(Box<RadicalExpr>, Box<RadicalExpr>),
    Div(Box<RadicalExpr>, Box<RadicalExpr>),
    Neg(Box<RadicalExpr>),
    /// Rational power; a fractional exponent needs a positive rational base.
    Pow(Box<RadicalExpr>, Rational),
}

impl RadicalExpr {
    pub fn int(n: i64) -> Self {
        RadicalExpr::Rational(Rational::from_integer(n.into()))
    }

    pub fn root(degree: u32, radicand: i64) -> Self {
        RadicalExpr::Root { degree, radicand: radicand.into() }
    }

    /// Direct interval evaluation of the tree at `scale`, independent of
    /// canonicalization. `None` if a divisor's enclosure straddles zero.
    pub fn enclose(&self, scale: u32) -> Option<Enclosure> {
        use RadicalExpr::*;
        Some(match self {
            Rational(r) => Enclosure::from_rational(r, scale),
            Root { degree, radicand } => {
                let n = radicand << (*degree as usize * scale as usize);
                let lo = floor_root(&n, *degree);
                let hi = if num_traits::pow(lo.clone(), *degree as usize) == n { lo.clone() } else { &lo + 1u32 };
                Enclosure::from_bounds(lo, hi, scale)
            }
            Add(a, b) => a.enclose(scale)?.add(&b.enclose(scale)?),
            Sub(a, b) => a.enclose(scale)?.add(&b.enclose(scale)?.negate()),
            Mul(a, b) => a.enclose(scale)?.mul(&b.enclose(scale)?),
            Div(a, b) => a.enclose(scale)?.mul(&b.enclose(scale)?.recip()?),
            Neg(a) => a.enclose(scale)?.negate(),
            Pow(base, e) => {
                let b = base.enclose(scale)?;
                let (num, den) = (e.numer().to_i64()?, e.denom().to_u32()?);
                let mut acc = Enclosure::exact_integer(BigInt::one(), scale);
                for _ in 0..num.unsigned_abs() {
                    acc = acc.mul(&b);
                }
                if den > 1 {
                    acc = acc.nth_root(den)?;
                }
                if num < 0 {
                    acc = acc.recip()?;
                }
                acc
            }
        })
    }
}

/// Reduce an expression to canonical form: radicands split into primes, each
/// prime's fractional exponents put over a common denominator, integer powers
/// folded into the rational coefficients.
pub fn canonicalize(expr: &RadicalExpr, limits: &Limits) -> Result<RadicalNumber> {
    use RadicalExpr::*;
    Ok(match expr {
        Rational(r) => RadicalNumber::from_rational(r.clone()),
        Root { degree, radicand } => {
            if *degree < 2 {
                return Err(Error::Domain(format!("root degree {degree} is below 2")));
            }
            if *radicand < BigInt::one() {
                return Err(Error::Domain(format!("radicand {radicand} is below 1")));
            }
            integer_power(radicand, 1, *degree, limits)?
        }
        Add(a, b) => canonicalize(a, limits)?.add_ref(&canonicalize(b, limits)?),
        Sub(a, b) => canonicalize(a, limits)?.sub_ref(&canonicalize(b, limits)?),
        Mul(a, b) => canonicalize(a, limits)?.mul_ref(&canonicalize(b, limits)?),
        Div(a, b) => {
            let d = canonicalize(b, limits)?;
            if d.is_zero() {
                return Err(Error::Domain("division by zero".into()));
            }
            canonicalize(a, limits)?.div(&d, limits)?
        }
        Neg(a) => canonicalize(a, limits)?.neg_ref(),
        Pow(base, e) => power(&canonicalize(base, limits)?, e, limits)?,
    })
}

/// `x^e` for rational `e`.
pub(crate) fn power(x: &RadicalNumber, e: &Rational, limits: &Limits) -> Result<RadicalNumber> {
    if e.is_integer() {
        let n = e
            .to_integer()
            .to_i64()
            .ok_or_else(|| Error::Resource(format!("exponent {e} too large")))?;
        if n < 0 && x.is_zero() {
            return Err(Error::Domain("division by zero".into()));
        }
        return x.pow(n, limits);
    }
    let base = x
        .as_rational()
        .ok_or_else(|| Error::Domain(format!("fractional power of irrational base {x}")))?;
    if base.is_negative() {
        return Err(Error::Domain(format!("fractional power of negative base {base}")));
    }
    if base.is_zero() {
        return if e.is_positive() {
            Ok(RadicalNumber::zero())
        } else {
            Err(Error::Domain("division by zero".into()))
        };
    }
    let den = e
        .denom()
        .to_u32()
        .ok_or_else(|| Error::Resource(format!("root degree in {e} too large")))?;
    let num = e
        .numer()
        .to_i64()
        .ok_or_else(|| Error::Resource(format!("exponent {e} too large")))?;
    let top = integer_power(base.numer(), num, den, limits)?;
    let bottom = integer_power(base.denom(), num, den, limits)?;
    top.div(&bottom, limits)
}

/// `n^(a/b)` for a positive integer `n`.
fn integer_power(n: &BigInt, a: i64, b: u32, limits: &Limits) -> Result<RadicalNumber> {
    if n.is_one() {
        return Ok(RadicalNumber::one());
    }
    let mut acc = RadicalNumber::one();
    for (p, e) in factorize(n, limits)?.factors() {
        let exp = (*e as u64)
            .checked_mul(a.unsigned_abs())
            .ok_or_else(|| Error::Resource("exponent overflow".into()))?;
        let g = exp.gcd(&(b as u64));
        let piece = RadicalNumber::prime_power(p, exp / g, (b as u64 / g) as u32, Rational::one())?;
        acc = acc.mul_ref(&piece);
    }
    if a < 0 {
        acc = acc.invert(limits)?;
    }
    Ok(acc)
}

impl Enclosure {
    pub(crate) fn from_bounds(lo: BigInt, hi: BigInt, scale: u32) -> Self {
        debug_assert!(lo <= hi);
        Enclosure::from_parts(lo, hi, scale)
    }
}
