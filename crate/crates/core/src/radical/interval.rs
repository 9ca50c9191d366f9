//! Dyadic interval enclosures `[lo, hi] * 2^-scale` with outward rounding.
//!
//! Roots are computed as exact integer floor roots, so every bound here is
//! rigorous; no floating point is involved.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::RadicalNumber;
use crate::limits::Limits;
use crate::numeric::{floor_root, Rational};

/// Closed interval `[lo / 2^scale, hi / 2^scale]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enclosure {
    lo: BigInt,
    hi: BigInt,
    scale: u32,
}

impl Enclosure {
    pub fn exact_integer(n: BigInt, scale: u32) -> Self {
        let v = n << scale;
        Enclosure { lo: v.clone(), hi: v, scale }
    }

    pub fn from_rational(r: &Rational, scale: u32) -> Self {
        let n = r.numer() << scale;
        Enclosure { lo: n.div_floor(r.denom()), hi: ceil_div(&n, r.denom()), scale }
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn lower(&self) -> Rational {
        Rational::new(self.lo.clone(), BigInt::one() << self.scale)
    }

    pub fn upper(&self) -> Rational {
        Rational::new(self.hi.clone(), BigInt::one() << self.scale)
    }

    pub fn width(&self) -> Rational {
        Rational::new(&self.hi - &self.lo, BigInt::one() << self.scale)
    }

    pub fn contains(&self, r: &Rational) -> bool {
        *r >= self.lower() && *r <= self.upper()
    }

    pub fn overlaps(&self, other: &Enclosure) -> bool {
        self.lower() <= other.upper() && other.lower() <= self.upper()
    }

    /// Sign of every point inside, or `None` when the interval straddles zero.
    pub fn sign(&self) -> Option<Ordering> {
        if self.lo.is_positive() {
            Some(Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(Ordering::Less)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn midpoint_f64(&self) -> f64 {
        let mid = Rational::new(&self.lo + &self.hi, BigInt::one() << (self.scale + 1));
        mid.to_f64().unwrap_or(f64::NAN)
    }

    /// Whether the width is at most `2^(1 - bits) * max(1, |x|)`.
    pub fn meets_precision(&self, bits: u32) -> bool {
        let width = &self.hi - &self.lo;
        let magnitude = if self.lo.sign() == self.hi.sign() && !self.lo.is_zero() {
            self.lo.abs().min(self.hi.abs())
        } else {
            BigInt::zero()
        };
        let unit = BigInt::one() << self.scale;
        let bound = magnitude.max(unit);
        (width << (bits.saturating_sub(1))) <= bound
    }

    pub(crate) fn rescale(&self, scale: u32) -> Enclosure {
        if scale >= self.scale {
            let d = scale - self.scale;
            Enclosure { lo: &self.lo << d, hi: &self.hi << d, scale }
        } else {
            let d = self.scale - scale;
            Enclosure { lo: &self.lo >> d, hi: ceil_shr(&self.hi, d), scale }
        }
    }

    pub(crate) fn add(&self, other: &Enclosure) -> Enclosure {
        debug_assert_eq!(self.scale, other.scale);
        Enclosure { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi, scale: self.scale }
    }

    pub(crate) fn mul(&self, other: &Enclosure) -> Enclosure {
        debug_assert_eq!(self.scale, other.scale);
        let products = [&self.lo * &other.lo, &self.lo * &other.hi, &self.hi * &other.lo, &self.hi * &other.hi];
        let lo = products.iter().min().unwrap();
        let hi = products.iter().max().unwrap();
        Enclosure { lo: lo >> self.scale, hi: ceil_shr(hi, self.scale), scale: self.scale }
    }

    pub(crate) fn scale_by(&self, c: &Rational) -> Enclosure {
        let (n, d) = (c.numer(), c.denom());
        let (a, b) = (&self.lo * n, &self.hi * n);
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        Enclosure { lo: lo.div_floor(d), hi: ceil_div(&hi, d), scale: self.scale }
    }

    pub(crate) fn from_parts(lo: BigInt, hi: BigInt, scale: u32) -> Enclosure {
        Enclosure { lo, hi, scale }
    }

    pub(crate) fn negate(&self) -> Enclosure {
        Enclosure { lo: -&self.hi, hi: -&self.lo, scale: self.scale }
    }

    /// `None` when the interval touches zero.
    pub(crate) fn recip(&self) -> Option<Enclosure> {
        if self.sign().is_none() || self.lo.is_zero() || self.hi.is_zero() {
            return None;
        }
        let one = BigInt::one() << (2 * self.scale);
        Some(Enclosure { lo: one.div_floor(&self.hi), hi: ceil_div(&one, &self.lo), scale: self.scale })
    }

    /// Enclosure of the positive real `q`-th root; `None` for negative input.
    pub(crate) fn nth_root(&self, q: u32) -> Option<Enclosure> {
        if self.lo.is_negative() {
            return None;
        }
        let shift = self.scale as usize * (q as usize - 1);
        let lo = floor_root(&(&self.lo << shift), q);
        let top = &self.hi << shift;
        let mut hi = floor_root(&top, q);
        if num_traits::pow(hi.clone(), q as usize) != top {
            hi += 1u32;
        }
        Some(Enclosure { lo, hi, scale: self.scale })
    }

    pub(crate) fn zero(scale: u32) -> Enclosure {
        Enclosure { lo: BigInt::zero(), hi: BigInt::zero(), scale }
    }
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

fn ceil_shr(a: &BigInt, d: u32) -> BigInt {
    -((-a) >> d)
}

/// `p^(k/q)` at `scale`: exact integer floor root of `p^k * 2^(q*scale)`.
fn root_power(p: &BigInt, k: u32, q: u32, scale: u32) -> Enclosure {
    let n = num_traits::pow(p.clone(), k as usize) << (q as usize * scale as usize);
    let lo = floor_root(&n, q);
    let exact = num_traits::pow(lo.clone(), q as usize) == n;
    let hi = if exact { lo.clone() } else { &lo + 1u32 };
    Enclosure { lo, hi, scale }
}

fn evaluate_at_scale(x: &RadicalNumber, scale: u32) -> Enclosure {
    let basis = x.basis();
    let mut factors: BTreeMap<(usize, u32), Enclosure> = BTreeMap::new();
    let mut sum = Enclosure::zero(scale);
    for (m, c) in x.terms() {
        let mut mono = Enclosure::exact_integer(BigInt::one(), scale);
        for (i, &k) in m.exponents().iter().enumerate() {
            if k == 0 {
                continue;
            }
            let r = &basis.roots()[i];
            let f = factors.entry((i, k)).or_insert_with(|| root_power(&r.prime, k, r.degree, scale));
            mono = mono.mul(f);
        }
        sum = sum.add(&mono.scale_by(c));
    }
    sum
}

pub(super) fn evaluate(x: &RadicalNumber, bits: u32) -> Enclosure {
    if x.is_zero() {
        return Enclosure::zero(bits);
    }
    let log_terms = usize::BITS - x.num_terms().leading_zeros();
    let mut guard = 8 + log_terms + 2 * x.basis().len() as u32;
    loop {
        let enc = evaluate_at_scale(x, bits + guard);
        if enc.meets_precision(bits) {
            return enc;
        }
        guard = guard * 2 + 16;
    }
}

/// Refine at doubling precision until the enclosure excludes zero.
pub(crate) fn refine_sign(mut eval: impl FnMut(u32) -> Enclosure, limits: &Limits) -> Option<Ordering> {
    let mut bits = limits.prec_start.max(16);
    loop {
        let enc = eval(bits);
        if let Some(s) = enc.sign() {
            if s != Ordering::Equal {
                return Some(s);
            }
        }
        if bits >= limits.prec_cap {
            return None;
        }
        bits = bits.saturating_mul(2).min(limits.prec_cap);
    }
}

/// Enclosure of `exp(v)` for every `v` in `arg`, at `arg`'s scale.
pub fn exp_enclosure(arg: &Enclosure) -> Enclosure {
    let scale = arg.scale;
    let lo = exp_bound(&arg.lower(), scale, false);
    let hi = exp_bound(&arg.upper(), scale, true);
    Enclosure { lo, hi, scale }
}

/// Lower (or upper) bound of `exp(r) * 2^scale` as an integer.
fn exp_bound(r: &Rational, scale: u32, upper: bool) -> BigInt {
    let half = Rational::new(1.into(), 2.into());
    let mut y = r.clone();
    let mut halvings = 0u32;
    while y.abs() > half {
        y /= Rational::from_integer(2.into());
        halvings += 1;
    }
    // log2(e^|r|) < 1.45 |r| + 1 extra bits of magnitude
    let growth = (r.abs().to_f64().unwrap_or(0.0) * 1.45).ceil() as u32 + 1;
    let work = scale + halvings + growth + 16;

    // Taylor series of e^y with |y| <= 1/2: the tail after term N is at most 2 |t_{N+1}|.
    let tol = Rational::new(BigInt::one(), BigInt::one() << (work + 2));
    let mut sum = Rational::zero();
    let mut term = Rational::one();
    let mut i = 0u32;
    loop {
        sum += &term;
        i += 1;
        term = term * &y / Rational::from_integer(i.into());
        if term.abs() * Rational::from_integer(2.into()) <= tol {
            break;
        }
    }
    let tail = term.abs() * Rational::from_integer(2.into());
    let bound = if upper { sum + tail } else { sum - tail };
    let unit = BigInt::one() << work;
    let scaled = bound * Rational::from_integer(unit);
    let mut v = if upper { scaled.ceil().to_integer() } else { scaled.floor().to_integer() };

    for _ in 0..halvings {
        let sq = &v * &v;
        v = if upper { ceil_shr(&sq, work) } else { sq >> work };
    }
    let d = work - scale;
    if upper {
        ceil_shr(&v, d)
    } else {
        v >> d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radical::tests::root;
    use num_integer::Roots;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn sqrt2_at_64_bits() {
        let e = root(2, 2).evaluate(64);
        assert!(e.meets_precision(64));
        // integer square root oracle: isqrt(2 * 4^70) / 2^70
        let n: BigInt = BigInt::from(2) << 140;
        let s: BigInt = Roots::sqrt(&n);
        let lo = Rational::new(s.clone(), BigInt::one() << 70);
        let hi = Rational::new(s + 1u32, BigInt::one() << 70);
        assert!(e.lower() <= hi && e.upper() >= lo);
        assert!(e.lower() > q(141421356, 100000000) && e.upper() < q(141421357, 100000000));
    }

    #[test]
    fn rational_enclosure_contains_value() {
        for bits in [16, 53, 200] {
            let e = RadicalNumber::from_rational(q(1, 3)).evaluate(bits);
            assert!(e.contains(&q(1, 3)));
            assert!(e.meets_precision(bits));
        }
    }

    #[test]
    fn negative_radical_enclosure() {
        // -(2/3) * 48^(1/6) = -1.2709123906625820983... (mpmath, 40 digits)
        let x = RadicalNumber::prime_power(&2.into(), 2, 3, q(-2, 3)).unwrap()
            * RadicalNumber::prime_power(&3.into(), 1, 6, Rational::one()).unwrap();
        let e = x.evaluate(100);
        assert!(e.upper() < q(-1270912390662582, 10i64.pow(15)) && e.lower() > q(-1270912390662583, 10i64.pow(15)));
        // cube of (48^(1/6))^6 == 48 brackets
        let above = num_traits::pow(e.lower() * q(-3, 2), 6);
        let below = num_traits::pow(e.upper() * q(-3, 2), 6);
        assert!(below <= Rational::from_integer(48.into()) && above >= Rational::from_integer(48.into()));
    }

    #[test]
    fn exp_matches_known_digits() {
        let e = exp_enclosure(&Enclosure::exact_integer(BigInt::one(), 80));
        // e = 2.718281828459045235360287...
        assert!(e.lower() > q(2718281828459045, 1_000_000_000_000_000));
        assert!(e.upper() < q(2718281828459046, 1_000_000_000_000_000));
        let z = exp_enclosure(&Enclosure::zero(40));
        assert!(z.contains(&Rational::one()));
        let m = exp_enclosure(&Enclosure::from_rational(&q(-5, 2), 60));
        // e^-2.5 = 0.0820849986238988
        assert!(m.lower() > q(820849986, 10_000_000_000) && m.upper() < q(820849987, 10_000_000_000));
    }
}
