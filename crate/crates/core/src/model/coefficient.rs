use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::numeric::Rational;
use crate::radical::{exp_enclosure, Enclosure, RadicalNumber};

/// `sum_k exp(alpha_k) * v_k` with radical exponents and values.
///
/// The group with `alpha = 0` is the plain radical part. Group values are never
/// zero and exponents are canonical, so structural equality is value equality
/// whenever the exponents' exponentials are independent.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coefficient {
    groups: BTreeMap<RadicalNumber, RadicalNumber>,
}

impl Coefficient {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_radical(RadicalNumber::one())
    }

    pub fn from_radical(value: RadicalNumber) -> Self {
        Self::exp_term(RadicalNumber::zero(), value)
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::from_radical(RadicalNumber::from_rational(r))
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_radical(RadicalNumber::from_integer(n))
    }

    /// `exp(alpha) * value`.
    pub fn exp_term(alpha: RadicalNumber, value: RadicalNumber) -> Self {
        let mut groups = BTreeMap::new();
        if !value.is_zero() {
            groups.insert(alpha.canonical().into_owned(), value.canonical().into_owned());
        }
        Coefficient { groups }
    }

    /// Groups in exponent order; the zero exponent, if present, is the one with
    /// `alpha.is_zero()`.
    pub fn groups(&self) -> impl Iterator<Item = (&RadicalNumber, &RadicalNumber)> {
        self.groups.iter()
    }

    pub fn num_groups(&self) -> usize {
        self.groups.len()
    }

    pub fn group(&self, alpha: &RadicalNumber) -> Option<&RadicalNumber> {
        self.groups.get(alpha)
    }

    /// The `alpha = 0` group, or zero.
    pub fn radical_part(&self) -> RadicalNumber {
        self.groups.get(&RadicalNumber::zero()).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn has_exp(&self) -> bool {
        self.groups.keys().any(|a| !a.is_zero())
    }

    pub fn as_radical(&self) -> Option<RadicalNumber> {
        (!self.has_exp()).then(|| self.radical_part())
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.as_radical().and_then(|r| r.as_rational())
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        let mut groups = self.groups.clone();
        for (a, v) in &other.groups {
            add_group(&mut groups, a.clone(), v.clone());
        }
        Coefficient { groups }
    }

    pub fn neg_ref(&self) -> Self {
        let groups = self.groups.iter().map(|(a, v)| (a.clone(), v.neg_ref())).collect();
        Coefficient { groups }
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    /// `exp(a) * exp(b) = exp(a + b)`.
    pub fn mul_ref(&self, other: &Self) -> Self {
        let mut groups = BTreeMap::new();
        for (a, v) in &self.groups {
            for (b, w) in &other.groups {
                add_group(&mut groups, a.add_ref(b), v.mul_ref(w));
            }
        }
        Coefficient { groups }
    }

    pub fn scale(&self, r: &RadicalNumber) -> Self {
        self.mul_ref(&Coefficient::from_radical(r.clone()))
    }

    /// Inverse of a single-group coefficient `exp(a) * v`, namely `exp(-a) / v`.
    pub fn invert(&self, limits: &Limits) -> Result<Self> {
        match self.groups.len() {
            0 => Err(Error::Domain("division by zero".into())),
            1 => {
                let (a, v) = self.groups.iter().next().unwrap();
                Ok(Coefficient::exp_term(a.neg_ref(), v.invert(limits)?))
            }
            _ => Err(Error::Unsupported(format!("division by a sum of exponentials {self}"))),
        }
    }

    /// Enclosure of the value, tightening as `bits` grows.
    pub fn enclose(&self, bits: u32) -> Enclosure {
        let scale = bits + 16;
        let mut sum = Enclosure::zero(scale);
        for (a, v) in &self.groups {
            let val = v.evaluate(bits + 8).rescale(scale);
            let term = if a.is_zero() {
                val
            } else {
                exp_enclosure(&a.evaluate(bits + 8).rescale(scale)).mul(&val)
            };
            sum = sum.add(&term);
        }
        sum
    }

    /// Exact sign. Zero only when every group vanishes; exponentials of distinct
    /// algebraic numbers are linearly independent over the algebraic numbers, so
    /// refinement of a nonzero value terminates.
    pub fn sign(&self, limits: &Limits) -> Result<Ordering> {
        if self.is_zero() {
            return Ok(Ordering::Equal);
        }
        if let Some(r) = self.as_radical() {
            return r.sign(limits);
        }
        if let Some(r) = self.as_rational() {
            return Ok(if r.is_positive() { Ordering::Greater } else { Ordering::Less });
        }
        crate::radical::refine_sign_with(|p| self.enclose(p), limits)
            .ok_or_else(|| Error::Resource(format!("sign of {self} undecided at {} bits", limits.prec_cap)))
    }

    /// Whether the radical form is a single monomial (so it can be printed
    /// without parentheses after extracting its sign).
    pub(crate) fn single_monomial(&self) -> Option<RadicalNumber> {
        self.as_radical().filter(|r| r.num_terms() == 1)
    }
}

fn add_group(groups: &mut BTreeMap<RadicalNumber, RadicalNumber>, alpha: RadicalNumber, v: RadicalNumber) {
    use std::collections::btree_map::Entry;
    let alpha = alpha.canonical().into_owned();
    match groups.entry(alpha) {
        Entry::Vacant(e) => {
            if !v.is_zero() {
                e.insert(v);
            }
        }
        Entry::Occupied(mut e) => {
            let s = e.get().add_ref(&v);
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

impl From<RadicalNumber> for Coefficient {
    fn from(r: RadicalNumber) -> Self {
        Coefficient::from_radical(r)
    }
}

impl From<Rational> for Coefficient {
    fn from(r: Rational) -> Self {
        Coefficient::from_rational(r)
    }
}

/// Parseable text: `v`, or `exp(a) * (v) + ...` when exponentials are present.
impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.groups.is_empty() {
            return f.write_str("0");
        }
        if let Some(r) = self.as_radical() {
            return write!(f, "{r}");
        }
        for (i, (a, v)) in self.groups.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if a.is_zero() {
                write!(f, "({v})")?;
            } else if v.is_one() {
                write!(f, "exp({a})")?;
            } else {
                write!(f, "exp({a}) * ({v})")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt(p: i64) -> RadicalNumber {
        RadicalNumber::prime_power(&p.into(), 1, 2, Rational::from_integer(1.into())).unwrap()
    }

    #[test]
    fn exp_groups_multiply_by_adding_exponents() {
        let a = Coefficient::exp_term(sqrt(2), RadicalNumber::from_integer(3));
        let b = Coefficient::exp_term(sqrt(2).neg_ref(), RadicalNumber::from_integer(2));
        assert_eq!(a.mul_ref(&b), Coefficient::from_integer(6));
        let l = Limits::default();
        assert_eq!(a.invert(&l).unwrap().mul_ref(&a), Coefficient::one());
    }

    #[test]
    fn sign_with_exponentials() {
        let l = Limits::default();
        // e^sqrt2 - 4 > 0 since e^1.414 = 4.11
        let c = Coefficient::exp_term(sqrt(2), RadicalNumber::one()).sub_ref(&Coefficient::from_integer(4));
        assert_eq!(c.sign(&l).unwrap(), Ordering::Greater);
        // e^sqrt3 - e^sqrt2 * 1.4 : 5.652 - 5.758 < 0
        let d = Coefficient::exp_term(sqrt(3), RadicalNumber::one()).sub_ref(&Coefficient::exp_term(
            sqrt(2),
            RadicalNumber::from_rational(Rational::new(7.into(), 5.into())),
        ));
        assert_eq!(d.sign(&l).unwrap(), Ordering::Less);
    }

    #[test]
    fn display_groups() {
        let c = Coefficient::exp_term(sqrt(2), RadicalNumber::one())
            .add_ref(&Coefficient::exp_term(sqrt(3), RadicalNumber::from_integer(-2)));
        assert_eq!(c.to_string(), "exp((2)^(1/2)) + exp((3)^(1/2)) * (-2)");
    }
}
