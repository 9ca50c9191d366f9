//! Exact arithmetic in `Q[p_1^(1/q_1), ..., p_m^(1/q_m)]` for distinct primes `p_i`.
//!
//! Every element is stored in the monomial basis `prod p_i^(k_i/q_i)` with
//! `0 <= k_i < q_i`. Because these monomials are linearly independent over Q,
//! the coordinates are unique in a fixed basis, and zero testing is a check for
//! an empty coefficient map. Results of arithmetic are always reduced to the
//! smallest basis that still expresses them, which makes the representation
//! canonical across bases too.

mod expr;
mod interval;
mod invert;

use std::borrow::Cow;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::numeric::{is_probable_prime, Rational};

pub use expr::{canonicalize, RadicalExpr};
pub use interval::{exp_enclosure, Enclosure};
pub(crate) use expr::power;
pub(crate) use interval::refine_sign as refine_sign_with;

/// One generator `prime^(1/degree)` of the field.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Root {
    pub prime: BigInt,
    pub degree: u32,
}

/// Ordered list of generators with strictly increasing, distinct primes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct RadicalBasis {
    roots: Arc<[Root]>,
}

impl RadicalBasis {
    pub fn new(roots: Vec<Root>) -> Result<Self> {
        for r in &roots {
            if r.degree < 2 {
                return Err(Error::Domain(format!("root degree {} of {} is below 2", r.degree, r.prime)));
            }
            if !is_probable_prime(&r.prime) {
                return Err(Error::Domain(format!("basis radicand {} is not prime", r.prime)));
            }
        }
        if roots.windows(2).any(|w| w[0].prime >= w[1].prime) {
            return Err(Error::Domain("basis primes must be strictly increasing".into()));
        }
        Ok(Self::from_sorted(roots))
    }

    pub(crate) fn from_sorted(roots: Vec<Root>) -> Self {
        RadicalBasis { roots: roots.into() }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// `prod q_i`, or `None` on overflow.
    pub fn dimension(&self) -> Option<usize> {
        self.roots
            .iter()
            .try_fold(1usize, |acc, r| acc.checked_mul(r.degree as usize))
    }

    pub(crate) fn check_dimension(&self, limits: &Limits) -> Result<usize> {
        match self.dimension() {
            Some(d) if d <= limits.dim_cap => Ok(d),
            _ => Err(Error::Resource(format!(
                "basis {} has dimension above the cap of {}",
                self, limits.dim_cap
            ))),
        }
    }

    /// Smallest basis containing both: per-prime degree is the lcm.
    pub fn union(&self, other: &RadicalBasis) -> RadicalBasis {
        if self == other {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (self.roots(), other.roots());
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.prime.cmp(&y.prime),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push(Root { prime: a[i].prime.clone(), degree: a[i].degree.lcm(&b[j].degree) });
                    i += 1;
                    j += 1;
                }
            }
        }
        RadicalBasis::from_sorted(out)
    }

    fn index_of(&self, prime: &BigInt) -> Option<usize> {
        self.roots.binary_search_by(|r| r.prime.cmp(prime)).ok()
    }

    /// Whether every generator of `self` is expressible in `other`.
    pub fn embeds_in(&self, other: &RadicalBasis) -> bool {
        self.roots.iter().all(|r| match other.index_of(&r.prime) {
            Some(i) => other.roots[i].degree % r.degree == 0,
            None => false,
        })
    }
}

impl fmt::Display for RadicalBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, r) in self.roots.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({}, {})", r.prime, r.degree)?;
        }
        f.write_str("}")
    }
}

/// Exponent tuple `(k_1, ..., k_m)` aligned with a basis, `0 <= k_i < q_i`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(len: usize) -> Self {
        Monomial(vec![0; len])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&k| k == 0)
    }
}

pub(crate) type Terms = BTreeMap<Monomial, Rational>;

/// An element of a radical extension in canonical monomial coordinates.
#[derive(Clone, Default)]
pub struct RadicalNumber {
    basis: RadicalBasis,
    terms: Terms,
}

impl RadicalNumber {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        let mut terms = Terms::new();
        if !r.is_zero() {
            terms.insert(Monomial::one(0), r);
        }
        RadicalNumber { basis: RadicalBasis::empty(), terms }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    /// `coefficient * prime^(exponent/degree)`, reduced to canonical form.
    pub fn prime_power(prime: &BigInt, exponent: u64, degree: u32, coefficient: Rational) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Domain("root degree 0".into()));
        }
        let whole = exponent / degree as u64;
        let k = (exponent % degree as u64) as u32;
        let c = coefficient * Rational::from_integer(num_traits::pow(prime.clone(), whole as usize));
        if k == 0 {
            return Ok(Self::from_rational(c));
        }
        let basis = RadicalBasis::new(vec![Root { prime: prime.clone(), degree }])?;
        let mut terms = Terms::new();
        if !c.is_zero() {
            terms.insert(Monomial(vec![k]), c);
        }
        Ok(Self::normalized(basis, terms))
    }

    /// Build from coordinates in `basis`; exponents must satisfy `k_i < q_i`.
    pub fn from_coordinates(
        basis: RadicalBasis,
        coords: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Result<Self> {
        let mut terms = Terms::new();
        for (m, c) in coords {
            if m.0.len() != basis.len() || m.0.iter().zip(basis.roots()).any(|(k, r)| *k >= r.degree) {
                return Err(Error::Domain(format!("monomial {:?} does not fit basis {basis}", m.0)));
            }
            add_into(&mut terms, m, c);
        }
        Ok(Self::normalized(basis, terms))
    }

    pub fn basis(&self) -> &RadicalBasis {
        &self.basis
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficient of the all-zeros monomial.
    pub fn rational_part(&self) -> Rational {
        self.coefficient(&Monomial::one(self.basis.len()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.rational_part())
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_one())
    }

    /// Whether `basis` is the smallest basis expressing this value.
    pub fn is_normalized(&self) -> bool {
        (0..self.basis.len()).all(|i| {
            let q = self.basis.roots[i].degree;
            let g = self.terms.keys().fold(q, |g, m| g.gcd(&m.0[i]));
            g == 1
        })
    }

    /// Canonical (minimal-basis) form.
    pub fn canonical(&self) -> Cow<'_, Self> {
        if self.is_normalized() {
            Cow::Borrowed(self)
        } else {
            Cow::Owned(Self::normalized(self.basis.clone(), self.terms.clone()))
        }
    }

    /// Coordinates of `self` re-expressed in a basis that contains its own.
    pub fn in_basis(&self, target: &RadicalBasis) -> Result<Self> {
        if !self.basis.embeds_in(target) {
            return Err(Error::Domain(format!("{} does not embed in {}", self.basis, target)));
        }
        Ok(RadicalNumber { basis: target.clone(), terms: recoordinatize(&self.terms, &self.basis, target) })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let terms = self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect();
        RadicalNumber { basis: self.basis.clone(), terms }
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        let (basis, mut a, b) = align(self, other);
        for (m, c) in b.into_owned() {
            add_into(&mut a, m, c);
        }
        Self::normalized(basis, a)
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    pub fn neg_ref(&self) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        RadicalNumber { basis: self.basis.clone(), terms }
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if let Some(r) = self.as_rational() {
            return other.scale(&r);
        }
        if let Some(r) = other.as_rational() {
            return self.scale(&r);
        }
        let (basis, a, b) = align(self, other);
        let prod = mul_terms(&basis, &a, &b);
        Self::normalized(basis, prod)
    }

    /// Exact multiplicative inverse. Fails on zero or when the basis dimension
    /// exceeds `limits.dim_cap`.
    pub fn invert(&self, limits: &Limits) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Domain("inverse of zero".into()));
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(r.recip()));
        }
        self.basis.check_dimension(limits)?;
        let inv = invert::invert_terms(&self.basis, &self.terms);
        Ok(Self::normalized(self.basis.clone(), inv))
    }

    pub fn div(&self, other: &Self, limits: &Limits) -> Result<Self> {
        Ok(self.mul_ref(&other.invert(limits)?))
    }

    /// Integer power; negative exponents go through `invert`.
    pub fn pow(&self, e: i64, limits: &Limits) -> Result<Self> {
        let base = if e < 0 { self.invert(limits)? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul_ref(&sq);
            }
        }
        Ok(acc)
    }

    /// Guaranteed enclosure of the value with relative width at most
    /// `2^(1 - precision_bits)`.
    pub fn evaluate(&self, precision_bits: u32) -> Enclosure {
        interval::evaluate(self, precision_bits.max(16))
    }

    /// Exact sign. Zero is decided from the canonical form; otherwise the value
    /// is enclosed at doubling precision until the enclosure excludes zero.
    pub fn sign(&self, limits: &Limits) -> Result<Ordering> {
        if self.is_zero() {
            return Ok(Ordering::Equal);
        }
        if let Some(r) = self.as_rational() {
            return Ok(if r.is_positive() { Ordering::Greater } else { Ordering::Less });
        }
        interval::refine_sign(|p| self.evaluate(p), limits)
            .ok_or_else(|| Error::Resource(format!("sign of {self} undecided at {} bits", limits.prec_cap)))
    }

    pub fn to_f64(&self) -> f64 {
        self.evaluate(64).midpoint_f64()
    }

    /// Reduce `terms` (valid in `basis`) to the minimal basis.
    pub(crate) fn normalized(basis: RadicalBasis, mut terms: Terms) -> Self {
        terms.retain(|_, c| !c.is_zero());
        let mut keep = Vec::new();
        let mut divisors = Vec::new();
        let mut changed = false;
        for (i, root) in basis.roots().iter().enumerate() {
            let g = terms.keys().fold(root.degree, |g, m| g.gcd(&m.0[i]));
            if g == root.degree {
                changed = true;
                continue;
            }
            if g != 1 {
                changed = true;
            }
            keep.push(i);
            divisors.push(g);
        }
        if !changed {
            return RadicalNumber { basis, terms };
        }
        let roots = keep
            .iter()
            .zip(&divisors)
            .map(|(&i, &g)| Root { prime: basis.roots[i].prime.clone(), degree: basis.roots[i].degree / g })
            .collect();
        let terms = terms
            .into_iter()
            .map(|(m, c)| {
                let ks = keep.iter().zip(&divisors).map(|(&i, &g)| m.0[i] / g).collect();
                (Monomial(ks), c)
            })
            .collect();
        RadicalNumber { basis: RadicalBasis::from_sorted(roots), terms }
    }
}

/// Put `xs` over a common basis: per-prime degree is the lcm of the degrees
/// used for that prime. Values are unchanged; the outputs are expressed in the
/// common basis rather than their own minimal ones.
pub fn unify_bases(xs: &[RadicalNumber], limits: &Limits) -> Result<(RadicalBasis, Vec<RadicalNumber>)> {
    let basis = xs.iter().fold(RadicalBasis::empty(), |b, x| b.union(x.basis()));
    basis.check_dimension(limits)?;
    let out = xs
        .iter()
        .map(|x| RadicalNumber { basis: basis.clone(), terms: recoordinatize(&x.terms, &x.basis, &basis) })
        .collect();
    Ok((basis, out))
}

fn add_into(terms: &mut Terms, m: Monomial, c: Rational) {
    use std::collections::btree_map::Entry;
    match terms.entry(m) {
        Entry::Vacant(e) => {
            if !c.is_zero() {
                e.insert(c);
            }
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

fn recoordinatize(terms: &Terms, from: &RadicalBasis, to: &RadicalBasis) -> Terms {
    if from == to {
        return terms.clone();
    }
    let map: Vec<(usize, u32)> = from
        .roots()
        .iter()
        .map(|r| {
            let j = to.index_of(&r.prime).expect("target basis covers source");
            (j, to.roots[j].degree / r.degree)
        })
        .collect();
    terms
        .iter()
        .map(|(m, c)| {
            let mut ks = vec![0u32; to.len()];
            for (k, &(j, f)) in m.0.iter().zip(&map) {
                ks[j] = k * f;
            }
            (Monomial(ks), c.clone())
        })
        .collect()
}

fn align<'a>(x: &'a RadicalNumber, y: &'a RadicalNumber) -> (RadicalBasis, Terms, Cow<'a, Terms>) {
    if x.basis == y.basis {
        return (x.basis.clone(), x.terms.clone(), Cow::Borrowed(&y.terms));
    }
    let basis = x.basis.union(&y.basis);
    let a = recoordinatize(&x.terms, &x.basis, &basis);
    let b = recoordinatize(&y.terms, &y.basis, &basis);
    (basis, a, Cow::Owned(b))
}

/// Product in a fixed basis. Exponents wrap modulo `q_i`, and each wrap pulls
/// a factor `p_i` into the rational coefficient.
pub(crate) fn mul_terms(basis: &RadicalBasis, a: &Terms, b: &Terms) -> Terms {
    let mut out = Terms::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let mut c = ca * cb;
            let mut ks = Vec::with_capacity(basis.len());
            for (i, root) in basis.roots().iter().enumerate() {
                let mut k = ma.0[i] + mb.0[i];
                if k >= root.degree {
                    k -= root.degree;
                    c *= Rational::from_integer(root.prime.clone());
                }
                ks.push(k);
            }
            add_into(&mut out, Monomial(ks), c);
        }
    }
    out
}

pub(crate) fn add_terms(a: &mut Terms, b: &Terms) {
    for (m, c) in b {
        add_into(a, m.clone(), c.clone());
    }
}

impl PartialEq for RadicalNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.basis == other.basis {
            return self.terms == other.terms;
        }
        let (a, b) = (self.canonical(), other.canonical());
        a.basis == b.basis && a.terms == b.terms
    }
}

impl Eq for RadicalNumber {}

impl Ord for RadicalNumber {
    /// Structural order on canonical forms; not the numeric order.
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (self.canonical(), other.canonical());
        a.basis.cmp(&b.basis).then_with(|| a.terms.iter().cmp(b.terms.iter()))
    }
}

impl PartialOrd for RadicalNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Hash for RadicalNumber {
    fn hash<H: Hasher>(&self, state: &mut H) {
        let c = self.canonical();
        c.basis.hash(state);
        c.terms.hash(state);
    }
}

impl From<Rational> for RadicalNumber {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl From<i64> for RadicalNumber {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl Add for &RadicalNumber {
    type Output = RadicalNumber;
    fn add(self, rhs: Self) -> RadicalNumber {
        self.add_ref(rhs)
    }
}

impl Sub for &RadicalNumber {
    type Output = RadicalNumber;
    fn sub(self, rhs: Self) -> RadicalNumber {
        self.sub_ref(rhs)
    }
}

impl Mul for &RadicalNumber {
    type Output = RadicalNumber;
    fn mul(self, rhs: Self) -> RadicalNumber {
        self.mul_ref(rhs)
    }
}

impl Neg for &RadicalNumber {
    type Output = RadicalNumber;
    fn neg(self) -> RadicalNumber {
        self.neg_ref()
    }
}

impl Add for RadicalNumber {
    type Output = RadicalNumber;
    fn add(self, rhs: Self) -> RadicalNumber {
        self.add_ref(&rhs)
    }
}

impl Sub for RadicalNumber {
    type Output = RadicalNumber;
    fn sub(self, rhs: Self) -> RadicalNumber {
        self.sub_ref(&rhs)
    }
}

impl Mul for RadicalNumber {
    type Output = RadicalNumber;
    fn mul(self, rhs: Self) -> RadicalNumber {
        self.mul_ref(&rhs)
    }
}

impl Neg for RadicalNumber {
    type Output = RadicalNumber;
    fn neg(self) -> RadicalNumber {
        self.neg_ref()
    }
}

impl fmt::Debug for RadicalNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RadicalNumber({self})")
    }
}

/// Renders `c * (p)^(k/q) * ...` terms joined by `+`/`-`; the output parses
/// back through the model expression grammar.
impl fmt::Display for RadicalNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (idx, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            let factors: Vec<String> = m
                .0
                .iter()
                .zip(self.basis.roots())
                .filter(|(k, _)| **k != 0)
                .map(|(&k, r)| {
                    let g = k.gcd(&r.degree);
                    format!("({})^({}/{})", r.prime, k / g, r.degree / g)
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag} * ")?;
                }
                f.write_str(&factors.join(" * "))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    pub(crate) fn root(p: i64, deg: u32) -> RadicalNumber {
        RadicalNumber::prime_power(&BigInt::from(p), 1, deg, Rational::one()).unwrap()
    }

    fn sqrt2() -> RadicalNumber {
        root(2, 2)
    }

    #[test]
    fn multiply_examples() {
        let one = RadicalNumber::one();
        let a = &one + &sqrt2();
        let b = &RadicalNumber::from_integer(3) - &sqrt2().scale(&q(2, 1));
        let expect = &RadicalNumber::from_integer(-1) + &sqrt2();
        assert_eq!(&a * &b, expect);
        assert_eq!(&sqrt2() * &sqrt2(), RadicalNumber::from_integer(2));
        let x = &a * &sqrt2();
        assert!((&x + &(-&x)).is_zero());
    }

    #[test]
    fn zero_and_rational_tests() {
        assert!((&sqrt2() - &sqrt2()).is_zero());
        let r = RadicalNumber::from_rational(q(5, 3));
        assert!(r.is_rational());
        let x = &RadicalNumber::one() + &sqrt2();
        assert!(!x.is_zero());
        assert!(!x.is_rational());
    }

    #[test]
    fn unify_examples() {
        let l = Limits::default();
        let (b, xs) = unify_bases(&[root(2, 3), root(2, 4)], &l).unwrap();
        assert_eq!(b.roots(), &[Root { prime: 2.into(), degree: 12 }]);
        assert_eq!(xs[0].terms().collect::<Vec<_>>(), vec![(&Monomial(vec![4]), &Rational::one())]);
        assert_eq!(xs[1].terms().collect::<Vec<_>>(), vec![(&Monomial(vec![3]), &Rational::one())]);
        // values unchanged
        assert_eq!(xs[0], root(2, 3));
        assert_eq!(xs[1], root(2, 4));

        let (b, xs) = unify_bases(&[sqrt2(), sqrt2()], &l).unwrap();
        assert_eq!(b.roots(), &[Root { prime: 2.into(), degree: 2 }]);
        assert_eq!(xs[0].basis(), sqrt2().basis());

        let (b, xs) = unify_bases(&[sqrt2(), root(3, 3)], &l).unwrap();
        assert_eq!(
            b.roots(),
            &[Root { prime: 2.into(), degree: 2 }, Root { prime: 3.into(), degree: 3 }]
        );
        assert_eq!(xs[0].terms().next().unwrap().0, &Monomial(vec![1, 0]));
        assert_eq!(xs[1].terms().next().unwrap().0, &Monomial(vec![0, 1]));
    }

    #[test]
    fn unify_respects_dimension_cap() {
        let l = Limits { dim_cap: 10, ..Limits::default() };
        assert!(matches!(unify_bases(&[root(2, 4), root(3, 3)], &l), Err(Error::Resource(_))));
    }

    #[test]
    fn invert_examples() {
        let l = Limits::default();
        let x = &RadicalNumber::one() + &sqrt2();
        let inv = x.invert(&l).unwrap();
        assert_eq!(inv, &RadicalNumber::from_integer(-1) + &sqrt2());
        assert!((&x * &inv).is_one());

        let r = RadicalNumber::from_rational(q(3, 4));
        assert_eq!(r.invert(&l).unwrap(), RadicalNumber::from_rational(q(4, 3)));

        let c = root(2, 3);
        let expect = RadicalNumber::prime_power(&2.into(), 2, 3, q(1, 2)).unwrap();
        assert_eq!(c.invert(&l).unwrap(), expect);
        assert!((&c * &expect).is_one());

        assert!(matches!(RadicalNumber::zero().invert(&l), Err(Error::Domain(_))));
    }

    #[test]
    fn invert_respects_dimension_cap() {
        let l = Limits { dim_cap: 4, ..Limits::default() };
        let x = &root(2, 3) + &root(3, 2);
        assert!(matches!(x.invert(&l), Err(Error::Resource(_))));
    }

    #[test]
    fn normalization_shrinks_basis() {
        // (12th root of 2)^6 is sqrt 2.
        let b = RadicalBasis::new(vec![Root { prime: 2.into(), degree: 12 }]).unwrap();
        let x = RadicalNumber::from_coordinates(b, [(Monomial(vec![6]), Rational::one())]).unwrap();
        assert_eq!(x.basis(), sqrt2().basis());
        assert_eq!(x, sqrt2());
    }

    #[test]
    fn basis_validation() {
        assert!(RadicalBasis::new(vec![Root { prime: 4.into(), degree: 2 }]).is_err());
        assert!(RadicalBasis::new(vec![Root { prime: 2.into(), degree: 1 }]).is_err());
        assert!(RadicalBasis::new(vec![
            Root { prime: 3.into(), degree: 2 },
            Root { prime: 2.into(), degree: 2 }
        ])
        .is_err());
    }

    #[test]
    fn sign_examples() {
        let l = Limits::default();
        assert_eq!((&sqrt2() - &RadicalNumber::from_rational(q(7, 5))).sign(&l).unwrap(), Ordering::Greater);
        assert_eq!(RadicalNumber::zero().sign(&l).unwrap(), Ordering::Equal);
        assert_eq!((&RadicalNumber::one() - &sqrt2()).sign(&l).unwrap(), Ordering::Less);
    }

    #[test]
    fn sign_cap_is_a_resource_error() {
        // continued-fraction convergent: sqrt2 - p/q is about -4.07e-17, invisible at 32 bits
        let l = Limits { prec_start: 16, prec_cap: 32, ..Limits::default() };
        let x = &sqrt2() - &RadicalNumber::from_rational(q(131836323, 93222358));
        assert!(matches!(x.sign(&l), Err(Error::Resource(_))));
        assert_eq!(x.sign(&Limits::default()).unwrap(), Ordering::Less);
    }

    #[test]
    fn display_forms() {
        let x = RadicalNumber::prime_power(&2.into(), 2, 3, Rational::one()).unwrap();
        let y = RadicalNumber::prime_power(&3.into(), 1, 6, Rational::one()).unwrap();
        assert_eq!((&x * &y).to_string(), "(2)^(2/3) * (3)^(1/6)");
        let z = &RadicalNumber::from_integer(1) - &sqrt2().scale(&q(2, 3));
        assert_eq!(z.to_string(), "1 - 2/3 * (2)^(1/2)");
        assert_eq!(RadicalNumber::zero().to_string(), "0");
        assert_eq!((-&sqrt2()).to_string(), "-(2)^(1/2)");
    }
}
