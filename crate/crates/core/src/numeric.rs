//! Exact integers, rationals and the number theory the radical field needs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::limits::Limits;

pub use num_bigint::BigInt as Int;

/// Reduced fraction with positive denominator; zero is `0/1`.
pub type Rational = num_rational::BigRational;

/// Canonical prime factorization: primes strictly increasing, exponents >= 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeFactorization {
    factors: Vec<(BigInt, u32)>,
}

impl PrimeFactorization {
    pub fn factors(&self) -> &[(BigInt, u32)] {
        &self.factors
    }

    pub fn product(&self) -> BigInt {
        self.factors
            .iter()
            .fold(BigInt::one(), |acc, (p, e)| acc * num_traits::pow(p.clone(), *e as usize))
    }
}

/// Nonnegative greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

/// Factorize `n >= 2` by trial division followed by Pollard-rho (Brent variant)
/// on the cofactor, both bounded by `limits`.
pub fn factorize(n: &BigInt, limits: &Limits) -> Result<PrimeFactorization> {
    if *n < BigInt::from(2) {
        return Err(Error::Domain(format!("cannot factorize {n}: need n >= 2")));
    }
    let mut primes: Vec<BigInt> = Vec::new();
    let mut rest = n.clone();

    let two = BigInt::from(2);
    while rest.is_even() {
        primes.push(two.clone());
        rest >>= 1;
    }
    let mut d = 3u64;
    while d < limits.trial_bound {
        let dd = BigInt::from(d);
        if &dd * &dd > rest {
            break;
        }
        while (&rest % &dd).is_zero() {
            primes.push(dd.clone());
            rest /= &dd;
        }
        d += 2;
    }

    if rest > BigInt::one() {
        let mut stack = vec![rest];
        while let Some(m) = stack.pop() {
            if m.is_one() {
                continue;
            }
            if is_probable_prime(&m) {
                primes.push(m);
                continue;
            }
            if let Some(r) = integer_root(&m, 2) {
                stack.push(r.clone());
                stack.push(r);
                continue;
            }
            let f = pollard_rho(&m, limits)?;
            let g = &m / &f;
            stack.push(f);
            stack.push(g);
        }
    }

    primes.sort();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    for p in primes {
        match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        }
    }
    Ok(PrimeFactorization { factors })
}

/// Exact k-th root: `Some(r)` with `r^k = n`, or `None` when `n^(1/k)` is irrational.
pub fn integer_root(n: &BigInt, k: u32) -> Option<BigInt> {
    assert!(k >= 1, "root degree must be positive");
    if n.is_negative() {
        return None;
    }
    let r = n.nth_root(k);
    if num_traits::pow(r.clone(), k as usize) == *n {
        Some(r)
    } else {
        None
    }
}

/// `floor(n^(1/k))` for `n >= 0`.
pub fn floor_root(n: &BigInt, k: u32) -> BigInt {
    debug_assert!(!n.is_negative());
    n.nth_root(k)
}

const WITNESSES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Miller-Rabin over the first 13 prime bases: deterministic below 3.3e24,
/// overwhelmingly reliable above.
pub fn is_probable_prime(n: &BigInt) -> bool {
    if *n < BigInt::from(2) {
        return false;
    }
    for &w in &WITNESSES {
        let w = BigInt::from(w);
        if *n == w {
            return true;
        }
        if (n % &w).is_zero() {
            return false;
        }
    }
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for &w in &WITNESSES {
        let mut x = BigInt::from(w).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: &BigInt, limits: &Limits) -> Result<BigInt> {
    let mut spent = 0u64;
    for c in 1u32.. {
        let c = BigInt::from(c);
        let f = |x: &BigInt| (x * x + &c) % n;
        let (mut x, mut y, mut g) = (BigInt::from(2), BigInt::from(2), BigInt::one());
        let mut q = BigInt::one();
        let mut r = 1u64;
        let mut ys = y.clone();
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0u64;
            while k < r && g.is_one() {
                ys = y.clone();
                let batch = 128.min(r - k);
                for _ in 0..batch {
                    y = f(&y);
                    q = (q * (&x - &y).abs()) % n;
                }
                g = q.gcd(n);
                k += batch;
                spent += batch;
                if spent > limits.rho_budget {
                    return Err(Error::Resource(format!(
                        "factorization of {n} exceeded the Pollard-rho budget of {} iterations",
                        limits.rho_budget
                    )));
                }
            }
            r *= 2;
        }
        if g == *n {
            // Batched gcd overshot; back up one step at a time.
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if g != *n {
            return Ok(g);
        }
    }
    unreachable!()
}

/// Parse `"p"` or `"p/q"` (optional leading sign) into a reduced rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Domain(format!("malformed rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Domain(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

/// `p` for integers, `p/q` otherwise.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Smallest common multiple of the denominators.
pub(crate) fn lcm_denominators<'a>(it: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    it.into_iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(s: &str) -> BigInt {
        s.parse().unwrap()
    }

    #[test]
    fn gcd_cases() {
        assert_eq!(gcd(&BigInt::from(12), &BigInt::from(18)), BigInt::from(6));
        assert_eq!(gcd(&BigInt::from(0), &BigInt::from(7)), BigInt::from(7));
        assert_eq!(gcd(&BigInt::from(0), &BigInt::from(0)), BigInt::from(0));
        assert_eq!(gcd(&BigInt::from(-4), &BigInt::from(6)), BigInt::from(2));
    }

    #[test]
    fn gcd_fermat_composite() {
        // 2^64 + 1 = 274177 * 67280421310721; checked by trial division below.
        let n: BigInt = (BigInt::one() << 64u32) + 1u32;
        let f = BigInt::from(274177u32);
        let smallest: u64 = (2u64..)
            .find(|d| (&n % BigInt::from(*d)).is_zero())
            .unwrap();
        assert_eq!(BigInt::from(smallest), f);
        assert_eq!(gcd(&n, &f), f);
    }

    #[test]
    fn factorize_examples() {
        let l = Limits::default();
        let f = factorize(&BigInt::from(48), &l).unwrap();
        assert_eq!(f.factors(), &[(BigInt::from(2), 4), (BigInt::from(3), 1)]);
        let f = factorize(&BigInt::from(10), &l).unwrap();
        assert_eq!(f.factors(), &[(BigInt::from(2), 1), (BigInt::from(5), 1)]);
        let f = factorize(&BigInt::from(97), &l).unwrap();
        assert_eq!(f.factors(), &[(BigInt::from(97), 1)]);
    }

    #[test]
    fn factorize_rejects_small() {
        let l = Limits::default();
        assert!(matches!(factorize(&BigInt::from(1), &l), Err(Error::Domain(_))));
        assert!(matches!(factorize(&BigInt::from(-6), &l), Err(Error::Domain(_))));
    }

    #[test]
    fn factorize_needs_rho() {
        // Two primes above the trial bound.
        let l = Limits { trial_bound: 100, ..Limits::default() };
        let p = big("1000003");
        let q = big("998244353");
        let f = factorize(&(&p * &q * &p), &l).unwrap();
        assert_eq!(f.factors(), &[(p, 2), (q, 1)]);
    }

    #[test]
    fn factorize_budget_is_a_resource_error() {
        let l = Limits { trial_bound: 10, rho_budget: 8, ..Limits::default() };
        let n = big("1000000007") * big("998244353");
        assert!(matches!(factorize(&n, &l), Err(Error::Resource(_))));
    }

    #[test]
    fn integer_root_examples() {
        assert_eq!(integer_root(&BigInt::from(4), 2), Some(BigInt::from(2)));
        assert_eq!(integer_root(&BigInt::from(2), 2), None);
        let n = num_traits::pow(BigInt::from(3), 15);
        assert_eq!(num_traits::pow(BigInt::from(27), 5), n);
        assert_eq!(integer_root(&n, 5), Some(BigInt::from(27)));
        assert_eq!(integer_root(&BigInt::from(1), 7), Some(BigInt::from(1)));
    }

    #[test]
    fn rational_text() {
        assert_eq!(parse_rational("6/-4").unwrap(), Rational::new((-3).into(), 2.into()));
        assert_eq!(format_rational(&parse_rational("10/5").unwrap()), "2");
        assert_eq!(format_rational(&parse_rational("-3/9").unwrap()), "-1/3");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn rat() -> impl Strategy<Value = Rational> {
            (-1000i64..1000, 1i64..200).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
        }

        proptest! {
            #[test]
            fn field_laws(a in rat(), b in rat(), c in rat()) {
                prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
                prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
                if !a.is_zero() {
                    prop_assert!((&a * a.recip()).is_one());
                }
                prop_assert!(a.denom().is_positive());
                prop_assert!(a.numer().gcd(a.denom()).is_one() || a.is_zero());
            }

            #[test]
            fn factorization_multiplies_back(n in 2u64..5_000_000) {
                let n = BigInt::from(n);
                let f = factorize(&n, &Limits::default()).unwrap();
                prop_assert_eq!(f.product(), n);
                for w in f.factors().windows(2) {
                    prop_assert!(w[0].0 < w[1].0);
                }
                for (p, e) in f.factors() {
                    prop_assert!(*e >= 1);
                    prop_assert!(is_probable_prime(p));
                }
            }

            #[test]
            fn integer_root_matches_search(n in 1u64..20_000, k in 1u32..6) {
                let got = integer_root(&BigInt::from(n), k);
                // binary search oracle
                let (mut lo, mut hi) = (1u64, n);
                let mut found = None;
                while lo <= hi {
                    let mid = (lo + hi) / 2;
                    let p = (mid as u128).pow(k);
                    if p == n as u128 { found = Some(mid); break; }
                    if p < n as u128 { lo = mid + 1 } else { hi = mid - 1 }
                }
                prop_assert_eq!(got, found.map(BigInt::from));
            }
        }
    }
}
