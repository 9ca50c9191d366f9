//! Brute-force ground truth: enumerate the integer points of a box and test
//! each one exactly against a model.
//!
//! Constraints are compiled once into integer coordinate rows over a common
//! radical basis (one block per exponential group), so testing a point is
//! integer arithmetic. Only inequalities that stay irrational at the point,
//! and exponential equalities with dependent exponents, fall back to exact
//! sign determination.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::model::{Coefficient, Constraint, Model, Relation, Sense, Variable};
use crate::numeric::{lcm_denominators, Rational};
use crate::radical::{unify_bases, Monomial, RadicalBasis, RadicalNumber};
use crate::rationalize::{check_q_independence, Independence};

/// Inclusive integer bounds per variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerBox {
    lo: Vec<i64>,
    hi: Vec<i64>,
}

impl IntegerBox {
    pub fn new(lo: Vec<i64>, hi: Vec<i64>) -> Result<Self> {
        if lo.len() != hi.len() || lo.iter().zip(&hi).any(|(a, b)| a > b) {
            return Err(Error::Domain("box bounds must satisfy lo <= hi in every coordinate".into()));
        }
        Ok(IntegerBox { lo, hi })
    }

    /// `[lo, hi]^n`.
    pub fn uniform(n: usize, lo: i64, hi: i64) -> Result<Self> {
        Self::new(vec![lo; n], vec![hi; n])
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn bounds(&self, j: usize) -> (i64, i64) {
        (self.lo[j], self.hi[j])
    }

    /// Number of points, or `None` past `u128`.
    pub fn volume(&self) -> Option<u128> {
        self.lo
            .iter()
            .zip(&self.hi)
            .try_fold(1u128, |acc, (a, b)| acc.checked_mul((*b as i128 - *a as i128 + 1) as u128))
    }
}

/// A constraint as integer rows. `groups[g].rows[m]` holds, for one monomial,
/// the scaled coordinates of each variable's coefficient and of the rhs.
struct Compiled {
    relation: Relation,
    groups: Vec<Group>,
    /// Whether a nonzero residual must be confirmed by interval evaluation.
    confirm_nonzero: bool,
    /// Exact residual is `sum_g exp(alpha_g) * sum_m coords_m * monomial_m / scale`.
    scale: BigInt,
    basis: RadicalBasis,
}

struct Group {
    alpha: RadicalNumber,
    rows: Vec<(Monomial, Vec<(usize, BigInt)>, BigInt)>,
}

fn compile(c: &Constraint, limits: &Limits) -> Result<Compiled> {
    let mut alphas: Vec<RadicalNumber> = c.coefficients().flat_map(|k| k.groups().map(|(a, _)| a.clone())).collect();
    alphas.sort();
    alphas.dedup();
    let nonzero: Vec<RadicalNumber> = alphas.iter().filter(|a| !a.is_zero()).cloned().collect();
    let confirm_nonzero = !nonzero.is_empty()
        && matches!(check_q_independence(&nonzero, limits)?, Independence::Dependent(_));

    let mut values = Vec::new();
    for k in c.coefficients() {
        values.extend(k.groups().map(|(_, v)| v.clone()));
    }
    let (basis, _) = unify_bases(&values, limits)?;
    let mut all_coords = Vec::new();
    let mut groups = Vec::new();
    for alpha in &alphas {
        let in_group = |k: &Coefficient| -> Result<RadicalNumber> {
            k.group(alpha).map(|v| v.in_basis(&basis)).unwrap_or_else(|| Ok(RadicalNumber::zero()))
        };
        let mut rows: std::collections::BTreeMap<Monomial, (Vec<(usize, Rational)>, Rational)> = Default::default();
        for (&j, k) in &c.lhs {
            for (m, q) in in_group(k)?.terms() {
                rows.entry(m.clone()).or_default().0.push((j, q.clone()));
                all_coords.push(q.clone());
            }
        }
        for (m, q) in in_group(&c.rhs)?.terms() {
            rows.entry(m.clone()).or_default().1 = q.clone();
            all_coords.push(q.clone());
        }
        groups.push((alpha.clone(), rows));
    }
    let scale = lcm_denominators(&all_coords);
    let s = Rational::from_integer(scale.clone());
    let int = |q: &Rational| (q * &s).to_integer();
    let groups = groups
        .into_iter()
        .map(|(alpha, rows)| Group {
            alpha,
            rows: rows
                .into_iter()
                .map(|(m, (lhs, rhs))| (m, lhs.iter().map(|(j, q)| (*j, int(q))).collect(), int(&rhs)))
                .collect(),
        })
        .collect();
    Ok(Compiled { relation: c.relation, groups, confirm_nonzero, scale, basis })
}

impl Compiled {
    fn satisfied(&self, x: &[i64], limits: &Limits) -> Result<bool> {
        let residuals: Vec<Vec<(&Monomial, BigInt)>> = self
            .groups
            .iter()
            .map(|g| {
                g.rows
                    .iter()
                    .map(|(m, lhs, rhs)| {
                        let v = lhs.iter().fold(-rhs, |acc, (j, a)| acc + a * x[*j]);
                        (m, v)
                    })
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        if residuals.iter().all(Vec::is_empty) {
            return Ok(true);
        }
        if self.relation == Relation::Eq && !self.confirm_nonzero {
            // Distinct monomials, and exponentials of distinct exponents, are
            // linearly independent, so a nonzero coordinate means nonzero.
            return Ok(false);
        }
        let sign = self.residual_sign(&residuals, limits)?;
        Ok(match self.relation {
            Relation::Eq => sign == Ordering::Equal,
            Relation::Le => sign != Ordering::Greater,
            Relation::Ge => sign != Ordering::Less,
        })
    }

    fn residual_sign(&self, residuals: &[Vec<(&Monomial, BigInt)>], limits: &Limits) -> Result<Ordering> {
        let only_rational = self.groups.len() == 1
            && self.groups[0].alpha.is_zero()
            && residuals[0].iter().all(|(m, _)| m.is_one());
        if only_rational {
            return Ok(residuals[0].first().map_or(Ordering::Equal, |(_, v)| v.cmp(&BigInt::zero())));
        }
        let mut value = Coefficient::zero();
        let inv = Rational::new(BigInt::one(), self.scale.clone());
        for (g, res) in self.groups.iter().zip(residuals) {
            let coords = res.iter().map(|(m, v)| ((*m).clone(), Rational::from_integer(v.clone()) * &inv));
            let v = RadicalNumber::from_coordinates(self.basis.clone(), coords)?;
            value = value.add_ref(&Coefficient::exp_term(g.alpha.clone(), v));
        }
        // Nonzero by independence of distinct exponentials; the interval
        // refinement inside `sign` both orders it and confirms it.
        value.sign(limits)
    }
}

/// Integer points of `b` satisfying every constraint and sign restriction of
/// `m`, in lexicographic order. Integrality markers are ignored: every point
/// tested is integral.
pub fn feasible_points(m: &Model, b: &IntegerBox, limits: &Limits) -> Result<Vec<Vec<i64>>> {
    m.validate()?;
    if b.dim() != m.variables.len() {
        return Err(Error::Model(format!("box has {} coordinates, model has {} variables", b.dim(), m.variables.len())));
    }
    match b.volume() {
        Some(v) if v <= limits.enum_cap as u128 => {}
        _ => return Err(Error::Resource(format!("box volume exceeds the enumeration cap of {}", limits.enum_cap))),
    }
    let (lo, hi): (Vec<i64>, Vec<i64>) = (0..b.dim())
        .map(|j| {
            let (l, h) = b.bounds(j);
            (if m.variables[j].nonnegative { l.max(0) } else { l }, h)
        })
        .unzip();
    if lo.iter().zip(&hi).any(|(l, h)| l > h) {
        return Ok(Vec::new());
    }
    let compiled: Vec<Compiled> = m.constraints.iter().map(|c| compile(c, limits)).collect::<Result<_>>()?;
    let test = |x: &[i64]| -> Result<bool> {
        for c in &compiled {
            if !c.satisfied(x, limits)? {
                return Ok(false);
            }
        }
        Ok(true)
    };
    if lo.is_empty() {
        return Ok(if test(&[])? { vec![vec![]] } else { vec![] });
    }
    let slices: Vec<Result<Vec<Vec<i64>>>> = (lo[0]..=hi[0])
        .into_par_iter()
        .map(|first| {
            let mut found = Vec::new();
            let mut x = lo.clone();
            x[0] = first;
            loop {
                if test(&x)? {
                    found.push(x.clone());
                }
                let mut k = x.len() - 1;
                loop {
                    if k == 0 {
                        return Ok(found);
                    }
                    if x[k] < hi[k] {
                        x[k] += 1;
                        break;
                    }
                    x[k] = lo[k];
                    k -= 1;
                }
            }
        })
        .collect();
    let mut out = Vec::new();
    for s in slices {
        out.extend(s?);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Equivalence {
    Equal,
    /// First point, in lexicographic order, feasible for exactly one side.
    Counterexample { point: Vec<i64>, feasible_in_original: bool },
}

/// Compare the feasible integer points of two models over one box.
pub fn check_equivalence(original: &Model, other: &Model, b: &IntegerBox, limits: &Limits) -> Result<Equivalence> {
    if original.variables.len() != other.variables.len() {
        return Err(Error::Model("models have different variable counts".into()));
    }
    let p = feasible_points(original, b, limits)?;
    let q = feasible_points(other, b, limits)?;
    let (mut i, mut j) = (0, 0);
    loop {
        match (p.get(i), q.get(j)) {
            (None, None) => return Ok(Equivalence::Equal),
            (Some(a), Some(c)) if a == c => {
                i += 1;
                j += 1;
            }
            (Some(a), c) if c.map_or(true, |c| a < c) => {
                return Ok(Equivalence::Counterexample { point: a.clone(), feasible_in_original: true })
            }
            (_, Some(c)) => {
                return Ok(Equivalence::Counterexample { point: c.clone(), feasible_in_original: false })
            }
            (Some(_), None) => unreachable!(),
        }
    }
}

/// Whether every equality that rationalization would expand (all-integer
/// support) is exactly zero at `point`, by direct substitution.
pub fn substitution_zero_check(original: &Model, point: &[Rational]) -> bool {
    if point.len() != original.variables.len() {
        return false;
    }
    let x: Vec<Coefficient> = point.iter().cloned().map(Coefficient::from_rational).collect();
    original
        .constraints
        .iter()
        .filter(|c| c.is_equality() && c.lhs.keys().all(|&j| original.variables[j].integer))
        .all(|c| c.residual(&x).is_zero())
}

const RADICALS: [(i64, u32); 4] = [(2, 2), (3, 2), (2, 3), (5, 3)];

/// Seeded random model with a known integer solution, returned alongside.
///
/// Up to 4 integer variables, up to 3 equalities; coefficients are
/// `r_0 + r_1 * rad_1 + ...` with radicals from sqrt 2, sqrt 3, cbrt 2 and
/// cbrt 5 and rationals `n/d`, `n` in [-5, 5], `d` in [1, 4]. The right-hand
/// sides are chosen so the returned point is feasible.
pub fn random_model(seed: u64) -> (Model, Vec<i64>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=4);
    let variables: Vec<Variable> = (0..n)
        .map(|j| Variable { name: format!("x{}", j + 1), integer: true, nonnegative: rng.gen_bool(0.25) })
        .collect();
    let point: Vec<i64> =
        variables.iter().map(|v| if v.nonnegative { rng.gen_range(0..=5) } else { rng.gen_range(-5..=5) }).collect();
    let mut m = Model::new(variables);
    m.sense = if rng.gen_bool(0.5) { Sense::Max } else { Sense::Min };
    for j in 0..n {
        let q = random_rational(&mut rng);
        if !q.is_zero() {
            m.objective.insert(j, Coefficient::from_rational(q));
        }
    }
    for i in 0..rng.gen_range(1..=3) {
        let mut lhs = std::collections::BTreeMap::new();
        let mut rhs = Coefficient::zero();
        for (j, &xj) in point.iter().enumerate() {
            if rng.gen_bool(0.2) {
                continue;
            }
            let a = random_coefficient(&mut rng);
            if a.is_zero() {
                continue;
            }
            rhs = rhs.add_ref(&a.mul_ref(&Coefficient::from_integer(xj)));
            lhs.insert(j, a);
        }
        m.constraints.push(Constraint { name: format!("c{}", i + 1), lhs, relation: Relation::Eq, rhs });
    }
    (m, point)
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.gen_range(-5..=5).into(), rng.gen_range(1..=4).into())
}

fn random_coefficient(rng: &mut ChaCha8Rng) -> Coefficient {
    let mut v = RadicalNumber::from_rational(random_rational(rng));
    for _ in 0..rng.gen_range(0..=2) {
        let (p, deg) = RADICALS[rng.gen_range(0..RADICALS.len())];
        let power = rng.gen_range(1..deg) as u64;
        let term = RadicalNumber::prime_power(&p.into(), power, deg, random_rational(rng)).expect("small prime root");
        v = v.add_ref(&term);
    }
    Coefficient::from_radical(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::parse_model;
    use crate::rationalize::rationalize_model;

    const EXAMPLE1: &str = "var x1 >= 0 integer; var x2 >= 0 integer; var x3 >= 0 integer; var x4 >= 0 integer;\n\
                            max x1;\ns.t. c1: x3 - root(2,2)*(x1 - x2) = 0;\ns.t. c2: x2 + x4 = 1;\n";

    fn l() -> Limits {
        Limits::default()
    }

    fn model(src: &str) -> Model {
        parse_model(src, &l()).unwrap()
    }

    /// Reference: substitute with exact coefficient arithmetic, no compilation.
    fn slow_feasible(m: &Model, x: &[i64], limits: &Limits) -> bool {
        let pt: Vec<Coefficient> = x.iter().map(|&v| Coefficient::from_integer(v)).collect();
        m.variables.iter().zip(x).all(|(v, &xj)| !v.nonnegative || xj >= 0)
            && m.constraints.iter().all(|c| {
                let s = c.residual(&pt).sign(limits).unwrap();
                match c.relation {
                    Relation::Eq => s == Ordering::Equal,
                    Relation::Le => s != Ordering::Greater,
                    Relation::Ge => s != Ordering::Less,
                }
            })
    }

    #[test]
    fn example1_points() {
        let m = model(EXAMPLE1);
        let b = IntegerBox::uniform(4, 0, 3).unwrap();
        let pts = feasible_points(&m, &b, &l()).unwrap();
        assert_eq!(pts, vec![vec![0, 0, 0, 1], vec![1, 1, 0, 0]]);
        let (r, _) = rationalize_model(&m, &l()).unwrap();
        assert_eq!(feasible_points(&r.model, &b, &l()).unwrap(), pts);
        assert_eq!(check_equivalence(&m, &r.model, &b, &l()).unwrap(), Equivalence::Equal);
    }

    #[test]
    fn empty_and_capped() {
        let m = model("var x1 >= 0 integer; s.t. root(2,2)*x1 = 1;");
        let b = IntegerBox::uniform(1, 0, 10).unwrap();
        assert!(feasible_points(&m, &b, &l()).unwrap().is_empty());
        let tight = Limits { enum_cap: 5, ..l() };
        assert!(matches!(feasible_points(&m, &b, &tight), Err(Error::Resource(_))));
        let neg = IntegerBox::uniform(1, -3, -1).unwrap();
        assert!(feasible_points(&m, &neg, &l()).unwrap().is_empty());
    }

    #[test]
    fn corrupted_system_gives_counterexample() {
        let a = model("var x1 integer; var x2 integer; s.t. x1 - x2 = 0;");
        let b = model("var x1 integer; var x2 integer; s.t. x1 + x2 = 0;");
        let bx = IntegerBox::uniform(2, 0, 2).unwrap();
        assert_eq!(
            check_equivalence(&a, &b, &bx, &l()).unwrap(),
            Equivalence::Counterexample { point: vec![1, 1], feasible_in_original: true }
        );
    }

    #[test]
    fn inequalities_and_exp_match_reference() {
        let srcs = [
            "var x integer; var y integer; s.t. root(2,2)*x - root(3,2)*y <= 1/3; s.t. x + root(5,3)*y >= -2;",
            "var x integer; var y integer; s.t. exp(root(2,2))*(x - 1) + exp(root(3,2))*(y + 2) = 0;",
            "var x integer; var y integer; s.t. exp(root(2,2))*x - exp(2*root(2,2))*y = 0;",
            "var x integer; var y integer; s.t. exp(root(2,2))*x - 4*y <= 0;",
        ];
        let b = IntegerBox::uniform(2, -3, 3).unwrap();
        for src in srcs {
            let m = model(src);
            let pts = feasible_points(&m, &b, &l()).unwrap();
            let mut expect = Vec::new();
            for x in -3..=3 {
                for y in -3..=3 {
                    if slow_feasible(&m, &[x, y], &l()) {
                        expect.push(vec![x, y]);
                    }
                }
            }
            assert_eq!(pts, expect, "{src}");
        }
    }

    #[test]
    fn substitution() {
        let m = model(EXAMPLE1);
        let q = |v: &[i64]| v.iter().map(|&a| Rational::from_integer(a.into())).collect::<Vec<_>>();
        assert!(substitution_zero_check(&m, &q(&[1, 1, 0, 0])));
        assert!(!substitution_zero_check(&m, &q(&[1, 0, 0, 1])));
        let mixed = model("var x1 integer; var x2 integer; s.t. (1+root(2,2))*x1 + (3-2*root(2,2))*x2 = 5;");
        assert!(substitution_zero_check(&mixed, &q(&[2, 1])));
    }

    #[test]
    fn generator_is_seeded_and_feasible() {
        for seed in 0..20 {
            let (m, x) = random_model(seed);
            assert_eq!(random_model(seed).0, m);
            assert!(m.variables.len() <= 4 && !m.constraints.is_empty() && m.constraints.len() <= 3);
            assert!(slow_feasible(&m, &x, &l()), "seed {seed}");
        }
    }
}
