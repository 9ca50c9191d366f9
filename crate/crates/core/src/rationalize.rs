//! Replace equalities with irrational coefficients by the rational equalities
//! they imply on integer points.
//!
//! An equality `sum_j a_j x_j = b` whose coefficients lie in `Q[p_1^(1/q_1), ...]`
//! holds at an integer point exactly when it holds coordinate by coordinate in
//! the monomial basis of that field, because the monomials are linearly
//! independent over `Q`. Exponential weights are separated first: terms
//! `exp(alpha) * v` with distinct exponents must vanish group by group.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::model::{Coefficient, Constraint, Model, Relation};
use crate::numeric::{lcm_denominators, Rational};
use crate::radical::{unify_bases, Monomial, RadicalBasis, RadicalNumber};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Independence {
    Independent,
    /// Primitive integer weights, leading entry positive, with
    /// `sum_i w_i * alpha_i = 0`.
    Dependent(Vec<Rational>),
}

/// Exact test of linear independence over `Q`. The numbers are written in a
/// common basis; distinct monomials are independent, so this is ordinary
/// elimination on coordinate vectors.
pub fn check_q_independence(alphas: &[RadicalNumber], limits: &Limits) -> Result<Independence> {
    let (_, xs) = unify_bases(alphas, limits)?;
    let n = xs.len();
    let mut pivots: Vec<(Monomial, BTreeMap<Monomial, Rational>, Vec<Rational>)> = Vec::new();
    for (i, x) in xs.iter().enumerate() {
        let mut v: BTreeMap<Monomial, Rational> = x.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        let mut tag = vec![Rational::zero(); n];
        tag[i] = Rational::from_integer(1.into());
        for (pm, row, ptag) in &pivots {
            let Some(f) = v.get(pm).map(|c| c / &row[pm]) else { continue };
            for (m, c) in row {
                let e = v.entry(m.clone()).or_insert_with(Rational::zero);
                *e -= &f * c;
                if e.is_zero() {
                    v.remove(m);
                }
            }
            for (t, pt) in tag.iter_mut().zip(ptag) {
                *t -= &f * pt;
            }
        }
        match v.keys().next().cloned() {
            Some(m) => pivots.push((m, v, tag)),
            None => return Ok(Independence::Dependent(primitive(&tag))),
        }
    }
    Ok(Independence::Independent)
}

/// Scale to coprime integers with the first nonzero entry positive.
fn primitive(v: &[Rational]) -> Vec<Rational> {
    let l = Rational::from_integer(lcm_denominators(v));
    let ints: Vec<BigInt> = v.iter().map(|c| (c * &l).to_integer()).collect();
    let mut g = ints.iter().fold(BigInt::zero(), |g, x| num_integer::Integer::gcd(&g, x));
    if g.is_zero() {
        return v.to_vec();
    }
    if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        g = -g;
    }
    ints.into_iter().map(|x| Rational::from_integer(x / &g)).collect()
}

/// Split an equality into one pure-radical equality per exponential group,
/// keyed by the group's exponent. A constraint without exponentials comes
/// back unchanged under exponent zero.
pub fn split_exp_groups(c: &Constraint, limits: &Limits) -> Result<Vec<(RadicalNumber, Constraint)>> {
    if !c.is_equality() {
        return Err(Error::Contract(format!("exp-group split of inequality {}", c.name)));
    }
    let alphas: BTreeSet<RadicalNumber> = c.coefficients().flat_map(|k| k.groups().map(|(a, _)| a.clone())).collect();
    let nonzero: Vec<RadicalNumber> = alphas.iter().filter(|a| !a.is_zero()).cloned().collect();
    if nonzero.is_empty() {
        return Ok(vec![(RadicalNumber::zero(), c.clone())]);
    }
    if let Independence::Dependent(witness) = check_q_independence(&nonzero, limits)? {
        return Err(Error::DependentExponents { witness });
    }
    let zero = RadicalNumber::zero();
    let order = alphas.contains(&zero).then_some(&zero).into_iter().chain(&nonzero);
    Ok(order
        .map(|a| {
            let part = |k: &Coefficient| k.group(a).cloned().map(Coefficient::from_radical).unwrap_or_default();
            let lhs = c
                .lhs
                .iter()
                .map(|(&j, k)| (j, part(k)))
                .filter(|(_, k)| !k.is_zero())
                .collect();
            let g = Constraint { name: c.name.clone(), lhs, relation: Relation::Eq, rhs: part(&c.rhs) };
            (a.clone(), g)
        })
        .collect())
}

/// One rational equality per monomial of `basis` that carries a nonzero
/// coordinate in some coefficient of `c`, in monomial order.
pub fn rationalize_constraint(c: &Constraint, basis: &RadicalBasis) -> Result<Vec<(Monomial, Constraint)>> {
    if !c.is_equality() {
        return Err(Error::Contract(format!("rationalizing inequality {}", c.name)));
    }
    let radical = |k: &Coefficient| {
        k.as_radical()
            .ok_or_else(|| Error::Contract(format!("constraint {} still has exp terms", c.name)))?
            .in_basis(basis)
    };
    let mut rows: BTreeMap<Monomial, (BTreeMap<usize, Rational>, Rational)> = BTreeMap::new();
    for (&j, k) in &c.lhs {
        for (m, q) in radical(k)?.terms() {
            rows.entry(m.clone()).or_default().0.insert(j, q.clone());
        }
    }
    for (m, q) in radical(&c.rhs)?.terms() {
        rows.entry(m.clone()).or_default().1 = q.clone();
    }
    Ok(rows
        .into_iter()
        .map(|(m, (lhs, rhs))| {
            let row = Constraint {
                name: c.name.clone(),
                lhs: lhs.into_iter().map(|(j, q)| (j, Coefficient::from_rational(q))).collect(),
                relation: Relation::Eq,
                rhs: Coefficient::from_rational(rhs),
            };
            (m, row)
        })
        .collect())
}

/// Where an output row came from. `monomial` is `None` for rows copied
/// verbatim; otherwise it is the monomial in the report's basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub source: usize,
    pub alpha: RadicalNumber,
    pub monomial: Option<Monomial>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalizedModel {
    pub model: Model,
    /// Parallel to `model.constraints`.
    pub provenance: Vec<Provenance>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformReport {
    pub basis: RadicalBasis,
    pub dimension: usize,
    pub rows_in: usize,
    pub rows_out: usize,
    pub exp_groups: usize,
    pub warnings: Vec<String>,
    /// Output rows of the form `0 = c` with `c != 0`.
    pub infeasible_rows: Vec<usize>,
}

impl TransformReport {
    pub fn to_json(&self, out: &RationalizedModel) -> Value {
        let basis: Vec<Value> = self
            .basis
            .roots()
            .iter()
            .map(|r| {
                let p = r.prime.to_u64().map(Value::from).unwrap_or_else(|| Value::from(r.prime.to_string()));
                json!([p, r.degree])
            })
            .collect();
        let provenance: Vec<Value> = out
            .provenance
            .iter()
            .zip(&out.model.constraints)
            .enumerate()
            .map(|(i, (p, c))| {
                json!({
                    "row": i,
                    "name": c.name,
                    "source": p.source,
                    "alpha": p.alpha.to_string(),
                    "monomial": p.monomial.as_ref().map(|m| m.exponents().to_vec()),
                })
            })
            .collect();
        json!({
            "basis": basis,
            "dimension": self.dimension,
            "rows_in": self.rows_in,
            "rows_out": self.rows_out,
            "exp_groups": self.exp_groups,
            "warnings": self.warnings,
            "infeasible_rows": self.infeasible_rows,
            "provenance": provenance,
        })
    }
}

enum Plan {
    Keep(Option<String>),
    Split(Vec<(RadicalNumber, Constraint)>),
}

/// Rationalize every equality whose support is all-integer. Rational rows,
/// inequalities and rows touching continuous variables are copied unchanged,
/// the latter two with a warning. Emitted rows are sign-normalized (first
/// coefficient positive) and exact duplicates are dropped.
pub fn rationalize_model(m: &Model, limits: &Limits) -> Result<(RationalizedModel, TransformReport)> {
    m.validate()?;
    let mut plans = Vec::with_capacity(m.constraints.len());
    let mut exp_groups = 0;
    let mut warnings = Vec::new();
    for c in &m.constraints {
        let plan = if c.coefficients().all(Coefficient::is_rational) {
            Plan::Keep(None)
        } else if !c.is_equality() {
            Plan::Keep(Some(format!("{}: inequality with irrational coefficients passed through", c.name)))
        } else if let Some(&j) = c.lhs.keys().find(|&&j| !m.variables[j].integer) {
            Plan::Keep(Some(format!(
                "{}: continuous variable {} in support; passed through",
                c.name, m.variables[j].name
            )))
        } else {
            let groups = split_exp_groups(c, limits)?;
            if c.coefficients().any(Coefficient::has_exp) {
                exp_groups += groups.len();
                if groups[0].0.is_zero() {
                    warnings.push(format!(
                        "{}: exponent zero treated as its own group; only nonzero exponents checked for Q-independence",
                        c.name
                    ));
                }
            }
            Plan::Split(groups)
        };
        if let Plan::Keep(Some(w)) = &plan {
            warnings.push(w.clone());
        }
        plans.push(plan);
    }

    let values: Vec<RadicalNumber> = plans
        .iter()
        .filter_map(|p| match p {
            Plan::Split(gs) => Some(gs),
            Plan::Keep(_) => None,
        })
        .flatten()
        .flat_map(|(_, g)| g.coefficients().map(Coefficient::radical_part))
        .collect();
    let (basis, _) = unify_bases(&values, limits)?;
    let dimension = basis.check_dimension(limits)?;

    let mut names: BTreeSet<String> = m.constraints.iter().map(|c| c.name.clone()).collect();
    let mut seen = BTreeSet::new();
    let mut constraints = Vec::new();
    let mut provenance = Vec::new();
    for (i, (c, plan)) in m.constraints.iter().zip(plans).enumerate() {
        let groups = match plan {
            Plan::Keep(_) => {
                constraints.push(c.clone());
                provenance.push(Provenance { source: i, alpha: RadicalNumber::zero(), monomial: None });
                continue;
            }
            Plan::Split(groups) => groups,
        };
        let mut rows = Vec::new();
        for (alpha, g) in groups {
            for (mono, mut row) in rationalize_constraint(&g, &basis)? {
                normalize_sign(&mut row);
                if seen.insert((row.lhs.clone(), row.rhs.clone())) {
                    rows.push((row, Provenance { source: i, alpha: alpha.clone(), monomial: Some(mono) }));
                }
            }
        }
        let several = rows.len() > 1;
        for (k, (mut row, p)) in rows.into_iter().enumerate() {
            if several {
                row.name = fresh_name(&mut names, &format!("{}_{}", c.name, k + 1));
            }
            constraints.push(row);
            provenance.push(p);
        }
    }

    let infeasible_rows = constraints
        .iter()
        .enumerate()
        .filter(|(_, c)| c.is_equality() && c.lhs.is_empty() && !c.rhs.is_zero())
        .map(|(i, _)| i)
        .collect();
    let model = Model { constraints, ..m.clone() };
    let report = TransformReport {
        basis,
        dimension,
        rows_in: m.constraints.len(),
        rows_out: model.constraints.len(),
        exp_groups,
        warnings,
        infeasible_rows,
    };
    Ok((RationalizedModel { model, provenance }, report))
}

fn normalize_sign(row: &mut Constraint) {
    let leading_negative = row
        .lhs
        .values()
        .next()
        .and_then(Coefficient::as_rational)
        .is_some_and(|q| q.is_negative());
    if leading_negative {
        row.lhs.values_mut().for_each(|k| *k = k.neg_ref());
        row.rhs = row.rhs.neg_ref();
    }
}

fn fresh_name(names: &mut BTreeSet<String>, want: &str) -> String {
    let mut name = want.to_string();
    while names.contains(&name) {
        name.push('_');
    }
    names.insert(name.clone());
    name
}
