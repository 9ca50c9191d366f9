//! Two-phase dense-tableau simplex over an exact ordered field.
//!
//! Every pivot is exact, Bland's rule prevents cycling, and each outcome
//! carries a certificate that [`verify_outcome`] re-checks by substitution:
//! an optimal point with dual multipliers, an unbounded ray, or a Farkas
//! vector proving infeasibility.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::model::{Coefficient, Model, Relation, Sense};
use crate::numeric::Rational;
use crate::radical::{RadicalBasis, RadicalNumber};

/// Exact arithmetic needed by the solver.
pub trait OrderedField: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn inv(&self, limits: &Limits) -> Result<Self>;
    fn is_zero(&self) -> bool;
    fn sign(&self, limits: &Limits) -> Result<Ordering>;
    /// Fails when the coefficient lies outside the field.
    fn from_coefficient(c: &Coefficient) -> Result<Self>;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
}

impl OrderedField for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn inv(&self, _: &Limits) -> Result<Self> {
        if Zero::is_zero(self) {
            return Err(Error::Domain("division by zero".into()));
        }
        Ok(self.recip())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn sign(&self, _: &Limits) -> Result<Ordering> {
        Ok(self.cmp(&Zero::zero()))
    }
    fn from_coefficient(c: &Coefficient) -> Result<Self> {
        c.as_rational()
            .ok_or_else(|| Error::Contract(format!("coefficient {c} is not rational")))
    }
}

impl OrderedField for RadicalNumber {
    fn zero() -> Self {
        RadicalNumber::zero()
    }
    fn one() -> Self {
        RadicalNumber::one()
    }
    fn add(&self, other: &Self) -> Self {
        self.add_ref(other)
    }
    fn neg(&self) -> Self {
        self.neg_ref()
    }
    fn mul(&self, other: &Self) -> Self {
        self.mul_ref(other)
    }
    fn inv(&self, limits: &Limits) -> Result<Self> {
        self.invert(limits)
    }
    fn is_zero(&self) -> bool {
        RadicalNumber::is_zero(self)
    }
    fn sign(&self, limits: &Limits) -> Result<Ordering> {
        RadicalNumber::sign(self, limits)
    }
    fn from_coefficient(c: &Coefficient) -> Result<Self> {
        c.as_radical()
            .ok_or_else(|| Error::Unsupported(format!("exp() coefficient {c} in a linear relaxation")))
    }
}

/// Result of solving a relaxation.
///
/// Dual and Farkas vectors have one entry per model constraint. Duals are
/// those of the maximization form: for a `min` model the objective is negated
/// first, so `b . duals = -value`.
#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome<F> {
    Optimal { value: F, point: Vec<F>, basis: Vec<String>, duals: Vec<F> },
    Unbounded { point: Vec<F>, ray: Vec<F> },
    Infeasible { phase1_value: F, farkas: Vec<F> },
}

impl<F: OrderedField> LpOutcome<F> {
    pub fn status(&self) -> &'static str {
        match self {
            LpOutcome::Optimal { .. } => "optimal",
            LpOutcome::Unbounded { .. } => "unbounded",
            LpOutcome::Infeasible { .. } => "infeasible",
        }
    }

    pub fn to_json(&self, m: &Model) -> Value {
        let named = |v: &[F]| -> Value {
            m.variables.iter().zip(v).map(|(x, a)| (x.name.clone(), Value::from(a.to_string()))).collect()
        };
        let list = |v: &[F]| -> Value { v.iter().map(|a| Value::from(a.to_string())).collect() };
        match self {
            LpOutcome::Optimal { value, point, basis, duals } => json!({
                "status": "optimal",
                "value": value.to_string(),
                "point": named(point),
                "basis": basis,
                "duals": list(duals),
            }),
            LpOutcome::Unbounded { point, ray } => json!({
                "status": "unbounded",
                "point": named(point),
                "ray": named(ray),
            }),
            LpOutcome::Infeasible { phase1_value, farkas } => json!({
                "status": "infeasible",
                "phase1_value": phase1_value.to_string(),
                "farkas": list(farkas),
            }),
        }
    }

    pub fn render(&self, m: &Model) -> String {
        let mut out = format!("{}\n", self.status());
        let mut vector = |label: &str, v: &[F]| {
            for (x, a) in m.variables.iter().zip(v) {
                out.push_str(&format!("{label} {} = {a}\n", x.name));
            }
        };
        match self {
            LpOutcome::Optimal { value, point, .. } => {
                vector("x", point);
                out.push_str(&format!("value = {value}\n"));
            }
            LpOutcome::Unbounded { point, ray } => {
                vector("x", point);
                vector("ray", ray);
            }
            LpOutcome::Infeasible { phase1_value, .. } => {
                out.push_str(&format!("phase 1 value = {phase1_value}\n"));
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldChoice {
    /// Radical arithmetic iff some coefficient is irrational.
    Auto,
    Rational,
    Radical,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Solution {
    Rational(LpOutcome<Rational>),
    Radical(LpOutcome<RadicalNumber>),
}

impl Solution {
    pub fn status(&self) -> &'static str {
        match self {
            Solution::Rational(o) => o.status(),
            Solution::Radical(o) => o.status(),
        }
    }

    pub fn verify(&self, m: &Model, limits: &Limits) -> bool {
        match self {
            Solution::Rational(o) => verify_outcome(m, o, limits),
            Solution::Radical(o) => verify_outcome(m, o, limits),
        }
    }

    pub fn to_json(&self, m: &Model) -> Value {
        let (field, mut v) = match self {
            Solution::Rational(o) => ("rational", o.to_json(m)),
            Solution::Radical(o) => ("radical", o.to_json(m)),
        };
        v["field"] = Value::from(field);
        v
    }

    pub fn render(&self, m: &Model) -> String {
        match self {
            Solution::Rational(o) => o.render(m),
            Solution::Radical(o) => o.render(m),
        }
    }
}

/// Solve the linear relaxation of `m` (integrality dropped).
pub fn solve_lpr(m: &Model, field: FieldChoice, limits: &Limits) -> Result<Solution> {
    m.validate()?;
    if m.has_exp() {
        return Err(Error::Unsupported("exp() coefficients in a linear relaxation".into()));
    }
    let radical = match field {
        FieldChoice::Auto => !m.is_rational(),
        FieldChoice::Rational => false,
        FieldChoice::Radical => true,
    };
    if radical {
        let basis = coefficients(m)
            .filter_map(Coefficient::as_radical)
            .fold(RadicalBasis::empty(), |b, r| b.union(r.basis()));
        basis.check_dimension(limits)?;
        Ok(Solution::Radical(solve(m, limits)?))
    } else {
        if let Some(c) = coefficients(m).find(|c| !c.is_rational()) {
            return Err(Error::Contract(format!(
                "rational field requested but coefficient {c} is irrational; rationalize first or use the radical field"
            )));
        }
        Ok(Solution::Rational(solve(m, limits)?))
    }
}

fn coefficients(m: &Model) -> impl Iterator<Item = &Coefficient> {
    m.objective.values().chain(m.constraints.iter().flat_map(|c| c.coefficients()))
}

#[derive(Debug, Clone, Copy)]
enum Column {
    /// `negative` marks the negative part of a split free variable.
    Var { j: usize, negative: bool },
    Slack,
    Artificial { row: usize },
}

struct Tableau<'l, F> {
    t: Vec<Vec<F>>,
    rhs: Vec<F>,
    basis: Vec<usize>,
    columns: Vec<Column>,
    limits: &'l Limits,
}

impl<F: OrderedField> Tableau<'_, F> {
    fn pivot(&mut self, r: usize, c: usize) -> Result<()> {
        let p = self.t[r][c].inv(self.limits)?;
        for a in self.t[r].iter_mut() {
            *a = a.mul(&p);
        }
        self.rhs[r] = self.rhs[r].mul(&p);
        let (pivot_row, pivot_rhs) = (self.t[r].clone(), self.rhs[r].clone());
        for i in 0..self.t.len() {
            if i == r || self.t[i][c].is_zero() {
                continue;
            }
            let f = self.t[i][c].clone();
            for (a, b) in self.t[i].iter_mut().zip(&pivot_row) {
                if !b.is_zero() {
                    *a = a.sub(&f.mul(b));
                }
            }
            self.rhs[i] = self.rhs[i].sub(&f.mul(&pivot_rhs));
        }
        self.basis[r] = c;
        Ok(())
    }

    /// `c_B B^-1`, read from the artificial columns, which started as the
    /// identity.
    fn multipliers(&self, cost: &[F]) -> Vec<F> {
        let arts: Vec<usize> = (0..self.columns.len())
            .filter(|&k| matches!(self.columns[k], Column::Artificial { .. }))
            .collect();
        arts.iter()
            .map(|&k| {
                self.basis
                    .iter()
                    .enumerate()
                    .fold(F::zero(), |acc, (i, &b)| acc.add(&cost[b].mul(&self.t[i][k])))
            })
            .collect()
    }

    fn objective(&self, cost: &[F]) -> F {
        self.basis
            .iter()
            .zip(&self.rhs)
            .fold(F::zero(), |acc, (&b, v)| acc.add(&cost[b].mul(v)))
    }

    /// Maximize `cost . x` from the current feasible basis. Returns the
    /// entering column of an unbounded direction, if any.
    fn run(&mut self, cost: &[F], allowed: impl Fn(Column) -> bool) -> Result<Option<usize>> {
        loop {
            let mut entering = None;
            for j in 0..self.columns.len() {
                if !allowed(self.columns[j]) || self.basis.contains(&j) {
                    continue;
                }
                let d = self
                    .basis
                    .iter()
                    .enumerate()
                    .fold(cost[j].clone(), |acc, (i, &b)| acc.sub(&cost[b].mul(&self.t[i][j])));
                if d.sign(self.limits)? == Ordering::Greater {
                    entering = Some(j);
                    break;
                }
            }
            let Some(j) = entering else { return Ok(None) };
            let mut leave: Option<(usize, F)> = None;
            for i in 0..self.t.len() {
                if self.t[i][j].sign(self.limits)? != Ordering::Greater {
                    continue;
                }
                let ratio = self.rhs[i].mul(&self.t[i][j].inv(self.limits)?);
                let better = match &leave {
                    None => true,
                    Some((k, best)) => match ratio.sub(best).sign(self.limits)? {
                        Ordering::Less => true,
                        Ordering::Equal => self.basis[i] < self.basis[*k],
                        Ordering::Greater => false,
                    },
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, j)?,
                None => return Ok(Some(j)),
            }
        }
    }

    fn primal(&self, n: usize) -> Vec<F> {
        let mut x = vec![F::zero(); n];
        for (i, &b) in self.basis.iter().enumerate() {
            if let Column::Var { j, negative } = self.columns[b] {
                x[j] = if negative { x[j].sub(&self.rhs[i]) } else { x[j].add(&self.rhs[i]) };
            }
        }
        x
    }
}

/// Two-phase simplex in a fixed field.
pub fn solve<F: OrderedField>(m: &Model, limits: &Limits) -> Result<LpOutcome<F>> {
    let n = m.variables.len();
    let rows = m.constraints.len();
    let mut columns = Vec::new();
    for (j, v) in m.variables.iter().enumerate() {
        columns.push(Column::Var { j, negative: false });
        if !v.nonnegative {
            columns.push(Column::Var { j, negative: true });
        }
    }
    let slack_of: Vec<Option<usize>> = m
        .constraints
        .iter()
        .map(|c| {
            (c.relation != Relation::Eq).then(|| {
                columns.push(Column::Slack);
                columns.len() - 1
            })
        })
        .collect();
    let first_art = columns.len();
    columns.extend((0..rows).map(|row| Column::Artificial { row }));
    let width = columns.len();

    let mut t = vec![vec![F::zero(); width]; rows];
    let mut rhs = Vec::with_capacity(rows);
    let mut flip = Vec::with_capacity(rows);
    for (i, c) in m.constraints.iter().enumerate() {
        for (k, col) in columns.iter().enumerate() {
            if let Column::Var { j, negative } = *col {
                if let Some(a) = c.lhs.get(&j) {
                    let a = F::from_coefficient(a)?;
                    t[i][k] = if negative { a.neg() } else { a };
                }
            }
        }
        if let Some(s) = slack_of[i] {
            t[i][s] = if c.relation == Relation::Le { F::one() } else { F::one().neg() };
        }
        let b = F::from_coefficient(&c.rhs)?;
        let negative = b.sign(limits)? == Ordering::Less;
        if negative {
            t[i].iter_mut().for_each(|a| *a = a.neg());
        }
        t[i][first_art + i] = F::one();
        rhs.push(if negative { b.neg() } else { b });
        flip.push(negative);
    }
    let mut tab = Tableau { t, rhs, basis: (first_art..width).collect(), columns, limits };
    let unflip = |y: Vec<F>| -> Vec<F> { y.into_iter().zip(&flip).map(|(a, &f)| if f { a.neg() } else { a }).collect() };

    let phase1: Vec<F> = tab
        .columns
        .iter()
        .map(|c| if matches!(c, Column::Artificial { .. }) { F::one().neg() } else { F::zero() })
        .collect();
    tab.run(&phase1, |_| true)?;
    let w = tab.objective(&phase1);
    if !w.is_zero() {
        let farkas = unflip(tab.multipliers(&phase1));
        return Ok(LpOutcome::Infeasible { phase1_value: w, farkas });
    }
    // Drive zero-level artificials out where a real column can replace them;
    // a row with no such column is redundant and keeps its artificial at 0.
    for r in 0..rows {
        if !matches!(tab.columns[tab.basis[r]], Column::Artificial { .. }) {
            continue;
        }
        if let Some(c) = (0..first_art).find(|&c| !tab.t[r][c].is_zero()) {
            tab.pivot(r, c)?;
        }
    }

    let flip_sign = |a: F| if m.sense == Sense::Min { a.neg() } else { a };
    let mut phase2 = vec![F::zero(); width];
    for (k, col) in tab.columns.iter().enumerate() {
        if let Column::Var { j, negative } = *col {
            if let Some(c) = m.objective.get(&j) {
                let c = flip_sign(F::from_coefficient(c)?);
                phase2[k] = if negative { c.neg() } else { c };
            }
        }
    }
    let entering = tab.run(&phase2, |c| !matches!(c, Column::Artificial { .. }))?;
    let point = tab.primal(n);
    if let Some(e) = entering {
        let mut ray = vec![F::zero(); n];
        let mut put = |col: usize, v: F| {
            if let Column::Var { j, negative } = tab.columns[col] {
                ray[j] = if negative { ray[j].sub(&v) } else { ray[j].add(&v) };
            }
        };
        put(e, F::one());
        for (i, &b) in tab.basis.iter().enumerate() {
            put(b, tab.t[i][e].neg());
        }
        return Ok(LpOutcome::Unbounded { point, ray });
    }
    let value = flip_sign(tab.objective(&phase2));
    let duals = unflip(tab.multipliers(&phase2));
    let basis = tab
        .basis
        .iter()
        .map(|&b| match tab.columns[b] {
            Column::Var { j, negative } => format!("{}{}", m.variables[j].name, if negative { "-" } else { "" }),
            Column::Slack => {
                let row = slack_of.iter().position(|&s| s == Some(b)).unwrap();
                format!("slack:{}", m.constraints[row].name)
            }
            Column::Artificial { row } => format!("artificial:{}", m.constraints[row].name),
        })
        .collect();
    Ok(LpOutcome::Optimal { value, point, basis, duals })
}

/// Exact re-check of an outcome's certificate against `m`. Any arithmetic
/// failure counts as a failed check.
pub fn verify_outcome<F: OrderedField>(m: &Model, o: &LpOutcome<F>, limits: &Limits) -> bool {
    check(m, o, limits).unwrap_or(false)
}

fn check<F: OrderedField>(m: &Model, o: &LpOutcome<F>, limits: &Limits) -> Result<bool> {
    let n = m.variables.len();
    let a: Vec<Vec<(usize, F)>> = m
        .constraints
        .iter()
        .map(|c| c.lhs.iter().map(|(&j, k)| Ok((j, F::from_coefficient(k)?))).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let b: Vec<F> = m.constraints.iter().map(|c| F::from_coefficient(&c.rhs)).collect::<Result<_>>()?;
    let sense = |x: F| if m.sense == Sense::Min { x.neg() } else { x };
    let mut c = vec![F::zero(); n];
    for (&j, k) in &m.objective {
        c[j] = sense(F::from_coefficient(k)?);
    }
    let dot = |row: &[(usize, F)], x: &[F]| row.iter().fold(F::zero(), |acc, (j, v)| acc.add(&v.mul(&x[*j])));
    let inner = |x: &[F], y: &[F]| x.iter().zip(y).fold(F::zero(), |acc, (p, q)| acc.add(&p.mul(q)));
    let sign = |x: &F| x.sign(limits);
    let rel_ok = |rel: Relation, s: Ordering| match rel {
        Relation::Eq => s == Ordering::Equal,
        Relation::Le => s != Ordering::Greater,
        Relation::Ge => s != Ordering::Less,
    };
    let nonneg_ok = |x: &[F]| -> Result<bool> {
        for (v, xj) in m.variables.iter().zip(x) {
            if v.nonnegative && sign(xj)? == Ordering::Less {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let feasible = |x: &[F]| -> Result<bool> {
        if x.len() != n || !nonneg_ok(x)? {
            return Ok(false);
        }
        for ((row, bi), con) in a.iter().zip(&b).zip(&m.constraints) {
            if !rel_ok(con.relation, sign(&dot(row, x).sub(bi))?) {
                return Ok(false);
            }
        }
        Ok(true)
    };
    // y has the sign pattern of a dual for the maximization form, and
    // A^T y - target is >= 0 on nonnegative variables and 0 on free ones.
    let dual_ok = |y: &[F], target: &[F]| -> Result<bool> {
        if y.len() != m.constraints.len() {
            return Ok(false);
        }
        for (yi, con) in y.iter().zip(&m.constraints) {
            let s = sign(yi)?;
            let ok = match con.relation {
                Relation::Eq => true,
                Relation::Le => s != Ordering::Less,
                Relation::Ge => s != Ordering::Greater,
            };
            if !ok {
                return Ok(false);
            }
        }
        let mut aty = vec![F::zero(); n];
        for (row, yi) in a.iter().zip(y) {
            for (j, v) in row {
                aty[*j] = aty[*j].add(&v.mul(yi));
            }
        }
        for ((v, s), t) in m.variables.iter().zip(&aty).zip(target) {
            let d = sign(&s.sub(t))?;
            if d == Ordering::Less || (!v.nonnegative && d != Ordering::Equal) {
                return Ok(false);
            }
        }
        Ok(true)
    };
    Ok(match o {
        LpOutcome::Optimal { value, point, duals, .. } => {
            feasible(point)?
                && inner(&c, point) == sense(value.clone())
                && dual_ok(duals, &c)?
                && inner(&b, duals) == sense(value.clone())
        }
        LpOutcome::Unbounded { point, ray } => {
            if !feasible(point)? || ray.len() != n || !nonneg_ok(ray)? {
                return Ok(false);
            }
            for (row, con) in a.iter().zip(&m.constraints) {
                if !rel_ok(con.relation, sign(&dot(row, ray))?) {
                    return Ok(false);
                }
            }
            sign(&inner(&c, ray))? == Ordering::Greater
        }
        LpOutcome::Infeasible { phase1_value, farkas } => {
            dual_ok(farkas, &vec![F::zero(); n])?
                && inner(&b, farkas) == *phase1_value
                && sign(phase1_value)? == Ordering::Less
        }
    })
}

impl From<LpOutcome<Rational>> for LpOutcome<RadicalNumber> {
    fn from(o: LpOutcome<Rational>) -> Self {
        let lift = |v: Vec<Rational>| v.into_iter().map(RadicalNumber::from_rational).collect();
        match o {
            LpOutcome::Optimal { value, point, basis, duals } => LpOutcome::Optimal {
                value: RadicalNumber::from_rational(value),
                point: lift(point),
                basis,
                duals: lift(duals),
            },
            LpOutcome::Unbounded { point, ray } => LpOutcome::Unbounded { point: lift(point), ray: lift(ray) },
            LpOutcome::Infeasible { phase1_value, farkas } => LpOutcome::Infeasible {
                phase1_value: RadicalNumber::from_rational(phase1_value),
                farkas: lift(farkas),
            },
        }
    }
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

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn model(src: &str) -> Model {
        parse_model(src, &l()).unwrap()
    }

    #[test]
    fn example1_original_is_unbounded() {
        let m = model(EXAMPLE1);
        let s = solve_lpr(&m, FieldChoice::Auto, &l()).unwrap();
        let Solution::Radical(o) = &s else { panic!("expected radical field") };
        let LpOutcome::Unbounded { ray, .. } = o else { panic!("{o:?}") };
        assert!(s.verify(&m, &l()));
        let sqrt2 = RadicalNumber::prime_power(&2.into(), 1, 2, q(1, 1)).unwrap();
        let scale = ray[0].clone();
        assert!(!scale.is_zero());
        let expect = [RadicalNumber::one(), RadicalNumber::zero(), sqrt2, RadicalNumber::zero()];
        for (r, e) in ray.iter().zip(&expect) {
            assert_eq!(*r, scale.mul_ref(e));
        }
    }

    #[test]
    fn example1_rationalized_is_optimal_one() {
        let (r, _) = rationalize_model(&model(EXAMPLE1), &l()).unwrap();
        let s = solve_lpr(&r.model, FieldChoice::Auto, &l()).unwrap();
        let Solution::Rational(LpOutcome::Optimal { value, .. }) = &s else { panic!("{s:?}") };
        assert_eq!(*value, q(1, 1));
        assert!(s.verify(&r.model, &l()));
    }

    #[test]
    fn infeasible_with_farkas() {
        let m = model("var x1 >= 0; max x1; s.t. x1 <= 0; s.t. x1 >= 1;");
        let o: LpOutcome<Rational> = solve(&m, &l()).unwrap();
        assert!(matches!(o, LpOutcome::Infeasible { .. }), "{o:?}");
        assert!(verify_outcome(&m, &o, &l()));
    }

    #[test]
    fn mixed_relations_free_vars_and_min() {
        // min x - y with y free, x >= 0: x + y <= 4, x - y >= -2, 2x + y = 5 -> x = 1, y = 3
        let m = model("var x >= 0; var y; min x - y; s.t. x + y <= 4; s.t. x - y >= -2; s.t. 2*x + y = 5;");
        let o: LpOutcome<Rational> = solve(&m, &l()).unwrap();
        let LpOutcome::Optimal { value, point, .. } = &o else { panic!("{o:?}") };
        assert_eq!(*value, q(-2, 1));
        assert_eq!(point, &vec![q(1, 1), q(3, 1)]);
        assert!(verify_outcome(&m, &o, &l()));
    }

    #[test]
    fn degenerate_and_redundant_rows() {
        let m = model("var a >= 0; var b >= 0; max a + b; s.t. a + b = 1; s.t. 2*a + 2*b = 2; s.t. a <= 0;");
        let o: LpOutcome<Rational> = solve(&m, &l()).unwrap();
        let LpOutcome::Optimal { value, .. } = &o else { panic!("{o:?}") };
        assert_eq!(*value, q(1, 1));
        assert!(verify_outcome(&m, &o, &l()));
    }

    #[test]
    fn broken_certificates_fail() {
        let m = model(EXAMPLE1);
        let bad = LpOutcome::Unbounded {
            point: vec![RadicalNumber::zero(), RadicalNumber::zero(), RadicalNumber::zero(), RadicalNumber::one()],
            ray: vec![RadicalNumber::one(), RadicalNumber::zero(), RadicalNumber::one(), RadicalNumber::zero()],
        };
        assert!(!verify_outcome(&m, &bad, &l()));
        let Solution::Radical(LpOutcome::Unbounded { point, .. }) = solve_lpr(&m, FieldChoice::Auto, &l()).unwrap()
        else {
            panic!()
        };
        let shifted: Vec<RadicalNumber> = point.iter().map(|x| x.add_ref(&RadicalNumber::one())).collect();
        let bad = LpOutcome::Unbounded { point: shifted, ray: vec![RadicalNumber::zero(); 4] };
        assert!(!verify_outcome(&m, &bad, &l()));
    }

    #[test]
    fn field_choice_rules() {
        let m = model(EXAMPLE1);
        assert!(matches!(solve_lpr(&m, FieldChoice::Rational, &l()), Err(Error::Contract(_))));
        let e = model("var x; max x; s.t. exp(root(2,2))*x <= 1;");
        assert!(matches!(solve_lpr(&e, FieldChoice::Auto, &l()), Err(Error::Unsupported(_))));
        let tight = Limits { dim_cap: 1, ..l() };
        assert!(matches!(solve_lpr(&m, FieldChoice::Radical, &tight), Err(Error::Resource(_))));
    }

    #[test]
    fn radical_instantiation_matches_rational() {
        let m = model("var x >= 0; var y >= 0; var z; max 3*x + 2*y - z; s.t. x + y + z <= 4; s.t. x + 3*y >= 2; s.t. z >= -1/2; s.t. x - z <= 3;");
        let r: LpOutcome<Rational> = solve(&m, &l()).unwrap();
        let k: LpOutcome<RadicalNumber> = solve(&m, &l()).unwrap();
        assert_eq!(LpOutcome::<RadicalNumber>::from(r), k);
    }

    #[test]
    fn irrational_optimum() {
        // x = sqrt2, y = sqrt3 - sqrt2
        let m = model("var x >= 0; var y >= 0; max 2*x + y; s.t. x <= root(2,2); s.t. x + y <= root(2,3);");
        let s = solve_lpr(&m, FieldChoice::Auto, &l()).unwrap();
        let Solution::Radical(LpOutcome::Optimal { value, .. }) = &s else { panic!("{s:?}") };
        let root = |p: i64| RadicalNumber::prime_power(&p.into(), 1, 2, q(1, 1)).unwrap();
        assert_eq!(*value, root(2).add_ref(&root(3)));
        assert!(s.verify(&m, &l()));
    }
}
