//! Integer-program models with radical and exp-radical coefficients.

mod coefficient;
mod lp;
mod parse;
mod write;

use std::collections::BTreeMap;
use std::fmt;

pub use coefficient::Coefficient;
pub use lp::{export_lp, format_decimal};
pub use parse::{parse_constant, parse_model};
pub use write::write_model;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Variable {
    pub name: String,
    pub integer: bool,
    /// `true` for `x >= 0`, `false` for a free variable.
    pub nonnegative: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Relation {
    Eq,
    Le,
    Ge,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Eq => "=",
            Relation::Le => "<=",
            Relation::Ge => ">=",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Max,
    Min,
}

/// `sum_j lhs[j] * x_j  (relation)  rhs`, keyed by variable index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub name: String,
    pub lhs: BTreeMap<usize, Coefficient>,
    pub relation: Relation,
    pub rhs: Coefficient,
}

impl Constraint {
    pub fn is_equality(&self) -> bool {
        self.relation == Relation::Eq
    }

    /// `sum_j lhs[j] * x_j - rhs` at `point`.
    pub fn residual(&self, point: &[Coefficient]) -> Coefficient {
        let mut acc = self.rhs.neg_ref();
        for (&j, c) in &self.lhs {
            acc = acc.add_ref(&c.mul_ref(&point[j]));
        }
        acc
    }

    pub fn coefficients(&self) -> impl Iterator<Item = &Coefficient> {
        self.lhs.values().chain(std::iter::once(&self.rhs))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Model {
    pub variables: Vec<Variable>,
    pub sense: Sense,
    pub objective: BTreeMap<usize, Coefficient>,
    pub constraints: Vec<Constraint>,
}

impl Model {
    pub fn new(variables: Vec<Variable>) -> Self {
        Model { variables, sense: Sense::Max, objective: BTreeMap::new(), constraints: Vec::new() }
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v.name == name)
    }

    /// Check that names are unique and every index refers to a declared variable.
    pub fn validate(&self) -> Result<()> {
        let mut seen = std::collections::BTreeSet::new();
        for v in &self.variables {
            if !seen.insert(v.name.as_str()) {
                return Err(Error::Model(format!("variable {} declared twice", v.name)));
            }
        }
        let n = self.variables.len();
        let bad = |j: &usize| *j >= n;
        if self.objective.keys().any(bad) {
            return Err(Error::Model("objective references an undeclared variable".into()));
        }
        for c in &self.constraints {
            if c.lhs.keys().any(bad) {
                return Err(Error::Model(format!("constraint {} references an undeclared variable", c.name)));
            }
        }
        Ok(())
    }

    fn all_coefficients(&self) -> impl Iterator<Item = &Coefficient> {
        self.objective.values().chain(self.constraints.iter().flat_map(|c| c.coefficients()))
    }

    pub fn is_rational(&self) -> bool {
        self.all_coefficients().all(Coefficient::is_rational)
    }

    pub fn has_exp(&self) -> bool {
        self.all_coefficients().any(Coefficient::has_exp)
    }
}
