//! Exact rationalization of integer programs whose coefficients are
//! polynomials in roots of integers, optionally weighted by exponentials of
//! such numbers.
//!
//! The pipeline: [`model::parse_model`] reads a model, [`rationalize::rationalize_model`]
//! replaces every eligible equality by the rational equalities it implies on
//! integer points, [`simplex::solve_lpr`] solves relaxations exactly, and
//! [`oracle`] checks the result by brute-force enumeration.

pub mod error;
pub mod limits;
pub mod model;
pub mod numeric;
pub mod oracle;
pub mod radical;
pub mod rationalize;
pub mod simplex;

pub use error::{Error, Result};
pub use limits::Limits;
pub use numeric::{PrimeFactorization, Rational};
pub use radical::{canonicalize, unify_bases, Monomial, RadicalBasis, RadicalExpr, RadicalNumber, Root};
pub use model::{parse_constant, parse_model, write_model, Coefficient, Constraint, Model, Relation, Sense, Variable};
pub use oracle::{check_equivalence, feasible_points, substitution_zero_check, Equivalence, IntegerBox};
pub use rationalize::{rationalize_model, Provenance, RationalizedModel, TransformReport};
pub use simplex::{solve_lpr, verify_outcome, FieldChoice, LpOutcome, OrderedField, Solution};
