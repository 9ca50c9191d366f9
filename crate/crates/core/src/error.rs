use std::fmt;

use crate::numeric::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// An argument outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A configured effort cap (factorization budget, dimension, precision,
    /// enumeration volume) was exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("{pos}: {message}")]
    Parse { pos: Position, message: String },

    #[error("model error: {0}")]
    Model(String),

    /// Exponents of an exp-group constraint admit a rational dependence.
    /// `witness[i]` multiplies the i-th nonzero exponent.
    #[error("exponents are linearly dependent over Q: {}", format_witness(.witness))]
    DependentExponents { witness: Vec<Rational> },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub(crate) fn parse(pos: Position, message: impl Into<String>) -> Self {
        Error::Parse { pos, message: message.into() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

fn format_witness(w: &[Rational]) -> String {
    let terms: Vec<String> = w
        .iter()
        .enumerate()
        .map(|(i, c)| format!("({c})*a{}", i + 1))
        .collect();
    format!("{} = 0", terms.join(" + "))
}
