//! Fixtures shared by the benchmarks.

use rr_core::{parse_constant, parse_model, Limits, Model, RadicalNumber};

pub const EXAMPLE1: &str = "\
var x1 >= 0 integer;
var x2 >= 0 integer;
var x3 >= 0 integer;
var x4 >= 0 integer;
max x1;
s.t. c1: x3 - root(2,2)*(x1 - x2) = 0;
s.t. c2: x2 + x4 = 1;
";

/// A three-term element of the dimension 288 field over 2^(1/12), 3^(1/6), 5^(1/4).
pub const DIM288: &str = "7/9*root(2,12)^5*root(5,4) + 8/7*root(2,3)^2*root(3,6) + 1/2*root(2,4)^3*root(3,3)*root(5,2)";

pub fn example1() -> Model {
    parse_model(EXAMPLE1, &Limits::default()).expect("fixture parses")
}

pub fn constant(text: &str) -> RadicalNumber {
    parse_constant(text, &Limits::default())
        .expect("fixture parses")
        .as_radical()
        .expect("no exp terms")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_parse() {
        assert_eq!(example1().constraints.len(), 2);
        assert_eq!(constant(DIM288).num_terms(), 3);
    }
}
