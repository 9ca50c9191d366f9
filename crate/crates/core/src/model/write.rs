use std::collections::BTreeMap;
use std::fmt::Write;

use num_traits::{One, Signed};

use super::{Coefficient, Model, Sense};

/// Deterministic text in the native format; `parse_model` reads it back to an
/// identical model.
pub fn write_model(m: &Model) -> String {
    let mut out = String::new();
    for v in &m.variables {
        out.push_str("var ");
        out.push_str(&v.name);
        if v.nonnegative {
            out.push_str(" >= 0");
        }
        if v.integer {
            out.push_str(" integer");
        }
        out.push_str(";\n");
    }
    let sense = match m.sense {
        Sense::Max => "max",
        Sense::Min => "min",
    };
    let _ = writeln!(out, "{sense} {};", linear_form(m, &m.objective));
    for c in &m.constraints {
        let _ = writeln!(out, "s.t. {}: {} {} {};", c.name, linear_form(m, &c.lhs), c.relation, c.rhs);
    }
    out
}

pub(crate) fn linear_form(m: &Model, terms: &BTreeMap<usize, Coefficient>) -> String {
    let mut out = String::new();
    for (&j, c) in terms {
        let name = &m.variables[j].name;
        let first = out.is_empty();
        let (negative, body) = term(c);
        match (first, negative) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        match body {
            None => out.push_str(name),
            Some(b) => {
                let _ = write!(out, "{b}*{name}");
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Sign and printed magnitude of a coefficient; `None` for magnitude one.
fn term(c: &Coefficient) -> (bool, Option<String>) {
    if let Some(r) = c.as_rational() {
        let mag = r.abs();
        return (r.is_negative(), (!mag.is_one()).then(|| mag.to_string()));
    }
    if let Some(r) = c.single_monomial() {
        let (_, coef) = r.terms().next().unwrap();
        if coef.is_negative() {
            return (true, Some(r.neg_ref().to_string()));
        }
        return (false, Some(r.to_string()));
    }
    (false, Some(format!("({c})")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limits::Limits;
    use crate::model::parse_model;

    #[test]
    fn round_trip_example1() {
        let src = "var x1 >= 0 integer; var x2 >= 0 integer; var x3 >= 0 integer; var x4 >= 0 integer;\n\
                   max x1; s.t. c1: x3 - root(2,2)*(x1 - x2) = 0; s.t. c2: x2 + x4 = 1;";
        let l = Limits::default();
        let m = parse_model(src, &l).unwrap();
        let text = write_model(&m);
        assert!(text.contains("s.t. c1: -(2)^(1/2)*x1 + (2)^(1/2)*x2 + x3 = 0;"), "{text}");
        let again = parse_model(&text, &l).unwrap();
        assert_eq!(again, m);
        assert_eq!(write_model(&again), text);
    }

    #[test]
    fn round_trip_awkward_coefficients() {
        let src = "var a; var b integer; var c >= 0;\n\
                   min -2/3*a + (1 - root(2,3))*b - 3/4*root(6,48)*c;\n\
                   s.t. k: exp(root(2,2))*(a - 1/2) + exp(-root(2,3) + 1)*2*b + (1 + root(2,5))*c >= -7/3;\n\
                   s.t. 0 = 1;";
        let l = Limits::default();
        let m = parse_model(src, &l).unwrap();
        let text = write_model(&m);
        let again = parse_model(&text, &l).unwrap();
        assert_eq!(again, m, "{text}");
    }

    #[test]
    fn empty_model() {
        let l = Limits::default();
        let m = parse_model("var x >= 0;", &l).unwrap();
        let text = write_model(&m);
        assert_eq!(text, "var x >= 0;\nmax 0;\n");
        assert_eq!(parse_model(&text, &l).unwrap(), m);
        let empty = parse_model("", &l).unwrap();
        assert_eq!(parse_model(&write_model(&empty), &l).unwrap(), empty);
    }
}
