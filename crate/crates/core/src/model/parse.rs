//! Native model format.
//!
//! ```text
//! model      := statement*
//! statement  := vardecl | objective | constraint
//! vardecl    := "var" IDENT [">=" "0"] ["integer"] ";"
//! objective  := ("max" | "min") expr ";"
//! constraint := ["s.t."] [IDENT ":"] expr ("=" | "<=" | ">=") expr ";"
//! expr       := ["+" | "-"] product (("+" | "-") product)*
//! product    := unary (("*" | "/") unary)*
//! unary      := "-" unary | power
//! power      := atom ["^" exponent]
//! exponent   := INT | "-" INT | "(" ["-"] INT ["/" INT] ")"
//! atom       := INT | IDENT | "root" "(" INT "," INT ")" | "exp" "(" expr ")" | "(" expr ")"
//! ```
//!
//! `root(k, n)` is `n^(1/k)`. Expressions are evaluated while parsing into
//! affine forms; products and quotients must keep them linear. `#` starts a
//! comment that runs to the end of the line.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{Coefficient, Constraint, Model, Relation, Sense, Variable};
use crate::error::{Error, Position, Result};
use crate::limits::Limits;
use crate::numeric::Rational;
use crate::radical::{canonicalize, RadicalExpr};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    SuchThat,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Semi,
    Colon,
    Eq,
    Le,
    Ge,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Int(n) => format!("integer `{n}`"),
            Tok::SuchThat => "`s.t.`".into(),
            Tok::Eof => "end of input".into(),
            other => format!("`{}`", punct(other)),
        }
    }
}

fn punct(t: &Tok) -> &'static str {
    match t {
        Tok::Plus => "+",
        Tok::Minus => "-",
        Tok::Star => "*",
        Tok::Slash => "/",
        Tok::Caret => "^",
        Tok::LParen => "(",
        Tok::RParen => ")",
        Tok::Comma => ",",
        Tok::Semi => ";",
        Tok::Colon => ":",
        Tok::Eq => "=",
        Tok::Le => "<=",
        Tok::Ge => ">=",
        _ => "?",
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Position)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let pos = Position { line, column: col };
        let advance = |n: usize, i: &mut usize, col: &mut usize| {
            *i += n;
            *col += n;
        };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            advance(1, &mut i, &mut col);
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if chars[i..].starts_with(&['s', '.', 't', '.']) {
            out.push((Tok::SuchThat, pos));
            advance(4, &mut i, &mut col);
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            col += i - start;
            out.push((Tok::Ident(chars[start..i].iter().collect()), pos));
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            col += i - start;
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Int(s.parse().expect("digits")), pos));
            continue;
        }
        let two: String = chars[i..(i + 2).min(chars.len())].iter().collect();
        let tok = match (c, two.as_str()) {
            (_, "<=") => Some((Tok::Le, 2)),
            (_, ">=") => Some((Tok::Ge, 2)),
            ('+', _) => Some((Tok::Plus, 1)),
            ('-', _) => Some((Tok::Minus, 1)),
            ('*', _) => Some((Tok::Star, 1)),
            ('/', _) => Some((Tok::Slash, 1)),
            ('^', _) => Some((Tok::Caret, 1)),
            ('(', _) => Some((Tok::LParen, 1)),
            (')', _) => Some((Tok::RParen, 1)),
            (',', _) => Some((Tok::Comma, 1)),
            (';', _) => Some((Tok::Semi, 1)),
            (':', _) => Some((Tok::Colon, 1)),
            ('=', _) => Some((Tok::Eq, 1)),
            _ => None,
        };
        match tok {
            Some((t, n)) => {
                out.push((t, pos));
                advance(n, &mut i, &mut col);
            }
            None => return Err(Error::parse(pos, format!("unexpected character {c:?}"))),
        }
    }
    out.push((Tok::Eof, Position { line, column: col }));
    Ok(out)
}

const RESERVED: [&str; 5] = ["var", "max", "min", "root", "exp"];

/// `constant + sum_j vars[j] * x_j`.
#[derive(Debug, Clone, Default)]
struct Affine {
    constant: Coefficient,
    vars: BTreeMap<usize, Coefficient>,
}

impl Affine {
    fn constant(c: Coefficient) -> Self {
        Affine { constant: c, vars: BTreeMap::new() }
    }

    fn var(j: usize) -> Self {
        Affine { constant: Coefficient::zero(), vars: BTreeMap::from([(j, Coefficient::one())]) }
    }

    fn is_constant(&self) -> bool {
        self.vars.is_empty()
    }

    fn add(mut self, other: Affine) -> Affine {
        self.constant = self.constant.add_ref(&other.constant);
        for (j, c) in other.vars {
            let s = self.vars.remove(&j).unwrap_or_default().add_ref(&c);
            if !s.is_zero() {
                self.vars.insert(j, s);
            }
        }
        self
    }

    fn neg(self) -> Affine {
        Affine {
            constant: self.constant.neg_ref(),
            vars: self.vars.into_iter().map(|(j, c)| (j, c.neg_ref())).collect(),
        }
    }

    fn scale(self, k: &Coefficient) -> Affine {
        Affine {
            constant: self.constant.mul_ref(k),
            vars: self
                .vars
                .into_iter()
                .map(|(j, c)| (j, c.mul_ref(k)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }
}

struct Parser<'a> {
    toks: Vec<(Tok, Position)>,
    at: usize,
    limits: &'a Limits,
    model: Model,
    names: BTreeMap<String, usize>,
    has_objective: bool,
}

/// Parse the native format; coefficient arithmetic is carried out exactly and
/// every coefficient ends up in canonical form.
pub fn parse_model(text: &str, limits: &Limits) -> Result<Model> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
        limits,
        model: Model::new(Vec::new()),
        names: BTreeMap::new(),
        has_objective: false,
    };
    while p.peek() != &Tok::Eof {
        p.statement()?;
    }
    Ok(p.model)
}

/// Parse a closed expression such as `root(6,48) - 2/3*(2)^(1/2)`.
pub fn parse_constant(text: &str, limits: &Limits) -> Result<Coefficient> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
        limits,
        model: Model::new(Vec::new()),
        names: BTreeMap::new(),
        has_objective: false,
    };
    let e = p.expr()?;
    if p.peek() != &Tok::Eof {
        return Err(p.unexpected("end of input"));
    }
    Ok(e.constant)
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.at + k).min(self.toks.len() - 1)].0
    }

    fn pos(&self) -> Position {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        if self.eat(&t) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{}`", punct(&t))))
        }
    }

    fn unexpected(&self, wanted: &str) -> Error {
        Error::parse(self.pos(), format!("expected {wanted}, found {}", self.peek().describe()))
    }

    fn keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn statement(&mut self) -> Result<()> {
        if self.keyword("var") {
            return self.vardecl();
        }
        if self.keyword("max") || self.keyword("min") {
            return self.objective();
        }
        self.constraint()
    }

    fn vardecl(&mut self) -> Result<()> {
        self.bump();
        let pos = self.pos();
        let name = match self.bump() {
            Tok::Ident(s) if !RESERVED.contains(&s.as_str()) && s != "integer" => s,
            t => return Err(Error::parse(pos, format!("expected variable name, found {}", t.describe()))),
        };
        if self.names.contains_key(&name) {
            return Err(Error::parse(pos, format!("variable `{name}` declared twice")));
        }
        let mut nonnegative = false;
        if self.eat(&Tok::Ge) {
            match self.peek() {
                Tok::Int(n) if n.is_zero() => {
                    self.bump();
                    nonnegative = true;
                }
                _ => return Err(self.unexpected("`0` (only `>= 0` bounds are supported)")),
            }
        }
        let integer = if self.keyword("integer") {
            self.bump();
            true
        } else {
            false
        };
        self.expect(Tok::Semi)?;
        self.names.insert(name.clone(), self.model.variables.len());
        self.model.variables.push(Variable { name, integer, nonnegative });
        Ok(())
    }

    fn objective(&mut self) -> Result<()> {
        let pos = self.pos();
        let sense = if self.keyword("max") { Sense::Max } else { Sense::Min };
        self.bump();
        if self.has_objective {
            return Err(Error::parse(pos, "more than one objective"));
        }
        let e = self.expr()?;
        if !e.constant.is_zero() {
            return Err(Error::parse(pos, "constant terms are not allowed in the objective"));
        }
        self.expect(Tok::Semi)?;
        self.has_objective = true;
        self.model.sense = sense;
        self.model.objective = e.vars;
        Ok(())
    }

    fn constraint(&mut self) -> Result<()> {
        self.eat(&Tok::SuchThat);
        let name = match (self.peek().clone(), self.peek_at(1)) {
            (Tok::Ident(s), Tok::Colon) => {
                self.bump();
                self.bump();
                s
            }
            _ => format!("c{}", self.model.constraints.len() + 1),
        };
        let lhs = self.expr()?;
        let relation = match self.peek() {
            Tok::Eq => Relation::Eq,
            Tok::Le => Relation::Le,
            Tok::Ge => Relation::Ge,
            _ => return Err(self.unexpected("`=`, `<=` or `>=`")),
        };
        self.bump();
        let rhs = self.expr()?;
        self.expect(Tok::Semi)?;
        // lhs - rhs (rel) 0, i.e. vars (rel) -constant
        let moved = lhs.add(rhs.neg());
        self.model.constraints.push(Constraint {
            name,
            lhs: moved.vars,
            relation,
            rhs: moved.constant.neg_ref(),
        });
        Ok(())
    }

    fn expr(&mut self) -> Result<Affine> {
        let negate = if self.eat(&Tok::Minus) {
            true
        } else {
            self.eat(&Tok::Plus);
            false
        };
        let mut acc = self.product()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            if self.eat(&Tok::Plus) {
                acc = acc.add(self.product()?);
            } else if self.eat(&Tok::Minus) {
                acc = acc.add(self.product()?.neg());
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<Affine> {
        let mut acc = self.unary()?;
        loop {
            let pos = self.pos();
            if self.eat(&Tok::Star) {
                let rhs = self.unary()?;
                acc = match (acc.is_constant(), rhs.is_constant()) {
                    (true, _) => rhs.scale(&acc.constant),
                    (_, true) => acc.scale(&rhs.constant),
                    _ => return Err(Error::parse(pos, "nonlinear term: product of two variables")),
                };
            } else if self.eat(&Tok::Slash) {
                let rhs = self.unary()?;
                if !rhs.is_constant() {
                    return Err(Error::parse(pos, "nonlinear term: division by a variable"));
                }
                if rhs.constant.is_zero() {
                    return Err(Error::parse(pos, "division by zero"));
                }
                let inv = rhs.constant.invert(self.limits).map_err(|e| self.lift(pos, e))?;
                acc = acc.scale(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Affine> {
        if self.eat(&Tok::Minus) {
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<Affine> {
        let base = self.atom()?;
        let pos = self.pos();
        if !self.eat(&Tok::Caret) {
            return Ok(base);
        }
        let exponent = self.exponent()?;
        if !base.is_constant() {
            return Err(Error::parse(pos, "nonlinear term: power of a variable"));
        }
        let radical = base
            .constant
            .as_radical()
            .ok_or_else(|| Error::parse(pos, "powers of exponentials are not supported"))?;
        let v = crate::radical::power(&radical, &exponent, self.limits).map_err(|e| self.lift(pos, e))?;
        Ok(Affine::constant(Coefficient::from_radical(v)))
    }

    fn exponent(&mut self) -> Result<Rational> {
        let paren = self.eat(&Tok::LParen);
        let negative = self.eat(&Tok::Minus);
        let num = self.int()?;
        let den = if paren && self.eat(&Tok::Slash) { self.int()? } else { BigInt::from(1) };
        if paren {
            self.expect(Tok::RParen)?;
        }
        if den.is_zero() {
            return Err(Error::parse(self.pos(), "zero denominator in exponent"));
        }
        let r = Rational::new(num, den);
        Ok(if negative { -r } else { r })
    }

    fn int(&mut self) -> Result<BigInt> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(n)
            }
            _ => Err(self.unexpected("integer")),
        }
    }

    fn atom(&mut self) -> Result<Affine> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Affine::constant(Coefficient::from_rational(Rational::from_integer(n))))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Ident(s) if s == "root" => {
                self.bump();
                self.expect(Tok::LParen)?;
                let kpos = self.pos();
                let degree = self.int()?;
                self.expect(Tok::Comma)?;
                let radicand = self.int()?;
                self.expect(Tok::RParen)?;
                let degree = degree
                    .to_u32()
                    .ok_or_else(|| Error::parse(kpos, format!("root degree {degree} out of range")))?;
                let v = canonicalize(&RadicalExpr::Root { degree, radicand }, self.limits)
                    .map_err(|e| self.lift(pos, e))?;
                Ok(Affine::constant(Coefficient::from_radical(v)))
            }
            Tok::Ident(s) if s == "exp" => {
                self.bump();
                self.expect(Tok::LParen)?;
                let arg = self.expr()?;
                self.expect(Tok::RParen)?;
                if !arg.is_constant() {
                    return Err(Error::parse(pos, "exp of a variable is nonlinear"));
                }
                let alpha = arg
                    .constant
                    .as_radical()
                    .ok_or_else(|| Error::parse(pos, "nested exp is not supported"))?;
                Ok(Affine::constant(Coefficient::exp_term(alpha, crate::radical::RadicalNumber::one())))
            }
            Tok::Ident(s) if !RESERVED.contains(&s.as_str()) => {
                self.bump();
                match self.names.get(&s) {
                    Some(&j) => Ok(Affine::var(j)),
                    None => Err(Error::parse(pos, format!("undeclared variable `{s}`"))),
                }
            }
            _ => Err(self.unexpected("a number, variable, `root`, `exp` or `(`")),
        }
    }

    /// Attach a position to arithmetic failures; budget overruns stay resource errors.
    fn lift(&self, pos: Position, e: Error) -> Error {
        match e {
            Error::Resource(_) => e,
            other => Error::parse(pos, other.to_string()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radical::RadicalNumber;

    const EXAMPLE1: &str = "\
var x1 >= 0 integer;
var x2 >= 0 integer;
var x3 >= 0 integer;
var x4 >= 0 integer;
max x1;
s.t. c1: x3 - root(2,2)*(x1 - x2) = 0;
s.t. c2: x2 + x4 = 1;
";

    fn parse(text: &str) -> Result<Model> {
        parse_model(text, &Limits::default())
    }

    fn sqrt(p: i64) -> RadicalNumber {
        RadicalNumber::prime_power(&p.into(), 1, 2, Rational::from_integer(1.into())).unwrap()
    }

    #[test]
    fn example1() {
        let m = parse(EXAMPLE1).unwrap();
        assert_eq!(m.variables.len(), 4);
        assert!(m.variables.iter().all(|v| v.integer && v.nonnegative));
        assert_eq!(m.sense, Sense::Max);
        assert_eq!(m.objective, BTreeMap::from([(0, Coefficient::one())]));
        assert_eq!(m.constraints.len(), 2);
        assert!(m.constraints.iter().all(|c| c.relation == Relation::Eq));
        let c1 = &m.constraints[0];
        assert_eq!(c1.lhs[&0], Coefficient::from_radical(sqrt(2).neg_ref()));
        assert_eq!(c1.lhs[&1], Coefficient::from_radical(sqrt(2)));
        assert_eq!(c1.lhs[&2], Coefficient::one());
        assert!(c1.rhs.is_zero());
        assert_eq!(m.constraints[1].rhs, Coefficient::one());
    }

    #[test]
    fn single_term() {
        let m = parse("var x1; s.t. c: root(2,2)*x1 = 1;").unwrap();
        assert_eq!(m.constraints[0].lhs[&0], Coefficient::from_radical(sqrt(2)));
        assert!(!m.variables[0].integer && !m.variables[0].nonnegative);
    }

    #[test]
    fn exp_groups() {
        let m = parse(
            "var x1 integer; var x2 integer;\n\
             s.t. c: exp(root(2,2))*(x1 - 1) + exp(root(2,3))*(x2 - 2) = 0;",
        )
        .unwrap();
        let c = &m.constraints[0];
        let one = RadicalNumber::one();
        assert_eq!(c.lhs[&0], Coefficient::exp_term(sqrt(2), one.clone()));
        assert_eq!(c.lhs[&1], Coefficient::exp_term(sqrt(3), one.clone()));
        let expected_rhs = Coefficient::exp_term(sqrt(2), one.clone())
            .add_ref(&Coefficient::exp_term(sqrt(3), RadicalNumber::from_integer(2)));
        assert_eq!(c.rhs, expected_rhs);
        assert_eq!(c.rhs.num_groups(), 2);
    }

    #[test]
    fn both_sides_normalize() {
        let m = parse("var x; var y; s.t. 2*x + 3 <= y - 1/2;").unwrap();
        let c = &m.constraints[0];
        assert_eq!(c.name, "c1");
        assert_eq!(c.lhs[&0], Coefficient::from_integer(2));
        assert_eq!(c.lhs[&1], Coefficient::from_integer(-1));
        assert_eq!(c.rhs, Coefficient::from_rational(Rational::new((-7).into(), 2.into())));
    }

    #[test]
    fn powers_and_division() {
        let m = parse("var x; s.t. (2)^(1/2) * x / root(2,2) + 8^(2/3) * x = 0;").unwrap();
        assert_eq!(m.constraints[0].lhs[&0], Coefficient::from_integer(5));
    }

    #[test]
    fn constants() {
        let l = Limits::default();
        assert_eq!(parse_constant("root(6,48)", &l).unwrap().to_string(), "(2)^(2/3) * (3)^(1/6)");
        assert_eq!(parse_constant("(2)^(2/3) * (3)^(1/6)", &l).unwrap(), parse_constant("root(6,48)", &l).unwrap());
        assert!(matches!(parse_constant("x + 1", &l), Err(Error::Parse { .. })));
        assert!(matches!(parse_constant("1 2", &l), Err(Error::Parse { .. })));
    }

    #[test]
    fn error_positions() {
        let e = parse("var x;\nvar y;\ns.t. x * y = 1;").unwrap_err();
        assert!(matches!(e, Error::Parse { pos: Position { line: 3, column: 8 }, .. }), "{e}");
        let e = parse("var x;\ns.t. x + z = 1;").unwrap_err();
        assert!(e.to_string().contains("undeclared variable `z`"), "{e}");
        let e = parse("var x; s.t. exp(exp(1))*x = 1;").unwrap_err();
        assert!(e.to_string().contains("nested exp"), "{e}");
        let e = parse("var x; s.t. x / (root(2,2) - root(2,2)) = 1;").unwrap_err();
        assert!(e.to_string().contains("division by zero"), "{e}");
        let e = parse("var x; s.t. x = 1").unwrap_err();
        assert!(e.to_string().contains("expected `;`"), "{e}");
        let e = parse("var x; s.t. x @ 1;").unwrap_err();
        assert!(matches!(e, Error::Parse { pos: Position { line: 1, column: 15 }, .. }), "{e}");
    }

    #[test]
    fn rejects_nonlinear_constructions() {
        let corpus = [
            "x * x = 1;",
            "x * (y + 1) = 0;",
            "(x + 1) * (x - 1) = 0;",
            "1 / x = 2;",
            "x ^ 2 = 4;",
            "exp(x) = 1;",
            "root(2,2) * x * y <= 3;",
            "(2 * x) * (3 * y) >= 1;",
            "x / (y - y + x) = 1;",
        ];
        for src in corpus {
            let text = format!("var x; var y; s.t. {src}");
            let e = parse(&text).unwrap_err();
            assert!(e.to_string().contains("nonlinear"), "{src}: {e}");
        }
    }
}
