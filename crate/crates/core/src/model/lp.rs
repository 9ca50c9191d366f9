use std::fmt::Write;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Coefficient, Model, Relation, Sense};
use crate::error::{Error, Result};
use crate::numeric::Rational;
use crate::radical::RadicalNumber;

/// Decimal text for `x`, plus whether it is inexact. Rationals with a
/// terminating expansion print exactly; anything else is rounded to
/// `precision` significant digits.
pub fn format_decimal(x: &RadicalNumber, precision: usize) -> (String, bool) {
    let precision = precision.max(1);
    if let Some(r) = x.as_rational() {
        if let Some(s) = exact_decimal(&r) {
            return (s, false);
        }
        return (round_significant(&r, precision), true);
    }
    // Irrational values never sit on a rounding tie, so the rounded bounds
    // agree once the enclosure is narrow enough.
    let mut bits = (precision as u32) * 4 + 32;
    loop {
        let e = x.evaluate(bits);
        let (lo, hi) = (round_significant(&e.lower(), precision), round_significant(&e.upper(), precision));
        if lo == hi || bits > 1 << 16 {
            return (lo, true);
        }
        bits *= 2;
    }
}

fn exact_decimal(r: &Rational) -> Option<String> {
    let mut d = r.denom().clone();
    let (two, five) = (BigInt::from(2), BigInt::from(5));
    let (mut twos, mut fives) = (0u32, 0u32);
    while d.is_even() {
        d /= &two;
        twos += 1;
    }
    while (&d % &five).is_zero() {
        d /= &five;
        fives += 1;
    }
    if !d.is_one() {
        return None;
    }
    let places = twos.max(fives);
    let m = r * Rational::from_integer(BigInt::from(10).pow(places));
    Some(place_point(m.to_integer(), -(places as i64)))
}

/// `m * 10^exp10` written without an exponent.
fn place_point(m: BigInt, exp10: i64) -> String {
    let neg = m.is_negative();
    let mut digits = m.abs().to_string();
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if exp10 >= 0 {
        if !m.is_zero() {
            digits.extend(std::iter::repeat('0').take(exp10 as usize));
        }
        out.push_str(&digits);
        return out;
    }
    let frac = (-exp10) as usize;
    if digits.len() <= frac {
        digits = "0".repeat(frac - digits.len() + 1) + &digits;
    }
    let (int, fr) = digits.split_at(digits.len() - frac);
    let fr = fr.trim_end_matches('0');
    out.push_str(int);
    if !fr.is_empty() {
        out.push('.');
        out.push_str(fr);
    }
    out
}

fn round_significant(r: &Rational, precision: usize) -> String {
    if r.is_zero() {
        return "0".into();
    }
    let a = r.abs();
    let ten = Rational::from_integer(10.into());
    // e = floor(log10 |r|)
    let mut e: i64 = 0;
    let mut p = Rational::one();
    while p > a {
        p /= &ten;
        e -= 1;
    }
    while &p * &ten <= a {
        p *= &ten;
        e += 1;
    }
    let mut exp10 = e - precision as i64 + 1;
    let shifted = a * pow10(-exp10);
    let mut m = (shifted + Rational::new(1.into(), 2.into())).floor().to_integer();
    if m == BigInt::from(10).pow(precision as u32) {
        m /= 10;
        exp10 += 1;
    }
    if r.is_negative() {
        m = -m;
    }
    place_point(m, exp10)
}

fn pow10(k: i64) -> Rational {
    let p = Rational::from_integer(BigInt::from(10).pow(k.unsigned_abs() as u32));
    if k >= 0 {
        p
    } else {
        p.recip()
    }
}

/// CPLEX LP text. Radical coefficients are rounded to `precision` significant
/// digits, in which case a warning comment heads the file. Exponential
/// coefficients have no decimal form here and are rejected.
pub fn export_lp(m: &Model, precision: usize) -> Result<String> {
    if m.has_exp() {
        return Err(Error::Unsupported("LP export of exp() coefficients".into()));
    }
    let mut lossy = false;
    let mut num = |c: &Coefficient| {
        let (s, l) = format_decimal(&c.radical_part(), precision);
        lossy |= l;
        s
    };
    let fallback = m.variables.first().map(|v| format!("0 {}", v.name)).unwrap_or_default();
    let mut lin = |terms: &std::collections::BTreeMap<usize, Coefficient>| {
        let mut s = String::new();
        for (&j, c) in terms {
            let v = num(c);
            let (sign, mag) = match v.strip_prefix('-') {
                Some(rest) => ("-", rest.to_string()),
                None => ("+", v),
            };
            if !(s.is_empty() && sign == "+") {
                s.push_str(if s.is_empty() { "- " } else if sign == "-" { " - " } else { " + " });
            }
            if mag != "1" {
                s.push_str(&mag);
                s.push(' ');
            }
            s.push_str(&m.variables[j].name);
        }
        if s.is_empty() {
            s = fallback.clone();
        }
        s
    };
    let mut body = String::new();
    body.push_str(match m.sense {
        Sense::Max => "Maximize\n",
        Sense::Min => "Minimize\n",
    });
    let _ = writeln!(body, " obj: {}", lin(&m.objective));
    body.push_str("Subject To\n");
    let mut rows = Vec::new();
    for c in &m.constraints {
        let rel = match c.relation {
            Relation::Eq => "=",
            Relation::Le => "<=",
            Relation::Ge => ">=",
        };
        rows.push(format!(" {}: {} {} ", c.name, lin(&c.lhs), rel));
    }
    for (row, c) in rows.iter().zip(&m.constraints) {
        let _ = writeln!(body, "{row}{}", num(&c.rhs));
    }
    let free: Vec<&str> = m.variables.iter().filter(|v| !v.nonnegative).map(|v| v.name.as_str()).collect();
    if !free.is_empty() {
        body.push_str("Bounds\n");
        for v in free {
            let _ = writeln!(body, " {v} free");
        }
    }
    let ints: Vec<&str> = m.variables.iter().filter(|v| v.integer).map(|v| v.name.as_str()).collect();
    if !ints.is_empty() {
        let _ = writeln!(body, "General\n {}", ints.join(" "));
    }
    body.push_str("End\n");
    if lossy {
        body = format!("\\ WARNING: irrational coefficients rounded to {precision} significant digits\n{body}");
    }
    Ok(body)
}
