//! Text form of polynomials: `3*t1^2*t2^-1 + 1`.
//!
//! Coefficients are signed integers or fractions `a/b`; factors are separated by
//! `*` and raised with `^`. Printing uses the canonical (descending grevlex)
//! term order so that parse and print round-trip.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::poly::Poly;
use crate::error::{Error, Result};

pub fn format_poly(p: &Poly, names: &[String]) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = format_monomial(m, names);
        if mono.is_empty() {
            out.push_str(&a.to_string());
        } else if a.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&a.to_string());
            out.push('*');
            out.push_str(&mono);
        }
    }
    out
}

fn format_monomial(m: &Monomial, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exps().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[i].clone()),
            _ => parts.push(format!("{}^{}", names[i], e)),
        }
    }
    parts.join("*")
}

/// Parse a polynomial over the given variable names.
pub fn parse_poly(s: &str, names: &[String]) -> Result<Poly> {
    let toks = tokenize(s)?;
    let n = names.len();
    let mut p = Poly::zero(n);
    let mut pos = 0;
    let mut first = true;
    if toks.is_empty() {
        return Err(Error::Parse("empty input".into()));
    }
    while pos < toks.len() {
        let mut sign = BigRational::one();
        match &toks[pos] {
            Tok::Plus => {
                pos += 1;
            }
            Tok::Minus => {
                sign = -sign;
                pos += 1;
            }
            _ if first => {}
            t => return Err(Error::Parse(format!("expected + or -, found {t:?}"))),
        }
        first = false;
        let (m, c, next) = parse_term(&toks, pos, names)?;
        pos = next;
        p.add_term(m, c * sign);
    }
    if p.has_negative_exponent() {
        p = p.into_laurent();
    }
    Ok(p)
}

fn parse_term(toks: &[Tok], mut pos: usize, names: &[String]) -> Result<(Monomial, BigRational, usize)> {
    let n = names.len();
    let mut coeff = BigRational::one();
    let mut exps = vec![0i32; n];
    let mut expect_factor = true;
    let mut seen_any = false;
    while pos < toks.len() && expect_factor {
        match &toks[pos] {
            Tok::Num(a) => {
                pos += 1;
                let mut v = BigRational::from_integer(a.clone());
                if let Some(Tok::Slash) = toks.get(pos) {
                    pos += 1;
                    match toks.get(pos) {
                        Some(Tok::Num(b)) if !b.is_zero() => {
                            v /= BigRational::from_integer(b.clone());
                            pos += 1;
                        }
                        _ => return Err(Error::Parse("bad denominator".into())),
                    }
                }
                coeff *= v;
            }
            Tok::Ident(name) => {
                pos += 1;
                let i = names
                    .iter()
                    .position(|x| x == name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable {name}")))?;
                let mut e = 1i32;
                if let Some(Tok::Caret) = toks.get(pos) {
                    pos += 1;
                    let neg = matches!(toks.get(pos), Some(Tok::Minus));
                    if neg {
                        pos += 1;
                    }
                    match toks.get(pos) {
                        Some(Tok::Num(k)) => {
                            let k: i32 = k
                                .try_into()
                                .map_err(|_| Error::Parse("exponent too large".into()))?;
                            e = if neg { -k } else { k };
                            pos += 1;
                        }
                        _ => return Err(Error::Parse("missing exponent".into())),
                    }
                }
                exps[i] += e;
            }
            t => return Err(Error::Parse(format!("unexpected token {t:?}"))),
        }
        seen_any = true;
        if let Some(Tok::Star) = toks.get(pos) {
            pos += 1;
            expect_factor = true;
        } else {
            expect_factor = false;
        }
    }
    if !seen_any || expect_factor {
        return Err(Error::Parse("dangling operator".into()));
    }
    Ok((Monomial(exps), coeff, pos))
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < cs.len() {
        let c = cs[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' => {
                out.push(Tok::Star);
                i += 1
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1
            }
            '0'..='9' => {
                let st = i;
                while i < cs.len() && cs[i].is_ascii_digit() {
                    i += 1;
                }
                let txt: String = cs[st..i].iter().collect();
                out.push(Tok::Num(txt.parse().unwrap()));
            }
            c if c.is_alphabetic() || c == '_' => {
                let st = i;
                while i < cs.len() && (cs[i].is_alphanumeric() || cs[i] == '_' || cs[i] == '\'') {
                    i += 1;
                }
                out.push(Tok::Ident(cs[st..i].iter().collect()));
            }
            other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

/// Names `prefix1..prefixn`.
pub fn indexed_names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn grammar_example_round_trips() {
        let nm = names(&["t1", "t2"]);
        let p = parse_poly("3*t1^2*t2^-1 + 1", &nm).unwrap();
        assert!(p.is_laurent());
        assert_eq!(p.fmt_with(&nm), "3*t1^2*t2^-1 + 1");
        let q = parse_poly(&p.fmt_with(&nm), &nm).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn signs_fractions_and_zero() {
        let nm = names(&["x", "y"]);
        let p = parse_poly("-x^2 + 3/2*y - 7", &nm).unwrap();
        assert_eq!(p.fmt_with(&nm), "-x^2 + 3/2*y - 7");
        assert!(parse_poly("0", &nm).unwrap().is_zero());
        assert!(parse_poly("x - x", &nm).unwrap().is_zero());
        assert_eq!(parse_poly("2*x*3", &nm).unwrap().fmt_with(&nm), "6*x");
    }

    #[test]
    fn errors() {
        let nm = names(&["x"]);
        assert!(parse_poly("y", &nm).is_err());
        assert!(parse_poly("x +", &nm).is_err());
        assert!(parse_poly("x^", &nm).is_err());
        assert!(parse_poly("", &nm).is_err());
        assert!(parse_poly("1/0", &nm).is_err());
    }
}
