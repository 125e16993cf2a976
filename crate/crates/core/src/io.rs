//! Monomial-ideal text format and table serialization.
//!
//! Grammar (whitespace is ignored):
//!
//! ```text
//! ideal  := term (',' term)*
//! term   := factor ('*' factor)*
//! factor := ident ('^' positive-integer)?
//! ```
//!
//! Two extras make every ideal printable: the factor `1` is the empty monomial,
//! and the whole input `0` is the zero ideal.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use serde::{Serialize, Serializer};

use crate::cohomology::LengthRecord;
use crate::error::{ParseError, ParseErrorKind};
use crate::k3::ConvergenceRow;
use crate::monomial::{minimalize, ExponentVector, MonomialIdeal};
use crate::numeric::{fraction_string, rational_decimal, BigRational, QuadraticNumber};

/// Declared variables plus the raw generator terms of one ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealSource {
    pub variable_names: Vec<String>,
    pub generator_terms: Vec<String>,
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl IdealSource {
    /// Checks the variable list (unique identifiers) and splits `text` into terms.
    pub fn new(variables: &[String], text: &str) -> Result<Self, ParseError> {
        validate_variables(variables)?;
        let generator_terms = if text.trim() == "0" {
            Vec::new()
        } else {
            text.split(',').map(|t| t.trim().to_string()).collect()
        };
        Ok(IdealSource { variable_names: variables.to_vec(), generator_terms })
    }

    pub fn to_ideal(&self) -> Result<MonomialIdeal, ParseError> {
        parse_ideal(&self.generator_terms.join(","), &self.variable_names)
    }
}

fn validate_variables(variables: &[String]) -> Result<(), ParseError> {
    for (i, v) in variables.iter().enumerate() {
        if !is_ident(v) {
            return Err(ParseError { kind: ParseErrorKind::InvalidVariableName(v.clone()), position: 0 });
        }
        if variables[..i].contains(v) {
            return Err(ParseError { kind: ParseErrorKind::DuplicateVariable(v.clone()), position: 0 });
        }
    }
    Ok(())
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    variables: &'a [String],
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn error(&self, kind: ParseErrorKind, at: usize) -> ParseError {
        ParseError { kind, position: at + 1 }
    }

    fn term(&mut self) -> Result<ExponentVector, ParseError> {
        let mut exps = vec![0u32; self.variables.len()];
        loop {
            self.factor(&mut exps)?;
            if self.peek() == Some('*') {
                self.pos += 1;
            } else {
                return Ok(ExponentVector::new(exps));
            }
        }
    }

    fn factor(&mut self, exps: &mut [u32]) -> Result<(), ParseError> {
        let start = match self.peek() {
            None | Some(',') | Some('*') => return Err(self.error(ParseErrorKind::EmptyTerm, self.pos)),
            Some(_) => self.pos,
        };
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_') {
            self.pos += 1;
        }
        let word: String = self.chars[start..self.pos].iter().collect();
        if word.is_empty() {
            return Err(self.error(ParseErrorKind::UnexpectedChar(self.chars[start]), start));
        }
        let index = if word == "1" {
            None
        } else {
            let i = self.variables.iter().position(|v| *v == word);
            Some(i.ok_or_else(|| self.error(ParseErrorKind::UnknownVariable(word.clone()), start))?)
        };
        let mut power = 1u32;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let digits_start = self.pos;
            while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            let digits: String = self.chars[digits_start..self.pos].iter().collect();
            power = match digits.parse::<u32>() {
                Ok(p) if p > 0 => p,
                _ => return Err(self.error(ParseErrorKind::MalformedExponent, digits_start)),
            };
        }
        if let Some(i) = index {
            exps[i] = exps[i]
                .checked_add(power)
                .ok_or_else(|| self.error(ParseErrorKind::MalformedExponent, start))?;
        }
        Ok(())
    }
}

/// Parse a comma-separated list of monomials over the declared `variables`.
/// Positions in errors are 1-based character offsets into `text`.
pub fn parse_ideal(text: &str, variables: &[String]) -> Result<MonomialIdeal, ParseError> {
    validate_variables(variables)?;
    let dim = variables.len();
    if text.trim() == "0" {
        return Ok(MonomialIdeal::zero(dim));
    }
    let mut p = Parser { chars: text.chars().collect(), pos: 0, variables };
    let mut gens = Vec::new();
    loop {
        gens.push(p.term()?);
        match p.peek() {
            None => break,
            Some(',') => p.pos += 1,
            Some(c) => return Err(p.error(ParseErrorKind::UnexpectedChar(c), p.pos)),
        }
    }
    Ok(minimalize(dim, gens).expect("every term has one slot per variable"))
}

/// Inverse of [`parse_ideal`]: `"x^2*y, y^3"`.
pub fn render_ideal(ideal: &MonomialIdeal, variables: &[String]) -> String {
    if ideal.is_zero() {
        return "0".to_string();
    }
    let terms: Vec<String> = ideal
        .generators()
        .iter()
        .map(|g| {
            let factors: Vec<String> = g
                .exponents()
                .iter()
                .zip(variables)
                .filter(|(e, _)| **e > 0)
                .map(|(e, v)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
                .collect();
            if factors.is_empty() {
                "1".to_string()
            } else {
                factors.join("*")
            }
        })
        .collect();
    terms.join(", ")
}

/// Parse a `--vars x,y,z` list.
pub fn parse_variable_list(list: &str) -> Vec<String> {
    list.split(',').map(|v| v.trim().to_string()).filter(|v| !v.is_empty()).collect()
}

pub fn quadratic_text(q: &QuadraticNumber) -> String {
    format!("{} + {}·√{}", fraction_string(q.rational_part()), fraction_string(q.radical_part()), q.radicand())
}

pub fn rational_string<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&fraction_string(r))
}

pub fn bigint_string<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Serde adapter writing big unsigned integers as decimal strings.
pub mod biguint_string {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(D::Error::custom)
    }
}

pub const LENGTH_CSV_HEADER: &str = "n,lambda,sigma,tau,e";

pub fn length_records_csv(records: &[LengthRecord]) -> String {
    let mut out = format!("{LENGTH_CSV_HEADER}\n");
    for r in records {
        let _ = writeln!(out, "{},{},{},{},{}", r.n, r.lambda, r.sigma, r.tau, r.cutoff_e);
    }
    out
}

pub fn length_records_json(records: &[LengthRecord]) -> serde_json::Value {
    serde_json::to_value(records).expect("records serialize")
}

/// Flat row for K3 σ tables: `{n, sigma, ratio_num, ratio_den, extrapolant_decimal}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SigmaRow {
    pub n: u32,
    pub sigma: String,
    pub ratio_num: String,
    pub ratio_den: String,
    pub extrapolant_decimal: Option<String>,
}

pub const SIGMA_CSV_HEADER: &str = "n,sigma,ratio_num,ratio_den,extrapolant_decimal";

impl SigmaRow {
    pub fn from_row(row: &ConvergenceRow, digits: usize) -> Self {
        SigmaRow {
            n: row.n,
            sigma: row.sigma.to_string(),
            ratio_num: row.ratio.numer().to_string(),
            ratio_den: row.ratio.denom().to_string(),
            extrapolant_decimal: row.extrapolant.as_ref().map(|x| rational_decimal(x, digits)),
        }
    }
}

pub fn sigma_rows_csv(rows: &[SigmaRow]) -> String {
    let mut out = format!("{SIGMA_CSV_HEADER}\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            r.n,
            r.sigma,
            r.ratio_num,
            r.ratio_den,
            r.extrapolant_decimal.as_deref().unwrap_or("")
        );
    }
    out
}

/// Generic `n,value` table for integer sequences.
pub fn sequence_csv(header: &str, values: &[BigUint]) -> String {
    let mut out = format!("n,{header}\n");
    for (i, v) in values.iter().enumerate() {
        let _ = writeln!(out, "{},{}", i + 1, v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parse_examples() {
        let xy = vars(&["x", "y"]);
        let i = parse_ideal("x^2*y, y^3", &xy).unwrap();
        assert_eq!(i, MonomialIdeal::from_exponents(2, &[&[2, 1], &[0, 3]]).unwrap());
        assert_eq!(parse_ideal("x*x", &xy).unwrap(), MonomialIdeal::from_exponents(2, &[&[2, 0]]).unwrap());
        let err = parse_ideal("x^2, z", &xy).unwrap_err();
        assert_eq!(err, ParseError { kind: ParseErrorKind::UnknownVariable("z".into()), position: 6 });
        assert_eq!(err.to_string(), "unknown variable z at position 6");
    }

    #[test]
    fn parse_errors() {
        let xy = vars(&["x", "y"]);
        assert_eq!(parse_ideal("x^, y", &xy).unwrap_err().kind, ParseErrorKind::MalformedExponent);
        assert_eq!(parse_ideal("x^0", &xy).unwrap_err().kind, ParseErrorKind::MalformedExponent);
        let e = parse_ideal("x,,y", &xy).unwrap_err();
        assert_eq!((e.kind, e.position), (ParseErrorKind::EmptyTerm, 3));
        assert_eq!(parse_ideal("x,", &xy).unwrap_err().kind, ParseErrorKind::EmptyTerm);
        assert_eq!(parse_ideal("", &xy).unwrap_err().kind, ParseErrorKind::EmptyTerm);
        assert_eq!(parse_ideal("x y", &xy).unwrap_err().kind, ParseErrorKind::UnexpectedChar('y'));
        assert_eq!(parse_ideal("x+y", &xy).unwrap_err().kind, ParseErrorKind::UnexpectedChar('+'));
        assert!(matches!(
            parse_ideal("x", &vars(&["x", "x"])).unwrap_err().kind,
            ParseErrorKind::DuplicateVariable(_)
        ));
    }

    #[test]
    fn whitespace_and_specials() {
        let xyz = vars(&["x", "y", "z"]);
        let i = parse_ideal("  x ^ 2 * z ,\n y*y ", &xyz).unwrap();
        assert_eq!(i, MonomialIdeal::from_exponents(3, &[&[2, 0, 1], &[0, 2, 0]]).unwrap());
        assert!(parse_ideal("1", &xyz).unwrap().is_unit());
        assert!(parse_ideal("0", &xyz).unwrap().is_zero());
        assert_eq!(render_ideal(&MonomialIdeal::unit(3), &xyz), "1");
        assert_eq!(render_ideal(&MonomialIdeal::zero(3), &xyz), "0");
    }

    #[test]
    fn source_round_trip() {
        let xy = vars(&["x", "y"]);
        let src = IdealSource::new(&xy, "x^2, x*y").unwrap();
        assert_eq!(src.generator_terms, vec!["x^2", "x*y"]);
        let ideal = src.to_ideal().unwrap();
        let text = render_ideal(&ideal, &xy);
        assert_eq!(text, "x*y, x^2");
        assert_eq!(parse_ideal(&text, &xy).unwrap(), ideal);
    }

    #[test]
    fn csv_and_json_agree() {
        let rows = vec![LengthRecord {
            n: 1,
            lambda: BigUint::from(1u32),
            sigma: BigUint::from(3u32),
            tau: BigUint::from(2u32),
            cutoff_e: 2,
        }];
        assert_eq!(length_records_csv(&rows), "n,lambda,sigma,tau,e\n1,1,3,2,2\n");
        let json = length_records_json(&rows);
        assert_eq!(json, serde_json::json!([{"n": 1, "lambda": "1", "sigma": "3", "tau": "2", "e": 2}]));
        let back: Vec<LengthRecord> = serde_json::from_value(json).unwrap();
        assert_eq!(back, rows);
    }
}
