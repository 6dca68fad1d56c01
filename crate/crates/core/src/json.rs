//! JSON documents for vectors, fields and polynomials.
//!
//! Exact coefficients travel as decimal strings (`"num"`, `"den"`), words as
//! arrays of 1-based letters. Terms are emitted in (degree, word, dir) order.

use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{FockVector, VectorField};
use crate::linalg::Rational;
use crate::ncpoly::{Flavor, NcPolynomial};
use crate::words::Word;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub word: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dir: Option<usize>,
    pub num: String,
    pub den: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FloatTermDoc {
    pub word: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dir: Option<usize>,
    pub re: f64,
    pub im: f64,
}

/// Shared layout of Fock vectors and vector fields.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VectorDoc {
    pub n: usize,
    pub terms: Vec<TermDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FloatVectorDoc {
    pub n: usize,
    pub terms: Vec<FloatTermDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialDoc {
    pub n: usize,
    pub flavor: Flavor,
    pub terms: Vec<TermDoc>,
}

fn term(word: &Word, dir: Option<usize>, value: &Rational) -> TermDoc {
    TermDoc {
        word: word.letters().to_vec(),
        dir,
        num: value.numer().to_string(),
        den: value.denom().to_string(),
    }
}

fn describe(index: usize, t: &TermDoc) -> String {
    match t.dir {
        Some(d) => format!("term {index} (word {:?}, dir {d})", t.word),
        None => format!("term {index} (word {:?})", t.word),
    }
}

fn parse_value(index: usize, t: &TermDoc) -> Result<Rational> {
    let int = |s: &str, what: &str| {
        BigInt::from_str(s.trim())
            .map_err(|_| Error::Parse(format!("{}: {what} {s:?} is not a decimal integer", describe(index, t))))
    };
    let num = int(&t.num, "numerator")?;
    let den = int(&t.den, "denominator")?;
    if den.is_zero() {
        return Err(Error::Parse(format!("{}: denominator is zero", describe(index, t))));
    }
    Ok(Rational::new(num, den))
}

fn parse_word(n: usize, index: usize, t: &TermDoc) -> Result<Word> {
    Word::new(n, t.word.clone()).map_err(|e| Error::Parse(format!("{}: {e}", describe(index, t))))
}

pub fn fock_to_doc(v: &FockVector<Rational>) -> VectorDoc {
    VectorDoc { n: v.n(), terms: v.terms().iter().map(|(w, c)| term(w, None, c)).collect() }
}

pub fn fock_from_doc(doc: &VectorDoc) -> Result<FockVector<Rational>> {
    let mut out = FockVector::zero(doc.n);
    for (i, t) in doc.terms.iter().enumerate() {
        if t.dir.is_some() {
            return Err(Error::Parse(format!("{}: Fock vector terms carry no dir", describe(i, t))));
        }
        out.add_term(parse_word(doc.n, i, t)?, parse_value(i, t)?);
    }
    Ok(out)
}

pub fn field_to_doc(v: &VectorField<Rational>) -> VectorDoc {
    VectorDoc { n: v.n(), terms: v.terms().iter().map(|((w, d), c)| term(w, Some(*d), c)).collect() }
}

pub fn field_from_doc(doc: &VectorDoc) -> Result<VectorField<Rational>> {
    if doc.n == 0 {
        return Err(Error::Parse("alphabet size n must be at least 1".into()));
    }
    let mut out = VectorField::zero(doc.n);
    for (i, t) in doc.terms.iter().enumerate() {
        let dir = match t.dir {
            Some(d) if (1..=doc.n).contains(&d) => d,
            Some(d) => {
                return Err(Error::Parse(format!("{}: dir {d} outside [1, {}]", describe(i, t), doc.n)));
            }
            None => return Err(Error::Parse(format!("{}: missing dir", describe(i, t)))),
        };
        out.add_term(parse_word(doc.n, i, t)?, dir, parse_value(i, t)?);
    }
    Ok(out)
}

pub fn complex_field_to_doc(v: &VectorField<Complex64>) -> FloatVectorDoc {
    FloatVectorDoc {
        n: v.n(),
        terms: v
            .terms()
            .iter()
            .map(|((w, d), c)| FloatTermDoc { word: w.letters().to_vec(), dir: Some(*d), re: c.re, im: c.im })
            .collect(),
    }
}

pub fn poly_to_doc(p: &NcPolynomial<Rational>) -> PolynomialDoc {
    PolynomialDoc {
        n: p.n(),
        flavor: p.flavor(),
        terms: p.terms().iter().map(|(w, c)| term(w, None, c)).collect(),
    }
}

pub fn poly_from_doc(doc: &PolynomialDoc) -> Result<NcPolynomial<Rational>> {
    let mut terms = Vec::with_capacity(doc.terms.len());
    for (i, t) in doc.terms.iter().enumerate() {
        if t.dir.is_some() {
            return Err(Error::Parse(format!("{}: polynomial terms carry no dir", describe(i, t))));
        }
        terms.push((parse_word(doc.n, i, t)?, parse_value(i, t)?));
    }
    NcPolynomial::from_terms(doc.n, doc.flavor, terms)
}

fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn parse_field(text: &str) -> Result<VectorField<Rational>> {
    field_from_doc(&from_json(text)?)
}

pub fn parse_fock(text: &str) -> Result<FockVector<Rational>> {
    fock_from_doc(&from_json(text)?)
}

pub fn parse_polynomial(text: &str) -> Result<NcPolynomial<Rational>> {
    poly_from_doc(&from_json(text)?)
}

pub fn field_to_json(v: &VectorField<Rational>) -> String {
    serde_json::to_string_pretty(&field_to_doc(v)).expect("documents always serialize")
}
