//! Text and JSON serialization.
//!
//! Text form: `+1/2 +1/2 * x1 -1/2 * x2`, terms ordered by degree and then
//! lexicographically by variable list; the zero polynomial prints as `0`.
//! JSON form: `{"n": 2, "terms": [{"vars": [1], "num": "1", "den": "2"}]}`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::{mask_to_vars, vars_to_mask, MultilinearPoly};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::subsets::{lex_cmp, popcount};

impl MultilinearPoly {
    /// Masks in canonical order: by degree, then lexicographically.
    pub fn canonical_order(&self) -> Vec<u64> {
        let mut masks: Vec<u64> = self.terms.keys().copied().collect();
        masks.sort_by(|&a, &b| popcount(a).cmp(&popcount(b)).then(lex_cmp(a, b)));
        masks
    }

    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::with_capacity(self.terms.len());
        for mask in self.canonical_order() {
            let c = &self.terms[&mask];
            let sign = if c.is_negative() { '-' } else { '+' };
            let mut term = format!("{sign}{}/{}", c.numer().abs(), c.denom());
            if mask != 0 {
                term.push_str(" * ");
                for v in mask_to_vars(mask) {
                    term.push_str(&format!("x{v}"));
                }
            }
            parts.push(term);
        }
        parts.join(" ")
    }

    /// Parses the text form. `n` must be supplied since the text does not
    /// record it.
    pub fn parse_text(n: usize, text: &str) -> Result<Self> {
        let mut poly = Self::zero(n)?;
        let text = text.trim();
        if text == "0" {
            return Ok(poly);
        }
        let mut tokens = text.split_whitespace().peekable();
        while let Some(tok) = tokens.next() {
            if !tok.starts_with(['+', '-']) {
                return Err(Error::Parse(format!(
                    "expected signed coefficient, got {tok:?}"
                )));
            }
            let coeff = crate::rational::parse_rational(tok)?;
            let mut mask = 0u64;
            if tokens.peek() == Some(&"*") {
                tokens.next();
                let mono = tokens
                    .next()
                    .ok_or_else(|| Error::Parse("dangling '*'".into()))?;
                mask = vars_to_mask(n, &parse_monomial(mono)?)?;
            }
            if poly.terms.contains_key(&mask) {
                return Err(Error::Parse(format!("repeated monomial {mask:#b}")));
            }
            if coeff.is_zero() {
                return Err(Error::Parse("zero coefficient".into()));
            }
            poly.terms.insert(mask, coeff);
        }
        Ok(poly)
    }

    pub fn to_json_value(&self) -> Value {
        let terms: Vec<Value> = self
            .canonical_order()
            .into_iter()
            .map(|mask| {
                let c = &self.terms[&mask];
                json!({
                    "vars": mask_to_vars(mask),
                    "num": c.numer().to_string(),
                    "den": c.denom().to_string(),
                })
            })
            .collect();
        json!({ "n": self.n, "terms": terms })
    }

    pub fn to_json(&self) -> String {
        self.to_json_value().to_string()
    }

    pub fn from_json_value(value: &Value) -> Result<Self> {
        let n = value
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("missing integer field \"n\"".into()))?
            as usize;
        let terms = value
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing array field \"terms\"".into()))?;
        let mut poly = Self::zero(n)?;
        for term in terms {
            let vars: Vec<usize> = term
                .get("vars")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse("term without \"vars\"".into()))?
                .iter()
                .map(|v| {
                    v.as_u64()
                        .map(|v| v as usize)
                        .ok_or_else(|| Error::Parse(format!("bad variable index {v}")))
                })
                .collect::<Result<_>>()?;
            let num = json_bigint(term.get("num"))?;
            let den = match term.get("den") {
                None => BigInt::one(),
                some => json_bigint(some)?,
            };
            if den.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            let mask = vars_to_mask(n, &vars)?;
            poly.add_term(mask, Rational::new(num, den));
        }
        Ok(poly)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json_value(&value)
    }
}

fn json_bigint(value: Option<&Value>) -> Result<BigInt> {
    match value {
        Some(Value::String(s)) => s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad integer {s:?}"))),
        Some(Value::Number(num)) => num
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::Parse(format!("non-integer number {num}"))),
        other => Err(Error::Parse(format!("expected integer, got {other:?}"))),
    }
}

fn parse_monomial(text: &str) -> Result<Vec<usize>> {
    let bad = || Error::Parse(format!("bad monomial {text:?}"));
    if !text.starts_with('x') {
        return Err(bad());
    }
    text[1..]
        .split('x')
        .map(|v| v.parse::<usize>().map_err(|_| bad()))
        .collect()
}

impl fmt::Display for MultilinearPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
