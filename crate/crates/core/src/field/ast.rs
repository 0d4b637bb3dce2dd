//! Radical-expression JSON form of [`ConstructibleReal`]:
//! `{"rat":"p/q"} | {"add":[..]} | {"mul":[..]} | {"sqrt":..}`.
//!
//! Decoding evaluates the expression with the field operations, so any
//! well-formed expression is accepted and the result is canonical. Encoding
//! a canonical value and decoding it again reproduces the same structure.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{format_rational, parse_rational};
use super::{ConstructibleReal, FieldError};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RadicalAst {
    Rat(String),
    Add(Vec<RadicalAst>),
    Mul(Vec<RadicalAst>),
    Sqrt(Box<RadicalAst>),
}

impl RadicalAst {
    pub fn from_value(x: &ConstructibleReal) -> RadicalAst {
        match x.parts() {
            None => RadicalAst::Rat(format_rational(x.as_rational().unwrap())),
            Some((a, b, root)) => {
                let radical = RadicalAst::Sqrt(Box::new(Self::from_value(root.radicand())));
                let term = if b.is_one() {
                    radical
                } else {
                    RadicalAst::Mul(vec![Self::from_value(b), radical])
                };
                if a.as_rational().is_some_and(num_traits::Zero::is_zero) {
                    term
                } else {
                    RadicalAst::Add(vec![Self::from_value(a), term])
                }
            }
        }
    }

    pub fn evaluate(&self) -> Result<ConstructibleReal, FieldError> {
        match self {
            RadicalAst::Rat(s) => Ok(ConstructibleReal::from(parse_rational(s)?)),
            RadicalAst::Add(terms) => terms
                .iter()
                .try_fold(ConstructibleReal::zero(), |acc, t| Ok(acc.add(&t.evaluate()?))),
            RadicalAst::Mul(terms) => terms
                .iter()
                .try_fold(ConstructibleReal::one(), |acc, t| Ok(acc.mul(&t.evaluate()?))),
            RadicalAst::Sqrt(inner) => inner.evaluate()?.sqrt_adjoin(),
        }
    }
}

impl Serialize for ConstructibleReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        RadicalAst::from_value(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ConstructibleReal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let ast = RadicalAst::deserialize(deserializer)?;
        ast.evaluate().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational::rat;

    #[test]
    fn json_shapes() {
        let x = ConstructibleReal::from(rat(1, 2));
        assert_eq!(serde_json::to_string(&x).unwrap(), r#"{"rat":"1/2"}"#);
        let r3 = ConstructibleReal::from(3).sqrt_adjoin().unwrap();
        assert_eq!(serde_json::to_string(&r3).unwrap(), r#"{"sqrt":{"rat":"3"}}"#);
        let y = ConstructibleReal::from(2) + ConstructibleReal::from(5) * r3;
        assert_eq!(
            serde_json::to_string(&y).unwrap(),
            r#"{"add":[{"rat":"2"},{"mul":[{"rat":"5"},{"sqrt":{"rat":"3"}}]}]}"#
        );
    }

    #[test]
    fn decoding_accepts_non_canonical_input() {
        let x: ConstructibleReal =
            serde_json::from_str(r#"{"mul":[{"sqrt":{"rat":"2"}},{"sqrt":{"rat":"2"}}]}"#).unwrap();
        assert_eq!(x.as_rational(), Some(&rat(2, 1)));
        let bad: Result<ConstructibleReal, _> = serde_json::from_str(r#"{"sqrt":{"rat":"-1"}}"#);
        assert!(bad.is_err());
    }

    #[test]
    fn nested_round_trip_is_structural() {
        let one = ConstructibleReal::one();
        let x = (&one + ConstructibleReal::from(2).sqrt_adjoin().unwrap())
            .sqrt_adjoin()
            .unwrap();
        let s = serde_json::to_string(&x).unwrap();
        let back: ConstructibleReal = serde_json::from_str(&s).unwrap();
        assert!(back.structural_eq(&x));
    }
}
