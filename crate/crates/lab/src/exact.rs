//! Exact rationals on the wire: `"num/den"` strings, with bare JSON integers
//! accepted on input.

use std::fmt;

use conductor_core::Rational;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exact(pub Rational);

impl Exact {
    pub fn parse(s: &str) -> Option<Rational> {
        // typeset minus signs show up in copied examples
        s.replace('\u{2212}', "-").parse().ok()
    }
}

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Exact {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;

        impl Visitor<'_> for V {
            type Value = Exact;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a fraction string such as \"-5/3\"")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Exact, E> {
                Ok(Exact(Rational::from(v)))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Exact, E> {
                Ok(Exact(Rational::from(v)))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Exact, E> {
                Exact::parse(v)
                    .map(Exact)
                    .ok_or_else(|| E::invalid_value(de::Unexpected::Str(v), &self))
            }
        }

        d.deserialize_any(V)
    }
}

/// JSON string form of a rational.
pub fn q(r: &Rational) -> Value {
    Value::String(r.to_string())
}

pub fn qs<'a>(rs: impl IntoIterator<Item = &'a Rational>) -> Value {
    Value::Array(rs.into_iter().map(q).collect())
}
