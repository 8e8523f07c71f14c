//! Serde helpers for exact integers in reports.

use num_bigint::BigInt;
use serde::Serializer;

/// Writes a JSON number when the value fits in `i64`, a decimal string otherwise.
pub fn big_int<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match i64::try_from(x) {
        Ok(v) => s.serialize_i64(v),
        Err(_) => s.serialize_str(&x.to_string()),
    }
}
