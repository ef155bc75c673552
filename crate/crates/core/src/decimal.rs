//! Serde adapters that render big integers as decimal strings.
//!
//! Witness degrees overflow 64-bit consumers at modest parameters, so every
//! integer in the JSON surface is a decimal string.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use serde::{Serialize, Serializer};

/// Decimal-string wrapper for a borrowed `BigInt`.
pub(crate) struct DecInt<'a>(pub &'a BigInt);

/// Decimal-string wrapper for a borrowed `BigUint`.
pub(crate) struct DecUint<'a>(pub &'a BigUint);

impl Serialize for DecInt<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self.0)
    }
}

impl Serialize for DecUint<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self.0)
    }
}

pub(crate) fn collect_display<S: Serializer, T: fmt::Display>(
    value: &T,
    serializer: S,
) -> Result<S::Ok, S::Error> {
    serializer.collect_str(value)
}

/// `#[serde(with = "crate::decimal::bigint")]` for `BigInt` fields.
pub(crate) mod bigint {
    use super::*;

    pub fn serialize<S: Serializer>(value: &BigInt, serializer: S) -> Result<S::Ok, S::Error> {
        collect_display(value, serializer)
    }
}

/// `#[serde(with = "crate::decimal::biguint")]` for `BigUint` fields.
pub(crate) mod biguint {
    use super::*;

    pub fn serialize<S: Serializer>(value: &BigUint, serializer: S) -> Result<S::Ok, S::Error> {
        collect_display(value, serializer)
    }
}
