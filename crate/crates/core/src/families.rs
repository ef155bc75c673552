//! Symbolic degree families.
//!
//! Each infinite class of prime pieces realizes an explicit infinite subset
//! of the integers as self-mapping degrees: arithmetic progressions
//! `{l*m + 1}` for spherical and H^2 x E^1 pieces, odd squares for torus
//! (semi-)bundles, fourth powers of integers congruent to 1 mod 12 for the
//! remaining Nil pieces, and all of Z for S2xS1. Families are represented
//! symbolically and never materialized; membership is decided by modular
//! arithmetic and exact integer root extraction.
//!
//! The combined witness family for a connected sum with base
//! `B = 12 * prod |pi1(P_i)| * prod alpha(Q_j)` is `{(B*l + 1)^4 + 1}`; its
//! pre-shift values lie in every factor's class family simultaneously.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::classify::{DegreeClass, NormalForm};
use crate::decimal::DecInt;
use crate::roots::{perfect_fourth_root, perfect_sqrt};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("finite-verdict classes carry no infinite degree family")]
    FiniteClass,
    #[error("no witness family: {count} factor(s) have finite degree sets")]
    FiniteFactors { count: usize },
    #[error("arithmetic progressions require modulus >= 1")]
    ZeroModulus,
    #[error("witness bases are positive multiples of 12 (got {base})")]
    BadWitnessBase { base: BigUint },
    #[error("shifted families do not nest")]
    NestedShift,
}

/// A symbolic (possibly shifted) subset of the integers with exact
/// membership and bounded enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DegreeFamily {
    /// Every integer: the degree set of S2xS1.
    AllIntegers,
    /// `{l*modulus + 1 : l in Z}`.
    ApPlusOne {
        #[serde(with = "crate::decimal::biguint")]
        modulus: BigUint,
    },
    /// `{(2l+1)^2 : l in Z}` -- the odd perfect squares.
    OddSquares,
    /// `{l^4 : l = 1 (mod 12), l in Z}`.
    FourthPowersMod12,
    /// `{(base*l + 1)^4 : l in Z}`, base a positive multiple of 12.
    WitnessFourth {
        #[serde(with = "crate::decimal::biguint")]
        base: BigUint,
    },
    /// A family translated by a constant offset; nests at most one level.
    Shifted {
        inner: Box<DegreeFamily>,
        #[serde(with = "crate::decimal::bigint")]
        offset: BigInt,
    },
}

/// Membership answer together with its arithmetic witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Membership {
    pub is_member: bool,
    /// The family parameter `l` realizing the value, when a member.
    pub parameter: Option<BigInt>,
    /// The exact integer root for the square and fourth-power families,
    /// chosen to satisfy the family's congruence.
    pub root: Option<BigInt>,
}

impl Membership {
    fn no() -> Self {
        Membership {
            is_member: false,
            parameter: None,
            root: None,
        }
    }

    fn with_parameter(l: BigInt) -> Self {
        Membership {
            is_member: true,
            parameter: Some(l),
            root: None,
        }
    }

    fn with_root(l: BigInt, root: BigInt) -> Self {
        Membership {
            is_member: true,
            parameter: Some(l),
            root: Some(root),
        }
    }
}

impl Serialize for Membership {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("Membership", 3)?;
        s.serialize_field("is_member", &self.is_member)?;
        s.serialize_field("parameter", &self.parameter.as_ref().map(DecInt))?;
        s.serialize_field("root", &self.root.as_ref().map(DecInt))?;
        s.end()
    }
}

impl DegreeFamily {
    pub fn ap_plus_one(modulus: BigUint) -> Result<Self, FamilyError> {
        if modulus.is_zero() {
            return Err(FamilyError::ZeroModulus);
        }
        Ok(DegreeFamily::ApPlusOne { modulus })
    }

    pub fn witness_fourth(base: BigUint) -> Result<Self, FamilyError> {
        if base.is_zero() || !(&base % BigUint::from(12u32)).is_zero() {
            return Err(FamilyError::BadWitnessBase { base });
        }
        Ok(DegreeFamily::WitnessFourth { base })
    }

    pub fn shifted(inner: DegreeFamily, offset: BigInt) -> Result<Self, FamilyError> {
        if matches!(inner, DegreeFamily::Shifted { .. }) {
            return Err(FamilyError::NestedShift);
        }
        Ok(DegreeFamily::Shifted {
            inner: Box::new(inner),
            offset,
        })
    }

    /// Exact membership with witness. Square and fourth-power families
    /// report the canonical root: for the congruence-constrained families it
    /// is the representative of `{r, -r}` that satisfies the congruence.
    pub fn member(&self, d: &BigInt) -> Membership {
        match self {
            DegreeFamily::AllIntegers => Membership::with_parameter(d.clone()),
            DegreeFamily::ApPlusOne { modulus } => {
                let m = BigInt::from(modulus.clone());
                let (quotient, remainder) = (d - BigInt::one()).div_mod_floor(&m);
                if remainder.is_zero() {
                    Membership::with_parameter(quotient)
                } else {
                    Membership::no()
                }
            }
            DegreeFamily::OddSquares => match perfect_sqrt(d) {
                Some(root) if root.is_odd() => {
                    let l = (&root - 1) / 2;
                    Membership::with_root(l, root)
                }
                _ => Membership::no(),
            },
            DegreeFamily::FourthPowersMod12 => match perfect_fourth_root(d) {
                Some(root) => {
                    let twelve = BigInt::from(12);
                    if root.mod_floor(&twelve).is_one() {
                        Membership::with_root(root.clone(), root)
                    } else if (-&root).mod_floor(&twelve).is_one() {
                        let neg = -root;
                        Membership::with_root(neg.clone(), neg)
                    } else {
                        Membership::no()
                    }
                }
                None => Membership::no(),
            },
            DegreeFamily::WitnessFourth { base } => match perfect_fourth_root(d) {
                Some(root) => {
                    let b = BigInt::from(base.clone());
                    for candidate in [root.clone(), -root] {
                        if (&candidate - BigInt::one()).mod_floor(&b).is_zero() {
                            let l = (&candidate - BigInt::one()) / &b;
                            return Membership::with_root(l, candidate);
                        }
                    }
                    Membership::no()
                }
                None => Membership::no(),
            },
            DegreeFamily::Shifted { inner, offset } => inner.member(&(d - offset)),
        }
    }

    /// Value of the family expression at parameter `l`, or `None` when `l`
    /// is outside the parameter domain (the mod-12 fourth powers).
    pub fn value_at(&self, l: &BigInt) -> Option<BigInt> {
        match self {
            DegreeFamily::AllIntegers => Some(l.clone()),
            DegreeFamily::ApPlusOne { modulus } => Some(l * BigInt::from(modulus.clone()) + 1),
            DegreeFamily::OddSquares => {
                let root = BigInt::from(2) * l + 1;
                Some(&root * &root)
            }
            DegreeFamily::FourthPowersMod12 => {
                if l.mod_floor(&BigInt::from(12)).is_one() {
                    Some(pow4(l))
                } else {
                    None
                }
            }
            DegreeFamily::WitnessFourth { base } => {
                let root = l * BigInt::from(base.clone()) + 1;
                Some(pow4(&root))
            }
            DegreeFamily::Shifted { inner, offset } => inner.value_at(l).map(|v| v + offset),
        }
    }

    /// The `count` smallest nonnegative members, ascending. Arithmetic
    /// progressions enumerate from `l = 0`, so from the value 1.
    pub fn enumerate(&self, count: usize) -> Vec<BigInt> {
        match self {
            DegreeFamily::ApPlusOne { modulus } => {
                let m = BigInt::from(modulus.clone());
                (0..count).map(|l| BigInt::from(l) * &m + 1).collect()
            }
            DegreeFamily::Shifted { inner, offset } => inner
                .ascending_from(&-offset, count)
                .into_iter()
                .map(|v| v + offset)
                .collect(),
            _ => self.ascending_from(&BigInt::zero(), count),
        }
    }

    /// Members `>= lower` in ascending order, `count` of them.
    fn ascending_from(&self, lower: &BigInt, count: usize) -> Vec<BigInt> {
        let mut out = Vec::with_capacity(count);
        match self {
            DegreeFamily::AllIntegers => {
                let mut v = lower.clone();
                while out.len() < count {
                    out.push(v.clone());
                    v += 1;
                }
            }
            DegreeFamily::ApPlusOne { modulus } => {
                let m = BigInt::from(modulus.clone());
                let mut v = lower + (BigInt::one() - lower).mod_floor(&m);
                while out.len() < count {
                    out.push(v.clone());
                    v += &m;
                }
            }
            DegreeFamily::OddSquares => {
                let mut root = least_root_at_least(lower, 2);
                if root.is_zero() {
                    root = BigInt::one();
                } else if root.is_even() {
                    root += 1;
                }
                while out.len() < count {
                    out.push(&root * &root);
                    root += 2;
                }
            }
            DegreeFamily::FourthPowersMod12 => {
                // Roots r >= 1 with r = +/-1 (mod 12) cover both signs of the
                // parameter: l = r when r = 1, l = -r when r = 11.
                let mut root = least_root_at_least(lower, 4).max(BigInt::one());
                let twelve = BigInt::from(12);
                while out.len() < count {
                    let residue = root.mod_floor(&twelve);
                    if residue.is_one() || residue == BigInt::from(11) {
                        out.push(pow4(&root));
                    }
                    root += 1;
                }
            }
            DegreeFamily::WitnessFourth { base } => {
                let b = BigInt::from(base.clone());
                let start_root = least_root_at_least(lower, 4);
                // Candidate roots |B*l + 1| ascend as 1, B-1, B+1, 2B-1, ...
                if start_root <= BigInt::one() && out.len() < count {
                    out.push(BigInt::one());
                }
                let mut k = BigInt::one();
                if start_root > BigInt::one() {
                    // Jump near the first useful candidate; the filter below
                    // drops any early ones.
                    k = std::cmp::max(BigInt::one(), (&start_root - 1) / &b);
                }
                while out.len() < count {
                    for root in [&k * &b - 1, &k * &b + 1] {
                        if out.len() < count && root >= start_root {
                            out.push(pow4(&root));
                        }
                    }
                    k += 1;
                }
            }
            DegreeFamily::Shifted { inner, offset } => {
                return inner
                    .ascending_from(&(lower - offset), count)
                    .into_iter()
                    .map(|v| v + offset)
                    .collect();
            }
        }
        out
    }
}

fn pow4(x: &BigInt) -> BigInt {
    let sq = x * x;
    &sq * &sq
}

/// Smallest `r >= 0` with `r^n >= lower`.
fn least_root_at_least(lower: &BigInt, n: u32) -> BigInt {
    if !lower.is_positive() {
        return BigInt::zero();
    }
    let floor_root = lower.magnitude().nth_root(n);
    let mut powered = BigUint::one();
    for _ in 0..n {
        powered *= &floor_root;
    }
    if powered == *lower.magnitude() {
        floor_root.into()
    } else {
        BigInt::from(floor_root) + 1
    }
}

/// The infinite degree family realized by self-maps of pieces in class `c`.
pub fn family_for_class(class: &DegreeClass) -> Result<DegreeFamily, FamilyError> {
    match class {
        DegreeClass::C1Spherical { order } => DegreeFamily::ap_plus_one(order.clone()),
        DegreeClass::C2H2xE1 { alpha } => DegreeFamily::ap_plus_one(alpha.clone()),
        DegreeClass::C3TorusBundleOrSemi => Ok(DegreeFamily::OddSquares),
        DegreeClass::C4NilOther => Ok(DegreeFamily::FourthPowersMod12),
        DegreeClass::C5S2xS1 => Ok(DegreeFamily::AllIntegers),
        DegreeClass::Finite { .. } => Err(FamilyError::FiniteClass),
    }
}

/// The combined base `B = 12 * prod |pi1(P_i)| * prod alpha(Q_j)`; empty
/// products are 1.
pub fn combined_base(nf: &NormalForm) -> Result<BigUint, FamilyError> {
    if nf.has_finite_factor() {
        return Err(FamilyError::FiniteFactors {
            count: nf.finite.len(),
        });
    }
    let mut base = BigUint::from(12u32);
    for (_, order) in &nf.spherical {
        base *= order;
    }
    for (_, alpha) in &nf.h2xe1 {
        base *= alpha;
    }
    Ok(base)
}

/// The witness family `{(B*l + 1)^4 + 1 : l in Z}`.
pub fn witness_family(nf: &NormalForm) -> Result<DegreeFamily, FamilyError> {
    let base = combined_base(nf)?;
    DegreeFamily::shifted(DegreeFamily::witness_fourth(base)?, BigInt::one())
}
