//! Exact integer root extraction.
//!
//! Everything on the degree-checking paths reduces to "is this integer a
//! perfect square or fourth power, and what is the root", answered here with
//! pure integer arithmetic. No floating point.

use num_bigint::{BigInt, BigUint};
use num_traits::Signed;

/// Floor of the square root of a nonnegative integer.
pub fn isqrt(n: &BigUint) -> BigUint {
    n.sqrt()
}

/// Floor of the fourth root of a nonnegative integer.
pub fn ifourth_root(n: &BigUint) -> BigUint {
    n.nth_root(4)
}

/// The exact square root `r >= 0` with `r^2 = n`, when `n` is a perfect square.
pub fn perfect_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let mag = n.magnitude();
    let r = mag.sqrt();
    if &r * &r == *mag {
        Some(r.into())
    } else {
        None
    }
}

/// The exact fourth root `r >= 0` with `r^4 = n`, when `n` is a perfect
/// fourth power.
pub fn perfect_fourth_root(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let mag = n.magnitude();
    let r = mag.nth_root(4);
    let r2 = &r * &r;
    if &r2 * &r2 == *mag {
        Some(r.into())
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn perfect_roots_on_small_values() {
        assert_eq!(perfect_sqrt(&big(0)), Some(big(0)));
        assert_eq!(perfect_sqrt(&big(9)), Some(big(3)));
        assert_eq!(perfect_sqrt(&big(8)), None);
        assert_eq!(perfect_sqrt(&big(-9)), None);
        assert_eq!(perfect_fourth_root(&big(16)), Some(big(2)));
        assert_eq!(perfect_fourth_root(&big(28561)), Some(big(13)));
        assert_eq!(perfect_fourth_root(&big(28560)), None);
    }

    #[test]
    fn huge_fourth_power_round_trips() {
        // 361^4 appears as a witness degree; check at full precision.
        let root = big(361);
        let sq = &root * &root;
        let fourth = &sq * &sq;
        assert_eq!(fourth, "16983563041".parse().unwrap());
        assert_eq!(perfect_fourth_root(&fourth), Some(root));
    }

    proptest! {
        // Oracle: square / fourth-power the candidate root back and bracket n.
        #[test]
        fn isqrt_bracket_oracle(n in 0u64..=1_000_000_000_000) {
            let n = BigUint::from(n);
            let r = isqrt(&n);
            prop_assert!(&r * &r <= n);
            let r1 = &r + 1u32;
            prop_assert!(&r1 * &r1 > n);
        }

        #[test]
        fn ifourth_root_bracket_oracle(n in 0u64..=1_000_000_000_000) {
            let n = BigUint::from(n);
            let r = ifourth_root(&n);
            let r2 = &r * &r;
            prop_assert!(&r2 * &r2 <= n);
            let r1 = &r + 1u32;
            let r1sq = &r1 * &r1;
            prop_assert!(&r1sq * &r1sq > n);
        }

        #[test]
        fn perfect_sqrt_agrees_with_squaring(r in 0i64..=1_000_000) {
            let sq = big(r) * big(r);
            prop_assert_eq!(perfect_sqrt(&sq), Some(big(r)));
            // r^2 + 1 sits strictly between consecutive squares for r >= 1.
            if r >= 1 {
                prop_assert_eq!(perfect_sqrt(&(sq + 1)), None);
            }
        }

        #[test]
        fn perfect_fourth_root_agrees_with_powering(r in 0i64..=30_000) {
            let sq = big(r) * big(r);
            let fourth = &sq * &sq;
            prop_assert_eq!(perfect_fourth_root(&fourth), Some(big(r)));
        }
    }
}
