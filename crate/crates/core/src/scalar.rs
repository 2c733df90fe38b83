//! The exact integer scalar that matrices, Smith forms and formal sums are generic over.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// A signed Euclidean integer type.
///
/// Implemented for every type with the right `num-traits` bounds, in particular `i64`,
/// `i128` and `num_bigint::BigInt`. Fixed-width types overflow on large inputs, so the
/// arbitrary-precision aliases at the crate root are the ones to reach for by default.
pub trait IntScalar:
    Integer + Signed + Clone + Debug + Display + Hash + FromPrimitive + ToPrimitive + Send + Sync
{
    fn from_int(v: i64) -> Self {
        <Self as FromPrimitive>::from_i64(v).expect("every integer type holds an i64")
    }

    /// Absolute value compared as a magnitude, for pivot selection.
    fn magnitude(&self) -> Self {
        self.abs()
    }

    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
}

impl<T> IntScalar for T where
    T: Integer + Signed + Clone + Debug + Display + Hash + FromPrimitive + ToPrimitive + Send + Sync
{
}

/// `(g, s, t)` with `s*a + t*b = g = gcd(a, b) >= 0`.
pub fn extended_gcd<T: IntScalar>(a: &T, b: &T) -> (T, T, T) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn bezout_identity_holds() {
        for a in -12i64..=12 {
            for b in -12i64..=12 {
                let (g, s, t) = extended_gcd(&a, &b);
                assert_eq!(s * a + t * b, g);
                assert_eq!(g, a.gcd(&b));
                let (gb, sb, tb) = extended_gcd(&BigInt::from(a), &BigInt::from(b));
                assert_eq!(sb * a + tb * b, gb);
            }
        }
    }
}
