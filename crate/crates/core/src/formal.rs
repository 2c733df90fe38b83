//! Finite formal integer combinations of canonical terms.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::scalar::IntScalar;

/// A formal sum `Σ c_k [k]` with no zero coefficients stored.
///
/// Terms are kept in a `BTreeMap`, so iteration order (and therefore every report built
/// from a sum) is the `Ord` order of the terms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FormalSum<K: Ord, C: IntScalar> {
    terms: BTreeMap<K, C>,
}

impl<K: Ord + Clone, C: IntScalar> Default for FormalSum<K, C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<K: Ord + Clone, C: IntScalar> FormalSum<K, C> {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn term(key: K) -> Self {
        Self::monomial(key, C::one())
    }

    pub fn monomial(key: K, coeff: C) -> Self {
        let mut s = Self::zero();
        s.add_term(key, coeff);
        s
    }

    pub fn add_term(&mut self, key: K, coeff: C) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(c) => {
                *c = c.clone() + coeff;
                if c.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, coeff);
            }
        }
    }

    pub fn coefficient(&self, key: &K) -> C {
        self.terms.get(key).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of distinct terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &C)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    /// Sum of all coefficients (the image under the augmentation map).
    pub fn coefficient_sum(&self) -> C {
        self.terms.values().fold(C::zero(), |acc, c| acc + c.clone())
    }

    pub fn scale(&self, k: &C) -> Self {
        let mut out = Self::zero();
        for (key, c) in &self.terms {
            out.add_term(key.clone(), c.clone() * k.clone());
        }
        out
    }

    /// Keep only the terms satisfying `pred`.
    pub fn filter(&self, mut pred: impl FnMut(&K) -> bool) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| pred(k))
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    /// Push every term through `f`, merging terms that land on the same key.
    pub fn map_terms<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> K2) -> FormalSum<K2, C> {
        let mut out = FormalSum::zero();
        for (k, c) in &self.terms {
            out.add_term(f(k), c.clone());
        }
        out
    }

    pub fn try_map_terms<K2: Ord + Clone, E>(
        &self,
        mut f: impl FnMut(&K) -> Result<K2, E>,
    ) -> Result<FormalSum<K2, C>, E> {
        let mut out = FormalSum::zero();
        for (k, c) in &self.terms {
            out.add_term(f(k)?, c.clone());
        }
        Ok(out)
    }
}

impl<K: Ord + Clone, C: IntScalar> FromIterator<(K, C)> for FormalSum<K, C> {
    fn from_iter<I: IntoIterator<Item = (K, C)>>(iter: I) -> Self {
        let mut s = Self::zero();
        for (k, c) in iter {
            s.add_term(k, c);
        }
        s
    }
}

impl<K: Ord + Clone, C: IntScalar> AddAssign<&FormalSum<K, C>> for FormalSum<K, C> {
    fn add_assign(&mut self, rhs: &FormalSum<K, C>) {
        for (k, c) in &rhs.terms {
            self.add_term(k.clone(), c.clone());
        }
    }
}

impl<K: Ord + Clone, C: IntScalar> SubAssign<&FormalSum<K, C>> for FormalSum<K, C> {
    fn sub_assign(&mut self, rhs: &FormalSum<K, C>) {
        for (k, c) in &rhs.terms {
            self.add_term(k.clone(), -c.clone());
        }
    }
}

impl<K: Ord + Clone, C: IntScalar> Add for FormalSum<K, C> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += &rhs;
        self
    }
}

impl<K: Ord + Clone, C: IntScalar> Add for &FormalSum<K, C> {
    type Output = FormalSum<K, C>;
    fn add(self, rhs: Self) -> FormalSum<K, C> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<K: Ord + Clone, C: IntScalar> Sub for FormalSum<K, C> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self -= &rhs;
        self
    }
}

impl<K: Ord + Clone, C: IntScalar> Sub for &FormalSum<K, C> {
    type Output = FormalSum<K, C>;
    fn sub(self, rhs: Self) -> FormalSum<K, C> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<K: Ord + Clone, C: IntScalar> Neg for FormalSum<K, C> {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect(),
        }
    }
}

impl<K: Ord + Clone, C: IntScalar> std::iter::Sum for FormalSum<K, C> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, s| acc + s)
    }
}

impl<K: Ord + fmt::Display, C: IntScalar> fmt::Display for FormalSum<K, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if mag.is_one() {
                write!(f, "[{k}]")?;
            } else {
                write!(f, "{mag}·[{k}]")?;
            }
        }
        Ok(())
    }
}

impl<K: Ord + fmt::Display, C: IntScalar> fmt::Debug for FormalSum<K, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FormalSum({self})")
    }
}

/// Serialized as `[{"term": .., "coeff": ..}, ..]` in term order.
impl<K: Ord + Serialize, C: IntScalar + Serialize> Serialize for FormalSum<K, C> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a, K, C> {
            term: &'a K,
            coeff: &'a C,
        }
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (term, coeff) in &self.terms {
            seq.serialize_element(&Entry { term, coeff })?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type S = FormalSum<u8, i64>;

    #[test]
    fn cancellation_drops_terms() {
        let mut s = S::term(3);
        s.add_term(3, -1);
        assert!(s.is_zero());
        assert_eq!(s.len(), 0);
        assert_eq!(format!("{s}"), "0");
    }

    #[test]
    fn display_signs() {
        let s: S = [(1, 2), (2, -1), (3, 1)].into_iter().collect();
        assert_eq!(format!("{s}"), "2·[1] - [2] + [3]");
        assert_eq!(s.coefficient_sum(), 2);
    }

    fn arb_sum() -> impl Strategy<Value = S> {
        proptest::collection::vec((0u8..6, -3i64..4), 0..8).prop_map(|v| v.into_iter().collect())
    }

    proptest! {
        #[test]
        fn abelian_group_laws(a in arb_sum(), b in arb_sum(), c in arb_sum()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert!((&a - &a).is_zero());
            prop_assert_eq!(-(-a.clone()), a.clone());
            prop_assert!(a.iter().all(|(_, c)| *c != 0));
        }
    }
}
