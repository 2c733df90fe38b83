//! Cyclic groups, their characters, and faithful character labels.
//!
//! Characters of `C_d` are identified with `Z/d` through a fixed primitive `d`-th root of
//! unity. Subgroups of `C_N` are referenced by their order only: there is exactly one
//! subgroup of each order `d | N`, generated by the element `N/d`.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Reduce a signed integer into `[0, m)`.
pub fn modulo(v: i64, m: u64) -> u64 {
    debug_assert!(m > 0);
    (v as i128).rem_euclid(m as i128) as u64
}

/// Positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut k = 1;
    while k * k <= n {
        if n % k == 0 {
            small.push(k);
            if k * k != n {
                large.push(n / k);
            }
        }
        k += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CyclicGroup {
    order: u64,
}

impl CyclicGroup {
    pub fn new(order: u64) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidOrder(order));
        }
        Ok(Self { order })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Orders of all subgroups, trivial subgroup first.
    pub fn subgroup_orders(&self) -> Vec<u64> {
        divisors(self.order)
    }

    /// Residues in `[1, N)` coprime to `N` (just `[0]` for the trivial group).
    pub fn units(&self) -> Vec<u64> {
        if self.order == 1 {
            return vec![0];
        }
        (1..self.order).filter(|u| u.gcd(&self.order) == 1).collect()
    }

    pub fn is_unit(&self, u: i64) -> bool {
        modulo(u, self.order).gcd(&self.order) == 1
    }
}

/// A character of `C_d`, stored as its value in `Z/d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Char {
    modulus: u64,
    value: u64,
}

impl Char {
    pub fn new(modulus: u64, value: i64) -> Self {
        assert!(modulus > 0, "character modulus must be positive");
        Self {
            modulus,
            value: modulo(value, modulus),
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn is_trivial(&self) -> bool {
        self.value == 0
    }

    pub fn negate(&self) -> Self {
        Self::new(self.modulus, -(self.value as i64))
    }

    pub fn scale(&self, u: i64) -> Self {
        Self::new(self.modulus, modulo(u, self.modulus) as i64 * self.value as i64)
    }

    pub fn add(&self, other: &Char) -> Self {
        assert_eq!(self.modulus, other.modulus);
        Self::new(self.modulus, (self.value + other.value) as i64)
    }

    pub fn sub(&self, other: &Char) -> Self {
        assert_eq!(self.modulus, other.modulus);
        Self::new(self.modulus, self.value as i64 - other.value as i64)
    }

    /// Order of the kernel of this character inside `C_d`.
    pub fn kernel_order(&self) -> u64 {
        self.value.gcd(&self.modulus)
    }

    /// Order of the image, i.e. of the character as an element of the dual group.
    pub fn image_order(&self) -> u64 {
        self.modulus / self.kernel_order()
    }

    /// Restriction to the subgroup of order `d_sub`.
    pub fn restrict(&self, d_sub: u64) -> Result<Self> {
        if d_sub == 0 || self.modulus % d_sub != 0 {
            return Err(Error::NotDivisor {
                sub: d_sub,
                modulus: self.modulus,
            });
        }
        Ok(Self {
            modulus: d_sub,
            value: self.value % d_sub,
        })
    }

    /// Label of the faithful character of `C_d / ker` that this character induces.
    pub fn induced_faithful(&self) -> FaithfulCharLabel {
        let g = self.kernel_order();
        let m = self.modulus / g;
        FaithfulCharLabel::canonical(m, self.value / g)
    }
}

impl fmt::Display for Char {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

/// Order of `ker(c)` in `C_d`.
pub fn char_kernel_order(c: &Char) -> u64 {
    c.kernel_order()
}

pub fn restrict_char(c: &Char, d_sub: u64) -> Result<Char> {
    c.restrict(d_sub)
}

pub fn induced_faithful(c: &Char) -> FaithfulCharLabel {
    c.induced_faithful()
}

/// A faithful character of `C_m`, identified with its inverse.
///
/// `rep` is the smaller of `e` and `m - e`; the trivial group carries `rep = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FaithfulCharLabel {
    order: u64,
    rep: u64,
}

impl FaithfulCharLabel {
    pub fn new(order: u64, e: i64) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidOrder(order));
        }
        let v = modulo(e, order);
        if v.gcd(&order) != 1 && order > 1 {
            return Err(Error::NotUnit {
                value: e,
                modulus: order,
            });
        }
        Ok(Self::canonical(order, v))
    }

    fn canonical(order: u64, v: u64) -> Self {
        if order == 1 {
            return Self { order, rep: 0 };
        }
        let v = v % order;
        debug_assert_eq!(v.gcd(&order), 1);
        Self {
            order,
            rep: v.min(order - v),
        }
    }

    pub fn trivial() -> Self {
        Self { order: 1, rep: 0 }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn rep(&self) -> u64 {
        self.rep
    }

    pub fn scale(&self, u: i64) -> Self {
        if self.order == 1 {
            return *self;
        }
        Self::canonical(self.order, modulo(u, self.order) * self.rep % self.order)
    }

    /// All labels of a given order, in increasing `rep`.
    pub fn all_of_order(order: u64) -> Vec<Self> {
        match order {
            0 => vec![],
            1 => vec![Self::trivial()],
            _ => (1..=order / 2)
                .filter(|e| e.gcd(&order) == 1)
                .map(|rep| Self { order, rep })
                .collect(),
        }
    }
}

impl fmt::Display for FaithfulCharLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.order == 1 {
            write!(f, "triv")
        } else {
            write!(f, "C{}^±{}", self.order, self.rep)
        }
    }
}
