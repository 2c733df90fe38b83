//! Symbols of the Burnside group of surfaces with a cyclic group action, and the two
//! relations (vanishing and blow-up) imposed on them.
//!
//! A symbol records a stabilizer subgroup `H` (by its order `d | N`), the function field of
//! the fixed component together with the residual action on it, and the characters of `H`
//! on the normal bundle. For surfaces there are three shapes:
//!
//! * points: `K = k`, two normal characters `(a, b)`;
//! * curves: `K` of transcendence degree one, one normal character;
//! * free symbols `(1, Y⟳K, ())` of the trivial-stabilizer sector.
//!
//! Constructors validate and canonicalize, so a value of these types is always canonical.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::chars::{modulo, Char, FaithfulCharLabel};
use crate::error::{Error, Result};
use crate::formal::FormalSum;

pub type SymbolSum = FormalSum<Symbol, i64>;

/// `(H, k⟳k, (a, b))` with `|H| = d`, stored with `a <= b`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PointSymbol {
    n: u64,
    d: u64,
    a: u64,
    b: u64,
}

impl PointSymbol {
    pub fn new(n: u64, d: u64, a: i64, b: i64) -> Result<Self> {
        check_stabilizer(n, d)?;
        let (a, b) = (modulo(a, d), modulo(b, d));
        if a == 0 || b == 0 {
            return Err(Error::InvalidSymbol(format!(
                "point symbol (d={d}; {a},{b}) has a trivial character"
            )));
        }
        if a.gcd(&b).gcd(&d) != 1 {
            return Err(Error::InvalidSymbol(format!(
                "characters ({a},{b}) do not generate the dual of C{d}"
            )));
        }
        Ok(Self {
            n,
            d,
            a: a.min(b),
            b: a.max(b),
        })
    }

    pub fn group_order(&self) -> u64 {
        self.n
    }

    pub fn stabilizer_order(&self) -> u64 {
        self.d
    }

    pub fn weights(&self) -> (Char, Char) {
        (Char::new(self.d, self.a as i64), Char::new(self.d, self.b as i64))
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    /// `a + b = 0` in the character group.
    pub fn vanishing_applies(&self) -> bool {
        (self.a + self.b) % self.d == 0
    }

    /// The right-hand side `Θ₁ + Θ₂` of the blow-up relation for this symbol.
    pub fn blowup_rhs(&self) -> Result<SymbolSum> {
        blowup_terms(self.n, self.d, self.a as i64, self.b as i64)
    }

    pub fn scale(&self, u: i64) -> Result<Self> {
        let (a, b) = self.weights();
        Self::new(self.n, self.d, a.scale(u).value() as i64, b.scale(u).value() as i64)
    }
}

/// `Θ₁ + Θ₂` for the ordered pair `(a, b)`.
///
/// Kept separate from [`PointSymbol::blowup_rhs`] so that the symmetry in `(a, b)` can be
/// checked against the formula itself rather than against the canonical ordering.
pub fn blowup_terms(n: u64, d: u64, a: i64, b: i64) -> Result<SymbolSum> {
    let a = Char::new(d, a);
    let b = Char::new(d, b);
    let mut out = SymbolSum::zero();
    if a != b {
        let diff_ba = b.sub(&a);
        let diff_ab = a.sub(&b);
        out.add_term(
            Symbol::Point(PointSymbol::new(n, d, a.value() as i64, diff_ba.value() as i64)?),
            1,
        );
        out.add_term(
            Symbol::Point(PointSymbol::new(n, d, b.value() as i64, diff_ab.value() as i64)?),
            1,
        );
    }
    let diff = b.sub(&a);
    let g = diff.kernel_order();
    if g > 1 {
        let normal = b.restrict(g)?;
        if !normal.is_trivial() {
            out.add_term(
                Symbol::Curve(CurveSymbol::new(
                    n,
                    g,
                    normal.value() as i64,
                    CurveWithAction::Rational(diff.induced_faithful()),
                )?),
                1,
            );
        }
    }
    Ok(out)
}

/// The function field of a fixed curve with the residual group action on it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CurveWithAction {
    /// `k(t)` with the residual group acting through a faithful character.
    Rational(FaithfulCharLabel),
    /// A curve known only by name, e.g. a genus-one curve.
    Opaque { name: String, action_tag: String },
}

impl fmt::Display for CurveWithAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveWithAction::Rational(l) => write!(f, "P1⟳{l}"),
            CurveWithAction::Opaque { name, action_tag } => write!(f, "{name}⟳{action_tag}"),
        }
    }
}

/// `(H, Y⟳K, (c))` with `K` a function field in one variable.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CurveSymbol {
    n: u64,
    d: u64,
    normal_char: u64,
    curve: CurveWithAction,
}

impl CurveSymbol {
    pub fn new(n: u64, d: u64, normal_char: i64, curve: CurveWithAction) -> Result<Self> {
        check_stabilizer(n, d)?;
        let c = modulo(normal_char, d);
        if c == 0 || c.gcd(&d) != 1 {
            return Err(Error::InvalidSymbol(format!(
                "normal character {c} does not generate the dual of C{d}"
            )));
        }
        if let CurveWithAction::Rational(l) = &curve {
            if (n / d) % l.order() != 0 {
                return Err(Error::InvalidSymbol(format!(
                    "residual action of order {} does not fit in C{}/C{d}",
                    l.order(),
                    n
                )));
            }
        }
        Ok(Self {
            n,
            d,
            normal_char: c,
            curve,
        })
    }

    pub fn group_order(&self) -> u64 {
        self.n
    }

    pub fn stabilizer_order(&self) -> u64 {
        self.d
    }

    pub fn normal_char(&self) -> Char {
        Char::new(self.d, self.normal_char as i64)
    }

    pub fn curve(&self) -> &CurveWithAction {
        &self.curve
    }

    pub fn is_rational(&self) -> bool {
        matches!(self.curve, CurveWithAction::Rational(_))
    }

    pub fn scale(&self, u: i64) -> Result<Self> {
        let curve = match &self.curve {
            CurveWithAction::Rational(l) => CurveWithAction::Rational(l.scale(u)),
            other => other.clone(),
        };
        Self::new(self.n, self.d, self.normal_char().scale(u).value() as i64, curve)
    }
}

/// `(1, Y⟳K, ())`: a class in the trivial-stabilizer sector, known by a witness tag.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FreeSymbol {
    n: u64,
    tag: String,
}

impl FreeSymbol {
    pub fn new(n: u64, tag: impl Into<String>) -> Self {
        Self { n, tag: tag.into() }
    }

    pub fn group_order(&self) -> u64 {
        self.n
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Symbol {
    Point(PointSymbol),
    Curve(CurveSymbol),
    Free(FreeSymbol),
}

impl Symbol {
    pub fn group_order(&self) -> u64 {
        match self {
            Symbol::Point(p) => p.n,
            Symbol::Curve(c) => c.n,
            Symbol::Free(f) => f.n,
        }
    }

    /// True for the symbols the relation engine knows about: points and rational curves.
    pub fn in_rational_sector(&self) -> bool {
        match self {
            Symbol::Point(_) => true,
            Symbol::Curve(c) => c.is_rational(),
            Symbol::Free(_) => false,
        }
    }

    /// Action of the group automorphism `g ↦ g^u` on the symbol data.
    pub fn relabel(&self, u: i64) -> Result<Symbol> {
        let n = self.group_order();
        if modulo(u, n).gcd(&n) != 1 {
            return Err(Error::NotUnit { value: u, modulus: n });
        }
        Ok(match self {
            Symbol::Point(p) => Symbol::Point(p.scale(u)?),
            Symbol::Curve(c) => Symbol::Curve(c.scale(u)?),
            Symbol::Free(f) => Symbol::Free(f.clone()),
        })
    }
}

/// Rebuild a symbol through its validating constructor.
pub fn canonicalize(s: &Symbol) -> Result<Symbol> {
    Ok(match s {
        Symbol::Point(p) => Symbol::Point(PointSymbol::new(p.n, p.d, p.a as i64, p.b as i64)?),
        Symbol::Curve(c) => Symbol::Curve(CurveSymbol::new(c.n, c.d, c.normal_char as i64, c.curve.clone())?),
        Symbol::Free(f) => Symbol::Free(f.clone()),
    })
}

/// Drops the trivial-stabilizer sector `Z[Bir]` from a sum.
pub fn project_nontrivial(s: &SymbolSum) -> SymbolSum {
    s.filter(|k| !matches!(k, Symbol::Free(_)))
}

fn check_stabilizer(n: u64, d: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidOrder(n));
    }
    if d <= 1 {
        return Err(Error::InvalidSymbol(format!("stabilizer of order {d} is trivial")));
    }
    if n % d != 0 {
        return Err(Error::NotDivisor { sub: d, modulus: n });
    }
    Ok(())
}

impl fmt::Display for PointSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(C{}, pt, ({},{}))", self.d, self.a, self.b)
    }
}

impl fmt::Display for CurveSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(C{}, {}, ({}))", self.d, self.curve, self.normal_char)
    }
}

impl fmt::Display for FreeSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(1, {}, ())", self.tag)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Point(p) => p.fmt(f),
            Symbol::Curve(c) => c.fmt(f),
            Symbol::Free(s) => s.fmt(f),
        }
    }
}
