//! Burnside classes of toric surfaces with a torsion-translation action, and the
//! equivariant and orbifold labels of boundary divisors used by the ledgers.
//!
//! The torus is an invariant open set on which `G` acts freely and whose complement is
//! the toric boundary, so the class is a sum over fixed components:
//!
//! * every boundary curve with generic stabilizer of order `g > 1` gives a curve symbol;
//! * every torus-fixed point that is an isolated component of `X^G` gives a point symbol
//!   with its two tangent weights (points on a pointwise fixed curve are absorbed);
//! * the whole surface gives one free symbol, known only by a witness tag.

use std::fmt;

use serde::Serialize;

use crate::chars::FaithfulCharLabel;
use crate::error::{Error, Result};
use crate::symbol::{CurveSymbol, CurveWithAction, FreeSymbol, PointSymbol, Symbol, SymbolSum};
use crate::toric::{cone_weights, ray_data, Embedding, Fan2D, Ray};

pub const DEFAULT_WITNESS: &str = "X";

pub fn class_of(f: &Fan2D, e: &Embedding) -> Result<SymbolSum> {
    class_of_with_witness(f, e, DEFAULT_WITNESS)
}

pub fn class_of_with_witness(f: &Fan2D, e: &Embedding, witness: &str) -> Result<SymbolSum> {
    let n = e.order();
    let data: Vec<_> = f.rays().iter().map(|r| ray_data(r, e)).collect();
    let mut out = SymbolSum::zero();
    for rd in &data {
        if rd.stab_order > 1 {
            let s = CurveSymbol::new(
                n,
                rd.stab_order,
                rd.normal_char.value() as i64,
                CurveWithAction::Rational(rd.residual_action),
            )?;
            out.add_term(Symbol::Curve(s), 1);
        }
    }
    for i in 0..f.len() {
        let (sv, sw) = (data[i].stab_order, data[(i + 1) % f.len()].stab_order);
        if sv < n && sw < n {
            let (a, b) = cone_weights(f, i, e);
            let p = PointSymbol::new(n, n, a.value() as i64, b.value() as i64)?;
            out.add_term(Symbol::Point(p), 1);
        }
    }
    out.add_term(Symbol::Free(FreeSymbol::new(n, witness)), 1);
    Ok(out)
}

/// Pulls a class back along the automorphism `g ↦ g^u` of `C_N`.
pub fn relabel_group_automorphism(s: &SymbolSum, u: i64) -> Result<SymbolSum> {
    if let Some(sym) = s.keys().next() {
        let n = sym.group_order();
        if s.keys().any(|k| k.group_order() != n) {
            return Err(Error::Precondition("sum mixes symbols of different group orders".into()));
        }
    }
    s.try_map_terms(|k| k.relabel(u))
}

/// Label of an invariant divisor with generically free action, for `C_G`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "lowercase")]
pub enum EquivLabel {
    /// `P¹` with `C_N` acting faithfully through this character.
    Faithful(FaithfulCharLabel),
    /// A divisor known only by name.
    Opaque(String),
}

/// Class in `Z[Bir_{G,n-1}]` of a divisor orbit with trivial generic stabilizer.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct EquivCurveClass {
    pub group_order: u64,
    pub label: EquivLabel,
}

impl EquivCurveClass {
    pub fn opaque(group_order: u64, name: impl Into<String>) -> Self {
        Self {
            group_order,
            label: EquivLabel::Opaque(name.into()),
        }
    }

    /// Faithful labels have order `N` exactly.
    pub fn is_generically_free(&self) -> bool {
        match &self.label {
            EquivLabel::Faithful(l) => l.order() == self.group_order,
            EquivLabel::Opaque(_) => true,
        }
    }
}

impl fmt::Display for EquivCurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.label {
            EquivLabel::Faithful(l) => write!(f, "P1⟳{l}"),
            EquivLabel::Opaque(name) => write!(f, "{name}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "lowercase")]
pub enum CoarseCurve {
    Genus(u32),
    Opaque(String),
}

/// An orbifold curve up to isomorphism: coarse space and the orders of its stacky points.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct OrbifoldCurveSignature {
    pub coarse: CoarseCurve,
    orders: Vec<u64>,
}

impl OrbifoldCurveSignature {
    /// Orders of 1 are dropped: they are not stacky points.
    pub fn new(coarse: CoarseCurve, orders: impl IntoIterator<Item = u64>) -> Self {
        let mut orders: Vec<u64> = orders.into_iter().filter(|&o| o >= 2).collect();
        orders.sort_unstable();
        Self { coarse, orders }
    }

    pub fn opaque(name: impl Into<String>) -> Self {
        Self::new(CoarseCurve::Opaque(name.into()), [])
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }
}

impl fmt::Display for OrbifoldCurveSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let orders: Vec<String> = self.orders.iter().map(ToString::to_string).collect();
        match &self.coarse {
            CoarseCurve::Genus(g) => write!(f, "({g};{{{}}})", orders.join(",")),
            CoarseCurve::Opaque(name) if orders.is_empty() => write!(f, "{name}"),
            CoarseCurve::Opaque(name) => write!(f, "({name};{{{}}})", orders.join(",")),
        }
    }
}

/// Either a divisor label or the marker for divisors excluded by a nontrivial generic
/// stabilizer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DivisorLabel<L> {
    Label(L),
    NontrivialStabilizer { stab_order: u64 },
}

impl<L> DivisorLabel<L> {
    pub fn label(self) -> Option<L> {
        match self {
            DivisorLabel::Label(l) => Some(l),
            DivisorLabel::NontrivialStabilizer { .. } => None,
        }
    }
}

pub fn divisor_class_equivariant(v: &Ray, e: &Embedding) -> DivisorLabel<EquivCurveClass> {
    let rd = ray_data(v, e);
    if rd.stab_order > 1 {
        return DivisorLabel::NontrivialStabilizer {
            stab_order: rd.stab_order,
        };
    }
    DivisorLabel::Label(EquivCurveClass {
        group_order: e.order(),
        label: EquivLabel::Faithful(rd.residual_action),
    })
}

/// The quotient of a boundary line by a generically free `C_N` is a football: both
/// torus-fixed endpoints are fixed by all of `G`.
pub fn divisor_class_orbifold(v: &Ray, e: &Embedding) -> DivisorLabel<OrbifoldCurveSignature> {
    let rd = ray_data(v, e);
    if rd.stab_order > 1 {
        return DivisorLabel::NontrivialStabilizer {
            stab_order: rd.stab_order,
        };
    }
    DivisorLabel::Label(OrbifoldCurveSignature::new(
        CoarseCurve::Genus(0),
        [e.order(), e.order()],
    ))
}

/// Number of point and curve symbols `class_of` produces, counted directly from ray data.
pub fn expected_symbol_counts(f: &Fan2D, e: &Embedding) -> (usize, usize) {
    let n = e.order();
    let stabs: Vec<u64> = f.rays().iter().map(|r| ray_data(r, e).stab_order).collect();
    let curves = stabs.iter().filter(|&&g| g > 1).count();
    let points = (0..f.len())
        .filter(|&i| stabs[i] < n && stabs[(i + 1) % f.len()] < n)
        .count();
    (points, curves)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chars::modulo;
    use crate::symbol::project_nontrivial;
    use crate::toric::Fan2D;

    fn pt(n: u64, a: i64, b: i64) -> Symbol {
        Symbol::Point(PointSymbol::new(n, n, a, b).unwrap())
    }

    #[test]
    fn p2_class_at_order_five() {
        let e = Embedding::new(5, 1, 2).unwrap();
        let c = class_of(&Fan2D::projective_plane(), &e).unwrap();
        let expected: SymbolSum = [
            (pt(5, 1, 2), 1),
            (pt(5, 1, 4), 1),
            (pt(5, 3, 4), 1),
            (Symbol::Free(FreeSymbol::new(5, DEFAULT_WITNESS)), 1),
        ]
        .into_iter()
        .collect();
        assert_eq!(c, expected);
    }

    #[test]
    fn p2_weight_pattern_is_generic() {
        // (a,b), (-a,b-a), (-b,a-b) for every admissible (N, a, b)
        for n in 3..14u64 {
            for a in 1..n as i64 {
                for b in 1..n as i64 {
                    let Ok(e) = Embedding::new(n, a, b) else { continue };
                    let f = Fan2D::projective_plane();
                    let mut got: Vec<(u64, u64)> = (0..3)
                        .map(|i| {
                            let (x, y) = cone_weights(&f, i, &e);
                            (x.value().min(y.value()), x.value().max(y.value()))
                        })
                        .collect();
                    let m = |v: i64| modulo(v, n);
                    let mut want: Vec<(u64, u64)> = [(m(a), m(b)), (m(-a), m(b - a)), (m(-b), m(a - b))]
                        .iter()
                        .map(|&(x, y)| (x.min(y), x.max(y)))
                        .collect();
                    got.sort();
                    want.sort();
                    assert_eq!(got, want, "N={n} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn rotated_plane_weights() {
        let e = Embedding::new(5, 1, 2).unwrap();
        let f = Fan2D::new(vec![Ray::new(1, 1), Ray::new(-1, 0), Ray::new(0, -1)]).unwrap();
        let c = project_nontrivial(&class_of(&f, &e).unwrap());
        let expected: SymbolSum = [(pt(5, 4, 3), 1), (pt(5, 1, 4), 1), (pt(5, 2, 1), 1)].into_iter().collect();
        assert_eq!(c, expected);
    }

    #[test]
    fn order_four_has_a_curve_symbol() {
        let e = Embedding::new(4, 1, 2).unwrap();
        let c = class_of(&Fan2D::projective_plane(), &e).unwrap();
        let curve = CurveSymbol::new(
            4,
            2,
            1,
            CurveWithAction::Rational(FaithfulCharLabel::new(2, 1).unwrap()),
        )
        .unwrap();
        assert_eq!(c.coefficient(&Symbol::Curve(curve)), 1);
        assert_eq!(expected_symbol_counts(&Fan2D::projective_plane(), &e), (3, 1));
    }

    #[test]
    fn fully_fixed_ray_absorbs_its_points() {
        // q = 0: ray (1,0) has c = 0, so D_(1,0) is pointwise fixed
        let e = Embedding::new(3, 1, 0).unwrap();
        let f = Fan2D::projective_plane();
        let c = project_nontrivial(&class_of(&f, &e).unwrap());
        let points = c.keys().filter(|k| matches!(k, Symbol::Point(_))).count();
        let curves = c.keys().filter(|k| matches!(k, Symbol::Curve(_))).count();
        assert_eq!((points, curves), (1, 1));
        assert_eq!(expected_symbol_counts(&f, &e), (1, 1));
    }

    #[test]
    fn relabel_examples() {
        let e = Embedding::new(5, 1, 2).unwrap();
        let p2 = class_of(&Fan2D::projective_plane(), &e).unwrap();
        assert_eq!(relabel_group_automorphism(&p2, 1).unwrap(), p2);
        let rotated = Fan2D::new(vec![Ray::new(1, 1), Ray::new(-1, 0), Ray::new(0, -1)]).unwrap();
        let q = class_of(&rotated, &e).unwrap();
        assert_eq!(relabel_group_automorphism(&q, -1).unwrap(), p2);
        let single = SymbolSum::term(pt(5, 1, 2));
        assert_eq!(relabel_group_automorphism(&single, 2).unwrap(), SymbolSum::term(pt(5, 2, 4)));
        assert!(relabel_group_automorphism(&single, 5).is_err());
    }

    #[test]
    fn divisor_labels() {
        let e5 = Embedding::new(5, 1, 2).unwrap();
        match divisor_class_equivariant(&Ray::new(1, 0), &e5) {
            DivisorLabel::Label(c) => {
                assert_eq!(c.label, EquivLabel::Faithful(FaithfulCharLabel::new(5, 2).unwrap()));
                assert!(c.is_generically_free());
            }
            other => panic!("unexpected {other:?}"),
        }
        let e4 = Embedding::new(4, 1, 2).unwrap();
        assert_eq!(
            divisor_class_equivariant(&Ray::new(1, 0), &e4),
            DivisorLabel::NontrivialStabilizer { stab_order: 2 }
        );
        for n in 2..10 {
            let e = Embedding::new(n, 1, 0).unwrap();
            let c = divisor_class_equivariant(&Ray::new(0, 1), &e).label().unwrap();
            assert_eq!(c.label, EquivLabel::Faithful(FaithfulCharLabel::new(n, 1).unwrap()));
        }
    }

    #[test]
    fn orbifold_labels() {
        let e5 = Embedding::new(5, 1, 2).unwrap();
        let sig = divisor_class_orbifold(&Ray::new(1, 0), &e5).label().unwrap();
        assert_eq!(sig, OrbifoldCurveSignature::new(CoarseCurve::Genus(0), [5, 5]));
        assert_eq!(sig.to_string(), "(0;{5,5})");
        let e1 = Embedding::new(1, 0, 0).unwrap();
        let sig = divisor_class_orbifold(&Ray::new(1, 0), &e1).label().unwrap();
        assert!(sig.orders().is_empty());
        let e4 = Embedding::new(4, 1, 2).unwrap();
        assert!(divisor_class_orbifold(&Ray::new(1, 0), &e4).label().is_none());
    }

    #[test]
    fn coarsening_forgets_the_character() {
        // rays (1,0) and (0,1) at (5,1,2): c = 2 and 4, labels rep 2 and rep 1
        let e = Embedding::new(5, 1, 2).unwrap();
        let (r1, r2) = (Ray::new(1, 0), Ray::new(0, 1));
        assert_ne!(divisor_class_equivariant(&r1, &e), divisor_class_equivariant(&r2, &e));
        assert_eq!(divisor_class_orbifold(&r1, &e), divisor_class_orbifold(&r2, &e));
    }
}
