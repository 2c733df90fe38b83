//! Worked examples: the Cremona involution through the degree-six del Pezzo surface, and
//! a scripted birational automorphism of `P³` whose ledger depends on opaque labels.

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::Serialize;

use crate::chars::modulo;
use crate::class::{class_of_with_witness, relabel_group_automorphism, EquivCurveClass, OrbifoldCurveSignature};
use crate::error::{Error, Result};
use crate::ledger::{
    BirClass, ClassicalSum, EquivariantSum, Ledger, LedgerEntry, MapSpec, OrbifoldSum, ScriptedDivisor, ScriptedMap,
    ToricMap, ledger,
};
use crate::symbol::SymbolSum;
use crate::toric::{cone_weights, Embedding, Fan2D, MoveWord, Ray};

/// Both weights at the fixed point of one cone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConeWeights {
    pub rays: (Ray, Ray),
    pub weights: (u64, u64),
}

pub fn weight_table(f: &Fan2D, e: &Embedding) -> Vec<ConeWeights> {
    (0..f.len())
        .map(|i| {
            let (a, b) = cone_weights(f, i, e);
            ConeWeights {
                rays: f.cone(i),
                weights: (a.value(), b.value()),
            }
        })
        .collect()
}

/// Multiset of unordered weight pairs.
pub fn weight_multiset(pairs: impl IntoIterator<Item = (u64, u64)>) -> BTreeMap<(u64, u64), usize> {
    let mut out = BTreeMap::new();
    for (a, b) in pairs {
        *out.entry((a.min(b), a.max(b))).or_insert(0) += 1;
    }
    out
}

/// Weights the example records before and after the Cremona word, reduced mod `n`.
pub fn dp6_expected_weights(n: u64, a: i64, b: i64) -> (Vec<(u64, u64)>, Vec<(u64, u64)>) {
    let m = |v: i64| modulo(v, n);
    let before = vec![(m(a), m(b)), (m(-a), m(b - a)), (m(-b), m(a - b))];
    let after = vec![(m(-a), m(-b)), (m(a), m(a - b)), (m(b), m(b - a))];
    (before, after)
}

#[derive(Debug, Clone, Serialize)]
pub struct Dp6Report {
    pub n: u64,
    pub a: u64,
    pub b: u64,
    pub embedding: String,
    pub word: String,
    pub fan_before: Fan2D,
    pub fan_after: Fan2D,
    pub weights_before: Vec<ConeWeights>,
    pub weights_after: Vec<ConeWeights>,
    pub weights_match_pattern: bool,
    pub class_before: SymbolSum,
    pub class_after: SymbolSum,
    pub relabel_check: bool,
    pub ledger: Vec<LedgerEntry>,
    pub c: ClassicalSum,
    pub c_g: EquivariantSum,
    pub c_orb: OrbifoldSum,
}

impl Dp6Report {
    pub fn passed(&self) -> bool {
        self.weights_match_pattern && self.relabel_check && self.c_g.is_zero() && self.c_orb.is_zero()
    }
}

pub fn check_dp6_params(n: u64, a: i64, b: i64) -> Result<()> {
    if n < 2 {
        return Err(Error::Precondition(format!("N = {n}: N ≥ 2 required")));
    }
    if modulo(a, n) == 0 || modulo(b, n) == 0 {
        return Err(Error::Precondition(format!("a = {a}, b = {b}: a, b ≠ 0 mod {n} required")));
    }
    if modulo(a - b, n) == 0 {
        return Err(Error::Precondition(format!("a = {a}, b = {b}: a ≠ b required (mod {n})")));
    }
    if modulo(a, n).gcd(&modulo(b, n)).gcd(&n) != 1 {
        return Err(Error::Precondition(format!(
            "gcd(a, b, N) = 1 required for a faithful action, got ({a}, {b}, {n})"
        )));
    }
    Ok(())
}

pub fn scenario_dp6(n: u64, a: i64, b: i64) -> Result<Dp6Report> {
    check_dp6_params(n, a, b)?;
    let e = Embedding::new(n, a, b)?;
    let x = Fan2D::projective_plane();
    let word = MoveWord::cremona();
    let map = ToricMap::new(x.clone(), word.clone(), e)?;
    let y = map.target();

    let weights_before = weight_table(&x, &e);
    let weights_after = weight_table(&y, &e);
    let (exp_before, exp_after) = dp6_expected_weights(n, a, b);
    let weights_match_pattern = weight_multiset(weights_before.iter().map(|w| w.weights))
        == weight_multiset(exp_before)
        && weight_multiset(weights_after.iter().map(|w| w.weights)) == weight_multiset(exp_after);

    // X and Y are G-birational, so they share the free part
    let witness = "P2";
    let class_before = class_of_with_witness(&x, &e, witness)?;
    let class_after = class_of_with_witness(&y, &e, witness)?;
    let relabel_check = relabel_group_automorphism(&class_after, -1)? == class_before;

    let l = ledger(&MapSpec::Toric(map))?;
    Ok(Dp6Report {
        n,
        a: e.p(),
        b: e.q(),
        embedding: e.to_string(),
        word: word.to_string(),
        fan_before: x,
        fan_after: y,
        weights_before,
        weights_after,
        weights_match_pattern,
        class_before,
        class_after,
        relabel_check,
        c: l.classical(),
        c_g: l.equivariant(),
        c_orb: l.orbifold(),
        ledger: l.entries,
    })
}

/// Equivariant labels of the four divisors in the scripted `P³` example.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LshLabels {
    pub ruled_c: String,
    pub ruled_j2c: String,
    pub over_point: String,
    pub cone_over_conic: String,
}

impl Default for LshLabels {
    fn default() -> Self {
        Self {
            ruled_c: "C×P1".into(),
            ruled_j2c: "J2(C)×P1".into(),
            over_point: "E_pt".into(),
            cone_over_conic: "Cone(conic)".into(),
        }
    }
}

impl LshLabels {
    /// Control case: each divisor contracted by `φ` shares its label with its partner on
    /// the other side.
    pub fn identified() -> Self {
        let d = Self::default();
        Self {
            ruled_j2c: d.ruled_c.clone(),
            cone_over_conic: d.over_point.clone(),
            ..d
        }
    }
}

pub const LSH_GROUP_ORDER: u64 = 5;

/// `φ = π ∘ ψ⁻¹: P³ ⇢ Q ⇢ P³`, where `ψ: Q ⇢ P³` blows up the genus one curve `C` and
/// contracts a divisor onto `J²(C)`, and `π` projects from a fixed point of `Q`.
///
/// `φ` contracts the divisor over `C` and the cone over the conic; `φ⁻¹` contracts the
/// divisor over `J²(C)` and the plane over the fixed point.
pub fn lsh_map(labels: &LshLabels) -> ScriptedMap {
    let div = |name: &str, bir: BirClass, label: &str| ScriptedDivisor {
        name: name.into(),
        generic_stab_trivial: true,
        birational: bir,
        equivariant: EquivCurveClass::opaque(LSH_GROUP_ORDER, format!("{label}⟳C5")),
        orbifold: OrbifoldCurveSignature::opaque(format!("{label}/C5")),
    };
    ScriptedMap {
        dimension: 3,
        exc_fwd: vec![
            div("D_C", BirClass::Opaque("C×P1".into()), &labels.ruled_c),
            div("D_conic", BirClass::Rational(2), &labels.cone_over_conic),
        ],
        exc_bwd: vec![
            div("D_J2C", BirClass::Opaque("J2(C)×P1".into()), &labels.ruled_j2c),
            div("D_pt", BirClass::Rational(2), &labels.over_point),
        ],
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LshReport {
    pub group_order: u64,
    pub labels: LshLabels,
    pub ledger: Vec<LedgerEntry>,
    pub c: ClassicalSum,
    pub c_g: EquivariantSum,
    pub c_orb: OrbifoldSum,
    pub c_g_nonzero: bool,
}

pub fn scenario_lsh(labels: &LshLabels) -> LshReport {
    let l: Ledger = ledger(&MapSpec::Scripted(lsh_map(labels))).expect("scripted ledgers do not fail");
    let c_g = l.equivariant();
    LshReport {
        group_order: LSH_GROUP_ORDER,
        labels: labels.clone(),
        c: l.classical(),
        c_g_nonzero: !c_g.is_zero(),
        c_g,
        c_orb: l.orbifold(),
        ledger: l.entries,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dp6_five_one_two() {
        let r = scenario_dp6(5, 1, 2).unwrap();
        let before: Vec<_> = r.weights_before.iter().map(|w| w.weights).collect();
        let after: Vec<_> = r.weights_after.iter().map(|w| w.weights).collect();
        assert_eq!(weight_multiset(before), weight_multiset([(1, 2), (4, 1), (3, 4)]));
        assert_eq!(weight_multiset(after), weight_multiset([(4, 3), (1, 4), (2, 1)]));
        assert!(r.weights_match_pattern);
        assert!(r.relabel_check);
        assert!(r.c_g.is_zero() && r.c_orb.is_zero() && r.c.is_zero());
        assert_eq!(r.ledger.len(), 6);
        assert!(r.passed());
    }

    #[test]
    fn dp6_rejects_equal_weights() {
        let err = scenario_dp6(5, 1, 1).unwrap_err();
        assert!(err.to_string().contains("a ≠ b required"), "{err}");
        assert!(scenario_dp6(5, 0, 2).is_err());
        assert!(scenario_dp6(6, 2, 4).is_err());
    }

    #[test]
    fn dp6_other_triples() {
        for (n, a, b) in [(5, 1, 3), (7, 1, 2), (7, 2, 3), (11, 1, 5)] {
            assert!(scenario_dp6(n, a, b).unwrap().passed(), "({n},{a},{b})");
        }
    }

    #[test]
    fn lsh_nonvanishing_and_control() {
        let r = scenario_lsh(&LshLabels::default());
        assert!(r.c_g_nonzero);
        assert_eq!(r.c_g.len(), 4);
        assert_eq!(r.c_g.coefficient_sum(), 0);
        let r = scenario_lsh(&LshLabels::identified());
        assert!(!r.c_g_nonzero);
        assert!(r.c_orb.is_zero());
    }

    #[test]
    fn lsh_classical() {
        let r = scenario_lsh(&LshLabels::default());
        let mut expected = ClassicalSum::term(BirClass::Opaque("J2(C)×P1".into()));
        expected.add_term(BirClass::Opaque("C×P1".into()), -1);
        assert_eq!(r.c, expected);
    }
}
