//! Divisor ledgers of birational maps and the invariants built from them.
//!
//! For `φ: X ⇢ Y` the ledger lists the divisors of `X` contracted by `φ` (forward) and the
//! divisors of `Y` contracted by `φ⁻¹` (backward). Three invariants are read off it:
//!
//! * `c(φ)`: backward minus forward, by birational class of the divisor;
//! * `C_G(φ)`: the same over equivariant classes, skipping divisors with nontrivial
//!   generic stabilizer;
//! * `C_orb(φ)`: the same over orbifold signatures, with the same exclusion.
//!
//! Toric maps are words of blow-ups and blow-downs. Their exceptional sets are read off
//! a canonical common resolution rather than the replay trace, so redundant moves in a
//! word leave no trace in the ledger.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::class::{
    divisor_class_equivariant, divisor_class_orbifold, EquivCurveClass, OrbifoldCurveSignature,
};
use crate::error::{Error, Result};
use crate::formal::FormalSum;
use crate::toric::{
    blowdown_word, common_resolution, invert_word, ray_data, replay, Embedding, Fan2D, MoveWord, Provenance, Ray,
    Resolution,
};

/// Birational class of a divisor, forgetting the group action.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "lowercase")]
pub enum BirClass {
    /// Rational variety of the given dimension.
    Rational(u32),
    Opaque(String),
}

impl fmt::Display for BirClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BirClass::Rational(d) => write!(f, "P{d}"),
            BirClass::Opaque(name) => write!(f, "{name}"),
        }
    }
}

pub type ClassicalSum = FormalSum<BirClass, i64>;
pub type EquivariantSum = FormalSum<EquivCurveClass, i64>;
pub type OrbifoldSum = FormalSum<OrbifoldCurveSignature, i64>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ToricMap {
    pub source: Fan2D,
    pub word: MoveWord,
    pub embedding: Embedding,
}

impl ToricMap {
    pub fn new(source: Fan2D, word: MoveWord, embedding: Embedding) -> Result<Self> {
        replay(&source, &word)?;
        Ok(Self {
            source,
            word,
            embedding,
        })
    }

    pub fn identity(source: Fan2D, embedding: Embedding) -> Self {
        Self {
            source,
            word: MoveWord::default(),
            embedding,
        }
    }

    pub fn target(&self) -> Fan2D {
        replay(&self.source, &self.word).expect("validated at construction")
    }

    pub fn inverse(&self) -> Result<ToricMap> {
        Ok(ToricMap {
            source: self.target(),
            word: invert_word(&self.source, &self.word)?,
            embedding: self.embedding,
        })
    }
}

/// A divisor of a scripted map: labels are supplied, not computed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScriptedDivisor {
    pub name: String,
    pub generic_stab_trivial: bool,
    pub birational: BirClass,
    pub equivariant: EquivCurveClass,
    pub orbifold: OrbifoldCurveSignature,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScriptedMap {
    pub dimension: u32,
    /// Divisors on the source contracted by the map.
    pub exc_fwd: Vec<ScriptedDivisor>,
    /// Divisors on the target contracted by the inverse.
    pub exc_bwd: Vec<ScriptedDivisor>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MapSpec {
    Toric(ToricMap),
    Scripted(ScriptedMap),
}

/// `Ex` sets of a toric map and of the two legs of its common resolution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExceptionalSets {
    pub resolution: Resolution,
    pub ex_sigma: BTreeSet<Ray>,
    pub ex_tau: BTreeSet<Ray>,
    pub ex_sigma_inv: BTreeSet<Ray>,
    pub ex_tau_inv: BTreeSet<Ray>,
    pub ex_phi: BTreeSet<Ray>,
    pub ex_phi_inv: BTreeSet<Ray>,
}

/// Outcome of checking the four exceptional-set identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LemmaCheck {
    pub sigma_inverse_empty: bool,
    pub tau_inverse_empty: bool,
    pub forward: bool,
    pub backward: bool,
}

impl LemmaCheck {
    pub fn all(&self) -> bool {
        self.sigma_inverse_empty && self.tau_inverse_empty && self.forward && self.backward
    }
}

impl ExceptionalSets {
    /// `Ex(σ⁻¹) = Ex(τ⁻¹) = ∅`, `Ex(φ) = Ex(τ)∖Ex(σ)`, `Ex(φ⁻¹) = Ex(σ)∖Ex(τ)`.
    pub fn check(&self) -> LemmaCheck {
        LemmaCheck {
            sigma_inverse_empty: self.ex_sigma_inv.is_empty(),
            tau_inverse_empty: self.ex_tau_inv.is_empty(),
            forward: self.ex_phi == self.ex_tau.difference(&self.ex_sigma).copied().collect(),
            backward: self.ex_phi_inv == self.ex_sigma.difference(&self.ex_tau).copied().collect(),
        }
    }
}

pub fn exceptional_sets(m: &ToricMap) -> Result<ExceptionalSets> {
    let x = &m.source;
    let y = replay(x, &m.word)?;
    let z = common_resolution(x, &y);
    let (xs, ys, zs) = (x.ray_set(), y.ray_set(), z.fan.ray_set());

    let ex_sigma = z.rays_tagged(|t| matches!(t, Provenance::TargetOnly | Provenance::Neither));
    let ex_tau = z.rays_tagged(|t| matches!(t, Provenance::SourceOnly | Provenance::Neither));
    debug_assert_eq!(ex_sigma, zs.difference(&xs).copied().collect());
    debug_assert_eq!(ex_tau, zs.difference(&ys).copied().collect());

    let sets = ExceptionalSets {
        ex_sigma_inv: xs.difference(&zs).copied().collect(),
        ex_tau_inv: ys.difference(&zs).copied().collect(),
        ex_phi: xs.difference(&ys).copied().collect(),
        ex_phi_inv: ys.difference(&xs).copied().collect(),
        ex_sigma,
        ex_tau,
        resolution: z,
    };
    assert!(sets.ex_phi.is_disjoint(&sets.ex_phi_inv));
    Ok(sets)
}

/// The two blow-down legs `σ: Z → X` and `τ: Z → Y` of the common resolution.
pub fn factorization(m: &ToricMap) -> Result<(ToricMap, ToricMap)> {
    let y = m.target();
    let z = common_resolution(&m.source, &y).fan;
    let sigma = ToricMap::new(z.clone(), blowdown_word(&z, &m.source)?, m.embedding)?;
    let tau = ToricMap::new(z.clone(), blowdown_word(&z, &y)?, m.embedding)?;
    Ok((sigma, tau))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// Contracted by `φ`.
    Forward,
    /// Contracted by `φ⁻¹`.
    Backward,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "lowercase")]
pub enum DivisorId {
    Ray(Ray),
    Named(String),
}

impl fmt::Display for DivisorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DivisorId::Ray(r) => write!(f, "D{r}"),
            DivisorId::Named(n) => write!(f, "{n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LedgerEntry {
    pub divisor: DivisorId,
    pub side: Side,
    pub generic_stab_trivial: bool,
    pub birational: BirClass,
    /// `None` when excluded by a nontrivial generic stabilizer.
    pub equivariant: Option<EquivCurveClass>,
    pub orbifold: Option<OrbifoldCurveSignature>,
}

impl LedgerEntry {
    fn sign(&self) -> i64 {
        match self.side {
            Side::Forward => -1,
            Side::Backward => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ledger {
    pub entries: Vec<LedgerEntry>,
}

impl Ledger {
    pub fn classical(&self) -> ClassicalSum {
        self.entries
            .iter()
            .map(|e| (e.birational.clone(), e.sign()))
            .collect()
    }

    pub fn equivariant(&self) -> EquivariantSum {
        self.entries
            .iter()
            .filter(|e| e.generic_stab_trivial)
            .filter_map(|e| e.equivariant.clone().map(|c| (c, e.sign())))
            .collect()
    }

    pub fn orbifold(&self) -> OrbifoldSum {
        self.entries
            .iter()
            .filter(|e| e.generic_stab_trivial)
            .filter_map(|e| e.orbifold.clone().map(|c| (c, e.sign())))
            .collect()
    }

    pub fn excluded(&self) -> impl Iterator<Item = &LedgerEntry> {
        self.entries.iter().filter(|e| !e.generic_stab_trivial)
    }
}

fn toric_entry(ray: Ray, side: Side, e: &Embedding) -> LedgerEntry {
    let trivial = ray_data(&ray, e).stab_order == 1;
    LedgerEntry {
        divisor: DivisorId::Ray(ray),
        side,
        generic_stab_trivial: trivial,
        birational: BirClass::Rational(1),
        equivariant: divisor_class_equivariant(&ray, e).label(),
        orbifold: divisor_class_orbifold(&ray, e).label(),
    }
}

fn scripted_entry(d: &ScriptedDivisor, side: Side) -> LedgerEntry {
    LedgerEntry {
        divisor: DivisorId::Named(d.name.clone()),
        side,
        generic_stab_trivial: d.generic_stab_trivial,
        birational: d.birational.clone(),
        equivariant: d.generic_stab_trivial.then(|| d.equivariant.clone()),
        orbifold: d.generic_stab_trivial.then(|| d.orbifold.clone()),
    }
}

pub fn ledger(m: &MapSpec) -> Result<Ledger> {
    let entries = match m {
        MapSpec::Toric(t) => {
            let sets = exceptional_sets(t)?;
            sets.ex_phi
                .iter()
                .map(|r| toric_entry(*r, Side::Forward, &t.embedding))
                .chain(sets.ex_phi_inv.iter().map(|r| toric_entry(*r, Side::Backward, &t.embedding)))
                .collect()
        }
        MapSpec::Scripted(s) => s
            .exc_fwd
            .iter()
            .map(|d| scripted_entry(d, Side::Forward))
            .chain(s.exc_bwd.iter().map(|d| scripted_entry(d, Side::Backward)))
            .collect(),
    };
    Ok(Ledger { entries })
}

pub fn c_classical(m: &MapSpec) -> Result<ClassicalSum> {
    Ok(ledger(m)?.classical())
}

pub fn c_g(m: &MapSpec) -> Result<EquivariantSum> {
    Ok(ledger(m)?.equivariant())
}

pub fn c_orb(m: &MapSpec) -> Result<OrbifoldSum> {
    Ok(ledger(m)?.orbifold())
}

/// `m2 ∘ m1`: the word of `m1` followed by the word of `m2`.
pub fn compose(m1: &ToricMap, m2: &ToricMap) -> Result<ToricMap> {
    if m1.embedding != m2.embedding {
        return Err(Error::EmbeddingMismatch(m1.embedding.to_string(), m2.embedding.to_string()));
    }
    let mid = m1.target();
    if mid != m2.source {
        return Err(Error::FanMismatch {
            expected: m2.source.to_string(),
            found: mid.to_string(),
        });
    }
    ToricMap::new(m1.source.clone(), m1.word.concat(&m2.word), m1.embedding)
}

/// All three invariants at once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invariants {
    pub classical: ClassicalSum,
    pub equivariant: EquivariantSum,
    pub orbifold: OrbifoldSum,
}

impl Invariants {
    pub fn of(m: &MapSpec) -> Result<Self> {
        let l = ledger(m)?;
        Ok(Self {
            classical: l.classical(),
            equivariant: l.equivariant(),
            orbifold: l.orbifold(),
        })
    }

    pub fn sum(&self, other: &Invariants) -> Invariants {
        Invariants {
            classical: &self.classical + &other.classical,
            equivariant: &self.equivariant + &other.equivariant,
            orbifold: &self.orbifold + &other.orbifold,
        }
    }

    pub fn negate(&self) -> Invariants {
        Invariants {
            classical: -self.classical.clone(),
            equivariant: -self.equivariant.clone(),
            orbifold: -self.orbifold.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chars::FaithfulCharLabel;
    use crate::class::{CoarseCurve, EquivLabel};
    use crate::toric::Move;

    fn toric(word: MoveWord, n: u64, p: i64, q: i64) -> ToricMap {
        ToricMap::new(Fan2D::projective_plane(), word, Embedding::new(n, p, q).unwrap()).unwrap()
    }

    fn rays(v: &[(i64, i64)]) -> BTreeSet<Ray> {
        v.iter().map(|&(x, y)| Ray::new(x, y)).collect()
    }

    fn faithful(n: u64, rep: i64) -> EquivCurveClass {
        EquivCurveClass {
            group_order: n,
            label: EquivLabel::Faithful(FaithfulCharLabel::new(n, rep).unwrap()),
        }
    }

    #[test]
    fn cremona_exceptional_sets() {
        let m = toric(MoveWord::cremona(), 5, 1, 2);
        let s = exceptional_sets(&m).unwrap();
        assert_eq!(s.ex_phi, rays(&[(1, 0), (0, 1), (-1, -1)]));
        assert_eq!(s.ex_phi_inv, rays(&[(1, 1), (-1, 0), (0, -1)]));
        assert!(s.check().all());
    }

    #[test]
    fn trivial_and_single_blowup_sets() {
        let s = exceptional_sets(&toric(MoveWord::default(), 5, 1, 2)).unwrap();
        assert!(s.ex_phi.is_empty() && s.ex_phi_inv.is_empty());
        let s = exceptional_sets(&toric(MoveWord(vec![Move::Up { cone: 0 }]), 5, 1, 2)).unwrap();
        assert!(s.ex_phi.is_empty());
        assert_eq!(s.ex_phi_inv, rays(&[(1, 1)]));
    }

    #[test]
    fn classical_invariant() {
        let m = MapSpec::Toric(toric(MoveWord::cremona(), 5, 1, 2));
        assert!(c_classical(&m).unwrap().is_zero());
        let m = MapSpec::Toric(toric(MoveWord(vec![Move::Up { cone: 0 }]), 5, 1, 2));
        assert_eq!(c_classical(&m).unwrap(), ClassicalSum::term(BirClass::Rational(1)));
    }

    #[test]
    fn equivariant_invariant() {
        assert!(c_g(&MapSpec::Toric(toric(MoveWord::default(), 5, 1, 2))).unwrap().is_zero());
        let m = toric(MoveWord::cremona(), 5, 1, 2);
        let l = ledger(&MapSpec::Toric(m)).unwrap();
        let fwd: Vec<_> = l.entries.iter().filter(|e| e.side == Side::Forward).collect();
        let mut reps: Vec<u64> = fwd
            .iter()
            .map(|e| match &e.equivariant.as_ref().unwrap().label {
                EquivLabel::Faithful(f) => f.rep(),
                _ => unreachable!(),
            })
            .collect();
        reps.sort();
        assert_eq!(reps, vec![1, 1, 2]);
        assert!(l.equivariant().is_zero());

        // the new ray (1,1) has c = q - p = 1
        let m = MapSpec::Toric(toric(MoveWord(vec![Move::Up { cone: 0 }]), 5, 1, 2));
        assert_eq!(c_g(&m).unwrap(), EquivariantSum::term(faithful(5, 1)));
    }

    #[test]
    fn stabilized_rays_are_excluded() {
        // N = 4, (p, q) = (1, 3): ray (1,1) has c = 3 - 1 = 2, stabilizer of order 2
        let m = MapSpec::Toric(toric(MoveWord(vec![Move::Up { cone: 0 }]), 4, 1, 3));
        let l = ledger(&m).unwrap();
        assert_eq!(l.excluded().count(), 1);
        assert!(l.equivariant().is_zero());
        assert!(l.orbifold().is_zero());
        assert_eq!(l.classical().coefficient_sum(), 1);
    }

    #[test]
    fn orbifold_invariant() {
        let m = MapSpec::Toric(toric(MoveWord(vec![Move::Up { cone: 0 }]), 5, 1, 2));
        let football = OrbifoldCurveSignature::new(CoarseCurve::Genus(0), [5, 5]);
        assert_eq!(c_orb(&m).unwrap(), OrbifoldSum::term(football));
        assert!(c_orb(&MapSpec::Toric(toric(MoveWord::default(), 5, 1, 2))).unwrap().is_zero());
    }

    #[test]
    fn composition_and_mismatch() {
        let m1 = toric(MoveWord::cremona(), 5, 1, 2);
        let id = ToricMap::identity(m1.target(), m1.embedding);
        assert_eq!(compose(&m1, &id).unwrap().word, m1.word);

        let m2 = m1.inverse().unwrap();
        let c = compose(&m1, &m2).unwrap();
        assert_eq!(c.word.len(), 12);
        assert_eq!(c.target(), Fan2D::projective_plane());

        let err = compose(&m1, &m1).unwrap_err();
        assert!(matches!(err, Error::FanMismatch { .. }));
    }

    #[test]
    fn factorization_identity_on_cremona() {
        let m = toric(MoveWord::cremona(), 7, 2, 3);
        let (sigma, tau) = factorization(&m).unwrap();
        let lhs = c_g(&MapSpec::Toric(m)).unwrap();
        let rhs = c_g(&MapSpec::Toric(tau)).unwrap() - c_g(&MapSpec::Toric(sigma)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverse_negates() {
        let m = toric(MoveWord::cremona(), 7, 1, 3);
        let a = Invariants::of(&MapSpec::Toric(m.clone())).unwrap();
        let b = Invariants::of(&MapSpec::Toric(m.inverse().unwrap())).unwrap();
        assert_eq!(a.negate(), b);
    }
}
