//! Randomized property harnesses. Each trial draws from its own seed, so a failure is
//! reproduced by rerunning that seed alone.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::Serialize;

use crate::class::class_of;
use crate::error::{Error, Result};
use crate::ledger::{compose, exceptional_sets, factorization, Invariants, MapSpec, ToricMap};
use crate::matrix::Matrix;
use crate::oracle::naive_reduction;
use crate::presentation::build_presentation;
use crate::random::{
    random_composable_pair, random_embedding, random_fan, random_map, rng, trial_seed, TrialRng, WordBounds,
    ORDER_POOL,
};
use crate::smith::smith_normal_form_dense;
use crate::symbol::project_nontrivial;
use crate::{Int, QuotientPresentation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerifyKind {
    Composition,
    BlowupInvariance,
    LemmaStep1,
    SnfOracle,
    Bookkeeping,
}

impl VerifyKind {
    pub const ALL: [VerifyKind; 5] = [
        VerifyKind::Composition,
        VerifyKind::BlowupInvariance,
        VerifyKind::LemmaStep1,
        VerifyKind::SnfOracle,
        VerifyKind::Bookkeeping,
    ];

    pub fn name(self) -> &'static str {
        match self {
            VerifyKind::Composition => "composition",
            VerifyKind::BlowupInvariance => "blowup-invariance",
            VerifyKind::LemmaStep1 => "lemma-step1",
            VerifyKind::SnfOracle => "snf-oracle",
            VerifyKind::Bookkeeping => "bookkeeping",
        }
    }
}

impl fmt::Display for VerifyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for VerifyKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown verify kind {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrialFailure {
    pub trial: usize,
    pub seed: u64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub kind: VerifyKind,
    pub seed: u64,
    pub trials: usize,
    pub passed: usize,
    pub failures: Vec<TrialFailure>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}/{} pass (seed {})", self.kind, self.passed, self.trials, self.seed)?;
        for fail in &self.failures {
            write!(f, "\n  trial {} (seed {}): {}", fail.trial, fail.seed, fail.detail)?;
        }
        Ok(())
    }
}

type Outcome = std::result::Result<(), String>;

fn describe(m: &ToricMap) -> String {
    format!("{} on {} with {}", m.word, m.source, m.embedding)
}

fn check(cond: bool, detail: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(detail())
    }
}

fn invariants(m: &ToricMap) -> std::result::Result<Invariants, String> {
    Invariants::of(&MapSpec::Toric(m.clone())).map_err(|e| format!("{}: {e}", describe(m)))
}

/// `C_G`, `C_orb` and `c` are additive on a random composable pair.
pub fn trial_composition(r: &mut TrialRng) -> Outcome {
    let (m1, m2) = random_composable_pair(r, &ORDER_POOL, WordBounds::default());
    let m = compose(&m1, &m2).map_err(|e| e.to_string())?;
    let lhs = invariants(&m)?;
    let rhs = invariants(&m1)?.sum(&invariants(&m2)?);
    check(lhs == rhs, || {
        format!(
            "first {}, then {}: C_G {} vs {}, C_orb {} vs {}, c {} vs {}",
            describe(&m1),
            m2.word,
            lhs.equivariant,
            rhs.equivariant,
            lhs.orbifold,
            rhs.orbifold,
            lhs.classical,
            rhs.classical
        )
    })
}

/// Caches presentations by group order.
#[derive(Default)]
pub struct PresentationCache {
    by_order: BTreeMap<u64, QuotientPresentation>,
}

impl PresentationCache {
    pub fn get(&mut self, n: u64) -> Result<&QuotientPresentation> {
        if !self.by_order.contains_key(&n) {
            self.by_order.insert(n, build_presentation::<Int>(n)?);
        }
        Ok(&self.by_order[&n])
    }
}

/// The nontrivial part of `class(Bl X) - class(X)` vanishes in the quotient.
pub fn trial_blowup_invariance(r: &mut TrialRng, cache: &mut PresentationCache) -> Outcome {
    let e = random_embedding(r, &ORDER_POOL);
    let x = random_fan(r, 3);
    let cone = r.gen_range(0..x.len());
    let y = x.blow_up(cone).map_err(|err| err.to_string())?;
    let diff = class_of(&y, &e).map_err(|err| err.to_string())? - class_of(&x, &e).map_err(|err| err.to_string())?;
    let diff = project_nontrivial(&diff);
    let red = cache
        .get(e.order())
        .and_then(|p| p.reduce(&diff))
        .map_err(|err| err.to_string())?;
    check(red.is_zero, || {
        format!("blow-up of cone {cone} of {x} with {e}: difference {diff} is nonzero in the quotient")
    })
}

/// The four exceptional-set identities and `C_G(φ) = -C_G(σ) + C_G(τ)`.
pub fn trial_lemma_step1(r: &mut TrialRng) -> Outcome {
    let m = random_map(r, &ORDER_POOL, WordBounds::default());
    let sets = exceptional_sets(&m).map_err(|e| e.to_string())?;
    let lemma = sets.check();
    check(lemma.all(), || format!("{}: {lemma:?}", describe(&m)))?;
    let (sigma, tau) = factorization(&m).map_err(|e| e.to_string())?;
    let direct = invariants(&m)?;
    let via = invariants(&sigma)?.negate().sum(&invariants(&tau)?);
    check(direct == via, || {
        format!(
            "{}: C_G {} but -C_G(σ) + C_G(τ) = {}",
            describe(&m),
            direct.equivariant,
            via.equivariant
        )
    })
}

/// Smith form against the naive reduction on a small random integer matrix.
pub fn trial_snf_oracle(r: &mut TrialRng) -> Outcome {
    let rows = r.gen_range(1..=6);
    let cols = r.gen_range(1..=6);
    let density = r.gen_range(0.2..=1.0);
    let data: Vec<Vec<Int>> = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| if r.gen_bool(density) { Int::from(r.gen_range(-12i64..=12)) } else { Int::from(0) })
                .collect()
        })
        .collect();
    let a = Matrix::from_rows(data);
    let snf = smith_normal_form_dense(&a);
    let naive = naive_reduction(&a);
    check(snf.u().mul(&a).mul(&snf.v()) == snf.d(), || format!("U·A·V ≠ D for {a:?}"))?;
    check(
        snf.invariant_factors() == naive.invariant_factors() && snf.free_rank() == naive.free_rank(),
        || {
            format!(
                "{a:?}: Smith {:?} + Z^{}, naive {:?} + Z^{}",
                snf.invariant_factors(),
                snf.free_rank(),
                naive.invariant_factors(),
                naive.free_rank()
            )
        },
    )
}

/// The coefficient sum of `c(φ)` is the change in the number of rays.
pub fn trial_bookkeeping(r: &mut TrialRng) -> Outcome {
    let m = random_map(r, &ORDER_POOL, WordBounds::default());
    let inv = invariants(&m)?;
    let expected = m.target().len() as i64 - m.source.len() as i64;
    check(inv.classical.coefficient_sum() == expected, || {
        format!("{}: c = {} but rays change by {expected}", describe(&m), inv.classical)
    })
}

/// Presentation Smith form against the naive reduction of the dense relation matrix.
pub fn presentation_matches_oracle(n: u64) -> Result<bool> {
    let p = build_presentation::<Int>(n)?;
    let naive = naive_reduction(&p.matrix().to_dense());
    Ok(p.invariant_factors() == naive.invariant_factors() && p.free_rank() == naive.free_rank())
}

pub fn run(kind: VerifyKind, trials: usize, seed: u64) -> VerifyReport {
    let mut cache = PresentationCache::default();
    let mut failures = Vec::new();
    for trial in 0..trials {
        let s = trial_seed(seed, trial);
        let mut r = rng(s);
        let outcome = match kind {
            VerifyKind::Composition => trial_composition(&mut r),
            VerifyKind::BlowupInvariance => trial_blowup_invariance(&mut r, &mut cache),
            VerifyKind::LemmaStep1 => trial_lemma_step1(&mut r),
            VerifyKind::SnfOracle => trial_snf_oracle(&mut r),
            VerifyKind::Bookkeeping => trial_bookkeeping(&mut r),
        };
        if let Err(detail) = outcome {
            failures.push(TrialFailure { trial, seed: s, detail });
        }
    }
    VerifyReport {
        kind,
        seed,
        trials,
        passed: trials - failures.len(),
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kinds_round_trip() {
        for k in VerifyKind::ALL {
            assert_eq!(k.name().parse::<VerifyKind>().unwrap(), k);
        }
        assert!("nope".parse::<VerifyKind>().is_err());
    }

    #[test]
    fn short_runs_pass() {
        for k in VerifyKind::ALL {
            let r = run(k, 10, 99);
            assert!(r.all_passed(), "{r}");
        }
    }

    #[test]
    fn runs_are_deterministic() {
        let a = serde_json::to_string(&run(VerifyKind::Composition, 5, 4)).unwrap();
        let b = serde_json::to_string(&run(VerifyKind::Composition, 5, 4)).unwrap();
        assert_eq!(a, b);
    }
}
