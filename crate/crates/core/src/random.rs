//! Seeded random instances: fans, faithful embeddings and legal move words.
//!
//! Words are drawn move by move from the moves legal on the current fan, so every
//! generated word replays.

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ledger::ToricMap;
use crate::toric::{Embedding, Fan2D, Move, MoveWord};

pub type TrialRng = ChaCha8Rng;

/// Group orders the harnesses draw from.
pub const ORDER_POOL: [u64; 7] = [2, 3, 4, 5, 6, 8, 12];

pub fn rng(seed: u64) -> TrialRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Seed of trial `index` of a run seeded with `seed`; trials are independent of each other.
pub fn trial_seed(seed: u64, index: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(index as u64)
        .rotate_left(17)
        ^ 0xD1B5_4A32_D192_ED03
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WordBounds {
    pub max_len: usize,
    pub max_rays: usize,
}

impl Default for WordBounds {
    fn default() -> Self {
        Self { max_len: 8, max_rays: 10 }
    }
}

pub fn random_embedding(rng: &mut TrialRng, pool: &[u64]) -> Embedding {
    let n = *pool.choose(rng).expect("nonempty pool");
    loop {
        let p = rng.gen_range(0..n);
        let q = rng.gen_range(0..n);
        if p.gcd(&q).gcd(&n) == 1 {
            return Embedding::new(n, p as i64, q as i64).expect("checked faithful");
        }
    }
}

/// `P²` or a Hirzebruch surface, followed by a few random blow-ups.
pub fn random_fan(rng: &mut TrialRng, max_blowups: usize) -> Fan2D {
    let mut f = match rng.gen_range(0..4) {
        0 => Fan2D::projective_plane(),
        k => Fan2D::hirzebruch(k as i64 - 1),
    };
    for _ in 0..rng.gen_range(0..=max_blowups) {
        let i = rng.gen_range(0..f.len());
        f = f.blow_up(i).expect("cone index in range");
    }
    f
}

pub fn legal_moves(f: &Fan2D, max_rays: usize) -> Vec<Move> {
    let mut moves = Vec::new();
    if f.len() < max_rays {
        moves.extend((0..f.len()).map(|cone| Move::Up { cone }));
    }
    moves.extend(f.contractible_rays().into_iter().map(|ray| Move::Down { ray }));
    moves
}

/// A word of up to `bounds.max_len` moves, each legal on the fan it is applied to.
/// Blow-downs are chosen half of the time when available, so words stay mixed.
pub fn random_word(rng: &mut TrialRng, f: &Fan2D, bounds: WordBounds) -> (MoveWord, Fan2D) {
    let len = rng.gen_range(0..=bounds.max_len);
    let mut cur = f.clone();
    let mut moves = Vec::with_capacity(len);
    for _ in 0..len {
        let legal = legal_moves(&cur, bounds.max_rays);
        let (downs, ups): (Vec<Move>, Vec<Move>) = legal.into_iter().partition(|m| matches!(m, Move::Down { .. }));
        let pick = if !downs.is_empty() && (ups.is_empty() || rng.gen_bool(0.5)) {
            downs.choose(rng)
        } else {
            ups.choose(rng)
        };
        let Some(m) = pick.copied() else { break };
        cur = crate::toric::apply_move(&cur, &m).expect("move drawn from the legal set");
        moves.push(m);
    }
    (MoveWord(moves), cur)
}

pub fn random_map(rng: &mut TrialRng, pool: &[u64], bounds: WordBounds) -> ToricMap {
    let e = random_embedding(rng, pool);
    let x = random_fan(rng, 2);
    let (w, _) = random_word(rng, &x, bounds);
    ToricMap::new(x, w, e).expect("generated words replay")
}

/// Two maps with the second starting where the first ends.
pub fn random_composable_pair(rng: &mut TrialRng, pool: &[u64], bounds: WordBounds) -> (ToricMap, ToricMap) {
    let m1 = random_map(rng, pool, bounds);
    let (w2, _) = random_word(rng, &m1.target(), bounds);
    let m2 = ToricMap::new(m1.target(), w2, m1.embedding).expect("generated words replay");
    (m1, m2)
}
