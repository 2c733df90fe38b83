//! Smooth complete two-dimensional fans, equivariant blow-ups and blow-downs, and the
//! action of a cyclic group `C_N` embedded in the torus as a torsion point.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::chars::{modulo, Char, FaithfulCharLabel};
use crate::error::{Error, Result};
use crate::scalar::extended_gcd;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Ray {
    pub x: i64,
    pub y: i64,
}

impl Ray {
    pub const fn new(x: i64, y: i64) -> Self {
        Self { x, y }
    }

    pub fn det(&self, other: &Ray) -> i64 {
        self.x * other.y - self.y * other.x
    }

    pub fn is_primitive(&self) -> bool {
        self.x.gcd(&self.y) == 1
    }

    pub fn add(&self, other: &Ray) -> Ray {
        Ray::new(self.x + other.x, self.y + other.y)
    }

    pub fn neg(&self) -> Ray {
        Ray::new(-self.x, -self.y)
    }

    /// The primitive vector on the same ray; `None` for the zero vector.
    pub fn primitive(&self) -> Option<Ray> {
        let g = self.x.gcd(&self.y);
        (g != 0).then(|| Ray::new(self.x / g, self.y / g))
    }

    fn half(&self) -> u8 {
        if self.y > 0 || (self.y == 0 && self.x > 0) {
            0
        } else {
            1
        }
    }

    /// Exact comparison of polar angles in `[0, 2π)`.
    pub fn angle_cmp(&self, other: &Ray) -> Ordering {
        self.half()
            .cmp(&other.half())
            .then_with(|| 0.cmp(&self.det(other)))
    }
}

impl fmt::Display for Ray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// A smooth complete fan in `Z²`: primitive rays in counter-clockwise order with
/// `det(v_i, v_{i+1}) = 1` for every cyclically consecutive pair.
///
/// The ray list is kept rotated so that it starts at the ray of least polar angle, so
/// structural equality is equality of fans.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Fan2D {
    rays: Vec<Ray>,
}

pub fn validate_fan(rays: &[Ray]) -> bool {
    check_fan(rays).is_ok()
}

fn check_fan(rays: &[Ray]) -> Result<()> {
    if rays.len() < 3 {
        return Err(Error::InvalidFan(format!("{} rays, need at least 3", rays.len())));
    }
    if let Some(r) = rays.iter().find(|r| !r.is_primitive()) {
        return Err(Error::InvalidFan(format!("ray {r} is not primitive")));
    }
    let n = rays.len();
    for i in 0..n {
        let (v, w) = (rays[i], rays[(i + 1) % n]);
        if v.det(&w) != 1 {
            return Err(Error::InvalidFan(format!("det({v}, {w}) = {} != 1", v.det(&w))));
        }
    }
    // consecutive turns are all in (0, π); the sequence must go around exactly once
    let start = (0..n).min_by(|&i, &j| rays[i].angle_cmp(&rays[j])).unwrap();
    for k in 0..n - 1 {
        let (v, w) = (rays[(start + k) % n], rays[(start + k + 1) % n]);
        if v.angle_cmp(&w) != Ordering::Less {
            return Err(Error::InvalidFan("rays wind around the origin more than once".into()));
        }
    }
    Ok(())
}

impl Fan2D {
    pub fn new(rays: Vec<Ray>) -> Result<Self> {
        check_fan(&rays)?;
        Ok(Self::canonical(rays))
    }

    fn canonical(mut rays: Vec<Ray>) -> Self {
        let start = (0..rays.len()).min_by(|&i, &j| rays[i].angle_cmp(&rays[j])).unwrap_or(0);
        rays.rotate_left(start);
        Self { rays }
    }

    pub fn projective_plane() -> Self {
        Self::canonical(vec![Ray::new(1, 0), Ray::new(0, 1), Ray::new(-1, -1)])
    }

    /// The Hirzebruch surface `F_a`.
    pub fn hirzebruch(a: i64) -> Self {
        Self::new(vec![Ray::new(1, 0), Ray::new(0, 1), Ray::new(-1, a), Ray::new(0, -1)])
            .expect("Hirzebruch fans are smooth")
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn ray_set(&self) -> BTreeSet<Ray> {
        self.rays.iter().copied().collect()
    }

    pub fn contains(&self, r: &Ray) -> bool {
        self.rays.contains(r)
    }

    pub fn position(&self, r: &Ray) -> Option<usize> {
        self.rays.iter().position(|x| x == r)
    }

    /// Cone `i` is spanned by rays `i` and `i + 1` (cyclically).
    pub fn cone(&self, i: usize) -> (Ray, Ray) {
        let n = self.rays.len();
        (self.rays[i % n], self.rays[(i + 1) % n])
    }

    fn neighbours(&self, i: usize) -> (Ray, Ray) {
        let n = self.rays.len();
        (self.rays[(i + n - 1) % n], self.rays[(i + 1) % n])
    }

    /// Star subdivision of cone `i`: blow-up of the corresponding torus-fixed point.
    pub fn blow_up(&self, i: usize) -> Result<Fan2D> {
        let n = self.rays.len();
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, len: n });
        }
        let (v, w) = self.cone(i);
        let mut rays = self.rays.clone();
        rays.insert(i + 1, v.add(&w));
        let out = Self::canonical(rays);
        debug_assert!(validate_fan(&out.rays));
        Ok(out)
    }

    /// Contracts ray `i`, which must be a (-1)-curve: `v_{i-1} + v_{i+1} = v_i`.
    pub fn blow_down(&self, i: usize) -> Result<Fan2D> {
        let n = self.rays.len();
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, len: n });
        }
        let (prev, next) = self.neighbours(i);
        let ray = self.rays[i];
        if n <= 3 || prev.add(&next) != ray {
            return Err(Error::NotContractible { prev, ray, next });
        }
        let mut rays = self.rays.clone();
        rays.remove(i);
        let out = Self::canonical(rays);
        debug_assert!(validate_fan(&out.rays));
        Ok(out)
    }

    pub fn blow_down_ray(&self, r: &Ray) -> Result<Fan2D> {
        let i = self.position(r).ok_or(Error::RayNotFound(*r))?;
        self.blow_down(i)
    }

    pub fn is_contractible(&self, i: usize) -> bool {
        let (prev, next) = self.neighbours(i);
        self.rays.len() > 3 && prev.add(&next) == self.rays[i]
    }

    pub fn contractible_rays(&self) -> Vec<Ray> {
        (0..self.rays.len())
            .filter(|&i| self.is_contractible(i))
            .map(|i| self.rays[i])
            .collect()
    }

    /// Self-intersection numbers of the boundary curves: `v_{i-1} + v_{i+1} = -k_i v_i`.
    pub fn self_intersections(&self) -> Vec<i64> {
        (0..self.rays.len())
            .map(|i| {
                let (prev, next) = self.neighbours(i);
                let s = prev.add(&next);
                let v = self.rays[i];
                // s is a multiple of v since det(prev, v) = det(v, next) = 1
                if v.x != 0 {
                    -s.x / v.x
                } else {
                    -s.y / v.y
                }
            })
            .collect()
    }
}

impl fmt::Display for Fan2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.rays.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// `C_N` acting on the torus by translation by the order-`N` point `(ζ^p, ζ^q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Embedding {
    n: u64,
    p: u64,
    q: u64,
}

impl Embedding {
    pub fn new(n: u64, p: i64, q: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidOrder(n));
        }
        let (p, q) = (modulo(p, n), modulo(q, n));
        if p.gcd(&q).gcd(&n) != 1 {
            return Err(Error::NonFaithful { n, p, q });
        }
        Ok(Self { n, p, q })
    }

    pub fn order(&self) -> u64 {
        self.n
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Value of the character `χ^m` on the generator.
    pub fn pair(&self, m: (i64, i64)) -> Char {
        let v = m.0 as i128 * self.p as i128 + m.1 as i128 * self.q as i128;
        Char::new(self.n, (v.rem_euclid(self.n as i128)) as i64)
    }
}

impl fmt::Display for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{}->({},{})", self.n, self.p, self.q)
    }
}

/// Action data along the boundary divisor of a ray.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RayData {
    pub ray: Ray,
    /// Character by which `G` acts on the divisor's own torus, `det(v, (p, q))`.
    pub c_rho: Char,
    pub stab_order: u64,
    /// Character of the stabilizer on the normal line.
    pub normal_char: Char,
    pub residual_action: FaithfulCharLabel,
}

pub fn ray_data(v: &Ray, e: &Embedding) -> RayData {
    assert!(v.is_primitive(), "ray {v} is not primitive");
    let n = e.order();
    let c_rho = Char::new(n, modulo(v.x * e.q as i64 - v.y * e.p as i64, n) as i64);
    let g = c_rho.kernel_order();
    // covector m0 with m0·v = 1
    let (_, s, t) = extended_gcd(&v.x, &v.y);
    let normal_char = e.pair((s, t)).restrict(g).expect("g divides N");
    assert!(
        g == 1 || !normal_char.is_trivial(),
        "stabilizer of {v} acts trivially on the normal line; embedding {e} is not faithful"
    );
    RayData {
        ray: *v,
        c_rho,
        stab_order: g,
        normal_char,
        residual_action: c_rho.induced_faithful(),
    }
}

/// Characters of `G` on the two coordinate lines at the fixed point of cone `i`.
pub fn cone_weights(f: &Fan2D, i: usize, e: &Embedding) -> (Char, Char) {
    let (v, w) = f.cone(i);
    let m_v = (w.y, -w.x);
    let m_w = (-v.y, v.x);
    (e.pair(m_v), e.pair(m_w))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Both,
    SourceOnly,
    TargetOnly,
    Neither,
}

/// A fan refining both inputs, each ray tagged by which input it came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Resolution {
    pub fan: Fan2D,
    pub tags: Vec<Provenance>,
}

impl Resolution {
    pub fn rays_tagged(&self, pred: impl Fn(Provenance) -> bool) -> BTreeSet<Ray> {
        self.fan
            .rays()
            .iter()
            .zip(&self.tags)
            .filter(|(_, t)| pred(**t))
            .map(|(r, _)| *r)
            .collect()
    }
}

const RESOLUTION_STEP_LIMIT: usize = 100_000;

pub fn common_resolution(fx: &Fan2D, fy: &Fan2D) -> Resolution {
    let mut rays: Vec<Ray> = fx.ray_set().union(&fy.ray_set()).copied().collect();
    rays.sort_by(|a, b| a.angle_cmp(b));
    let mut steps = 0;
    let mut i = 0;
    while i < rays.len() {
        let n = rays.len();
        let (v, w) = (rays[i], rays[(i + 1) % n]);
        let d = v.det(&w);
        assert!(d >= 1, "union of complete fans has a cone of angle >= π between {v} and {w}");
        if d > 1 {
            let u = v.add(&w).primitive().expect("v + w != 0 inside a strictly convex cone");
            rays.insert(i + 1, u);
            steps += 1;
            assert!(steps < RESOLUTION_STEP_LIMIT, "common resolution is not making progress");
        } else {
            i += 1;
        }
    }
    let fan = Fan2D::new(rays).expect("primitive-sum insertion yields a smooth fan");
    let tags = fan
        .rays()
        .iter()
        .map(|r| match (fx.contains(r), fy.contains(r)) {
            (true, true) => Provenance::Both,
            (true, false) => Provenance::SourceOnly,
            (false, true) => Provenance::TargetOnly,
            (false, false) => Provenance::Neither,
        })
        .collect();
    Resolution { fan, tags }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "move", rename_all = "lowercase")]
pub enum Move {
    /// Subdivide cone `i` of the current fan.
    Up { cone: usize },
    /// Contract the ray with these coordinates.
    Down { ray: Ray },
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Up { cone } => write!(f, "up {cone}"),
            Move::Down { ray } => write!(f, "down {} {}", ray.x, ray.y),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
pub struct MoveWord(pub Vec<Move>);

impl MoveWord {
    pub fn new(moves: Vec<Move>) -> Self {
        Self(moves)
    }

    pub fn moves(&self) -> &[Move] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &MoveWord) -> MoveWord {
        MoveWord(self.0.iter().chain(other.0.iter()).copied().collect())
    }

    /// Blow up all three fixed points of the projective plane, then contract the proper
    /// transforms of the coordinate lines.
    pub fn cremona() -> MoveWord {
        MoveWord(vec![
            Move::Up { cone: 2 },
            Move::Up { cone: 1 },
            Move::Up { cone: 0 },
            Move::Down { ray: Ray::new(1, 0) },
            Move::Down { ray: Ray::new(0, 1) },
            Move::Down { ray: Ray::new(-1, -1) },
        ])
    }
}

impl fmt::Display for MoveWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

pub fn apply_move(f: &Fan2D, m: &Move) -> Result<Fan2D> {
    match m {
        Move::Up { cone } => f.blow_up(*cone),
        Move::Down { ray } => f.blow_down_ray(ray),
    }
}

/// Every intermediate fan of a replayed word; `fans[0]` is the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub fans: Vec<Fan2D>,
}

impl Trace {
    pub fn last(&self) -> &Fan2D {
        self.fans.last().expect("a trace holds at least the input fan")
    }
}

pub fn replay_trace(f: &Fan2D, w: &MoveWord) -> Result<Trace> {
    let mut fans = vec![f.clone()];
    for (step, m) in w.moves().iter().enumerate() {
        let next = apply_move(fans.last().unwrap(), m).map_err(|e| Error::Replay {
            step,
            source: Box::new(e),
        })?;
        fans.push(next);
    }
    Ok(Trace { fans })
}

pub fn replay(f: &Fan2D, w: &MoveWord) -> Result<Fan2D> {
    Ok(replay_trace(f, w)?.last().clone())
}

/// The word undoing `w`, read from the fan `w` ends on.
pub fn invert_word(f: &Fan2D, w: &MoveWord) -> Result<MoveWord> {
    let trace = replay_trace(f, w)?;
    let mut out = Vec::with_capacity(w.len());
    for (k, m) in w.moves().iter().enumerate().rev() {
        let before = &trace.fans[k];
        let after = &trace.fans[k + 1];
        out.push(match m {
            Move::Up { .. } => {
                let new_ray = after
                    .rays()
                    .iter()
                    .find(|r| !before.contains(r))
                    .copied()
                    .expect("a blow-up adds a ray");
                Move::Down { ray: new_ray }
            }
            Move::Down { ray } => {
                let (prev, _) = before.neighbours(before.position(ray).unwrap());
                let cone = after.position(&prev).expect("neighbour survives the contraction");
                Move::Up { cone }
            }
        });
    }
    Ok(MoveWord(out))
}

/// Contracts every ray of `from` not in `to`, smallest index first.
///
/// Succeeds whenever `from` refines `to`, which is the case for a common resolution.
pub fn blowdown_word(from: &Fan2D, to: &Fan2D) -> Result<MoveWord> {
    let mut cur = from.clone();
    let mut moves = Vec::new();
    while cur.len() > to.len() {
        let ray = cur
            .contractible_rays()
            .into_iter()
            .find(|r| !to.contains(r))
            .ok_or_else(|| Error::Precondition(format!("{cur} has no contractible ray outside {to}")))?;
        cur = cur.blow_down_ray(&ray)?;
        moves.push(Move::Down { ray });
    }
    if &cur != to {
        return Err(Error::Precondition(format!("{from} does not refine {to}")));
    }
    Ok(MoveWord(moves))
}

fn parse_ints(line: &str, lineno: usize) -> Result<Vec<i64>> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<i64>().map_err(|_| Error::Parse {
                line: lineno,
                msg: format!("expected an integer, found {t:?}"),
            })
        })
        .collect()
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

/// One ray per line as two integers, counter-clockwise; `#` starts a comment.
pub fn parse_fan(text: &str) -> Result<Fan2D> {
    let mut rays = Vec::new();
    let mut last_line = 0;
    for (lineno, line) in content_lines(text) {
        let v = parse_ints(line, lineno)?;
        if v.len() != 2 {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("expected two integers, found {}", v.len()),
            });
        }
        let r = Ray::new(v[0], v[1]);
        if !r.is_primitive() {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("ray {r} is not primitive"),
            });
        }
        if let Some(prev) = rays.last() {
            let prev: &Ray = prev;
            if prev.det(&r) != 1 {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("det({prev}, {r}) = {} != 1", prev.det(&r)),
                });
            }
        }
        rays.push(r);
        last_line = lineno;
    }
    Fan2D::new(rays).map_err(|e| Error::Parse {
        line: last_line,
        msg: e.to_string(),
    })
}

pub fn format_fan(f: &Fan2D) -> String {
    f.rays().iter().map(|r| format!("{} {}\n", r.x, r.y)).collect()
}

/// Lines `up i` or `down x y`; `#` starts a comment.
pub fn parse_word(text: &str) -> Result<MoveWord> {
    let mut moves = Vec::new();
    for (lineno, line) in content_lines(text) {
        let mut parts = line.splitn(2, char::is_whitespace);
        let op = parts.next().unwrap_or("");
        let args = parse_ints(parts.next().unwrap_or(""), lineno)?;
        let m = match (op, args.as_slice()) {
            ("up", [i]) if *i >= 0 => Move::Up { cone: *i as usize },
            ("down", [x, y]) => Move::Down { ray: Ray::new(*x, *y) },
            _ => {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("expected `up i` or `down x y`, found {line:?}"),
                })
            }
        };
        moves.push(m);
    }
    Ok(MoveWord(moves))
}

pub fn format_word(w: &MoveWord) -> String {
    w.moves().iter().map(|m| format!("{m}\n")).collect()
}
