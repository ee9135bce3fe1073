//! Cyclic patterns, over-rotation pairs and the Sharkovsky ordering.
//!
//! A pattern of period `q` is stored by its spatial images: the orbit points
//! are labelled `x_1 < x_2 < ... < x_q` and `images[i - 1]` is the label of
//! `f(x_i)`. All public indices are 1-based, matching the text format.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::plmap::PLMap;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PatternError {
    #[error("not a permutation of 1..{q}: {detail}")]
    NotAPermutation { q: usize, detail: String },
    #[error("permutation is not a single cycle (orbit of 1 has length {orbit_len}, period {q})")]
    NotCyclic { q: usize, orbit_len: usize },
    #[error("period {0} is too small, a pattern needs at least 2 points")]
    PeriodTooSmall(usize),
    #[error("cannot parse permutation: {0}")]
    Parse(String),
}

/// A cyclic permutation of `{1..q}`, `q >= 2`, read as the spatial
/// combinatorics of one periodic orbit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    images: Vec<usize>,
}

impl Pattern {
    pub fn new(images: Vec<usize>) -> Result<Self, PatternError> {
        let q = images.len();
        if q < 2 {
            return Err(PatternError::PeriodTooSmall(q));
        }
        let mut seen = vec![false; q];
        for &v in &images {
            if v == 0 || v > q {
                return Err(PatternError::NotAPermutation {
                    q,
                    detail: format!("entry {v} out of range"),
                });
            }
            if std::mem::replace(&mut seen[v - 1], true) {
                return Err(PatternError::NotAPermutation {
                    q,
                    detail: format!("entry {v} repeated"),
                });
            }
        }
        let mut orbit_len = 1;
        let mut i = images[0];
        while i != 1 {
            i = images[i - 1];
            orbit_len += 1;
        }
        if orbit_len != q {
            return Err(PatternError::NotCyclic { q, orbit_len });
        }
        Ok(Pattern { images })
    }

    /// Parses whitespace- or comma-separated 1-indexed images, e.g.
    /// `"4 5 6 11"` or `"[4,5,6,11]"`.
    pub fn parse(text: &str) -> Result<Self, PatternError> {
        let images = text
            .trim()
            .trim_start_matches('[')
            .trim_end_matches(']')
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| PatternError::Parse(format!("bad entry {t:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if images.is_empty() {
            return Err(PatternError::Parse("empty permutation".into()));
        }
        Pattern::new(images)
    }

    pub fn period(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Spatial label of `f(x_i)`, 1-based.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    /// Labels visited starting from `x_start`, in temporal order.
    pub fn orbit_from(&self, start: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.period());
        let mut i = start;
        for _ in 0..self.period() {
            out.push(i);
            i = self.image(i);
        }
        out
    }

    /// Pattern of a finite set of distinct points `points[t]` whose dynamics is
    /// `points[t] -> points[(t + 1) % n]`.
    pub fn from_orbit(points: &[Rational]) -> Result<Self, PatternError> {
        let n = points.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| points[a].cmp(&points[b]));
        let mut rank = vec![0usize; n];
        for (r, &t) in order.iter().enumerate() {
            rank[t] = r + 1;
        }
        let mut images = vec![0usize; n];
        for t in 0..n {
            images[rank[t] - 1] = rank[(t + 1) % n];
        }
        Pattern::new(images)
    }

    pub fn over_rotation_pair(&self) -> RotPair {
        let q = self.period();
        let sign = |from: usize, to: usize| to.cmp(&from);
        let switches = (1..=q)
            .filter(|&i| {
                let j = self.image(i);
                sign(i, j) != sign(j, self.image(j))
            })
            .count();
        assert!(
            switches % 2 == 0,
            "odd displacement switch count {switches} for pattern {self}"
        );
        RotPair::new(switches as u64 / 2, q as u64)
            .expect("switch count of a cyclic pattern lies in (0, q]")
    }

    /// Lap count of the P-linear map minus one.
    pub fn modality(&self) -> usize {
        self.images
            .windows(3)
            .filter(|w| (w[1] > w[0]) != (w[2] > w[1]))
            .count()
    }

    pub fn p_linear_map(&self) -> PLMap {
        PLMap::new(self)
    }

    /// True iff the P-linear map has exactly one fixed point `a`, with
    /// `f(x) > x` to its left and `f(x) < x` to its right.
    pub fn is_convergent(&self) -> bool {
        self.p_linear_map().is_convergent()
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.images.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for Pattern {
    type Err = PatternError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Pattern::parse(s)
    }
}

impl Serialize for Pattern {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Pattern {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        Pattern::parse(&text).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("({p}, {q}) is not an over-rotation pair: need 0 < p/q <= 1/2")]
pub struct RotPairError {
    pub p: u64,
    pub q: u64,
}

/// Raw over-rotation pair `(p, q)`; not reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RotPair {
    pub p: u64,
    pub q: u64,
}

impl RotPair {
    pub fn new(p: u64, q: u64) -> Result<Self, RotPairError> {
        if p == 0 || q == 0 || 2 * p > q {
            return Err(RotPairError { p, q });
        }
        Ok(RotPair { p, q })
    }

    /// The over-rotation number `p/q`.
    pub fn number(&self) -> Rational {
        Rational::new(self.p as i128, self.q as i128)
    }

    pub fn is_coprime(&self) -> bool {
        self.p.gcd(&self.q) == 1
    }

    /// Does a cycle with this pair force a cycle with pair `other`?
    ///
    /// Either the number strictly increases, or the reduced numbers agree
    /// and the multipliers are strictly Sharkovsky-ordered. Equal pairs force
    /// each other.
    pub fn forces(&self, other: &RotPair) -> bool {
        forces_pair(self, other)
    }
}

impl fmt::Display for RotPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.p, self.q)
    }
}

pub fn forces_pair(src: &RotPair, dst: &RotPair) -> bool {
    if src == dst {
        return true;
    }
    match src.number().cmp(&dst.number()) {
        Ordering::Less => true,
        Ordering::Greater => false,
        Ordering::Equal => {
            let k = *src.number().numer() as u64;
            sharkovsky_cmp(src.p / k, dst.p / k) == Ordering::Greater
        }
    }
}

/// Compares `m` and `n` in the Sharkovsky order; `Greater` means `m` comes
/// first (`3` is the maximum, `1` the minimum).
pub fn sharkovsky_cmp(m: u64, n: u64) -> Ordering {
    assert!(
        m >= 1 && n >= 1,
        "Sharkovsky order is defined on positive integers"
    );
    let split = |x: u64| {
        let a = x.trailing_zeros();
        (a, x >> a)
    };
    let (a, u) = split(m);
    let (b, v) = split(n);
    match (u > 1, v > 1) {
        // odd parts > 1: lower power of two first, then smaller odd part
        (true, true) => b.cmp(&a).then(v.cmp(&u)),
        (true, false) => Ordering::Greater,
        (false, true) => Ordering::Less,
        // pure powers of two: larger first
        (false, false) => a.cmp(&b),
    }
}

/// `m` comes before or equals `n` in the Sharkovsky order.
pub fn sharkovsky_ge(m: u64, n: u64) -> bool {
    sharkovsky_cmp(m, n) != Ordering::Less
}
