//! Green/black colouring, i-islands, the special set and the combinatorial
//! bounds that over-twist patterns must satisfy.

use std::fmt;

use serde::Serialize;

use crate::iet;
use crate::pattern::Pattern;
use crate::plmap::PLMap;
use crate::rational::{self, int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnalysisError {
    #[error("pattern is not convergent: the P-linear map has {fixed_points} fixed points")]
    NonConvergent { fixed_points: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Color {
    Green,
    Black,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum IColor {
    IGreen,
    IBlack,
}

/// Colour and image-colour of every orbit point, indexed spatially.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointColor {
    #[serde(with = "rational::serde_str")]
    pub fixed_point: Rational,
    pub colors: Vec<Color>,
    pub icolors: Vec<IColor>,
}

impl PointColor {
    pub fn color(&self, i: usize) -> Color {
        self.colors[i - 1]
    }

    pub fn icolor(&self, i: usize) -> IColor {
        self.icolors[i - 1]
    }

    pub fn side(&self, i: usize) -> Side {
        side_of(&int(i as i128), &self.fixed_point)
    }

    fn indices(&self, c: Color) -> Vec<usize> {
        (1..=self.colors.len())
            .filter(|&i| self.color(i) == c)
            .collect()
    }

    pub fn green(&self) -> Vec<usize> {
        self.indices(Color::Green)
    }

    pub fn black(&self) -> Vec<usize> {
        self.indices(Color::Black)
    }

    pub fn igreen(&self) -> Vec<usize> {
        (1..=self.icolors.len())
            .filter(|&i| self.icolor(i) == IColor::IGreen)
            .collect()
    }

    pub fn iblack(&self) -> Vec<usize> {
        (1..=self.icolors.len())
            .filter(|&i| self.icolor(i) == IColor::IBlack)
            .collect()
    }
}

fn side_of(x: &Rational, a: &Rational) -> Side {
    // a is never an orbit point, so the tie only matters for a itself
    if x <= a {
        Side::Left
    } else {
        Side::Right
    }
}

fn fixed_point(f: &PLMap) -> Result<Rational, AnalysisError> {
    match f.unique_fixed_point {
        Some(a) if f.is_convergent() => Ok(a),
        _ => Err(AnalysisError::NonConvergent {
            fixed_points: f.fixed_points.len(),
        }),
    }
}

pub fn classify_points(pattern: &Pattern) -> Result<PointColor, AnalysisError> {
    let a = fixed_point(&pattern.p_linear_map())?;
    let q = pattern.period();
    let side = |i: usize| side_of(&int(i as i128), &a);
    let colors: Vec<Color> = (1..=q)
        .map(|i| {
            if side(i) == side(pattern.image(i)) {
                Color::Green
            } else {
                Color::Black
            }
        })
        .collect();
    let mut icolors = vec![IColor::IBlack; q];
    for i in 1..=q {
        if colors[i - 1] == Color::Green {
            icolors[pattern.image(i) - 1] = IColor::IGreen;
        }
    }
    Ok(PointColor {
        fixed_point: a,
        colors,
        icolors,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GreenStatus {
    Green,
    NotGreen,
    NonConvergent,
}

/// Green iff `f` increases on the green points and decreases on the black
/// points, each set taken in spatial order across both sides of `a`.
pub fn green_status(pattern: &Pattern) -> GreenStatus {
    let Ok(colors) = classify_points(pattern) else {
        return GreenStatus::NonConvergent;
    };
    let images = |idx: Vec<usize>| {
        idx.into_iter()
            .map(|i| pattern.image(i))
            .collect::<Vec<_>>()
    };
    let increasing = images(colors.green()).windows(2).all(|w| w[0] < w[1]);
    let decreasing = images(colors.black()).windows(2).all(|w| w[0] > w[1]);
    if increasing && decreasing {
        GreenStatus::Green
    } else {
        GreenStatus::NotGreen
    }
}

pub fn is_green_pattern(pattern: &Pattern) -> bool {
    green_status(pattern) == GreenStatus::Green
}

/// Maximal run of spatially consecutive points sharing an image colour.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Island {
    pub icolor: IColor,
    pub start: usize,
    pub end: usize,
}

impl Island {
    pub fn contains(&self, i: usize) -> bool {
        (self.start..=self.end).contains(&i)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IslandDecomposition {
    pub left: Vec<Island>,
    pub right: Vec<Island>,
}

impl IslandDecomposition {
    pub fn on(&self, side: Side) -> &[Island] {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }

    pub fn island_of(&self, i: usize) -> Option<&Island> {
        self.left
            .iter()
            .chain(&self.right)
            .find(|is| is.contains(i))
    }
}

pub fn island_decomposition(pattern: &Pattern) -> Result<IslandDecomposition, AnalysisError> {
    let colors = classify_points(pattern)?;
    let mut out = IslandDecomposition {
        left: Vec::new(),
        right: Vec::new(),
    };
    for i in 1..=pattern.period() {
        let islands = match colors.side(i) {
            Side::Left => &mut out.left,
            Side::Right => &mut out.right,
        };
        let icolor = colors.icolor(i);
        match islands.last_mut() {
            Some(last) if last.icolor == icolor => last.end = i,
            _ => islands.push(Island {
                icolor,
                start: i,
                end: i,
            }),
        }
    }
    Ok(out)
}

/// Interval with exact endpoints and explicit open/closed flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
    pub lo_closed: bool,
    pub hi_closed: bool,
    pub side: Side,
}

impl Interval {
    pub fn contains(&self, x: &Rational) -> bool {
        let above = if self.lo_closed {
            *x >= self.lo
        } else {
            *x > self.lo
        };
        let below = if self.hi_closed {
            *x <= self.hi
        } else {
            *x < self.hi
        };
        above && below
    }

    pub fn contains_point(&self, i: usize) -> bool {
        self.contains(&int(i as i128))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_closed { '[' } else { '(' },
            rational::format(&self.lo),
            rational::format(&self.hi),
            if self.hi_closed { ']' } else { ')' },
        )
    }
}

impl Serialize for Interval {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The special set: for every `x`, the sibling of `x` closest to `a` on
/// the side of `x`. Stored as its components (concordant pieces), left to
/// right. The fixed point itself is assigned to the left side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecialSet {
    #[serde(with = "rational::serde_str")]
    pub fixed_point: Rational,
    pub pieces: Vec<Interval>,
}

impl SpecialSet {
    pub fn contains(&self, x: &Rational) -> bool {
        self.pieces.iter().any(|k| k.contains(x))
    }

    pub fn piece_of(&self, x: &Rational) -> Option<usize> {
        self.pieces.iter().position(|k| k.contains(x))
    }

    pub fn on(&self, side: Side) -> impl Iterator<Item = &Interval> {
        self.pieces.iter().filter(move |k| k.side == side)
    }
}

/// Computes the special set exactly.
///
/// A point `x` left of `a` is its own closest sibling iff `f(x)` is a strict
/// record (new maximum or new minimum) of `f` over `(x, a]`; symmetrically on
/// the right over `[a, x)`. Scanning outwards from `a` one affine branch at a
/// time, the records on a branch form one half-open interval ending where
/// the branch reaches the previous record value.
pub fn special_set(pattern: &Pattern) -> Result<SpecialSet, AnalysisError> {
    let f = pattern.p_linear_map();
    let a = fixed_point(&f)?;
    let q = pattern.period() as i128;
    let c = a.floor().to_integer();

    let mut left: Vec<Interval> = vec![Interval {
        lo: a,
        hi: a,
        lo_closed: true,
        hi_closed: true,
        side: Side::Left,
    }];
    let (mut max, mut min) = (a, a);
    for l in (1..=c).rev() {
        let l = int(l);
        let branch = f.branch(l.to_integer() as usize);
        let fl = branch.apply(&l);
        let bound = if fl > max {
            Some(std::mem::replace(&mut max, fl))
        } else if fl < min {
            Some(std::mem::replace(&mut min, fl))
        } else {
            None
        };
        if let Some(bound) = bound {
            let cut = (bound - branch.intercept) / branch.slope;
            let last = left.last_mut().expect("seeded with a");
            if cut == last.lo && last.lo_closed {
                last.lo = l;
            } else {
                left.push(Interval {
                    lo: l,
                    hi: cut,
                    lo_closed: true,
                    hi_closed: false,
                    side: Side::Left,
                });
            }
        }
    }

    let mut right: Vec<Interval> = Vec::new();
    let (mut max, mut min) = (a, a);
    for r in (c + 1)..=q {
        let r = int(r);
        let branch = f.branch(r.to_integer() as usize - 1);
        let fr = branch.apply(&r);
        let bound = if fr > max {
            Some(std::mem::replace(&mut max, fr))
        } else if fr < min {
            Some(std::mem::replace(&mut min, fr))
        } else {
            None
        };
        if let Some(bound) = bound {
            let cut = (bound - branch.intercept) / branch.slope;
            match right.last_mut() {
                Some(last) if cut == last.hi && last.hi_closed => last.hi = r,
                _ => right.push(Interval {
                    lo: cut,
                    hi: r,
                    lo_closed: false,
                    hi_closed: true,
                    side: Side::Right,
                }),
            }
        }
    }

    left.reverse();
    left.extend(right);
    Ok(SpecialSet {
        fixed_point: a,
        pieces: left,
    })
}

pub fn concordant_pieces(pattern: &Pattern) -> Result<Vec<Interval>, AnalysisError> {
    special_set(pattern).map(|s| s.pieces)
}

/// Whether every orbit point lies in the special set.
pub fn point_membership_in_special_set(pattern: &Pattern) -> Result<bool, AnalysisError> {
    let s = special_set(pattern)?;
    Ok((1..=pattern.period() as i128).all(|i| s.contains(&int(i))))
}

/// The counting bounds satisfied by over-twist patterns, evaluated for one
/// convergent pattern.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundChecks {
    pub modality: usize,
    pub concordant_pieces: usize,
    /// pieces <= m + 2
    pub pieces_within_m_plus_2: bool,
    /// pieces <= m + 4
    pub pieces_within_m_plus_4: bool,
    pub islands_left: usize,
    pub islands_right: usize,
    /// islands per side <= m + 1
    pub islands_within_m_plus_1: bool,
    /// islands per side <= m; informational only
    pub islands_within_m: bool,
    pub extremes_iblack: bool,
    /// Number of canonical blocks, when the pattern is green.
    pub canonical_blocks: Option<usize>,
    /// canonical blocks <= (m + 1)(m + 2)
    pub blocks_within_bound: Option<bool>,
}

impl BoundChecks {
    /// All asserted bounds hold (the informational `<= m` island count is
    /// not part of the verdict).
    pub fn all_hold(&self) -> bool {
        self.pieces_within_m_plus_2
            && self.pieces_within_m_plus_4
            && self.islands_within_m_plus_1
            && self.extremes_iblack
            && self.blocks_within_bound.unwrap_or(true)
    }
}

pub fn bound_checks(pattern: &Pattern) -> Result<BoundChecks, AnalysisError> {
    let m = pattern.modality();
    let pieces = special_set(pattern)?.pieces.len();
    let islands = island_decomposition(pattern)?;
    let colors = classify_points(pattern)?;
    let q = pattern.period();
    let (nl, nr) = (islands.left.len(), islands.right.len());
    let canonical = iet::canonical_blocks(pattern).ok().map(|b| b.len());
    Ok(BoundChecks {
        modality: m,
        concordant_pieces: pieces,
        pieces_within_m_plus_2: pieces <= m + 2,
        pieces_within_m_plus_4: pieces <= m + 4,
        islands_left: nl,
        islands_right: nr,
        islands_within_m_plus_1: nl.max(nr) <= m + 1,
        islands_within_m: nl.max(nr) <= m,
        extremes_iblack: colors.icolor(1) == IColor::IBlack && colors.icolor(q) == IColor::IBlack,
        canonical_blocks: canonical,
        blocks_within_bound: canonical.map(|n| n <= (m + 1) * (m + 2)),
    })
}
