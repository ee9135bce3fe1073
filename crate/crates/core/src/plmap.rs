//! The P-linear ("connect the dots") map of a pattern.
//!
//! Orbit point `x_i` sits at coordinate `i`, so the domain is `[1, q]` and
//! every affine branch has integer slope and intercept.

use num_traits::Signed;
use serde::Serialize;

use crate::pattern::Pattern;
use crate::rational::{self, int, Rational};

/// Affine map `x -> slope * x + intercept` with integer coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Affine {
    pub slope: i128,
    pub intercept: i128,
}

impl Affine {
    pub const IDENTITY: Affine = Affine {
        slope: 1,
        intercept: 0,
    };

    pub fn apply(&self, x: &Rational) -> Rational {
        x * self.slope + self.intercept
    }

    /// `outer ∘ self`, or `None` on overflow.
    pub fn then(&self, outer: &Affine) -> Option<Affine> {
        Some(Affine {
            slope: outer.slope.checked_mul(self.slope)?,
            intercept: outer
                .slope
                .checked_mul(self.intercept)?
                .checked_add(outer.intercept)?,
        })
    }

    /// Preimage of the closed interval `[lo, hi]`, as a closed interval.
    pub fn preimage(&self, lo: &Rational, hi: &Rational) -> (Rational, Rational) {
        let a = (lo - self.intercept) / self.slope;
        let b = (hi - self.intercept) / self.slope;
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PLMap {
    #[serde(with = "rational::serde_vec")]
    pub breakpoints: Vec<Rational>,
    #[serde(with = "rational::serde_vec")]
    pub values: Vec<Rational>,
    #[serde(with = "rational::serde_vec")]
    pub critical_points: Vec<Rational>,
    #[serde(with = "rational::serde_vec")]
    pub fixed_points: Vec<Rational>,
    #[serde(with = "rational::serde_opt")]
    pub unique_fixed_point: Option<Rational>,
    #[serde(skip)]
    images: Vec<i128>,
}

impl PLMap {
    pub fn new(pattern: &Pattern) -> Self {
        let q = pattern.period();
        let images: Vec<i128> = pattern.images().iter().map(|&v| v as i128).collect();
        let breakpoints = (1..=q as i128).map(int).collect();
        let values = images.iter().copied().map(int).collect();
        let critical_points = (2..q)
            .filter(|&i| {
                let (l, c, r) = (images[i - 2], images[i - 1], images[i]);
                (c > l) != (r > c)
            })
            .map(|i| int(i as i128))
            .collect();
        let mut fixed_points = Vec::new();
        for i in 1..q {
            let left = images[i - 1] - i as i128;
            let right = images[i] - (i as i128 + 1);
            // neither endpoint is fixed, so a crossing is a strict sign change
            if (left > 0) != (right > 0) {
                let branch = branch_of(&images, i);
                fixed_points.push(Rational::new(branch.intercept, 1 - branch.slope));
            }
        }
        let unique_fixed_point = match fixed_points.as_slice() {
            [a] => Some(*a),
            _ => None,
        };
        PLMap {
            breakpoints,
            values,
            critical_points,
            fixed_points,
            unique_fixed_point,
            images,
        }
    }

    pub fn period(&self) -> usize {
        self.images.len()
    }

    pub fn modality(&self) -> usize {
        self.critical_points.len()
    }

    /// Domain `[1, q]`.
    pub fn domain(&self) -> (Rational, Rational) {
        (int(1), int(self.period() as i128))
    }

    /// Affine branch on the basic interval `[i, i + 1]`, `1 <= i < q`.
    pub fn branch(&self, i: usize) -> Affine {
        branch_of(&self.images, i)
    }

    /// Index `i` of a basic interval `[i, i + 1]` containing `x`; the left
    /// one when `x` is an interior breakpoint.
    pub fn segment_of(&self, x: &Rational) -> Option<usize> {
        let (lo, hi) = self.domain();
        if *x < lo || *x > hi {
            return None;
        }
        let i = x.ceil().to_integer() as usize - 1;
        Some(i.clamp(1, self.period() - 1))
    }

    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        self.segment_of(x).map(|i| self.branch(i).apply(x))
    }

    /// Unique fixed point with the right sign shape on either side.
    pub fn is_convergent(&self) -> bool {
        let Some(a) = self.unique_fixed_point else {
            return false;
        };
        let q = self.period();
        (1..=q).all(|i| {
            let x = int(i as i128);
            let d = int(self.images[i - 1]) - x;
            if x < a {
                d.is_positive()
            } else {
                d.is_negative()
            }
        })
    }
}

fn branch_of(images: &[i128], i: usize) -> Affine {
    let slope = images[i] - images[i - 1];
    Affine {
        slope,
        intercept: images[i - 1] - slope * i as i128,
    }
}
