//! Interval exchange transformations with flips, block partitions of a
//! cycle, and the conjugacy between a cycle and an IET orbit.
//!
//! Orbit point `x_i` corresponds to `y_i = (2i - 1) / (2q)` in `[0, 1)`; a
//! block of consecutive points becomes one interval of isometry made of the
//! cells `[(i - 1)/q, i/q)` of its points.

use serde::{Deserialize, Serialize};

use crate::analysis::{self, AnalysisError, Color};
use crate::pattern::Pattern;
use crate::rational::{self, int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IetError {
    #[error("invalid IET: {0}")]
    InvalidSpec(String),
    #[error("{} is outside [0, 1)", rational::format(.0))]
    OutOfDomain(Rational),
    #[error("not a block partition: {0}")]
    NotAPartition(String),
    #[error("block {block} ({start}..={end}) is not monotone without expansion in its declared orientation")]
    BlocksNotCollinear {
        block: usize,
        start: usize,
        end: usize,
    },
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error("pattern is not green")]
    NotGreen,
    #[error("pattern has modality 0")]
    ZeroModality,
    #[error("orbit point {0} lies outside the special set")]
    NotInSpecialSet(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    Oriented,
    Flipped,
}

/// Consecutive orbit points `start..=end` (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Block {
    pub start: usize,
    pub end: usize,
    pub orientation: Orientation,
}

impl Block {
    pub fn new(start: usize, end: usize, orientation: Orientation) -> Self {
        Block {
            start,
            end,
            orientation,
        }
    }

    pub fn len(&self) -> usize {
        self.end + 1 - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end < self.start
    }

    pub fn indices(&self) -> std::ops::RangeInclusive<usize> {
        self.start..=self.end
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockPartition {
    q: usize,
    blocks: Vec<Block>,
}

impl BlockPartition {
    /// Checks that the blocks are nonempty and tile `1..=q` left to right.
    pub fn new(q: usize, blocks: Vec<Block>) -> Result<Self, IetError> {
        let mut next = 1;
        for (j, b) in blocks.iter().enumerate() {
            if b.start != next || b.is_empty() {
                return Err(IetError::NotAPartition(format!(
                    "block {j} is {}..={}, expected to start at {next}",
                    b.start, b.end
                )));
            }
            next = b.end + 1;
        }
        if next != q + 1 {
            return Err(IetError::NotAPartition(format!(
                "blocks cover 1..{next}, expected 1..={q}"
            )));
        }
        Ok(BlockPartition { q, blocks })
    }

    pub fn period(&self) -> usize {
        self.q
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn flipped(&self) -> usize {
        self.blocks
            .iter()
            .filter(|b| b.orientation == Orientation::Flipped)
            .count()
    }
}

/// Orientation of `start..=end` if it maps onto consecutive points, or `None`.
/// Singletons report `None` as well: one point fixes no slope.
fn run_orientation(pattern: &Pattern, start: usize, end: usize) -> Option<Orientation> {
    if start == end {
        return None;
    }
    let step = pattern.image(start + 1) as i64 - pattern.image(start) as i64;
    let orientation = match step {
        1 => Orientation::Oriented,
        -1 => Orientation::Flipped,
        _ => return None,
    };
    (start + 1..end)
        .all(|i| pattern.image(i + 1) as i64 - pattern.image(i) as i64 == step)
        .then_some(orientation)
}

fn is_collinear(pattern: &Pattern, b: &Block) -> bool {
    b.start == b.end || run_orientation(pattern, b.start, b.end) == Some(b.orientation)
}

/// Left-to-right greedy partition into maximal runs mapped onto consecutive
/// points; singletons default to `Oriented`.
pub fn greedy_blocks(pattern: &Pattern) -> BlockPartition {
    let q = pattern.period();
    let mut blocks = Vec::new();
    let mut start = 1;
    while start <= q {
        let mut end = start;
        while end < q && run_orientation(pattern, start, end + 1).is_some() {
            end += 1;
        }
        let orientation = run_orientation(pattern, start, end).unwrap_or(Orientation::Oriented);
        blocks.push(Block::new(start, end, orientation));
        start = end + 1;
    }
    BlockPartition::new(q, blocks).expect("greedy runs tile 1..=q")
}

/// Blocks obtained from the concordant pieces: each piece's orbit points are
/// split by the i-island their images land in. Singletons take the
/// orientation of their colour (green increasing, black decreasing).
pub fn canonical_blocks(pattern: &Pattern) -> Result<BlockPartition, IetError> {
    let colors = analysis::classify_points(pattern)?;
    if pattern.modality() == 0 {
        return Err(IetError::ZeroModality);
    }
    if !analysis::is_green_pattern(pattern) {
        return Err(IetError::NotGreen);
    }
    let special = analysis::special_set(pattern)?;
    let islands = analysis::island_decomposition(pattern)?;
    let q = pattern.period();

    // (piece, island of image) labels each point; runs of equal labels are blocks
    let mut labels = Vec::with_capacity(q);
    for i in 1..=q {
        let piece = special
            .piece_of(&int(i as i128))
            .ok_or(IetError::NotInSpecialSet(i))?;
        let island = islands
            .island_of(pattern.image(i))
            .map(|is| (is.start, is.end))
            .expect("islands cover the orbit");
        labels.push((piece, island));
    }
    let mut blocks = Vec::new();
    let mut start = 1;
    for i in 1..=q {
        if i == q || labels[i] != labels[i - 1] {
            let orientation = match run_orientation(pattern, start, i) {
                Some(o) => o,
                None if start == i => match colors.color(i) {
                    Color::Green => Orientation::Oriented,
                    Color::Black => Orientation::Flipped,
                },
                None => {
                    return Err(IetError::BlocksNotCollinear {
                        block: blocks.len(),
                        start,
                        end: i,
                    })
                }
            };
            blocks.push(Block::new(start, i, orientation));
            start = i + 1;
        }
    }
    BlockPartition::new(q, blocks)
}

/// An `(n, k)`-IET on `[0, 1)`: interval lengths and a signed permutation
/// giving the rank of each image interval, negative for a flip.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IetSpec {
    lengths: Vec<Rational>,
    signed_perm: Vec<i64>,
    separations: Vec<Rational>,
    slots: Vec<Rational>,
}

impl IetSpec {
    pub fn new(lengths: Vec<Rational>, signed_perm: Vec<i64>) -> Result<Self, IetError> {
        let n = lengths.len();
        if n == 0 || signed_perm.len() != n {
            return Err(IetError::InvalidSpec(format!(
                "{} lengths for {} permutation entries",
                n,
                signed_perm.len()
            )));
        }
        if lengths.iter().any(|l| *l <= int(0)) {
            return Err(IetError::InvalidSpec("lengths must be positive".into()));
        }
        if lengths.iter().sum::<Rational>() != int(1) {
            return Err(IetError::InvalidSpec("lengths must sum to 1".into()));
        }
        let mut seen = vec![false; n];
        for &v in &signed_perm {
            let r = v.unsigned_abs() as usize;
            if r == 0 || r > n || std::mem::replace(&mut seen[r - 1], true) {
                return Err(IetError::InvalidSpec(format!(
                    "{signed_perm:?} is not a double permutation"
                )));
            }
        }
        let mut separations = vec![int(0)];
        for l in &lengths {
            separations.push(separations.last().unwrap() + l);
        }
        let slots = (0..n)
            .map(|i| {
                let rank = signed_perm[i].abs();
                (0..n)
                    .filter(|&j| signed_perm[j].abs() < rank)
                    .map(|j| lengths[j])
                    .sum()
            })
            .collect();
        Ok(IetSpec {
            lengths,
            signed_perm,
            separations,
            slots,
        })
    }

    pub fn n(&self) -> usize {
        self.lengths.len()
    }

    /// Number of flipped intervals.
    pub fn k(&self) -> usize {
        self.signed_perm.iter().filter(|&&v| v < 0).count()
    }

    pub fn lengths(&self) -> &[Rational] {
        &self.lengths
    }

    pub fn signed_perm(&self) -> &[i64] {
        &self.signed_perm
    }

    /// `0 = x_0 < x_1 < ... < x_n = 1`.
    pub fn separation_points(&self) -> &[Rational] {
        &self.separations
    }

    /// Left end of the image of each interval.
    pub fn image_starts(&self) -> &[Rational] {
        &self.slots
    }

    pub fn is_flipped(&self, i: usize) -> bool {
        self.signed_perm[i] < 0
    }

    pub fn segment_of(&self, x: &Rational) -> Option<usize> {
        if *x < int(0) || *x >= int(1) {
            return None;
        }
        Some(self.separations.partition_point(|s| s <= x) - 1)
    }

    /// Evaluates `T`. Oriented intervals translate onto `[s, s + λ)`,
    /// flipped ones reflect onto `(s, s + λ]`.
    pub fn apply(&self, x: &Rational) -> Result<Rational, IetError> {
        let j = self.segment_of(x).ok_or(IetError::OutOfDomain(*x))?;
        Ok(if self.is_flipped(j) {
            self.slots[j] + self.separations[j + 1] - x
        } else {
            x - self.separations[j] + self.slots[j]
        })
    }

    /// `t_i = sum_{|π(j)| < |π(i)|} λ_j - sum_{j < i} λ_j`, for every interval.
    /// It is the translation of an oriented interval; for a flipped one it
    /// is only the offset between the image and the interval's left ends.
    pub fn translations(&self) -> Vec<Rational> {
        (0..self.n())
            .map(|i| self.slots[i] - self.separations[i])
            .collect()
    }

    pub fn to_json(&self, orbit: &[Rational]) -> IetJson {
        IetJson {
            n: self.n(),
            k: self.k(),
            lengths: self.lengths.clone(),
            signed_perm: self.signed_perm.clone(),
            translations: self.translations(),
            orbit: orbit.to_vec(),
        }
    }
}

/// Wire form of an IET; field order is part of the format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IetJson {
    pub n: usize,
    pub k: usize,
    #[serde(with = "rational::serde_vec")]
    pub lengths: Vec<Rational>,
    pub signed_perm: Vec<i64>,
    #[serde(with = "rational::serde_vec")]
    pub translations: Vec<Rational>,
    #[serde(with = "rational::serde_vec")]
    pub orbit: Vec<Rational>,
}

impl IetJson {
    pub fn spec(&self) -> Result<IetSpec, IetError> {
        let spec = IetSpec::new(self.lengths.clone(), self.signed_perm.clone())?;
        if spec.n() != self.n || spec.k() != self.k {
            return Err(IetError::InvalidSpec("n/k disagree with the data".into()));
        }
        Ok(spec)
    }
}

/// `y_i = (2i - 1) / (2q)`.
pub fn orbit_coordinate(i: usize, q: usize) -> Rational {
    Rational::new(2 * i as i128 - 1, 2 * q as i128)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjugacyWitness {
    /// `psi[i - 1] = y_i`.
    #[serde(with = "rational::serde_vec")]
    pub psi: Vec<Rational>,
    /// Orbit of `y_1` under `T`, in temporal order.
    #[serde(with = "rational::serde_vec")]
    pub orbit: Vec<Rational>,
    pub verified: bool,
}

pub fn iet_from_blocks(
    pattern: &Pattern,
    blocks: &BlockPartition,
) -> Result<(IetSpec, ConjugacyWitness), IetError> {
    let q = pattern.period();
    if blocks.period() != q {
        return Err(IetError::NotAPartition(format!(
            "partition of {} points for a pattern of period {q}",
            blocks.period()
        )));
    }
    for (j, b) in blocks.blocks().iter().enumerate() {
        if !is_collinear(pattern, b) {
            return Err(IetError::BlocksNotCollinear {
                block: j,
                start: b.start,
                end: b.end,
            });
        }
    }
    let lowest_image = |b: &Block| b.indices().map(|i| pattern.image(i)).min().unwrap();
    let mut by_image: Vec<usize> = (0..blocks.len()).collect();
    by_image.sort_by_key(|&j| lowest_image(&blocks.blocks()[j]));
    let mut signed_perm = vec![0i64; blocks.len()];
    for (rank, &j) in by_image.iter().enumerate() {
        let sign = match blocks.blocks()[j].orientation {
            Orientation::Oriented => 1,
            Orientation::Flipped => -1,
        };
        signed_perm[j] = sign * (rank as i64 + 1);
    }
    let lengths = blocks
        .blocks()
        .iter()
        .map(|b| Rational::new(b.len() as i128, q as i128))
        .collect();
    let spec = IetSpec::new(lengths, signed_perm)?;

    let psi: Vec<Rational> = (1..=q).map(|i| orbit_coordinate(i, q)).collect();
    let mut orbit = Vec::with_capacity(q);
    let mut y = psi[0];
    for _ in 0..q {
        orbit.push(y);
        y = spec.apply(&y)?;
    }
    let mut witness = ConjugacyWitness {
        psi,
        orbit,
        verified: false,
    };
    witness.verified = verify_conjugacy(pattern, &spec, &witness);
    Ok((spec, witness))
}

/// Exact check that `psi ∘ f = T ∘ psi` on the orbit and that the witness
/// orbit is the `T`-orbit of `y_1`.
pub fn verify_conjugacy(pattern: &Pattern, spec: &IetSpec, witness: &ConjugacyWitness) -> bool {
    let q = pattern.period();
    if witness.psi.len() != q || witness.orbit.len() != q {
        return false;
    }
    let psi_ok = (1..=q).all(|i| witness.psi[i - 1] == orbit_coordinate(i, q));
    let commutes = (1..=q)
        .all(|i| spec.apply(&witness.psi[i - 1]).ok() == Some(witness.psi[pattern.image(i) - 1]));
    let orbit_ok = pattern
        .orbit_from(1)
        .iter()
        .zip(&witness.orbit)
        .all(|(&i, y)| witness.psi[i - 1] == *y);
    psi_ok && commutes && orbit_ok
}
