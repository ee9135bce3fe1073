//! The family Γ_{r,p/q} of over-twist patterns of modality at most two.
//!
//! For `s = q - 2p - r` the points fall into four consecutive groups of
//! sizes `r, p, p, s`: the first shifts right by `p`, the second maps
//! decreasingly onto the last `p` points, the third decreasingly onto the
//! first `p` points, and the last shifts left by `p`.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::iet::{Block, BlockPartition, Orientation};
use crate::pattern::Pattern;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("invalid catalog id: {0}")]
    InvalidId(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GammaId {
    pub p: usize,
    pub q: usize,
    pub r: usize,
}

impl GammaId {
    pub fn new(p: usize, q: usize, r: usize) -> Result<Self, CatalogError> {
        check_number(p, q)?;
        if r > q - 2 * p {
            return Err(CatalogError::InvalidId(format!(
                "r = {r} exceeds q - 2p = {}",
                q - 2 * p
            )));
        }
        Ok(GammaId { p, q, r })
    }

    pub fn s(&self) -> usize {
        self.q - 2 * self.p - self.r
    }

    /// All ids with period `q`, ordered by `p` then `r`.
    pub fn all_of_period(q: usize) -> Vec<GammaId> {
        (1..=q / 2)
            .filter(|&p| p.gcd(&q) == 1)
            .flat_map(|p| (0..=q - 2 * p).map(move |r| GammaId { p, q, r }))
            .collect()
    }
}

impl fmt::Display for GammaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Γ_{{{},{}/{}}}", self.r, self.p, self.q)
    }
}

fn check_number(p: usize, q: usize) -> Result<(), CatalogError> {
    if p == 0 || 2 * p > q {
        return Err(CatalogError::InvalidId(format!(
            "need 0 < p/q <= 1/2, got {p}/{q}"
        )));
    }
    if p.gcd(&q) != 1 {
        return Err(CatalogError::InvalidId(format!(
            "{p} and {q} are not coprime"
        )));
    }
    Ok(())
}

pub fn gamma_pattern(id: GammaId) -> Pattern {
    let GammaId { p, q, r } = id;
    let s = id.s();
    let mut images = Vec::with_capacity(q);
    images.extend((1..=r).map(|i| i + p));
    images.extend((1..=p).map(|i| q - i + 1));
    images.extend((1..=p).map(|i| p - i + 1));
    images.extend((1..=s).map(|i| r + p + i));
    Pattern::new(images).expect("catalog rules always produce a cyclic permutation")
}

/// The `q - 2p + 1` patterns Γ_{r,p/q}, `r = 0..=q-2p`.
pub fn enumerate_gammas(p: usize, q: usize) -> Result<Vec<Pattern>, CatalogError> {
    check_number(p, q)?;
    Ok((0..=q - 2 * p)
        .map(|r| gamma_pattern(GammaId { p, q, r }))
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GammaModality {
    pub modality: usize,
    /// Period 2, where the single decreasing lap has modality 0.
    pub degenerate: bool,
}

/// Unimodal at the ends of the family (`r = 0` or `s = 0`), bimodal inside.
pub fn classify_gamma_modality(id: GammaId) -> GammaModality {
    if id.q == 2 {
        return GammaModality {
            modality: 0,
            degenerate: true,
        };
    }
    let modality = if id.r == 0 || id.s() == 0 { 1 } else { 2 };
    GammaModality {
        modality,
        degenerate: false,
    }
}

pub fn catalog_membership(pattern: &Pattern) -> Option<GammaId> {
    let rot = pattern.over_rotation_pair();
    if !rot.is_coprime() {
        return None;
    }
    let (p, q) = (rot.p as usize, rot.q as usize);
    (0..=q - 2 * p)
        .map(|r| GammaId { p, q, r })
        .find(|&id| gamma_pattern(id) == *pattern)
}

/// Groups of sizes `r, p, p, s`; the two middle ones reversed. Empty groups
/// are dropped.
pub fn gamma_canonical_blocks(id: GammaId) -> BlockPartition {
    let GammaId { p, q, r } = id;
    let groups = [
        (1, r, Orientation::Oriented),
        (r + 1, r + p, Orientation::Flipped),
        (r + p + 1, r + 2 * p, Orientation::Flipped),
        (r + 2 * p + 1, q, Orientation::Oriented),
    ];
    let blocks = groups
        .into_iter()
        .filter(|&(start, end, _)| start <= end)
        .map(|(start, end, o)| Block::new(start, end, o))
        .collect();
    BlockPartition::new(q, blocks).expect("catalog groups tile the orbit")
}

/// One line per member: `r=<r> modality=<m>` and the permutation.
pub fn listing(p: usize, q: usize) -> Result<String, CatalogError> {
    check_number(p, q)?;
    let mut out = String::new();
    for r in 0..=q - 2 * p {
        let id = GammaId { p, q, r };
        let m = classify_gamma_modality(id).modality;
        out.push_str(&format!("r={r} modality={m}\t{}\n", gamma_pattern(id)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pat(v: &[usize]) -> Pattern {
        Pattern::new(v.to_vec()).unwrap()
    }

    fn id(p: usize, q: usize, r: usize) -> GammaId {
        GammaId::new(p, q, r).unwrap()
    }

    #[test]
    fn pattern_examples() {
        assert_eq!(gamma_pattern(id(1, 3, 0)), pat(&[3, 1, 2]));
        assert_eq!(gamma_pattern(id(1, 3, 1)), pat(&[2, 3, 1]));
        assert_eq!(
            gamma_pattern(id(3, 11, 3)),
            pat(&[4, 5, 6, 11, 10, 9, 3, 2, 1, 7, 8])
        );
        assert_eq!(gamma_pattern(id(1, 2, 0)), pat(&[2, 1]));
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(
            enumerate_gammas(1, 5).unwrap(),
            vec![
                pat(&[5, 1, 2, 3, 4]),
                pat(&[2, 5, 1, 3, 4]),
                pat(&[2, 3, 5, 1, 4]),
                pat(&[2, 3, 4, 5, 1]),
            ]
        );
        assert_eq!(enumerate_gammas(1, 3).unwrap().len(), 2);
        assert!(enumerate_gammas(2, 4).is_err());
        assert!(enumerate_gammas(3, 5).is_err());
        assert!(enumerate_gammas(0, 5).is_err());
        assert!(GammaId::new(1, 5, 4).is_err());
    }

    #[test]
    fn modality_examples() {
        assert_eq!(classify_gamma_modality(id(1, 3, 0)).modality, 1);
        assert_eq!(classify_gamma_modality(id(3, 11, 3)).modality, 2);
        let two = classify_gamma_modality(id(1, 2, 0));
        assert_eq!((two.modality, two.degenerate), (0, true));
    }

    #[test]
    fn membership_examples() {
        assert_eq!(
            catalog_membership(&pat(&[2, 3, 4, 5, 1])),
            Some(id(1, 5, 3))
        );
        assert_eq!(catalog_membership(&pat(&[2, 4, 1, 3])), Some(id(1, 4, 1)));
        assert_eq!(catalog_membership(&pat(&[3, 1, 4, 5, 2])), None);
        assert_eq!(catalog_membership(&pat(&[2, 1])), Some(id(1, 2, 0)));
    }

    #[test]
    fn block_examples() {
        use Orientation::*;
        let b = gamma_canonical_blocks(id(3, 11, 3));
        let spans: Vec<_> = b
            .blocks()
            .iter()
            .map(|b| (b.start, b.end, b.orientation))
            .collect();
        assert_eq!(
            spans,
            vec![
                (1, 3, Oriented),
                (4, 6, Flipped),
                (7, 9, Flipped),
                (10, 11, Oriented)
            ]
        );
        let b = gamma_canonical_blocks(id(1, 3, 0));
        let spans: Vec<_> = b
            .blocks()
            .iter()
            .map(|b| (b.start, b.end, b.orientation))
            .collect();
        assert_eq!(
            spans,
            vec![(1, 1, Flipped), (2, 2, Flipped), (3, 3, Oriented)]
        );
        assert_eq!(gamma_canonical_blocks(id(1, 2, 0)).len(), 2);
    }

    #[test]
    fn listing_format() {
        assert_eq!(
            listing(1, 3).unwrap(),
            "r=0 modality=1\t3 1 2\nr=1 modality=1\t2 3 1\n"
        );
        assert_eq!(listing(3, 11).unwrap().lines().count(), 6);
    }

    #[test]
    fn ids_of_period() {
        assert_eq!(GammaId::all_of_period(5).len(), 4 + 2);
        assert_eq!(GammaId::all_of_period(2), vec![id(1, 2, 0)]);
    }
}
