//! Aggregated analysis of one pattern, as printed by `otx analyze`.

use serde::Serialize;

use crate::analysis::{self, BoundChecks, Interval};
use crate::catalog::{self, GammaId};
use crate::pattern::{Pattern, RotPair};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IslandCounts {
    pub left: usize,
    pub right: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub pattern: Pattern,
    pub period: usize,
    pub orp: RotPair,
    #[serde(with = "rational::serde_str")]
    pub orn: Rational,
    pub modality: usize,
    pub convergent: bool,
    #[serde(with = "rational::serde_vec")]
    pub fixed_points: Vec<Rational>,
    pub green: bool,
    pub islands: Option<IslandCounts>,
    pub concordant_pieces: Option<usize>,
    pub pieces: Vec<Interval>,
    pub orbit_in_special_set: Option<bool>,
    pub bounds: Option<BoundChecks>,
    pub catalog: Option<GammaId>,
}

impl AnalysisReport {
    pub fn new(pattern: &Pattern) -> Self {
        let f = pattern.p_linear_map();
        let orp = pattern.over_rotation_pair();
        let convergent = f.is_convergent();
        let (islands, pieces, in_special, bounds) = if convergent {
            let isl = analysis::island_decomposition(pattern).expect("convergent");
            let pieces = analysis::concordant_pieces(pattern).expect("convergent");
            (
                Some(IslandCounts {
                    left: isl.left.len(),
                    right: isl.right.len(),
                }),
                pieces,
                analysis::point_membership_in_special_set(pattern).ok(),
                analysis::bound_checks(pattern).ok(),
            )
        } else {
            (None, Vec::new(), None, None)
        };
        AnalysisReport {
            pattern: pattern.clone(),
            period: pattern.period(),
            orp,
            orn: orp.number(),
            modality: pattern.modality(),
            convergent,
            fixed_points: f.fixed_points.clone(),
            green: analysis::is_green_pattern(pattern),
            islands,
            concordant_pieces: convergent.then_some(pieces.len()),
            pieces,
            orbit_in_special_set: in_special,
            bounds,
            catalog: catalog::catalog_membership(pattern),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_cycle_report() {
        let r = AnalysisReport::new(&Pattern::parse("2 3 1").unwrap());
        assert_eq!(rational::format(&r.orn), "1/3");
        assert_eq!(
            (r.modality, r.green, r.concordant_pieces),
            (1, true, Some(3))
        );
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["pieces"][0], "[1/1, 4/3)");
        assert_eq!(json["catalog"]["r"], 1);
    }

    #[test]
    fn non_convergent_report() {
        let r = AnalysisReport::new(&Pattern::parse("3 1 4 5 2").unwrap());
        assert!(!r.convergent && !r.green);
        assert_eq!(r.bounds, None);
        assert_eq!(r.catalog, None);
    }
}
