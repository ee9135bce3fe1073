//! Over-twist patterns of interval maps: pattern invariants, P-linear maps,
//! special sets and islands, interval exchange models, Markov graphs and the
//! Γ catalog.

pub mod analysis;
pub mod catalog;
pub mod iet;
pub mod markov;
pub mod pattern;
pub mod plmap;
pub mod rational;
pub mod report;
pub mod svg;

pub use pattern::{forces_pair, sharkovsky_cmp, sharkovsky_ge, Pattern, PatternError, RotPair};
pub use plmap::PLMap;
pub use rational::Rational;
