//! Exhaustive ground truth for small instances.

mod enumerate;
mod evaluate;
mod kcentre;
mod ratio;

pub use enumerate::{enumerate_language, enumerate_language_capped, DEFAULT_ENUM_CAP};
pub use evaluate::{distance_matrix, distance_ratio, evaluate, evaluate_with, EvalOptions, EvalReport, NearestCentre};
pub use kcentre::{optimal_kcentre, optimal_kcentre_with, SearchLimits, DEFAULT_SUBSET_CAP};
pub use ratio::{ratio_study, ratio_table_csv, RatioRow};
