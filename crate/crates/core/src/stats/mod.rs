//! Ranking, rank correlation and one-way ANOVA for comparing layout groups.

pub mod anova;
pub mod rank;
pub mod special;

pub use anova::{one_way_anova, parse_group_csv, AnovaResult};
pub use rank::{rank_by_value, spearman_rho, RankEntry, RankVector};
