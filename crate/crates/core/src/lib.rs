//! Aesthetic measures for rectangular screen layouts.
//!
//! A [`Layout`] is a frame plus axis-aligned rectangles. [`metrics::evaluate`]
//! scores it on balance, equilibrium, symmetry, sequence and rhythm, and
//! averages those into the aggregate aesthetic value (`av`). Around that core
//! sit file and image ingestion ([`ingest`]), a simulated-annealing layout
//! search ([`optimizer`]) and the ranking / ANOVA helpers used to compare
//! corpora ([`stats`]).

pub mod error;
pub mod ingest;
pub mod layout;
pub mod metrics;
pub mod optimizer;
pub mod stats;

pub use error::{Error, Result};
pub use layout::{Frame, Layout, LayoutObject, Portion, Quadrant, QuadrantAggregates, QuadrantSums};
pub use metrics::{evaluate, MeasureVector};
