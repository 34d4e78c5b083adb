//! Getting layouts in and results out: JSON layout documents, Netpbm
//! object-model images, and CSV/JSON result tables.

pub mod document;
pub mod export;
pub mod netpbm;
pub mod segment;

pub use document::{parse_document, parse_layout, serialize_layout, LayoutDocument, SCHEMA_VERSION};
pub use export::{export_results, parse_results_json, read_labeled_column, EvaluationReport, ResultFormat, ResultRow};
pub use netpbm::RasterImage;
pub use segment::{ingest_object_model, IngestOptions};
