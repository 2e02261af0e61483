//! Ball-on-disc and glider scenarios built on [`crate::rotframe`].

mod analysis;
mod config;
mod export;
mod session;
mod trace;

pub use analysis::{curvature_sign, max_line_residual, Curvature, STRAIGHT_TOLERANCE};
pub use config::{ScenarioConfig, ScenarioKind, Vantage, DEFAULT_RECORD_STRIDE};
pub use export::{export_csv, export_csv_to_path, CSV_HEADER};
pub use session::Session;
pub use trace::{vantage_view, Trace, TraceSample};

use thiserror::Error;

use crate::rotframe::PhysicsError;

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("invalid scenario config: {0}")]
    Config(String),
    #[error(transparent)]
    Physics(#[from] PhysicsError),
    #[error("trace export failed: {0}")]
    Export(#[from] std::io::Error),
    #[error("curvature undefined: {0}")]
    UndefinedCurvature(String),
}

pub type Result<T> = std::result::Result<T, ScenarioError>;
