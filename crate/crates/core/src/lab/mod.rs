//! Scaling experiments: rescaled processes, bridge and excursion statistics,
//! ball growth exponents and the two extreme boundary regimes.

pub mod bridge_metric;
pub mod experiments;
pub mod rescale;
pub mod result;
pub mod stats;
pub mod vervaat;

pub use bridge_metric::BridgeMetric;
pub use experiments::{endpoint_law, run_experiment, ExperimentConfig, ExperimentKind, SigmaRule};
pub use rescale::{gamma, rescale, RescaledProcesses};
pub use result::{Check, ExperimentResult, Point, Row};
pub use stats::Summary;
