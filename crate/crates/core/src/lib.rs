//! Quadrangulations with a boundary: exact uniform sampling, the forest and
//! bridge coding in both directions, the self-avoiding-walk configuration
//! coding, exhaustive enumeration, distance checks and scaling experiments.
//!
//! ```
//! use quadbound::{sampler::{sample_quadrangulation, Seed}, bdg};
//!
//! let pq = sample_quadrangulation(50, 4, &mut Seed::new(1).rng(0)).unwrap();
//! assert_eq!(pq.map().vertex_count(), 50 + 4 + 1);
//! let (forest, bridge) = bdg::inverse(&pq).unwrap();
//! assert_eq!(bdg::forward(&forest, &bridge).unwrap(), pq);
//! ```

pub mod bdg;
pub mod bridge;
pub mod cli;
pub mod enumerate;
pub mod error;
pub mod forest;
pub mod lab;
pub mod labels;
pub mod map;
pub mod metrics;
pub mod sampler;
pub mod saw;
pub mod verify;

pub use bridge::Bridge;
pub use error::{Error, Result};
pub use forest::{ContourPair, ForestShape, WellLabeledForest};
pub use labels::ShiftedLabelSequence;
pub use map::{BoundaryMap, PlanarMap, PointedBoundaryMap};
pub use saw::SawConfiguration;
