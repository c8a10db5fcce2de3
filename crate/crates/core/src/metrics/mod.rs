//! Graph distances on maps and the checks built on them.

pub mod balls;
pub mod bfs;
pub mod bounds;
pub mod diameter;
pub mod distortion;
pub mod largest_tree;

pub use balls::{ball_volume_profile, boundary_ball_profile, loglog_slope};
pub use bfs::{bfs_distances, Adjacency, DistanceProfile};
pub use bounds::{check_cactus_lower_bound, check_distance_upper_bound, BoundReport};
pub use diameter::{diameter, DiameterMode};
pub use distortion::{correspondence_distortion, Correspondence};
pub use largest_tree::{largest_tree_comparison, TreeComparison};
