use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::map::PlanarMap;
use crate::metrics::bfs::Adjacency;

/// Largest map handled by [`DiameterMode::Exact`].
pub const EXACT_DIAMETER_CAP: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiameterMode {
    /// Maximum eccentricity, one BFS per vertex.
    Exact,
    /// Eccentricity of the farthest vertex from the root origin; a lower
    /// bound on the diameter.
    DoubleSweep,
}

pub fn diameter(map: &PlanarMap, mode: DiameterMode) -> Result<u32> {
    let adj = Adjacency::new(map);
    let mut dist = Vec::new();
    let mut queue = VecDeque::new();
    match mode {
        DiameterMode::Exact => {
            if map.vertex_count() > EXACT_DIAMETER_CAP {
                return Err(Error::CapExceeded(format!(
                    "exact diameter needs at most {EXACT_DIAMETER_CAP} vertices, map has {}",
                    map.vertex_count()
                )));
            }
            Ok((0..map.vertex_count() as u32).map(|v| adj.bfs_into(v, &mut dist, &mut queue)).max().unwrap_or(0))
        }
        DiameterMode::DoubleSweep => {
            adj.bfs_into(map.origin(map.root()), &mut dist, &mut queue);
            let far = (0..dist.len()).max_by_key(|&v| (dist[v], std::cmp::Reverse(v))).unwrap_or(0);
            Ok(adj.bfs_into(far as u32, &mut dist, &mut queue))
        }
    }
}
