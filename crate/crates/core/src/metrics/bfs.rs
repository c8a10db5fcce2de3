use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::map::PlanarMap;

pub const UNREACHED: u32 = u32::MAX;

/// Compressed neighbour lists of a map, for repeated BFS.
#[derive(Clone, Debug)]
pub struct Adjacency {
    offsets: Vec<u32>,
    targets: Vec<u32>,
}

impl Adjacency {
    pub fn new(map: &PlanarMap) -> Self {
        let v = map.vertex_count();
        let mut offsets = vec![0u32; v + 1];
        for &o in map.vertex_of() {
            offsets[o as usize + 1] += 1;
        }
        for i in 0..v {
            offsets[i + 1] += offsets[i];
        }
        let mut fill = offsets.clone();
        let mut targets = vec![0u32; map.half_edge_count()];
        for (e, &o) in map.vertex_of().iter().enumerate() {
            targets[fill[o as usize] as usize] = map.target(e as u32);
            fill[o as usize] += 1;
        }
        Self { offsets, targets }
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn neighbours(&self, v: u32) -> &[u32] {
        &self.targets[self.offsets[v as usize] as usize..self.offsets[v as usize + 1] as usize]
    }

    /// BFS from `source` into `dist` (resized and overwritten). Returns the
    /// eccentricity of `source` within its component.
    pub fn bfs_into(&self, source: u32, dist: &mut Vec<u32>, queue: &mut VecDeque<u32>) -> u32 {
        dist.clear();
        dist.resize(self.vertex_count(), UNREACHED);
        queue.clear();
        dist[source as usize] = 0;
        queue.push_back(source);
        let mut ecc = 0;
        while let Some(u) = queue.pop_front() {
            let du = dist[u as usize];
            ecc = du;
            for &w in self.neighbours(u) {
                if dist[w as usize] == UNREACHED {
                    dist[w as usize] = du + 1;
                    queue.push_back(w);
                }
            }
        }
        ecc
    }

    pub fn bfs(&self, source: u32) -> Result<DistanceProfile> {
        if source as usize >= self.vertex_count() {
            return Err(Error::IndexOutOfRange { index: source as usize, len: self.vertex_count() });
        }
        let mut dist = Vec::new();
        let ecc = self.bfs_into(source, &mut dist, &mut VecDeque::new());
        let mut histogram = vec![0u64; ecc as usize + 1];
        for &d in &dist {
            if d != UNREACHED {
                histogram[d as usize] += 1;
            }
        }
        Ok(DistanceProfile { source, dist, histogram })
    }
}

/// Graph distances from one vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceProfile {
    pub source: u32,
    /// [`UNREACHED`] for vertices in other components.
    pub dist: Vec<u32>,
    /// Number of vertices at each distance.
    pub histogram: Vec<u64>,
}

impl DistanceProfile {
    pub fn eccentricity(&self) -> u32 {
        self.histogram.len() as u32 - 1
    }
}

pub fn bfs_distances(map: &PlanarMap, source: u32) -> Result<DistanceProfile> {
    Adjacency::new(map).bfs(source)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bdg::forward;
    use crate::bridge::Bridge;
    use crate::forest::{ForestShape, WellLabeledForest};

    #[test]
    fn three_vertex_example() {
        let f = WellLabeledForest::new(ForestShape::new(&[vec![1, 0]]).unwrap(), vec![0, 1]).unwrap();
        let pq = forward(&f, &Bridge::zero(1).unwrap()).unwrap();
        let p = bfs_distances(pq.map().map(), pq.pointed()).unwrap();
        assert_eq!(p.dist[pq.pointed() as usize], 0);
        assert_eq!(p.dist[0], 1);
        assert_eq!(p.dist[1], 2);
        assert_eq!(p.histogram, vec![1, 1, 1]);
        assert!(bfs_distances(pq.map().map(), 7).is_err());
    }
}
