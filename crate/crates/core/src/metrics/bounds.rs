//! Two-sided distance bounds read off the coding labels.
//!
//! Upper bound, for corners `i, j`:
//! `d(f(i), f(j)) ≤ 𝔏(i) + 𝔏(j) − 2·max(min_[i,j] 𝔏, min_[j,i] 𝔏) + 2`
//! with cyclic index ranges over `0..2n+σ`.
//!
//! Lower bound, for forest vertices `a, b`:
//! `d(a, b) ≥ 𝔩̂(a) + 𝔩̂(b) − 2·max(min_[[a,b]] 𝔩̂, min_[[b,a]] 𝔩̂)` where
//! `[[a,b]]` climbs from `a` to its floor vertex, runs right along the floor
//! and descends to `b`. The floor is read cyclically, so the path that wraps
//! around passes the last floor vertex `(σ+1)`, whose label is `b(σ)`. Inside
//! one tree both paths are the tree geodesic.

use std::collections::VecDeque;

use crate::bdg::ForwardParts;
use crate::bridge::Bridge;
use crate::error::{Error, Result};
use crate::forest::{WellLabeledForest, NO_PARENT};
use crate::labels::vertex_shifted_labels;
use crate::metrics::bfs::Adjacency;

/// Outcome of a bound check over a set of pairs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BoundReport {
    pub pairs: usize,
    pub violations: usize,
    /// Largest amount by which the bound fails (≤ 0 when it always holds).
    pub max_violation: i64,
}

impl BoundReport {
    fn record(&mut self, excess: i64) {
        if self.pairs == 0 || excess > self.max_violation {
            self.max_violation = excess;
        }
        self.pairs += 1;
        if excess > 0 {
            self.violations += 1;
        }
    }

    pub fn merge(self, other: BoundReport) -> BoundReport {
        if self.pairs == 0 {
            return other;
        }
        if other.pairs == 0 {
            return self;
        }
        BoundReport {
            pairs: self.pairs + other.pairs,
            violations: self.violations + other.violations,
            max_violation: self.max_violation.max(other.max_violation),
        }
    }

    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

/// Sparse table for range minima.
#[derive(Clone, Debug)]
pub struct RangeMin {
    levels: Vec<Vec<i32>>,
}

impl RangeMin {
    pub fn new(values: &[i32]) -> Self {
        let mut levels = vec![values.to_vec()];
        let mut width = 1;
        while 2 * width <= values.len() {
            let prev = levels.last().unwrap();
            let next: Vec<i32> = (0..=values.len() - 2 * width).map(|i| prev[i].min(prev[i + width])).collect();
            levels.push(next);
            width *= 2;
        }
        Self { levels }
    }

    pub fn len(&self) -> usize {
        self.levels[0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels[0].is_empty()
    }

    /// Minimum over `lo..=hi`.
    pub fn min(&self, lo: usize, hi: usize) -> i32 {
        let k = (usize::BITS - 1 - (hi - lo + 1).leading_zeros()) as usize;
        self.levels[k][lo].min(self.levels[k][hi + 1 - (1 << k)])
    }

    /// Minimum over the cyclic range from `lo` to `hi` inclusive.
    pub fn cyclic_min(&self, lo: usize, hi: usize) -> i32 {
        if lo <= hi {
            self.min(lo, hi)
        } else {
            self.min(lo, self.len() - 1).min(self.min(0, hi))
        }
    }
}

fn group_by_source(pairs: &[(u32, u32)]) -> Vec<(u32, u32)> {
    let mut sorted = pairs.to_vec();
    sorted.sort_unstable();
    sorted
}

/// Checks the label upper bound on corner pairs `(i, j)`.
pub fn check_distance_upper_bound(parts: &ForwardParts, pairs: &[(u32, u32)]) -> Result<BoundReport> {
    let values = &parts.shifted.values()[..parts.normalized.len()];
    let k = values.len();
    if let Some(&(i, j)) = pairs.iter().find(|&&(i, j)| i as usize >= k || j as usize >= k) {
        return Err(Error::IndexOutOfRange { index: i.max(j) as usize, len: k });
    }
    let rmq = RangeMin::new(values);
    let adj = Adjacency::new(parts.map.map().map());
    let mut dist = Vec::new();
    let mut queue = VecDeque::new();
    let mut current = u32::MAX;
    let mut report = BoundReport::default();
    for (i, j) in group_by_source(pairs) {
        let (i, j) = (i as usize, j as usize);
        let src = parts.facial[i];
        if src != current {
            adj.bfs_into(src, &mut dist, &mut queue);
            current = src;
        }
        let d = dist[parts.facial[j] as usize] as i64;
        let m = rmq.cyclic_min(i, j).max(rmq.cyclic_min(j, i)) as i64;
        let bound = values[i] as i64 + values[j] as i64 - 2 * m + 2;
        report.record(d - bound);
    }
    Ok(report)
}

/// Per-vertex data for the forest-path lower bound.
#[derive(Clone, Debug)]
pub struct CactusBound {
    hat: Vec<i32>,
    parent: Vec<u32>,
    depth: Vec<u32>,
    tree: Vec<u32>,
    chain_min: Vec<i32>,
    floor: RangeMin,
}

impl CactusBound {
    pub fn new(wlf: &WellLabeledForest, b: &Bridge) -> Result<Self> {
        let hat = vertex_shifted_labels(wlf, b)?;
        let shape = wlf.shape();
        let parent = shape.parents();
        let depth = shape.depths();
        let tree = shape.tree_of();
        let mut chain_min = hat.clone();
        for v in 0..parent.len() {
            if parent[v] != NO_PARENT {
                chain_min[v] = chain_min[v].min(chain_min[parent[v] as usize]);
            }
        }
        let floor = RangeMin::new(b.values());
        Ok(Self { hat, parent, depth, tree, chain_min, floor })
    }

    pub fn shifted_labels(&self) -> &[i32] {
        &self.hat
    }

    /// The lower bound for forest vertices `a` and `b`.
    pub fn bound(&self, a: u32, b: u32) -> i64 {
        let (a, b) = (a as usize, b as usize);
        let (ta, tb) = (self.tree[a] as usize, self.tree[b] as usize);
        let m = if ta == tb {
            let (mut x, mut y) = (a, b);
            let mut m = self.hat[x].min(self.hat[y]);
            while self.depth[x] > self.depth[y] {
                x = self.parent[x] as usize;
                m = m.min(self.hat[x]);
            }
            while self.depth[y] > self.depth[x] {
                y = self.parent[y] as usize;
                m = m.min(self.hat[y]);
            }
            while x != y {
                x = self.parent[x] as usize;
                y = self.parent[y] as usize;
                m = m.min(self.hat[x]).min(self.hat[y]);
            }
            m
        } else {
            let ends = self.chain_min[a].min(self.chain_min[b]);
            let right = self.floor.cyclic_min(ta, tb);
            let left = self.floor.cyclic_min(tb, ta);
            ends.min(right).max(ends.min(left))
        };
        self.hat[a] as i64 + self.hat[b] as i64 - 2 * m as i64
    }
}

/// Checks the forest-path lower bound on pairs of forest vertices.
pub fn check_cactus_lower_bound(
    parts: &ForwardParts,
    wlf: &WellLabeledForest,
    b: &Bridge,
    pairs: &[(u32, u32)],
) -> Result<BoundReport> {
    let cactus = CactusBound::new(wlf, b)?;
    let nv = cactus.hat.len();
    if let Some(&(x, y)) = pairs.iter().find(|&&(x, y)| x as usize >= nv || y as usize >= nv) {
        return Err(Error::IndexOutOfRange { index: x.max(y) as usize, len: nv });
    }
    let adj = Adjacency::new(parts.map.map().map());
    let mut dist = Vec::new();
    let mut queue = VecDeque::new();
    let mut current = u32::MAX;
    let mut report = BoundReport::default();
    for (x, y) in group_by_source(pairs) {
        if x != current {
            adj.bfs_into(x, &mut dist, &mut queue);
            current = x;
        }
        report.record(cactus.bound(x, y) - dist[y as usize] as i64);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bdg::forward_parts;
    use crate::forest::ForestShape;

    #[test]
    fn range_min_matches_naive() {
        let v = [5, 3, 8, -1, 4, 4, 0, 7, 2];
        let r = RangeMin::new(&v);
        for lo in 0..v.len() {
            for hi in 0..v.len() {
                let naive = if lo <= hi {
                    *v[lo..=hi].iter().min().unwrap()
                } else {
                    *v[lo..].iter().chain(&v[..=hi]).min().unwrap()
                };
                assert_eq!(r.cyclic_min(lo, hi), naive);
            }
        }
    }

    #[test]
    fn tiny_map_bounds() {
        let f = WellLabeledForest::new(ForestShape::new(&[vec![1, 0]]).unwrap(), vec![0, 1]).unwrap();
        let b = Bridge::zero(1).unwrap();
        let parts = forward_parts(&f, &b).unwrap();
        // corners 1 and 2 carry labels 1 and 0; their vertices are adjacent
        let r = check_distance_upper_bound(&parts, &[(1, 2)]).unwrap();
        assert_eq!(r.max_violation, 1 - 3);
        let r = check_distance_upper_bound(&parts, &[(1, 1)]).unwrap();
        assert_eq!(r.max_violation, -2);
        let r = check_cactus_lower_bound(&parts, &f, &b, &[(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        assert!(r.holds());
        assert_eq!(r.pairs, 4);
        assert!(check_distance_upper_bound(&parts, &[(0, 3)]).is_err());
    }
}
