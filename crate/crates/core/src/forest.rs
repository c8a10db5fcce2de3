//! Forests, well-labeled forests and their contour pairs.
//!
//! A forest with `σ` trees and `n` tree edges is stored as one flat preorder
//! child-count sequence: tree 1 in preorder, then tree 2, and so on. Vertex
//! ids are the positions in that sequence, which is also the order in which
//! the facial sequence first visits the vertices. The extra floor vertex
//! `(σ+1)` is never stored; it appears in facial sequences as the id
//! [`ForestShape::phantom`] (`= n + σ`).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Marker for "no parent" in [`ForestShape::parents`].
pub const NO_PARENT: u32 = u32::MAX;

/// Shape of a forest: `σ ≥ 1` rooted ordered trees.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ForestShape {
    child_counts: Vec<u32>,
    roots: Vec<u32>,
}

impl ForestShape {
    /// Builds a shape from one preorder child-count sequence per tree.
    pub fn new(trees: &[Vec<u32>]) -> Result<Self> {
        if trees.is_empty() {
            return Err(Error::InvalidForest("a forest needs at least one tree".into()));
        }
        let mut child_counts = Vec::with_capacity(trees.iter().map(Vec::len).sum());
        let mut roots = Vec::with_capacity(trees.len());
        for (k, tree) in trees.iter().enumerate() {
            check_lukasiewicz(tree).map_err(|msg| Error::InvalidForest(format!("tree {}: {msg}", k + 1)))?;
            roots.push(child_counts.len() as u32);
            child_counts.extend_from_slice(tree);
        }
        Ok(Self { child_counts, roots })
    }

    /// Builds a shape from a flat preorder child-count sequence covering all
    /// trees one after the other. Tree boundaries are recovered from the
    /// counts themselves.
    pub fn from_flat_preorder(child_counts: Vec<u32>) -> Result<Self> {
        if child_counts.is_empty() {
            return Err(Error::InvalidForest("a forest needs at least one tree".into()));
        }
        let mut roots = Vec::new();
        let mut open: i64 = 0;
        for (v, &c) in child_counts.iter().enumerate() {
            if open == 0 {
                roots.push(v as u32);
                open = 1;
            }
            open += c as i64 - 1;
        }
        if open != 0 {
            return Err(Error::InvalidForest("last tree is incomplete".into()));
        }
        Ok(Self { child_counts, roots })
    }

    /// The forest made of `sigma` isolated floor vertices.
    pub fn trivial(sigma: usize) -> Result<Self> {
        if sigma == 0 {
            return Err(Error::NonPositive("number of trees"));
        }
        Ok(Self { child_counts: vec![0; sigma], roots: (0..sigma as u32).collect() })
    }

    pub fn tree_count(&self) -> usize {
        self.roots.len()
    }

    pub fn edge_count(&self) -> usize {
        self.child_counts.len() - self.roots.len()
    }

    /// Number of stored vertices, `n + σ`.
    pub fn vertex_count(&self) -> usize {
        self.child_counts.len()
    }

    /// Id used for the floor vertex `(σ+1)` in facial sequences.
    pub fn phantom(&self) -> usize {
        self.child_counts.len()
    }

    /// Length `2n + σ` of the facial walk (number of steps).
    pub fn walk_len(&self) -> usize {
        2 * self.edge_count() + self.tree_count()
    }

    pub fn child_counts(&self) -> &[u32] {
        &self.child_counts
    }

    /// Vertex id of the root of tree `k` (0-based).
    pub fn root(&self, k: usize) -> usize {
        self.roots[k] as usize
    }

    pub fn roots(&self) -> &[u32] {
        &self.roots
    }

    /// Preorder child counts of tree `k` (0-based).
    pub fn tree(&self, k: usize) -> &[u32] {
        let start = self.roots[k] as usize;
        let end = self.roots.get(k + 1).map_or(self.child_counts.len(), |&r| r as usize);
        &self.child_counts[start..end]
    }

    pub fn trees(&self) -> Vec<Vec<u32>> {
        (0..self.tree_count()).map(|k| self.tree(k).to_vec()).collect()
    }

    /// Number of vertices of each tree.
    pub fn tree_sizes(&self) -> Vec<usize> {
        (0..self.tree_count()).map(|k| self.tree(k).len()).collect()
    }

    /// Parent of every vertex, [`NO_PARENT`] for floor vertices.
    pub fn parents(&self) -> Vec<u32> {
        let mut parent = vec![NO_PARENT; self.child_counts.len()];
        let mut stack: Vec<(u32, u32)> = Vec::new();
        for (v, &c) in self.child_counts.iter().enumerate() {
            while let Some(top) = stack.last_mut() {
                if top.1 == 0 {
                    stack.pop();
                } else {
                    top.1 -= 1;
                    parent[v] = top.0;
                    break;
                }
            }
            stack.push((v as u32, c));
        }
        parent
    }

    /// Tree index (0-based) of every vertex; the oldest ancestor is
    /// `tree_of[v] + 1` in 1-based floor numbering.
    pub fn tree_of(&self) -> Vec<u32> {
        let mut out = vec![0u32; self.child_counts.len()];
        for k in 0..self.tree_count() {
            let start = self.roots[k] as usize;
            let end = self.roots.get(k + 1).map_or(self.child_counts.len(), |&r| r as usize);
            out[start..end].fill(k as u32);
        }
        out
    }

    /// Distance to the floor (0 for roots).
    pub fn depths(&self) -> Vec<u32> {
        let parent = self.parents();
        let mut depth = vec![0u32; parent.len()];
        for v in 0..parent.len() {
            if parent[v] != NO_PARENT {
                depth[v] = depth[parent[v] as usize] + 1;
            }
        }
        depth
    }

    /// The facial sequence `f(0), …, f(2n+σ)`: depth-first corner walk,
    /// stepping along the floor once a tree is exhausted. The last entry is
    /// [`Self::phantom`].
    pub fn facial_sequence(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.walk_len() + 1);
        let mut stack: Vec<(u32, u32)> = Vec::new();
        for k in 0..self.tree_count() {
            let root = self.roots[k];
            let mut next_id = root + 1;
            out.push(root);
            stack.push((root, self.child_counts[root as usize]));
            while let Some(top) = stack.last_mut() {
                if top.1 > 0 {
                    top.1 -= 1;
                    let child = next_id;
                    next_id += 1;
                    out.push(child);
                    stack.push((child, self.child_counts[child as usize]));
                } else {
                    stack.pop();
                    if let Some(parent) = stack.last() {
                        out.push(parent.0);
                    }
                }
            }
        }
        out.push(self.phantom() as u32);
        out
    }

    /// Contour function `C(i) = ‖f(i)‖ + σ − a(f(i))` at integer times.
    pub fn contour(&self) -> Vec<i32> {
        let sigma = self.tree_count() as i32;
        let depth = self.depths();
        let tree = self.tree_of();
        let phantom = self.phantom() as u32;
        self.facial_sequence()
            .into_iter()
            .map(|v| {
                if v == phantom {
                    0
                } else {
                    depth[v as usize] as i32 + sigma - tree[v as usize] as i32
                }
            })
            .collect()
    }
}

fn check_lukasiewicz(tree: &[u32]) -> std::result::Result<(), String> {
    if tree.is_empty() {
        return Err("empty child-count sequence".into());
    }
    let mut open: i64 = 1;
    for (i, &c) in tree.iter().enumerate() {
        open += c as i64 - 1;
        if open == 0 && i + 1 != tree.len() {
            return Err(format!("sequence exhausted at position {i}"));
        }
    }
    if open != 0 {
        return Err(format!("{open} vertices missing"));
    }
    Ok(())
}

/// A forest together with integer labels that vanish on the floor and move
/// by at most one along each tree edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WellLabeledForest {
    shape: ForestShape,
    labels: Vec<i32>,
}

impl WellLabeledForest {
    pub fn new(shape: ForestShape, labels: Vec<i32>) -> Result<Self> {
        if labels.len() != shape.vertex_count() {
            return Err(Error::InvalidForest(format!(
                "{} labels for {} vertices",
                labels.len(),
                shape.vertex_count()
            )));
        }
        for &r in shape.roots() {
            if labels[r as usize] != 0 {
                return Err(Error::InvalidForest(format!("floor vertex {r} has label {}", labels[r as usize])));
            }
        }
        for (v, &p) in shape.parents().iter().enumerate() {
            if p != NO_PARENT && (labels[v] - labels[p as usize]).abs() > 1 {
                return Err(Error::InvalidForest(format!("label jump on edge {p}-{v}")));
            }
        }
        Ok(Self { shape, labels })
    }

    /// The unique well-labeled forest with no tree edges.
    pub fn trivial(sigma: usize) -> Result<Self> {
        Ok(Self { shape: ForestShape::trivial(sigma)?, labels: vec![0; sigma] })
    }

    pub(crate) fn from_parts_unchecked(shape: ForestShape, labels: Vec<i32>) -> Self {
        debug_assert_eq!(shape.vertex_count(), labels.len());
        Self { shape, labels }
    }

    pub fn shape(&self) -> &ForestShape {
        &self.shape
    }

    pub fn labels(&self) -> &[i32] {
        &self.labels
    }

    pub fn tree_count(&self) -> usize {
        self.shape.tree_count()
    }

    pub fn edge_count(&self) -> usize {
        self.shape.edge_count()
    }

    pub fn contour_pair(&self) -> ContourPair {
        let facial = self.shape.facial_sequence();
        let phantom = self.shape.phantom() as u32;
        let l = facial.iter().map(|&v| if v == phantom { 0 } else { self.labels[v as usize] }).collect();
        ContourPair { c: self.shape.contour(), l }
    }

    /// The largest tree (first one among ties) as a one-tree forest, with
    /// its tree index.
    pub fn largest_tree(&self) -> (usize, WellLabeledForest) {
        let sizes = self.shape.tree_sizes();
        let k = (0..sizes.len()).fold(0, |best, k| if sizes[k] > sizes[best] { k } else { best });
        let start = self.shape.root(k);
        let counts = self.shape.tree(k).to_vec();
        let len = counts.len();
        let shape = ForestShape { child_counts: counts, roots: vec![0] };
        (k, WellLabeledForest { shape, labels: self.labels[start..start + len].to_vec() })
    }
}

/// The pair `(C, L)` of contour and spatial contour sequences at integer
/// times `0..=2n+σ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContourPair {
    pub c: Vec<i32>,
    pub l: Vec<i32>,
}

impl ContourPair {
    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    pub fn sigma(&self) -> usize {
        self.c.first().copied().unwrap_or(0).max(0) as usize
    }

    /// `min_{[0,i]} C` for every `i`.
    pub fn running_min(&self) -> Vec<i32> {
        let mut m = i32::MAX;
        self.c
            .iter()
            .map(|&x| {
                m = m.min(x);
                m
            })
            .collect()
    }

    /// Oldest ancestor (1-based tree index) of `f(i)`, read off the running
    /// minimum of `C`. Index `2n+σ` yields `σ+1`.
    pub fn oldest_ancestor(&self, i: usize) -> Result<usize> {
        if i >= self.c.len() {
            return Err(Error::IndexOutOfRange { index: i, len: self.c.len() });
        }
        let m = self.c[..=i].iter().copied().min().unwrap_or(0);
        Ok((self.c[0] - m + 1) as usize)
    }

    /// Rebuilds the well-labeled forest coded by this pair.
    pub fn to_forest(&self) -> Result<WellLabeledForest> {
        let bad = |msg: String| Error::InvalidContour(msg);
        if self.c.len() != self.l.len() || self.c.is_empty() {
            return Err(bad("C and L must be nonempty and of equal length".into()));
        }
        let sigma = self.c[0];
        if sigma < 1 {
            return Err(bad(format!("C(0) = {sigma} must be positive")));
        }
        if *self.c.last().unwrap() != 0 {
            return Err(bad("C must end at 0".into()));
        }
        let mut counts: Vec<u32> = vec![0];
        let mut labels: Vec<i32> = vec![self.l[0]];
        let mut stack: Vec<usize> = vec![0];
        let mut floor = sigma;
        let steps = self.c.len() - 1;
        for i in 0..steps {
            let (c0, c1) = (self.c[i], self.c[i + 1]);
            let cur = *stack.last().ok_or_else(|| bad("walk left the forest".into()))?;
            match c1 - c0 {
                1 => {
                    counts[cur] += 1;
                    let id = counts.len();
                    counts.push(0);
                    labels.push(self.l[i + 1]);
                    stack.push(id);
                }
                -1 if c0 == floor => {
                    floor -= 1;
                    stack.clear();
                    if i + 1 < steps {
                        let id = counts.len();
                        counts.push(0);
                        labels.push(self.l[i + 1]);
                        stack.push(id);
                    } else if c1 != 0 {
                        return Err(bad("walk ended away from the last floor vertex".into()));
                    }
                }
                -1 => {
                    stack.pop();
                    let back = *stack.last().ok_or_else(|| bad("walk left the forest".into()))?;
                    if labels[back] != self.l[i + 1] {
                        return Err(bad(format!("L disagrees with first visit at time {}", i + 1)));
                    }
                }
                d => return Err(bad(format!("C step {d} at time {i}"))),
            }
            if c1 <= 0 && i + 1 < steps {
                return Err(bad(format!("C reaches 0 early at time {}", i + 1)));
            }
        }
        if self.l[steps] != 0 {
            return Err(bad("L must vanish at the last floor vertex".into()));
        }
        let shape = ForestShape::from_flat_preorder(counts)?;
        if shape.tree_count() != sigma as usize {
            return Err(bad(format!("{} trees decoded, C(0) = {sigma}", shape.tree_count())));
        }
        WellLabeledForest::new(shape, labels).map_err(|e| bad(e.to_string()))
    }
}

/// JSON form of a forest/bridge encoding: `child_counts` (one array per
/// tree), `labels` (flat, preorder) and `bridge`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EncodingJson {
    pub child_counts: Vec<Vec<u32>>,
    pub labels: Vec<i32>,
    pub bridge: Vec<i32>,
}

impl EncodingJson {
    pub fn from_parts(wlf: &WellLabeledForest, bridge: &crate::bridge::Bridge) -> Self {
        Self { child_counts: wlf.shape().trees(), labels: wlf.labels().to_vec(), bridge: bridge.values().to_vec() }
    }

    pub fn into_parts(self) -> Result<(WellLabeledForest, crate::bridge::Bridge)> {
        let shape = ForestShape::new(&self.child_counts)?;
        let wlf = WellLabeledForest::new(shape, self.labels)?;
        let bridge = crate::bridge::Bridge::new(self.bridge)?;
        if bridge.sigma() != wlf.tree_count() {
            return Err(Error::DimensionMismatch { forest: wlf.tree_count(), bridge: bridge.sigma() });
        }
        Ok((wlf, bridge))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_edge(label: i32) -> WellLabeledForest {
        WellLabeledForest::new(ForestShape::new(&[vec![1, 0]]).unwrap(), vec![0, label]).unwrap()
    }

    #[test]
    fn facial_sequence_single_edge() {
        let shape = ForestShape::new(&[vec![1, 0]]).unwrap();
        // (1), (1,1), (1), phantom
        assert_eq!(shape.facial_sequence(), vec![0, 1, 0, 2]);
    }

    #[test]
    fn facial_sequence_bare_floor() {
        let shape = ForestShape::trivial(2).unwrap();
        assert_eq!(shape.facial_sequence(), vec![0, 1, 2]);
    }

    #[test]
    fn facial_sequence_length_seven_trees_twenty_edges() {
        // sizes chosen arbitrarily; only the length is pinned
        let trees = vec![
            vec![2, 1, 0, 1, 1, 0],
            vec![0],
            vec![3, 0, 1, 0, 1, 2, 0, 0],
            vec![1, 0],
            vec![0],
            vec![2, 2, 0, 0, 1, 1, 0],
            vec![1, 0],
        ];
        let shape = ForestShape::new(&trees).unwrap();
        assert_eq!(shape.tree_count(), 7);
        assert_eq!(shape.edge_count(), 20);
        assert_eq!(shape.facial_sequence().len(), 48);
    }

    #[test]
    fn contour_pair_examples() {
        for c in [-1, 0, 1] {
            let cp = one_edge(c).contour_pair();
            assert_eq!(cp.c, vec![1, 2, 1, 0]);
            assert_eq!(cp.l, vec![0, c, 0, 0]);
        }
        let cp = WellLabeledForest::trivial(3).unwrap().contour_pair();
        assert_eq!(cp.c, vec![3, 2, 1, 0]);
        assert_eq!(cp.l, vec![0, 0, 0, 0]);
    }

    #[test]
    fn oldest_ancestor_examples() {
        let cp = one_edge(1).contour_pair();
        assert_eq!(cp.oldest_ancestor(1).unwrap(), 1);
        assert_eq!(cp.oldest_ancestor(0).unwrap(), 1);
        let cp = WellLabeledForest::trivial(3).unwrap().contour_pair();
        assert_eq!(cp.oldest_ancestor(2).unwrap(), 3);
        assert_eq!(cp.oldest_ancestor(0).unwrap(), 1);
        assert!(matches!(cp.oldest_ancestor(4), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn contour_roundtrip_small() {
        let wlf = WellLabeledForest::new(
            ForestShape::new(&[vec![2, 0, 1, 0], vec![0], vec![1, 0]]).unwrap(),
            vec![0, 1, -1, 0, 0, 0, -1],
        )
        .unwrap();
        assert_eq!(wlf.contour_pair().to_forest().unwrap(), wlf);
    }

    #[test]
    fn rejects_bad_forests() {
        assert!(ForestShape::new(&[]).is_err());
        assert!(ForestShape::new(&[vec![1]]).is_err());
        assert!(ForestShape::new(&[vec![0, 0]]).is_err());
        let shape = ForestShape::new(&[vec![1, 1, 0]]).unwrap();
        assert!(WellLabeledForest::new(shape.clone(), vec![0, 1, 3]).is_err());
        assert!(WellLabeledForest::new(shape.clone(), vec![1, 1, 1]).is_err());
        assert!(WellLabeledForest::new(shape, vec![0, 1]).is_err());
    }

    #[test]
    fn parents_and_depths() {
        let shape = ForestShape::new(&[vec![2, 1, 0, 0], vec![0]]).unwrap();
        assert_eq!(shape.parents(), vec![NO_PARENT, 0, 1, 0, NO_PARENT]);
        assert_eq!(shape.depths(), vec![0, 1, 2, 1, 0]);
        assert_eq!(shape.tree_of(), vec![0, 0, 0, 0, 1]);
    }
}
