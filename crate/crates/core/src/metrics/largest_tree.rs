//! Comparison between the map coded by a whole forest and the map coded by
//! its largest tree alone.
//!
//! The correspondence is the identity on the largest tree `𝔱` and on `v•`,
//! and sends every other vertex to the root `ρ` of `𝔱`. Its distortion is at
//! most `4·(max 𝔩̂ − min 𝔩̂ + 1)`, extrema taken over the forest minus the
//! non-root vertices of `𝔱`.

use std::collections::VecDeque;

use rand::seq::index::sample;
use rand_chacha::ChaCha20Rng;
use rand::SeedableRng;

use crate::bdg::forward;
use crate::bridge::Bridge;
use crate::error::{Error, Result};
use crate::forest::WellLabeledForest;
use crate::labels::vertex_shifted_labels;
use crate::map::PointedBoundaryMap;
use crate::metrics::bfs::Adjacency;

/// Maps up to this many vertices get an exact distortion.
pub const EXACT_DISTORTION_CAP: usize = 2000;

#[derive(Clone, Debug)]
pub struct TreeComparison {
    pub map_forest: PointedBoundaryMap,
    pub map_tree: PointedBoundaryMap,
    /// 0-based index of the largest tree.
    pub tree_index: usize,
    pub distortion: u32,
    pub exact: bool,
    /// Number of source vertices used when not exact.
    pub sources: usize,
    pub bound: i64,
}

impl TreeComparison {
    pub fn holds(&self) -> bool {
        self.distortion as i64 <= self.bound
    }
}

/// `max 𝔩̂ − min 𝔩̂ + 1` over the forest minus the non-root vertices of its
/// largest tree, with that tree's index.
pub fn outside_label_spread(wlf: &WellLabeledForest, b: &Bridge) -> Result<(usize, i64)> {
    let hat = vertex_shifted_labels(wlf, b)?;
    let (k, tree) = wlf.largest_tree();
    let start = wlf.shape().root(k);
    let end = start + tree.shape().vertex_count();
    let outside = hat.iter().enumerate().filter(|&(v, _)| v <= start || v >= end).map(|(_, &x)| x);
    let (lo, hi) = outside.fold((i32::MAX, i32::MIN), |(lo, hi), x| (lo.min(x), hi.max(x)));
    Ok((k, (hi - lo + 1) as i64))
}

/// Builds both maps and measures the correspondence distortion, exactly up
/// to [`EXACT_DISTORTION_CAP`] vertices and from `sources` random vertices
/// (drawn with `seed`) beyond.
pub fn largest_tree_comparison(
    wlf: &WellLabeledForest,
    b: &Bridge,
    bridge_bit: i32,
    sources: usize,
    seed: u64,
) -> Result<TreeComparison> {
    if wlf.edge_count() == 0 {
        return Err(Error::Empty("forest without tree edges"));
    }
    if bridge_bit != 0 && bridge_bit != -1 {
        return Err(Error::InvalidBridge(format!("tree bridge endpoint {bridge_bit} is not 0 or -1")));
    }
    let map_forest = forward(wlf, b)?;
    let (k, tree) = wlf.largest_tree();
    let map_tree = forward(&tree, &Bridge::new(vec![0, bridge_bit])?)?;
    let (_, spread) = outside_label_spread(wlf, b)?;

    let start = wlf.shape().root(k) as u32;
    let size = tree.shape().vertex_count() as u32;
    let nv = map_forest.map().vertex_count();
    let pointed_f = map_forest.pointed();
    let pointed_t = map_tree.pointed();
    let image: Vec<u32> = (0..nv as u32)
        .map(|v| {
            if v == pointed_f {
                pointed_t
            } else if v >= start && v < start + size {
                v - start
            } else {
                0
            }
        })
        .collect();

    let adj_f = Adjacency::new(map_forest.map().map());
    let adj_t = Adjacency::new(map_tree.map().map());
    let exact = nv <= EXACT_DISTORTION_CAP;
    let picked: Vec<u32> = if exact {
        (0..nv as u32).collect()
    } else {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        sample(&mut rng, nv, sources.min(nv)).into_iter().map(|v| v as u32).collect()
    };
    let (mut df, mut dt) = (Vec::new(), Vec::new());
    let mut queue = VecDeque::new();
    let mut worst = 0u32;
    for &a in &picked {
        adj_f.bfs_into(a, &mut df, &mut queue);
        adj_t.bfs_into(image[a as usize], &mut dt, &mut queue);
        for (bv, &d) in df.iter().enumerate() {
            worst = worst.max(d.abs_diff(dt[image[bv] as usize]));
        }
    }
    Ok(TreeComparison {
        map_forest,
        map_tree,
        tree_index: k,
        distortion: worst,
        exact,
        sources: picked.len(),
        bound: 4 * spread,
    })
}
