//! Labels shifted tree by tree by a bridge, and the successor function on
//! facial indices.

use crate::bridge::Bridge;
use crate::error::{Error, Result};
use crate::forest::WellLabeledForest;

/// Marker returned by [`successors`] for arcs ending at the pointed vertex.
pub const TO_POINTED: u32 = u32::MAX;

/// `𝔏(i) = L(i) + b(σ − min_{[0,i]} C)` for `i = 0..=2n+σ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftedLabelSequence {
    values: Vec<i32>,
    min_value: i32,
}

impl ShiftedLabelSequence {
    pub fn new(wlf: &WellLabeledForest, b: &Bridge) -> Result<Self> {
        let sigma = wlf.tree_count();
        if b.sigma() != sigma {
            return Err(Error::DimensionMismatch { forest: sigma, bridge: b.sigma() });
        }
        let cp = wlf.contour_pair();
        let mut m = i32::MAX;
        let values: Vec<i32> = cp
            .c
            .iter()
            .zip(&cp.l)
            .map(|(&c, &l)| {
                m = m.min(c);
                l + b.get((sigma as i32 - m) as usize)
            })
            .collect();
        let min_value = values[..values.len() - 1].iter().copied().min().unwrap_or(0);
        Ok(Self { values, min_value })
    }

    /// All `2n+σ+1` values, the last one belonging to the floor vertex `(σ+1)`.
    pub fn values(&self) -> &[i32] {
        &self.values
    }

    /// Minimum over the indices `0..2n+σ`, i.e. over the vertices that
    /// survive in the map; the floor vertex `(σ+1)` is left out.
    pub fn min_value(&self) -> i32 {
        self.min_value
    }

    /// `𝔩̃ = 𝔏 − min 𝔏 + 1` on the indices `0..2n+σ` (the last index is
    /// dropped).
    pub fn normalized(&self) -> Vec<u32> {
        let k = self.values.len() - 1;
        self.values[..k].iter().map(|&x| (x - self.min_value + 1) as u32).collect()
    }
}

/// Per-vertex shifted labels `𝔩̂(u) = 𝔩(u) + b(𝔞(u) − 1)`, indexed like the
/// forest's vertices.
pub fn vertex_shifted_labels(wlf: &WellLabeledForest, b: &Bridge) -> Result<Vec<i32>> {
    if b.sigma() != wlf.tree_count() {
        return Err(Error::DimensionMismatch { forest: wlf.tree_count(), bridge: b.sigma() });
    }
    let tree = wlf.shape().tree_of();
    Ok(wlf.labels().iter().zip(&tree).map(|(&l, &t)| l + b.get(t as usize)).collect())
}

/// Successor of corner `i` for normalized labels `lt` (length `2n+σ`):
/// the first `k` after `i`, cyclically, with `lt[k] = lt[i] − 1`. `None`
/// stands for the pointed vertex.
pub fn successor(lt: &[u32], i: usize) -> Result<Option<usize>> {
    if i >= lt.len() {
        return Err(Error::IndexOutOfRange { index: i, len: lt.len() });
    }
    let want = lt[i].wrapping_sub(1);
    Ok((1..lt.len()).map(|d| (i + d) % lt.len()).find(|&k| lt[k] == want))
}

/// [`successor`] for every corner at once, in linear time. Entries equal to
/// [`TO_POINTED`] mark arcs to the pointed vertex.
pub fn successors(lt: &[u32]) -> Vec<u32> {
    let max = lt.iter().copied().max().unwrap_or(0) as usize;
    let mut first = vec![TO_POINTED; max + 1];
    for (i, &v) in lt.iter().enumerate().rev() {
        first[v as usize] = i as u32;
    }
    let mut next_seen = first.clone();
    let mut out = vec![TO_POINTED; lt.len()];
    for (i, &v) in lt.iter().enumerate().rev() {
        if v > 1 {
            out[i] = next_seen[v as usize - 1];
        }
        next_seen[v as usize] = i as u32;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::ForestShape;

    fn one_edge(c: i32) -> WellLabeledForest {
        WellLabeledForest::new(ForestShape::new(&[vec![1, 0]]).unwrap(), vec![0, c]).unwrap()
    }

    #[test]
    fn shifted_label_examples() {
        let f = one_edge(1);
        let s = ShiftedLabelSequence::new(&f, &Bridge::new(vec![0, 0]).unwrap()).unwrap();
        assert_eq!(s.values(), &[0, 1, 0, 0]);
        assert_eq!(s.normalized(), vec![1, 2, 1]);
        let s = ShiftedLabelSequence::new(&f, &Bridge::new(vec![0, -1]).unwrap()).unwrap();
        assert_eq!(s.values(), &[0, 1, 0, -1]);
        assert_eq!(s.min_value(), 0);
    }

    #[test]
    fn zero_bridge_shifts_nothing() {
        for c in -1..=1 {
            let f = one_edge(c);
            let s = ShiftedLabelSequence::new(&f, &Bridge::zero(1).unwrap()).unwrap();
            assert_eq!(s.values(), &f.contour_pair().l[..]);
        }
    }

    #[test]
    fn dimension_mismatch() {
        let f = one_edge(0);
        assert!(matches!(
            ShiftedLabelSequence::new(&f, &Bridge::zero(2).unwrap()),
            Err(Error::DimensionMismatch { forest: 1, bridge: 2 })
        ));
    }

    #[test]
    fn agrees_with_vertex_formula() {
        let f = WellLabeledForest::new(
            ForestShape::new(&[vec![2, 0, 1, 0], vec![0], vec![1, 0]]).unwrap(),
            vec![0, 1, -1, 0, 0, 0, -1],
        )
        .unwrap();
        let b = Bridge::new(vec![0, 2, 1, 0]).unwrap();
        let s = ShiftedLabelSequence::new(&f, &b).unwrap();
        let per_vertex = vertex_shifted_labels(&f, &b).unwrap();
        let facial = f.shape().facial_sequence();
        for (i, &v) in facial[..facial.len() - 1].iter().enumerate() {
            assert_eq!(s.values()[i], per_vertex[v as usize]);
        }
        assert_eq!(*s.values().last().unwrap(), b.endpoint());
    }

    #[test]
    fn successor_examples() {
        let lt = [1, 2, 1];
        assert_eq!(successor(&lt, 0).unwrap(), None);
        assert_eq!(successor(&lt, 1).unwrap(), Some(2));
        assert_eq!(successor(&lt, 2).unwrap(), None);
        assert!(successor(&lt, 3).is_err());
        assert_eq!(successors(&lt), vec![TO_POINTED, 2, TO_POINTED]);
    }

    #[test]
    fn fast_successors_match_definition() {
        let lt = [3, 2, 3, 4, 3, 2, 1, 2, 3, 2, 1, 1, 2];
        let fast = successors(&lt);
        for i in 0..lt.len() {
            let slow = successor(&lt, i).unwrap().map_or(TO_POINTED, |k| k as u32);
            assert_eq!(fast[i], slow, "corner {i}");
        }
    }
}
