//! Distortion of a correspondence between two finite metric spaces.

use rand::Rng;

use crate::error::{Error, Result};

/// A relation between points `0..x_len` and `0..y_len` covering both.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Correspondence {
    pairs: Vec<(u32, u32)>,
}

impl Correspondence {
    pub fn new(pairs: Vec<(u32, u32)>, x_len: usize, y_len: usize) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::Empty("correspondence"));
        }
        let mut hit_x = vec![false; x_len];
        let mut hit_y = vec![false; y_len];
        for &(x, y) in &pairs {
            if x as usize >= x_len || y as usize >= y_len {
                return Err(Error::IndexOutOfRange { index: x.max(y) as usize, len: x_len.min(y_len) });
            }
            hit_x[x as usize] = true;
            hit_y[y as usize] = true;
        }
        if hit_x.contains(&false) || hit_y.contains(&false) {
            return Err(Error::InvalidMap("correspondence does not cover both spaces".into()));
        }
        Ok(Self { pairs })
    }

    /// The graph of a map `X → Y`; it must be onto.
    pub fn from_function(f: &[u32], y_len: usize) -> Result<Self> {
        Self::new(f.iter().enumerate().map(|(x, &y)| (x as u32, y)).collect(), f.len(), y_len)
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DistortionEstimate {
    pub value: f64,
    /// Number of pairs of pairs examined.
    pub examined: u64,
    pub exact: bool,
}

/// `sup |dx(x, x') − dy(y, y')|` over pairs of related pairs. With `sample =
/// Some((k, rng))` only `k` random pairs of pairs are examined, giving a
/// lower estimate.
pub fn correspondence_distortion<R: Rng + ?Sized>(
    dx: impl Fn(u32, u32) -> f64,
    dy: impl Fn(u32, u32) -> f64,
    r: &Correspondence,
    sample: Option<(u64, &mut R)>,
) -> DistortionEstimate {
    let p = r.pairs();
    let term = |a: usize, b: usize| (dx(p[a].0, p[b].0) - dy(p[a].1, p[b].1)).abs();
    match sample {
        None => {
            let mut best = 0.0f64;
            for a in 0..p.len() {
                for b in a..p.len() {
                    best = best.max(term(a, b));
                }
            }
            let m = p.len() as u64;
            DistortionEstimate { value: best, examined: m * (m + 1) / 2, exact: true }
        }
        Some((k, rng)) => {
            let mut best = 0.0f64;
            for _ in 0..k {
                best = best.max(term(rng.gen_range(0..p.len()), rng.gen_range(0..p.len())));
            }
            DistortionEstimate { value: best, examined: k, exact: false }
        }
    }
}
