//! The pseudo-metric `δ(s,t) = X(s) + X(t) − 2·max(min_[s,t] X, min_[t,s] X)`
//! of a piecewise linear path on the circle `[0, 1]`.

use crate::error::{Error, Result};
use crate::metrics::bounds::RangeMin;

/// A lattice path `x_0..x_m` on `[0, 1]`, interpolated linearly and scaled.
#[derive(Clone, Debug)]
pub struct BridgeMetric {
    values: Vec<i32>,
    rmq: RangeMin,
    scale: f64,
}

impl BridgeMetric {
    pub fn new(values: Vec<i32>, scale: f64) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::Empty("path"));
        }
        if !(scale > 0.0) {
            return Err(Error::NonPositive("scale"));
        }
        let rmq = RangeMin::new(&values);
        Ok(Self { values, rmq, scale })
    }

    fn steps(&self) -> f64 {
        (self.values.len() - 1) as f64
    }

    /// Path value at `s ∈ [0, 1]`.
    pub fn value(&self, s: f64) -> f64 {
        super::rescale::interpolate(&self.values, s * self.steps()) / self.scale
    }

    /// Minimum over `[s, t]` for `s ≤ t`.
    fn min_on(&self, s: f64, t: f64) -> f64 {
        let ends = self.value(s).min(self.value(t));
        let lo = (s * self.steps()).ceil() as usize;
        let hi = (t * self.steps()).floor() as usize;
        if lo <= hi {
            ends.min(self.rmq.min(lo, hi) as f64 / self.scale)
        } else {
            ends
        }
    }

    pub fn delta(&self, s: f64, t: f64) -> f64 {
        let (a, b) = if s <= t { (s, t) } else { (t, s) };
        let inner = self.min_on(a, b);
        let outer = self.min_on(b, 1.0).min(self.min_on(0.0, a));
        self.value(s) + self.value(t) - 2.0 * inner.max(outer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha20Rng;

    #[test]
    fn small_path() {
        let m = BridgeMetric::new(vec![0, 2, -1, 1, 0], 1.0).unwrap();
        assert_eq!(m.delta(0.3, 0.3), 0.0);
        // s = 1/4 (value 2) and t = 3/4 (value 1): the arc through 1/2 dips to
        // −1, the other arc to 0
        assert_eq!(m.delta(0.25, 0.75), 3.0);
        assert_eq!(m.delta(0.75, 0.25), 3.0);
    }

    #[test]
    fn pseudo_metric_on_random_triples() {
        let mut rng = ChaCha20Rng::seed_from_u64(9);
        let values: Vec<i32> = (0..200).scan(0, |x, _| {
            *x += rng.gen_range(-1..=1);
            Some(*x)
        }).collect();
        let m = BridgeMetric::new(values, 3.0).unwrap();
        for _ in 0..5000 {
            let (a, b, c): (f64, f64, f64) = (rng.gen(), rng.gen(), rng.gen());
            assert!(m.delta(a, b) >= -1e-12);
            assert!((m.delta(a, b) - m.delta(b, a)).abs() < 1e-12);
            assert!(m.delta(a, c) <= m.delta(a, b) + m.delta(b, c) + 1e-9);
        }
    }
}
