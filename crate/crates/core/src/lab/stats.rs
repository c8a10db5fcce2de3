//! Summary statistics with compensated sums.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Neumaier-compensated running sum.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn merge(mut self, other: CompensatedSum) -> CompensatedSum {
        self.add(other.sum);
        self.add(other.carry);
        self
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::default();
        for x in iter {
            s.add(x);
        }
        s
    }
}

/// Moments and order statistics of a sample.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub count: usize,
    pub mean: f64,
    /// Unbiased sample variance.
    pub variance: f64,
    /// Standard error of the mean.
    pub std_error: f64,
    pub min: f64,
    pub q10: f64,
    pub q25: f64,
    pub median: f64,
    pub q75: f64,
    pub q90: f64,
    pub max: f64,
}

impl Summary {
    pub fn new(xs: &[f64]) -> Result<Self> {
        if xs.is_empty() {
            return Err(Error::Empty("sample"));
        }
        if xs.iter().any(|x| x.is_nan()) {
            return Err(Error::InvalidMap("NaN in sample".into()));
        }
        let count = xs.len();
        let mean = xs.iter().copied().collect::<CompensatedSum>().value() / count as f64;
        let variance = if count > 1 {
            xs.iter().map(|x| (x - mean).powi(2)).collect::<CompensatedSum>().value() / (count - 1) as f64
        } else {
            0.0
        };
        let mut sorted = xs.to_vec();
        sorted.sort_by(f64::total_cmp);
        let q = |p: f64| quantile_sorted(&sorted, p);
        Ok(Self {
            count,
            mean,
            variance,
            std_error: (variance / count as f64).sqrt(),
            min: sorted[0],
            q10: q(0.1),
            q25: q(0.25),
            median: q(0.5),
            q75: q(0.75),
            q90: q(0.9),
            max: sorted[count - 1],
        })
    }
}

/// Linearly interpolated quantile of sorted data.
pub fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * p.clamp(0.0, 1.0);
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Ordinary least-squares slope of `y` on `x`, with its standard error.
pub fn linear_fit(x: &[f64], y: &[f64]) -> Result<(f64, f64)> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch { forest: x.len(), bridge: y.len() });
    }
    if x.len() < 2 {
        return Err(Error::Empty("fit needs two points"));
    }
    let m = x.len() as f64;
    let mx = x.iter().copied().collect::<CompensatedSum>().value() / m;
    let my = y.iter().copied().collect::<CompensatedSum>().value() / m;
    let sxx = x.iter().map(|a| (a - mx).powi(2)).collect::<CompensatedSum>().value();
    let sxy = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).collect::<CompensatedSum>().value();
    if sxx == 0.0 {
        return Err(Error::Empty("fit needs distinct abscissae"));
    }
    let slope = sxy / sxx;
    let se = if x.len() > 2 {
        let rss = x.iter().zip(y).map(|(a, b)| (b - my - slope * (a - mx)).powi(2)).collect::<CompensatedSum>();
        (rss.value() / (m - 2.0) / sxx).sqrt()
    } else {
        0.0
    };
    Ok((slope, se))
}

/// Whether each entry is strictly below the previous one.
pub fn strictly_decreasing(xs: &[f64]) -> bool {
    xs.windows(2).all(|w| w[1] < w[0])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_sum_recovers_cancellation() {
        let xs = [1e16, 1.0, -1e16, 1.0];
        assert_eq!(xs.iter().copied().collect::<CompensatedSum>().value(), 2.0);
        assert_ne!(xs.iter().sum::<f64>(), 2.0);
    }

    #[test]
    fn merge_order_does_not_matter_here() {
        let a: CompensatedSum = [0.1, 0.2, 0.3].into_iter().collect();
        let b: CompensatedSum = [1e-17, 5.0].into_iter().collect();
        assert_eq!(a.merge(b).value(), b.merge(a).value());
    }

    #[test]
    fn summary_of_small_sample() {
        let s = Summary::new(&[3.0, 1.0, 2.0, 4.0]).unwrap();
        assert_eq!(s.mean, 2.5);
        assert!((s.variance - 5.0 / 3.0).abs() < 1e-12);
        assert_eq!(s.median, 2.5);
        assert_eq!((s.min, s.max), (1.0, 4.0));
        assert_eq!(s.q25, 1.75);
        assert!(Summary::new(&[]).is_err());
    }

    #[test]
    fn fit_exact_line() {
        let x = [1.0, 2.0, 3.0, 4.0];
        let y: Vec<f64> = x.iter().map(|t| 3.0 * t - 1.0).collect();
        let (s, se) = linear_fit(&x, &y).unwrap();
        assert!((s - 3.0).abs() < 1e-12 && se < 1e-12);
    }
}
