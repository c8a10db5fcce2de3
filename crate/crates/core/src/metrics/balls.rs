//! Ball volumes around a vertex and log-log growth fits.

use crate::error::{Error, Result};
use crate::lab::stats::linear_fit;
use crate::map::{BoundaryMap, PlanarMap};
use crate::metrics::bfs::{bfs_distances, UNREACHED};

/// `|B(center, r)|` for `r = 1..=r_max`.
pub fn ball_volume_profile(map: &PlanarMap, center: u32, r_max: u32) -> Result<Vec<u64>> {
    let p = bfs_distances(map, center)?;
    Ok(profile_from_dist(&p.dist, None, r_max))
}

/// Like [`ball_volume_profile`], counting only vertices on the external face.
pub fn boundary_ball_profile(map: &BoundaryMap, center: u32, r_max: u32) -> Result<Vec<u64>> {
    let p = bfs_distances(map.map(), center)?;
    Ok(profile_from_dist(&p.dist, Some(&map.on_boundary()), r_max))
}

/// Cumulative counts of `dist ≤ r` for `r = 1..=r_max`, optionally
/// restricted by a mask.
pub fn profile_from_dist(dist: &[u32], mask: Option<&[bool]>, r_max: u32) -> Vec<u64> {
    let mut hist = vec![0u64; r_max as usize + 1];
    for (v, &d) in dist.iter().enumerate() {
        if d == UNREACHED || d > r_max || mask.is_some_and(|m| !m[v]) {
            continue;
        }
        hist[d as usize] += 1;
    }
    let mut acc = hist[0];
    hist[1..]
        .iter()
        .map(|&h| {
            acc += h;
            acc
        })
        .collect()
}

/// Least-squares slope of `log y` against `log x`, with its standard error.
pub fn loglog_slope(x: &[f64], y: &[f64]) -> Result<(f64, f64)> {
    if x.len() != y.len() {
        return Err(Error::InvalidMap("slope fit needs equal-length inputs".into()));
    }
    let (lx, ly): (Vec<f64>, Vec<f64>) =
        x.iter().zip(y).filter(|(&a, &b)| a > 0.0 && b > 0.0).map(|(&a, &b)| (a.ln(), b.ln())).unzip();
    if lx.len() < 2 {
        return Err(Error::Empty("slope fit needs two positive points"));
    }
    linear_fit(&lx, &ly)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_law() {
        let x: Vec<f64> = (1..10).map(f64::from).collect();
        let y: Vec<f64> = x.iter().map(|r| 3.0 * r.powi(4)).collect();
        let (s, se) = loglog_slope(&x, &y).unwrap();
        assert!((s - 4.0).abs() < 1e-12);
        assert!(se < 1e-9);
    }

    #[test]
    fn profile_counts() {
        let dist = [0, 1, 1, 2, 3, UNREACHED];
        assert_eq!(profile_from_dist(&dist, None, 3), vec![3, 4, 5]);
        let mask = [true, false, true, true, false, true];
        assert_eq!(profile_from_dist(&dist, Some(&mask), 4), vec![2, 3, 3, 3]);
    }
}
