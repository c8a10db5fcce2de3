//! Contour, label and bridge processes rescaled to the unit interval.

use serde::Serialize;

use crate::bridge::Bridge;
use crate::error::{Error, Result};
use crate::forest::WellLabeledForest;
use crate::labels::ShiftedLabelSequence;

/// Label scaling constant `γ = (8/9)^{1/4}`.
pub fn gamma() -> f64 {
    (8.0f64 / 9.0).powf(0.25)
}

/// Default number of grid intervals on `[0, 1]`.
pub const DEFAULT_GRID: usize = 1 << 10;

/// Linear interpolation of integer samples at real time `t ∈ [0, len−1]`.
pub fn interpolate(values: &[i32], t: f64) -> f64 {
    let last = values.len() - 1;
    let t = t.clamp(0.0, last as f64);
    let i = (t.floor() as usize).min(last);
    if i == last {
        return values[last] as f64;
    }
    let frac = t - i as f64;
    values[i] as f64 + frac * (values[i + 1] - values[i]) as f64
}

/// Processes on the grid `s_j = j/m`, `j = 0..=m`.
///
/// `c`, `l` and `shifted` are read at times `(2n+σ−1)s` and scaled by
/// `√(2n)`, `γn^{1/4}` and `γn^{1/4}`. `bridge` holds `𝔟_(n)(σ_(n)s)`, the
/// bridge read at time `σs` over `γn^{1/4}`. `c_inf` and `l_inf` are read at
/// times `(2n+σ)s` and scaled by `σ` and `√σ`.
#[derive(Clone, Debug, Serialize)]
pub struct RescaledProcesses {
    pub n: usize,
    pub sigma: usize,
    pub grid: Vec<f64>,
    pub c: Vec<f64>,
    pub l: Vec<f64>,
    pub bridge: Vec<f64>,
    pub shifted: Vec<f64>,
    pub c_inf: Vec<f64>,
    pub l_inf: Vec<f64>,
}

impl RescaledProcesses {
    /// `σ_(n) = σ/√(2n)`.
    pub fn sigma_scaled(&self) -> f64 {
        self.sigma as f64 / (2.0 * self.n as f64).sqrt()
    }

    pub fn label_scale(&self) -> f64 {
        gamma() * (self.n as f64).powf(0.25)
    }
}

pub fn rescale(wlf: &WellLabeledForest, b: &Bridge, grid: usize) -> Result<RescaledProcesses> {
    let (n, sigma) = (wlf.edge_count(), wlf.tree_count());
    if n == 0 {
        return Err(Error::NonPositive("n"));
    }
    if grid == 0 {
        return Err(Error::NonPositive("grid"));
    }
    let shifted = ShiftedLabelSequence::new(wlf, b)?;
    let cp = wlf.contour_pair();
    let k = cp.len() - 1;
    let ls = gamma() * (n as f64).powf(0.25);
    let cs = (2.0 * n as f64).sqrt();
    let grid: Vec<f64> = (0..=grid).map(|j| j as f64 / grid as f64).collect();
    let at = |v: &[i32], len: usize, scale: f64| -> Vec<f64> {
        grid.iter().map(|&s| interpolate(v, len as f64 * s) / scale).collect()
    };
    Ok(RescaledProcesses {
        n,
        sigma,
        c: at(&cp.c, k - 1, cs),
        l: at(&cp.l, k - 1, ls),
        bridge: at(b.values(), sigma, ls),
        shifted: at(shifted.values(), k - 1, ls),
        c_inf: at(&cp.c, k, sigma as f64),
        l_inf: at(&cp.l, k, (sigma as f64).sqrt()),
        grid,
    })
}
