//! Vervaat's transformation of a bridge-like path into an excursion.

use crate::error::{Error, Result};

/// Subtracts the linear drift `i·x_m/m` so that both ends vanish.
pub fn remove_drift(path: &[f64]) -> Result<Vec<f64>> {
    if path.len() < 2 {
        return Err(Error::Empty("path"));
    }
    let m = (path.len() - 1) as f64;
    let (start, drift) = (path[0], path[path.len() - 1] - path[0]);
    let mut out: Vec<f64> = path.iter().enumerate().map(|(i, &x)| x - start - drift * i as f64 / m).collect();
    let last = out.len() - 1;
    out[last] = 0.0;
    Ok(out)
}

/// Reads `x_0..x_{m−1}` cyclically from the first argmin `τ` and rebases:
/// `e_i = x_{(τ+i) mod m} − x_τ` for `i = 0..=m`. The input must have
/// equal endpoints.
pub fn vervaat(path: &[f64]) -> Result<Vec<f64>> {
    if path.len() < 2 {
        return Err(Error::Empty("path"));
    }
    let m = path.len() - 1;
    if path[0] != path[m] {
        return Err(Error::InvalidContour(format!("endpoints {} and {} differ", path[0], path[m])));
    }
    let tau = (0..m).fold(0, |best, i| if path[i] < path[best] { i } else { best });
    let low = path[tau];
    Ok((0..=m).map(|i| path[(tau + i) % m] - low).collect())
}

/// Value at the midpoint, interpolating when the length is odd.
pub fn midpoint(path: &[f64]) -> f64 {
    let m = path.len() - 1;
    if m.is_multiple_of(2) {
        path[m / 2]
    } else {
        0.5 * (path[m / 2] + path[m / 2 + 1])
    }
}

/// Mean of a standard Brownian excursion at time 1/2, `√(2/π)`.
pub fn excursion_midpoint_mean() -> f64 {
    (2.0 / std::f64::consts::PI).sqrt()
}
