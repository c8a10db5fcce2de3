//! Monte Carlo drivers. Each experiment is a pure function of its
//! configuration: replica `r` at size `n` draws from stream
//! `(n << 32) | r` of the master seed, and replicas are reduced in order.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::Rng;
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;

use crate::bdg::forward_parts;
use crate::error::{Error, Result};
use crate::lab::bridge_metric::BridgeMetric;
use crate::lab::rescale::{gamma, interpolate, DEFAULT_GRID};
use crate::lab::result::{Check, ExperimentResult, Params, Point, Row, VERSION};
use crate::lab::stats::strictly_decreasing;
use crate::lab::vervaat::{excursion_midpoint_mean, midpoint, remove_drift, vervaat};
use crate::metrics::balls::{loglog_slope, profile_from_dist};
use crate::metrics::bfs::Adjacency;
use crate::metrics::largest_tree::outside_label_spread;
use crate::sampler::{sample_bridge, sample_encoding, sample_quadrangulation, Seed, RNG_ID};

/// How the boundary half-length `σₙ` follows `n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SigmaRule {
    /// `⌊c·√(2n)⌋`
    Sqrt(f64),
    /// `⌊n^{1/4}⌋`
    Quarter,
    /// `⌊n^{3/4}⌋`
    ThreeQuarter,
    Const(usize),
}

impl SigmaRule {
    /// `σₙ`, never below 1.
    pub fn sigma(&self, n: usize) -> usize {
        let n = n as f64;
        let s = match *self {
            SigmaRule::Sqrt(c) => (c * (2.0 * n).sqrt()).floor() as usize,
            SigmaRule::Quarter => n.powf(0.25).floor() as usize,
            SigmaRule::ThreeQuarter => n.powf(0.75).floor() as usize,
            SigmaRule::Const(k) => k,
        };
        s.max(1)
    }
}

impl fmt::Display for SigmaRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SigmaRule::Sqrt(c) => write!(f, "sqrt:{c}"),
            SigmaRule::Quarter => write!(f, "quarter"),
            SigmaRule::ThreeQuarter => write!(f, "three-quarter"),
            SigmaRule::Const(k) => write!(f, "const:{k}"),
        }
    }
}

impl FromStr for SigmaRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidContour(format!("unknown σ rule {s:?}; use sqrt[:c], quarter, three-quarter or const:k"));
        match s.split_once(':') {
            None => match s {
                "sqrt" => Ok(SigmaRule::Sqrt(1.0)),
                "quarter" => Ok(SigmaRule::Quarter),
                "three-quarter" => Ok(SigmaRule::ThreeQuarter),
                _ => Err(bad()),
            },
            Some(("sqrt", c)) => match c.parse::<f64>() {
                Ok(c) if c > 0.0 && c.is_finite() => Ok(SigmaRule::Sqrt(c)),
                _ => Err(bad()),
            },
            Some(("const", k)) => match k.parse::<usize>() {
                Ok(k) if k > 0 => Ok(SigmaRule::Const(k)),
                _ => Err(bad()),
            },
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExperimentKind {
    BridgeVariance,
    Dimension,
    SigmaZero,
    SigmaInfinity,
    Vervaat,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 5] = [
        ExperimentKind::BridgeVariance,
        ExperimentKind::Dimension,
        ExperimentKind::SigmaZero,
        ExperimentKind::SigmaInfinity,
        ExperimentKind::Vervaat,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ExperimentKind::BridgeVariance => "bridge-variance",
            ExperimentKind::Dimension => "dimension",
            ExperimentKind::SigmaZero => "sigma-zero",
            ExperimentKind::SigmaInfinity => "sigma-infinity",
            ExperimentKind::Vervaat => "vervaat",
        }
    }

    pub fn default_rule(&self) -> SigmaRule {
        match self {
            ExperimentKind::SigmaZero => SigmaRule::Quarter,
            ExperimentKind::SigmaInfinity => SigmaRule::ThreeQuarter,
            _ => SigmaRule::Sqrt(1.0),
        }
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExperimentKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidContour(format!("unknown experiment {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub ns: Vec<usize>,
    pub sigma_rule: SigmaRule,
    pub replicas: usize,
    pub seed: u64,
    /// Grid intervals on `[0, 1]` for path statistics.
    pub grid: usize,
    /// Random centers per map for ball growth, or BFS sources per map for
    /// the σ=∞ distortion estimate (0 skips it there).
    pub sources: usize,
}

impl ExperimentConfig {
    pub fn new(kind: ExperimentKind, ns: Vec<usize>, replicas: usize, seed: u64) -> Self {
        Self { kind, ns, sigma_rule: kind.default_rule(), replicas, seed, grid: DEFAULT_GRID, sources: 4 }
    }
}

/// `P(b(σ) = −k)` for a uniform bridge of length `σ`:
/// `C(2σ−k−1, σ−1) / C(2σ, σ)`.
pub fn endpoint_law(sigma: usize, k: usize) -> f64 {
    if k > sigma {
        return 0.0;
    }
    (0..k).fold(0.5, |p, i| p * (sigma - i) as f64 / (2 * sigma - 1 - i) as f64)
}

fn stream(n: usize, replica: usize) -> u64 {
    ((n as u64) << 32) | replica as u64
}

type Values = BTreeMap<String, f64>;

fn values<const N: usize>(pairs: [(&str, f64); N]) -> Values {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn bridge_replica(n: usize, sigma: usize, rng: &mut ChaCha20Rng) -> Result<Values> {
    let b = sample_bridge(sigma, rng)?;
    let ls = gamma() * (n as f64).powf(0.25);
    let end = b.endpoint() as f64;
    Ok(values([
        ("midpoint", interpolate(b.values(), sigma as f64 / 2.0) / ls),
        ("endpoint", end),
        ("endpoint_scaled", end / ls),
    ]))
}

fn slope_window(n: usize) -> (u32, u32) {
    let lo = (n as f64).powf(0.125).ceil().max(1.0) as u32;
    let hi = ((n as f64).powf(0.25).floor() as u32).max(lo + 1);
    (lo, hi)
}

/// Log-log slope of cumulative counts over radii `lo..=hi`.
fn profile_slope(dist: &[u32], mask: Option<&[bool]>, lo: u32, hi: u32) -> Result<(f64, f64)> {
    let prof = profile_from_dist(dist, mask, hi);
    let r: Vec<f64> = (lo..=hi).map(f64::from).collect();
    let y: Vec<f64> = (lo..=hi).map(|r| prof[r as usize - 1] as f64).collect();
    loglog_slope(&r, &y)
}

fn dimension_replica(n: usize, sigma: usize, centers: usize, rng: &mut ChaCha20Rng) -> Result<Values> {
    let pq = sample_quadrangulation(n, sigma, rng)?;
    let map = pq.map();
    let adj = Adjacency::new(map.map());
    let (lo, hi) = slope_window(n);
    let mask = map.on_boundary();
    let boundary: Vec<u32> = (0..mask.len() as u32).filter(|&v| mask[v as usize]).collect();
    let centers = centers.max(1);
    let (mut bulk, mut bnd, mut ecc) = (0.0, 0.0, 0.0);
    for _ in 0..centers {
        let p = adj.bfs(rng.gen_range(0..map.vertex_count() as u32))?;
        bulk += profile_slope(&p.dist, None, lo, hi)?.0;
        ecc += p.eccentricity() as f64;
        let q = adj.bfs(boundary[rng.gen_range(0..boundary.len())])?;
        bnd += profile_slope(&q.dist, Some(&mask), lo, hi)?.0;
    }
    let c = centers as f64;
    Ok(values([
        ("bulk_slope", bulk / c),
        ("boundary_slope", bnd / c),
        ("eccentricity", ecc / c),
        ("r_min", lo as f64),
        ("r_max", hi as f64),
    ]))
}

fn sigma_zero_replica(n: usize, sigma: usize, rng: &mut ChaCha20Rng) -> Result<Values> {
    let (f, b) = sample_encoding(n, sigma, rng)?;
    let (_, spread) = outside_label_spread(&f, &b)?;
    let tree = f.largest_tree().1.edge_count() as f64;
    let mass = tree / n as f64;
    Ok(values([
        ("bound", 2.0 * spread as f64 / (gamma() * (n as f64).powf(0.25))),
        ("spread", spread as f64),
        ("tree_mass", mass),
        ("one_minus_mass", 1.0 - mass),
    ]))
}

fn sigma_infinity_replica(n: usize, sigma: usize, sources: usize, rng: &mut ChaCha20Rng) -> Result<Values> {
    let (f, b) = sample_encoding(n, sigma, rng)?;
    let cp = f.contour_pair();
    let k = cp.len() - 1;
    let sup_c = cp
        .c
        .iter()
        .enumerate()
        .map(|(i, &c)| (c as f64 / sigma as f64 - (1.0 - i as f64 / k as f64)).abs())
        .fold(0.0, f64::max);
    let (lo, hi) = f.labels().iter().fold((i32::MAX, i32::MIN), |(lo, hi), &x| (lo.min(x), hi.max(x)));
    let scale = (2.0 * sigma as f64).sqrt();
    let mut out = values([("sup_contour", sup_c), ("label_ratio", (hi - lo) as f64 / scale)]);
    if sources > 0 {
        let parts = forward_parts(&f, &b)?;
        let adj = Adjacency::new(parts.map.map().map());
        let metric = BridgeMetric::new(b.values().to_vec(), scale)?;
        let cell: Vec<u32> = cp.running_min()[..k].iter().map(|&m| (sigma as i32 - m) as u32).collect();
        let mut dist = Vec::new();
        let mut queue = Default::default();
        let mut worst = 0.0f64;
        for _ in 0..sources {
            let i = rng.gen_range(0..k);
            adj.bfs_into(parts.facial[i], &mut dist, &mut queue);
            let s = (cell[i] as f64 + rng.gen::<f64>()) / sigma as f64;
            for j in 0..k {
                let t = (cell[j] as f64 + rng.gen::<f64>()) / sigma as f64;
                let d = dist[parts.facial[j] as usize] as f64 / scale;
                worst = worst.max((d - metric.delta(s, t)).abs());
            }
        }
        out.insert("distortion".into(), worst);
        out.insert("distortion_pairs".into(), (sources * k) as f64);
    }
    Ok(out)
}

fn vervaat_replica(sigma: usize, rng: &mut ChaCha20Rng) -> Result<Values> {
    let b = sample_bridge(sigma, rng)?;
    let scale = (2.0 * sigma as f64).sqrt();
    let path: Vec<f64> = b.values().iter().map(|&x| x as f64 / scale).collect();
    let e = vervaat(&remove_drift(&path)?)?;
    Ok(values([("midpoint", midpoint(&e)), ("height", e.iter().copied().fold(0.0, f64::max))]))
}

fn replica(cfg: &ExperimentConfig, n: usize, sigma: usize, r: usize) -> Result<Values> {
    let mut rng = Seed::new(cfg.seed).rng(stream(n, r));
    match cfg.kind {
        ExperimentKind::BridgeVariance => bridge_replica(n, sigma, &mut rng),
        ExperimentKind::Dimension => dimension_replica(n, sigma, cfg.sources, &mut rng),
        ExperimentKind::SigmaZero => sigma_zero_replica(n, sigma, &mut rng),
        ExperimentKind::SigmaInfinity => sigma_infinity_replica(n, sigma, cfg.sources, &mut rng),
        ExperimentKind::Vervaat => vervaat_replica(sigma, &mut rng),
    }
}

fn check(name: String, value: f64, target: String, passed: bool) -> Check {
    Check { name, value, target, passed }
}

fn within(value: f64, target: f64, rel: f64) -> bool {
    (value - target).abs() <= rel * target.abs()
}

fn point_checks(kind: ExperimentKind, p: &Point, out: &mut Vec<Check>) {
    let mean = |c: &str| p.stat(c).map_or(f64::NAN, |s| s.mean);
    let n = p.n;
    match kind {
        ExperimentKind::BridgeVariance => {
            let var = p.stat("midpoint").map_or(f64::NAN, |s| s.variance);
            let target = 0.75 * p.sigma as f64 / (2.0 * n as f64).sqrt();
            out.push(check(format!("midpoint variance n={n}"), var, format!("{target:.4} ± 10%"), within(var, target, 0.1)));
            let m = p.rows.len() as f64;
            for k in 0..=2usize.min(p.sigma) {
                let c = endpoint_law(p.sigma, k);
                let hits = p.rows.iter().filter(|r| r.values["endpoint"] == -(k as f64)).count() as f64 / m;
                let se = (c * (1.0 - c) / m).sqrt();
                out.push(check(
                    format!("P(endpoint = -{k}) n={n}"),
                    hits,
                    format!("{c:.5} ± 3·{se:.5}"),
                    (hits - c).abs() <= 3.0 * se,
                ));
            }
        }
        ExperimentKind::Dimension => {
            let (b, s) = (mean("bulk_slope"), mean("boundary_slope"));
            out.push(check(format!("bulk slope n={n}"), b, "[3.4, 4.6]".into(), (3.4..=4.6).contains(&b)));
            out.push(check(format!("boundary slope n={n}"), s, "[1.5, 2.5]".into(), (1.5..=2.5).contains(&s)));
        }
        ExperimentKind::SigmaZero => {}
        ExperimentKind::SigmaInfinity => {
            let s = mean("sup_contour");
            out.push(check(format!("mean sup contour deviation n={n}"), s, "< 0.1".into(), s < 0.1));
            if p.stat("distortion").is_some() {
                let d = mean("distortion");
                out.push(check(format!("distortion n={n}"), d, "< 0.5".into(), d < 0.5));
            }
        }
        ExperimentKind::Vervaat => {
            let m = mean("midpoint");
            let t = excursion_midpoint_mean();
            out.push(check(format!("excursion midpoint mean n={n}"), m, format!("{t:.4} ± 10%"), within(m, t, 0.1)));
        }
    }
}

fn trend(res: &[Point], column: &str) -> Check {
    let med: Vec<f64> = res.iter().filter_map(|p| p.stat(column).map(|s| s.median)).collect();
    check(
        format!("{column} median decreasing"),
        med.last().copied().unwrap_or(f64::NAN),
        format!("medians {med:?} strictly decreasing in n"),
        strictly_decreasing(&med),
    )
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentResult> {
    if cfg.ns.is_empty() {
        return Err(Error::Empty("n grid"));
    }
    if cfg.replicas == 0 {
        return Err(Error::NonPositive("replicas"));
    }
    if let Some(&n) = cfg.ns.iter().find(|&&n| n == 0 || n >= 1 << 31) {
        return Err(Error::InvalidContour(format!("n = {n} out of range")));
    }
    let start = Instant::now();
    let mut points = Vec::with_capacity(cfg.ns.len());
    for &n in &cfg.ns {
        let sigma = cfg.sigma_rule.sigma(n);
        let rows = (0..cfg.replicas)
            .into_par_iter()
            .map(|r| Ok(Row { replica: r as u64, values: replica(cfg, n, sigma, r)? }))
            .collect::<Result<Vec<Row>>>()?;
        points.push(Point::from_rows(n, sigma, rows)?);
    }
    let mut checks = Vec::new();
    for p in &points {
        point_checks(cfg.kind, p, &mut checks);
    }
    if points.len() > 1 {
        match cfg.kind {
            ExperimentKind::SigmaZero => {
                checks.push(trend(&points, "bound"));
                checks.push(trend(&points, "one_minus_mass"));
            }
            ExperimentKind::SigmaInfinity => checks.push(trend(&points, "label_ratio")),
            _ => {}
        }
    }
    let status = if checks.iter().all(|c| c.passed) { "PASSED" } else { "FAILED" };
    Ok(ExperimentResult {
        version: VERSION.into(),
        experiment: cfg.kind.name().into(),
        rng: RNG_ID.into(),
        params: Params {
            ns: cfg.ns.clone(),
            sigma_rule: cfg.sigma_rule.to_string(),
            replicas: cfg.replicas,
            seed: cfg.seed,
            grid: cfg.grid,
            sources: cfg.sources,
        },
        points,
        checks,
        status: status.into(),
        runtime_secs: start.elapsed().as_secs_f64(),
    })
}
