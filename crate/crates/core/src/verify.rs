//! Verification suites run exhaustively over all encodings of a size or
//! over random samples.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bdg::{forward, forward_parts, inverse};
use crate::bridge::Bridge;
use crate::enumerate::{count_formula, enumerate_bridges, enumerate_quadrangulations, enumerated_count, for_each_forest, CountKind};
use crate::error::{Error, Result};
use crate::forest::WellLabeledForest;
use crate::labels::TO_POINTED;
use crate::map::BoundaryMap;
use crate::metrics::bfs::bfs_distances;
use crate::metrics::bounds::{check_cactus_lower_bound, check_distance_upper_bound};
use crate::sampler::{sample_encoding, Seed};
use crate::saw::{quadrangulation_to_saw, saw_to_quadrangulation, SawConfiguration};

/// Maps with at most this many corners get every pair checked.
pub const ALL_PAIRS_CAP: usize = 200;
/// Sources and targets per map when pairs are sampled.
pub const SAMPLED_SOURCES: usize = 100;
pub const SAMPLED_TARGETS: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    /// Forward then inverse coding is the identity.
    Roundtrip,
    /// Normalized labels are distances to the pointed vertex.
    Labels,
    /// Two-sided label bounds on distances.
    Bounds,
    /// Self-avoiding-walk configuration coding round trip and tile census.
    Saw,
    /// Enumerated counts against the closed forms.
    Counts,
    /// Forward images are distinct and cover each map `n+σ+1` times.
    Census,
}

impl Suite {
    pub const ALL: [Suite; 6] = [Suite::Roundtrip, Suite::Labels, Suite::Bounds, Suite::Saw, Suite::Counts, Suite::Census];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Roundtrip => "roundtrip",
            Suite::Labels => "labels",
            Suite::Bounds => "bounds",
            Suite::Saw => "saw",
            Suite::Counts => "counts",
            Suite::Census => "census",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| Error::InvalidMap(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Random { replicas: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub n: usize,
    pub sigma: usize,
    pub mode: String,
    pub instances: u64,
    pub failures: u64,
    pub first_failure: Option<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.instances > 0
    }
}

fn check_roundtrip(f: &WellLabeledForest, b: &Bridge) -> Result<Option<String>> {
    let pq = forward(f, b)?;
    let q = BoundaryMap::new(pq.map().map().clone())?;
    if (q.n(), q.sigma()) != (f.edge_count(), f.tree_count()) {
        return Ok(Some(format!("image has (n, σ) = ({}, {})", q.n(), q.sigma())));
    }
    let back = inverse(&pq)?;
    if back.0 != *f || back.1 != *b {
        return Ok(Some(format!("inverse differs for bridge {:?}", b.values())));
    }
    if forward(&back.0, &back.1)? != pq {
        return Ok(Some("re-encoding changed the map".into()));
    }
    Ok(None)
}

fn check_labels(f: &WellLabeledForest, b: &Bridge) -> Result<Option<String>> {
    let parts = forward_parts(f, b)?;
    let dist = bfs_distances(parts.map.map().map(), parts.map.pointed())?.dist;
    for (c, &l) in parts.normalized.iter().enumerate() {
        let d = dist[parts.facial[c] as usize];
        if d != l {
            return Ok(Some(format!("corner {c}: distance {d}, label {l}")));
        }
        let s = parts.succ[c];
        if (s == TO_POINTED) != (l == 1) || (s != TO_POINTED && parts.normalized[s as usize] + 1 != l) {
            return Ok(Some(format!("corner {c}: successor {s} does not descend")));
        }
    }
    Ok(None)
}

fn check_bounds<R: Rng>(f: &WellLabeledForest, b: &Bridge, rng: &mut R) -> Result<Option<String>> {
    let parts = forward_parts(f, b)?;
    let k = parts.normalized.len();
    let nv = f.shape().vertex_count();
    let pairs = |m: usize, rng: &mut R| -> Vec<(u32, u32)> {
        if m <= ALL_PAIRS_CAP {
            (0..m as u32).flat_map(|i| (0..m as u32).map(move |j| (i, j))).collect()
        } else {
            (0..SAMPLED_SOURCES)
                .flat_map(|_| {
                    let i = rng.gen_range(0..m as u32);
                    (0..SAMPLED_TARGETS).map(|_| (i, rng.gen_range(0..m as u32))).collect::<Vec<_>>()
                })
                .collect()
        }
    };
    let up = check_distance_upper_bound(&parts, &pairs(k, rng))?;
    if !up.holds() {
        return Ok(Some(format!("upper bound: {} of {} pairs, excess {}", up.violations, up.pairs, up.max_violation)));
    }
    let low = check_cactus_lower_bound(&parts, f, b, &pairs(nv, rng))?;
    if !low.holds() {
        return Ok(Some(format!("lower bound: {} of {} pairs, excess {}", low.violations, low.pairs, low.max_violation)));
    }
    Ok(None)
}

fn check_saw(f: &WellLabeledForest, b: &Bridge) -> Result<Option<String>> {
    let q = forward(f, b)?.into_map();
    let cfg = quadrangulation_to_saw(&q)?;
    let want = (2, f.tree_count() - 1, f.edge_count());
    if cfg.census() != want {
        return Ok(Some(format!("tile census {:?}, expected {want:?}", cfg.census())));
    }
    if SawConfiguration::from_json(&cfg.to_json())? != cfg {
        return Ok(Some("serialization changed the configuration".into()));
    }
    if saw_to_quadrangulation(&cfg)? != q {
        return Ok(Some("decoding did not give back the map".into()));
    }
    Ok(None)
}

fn check_one(suite: Suite, f: &WellLabeledForest, b: &Bridge, seed: u64) -> Result<Option<String>> {
    match suite {
        Suite::Roundtrip => check_roundtrip(f, b),
        Suite::Labels => check_labels(f, b),
        Suite::Bounds => check_bounds(f, b, &mut Seed::new(seed).rng(u64::MAX)),
        Suite::Saw => check_saw(f, b),
        Suite::Counts | Suite::Census => unreachable!(),
    }
}

fn report(suite: Suite, n: usize, sigma: usize, mode: Mode, outcomes: Vec<Option<String>>) -> SuiteReport {
    let failures = outcomes.iter().filter(|o| o.is_some()).count() as u64;
    SuiteReport {
        suite: suite.name().into(),
        n,
        sigma,
        mode: match mode {
            Mode::Exhaustive => "exhaustive".into(),
            Mode::Random { replicas, seed } => format!("random:{replicas}:seed={seed}"),
        },
        instances: outcomes.len() as u64,
        failures,
        first_failure: outcomes.into_iter().flatten().next(),
    }
}

/// Runs a suite. `counts` and `census` are exhaustive by nature and ignore
/// the mode.
pub fn run_suite(suite: Suite, n: usize, sigma: usize, mode: Mode) -> Result<SuiteReport> {
    if sigma == 0 {
        return Err(Error::NonPositive("σ"));
    }
    let outcomes = match (suite, mode) {
        (Suite::Counts, _) => [CountKind::F, CountKind::B, CountKind::Q]
            .into_iter()
            .map(|kind| {
                let found = enumerated_count(kind, n, sigma)?;
                let want = count_formula(kind, n, sigma)?;
                Ok((want.to_string() != found.to_string()).then(|| format!("|{kind}| = {found}, formula {want}")))
            })
            .collect::<Result<Vec<_>>>()?,
        (Suite::Census, _) => {
            let c = enumerate_quadrangulations(n, sigma)?;
            let mut out: Vec<Option<String>> = c
                .maps
                .iter()
                .map(|e| {
                    (e.multiplicity != n + sigma + 1)
                        .then(|| format!("map {} hit {} times", e.code.to_hex(), e.multiplicity))
                })
                .collect();
            if !c.injective() {
                out.push(Some(format!("{} pairs but {} distinct pointed maps", c.pairs, c.distinct_pointed)));
            }
            out
        }
        (_, Mode::Exhaustive) => {
            let bridges = enumerate_bridges(sigma)?;
            let mut out = Vec::new();
            let mut index = 0u64;
            for_each_forest(n, sigma, |f| {
                for b in &bridges {
                    match check_one(suite, f, b, index) {
                        Ok(o) => out.push(o),
                        Err(e) => out.push(Some(e.to_string())),
                    }
                    index += 1;
                }
            })?;
            out
        }
        (_, Mode::Random { replicas, seed }) => (0..replicas as u64)
            .into_par_iter()
            .map(|r| {
                let (f, b) = sample_encoding(n, sigma, &mut Seed::new(seed).rng(r))?;
                Ok(check_one(suite, &f, &b, seed ^ r).unwrap_or_else(|e| Some(e.to_string())))
            })
            .collect::<Result<Vec<_>>>()?,
    };
    Ok(report(suite, n, sigma, mode, outcomes))
}
