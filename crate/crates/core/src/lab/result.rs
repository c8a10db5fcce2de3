//! Experiment records and their JSON and CSV forms.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::lab::stats::Summary;

/// Version tag embedded in every record.
pub const VERSION: &str = concat!("quadbound ", env!("CARGO_PKG_VERSION"), "+", env!("QUADBOUND_GIT_REV"));

/// Per-replica measurements.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub replica: u64,
    pub values: BTreeMap<String, f64>,
}

/// Everything measured at one value of `n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub n: usize,
    pub sigma: usize,
    pub statistics: BTreeMap<String, Summary>,
    pub rows: Vec<Row>,
}

impl Point {
    pub fn from_rows(n: usize, sigma: usize, rows: Vec<Row>) -> Result<Self> {
        let mut columns: BTreeMap<String, Vec<f64>> = BTreeMap::new();
        for row in &rows {
            for (k, &v) in &row.values {
                columns.entry(k.clone()).or_default().push(v);
            }
        }
        let statistics = columns.into_iter().map(|(k, xs)| Ok((k, Summary::new(&xs)?))).collect::<Result<_>>()?;
        Ok(Self { n, sigma, statistics, rows })
    }

    /// Summary of one column.
    pub fn stat(&self, name: &str) -> Option<&Summary> {
        self.statistics.get(name)
    }
}

/// A pass/fail statement about the measurements.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub target: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Params {
    pub ns: Vec<usize>,
    pub sigma_rule: String,
    pub replicas: usize,
    pub seed: u64,
    pub grid: usize,
    pub sources: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub version: String,
    pub experiment: String,
    pub rng: String,
    pub params: Params,
    pub points: Vec<Point>,
    pub checks: Vec<Check>,
    /// `"PASSED"` when every check passed, `"FAILED"` otherwise.
    pub status: String,
    /// Wall-clock seconds; the only field that varies between reruns.
    pub runtime_secs: f64,
}

impl ExperimentResult {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn point(&self, n: usize) -> Option<&Point> {
        self.points.iter().find(|p| p.n == n)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Medians of a column across points, in the order of `params.ns`.
    pub fn medians(&self, column: &str) -> Vec<f64> {
        self.points.iter().filter_map(|p| p.stat(column).map(|s| s.median)).collect()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    /// One row per replica and one `mean` row per point, header first.
    pub fn to_csv(&self) -> String {
        let columns: Vec<String> = {
            let mut c: Vec<String> = self.points.iter().flat_map(|p| p.statistics.keys().cloned()).collect();
            c.sort();
            c.dedup();
            c
        };
        let mut out = String::from("experiment,n,sigma,replica");
        for c in &columns {
            let _ = write!(out, ",{c}");
        }
        out.push('\n');
        for p in &self.points {
            let mut line = |replica: &str, get: &dyn Fn(&str) -> Option<f64>| {
                let _ = write!(out, "{},{},{},{replica}", self.experiment, p.n, p.sigma);
                for c in &columns {
                    match get(c) {
                        Some(v) => {
                            let _ = write!(out, ",{v}");
                        }
                        None => out.push(','),
                    }
                }
                out.push('\n');
            };
            for r in &p.rows {
                line(&r.replica.to_string(), &|c| r.values.get(c).copied());
            }
            line("mean", &|c| p.stat(c).map(|s| s.mean));
        }
        out
    }
}
