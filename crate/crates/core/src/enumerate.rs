//! Exhaustive enumeration for small sizes, canonical codes and the exact
//! counting formulas.

use std::collections::HashMap;
use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

use crate::bdg::forward;
use crate::bridge::Bridge;
use crate::error::{Error, Result};
use crate::forest::{ContourPair, ForestShape, WellLabeledForest, NO_PARENT};
use crate::map::{BoundaryMap, PlanarMap, PointedBoundaryMap};

pub const BRIDGE_CAP: usize = 12;
pub const FOREST_CAP: usize = 14;
pub const QUADRANGULATION_CAP: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CountKind {
    /// Well-labeled forests with `σ` trees and `n` edges.
    F,
    /// Bridges of length `σ`.
    B,
    /// Quadrangulations with `n` internal faces and boundary length `2σ`.
    Q,
}

impl FromStr for CountKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "F" | "f" | "forests" => Ok(Self::F),
            "B" | "b" | "bridges" => Ok(Self::B),
            "Q" | "q" | "quadrangulations" => Ok(Self::Q),
            _ => Err(Error::InvalidMap(format!("unknown kind {s:?}, expected F, B or Q"))),
        }
    }
}

impl fmt::Display for CountKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::F => "F",
            Self::B => "B",
            Self::Q => "Q",
        })
    }
}

fn factorial(k: usize) -> BigUint {
    (1..=k as u64).fold(BigUint::from(1u32), |acc, x| acc * x)
}

fn binomial(a: usize, b: usize) -> BigUint {
    if b > a {
        return BigUint::from(0u32);
    }
    factorial(a) / (factorial(b) * factorial(a - b))
}

/// Exact closed-form counts.
pub fn count_formula(kind: CountKind, n: usize, sigma: usize) -> Result<BigUint> {
    if sigma == 0 {
        return Err(Error::NonPositive("σ"));
    }
    let three_n = BigUint::from(3u32).pow(n as u32);
    Ok(match kind {
        CountKind::F => three_n * sigma * binomial(2 * n + sigma, n) / (2 * n + sigma),
        CountKind::B => binomial(2 * sigma, sigma),
        CountKind::Q => {
            three_n * factorial(2 * sigma) * factorial(2 * n + sigma - 1)
                / (factorial(sigma) * factorial(sigma - 1) * factorial(n) * factorial(n + sigma + 1))
        }
    })
}

/// All bridges of length `σ`, in lexicographic order of their values.
pub fn enumerate_bridges(sigma: usize) -> Result<Vec<Bridge>> {
    if sigma == 0 {
        return Err(Error::NonPositive("σ"));
    }
    if sigma > BRIDGE_CAP {
        return Err(Error::CapExceeded(format!("σ = {sigma} > {BRIDGE_CAP}")));
    }
    fn rec(cur: &mut Vec<i32>, sigma: usize, out: &mut Vec<Bridge>) {
        let k = cur.len() - 1;
        if k == sigma {
            out.push(Bridge::new(cur.clone()).expect("enumerated bridge"));
            return;
        }
        let last = cur[k];
        // b(j) ≤ σ − j keeps a nonpositive endpoint reachable
        for v in last - 1..=(sigma - k - 1) as i32 {
            cur.push(v);
            rec(cur, sigma, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut vec![0], sigma, &mut out);
    Ok(out)
}

/// All forest shapes with `σ` trees and `n` edges, in lexicographic order
/// of the contour word (down-step before up-step).
pub fn enumerate_forest_shapes(n: usize, sigma: usize) -> Result<Vec<ForestShape>> {
    if sigma == 0 {
        return Err(Error::NonPositive("σ"));
    }
    if 2 * n + sigma > FOREST_CAP {
        return Err(Error::CapExceeded(format!("2n+σ = {} > {FOREST_CAP}", 2 * n + sigma)));
    }
    fn rec(c: &mut Vec<i32>, ups_left: usize, downs_left: usize, out: &mut Vec<ForestShape>) {
        let h = *c.last().unwrap();
        if ups_left == 0 && downs_left == 0 {
            let cp = ContourPair { l: vec![0; c.len()], c: c.clone() };
            out.push(cp.to_forest().expect("first-passage contour").shape().clone());
            return;
        }
        if downs_left > 0 && (h > 1 || (ups_left == 0 && downs_left == 1)) {
            c.push(h - 1);
            rec(c, ups_left, downs_left - 1, out);
            c.pop();
        }
        if ups_left > 0 {
            c.push(h + 1);
            rec(c, ups_left - 1, downs_left, out);
            c.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut vec![sigma as i32], n, n + sigma, &mut out);
    Ok(out)
}

/// Calls `visit` on every well-labeled forest with `σ` trees and `n` edges:
/// shapes in contour order, then an odometer over the edge increments.
pub fn for_each_forest(n: usize, sigma: usize, mut visit: impl FnMut(&WellLabeledForest)) -> Result<()> {
    for shape in enumerate_forest_shapes(n, sigma)? {
        let parent = shape.parents();
        let mut incr = vec![-1i32; parent.len()];
        loop {
            let mut labels = vec![0i32; parent.len()];
            for v in 0..parent.len() {
                if parent[v] != NO_PARENT {
                    labels[v] = labels[parent[v] as usize] + incr[v];
                }
            }
            visit(&WellLabeledForest::from_parts_unchecked(shape.clone(), labels));
            let mut v = parent.len();
            loop {
                if v == 0 {
                    break;
                }
                v -= 1;
                if parent[v] == NO_PARENT {
                    continue;
                }
                if incr[v] < 1 {
                    incr[v] += 1;
                    break;
                }
                incr[v] = -1;
            }
            if (0..parent.len()).all(|u| parent[u] == NO_PARENT || incr[u] == -1) {
                break;
            }
        }
    }
    Ok(())
}

pub fn enumerate_forests(n: usize, sigma: usize) -> Result<Vec<WellLabeledForest>> {
    let mut out = Vec::new();
    for_each_forest(n, sigma, |f| out.push(f.clone()))?;
    Ok(out)
}

/// Byte string identifying a rooted map up to root- and
/// orientation-preserving isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode(pub Vec<u8>);

impl CanonicalCode {
    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Breadth-first relabeling of half-edges from the root, following `next`
/// then `twin`; emits `σ`, a boundary flag and the relabeled permutations.
/// The pointed variant also emits the pointed vertex.
fn code_with(map: &PlanarMap, sigma: usize, flag: u8, pointed: Option<u32>) -> CanonicalCode {
    let h = map.half_edge_count();
    let mut label = vec![u32::MAX; h];
    let mut queue = VecDeque::with_capacity(h);
    let mut out = Vec::with_capacity(8 * h + 9);
    out.extend_from_slice(&(sigma as u32).to_le_bytes());
    out.push(flag);
    label[map.root() as usize] = 0;
    queue.push_back(map.root());
    let mut fresh = 1u32;
    while let Some(e) = queue.pop_front() {
        for x in [map.next(e), map.twin(e)] {
            if label[x as usize] == u32::MAX {
                label[x as usize] = fresh;
                fresh += 1;
                queue.push_back(x);
            }
            out.extend_from_slice(&label[x as usize].to_le_bytes());
        }
    }
    if let Some(p) = pointed {
        let at = map.rotation(p).into_iter().map(|e| label[e as usize]).min().unwrap_or(u32::MAX);
        out.extend_from_slice(&at.to_le_bytes());
    }
    CanonicalCode(out)
}

pub fn canonical_code(map: &BoundaryMap) -> CanonicalCode {
    code_with(map.map(), map.sigma(), 1, None)
}

pub fn pointed_canonical_code(pq: &PointedBoundaryMap) -> CanonicalCode {
    code_with(pq.map().map(), pq.map().sigma(), 2, Some(pq.pointed()))
}

/// One unpointed map with the number of forward images landing on it.
#[derive(Clone, Debug)]
pub struct CensusEntry {
    pub code: CanonicalCode,
    pub map: BoundaryMap,
    pub multiplicity: usize,
}

#[derive(Clone, Debug)]
pub struct QuadrangulationCensus {
    pub n: usize,
    pub sigma: usize,
    /// Sorted by canonical code.
    pub maps: Vec<CensusEntry>,
    /// Number of (forest, bridge) pairs pushed forward.
    pub pairs: usize,
    /// Number of distinct pointed maps among the images.
    pub distinct_pointed: usize,
}

impl QuadrangulationCensus {
    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    /// Whether the forward images are pairwise distinct pointed maps.
    pub fn injective(&self) -> bool {
        self.distinct_pointed == self.pairs
    }

    /// Whether every map is hit exactly `n + σ + 1` times.
    pub fn uniform_multiplicity(&self) -> bool {
        self.maps.iter().all(|e| e.multiplicity == self.n + self.sigma + 1)
    }
}

/// All quadrangulations with `n` internal faces and boundary length `2σ`,
/// obtained by pushing every (forest, bridge) pair forward and forgetting
/// the pointed vertex.
pub fn enumerate_quadrangulations(n: usize, sigma: usize) -> Result<QuadrangulationCensus> {
    if sigma == 0 {
        return Err(Error::NonPositive("σ"));
    }
    if 2 * n + sigma > QUADRANGULATION_CAP {
        return Err(Error::CapExceeded(format!("2n+σ = {} > {QUADRANGULATION_CAP}", 2 * n + sigma)));
    }
    let bridges = enumerate_bridges(sigma)?;
    let mut by_code: HashMap<CanonicalCode, CensusEntry> = HashMap::new();
    let mut pointed = std::collections::HashSet::new();
    let mut pairs = 0;
    let mut failure = None;
    for_each_forest(n, sigma, |f| {
        for b in &bridges {
            let pq = match forward(f, b) {
                Ok(pq) => pq,
                Err(e) => {
                    failure.get_or_insert(e);
                    continue;
                }
            };
            pairs += 1;
            pointed.insert(pointed_canonical_code(&pq));
            let map = pq.into_map();
            let code = canonical_code(&map);
            by_code
                .entry(code.clone())
                .or_insert_with(|| CensusEntry { code, map, multiplicity: 0 })
                .multiplicity += 1;
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    let mut maps: Vec<CensusEntry> = by_code.into_values().collect();
    maps.sort_by(|a, b| a.code.cmp(&b.code));
    Ok(QuadrangulationCensus { n, sigma, maps, pairs, distinct_pointed: pointed.len() })
}

/// Enumerated count for a kind, for comparison with [`count_formula`].
pub fn enumerated_count(kind: CountKind, n: usize, sigma: usize) -> Result<u64> {
    Ok(match kind {
        CountKind::B => enumerate_bridges(sigma)?.len() as u64,
        CountKind::F => {
            let mut count = 0u64;
            for_each_forest(n, sigma, |_| count += 1)?;
            count
        }
        CountKind::Q => enumerate_quadrangulations(n, sigma)?.len() as u64,
    })
}
