//! Self-avoiding-walk configurations: a quadrangulation with a boundary
//! plus `σ` non-crossing chords across its external face.
//!
//! With `𝔢₁ = root, 𝔢₂, …, 𝔢₂σ` the external-face half-edges in order,
//! chord `i` (`0 ≤ i < σ`) joins the corner at the end of `𝔢_{i+1}` to the
//! corner at the end of `𝔢_{2σ−i}`. The chords cut the external face into two
//! half-step tiles (degree 2) and `σ−1` step tiles (quadrangles crossed by
//! two opposite chords).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::map::{BoundaryMap, PlanarMap};

pub const SAW_FORMAT_VERSION: &str = "saw-v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TileKind {
    Quadrangle,
    StepTile,
    HalfStepTile,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SawConfiguration {
    map: PlanarMap,
    distinguished: Vec<bool>,
    tiles: Vec<TileKind>,
    n: usize,
    sigma: usize,
}

impl SawConfiguration {
    /// Validates tile shapes, the census `(2, σ−1, n)`, the position of the
    /// root and the absence of cycles among step tiles.
    pub fn new(map: PlanarMap, distinguished: Vec<bool>) -> Result<Self> {
        let bad = |msg: String| Error::InvalidSawConfiguration(msg);
        let h = map.half_edge_count();
        if distinguished.len() != h {
            return Err(bad(format!("{} flags for {h} half-edges", distinguished.len())));
        }
        if let Some(e) = (0..h).find(|&e| distinguished[e] != distinguished[map.twin(e as u32) as usize]) {
            return Err(bad(format!("half-edge {e} and its reverse disagree")));
        }
        let faces = map.faces();
        let mut tiles = Vec::with_capacity(faces.rep.len());
        for (f, &rep) in faces.rep.iter().enumerate() {
            let walk = map.face_walk(rep);
            let marks: Vec<bool> = walk.iter().map(|&e| distinguished[e as usize]).collect();
            let kind = match (walk.len(), marks.iter().filter(|&&d| d).count()) {
                (2, 1) => TileKind::HalfStepTile,
                (4, 0) => TileKind::Quadrangle,
                (4, 2) if marks[0] == marks[2] => TileKind::StepTile,
                (deg, d) => return Err(bad(format!("face {f} of degree {deg} has {d} distinguished sides"))),
            };
            tiles.push(kind);
        }
        let count = |k: TileKind| tiles.iter().filter(|&&t| t == k).count();
        let sigma = distinguished.iter().filter(|&&d| d).count() / 2;
        let (half, step, quad) = (count(TileKind::HalfStepTile), count(TileKind::StepTile), count(TileKind::Quadrangle));
        if half != 2 || sigma == 0 || step != sigma - 1 {
            return Err(bad(format!("tile census ({half}, {step}, {quad}) with {sigma} chords")));
        }
        let root = map.root();
        if distinguished[root as usize] || tiles[faces.face_of[root as usize] as usize] != TileKind::HalfStepTile {
            return Err(bad("root is not the plain side of a half-step tile".into()));
        }
        // follow the chain of tiles from the root's half-step tile
        let mut e = map.face_next(root);
        let mut crossed = 0;
        loop {
            crossed += 1;
            if crossed > sigma {
                return Err(bad("step tiles form a cycle".into()));
            }
            let t = map.twin(e);
            match tiles[faces.face_of[t as usize] as usize] {
                TileKind::HalfStepTile => break,
                TileKind::StepTile => e = map.face_next(map.face_next(t)),
                TileKind::Quadrangle => unreachable!("quadrangles have no distinguished side"),
            }
        }
        if crossed != sigma {
            return Err(bad(format!("walk crosses {crossed} of {sigma} chords; step tiles form a cycle")));
        }
        Ok(Self { map, distinguished, tiles, n: quad, sigma })
    }

    pub fn map(&self) -> &PlanarMap {
        &self.map
    }

    pub fn distinguished(&self) -> &[bool] {
        &self.distinguished
    }

    /// Kind of every face, indexed like [`PlanarMap::faces`].
    pub fn tile_kinds(&self) -> &[TileKind] {
        &self.tiles
    }

    /// `(half-step tiles, step tiles, quadrangles)`.
    pub fn census(&self) -> (usize, usize, usize) {
        (2, self.sigma - 1, self.n)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sigma(&self) -> usize {
        self.sigma
    }

    /// Number of walk steps, one per chord.
    pub fn walk_length(&self) -> usize {
        self.sigma
    }

    pub fn to_json(&self) -> SawJson {
        SawJson {
            version: SAW_FORMAT_VERSION.into(),
            n: self.n,
            sigma: self.sigma,
            twin: self.map.twins().to_vec(),
            next: self.map.nexts().to_vec(),
            root: self.map.root(),
            distinguished: (0..self.distinguished.len() as u32).filter(|&e| self.distinguished[e as usize]).collect(),
        }
    }

    pub fn from_json(j: &SawJson) -> Result<Self> {
        if j.version != SAW_FORMAT_VERSION {
            return Err(Error::Version { found: j.version.clone(), expected: SAW_FORMAT_VERSION });
        }
        let map = PlanarMap::from_permutations(j.twin.clone(), j.next.clone(), j.root)?;
        let mut flags = vec![false; map.half_edge_count()];
        for &e in &j.distinguished {
            *flags
                .get_mut(e as usize)
                .ok_or(Error::IndexOutOfRange { index: e as usize, len: map.half_edge_count() })? = true;
        }
        let cfg = Self::new(map, flags)?;
        if (cfg.n, cfg.sigma) != (j.n, j.sigma) {
            return Err(Error::InvalidSawConfiguration(format!(
                "declared (n, σ) = ({}, {}) but the configuration has ({}, {})",
                j.n, j.sigma, cfg.n, cfg.sigma
            )));
        }
        Ok(cfg)
    }
}

/// Serialized configuration; `distinguished` lists half-edge ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SawJson {
    pub version: String,
    pub n: usize,
    pub sigma: usize,
    pub twin: Vec<u32>,
    pub next: Vec<u32>,
    pub root: u32,
    pub distinguished: Vec<u32>,
}

pub fn quadrangulation_to_saw(q: &BoundaryMap) -> Result<SawConfiguration> {
    let e = q.boundary_walk();
    let two_s = e.len();
    let sigma = q.sigma();
    let chords: Vec<(u32, u32)> = (0..sigma).map(|i| (e[(i + 1) % two_s], e[(two_s - i) % two_s])).collect();
    let map = q.map().insert_edges(&chords)?;
    let mut flags = vec![false; map.half_edge_count()];
    flags[q.map().half_edge_count()..].fill(true);
    SawConfiguration::new(map, flags)
}

pub fn saw_to_quadrangulation(cfg: &SawConfiguration) -> Result<BoundaryMap> {
    let map = cfg.map.delete_edges(&cfg.distinguished)?;
    let q = BoundaryMap::new(map).map_err(|e| Error::InvalidSawConfiguration(e.to_string()))?;
    if (q.n(), q.sigma()) != (cfg.n, cfg.sigma) {
        return Err(Error::InvalidSawConfiguration("chords did not cut the external face".into()));
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bdg::forward;
    use crate::bridge::Bridge;
    use crate::forest::{ForestShape, WellLabeledForest};

    fn tiny(c: i32, b: Vec<i32>) -> BoundaryMap {
        let f = WellLabeledForest::new(ForestShape::new(&[vec![1, 0]]).unwrap(), vec![0, c]).unwrap();
        forward(&f, &Bridge::new(b).unwrap()).unwrap().into_map()
    }

    #[test]
    fn sigma_one_single_chord() {
        let q = tiny(1, vec![0, 0]);
        let cfg = quadrangulation_to_saw(&q).unwrap();
        assert_eq!(cfg.census(), (2, 0, 1));
        assert_eq!(cfg.walk_length(), 1);
        assert_eq!(cfg.map().edge_count(), q.map().edge_count() + 1);
        assert_eq!(saw_to_quadrangulation(&cfg).unwrap(), q);
    }

    #[test]
    fn json_roundtrip() {
        let q = tiny(0, vec![0, -1]);
        let cfg = quadrangulation_to_saw(&q).unwrap();
        let s = serde_json::to_string(&cfg.to_json()).unwrap();
        let back = SawConfiguration::from_json(&serde_json::from_str(&s).unwrap()).unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn rejects_unmarked_map() {
        let q = tiny(1, vec![0, 0]);
        let h = q.map().half_edge_count();
        assert!(SawConfiguration::new(q.map().clone(), vec![false; h]).is_err());
        let mut one_side = vec![false; h];
        one_side[0] = true;
        assert!(SawConfiguration::new(q.map().clone(), one_side).is_err());
    }
}
