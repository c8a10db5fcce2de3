//! Rooted planar maps as half-edge rotation systems.
//!
//! `next[h]` is the counterclockwise successor of `h` around its origin and
//! `twin[h]` the reverse half-edge. The face lying to the left of `h` is
//! traversed by [`PlanarMap::face_next`], `φ(h) = prev(twin(h))`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const FORMAT_VERSION: &str = "bmap-v1";

#[derive(Clone, Debug)]
pub struct PlanarMap {
    twin: Vec<u32>,
    next: Vec<u32>,
    prev: Vec<u32>,
    vertex_of: Vec<u32>,
    vertex_rep: Vec<u32>,
    root: u32,
}

impl PartialEq for PlanarMap {
    fn eq(&self, other: &Self) -> bool {
        self.root == other.root && self.twin == other.twin && self.next == other.next
    }
}

impl Eq for PlanarMap {}

/// Face decomposition of a map.
#[derive(Clone, Debug)]
pub struct Faces {
    /// Face id of every half-edge (the face on its left).
    pub face_of: Vec<u32>,
    /// Smallest half-edge of every face.
    pub rep: Vec<u32>,
    pub degree: Vec<u32>,
}

impl PlanarMap {
    /// Builds a map from counterclockwise rotations, one list of outgoing
    /// half-edges per vertex. Half-edges come in pairs `(2e, 2e+1)`.
    pub fn from_rotations(rotations: &[Vec<u32>], root: u32) -> Result<Self> {
        let mut offsets = Vec::with_capacity(rotations.len() + 1);
        offsets.push(0u32);
        for rot in rotations {
            offsets.push(offsets.last().unwrap() + rot.len() as u32);
        }
        Self::from_flat_rotations(&offsets, &rotations.concat(), root)
    }

    /// Same as [`Self::from_rotations`] with the rotations concatenated in
    /// `order`; vertex `v` owns `order[offsets[v]..offsets[v+1]]`.
    pub fn from_flat_rotations(offsets: &[u32], order: &[u32], root: u32) -> Result<Self> {
        let h = order.len();
        let mut next = vec![u32::MAX; h];
        let mut vertex_of = vec![u32::MAX; h];
        let mut vertex_rep = Vec::with_capacity(offsets.len().saturating_sub(1));
        for (v, w) in offsets.windows(2).enumerate() {
            let rot = &order[w[0] as usize..w[1] as usize];
            let Some(&first) = rot.first() else {
                return Err(Error::InvalidMap(format!("vertex {v} is isolated")));
            };
            vertex_rep.push(first);
            for (k, &e) in rot.iter().enumerate() {
                let e = e as usize;
                if e >= h || vertex_of[e] != u32::MAX {
                    return Err(Error::InvalidMap(format!("half-edge {e} misplaced in rotations")));
                }
                vertex_of[e] = v as u32;
                next[e] = rot[(k + 1) % rot.len()];
            }
        }
        let twin = (0..h as u32).map(|e| e ^ 1).collect();
        Self::assemble(twin, next, vertex_of, vertex_rep, root)
    }

    /// Builds a map from its two permutations. Vertices are numbered by
    /// increasing smallest outgoing half-edge.
    pub fn from_permutations(twin: Vec<u32>, next: Vec<u32>, root: u32) -> Result<Self> {
        let h = next.len();
        if twin.len() != h {
            return Err(Error::InvalidMap("twin and next differ in length".into()));
        }
        check_permutation(&next, "next")?;
        let mut vertex_of = vec![u32::MAX; h];
        let mut vertex_rep = Vec::new();
        for start in 0..h {
            if vertex_of[start] != u32::MAX {
                continue;
            }
            let v = vertex_rep.len() as u32;
            vertex_rep.push(start as u32);
            let mut e = start;
            loop {
                vertex_of[e] = v;
                e = next[e] as usize;
                if e == start {
                    break;
                }
            }
        }
        Self::assemble(twin, next, vertex_of, vertex_rep, root)
    }

    fn assemble(twin: Vec<u32>, next: Vec<u32>, vertex_of: Vec<u32>, vertex_rep: Vec<u32>, root: u32) -> Result<Self> {
        let h = next.len();
        if h == 0 {
            return Err(Error::InvalidMap("no half-edges".into()));
        }
        for (e, &t) in twin.iter().enumerate() {
            if t as usize >= h || t as usize == e || twin[t as usize] as usize != e {
                return Err(Error::InvalidMap(format!("twin is not a fixed-point-free involution at {e}")));
            }
        }
        check_permutation(&next, "next")?;
        if root as usize >= h {
            return Err(Error::InvalidMap(format!("root {root} out of range")));
        }
        let mut prev = vec![0u32; h];
        for (e, &n) in next.iter().enumerate() {
            prev[n as usize] = e as u32;
        }
        Ok(Self { twin, next, prev, vertex_of, vertex_rep, root })
    }

    pub fn half_edge_count(&self) -> usize {
        self.next.len()
    }

    pub fn edge_count(&self) -> usize {
        self.next.len() / 2
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_rep.len()
    }

    pub fn root(&self) -> u32 {
        self.root
    }

    pub fn twin(&self, h: u32) -> u32 {
        self.twin[h as usize]
    }

    pub fn next(&self, h: u32) -> u32 {
        self.next[h as usize]
    }

    pub fn prev(&self, h: u32) -> u32 {
        self.prev[h as usize]
    }

    pub fn origin(&self, h: u32) -> u32 {
        self.vertex_of[h as usize]
    }

    pub fn target(&self, h: u32) -> u32 {
        self.vertex_of[self.twin[h as usize] as usize]
    }

    /// Successor of `h` along the face on its left.
    pub fn face_next(&self, h: u32) -> u32 {
        self.prev[self.twin[h as usize] as usize]
    }

    pub fn twins(&self) -> &[u32] {
        &self.twin
    }

    pub fn nexts(&self) -> &[u32] {
        &self.next
    }

    pub fn vertex_of(&self) -> &[u32] {
        &self.vertex_of
    }

    /// One outgoing half-edge per vertex.
    pub fn vertex_rep(&self, v: u32) -> u32 {
        self.vertex_rep[v as usize]
    }

    /// Outgoing half-edges of `v` in counterclockwise order.
    pub fn rotation(&self, v: u32) -> Vec<u32> {
        let start = self.vertex_rep[v as usize];
        let mut out = vec![start];
        let mut e = self.next[start as usize];
        while e != start {
            out.push(e);
            e = self.next[e as usize];
        }
        out
    }

    pub fn degree(&self, v: u32) -> usize {
        self.rotation(v).len()
    }

    /// Half-edges of the face left of `h`, starting at `h`.
    pub fn face_walk(&self, h: u32) -> Vec<u32> {
        let mut out = vec![h];
        let mut e = self.face_next(h);
        while e != h {
            out.push(e);
            e = self.face_next(e);
        }
        out
    }

    pub fn faces(&self) -> Faces {
        let h = self.next.len();
        let mut face_of = vec![u32::MAX; h];
        let mut rep = Vec::new();
        let mut degree = Vec::new();
        for start in 0..h as u32 {
            if face_of[start as usize] != u32::MAX {
                continue;
            }
            let f = rep.len() as u32;
            rep.push(start);
            let mut d = 0;
            let mut e = start;
            loop {
                face_of[e as usize] = f;
                d += 1;
                e = self.face_next(e);
                if e == start {
                    break;
                }
            }
            degree.push(d);
        }
        Faces { face_of, rep, degree }
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut stack = vec![self.vertex_of[self.root as usize]];
        seen[stack[0] as usize] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for e in self.rotation(v) {
                let w = self.target(e);
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    /// Map with the given edges removed. Surviving half-edges and vertices
    /// keep their relative order; a vertex left without edges is an error.
    pub fn delete_edges(&self, doomed: &[bool]) -> Result<PlanarMap> {
        let h = self.next.len();
        let mut new_id = vec![u32::MAX; h];
        let mut count = 0u32;
        for e in 0..h {
            if !doomed[e] {
                new_id[e] = count;
                count += 1;
            }
        }
        if new_id[self.root as usize] == u32::MAX {
            return Err(Error::InvalidMap("cannot delete the root edge".into()));
        }
        let mut twin = vec![0u32; count as usize];
        let mut next = vec![0u32; count as usize];
        for e in 0..h {
            if doomed[e] {
                continue;
            }
            if doomed[self.twin[e] as usize] {
                return Err(Error::InvalidMap(format!("half-edge {e} deleted without its twin")));
            }
            twin[new_id[e] as usize] = new_id[self.twin[e] as usize];
            let mut n = self.next[e];
            while doomed[n as usize] {
                n = self.next[n as usize];
            }
            next[new_id[e] as usize] = new_id[n as usize];
        }
        let mut vertex_of = vec![0u32; count as usize];
        let mut vertex_rep = Vec::with_capacity(self.vertex_count());
        for v in 0..self.vertex_count() as u32 {
            let rot = self.rotation(v);
            let Some(&keep) = rot.iter().filter(|&&e| !doomed[e as usize]).min() else {
                return Err(Error::InvalidMap(format!("vertex {v} would become isolated")));
            };
            let nv = vertex_rep.len() as u32;
            vertex_rep.push(new_id[keep as usize]);
            for e in rot {
                if !doomed[e as usize] {
                    vertex_of[new_id[e as usize] as usize] = nv;
                }
            }
        }
        Self::assemble(twin, next, vertex_of, vertex_rep, new_id[self.root as usize])
    }

    /// Map with new edges inserted. Each entry `(a, b)` adds half-edges
    /// `2E+2k` right after `a` and `2E+2k+1` right after `b` in
    /// counterclockwise order (`E` is the current edge count). Insertions
    /// after the same half-edge are stacked in list order.
    pub fn insert_edges(&self, chords: &[(u32, u32)]) -> Result<PlanarMap> {
        let base = self.next.len() as u32;
        let h = base as usize + 2 * chords.len();
        let mut after: Vec<Vec<u32>> = vec![Vec::new(); self.next.len()];
        for (k, &(a, b)) in chords.iter().enumerate() {
            for (pos, e) in [(a, base + 2 * k as u32), (b, base + 2 * k as u32 + 1)] {
                if pos as usize >= self.next.len() {
                    return Err(Error::IndexOutOfRange { index: pos as usize, len: self.next.len() });
                }
                after[pos as usize].push(e);
            }
        }
        let mut twin = self.twin.clone();
        twin.extend((0..2 * chords.len() as u32).map(|j| base + (j ^ 1)));
        let mut next = vec![0u32; h];
        let mut vertex_of = self.vertex_of.clone();
        vertex_of.resize(h, 0);
        for e in 0..self.next.len() {
            let mut cur = e as u32;
            for &x in &after[e] {
                next[cur as usize] = x;
                vertex_of[x as usize] = self.vertex_of[e];
                cur = x;
            }
            next[cur as usize] = self.next[e];
        }
        Self::assemble(twin, next, vertex_of, self.vertex_rep.clone(), self.root)
    }
}

fn check_permutation(p: &[u32], name: &str) -> Result<()> {
    let mut seen = vec![false; p.len()];
    for &x in p {
        if x as usize >= p.len() || std::mem::replace(&mut seen[x as usize], true) {
            return Err(Error::InvalidMap(format!("{name} is not a permutation")));
        }
    }
    Ok(())
}

/// A planar map whose faces are quadrangles except the one left of the
/// root, which has degree `2σ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryMap {
    map: PlanarMap,
    sigma: usize,
    n: usize,
}

impl BoundaryMap {
    pub fn new(map: PlanarMap) -> Result<Self> {
        let bad = |msg: String| Error::NotBoundaryQuadrangulation(msg);
        let faces = map.faces();
        let ext = faces.face_of[map.root as usize] as usize;
        let ext_deg = faces.degree[ext] as usize;
        if !ext_deg.is_multiple_of(2) {
            return Err(bad(format!("external face has odd degree {ext_deg}")));
        }
        if let Some(f) = (0..faces.degree.len()).find(|&f| f != ext && faces.degree[f] != 4) {
            return Err(bad(format!("internal face {f} has degree {}", faces.degree[f])));
        }
        if !map.is_connected() {
            return Err(bad("map is disconnected".into()));
        }
        let euler = map.vertex_count() as i64 - map.edge_count() as i64 + faces.degree.len() as i64;
        if euler != 2 {
            return Err(bad(format!("Euler characteristic {euler}")));
        }
        Ok(Self { sigma: ext_deg / 2, n: faces.degree.len() - 1, map })
    }

    pub(crate) fn new_unchecked(map: PlanarMap, n: usize, sigma: usize) -> Self {
        Self { map, sigma, n }
    }

    pub fn map(&self) -> &PlanarMap {
        &self.map
    }

    pub fn into_map(self) -> PlanarMap {
        self.map
    }

    pub fn sigma(&self) -> usize {
        self.sigma
    }

    /// Number of internal faces.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.map.vertex_count()
    }

    /// External-face half-edges `𝔢₁ = root, 𝔢₂, …` in face order.
    pub fn boundary_walk(&self) -> Vec<u32> {
        self.map.face_walk(self.map.root)
    }

    /// Whether each vertex lies on the external face.
    pub fn on_boundary(&self) -> Vec<bool> {
        let mut out = vec![false; self.vertex_count()];
        for e in self.boundary_walk() {
            out[self.map.origin(e) as usize] = true;
        }
        out
    }

    pub fn to_json(&self) -> MapJson {
        MapJson::new(self, None)
    }

    pub fn from_json(j: &MapJson) -> Result<Self> {
        j.check_version()?;
        let map = BoundaryMap::new(PlanarMap::from_permutations(j.twin.clone(), j.next.clone(), j.root)?)?;
        j.check_sizes(&map)?;
        Ok(map)
    }
}

/// A boundary map with a distinguished vertex `v•`.
#[derive(Clone, Debug)]
pub struct PointedBoundaryMap {
    map: BoundaryMap,
    pointed: u32,
}

impl PartialEq for PointedBoundaryMap {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map
            && other.map.map.origin(self.map.map.vertex_rep(self.pointed)) == other.pointed
    }
}

impl Eq for PointedBoundaryMap {}

impl PointedBoundaryMap {
    pub fn new(map: BoundaryMap, pointed: u32) -> Result<Self> {
        if pointed as usize >= map.vertex_count() {
            return Err(Error::IndexOutOfRange { index: pointed as usize, len: map.vertex_count() });
        }
        Ok(Self { map, pointed })
    }

    pub fn map(&self) -> &BoundaryMap {
        &self.map
    }

    pub fn into_map(self) -> BoundaryMap {
        self.map
    }

    pub fn pointed(&self) -> u32 {
        self.pointed
    }

    pub fn to_json(&self) -> MapJson {
        MapJson::new(&self.map, Some(self.pointed))
    }

    pub fn from_json(j: &MapJson) -> Result<Self> {
        let map = BoundaryMap::from_json(j)?;
        let pointed = j.pointed.ok_or_else(|| Error::InvalidMap("missing pointed vertex".into()))?;
        Self::new(map, pointed)
    }
}

/// Serialized map. Vertex ids are implicit: the orbits of `next`, numbered
/// by increasing smallest half-edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapJson {
    pub version: String,
    pub sigma: usize,
    pub n: usize,
    pub twin: Vec<u32>,
    pub next: Vec<u32>,
    pub root: u32,
    pub pointed: Option<u32>,
}

impl MapJson {
    fn new(map: &BoundaryMap, pointed: Option<u32>) -> Self {
        let m = &map.map;
        // renumber vertices by smallest half-edge so that parsing gives the same ids
        let mut min_he = vec![u32::MAX; m.vertex_count()];
        for (e, &v) in m.vertex_of.iter().enumerate() {
            min_he[v as usize] = min_he[v as usize].min(e as u32);
        }
        let pointed = pointed.map(|p| {
            let target = min_he[p as usize];
            min_he.iter().filter(|&&x| x < target).count() as u32
        });
        Self {
            version: FORMAT_VERSION.into(),
            sigma: map.sigma,
            n: map.n,
            twin: m.twin.clone(),
            next: m.next.clone(),
            root: m.root,
            pointed,
        }
    }

    fn check_version(&self) -> Result<()> {
        if self.version != FORMAT_VERSION {
            return Err(Error::Version { found: self.version.clone(), expected: FORMAT_VERSION });
        }
        Ok(())
    }

    fn check_sizes(&self, map: &BoundaryMap) -> Result<()> {
        if map.sigma != self.sigma || map.n != self.n {
            return Err(Error::InvalidMap(format!(
                "declared (n, σ) = ({}, {}) but the map has ({}, {})",
                self.n, self.sigma, map.n, map.sigma
            )));
        }
        Ok(())
    }
}
