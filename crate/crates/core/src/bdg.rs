//! The bijection between pairs (well-labeled forest, bridge) and pointed
//! quadrangulations with a boundary.
//!
//! Forward: corner `c` of the facial walk is joined to `succ(c)` (or to the
//! pointed vertex) by arc `c`, made of half-edges `2c` (leaving `f(c)`) and
//! `2c+1`. Forest vertices keep their preorder ids; the pointed vertex gets
//! id `n + σ`.

use crate::bridge::Bridge;
use crate::error::{Error, Result};
use crate::forest::{ForestShape, WellLabeledForest};
use crate::labels::{successors, ShiftedLabelSequence, TO_POINTED};
use crate::map::{BoundaryMap, PlanarMap, PointedBoundaryMap};
use crate::metrics::bfs::bfs_distances;

/// Everything the forward construction computes along the way.
#[derive(Clone, Debug)]
pub struct ForwardParts {
    pub facial: Vec<u32>,
    pub shifted: ShiftedLabelSequence,
    /// `𝔩̃` on corners `0..2n+σ`.
    pub normalized: Vec<u32>,
    /// `succ(c)`, [`TO_POINTED`] for arcs to `v•`.
    pub succ: Vec<u32>,
    pub map: PointedBoundaryMap,
}

pub fn forward(wlf: &WellLabeledForest, b: &Bridge) -> Result<PointedBoundaryMap> {
    Ok(forward_parts(wlf, b)?.map)
}

pub fn forward_parts(wlf: &WellLabeledForest, b: &Bridge) -> Result<ForwardParts> {
    let shape = wlf.shape();
    let sigma = shape.tree_count();
    let shifted = ShiftedLabelSequence::new(wlf, b)?;
    let lt = shifted.normalized();
    let succ = successors(&lt);
    let facial = shape.facial_sequence();
    let k = lt.len();
    let n = shape.edge_count();
    let pointed = shape.vertex_count();

    // incoming arcs per corner, ascending in j
    let mut in_off = vec![0u32; k + 1];
    for &s in &succ {
        if s != TO_POINTED {
            in_off[s as usize + 1] += 1;
        }
    }
    for c in 0..k {
        in_off[c + 1] += in_off[c];
    }
    let mut in_arcs = vec![0u32; in_off[k] as usize];
    let mut fill = in_off.clone();
    for (j, &s) in succ.iter().enumerate() {
        if s != TO_POINTED {
            in_arcs[fill[s as usize] as usize] = j as u32;
            fill[s as usize] += 1;
        }
    }

    let vcount = pointed + 1;
    let mut offsets = vec![0u32; vcount + 1];
    for c in 0..k {
        let v = facial[c] as usize;
        offsets[v + 1] += 1 + in_off[c + 1] - in_off[c];
    }
    offsets[pointed + 1] = lt.iter().filter(|&&x| x == 1).count() as u32;
    for v in 0..vcount {
        offsets[v + 1] += offsets[v];
    }
    let mut order = vec![0u32; 2 * k];
    let mut pos = offsets.clone();
    // a vertex's corners appear in decreasing facial order
    for c in (0..k).rev() {
        let v = facial[c] as usize;
        let mut push = |e: u32| {
            order[pos[v] as usize] = e;
            pos[v] += 1;
        };
        push(2 * c as u32);
        let inc = &in_arcs[in_off[c] as usize..in_off[c + 1] as usize];
        let split = inc.partition_point(|&j| (j as usize) < c);
        for &j in inc[split..].iter().chain(&inc[..split]) {
            push(2 * j + 1);
        }
    }
    for (c, &x) in lt.iter().enumerate() {
        if x == 1 {
            order[pos[pointed] as usize] = 2 * c as u32 + 1;
            pos[pointed] += 1;
        }
    }

    let root = if b.endpoint() > b.get(sigma - 1) - 1 {
        let mut c = 0u32;
        for _ in 0..-b.endpoint() {
            c = succ[c as usize];
        }
        2 * c
    } else {
        2 * (k as u32 - 1) + 1
    };
    let planar = PlanarMap::from_flat_rotations(&offsets, &order, root)?;
    let map = BoundaryMap::new_unchecked(planar, n, sigma);
    let map = PointedBoundaryMap::new(map, pointed as u32)?;
    Ok(ForwardParts { facial, shifted, normalized: lt, succ, map })
}

/// Recovers the forest and bridge coding a pointed boundary quadrangulation.
pub fn inverse(pq: &PointedBoundaryMap) -> Result<(WellLabeledForest, Bridge)> {
    let bm = pq.map();
    let m = bm.map();
    let bad = |msg: String| Error::NotBoundaryQuadrangulation(msg);
    let dist = bfs_distances(m, pq.pointed())?.dist;
    if dist.contains(&u32::MAX) {
        return Err(bad("map is disconnected".into()));
    }
    let n = bm.n();
    let sigma = bm.sigma();
    let faces = m.faces();
    let ext = faces.face_of[m.root() as usize];
    let h = m.half_edge_count();

    // forest half-edges to splice in right after each map half-edge
    let mut after: Vec<Vec<u32>> = vec![Vec::new(); h];
    let mut tree_edges = 0u32;
    for (f, &rep) in faces.rep.iter().enumerate() {
        if f as u32 == ext {
            continue;
        }
        let h1 = m.face_next(rep);
        let h2 = m.face_next(h1);
        let hs = [rep, h1, h2, m.face_next(h2)];
        let lab = hs.map(|e| dist[m.origin(e) as usize] as i64);
        let max = *lab.iter().max().unwrap();
        let at_max: Vec<usize> = (0..4).filter(|&i| lab[i] == max).collect();
        let (x, y) = match at_max.as_slice() {
            [a] => (*a, (*a + 3) % 4),
            [a, c] if c - a == 2 => (*a, *c),
            _ => return Err(bad(format!("face {f} has labels {lab:?}"))),
        };
        for i in 0..4 {
            if (lab[(i + 1) % 4] - lab[i]).abs() != 1 {
                return Err(bad(format!("face {f} has labels {lab:?}")));
            }
        }
        after[hs[x] as usize].push(2 * tree_edges);
        after[hs[y] as usize].push(2 * tree_edges + 1);
        tree_edges += 1;
    }
    debug_assert_eq!(tree_edges as usize, n);

    let g = bm.boundary_walk();
    let two_s = 2 * sigma;
    let corner = |i: usize| g[(two_s - i) % two_s];
    let v = |i: usize| m.origin(corner(i));
    let chosen: Vec<usize> =
        (0..two_s).filter(|&i| dist[v((i + 1) % two_s) as usize] + 1 == dist[v(i) as usize]).collect();
    if chosen.len() != sigma {
        return Err(bad(format!("{} descending boundary steps, expected {sigma}", chosen.len())));
    }
    let floor_base = 2 * n as u32;
    let phantom = m.vertex_count() as u32;
    for (k, &i) in chosen.iter().enumerate() {
        let list = &mut after[corner(i) as usize];
        if k > 0 {
            list.push(floor_base + 2 * (k as u32 - 1) + 1);
        }
        list.push(floor_base + 2 * k as u32);
    }

    // forest rotation system over map vertex ids plus the phantom
    let fh = floor_base as usize + 2 * sigma;
    let mut fnext = vec![u32::MAX; fh];
    let mut forigin = vec![u32::MAX; fh];
    for u in 0..m.vertex_count() as u32 {
        let mut ring: Vec<u32> = Vec::new();
        for e in m.rotation(u) {
            ring.extend_from_slice(&after[e as usize]);
        }
        for (idx, &e) in ring.iter().enumerate() {
            fnext[e as usize] = ring[(idx + 1) % ring.len()];
            forigin[e as usize] = u;
        }
    }
    let last_floor = floor_base + 2 * sigma as u32 - 1;
    fnext[last_floor as usize] = last_floor;
    forigin[last_floor as usize] = phantom;
    if forigin.contains(&u32::MAX) {
        return Err(bad("corner rules left a dangling edge".into()));
    }
    let mut fprev = vec![0u32; fh];
    for (e, &nx) in fnext.iter().enumerate() {
        fprev[nx as usize] = e as u32;
    }

    let steps = 2 * n + sigma;
    let mut id = vec![u32::MAX; m.vertex_count() + 1];
    let mut counts: Vec<u32> = Vec::with_capacity(n + sigma);
    let mut tilde: Vec<u32> = Vec::with_capacity(n + sigma);
    let mut tree_root_label: Vec<u32> = Vec::with_capacity(n + sigma);
    let start = forigin[floor_base as usize];
    id[start as usize] = 0;
    counts.push(0);
    tilde.push(dist[start as usize]);
    tree_root_label.push(dist[start as usize]);
    let mut stack = vec![start];
    let mut e = fprev[floor_base as usize];
    for t in 0..steps {
        let to = forigin[(e ^ 1) as usize];
        if e >= floor_base {
            if !(e - floor_base).is_multiple_of(2) {
                return Err(bad(format!("facial walk goes backwards along the floor at step {t}")));
            }
            stack.clear();
            if t + 1 < steps {
                if id[to as usize] != u32::MAX {
                    return Err(bad("floor vertex visited twice".into()));
                }
                id[to as usize] = counts.len() as u32;
                counts.push(0);
                tilde.push(dist[to as usize]);
                tree_root_label.push(dist[to as usize]);
                stack.push(to);
            } else if to != phantom {
                return Err(bad("facial walk does not end at the floor's end".into()));
            }
        } else if id[to as usize] == u32::MAX {
            let cur = *stack.last().ok_or_else(|| bad("facial walk left the forest".into()))?;
            counts[id[cur as usize] as usize] += 1;
            id[to as usize] = counts.len() as u32;
            counts.push(0);
            tilde.push(dist[to as usize]);
            tree_root_label.push(*tree_root_label.last().unwrap());
            stack.push(to);
        } else {
            stack.pop();
            if stack.last() != Some(&to) {
                return Err(bad(format!("facial walk is not a tree contour at step {t}")));
            }
        }
        e = fprev[(e ^ 1) as usize];
    }
    if counts.len() != n + sigma {
        return Err(bad(format!("{} forest vertices reached, expected {}", counts.len(), n + sigma)));
    }
    let shape = ForestShape::from_flat_preorder(counts)?;
    let labels: Vec<i32> = tilde.iter().zip(&tree_root_label).map(|(&x, &r)| x as i32 - r as i32).collect();
    let wlf = WellLabeledForest::new(shape, labels).map_err(|e| bad(e.to_string()))?;
    let base = dist[v(chosen[0]) as usize] as i32;
    let mut values: Vec<i32> = chosen.iter().map(|&i| dist[v(i) as usize] as i32 - base).collect();
    values.push(dist[v(0) as usize] as i32 - base);
    let bridge = Bridge::new(values).map_err(|e| bad(e.to_string()))?;
    Ok((wlf, bridge))
}
