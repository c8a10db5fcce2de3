use quadbound::bdg::forward_parts;
use quadbound::enumerate::{enumerate_bridges, for_each_forest};
use quadbound::metrics::bfs::{Adjacency, UNREACHED};
use quadbound::metrics::bounds::{check_cactus_lower_bound, check_distance_upper_bound};
use quadbound::metrics::largest_tree::largest_tree_comparison;
use quadbound::metrics::{ball_volume_profile, boundary_ball_profile, diameter, DiameterMode};
use quadbound::sampler::{sample_encoding, sample_quadrangulation, Seed};

#[test]
fn bounds_hold_exhaustively() {
    for sigma in 1..=8usize {
        for n in 0..=(8 - sigma) / 2 {
            let bridges = enumerate_bridges(sigma).unwrap();
            for_each_forest(n, sigma, |f| {
                for b in &bridges {
                    let parts = forward_parts(f, b).unwrap();
                    let k = parts.normalized.len() as u32;
                    let corners: Vec<(u32, u32)> = (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).collect();
                    let up = check_distance_upper_bound(&parts, &corners).unwrap();
                    assert!(up.holds(), "upper bound, {f:?} {b:?}: {up:?}");
                    let nv = (n + sigma) as u32;
                    let verts: Vec<(u32, u32)> = (0..nv).flat_map(|i| (0..nv).map(move |j| (i, j))).collect();
                    let low = check_cactus_lower_bound(&parts, f, b, &verts).unwrap();
                    assert!(low.holds(), "lower bound, {f:?} {b:?}: {low:?}");
                }
            })
            .unwrap();
        }
    }
}

#[test]
fn largest_tree_bound_exhaustive_two_two() {
    let bridges = enumerate_bridges(2).unwrap();
    for_each_forest(2, 2, |f| {
        for b in &bridges {
            for bit in [0, -1] {
                let cmp = largest_tree_comparison(f, b, bit, 0, 0).unwrap();
                assert!(cmp.exact);
                assert!(cmp.holds(), "{f:?} {b:?} bit {bit}: {} > {}", cmp.distortion, cmp.bound);
            }
        }
    })
    .unwrap();
}

#[test]
fn largest_tree_bound_on_random_forests() {
    let seed = Seed::new(5);
    for r in 0..20 {
        let (f, b) = sample_encoding(300, 6, &mut seed.rng(r)).unwrap();
        let cmp = largest_tree_comparison(&f, &b, 0, 0, r).unwrap();
        assert!(cmp.holds(), "replica {r}: {} > {}", cmp.distortion, cmp.bound);
    }
}

#[test]
fn distance_is_a_metric() {
    let pq = sample_quadrangulation(500, 10, &mut Seed::new(2).rng(0)).unwrap();
    let adj = Adjacency::new(pq.map().map());
    let nv = pq.map().vertex_count() as u32;
    let rows: Vec<Vec<u32>> = (0..nv).step_by(17).map(|s| adj.bfs(s).unwrap().dist).collect();
    let ids: Vec<u32> = (0..nv).step_by(17).collect();
    for (a, ra) in rows.iter().enumerate() {
        assert!(ra.iter().all(|&d| d != UNREACHED));
        for (b, rb) in rows.iter().enumerate() {
            assert_eq!(ra[ids[b] as usize], rb[ids[a] as usize]);
            for v in 0..nv as usize {
                assert!(ra[v] <= ra[ids[b] as usize] + rb[v]);
            }
        }
    }
    for v in 0..nv {
        for &w in adj.neighbours(v) {
            assert!(rows[0][v as usize].abs_diff(rows[0][w as usize]) <= 1);
        }
    }
}

#[test]
fn ball_profiles_are_monotone_and_nested() {
    let pq = sample_quadrangulation(2000, 60, &mut Seed::new(3).rng(0)).unwrap();
    let m = pq.map();
    let ecc = adjacency_ecc(&pq, 0);
    let full = ball_volume_profile(m.map(), 0, ecc).unwrap();
    let bnd = boundary_ball_profile(m, 0, ecc).unwrap();
    assert_eq!(*full.last().unwrap() as usize, m.vertex_count());
    assert_eq!(full[0] as usize, 1 + adj_degree(&pq, 0));
    for r in 1..full.len() {
        assert!(full[r] >= full[r - 1]);
        assert!(bnd[r] >= bnd[r - 1]);
    }
    assert!(bnd.iter().zip(&full).all(|(b, f)| b <= f));
}

fn adjacency_ecc(pq: &quadbound::PointedBoundaryMap, v: u32) -> u32 {
    Adjacency::new(pq.map().map()).bfs(v).unwrap().eccentricity()
}

fn adj_degree(pq: &quadbound::PointedBoundaryMap, v: u32) -> usize {
    let mut ns = Adjacency::new(pq.map().map()).neighbours(v).to_vec();
    ns.sort_unstable();
    ns.dedup();
    ns.len()
}

#[test]
fn double_sweep_is_a_lower_bound() {
    let seed = Seed::new(4);
    for r in 0..10 {
        let pq = sample_quadrangulation(300, 8, &mut seed.rng(r)).unwrap();
        let exact = diameter(pq.map().map(), DiameterMode::Exact).unwrap();
        let sweep = diameter(pq.map().map(), DiameterMode::DoubleSweep).unwrap();
        assert!(sweep <= exact);
        assert!(sweep + 2 >= exact / 2);
    }
}
