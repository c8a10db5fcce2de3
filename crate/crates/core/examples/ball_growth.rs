//! Ball volumes and their log-log slopes: all vertices around the pointed
//! vertex, boundary vertices around a boundary vertex.
use quadbound::metrics::bfs::bfs_distances;
use quadbound::metrics::{ball_volume_profile, boundary_ball_profile, loglog_slope};
use quadbound::sampler::{sample_quadrangulation, Seed};

fn main() -> quadbound::Result<()> {
    let n = 100_000;
    let sigma = ((2 * n) as f64).sqrt() as usize;
    let pq = sample_quadrangulation(n, sigma, &mut Seed::new(5).rng(0))?;
    let q = pq.map();
    let center = pq.pointed();
    let ecc = bfs_distances(q.map(), center)?.eccentricity();
    let bulk = ball_volume_profile(q.map(), center, ecc)?;
    let root = q.on_boundary().iter().position(|&b| b).unwrap() as u32;
    let bnd = boundary_ball_profile(q, root, 2 * ecc)?;
    let (lo, hi) = ((n as f64).powf(0.125).ceil() as usize, (n as f64).powf(0.25) as usize);
    let r: Vec<f64> = (lo..=hi).map(|r| r as f64).collect();
    let pick = |p: &[u64]| (lo..=hi).map(|r| p[r] as f64).collect::<Vec<_>>();
    println!("radius window [{lo}, {hi}], eccentricity {ecc}");
    println!("bulk slope {:.3}", loglog_slope(&r, &pick(&bulk))?.0);
    println!("boundary slope {:.3}", loglog_slope(&r, &pick(&bnd))?.0);
    Ok(())
}
