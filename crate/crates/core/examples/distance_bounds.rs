//! Check the two label bounds on distances for sampled pairs of one map.
use quadbound::bdg::forward_parts;
use quadbound::metrics::bounds::{check_cactus_lower_bound, check_distance_upper_bound};
use quadbound::sampler::{sample_encoding, Seed};
use rand::Rng;

fn main() -> quadbound::Result<()> {
    let mut rng = Seed::new(9).rng(0);
    let (f, b) = sample_encoding(20_000, 200, &mut rng)?;
    let parts = forward_parts(&f, &b)?;
    let corners = parts.normalized.len() as u32;
    let vertices = f.shape().vertex_count() as u32;
    let mut pairs = |m: u32| -> Vec<(u32, u32)> { (0..2000).map(|_| (rng.gen_range(0..m), rng.gen_range(0..m))).collect() };
    let up = check_distance_upper_bound(&parts, &pairs(corners))?;
    let low = check_cactus_lower_bound(&parts, &f, &b, &pairs(vertices))?;
    println!("upper bound: {} pairs, {} violations, tightest slack {}", up.pairs, up.violations, -up.max_violation);
    println!("lower bound: {} pairs, {} violations, tightest slack {}", low.pairs, low.violations, -low.max_violation);
    Ok(())
}
