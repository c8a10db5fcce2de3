//! Draw a uniform pointed quadrangulation with a boundary and print its size.
use quadbound::sampler::{sample_quadrangulation, Seed};

fn main() -> quadbound::Result<()> {
    let (n, sigma) = (10_000, 141);
    let pq = sample_quadrangulation(n, sigma, &mut Seed::new(7).rng(0))?;
    let q = pq.map();
    println!("n = {}, boundary length = {}", q.n(), 2 * q.sigma());
    println!("vertices = {}, pointed vertex = {}", q.vertex_count(), pq.pointed());
    Ok(())
}
