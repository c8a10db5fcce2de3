//! Code a random forest and bridge as a map, then decode it again.
use quadbound::bdg::{forward, inverse};
use quadbound::sampler::{sample_encoding, Seed};

fn main() -> quadbound::Result<()> {
    let (forest, bridge) = sample_encoding(500, 12, &mut Seed::new(3).rng(0))?;
    let pq = forward(&forest, &bridge)?;
    let (f2, b2) = inverse(&pq)?;
    println!("bridge {:?}", bridge.values());
    println!("forest recovered: {}, bridge recovered: {}", f2 == forest, b2 == bridge);
    Ok(())
}
