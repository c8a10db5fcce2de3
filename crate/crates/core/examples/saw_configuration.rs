//! Turn a map into its self-avoiding-walk configuration and back.
use quadbound::sampler::{sample_quadrangulation, Seed};
use quadbound::saw::{quadrangulation_to_saw, saw_to_quadrangulation};

fn main() -> quadbound::Result<()> {
    let q = sample_quadrangulation(1000, 20, &mut Seed::new(4).rng(0))?.into_map();
    let cfg = quadrangulation_to_saw(&q)?;
    let (half, steps, quads) = cfg.census();
    println!("tiles: {half} half-steps, {steps} steps, {quads} quadrangles");
    println!("decodes to the same map: {}", saw_to_quadrangulation(&cfg)? == q);
    Ok(())
}
