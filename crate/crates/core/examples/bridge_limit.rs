//! Rescaled bridge midpoint variance and the law of the bridge endpoint.
use quadbound::lab::{endpoint_law, run_experiment, ExperimentConfig, ExperimentKind};

fn main() -> quadbound::Result<()> {
    let r = run_experiment(&ExperimentConfig::new(ExperimentKind::BridgeVariance, vec![100_000], 2000, 1))?;
    let p = &r.points[0];
    println!("σ = {}, midpoint variance {:.4}", p.sigma, p.stat("midpoint").unwrap().variance);
    for k in 0..3 {
        println!("P(endpoint = -{k}) exact {:.5}", endpoint_law(p.sigma, k));
    }
    for c in &r.checks {
        println!("{} {}: {:.4} vs {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.value, c.target);
    }
    Ok(())
}
