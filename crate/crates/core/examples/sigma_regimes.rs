//! Trends in the small and large boundary regimes over a grid of sizes.
//! The per-size contour check needs larger maps and is skipped here.
use quadbound::lab::{run_experiment, ExperimentConfig, ExperimentKind};

fn main() -> quadbound::Result<()> {
    let ns = vec![1 << 12, 1 << 14, 1 << 16];
    for kind in [ExperimentKind::SigmaZero, ExperimentKind::SigmaInfinity] {
        let mut cfg = ExperimentConfig::new(kind, ns.clone(), 50, 2);
        cfg.sources = 0;
        // the bound medians move in coarse steps and 50 replicas do not always order them
        let r = run_experiment(&cfg)?;
        println!("{kind}");
        for c in r.checks.iter().filter(|c| c.name.contains("decreasing")) {
            println!("  {} {}: {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.target);
        }
    }
    Ok(())
}
