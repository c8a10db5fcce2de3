//! Acceptance run: one line per criterion, non-zero exit on any failure.

use std::time::Instant;

use quadbound::enumerate::{count_formula, enumerated_count, CountKind};
use quadbound::lab::{run_experiment, ExperimentConfig, ExperimentKind, ExperimentResult, SigmaRule};
use quadbound::verify::{run_suite, Mode, Suite};

const SEED: u64 = 20_240_601;

type Criterion = (u32, &'static str, Box<dyn Fn() -> Result<String, String>>);

fn cells() -> Vec<(usize, usize)> {
    (1..=8usize).flat_map(|s| (0..=(8 - s) / 2).map(move |n| (n, s))).collect()
}

fn sqrt2n(n: usize) -> usize {
    ((2 * n) as f64).sqrt().floor() as usize
}

/// Runs a suite over every small cell, then optionally at random.
fn suites(suites: &[Suite], random: Option<(usize, usize, usize)>) -> Result<String, String> {
    let mut instances = 0;
    for &suite in suites {
        for (n, s) in cells() {
            let r = run_suite(suite, n, s, Mode::Exhaustive).map_err(|e| e.to_string())?;
            if !r.passed() {
                return Err(format!("{suite} n={n} σ={s}: {:?}", r.first_failure));
            }
            instances += r.instances;
        }
    }
    if let Some((n, s, reps)) = random {
        let r = run_suite(suites[0], n, s, Mode::Random { replicas: reps, seed: SEED }).map_err(|e| e.to_string())?;
        if !r.passed() {
            return Err(format!("random n={n} σ={s}: {} failures, first {:?}", r.failures, r.first_failure));
        }
        instances += r.instances;
    }
    Ok(format!("{instances} instances"))
}

fn counts() -> Result<String, String> {
    let spot = [(CountKind::Q, 1, 1, 2u64), (CountKind::B, 0, 2, 6), (CountKind::F, 1, 1, 3)];
    for (kind, n, s, want) in spot {
        let found = enumerated_count(kind, n, s).map_err(|e| e.to_string())?;
        let formula = count_formula(kind, n, s).map_err(|e| e.to_string())?;
        if found != want || formula.to_string() != want.to_string() {
            return Err(format!("|{kind}| at n={n} σ={s}: enumerated {found}, formula {formula}, expected {want}"));
        }
    }
    suites(&[Suite::Counts], None)
}

fn experiment(kind: ExperimentKind, ns: Vec<usize>, reps: usize, sources: usize) -> Result<ExperimentResult, String> {
    let mut cfg = ExperimentConfig::new(kind, ns, reps, SEED);
    cfg.sources = sources;
    run_experiment(&cfg).map_err(|e| e.to_string())
}

fn summarize(r: &ExperimentResult, names: &[&str]) -> Result<String, String> {
    let picked: Vec<_> = r.checks.iter().filter(|c| names.iter().any(|n| c.name.starts_with(n))).collect();
    if picked.len() < names.len() {
        return Err(format!("missing checks among {:?}", r.checks));
    }
    let text = picked.iter().map(|c| format!("{} = {:.4} ({})", c.name, c.value, c.target)).collect::<Vec<_>>().join("; ");
    if picked.iter().all(|c| c.passed) {
        Ok(text)
    } else {
        Err(text)
    }
}

fn bridge_limit() -> Result<String, String> {
    let r = experiment(ExperimentKind::BridgeVariance, vec![100_000], 10_000, 0)?;
    summarize(&r, &["midpoint variance", "P(endpoint = -0)", "P(endpoint = -1)", "P(endpoint = -2)"])
}

fn dimension() -> Result<String, String> {
    let r = experiment(ExperimentKind::Dimension, vec![500_000], 50, 4)?;
    summarize(&r, &["bulk slope", "boundary slope"])
}

fn sigma_zero() -> Result<String, String> {
    let r = experiment(ExperimentKind::SigmaZero, vec![1 << 12, 1 << 14, 1 << 16], 50, 0)?;
    summarize(&r, &["bound median decreasing", "one_minus_mass median decreasing"])
}

fn sigma_infinity() -> Result<String, String> {
    let a = experiment(ExperimentKind::SigmaInfinity, vec![100_000], 50, 0)?;
    let b = experiment(ExperimentKind::SigmaInfinity, vec![1 << 14, 1 << 16, 1 << 18], 50, 0)?;
    let first = summarize(&a, &["mean sup contour deviation"]);
    let second = summarize(&b, &["label_ratio median decreasing"]);
    match (first, second) {
        (Ok(x), Ok(y)) => Ok(format!("{x}; {y}")),
        (x, y) => Err(format!("{}; {}", x.unwrap_or_else(|e| e), y.unwrap_or_else(|e| e))),
    }
}

fn main() {
    assert_eq!(SigmaRule::Sqrt(1.0).sigma(100_000), sqrt2n(100_000));
    let criteria: Vec<Criterion> = vec![
        (1, "exact counts", Box::new(counts)),
        (2, "coding is a bijection", Box::new(|| suites(&[Suite::Roundtrip, Suite::Census], Some((10_000, sqrt2n(10_000), 1000))))),
        (3, "labels are distances", Box::new(|| suites(&[Suite::Labels], Some((1000, sqrt2n(1000), 100))))),
        (4, "distance bounds", Box::new(|| suites(&[Suite::Bounds], Some((100_000, sqrt2n(100_000), 20))))),
        (5, "bridge limit", Box::new(bridge_limit)),
        (6, "dimension exponents", Box::new(dimension)),
        (7, "small boundary regime", Box::new(sigma_zero)),
        (8, "large boundary regime", Box::new(sigma_infinity)),
        (9, "self-avoiding walk coding", Box::new(|| suites(&[Suite::Saw], Some((1000, 20, 1000))))),
    ];
    let only: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (id, name, run) in criteria {
        if !only.is_empty() && !only.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] criterion {id} {name}: {detail} [{secs:.1}s]"),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] criterion {id} {name}: {detail} [{secs:.1}s]");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
