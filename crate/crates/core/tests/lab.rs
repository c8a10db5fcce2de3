use num_bigint::BigUint;
use quadbound::enumerate::enumerate_bridges;
use quadbound::lab::vervaat::{excursion_midpoint_mean, midpoint, remove_drift, vervaat};
use quadbound::lab::{endpoint_law, gamma, rescale, run_experiment, BridgeMetric, ExperimentConfig, ExperimentKind, SigmaRule};
use quadbound::sampler::{sample_encoding, Seed};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

fn binomial(a: u64, b: u64) -> BigUint {
    (0..b).fold(BigUint::from(1u32), |acc, i| acc * (a - i) / (i + 1))
}

#[test]
fn endpoint_law_matches_enumeration_and_binomials() {
    for sigma in 1..=8usize {
        let all = enumerate_bridges(sigma).unwrap();
        for k in 0..=sigma {
            let hits = all.iter().filter(|b| b.endpoint() == -(k as i32)).count() as f64;
            let law = endpoint_law(sigma, k);
            assert!((hits / all.len() as f64 - law).abs() < 1e-12, "σ={sigma} k={k}");
            let num = binomial(2 * sigma as u64 - k as u64 - 1, sigma as u64 - 1);
            let den = binomial(2 * sigma as u64, sigma as u64);
            let exact = num.to_string().parse::<f64>().unwrap() / den.to_string().parse::<f64>().unwrap();
            assert!((exact - law).abs() < 1e-12);
        }
    }
    // the law tends to 2^{-k-1}
    assert!((endpoint_law(100_000, 2) - 0.125).abs() < 1e-5);
}

/// Direct evaluation of the bridge pseudo-metric on a fine sample of each arc.
fn delta_oracle(values: &[i32], scale: f64, s: f64, t: f64) -> f64 {
    let m = (values.len() - 1) as f64;
    let at = |x: f64| {
        let p = x * m;
        let i = (p.floor() as usize).min(values.len() - 2);
        (values[i] as f64 + (p - i as f64) * (values[i + 1] - values[i]) as f64) / scale
    };
    let arc_min = |a: f64, b: f64| {
        let mut lo = at(a).min(at(b));
        for i in 0..values.len() {
            let x = i as f64 / m;
            if x >= a && x <= b {
                lo = lo.min(values[i] as f64 / scale);
            }
        }
        lo
    };
    let (a, b) = (s.min(t), s.max(t));
    let inner = arc_min(a, b);
    let outer = arc_min(b, 1.0).min(arc_min(0.0, a));
    at(s) + at(t) - 2.0 * inner.max(outer)
}

#[test]
fn bridge_metric_matches_oracle() {
    let mut rng = ChaCha20Rng::seed_from_u64(4);
    for sigma in [1usize, 2, 7, 40] {
        let b = quadbound::sampler::sample_bridge(sigma, &mut rng).unwrap();
        let metric = BridgeMetric::new(b.values().to_vec(), 2.5).unwrap();
        for _ in 0..500 {
            let (s, t): (f64, f64) = (rng.gen(), rng.gen());
            let want = delta_oracle(b.values(), 2.5, s, t);
            assert!((metric.delta(s, t) - want).abs() < 1e-9, "σ={sigma} s={s} t={t}");
        }
        assert_eq!(metric.delta(0.4, 0.4), 0.0);
    }
}

#[test]
fn vervaat_midpoint_against_walk_oracle() {
    // simple ±1 bridges of length 2m, transformed by brute-force rotation
    let mut rng = ChaCha20Rng::seed_from_u64(8);
    let m = 200usize;
    let reps = 3000;
    let mut total = 0.0;
    for _ in 0..reps {
        let mut steps: Vec<i32> = std::iter::repeat_n(1, m).chain(std::iter::repeat_n(-1, m)).collect();
        steps.shuffle(&mut rng);
        let mut walk = vec![0i32];
        for s in &steps {
            walk.push(walk.last().unwrap() + s);
        }
        let low = (0..2 * m).min_by_key(|&i| (walk[i], i)).unwrap();
        total += (walk[(low + m) % (2 * m)] - walk[low]) as f64 / (2.0 * m as f64).sqrt();
        let path: Vec<f64> = walk.iter().map(|&x| x as f64).collect();
        let e = vervaat(&remove_drift(&path).unwrap()).unwrap();
        assert_eq!(midpoint(&e), (walk[(low + m) % (2 * m)] - walk[low]) as f64);
    }
    let oracle = total / reps as f64;
    assert!((oracle - excursion_midpoint_mean()).abs() < 0.05 * excursion_midpoint_mean(), "{oracle}");
    let mut cfg = ExperimentConfig::new(ExperimentKind::Vervaat, vec![20_000], 3000, 5);
    cfg.sigma_rule = SigmaRule::Sqrt(1.0);
    let r = run_experiment(&cfg).unwrap();
    let mean = r.points[0].stat("midpoint").unwrap().mean;
    assert!((mean - oracle).abs() < 0.1 * oracle, "experiment {mean} oracle {oracle}");
}

#[test]
fn bridge_variance_small_run() {
    let cfg = ExperimentConfig::new(ExperimentKind::BridgeVariance, vec![20_000], 4000, 6);
    let r = run_experiment(&cfg).unwrap();
    let p = &r.points[0];
    assert_eq!(p.sigma, 200);
    let var = p.stat("midpoint").unwrap().variance;
    assert!((var - 0.75).abs() < 0.1, "{var}");
    assert!(r.checks.iter().all(|c| c.passed), "{:?}", r.checks);
}

#[test]
fn rescaled_processes_invariants() {
    let (n, sigma) = (5000, 100);
    let (f, b) = sample_encoding(n, sigma, &mut Seed::new(2).rng(0)).unwrap();
    let r = rescale(&f, &b, 1024).unwrap();
    assert_eq!(r.grid.len(), 1025);
    assert!((r.c[0] - sigma as f64 / (2.0 * n as f64).sqrt()).abs() < 1e-12);
    assert!(r.c[1024].abs() <= 1.0 / (2.0 * n as f64).sqrt() + 1e-12);
    assert_eq!(r.bridge[0], 0.0);
    assert!((r.label_scale() - gamma() * (n as f64).powf(0.25)).abs() < 1e-12);
    assert!((gamma().powi(4) - 8.0 / 9.0).abs() < 1e-12);
    assert!(r.c_inf.iter().zip(&r.grid).all(|(c, s)| c.is_finite() && *s >= 0.0));
}

#[test]
fn sigma_regimes_trend_on_small_grid() {
    let r = run_experiment(&ExperimentConfig::new(ExperimentKind::SigmaZero, vec![1 << 10, 1 << 14], 40, 3)).unwrap();
    assert!(r.checks.iter().all(|c| c.passed), "{:?}", r.checks);
    let mut cfg = ExperimentConfig::new(ExperimentKind::SigmaInfinity, vec![1 << 10, 1 << 14], 10, 3);
    cfg.sources = 1;
    let r = run_experiment(&cfg).unwrap();
    let check = r.check("label_ratio median decreasing").unwrap();
    assert!(check.passed, "{check:?}");
    assert!(r.points.iter().all(|p| p.stat("distortion").unwrap().mean.is_finite()));
}

#[test]
fn dimension_control_run() {
    let mut cfg = ExperimentConfig::new(ExperimentKind::Dimension, vec![2000], 4, 1);
    cfg.sources = 2;
    let r = run_experiment(&cfg).unwrap();
    let p = &r.points[0];
    assert_eq!(p.sigma, 63);
    let bulk = p.stat("bulk_slope").unwrap().mean;
    let bnd = p.stat("boundary_slope").unwrap().mean;
    assert!(bulk > 1.0 && bulk < 5.0 && bnd > 0.5 && bnd < 3.5, "{bulk} {bnd}");
}
