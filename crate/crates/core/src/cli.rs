//! The `quadbound` command line. Exit codes: 0 on success, 1 when a
//! verification fails or an input object is invalid, 2 on usage errors.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::bdg::{forward, inverse};
use crate::enumerate::{enumerate_bridges, enumerate_quadrangulations, enumerated_count, for_each_forest, CountKind};
use crate::error::Error;
use crate::forest::EncodingJson;
use crate::lab::{run_experiment, ExperimentConfig, ExperimentKind, SigmaRule};
use crate::map::{BoundaryMap, MapJson, PointedBoundaryMap};
use crate::sampler::{sample_encoding, Seed};
use crate::saw::{quadrangulation_to_saw, saw_to_quadrangulation, SawConfiguration, SawJson};
use crate::verify::{run_suite, Mode, Suite};

#[derive(Debug, Parser)]
#[command(name = "quadbound", version, about = "Quadrangulations with a boundary: sampling, codings, enumeration and scaling experiments")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Debug, Subcommand)]
enum Verb {
    /// Stream uniform pointed quadrangulations as JSON lines.
    Sample {
        /// Number of internal faces
        #[arg(long)]
        n: usize,
        /// Half the boundary length
        #[arg(long)]
        sigma: usize,
        /// Master seed
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of replicas
        #[arg(long, default_value_t = 1)]
        reps: usize,
        /// Emit the forest/bridge encoding instead of the map.
        #[arg(long)]
        encoding: bool,
        /// Output file (default: stdout)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Pointed map JSON to forest/bridge JSON.
    Encode {
        /// Input file (default: stdin)
        input: Option<PathBuf>,
        /// Output file (default: stdout)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Forest/bridge JSON to pointed map JSON.
    Decode {
        /// Input file (default: stdin)
        input: Option<PathBuf>,
        /// Output file (default: stdout)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Map JSON to self-avoiding-walk configuration JSON.
    SawEncode {
        /// Input file (default: stdin)
        input: Option<PathBuf>,
        /// Output file (default: stdout)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Self-avoiding-walk configuration JSON to map JSON.
    SawDecode {
        /// Input file (default: stdin)
        input: Option<PathBuf>,
        /// Output file (default: stdout)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count forests (F), bridges (B) or quadrangulations (Q) by enumeration.
    Enumerate {
        /// Number of internal faces
        #[arg(long)]
        n: usize,
        /// Half the boundary length
        #[arg(long)]
        sigma: usize,
        #[arg(long, default_value = "Q")]
        kind: CountKind,
        /// Also print every object, one JSON line each.
        #[arg(long)]
        dump: bool,
        /// Output file (default: stdout)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite: roundtrip, labels, bounds, saw, counts, census.
    Verify {
        suite: Suite,
        /// Number of internal faces
        #[arg(long)]
        n: usize,
        /// Half the boundary length
        #[arg(long)]
        sigma: usize,
        /// Check every encoding instead of random samples.
        #[arg(long)]
        exhaustive: bool,
        /// Number of replicas
        #[arg(long, default_value_t = 100)]
        reps: usize,
        /// Master seed
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file (default: stdout)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a Monte Carlo experiment: bridge-variance, dimension, sigma-zero,
    /// sigma-infinity, vervaat.
    Experiment {
        name: ExperimentKind,
        /// One size or a comma-separated list.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        /// sqrt[:c], quarter, three-quarter or const:k.
        #[arg(long)]
        sigma_rule: Option<SigmaRule>,
        /// Number of replicas
        #[arg(long, default_value_t = 20)]
        reps: usize,
        /// Master seed
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Centers per map (dimension) or BFS sources per map (sigma-infinity).
        #[arg(long, default_value_t = 4)]
        sources: usize,
        /// Points of the rescaling grid
        #[arg(long)]
        grid: Option<usize>,
        /// JSON summary destination (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Per-replica CSV table destination.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Invalid(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(_) | Error::CapExceeded(_) | Error::NonPositive(_) => Failure::Usage(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = std::result::Result<bool, Failure>;

fn writer(out: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(io::BufWriter::new(fs::File::create(p)?)),
        None => Box::new(io::BufWriter::new(io::stdout().lock())),
    })
}

fn read_input(input: Option<&Path>) -> io::Result<String> {
    match input {
        Some(p) => fs::read_to_string(p),
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn json_line<T: Serialize>(w: &mut dyn Write, value: &T) -> Result<(), Failure> {
    serde_json::to_writer(&mut *w, value).map_err(|e| Failure::Usage(e.to_string()))?;
    writeln!(w)?;
    Ok(())
}

/// Applies `f` to every JSON value in the input and writes one line per
/// result.
fn convert<I: DeserializeOwned, O: Serialize>(
    input: Option<&Path>,
    out: Option<&Path>,
    f: impl Fn(I) -> crate::Result<O>,
) -> Outcome {
    let text = read_input(input)?;
    let mut w = writer(out)?;
    for value in serde_json::Deserializer::from_str(&text).into_iter::<I>() {
        let value = value.map_err(|e| Failure::Invalid(format!("malformed input: {e}")))?;
        json_line(&mut *w, &f(value)?)?;
    }
    w.flush()?;
    Ok(true)
}

fn sample(n: usize, sigma: usize, seed: u64, reps: usize, encoding: bool, out: Option<&Path>) -> Outcome {
    let mut w = writer(out)?;
    let seed = Seed::new(seed);
    for r in 0..reps as u64 {
        let (f, b) = sample_encoding(n, sigma, &mut seed.rng(r))?;
        if encoding {
            json_line(&mut *w, &EncodingJson::from_parts(&f, &b))?;
        } else {
            json_line(&mut *w, &forward(&f, &b)?.to_json())?;
        }
    }
    w.flush()?;
    Ok(true)
}

#[derive(Serialize)]
struct ForestDump {
    child_counts: Vec<Vec<u32>>,
    labels: Vec<i32>,
}

#[derive(Serialize)]
struct MapDump {
    code: String,
    multiplicity: usize,
    map: MapJson,
}

fn enumerate(n: usize, sigma: usize, kind: CountKind, dump: bool, out: Option<&Path>) -> Outcome {
    let mut w = writer(out)?;
    if !dump {
        writeln!(w, "{}", enumerated_count(kind, n, sigma)?)?;
        w.flush()?;
        return Ok(true);
    }
    match kind {
        CountKind::B => {
            let all = enumerate_bridges(sigma)?;
            writeln!(w, "{}", all.len())?;
            for b in &all {
                json_line(&mut *w, b)?;
            }
        }
        CountKind::F => {
            let mut all = Vec::new();
            for_each_forest(n, sigma, |f| {
                all.push(ForestDump { child_counts: f.shape().trees(), labels: f.labels().to_vec() })
            })?;
            writeln!(w, "{}", all.len())?;
            for f in &all {
                json_line(&mut *w, f)?;
            }
        }
        CountKind::Q => {
            let census = enumerate_quadrangulations(n, sigma)?;
            writeln!(w, "{}", census.len())?;
            for e in &census.maps {
                json_line(&mut *w, &MapDump { code: e.code.to_hex(), multiplicity: e.multiplicity, map: e.map.to_json() })?;
            }
        }
    }
    w.flush()?;
    Ok(true)
}

fn verify(suite: Suite, n: usize, sigma: usize, mode: Mode, out: Option<&Path>) -> Outcome {
    let report = run_suite(suite, n, sigma, mode)?;
    let mut w = writer(out)?;
    json_line(&mut *w, &report)?;
    w.flush()?;
    if let Some(f) = &report.first_failure {
        eprintln!("{suite}: {} of {} instances failed; first: {f}", report.failures, report.instances);
    }
    Ok(report.passed())
}

fn experiment(cfg: ExperimentConfig, out: Option<&Path>, csv: Option<&Path>) -> Outcome {
    let result = run_experiment(&cfg)?;
    let mut w = writer(out)?;
    writeln!(w, "{}", result.to_json()?)?;
    w.flush()?;
    if let Some(p) = csv {
        fs::write(p, result.to_csv())?;
    }
    for c in result.checks.iter().filter(|c| !c.passed) {
        eprintln!("check not met: {} = {} (target {})", c.name, c.value, c.target);
    }
    Ok(true)
}

fn dispatch(verb: Verb) -> Outcome {
    match verb {
        Verb::Sample { n, sigma, seed, reps, encoding, out } => sample(n, sigma, seed, reps, encoding, out.as_deref()),
        Verb::Encode { input, out } => convert(input.as_deref(), out.as_deref(), |j: MapJson| {
            let (f, b) = inverse(&PointedBoundaryMap::from_json(&j)?)?;
            Ok(EncodingJson::from_parts(&f, &b))
        }),
        Verb::Decode { input, out } => convert(input.as_deref(), out.as_deref(), |j: EncodingJson| {
            let (f, b) = j.into_parts()?;
            Ok(forward(&f, &b)?.to_json())
        }),
        Verb::SawEncode { input, out } => convert(input.as_deref(), out.as_deref(), |j: MapJson| {
            Ok(quadrangulation_to_saw(&BoundaryMap::from_json(&j)?)?.to_json())
        }),
        Verb::SawDecode { input, out } => convert(input.as_deref(), out.as_deref(), |j: SawJson| {
            Ok(saw_to_quadrangulation(&SawConfiguration::from_json(&j)?)?.to_json())
        }),
        Verb::Enumerate { n, sigma, kind, dump, out } => enumerate(n, sigma, kind, dump, out.as_deref()),
        Verb::Verify { suite, n, sigma, exhaustive, reps, seed, out } => {
            let mode = if exhaustive { Mode::Exhaustive } else { Mode::Random { replicas: reps, seed } };
            verify(suite, n, sigma, mode, out.as_deref())
        }
        Verb::Experiment { name, n, sigma_rule, reps, seed, sources, grid, out, csv } => {
            let mut cfg = ExperimentConfig::new(name, n, reps, seed);
            cfg.sources = sources;
            if let Some(rule) = sigma_rule {
                cfg.sigma_rule = rule;
            }
            if let Some(g) = grid {
                cfg.grid = g;
            }
            experiment(cfg, out.as_deref(), csv.as_deref())
        }
    }
}

/// Parses `argv` (program name first) and runs the verb.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let outcome = match cli.threads {
        Some(0) => Err(Failure::Usage("--threads must be positive".into())),
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| dispatch(cli.verb)),
            Err(e) => Err(Failure::Usage(e.to_string())),
        },
        None => dispatch(cli.verb),
    };
    match outcome {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(Failure::Invalid(m)) => {
            eprintln!("error: {m}");
            1
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(run(["quadbound", "verify", "roundtrip", "--n", "2", "--sigma", "2", "--exhaustive"]), 0);
        assert_eq!(run(["quadbound", "frobnicate"]), 2);
        assert_eq!(run(["quadbound", "enumerate", "--n", "1"]), 2);
        assert_eq!(run(["quadbound", "enumerate", "--n", "1", "--sigma", "1", "--kind", "Z"]), 2);
        assert_eq!(run(["quadbound", "enumerate", "--n", "9", "--sigma", "1", "--kind", "Q"]), 2);
        assert_eq!(run(["quadbound", "--help"]), 0);
    }

}
