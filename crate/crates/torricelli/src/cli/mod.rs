//! Command-line front end: `verify`, `run`, `fuzz` and `svg`.
//!
//! Exit-code contract, stable across subcommands: 0 success, 1 a claim or
//! assertion failed (including degenerate-triangle construction failures),
//! 2 usage or I/O error. The JSON report never contains floats; doubles
//! appear only in SVG output.

pub mod svg;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::geom::Point;
use crate::napoleon::build_bundle;
use crate::qsqrt3::Rat;
use crate::scenario;
use crate::theorems::run_all;

pub use svg::{LayerSet, SvgScene};

/// Parameters of a fuzzing run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzConfig {
    /// Number of random triangles; at least 1.
    pub trials: u64,
    /// Seed for the deterministic generator.
    pub seed: u64,
    /// Coordinate numerators are drawn from [−bound, bound] and
    /// denominators from [1, bound]; at least 1.
    pub bound: i64,
}

#[derive(Parser)]
#[command(
    name = "torricelli",
    version,
    about = "Exact verification of Napoleon configurations over Q(\u{221a}3)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certify every claim for one triangle and print the JSON report.
    Verify {
        /// Base triangle as "ax,ay bx,by cx,cy" with rational coordinates.
        #[arg(long)]
        triangle: String,
    },
    /// Run a .geo construction script and print one line per assertion.
    Run {
        /// Path to the script.
        path: PathBuf,
    },
    /// Check every claim on randomly generated triangles.
    Fuzz {
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(i64).range(1..))]
        bound: i64,
    },
    /// Render the configuration of a triangle as an SVG figure.
    Svg {
        /// Base triangle as "ax,ay bx,by cx,cy" with rational coordinates.
        #[arg(long)]
        triangle: String,
        /// Which layers to draw.
        #[arg(long, value_enum, default_value = "config")]
        layers: LayerSet,
        /// Output file.
        #[arg(long)]
        out: PathBuf,
    },
}

/// Parse "ax,ay bx,by cx,cy" into three exact points.
pub fn parse_triangle(spec: &str) -> Result<(Point, Point, Point), String> {
    let parts: Vec<&str> = spec.split_whitespace().collect();
    if parts.len() != 3 {
        return Err(format!(
            "expected three comma-separated coordinate pairs, got {}",
            parts.len()
        ));
    }
    let mut points = Vec::with_capacity(3);
    for part in parts {
        let (x, y) = part
            .split_once(',')
            .ok_or_else(|| format!("malformed coordinate pair `{part}`"))?;
        let x: Rat = x.parse().map_err(|e| format!("{e}"))?;
        let y: Rat = y.parse().map_err(|e| format!("{e}"))?;
        points.push(Point::from_rats(x, y));
    }
    let c = points.pop().unwrap();
    let b = points.pop().unwrap();
    let a = points.pop().unwrap();
    Ok((a, b, c))
}

fn format_triangle(a: &Point, b: &Point, c: &Point) -> String {
    // rational inputs have zero √3 parts, so the a-components round-trip
    format!("{},{} {},{} {},{}", a.x.a, a.y.a, b.x.a, b.y.a, c.x.a, c.y.a)
}

/// Verify one triangle; prints the JSON report on stdout.
pub fn cmd_verify(triangle: &str) -> i32 {
    let (a, b, c) = match parse_triangle(triangle) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            eprintln!("usage: verify --triangle \"ax,ay bx,by cx,cy\"");
            return 2;
        }
    };
    let report = run_all(&a, &b, &c);
    println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    if report.all_passed { 0 } else { 1 }
}

/// Run one script; prints "line N: PASS/FAIL: ..." per assertion.
pub fn cmd_run(path: &Path) -> i32 {
    let source = match fs::read_to_string(path) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", path.display());
            return 2;
        }
    };
    let result = scenario::run_script(&source);
    match &result.outcome {
        Ok(outcome) => {
            for a in &outcome.assertions {
                let verdict = if a.passed { "PASS" } else { "FAIL" };
                println!("line {}: {}: {}: {}", a.line, verdict, a.text, a.details);
            }
        }
        Err(e) => eprintln!("error: {e}"),
    }
    result.status
}

fn random_rat(rng: &mut ChaCha8Rng, bound: i64) -> Rat {
    let num = rng.gen_range(-bound..=bound);
    let den = rng.gen_range(1..=bound);
    Rat::new(num, den).expect("positive denominator")
}

/// Deterministic per-trial generator: one ChaCha stream per trial index.
fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Draw a non-degenerate triangle, rejecting collinear draws.
pub fn random_triangle(rng: &mut ChaCha8Rng, bound: i64) -> (Point, Point, Point) {
    loop {
        let mut coord = || {
            let x = random_rat(rng, bound);
            let y = random_rat(rng, bound);
            Point::from_rats(x, y)
        };
        let (a, b, c) = (coord(), coord(), coord());
        if !crate::geom::collinear(&a, &b, &c) {
            return (a, b, c);
        }
    }
}

/// Run every claim on `trials` random triangles; prints failures and the
/// final tally. Exit 0 iff all trials pass.
pub fn cmd_fuzz(config: &FuzzConfig) -> i32 {
    let mut passed = 0u64;
    for index in 0..config.trials {
        let mut rng = trial_rng(config.seed, index);
        let (a, b, c) = random_triangle(&mut rng, config.bound);
        let report = run_all(&a, &b, &c);
        if report.all_passed {
            passed += 1;
        } else {
            for r in report.results.iter().filter(|r| !r.passed) {
                println!(
                    "trial {index}: triangle \"{}\": claim {} failed: {}",
                    format_triangle(&a, &b, &c),
                    r.name,
                    r.details
                );
            }
        }
    }
    println!("{passed}/{} passed", config.trials);
    if passed == config.trials { 0 } else { 1 }
}

/// Render one triangle's configuration to an SVG file.
pub fn cmd_svg(triangle: &str, layers: LayerSet, out: &Path) -> i32 {
    let (a, b, c) = match parse_triangle(triangle) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let bundle = match build_bundle(&a, &b, &c) {
        Ok(bundle) => bundle,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    let document = svg::scene(&bundle, layers).render();
    if let Err(e) = fs::write(out, document) {
        eprintln!("error: cannot write {}: {e}", out.display());
        return 2;
    }
    0
}

/// Parse arguments and dispatch; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version print to stdout and succeed
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match cli.command {
        Command::Verify { triangle } => cmd_verify(&triangle),
        Command::Run { path } => cmd_run(&path),
        Command::Fuzz { trials, seed, bound } => cmd_fuzz(&FuzzConfig { trials, seed, bound }),
        Command::Svg { triangle, layers, out } => cmd_svg(&triangle, layers, &out),
    }
}
