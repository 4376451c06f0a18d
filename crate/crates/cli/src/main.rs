use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use sha2::{Digest, Sha256};

use sepfilt::bounds::{BoundReport, Lemma5Sample};
use sepfilt::complex::{circle, genus_surface, torus, WeightedComplex};
use sepfilt::filtration::{Filtration, FiltrationDocument, SeparationConfig, DEFAULT_MOVE_BUDGET};
use sepfilt::pipeline::{self, RunConfig, Verification};
use sepfilt::rainbow::{color_by_filtration, count_rainbow, refine_with_filtration};
use sepfilt::Error;

const EXIT_INPUT: u8 = 2;
const EXIT_VERIFICATION: u8 = 3;

#[derive(Parser)]
#[command(name = "sepfilt", version, about = "Separating filtrations and simplicial-volume bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a fixture complex.
    Gen {
        #[command(subcommand)]
        shape: Shape,
        /// Output file; stdout when omitted.
        #[arg(long, global = true)]
        out: Option<PathBuf>,
        #[arg(long, global = true)]
        subdivision_depth: Option<usize>,
    },
    /// Build the filtration and write filtration, census, report and manifest.
    Run(RunArgs),
    /// Re-check a filtration file and write an inequality sweep.
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum Shape {
    Torus {
        #[arg(long)]
        side: usize,
        #[arg(long, default_value_t = 1.0)]
        cell: f64,
    },
    Circle {
        #[arg(long)]
        nodes: usize,
        #[arg(long)]
        length: f64,
    },
    GenusGSurface {
        #[arg(long)]
        genus: usize,
    },
}

#[derive(Args)]
struct RunArgs {
    complex: PathBuf,
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
    #[arg(long, default_value_t = 1e-6)]
    epsilon: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    subdivision_depth: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_MOVE_BUDGET)]
    move_budget: usize,
    #[arg(long, default_value_t = 200)]
    samples: usize,
    /// Known systole of the input, recorded in the report.
    #[arg(long)]
    systole: Option<f64>,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    filtration: PathBuf,
    #[arg(long, default_value_t = 500)]
    samples: usize,
    /// Sweep seed; the filtration's own seed when omitted.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Serialize)]
struct ManifestConfig {
    radius: f64,
    epsilon: f64,
    seed: u64,
    subdivision_depth: Option<usize>,
    move_budget: usize,
    samples: usize,
}

#[derive(Serialize)]
struct RunManifest {
    command: String,
    inputs: Vec<String>,
    config: ManifestConfig,
    tool_version: String,
    /// File name and SHA-256 of every output.
    outputs: Vec<(String, String)>,
}

#[derive(Serialize)]
struct ReportFile<'a> {
    bounds: &'a BoundReport,
    verification: &'a Verification,
}

enum Failure {
    Input(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SeparationViolation { .. }
            | Error::CensusMismatch(_)
            | Error::CoverFailure(_)
            | Error::PartitionInvalid(_)
            | Error::RefinementFailed(_) => Failure::Verification(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn io_error(path: &Path, e: std::io::Error) -> Failure {
    Failure::Input(format!("{}: {e}", path.display()))
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| io_error(path, e))
}

/// Writes `contents` under `dir` and returns its digest entry.
fn write(dir: &Path, name: &str, contents: &[u8]) -> Result<(String, String), Failure> {
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|e| io_error(&path, e))?;
    Ok((name.to_string(), hex::encode(Sha256::digest(contents))))
}

fn json<T: Serialize>(value: &T) -> Vec<u8> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable output");
    text.push('\n');
    text.into_bytes()
}

fn sweep_csv(samples: &[Lemma5Sample]) -> Result<Vec<u8>, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let fail = |e: csv::Error| Failure::Input(format!("csv: {e}"));
    w.write_record(["p", "r1", "r2", "lhs", "rhs", "residual", "tolerance", "violation"]).map_err(fail)?;
    for s in samples {
        w.write_record([
            s.p.to_string(),
            s.r1.to_string(),
            s.r2.to_string(),
            s.lhs.to_string(),
            s.rhs.to_string(),
            s.residual.to_string(),
            s.tolerance.to_string(),
            s.violation.to_string(),
        ])
        .map_err(fail)?;
    }
    w.into_inner().map_err(|e| Failure::Input(format!("csv: {e}")))
}

fn summary(samples: &[Lemma5Sample]) -> String {
    let min = samples.iter().map(|s| s.residual).min_by(f64::total_cmp);
    let bad = samples.iter().filter(|s| s.violation).count();
    match min {
        Some(m) => format!("samples {} violations {bad} min_residual {m}", samples.len()),
        None => "samples 0".to_string(),
    }
}

fn generate(shape: &Shape, depth: Option<usize>, out: Option<&Path>) -> Result<(), Failure> {
    let complex = match *shape {
        Shape::Torus { side, cell } => torus(side, cell)?,
        Shape::Circle { nodes, length } => circle(nodes, length)?,
        Shape::GenusGSurface { genus } => genus_surface(genus)?,
    };
    let complex = match depth {
        Some(d) => complex.with_subdivision_depth(d),
        None => complex,
    };
    let mut text = complex.to_json();
    text.push('\n');
    match out {
        Some(path) => fs::write(path, text).map_err(|e| io_error(path, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(args: &RunArgs) -> Result<(), Failure> {
    let mut complex = WeightedComplex::from_json(&read(&args.complex)?)?;
    if let Some(d) = args.subdivision_depth {
        complex = complex.with_subdivision_depth(d);
    }
    let separation = SeparationConfig::new(complex.dimension(), args.radius, args.epsilon, args.seed)?
        .with_move_budget(args.move_budget);
    let config = RunConfig {
        separation,
        samples: args.samples,
        systole: args.systole,
    };
    let out = pipeline::run(&complex, &config)?;
    fs::create_dir_all(&args.out_dir).map_err(|e| io_error(&args.out_dir, e))?;
    let dir = &args.out_dir;
    let outputs = vec![
        write(dir, "filtration.json", out.document().to_json().as_bytes())?,
        write(dir, "census.json", &json(&out.census))?,
        write(
            dir,
            "report.json",
            &json(&ReportFile {
                bounds: &out.report,
                verification: &out.verification,
            }),
        )?,
        write(dir, "lemma5.csv", &sweep_csv(&out.lemma5)?)?,
    ];
    let manifest = RunManifest {
        command: "run".into(),
        inputs: vec![args.complex.display().to_string()],
        config: ManifestConfig {
            radius: args.radius,
            epsilon: args.epsilon,
            seed: args.seed,
            subdivision_depth: args.subdivision_depth,
            move_budget: args.move_budget,
            samples: args.samples,
        },
        tool_version: env!("CARGO_PKG_VERSION").into(),
        outputs,
    };
    write(dir, "manifest.json", &json(&manifest))?;
    println!(
        "zero points {} rainbow {} constant bound {} vanishing {}",
        out.census.zero_points, out.report.rainbow_bound, out.report.constant_bound, out.report.vanishing
    );
    println!("lemma5 {}", summary(&out.lemma5));
    if !out.verification.passed {
        return Err(Failure::Verification(format!("verification failed: {:?}", out.verification)));
    }
    Ok(())
}

fn verify(args: &VerifyArgs) -> Result<(), Failure> {
    let doc = FiltrationDocument::from_json(&read(&args.filtration)?)?;
    let f = Filtration::from_document(&doc)?;
    if let Some(stored) = &doc.census {
        let refined = refine_with_filtration(&f)?;
        let coloring = color_by_filtration(&refined, &f)?;
        let census = count_rainbow(&refined, &coloring, &f)?;
        if &census != stored {
            return Err(Failure::Verification("stored census differs from the recomputed one".into()));
        }
    }
    let samples = match args.seed {
        Some(seed) => sepfilt::bounds::lemma5_sweep(&f, args.samples, seed)?,
        None => pipeline::lemma5_samples(&f, args.samples)?,
    };
    fs::create_dir_all(&args.out_dir).map_err(|e| io_error(&args.out_dir, e))?;
    write(&args.out_dir, "sweep.csv", &sweep_csv(&samples)?)?;
    println!("{}", summary(&samples));
    if samples.iter().any(|s| s.violation) {
        return Err(Failure::Verification("lemma5 sweep has violations".into()));
    }
    Ok(())
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var("SEPFILT_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .parse()
        .map_err(|_| Failure::Input(format!("SEPFILT_THREADS must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Input(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| match &cli.command {
        Command::Gen {
            shape,
            out,
            subdivision_depth,
        } => generate(shape, *subdivision_depth, out.as_deref()),
        Command::Run(args) => run(args),
        Command::Verify(args) => verify(args),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(EXIT_VERIFICATION)
        }
    }
}
