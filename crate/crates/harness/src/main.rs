use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use doho::distances::{dist_to_support_m, emd, tv, GroundMetric};
use doho::{FiniteDistribution, Seed};
use doho_harness::{calibrate, default_tables, run_experiment, CalibrationFile, CalibrationSuite, ExperimentSpec, HarnessError, InstanceSpec};

#[derive(Parser)]
#[command(name = "doho", version, about = "Testers for distributions over huge objects")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum DistKind {
    Emd,
    Tv,
    Support,
}

#[derive(Clone, Copy, ValueEnum)]
enum Metric {
    Hamming,
    Inequality,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment spec.
    Run {
        spec: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Output file; overrides the spec's `output`. Stdout when neither is set.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Calibrate a tester's constants on a fixture suite.
    Calibrate {
        tester: String,
        suite: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Calibration file to update with the result.
        #[arg(long)]
        write: Option<PathBuf>,
    },
    /// Exact distances between distribution files.
    Dist {
        #[arg(value_enum)]
        kind: DistKind,
        first: PathBuf,
        /// Second distribution file, or `m` for `support`.
        second: String,
        #[arg(long, value_enum, default_value = "hamming")]
        metric: Metric,
    },
    /// Write a generated distribution, e.g. `gen far-subset n=16 size=4 min_distance=0.25 -o a.dist`.
    Gen {
        generator: String,
        params: Vec<String>,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check a distribution file.
    Validate { file: PathBuf },
    /// Print the default constants of every tester as JSON.
    Constants,
}

enum Failure {
    Usage(String),
    Invalid(String),
}

impl From<HarnessError> for Failure {
    fn from(e: HarnessError) -> Self {
        match e {
            HarnessError::Io { .. } | HarnessError::Json { .. } | HarnessError::UnknownConstant { .. } => Failure::Usage(e.to_string()),
            e => Failure::Invalid(e.to_string()),
        }
    }
}

impl From<doho::Error> for Failure {
    fn from(e: doho::Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_dist(path: &Path) -> Result<FiniteDistribution, Failure> {
    Ok(FiniteDistribution::parse_file(&read(path)?)?)
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

const STRING_KEYS: [&str; 4] = ["x", "center", "path", "graph"];

fn generator_spec(generator: &str, params: &[String]) -> Result<InstanceSpec, Failure> {
    let mut map = serde_json::Map::new();
    map.insert("generator".into(), generator.into());
    for p in params {
        let (k, v) = p.split_once('=').ok_or_else(|| Failure::Usage(format!("parameter `{p}` is not key=value")))?;
        let value = if STRING_KEYS.contains(&k) {
            serde_json::Value::String(v.into())
        } else {
            serde_json::from_str(v).unwrap_or_else(|_| serde_json::Value::String(v.into()))
        };
        map.insert(k.into(), value);
    }
    serde_json::from_value(map.into()).map_err(|e| Failure::Usage(format!("generator `{generator}`: {e}")))
}

fn execute(command: Command) -> Result<(), Failure> {
    match command {
        Command::Run { spec, seed, trials, format, output } => {
            let mut spec = ExperimentSpec::from_json(&read(&spec)?)?;
            spec.seed = seed.unwrap_or(spec.seed);
            spec.trials = trials.unwrap_or(spec.trials);
            let report = run_experiment(&spec)?;
            let text = match format {
                Format::Csv => report.to_csv()?,
                Format::Json => report.to_json()? + "\n",
            };
            match output.or(spec.output) {
                Some(path) => write(&path, &text)?,
                None => print!("{text}"),
            }
            eprintln!("{}: accept {}", spec.name, report.aggregates.accept);
        }
        Command::Calibrate { tester, suite, seed, write: file } => {
            let suite: CalibrationSuite =
                serde_json::from_str(&read(&suite)?).map_err(|e| Failure::Usage(format!("{}: {e}", suite.display())))?;
            if suite.tester.id() != tester {
                return Err(Failure::Usage(format!("suite is for `{}`, not `{tester}`", suite.tester.id())));
            }
            let result = calibrate(&suite, seed)?;
            println!("{}", serde_json::to_string_pretty(&result).map_err(|e| Failure::Invalid(e.to_string()))?);
            if let Some(path) = file {
                let mut cal = if path.exists() { CalibrationFile::load(&path)? } else { CalibrationFile::default() };
                cal.record(&result);
                cal.save(&path)?;
            }
        }
        Command::Dist { kind, first, second, metric } => {
            let p = load_dist(&first)?;
            match kind {
                DistKind::Support => {
                    let m: usize = second.parse().map_err(|_| Failure::Usage(format!("`{second}` is not a support bound")))?;
                    let (d, centers) = dist_to_support_m(&p, m)?;
                    println!("{d}");
                    for c in centers {
                        println!("{c}");
                    }
                }
                DistKind::Tv => println!("{}", tv(&p, &load_dist(Path::new(&second))?)?),
                DistKind::Emd => {
                    let g = match metric {
                        Metric::Hamming => GroundMetric::RelativeHamming,
                        Metric::Inequality => GroundMetric::Inequality,
                    };
                    println!("{}", emd(&p, &load_dist(Path::new(&second))?, g)?.0);
                }
            }
        }
        Command::Gen { generator, params, output, seed } => {
            let spec = generator_spec(&generator, &params)?;
            let inst = spec.build(Seed(seed))?;
            let d = inst
                .explicit()
                .ok_or_else(|| Failure::Invalid(format!("`{generator}` with these parameters has no explicit form")))?;
            write(&output, &d.to_file_string())?;
        }
        Command::Constants => {
            let tables = default_tables()?;
            println!("{}", serde_json::to_string_pretty(&tables).map_err(|e| Failure::Invalid(e.to_string()))?);
        }
        Command::Validate { file } => {
            let d = load_dist(&file)?;
            println!("ok: n = {}, {} atoms", d.n(), d.support_size());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}
