use clap::{Args, Parser, Subcommand};
use locdisc::harness::{record_path, run, write_results, Scenario, ScenarioConfig};
use locdisc::Error;
use std::path::PathBuf;
use std::process::ExitCode;

/// Default output directory when `--out` is not given.
const OUT_ENV: &str = "LOCDISC_OUT";

#[derive(Parser)]
#[command(name = "locdisc", version, about = "Localized discrepancy examples, suites, sweeps and oracle checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reproduce one worked example (4.1 to 4.4).
    Example {
        #[arg(long)]
        id: String,
        #[command(flatten)]
        common: Common,
    },
    /// Run a property suite: lemma52, prop54 or bounds.
    Suite {
        #[arg(long)]
        name: String,
        #[command(flatten)]
        common: Common,
    },
    /// Empirical estimates over a ladder of sample sizes.
    Sweep {
        #[command(flatten)]
        common: Common,
    },
    /// Compare population values against the dense-grid oracle.
    OracleCompare {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Default)]
struct Common {
    /// JSON file of config keys; flags given on the command line win.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    epsilon: Option<f64>,
    /// One or more radii, comma separated.
    #[arg(long, value_delimiter = ',')]
    r: Option<Vec<f64>>,
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long, value_delimiter = ',')]
    gamma: Option<Vec<f64>>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    sizes: Option<Vec<usize>>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    resolution: Option<f64>,
    #[arg(long)]
    configs: Option<usize>,
    #[arg(long)]
    multiplier: Option<f64>,
    #[arg(long)]
    segment_y: Option<f64>,
}

impl Common {
    fn resolve(&self, scenario: Scenario) -> Result<ScenarioConfig, Error> {
        let mut cfg = match &self.config {
            Some(path) => {
                let text =
                    std::fs::read_to_string(path).map_err(|e| Error::Io { path: path.clone(), source: e })?;
                ScenarioConfig::from_json_overlay(scenario, &text)?
            }
            None => ScenarioConfig::for_scenario(scenario),
        };
        macro_rules! set {
            ($($field:ident <- $flag:ident),* $(,)?) => {
                $(if let Some(v) = self.$flag.clone() { cfg.$field = v; })*
            };
        }
        set!(epsilon <- epsilon, r <- r, delta <- delta, gammas <- gamma, n <- n, sizes <- sizes,
             trials <- trials, seed <- seed, resolution <- resolution, configs <- configs,
             multiplier <- multiplier, segment_y <- segment_y);
        if let Some(m) = self.m {
            cfg.m = m;
        } else if self.n.is_some() {
            cfg.m = cfg.n;
        }
        if self.d.is_some() {
            cfg.d = self.d;
        }
        if self.out.is_some() {
            cfg.out = self.out.clone();
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn execute(cli: Cli) -> Result<bool, Error> {
    let (scenario, common) = match &cli.command {
        Command::Example { id, common } => {
            let s: Scenario = id.parse()?;
            if !s.is_example() {
                return Err(Error::InvalidParameter(format!("'{id}' is not an example id")));
            }
            (s, common)
        }
        Command::Suite { name, common } => {
            let s: Scenario = name.parse()?;
            if !s.is_suite() {
                return Err(Error::InvalidParameter(format!("'{name}' is not a suite")));
            }
            (s, common)
        }
        Command::Sweep { common } => (Scenario::Sweep, common),
        Command::OracleCompare { common } => (Scenario::OracleCompare, common),
    };
    let cfg = common.resolve(scenario)?;
    let dir = cfg
        .out
        .clone()
        .or_else(|| std::env::var_os(OUT_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("results"));
    let record = run(&cfg)?;
    print!("{}", record.summary());
    for path in write_results(&record, &record_path(&dir, scenario))? {
        eprintln!("wrote {}", path.display());
    }
    Ok(record.passed())
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
