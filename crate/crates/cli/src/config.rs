//! Argument parsing and run configuration.

use std::ffi::OsString;
use std::path::PathBuf;

use barbell_walk::experiments::{
    SwitchTime, DEFAULT_FULLSPACE_CAP, DEFAULT_STAGE2_WEIGHT, SWEEP_WINDOW_X,
};
use barbell_walk::graph_model::critical_gamma;
use barbell_walk::{Error as CoreError, Observable, Params, WalkKind};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{CliError, CliResult};

pub const CAP_ENV: &str = "BARBELL_FULLSPACE_CAP";
pub const DEFAULT_N: usize = 1024;
pub const DEFAULT_SAMPLES: usize = 1001;
pub const DEFAULT_ORACLE_TIMES: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Laplacian,
    Adjacency,
}

impl From<KindArg> for WalkKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Laplacian => WalkKind::Laplacian,
            KindArg::Adjacency => WalkKind::Adjacency,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Svg,
    Both,
}

impl OutputFormat {
    pub fn csv(self) -> bool {
        matches!(self, OutputFormat::Csv | OutputFormat::Both)
    }

    pub fn svg(self) -> bool {
        matches!(self, OutputFormat::Svg | OutputFormat::Both)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ObservableArg {
    /// Marked vertex `a`.
    Marked,
    /// Marked clique `a + b + c`.
    Clique,
}

#[derive(Debug, Parser)]
#[command(
    name = "barbell",
    version,
    about = "Quantum walk search on weighted barbell graphs",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Debug, Args)]
struct WalkArgs {
    /// Number of vertices (even, at least 6).
    #[arg(long, default_value_t = DEFAULT_N)]
    n: usize,
    /// Bridge weight.
    #[arg(long = "w", default_value_t = 1.0, allow_negative_numbers = true)]
    w: f64,
    /// Jumping rate; defaults to 2/N.
    #[arg(long, allow_negative_numbers = true)]
    gamma: Option<f64>,
    #[arg(long, value_enum, default_value_t = KindArg::Adjacency)]
    kind: KindArg,
    /// End of the time window; defaults to 6√N.
    #[arg(long = "tmax", allow_negative_numbers = true)]
    t_max: Option<f64>,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Output file (csv/svg) or directory (sweep, figure).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    /// Number of time samples.
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// Sample per-type probabilities over time.
    Evolve {
        #[command(flatten)]
        walk: WalkArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Locate the first dominant peak of an observable.
    Peak {
        #[command(flatten)]
        walk: WalkArgs,
        #[arg(long, value_enum, default_value_t = ObservableArg::Marked)]
        observable: ObservableArg,
    },
    /// Peak data for a list of bridge weights.
    Sweep {
        #[arg(long, default_value_t = DEFAULT_N)]
        n: usize,
        #[arg(long, value_enum, default_value_t = KindArg::Adjacency)]
        kind: KindArg,
        /// Comma-separated weights.
        #[arg(
            long,
            value_delimiter = ',',
            required = true,
            allow_negative_numbers = true
        )]
        weights: Vec<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Two-stage search: resonant bridge, then a small-weight bridge.
    TwoStage {
        #[arg(long, default_value_t = DEFAULT_N)]
        n: usize,
        /// Stage-two bridge weight.
        #[arg(long = "stage2-w", default_value_t = DEFAULT_STAGE2_WEIGHT, allow_negative_numbers = true)]
        stage2_w: f64,
        /// `analytic`, `numeric`, or an explicit switching time.
        #[arg(long, default_value = "analytic")]
        switch: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Print the peak and schedule constants.
    Constants,
    /// Compare full-space and subspace evolution.
    OracleCheck {
        #[arg(long, default_value_t = 64)]
        n: usize,
        #[arg(long = "w", default_value_t = 1.0, allow_negative_numbers = true)]
        w: f64,
        #[arg(long, value_enum, default_value_t = KindArg::Adjacency)]
        kind: KindArg,
        /// Number of sample times on [0, 5√N].
        #[arg(long, default_value_t = DEFAULT_ORACLE_TIMES)]
        times: usize,
        /// Largest N for the full-space run; overrides the environment.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Regenerate the data and plot of one figure (4 to 10).
    Figure {
        #[arg(value_parser = clap::value_parser!(u8).range(4..=10))]
        k: u8,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = OutputFormat::Both)]
        format: OutputFormat,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Evolve,
    Peak(Observable),
    Sweep,
    TwoStage {
        stage2_weight: f64,
        switch: SwitchTime<f64>,
    },
    Constants,
    OracleCheck {
        n_times: usize,
    },
    Figure(u8),
}

/// Fully defaulted and validated run description.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub n: usize,
    pub weights: Vec<f64>,
    pub gamma: f64,
    pub kind: WalkKind,
    pub t_max: f64,
    pub n_samples: usize,
    pub output: Option<PathBuf>,
    pub format: OutputFormat,
    pub fullspace_cap: usize,
}

impl RunConfig {
    pub fn params(&self) -> Params {
        Params::new(self.n, self.weights[0], self.gamma, self.kind)
            .expect("validated at parse time")
    }
}

pub fn parse_cli<I, S>(argv: I) -> CliResult<RunConfig>
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    parse_cli_with_env(argv, std::env::var(CAP_ENV).ok().as_deref())
}

/// As [`parse_cli`], with the cap environment variable passed explicitly.
pub fn parse_cli_with_env<I, S>(argv: I, cap_env: Option<&str>) -> CliResult<RunConfig>
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| {
        use clap::error::ErrorKind;
        match e.kind() {
            ErrorKind::DisplayHelp
            | ErrorKind::DisplayVersion
            | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand
                if e.exit_code() == 0 =>
            {
                CliError::Info(e.render().to_string())
            }
            _ => {
                let text = e.render().to_string();
                CliError::Usage(text.trim_start_matches("error: ").trim_end().to_string())
            }
        }
    })?;
    let env_cap = match cap_env {
        Some(s) => Some(s.trim().parse::<usize>().map_err(|_| {
            CliError::Usage(format!("{CAP_ENV}: expected a positive integer, got {s:?}"))
        })?),
        None => None,
    };
    let mut cfg = RunConfig {
        command: Command::Constants,
        n: DEFAULT_N,
        weights: vec![1.0],
        gamma: critical_gamma(DEFAULT_N),
        kind: WalkKind::Adjacency,
        t_max: default_t_max(DEFAULT_N),
        n_samples: DEFAULT_SAMPLES,
        output: None,
        format: OutputFormat::Csv,
        fullspace_cap: env_cap.unwrap_or(DEFAULT_FULLSPACE_CAP),
    };

    match cli.command {
        Sub::Evolve { walk, output } => {
            cfg.command = Command::Evolve;
            apply_walk(&mut cfg, walk);
            apply_output(&mut cfg, output, OutputFormat::Csv);
        }
        Sub::Peak { walk, observable } => {
            cfg.command = Command::Peak(match observable {
                ObservableArg::Marked => Observable::MarkedVertex,
                ObservableArg::Clique => Observable::MarkedClique,
            });
            apply_walk(&mut cfg, walk);
        }
        Sub::Sweep {
            n,
            kind,
            weights,
            output,
        } => {
            cfg.command = Command::Sweep;
            set_n(&mut cfg, n);
            cfg.kind = kind.into();
            cfg.weights = weights;
            apply_output(&mut cfg, output, OutputFormat::Csv);
        }
        Sub::TwoStage {
            n,
            stage2_w,
            switch,
            output,
        } => {
            set_n(&mut cfg, n);
            cfg.weights = vec![n as f64 / 2.0];
            let switch = match switch.as_str() {
                "analytic" => SwitchTime::Analytic,
                "numeric" => SwitchTime::NumericCliquePeak,
                other => match other.parse::<f64>() {
                    Ok(t) if t > 0.0 && t.is_finite() => SwitchTime::Override(t),
                    _ => {
                        return Err(CliError::Usage(format!(
                            "--switch: expected analytic, numeric or a positive time, got {other:?}"
                        )))
                    }
                },
            };
            if !(stage2_w >= 0.0 && stage2_w.is_finite()) {
                return Err(CliError::Usage(format!(
                    "--stage2-w: must be a finite non-negative weight, got {stage2_w}"
                )));
            }
            cfg.command = Command::TwoStage {
                stage2_weight: stage2_w,
                switch,
            };
            apply_output(&mut cfg, output, OutputFormat::Csv);
        }
        Sub::Constants => {}
        Sub::OracleCheck {
            n,
            w,
            kind,
            times,
            cap,
        } => {
            set_n(&mut cfg, n);
            cfg.weights = vec![w];
            cfg.kind = kind.into();
            if times < 2 {
                return Err(CliError::Usage(format!(
                    "--times: need at least 2, got {times}"
                )));
            }
            if let Some(c) = cap {
                cfg.fullspace_cap = c;
            }
            cfg.command = Command::OracleCheck { n_times: times };
        }
        Sub::Figure {
            k,
            out,
            format,
            samples,
        } => {
            cfg.command = Command::Figure(k);
            cfg.output = Some(out);
            cfg.format = format;
            cfg.n_samples = samples;
        }
    }
    validate(&cfg)?;
    Ok(cfg)
}

pub fn default_t_max(n: usize) -> f64 {
    SWEEP_WINDOW_X * (n as f64).sqrt()
}

fn set_n(cfg: &mut RunConfig, n: usize) {
    cfg.n = n;
    cfg.gamma = critical_gamma(n);
    cfg.t_max = default_t_max(n);
}

fn apply_walk(cfg: &mut RunConfig, walk: WalkArgs) {
    set_n(cfg, walk.n);
    cfg.weights = vec![walk.w];
    cfg.kind = walk.kind.into();
    if let Some(g) = walk.gamma {
        cfg.gamma = g;
    }
    if let Some(t) = walk.t_max {
        cfg.t_max = t;
    }
}

fn apply_output(cfg: &mut RunConfig, output: OutputArgs, default: OutputFormat) {
    cfg.output = output.out;
    cfg.format = output.format.unwrap_or(default);
    cfg.n_samples = output.samples;
}

fn validate(cfg: &RunConfig) -> CliResult<()> {
    if cfg.weights.is_empty() {
        return Err(CliError::Usage("--weights: list is empty".into()));
    }
    for &w in &cfg.weights {
        Params::new(cfg.n, w, cfg.gamma, cfg.kind).map_err(|e| {
            let flag = match e {
                CoreError::OddN(_) | CoreError::NTooSmall(_) => "--n",
                CoreError::NegativeWeight(_) if cfg.command == Command::Sweep => "--weights",
                CoreError::NegativeWeight(_) => "--w",
                CoreError::NonPositiveGamma(_) => "--gamma",
                _ => "arguments",
            };
            CliError::Usage(format!("{flag}: {e}"))
        })?;
    }
    if !(cfg.t_max > 0.0 && cfg.t_max.is_finite()) {
        return Err(CliError::Usage(format!(
            "--tmax: must be positive, got {}",
            cfg.t_max
        )));
    }
    if cfg.n_samples < 2 {
        return Err(CliError::Usage(format!(
            "--samples: need at least 2, got {}",
            cfg.n_samples
        )));
    }
    let needs_file = matches!(
        cfg.command,
        Command::Evolve | Command::TwoStage { .. } | Command::Sweep
    );
    if needs_file && cfg.format.svg() && cfg.output.is_none() {
        return Err(CliError::Usage(
            "--out: required when --format includes svg".into(),
        ));
    }
    if cfg.fullspace_cap == 0 {
        return Err(CliError::Usage("full-space cap must be positive".into()));
    }
    Ok(())
}
