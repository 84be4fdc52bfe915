//! The `busemann` command line.
//!
//! ```text
//! busemann fixtures [--tol T] [--format json|csv] [--out PATH]
//! busemann bary     --config PATH [--tol T] [--format json|csv] [--out PATH]
//! busemann w1       --config PATH
//! busemann ergodic  --config PATH [--seed S]
//! busemann probe    --config PATH [--seed S]
//! ```
//!
//! Exit codes: 0 success, 1 fixture or check failure, 2 usage error,
//! 3 resource limit.

mod config;
mod fixtures;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

pub use config::{
    AtomDoc, CommandKind, ExperimentConfig, LimitsDoc, MeasureDoc, Method, ObservableDoc, ProbeDoc, StateDoc, SystemDoc,
};
pub use fixtures::{run_fixtures, FixtureReport, FixtureResult, RARO_OFFSET_FLOOR};

use crate::barycenter::{bar_n_with, bar_star_with, cartan_barycenter, replication_gap_probe, BarycenterReport};
use crate::ergodic::{
    convergence_diagnostics, l1_contraction_estimate, maximal_gap_probe, temperedness_check, DynamicalSystem, State,
};
use crate::error::{Error, Result};
use crate::spaces::{convex_hull_diameter_probe, AnySpace, SpacePoint};
use crate::transport::w1_with_cap;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

pub const DEFAULT_TOL: f64 = 1e-8;
pub const DEFAULT_N_GRID: [usize; 5] = [16, 32, 64, 128, 256];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "busemann", version, about = "Barycenters in Busemann spaces, W1 transport and ergodic averages")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// JSON experiment configuration.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Tolerance; overrides the config.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Seed for all random draws; overrides the config.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Reproduce the tripod fixtures.
    Fixtures,
    /// Barycenter of a measure or family.
    Bary,
    /// Wasserstein-1 distance of two measures.
    W1,
    /// Convergence table of ergodic averages.
    Ergodic,
    /// Diagnostic probes.
    Probe,
}

impl Command {
    fn kind(self) -> CommandKind {
        match self {
            Command::Fixtures => CommandKind::Fixtures,
            Command::Bary => CommandKind::Barycenter,
            Command::W1 => CommandKind::Wasserstein,
            Command::Ergodic => CommandKind::Ergodic,
            Command::Probe => CommandKind::Probe,
        }
    }
}

/// Rendered output of a command.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub text: String,
    /// A fixture or check did not hold.
    pub failed: bool,
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Resource(_) | Error::Io(_) => EXIT_RESOURCE,
        _ => EXIT_USAGE,
    }
}

/// Parses `args` (including the program name), runs the command and writes
/// the result. Returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli).and_then(|outcome| emit(&cli, &outcome).map(|()| outcome)) {
        Ok(outcome) if outcome.failed => EXIT_FAILURE,
        Ok(_) => EXIT_OK,
        Err(e) => {
            eprintln!("busemann: {e}");
            exit_code(&e)
        }
    }
}

fn emit(cli: &Cli, outcome: &Outcome) -> Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, &outcome.text)?,
        None => std::io::stdout().lock().write_all(outcome.text.as_bytes())?,
    }
    Ok(())
}

fn load_config(cli: &Cli) -> Result<ExperimentConfig> {
    let path = cli.config.as_ref().ok_or_else(|| Error::Usage("this command needs --config <path>".into()))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Usage(format!("cannot read config {}: {e}", path.display())))?;
    let config = ExperimentConfig::from_json(&text)?;
    if config.command != cli.command.kind() {
        return Err(Error::Usage(format!(
            "config is for command {} but {} was invoked",
            serde_json::to_string(&config.command)?,
            serde_json::to_string(&cli.command.kind())?
        )));
    }
    Ok(config)
}

/// Runs the command without writing anything.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    if cli.command == Command::Fixtures {
        let tol = cli.tol.unwrap_or(1e-10);
        let report = run_fixtures(tol)?;
        let rows = report
            .fixtures
            .iter()
            .map(|f| {
                vec![
                    f.name.to_string(),
                    f.expected.to_string(),
                    f.measured.to_string(),
                    f.tolerance.to_string(),
                    f.comparison.to_string(),
                    f.passed.to_string(),
                ]
            })
            .collect();
        let table = Table::new(&["name", "expected", "measured", "tolerance", "comparison", "passed"], rows);
        return Ok(Outcome { text: render(cli.format, &report, &table)?, failed: !report.passed });
    }
    let config = load_config(cli)?;
    let tol = cli.tol.or(config.tol).unwrap_or(DEFAULT_TOL);
    let seed = cli.seed.or(config.seed).unwrap_or(0);
    let ctx = Ctx { config: &config, tol, seed, format: cli.format };
    match cli.command {
        Command::Bary => ctx.bary(),
        Command::W1 => ctx.w1(),
        Command::Ergodic => ctx.ergodic(),
        Command::Probe => ctx.probe(),
        Command::Fixtures => unreachable!("handled above"),
    }
}

/// CSV rows with a fixed column order.
struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn new(header: &[&str], rows: Vec<Vec<String>>) -> Self {
        Self { header: header.iter().map(|s| s.to_string()).collect(), rows }
    }

    fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }
}

fn render<T: Serialize>(format: Format, value: &T, table: &Table) -> Result<String> {
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(value)? + "\n",
        Format::Csv => table.to_csv()?,
    })
}

fn point_json(space: &AnySpace, p: &SpacePoint) -> String {
    serde_json::to_string(&space.point_doc(p)).expect("point documents serialize")
}

struct Ctx<'a> {
    config: &'a ExperimentConfig,
    tol: f64,
    seed: u64,
    format: Format,
}

impl Ctx<'_> {
    fn ok<T: Serialize>(&self, value: &T, table: Table) -> Result<Outcome> {
        Ok(Outcome { text: render(self.format, value, &table)?, failed: false })
    }

    fn report(&self, space: &AnySpace, report: BarycenterReport<SpacePoint>) -> Result<Outcome> {
        let row = vec![
            point_json(space, &report.point),
            report.replication_level.to_string(),
            report.expansion_size.to_string(),
            serde_json::to_string(&report.stop)?.trim_matches('"').to_string(),
            report.level_error.to_string(),
        ];
        let table =
            Table::new(&["point_serialized", "replication_level", "expansion_size", "stop", "level_error"], vec![row]);
        let doc = report.map_point(|p| space.point_doc(&p));
        self.ok(&doc, table)
    }

    fn bary(&self) -> Result<Outcome> {
        let c = self.config;
        let space = c.space()?;
        let opts = c.limits.star_options();
        match c.method {
            config::Method::Star => {
                let mu = ExperimentConfig::require(&c.measure, "measure")?.parse(&space)?;
                self.report(&space, bar_star_with(&space, &mu, self.tol, &opts)?)
            }
            config::Method::Inductive => {
                let family = c.family(&space)?;
                self.report(&space, bar_n_with(&space, &family, self.tol, &opts.bar)?)
            }
            config::Method::Cartan => {
                let mu = ExperimentConfig::require(&c.measure, "measure")?.parse(&space)?;
                let p = cartan_barycenter(&space, &mu, self.tol)?;
                let table = Table::new(&["point_serialized"], vec![vec![point_json(&space, &p)]]);
                self.ok(&json!({ "point": space.point_doc(&p) }), table)
            }
        }
    }

    fn w1(&self) -> Result<Outcome> {
        let c = self.config;
        let space = c.space()?;
        let mu = ExperimentConfig::require(&c.measure, "measure")?.parse(&space)?;
        let nu = ExperimentConfig::require(&c.measure2, "measure2")?.parse(&space)?;
        let d = w1_with_cap(&space, &mu, &nu, c.limits.star_options().denominator_cap)?;
        self.ok(&json!({ "w1": d }), Table::new(&["w1"], vec![vec![d.to_string()]]))
    }

    fn system(&self) -> Result<DynamicalSystem> {
        ExperimentConfig::require(&self.config.system, "system")?.build()
    }

    fn omega(&self, system: &DynamicalSystem) -> Result<State> {
        match &self.config.omega {
            Some(doc) => doc.state(system),
            None => Ok(system.sample_states(1, self.seed)[0]),
        }
    }

    fn ergodic(&self) -> Result<Outcome> {
        let c = self.config;
        let space = c.space()?;
        let system = self.system()?;
        let phi = ExperimentConfig::require(&c.observable, "observable")?.build(&space)?;
        let omega = self.omega(&system)?;
        let grid = c.n_grid.clone().unwrap_or_else(|| DEFAULT_N_GRID.to_vec());
        let table = convergence_diagnostics(&space, &system, &phi, &omega, &grid, self.tol, &c.limits.star_options())?;
        match self.format {
            Format::Csv => {
                let mut buf = Vec::new();
                table.write_csv(&mut buf, |p| point_json(&space, p))?;
                Ok(Outcome { text: String::from_utf8(buf).expect("csv output is UTF-8"), failed: false })
            }
            Format::Json => {
                let rows: Vec<Value> = table
                    .rows
                    .iter()
                    .map(|r| {
                        json!({
                            "n": r.n,
                            "point": space.point_doc(&r.point),
                            "distance_to_candidate": r.distance_to_candidate,
                            "level_error": r.level_error,
                        })
                    })
                    .collect();
                let doc = json!({
                    "omega": omega,
                    "candidate": space.point_doc(&table.candidate),
                    "exact_limit": table.exact_limit,
                    "rows": rows,
                });
                Ok(Outcome { text: serde_json::to_string_pretty(&doc)? + "\n", failed: false })
            }
        }
    }

    fn probe(&self) -> Result<Outcome> {
        let c = self.config;
        let opts = c.limits.star_options();
        match ExperimentConfig::require(&c.probe, "probe")? {
            ProbeDoc::Replication { k, max_l } => {
                let space = c.space()?;
                let mu = ExperimentConfig::require(&c.measure, "measure")?.parse(&space)?;
                let gaps = replication_gap_probe(&space, &mu, *k, *max_l, self.tol, &opts)?;
                let rows = gaps
                    .iter()
                    .map(|g| {
                        vec![g.k.to_string(), g.l.to_string(), g.gap.to_string(), g.bound.to_string(), g.numerical_error.to_string()]
                    })
                    .collect();
                self.ok(&gaps, Table::new(&["k", "l", "gap", "bound", "numerical_error"], rows))
            }
            ProbeDoc::Hull { depth, samples_per_level } => {
                let space = c.space()?;
                let family = c.family(&space)?;
                let diams = convex_hull_diameter_probe(&space, family.points(), *depth, *samples_per_level, self.seed)?;
                let rows = diams.iter().enumerate().map(|(i, d)| vec![i.to_string(), d.to_string()]).collect();
                self.ok(&json!({ "diameters": diams }), Table::new(&["level", "diameter"], rows))
            }
            ProbeDoc::Temperedness { group, max_n } => {
                let report = temperedness_check(*group, *max_n)?;
                let rows = report
                    .per_n
                    .iter()
                    .map(|r| vec![r.n.to_string(), r.union_size.to_string(), r.window_size.to_string(), r.ratio.to_string()])
                    .collect();
                self.ok(&report, Table::new(&["n", "union_size", "window_size", "ratio"], rows))
            }
            ProbeDoc::MaximalGap { omega_samples, max_n } => {
                let space = c.space()?;
                let system = self.system()?;
                let phi = ExperimentConfig::require(&c.observable, "observable")?.build(&space)?;
                let psi = ExperimentConfig::require(&c.observable2, "observable2")?.build(&space)?;
                let report =
                    maximal_gap_probe(&space, &system, &phi, &psi, *omega_samples, *max_n, self.tol, self.seed, &opts)?;
                let rows = report
                    .rows
                    .iter()
                    .map(|r| vec![r.lambda.to_string(), r.probability.to_string(), r.ratio.to_string()])
                    .collect();
                self.ok(&report, Table::new(&["lambda", "probability", "ratio"], rows))
            }
            ProbeDoc::MeasurePreserving { samples } => {
                let check = self.system()?.check_measure_preserving(*samples, self.seed)?;
                let row = vec![check.max_deviation.to_string(), check.threshold.to_string(), check.passed.to_string()];
                let table = Table::new(&["max_deviation", "threshold", "passed"], vec![row]);
                Ok(Outcome { text: render(self.format, &check, &table)?, failed: !check.passed })
            }
            ProbeDoc::Contraction { n, samples } => {
                let space = c.space()?;
                let system = self.system()?;
                let phi = ExperimentConfig::require(&c.observable, "observable")?.build(&space)?;
                let psi = ExperimentConfig::require(&c.observable2, "observable2")?.build(&space)?;
                let est = l1_contraction_estimate(&space, &system, &phi, &psi, *n, *samples, self.tol, self.seed, &opts)?;
                let row = vec![
                    est.n.to_string(),
                    est.lhs.mean.to_string(),
                    est.lhs.std_error.to_string(),
                    est.d1.mean.to_string(),
                    est.d1.std_error.to_string(),
                ];
                let table = Table::new(&["n", "lhs_mean", "lhs_std_error", "d1_mean", "d1_std_error"], vec![row]);
                self.ok(&est, table)
            }
        }
    }
}
