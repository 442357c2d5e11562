//! Batch front end for `wkit`: every computation is one invocation that
//! writes a CSV table or a JSON document.
//!
//! Exit statuses: 0 success, 1 I/O failure, 2 usage error, 3 domain error,
//! 4 numerical failure.

pub mod output;

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};
use wkit::lame::{self, BandStructure, Sign};
use wkit::mechanics::{
    self, cubic_solve, hyperbolic_solve, pendulum_solve, Branch, CubicProblem, HyperbolicProblem,
    Incoming, MotionSolution, PendulumProblem, TrajectoryPoint,
};
use wkit::{EllipticContext64, Error, ErrorClass};

use output::{cnum, num, to_json, Cell, Table, SCHEMA};

/// Environment variable overriding the default tolerances.
pub const TOLERANCE_VAR: &str = "WKIT_TOL";
pub const DEFAULT_TOLERANCE: f64 = lame::SCAN_TOLERANCE;

/// Largest number of rows a single job may emit.
const MAX_ROWS: usize = 10_000_000;

#[derive(Debug, Parser)]
#[command(
    name = "wkit",
    version,
    about = "Weierstrass elliptic functions and their classical applications"
)]
pub struct Cli {
    /// Output format (defaults to JSON for `periods` and `lame bands`, CSV otherwise).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Roots, half-periods and quasi-periods of the lattice.
    Periods(Lattice),
    /// Evaluate a Weierstrass function on a line of points.
    Eval(EvalArgs),
    /// Sample an exact classical trajectory.
    Classical {
        #[command(subcommand)]
        problem: Classical,
    },
    /// The n = 1 Lamé equation.
    Lame {
        #[command(subcommand)]
        job: LameJob,
    },
}

#[derive(Debug, Args)]
struct Lattice {
    #[arg(long, allow_negative_numbers = true)]
    g2: f64,
    #[arg(long, allow_negative_numbers = true)]
    g3: f64,
}

impl Lattice {
    fn context(&self) -> Result<EllipticContext64, Failure> {
        Ok(EllipticContext64::from_invariants(self.g2, self.g3)?)
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Function {
    Wp,
    Wpp,
    Zeta,
    Sigma,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[arg(value_enum)]
    function: Function,
    #[command(flatten)]
    lattice: Lattice,
    #[arg(long, allow_negative_numbers = true)]
    z_re: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    z_im: f64,
    /// Step between consecutive points.
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    dz_re: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    dz_im: f64,
    /// Number of points `z + k·dz`, `k = 0, 1, …`.
    #[arg(long, default_value_t = 1)]
    count: usize,
}

#[derive(Debug, Args)]
struct TimeGrid {
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    t0: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    t_min: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 10.0)]
    t_max: f64,
    #[arg(long, default_value_t = 0.01)]
    dt: f64,
}

impl TimeGrid {
    fn times(&self) -> Result<Vec<f64>, Failure> {
        let finite = [self.t0, self.t_min, self.t_max, self.dt]
            .iter()
            .all(|x| x.is_finite());
        if !finite || self.dt <= 0.0 || self.t_max < self.t_min {
            return Err(Failure::Usage(
                "need finite times, --dt > 0 and --t-max >= --t-min".into(),
            ));
        }
        let steps = ((self.t_max - self.t_min) / self.dt * (1.0 + 1e-12)).floor();
        if steps >= MAX_ROWS as f64 {
            return Err(Failure::Usage(format!("time grid exceeds {MAX_ROWS} rows")));
        }
        Ok((0..=steps as usize)
            .map(|i| self.t_min + i as f64 * self.dt)
            .collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BranchArg {
    /// Bounded when the motion admits it, unbounded otherwise.
    Auto,
    Bounded,
    Unbounded,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Side {
    Left,
    Right,
}

#[derive(Debug, Subcommand)]
enum Classical {
    /// `ẋ² + V(x) = E` with `V(x) = −4x³ − F0·x`.
    Cubic {
        #[arg(long, allow_negative_numbers = true)]
        f0: f64,
        #[arg(long, allow_negative_numbers = true)]
        energy: f64,
        #[arg(long, value_enum, default_value_t = BranchArg::Auto)]
        branch: BranchArg,
        #[command(flatten)]
        grid: TimeGrid,
    },
    /// `θ̈ = −ω² sin θ` at energy `½θ̇² − ω² cos θ = E`.
    Pendulum {
        #[arg(long)]
        omega: f64,
        #[arg(long, allow_negative_numbers = true)]
        energy: f64,
        #[command(flatten)]
        grid: TimeGrid,
    },
    /// `ẍ = −V′(x)` with `V = s·ω²/2·(eˣ − τ·e⁻ˣ)`.
    Hyperbolic {
        #[arg(long)]
        omega: f64,
        #[arg(long, allow_negative_numbers = true)]
        sign_s: i8,
        #[arg(long, allow_negative_numbers = true)]
        sign_tau: i8,
        #[arg(long, allow_negative_numbers = true)]
        energy: f64,
        /// Side a scattering particle comes from (only `s = τ = −1` distinguishes them).
        #[arg(long, value_enum, default_value_t = Side::Right)]
        incoming: Side,
        #[command(flatten)]
        grid: TimeGrid,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SignArg {
    Plus,
    Minus,
}

#[derive(Debug, Subcommand)]
enum LameJob {
    /// Band intervals and the scanned Bloch states.
    Bands {
        #[command(flatten)]
        lattice: Lattice,
        /// Samples per side of the scanned rectangle.
        #[arg(long, default_value_t = 64)]
        samples: usize,
    },
    /// An eigenfunction sampled over one period of the potential.
    Eigen {
        #[command(flatten)]
        lattice: Lattice,
        #[arg(long, allow_negative_numbers = true)]
        a_re: f64,
        #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
        a_im: f64,
        #[arg(long, value_enum, default_value_t = SignArg::Plus)]
        sign: SignArg,
        /// Use the bounded potential `2℘(x + ω2)`.
        #[arg(long)]
        bounded: bool,
        /// Grid points over `[0, 2ω_L]`.
        #[arg(long, default_value_t = 64)]
        samples: usize,
    },
}

/// Why a job failed; each class maps to one exit status.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Library(Error),
    Io(io::Error),
}

impl Failure {
    pub fn status(&self) -> i32 {
        match self {
            Failure::Io(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Library(e) => status_of(e),
        }
    }
}

/// Exit status for a library error.
pub fn status_of(e: &Error) -> i32 {
    match e.class() {
        ErrorClass::Domain => 3,
        ErrorClass::Numerical => 4,
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "usage error: {m}"),
            Failure::Library(e) => write!(f, "error: {e}"),
            Failure::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

/// Parses `argv` (program name first), runs the job and returns the exit
/// status. Results go to `out` (or `--out`), diagnostics to `err`.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let status = e.exit_code();
            let sink: &mut dyn Write = if status == 0 { out } else { err };
            let _ = write!(sink, "{}", e.render());
            return status;
        }
    };
    let outcome = tolerance_from_env()
        .and_then(|tol| execute(&cli, tol))
        .and_then(|bytes| match &cli.out {
            Some(path) => fs::write(path, bytes).map_err(Failure::from),
            None => out.write_all(&bytes).map_err(Failure::from),
        });
    match outcome {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(err, "{f}");
            f.status()
        }
    }
}

fn tolerance_from_env() -> Result<f64, Failure> {
    match std::env::var(TOLERANCE_VAR) {
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_TOLERANCE),
        Err(e) => Err(Failure::Usage(format!("{TOLERANCE_VAR}: {e}"))),
        Ok(s) => match s.trim().parse::<f64>() {
            Ok(t) if t.is_finite() && t > 0.0 => Ok(t),
            _ => Err(Failure::Usage(format!(
                "{TOLERANCE_VAR} must be a positive number, got {s:?}"
            ))),
        },
    }
}

/// Runs a parsed job and returns the bytes to emit.
pub fn execute(cli: &Cli, tolerance: f64) -> Result<Vec<u8>, Failure> {
    let format = cli.format;
    match &cli.command {
        Command::Periods(lattice) => periods(lattice, format.unwrap_or(Format::Json)),
        Command::Eval(args) => eval(args, format.unwrap_or(Format::Csv)),
        Command::Classical { problem } => classical(problem, format.unwrap_or(Format::Csv)),
        Command::Lame {
            job: LameJob::Bands { lattice, samples },
        } => bands(lattice, *samples, tolerance, format.unwrap_or(Format::Json)),
        Command::Lame { job } => eigen(job, format.unwrap_or(Format::Csv)),
    }
}

fn emit(format: Format, table: &Table, mut doc: Value) -> Result<Vec<u8>, Failure> {
    match format {
        Format::Csv => Ok(table.to_csv()?),
        Format::Json => {
            let (columns, rows) = table.to_json();
            doc["columns"] = columns;
            doc["rows"] = rows;
            Ok(to_json(&doc)?)
        }
    }
}

fn periods(lattice: &Lattice, format: Format) -> Result<Vec<u8>, Failure> {
    let ctx = lattice.context()?;
    let (roots, hp) = (ctx.roots(), ctx.half_periods());
    let (g2, g3) = (lattice.g2, lattice.g3);
    let discriminant = g2 * g2 * g2 - 27.0 * g3 * g3;
    let (real, imag) = (
        mechanics::real_period(&ctx),
        mechanics::imaginary_period(&ctx),
    );
    match format {
        Format::Json => Ok(to_json(&json!({
            "schema": SCHEMA,
            "g2": num(g2),
            "g3": num(g3),
            "kind": ctx.kind().name(),
            "discriminant": num(discriminant),
            "roots": [cnum(roots.e1), cnum(roots.e2), cnum(roots.e3)],
            "omega1": cnum(hp.omega1),
            "omega2": cnum(hp.omega2),
            "omega3": cnum(hp.omega3),
            "eta1": cnum(hp.eta1),
            "eta2": cnum(hp.eta2),
            "real_period": num(real),
            "imaginary_period": num(imag),
        }))?),
        Format::Csv => {
            let mut t = Table::new(&["quantity", "re", "im"]);
            let mut row = |name: &str, z: Complex64| {
                t.push(vec![
                    Cell::Text(name.into()),
                    Cell::Float(z.re),
                    Cell::Float(z.im),
                ]);
            };
            row("discriminant", discriminant.into());
            for (name, z) in [("e1", roots.e1), ("e2", roots.e2), ("e3", roots.e3)] {
                row(name, z);
            }
            for (name, z) in [
                ("omega1", hp.omega1),
                ("omega2", hp.omega2),
                ("omega3", hp.omega3),
                ("eta1", hp.eta1),
                ("eta2", hp.eta2),
            ] {
                row(name, z);
            }
            row("real_period", real.into());
            row("imaginary_period", imag.into());
            Ok(t.to_csv()?)
        }
    }
}

fn eval(args: &EvalArgs, format: Format) -> Result<Vec<u8>, Failure> {
    if args.count == 0 || args.count > MAX_ROWS {
        return Err(Failure::Usage(format!(
            "--count must lie in 1..={MAX_ROWS}"
        )));
    }
    let ctx = args.lattice.context()?;
    let (z0, dz) = (
        Complex64::new(args.z_re, args.z_im),
        Complex64::new(args.dz_re, args.dz_im),
    );
    let mut table = Table::new(&["re_z", "im_z", "re_f", "im_f", "pole"]);
    for k in 0..args.count {
        let z = z0 + dz * k as f64;
        let value = match args.function {
            Function::Wp => ctx.wp(z),
            Function::Wpp => ctx.wp_prime(z),
            Function::Zeta => ctx.zeta(z),
            Function::Sigma => Ok(ctx.sigma(z)),
        };
        let (f, pole) = match value {
            Ok(f) => (f, 0),
            Err(Error::PoleAt { .. }) => (Complex64::new(f64::INFINITY, f64::INFINITY), 1),
            Err(e) => return Err(e.into()),
        };
        table.push(vec![
            Cell::Float(z.re),
            Cell::Float(z.im),
            Cell::Float(f.re),
            Cell::Float(f.im),
            Cell::Int(pole),
        ]);
    }
    let name = match args.function {
        Function::Wp => "wp",
        Function::Wpp => "wpp",
        Function::Zeta => "zeta",
        Function::Sigma => "sigma",
    };
    let doc = json!({"schema": SCHEMA, "function": name, "g2": num(args.lattice.g2), "g3": num(args.lattice.g3)});
    emit(format, &table, doc)
}

fn classical(problem: &Classical, format: Format) -> Result<Vec<u8>, Failure> {
    let (name, solution, grid) = match problem {
        Classical::Cubic {
            f0,
            energy,
            branch,
            grid,
        } => {
            let p = CubicProblem::new(*f0, *energy)?;
            let s = match branch {
                BranchArg::Bounded => cubic_solve(&p, Branch::Bounded, grid.t0)?,
                BranchArg::Unbounded => cubic_solve(&p, Branch::Unbounded, grid.t0)?,
                BranchArg::Auto => match cubic_solve(&p, Branch::Bounded, grid.t0) {
                    Err(Error::NoBoundedBranch) => cubic_solve(&p, Branch::Unbounded, grid.t0)?,
                    other => other?,
                },
            };
            ("cubic", s, grid)
        }
        Classical::Pendulum {
            omega,
            energy,
            grid,
        } => (
            "pendulum",
            pendulum_solve(&PendulumProblem::new(*omega, *energy)?, grid.t0)?,
            grid,
        ),
        Classical::Hyperbolic {
            omega,
            sign_s,
            sign_tau,
            energy,
            incoming,
            grid,
        } => {
            let side = match incoming {
                Side::Left => Incoming::Left,
                Side::Right => Incoming::Right,
            };
            let p =
                HyperbolicProblem::new(*omega, *sign_s, *sign_tau, *energy)?.with_incoming(side);
            ("hyperbolic", hyperbolic_solve(&p, grid.t0)?, grid)
        }
    };
    let times = grid.times()?;
    let columns: &[&str] = if name == "pendulum" {
        &["t", "theta", "theta_dot", "energy_residual", "pole"]
    } else {
        &["t", "x", "velocity", "energy_residual", "pole"]
    };
    let table = trajectory(&solution, &times, columns);
    let doc = json!({
        "schema": SCHEMA,
        "problem": name,
        "branch": solution.branch.name(),
        "energy": num(solution.energy()),
        "t0": num(solution.t0),
        "period_or_tof": num(solution.period_or_tof),
        "window": [num(solution.window.0), num(solution.window.1)],
    });
    emit(format, &table, doc)
}

fn trajectory(s: &MotionSolution<f64>, times: &[f64], columns: &[&'static str]) -> Table {
    let mut table = Table::new(columns);
    for &t in times {
        let row = match s.state(t) {
            TrajectoryPoint::State { position, velocity } => {
                let residual = s.energy_of(position, velocity) - s.energy();
                [
                    Cell::Float(position),
                    Cell::Float(velocity),
                    Cell::Float(residual),
                    Cell::Int(0),
                ]
            }
            TrajectoryPoint::Scattered => [
                Cell::Float(f64::INFINITY),
                Cell::Float(f64::INFINITY),
                Cell::Float(f64::NAN),
                Cell::Int(1),
            ],
        };
        table.push([Cell::Float(t)].into_iter().chain(row).collect());
    }
    table
}

fn bands(
    lattice: &Lattice,
    samples: usize,
    tolerance: f64,
    format: Format,
) -> Result<Vec<u8>, Failure> {
    let ctx = lattice.context()?;
    let bs: BandStructure<f64> = lame::band_structure_with_tolerance(&ctx, samples, tolerance)?;
    let mut table = Table::new(&["lambda", "re_k", "im_k", "band_label"]);
    for s in &bs.samples {
        table.push(vec![
            Cell::Float(s.lambda),
            Cell::Float(s.k.re),
            Cell::Float(s.k.im),
            Cell::Text(s.band.name().into()),
        ]);
    }
    match format {
        Format::Csv => Ok(table.to_csv()?),
        Format::Json => {
            let intervals: Vec<Value> = bs
                .bands
                .iter()
                .map(|b| {
                    json!({
                        "lower": num(b.lower),
                        "upper": num(b.upper),
                        "lower_edge": b.lower_edge.map(|e| e.name()),
                        "upper_edge": b.upper_edge.map(|e| e.name()),
                        "band_label": b.band.name(),
                    })
                })
                .collect();
            let (columns, rows) = table.to_json();
            Ok(to_json(&json!({
                "schema": SCHEMA,
                "g2": num(lattice.g2),
                "g3": num(lattice.g3),
                "kind": bs.kind.name(),
                "tolerance": num(tolerance),
                "bands": intervals,
                "diagnostics": bs.diagnostics,
                "columns": columns,
                "rows": rows,
            }))?)
        }
    }
}

fn eigen(job: &LameJob, format: Format) -> Result<Vec<u8>, Failure> {
    let LameJob::Eigen {
        lattice,
        a_re,
        a_im,
        sign,
        bounded,
        samples,
    } = job
    else {
        unreachable!("bands are dispatched separately")
    };
    if *samples < 2 || *samples > MAX_ROWS {
        return Err(Failure::Usage(format!(
            "--samples must lie in 2..={MAX_ROWS}"
        )));
    }
    let ctx = lattice.context()?;
    let a = Complex64::new(*a_re, *a_im);
    let sign = match sign {
        SignArg::Plus => Sign::Plus,
        SignArg::Minus => Sign::Minus,
    };
    let y = if *bounded {
        lame::bounded_eigenfunction(&ctx, a, sign)?
    } else {
        lame::eigenfunction(&ctx, a, sign)?
    };
    let period = 2.0 * lame::potential_half_period(&ctx)?.re;
    let mut table = Table::new(&["x", "re_y", "im_y", "re_dy", "im_dy", "pole"]);
    for j in 0..*samples {
        let x = period * j as f64 / (*samples - 1) as f64;
        let row = match (y.value(x), y.derivative(x)) {
            (Ok(v), Ok(d)) => [v.re, v.im, d.re, d.im]
                .map(Cell::Float)
                .into_iter()
                .chain([Cell::Int(0)])
                .collect(),
            (Err(Error::PoleAt { .. } | Error::Singularity(_)), _)
            | (_, Err(Error::PoleAt { .. } | Error::Singularity(_))) => [f64::INFINITY; 4]
                .map(Cell::Float)
                .into_iter()
                .chain([Cell::Int(1)])
                .collect(),
            (Err(e), _) | (_, Err(e)) => return Err(e.into()),
        };
        table.push(
            [Cell::Float(x)]
                .into_iter()
                .chain::<Vec<Cell>>(row)
                .collect(),
        );
    }
    let doc = json!({
        "schema": SCHEMA,
        "g2": num(lattice.g2),
        "g3": num(lattice.g3),
        "a": cnum(a),
        "sign": if sign == Sign::Plus { "plus" } else { "minus" },
        "bounded": bounded,
        "eigenvalue": cnum(y.eigenvalue()),
        "period": num(period),
    });
    emit(format, &table, doc)
}
