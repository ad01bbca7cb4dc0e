//! Command line front end: argument definitions and experiment dispatch.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::experiments::algebraic::{run_algebraic, AlgebraicOptions};
use crate::experiments::bench::bench_indicators;
use crate::experiments::csv::{
    algebraic_table, bench_table, delta_table, pde_table, self_convergence_table, Table,
};
use crate::experiments::delta::{run_delta, DeltaGrid};
use crate::experiments::pde::{run_pde_convergence, run_step_profile, PdeOptions, PdeProblem};
use crate::experiments::shuosher::{run_shuosher, self_convergence, solve_euler, uniform_grid, ShuOsherOptions};
use crate::fvm::{BiasedWindow, Dissipation, FvmOptions};
use crate::grid::{AlgebraicTest, Framework, Perturbation};
use crate::scalar::Real;

#[derive(Debug, Parser)]
#[command(name = "nuweno", version, about = "WENO reconstructions and finite-volume experiments on nonuniform grids")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    Binary64,
    /// MPFR floats with the given precision in bits.
    HighPrecision(u32),
}

impl FromStr for Backend {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "binary64" | "f64" => Ok(Backend::Binary64),
            "mp" => Ok(Backend::HighPrecision(332)),
            _ => match s.strip_prefix("mp:").map(str::parse::<u32>) {
                Some(Ok(bits)) if bits >= 53 => Ok(Backend::HighPrecision(bits)),
                _ => Err(format!("unknown backend {s:?}; expected binary64, mp or mp:<bits>")),
            },
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Number of refinement levels (defaults depend on the experiment).
    #[arg(long, global = true)]
    pub levels: Option<usize>,
    /// Arithmetic for test1/test2: binary64, mp or mp:<bits>.
    #[arg(long, global = true, default_value = "binary64")]
    pub backend: Backend,
    /// WENO regularisation; defaults to 1e-100 (binary64) or 1e-100000 (mp).
    #[arg(long, global = true)]
    pub epsilon: Option<String>,
    /// Write CSV tables and profiles into this directory instead of printing.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Also emit one diagnostic line per reconstruction (test1/test2).
    #[arg(long, global = true)]
    pub dump_weights: bool,
    /// Perturb grid interfaces symmetrically around the uniform positions.
    #[arg(long, global = true)]
    pub perturbation_centered: bool,
    /// Use cells i-3..i+1 for the left-biased reconstruction.
    #[arg(long, global = true)]
    pub biased_window: bool,
    /// Lax-Friedrichs coefficient from the two interface states.
    #[arg(long, global = true)]
    pub interface_dissipation: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Smooth function on the tabulated stencils (optimal order).
    Test1,
    /// Function with a jump on the tabulated stencils.
    Test2,
    /// Linear advection: convergence table and step profiles.
    Test3 {
        #[arg(long, default_value_t = 0.1)]
        xi: f64,
    },
    /// Burgers equation: convergence table and step profiles.
    Test4 {
        #[arg(long, default_value_t = 0.1)]
        xi: f64,
    },
    /// Solution concentrating into a point mass, uniform and geometric grids.
    Test5 {
        /// Also run the two geometric grids.
        #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
        geometric: bool,
    },
    /// Shu-Osher problem on uniform and perturbed grids.
    Test6 {
        #[arg(long, default_value_t = 256)]
        cells: usize,
        #[arg(long, default_value_t = 8192)]
        reference: usize,
        #[arg(long, default_value_t = 0.1)]
        xi: f64,
    },
    /// Time the smoothness indicators for several stencil sizes.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "5,9,13,17,21")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 1_000_000)]
        repetitions: usize,
    },
}

/// Destination for tables and profiles.
struct Sink<'a> {
    dir: Option<&'a Path>,
    out: &'a mut dyn Write,
}

impl Sink<'_> {
    fn table(&mut self, name: &str, table: &Table) -> Result<()> {
        self.text(&format!("{name}.csv"), &table.to_csv())
    }

    fn text(&mut self, file: &str, body: &str) -> Result<()> {
        match self.dir {
            Some(dir) => {
                fs::create_dir_all(dir)?;
                fs::write(dir.join(file), body)?;
            }
            None => {
                writeln!(self.out, "# {file}")?;
                self.out.write_all(body.as_bytes())?;
                writeln!(self.out)?;
            }
        }
        Ok(())
    }

    /// Profiles are only kept when writing to a directory.
    fn profile(&mut self, file: &str, body: &str) -> Result<()> {
        if self.dir.is_some() {
            self.text(file, body)?;
        }
        Ok(())
    }
}

impl CommonArgs {
    fn perturbation(&self) -> Perturbation {
        if self.perturbation_centered {
            Perturbation::Centered
        } else {
            Perturbation::AsPrinted
        }
    }

    fn fvm(&self) -> Result<FvmOptions> {
        let epsilon = match &self.epsilon {
            Some(s) => f64::from_decimal(s)?,
            None => 1e-100,
        };
        Ok(FvmOptions {
            epsilon,
            window: if self.biased_window { BiasedWindow::Wide } else { BiasedWindow::Standard },
            dissipation: if self.interface_dissipation { Dissipation::Interface } else { Dissipation::Field },
            ..Default::default()
        })
    }

    fn require_binary64(&self, what: &str) -> Result<()> {
        if self.backend != Backend::Binary64 {
            return Err(Error::InvalidArgument(format!("{what} only runs in binary64")));
        }
        Ok(())
    }
}

fn algebraic<S: Real>(test: AlgebraicTest, common: &CommonArgs, clamp: bool, sink: &mut Sink) -> Result<()> {
    let name = match test {
        AlgebraicTest::Test1 => "test1",
        AlgebraicTest::Test2 => "test2",
    };
    let epsilon = common.epsilon.as_deref().map(S::from_decimal).transpose()?;
    let opts = AlgebraicOptions { epsilon, dump_weights: common.dump_weights, clamp_to_roundoff: clamp, ..Default::default() };
    let levels = common.levels.unwrap_or(12);
    for (framework, label) in [(Framework::PointValues, "point-values"), (Framework::CellAverages, "cell-averages")] {
        let run = run_algebraic::<S>(test, framework, levels, &opts)?;
        sink.table(&format!("{name}-{label}"), &algebraic_table(&run))?;
        if common.dump_weights {
            let mut body = String::from("c_star,q,omega_global,omega...,indicators...\n");
            for line in &run.dump {
                body.push_str(line);
                body.push('\n');
            }
            sink.text(&format!("{name}-{label}-weights.csv"), &body)?;
        }
    }
    Ok(())
}

fn run_algebraic_command(test: AlgebraicTest, common: &CommonArgs, sink: &mut Sink) -> Result<()> {
    match common.backend {
        Backend::Binary64 => algebraic::<f64>(test, common, true, sink),
        #[cfg(feature = "high-precision")]
        Backend::HighPrecision(bits) => {
            crate::scalar::Mp::set_precision(bits);
            algebraic::<crate::scalar::Mp>(test, common, false, sink)
        }
        #[cfg(not(feature = "high-precision"))]
        Backend::HighPrecision(_) => {
            Err(Error::InvalidArgument("built without the high-precision feature".into()))
        }
    }
}

fn pde_command(problem: PdeProblem, xi: f64, common: &CommonArgs, sink: &mut Sink) -> Result<()> {
    common.require_binary64("this experiment")?;
    let opts = PdeOptions { xi, perturbation: common.perturbation(), fvm: common.fvm()?, ..Default::default() };
    let (name, first, profiles) = match problem {
        PdeProblem::Advection => ("test3", 20, [40, 100]),
        PdeProblem::Burgers => ("test4", 40, [20, 100]),
    };
    let n_list: Vec<usize> = (0..common.levels.unwrap_or(5)).map(|j| first << j).collect();
    let records = run_pde_convergence(problem, &n_list, &opts)?;
    sink.table(&format!("{name}-smooth"), &pde_table(&records))?;
    for n in profiles {
        let (grid, u) = run_step_profile(problem, n, 0.25, &opts)?;
        sink.profile(&format!("{name}-step-{n}.txt"), &u.snapshot(&grid))?;
    }
    Ok(())
}

fn delta_command(geometric: bool, common: &CommonArgs, sink: &mut Sink) -> Result<()> {
    common.require_binary64("test5")?;
    let mut grids: Vec<DeltaGrid> = (1..=common.levels.unwrap_or(7)).map(|j| DeltaGrid::Uniform(100 * (1 << j) - 1)).collect();
    if geometric {
        grids.push(DeltaGrid::Geometric { m: 99, kappa: 1.1 });
        grids.push(DeltaGrid::Geometric { m: 199, kappa: 1.04 });
    }
    let records = run_delta(&grids, common.fvm()?)?;
    sink.table("test5", &delta_table(&records))
}

fn shuosher_command(cells: usize, reference: usize, xi: f64, common: &CommonArgs, sink: &mut Sink) -> Result<()> {
    common.require_binary64("test6")?;
    let opts = ShuOsherOptions { xi, perturbation: common.perturbation(), fvm: common.fvm()? };
    let runs = run_shuosher(cells, &opts)?;
    sink.profile("test6-uniform.txt", &runs.uniform.state.snapshot(&runs.uniform.grid))?;
    sink.profile("test6-perturbed.txt", &runs.perturbed.state.snapshot(&runs.perturbed.grid))?;
    let reference_run = solve_euler(uniform_grid(reference)?, opts.fvm)?;
    sink.profile("test6-reference.txt", &reference_run.state.snapshot(&reference_run.grid))?;
    let mut finer = Vec::new();
    for j in 1..common.levels.unwrap_or(3) {
        finer.push(solve_euler(uniform_grid(cells << j)?, opts.fvm)?);
    }
    let mut all = vec![&runs.uniform];
    all.extend(finer.iter());
    let mut table = self_convergence_table(&self_convergence(&reference_run, &all)?, reference);
    for (label, run) in [("uniform", &runs.uniform), ("perturbed", &runs.perturbed)] {
        table.comments.push(format!(
            "{label} n={cells}: {} steps, min density {:.6e}, min pressure {:.6e}",
            run.steps, run.min_density, run.min_pressure
        ));
    }
    sink.table("test6-convergence", &table)
}

/// Runs one parsed command line, writing results to `out` or to the
/// `--output` directory.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    let common = &cli.common;
    let mut sink = Sink { dir: common.output.as_deref(), out };
    match &cli.command {
        Command::Test1 => run_algebraic_command(AlgebraicTest::Test1, common, &mut sink),
        Command::Test2 => run_algebraic_command(AlgebraicTest::Test2, common, &mut sink),
        Command::Test3 { xi } => pde_command(PdeProblem::Advection, *xi, common, &mut sink),
        Command::Test4 { xi } => pde_command(PdeProblem::Burgers, *xi, common, &mut sink),
        Command::Test5 { geometric } => delta_command(*geometric, common, &mut sink),
        Command::Test6 { cells, reference, xi } => shuosher_command(*cells, *reference, *xi, common, &mut sink),
        Command::Bench { sizes, repetitions } => {
            let report = bench_indicators(sizes, *repetitions)?;
            sink.table("bench", &bench_table(&report))
        }
    }
}

/// `{"error":"<kind>","message":"..."}` for failures.
pub fn error_json(e: &Error) -> String {
    serde_json::json!({ "error": e.kind(), "message": e.to_string() }).to_string()
}
