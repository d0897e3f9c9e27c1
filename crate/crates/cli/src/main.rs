use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use stokes_lfa::closedform::{omega_opt_closed, rho_opt_closed, POISSON_OMEGA_OPT};
use stokes_lfa::harmonics::{harmonics_of, two_color_rep};
use stokes_lfa::mgsolver::{
    measure_convergence_factor, CycleSpec, Damping, StokesProblem, Topology,
};
use stokes_lfa::smoothing::{one_stage, projected_eigenvalues, smoothing_factor};
use stokes_lfa::stencil::make_operator;
use stokes_lfa::{ComplexValue, Frequency, OperatorKind, SweepConfig};

mod theorems;
mod theta;

const EXIT_VERIFICATION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_DIVERGED: u8 = 3;

#[derive(Parser)]
#[command(
    name = "stokes-lfa",
    version,
    about = "Fourier analysis and multigrid experiments for red-black distributive smoothing of stabilized Stokes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fourier symbol of a stencil at one frequency.
    Symbol {
        operator: String,
        /// Frequency as `t1,t2`; accepts forms like `pi/2` and decimals.
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
        #[arg(long)]
        c: Option<f64>,
        #[arg(long, default_value_t = 1.0)]
        h: f64,
    },
    /// 2x2 representation of one red-black Jacobi sweep on the harmonics of a low frequency.
    Rep {
        operator: String,
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
        #[arg(long)]
        c: Option<f64>,
        #[arg(long)]
        omega: Option<f64>,
    },
    /// Extremal projected eigenvalues and optimal one-stage damping over the low box.
    Sweep {
        #[arg(default_value = "pressure_block")]
        operator: String,
        #[arg(long)]
        c: Option<f64>,
        #[arg(long, default_value_t = 257)]
        n_samples: usize,
        /// Also report the smoothing factor at this damping.
        #[arg(long)]
        omega: Option<f64>,
    },
    /// Checks the closed forms, limits and landmark values against sweeps.
    Theorems {
        #[arg(long, default_value_t = 257)]
        n_samples: usize,
    },
    /// CSV of the optimal pressure-block parameters over a range of c.
    Curves {
        #[arg(long, default_value_t = 0.01)]
        c_min: f64,
        #[arg(long, default_value_t = 10.0)]
        c_max: f64,
        #[arg(long, default_value_t = 100)]
        n_points: usize,
        #[arg(long, value_enum, default_value_t = Scale::Log)]
        scale: Scale,
        #[arg(long, default_value_t = 257)]
        n_samples: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Runs multigrid cycles on the homogeneous Dirichlet problem from a random state.
    Solve {
        #[arg(long)]
        c: f64,
        /// Interior points per direction; n + 1 must be a power of two.
        #[arg(long, default_value_t = 63)]
        n: usize,
        /// Pressure-block damping; defaults to the closed-form optimum for c.
        #[arg(long)]
        omega: Option<f64>,
        #[arg(long, default_value_t = POISSON_OMEGA_OPT)]
        momentum_omega: f64,
        #[arg(long, default_value_t = 20)]
        cycles: usize,
        #[arg(long, default_value_t = 2)]
        pre: u32,
        #[arg(long, default_value_t = 2)]
        post: u32,
        /// Number of levels; defaults to the full hierarchy.
        #[arg(long)]
        levels: Option<usize>,
        /// Two-grid cycle with a nearly exact coarse solve instead of a V-cycle.
        #[arg(long)]
        two_grid: bool,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Scale {
    Linear,
    Log,
}

/// Error caused by invalid flags; exits with status 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Usage(msg.into()).into())
}

fn is_usage(err: &anyhow::Error) -> bool {
    use stokes_lfa::Error as E;
    err.downcast_ref::<Usage>().is_some()
        || matches!(
            err.downcast_ref::<E>(),
            Some(
                E::UnknownOperator(_)
                    | E::MissingStabilization(_)
                    | E::InvalidMeshSize(_)
                    | E::InvalidStabilization(_)
                    | E::NotLowFrequency(..)
                    | E::InvalidGridSize(_)
                    | E::InvalidParameter(_)
            )
        )
}

fn writer(path: Option<&PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn operator(name: &str, h: f64, c: Option<f64>) -> Result<stokes_lfa::Stencil2D> {
    let kind: OperatorKind = name.parse()?;
    Ok(make_operator(kind, h, c)?)
}

fn theta_flag(text: &str) -> Result<Frequency> {
    theta::parse_theta(text).map_err(|e| Usage(e.to_string()).into())
}

/// Rounds to 15 significant digits and prints the shortest form.
fn sig15(x: f64) -> String {
    let r: f64 = format!("{x:.14e}").parse().expect("formatted float parses");
    if r == 0.0 {
        "0".into()
    } else {
        r.to_string()
    }
}

/// `re + im i`. Parts below `1e-14 |z|` are round-off and print as zero.
fn complex(z: ComplexValue) -> String {
    let floor = 1e-14 * z.norm();
    let clean = |x: f64| if x.abs() <= floor { 0.0 } else { x };
    let (re, im) = (clean(z.re), clean(z.im));
    let sign = if im < 0.0 { '-' } else { '+' };
    format!("{} {sign} {}i", sig15(re), sig15(im.abs()))
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Symbol {
            operator: name,
            theta,
            c,
            h,
        } => {
            let theta = theta_flag(&theta)?;
            println!("{}", complex(operator(&name, h, c)?.symbol(theta)));
        }
        Command::Rep {
            operator: name,
            theta,
            c,
            omega,
        } => {
            let s = operator(&name, 1.0, c)?;
            let pair = harmonics_of(theta_flag(&theta)?)?;
            let mut rep = two_color_rep(&s, &pair)?;
            if let Some(w) = omega {
                rep = rep.damped(w);
            }
            println!("theta0 = {}, theta1 = {}", pair.theta0, pair.theta1);
            for row in 0..2 {
                println!(
                    "[{}, {}]",
                    complex(rep.entry(row, 0)),
                    complex(rep.entry(row, 1))
                );
            }
            println!(
                "projected eigenvalue = {}",
                complex(projected_eigenvalues(&rep).1)
            );
            println!("spectral radius = {}", sig15(rep.spectral_radius()));
        }
        Command::Sweep {
            operator: name,
            c,
            n_samples,
            omega,
        } => {
            let s = operator(&name, 1.0, c)?;
            let cfg = SweepConfig::with_samples(n_samples);
            let r = one_stage(&s, &cfg)?;
            println!("operator = {}", s.name());
            println!("s_max = {} at {}", sig15(r.s_max), r.argmax_freq);
            println!("s_min = {} at {}", sig15(r.s_min), r.argmin_freq);
            println!("omega_opt = {}", sig15(r.omega_opt));
            println!("rho_opt = {}", sig15(r.rho_opt));
            if let Some(w) = omega {
                let f = smoothing_factor(&s, w, 1, &cfg)?;
                println!("rho(omega = {w}) = {} at {}", sig15(f.rho), f.worst_freq);
            }
        }
        Command::Theorems { n_samples } => {
            let table = theorems::run(&SweepConfig::with_samples(n_samples))?;
            for row in &table.rows {
                println!("{row}");
            }
            let (c, rho) = table.rho_minimum;
            println!("rho_opt minimum (info): c = {c:.7}, rho = {rho:.10}");
            let passed = table.rows.iter().filter(|r| r.pass).count();
            println!("{passed} of {} checks passed", table.rows.len());
            if !table.all_pass() {
                return Ok(ExitCode::from(EXIT_VERIFICATION));
            }
        }
        Command::Curves {
            c_min,
            c_max,
            n_points,
            scale,
            n_samples,
            output,
        } => {
            if !(c_min > 0.0 && c_min < c_max && c_max.is_finite()) {
                return usage(format!(
                    "need 0 < c_min < c_max, got c_min = {c_min}, c_max = {c_max}"
                ));
            }
            if n_points < 2 {
                return usage("n_points must be at least 2");
            }
            let cfg = SweepConfig::with_samples(n_samples);
            let mut out = writer(output.as_ref())?;
            writeln!(
                out,
                "c,rho_opt_closed,omega_opt_closed,rho_sweep,omega_sweep"
            )?;
            for k in 0..n_points {
                let t = k as f64 / (n_points - 1) as f64;
                let c = match scale {
                    Scale::Linear => c_min + t * (c_max - c_min),
                    Scale::Log => (c_min.ln() + t * (c_max.ln() - c_min.ln())).exp(),
                };
                let c = if k == n_points - 1 { c_max } else { c };
                let sweep = one_stage(
                    &make_operator(OperatorKind::PressureBlock, 1.0, Some(c))?,
                    &cfg,
                )?;
                writeln!(
                    out,
                    "{c:.12e},{:.12e},{:.12e},{:.12e},{:.12e}",
                    rho_opt_closed(c)?,
                    omega_opt_closed(c)?,
                    sweep.rho_opt,
                    sweep.omega_opt
                )?;
            }
            out.flush()?;
        }
        Command::Solve {
            c,
            n,
            omega,
            momentum_omega,
            cycles,
            pre,
            post,
            levels,
            two_grid,
            seed,
            output,
        } => {
            let prob = StokesProblem::homogeneous(n, c)?;
            let damping = Damping {
                momentum: momentum_omega,
                pressure: omega.map_or_else(|| omega_opt_closed(c), Ok)?,
            };
            let mut spec = if two_grid {
                CycleSpec::two_grid(pre, post, damping)
            } else {
                CycleSpec::v(pre, post, damping, n, Topology::Dirichlet)
            };
            if let Some(l) = levels {
                if two_grid {
                    bail!(Usage("--levels cannot be combined with --two-grid".into()));
                }
                spec.levels = l;
            }
            let report = measure_convergence_factor(&prob, &spec, cycles, seed)?;
            let mut out = writer(output.as_ref())?;
            out.write_all(report.to_csv().as_bytes())?;
            out.flush()?;
            drop(out);
            eprintln!("rho_observed={:.6}", report.rho_observed);
            if report.diverged {
                eprintln!("error: residual diverged");
                return Ok(ExitCode::from(EXIT_DIVERGED));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(if is_usage(&err) {
                EXIT_USAGE
            } else {
                EXIT_VERIFICATION
            })
        }
    }
}
