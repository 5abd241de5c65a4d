//! `spinor`: command-line access to the spinor-core computations.
//!
//! Exit status is 0 on success, 1 when a checked identity has a defect or a
//! computation fails, and 2 on a usage error.

mod commands;
mod output;

use std::process::ExitCode;
use std::sync::mpsc;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use commands::{Constant, Method};
use output::{Format, Report};
use spinor_core::hilbert::{one_at, zero_at, Quiver, Refine};
use spinor_core::homology::WeightWindow;
use spinor_core::partition::{Equation, IdealKind};
use spinor_core::{Error, Interval};

#[derive(Parser, Debug)]
#[command(name = "spinor", version, about = "Exact computations on the pure spinor cone and its interval algebras")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Echo the run manifest (arguments, bounds, fixture hash) with the output.
    #[arg(long, global = true)]
    manifest: bool,
    /// Worker threads for parallel scans.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Abort with exit status 1 after this many seconds.
    #[arg(long = "budget-seconds", global = true)]
    budget_seconds: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct IntervalArg {
    /// Interval such as "[(0)^-1:(1)^1]"; round brackets mark open ends.
    #[arg(long, allow_hyphen_values = true)]
    interval: Interval,
}

#[derive(Subcommand, Debug, Clone)]
enum Command {
    /// Capacity, rank and Gorenstein property of an interval.
    Classify(IntervalArg),
    /// Multigraded Hilbert series by chain counting.
    Hilbert {
        #[command(flatten)]
        i: IntervalArg,
        #[arg(long, default_value_t = 8)]
        tmax: i64,
        /// Gradings kept: t, tq or tqz.
        #[arg(long, default_value = "tq")]
        refine: Refine,
        /// Also reconstruct the rational form.
        #[arg(long)]
        rational: bool,
    },
    /// Character χ and a-invariant of a Gorenstein interval.
    Chi(IntervalArg),
    /// Koszul duality A(t)·SR^!(−t) ≡ 1 with SR^! by path counting.
    Duality {
        #[command(flatten)]
        i: IntervalArg,
        #[arg(long, default_value_t = 6)]
        tmax: usize,
        #[arg(long, value_parser = parse_quiver, default_value = "dual")]
        quiver: Quiver,
    },
    /// Bare or renormalized partition function.
    Partition {
        #[command(flatten)]
        i: IntervalArg,
        #[arg(long)]
        renorm: bool,
        /// Ideal for the bare function: 0, a, a', b, f, f', m, p.
        #[arg(long, default_value = "a")]
        ideal: IdealKind,
    },
    /// q-expansion of Z_a, or its stabilization along [(0)^-N:(1)^N].
    Qexpand {
        #[arg(long, allow_hyphen_values = true)]
        interval: Option<Interval>,
        /// q-orders as "lo..hi".
        #[arg(long, allow_hyphen_values = true, value_parser = parse_range, default_value = "-2..2")]
        orders: (i64, i64),
        #[arg(long, allow_hyphen_values = true)]
        qmin: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        qmax: Option<i64>,
        #[arg(long, default_value_t = 12)]
        tdepth: usize,
        #[arg(long, default_value_t = 6)]
        nmax: i64,
    },
    /// Exact functional-equation and BV checks.
    Verify {
        /// star, faf or bv.
        #[arg(long)]
        equation: String,
        /// Family index: [(0)^{-N-1}:(1)^N] for star, [(0)^-N:(1)^N] otherwise.
        #[arg(long = "N", default_value_t = 0, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        interval: Option<Interval>,
        #[arg(long, value_enum, default_value = "stated")]
        constant: Constant,
    },
    /// Koszul Betti table.
    Betti {
        #[command(flatten)]
        i: IntervalArg,
        #[arg(long, default_value_t = 8)]
        jmax: i64,
        #[arg(long, value_enum, default_value = "artinian")]
        method: Method,
        /// Largest linear system the direct method may build.
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Local cohomology weight spaces by truncated Koszul limits.
    Loccoh {
        #[command(flatten)]
        i: IntervalArg,
        #[arg(long, default_value = "a")]
        ideal: IdealKind,
        /// t-range of the window as "lo..hi".
        #[arg(long, allow_hyphen_values = true, value_parser = parse_range, default_value = "-5..-1")]
        trange: (i64, i64),
        /// u-range of the window as "lo..hi".
        #[arg(long, allow_hyphen_values = true, value_parser = parse_range, default_value = "0..4")]
        urange: (i64, i64),
        #[arg(long, default_value_t = 4)]
        nmax: u32,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Capacity-two intervals with lower end in a ρ-band.
    #[command(name = "enumerate-cap2")]
    EnumerateCap2 {
        #[arg(long = "rho-lo", default_value_t = 0, allow_hyphen_values = true)]
        rho_lo: i64,
        #[arg(long = "rho-hi", default_value_t = 8, allow_hyphen_values = true)]
        rho_hi: i64,
    },
    /// Path counts in the SR^! quiver.
    Paths {
        #[command(flatten)]
        i: IntervalArg,
        #[arg(long, default_value_t = 4)]
        dmax: usize,
        #[arg(long, value_parser = parse_quiver, default_value = "dual")]
        quiver: Quiver,
        /// Split counts by q-weight.
        #[arg(long)]
        weights: bool,
    },
    /// Vertices of Ê in a ρ-band or an interval.
    Poset {
        #[arg(long, allow_hyphen_values = true)]
        interval: Option<Interval>,
        #[arg(long = "rho-lo", default_value_t = 0, allow_hyphen_values = true)]
        rho_lo: i64,
        #[arg(long = "rho-hi", default_value_t = 7, allow_hyphen_values = true)]
        rho_hi: i64,
    },
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected lo..hi, got `{s}`"))?;
    let lo: i64 = a.trim().parse().map_err(|e| format!("{e}"))?;
    let hi: i64 = b.trim().parse().map_err(|e| format!("{e}"))?;
    if lo > hi {
        return Err(format!("empty range `{s}`"));
    }
    Ok((lo, hi))
}

fn parse_quiver(s: &str) -> Result<Quiver, String> {
    match s {
        "dual" => Ok(Quiver::Dual),
        "clutter" => Ok(Quiver::Clutter),
        _ => Err(format!("unknown quiver `{s}`, expected dual or clutter")),
    }
}

fn run(command: Command) -> spinor_core::Result<Report> {
    match command {
        Command::Classify(a) => commands::classify(&a.interval),
        Command::Hilbert { i, tmax, refine, rational } => commands::hilbert(&i.interval, tmax, refine, rational),
        Command::Chi(a) => commands::chi_cmd(&a.interval),
        Command::Duality { i, tmax, quiver } => commands::duality(&i.interval, tmax, quiver),
        Command::Partition { i, renorm, ideal } => commands::partition(&i.interval, renorm, ideal),
        Command::Qexpand { interval, orders, qmin, qmax, tdepth, nmax } => {
            let (lo, hi) = (qmin.unwrap_or(orders.0), qmax.unwrap_or(orders.1));
            if lo > hi {
                return Err(Error::Parse(format!("empty q-range {lo}..{hi}")));
            }
            commands::qexpand(interval.as_ref(), lo, hi, tdepth, nmax)
        }
        Command::Verify { equation, n, interval, constant } => {
            if equation == "bv" {
                let i = match interval {
                    Some(i) => i,
                    None => Interval::closed(zero_at(-n), one_at(n))?,
                };
                return commands::verify_bv(&i);
            }
            let eq: Equation = equation.parse()?;
            let i = match interval {
                Some(i) => i,
                None => eq.family(n)?,
            };
            commands::verify_equation(eq, &i, constant)
        }
        Command::Betti { i, jmax, method, budget } => commands::betti(&i.interval, jmax, method, budget),
        Command::Loccoh { i, ideal, trange, urange, nmax, budget } => {
            let window = WeightWindow { t_min: trange.0, t_max: trange.1, u_min: urange.0, u_max: urange.1 };
            commands::loccoh(&i.interval, ideal, window, nmax, budget)
        }
        Command::EnumerateCap2 { rho_lo, rho_hi } => commands::enumerate_cap2_cmd(rho_lo, rho_hi),
        Command::Paths { i, dmax, quiver, weights } => commands::paths(&i.interval, dmax, quiver, weights),
        Command::Poset { interval, rho_lo, rho_hi } => commands::poset(interval.as_ref(), rho_lo, rho_hi),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let start = Instant::now();
    let command = cli.command.clone();
    let result = match cli.budget_seconds {
        None => run(command),
        Some(s) => {
            let (tx, rx) = mpsc::channel();
            std::thread::spawn(move || {
                let _ = tx.send(run(command));
            });
            match rx.recv_timeout(Duration::from_secs_f64(s.max(0.0))) {
                Ok(r) => r,
                Err(_) => Err(Error::BudgetExceeded(format!("{s} s wall time"))),
            }
        }
    };
    let report = match result {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(if matches!(e, Error::Parse(_)) { 2 } else { 1 });
        }
    };
    let arguments: Vec<String> = std::env::args().skip(1).collect();
    let manifest = cli.manifest.then(|| output::manifest(&report, &arguments));
    output::emit(&output::render(&report, cli.format, manifest));
    if cli.manifest {
        // wall time varies between runs, so it stays off stdout
        eprintln!("wall_time_seconds {:.3}", start.elapsed().as_secs_f64());
    }
    ExitCode::from(u8::from(report.defect))
}
