//! Command-line front end for the real-arithmetic quantum kernel.
//!
//! Exit codes: 0 when the requested check passes, 1 when a verification
//! fails numerically, 2 for usage errors, 3 for I/O, parse, or operator
//! content errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::exit;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use kahlerq_core::bell::{
    chsh3_bound, chsh3_oracle_expectation, chsh3_precontraction, chsh3_value, chsh_correlators,
    chsh_value, singlet_state, tsirelson_bound, ChshSetting,
};
use kahlerq_core::cspace::{bell_state, expectation, BellOutcome, ComplexOp};
use kahlerq_core::kahler::{
    complexify_op, complexify_state, is_kahler_block, realify_op, realify_state, KahlerOp,
    KahlerState,
};
use kahlerq_core::opfile::{parse_operator, sig15, write_operator};
use kahlerq_core::realmat::RealMatrix;
use kahlerq_core::suites::{run as run_suite, Suite, SuiteConfig};
use kahlerq_core::{Error, Report, Result, TOL_ALGEBRAIC, TOL_BELL};

#[derive(Parser)]
#[command(
    name = "kahlerq",
    version,
    about = "Quantum mechanics in real arithmetic on Kähler space, with complex-side oracles"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a randomized verification suite and report the worst deviation.
    Verify {
        /// One of: bijection, homomorphism, diagram, kahler-forms,
        /// pauli-algebra, j-bilinearity, local-maps, all.
        suite: String,
        /// Random instances per suite.
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        /// Base seed; trial t uses seed + t.
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Pass tolerance (defaults to 1e-10).
        #[arg(long)]
        tol: Option<f64>,
        /// Emit one JSON report object per line instead of key=value text.
        #[arg(long)]
        json: bool,
    },
    /// Evaluate CHSH on the singlet at the optimal setting, in real
    /// arithmetic, against the quantum maximum 2*sqrt(2).
    Chsh {
        /// Pass tolerance on the deviation (defaults to 1e-9).
        #[arg(long, default_value_t = TOL_BELL)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate the tripartite functional for one Bell outcome against the
    /// quantum maximum 6*sqrt(2).
    Chsh3 {
        /// Bob's Bell outcome: 00, 01, 10 or 11.
        #[arg(long, default_value = "00")]
        outcome: String,
        /// Pass tolerance on the deviation (defaults to 1e-9).
        #[arg(long, default_value_t = TOL_BELL)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// Compare composite dimensions: the symplectic tensor product of
    /// realified m- and n-dimensional systems against the plain Kronecker
    /// product of the same doubled spaces.
    Dims {
        /// Complex dimension of the first factor.
        #[arg(value_parser = clap::value_parser!(u64).range(1..=16))]
        m: u64,
        /// Complex dimension of the second factor.
        #[arg(value_parser = clap::value_parser!(u64).range(1..=16))]
        n: u64,
    },
    /// Realify or complexify an operator file (JSON with rows, cols, re,
    /// optional im).
    Map {
        /// Path to the operator file.
        file: PathBuf,
        #[arg(long, value_enum)]
        direction: Direction,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Direction {
    /// Complex to real: columns become 2Nx2 states, square operators double.
    Realify,
    /// Real to complex: the input must be a real matrix in block form.
    Complexify,
}

fn main() {
    // Die quietly on a closed pipe (`kahlerq verify all | head`) instead of
    // panicking; Rust ignores SIGPIPE by default.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let code = match cli.cmd {
        Cmd::Verify { suite, trials, seed, tol, json } => cmd_verify(&suite, trials, seed, tol, json),
        Cmd::Chsh { tol, json } => cmd_chsh(tol, json),
        Cmd::Chsh3 { outcome, tol, json } => cmd_chsh3(&outcome, tol, json),
        Cmd::Dims { m, n } => cmd_dims(m as usize, n as usize),
        Cmd::Map { file, direction } => cmd_map(&file, direction),
    };
    exit(code);
}

/// Usage error: message to stderr, exit 2 (clap's own convention).
fn usage_error(msg: impl std::fmt::Display) -> i32 {
    eprintln!("error: {msg}");
    2
}

/// Content/IO error: message to stderr, exit 3.
fn content_error(msg: impl std::fmt::Display) -> i32 {
    eprintln!("error: {msg}");
    3
}

fn cmd_verify(suite: &str, trials: u64, seed: u64, tol: Option<f64>, json: bool) -> i32 {
    let suite: Suite = match suite.parse() {
        Ok(s) => s,
        Err(e) => return usage_error(e),
    };
    let cfg = SuiteConfig { trials, seed, tol: tol.unwrap_or(TOL_ALGEBRAIC) };
    let reports = run_suite(suite, &cfg);
    for report in &reports {
        if json {
            println!("{}", report.to_json());
        } else {
            println!("{}", report.to_line());
        }
    }
    if reports.iter().all(|r| r.pass) {
        0
    } else {
        1
    }
}

fn cmd_chsh(tol: f64, json: bool) -> i32 {
    let start = Instant::now();
    let setting = ChshSetting::tsirelson();
    let state = singlet_state();
    let correlators = chsh_correlators(&state, &setting).expect("canonical dimensions");
    let value = chsh_value(&state, &setting).expect("canonical dimensions");
    let target = tsirelson_bound();

    // Complex-side oracle: the same four correlators by standard expectation.
    let psi = bell_state(BellOutcome::B11);
    let mut oracle_dev = 0.0_f64;
    for (slot, (a, b)) in [(0, 0), (1, 0), (0, 1), (1, 1)].into_iter().enumerate() {
        let op = setting.alice(a).ckron(setting.bob(b));
        let e = expectation(&psi, &op).expect("canonical dimensions");
        oracle_dev = oracle_dev.max((correlators[slot] - e.re).abs()).max(e.im.abs());
    }

    let err = (value - target).abs().max(oracle_dev);
    let report = Report::new("chsh", 1, err, tol, 0, start.elapsed().as_millis() as u64);
    if json {
        println!("{}", report.to_json());
    } else {
        println!("value={}", sig15(value));
        println!("target={}", sig15(target));
        println!("deviation={}", sig15((value - target).abs()));
        println!("oracle_deviation={}", sig15(oracle_dev));
        let names = ["correlator_00", "correlator_10", "correlator_01", "correlator_11"];
        for (name, c) in names.iter().zip(correlators) {
            println!("{name}={}", sig15(c));
        }
        println!("{}", report.to_line());
    }
    i32::from(!report.pass)
}

fn cmd_chsh3(outcome: &str, tol: f64, json: bool) -> i32 {
    let outcome: BellOutcome = match outcome.parse() {
        Ok(o) => o,
        Err(e) => return usage_error(e),
    };
    let start = Instant::now();
    let value = chsh3_value(outcome);
    let oracle = chsh3_oracle_expectation(outcome);
    let target = chsh3_bound();
    let precontraction = chsh3_precontraction(outcome);
    let pre_err = precontraction
        .max_abs_diff(&RealMatrix::identity(2).scale(target))
        .expect("2x2 blocks");

    let err = (value - target)
        .abs()
        .max((value - oracle.re).abs())
        .max(oracle.im.abs())
        .max(pre_err);
    let report = Report::new("chsh3", 1, err, tol, 0, start.elapsed().as_millis() as u64);
    if json {
        println!("{}", report.to_json());
    } else {
        println!("outcome={outcome}");
        println!("value={}", sig15(value));
        println!("target={}", sig15(target));
        println!("oracle={}", sig15(oracle.re));
        println!("deviation={}", sig15((value - target).abs()));
        println!("oracle_deviation={}", sig15((value - oracle.re).abs()));
        println!("precontraction_deviation={}", sig15(pre_err));
        println!("{}", report.to_line());
    }
    i32::from(!report.pass)
}

fn cmd_dims(m: usize, n: usize) -> i32 {
    // Build the actual composites rather than quoting 2mn and 4mn.
    let a = realify_op(&ComplexOp::identity(m)).expect("identity is square");
    let b = realify_op(&ComplexOp::identity(n)).expect("identity is square");
    let symp = kahlerq_core::compose::symp_tensor_op(&a, &b).expect("realified inputs");
    let kron = kahlerq_core::compose::kron_doubled(&a, &b);
    println!("factor_dims={m},{n}");
    println!("symplectic_dim={}", symp.mat().rows());
    println!("kron_doubled_dim={}", kron.rows());
    println!("ratio={}", sig15(kron.rows() as f64 / symp.mat().rows() as f64));
    0
}

fn cmd_map(file: &Path, direction: Direction) -> i32 {
    let text = match fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => return content_error(format!("cannot read {}: {e}", file.display())),
    };
    let op = match parse_operator(&text) {
        Ok(o) => o,
        Err(e) => return content_error(e),
    };
    let result = match direction {
        Direction::Realify => map_realify(&op),
        Direction::Complexify => map_complexify(&op),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            0
        }
        Err(e) => content_error(e),
    }
}

fn map_realify(op: &ComplexOp) -> Result<String> {
    if op.is_column() {
        let s = realify_state(op)?;
        Ok(write_operator(&ComplexOp::from_real(s.mat().clone())))
    } else if op.is_square() {
        let k = realify_op(op)?;
        Ok(write_operator(&ComplexOp::from_real(k.into_mat())))
    } else {
        Err(Error::dim(
            "map",
            format!(
                "realify needs a square operator or an Nx1 column state, got {}x{}",
                op.rows(),
                op.cols()
            ),
        ))
    }
}

fn map_complexify(op: &ComplexOp) -> Result<String> {
    if op.im().max_abs() != 0.0 {
        return Err(Error::validation(
            "map",
            "complexify input must be a real matrix; the \"im\" field must be omitted or zero",
        ));
    }
    let m = op.re().clone();
    if m.is_square() {
        if m.rows() % 2 != 0 {
            return Err(Error::dim(
                "map",
                format!("complexify needs an even-sided square matrix, got {}x{}", m.rows(), m.cols()),
            ));
        }
        if !is_kahler_block(&m, TOL_ALGEBRAIC)? {
            return Err(Error::structure(
                "map",
                "matrix is not the realification of any complex operator: \
                 the diagonal 2x2 super-blocks must match and the off-diagonal ones must be opposite",
            ));
        }
        let k = KahlerOp::new(m)?;
        Ok(write_operator(&complexify_op(&k)))
    } else if m.cols() == 2 && m.rows() % 2 == 0 {
        let s = KahlerState::new(m)?;
        Ok(write_operator(&complexify_state(&s)?))
    } else {
        Err(Error::dim(
            "map",
            format!(
                "complexify needs an even-sided square matrix or a 2Nx2 state, got {}x{}",
                m.rows(),
                m.cols()
            ),
        ))
    }
}
