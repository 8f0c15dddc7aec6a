//! Randomized verification suites.
//!
//! Each suite hammers one structural claim with seeded random instances and
//! reports the worst deviation observed. Trials are independently seeded
//! (`seed + trial`) so runs are reproducible bit for bit and any single
//! failing trial can be replayed in isolation.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bell::{
    amplitude_damping_kraus, apply_kraus, apply_local_unitary_rho, apply_local_unitary_state,
    depolarizing_kraus, Side,
};
use crate::compose::{
    diagram_check, j_bilinearity_check, kron_doubled_j_mismatch, symp_tensor_state,
};
use crate::cspace::{inner, pauli, random_state, random_unitary, Axis, ComplexOp};
use crate::error::Error;
use crate::kahler::{
    complex_structure, complexify_op, complexify_state, kahler_pauli, metric, realify_op,
    realify_state, symplectic_form,
};
use crate::realmat::{random_matrix, RealMatrix};
use crate::report::Report;

/// The available verification suites. `All` runs every leaf suite and
/// appends an aggregate report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    /// Realify/complexify round trips on operators and states.
    Bijection,
    /// Multiplicativity and adjoint/transpose correspondence of the maps.
    Homomorphism,
    /// Composition diagram: realify-then-combine equals combine-then-realify.
    Diagram,
    /// The metric, symplectic form and complex structure against Re/Im of
    /// the complex inner product, plus their compatibility relations.
    KahlerForms,
    /// The realified Pauli algebra, exact to the last bit.
    PauliAlgebra,
    /// Bilinearity of the symplectic tensor product over the complex
    /// structure, and the doubled Kronecker product's failure of it.
    JBilinearity,
    /// Local unitaries and Kraus channels against the complex oracle.
    LocalMaps,
    All,
}

impl Suite {
    pub const LEAVES: [Suite; 7] = [
        Suite::Bijection,
        Suite::Homomorphism,
        Suite::Diagram,
        Suite::KahlerForms,
        Suite::PauliAlgebra,
        Suite::JBilinearity,
        Suite::LocalMaps,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Bijection => "bijection",
            Suite::Homomorphism => "homomorphism",
            Suite::Diagram => "diagram",
            Suite::KahlerForms => "kahler-forms",
            Suite::PauliAlgebra => "pauli-algebra",
            Suite::JBilinearity => "j-bilinearity",
            Suite::LocalMaps => "local-maps",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "bijection" => Ok(Suite::Bijection),
            "homomorphism" => Ok(Suite::Homomorphism),
            "diagram" => Ok(Suite::Diagram),
            "kahler-forms" => Ok(Suite::KahlerForms),
            "pauli-algebra" => Ok(Suite::PauliAlgebra),
            "j-bilinearity" => Ok(Suite::JBilinearity),
            "local-maps" => Ok(Suite::LocalMaps),
            "all" => Ok(Suite::All),
            other => Err(Error::validation(
                "suite",
                format!(
                    "unknown suite '{other}'; expected one of bijection, homomorphism, diagram, \
                     kahler-forms, pauli-algebra, j-bilinearity, local-maps, all"
                ),
            )),
        }
    }
}

/// Trial count, base seed and pass tolerance for a suite run.
#[derive(Debug, Clone, Copy)]
pub struct SuiteConfig {
    pub trials: u64,
    pub seed: u64,
    pub tol: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { trials: 1000, seed: 42, tol: crate::TOL_ALGEBRAIC }
    }
}

/// Run a suite. Leaf suites return a single report; `All` returns the seven
/// leaf reports followed by an aggregate whose error is the worst leaf error
/// and whose elapsed time is the sum.
pub fn run(suite: Suite, cfg: &SuiteConfig) -> Vec<Report> {
    match suite {
        Suite::All => {
            let mut reports: Vec<Report> =
                Suite::LEAVES.iter().map(|&leaf| run_leaf(leaf, cfg)).collect();
            let max_err = reports.iter().map(|r| r.max_abs_error).fold(0.0_f64, f64::max);
            let elapsed: u64 = reports.iter().map(|r| r.elapsed_ms).sum();
            reports.push(Report::new("all", cfg.trials, max_err, cfg.tol, cfg.seed, elapsed));
            reports
        }
        leaf => vec![run_leaf(leaf, cfg)],
    }
}

fn run_leaf(suite: Suite, cfg: &SuiteConfig) -> Report {
    let start = Instant::now();
    let mut max_err = 0.0_f64;
    for t in 0..cfg.trials {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(t));
        let err = match suite {
            Suite::Bijection => bijection_trial(t, &mut rng),
            Suite::Homomorphism => homomorphism_trial(t, &mut rng),
            Suite::Diagram => diagram_trial(t, &mut rng),
            Suite::KahlerForms => kahler_forms_trial(t, &mut rng),
            Suite::PauliAlgebra => pauli_algebra_trial(),
            Suite::JBilinearity => j_bilinearity_trial(t, &mut rng),
            Suite::LocalMaps => local_maps_trial(t, &mut rng),
            Suite::All => unreachable!("All is expanded by run()"),
        };
        let err = if err.is_nan() { f64::INFINITY } else { err };
        max_err = max_err.max(err);
    }
    Report::new(
        suite.name(),
        cfg.trials,
        max_err,
        cfg.tol,
        cfg.seed,
        start.elapsed().as_millis() as u64,
    )
}

fn random_op<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexOp {
    let re = random_matrix(rows, cols, rng);
    let im = random_matrix(rows, cols, rng);
    ComplexOp::new(re, im).expect("matching shapes")
}

fn bijection_trial(t: u64, rng: &mut ChaCha8Rng) -> f64 {
    let n = 1 + (t % 6) as usize;
    let op = random_op(n, n, rng);
    let k = realify_op(&op).expect("square operator");
    let back = complexify_op(&k);
    let mut err = back.max_abs_diff(&op).expect("same shape");

    // Other direction: realify after complexify restores a block-form matrix.
    let again = realify_op(&back).expect("square operator");
    err = err.max(again.mat().max_abs_diff(k.mat()).expect("same shape"));

    let psi = random_state(n, rng);
    let s = realify_state(&psi).expect("column state");
    let back_state = complexify_state(&s).expect("well-paired state");
    err.max(back_state.max_abs_diff(&psi).expect("same shape"))
}

fn homomorphism_trial(t: u64, rng: &mut ChaCha8Rng) -> f64 {
    let n = 1 + (t % 4) as usize;
    let a = random_op(n, n, rng);
    let b = random_op(n, n, rng);
    let ka = realify_op(&a).expect("square");
    let kb = realify_op(&b).expect("square");

    let prod = a.cmul(&b).expect("matching dims");
    let real_path = ka.matmul(&kb).expect("matching dims");
    let mut err = realify_op(&prod)
        .expect("square")
        .mat()
        .max_abs_diff(real_path.mat())
        .expect("same shape");

    // The reverse direction: complexify of a product of block-form matrices.
    let back = complexify_op(&real_path);
    err = err.max(back.max_abs_diff(&prod).expect("same shape"));

    // Adjoint on the complex side is transpose on the real side.
    let adj = realify_op(&a.adjoint()).expect("square");
    err.max(adj.mat().max_abs_diff(&ka.mat().transpose()).expect("same shape"))
}

fn diagram_trial(t: u64, rng: &mut ChaCha8Rng) -> f64 {
    let na = 1 + (t % 4) as usize;
    let nb = 1 + ((t / 4) % 4) as usize;
    let a = random_op(na, na, rng);
    let b = random_op(nb, nb, rng);
    let err = diagram_check(&a, &b).expect("square operators");

    let pa = random_state(na, rng);
    let pb = random_state(nb, rng);
    let sa = realify_state(&pa).expect("column");
    let sb = realify_state(&pb).expect("column");
    let combined = symp_tensor_state(&sa, &sb);
    let oracle = realify_state(&pa.ckron(&pb)).expect("column");
    err.max(combined.mat().max_abs_diff(oracle.mat()).expect("same shape"))
}

fn kahler_forms_trial(t: u64, rng: &mut ChaCha8Rng) -> f64 {
    let n = 1 + (t % 4) as usize;
    let j = complex_structure(n);
    let j2 = j.matmul(&j).expect("square");
    let minus_identity = RealMatrix::identity(2 * n).scale(-1.0);
    let mut err = j2.mat().max_abs_diff(&minus_identity).expect("same shape");

    let p1 = random_state(n, rng);
    let p2 = random_state(n, rng);
    let s1 = realify_state(&p1).expect("column");
    let s2 = realify_state(&p2).expect("column");

    // The two bilinear forms against Re and Im of the complex inner product.
    let z = inner(&p2, &p1).expect("columns");
    err = err.max((metric(&s2, &s1).expect("same n") - z.re).abs());
    err = err.max((symplectic_form(&s2, &s1).expect("same n") - z.im).abs());

    // Compatibility g(x, y) = omega(x, Jy) and J-invariance of omega.
    let js1 = j.apply(&s1).expect("same n");
    let js2 = j.apply(&s2).expect("same n");
    err = err.max(
        (metric(&s2, &s1).expect("same n") - symplectic_form(&s2, &js1).expect("same n")).abs(),
    );
    err = err.max(
        (symplectic_form(&js2, &js1).expect("same n") - symplectic_form(&s2, &s1).expect("same n"))
            .abs(),
    );

    // Normalized states: unit metric norm, vanishing self-pairing.
    err = err.max((metric(&s1, &s1).expect("same n") - 1.0).abs());
    err.max(symplectic_form(&s1, &s1).expect("same n").abs())
}

/// `(c, sign)` with `sigma_a sigma_b = sign * i * sigma_c` for `a != b`.
fn levi_civita(a: Axis, b: Axis) -> (Axis, f64) {
    match (a, b) {
        (Axis::X, Axis::Y) => (Axis::Z, 1.0),
        (Axis::Y, Axis::Z) => (Axis::X, 1.0),
        (Axis::Z, Axis::X) => (Axis::Y, 1.0),
        (Axis::Y, Axis::X) => (Axis::Z, -1.0),
        (Axis::Z, Axis::Y) => (Axis::X, -1.0),
        (Axis::X, Axis::Z) => (Axis::Y, -1.0),
        _ => unreachable!("equal axes handled by the caller"),
    }
}

/// Multiplication by i on the complex side: `i (X + iY) = -Y + iX`.
fn times_i(op: &ComplexOp) -> ComplexOp {
    ComplexOp::new(op.im().neg(), op.re().clone()).expect("matching shapes")
}

fn pauli_algebra_trial() -> f64 {
    let mut err = 0.0_f64;
    let j = complex_structure(2);
    let identity2 = ComplexOp::identity(2);
    let identity4 = RealMatrix::identity(4);

    for a in Axis::ALL {
        for b in Axis::ALL {
            let ka = kahler_pauli(a);
            let kb = kahler_pauli(b);
            let product = ka.matmul(&kb).expect("4x4");

            // Complex side: sigma_a sigma_b = delta_ab I + i eps_abc sigma_c.
            let cprod = pauli(a).cmul(&pauli(b)).expect("2x2");
            let (expected_c, expected_k) = if a == b {
                (identity2.clone(), identity4.clone())
            } else {
                let (c, sign) = levi_civita(a, b);
                let kc = j.matmul(&kahler_pauli(c)).expect("4x4").scale(sign);
                (times_i(&pauli(c)).scale(sign), kc.into_mat())
            };
            err = err.max(cprod.max_abs_diff(&expected_c).expect("same shape"));
            err = err.max(product.mat().max_abs_diff(&expected_k).expect("same shape"));

            // Anticommutator: {sigma_a^K, sigma_b^K} = 2 delta_ab I.
            let anti = product
                .mat()
                .add(kb.matmul(&ka).expect("4x4").mat())
                .expect("same shape");
            let expected_anti =
                if a == b { identity4.scale(2.0) } else { RealMatrix::zeros(4, 4) };
            err = err.max(anti.max_abs_diff(&expected_anti).expect("same shape"));

            // kahler_pauli must agree with realifying the complex Pauli.
            let direct = realify_op(&pauli(a)).expect("2x2");
            err = err.max(ka.mat().max_abs_diff(direct.mat()).expect("same shape"));
        }
    }
    err
}

fn j_bilinearity_trial(t: u64, rng: &mut ChaCha8Rng) -> f64 {
    let na = 1 + (t % 3) as usize;
    let nb = 1 + ((t / 3) % 3) as usize;
    let a = realify_op(&random_op(na, na, rng)).expect("square");
    let b = realify_op(&random_op(nb, nb, rng)).expect("square");
    let err = j_bilinearity_check(&a, &b).expect("block-form inputs");

    // Control: the doubled Kronecker product must *fail* J-bilinearity even
    // on identities — there J (x) I and I (x) J are plainly different
    // matrices, differing by entries of magnitude exactly 1. If that
    // counterexample ever evaporates, the suite reports an infinite error.
    let ia = realify_op(&ComplexOp::identity(na)).expect("square");
    let ib = realify_op(&ComplexOp::identity(nb)).expect("square");
    let mismatch = kron_doubled_j_mismatch(&ia, &ib);
    if (mismatch - 1.0).abs() > 1e-12 {
        return f64::INFINITY;
    }
    err
}

fn local_maps_trial(t: u64, rng: &mut ChaCha8Rng) -> f64 {
    let side = if t % 2 == 0 { Side::A } else { Side::B };
    let n_other = 1 + (t % 3) as usize;
    let (na, nb) = match side {
        Side::A => (2, n_other),
        Side::B => (n_other, 2),
    };
    let n = na * nb;
    let embed = |local: &ComplexOp| -> ComplexOp {
        match side {
            Side::A => local.ckron(&ComplexOp::identity(nb)),
            Side::B => ComplexOp::identity(na).ckron(local),
        }
    };

    // Local unitary on a state.
    let u = random_unitary(2, rng);
    let psi = random_state(n, rng);
    let s = realify_state(&psi).expect("column");
    let moved = apply_local_unitary_state(&s, &u, side).expect("valid unitary and dims");
    let full = embed(&u);
    let oracle_state = realify_state(&full.cmul(&psi).expect("dims")).expect("column");
    let mut err = moved.mat().max_abs_diff(oracle_state.mat()).expect("same shape");

    // Local unitary on a rank-2 density operator.
    let psi_b = random_state(n, rng);
    let rho = outer(&psi).scale(0.7).add(&outer(&psi_b).scale(0.3)).expect("same shape");
    let rho_k = realify_op(&rho).expect("square");
    let rho_moved = apply_local_unitary_rho(&rho_k, &u, side).expect("valid unitary and dims");
    let rho_oracle = full.cmul(&rho).expect("dims").cmul(&full.adjoint()).expect("dims");
    err = err.max(
        rho_moved
            .mat()
            .max_abs_diff(realify_op(&rho_oracle).expect("square").mat())
            .expect("same shape"),
    );

    // A Kraus channel on the same density operator, cycling through a
    // unitary mixture, depolarizing noise, and amplitude damping.
    let kraus = match t % 3 {
        0 => {
            let u1 = random_unitary(2, rng);
            let u2 = random_unitary(2, rng);
            vec![u1.scale(0.6_f64.sqrt()), u2.scale(0.4_f64.sqrt())]
        }
        1 => depolarizing_kraus(0.05 + 0.9 * rng.gen::<f64>()).expect("valid probability"),
        _ => amplitude_damping_kraus(rng.gen::<f64>()).expect("valid damping"),
    };
    let rho_after = apply_kraus(&rho_k, &kraus, side).expect("complete family");
    let mut complex_after = ComplexOp::zeros(n, n);
    for m in &kraus {
        let mf = embed(m);
        let term = mf.cmul(&rho).expect("dims").cmul(&mf.adjoint()).expect("dims");
        complex_after = complex_after.add(&term).expect("same shape");
    }
    err = err.max(
        rho_after
            .mat()
            .max_abs_diff(realify_op(&complex_after).expect("square").mat())
            .expect("same shape"),
    );

    // Trace preservation, read back through the complexification.
    let tr_before = rho.trace().expect("square");
    let tr_after = complexify_op(&rho_after).trace().expect("square");
    err = err.max((tr_after.re - tr_before.re).abs());
    err.max((tr_after.im - tr_before.im).abs())
}

fn outer(psi: &ComplexOp) -> ComplexOp {
    psi.cmul(&psi.adjoint()).expect("column times row")
}
