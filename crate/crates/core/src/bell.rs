//! Bell-inequality evaluators on the Kähler side, with the complex side as
//! oracle: CHSH at the Tsirelson bound `2*sqrt(2)`, the tripartite
//! entanglement-swapping functional CHSH3 at `6*sqrt(2)`, the network
//! probability table it is evaluated on, and local unitary/Kraus maps acting
//! on one factor of a composite system.
//!
//! Everything labelled "value" here is computed with real matrices only —
//! realified operators, `2N x 2` states, and the metric `g`. Everything
//! labelled "oracle" recomputes the same quantity through standard complex
//! quantum mechanics (module [`crate::cspace`]) so the two formulations can
//! be held against each other number by number.

use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

use crate::compose::symp_tensor_op;
use crate::cspace::{
    bell_state, expectation, inner, pauli, Axis, BellOutcome, ComplexOp, ComplexScalar,
};
use crate::error::{Error, Result};
use crate::kahler::{metric, overlap_block, realify_op, realify_state, KahlerOp, KahlerState};
use crate::realmat::RealMatrix;
use crate::TOL_ALGEBRAIC;

/// A CHSH measurement scenario: two dichotomic 2x2 observables per party.
/// All four operators must be Hermitian with spectrum inside `[-1, 1]`
/// (checked with the closed-form 2x2 eigenvalue bound).
#[derive(Debug, Clone)]
pub struct ChshSetting {
    alice: [ComplexOp; 2],
    bob: [ComplexOp; 2],
}

impl ChshSetting {
    pub fn new(alice: [ComplexOp; 2], bob: [ComplexOp; 2]) -> Result<Self> {
        for (name, op) in [("A0", &alice[0]), ("A1", &alice[1]), ("B0", &bob[0]), ("B1", &bob[1])] {
            if op.shape() != (2, 2) {
                return Err(Error::dim(
                    "ChshSetting::new",
                    format!("{name} is {}x{}, observables must be 2x2", op.rows(), op.cols()),
                ));
            }
            if !op.approx_eq(&op.adjoint(), TOL_ALGEBRAIC)? {
                return Err(Error::validation("ChshSetting::new", format!("{name} is not Hermitian")));
            }
            let bound = hermitian2_spectral_bound(op);
            if bound > 1.0 + 1e-9 {
                return Err(Error::validation(
                    "ChshSetting::new",
                    format!("{name} has spectral bound {bound}, eigenvalues must lie in [-1, 1]"),
                ));
            }
        }
        Ok(ChshSetting { alice, bob })
    }

    /// The setting that reaches the Tsirelson bound on the singlet:
    /// `A0 = sigma_z`, `A1 = sigma_x`,
    /// `B0 = -(sigma_x + sigma_z)/sqrt(2)`, `B1 = (sigma_z - sigma_x)/sqrt(2)`.
    pub fn tsirelson() -> Self {
        let sx = pauli(Axis::X);
        let sz = pauli(Axis::Z);
        let b0 = sx.add(&sz).expect("2x2").scale(-FRAC_1_SQRT_2);
        let b1 = sz.sub(&sx).expect("2x2").scale(FRAC_1_SQRT_2);
        ChshSetting::new([sz, sx], [b0, b1]).expect("canonical observables are valid")
    }

    pub fn alice(&self, idx: usize) -> &ComplexOp {
        &self.alice[idx]
    }

    pub fn bob(&self, idx: usize) -> &ComplexOp {
        &self.bob[idx]
    }
}

/// Largest eigenvalue magnitude of a 2x2 Hermitian matrix, in closed form:
/// `|(h11+h22)/2| + sqrt(((h11-h22)/2)^2 + |h12|^2)` via the two roots.
fn hermitian2_spectral_bound(op: &ComplexOp) -> f64 {
    let h11 = op.re().at(0, 0);
    let h22 = op.re().at(1, 1);
    let zr = op.re().at(0, 1);
    let zi = op.im().at(0, 1);
    let mean = 0.5 * (h11 + h22);
    let disc = (0.25 * (h11 - h22) * (h11 - h22) + zr * zr + zi * zi).sqrt();
    (mean + disc).abs().max((mean - disc).abs())
}

/// The realified correlation operator `C_ab = realify(A_a (x)_C B_b)`, an
/// 8x8 real matrix. For real-entried observables (as in the Tsirelson
/// setting) it is block diagonal, `I_2 (x) (A_a (x) B_b)`.
pub fn chsh_operator(a_idx: usize, b_idx: usize, setting: &ChshSetting) -> KahlerOp {
    assert!(a_idx < 2 && b_idx < 2, "CHSH indices are 0 or 1");
    realify_op(&setting.alice[a_idx].ckron(&setting.bob[b_idx])).expect("4x4 complex op")
}

/// The four correlators `g(state, C_ab * state)` in the order
/// `(C00, C10, C01, C11)`.
pub fn chsh_correlators(state: &KahlerState, setting: &ChshSetting) -> Result<[f64; 4]> {
    let mut out = [0.0; 4];
    for (slot, (a, b)) in [(0, 0), (1, 0), (0, 1), (1, 1)].into_iter().enumerate() {
        let op = chsh_operator(a, b, setting);
        out[slot] = metric(state, &op.apply(state)?)?;
    }
    Ok(out)
}

/// The CHSH combination `<C00> + <C10> - <C01> + <C11>`, each expectation
/// taken with the metric on the Kähler side. On the singlet with the
/// Tsirelson setting this is `2*sqrt(2)`; no quantum state exceeds that.
pub fn chsh_value(state: &KahlerState, setting: &ChshSetting) -> Result<f64> {
    let c = chsh_correlators(state, setting)?;
    Ok(c[0] + c[1] - c[2] + c[3])
}

/// The singlet `(|01> - |10>)/sqrt(2)` as a Kähler state — the state the
/// Tsirelson setting is tuned for.
pub fn singlet_state() -> KahlerState {
    realify_state(&bell_state(BellOutcome::B11)).expect("Bell states are 4x1 columns")
}

/// Measurement scenario for the tripartite functional: Alice's three Pauli
/// settings and Charlie's six "diagonal" observables
/// `D_ij = (sigma_i + sigma_j)/sqrt(2)`, `E_ij = (sigma_i - sigma_j)/sqrt(2)`
/// for the axis pairs `(z,x), (z,y), (x,y)`, in the fixed order
/// `D_zx, E_zx, D_zy, E_zy, D_xy, E_xy`.
///
/// The pairing of settings with terms of the functional: Alice's setting
/// `x = 1, 2, 3` is `Z, X, Y`; Charlie's setting `z = 1..6` walks the list
/// above. Each `(D, E)` pair sums and differences to `sqrt(2)` times a
/// single Pauli, which is how the six signed groups of the functional
/// collapse to the three-term operator of [`chsh3_operator`].
#[derive(Debug, Clone)]
pub struct Chsh3Setting {
    outcome: BellOutcome,
    alice: [ComplexOp; 3],
    charlie: [ComplexOp; 6],
}

impl Chsh3Setting {
    /// The canonical scenario for Bob's outcome `b`.
    pub fn standard(outcome: BellOutcome) -> Self {
        Chsh3Setting {
            outcome,
            alice: [alice_observable(1), alice_observable(2), alice_observable(3)],
            charlie: [
                charlie_observable(1),
                charlie_observable(2),
                charlie_observable(3),
                charlie_observable(4),
                charlie_observable(5),
                charlie_observable(6),
            ],
        }
    }

    pub fn outcome(&self) -> BellOutcome {
        self.outcome
    }

    /// Alice's observable for setting `x` in `1..=3`.
    pub fn alice(&self, x: usize) -> &ComplexOp {
        &self.alice[x - 1]
    }

    /// Charlie's observable for setting `z` in `1..=6`.
    pub fn charlie(&self, z: usize) -> &ComplexOp {
        &self.charlie[z - 1]
    }
}

/// Alice's observable for setting `x`: `1 -> sigma_z`, `2 -> sigma_x`,
/// `3 -> sigma_y`.
pub fn alice_observable(x: usize) -> ComplexOp {
    match x {
        1 => pauli(Axis::Z),
        2 => pauli(Axis::X),
        3 => pauli(Axis::Y),
        _ => panic!("Alice's setting must be 1, 2 or 3, got {x}"),
    }
}

/// Charlie's observable for setting `z` in `1..=6`:
/// `D_zx, E_zx, D_zy, E_zy, D_xy, E_xy` with
/// `D_ij = (sigma_i + sigma_j)/sqrt(2)` and `E_ij = (sigma_i - sigma_j)/sqrt(2)`.
pub fn charlie_observable(z: usize) -> ComplexOp {
    let d = |i: Axis, j: Axis| pauli(i).add(&pauli(j)).expect("2x2").scale(FRAC_1_SQRT_2);
    let e = |i: Axis, j: Axis| pauli(i).sub(&pauli(j)).expect("2x2").scale(FRAC_1_SQRT_2);
    match z {
        1 => d(Axis::Z, Axis::X),
        2 => e(Axis::Z, Axis::X),
        3 => d(Axis::Z, Axis::Y),
        4 => e(Axis::Z, Axis::Y),
        5 => d(Axis::X, Axis::Y),
        6 => e(Axis::X, Axis::Y),
        _ => panic!("Charlie's setting must be in 1..=6, got {z}"),
    }
}

fn sign_of_bit(bit: u8) -> f64 {
    if bit == 0 {
        1.0
    } else {
        -1.0
    }
}

/// The twelve signed terms `(x, z, coefficient)` of the functional for
/// outcome `b = (b1, b2)`:
///
/// ```text
/// T_b = (-1)^b2 (S_11 + S_12) + (-1)^b1 (S_21 - S_22)
///     + (-1)^b2 (S_13 + S_14) - (-1)^(b1+b2) (S_33 - S_34)
///     + (-1)^b1 (S_25 + S_26) - (-1)^(b1+b2) (S_35 - S_36)
/// ```
///
/// listed in the order written, grouped four-at-a-time into the three CHSH
/// sub-expressions. This table is the single source of truth for the signs:
/// the operator build and the probability-table evaluation both walk it, so
/// they can only differ if the two *computation paths* differ.
pub fn chsh3_terms(outcome: BellOutcome) -> [(usize, usize, f64); 12] {
    let (b1, b2) = outcome.bits();
    let s_parity = sign_of_bit(b2); // (-1)^b2
    let s_phase = sign_of_bit(b1); // (-1)^b1
    let s_both = -sign_of_bit(b1) * sign_of_bit(b2); // -(-1)^(b1+b2)
    [
        (1, 1, s_parity),
        (1, 2, s_parity),
        (2, 1, s_phase),
        (2, 2, -s_phase),
        (1, 3, s_parity),
        (1, 4, s_parity),
        (3, 3, s_both),
        (3, 4, -s_both),
        (2, 5, s_phase),
        (2, 6, s_phase),
        (3, 5, s_both),
        (3, 6, -s_both),
    ]
}

/// The functional's operator on the complex side: the signed sum of
/// `A_x (x)_C C_z` over [`chsh3_terms`]. For every outcome it collapses to
///
/// ```text
/// 2*sqrt(2) * ((-1)^b2 Z(x)Z + (-1)^b1 X(x)X - (-1)^(b1+b2) Y(x)Y)
/// ```
///
/// whose expectation on `bell_state(b)` is `6*sqrt(2)` — each of the three
/// correlators contributes with sign matching that state's signature.
pub fn chsh3_operator_complex(setting: &Chsh3Setting) -> ComplexOp {
    let mut acc = ComplexOp::zeros(4, 4);
    for (x, z, coeff) in chsh3_terms(setting.outcome()) {
        let term = setting.alice(x).ckron(setting.charlie(z)).scale(coeff);
        acc = acc.add(&term).expect("4x4 terms");
    }
    acc
}

/// The functional's operator realified: an 8x8 real matrix, built by
/// realifying the complex six-group sum.
pub fn chsh3_operator(setting: &Chsh3Setting) -> KahlerOp {
    realify_op(&chsh3_operator_complex(setting)).expect("4x4 complex op")
}

/// The same operator assembled without ever forming a complex composite:
/// each factor is realified *first* (2x2 -> 4x4), the pairs are combined
/// with the symplectic tensor product, and the signed sum is taken on real
/// matrices. Agreement with [`chsh3_operator`] is the operator-level
/// two-paths check.
pub fn chsh3_operator_symplectic(setting: &Chsh3Setting) -> KahlerOp {
    let mut acc = KahlerOp::new(RealMatrix::zeros(8, 8)).expect("even side");
    for (x, z, coeff) in chsh3_terms(setting.outcome()) {
        let ax = realify_op(setting.alice(x)).expect("2x2 observable");
        let cz = realify_op(setting.charlie(z)).expect("2x2 observable");
        let term = symp_tensor_op(&ax, &cz).expect("realified factors are block-form");
        acc = acc.add(&term.scale(coeff)).expect("8x8 terms");
    }
    acc
}

/// The 2x2 pre-contraction object `<s_b| T_b |s_b>_K` — the realified
/// complex scalar, so for the maximal value it is `6*sqrt(2) * I_2`
/// entrywise.
pub fn chsh3_precontraction(outcome: BellOutcome) -> RealMatrix {
    let setting = Chsh3Setting::standard(outcome);
    let op = chsh3_operator(&setting);
    let s = realify_state(&bell_state(outcome)).expect("Bell states are columns");
    let applied = op.apply(&s).expect("matching dimensions");
    overlap_block(&s, &applied).expect("matching dimensions")
}

/// The functional's value for Bob's outcome `b`, evaluated entirely with
/// real matrices: `g(s_b, T_b^K s_b)` where `s_b` is the realified Bell
/// state for `b`. Equals `6*sqrt(2)` for every outcome.
pub fn chsh3_value(outcome: BellOutcome) -> f64 {
    let setting = Chsh3Setting::standard(outcome);
    let op = chsh3_operator(&setting);
    let s = realify_state(&bell_state(outcome)).expect("Bell states are columns");
    let applied = op.apply(&s).expect("matching dimensions");
    metric(&s, &applied).expect("matching dimensions")
}

/// Complex-side oracle for the same quantity:
/// `<bell_b| T_b |bell_b>` by standard complex expectation.
pub fn chsh3_oracle_expectation(outcome: BellOutcome) -> ComplexScalar {
    let setting = Chsh3Setting::standard(outcome);
    let op = chsh3_operator_complex(&setting);
    expectation(&bell_state(outcome), &op).expect("4x1 state, 4x4 operator")
}

/// A measurement outcome for a dichotomic (±1-valued) observable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Neg,
    Pos,
}

impl Sign {
    pub const ALL: [Sign; 2] = [Sign::Neg, Sign::Pos];

    pub fn value(self) -> f64 {
        match self {
            Sign::Neg => -1.0,
            Sign::Pos => 1.0,
        }
    }

    fn index(self) -> usize {
        match self {
            Sign::Neg => 0,
            Sign::Pos => 1,
        }
    }
}

/// The joint probability table `P(a, b, c | x, z)` of the entanglement-
/// swapping network: Alice's ±1 outcome `a` under setting `x` in `1..=3`,
/// Bob's four-outcome Bell measurement result `b`, Charlie's ±1 outcome `c`
/// under setting `z` in `1..=6`. 288 cells.
#[derive(Debug, Clone)]
pub struct NetworkDistribution {
    /// Row-major over (x, z, b, a, c).
    probs: Vec<f64>,
}

impl NetworkDistribution {
    fn idx(x: usize, z: usize, b: BellOutcome, a: Sign, c: Sign) -> usize {
        assert!((1..=3).contains(&x), "Alice's setting must be in 1..=3, got {x}");
        assert!((1..=6).contains(&z), "Charlie's setting must be in 1..=6, got {z}");
        ((((x - 1) * 6 + (z - 1)) * 4 + b.index()) * 2 + a.index()) * 2 + c.index()
    }

    pub fn prob(&self, a: Sign, b: BellOutcome, c: Sign, x: usize, z: usize) -> f64 {
        self.probs[Self::idx(x, z, b, a, c)]
    }

    /// Largest deviation of any setting pair's total probability from 1.
    pub fn normalization_error(&self) -> f64 {
        let mut worst = 0.0_f64;
        for x in 1..=3 {
            for z in 1..=6 {
                let total: f64 = BellOutcome::ALL
                    .iter()
                    .flat_map(|&b| {
                        Sign::ALL.iter().flat_map(move |&a| {
                            Sign::ALL.iter().map(move |&c| self.prob(a, b, c, x, z))
                        })
                    })
                    .sum();
                worst = worst.max((total - 1.0).abs());
            }
        }
        worst
    }

    /// Probability of Bob's outcome `b` under the setting pair `(x, z)`.
    /// Physically this cannot depend on `(x, z)` — Bob measures first on his
    /// own two qubits — and the tests confirm it is 1/4 across the board.
    pub fn marginal_b(&self, b: BellOutcome, x: usize, z: usize) -> f64 {
        Sign::ALL
            .iter()
            .flat_map(|&a| Sign::ALL.iter().map(move |&c| self.prob(a, b, c, x, z)))
            .sum()
    }

    /// The signed correlation `S^b_xz = sum_{a,c} a*c*P(a, b, c | x, z)`.
    /// Note this is *not* conditioned on `b`: it carries the factor `P(b)`.
    pub fn s_xz(&self, b: BellOutcome, x: usize, z: usize) -> f64 {
        let mut total = 0.0;
        for a in Sign::ALL {
            for c in Sign::ALL {
                total += a.value() * c.value() * self.prob(a, b, c, x, z);
            }
        }
        total
    }

    /// CSV export: header `a,b,c,x,z,p`, one row per cell, probabilities
    /// with 15 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("a,b,c,x,z,p\n");
        for x in 1..=3 {
            for z in 1..=6 {
                for b in BellOutcome::ALL {
                    for a in Sign::ALL {
                        for c in Sign::ALL {
                            let p = self.prob(a, b, c, x, z);
                            out.push_str(&format!(
                                "{},{},{},{},{},{}\n",
                                a.value() as i32,
                                b,
                                c.value() as i32,
                                x,
                                z,
                                crate::opfile::sig15(p)
                            ));
                        }
                    }
                }
            }
        }
        out
    }
}

/// Tabulate the network distribution by brute force on the complex side.
///
/// The network: one maximally entangled pair `phi+` shared by Alice and
/// Bob's first qubit, another by Bob's second qubit and Charlie. Bob
/// projects his two qubits onto the Bell basis (outcome `b`), which swaps
/// the entanglement: conditioned on `b`, Alice and Charlie — who never
/// interacted — hold the Bell state `bell_state(b)`. Each cell is
/// `|| (Pi_a (x) Pi_b (x) Pi_c) |Psi> ||^2` with `Pi_a = (I + a A_x)/2`,
/// `Pi_c = (I + c C_z)/2`, and `Pi_b` the Bell projector.
pub fn network_distribution() -> NetworkDistribution {
    let phi_plus = bell_state(BellOutcome::B00);
    // Qubit order (A, B1, B2, C): Alice's half of pair 1, Bob's two halves,
    // Charlie's half of pair 2.
    let psi = phi_plus.ckron(&phi_plus);

    let bell_projectors: Vec<ComplexOp> = BellOutcome::ALL
        .iter()
        .map(|&b| {
            let ket = bell_state(b);
            ket.cmul(&ket.adjoint()).expect("4x1 times 1x4")
        })
        .collect();

    let half = |obs: &ComplexOp, outcome: Sign| -> ComplexOp {
        ComplexOp::identity(2)
            .add(&obs.scale(outcome.value()))
            .expect("2x2")
            .scale(0.5)
    };

    let mut probs = vec![0.0; 3 * 6 * 4 * 2 * 2];
    for x in 1..=3 {
        let ax = alice_observable(x);
        for z in 1..=6 {
            let cz = charlie_observable(z);
            for b in BellOutcome::ALL {
                let pi_b = &bell_projectors[b.index()];
                for a in Sign::ALL {
                    let pi_a = half(&ax, a);
                    for c in Sign::ALL {
                        let pi_c = half(&cz, c);
                        let proj = pi_a.ckron(pi_b).ckron(&pi_c);
                        let amp = proj.cmul(&psi).expect("16x16 times 16x1");
                        let p = inner(&amp, &amp).expect("16x1 columns").re;
                        probs[NetworkDistribution::idx(x, z, b, a, c)] = p;
                    }
                }
            }
        }
    }
    NetworkDistribution { probs }
}

/// Evaluate the functional on a distribution: the signed sum of `S^b_xz`
/// over [`chsh3_terms`]. On the network distribution this gives
/// `P(b) * 6*sqrt(2) = 6*sqrt(2)/4` — the correlations `S` are not
/// conditioned on Bob's outcome, so the outcome's probability rides along.
pub fn chsh3_functional(dist: &NetworkDistribution, outcome: BellOutcome) -> f64 {
    chsh3_terms(outcome)
        .iter()
        .map(|&(x, z, coeff)| coeff * dist.s_xz(outcome, x, z))
        .sum()
}

/// The three four-term groups of the functional evaluated separately — each
/// is a CHSH expression over one axis pair, worth `2*sqrt(2)/4` on the
/// network distribution; their sum is [`chsh3_functional`].
pub fn chsh3_subfunctionals(dist: &NetworkDistribution, outcome: BellOutcome) -> [f64; 3] {
    let terms = chsh3_terms(outcome);
    let mut out = [0.0; 3];
    for (group, chunk) in terms.chunks(4).enumerate() {
        out[group] = chunk.iter().map(|&(x, z, coeff)| coeff * dist.s_xz(outcome, x, z)).sum();
    }
    out
}

/// Which factor of a bipartite composite a local map acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

/// The realified embedding `U^K (x)_K I^K` (side A) or `I^K (x)_K U^K`
/// (side B) of a local operator into the composite Kähler space.
fn local_composite(u: &ComplexOp, side: Side, n_other: usize) -> Result<KahlerOp> {
    let uk = realify_op(u)?;
    let ik = realify_op(&ComplexOp::identity(n_other))?;
    match side {
        Side::A => symp_tensor_op(&uk, &ik),
        Side::B => symp_tensor_op(&ik, &uk),
    }
}

fn check_unitary(op: &'static str, u: &ComplexOp) -> Result<()> {
    if !u.is_square() {
        return Err(Error::dim(op, format!("unitary must be square, got {}x{}", u.rows(), u.cols())));
    }
    let gram = u.adjoint().cmul(u)?;
    if !gram.approx_eq(&ComplexOp::identity(u.rows()), TOL_ALGEBRAIC)? {
        return Err(Error::validation(op, "matrix is not unitary (U^dagger U differs from I)".to_string()));
    }
    Ok(())
}

fn factor_dims(op: &'static str, composite_n: usize, local_n: usize) -> Result<usize> {
    if local_n == 0 || composite_n % local_n != 0 {
        return Err(Error::dim(
            op,
            format!("composite dimension {composite_n} does not factor through local dimension {local_n}"),
        ));
    }
    Ok(composite_n / local_n)
}

/// Apply a local unitary to one side of a composite state, entirely on the
/// Kähler side: `s -> (U^K (x)_K I^K) s`.
pub fn apply_local_unitary_state(s: &KahlerState, u: &ComplexOp, side: Side) -> Result<KahlerState> {
    check_unitary("apply_local_unitary_state", u)?;
    let n_other = factor_dims("apply_local_unitary_state", s.n(), u.rows())?;
    let w = local_composite(u, side, n_other)?;
    w.apply(s)
}

/// Apply a local unitary to one side of a composite density operator:
/// `rho -> W rho W^T` with `W = U^K (x)_K I^K`. The transpose is the
/// realified adjoint, so this is conjugation by the local unitary, done in
/// real arithmetic.
pub fn apply_local_unitary_rho(rho: &KahlerOp, u: &ComplexOp, side: Side) -> Result<KahlerOp> {
    check_unitary("apply_local_unitary_rho", u)?;
    let n_other = factor_dims("apply_local_unitary_rho", rho.n(), u.rows())?;
    let w = local_composite(u, side, n_other)?;
    w.matmul(rho)?.matmul(&w.transpose())
}

/// Apply a Kraus family `{M_i}` to one side of a composite density
/// operator: `rho -> sum_i W_i rho W_i^T` with `W_i = M_i^K (x)_K I^K`.
///
/// The completeness relation is checked where this module lives — on the
/// Kähler side: `sum_i (M_i^K)^T M_i^K` must equal the identity on the
/// doubled local space within `1e-10` (that is the realified form of
/// `sum_i M_i^dagger M_i = I`). Incomplete families are refused.
pub fn apply_kraus(rho: &KahlerOp, kraus: &[ComplexOp], side: Side) -> Result<KahlerOp> {
    let first = kraus
        .first()
        .ok_or_else(|| Error::validation("apply_kraus", "empty Kraus family".to_string()))?;
    if !first.is_square() {
        return Err(Error::dim("apply_kraus", format!("Kraus operators must be square, got {}x{}", first.rows(), first.cols())));
    }
    let local_n = first.rows();
    for (i, m) in kraus.iter().enumerate() {
        if m.shape() != (local_n, local_n) {
            return Err(Error::dim(
                "apply_kraus",
                format!("Kraus operator {i} is {}x{}, expected {local_n}x{local_n}", m.rows(), m.cols()),
            ));
        }
    }

    let mut completeness = RealMatrix::zeros(2 * local_n, 2 * local_n);
    let realified: Vec<KahlerOp> = kraus.iter().map(realify_op).collect::<Result<_>>()?;
    for mk in &realified {
        completeness = completeness.add(&mk.mat().transpose().matmul(mk.mat())?)?;
    }
    if !completeness.approx_eq(&RealMatrix::identity(2 * local_n), TOL_ALGEBRAIC)? {
        return Err(Error::validation(
            "apply_kraus",
            "incomplete Kraus family: sum_i (M_i^K)^T M_i^K differs from the identity".to_string(),
        ));
    }

    let n_other = factor_dims("apply_kraus", rho.n(), local_n)?;
    let mut acc = KahlerOp::new(RealMatrix::zeros(2 * rho.n(), 2 * rho.n()))?;
    for m in kraus {
        let w = local_composite(m, side, n_other)?;
        acc = acc.add(&w.matmul(rho)?.matmul(&w.transpose())?)?;
    }
    Ok(acc)
}

/// The depolarizing channel's Kraus family
/// `{sqrt(1-p) I, sqrt(p/3) sigma_x, sqrt(p/3) sigma_y, sqrt(p/3) sigma_z}`.
pub fn depolarizing_kraus(p: f64) -> Result<Vec<ComplexOp>> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::validation("depolarizing_kraus", format!("probability must be in [0, 1], got {p}")));
    }
    let w = (p / 3.0).sqrt();
    Ok(vec![
        ComplexOp::identity(2).scale((1.0 - p).sqrt()),
        pauli(Axis::X).scale(w),
        pauli(Axis::Y).scale(w),
        pauli(Axis::Z).scale(w),
    ])
}

/// The amplitude-damping channel's Kraus family
/// `{[[1, 0], [0, sqrt(1-g)]], [[0, sqrt(g)], [0, 0]]}`.
pub fn amplitude_damping_kraus(g: f64) -> Result<Vec<ComplexOp>> {
    if !(0.0..=1.0).contains(&g) {
        return Err(Error::validation("amplitude_damping_kraus", format!("damping must be in [0, 1], got {g}")));
    }
    let m0 = RealMatrix::from_rows(&[&[1.0, 0.0], &[0.0, (1.0 - g).sqrt()]]).expect("2x2");
    let m1 = RealMatrix::from_rows(&[&[0.0, g.sqrt()], &[0.0, 0.0]]).expect("2x2");
    Ok(vec![ComplexOp::from_real(m0), ComplexOp::from_real(m1)])
}

/// `2*sqrt(2)`, the Tsirelson bound — the quantum maximum of CHSH.
pub fn tsirelson_bound() -> f64 {
    2.0 * SQRT_2
}

/// `6*sqrt(2)`, the quantum maximum of the tripartite functional.
///
/// Context constants, not computed here: the local-realist bound of the same
/// functional is 6, and the bound attainable by "real quantum mechanics"
/// built with the Kronecker-doubled composition rule is approximately 7.66 —
/// strictly below `6*sqrt(2) ≈ 8.49`, which is the separation the rest of
/// this crate makes checkable.
pub fn chsh3_bound() -> f64 {
    6.0 * SQRT_2
}
