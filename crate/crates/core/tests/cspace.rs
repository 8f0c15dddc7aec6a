//! Complex-arithmetic layer: Pauli algebra, inner products, Bell states,
//! and the tensor product — the oracle everything else is judged against.

use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

use kahlerq_core::cspace::{
    bell_state, expectation, inner, pauli, random_state, random_unitary, Axis, BellOutcome,
    ComplexOp,
};
use kahlerq_core::realmat::{random_matrix, RealMatrix};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn mat(rows: &[&[f64]]) -> RealMatrix {
    RealMatrix::from_rows(rows).unwrap()
}

fn random_op(n: usize, rng: &mut ChaCha8Rng) -> ComplexOp {
    let re = random_matrix(n, n, rng);
    let im = random_matrix(n, n, rng);
    ComplexOp::new(re, im).unwrap()
}

/// Multiplication by i: i(X + iY) = -Y + iX.
fn times_i(op: &ComplexOp) -> ComplexOp {
    ComplexOp::new(op.im().neg(), op.re().clone()).unwrap()
}

#[test]
fn i_times_identity_squares_to_minus_identity() {
    let i_op = times_i(&ComplexOp::identity(3));
    let sq = i_op.cmul(&i_op).unwrap();
    let minus_identity = ComplexOp::identity(3).neg();
    assert_eq!(sq.max_abs_diff(&minus_identity).unwrap(), 0.0);
}

#[test]
fn pauli_product_xy_is_i_z() {
    let got = pauli(Axis::X).cmul(&pauli(Axis::Y)).unwrap();
    let want = times_i(&pauli(Axis::Z));
    assert_eq!(got.max_abs_diff(&want).unwrap(), 0.0);
}

#[test]
fn full_pauli_multiplication_table() {
    // sigma_a sigma_b = delta_ab I + i eps_abc sigma_c, all nine pairs.
    let eps = |a: Axis, b: Axis| -> Option<(Axis, f64)> {
        match (a, b) {
            (Axis::X, Axis::Y) => Some((Axis::Z, 1.0)),
            (Axis::Y, Axis::Z) => Some((Axis::X, 1.0)),
            (Axis::Z, Axis::X) => Some((Axis::Y, 1.0)),
            (Axis::Y, Axis::X) => Some((Axis::Z, -1.0)),
            (Axis::Z, Axis::Y) => Some((Axis::X, -1.0)),
            (Axis::X, Axis::Z) => Some((Axis::Y, -1.0)),
            _ => None,
        }
    };
    for a in Axis::ALL {
        for b in Axis::ALL {
            let got = pauli(a).cmul(&pauli(b)).unwrap();
            let want = match eps(a, b) {
                None => ComplexOp::identity(2),
                Some((c, sign)) => times_i(&pauli(c)).scale(sign),
            };
            assert_eq!(got.max_abs_diff(&want).unwrap(), 0.0, "{a:?}{b:?}");
        }
    }
}

#[test]
fn paulis_are_hermitian_and_traceless() {
    for a in Axis::ALL {
        let p = pauli(a);
        assert_eq!(p.max_abs_diff(&p.adjoint()).unwrap(), 0.0);
        let t = p.trace().unwrap();
        assert_eq!((t.re, t.im), (0.0, 0.0));
    }
}

#[test]
fn cmul_matches_entrywise_complex_arithmetic() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let a = random_op(3, &mut rng);
    let b = random_op(3, &mut rng);
    let got = a.cmul(&b).unwrap();
    // Independent oracle: schoolbook complex multiply-accumulate on tuples.
    for i in 0..3 {
        for j in 0..3 {
            let (mut re, mut im) = (0.0, 0.0);
            for k in 0..3 {
                let (ar, ai) = (a.re().at(i, k), a.im().at(i, k));
                let (br, bi) = (b.re().at(k, j), b.im().at(k, j));
                re += ar * br - ai * bi;
                im += ar * bi + ai * br;
            }
            assert!((got.re().at(i, j) - re).abs() < 1e-12);
            assert!((got.im().at(i, j) - im).abs() < 1e-12);
        }
    }
}

#[test]
fn adjoint_reverses_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let a = random_op(3, &mut rng);
    let b = random_op(3, &mut rng);
    let lhs = a.cmul(&b).unwrap().adjoint();
    let rhs = b.adjoint().cmul(&a.adjoint()).unwrap();
    assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-12);
}

#[test]
fn ckron_of_sigma_y_pair_is_real() {
    // sigma_y (x) sigma_y has purely real entries: -(tau (x) tau).
    let got = pauli(Axis::Y).ckron(&pauli(Axis::Y));
    let tau = RealMatrix::tau();
    let want_re = tau.kron(&tau).neg();
    assert_eq!(got.re().max_abs_diff(&want_re).unwrap(), 0.0);
    assert_eq!(got.im().max_abs(), 0.0);
}

#[test]
fn ckron_matches_four_term_expansion() {
    // (Xa + iYa) (x) (Xb + iYb) = (Xa(x)Xb - Ya(x)Yb) + i(Xa(x)Yb + Ya(x)Xb)
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let a = random_op(2, &mut rng);
    let b = random_op(3, &mut rng);
    let got = a.ckron(&b);
    let want_re = a.re().kron(b.re()).sub(&a.im().kron(b.im())).unwrap();
    let want_im = a.re().kron(b.im()).add(&a.im().kron(b.re())).unwrap();
    assert_eq!(got.re().max_abs_diff(&want_re).unwrap(), 0.0);
    assert_eq!(got.im().max_abs_diff(&want_im).unwrap(), 0.0);
}

#[test]
fn ckron_mixed_product_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    let a = random_op(2, &mut rng);
    let b = random_op(2, &mut rng);
    let c = random_op(2, &mut rng);
    let d = random_op(2, &mut rng);
    let lhs = a.ckron(&b).cmul(&c.ckron(&d)).unwrap();
    let rhs = a.cmul(&c).unwrap().ckron(&b.cmul(&d).unwrap());
    assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-12);
}

#[test]
fn inner_product_is_conjugate_linear_in_first_argument() {
    let zero = ComplexOp::new(mat(&[&[1.0], &[0.0]]), RealMatrix::zeros(2, 1)).unwrap();
    let i_zero = times_i(&zero);
    // <0| i|0> = i
    let z = inner(&zero, &i_zero).unwrap();
    assert_eq!((z.re, z.im), (0.0, 1.0));
    // <i 0 | 0> = -i
    let z = inner(&i_zero, &zero).unwrap();
    assert_eq!((z.re, z.im), (0.0, -1.0));
}

#[test]
fn expectation_of_sigma_z_on_basis_states() {
    let zero = ComplexOp::new(mat(&[&[1.0], &[0.0]]), RealMatrix::zeros(2, 1)).unwrap();
    let one = ComplexOp::new(mat(&[&[0.0], &[1.0]]), RealMatrix::zeros(2, 1)).unwrap();
    let plus = ComplexOp::new(
        mat(&[&[FRAC_1_SQRT_2], &[FRAC_1_SQRT_2]]),
        RealMatrix::zeros(2, 1),
    )
    .unwrap();
    let ez = expectation(&zero, &pauli(Axis::Z)).unwrap();
    assert!((ez.re - 1.0).abs() < 1e-15 && ez.im.abs() < 1e-15);
    let ez = expectation(&one, &pauli(Axis::Z)).unwrap();
    assert!((ez.re + 1.0).abs() < 1e-15 && ez.im.abs() < 1e-15);
    let ex = expectation(&plus, &pauli(Axis::X)).unwrap();
    assert!((ex.re - 1.0).abs() < 1e-15 && ex.im.abs() < 1e-15);
}

#[test]
fn bell_states_are_orthonormal() {
    for a in BellOutcome::ALL {
        for b in BellOutcome::ALL {
            let z = inner(&bell_state(a), &bell_state(b)).unwrap();
            let want = if a == b { 1.0 } else { 0.0 };
            assert!((z.re - want).abs() < 1e-15 && z.im.abs() < 1e-15, "{a} vs {b}");
        }
    }
}

#[test]
fn bell_state_correlation_signatures() {
    // Diagonal correlators (<ZZ>, <XX>, <YY>) distinguish the four states:
    // 00 -> (+1, +1, -1), 01 -> (-1, +1, +1),
    // 10 -> (+1, -1, +1), 11 -> (-1, -1, -1).
    let table = [
        (BellOutcome::B00, [1.0, 1.0, -1.0]),
        (BellOutcome::B01, [-1.0, 1.0, 1.0]),
        (BellOutcome::B10, [1.0, -1.0, 1.0]),
        (BellOutcome::B11, [-1.0, -1.0, -1.0]),
    ];
    for (outcome, want) in table {
        let psi = bell_state(outcome);
        for (axis, want_c) in [Axis::Z, Axis::X, Axis::Y].into_iter().zip(want) {
            let op = pauli(axis).ckron(&pauli(axis));
            let c = expectation(&psi, &op).unwrap();
            assert!(
                (c.re - want_c).abs() < 1e-15 && c.im.abs() < 1e-15,
                "{outcome}: <{axis:?}{axis:?}> = {} want {want_c}",
                c.re
            );
        }
    }
}

#[test]
fn bell_outcome_labels_act_by_phase_and_parity() {
    // bell_state(b1 b2) = (Z^b1 X^b2 (x) I) bell_state(00): the first bit
    // flips the relative phase, the second flips parity.
    let phi_plus = bell_state(BellOutcome::B00);
    for outcome in BellOutcome::ALL {
        let (b1, b2) = outcome.bits();
        let mut local = ComplexOp::identity(2);
        if b2 == 1 {
            local = pauli(Axis::X).cmul(&local).unwrap();
        }
        if b1 == 1 {
            local = pauli(Axis::Z).cmul(&local).unwrap();
        }
        let moved = local.ckron(&ComplexOp::identity(2)).cmul(&phi_plus).unwrap();
        assert!(
            moved.max_abs_diff(&bell_state(outcome)).unwrap() < 1e-15,
            "encoding mismatch at {outcome}"
        );
    }
}

/// Pins the triple-correlator operator's value on every Bell state, built
/// from nothing but Paulis and tensor products: the operator
/// `2*sqrt(2) ((-1)^b2 ZZ + (-1)^b1 XX - (-1)^(b1+b2) YY)` has expectation
/// `6*sqrt(2)` on `bell_state(b)` for each outcome, because its three signs
/// match that state's correlation signature.
#[test]
fn signed_correlator_operator_reaches_maximum_on_matching_bell_state() {
    for outcome in BellOutcome::ALL {
        let (b1, b2) = outcome.bits();
        let s = |bit: u8| if bit == 0 { 1.0 } else { -1.0 };
        let zz = pauli(Axis::Z).ckron(&pauli(Axis::Z)).scale(s(b2));
        let xx = pauli(Axis::X).ckron(&pauli(Axis::X)).scale(s(b1));
        let yy = pauli(Axis::Y).ckron(&pauli(Axis::Y)).scale(-s(b1) * s(b2));
        let op = zz.add(&xx).unwrap().add(&yy).unwrap().scale(2.0 * SQRT_2);
        let e = expectation(&bell_state(outcome), &op).unwrap();
        assert!(
            (e.re - 6.0 * SQRT_2).abs() < 1e-12 && e.im.abs() < 1e-12,
            "outcome {outcome}: got {} + {}i",
            e.re,
            e.im
        );
    }
}

#[test]
fn outcome_strings_round_trip() {
    for outcome in BellOutcome::ALL {
        let s = outcome.to_string();
        assert_eq!(s.parse::<BellOutcome>().unwrap(), outcome);
    }
    assert!("02".parse::<BellOutcome>().is_err());
    assert!("0".parse::<BellOutcome>().is_err());
}

#[test]
fn random_states_are_normalized() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for n in 1..=5 {
        let psi = random_state(n, &mut rng);
        let z = inner(&psi, &psi).unwrap();
        assert!((z.re - 1.0).abs() < 1e-12 && z.im.abs() < 1e-15);
    }
}

#[test]
fn random_unitaries_are_unitary() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for n in 1..=4 {
        let u = random_unitary(n, &mut rng);
        let gram = u.adjoint().cmul(&u).unwrap();
        assert!(gram.max_abs_diff(&ComplexOp::identity(n)).unwrap() < 1e-12);
    }
}
