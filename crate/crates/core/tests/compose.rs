//! The symplectic tensor product against the complex oracle, its refusal
//! behavior, and its structural divergence from the doubled Kronecker
//! product.

use kahlerq_core::compose::{
    composition_divergence, diagram_check, j_bilinearity_check, kron_doubled,
    kron_doubled_j_mismatch, symp_tensor_op, symp_tensor_state,
};
use kahlerq_core::cspace::{pauli, Axis, ComplexOp};
use kahlerq_core::kahler::{
    complexify_op, is_kahler_block, kahler_pauli, realify_op, realify_state, KahlerOp,
};
use kahlerq_core::realmat::{random_matrix, RealMatrix};
use kahlerq_core::Error;
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

fn column(entries: &[(f64, f64)]) -> ComplexOp {
    let re: Vec<f64> = entries.iter().map(|e| e.0).collect();
    let im: Vec<f64> = entries.iter().map(|e| e.1).collect();
    ComplexOp::new(
        RealMatrix::new(entries.len(), 1, re).unwrap(),
        RealMatrix::new(entries.len(), 1, im).unwrap(),
    )
    .unwrap()
}

#[test]
fn real_entried_factors_compose_block_diagonally() {
    // sigma_z and its ilk have zero imaginary part, so the composite is
    // I_2 (x) (A (x) B).
    let got = symp_tensor_op(&kahler_pauli(Axis::Z), &kahler_pauli(Axis::Z)).unwrap();
    let zz = pauli(Axis::Z).ckron(&pauli(Axis::Z));
    let want = RealMatrix::identity(2).kron(zz.re());
    assert_eq!(got.mat().max_abs_diff(&want).unwrap(), 0.0);
    // And it matches realifying the complex tensor product.
    let oracle = realify_op(&zz).unwrap();
    assert_eq!(got.mat().max_abs_diff(oracle.mat()).unwrap(), 0.0);
}

#[test]
fn identity_composes_to_identity() {
    let a = realify_op(&ComplexOp::identity(2)).unwrap();
    let b = realify_op(&ComplexOp::identity(2)).unwrap();
    let got = symp_tensor_op(&a, &b).unwrap();
    assert_eq!(got.mat().max_abs_diff(&RealMatrix::identity(8)).unwrap(), 0.0);
}

#[test]
fn imaginary_factors_need_the_cross_terms() {
    // sigma_y is purely imaginary: its composite with itself is real and
    // block diagonal, but only because the Y (x) Y cross term with the
    // minus sign lands it there. The plain doubled Kronecker product gets
    // the sign of i*i wrong.
    let sy = kahler_pauli(Axis::Y);
    let got = symp_tensor_op(&sy, &sy).unwrap();
    let yy = pauli(Axis::Y).ckron(&pauli(Axis::Y));
    let oracle = realify_op(&yy).unwrap();
    assert_eq!(got.mat().max_abs_diff(oracle.mat()).unwrap(), 0.0);
    // Frozen: I_2 (x) (sigma_y (x) sigma_y) with sigma_y (x) sigma_y real.
    let want = RealMatrix::identity(2).kron(yy.re());
    assert_eq!(got.mat().max_abs_diff(&want).unwrap(), 0.0);
}

#[test]
fn composition_refuses_non_block_inputs() {
    let diag = KahlerOp::new(mat(&[
        &[1.0, 0.0, 0.0, 0.0],
        &[0.0, 2.0, 0.0, 0.0],
        &[0.0, 0.0, 3.0, 0.0],
        &[0.0, 0.0, 0.0, 4.0],
    ]))
    .unwrap();
    let good = kahler_pauli(Axis::X);
    assert!(matches!(symp_tensor_op(&diag, &good), Err(Error::Structure { .. })));
    assert!(matches!(symp_tensor_op(&good, &diag), Err(Error::Structure { .. })));
}

#[test]
fn state_composition_tracks_the_complex_tensor_product() {
    // i|0> (x) i|0> = -|00>: the phases must multiply, not concatenate.
    let i_zero = column(&[(0.0, 1.0), (0.0, 0.0)]);
    let sa = realify_state(&i_zero).unwrap();
    let got = symp_tensor_state(&sa, &sa);
    let minus_00 = column(&[(-1.0, 0.0), (0.0, 0.0), (0.0, 0.0), (0.0, 0.0)]);
    let want = realify_state(&minus_00).unwrap();
    assert_eq!(got.mat().max_abs_diff(want.mat()).unwrap(), 0.0);
}

#[test]
fn random_state_composition_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(51);
    for _ in 0..25 {
        let pa = kahlerq_core::cspace::random_state(2, &mut rng);
        let pb = kahlerq_core::cspace::random_state(3, &mut rng);
        let got = symp_tensor_state(&realify_state(&pa).unwrap(), &realify_state(&pb).unwrap());
        let want = realify_state(&pa.ckron(&pb)).unwrap();
        assert!(got.mat().max_abs_diff(want.mat()).unwrap() < 1e-13);
    }
}

#[test]
fn diagram_commutes_for_fixed_and_random_operators() {
    // Exact on Pauli pairs.
    assert_eq!(diagram_check(&pauli(Axis::Y), &pauli(Axis::Y)).unwrap(), 0.0);
    assert_eq!(diagram_check(&ComplexOp::identity(2), &ComplexOp::identity(3)).unwrap(), 0.0);
    // Tiny on random operators of mixed dimensions.
    let mut rng = ChaCha8Rng::seed_from_u64(52);
    for t in 0..30 {
        let na = 1 + t % 3;
        let nb = 1 + (t / 3) % 3;
        let a = random_op(na, &mut rng);
        let b = random_op(nb, &mut rng);
        assert!(diagram_check(&a, &b).unwrap() < 1e-12);
    }
}

#[test]
fn symplectic_product_is_j_bilinear() {
    let ia = realify_op(&ComplexOp::identity(2)).unwrap();
    let ib = realify_op(&ComplexOp::identity(2)).unwrap();
    assert_eq!(j_bilinearity_check(&ia, &ib).unwrap(), 0.0);
    let mut rng = ChaCha8Rng::seed_from_u64(53);
    for _ in 0..20 {
        let a = realify_op(&random_op(2, &mut rng)).unwrap();
        let b = realify_op(&random_op(3, &mut rng)).unwrap();
        assert!(j_bilinearity_check(&a, &b).unwrap() < 1e-12);
    }
}

#[test]
fn doubled_kronecker_breaks_j_bilinearity_even_on_identities() {
    // (J (x) I) and (I (x) J) disagree entry-by-entry with magnitude
    // exactly 1 — multiplying by i on the left factor is not the same
    // matrix as multiplying by i on the right factor, so the doubled
    // Kronecker product cannot represent scalar multiplication coherently.
    let ia = realify_op(&ComplexOp::identity(2)).unwrap();
    let ib = realify_op(&ComplexOp::identity(2)).unwrap();
    assert_eq!(kron_doubled_j_mismatch(&ia, &ib), 1.0);
    // The same probe through the symplectic product is exactly coherent.
    assert_eq!(j_bilinearity_check(&ia, &ib).unwrap(), 0.0);
}

#[test]
fn doubled_kronecker_doubles_the_dimension() {
    let a = kahler_pauli(Axis::Y);
    let b = kahler_pauli(Axis::X);
    let kron = kron_doubled(&a, &b);
    let symp = symp_tensor_op(&a, &b).unwrap();
    assert_eq!(kron.rows(), 16);
    assert_eq!(symp.mat().rows(), 8);
}

#[test]
fn doubled_kronecker_stays_block_form() {
    // The coarse 2x2 structure of K_A (x) K_B consists of scalar-weighted
    // copies of K_B tiled by the blocks of K_A, so the diagonal blocks
    // still match and the off-diagonal ones are still opposite: the
    // Kronecker product of block-form matrices is block-form. Its defect
    // is not detectable by the block test — it is the doubled dimension
    // and the incoherent J action checked above.
    let mut rng = ChaCha8Rng::seed_from_u64(54);
    let a = realify_op(&random_op(2, &mut rng)).unwrap();
    let b = realify_op(&random_op(2, &mut rng)).unwrap();
    let kron = kron_doubled(&a, &b);
    assert!(is_kahler_block(&kron, 1e-10).unwrap());
    // Holds for purely imaginary factors too.
    let kron_yy = kron_doubled(&kahler_pauli(Axis::Y), &kahler_pauli(Axis::X));
    assert!(is_kahler_block(&kron_yy, 1e-10).unwrap());
}

#[test]
fn divergence_report_for_a_phased_state() {
    // rho = |+i><+i| has a nonzero imaginary part, so the two composition
    // rules genuinely diverge beyond bookkeeping.
    let plus_i = column(&[(std::f64::consts::FRAC_1_SQRT_2, 0.0), (0.0, std::f64::consts::FRAC_1_SQRT_2)]);
    let rho = plus_i.cmul(&plus_i.adjoint()).unwrap();
    assert!(rho.im().max_abs() > 0.4);

    let report = composition_divergence(&rho, &rho).unwrap();
    assert_eq!(report.dim_symplectic, 8);
    assert_eq!(report.dim_kronecker, 16);
    assert!(report.block_form_symplectic);
    // Both composites are block-form — the divergence is dimensional and
    // J-structural, not a visible block defect.
    assert!(report.block_form_kronecker);
    assert!(report.diagram_error < 1e-13);
}

#[test]
fn complexified_composite_equals_complex_tensor_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    let a = random_op(2, &mut rng);
    let b = random_op(2, &mut rng);
    let symp = symp_tensor_op(&realify_op(&a).unwrap(), &realify_op(&b).unwrap()).unwrap();
    let back = complexify_op(&symp);
    assert!(back.max_abs_diff(&a.ckron(&b)).unwrap() < 1e-13);
}
