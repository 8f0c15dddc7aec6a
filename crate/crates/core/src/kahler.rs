//! The Kähler space `(R^{2N}, g, omega, J)` and the maps in and out of it.
//!
//! The dictionary implemented here:
//!
//! * a complex operator `L = X + iY` becomes the real `2N x 2N` block matrix
//!   `[[X, -Y], [Y, X]] = I_2 (x) X + tau (x) Y` (realification);
//! * a complex state `|psi> = |R> + i|I>` becomes the `2N x 2` matrix
//!   `[[R, -I], [I, R]]` — one column for the state, one for `i` times it;
//! * the imaginary unit becomes the complex structure `J = tau (x) I_N`,
//!   with `J^2 = -I` and `J * state = state-of-(i psi)`;
//! * the Hilbert inner product splits into its real part (the Riemannian
//!   metric `g`) and imaginary part (the symplectic form `omega`), both
//!   computed by a `Tc` contraction of the 2x2 overlap block.
//!
//! Realification is a ring homomorphism, and the inverse direction is a
//! single block extraction, so round trips are exact to the last bit —
//! addition and halving of equal values are exact in IEEE arithmetic.

use crate::cspace::{Axis, ComplexOp, pauli};
use crate::error::{Error, Result};
use crate::realmat::{RealMatrix, Shape2};
use crate::TOL_ALGEBRAIC;

/// A real operator on the doubled space, `2N x 2N`.
///
/// The type tracks only the shape. Operators produced by [`realify_op`]
/// additionally satisfy the block form `[[X, -Y], [Y, X]]` — equivalently,
/// they commute with `J` — which is exactly what [`is_kahler_block`] tests
/// and what the composition rules in [`crate::compose`] require.
#[derive(Debug, Clone, PartialEq)]
pub struct KahlerOp {
    mat: RealMatrix,
    n: usize,
}

impl KahlerOp {
    /// Wrap an even-sided square matrix. The half-dimension `N` is inferred.
    pub fn new(mat: RealMatrix) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::dim("KahlerOp::new", format!("matrix is {}x{}", mat.rows(), mat.cols())));
        }
        if mat.rows() % 2 != 0 {
            return Err(Error::dim("KahlerOp::new", format!("side {} is odd, need 2N", mat.rows())));
        }
        let n = mat.rows() / 2;
        Ok(KahlerOp { mat, n })
    }

    /// Half-dimension `N` (the complex dimension it represents).
    pub fn n(&self) -> usize {
        self.n
    }

    /// Full side `2N`.
    pub fn dim(&self) -> usize {
        2 * self.n
    }

    pub fn mat(&self) -> &RealMatrix {
        &self.mat
    }

    pub fn into_mat(self) -> RealMatrix {
        self.mat
    }

    /// Apply to a state by left-multiplying its `2N x 2` matrix. For
    /// block-form operators this is exactly the realification of `L|psi>`,
    /// and the result's column pairing survives; the constructor re-checks
    /// it, so applying a non-block operator that breaks the pairing is
    /// reported rather than silently accepted.
    pub fn apply(&self, s: &KahlerState) -> Result<KahlerState> {
        if self.n != s.n() {
            return Err(Error::dim(
                "KahlerOp::apply",
                format!("operator has N={}, state has N={}", self.n, s.n()),
            ));
        }
        KahlerState::new(self.mat.matmul(s.mat())?)
    }

    pub fn matmul(&self, other: &KahlerOp) -> Result<KahlerOp> {
        if self.n != other.n {
            return Err(Error::dim(
                "KahlerOp::matmul",
                format!("operands have N={} and N={}", self.n, other.n),
            ));
        }
        KahlerOp::new(self.mat.matmul(&other.mat)?)
    }

    pub fn add(&self, other: &KahlerOp) -> Result<KahlerOp> {
        KahlerOp::new(self.mat.add(&other.mat)?)
    }

    pub fn sub(&self, other: &KahlerOp) -> Result<KahlerOp> {
        KahlerOp::new(self.mat.sub(&other.mat)?)
    }

    pub fn scale(&self, k: f64) -> KahlerOp {
        KahlerOp { mat: self.mat.scale(k), n: self.n }
    }

    /// Transpose. On realified operators this is realified adjoint:
    /// `realify(U)^T = realify(U^dagger)`.
    pub fn transpose(&self) -> KahlerOp {
        KahlerOp { mat: self.mat.transpose(), n: self.n }
    }

    /// Does the matrix satisfy the `[[X, -Y], [Y, X]]` pattern?
    pub fn is_block_form(&self, tol: f64) -> bool {
        is_kahler_block(&self.mat, tol).expect("KahlerOp is even-sided by construction")
    }
}

/// A state on the doubled space: a `2N x 2` matrix `[[R, -I], [I, R]]`
/// whose columns encode `|psi>` and `i|psi>`.
#[derive(Debug, Clone, PartialEq)]
pub struct KahlerState {
    mat: RealMatrix,
    n: usize,
}

impl KahlerState {
    /// Wrap a `2N x 2` matrix, checking the column pairing: with column 0
    /// split as `(R; I)`, column 1 must equal `(-I; R)` (relative tolerance
    /// `1e-10`). Matrices with independent columns are rejected — they do
    /// not represent any complex state.
    pub fn new(mat: RealMatrix) -> Result<Self> {
        if mat.cols() != 2 || mat.rows() % 2 != 0 || mat.rows() == 0 {
            return Err(Error::dim(
                "KahlerState::new",
                format!("state must be 2N x 2, got {}x{}", mat.rows(), mat.cols()),
            ));
        }
        let n = mat.rows() / 2;
        let r = mat.block(0, 0, n, 1)?;
        let i = mat.block(n, 0, n, 1)?;
        let mut stacked = i.neg().data().to_vec();
        stacked.extend_from_slice(r.data());
        let expected_col1 = RealMatrix::new(2 * n, 1, stacked)?;
        let col1 = mat.block(0, 1, 2 * n, 1)?;
        if !col1.approx_eq(&expected_col1, TOL_ALGEBRAIC)? {
            return Err(Error::structure(
                "KahlerState::new",
                "column 1 is not (-I; R) for column 0 = (R; I); the matrix does not encode a complex state".to_string(),
            ));
        }
        Ok(KahlerState { mat, n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mat(&self) -> &RealMatrix {
        &self.mat
    }

    /// Top half of column 0: the real part `R` of the encoded state.
    pub fn re_part(&self) -> RealMatrix {
        self.mat.block(0, 0, self.n, 1).expect("shape checked at construction")
    }

    /// Bottom half of column 0: the imaginary part `I` of the encoded state.
    pub fn im_part(&self) -> RealMatrix {
        self.mat.block(self.n, 0, self.n, 1).expect("shape checked at construction")
    }
}

/// The complex structure `J = tau (x) I_N`: the real-matrix stand-in for
/// multiplication by `i`. Satisfies `J^2 = -I` exactly (entries are 0/±1).
pub fn complex_structure(n: usize) -> KahlerOp {
    assert!(n > 0, "complex_structure: dimension must be positive");
    KahlerOp::new(RealMatrix::tau().kron(&RealMatrix::identity(n))).expect("2n x 2n")
}

/// Realification of an operator: `X + iY -> I_2 (x) X + tau (x) Y`,
/// i.e. the block matrix `[[X, -Y], [Y, X]]`. Requires a square input.
pub fn realify_op(l: &ComplexOp) -> Result<KahlerOp> {
    if !l.is_square() {
        return Err(Error::dim("realify_op", format!("operator is {}x{}", l.rows(), l.cols())));
    }
    let x = l.re();
    let y = l.im();
    let mat = RealMatrix::from_blocks_2x2(x, &y.neg(), y, x)?;
    KahlerOp::new(mat)
}

/// Realification of a state: `|R> + i|I>` becomes the `2N x 2` matrix
/// `[[R, -I], [I, R]]`. Requires an `N x 1` column.
pub fn realify_state(psi: &ComplexOp) -> Result<KahlerState> {
    if !psi.is_column() {
        return Err(Error::dim("realify_state", format!("state is {}x{}, need a column", psi.rows(), psi.cols())));
    }
    let r = psi.re();
    let i = psi.im();
    let mat = RealMatrix::from_blocks_2x2(r, &i.neg(), i, r)?;
    KahlerState::new(mat)
}

/// Complexification: extract `X + iY` back out of a `2N x 2N` real matrix.
///
/// With the matrix viewed as a 2x2 grid of `N x N` blocks `A_11 .. A_22`,
/// the result is `re = (A_11 + A_22)/2`, `im = (A_21 - A_12)/2`. That is the
/// evaluated form of the contraction `(Tc[M] + Tc[(-sigma_y (x) I_N) M])/2`
/// (where `-sigma_y (x) I_N = -i*J`), after the complex weights are carried
/// out — the tests verify the two agree.
///
/// On block-form matrices this inverts [`realify_op`] exactly. Any other
/// even-sided square matrix is accepted too, in which case the map is the
/// canonical projection onto the realifiable part: that is deliberate,
/// because "what complex operator does this doubled matrix *try* to be" is
/// precisely the question the divergence diagnostics need to ask.
pub fn complexify_op(k: &KahlerOp) -> ComplexOp {
    let n = k.n();
    let m = k.mat();
    let a11 = m.block(0, 0, n, n).expect("shape checked");
    let a12 = m.block(0, n, n, n).expect("shape checked");
    let a21 = m.block(n, 0, n, n).expect("shape checked");
    let a22 = m.block(n, n, n, n).expect("shape checked");
    let re = a11.add(&a22).expect("same shape").scale(0.5);
    let im = a21.sub(&a12).expect("same shape").scale(0.5);
    ComplexOp::new(re, im).expect("same shape")
}

/// Complexification of a state: read `R` and `I` off column 0. The column
/// pairing is re-verified (a `KahlerState` constructed through the public
/// API already satisfies it).
pub fn complexify_state(s: &KahlerState) -> Result<ComplexOp> {
    // Cheap revalidation so that the structural guarantee does not silently
    // depend on where the value came from.
    let revalidated = KahlerState::new(s.mat().clone())?;
    ComplexOp::new(revalidated.re_part(), revalidated.im_part())
}

/// The 2x2 overlap block `<s2|s1>_K = s2^T * s1`.
///
/// This is the realification of the complex scalar `<psi2|psi1>`: it comes
/// out as `[[Re z, -Im z], [Im z, Re z]]`, which is why the metric and the
/// symplectic form are its two independent components.
pub fn overlap_block(s2: &KahlerState, s1: &KahlerState) -> Result<RealMatrix> {
    if s2.n() != s1.n() {
        return Err(Error::dim("overlap_block", format!("states have N={} and N={}", s2.n(), s1.n())));
    }
    s2.mat().transpose().matmul(s1.mat())
}

/// The Riemannian metric `g(s2, s1) = Tc[<s2|s1>_K] / 2 = Re <psi2|psi1>`.
/// This is the physical inner product of the real formulation: probabilities
/// and expectation values all come from `g`.
pub fn metric(s2: &KahlerState, s1: &KahlerState) -> Result<f64> {
    let block = overlap_block(s2, s1)?;
    let tr = block.tc_contract(Shape2::new(2, 1, 1)?)?;
    Ok(0.5 * tr.at(0, 0))
}

/// The symplectic form `omega(s2, s1) = Tc[-tau * <s2|s1>_K] / 2
/// = Im <psi2|psi1>` — the other half of the Hilbert inner product,
/// obtained by twisting the overlap block with the 2x2 complex structure.
pub fn symplectic_form(s2: &KahlerState, s1: &KahlerState) -> Result<f64> {
    let block = overlap_block(s2, s1)?;
    let twisted = RealMatrix::tau().neg().matmul(&block)?;
    let tr = twisted.tc_contract(Shape2::new(2, 1, 1)?)?;
    Ok(0.5 * tr.at(0, 0))
}

/// The Kähler–Pauli matrices, 4x4 real:
/// `sigma_x^K = I_2 (x) sigma_x`, `sigma_y^K = tau (x) tau`,
/// `sigma_z^K = I_2 (x) sigma_z`.
///
/// They satisfy the Pauli algebra with `J` playing the role of `i`:
/// `sigma_x^K sigma_y^K = J sigma_z^K`, `{sigma_a^K, sigma_b^K} = 2 delta_ab I_4`
/// — real matrix equations, exact on these integer-valued matrices. No pair
/// of real *symmetric* matrices could do this (see the obstruction test in
/// the bell module): `sigma_y^K` is antisymmetric, and that is the escape
/// hatch the doubled dimension buys.
pub fn kahler_pauli(axis: Axis) -> KahlerOp {
    realify_op(&pauli(axis)).expect("Paulis are square")
}

/// Test for the realified block pattern: with the matrix split into a 2x2
/// grid of half-size blocks, `A_11 = A_22` and `A_12 = -A_21` within `tol`
/// (relative, in the sense of [`RealMatrix::approx_eq`]). Equivalently: the
/// matrix commutes with `J`, i.e. it is complex-linear and lies in the image
/// of [`realify_op`].
pub fn is_kahler_block(m: &RealMatrix, tol: f64) -> Result<bool> {
    if !m.is_square() {
        return Err(Error::dim("is_kahler_block", format!("matrix is {}x{}", m.rows(), m.cols())));
    }
    if m.rows() % 2 != 0 {
        return Err(Error::dim("is_kahler_block", format!("side {} is odd, need 2N", m.rows())));
    }
    let n = m.rows() / 2;
    let a11 = m.block(0, 0, n, n)?;
    let a12 = m.block(0, n, n, n)?;
    let a21 = m.block(n, 0, n, n)?;
    let a22 = m.block(n, n, n, n)?;
    Ok(a11.approx_eq(&a22, tol)? && a12.approx_eq(&a21.neg(), tol)?)
}
