//! Standard complex-matrix quantum mechanics, emulated with pairs of real
//! matrices.
//!
//! This module is the oracle side of every test in the crate: a complex
//! operator `L = X + iY` is stored as the pair `(X, Y)`, complex column
//! vectors the same way, and all complex arithmetic is spelled out in real
//! operations. No native complex number type appears anywhere, which keeps
//! the "purely real arithmetic" property of the Kähler side auditable — the
//! two formulations differ in how they *organize* real matrices, not in what
//! numbers they hold.

use rand::Rng;

use crate::error::{Error, Result};
use crate::realmat::{random_matrix, RealMatrix};

/// A complex matrix `re + i*im`, stored as two equal-shape real matrices.
/// Column-shaped instances double as state vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexOp {
    re: RealMatrix,
    im: RealMatrix,
}

impl ComplexOp {
    pub fn new(re: RealMatrix, im: RealMatrix) -> Result<Self> {
        if re.shape() != im.shape() {
            return Err(Error::dim(
                "ComplexOp::new",
                format!(
                    "re is {}x{}, im is {}x{}",
                    re.rows(),
                    re.cols(),
                    im.rows(),
                    im.cols()
                ),
            ));
        }
        Ok(ComplexOp { re, im })
    }

    /// A real matrix viewed as complex (zero imaginary part).
    pub fn from_real(re: RealMatrix) -> Self {
        let im = RealMatrix::zeros(re.rows(), re.cols());
        ComplexOp { re, im }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexOp { re: RealMatrix::zeros(rows, cols), im: RealMatrix::zeros(rows, cols) }
    }

    pub fn identity(n: usize) -> Self {
        ComplexOp::from_real(RealMatrix::identity(n))
    }

    pub fn re(&self) -> &RealMatrix {
        &self.re
    }

    pub fn im(&self) -> &RealMatrix {
        &self.im
    }

    pub fn rows(&self) -> usize {
        self.re.rows()
    }

    pub fn cols(&self) -> usize {
        self.re.cols()
    }

    pub fn shape(&self) -> (usize, usize) {
        self.re.shape()
    }

    pub fn is_square(&self) -> bool {
        self.re.is_square()
    }

    pub fn is_column(&self) -> bool {
        self.re.cols() == 1
    }

    pub fn add(&self, other: &ComplexOp) -> Result<Self> {
        Ok(ComplexOp { re: self.re.add(&other.re)?, im: self.im.add(&other.im)? })
    }

    pub fn sub(&self, other: &ComplexOp) -> Result<Self> {
        Ok(ComplexOp { re: self.re.sub(&other.re)?, im: self.im.sub(&other.im)? })
    }

    /// Scale by a real factor.
    pub fn scale(&self, k: f64) -> Self {
        ComplexOp { re: self.re.scale(k), im: self.im.scale(k) }
    }

    pub fn neg(&self) -> Self {
        self.scale(-1.0)
    }

    /// Complex matrix product:
    /// `(X_A + iY_A)(X_B + iY_B) = (X_A X_B - Y_A Y_B) + i(X_A Y_B + Y_A X_B)`.
    pub fn cmul(&self, rhs: &ComplexOp) -> Result<Self> {
        let re = self.re.matmul(&rhs.re)?.sub(&self.im.matmul(&rhs.im)?)?;
        let im = self.re.matmul(&rhs.im)?.add(&self.im.matmul(&rhs.re)?)?;
        Ok(ComplexOp { re, im })
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        ComplexOp { re: self.re.transpose(), im: self.im.transpose().neg() }
    }

    /// Complex Kronecker product, expanded into four real Kronecker terms:
    /// `re = X_A (x) X_B - Y_A (x) Y_B`, `im = X_A (x) Y_B + Y_A (x) X_B`.
    pub fn ckron(&self, rhs: &ComplexOp) -> Self {
        let re = self.re.kron(&rhs.re).sub(&self.im.kron(&rhs.im)).expect("kron shapes agree");
        let im = self.re.kron(&rhs.im).add(&self.im.kron(&rhs.re)).expect("kron shapes agree");
        ComplexOp { re, im }
    }

    /// Complex trace.
    pub fn trace(&self) -> Result<ComplexScalar> {
        Ok(ComplexScalar { re: self.re.trace()?, im: self.im.trace()? })
    }

    pub fn frobenius_norm(&self) -> f64 {
        let r = self.re.frobenius_norm();
        let i = self.im.frobenius_norm();
        (r * r + i * i).sqrt()
    }

    /// Largest entrywise difference over both real and imaginary parts.
    pub fn max_abs_diff(&self, other: &ComplexOp) -> Result<f64> {
        Ok(self.re.max_abs_diff(&other.re)?.max(self.im.max_abs_diff(&other.im)?))
    }

    /// Relative comparison in the style of [`RealMatrix::approx_eq`], with
    /// the Frobenius norm taken over both parts.
    pub fn approx_eq(&self, other: &ComplexOp, tol: f64) -> Result<bool> {
        let diff = self.max_abs_diff(other)?;
        let scale = 1.0_f64.max(self.frobenius_norm()).max(other.frobenius_norm());
        Ok(diff <= tol * scale)
    }
}

/// A complex number that came out of an inner product or trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexScalar {
    pub re: f64,
    pub im: f64,
}

impl ComplexScalar {
    pub fn abs(&self) -> f64 {
        self.re.hypot(self.im)
    }
}

/// Hilbert inner product of two complex columns, conjugate-linear in the
/// first argument:
/// `<a|b> = (<R_a|R_b> + <I_a|I_b>) + i(<R_a|I_b> - <I_a|R_b>)`.
pub fn inner(a: &ComplexOp, b: &ComplexOp) -> Result<ComplexScalar> {
    if !a.is_column() || !b.is_column() || a.rows() != b.rows() {
        return Err(Error::dim(
            "inner",
            format!("expected equal-length columns, got {}x{} and {}x{}", a.rows(), a.cols(), b.rows(), b.cols()),
        ));
    }
    let dot = |x: &RealMatrix, y: &RealMatrix| -> f64 {
        x.data().iter().zip(y.data()).map(|(&p, &q)| p * q).sum()
    };
    Ok(ComplexScalar {
        re: dot(a.re(), b.re()) + dot(a.im(), b.im()),
        im: dot(a.re(), b.im()) - dot(a.im(), b.re()),
    })
}

/// `<psi| op |psi>` for a column state and a square operator.
pub fn expectation(state: &ComplexOp, op: &ComplexOp) -> Result<ComplexScalar> {
    inner(state, &op.cmul(state)?)
}

/// The three Pauli axes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];
}

/// The 2x2 Pauli matrices. `sigma_y = i*tau`, so it is stored with zero real
/// part and imaginary part `tau` — the only Pauli that picks up an imaginary
/// component, and therefore the interesting one for everything here.
pub fn pauli(axis: Axis) -> ComplexOp {
    match axis {
        Axis::X => ComplexOp::from_real(RealMatrix::from_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap()),
        Axis::Y => ComplexOp::new(RealMatrix::zeros(2, 2), RealMatrix::tau()).unwrap(),
        Axis::Z => ComplexOp::from_real(RealMatrix::from_rows(&[&[1.0, 0.0], &[0.0, -1.0]]).unwrap()),
    }
}

/// One of the four Bell-measurement outcomes, a pair of bits `(b1, b2)`.
///
/// The bits are the dense-coding labels: `b1` is the phase bit and `b2` the
/// parity bit, so the outcome `(b1, b2)` names the Bell state
/// `(Z^b1 X^b2 (x) I) |phi+>` with `|phi+> = (|00> + |11>)/sqrt(2)`. This is
/// the unique labelling under which the entanglement-swapping functional
/// below reaches its maximum for every outcome; see `bell_state`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BellOutcome {
    B00,
    B01,
    B10,
    B11,
}

impl BellOutcome {
    pub const ALL: [BellOutcome; 4] = [BellOutcome::B00, BellOutcome::B01, BellOutcome::B10, BellOutcome::B11];

    /// The bit pair `(b1, b2)`.
    pub fn bits(self) -> (u8, u8) {
        match self {
            BellOutcome::B00 => (0, 0),
            BellOutcome::B01 => (0, 1),
            BellOutcome::B10 => (1, 0),
            BellOutcome::B11 => (1, 1),
        }
    }

    /// Index `b1*2 + b2` in `0..4`.
    pub fn index(self) -> usize {
        let (b1, b2) = self.bits();
        (b1 * 2 + b2) as usize
    }

    pub fn from_bits(b1: u8, b2: u8) -> Result<Self> {
        match (b1, b2) {
            (0, 0) => Ok(BellOutcome::B00),
            (0, 1) => Ok(BellOutcome::B01),
            (1, 0) => Ok(BellOutcome::B10),
            (1, 1) => Ok(BellOutcome::B11),
            _ => Err(Error::validation("BellOutcome::from_bits", format!("bits must be 0 or 1, got ({b1}, {b2})"))),
        }
    }
}

impl std::str::FromStr for BellOutcome {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "00" => Ok(BellOutcome::B00),
            "01" => Ok(BellOutcome::B01),
            "10" => Ok(BellOutcome::B10),
            "11" => Ok(BellOutcome::B11),
            other => Err(Error::validation("BellOutcome::from_str", format!("expected 00, 01, 10 or 11, got {other:?}"))),
        }
    }
}

impl std::fmt::Display for BellOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let (b1, b2) = self.bits();
        write!(f, "{b1}{b2}")
    }
}

/// The Bell state labelled by `b`, as a normalized 4-component column:
///
/// * `00 -> (|00> + |11>)/sqrt(2)`  (phi+)
/// * `01 -> (|01> + |10>)/sqrt(2)`  (psi+)
/// * `10 -> (|00> - |11>)/sqrt(2)`  (phi-)
/// * `11 -> (|01> - |10>)/sqrt(2)`  (psi-)
///
/// i.e. `b2` flips the parity and `b1` flips the relative phase. The four
/// states have Pauli correlation signatures `(c_z, c_x, c_y)` equal to
/// `(+,+,-)`, `(-,+,+)`, `(+,-,+)`, `(-,-,-)` respectively, and the signed
/// operator built by `bell::chsh3_operator` is tuned so that outcome `b`
/// picks exactly the signature of `bell_state(b)` — that correspondence is
/// what the oracle tests pin down.
pub fn bell_state(b: BellOutcome) -> ComplexOp {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let re = match b {
        BellOutcome::B00 => vec![s, 0.0, 0.0, s],
        BellOutcome::B01 => vec![0.0, s, s, 0.0],
        BellOutcome::B10 => vec![s, 0.0, 0.0, -s],
        BellOutcome::B11 => vec![0.0, s, -s, 0.0],
    };
    ComplexOp::from_real(RealMatrix::new(4, 1, re).unwrap())
}

/// Random complex column of unit Hilbert norm.
pub fn random_state<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexOp {
    loop {
        let re = random_matrix(n, 1, rng);
        let im = random_matrix(n, 1, rng);
        let psi = ComplexOp::new(re, im).expect("equal shapes");
        let norm = psi.frobenius_norm();
        if norm > 1e-6 {
            return psi.scale(1.0 / norm);
        }
        // Astronomically unlikely with 2n Gaussian coordinates; redraw.
    }
}

/// Random unitary: a standard-normal complex matrix pushed through modified
/// Gram–Schmidt (run twice for numerical insurance). Columns end up
/// orthonormal under the Hilbert inner product, i.e. `U^dagger U = I`.
pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexOp {
    let re = random_matrix(n, n, rng);
    let im = random_matrix(n, n, rng);

    // Columns as (re, im) coordinate pairs.
    let mut cols: Vec<Vec<(f64, f64)>> = (0..n)
        .map(|j| (0..n).map(|i| (re.at(i, j), im.at(i, j))).collect())
        .collect();

    let dot = |a: &[(f64, f64)], b: &[(f64, f64)]| -> (f64, f64) {
        // <a|b>, conjugating a.
        a.iter().zip(b).fold((0.0, 0.0), |(re_acc, im_acc), (&(ar, ai), &(br, bi))| {
            (re_acc + ar * br + ai * bi, im_acc + ar * bi - ai * br)
        })
    };

    for j in 0..n {
        for _pass in 0..2 {
            for i in 0..j {
                let (cr, ci) = dot(&cols[i], &cols[j]);
                for k in 0..n {
                    let (qr, qi) = cols[i][k];
                    // col_j[k] -= (cr + i*ci) * (qr + i*qi)
                    cols[j][k].0 -= cr * qr - ci * qi;
                    cols[j][k].1 -= cr * qi + ci * qr;
                }
            }
        }
        let norm = cols[j].iter().map(|&(r, i)| r * r + i * i).sum::<f64>().sqrt();
        assert!(norm > 1e-8, "random matrix was numerically singular");
        for k in 0..n {
            cols[j][k].0 /= norm;
            cols[j][k].1 /= norm;
        }
    }

    let mut out_re = vec![0.0; n * n];
    let mut out_im = vec![0.0; n * n];
    for j in 0..n {
        for i in 0..n {
            out_re[i * n + j] = cols[j][i].0;
            out_im[i * n + j] = cols[j][i].1;
        }
    }
    ComplexOp::new(
        RealMatrix::new(n, n, out_re).expect("finite"),
        RealMatrix::new(n, n, out_im).expect("finite"),
    )
    .expect("equal shapes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_outcome_bits_and_strings() {
        for b in BellOutcome::ALL {
            let (b1, b2) = b.bits();
            assert_eq!(BellOutcome::from_bits(b1, b2).unwrap(), b);
            assert_eq!(b.to_string().parse::<BellOutcome>().unwrap(), b);
        }
        assert!("7".parse::<BellOutcome>().is_err());
        assert!(BellOutcome::from_bits(2, 0).is_err());
    }

    #[test]
    fn pauli_y_is_i_tau() {
        let y = pauli(Axis::Y);
        assert_eq!(y.re(), &RealMatrix::zeros(2, 2));
        assert_eq!(y.im(), &RealMatrix::tau());
    }
}
