//! Dense real matrices and the two operations everything else is built on:
//! the Kronecker product and the block-diagonal tensor contraction `Tc`.
//!
//! Every object in this crate — complex operators, Kähler operators and
//! states, projectors, density matrices — is ultimately one or two
//! [`RealMatrix`] values. There is deliberately no sparse storage and no
//! decomposition machinery; the whole verification story runs on matrices of
//! side at most a few dozen.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// Row-major dense matrix of `f64`.
///
/// Entries are required to be finite; constructors reject NaN and infinity so
/// that downstream comparisons are total and `max_abs_diff` never produces a
/// deceptive result.
#[derive(Debug, Clone, PartialEq)]
pub struct RealMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl RealMatrix {
    /// Build a matrix from row-major data. Fails if the dimensions are zero,
    /// the data length does not match, or any entry is non-finite.
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::dim("RealMatrix::new", format!("dimensions must be positive, got {rows}x{cols}")));
        }
        if data.len() != rows * cols {
            return Err(Error::dim(
                "RealMatrix::new",
                format!("{rows}x{cols} needs {} entries, got {}", rows * cols, data.len()),
            ));
        }
        if let Some((idx, value)) = data.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::validation(
                "RealMatrix::new",
                format!("non-finite entry {value} at ({}, {})", idx / cols, idx % cols),
            ));
        }
        Ok(RealMatrix { rows, cols, data })
    }

    /// Internal constructor for data that is finite by construction.
    fn from_raw(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        debug_assert!(rows > 0 && cols > 0 && data.len() == rows * cols);
        debug_assert!(data.iter().all(|v| v.is_finite()));
        RealMatrix { rows, cols, data }
    }

    /// Build from explicit row slices; rows must all have the same length.
    pub fn from_rows(rows: &[&[f64]]) -> Result<Self> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::dim("RealMatrix::from_rows", "no rows given".to_string()));
        }
        let cols = rows[0].len();
        if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
            return Err(Error::dim(
                "RealMatrix::from_rows",
                format!("row {bad} has length {}, expected {cols}", rows[bad].len()),
            ));
        }
        let data: Vec<f64> = rows.iter().flat_map(|r| r.iter().copied()).collect();
        RealMatrix::new(rows.len(), cols, data)
    }

    /// All-zero matrix. Panics if a dimension is zero (programmer error).
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "zeros: dimensions must be positive");
        RealMatrix::from_raw(rows, cols, vec![0.0; rows * cols])
    }

    /// The n x n identity.
    pub fn identity(n: usize) -> Self {
        assert!(n > 0, "identity: dimension must be positive");
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = 1.0;
        }
        RealMatrix::from_raw(n, n, data)
    }

    /// `tau = [[0, -1], [1, 0]]`, the 2x2 rotation by a quarter turn.
    ///
    /// `tau^2 = -I`, which is the whole point: it is the real stand-in for
    /// the imaginary unit, and `J = tau (x) I_N` below inherits the relation.
    pub fn tau() -> Self {
        RealMatrix::from_raw(2, 2, vec![0.0, -1.0, 1.0, 0.0])
    }

    /// The 2x2 identity, partner constant to [`RealMatrix::tau`].
    pub fn i2() -> Self {
        RealMatrix::identity(2)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Entry at `(i, j)`. Panics on out-of-range indices.
    pub fn at(&self, i: usize, j: usize) -> f64 {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of range for {}x{}", self.rows, self.cols);
        self.data[i * self.cols + j]
    }

    /// Row-major entries.
    pub fn data(&self) -> &[f64] {
        &self.data
    }

    /// The `rows x cols` submatrix with top-left corner at `(row0, col0)`.
    pub fn block(&self, row0: usize, col0: usize, rows: usize, cols: usize) -> Result<Self> {
        if row0 + rows > self.rows || col0 + cols > self.cols {
            return Err(Error::dim(
                "RealMatrix::block",
                format!(
                    "block {rows}x{cols} at ({row0}, {col0}) exceeds {}x{}",
                    self.rows, self.cols
                ),
            ));
        }
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            let start = (row0 + i) * self.cols + col0;
            data.extend_from_slice(&self.data[start..start + cols]);
        }
        Ok(RealMatrix::from_raw(rows, cols, data))
    }

    /// Assemble `[[a, b], [c, d]]` from four conformable blocks.
    pub fn from_blocks_2x2(a: &RealMatrix, b: &RealMatrix, c: &RealMatrix, d: &RealMatrix) -> Result<Self> {
        if a.rows != b.rows || c.rows != d.rows || a.cols != c.cols || b.cols != d.cols {
            return Err(Error::dim(
                "RealMatrix::from_blocks_2x2",
                format!(
                    "blocks {}x{}, {}x{}, {}x{}, {}x{} do not tile a matrix",
                    a.rows, a.cols, b.rows, b.cols, c.rows, c.cols, d.rows, d.cols
                ),
            ));
        }
        let rows = a.rows + c.rows;
        let cols = a.cols + b.cols;
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..a.rows {
            data.extend_from_slice(&a.data[i * a.cols..(i + 1) * a.cols]);
            data.extend_from_slice(&b.data[i * b.cols..(i + 1) * b.cols]);
        }
        for i in 0..c.rows {
            data.extend_from_slice(&c.data[i * c.cols..(i + 1) * c.cols]);
            data.extend_from_slice(&d.data[i * d.cols..(i + 1) * d.cols]);
        }
        Ok(RealMatrix::from_raw(rows, cols, data))
    }

    pub fn add(&self, other: &RealMatrix) -> Result<Self> {
        self.zip_with(other, "RealMatrix::add", |x, y| x + y)
    }

    pub fn sub(&self, other: &RealMatrix) -> Result<Self> {
        self.zip_with(other, "RealMatrix::sub", |x, y| x - y)
    }

    fn zip_with(&self, other: &RealMatrix, op: &'static str, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::dim(
                op,
                format!("{}x{} vs {}x{}", self.rows, self.cols, other.rows, other.cols),
            ));
        }
        let data = self.data.iter().zip(&other.data).map(|(&x, &y)| f(x, y)).collect();
        Ok(RealMatrix::from_raw(self.rows, self.cols, data))
    }

    pub fn scale(&self, k: f64) -> Self {
        RealMatrix::from_raw(self.rows, self.cols, self.data.iter().map(|&x| k * x).collect())
    }

    pub fn neg(&self) -> Self {
        self.scale(-1.0)
    }

    /// Standard matrix product.
    pub fn matmul(&self, rhs: &RealMatrix) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::dim(
                "RealMatrix::matmul",
                format!("{}x{} times {}x{}", self.rows, self.cols, rhs.rows, rhs.cols),
            ));
        }
        let mut data = vec![0.0; self.rows * rhs.cols];
        for i in 0..self.rows {
            let out_row = &mut data[i * rhs.cols..(i + 1) * rhs.cols];
            for k in 0..self.cols {
                let a_ik = self.data[i * self.cols + k];
                if a_ik == 0.0 {
                    continue;
                }
                let b_row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                for (out, &b) in out_row.iter_mut().zip(b_row) {
                    *out += a_ik * b;
                }
            }
        }
        Ok(RealMatrix::from_raw(self.rows, rhs.cols, data))
    }

    pub fn transpose(&self) -> Self {
        let mut data = vec![0.0; self.rows * self.cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        RealMatrix::from_raw(self.cols, self.rows, data)
    }

    /// Sum of diagonal entries; defined for square matrices only.
    pub fn trace(&self) -> Result<f64> {
        if !self.is_square() {
            return Err(Error::dim("RealMatrix::trace", format!("matrix is {}x{}", self.rows, self.cols)));
        }
        Ok((0..self.rows).map(|i| self.data[i * self.cols + i]).sum())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |m, &x| m.max(x.abs()))
    }

    /// Largest entrywise difference against another matrix of the same shape.
    pub fn max_abs_diff(&self, other: &RealMatrix) -> Result<f64> {
        if self.shape() != other.shape() {
            return Err(Error::dim(
                "RealMatrix::max_abs_diff",
                format!("{}x{} vs {}x{}", self.rows, self.cols, other.rows, other.cols),
            ));
        }
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .fold(0.0_f64, |m, (&x, &y)| m.max((x - y).abs())))
    }

    /// Relative comparison: true iff the largest entrywise difference is at
    /// most `tol * max(1, ||a||_F, ||b||_F)`.
    pub fn approx_eq(&self, other: &RealMatrix, tol: f64) -> Result<bool> {
        let diff = self.max_abs_diff(other)?;
        let scale = 1.0_f64.max(self.frobenius_norm()).max(other.frobenius_norm());
        Ok(diff <= tol * scale)
    }

    /// Kronecker product: entry `[i*p + k, j*q + l] = a[i,j] * b[k,l]` for
    /// `b` of shape `p x q`. The left factor is the coarse block index, so
    /// `a (x) b` is the block matrix whose `(i, j)` block is `a[i,j] * b`.
    pub fn kron(&self, other: &RealMatrix) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut data = vec![0.0; rows * cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a_ij = self.data[i * self.cols + j];
                if a_ij == 0.0 {
                    continue;
                }
                for k in 0..other.rows {
                    let out_start = (i * other.rows + k) * cols + j * other.cols;
                    let b_row = &other.data[k * other.cols..(k + 1) * other.cols];
                    for (off, &b) in b_row.iter().enumerate() {
                        data[out_start + off] = a_ij * b;
                    }
                }
            }
        }
        RealMatrix::from_raw(rows, cols, data)
    }

    /// Tensor contraction over the first (coarse) Kronecker factor: with the
    /// matrix viewed through `shape` as an `n x n` grid of `m x k` blocks,
    /// returns the sum of the `n` diagonal blocks.
    ///
    /// For `A (x) C` with `A` square of side `n` this equals `trace(A) * C`,
    /// which is why it inverts the realification map: the doubling factor
    /// sits in the coarse index and is traced out. Blocks may be rectangular
    /// — states are `2N x 2` matrices contracted with `N x 1` blocks.
    pub fn tc_contract(&self, shape: Shape2) -> Result<Self> {
        if self.rows != shape.matrix_rows() || self.cols != shape.matrix_cols() {
            return Err(Error::dim(
                "RealMatrix::tc_contract",
                format!(
                    "matrix is {}x{}, shape {} blocks of {}x{} needs {}x{}",
                    self.rows,
                    self.cols,
                    shape.block_count(),
                    shape.inner_rows(),
                    shape.inner_cols(),
                    shape.matrix_rows(),
                    shape.matrix_cols()
                ),
            ));
        }
        let (n, m, k) = (shape.block_count(), shape.inner_rows(), shape.inner_cols());
        let mut out = RealMatrix::zeros(m, k);
        for b in 0..n {
            let diag = self.block(b * m, b * k, m, k)?;
            out = out.add(&diag)?;
        }
        Ok(out)
    }
}

/// Block view of a square-grid matrix: `block_count` diagonal positions of
/// `inner_rows x inner_cols` blocks, describing a matrix of shape
/// `(n*m) x (n*k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Shape2 {
    block_count: usize,
    inner_rows: usize,
    inner_cols: usize,
}

impl Shape2 {
    pub fn new(block_count: usize, inner_rows: usize, inner_cols: usize) -> Result<Self> {
        if block_count == 0 || inner_rows == 0 || inner_cols == 0 {
            return Err(Error::dim(
                "Shape2::new",
                format!("all fields must be positive, got ({block_count}, {inner_rows}, {inner_cols})"),
            ));
        }
        Ok(Shape2 { block_count, inner_rows, inner_cols })
    }

    pub fn block_count(&self) -> usize {
        self.block_count
    }

    pub fn inner_rows(&self) -> usize {
        self.inner_rows
    }

    pub fn inner_cols(&self) -> usize {
        self.inner_cols
    }

    pub fn matrix_rows(&self) -> usize {
        self.block_count * self.inner_rows
    }

    pub fn matrix_cols(&self) -> usize {
        self.block_count * self.inner_cols
    }
}

/// Fill a matrix with i.i.d. standard-normal entries from the given
/// generator. Gaussian rather than uniform: the distribution is rotation
/// invariant, so random test operators do not favor the coordinate axes.
pub fn random_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> RealMatrix {
    assert!(rows > 0 && cols > 0, "random_matrix: dimensions must be positive");
    let data = (0..rows * cols).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
    RealMatrix::from_raw(rows, cols, data)
}

/// Deterministic pair `(re, im)` of n x n standard-normal matrices for the
/// given seed — the raw material for random complex test operators.
pub fn random_complex_op(n: usize, seed: u64) -> (RealMatrix, RealMatrix) {
    assert!(n > 0, "random_complex_op: dimension must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let re = random_matrix(n, n, &mut rng);
    let im = random_matrix(n, n, &mut rng);
    (re, im)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors_reject_bad_input() {
        assert!(RealMatrix::new(0, 2, vec![]).is_err());
        assert!(RealMatrix::new(2, 2, vec![1.0; 3]).is_err());
        assert!(RealMatrix::new(1, 2, vec![1.0, f64::NAN]).is_err());
        assert!(RealMatrix::new(1, 2, vec![1.0, f64::INFINITY]).is_err());
        assert!(RealMatrix::from_rows(&[&[1.0, 2.0], &[3.0]]).is_err());
    }

    #[test]
    fn block_and_assembly_round_trip() {
        let m = RealMatrix::from_rows(&[
            &[1.0, 2.0, 3.0, 4.0],
            &[5.0, 6.0, 7.0, 8.0],
            &[9.0, 10.0, 11.0, 12.0],
            &[13.0, 14.0, 15.0, 16.0],
        ])
        .unwrap();
        let a = m.block(0, 0, 2, 2).unwrap();
        let b = m.block(0, 2, 2, 2).unwrap();
        let c = m.block(2, 0, 2, 2).unwrap();
        let d = m.block(2, 2, 2, 2).unwrap();
        assert_eq!(RealMatrix::from_blocks_2x2(&a, &b, &c, &d).unwrap(), m);
        assert!(m.block(3, 3, 2, 2).is_err());
    }

    #[test]
    fn tau_squares_to_minus_identity() {
        let tau = RealMatrix::tau();
        let m = tau.matmul(&tau).unwrap();
        assert_eq!(m, RealMatrix::identity(2).neg());
    }
}
