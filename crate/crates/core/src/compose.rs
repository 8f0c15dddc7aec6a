//! Composition rules on doubled spaces — the symplectic tensor product that
//! matches complex quantum mechanics, the plain Kronecker product of doubled
//! matrices that does not, and diagnostics quantifying how they diverge.
//!
//! For factors of complex dimensions `m` and `n`:
//!
//! * [`symp_tensor_op`] lands in `2mn` real dimensions — the realification
//!   of the `mn`-dimensional complex composite, and the unique rule that
//!   makes realification commute with composing systems;
//! * [`kron_doubled`] lands in `4mn` real dimensions — twice too many. The
//!   composite carries states that no complex state corresponds to, and the
//!   two factor-local complex structures `J_A (x) I` and `I (x) J_B` act
//!   differently on it, so multiplication by `i` is not even well defined.
//!
//! The divergence is structural (wrong space, broken `J`-bilinearity), not a
//! matter of two numbers differing by a norm — which is exactly what
//! [`CompositionReport`] records.

use crate::cspace::ComplexOp;
use crate::error::{Error, Result};
use crate::kahler::{complex_structure, complexify_op, is_kahler_block, realify_op, KahlerOp, KahlerState};
use crate::realmat::RealMatrix;
use crate::TOL_ALGEBRAIC;

/// Outcome of a composition-divergence diagnosis; see
/// [`composition_divergence`].
#[derive(Debug, Clone, PartialEq)]
pub struct CompositionReport {
    /// Side of the symplectic composite: `2mn`.
    pub dim_symplectic: usize,
    /// Side of the Kronecker-doubled composite: `4mn`, always exactly twice
    /// `dim_symplectic`.
    pub dim_kronecker: usize,
    /// Whether the symplectic composite satisfies the Kähler block pattern
    /// (it always does, by construction).
    pub block_form_symplectic: bool,
    /// Whether the Kronecker-doubled composite satisfies the block pattern
    /// *as a matrix on its own 4mn-dimensional space*. Note that it does:
    /// the Kronecker product of two block-form factors is again block-form
    /// with respect to the coarse 2x2 split. Its defect is not the block
    /// pattern but the dimension count and the ambiguous action of the
    /// factor complex structures.
    pub block_form_kronecker: bool,
    /// Largest deviation in the two-paths commutativity check for the
    /// symplectic composite (realify-then-compose vs compose-then-realify).
    pub diagram_error: f64,
}

fn require_block_form(op: &'static str, k: &KahlerOp) -> Result<(RealMatrix, RealMatrix)> {
    if !is_kahler_block(k.mat(), TOL_ALGEBRAIC)? {
        return Err(Error::structure(
            op,
            format!(
                "input {}x{} is not in Kähler block form [[X, -Y], [Y, X]]; \
                 only realified operators can be composed symplectically",
                k.dim(),
                k.dim()
            ),
        ));
    }
    let n = k.n();
    let x = k.mat().block(0, 0, n, n)?;
    let y = k.mat().block(n, 0, n, n)?;
    Ok((x, y))
}

/// Symplectic tensor product of operators:
///
/// ```text
/// A (x)_K B = I_2 (x) (X_A (x) X_B - Y_A (x) Y_B)
///           + tau (x) (X_A (x) Y_B + Y_A (x) X_B)
/// ```
///
/// — the block rule transcribing complex bilinearity,
/// `(X_A + iY_A)(x)(X_B + iY_B)`, with `tau` carrying the `i`. Output side is
/// `2 * N_A * N_B`: composing doubled spaces does **not** double again.
///
/// Inputs must be in Kähler block form (checked at relative tolerance
/// `1e-10`); anything else is refused with a structure error, because the
/// `(X, Y)` split the formula needs does not exist for such matrices, and
/// silently projecting would paper over the very mismatch this module is
/// meant to expose.
pub fn symp_tensor_op(a: &KahlerOp, b: &KahlerOp) -> Result<KahlerOp> {
    let (xa, ya) = require_block_form("symp_tensor_op", a)?;
    let (xb, yb) = require_block_form("symp_tensor_op", b)?;
    let p = xa.kron(&xb).sub(&ya.kron(&yb))?;
    let q = xa.kron(&yb).add(&ya.kron(&xb))?;
    KahlerOp::new(RealMatrix::from_blocks_2x2(&p, &q.neg(), &q, &p)?)
}

/// Symplectic tensor product of states: the same `(R, I)` block rule with
/// rectangular (column) factors,
/// `R_AB = R_A (x) R_B - I_A (x) I_B`, `I_AB = R_A (x) I_B + I_A (x) R_B`.
///
/// Equals the realification of the complex product state
/// `psi_A (x)_C psi_B`; the property suites check that equality through the
/// independent complex path.
pub fn symp_tensor_state(a: &KahlerState, b: &KahlerState) -> KahlerState {
    let (ra, ia) = (a.re_part(), a.im_part());
    let (rb, ib) = (b.re_part(), b.im_part());
    let r = ra.kron(&rb).sub(&ia.kron(&ib)).expect("kron shapes agree");
    let i = ra.kron(&ib).add(&ia.kron(&rb)).expect("kron shapes agree");
    let mat = RealMatrix::from_blocks_2x2(&r, &i.neg(), &i, &r).expect("columns conform");
    KahlerState::new(mat).expect("construction preserves the column pairing exactly")
}

/// Plain Kronecker product of the doubled matrices: a `4 N_A N_B` sided real
/// matrix, deliberately returned as a bare [`RealMatrix`] — it is *not* a
/// Kähler operator for the composite system (wrong dimension: the composite
/// Kähler space has side `2 N_A N_B`).
pub fn kron_doubled(a: &KahlerOp, b: &KahlerOp) -> RealMatrix {
    a.mat().kron(b.mat())
}

/// Two-independent-paths commutativity check for a pair of complex
/// operators:
///
/// * realify both factors, compose with [`symp_tensor_op`] (pure block
///   arithmetic, no complex multiplication anywhere), versus the
///   realification of the complex Kronecker product;
/// * complexify the symplectic composite, versus the complex Kronecker
///   product of the complexifications.
///
/// Returns the larger of the two deviations. Both directions are computed
/// from first principles on their own side, so agreement is evidence, not
/// tautology.
pub fn diagram_check(la: &ComplexOp, lb: &ComplexOp) -> Result<f64> {
    let ka = realify_op(la)?;
    let kb = realify_op(lb)?;
    let composed = symp_tensor_op(&ka, &kb)?;

    // Complex path down: compose first, realify after.
    let realified = realify_op(&la.ckron(lb))?;
    let d_real = realified.mat().max_abs_diff(composed.mat())?;

    // Complex path up: complexify the symplectic composite.
    let ga = complexify_op(&ka);
    let gb = complexify_op(&kb);
    let d_complex = complexify_op(&composed).max_abs_diff(&ga.ckron(&gb))?;

    Ok(d_real.max(d_complex))
}

/// How far the symplectic product is from being `J`-bilinear: the maximum
/// pairwise deviation among
///
/// ```text
/// (J_A a) (x)_K b  =  a (x)_K (J_B b)  =  J_AB (a (x)_K b)
/// ```
///
/// where `J_AB` is the composite-space complex structure
/// `complex_structure(N_A * N_B)`. For block-form inputs all three agree to
/// rounding — "multiply by i on either factor, or on the composite" is one
/// and the same operation, as it must be for a genuine tensor product of
/// complex-linear spaces.
pub fn j_bilinearity_check(a: &KahlerOp, b: &KahlerOp) -> Result<f64> {
    let ja = complex_structure(a.n());
    let jb = complex_structure(b.n());
    let jab = complex_structure(a.n() * b.n());
    let t1 = symp_tensor_op(&ja.matmul(a)?, b)?;
    let t2 = symp_tensor_op(a, &jb.matmul(b)?)?;
    let t3 = jab.matmul(&symp_tensor_op(a, b)?)?;
    let d12 = t1.mat().max_abs_diff(t2.mat())?;
    let d23 = t2.mat().max_abs_diff(t3.mat())?;
    let d13 = t1.mat().max_abs_diff(t3.mat())?;
    Ok(d12.max(d23).max(d13))
}

/// The Kronecker-doubled analogue of the `J`-bilinearity identity — and its
/// failure. Returns the largest entrywise difference between
/// `(J_A (x) I) * (a (x) b)` and `(I (x) J_B) * (a (x) b)`.
///
/// Already for `a = b = I` the two sides are `J_A (x) I` versus
/// `I (x) J_B`, distinct matrices (difference of magnitude 1): on the
/// `4 N_A N_B`-dimensional composite there is no single consistent
/// "multiply by i", which is the structural reason that space cannot host
/// the composite of two complex systems.
pub fn kron_doubled_j_mismatch(a: &KahlerOp, b: &KahlerOp) -> f64 {
    let composite = kron_doubled(a, b);
    let ja = complex_structure(a.n());
    let jb = complex_structure(b.n());
    let lhs = ja
        .mat()
        .kron(&RealMatrix::identity(2 * b.n()))
        .matmul(&composite)
        .expect("conformable by construction");
    let rhs = RealMatrix::identity(2 * a.n())
        .kron(jb.mat())
        .matmul(&composite)
        .expect("conformable by construction");
    lhs.max_abs_diff(&rhs).expect("same shape")
}

/// Compose two complex operators both ways and report how the results
/// relate: dimensions (`2mn` vs `4mn`), block-form flags for both
/// composites, and the commutative-diagram error of the symplectic path.
///
/// The point the report documents: the two composites live in *different*
/// spaces. The Kronecker-doubled object is not wrong by some distance — it
/// is an element of a space twice the size, where the factor complex
/// structures disagree (see [`kron_doubled_j_mismatch`]), while the
/// symplectic object is exactly the realified complex composite.
pub fn composition_divergence(rho_a: &ComplexOp, rho_b: &ComplexOp) -> Result<CompositionReport> {
    let ka = realify_op(rho_a)?;
    let kb = realify_op(rho_b)?;
    let symp = symp_tensor_op(&ka, &kb)?;
    let kron = kron_doubled(&ka, &kb);
    let report = CompositionReport {
        dim_symplectic: symp.dim(),
        dim_kronecker: kron.rows(),
        block_form_symplectic: is_kahler_block(symp.mat(), TOL_ALGEBRAIC)?,
        block_form_kronecker: is_kahler_block(&kron, TOL_ALGEBRAIC)?,
        diagram_error: diagram_check(rho_a, rho_b)?,
    };
    debug_assert_eq!(report.dim_kronecker, 2 * report.dim_symplectic);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kahler::realify_state;

    #[test]
    fn symp_tensor_refuses_non_block_input() {
        let not_block = KahlerOp::new(RealMatrix::from_rows(&[
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 2.0, 0.0, 0.0],
            &[0.0, 0.0, 3.0, 0.0],
            &[0.0, 0.0, 0.0, 4.0],
        ])
        .unwrap())
        .unwrap();
        let id = realify_op(&ComplexOp::identity(2)).unwrap();
        assert!(matches!(symp_tensor_op(&not_block, &id), Err(Error::Structure { .. })));
        assert!(matches!(symp_tensor_op(&id, &not_block), Err(Error::Structure { .. })));
    }

    #[test]
    fn state_product_of_real_basis_states() {
        use crate::cspace::ComplexOp;
        let zero2 = ComplexOp::from_real(RealMatrix::from_rows(&[&[1.0], &[0.0]]).unwrap());
        let k = realify_state(&zero2).unwrap();
        let product = symp_tensor_state(&k, &k);
        let expected = realify_state(&zero2.ckron(&zero2)).unwrap();
        assert_eq!(product.mat(), expected.mat());
    }
}
