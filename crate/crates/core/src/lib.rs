//! Quantum mechanics over real numbers, numerically verified.
//!
//! Complex quantum theory can be rewritten without a single complex number:
//! a complex operator `L = X + iY` becomes the real block matrix
//! `[[X, -Y], [Y, X]]`, states become `2N x 2` real matrices, the imaginary
//! unit becomes the complex structure `J = tau (x) I_N` with `J^2 = -I`, and
//! the Hilbert inner product splits into a Riemannian metric `g` plus a
//! symplectic form `omega`. Composite systems are glued with a *symplectic*
//! tensor product that mirrors complex bilinearity instead of the plain
//! Kronecker product of the doubled matrices (which lands in a space twice
//! too large and breaks `J`-compatibility).
//!
//! This crate implements both sides of that translation and checks them
//! against each other:
//!
//! * [`realmat`] — dense real matrices, the Kronecker product, and the
//!   block-diagonal tensor contraction `Tc`.
//! * [`cspace`] — standard complex-matrix quantum mechanics emulated with
//!   pairs of real matrices; this is the oracle everything is tested against.
//! * [`kahler`] — the realification map `X + iY -> [[X, -Y], [Y, X]]`, its
//!   inverse, the complex structure, and the metric/symplectic forms.
//! * [`compose`] — the symplectic tensor product, the Kronecker-doubled
//!   contrast product, and divergence diagnostics between the two.
//! * [`bell`] — CHSH at the Tsirelson bound `2*sqrt(2)` and the tripartite
//!   entanglement-swapping functional CHSH3 at `6*sqrt(2)`, evaluated in
//!   purely real arithmetic, plus local unitary/Kraus maps.
//! * [`suites`] — seeded property suites driving all of the above, reported
//!   as pass/fail [`Report`]s.
//!
//! Nothing in the crate ever touches a complex number type: "complex"
//! arithmetic is itself done on pairs of real matrices, so the claim that
//! the Kähler side is purely real is auditable by construction.

pub mod bell;
pub mod compose;
pub mod cspace;
pub mod error;
pub mod kahler;
pub mod opfile;
pub mod realmat;
pub mod report;
pub mod suites;

pub use error::{Error, Result};
pub use report::Report;

/// Default tolerance for algebraic identities (round trips, homomorphism,
/// diagram commutativity, ...). These are short chains of exact-structure
/// operations on small matrices, so they hold far below this bound.
pub const TOL_ALGEBRAIC: f64 = 1e-10;

/// Default tolerance for multi-step Bell-value computations.
pub const TOL_BELL: f64 = 1e-9;
