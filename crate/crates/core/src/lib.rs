//! Quasi-exactly-solvable bound states of the (1+1)-dimensional
//! Duffin–Kemmer–Petiau equation with a scalar linear potential `S(x) = λ|x|`.
//!
//! The crate is organised bottom-up:
//!
//! - [`algebra`]: the spin-0 and spin-1 β-matrix representations and exact
//!   checks of the DKP trilinear algebra.
//! - [`laguerre`]: generalized Laguerre polynomials `L_n^{(1)}` (exact
//!   coefficients, recurrence evaluation, roots, resultants).
//! - [`hypergeom`]: Kummer `M` and Tricomi `U` reference evaluations with
//!   Wronskian and asymptotic checks.
//! - [`spectrum`]: quantization roots in `ζ`, energies, normalized
//!   eigenfunctions, currents and the degeneracy scan.
//! - [`oracle`]: an independent finite-difference Sturm–Liouville solver
//!   used to confirm the analytic states.
//!
//! Data-parallel loops (the degeneracy sweep, oracle eigenvalue bisection,
//! grid refinement) go through [`Execution`]; with the `parallel` feature
//! disabled every path runs sequentially.

pub mod algebra;
mod exec;
pub mod hypergeom;
pub mod laguerre;
pub mod oracle;
pub mod quad;
pub mod spectrum;
pub mod tridiag;

pub use exec::Execution;
