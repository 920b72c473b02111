//! Quantization conditions, energies and eigenfunctions of the scalar
//! linear potential `S(x) = λ|x|`.
//!
//! On the half line the bound states are `φ_n(|x|) = N_n t e^{−t/2} L_n^{(1)}(t)`
//! with `t = ζ(1 + |x|/(ζλ_C))²` and `E_n = ±2m√(n+1)/√ζ`. Extending them to
//! the whole line forces `φ′(0⁺) = 0` (even) or `φ(0⁺) = 0` (odd), which are
//! algebraic conditions on `ζ = m²/λ`.

mod degeneracy;
mod params;
mod roots;
mod state;
mod table;

pub use degeneracy::{degeneracy_scan, DegeneracyEntry, DegeneracyReport};
pub use params::{EnergySign, ModelParams, Parity};
pub use roots::{
    even_condition_residual, even_polynomial, even_zeta_roots, odd_condition_residual,
    odd_zeta_roots, root_residual, zeta_roots, ROOT_RESIDUAL_TOL,
};
pub use state::{
    boundary_values, delta_closed_form, delta_quadrature, energy, make_state, QuasiExactState,
};
pub use table::{count_nodes, eigenfunction_table, figure1, EigenfunctionTable, Figure1, XExtent};

use crate::laguerre::LaguerreError;
use crate::quad::QuadError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectrumError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("no {parity} solutions exist for n = {n}")]
    EmptyRootSet { n: usize, parity: Parity },
    #[error("root index {index} out of range: {available} {parity} roots for n = {n}")]
    RootIndex {
        n: usize,
        parity: Parity,
        index: usize,
        available: usize,
    },
    #[error("even-parity root bracket {index} for n = {n} has no sign change")]
    Bracket { n: usize, index: usize },
    #[error("normalization integral mismatch: closed form {closed} vs quadrature {quadrature}")]
    NormalizationMismatch { closed: f64, quadrature: f64 },
    #[error("state is not normalized")]
    Unnormalized,
    #[error(transparent)]
    Laguerre(#[from] LaguerreError),
    #[error(transparent)]
    Quadrature(#[from] QuadError),
}

/// `t = ζ (1 + |x|/(ζ λ_C))²`.
pub fn t_of_x(x: f64, params: &ModelParams) -> f64 {
    let z = 1.0 + x.abs() / (params.zeta() * params.lambda_c());
    params.zeta() * z * z
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t_examples() {
        let p = ModelParams::from_zeta(1.0, 2.0).unwrap();
        assert_eq!(t_of_x(0.0, &p), 2.0);
        let q = ModelParams::from_zeta(1.0, 1.0).unwrap();
        assert_eq!(t_of_x(q.lambda_c(), &q), 4.0);
        for m in [0.5, 1.0, 3.0] {
            let r = ModelParams::from_zeta(m, 0.7).unwrap();
            let lc = r.lambda_c();
            assert!(t_of_x(2.0 * lc, &r) > t_of_x(lc, &r));
            assert_eq!(t_of_x(-lc, &r), t_of_x(lc, &r));
            assert!(t_of_x(0.3 * lc, &r) >= r.zeta());
        }
    }

    #[test]
    fn t_matches_z_squared_over_g() {
        // t = z²/g with z = 1 + (λ/m)|x|
        let p = ModelParams::from_lambda(1.7, 0.9).unwrap();
        for x in [0.0, 0.4, -2.5, 10.0] {
            let z = 1.0 + p.lambda() / p.m() * f64::abs(x);
            let t = z * z / p.g();
            assert!((t_of_x(x, &p) - t).abs() < 1e-12 * t);
        }
    }
}
