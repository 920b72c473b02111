//! Finite-difference Sturm–Liouville oracle.
//!
//! The scalar reduced equation
//!
//! ```text
//! d/dx[(1/(m+S)) dφ/dx] + [(E² − (m+S)²)/(m+S)] φ = 0,   S = λ|x|
//! ```
//!
//! is written as `−(pφ′)′ + qφ = Λwφ` with `p = w = 1/(m+S)`, `q = m+S` and
//! `Λ = E²`, discretised on `[0, x_max]` with central differences and parity
//! conditions at the origin. Nothing here touches Laguerre polynomials, so the
//! eigenvalues are an independent check on the closed-form spectrum.

use crate::spectrum::{ModelParams, Parity, QuasiExactState};
use crate::tridiag::{SymTridiag, TridiagError};
use crate::Execution;
use thiserror::Error;

pub const MIN_POINTS: usize = 1000;
/// `m + λ x_max` must be at least this multiple of the expected |E|.
pub const DEPTH_FACTOR: f64 = 3.0;
/// Auto `x_max` satisfies `(m + λx)² ≥ E² + 40λ`.
pub const AUTO_DEPTH_MARGIN: f64 = 40.0;
pub const MATCH_TOLERANCE: f64 = 1e-3;
pub const OVERLAP_THRESHOLD: f64 = 0.9999;
/// Beyond this relative distance no oracle level is considered a candidate.
pub const SEARCH_WINDOW: f64 = 0.1;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("invalid oracle configuration: {0}")]
    InvalidConfig(String),
    #[error("eigenvalue {index} failed to converge")]
    NonConvergence { index: usize },
    #[error(transparent)]
    Tridiag(TridiagError),
}

impl From<TridiagError> for OracleError {
    fn from(e: TridiagError) -> Self {
        match e {
            TridiagError::NonConvergence { index } => Self::NonConvergence { index },
            other => Self::Tridiag(other),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleConfig {
    pub params: ModelParams,
    pub parity: Parity,
    pub x_max: f64,
    pub points: usize,
    pub k: usize,
    /// Energy scale used for the depth check.
    pub e_expected: f64,
}

/// Smallest `x` with `(m + λx)² ≥ E² + 40λ` and `m + λx ≥ 3|E|`, and at
/// least one Compton wavelength.
pub fn auto_x_max(params: &ModelParams, e_expected: f64) -> f64 {
    let (m, lam) = (params.m(), params.lambda());
    let need = (e_expected * e_expected + AUTO_DEPTH_MARGIN * lam)
        .sqrt()
        .max(DEPTH_FACTOR * e_expected.abs());
    ((need - m) / lam).max(params.lambda_c())
}

impl OracleConfig {
    /// Configuration with `x_max` chosen by [`auto_x_max`].
    pub fn new(
        params: ModelParams,
        parity: Parity,
        points: usize,
        k: usize,
        e_expected: f64,
    ) -> Result<Self, OracleError> {
        let config = Self {
            params,
            parity,
            x_max: auto_x_max(&params, e_expected),
            points,
            k,
            e_expected,
        };
        config.validate()?;
        Ok(config)
    }

    /// Configuration matching a state's parameters, parity and energy, with
    /// enough levels to reach it.
    pub fn for_state(state: &QuasiExactState, points: usize) -> Result<Self, OracleError> {
        Self::new(
            *state.params(),
            state.parity(),
            points,
            state.n() + 3,
            state.energy(),
        )
    }

    pub fn with_x_max(mut self, x_max: f64) -> Result<Self, OracleError> {
        self.x_max = x_max;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), OracleError> {
        if self.points < MIN_POINTS {
            return Err(OracleError::InvalidConfig(format!(
                "points must be >= {MIN_POINTS}, got {}",
                self.points
            )));
        }
        if self.k == 0 {
            return Err(OracleError::InvalidConfig("k must be >= 1".into()));
        }
        if !(self.x_max.is_finite() && self.x_max > 0.0) {
            return Err(OracleError::InvalidConfig(format!(
                "x_max must be positive, got {}",
                self.x_max
            )));
        }
        if !self.e_expected.is_finite() {
            return Err(OracleError::InvalidConfig(
                "expected energy must be finite".into(),
            ));
        }
        let depth = self.params.effective_mass(self.x_max);
        if depth < DEPTH_FACTOR * self.e_expected.abs() {
            return Err(OracleError::InvalidConfig(format!(
                "m + λ·x_max = {depth} is below {DEPTH_FACTOR}·|E| = {}",
                DEPTH_FACTOR * self.e_expected.abs()
            )));
        }
        Ok(())
    }

    fn doubled(&self) -> Self {
        Self {
            points: 2 * self.points,
            ..self.clone()
        }
    }
}

/// `(p, q, w)` at `x`.
pub fn coefficients(params: &ModelParams, x: f64) -> (f64, f64, f64) {
    let mass = params.effective_mass(x);
    (1.0 / mass, mass, 1.0 / mass)
}

/// The generalised problem `A φ = Λ B φ` with `A` symmetric tridiagonal and
/// `B` diagonal positive.
#[derive(Clone, Debug)]
pub struct Discretization {
    pub parity: Parity,
    /// Grid spacing.
    pub h: f64,
    /// Positions of the unknowns.
    pub grid: Vec<f64>,
    pub a_diag: Vec<f64>,
    pub a_off: Vec<f64>,
    pub b: Vec<f64>,
}

impl Discretization {
    /// `B^{−1/2} A B^{−1/2}`, whose eigenvectors are `u = √B φ`.
    pub fn symmetrized(&self) -> Result<SymTridiag, OracleError> {
        let diag = self
            .a_diag
            .iter()
            .zip(&self.b)
            .map(|(a, b)| a / b)
            .collect();
        let off = self
            .a_off
            .iter()
            .enumerate()
            .map(|(i, a)| a / (self.b[i] * self.b[i + 1]).sqrt())
            .collect();
        Ok(SymTridiag::new(diag, off)?)
    }
}

/// Central differences on `points` intervals of `[0, x_max]`. Even parity
/// mirrors a ghost node and halves row 0 to keep `A` symmetric; odd parity
/// drops the node at the origin. The node at `x_max` is always dropped.
pub fn discretize(config: &OracleConfig) -> Result<Discretization, OracleError> {
    config.validate()?;
    let p = &config.params;
    let n = config.points;
    let h = config.x_max / n as f64;
    let h2 = h * h;
    let first = match config.parity {
        Parity::Even => 0,
        Parity::Odd => 1,
    };
    let grid: Vec<f64> = (first..n).map(|i| i as f64 * h).collect();
    let half = |i: usize| coefficients(p, (i as f64 + 0.5) * h).0;

    let mut a_diag = Vec::with_capacity(grid.len());
    let mut b = Vec::with_capacity(grid.len());
    for i in first..n {
        let (_, q, w) = coefficients(p, i as f64 * h);
        if i == 0 {
            a_diag.push(half(0) / h2 + 0.5 * q);
            b.push(0.5 * w);
        } else {
            a_diag.push((half(i - 1) + half(i)) / h2 + q);
            b.push(w);
        }
    }
    let a_off = (first..n - 1).map(|i| -half(i) / h2).collect();
    Ok(Discretization {
        parity: config.parity,
        h,
        grid,
        a_diag,
        a_off,
        b,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleSpectrum {
    /// `Λ = E²` on the base grid, increasing.
    pub lambdas: Vec<f64>,
    /// `√Λ` on the base grid.
    pub energies: Vec<f64>,
    /// `√Λ` on the doubled grid.
    pub energies_doubled: Vec<f64>,
    /// Richardson extrapolation `(4E(2N) − E(N))/3`.
    pub energies_extrapolated: Vec<f64>,
    /// `|E(N) − E(2N)|` per level.
    pub convergence: Vec<f64>,
    pub points: usize,
    pub x_max: f64,
}

fn levels(config: &OracleConfig, exec: Execution) -> Result<Vec<f64>, OracleError> {
    let matrix = discretize(config)?.symmetrized()?;
    Ok(matrix.lowest_eigenvalues(config.k, exec)?)
}

/// Lowest `k` levels on the configured grid and on the doubled grid.
pub fn oracle_spectrum(
    config: &OracleConfig,
    exec: Execution,
) -> Result<OracleSpectrum, OracleError> {
    let lambdas = levels(config, exec)?;
    let fine = levels(&config.doubled(), exec)?;
    let energies: Vec<f64> = lambdas.iter().map(|l| l.max(0.0).sqrt()).collect();
    let energies_doubled: Vec<f64> = fine.iter().map(|l| l.max(0.0).sqrt()).collect();
    let energies_extrapolated = energies
        .iter()
        .zip(&energies_doubled)
        .map(|(c, f)| (4.0 * f - c) / 3.0)
        .collect();
    let convergence = energies
        .iter()
        .zip(&energies_doubled)
        .map(|(c, f)| (c - f).abs())
        .collect();
    Ok(OracleSpectrum {
        lambdas,
        energies,
        energies_doubled,
        energies_extrapolated,
        convergence,
        points: config.points,
        x_max: config.x_max,
    })
}

/// Oracle eigenfunction for level `index` sampled on the grid of
/// [`discretize`], normalised to unit `L²(w)` norm and made positive at its
/// largest component.
pub fn oracle_eigenvector(
    config: &OracleConfig,
    index: usize,
) -> Result<(Discretization, Vec<f64>), OracleError> {
    let disc = discretize(config)?;
    let matrix = disc.symmetrized()?;
    let lambda = matrix.eigenvalue(index)?;
    let u = matrix.eigenvector(lambda);
    let phi = u.iter().zip(&disc.b).map(|(u, b)| u / b.sqrt()).collect();
    Ok((disc, phi))
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    Match,
    /// Nearest level is within the search window but fails a threshold.
    Mismatch,
    /// No level within [`SEARCH_WINDOW`] of |E|.
    NoLevel,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CrossValidation {
    pub analytic_energy: f64,
    /// Index of the nearest oracle level.
    pub level: usize,
    pub oracle_energy: f64,
    pub oracle_energy_extrapolated: f64,
    pub relative_error: f64,
    pub relative_error_extrapolated: f64,
    /// `|⟨φ_oracle, φ⟩_w| / (‖φ_oracle‖_w ‖φ‖_w)`; `None` without a candidate
    /// level.
    pub overlap: Option<f64>,
    pub verdict: Verdict,
}

impl CrossValidation {
    pub fn is_match(&self) -> bool {
        self.verdict == Verdict::Match
    }
}

/// Compares a closed-form state with the nearest oracle level.
pub fn cross_validate(
    state: &QuasiExactState,
    config: &OracleConfig,
    exec: Execution,
) -> Result<CrossValidation, OracleError> {
    if config.parity != state.parity() {
        return Err(OracleError::InvalidConfig(format!(
            "config parity {} does not match state parity {}",
            config.parity,
            state.parity()
        )));
    }
    if !(state.norm().is_finite() && state.norm() > 0.0) {
        return Err(OracleError::InvalidConfig("state is not normalized".into()));
    }
    let target = state.energy().abs();
    let spectrum = oracle_spectrum(config, exec)?;
    let (level, oracle_energy) = spectrum
        .energies
        .iter()
        .copied()
        .enumerate()
        .min_by(|a, b| (a.1 - target).abs().total_cmp(&(b.1 - target).abs()))
        .expect("k >= 1");
    let extrapolated = spectrum.energies_extrapolated[level];
    let relative_error = (oracle_energy - target).abs() / target;
    let relative_error_extrapolated = (extrapolated - target).abs() / target;

    if relative_error > SEARCH_WINDOW {
        return Ok(CrossValidation {
            analytic_energy: state.energy(),
            level,
            oracle_energy,
            oracle_energy_extrapolated: extrapolated,
            relative_error,
            relative_error_extrapolated,
            overlap: None,
            verdict: Verdict::NoLevel,
        });
    }

    let (disc, phi) = oracle_eigenvector(config, level)?;
    let (mut dot, mut nn, mut aa) = (0.0, 0.0, 0.0);
    for ((x, b), v) in disc.grid.iter().zip(&disc.b).zip(&phi) {
        let a = state.phi_half(*x);
        dot += b * v * a;
        nn += b * v * v;
        aa += b * a * a;
    }
    let overlap = dot.abs() / (nn * aa).sqrt();
    let verdict = if relative_error < MATCH_TOLERANCE && overlap > OVERLAP_THRESHOLD {
        Verdict::Match
    } else {
        Verdict::Mismatch
    };
    Ok(CrossValidation {
        analytic_energy: state.energy(),
        level,
        oracle_energy,
        oracle_energy_extrapolated: extrapolated,
        relative_error,
        relative_error_extrapolated,
        overlap: Some(overlap),
        verdict,
    })
}
