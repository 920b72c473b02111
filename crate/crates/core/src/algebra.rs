//! β-matrix representations of the DKP algebra.
//!
//! Both the five-dimensional (spin-0) and ten-dimensional (spin-1)
//! representations are built over Gaussian integers, so every check here is
//! exact: a residual is either zero or at least one.

use num_complex::Complex;
use std::ops::{Add, Mul, Sub};

pub type GaussInt = Complex<i64>;

const ZERO: GaussInt = Complex::new(0, 0);
const ONE: GaussInt = Complex::new(1, 0);
const I: GaussInt = Complex::new(0, 1);

/// Minkowski metric diag(1, −1, −1, −1).
pub const METRIC: [i64; 4] = [1, -1, -1, -1];

/// Dense square matrix of Gaussian integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussMatrix {
    dim: usize,
    data: Vec<GaussInt>,
}

impl GaussMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, ONE);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> GaussInt {
        self.data[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: GaussInt) {
        self.data[row * self.dim + col] = value;
    }

    pub fn scale(&self, k: i64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * k).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let mut t = self.transpose();
        t.data.iter_mut().for_each(|z| *z = z.conj());
        t
    }

    pub fn trace(&self) -> GaussInt {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data
            .iter()
            .map(|z| ((z.re * z.re + z.im * z.im) as f64).sqrt())
            .fold(0.0, f64::max)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.dim).all(|r| (0..self.dim).all(|c| r == c || self.get(r, c) == ZERO))
    }

    fn entries_are_units_or_zero(&self) -> bool {
        self.data
            .iter()
            .all(|z| matches!((z.re, z.im), (0, 0) | (1, 0) | (-1, 0) | (0, 1) | (0, -1)))
    }
}

impl<'a> Mul for &'a GaussMatrix {
    type Output = GaussMatrix;

    fn mul(self, rhs: &'a GaussMatrix) -> GaussMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = GaussMatrix::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a == ZERO {
                    continue;
                }
                for c in 0..n {
                    out.data[r * n + c] += a * rhs.get(k, c);
                }
            }
        }
        out
    }
}

impl<'a> Add for &'a GaussMatrix {
    type Output = GaussMatrix;

    fn add(self, rhs: &'a GaussMatrix) -> GaussMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        GaussMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl<'a> Sub for &'a GaussMatrix {
    type Output = GaussMatrix;

    fn sub(self, rhs: &'a GaussMatrix) -> GaussMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        GaussMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpinSector {
    Spin0,
    Spin1,
}

impl SpinSector {
    pub fn dimension(self) -> usize {
        match self {
            SpinSector::Spin0 => 5,
            SpinSector::Spin1 => 10,
        }
    }
}

/// The four β matrices of one irreducible representation, together with
/// `η⁰ = 2β⁰β⁰ − 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaRep {
    sector: SpinSector,
    betas: [GaussMatrix; 4],
    eta0: GaussMatrix,
}

impl BetaRep {
    fn from_betas(sector: SpinSector, betas: [GaussMatrix; 4]) -> Self {
        let eta0 = eta_from(&betas[0]);
        Self {
            sector,
            betas,
            eta0,
        }
    }

    pub fn sector(&self) -> SpinSector {
        self.sector
    }

    pub fn dimension(&self) -> usize {
        self.sector.dimension()
    }

    pub fn beta(&self, mu: usize) -> &GaussMatrix {
        &self.betas[mu]
    }

    pub fn betas(&self) -> &[GaussMatrix; 4] {
        &self.betas
    }

    pub fn eta0(&self) -> &GaussMatrix {
        &self.eta0
    }

    /// Replaces `β^μ` (and refreshes `η⁰` when μ = 0). Used to build
    /// deliberately broken representations.
    pub fn replace_beta(&mut self, mu: usize, matrix: GaussMatrix) {
        assert_eq!(matrix.dim(), self.dimension(), "dimension mismatch");
        self.betas[mu] = matrix;
        if mu == 0 {
            self.eta0 = eta_from(&self.betas[0]);
        }
    }

    /// Every entry lies in {0, ±1, ±i} and `η⁰ = 2β⁰β⁰ − 1` holds exactly.
    pub fn is_well_formed(&self) -> bool {
        self.betas
            .iter()
            .all(GaussMatrix::entries_are_units_or_zero)
            && self.eta0 == eta_from(&self.betas[0])
    }
}

fn eta_from(beta0: &GaussMatrix) -> GaussMatrix {
    &(beta0 * beta0).scale(2) - &GaussMatrix::identity(beta0.dim())
}

fn levi_civita(i: usize, j: usize, k: usize) -> i64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

/// Builds the explicit representation for `sector`.
///
/// Spin-0 (5×5): `β⁰ = diag(θ, 0)` with `θ = [[0,1],[1,0]]`, and `βⁱ` carrying
/// `ρᵢ` in the upper-right 2×3 block and `−ρᵢᵀ` in the lower-left block,
/// where `ρᵢ` has a single `−1` at row 0, column i.
///
/// Spin-1 (10×10, blocks of size 1, 3, 3, 3): `β⁰` holds two identity blocks
/// coupling blocks 1 and 2; `βⁱ` holds `eᵢ`, `−eᵢᵀ` and two copies of `−i sᵢ`
/// with `(sᵢ)ⱼₖ = −i εᵢⱼₖ`.
pub fn build_rep(sector: SpinSector) -> BetaRep {
    match sector {
        SpinSector::Spin0 => {
            let mut b0 = GaussMatrix::zeros(5);
            b0.set(0, 1, ONE);
            b0.set(1, 0, ONE);
            let spatial = |i: usize| {
                let mut b = GaussMatrix::zeros(5);
                // ρᵢ occupies rows 0..2, columns 2..5; its only entry is −1 at (0, i).
                b.set(0, 2 + i, -ONE);
                // −ρᵢᵀ occupies rows 2..5, columns 0..2.
                b.set(2 + i, 0, ONE);
                b
            };
            BetaRep::from_betas(sector, [b0, spatial(0), spatial(1), spatial(2)])
        }
        SpinSector::Spin1 => {
            // block offsets: scalar 0, then three 3-blocks at 1, 4, 7
            let (b1, b2, b3) = (1, 4, 7);
            let mut b0 = GaussMatrix::zeros(10);
            for j in 0..3 {
                b0.set(b1 + j, b2 + j, ONE);
                b0.set(b2 + j, b1 + j, ONE);
            }
            let spatial = |i: usize| {
                let mut b = GaussMatrix::zeros(10);
                b.set(0, b2 + i, ONE);
                b.set(b2 + i, 0, -ONE);
                for j in 0..3 {
                    for k in 0..3 {
                        let s_jk = -I * levi_civita(i, j, k);
                        let entry = -I * s_jk;
                        if entry != ZERO {
                            b.set(b1 + j, b3 + k, entry);
                            b.set(b3 + j, b1 + k, entry);
                        }
                    }
                }
                b
            };
            BetaRep::from_betas(sector, [b0, spatial(0), spatial(1), spatial(2)])
        }
    }
}

/// Maximum entry modulus of
/// `β^μβ^νβ^λ + β^λβ^νβ^μ − g^{μν}β^λ − g^{λν}β^μ` over all 64 index triples.
pub fn check_dkp_algebra(rep: &BetaRep) -> f64 {
    let b = rep.betas();
    let mut worst: f64 = 0.0;
    for mu in 0..4 {
        for nu in 0..4 {
            let mu_nu = &b[mu] * &b[nu];
            for la in 0..4 {
                let lhs = &(&mu_nu * &b[la]) + &(&(&b[la] * &b[nu]) * &b[mu]);
                let g_mu_nu = if mu == nu { METRIC[mu] } else { 0 };
                let g_la_nu = if la == nu { METRIC[la] } else { 0 };
                let rhs = &b[la].scale(g_mu_nu) + &b[mu].scale(g_la_nu);
                worst = worst.max((&lhs - &rhs).max_abs());
            }
        }
    }
    worst
}

/// Maximum over μ of the entry modulus of `(η⁰β^μ)† − η⁰β^μ`.
pub fn check_eta_hermiticity(rep: &BetaRep) -> f64 {
    rep.betas()
        .iter()
        .map(|b| {
            let eb = rep.eta0() * b;
            (&eb.dagger() - &eb).max_abs()
        })
        .fold(0.0, f64::max)
}
