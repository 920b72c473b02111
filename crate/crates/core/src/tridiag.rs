//! Symmetric tridiagonal eigenproblems: Sturm-sequence bisection for
//! eigenvalues and shifted inverse iteration for eigenvectors.
//!
//! Shared by the Laguerre root finder (Jacobi matrix) and the
//! finite-difference oracle.

use crate::Execution;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TridiagError {
    #[error("matrix is empty")]
    Empty,
    #[error("off-diagonal length {off} does not match diagonal length {diag}")]
    Shape { diag: usize, off: usize },
    #[error("eigenvalue index {index} out of range for a {dim}x{dim} matrix")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("bisection for eigenvalue {index} did not converge")]
    NonConvergence { index: usize },
}

/// A real symmetric tridiagonal matrix.
#[derive(Clone, Debug)]
pub struct SymTridiag {
    diag: Vec<f64>,
    off: Vec<f64>,
}

const PIVOT_GUARD: f64 = 1e-300;
const MAX_BISECTIONS: usize = 400;

impl SymTridiag {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Result<Self, TridiagError> {
        if diag.is_empty() {
            return Err(TridiagError::Empty);
        }
        if off.len() + 1 != diag.len() {
            return Err(TridiagError::Shape {
                diag: diag.len(),
                off: off.len(),
            });
        }
        Ok(Self { diag, off })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn off(&self) -> &[f64] {
        &self.off
    }

    /// Gershgorin interval containing the whole spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.dim();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    /// Number of eigenvalues strictly below `x` (Sturm count via LDLᵀ pivots).
    pub fn count_below(&self, x: f64) -> usize {
        let mut count = 0;
        let mut q = self.diag[0] - x;
        if q < 0.0 {
            count += 1;
        }
        for i in 1..self.dim() {
            let safe = if q.abs() < PIVOT_GUARD {
                PIVOT_GUARD.copysign(q)
            } else {
                q
            };
            q = (self.diag[i] - x) - self.off[i - 1] * self.off[i - 1] / safe;
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// The `index`-th smallest eigenvalue (0-based) by bisection.
    pub fn eigenvalue(&self, index: usize) -> Result<f64, TridiagError> {
        if index >= self.dim() {
            return Err(TridiagError::IndexOutOfRange {
                index,
                dim: self.dim(),
            });
        }
        let (lo, hi) = self.gershgorin();
        let pad = 1e-12 * (hi - lo).abs().max(1.0);
        let (mut a, mut b) = (lo - pad, hi + pad);
        for _ in 0..MAX_BISECTIONS {
            let mid = 0.5 * (a + b);
            if b - a <= 4.0 * f64::EPSILON * a.abs().max(b.abs()) || mid <= a || mid >= b {
                return Ok(mid);
            }
            if self.count_below(mid) <= index {
                a = mid;
            } else {
                b = mid;
            }
        }
        Err(TridiagError::NonConvergence { index })
    }

    /// The `k` smallest eigenvalues in increasing order.
    pub fn lowest_eigenvalues(&self, k: usize, exec: Execution) -> Result<Vec<f64>, TridiagError> {
        let k = k.min(self.dim());
        exec.map((0..k).collect(), |i| self.eigenvalue(i))
            .into_iter()
            .collect()
    }

    /// Unit eigenvector for a converged eigenvalue, by shifted inverse
    /// iteration. The sign is fixed so that the largest-magnitude component
    /// is positive.
    pub fn eigenvector(&self, eigenvalue: f64) -> Vec<f64> {
        let n = self.dim();
        if n == 1 {
            return vec![1.0];
        }
        let scale = self
            .diag
            .iter()
            .chain(self.off.iter())
            .fold(0.0f64, |m, v| m.max(v.abs()));
        let shift = eigenvalue + 1e-13 * scale.max(eigenvalue.abs()).max(f64::MIN_POSITIVE);
        let lu = ShiftedLu::factor(&self.diag, &self.off, shift, scale);
        let mut v = vec![1.0 / (n as f64).sqrt(); n];
        for _ in 0..4 {
            lu.solve(&mut v);
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            v.iter_mut().for_each(|x| *x /= norm);
        }
        let peak = v
            .iter()
            .copied()
            .fold(0.0f64, |m, x| if x.abs() > m.abs() { x } else { m });
        if peak < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
        v
    }
}

/// LU factorisation with partial pivoting of `T − σI` for tridiagonal `T`.
struct ShiftedLu {
    d: Vec<f64>,
    dl: Vec<f64>,
    du: Vec<f64>,
    du2: Vec<f64>,
    swapped: Vec<bool>,
}

impl ShiftedLu {
    fn factor(diag: &[f64], off: &[f64], shift: f64, scale: f64) -> Self {
        let n = diag.len();
        let tiny = f64::EPSILON * scale.max(1.0);
        let mut d: Vec<f64> = diag.iter().map(|x| x - shift).collect();
        let mut dl = off.to_vec();
        let mut du = off.to_vec();
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        for i in 0..n - 1 {
            if d[i].abs() >= dl[i].abs() {
                if d[i] == 0.0 {
                    d[i] = tiny;
                }
                let fact = dl[i] / d[i];
                dl[i] = fact;
                d[i + 1] -= fact * du[i];
            } else {
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                let temp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = temp - fact * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] = -fact * du2[i];
                }
                swapped[i] = true;
            }
        }
        if d[n - 1] == 0.0 {
            d[n - 1] = tiny;
        }
        Self {
            d,
            dl,
            du,
            du2,
            swapped,
        }
    }

    fn solve(&self, b: &mut [f64]) {
        let n = self.d.len();
        for i in 0..n - 1 {
            if self.swapped[i] {
                let temp = b[i];
                b[i] = b[i + 1];
                b[i + 1] = temp - self.dl[i] * b[i];
            } else {
                b[i + 1] -= self.dl[i] * b[i];
            }
        }
        b[n - 1] /= self.d[n - 1];
        if n > 1 {
            b[n - 2] = (b[n - 2] - self.du[n - 2] * b[n - 1]) / self.d[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            b[i] = (b[i] - self.du[i] * b[i + 1] - self.du2[i] * b[i + 2]) / self.d[i];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn free_chain_spectrum() {
        let n = 40;
        let t = SymTridiag::new(vec![2.0; n], vec![-1.0; n - 1]).unwrap();
        let evs = t.lowest_eigenvalues(n, Execution::Sequential).unwrap();
        for (k, ev) in evs.iter().enumerate() {
            let exact = 2.0 - 2.0 * ((k + 1) as f64 * PI / (n as f64 + 1.0)).cos();
            assert!((ev - exact).abs() < 1e-13, "k={k}: {ev} vs {exact}");
        }
    }

    #[test]
    fn eigenvector_of_free_chain() {
        let n = 30;
        let t = SymTridiag::new(vec![2.0; n], vec![-1.0; n - 1]).unwrap();
        let ev = t.eigenvalue(2).unwrap();
        let v = t.eigenvector(ev);
        let norm: f64 = (0..n)
            .map(|j| (3.0 * (j + 1) as f64 * PI / (n as f64 + 1.0)).sin().powi(2))
            .sum::<f64>()
            .sqrt();
        let dot: f64 = (0..n)
            .map(|j| v[j] * (3.0 * (j + 1) as f64 * PI / (n as f64 + 1.0)).sin() / norm)
            .sum();
        assert!((dot.abs() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn shape_errors() {
        assert_eq!(
            SymTridiag::new(vec![], vec![]).unwrap_err(),
            TridiagError::Empty
        );
        assert!(matches!(
            SymTridiag::new(vec![1.0, 2.0], vec![]),
            Err(TridiagError::Shape { .. })
        ));
        let t = SymTridiag::new(vec![1.0], vec![]).unwrap();
        assert!(matches!(
            t.eigenvalue(1),
            Err(TridiagError::IndexOutOfRange { .. })
        ));
    }
}
