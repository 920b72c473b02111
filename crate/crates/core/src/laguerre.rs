//! Generalized Laguerre polynomials `L_n^{(1)}`.
//!
//! Two arithmetic paths are kept deliberately separate: exact big-integer
//! coefficients (used for the resultant-based degeneracy proof and for
//! rational identities) and floating-point evaluation by the three-term
//! recurrence (used for roots and eigenfunctions).

use crate::tridiag::{SymTridiag, TridiagError};
use crate::Execution;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LaguerreError {
    #[error("Newton polish of root {index} of L_{n}^(1) did not converge")]
    PolishNonConvergence { n: usize, index: usize },
    #[error("root {index} of L_{n}^(1) left its bracket during polishing")]
    RootOrdering { n: usize, index: usize },
    #[error("the consecutive resultant needs n >= 1, got {0}")]
    ResultantDegree(usize),
    #[error(transparent)]
    Eigen(#[from] TridiagError),
}

/// `L_n^{(1)}(w) = (1/D) Σ_j c_j w^j` with integer `c_j` and `D = n!`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaguerrePoly {
    n: usize,
    denominator: BigInt,
    scaled_coeffs: Vec<BigInt>,
}

impl LaguerrePoly {
    pub fn degree(&self) -> usize {
        self.n
    }

    /// Superscript of the family; only α = 1 is produced here.
    pub fn alpha(&self) -> u32 {
        1
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    /// Integer numerators `c_j`, lowest power first.
    pub fn scaled_coeffs(&self) -> &[BigInt] {
        &self.scaled_coeffs
    }

    /// Exact coefficient of `w^j`.
    pub fn coeff(&self, j: usize) -> BigRational {
        BigRational::new(self.scaled_coeffs[j].clone(), self.denominator.clone())
    }

    /// Coefficients of `w^j` rounded to `f64`.
    pub fn coeffs_f64(&self) -> Vec<f64> {
        (0..=self.n)
            .map(|j| self.coeff(j).to_f64().unwrap_or(f64::NAN))
            .collect()
    }

    /// Exact value at a rational point.
    pub fn eval_exact(&self, w: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.scaled_coeffs.iter().rev() {
            acc = acc * w + BigRational::from_integer(c.clone());
        }
        acc / BigRational::from_integer(self.denominator.clone())
    }

    /// Horner evaluation with the rounded coefficients.
    pub fn eval_horner(&self, w: f64) -> f64 {
        self.coeffs_f64()
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * w + c)
    }

    /// Value and first two derivatives from the rounded coefficients.
    pub fn eval_with_derivatives(&self, w: f64) -> (f64, f64, f64) {
        let c = self.coeffs_f64();
        let (mut f, mut d1, mut d2) = (0.0, 0.0, 0.0);
        for &cj in c.iter().rev() {
            d2 = d2 * w + 2.0 * d1;
            d1 = d1 * w + f;
            f = f * w + cj;
        }
        (f, d1, d2)
    }
}

/// Exact coefficients: the coefficient of `w^j` is
/// `Γ(n+2)(−1)^j / (Γ(j+2) j! (n−j)!) = (−1)^j C(n+1, j+1) / j!`.
pub fn laguerre_coeffs(n: usize) -> LaguerrePoly {
    let denominator: BigInt = (1..=n).fold(BigInt::one(), |acc, k| acc * k);
    let scaled_coeffs = (0..=n)
        .map(|j| {
            // C(n+1, j+1) · n!/j!
            let binom = num_integer::binomial(BigInt::from(n + 1), BigInt::from(j + 1));
            let falling: BigInt = (j + 1..=n).fold(BigInt::one(), |acc, k| acc * k);
            let c = binom * falling;
            if j % 2 == 1 {
                -c
            } else {
                c
            }
        })
        .collect();
    LaguerrePoly {
        n,
        denominator,
        scaled_coeffs,
    }
}

/// `(L_n^{(1)}(w), L_{n−1}^{(1)}(w))` by the forward recurrence
/// `(k+1) L_{k+1} = (2k+2−w) L_k − (k+1) L_{k−1}`, `L_{−1} ≡ 0`, `L_0 = 1`.
pub fn laguerre_pair(n: usize, w: f64) -> (f64, f64) {
    let (mut prev, mut cur) = (0.0, 1.0);
    for k in 0..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 2.0 - w) * cur - (kf + 1.0) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    (cur, prev)
}

pub fn laguerre_eval(n: usize, w: f64) -> f64 {
    laguerre_pair(n, w).0
}

/// Below this |w| the derivative identity loses digits to the division by w,
/// so the coefficient form is used instead.
const SMALL_W: f64 = 1e-2;

/// `dL_n^{(1)}/dw` from `w L′ = n L_n − (n+1) L_{n−1}`.
pub fn laguerre_derivative(n: usize, w: f64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    if w == 0.0 {
        return -((n * (n + 1)) as f64) / 2.0;
    }
    if w.abs() < SMALL_W {
        return laguerre_coeffs(n).eval_with_derivatives(w).1;
    }
    let (ln, lm) = laguerre_pair(n, w);
    (n as f64 * ln - (n as f64 + 1.0) * lm) / w
}

const ROOT_REL_TOL: f64 = 1e-13;
const MAX_NEWTON: usize = 60;

/// The `n` zeros of `L_n^{(1)}`, increasing.
///
/// Starting values are the eigenvalues of the Jacobi matrix of the α = 1
/// Laguerre weight (diagonal `2k+2`, off-diagonal `√(k(k+1))`), then each
/// is Newton-polished on the recurrence.
pub fn laguerre_roots(n: usize) -> Result<Vec<f64>, LaguerreError> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let diag = (0..n).map(|k| 2.0 * k as f64 + 2.0).collect();
    let off = (1..n).map(|k| ((k * (k + 1)) as f64).sqrt()).collect();
    let jacobi = SymTridiag::new(diag, off)?;
    let guesses = jacobi.lowest_eigenvalues(n, Execution::Sequential)?;

    let mut roots = Vec::with_capacity(n);
    for (index, &guess) in guesses.iter().enumerate() {
        let lo = if index > 0 {
            0.5 * (guesses[index - 1] + guess)
        } else {
            0.0
        };
        let hi = guesses
            .get(index + 1)
            .map_or(f64::INFINITY, |g| 0.5 * (guess + g));
        let root = polish(n, guess).ok_or(LaguerreError::PolishNonConvergence { n, index })?;
        if !(root > lo && root < hi) {
            return Err(LaguerreError::RootOrdering { n, index });
        }
        roots.push(root);
    }
    Ok(roots)
}

fn polish(n: usize, mut w: f64) -> Option<f64> {
    for _ in 0..MAX_NEWTON {
        let step = laguerre_eval(n, w) / laguerre_derivative(n, w);
        if !step.is_finite() {
            return None;
        }
        w -= step;
        if (step / w).abs() < ROOT_REL_TOL {
            return Some(w);
        }
    }
    None
}

fn trim(p: &[BigInt]) -> Vec<BigInt> {
    let mut v = p.to_vec();
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn degree(p: &[BigInt]) -> usize {
    p.len() - 1
}

/// Pseudo-remainder: `lc(b)^{deg a − deg b + 1} a mod b`.
fn pseudo_remainder(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = degree(b);
    let lb = &b[db];
    let mut r = a.to_vec();
    let mut e = degree(a) as i64 - db as i64 + 1;
    while !r.is_empty() && r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, bj) in b.iter().enumerate() {
            r[j + shift] -= &lr * bj;
        }
        r = trim(&r);
        e -= 1;
    }
    if e > 0 {
        let f = num_traits::pow(lb.clone(), e as usize);
        for c in r.iter_mut() {
            *c *= &f;
        }
    }
    r
}

/// Exact resultant of two integer polynomials (lowest power first) by the
/// subresultant pseudo-remainder sequence.
pub fn resultant(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let mut a = trim(a);
    let mut b = trim(b);
    if a.is_empty() || b.is_empty() {
        return BigInt::zero();
    }
    let (ca, cb) = (content(&a), content(&b));
    let t = num_traits::pow(ca.clone(), degree(&b)) * num_traits::pow(cb.clone(), degree(&a));
    a.iter_mut().for_each(|c| *c /= &ca);
    b.iter_mut().for_each(|c| *c /= &cb);

    let mut sign = BigInt::one();
    if degree(&a) < degree(&b) {
        if degree(&a) % 2 == 1 && degree(&b) % 2 == 1 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut b);
    }

    let mut g = BigInt::one();
    let mut h = BigInt::one();
    while degree(&b) > 0 {
        let delta = degree(&a) - degree(&b);
        if degree(&a) % 2 == 1 && degree(&b) % 2 == 1 {
            sign = -sign;
        }
        let r = pseudo_remainder(&a, &b);
        if r.is_empty() {
            return BigInt::zero();
        }
        let divisor = &g * num_traits::pow(h.clone(), delta);
        a = b;
        b = r.into_iter().map(|c| c / &divisor).collect();
        g = a[degree(&a)].clone();
        h = if delta == 0 {
            h
        } else {
            num_traits::pow(g.clone(), delta) / num_traits::pow(h, delta - 1)
        };
    }
    let da = degree(&a);
    let h = if da == 0 {
        h
    } else {
        num_traits::pow(b[0].clone(), da) / num_traits::pow(h, da - 1)
    };
    sign * t * h
}

/// Resultant of the integer-scaled `L_n^{(1)}` and `L_{n−1}^{(1)}`. Nonzero
/// exactly when the two polynomials share no root.
pub fn consecutive_resultant(n: usize) -> Result<BigInt, LaguerreError> {
    if n == 0 {
        return Err(LaguerreError::ResultantDegree(n));
    }
    let hi = laguerre_coeffs(n);
    let lo = laguerre_coeffs(n - 1);
    Ok(resultant(hi.scaled_coeffs(), lo.scaled_coeffs()))
}

pub fn resultant_nonzero(n: usize) -> Result<bool, LaguerreError> {
    consecutive_resultant(n).map(|r| !r.is_zero())
}

/// Smallest |r − s| over zeros r of `L_n^{(1)}` and s of `L_{n−1}^{(1)}`;
/// `None` when either set is empty.
pub fn min_root_separation(n: usize) -> Result<Option<f64>, LaguerreError> {
    if n == 0 {
        return Ok(None);
    }
    let a = laguerre_roots(n)?;
    let b = laguerre_roots(n - 1)?;
    Ok(a.iter()
        .flat_map(|r| b.iter().map(move |s| (r - s).abs()))
        .min_by(f64::total_cmp))
}

/// Number of decimal digits of |x| (for reporting resultant sizes).
pub fn decimal_digits(x: &BigInt) -> usize {
    if x.is_zero() {
        1
    } else {
        x.abs().to_str_radix(10).len()
    }
}
