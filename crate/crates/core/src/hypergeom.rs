//! Reference evaluations of Kummer's `M(a, b, w)` and Tricomi's `U(a, b, w)`.
//!
//! This is a validator, not a general special-function library: the series
//! path is range-guarded at |w| ≤ 50, integer `b` in `U` goes through an
//! ε-offset limit, and large-w `U` falls back to its Laplace integral.

use crate::quad;
use statrs::function::gamma::gamma as gamma_lanczos;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HypergeomError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("|w| = {w} exceeds the series range guard of {limit}")]
    Range { w: f64, limit: f64 },
    #[error("series for M({a}, {b}, {w}) did not converge within {terms} terms")]
    NonConvergence {
        a: f64,
        b: f64,
        w: f64,
        terms: usize,
    },
    #[error("a = {a} is a nonpositive integer: M and U are linearly dependent")]
    LinearlyDependent { a: f64 },
    #[error("a = -{degree} makes M a polynomial: growth ~ w^{exponent:.3}, no e^w term")]
    PolynomialGrowth { degree: usize, exponent: f64 },
    #[error("the beta = -1 (b = 0) branch is not evaluated")]
    UnsupportedBranch,
    #[error(transparent)]
    Quadrature(#[from] quad::QuadError),
}

pub const SERIES_RANGE: f64 = 50.0;
const SERIES_REL_TOL: f64 = 1e-17;
const SERIES_QUIET_TERMS: usize = 3;
const SERIES_MAX_TERMS: usize = 1000;
/// Above this `w`, cancellation between the two Kummer terms
/// costs more than ~1e-8 relative, so `U` switches to its integral form.
pub const TRICOMI_DIRECT_MAX_W: f64 = 20.0;
const LIMIT_OFFSETS: [f64; 2] = [1e-4, 5e-5];

/// `sin(πx)` with exact zeros at integers.
pub fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (0.5 * x).round();
    if r == 0.0 || r.abs() == 1.0 {
        return 0.0;
    }
    if r.abs() <= 0.5 {
        (PI * r).sin()
    } else {
        (PI * (r.signum() - r)).sin()
    }
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x.fract() == 0.0
}

/// Γ(x), with reflection below 1/2. Poles return ±∞.
pub fn gamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        return f64::INFINITY;
    }
    if x >= 0.5 {
        gamma_lanczos(x)
    } else {
        PI / (sin_pi(x) * gamma_lanczos(1.0 - x))
    }
}

/// 1/Γ(x), exactly zero at the poles of Γ.
pub fn rgamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        return 0.0;
    }
    if x >= 0.5 {
        1.0 / gamma_lanczos(x)
    } else {
        sin_pi(x) * gamma_lanczos(1.0 - x) / PI
    }
}

/// Parameters of the confluent equation tied to the ansatz exponent β = ±1:
/// `b = β + 1`, `a = (β+1)/2 − gε²/4`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConfluentParams {
    a: f64,
    beta: i32,
}

impl ConfluentParams {
    pub fn new(a: f64, beta: i32) -> Result<Self, HypergeomError> {
        if beta * beta != 1 {
            return Err(HypergeomError::Domain(format!(
                "beta must be ±1, got {beta}"
            )));
        }
        Ok(Self { a, beta })
    }

    /// From the dimensionless coupling `g` and energy `ε = E/(g m)`.
    pub fn from_coupling(g: f64, epsilon: f64, beta: i32) -> Result<Self, HypergeomError> {
        Self::new(
            0.5 * (beta as f64 + 1.0) - g * epsilon * epsilon / 4.0,
            beta,
        )
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.beta as f64 + 1.0
    }

    pub fn beta(&self) -> i32 {
        self.beta
    }

    /// Only the β = +1 (b = 2) branch carries normalizable polynomial solutions.
    pub fn is_evaluable(&self) -> bool {
        self.beta == 1
    }

    pub fn kummer(&self, w: f64) -> Result<f64, HypergeomError> {
        if !self.is_evaluable() {
            return Err(HypergeomError::UnsupportedBranch);
        }
        kummer_m(self.a, self.b(), w)
    }

    pub fn tricomi(&self, w: f64) -> Result<Tricomi, HypergeomError> {
        if !self.is_evaluable() {
            return Err(HypergeomError::UnsupportedBranch);
        }
        tricomi_u(self.a, self.b(), w)
    }
}

/// Kummer's function `Σ_j (a)_j/(b)_j · w^j/j!`.
///
/// When `a = −n` the sum is a degree-n polynomial and is summed exactly for
/// any finite `w`; otherwise |w| ≤ 50 is required.
pub fn kummer_m(a: f64, b: f64, w: f64) -> Result<f64, HypergeomError> {
    if is_nonpositive_integer(b) {
        return Err(HypergeomError::Domain(format!(
            "b = {b} is a nonpositive integer"
        )));
    }
    if !(a.is_finite() && b.is_finite() && w.is_finite()) {
        return Err(HypergeomError::Domain("non-finite argument".into()));
    }
    if is_nonpositive_integer(a) {
        let n = (-a) as usize;
        let mut term = 1.0;
        let mut sum = 1.0;
        for j in 0..n {
            let jf = j as f64;
            term *= (a + jf) / (b + jf) * w / (jf + 1.0);
            sum += term;
        }
        return Ok(sum);
    }
    if w.abs() > SERIES_RANGE {
        return Err(HypergeomError::Range {
            w: w.abs(),
            limit: SERIES_RANGE,
        });
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut quiet = 0;
    for j in 0..SERIES_MAX_TERMS {
        let jf = j as f64;
        term *= (a + jf) / (b + jf) * w / (jf + 1.0);
        sum += term;
        if term.abs() <= SERIES_REL_TOL * sum.abs() {
            quiet += 1;
            if quiet >= SERIES_QUIET_TERMS {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(HypergeomError::NonConvergence {
        a,
        b,
        w,
        terms: SERIES_MAX_TERMS,
    })
}

/// How a Tricomi value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TricomiPath {
    /// Two-Kummer formula at non-integer `b`.
    Direct,
    /// ε-offset limit at integer `b`; accuracy target 1e-6.
    IntegerLimit,
    /// Laplace integral, used for large `w`.
    Integral,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tricomi {
    pub value: f64,
    pub path: TricomiPath,
}

impl Tricomi {
    pub fn reduced_accuracy(&self) -> bool {
        self.path == TricomiPath::IntegerLimit
    }
}

/// `U(a,b,w) = π/sin(πb) [M(a,b,w)/(Γ(1+a−b)Γ(b)) − w^{1−b} M(1+a−b,2−b,w)/(Γ(a)Γ(2−b))]`
/// for non-integer `b`.
fn tricomi_two_kummer(a: f64, b: f64, w: f64) -> Result<f64, HypergeomError> {
    let first = kummer_m(a, b, w)? * rgamma(1.0 + a - b) * rgamma(b);
    let second_weight = rgamma(a) * rgamma(2.0 - b);
    let second = if second_weight == 0.0 {
        0.0
    } else {
        w.powf(1.0 - b) * kummer_m(1.0 + a - b, 2.0 - b, w)? * second_weight
    };
    Ok(PI / sin_pi(b) * (first - second))
}

/// Integer `b`: symmetric offsets `b ± ε` for two values of ε, combined by
/// Richardson extrapolation (the symmetric average has an O(ε²) error).
fn tricomi_integer_limit(a: f64, b: f64, w: f64) -> Result<f64, HypergeomError> {
    let sym = |eps: f64| -> Result<f64, HypergeomError> {
        Ok(0.5 * (tricomi_two_kummer(a, b + eps, w)? + tricomi_two_kummer(a, b - eps, w)?))
    };
    let coarse = sym(LIMIT_OFFSETS[0])?;
    let fine = sym(LIMIT_OFFSETS[1])?;
    let ratio = (LIMIT_OFFSETS[0] / LIMIT_OFFSETS[1]).powi(2);
    Ok((ratio * fine - coarse) / (ratio - 1.0))
}

/// `U(a,b,w) = 1/Γ(a+1) ∫_0^∞ exp(−w s^{1/a}) (1 + s^{1/a})^{b−a−1} ds`, valid
/// for `a > 0`, `w > 0` (the substitution `t = s^{1/a}` of the Laplace form).
pub fn tricomi_u_integral(a: f64, b: f64, w: f64) -> Result<f64, HypergeomError> {
    if a <= 0.0 {
        return Err(HypergeomError::Domain(format!(
            "integral form needs a > 0, got {a}"
        )));
    }
    if w <= 0.0 {
        return Err(HypergeomError::Domain(format!("U needs w > 0, got {w}")));
    }
    let inv_a = 1.0 / a;
    let upper = (80.0 / w).powf(a);
    let integrand = |s: f64| {
        let t = s.powf(inv_a);
        (-w * t).exp() * (1.0 + t).powf(b - a - 1.0)
    };
    let r = quad::integrate(integrand, 0.0, upper, 1e-300, 1e-13)?;
    Ok(r.value * rgamma(a + 1.0))
}

/// Tricomi's function for `w > 0`.
pub fn tricomi_u(a: f64, b: f64, w: f64) -> Result<Tricomi, HypergeomError> {
    if w.is_nan() || w <= 0.0 {
        return Err(HypergeomError::Domain(format!("U needs w > 0, got {w}")));
    }
    if w <= TRICOMI_DIRECT_MAX_W {
        return if b.fract() == 0.0 {
            Ok(Tricomi {
                value: tricomi_integer_limit(a, b, w)?,
                path: TricomiPath::IntegerLimit,
            })
        } else {
            Ok(Tricomi {
                value: tricomi_two_kummer(a, b, w)?,
                path: TricomiPath::Direct,
            })
        };
    }
    if a > 0.0 {
        return Ok(Tricomi {
            value: tricomi_u_integral(a, b, w)?,
            path: TricomiPath::Integral,
        });
    }
    // Kummer transformation U(a,b,w) = w^{1−b} U(1+a−b, 2−b, w)
    let a2 = 1.0 + a - b;
    if a2 > 0.0 {
        return Ok(Tricomi {
            value: w.powf(1.0 - b) * tricomi_u_integral(a2, 2.0 - b, w)?,
            path: TricomiPath::Integral,
        });
    }
    Err(HypergeomError::Range {
        w,
        limit: TRICOMI_DIRECT_MAX_W,
    })
}

/// Relative mismatch between the finite-difference Wronskian `M U′ − M′ U`
/// and the closed form `−Γ(b)/Γ(a) w^{−b} e^w`.
pub fn wronskian_residual(a: f64, b: f64, w: f64) -> Result<f64, HypergeomError> {
    if is_nonpositive_integer(a) {
        return Err(HypergeomError::LinearlyDependent { a });
    }
    if w.is_nan() || w <= 0.0 {
        return Err(HypergeomError::Domain(format!(
            "w must be positive, got {w}"
        )));
    }
    let h = 1e-5 * w.max(1.0);
    let m = |x: f64| kummer_m(a, b, x);
    let u = |x: f64| tricomi_u(a, b, x).map(|t| t.value);
    let (m0, u0) = (m(w)?, u(w)?);
    let dm = (m(w + h)? - m(w - h)?) / (2.0 * h);
    let du = (u(w + h)? - u(w - h)?) / (2.0 * h);
    let lhs = m0 * du - dm * u0;
    let rhs = -gamma(b) * rgamma(a) * w.powf(-b) * w.exp();
    Ok((lhs - rhs).abs() / rhs.abs().max(1.0))
}

/// Reference law used to normalize `M` at large `w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrowthLaw {
    /// `Γ(b)/Γ(a) e^w w^{a−b}`, the dominant term for non-polynomial `a`.
    Exponential,
    /// `w^{−a}`, the Tricomi-like power law (wrong for `M`).
    PowerLaw,
}

impl GrowthLaw {
    fn eval(self, a: f64, b: f64, w: f64) -> f64 {
        match self {
            GrowthLaw::Exponential => gamma(b) * rgamma(a) * w.exp() * w.powf(a - b),
            GrowthLaw::PowerLaw => w.powf(-a),
        }
    }
}

/// Whether `M(a,b,w)` divided by `law` tends to 1 along `w_list`: the
/// distance from 1 must shrink monotonically and be under 10% at the last
/// point.
///
/// For `a = −n` there is no exponential term; the call is refused with the
/// measured power-law exponent (≈ n).
pub fn asymptotic_growth_check(
    a: f64,
    b: f64,
    w_list: &[f64],
    law: GrowthLaw,
) -> Result<bool, HypergeomError> {
    if is_nonpositive_integer(a) {
        let (w1, w2) = (1e4, 1e5);
        let exponent =
            (kummer_m(a, b, w2)?.abs() / kummer_m(a, b, w1)?.abs()).ln() / (w2 / w1).ln();
        return Err(HypergeomError::PolynomialGrowth {
            degree: (-a) as usize,
            exponent,
        });
    }
    if w_list.is_empty() || w_list.windows(2).any(|p| p[0] >= p[1]) || w_list[0] <= 0.0 {
        return Err(HypergeomError::Domain(
            "w_list must be positive and increasing".into(),
        ));
    }
    let mut deviations = Vec::with_capacity(w_list.len());
    for &w in w_list {
        let ratio = kummer_m(a, b, w)? / law.eval(a, b, w);
        deviations.push((ratio - 1.0).abs());
    }
    let monotone = deviations.windows(2).all(|d| d[1] <= d[0]);
    Ok(monotone && deviations.last().is_some_and(|&d| d < 0.1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laguerre::laguerre_eval;
    use std::f64::consts::E;

    #[test]
    fn gamma_helpers() {
        assert!((gamma(5.0) - 24.0).abs() < 1e-12);
        assert!((gamma(0.5) - PI.sqrt()).abs() < 1e-14);
        assert!((gamma(-0.5) + 2.0 * PI.sqrt()).abs() < 1e-13);
        assert_eq!(rgamma(0.0), 0.0);
        assert_eq!(rgamma(-3.0), 0.0);
        assert!(gamma(-2.0).is_infinite());
        // reflection near a pole: Γ has residue 1/2 at −2, so 1/Γ(−2−ε) ≈ −2ε
        let eps = 1e-6;
        assert!((rgamma(-2.0 - eps) / (-2.0 * eps) - 1.0).abs() < 1e-5);
        assert_eq!(sin_pi(3.0), 0.0);
        assert!((sin_pi(2.5) - 1.0).abs() < 1e-16);
        assert!((sin_pi(-0.25) + 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn kummer_examples() {
        for (a, b) in [(0.3, 1.5), (-2.0, 2.0), (4.0, 0.5)] {
            assert_eq!(kummer_m(a, b, 0.0).unwrap(), 1.0);
        }
        assert_eq!(kummer_m(-1.0, 2.0, 2.0).unwrap(), 0.0);
        assert!((kummer_m(1.0, 1.0, 1.0).unwrap() - E).abs() < 1e-15);
        // alternating series: cancellation costs about e^{|w|} ulps
        assert!((kummer_m(1.0, 1.0, -5.0).unwrap() - (-5.0f64).exp()).abs() < 1e-13);
    }

    #[test]
    fn kummer_errors() {
        assert!(matches!(
            kummer_m(0.5, 0.0, 1.0),
            Err(HypergeomError::Domain(_))
        ));
        assert!(matches!(
            kummer_m(0.5, -3.0, 1.0),
            Err(HypergeomError::Domain(_))
        ));
        assert!(matches!(
            kummer_m(0.5, 2.0, 51.0),
            Err(HypergeomError::Range { .. })
        ));
        // polynomial path has no range guard
        assert!(kummer_m(-3.0, 2.0, 1e3).unwrap().is_finite());
    }

    #[test]
    fn kummer_laguerre_identity() {
        // Errors are measured against L_n(−w) = Σ|terms|·(n+1), the absolute
        // scale of the alternating sum, so near-zeros of L_n are not penalised.
        for n in 0..=20usize {
            for i in 0..600 {
                let w = 0.1 + 0.1 * i as f64;
                let lhs = kummer_m(-(n as f64), 2.0, w).unwrap() * (n as f64 + 1.0);
                let rhs = laguerre_eval(n, w);
                let scale = laguerre_eval(n, -w);
                assert!(
                    (lhs - rhs).abs() <= 1e-12 * scale,
                    "n={n} w={w}: {lhs} vs {rhs}"
                );
                if w <= 1.0 {
                    assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs(), "n={n} w={w}");
                }
            }
        }
    }

    #[test]
    fn kummer_solves_confluent_equation() {
        // w f″ + (b − w) f′ − a f = 0 with fourth-order central differences
        let h = 1e-2;
        for (a, b) in [(0.3, 1.5), (-2.0, 2.0), (1.0, 3.0)] {
            for w in [0.5, 1.0, 2.5, 5.0, 9.0] {
                let f = |x: f64| kummer_m(a, b, x).unwrap();
                let (fm2, fm1, f0, fp1, fp2) =
                    (f(w - 2.0 * h), f(w - h), f(w), f(w + h), f(w + 2.0 * h));
                let d1 = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
                let d2 = (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h);
                let res = w * d2 + (b - w) * d1 - a * f0;
                assert!(
                    res.abs() <= 1e-8 * f0.abs().max(1.0),
                    "({a},{b},{w}) res={res}"
                );
            }
        }
    }

    #[test]
    fn tricomi_at_a_zero_is_one() {
        for b in [0.4, 1.5, 2.0, 3.0] {
            for w in [0.5, 3.0, 10.0] {
                let u = tricomi_u(0.0, b, w).unwrap();
                assert!((u.value - 1.0).abs() < 1e-9, "b={b} w={w} {u:?}");
            }
        }
    }

    #[test]
    fn tricomi_integer_b_limit() {
        let u = tricomi_u(1.0, 2.0, 3.0).unwrap();
        assert_eq!(u.path, TricomiPath::IntegerLimit);
        assert!(u.reduced_accuracy());
        assert!((u.value - 1.0 / 3.0).abs() < 1e-6, "{u:?}");
        // independent route
        let integral = tricomi_u_integral(1.0, 2.0, 3.0).unwrap();
        assert!((integral - 1.0 / 3.0).abs() < 1e-12);
        // large-w law U ≈ w^{−a}, exact here
        let far = tricomi_u(1.0, 2.0, 40.0).unwrap();
        assert!((far.value * 40.0 - 1.0).abs() < 1e-10);
    }

    #[test]
    fn direct_and_integral_paths_agree() {
        for (a, b, w) in [(0.3, 1.5, 2.0), (1.7, 0.4, 5.0), (0.6, 2.5, 12.0)] {
            let d = tricomi_u(a, b, w).unwrap();
            assert_eq!(d.path, TricomiPath::Direct);
            let i = tricomi_u_integral(a, b, w).unwrap();
            assert!(
                (d.value - i).abs() < 1e-8 * i.abs(),
                "({a},{b},{w}): {} vs {i}",
                d.value
            );
        }
    }

    #[test]
    fn tricomi_proportional_to_kummer_at_negative_integer_a() {
        let ratios: Vec<f64> = [3.0, 5.0, 10.0]
            .iter()
            .map(|&t| tricomi_u(-1.0, 2.0, t).unwrap().value / kummer_m(-1.0, 2.0, t).unwrap())
            .collect();
        for r in &ratios {
            assert!((r - ratios[0]).abs() < 1e-6, "{ratios:?}");
        }
        // U(−n, b, w) = (−1)^n (b)_n M(−n, b, w)
        assert!((ratios[0] + 2.0).abs() < 1e-6);
    }

    #[test]
    fn tricomi_large_w_power_law() {
        let w = 50.0;
        let u = tricomi_u(0.3, 1.5, w).unwrap();
        assert_eq!(u.path, TricomiPath::Integral);
        assert!((u.value / w.powf(-0.3) - 1.0).abs() < 0.05);
    }

    #[test]
    fn tricomi_domain() {
        assert!(matches!(
            tricomi_u(0.3, 1.5, 0.0),
            Err(HypergeomError::Domain(_))
        ));
        assert!(matches!(
            tricomi_u(0.3, 1.5, -1.0),
            Err(HypergeomError::Domain(_))
        ));
    }

    #[test]
    fn wronskian_examples() {
        assert!(wronskian_residual(0.3, 1.5, 1.0).unwrap() < 1e-6);
        assert!(wronskian_residual(0.7, 0.4, 2.0).unwrap() < 1e-6);
        assert_eq!(
            wronskian_residual(-1.0, 2.0, 1.0),
            Err(HypergeomError::LinearlyDependent { a: -1.0 })
        );
    }

    #[test]
    fn wronskian_grid() {
        for a in [0.3, 0.7, 1.6] {
            for b in [0.4, 1.5, 2.5] {
                for w in [0.5, 1.0, 2.0] {
                    let r = wronskian_residual(a, b, w).unwrap();
                    assert!(r < 1e-6, "({a},{b},{w}) residual {r}");
                }
            }
        }
    }

    #[test]
    fn asymptotics() {
        assert!(
            asymptotic_growth_check(0.5, 2.0, &[10.0, 20.0, 40.0], GrowthLaw::Exponential).unwrap()
        );
        assert!(!asymptotic_growth_check(0.5, 2.0, &[40.0], GrowthLaw::PowerLaw).unwrap());
        match asymptotic_growth_check(-1.0, 2.0, &[10.0, 20.0], GrowthLaw::Exponential) {
            Err(HypergeomError::PolynomialGrowth { degree, exponent }) => {
                assert_eq!(degree, 1);
                assert!((exponent - 1.0).abs() < 1e-3);
            }
            other => panic!("{other:?}"),
        }
        match asymptotic_growth_check(-4.0, 2.0, &[10.0], GrowthLaw::Exponential) {
            Err(HypergeomError::PolynomialGrowth { degree, exponent }) => {
                assert_eq!(degree, 4);
                assert!((exponent - 4.0).abs() < 1e-2);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn confluent_params() {
        let p = ConfluentParams::new(-2.0, 1).unwrap();
        assert_eq!(p.b(), 2.0);
        assert!(p.is_evaluable());
        assert!((p.kummer(1.0).unwrap() * 3.0 - laguerre_eval(2, 1.0)).abs() < 1e-14);
        let q = ConfluentParams::new(0.5, -1).unwrap();
        assert_eq!(q.b(), 0.0);
        assert!(!q.is_evaluable());
        assert_eq!(q.kummer(1.0), Err(HypergeomError::UnsupportedBranch));
        assert!(ConfluentParams::new(0.5, 0).is_err());
        // a = −n from g ε² = 4(n+1)
        let g: f64 = 0.5;
        let eps = (4.0 * 3.0 / g).sqrt();
        let r = ConfluentParams::from_coupling(g, eps, 1).unwrap();
        assert!((r.a() + 2.0).abs() < 1e-14);
    }
}
