use super::{
    root_residual, t_of_x, zeta_roots, EnergySign, ModelParams, Parity, SpectrumError,
    ROOT_RESIDUAL_TOL,
};
use crate::laguerre::{laguerre_coeffs, laguerre_pair};
use crate::quad;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{float::FloatCore, One, ToPrimitive, Zero};

/// Relative agreement required between the closed-form and quadrature
/// values of δ.
const DELTA_CROSS_CHECK: f64 = 1e-10;

/// `E_n = ±2m√(n+1)/√ζ`.
pub fn energy(n: usize, zeta: f64, m: f64, sign: EnergySign) -> f64 {
    sign.factor() * 2.0 * m * (n as f64 + 1.0).sqrt() / zeta.sqrt()
}

/// `(φ(0⁺), dφ/dx(0⁺))` for the half-line solution with normalization `norm`.
pub fn boundary_values(n: usize, zeta: f64, m: f64, norm: f64) -> (f64, f64) {
    let (ln, lm) = laguerre_pair(n, zeta);
    let k = n as f64 + 1.0;
    let decay = (-zeta / 2.0).exp();
    let phi0 = norm * zeta * decay * ln;
    // λ_C = 1/m
    let dphi0 = 2.0 * norm * decay * k * m * ((1.0 - zeta / (2.0 * k)) * ln - lm);
    (phi0, dphi0)
}

/// Upper cut-off in t beyond which `t^{2n+1} e^{−t}` is negligible.
fn t_cutoff(n: usize, zeta: f64) -> f64 {
    zeta + 4.0 * (2.0 * n as f64 + 1.0) + 120.0
}

/// `δ = ∫_ζ^∞ t e^{−t} L_n(t)² dt`, exact up to the final rounding.
///
/// `t L_n(t)²` is expanded in powers `t^k`, and `Γ(k+1, ζ) = e^{−ζ} G_k` with
/// `G_0 = 1`, `G_k = k G_{k−1} + ζ^k` (the upper-incomplete-gamma
/// recurrence). The sum `Σ s_k G_k` is formed in exact rational arithmetic on
/// the binary value of ζ, so the alternating coefficients cannot cancel.
pub fn delta_closed_form(n: usize, zeta: f64) -> f64 {
    let lag = laguerre_coeffs(n);
    let c = lag.scaled_coeffs();
    let top = 2 * n + 1;
    // s_k: coefficients of t·(Σ c_j t^j)², k = 1..=2n+1
    let mut s = vec![BigInt::zero(); top + 1];
    for (i, ci) in c.iter().enumerate() {
        for (j, cj) in c.iter().enumerate() {
            s[i + j + 1] += ci * cj;
        }
    }
    // ζ = p / 2^e exactly
    let (mantissa, exponent, _) = zeta.integer_decode();
    let (p, e) = if exponent >= 0 {
        (BigInt::from(mantissa) << exponent as usize, 0usize)
    } else {
        (BigInt::from(mantissa), (-exponent) as usize)
    };
    // H_k = G_k · 2^{ek} is an integer: H_k = k·2^e·H_{k−1} + p^k
    let mut h = BigInt::one();
    let mut p_pow = BigInt::one();
    let mut numerator = BigInt::zero();
    for (k, sk) in s.iter().enumerate().skip(1) {
        p_pow *= &p;
        h = (h * k) << e;
        h += &p_pow;
        numerator += (sk * &h) << (e * (top - k));
    }
    let denominator = (lag.denominator() * lag.denominator()) << (e * top);
    let sum = BigRational::new(numerator, denominator)
        .to_f64()
        .unwrap_or(f64::NAN);
    sum * (-zeta).exp()
}

/// δ by adaptive Gauss–Kronrod quadrature, an independent check of
/// [`delta_closed_form`].
pub fn delta_quadrature(n: usize, zeta: f64) -> Result<f64, SpectrumError> {
    let f = |t: f64| {
        let l = laguerre_pair(n, t).0;
        t * (-t).exp() * l * l
    };
    Ok(quad::integrate(f, zeta, t_cutoff(n, zeta), 1e-300, 1e-13)?.value)
}

/// One quasi-exact solution with its normalization.
#[derive(Clone, Debug, PartialEq)]
pub struct QuasiExactState {
    n: usize,
    parity: Parity,
    sign: EnergySign,
    params: ModelParams,
    root_index: Option<usize>,
    energy: f64,
    delta: f64,
    norm: f64,
    residual: f64,
}

/// Builds the state selected by `root_index` among the roots of the parity
/// condition, with ζ taken from that root and λ = m²/ζ.
pub fn make_state(
    n: usize,
    parity: Parity,
    root_index: usize,
    sign: EnergySign,
    m: f64,
) -> Result<QuasiExactState, SpectrumError> {
    let roots = zeta_roots(n, parity)?;
    if roots.is_empty() {
        return Err(SpectrumError::EmptyRootSet { n, parity });
    }
    let zeta = *roots.get(root_index).ok_or(SpectrumError::RootIndex {
        n,
        parity,
        index: root_index,
        available: roots.len(),
    })?;
    let mut state = QuasiExactState::at_zeta(n, parity, zeta, sign, m)?;
    state.root_index = Some(root_index);
    Ok(state)
}

impl QuasiExactState {
    /// A state at an arbitrary ζ. Unless ζ satisfies the parity condition
    /// this is not an eigenfunction on the whole line; it exists for
    /// negative controls.
    pub fn at_zeta(
        n: usize,
        parity: Parity,
        zeta: f64,
        sign: EnergySign,
        m: f64,
    ) -> Result<Self, SpectrumError> {
        let params = ModelParams::from_zeta(m, zeta)?;
        let energy = energy(n, zeta, m, sign);
        let (delta, norm) = normalize(n, &params, energy)?;
        Ok(Self {
            n,
            parity,
            sign,
            params,
            root_index: None,
            energy,
            delta,
            norm,
            residual: root_residual(parity, n, zeta),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn sign(&self) -> EnergySign {
        self.sign
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn zeta(&self) -> f64 {
        self.params.zeta()
    }

    pub fn root_index(&self) -> Option<usize> {
        self.root_index
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }

    /// Dimensionless energy ε = E/(g m).
    pub fn epsilon(&self) -> f64 {
        self.energy / (self.params.g() * self.params.m())
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn norm(&self) -> f64 {
        self.norm
    }

    /// Residual of the parity condition (see [`root_residual`]).
    pub fn condition_residual(&self) -> f64 {
        self.residual
    }

    pub fn is_quantized(&self) -> bool {
        self.residual < ROOT_RESIDUAL_TOL
    }

    /// `φ(0⁺)` and `dφ/dx(0⁺)` with this state's normalization.
    pub fn boundary_values(&self) -> (f64, f64) {
        boundary_values(self.n, self.zeta(), self.params.m(), self.norm)
    }

    /// Half-line solution `N t e^{−t/2} L_n(t)` at distance `r ≥ 0`.
    pub fn phi_half(&self, r: f64) -> f64 {
        let t = t_of_x(r, &self.params);
        self.norm * t * (-t / 2.0).exp() * laguerre_pair(self.n, t).0
    }

    /// `d/dr` of [`phi_half`](Self::phi_half), analytic through the
    /// derivative identity `w L′ = n L_n − (n+1) L_{n−1}`.
    pub fn dphi_half(&self, r: f64) -> f64 {
        let t = t_of_x(r, &self.params);
        let k = self.n as f64 + 1.0;
        let (ln, lm) = laguerre_pair(self.n, t);
        let dphi_dt = self.norm * (-t / 2.0).exp() * k * ((1.0 - t / (2.0 * k)) * ln - lm);
        let dt_dr = 2.0 * (t / self.zeta()).sqrt() / self.params.lambda_c();
        dphi_dt * dt_dr
    }

    /// Whole-line eigenfunction.
    pub fn phi(&self, x: f64) -> f64 {
        self.parity.extension_sign(x) * self.phi_half(x.abs())
    }

    pub fn dphi(&self, x: f64) -> f64 {
        match self.parity {
            Parity::Even => Parity::Odd.extension_sign(x) * self.dphi_half(x.abs()),
            Parity::Odd => self.dphi_half(x.abs()),
        }
    }

    /// `J⁰ = E φ²/(m + S)`.
    pub fn charge_density(&self, x: f64) -> f64 {
        let phi = self.phi(x);
        self.energy * phi * phi / self.params.effective_mass(x)
    }

    /// Distance beyond which the state is numerically zero.
    pub fn support_radius(&self) -> f64 {
        let t = t_cutoff(self.n, self.zeta());
        self.params.lambda_c() * self.zeta() * ((t / self.zeta()).sqrt() - 1.0)
    }

    /// `∫ J⁰ dx` over the whole line by adaptive quadrature; equals
    /// `sign(E)` for a normalized state.
    pub fn charge_integral(&self) -> Result<f64, SpectrumError> {
        let half = quad::integrate(
            |r| self.charge_density(r.max(0.0)),
            0.0,
            self.support_radius(),
            1e-300,
            1e-13,
        )?;
        Ok(2.0 * half.value)
    }
}

/// `(δ, N)` with `N = √(λ/(δ|E|))`, so that `∫J⁰ dx = sign(E)`.
fn normalize(n: usize, params: &ModelParams, energy: f64) -> Result<(f64, f64), SpectrumError> {
    let closed = delta_closed_form(n, params.zeta());
    let quadrature = delta_quadrature(n, params.zeta())?;
    if closed.is_nan()
        || closed <= 0.0
        || ((closed - quadrature) / closed).abs() > DELTA_CROSS_CHECK
    {
        return Err(SpectrumError::NormalizationMismatch { closed, quadrature });
    }
    let norm = (params.lambda() / (closed * energy.abs())).sqrt();
    Ok((closed, norm))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn energies() {
        assert!((energy(0, 2.0, 1.0, EnergySign::Positive) - 2f64.sqrt()).abs() < 1e-15);
        assert!((energy(1, 2.0, 1.0, EnergySign::Positive) - 2.0).abs() < 1e-15);
        assert!((energy(0, 2.0, 1.0, EnergySign::Negative) + 2f64.sqrt()).abs() < 1e-15);
        // E²ζ = 4m²(n+1)
        for (n, z, m) in [(0usize, 2.0, 1.0), (3, 0.7, 2.5), (10, 13.0, 0.3)] {
            let e = energy(n, z, m, EnergySign::Positive);
            assert!((e * e * z / (4.0 * m * m * (n as f64 + 1.0)) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn boundary_value_examples() {
        let (p, d) = boundary_values(0, 2.0, 1.0, 1.0);
        assert_eq!(d, 0.0);
        assert!(p > 0.0);
        let (p, _) = boundary_values(1, 2.0, 1.0, 1.0);
        assert_eq!(p, 0.0);
        let (p, d) = boundary_values(0, 1.0, 1.0, 1.0);
        assert!(p != 0.0 && d != 0.0);
        // bracket = 1/2 at ζ = 1, n = 0
        assert!((d - 2.0 * (-0.5f64).exp() * 0.5).abs() < 1e-15);
    }

    #[test]
    fn delta_n0_zeta2() {
        let exact = 3.0 * (-2.0f64).exp();
        assert!((delta_closed_form(0, 2.0) - exact).abs() < 1e-15);
        assert!((delta_quadrature(0, 2.0).unwrap() - exact).abs() < 1e-14);
        assert!((exact - 0.406_005_849_7).abs() < 1e-10);
    }

    #[test]
    fn delta_closed_form_against_quadrature() {
        for n in [0usize, 1, 2, 5, 10, 25] {
            for z in [0.3, 1.7, 2.0, 6.25, 17.0] {
                let a = delta_closed_form(n, z);
                let b = delta_quadrature(n, z).unwrap();
                assert!(((a - b) / a).abs() < 1e-10, "n={n} z={z}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn delta_at_large_n_is_positive() {
        let z = odd_root(60, 3);
        let d = delta_closed_form(60, z);
        assert!(d > 0.0 && d.is_finite());
        let q = delta_quadrature(60, z).unwrap();
        assert!(((d - q) / d).abs() < 1e-10, "{d} vs {q}");
    }

    fn odd_root(n: usize, k: usize) -> f64 {
        crate::laguerre::laguerre_roots(n).unwrap()[k]
    }

    #[test]
    fn ground_state_normalization() {
        let s = make_state(0, Parity::Even, 0, EnergySign::Positive, 1.0).unwrap();
        assert_eq!(s.zeta(), 2.0);
        assert_eq!(s.params().lambda(), 0.5);
        assert!((s.energy() - 2f64.sqrt()).abs() < 1e-15);
        assert!((s.norm() - 0.9332).abs() < 1e-4);
        let expected = (0.5 / (3.0 * (-2.0f64).exp() * 2f64.sqrt())).sqrt();
        assert!((s.norm() - expected).abs() < 1e-15);
        assert!((s.charge_integral().unwrap() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn negative_energy_normalizes_to_minus_one() {
        let s = make_state(1, Parity::Even, 1, EnergySign::Negative, 1.3).unwrap();
        assert!(s.energy() < 0.0);
        assert!((s.charge_integral().unwrap() + 1.0).abs() < 1e-8);
    }

    #[test]
    fn state_selection_errors() {
        assert_eq!(
            make_state(0, Parity::Odd, 0, EnergySign::Positive, 1.0),
            Err(SpectrumError::EmptyRootSet {
                n: 0,
                parity: Parity::Odd
            })
        );
        assert!(matches!(
            make_state(1, Parity::Even, 2, EnergySign::Positive, 1.0),
            Err(SpectrumError::RootIndex { available: 2, .. })
        ));
        let s = make_state(2, Parity::Odd, 1, EnergySign::Positive, 1.0).unwrap();
        assert!((s.zeta() - (3.0 + 3f64.sqrt())).abs() < 1e-14);
        assert_eq!(s.root_index(), Some(1));
        assert!(s.is_quantized());
    }

    #[test]
    fn unquantized_state_reports_residual() {
        let s = QuasiExactState::at_zeta(0, Parity::Even, 1.0, EnergySign::Positive, 1.0).unwrap();
        assert!(!s.is_quantized());
        assert!((s.condition_residual() - 0.5).abs() < 1e-15);
        assert_eq!(s.root_index(), None);
    }

    #[test]
    fn epsilon_matches_definition() {
        let s = make_state(1, Parity::Odd, 0, EnergySign::Positive, 2.0).unwrap();
        let g = s.params().lambda() / (s.params().m() * s.params().m());
        assert!((s.epsilon() - s.energy() / (g * s.params().m())).abs() < 1e-12);
        // a = 1 − gε²/4 = −n
        assert!((1.0 - g * s.epsilon().powi(2) / 4.0 + 1.0).abs() < 1e-12);
    }

    #[test]
    fn analytic_derivative_matches_differences() {
        for (n, parity, idx) in [
            (0, Parity::Even, 0),
            (1, Parity::Odd, 0),
            (2, Parity::Even, 2),
        ] {
            let s = make_state(n, parity, idx, EnergySign::Positive, 1.0).unwrap();
            for x in [-3.1, -0.7, 0.4, 1.9, 4.5] {
                let h = 1e-4;
                let fd = (s.phi(x - 2.0 * h) - 8.0 * s.phi(x - h) + 8.0 * s.phi(x + h)
                    - s.phi(x + 2.0 * h))
                    / (12.0 * h);
                let scale = s.dphi(x).abs().max(s.norm());
                assert!((fd - s.dphi(x)).abs() < 1e-8 * scale, "n={n} x={x}");
            }
        }
    }
}
