use super::{make_state, EnergySign, Parity, QuasiExactState, SpectrumError};

/// Spatial extent of a sampled table.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum XExtent {
    /// Grow the half-width until `|φ|` falls below 1e-10 of its peak.
    Auto,
    /// Half-width in physical length units.
    Fixed(f64),
}

const AUTO_DECAY: f64 = 1e-10;

/// Whole-line samples of the wavefunction components and current.
///
/// The scalar reduced problem serves both spin sectors; the components that
/// vanish identically are listed in [`Self::SPIN0_NULL_COMPONENTS`] and
/// [`Self::SPIN1_NULL_COMPONENTS`].
#[derive(Clone, Debug, PartialEq)]
pub struct EigenfunctionTable {
    pub n: usize,
    pub parity: Parity,
    pub zeta: f64,
    pub m: f64,
    pub energy: f64,
    pub norm: f64,
    /// When set, `x` is in units of λ_C and the amplitudes carry a factor
    /// `√λ_C` (`λ_C` for the currents), so the columns are dimensionless.
    pub scaled: bool,
    pub x: Vec<f64>,
    pub phi: Vec<f64>,
    /// `φ₂ = E φ/(m + S)`.
    pub phi2: Vec<f64>,
    /// Imaginary part of `φ₃ = (i/(m + S)) dφ/dx`; the real part is zero.
    pub phi3_im: Vec<f64>,
    pub j0: Vec<f64>,
    pub j1: Vec<f64>,
}

impl EigenfunctionTable {
    /// Spinor components (1-based) that vanish in the spin-0 sector.
    pub const SPIN0_NULL_COMPONENTS: [usize; 2] = [4, 5];
    /// Spinor component (1-based) that vanishes in the spin-1 sector.
    pub const SPIN1_NULL_COMPONENTS: [usize; 1] = [8];

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    /// Dimensionless copy: `x/λ_C`, `√λ_C φ`, `√λ_C φ₂`, `√λ_C φ₃`, `λ_C J`.
    pub fn scaled(&self) -> Self {
        if self.scaled {
            return self.clone();
        }
        let lc = 1.0 / self.m;
        let amp = lc.sqrt();
        let map = |v: &[f64], k: f64| v.iter().map(|x| x * k).collect::<Vec<_>>();
        Self {
            scaled: true,
            x: map(&self.x, 1.0 / lc),
            phi: map(&self.phi, amp),
            phi2: map(&self.phi2, amp),
            phi3_im: map(&self.phi3_im, amp),
            j0: map(&self.j0, lc),
            j1: map(&self.j1, lc),
            ..self.clone()
        }
    }

    /// Sign changes of φ across the grid.
    pub fn nodes(&self) -> usize {
        count_nodes(&self.phi)
    }
}

/// Number of sign changes between successive nonzero samples. An exact zero
/// between opposite signs (the odd-parity origin) counts once; an even
/// function touching zero does not count.
pub fn count_nodes(values: &[f64]) -> usize {
    let mut last = 0.0f64;
    let mut count = 0;
    for &v in values {
        if v == 0.0 || v.is_nan() {
            continue;
        }
        if last != 0.0 && v.signum() != last.signum() {
            count += 1;
        }
        last = v;
    }
    count
}

fn auto_half_width(state: &QuasiExactState) -> f64 {
    let lc = state.params().lambda_c();
    let mut peak = 0.0f64;
    let mut scanned = 0.0;
    let mut x = lc;
    loop {
        let probe = 1.5 * x;
        let steps = 64;
        for i in 0..=steps {
            let r = scanned + (probe - scanned) * i as f64 / steps as f64;
            peak = peak.max(state.phi_half(r).abs());
        }
        scanned = probe;
        let tail = (0..=16)
            .map(|i| state.phi_half(x + (probe - x) * i as f64 / 16.0).abs())
            .fold(0.0, f64::max);
        if tail < AUTO_DECAY * peak || x > state.support_radius() {
            return x;
        }
        x *= 1.1;
    }
}

/// Samples `state` on a symmetric grid of `samples` points over
/// `[−x_max, x_max]`. The grid is mirrored exactly, so `φ(−x) = ±φ(x)` holds
/// bit for bit.
pub fn eigenfunction_table(
    state: &QuasiExactState,
    extent: XExtent,
    samples: usize,
) -> Result<EigenfunctionTable, SpectrumError> {
    if !(state.norm().is_finite() && state.norm() > 0.0) {
        return Err(SpectrumError::Unnormalized);
    }
    if samples < 2 {
        return Err(SpectrumError::InvalidParams(format!(
            "samples must be >= 2, got {samples}"
        )));
    }
    let x_max = match extent {
        XExtent::Auto => auto_half_width(state),
        XExtent::Fixed(x) if x.is_finite() && x > 0.0 => x,
        XExtent::Fixed(x) => {
            return Err(SpectrumError::InvalidParams(format!(
                "x_max must be positive, got {x}"
            )))
        }
    };
    let step = 2.0 * x_max / (samples - 1) as f64;
    let mut x = vec![0.0; samples];
    for i in 0..samples / 2 {
        let v = -x_max + step * i as f64;
        x[i] = v;
        x[samples - 1 - i] = -v;
    }

    let params = state.params();
    let e = state.energy();
    let mut table = EigenfunctionTable {
        n: state.n(),
        parity: state.parity(),
        zeta: state.zeta(),
        m: params.m(),
        energy: e,
        norm: state.norm(),
        scaled: false,
        x: Vec::with_capacity(samples),
        phi: Vec::with_capacity(samples),
        phi2: Vec::with_capacity(samples),
        phi3_im: Vec::with_capacity(samples),
        j0: Vec::with_capacity(samples),
        j1: Vec::with_capacity(samples),
    };
    for xi in x {
        let mass = params.effective_mass(xi);
        let phi = state.phi(xi);
        let dphi = state.dphi(xi);
        table.x.push(xi);
        table.phi.push(phi);
        table.phi2.push(e * phi / mass);
        table.phi3_im.push(dphi / mass);
        table.j0.push(e * phi * phi / mass);
        // Im(φ* φ′) of real functions
        table.j1.push(0.0 * phi * dphi / mass);
    }
    Ok(table)
}

/// Plot data for ζ = 2: the even n = 0 and odd n = 1 states, scaled.
#[derive(Clone, Debug, PartialEq)]
pub struct Figure1 {
    pub x_over_lambda_c: Vec<f64>,
    pub phi_n0_scaled: Vec<f64>,
    pub phi_n1_scaled: Vec<f64>,
}

pub const FIGURE1_RANGE: f64 = 6.0;
pub const FIGURE1_SAMPLES: usize = 601;

/// Builds the ζ = 2 figure data over `x/λ_C ∈ [−6, 6]` with 601 samples.
/// The scaled output does not depend on `m`.
pub fn figure1(m: f64) -> Result<Figure1, SpectrumError> {
    let even = make_state(0, Parity::Even, 0, EnergySign::Positive, m)?;
    let odd = make_state(1, Parity::Odd, 0, EnergySign::Positive, m)?;
    let extent = XExtent::Fixed(FIGURE1_RANGE * even.params().lambda_c());
    let t0 = eigenfunction_table(&even, extent, FIGURE1_SAMPLES)?.scaled();
    let t1 = eigenfunction_table(&odd, extent, FIGURE1_SAMPLES)?.scaled();
    Ok(Figure1 {
        x_over_lambda_c: t0.x,
        phi_n0_scaled: t0.phi,
        phi_n1_scaled: t1.phi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(n: usize, parity: Parity, idx: usize, m: f64) -> EigenfunctionTable {
        let s = make_state(n, parity, idx, EnergySign::Positive, m).unwrap();
        eigenfunction_table(&s, XExtent::Auto, 501).unwrap()
    }

    #[test]
    fn node_counts_for_zeta_two() {
        let t0 = table(0, Parity::Even, 0, 1.0);
        assert_eq!(t0.nodes(), 0);
        let t1 = table(1, Parity::Odd, 0, 1.0);
        assert_eq!(t1.nodes(), 1);
        assert_eq!(t1.phi[250], 0.0);
        assert_eq!(t1.x[250], 0.0);
    }

    #[test]
    fn parity_is_exact() {
        for (n, parity, idx) in [
            (0, Parity::Even, 0),
            (1, Parity::Odd, 0),
            (2, Parity::Even, 1),
            (2, Parity::Odd, 1),
        ] {
            let t = table(n, parity, idx, 1.7);
            let k = t.len();
            for i in 0..k {
                assert_eq!(t.x[i], -t.x[k - 1 - i]);
                match parity {
                    Parity::Even => assert_eq!(t.phi[i], t.phi[k - 1 - i]),
                    Parity::Odd => assert_eq!(t.phi[i], -t.phi[k - 1 - i]),
                }
            }
        }
    }

    #[test]
    fn currents() {
        for sign in [EnergySign::Positive, EnergySign::Negative] {
            let s = make_state(1, Parity::Even, 0, sign, 1.0).unwrap();
            let t = eigenfunction_table(&s, XExtent::Fixed(5.0), 201).unwrap();
            assert!(t.j1.iter().all(|&v| v == 0.0));
            assert!(t
                .j0
                .iter()
                .all(|&v| v == 0.0 || v.signum() == s.energy().signum()));
        }
    }

    #[test]
    fn component_consistency() {
        let s = make_state(2, Parity::Odd, 0, EnergySign::Positive, 2.0).unwrap();
        let t = eigenfunction_table(&s, XExtent::Auto, 301).unwrap();
        let p = s.params();
        for i in 0..t.len() {
            let mass = p.effective_mass(t.x[i]);
            let tol = 1e-10 * t.phi[i].abs().max(1e-300);
            assert!(
                (t.phi2[i] * mass - t.energy * t.phi[i]).abs() <= tol.max(1e-10 * s.norm() * 1e-6)
            );
            let d = s.dphi(t.x[i]);
            assert!((t.phi3_im[i] * mass - d).abs() <= 1e-10 * d.abs().max(1e-300) + 1e-300);
        }
    }

    #[test]
    fn auto_extent_reaches_decay() {
        let s = make_state(3, Parity::Even, 1, EnergySign::Positive, 1.0).unwrap();
        let t = eigenfunction_table(&s, XExtent::Auto, 1001).unwrap();
        let peak = t.phi.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        assert!(t.phi[0].abs() < 1e-10 * peak);
        assert!(t.phi[t.len() - 1].abs() < 1e-10 * peak);
    }

    #[test]
    fn rejects_bad_inputs() {
        let s = make_state(0, Parity::Even, 0, EnergySign::Positive, 1.0).unwrap();
        assert!(eigenfunction_table(&s, XExtent::Auto, 1).is_err());
        assert!(eigenfunction_table(&s, XExtent::Fixed(-1.0), 11).is_err());
    }

    #[test]
    fn node_counter() {
        assert_eq!(count_nodes(&[1.0, 2.0, 0.0, 3.0]), 0);
        assert_eq!(count_nodes(&[-1.0, 0.0, 1.0]), 1);
        assert_eq!(count_nodes(&[-1.0, 1.0, -1.0, 0.0, 0.0]), 2);
        assert_eq!(count_nodes(&[]), 0);
    }

    #[test]
    fn figure_is_mass_independent() {
        let a = figure1(1.0).unwrap();
        let b = figure1(3.0).unwrap();
        assert_eq!(a.x_over_lambda_c.len(), 601);
        for i in 0..601 {
            assert!((a.x_over_lambda_c[i] - b.x_over_lambda_c[i]).abs() < 1e-12);
            assert!((a.phi_n0_scaled[i] - b.phi_n0_scaled[i]).abs() < 1e-12);
            assert!((a.phi_n1_scaled[i] - b.phi_n1_scaled[i]).abs() < 1e-12);
        }
        assert_eq!(a.x_over_lambda_c[0], -6.0);
        assert_eq!(a.x_over_lambda_c[300], 0.0);
        assert_eq!(a.phi_n1_scaled[300], 0.0);
        assert_eq!(count_nodes(&a.phi_n0_scaled), 0);
        assert_eq!(count_nodes(&a.phi_n1_scaled), 1);
    }
}
