use super::{Parity, SpectrumError};
use crate::laguerre::{laguerre_derivative, laguerre_pair, laguerre_roots};

/// Residual bound for a returned quantization root.
pub const ROOT_RESIDUAL_TOL: f64 = 1e-10;

const MAX_BISECTIONS: usize = 200;

/// `P(ζ) = (2(n+1) − ζ) L_n(ζ) − 2(n+1) L_{n−1}(ζ)`, the even-parity
/// condition with the denominator `L_n(ζ)` cleared. Degree n + 1.
pub fn even_polynomial(n: usize, zeta: f64) -> f64 {
    let k = 2.0 * (n as f64 + 1.0);
    let (ln, lm) = laguerre_pair(n, zeta);
    (k - zeta) * ln - k * lm
}

fn even_polynomial_derivative(n: usize, zeta: f64) -> f64 {
    let k = 2.0 * (n as f64 + 1.0);
    let (ln, _) = laguerre_pair(n, zeta);
    let dn = laguerre_derivative(n, zeta);
    let dm = if n == 0 {
        0.0
    } else {
        laguerre_derivative(n - 1, zeta)
    };
    -ln + (k - zeta) * dn - k * dm
}

/// `|1 − ζ/(2(n+1)) − L_{n−1}(ζ)/L_n(ζ)|`.
pub fn even_condition_residual(n: usize, zeta: f64) -> f64 {
    let (ln, lm) = laguerre_pair(n, zeta);
    (1.0 - zeta / (2.0 * (n as f64 + 1.0)) - lm / ln).abs()
}

/// `|L_n(ζ)|`.
pub fn odd_condition_residual(n: usize, zeta: f64) -> f64 {
    laguerre_pair(n, zeta).0.abs()
}

/// Residual normalised so that [`ROOT_RESIDUAL_TOL`] applies to both
/// parities. The odd residual is divided by `(n + 1)·max(1, |ζ L_n′(ζ)|)`:
/// near the largest zeros `|L_n′|` is so steep that the nearest double to
/// the true root already leaves `|L_n| ≫ 1e−10`.
pub fn root_residual(parity: Parity, n: usize, zeta: f64) -> f64 {
    match parity {
        Parity::Even => even_condition_residual(n, zeta),
        Parity::Odd => {
            let slope = (zeta * laguerre_derivative(n, zeta)).abs().max(1.0);
            odd_condition_residual(n, zeta) / ((n as f64 + 1.0) * slope)
        }
    }
}

/// Positive roots of the even-parity condition, increasing.
///
/// `P` is proportional to `d/dt[t e^{−t/2} L_n(t)]`, so by Rolle its n + 1
/// roots interlace with `0 < r_1 < … < r_n` (the zeros of `L_n`) and one lies
/// beyond `r_n`. Each bracket is bisected and then Newton-polished.
pub fn even_zeta_roots(n: usize) -> Result<Vec<f64>, SpectrumError> {
    let lag = laguerre_roots(n)?;
    let mut edges = Vec::with_capacity(n + 2);
    edges.push(0.0);
    edges.extend_from_slice(&lag);
    let last = *edges.last().unwrap_or(&0.0);
    let mut upper = 4.0 * (n as f64 + 1.0) + 10.0;
    let last_sign = even_polynomial(n, last).signum();
    while even_polynomial(n, upper).signum() == last_sign {
        upper *= 2.0;
        if !upper.is_finite() {
            return Err(SpectrumError::Bracket { n, index: n });
        }
    }
    edges.push(upper);

    let mut roots = Vec::with_capacity(n + 1);
    for (index, pair) in edges.windows(2).enumerate() {
        let root = bisect(n, pair[0], pair[1]).ok_or(SpectrumError::Bracket { n, index })?;
        // spurious roots shared with L_n would make the rational form undefined
        let (ln, lm) = laguerre_pair(n, root);
        if ln == 0.0 || (ln.abs() <= 1e-14 * lm.abs()) {
            continue;
        }
        roots.push(root);
    }
    Ok(roots)
}

fn bisect(n: usize, lo: f64, hi: f64) -> Option<f64> {
    let (mut a, mut b) = (lo, hi);
    let fa = even_polynomial(n, a);
    let fb = even_polynomial(n, b);
    if fa == 0.0 {
        return Some(a);
    }
    if fb == 0.0 {
        return Some(b);
    }
    if fa.signum() == fb.signum() {
        return None;
    }
    let sa = fa.signum();
    for _ in 0..MAX_BISECTIONS {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let fm = even_polynomial(n, mid);
        if fm == 0.0 {
            return Some(mid);
        }
        if fm.signum() == sa {
            a = mid;
        } else {
            b = mid;
        }
    }
    let mut x = 0.5 * (a + b);
    // one or two Newton steps, kept only while they stay inside the bracket
    for _ in 0..2 {
        let step = even_polynomial(n, x) / even_polynomial_derivative(n, x);
        let next = x - step;
        if !(step.is_finite() && next >= lo && next <= hi) {
            break;
        }
        if even_polynomial(n, next).abs() <= even_polynomial(n, x).abs() {
            x = next;
        }
    }
    Some(x)
}

/// Zeros of `L_n^{(1)}`: the odd-parity roots.
pub fn odd_zeta_roots(n: usize) -> Result<Vec<f64>, SpectrumError> {
    Ok(laguerre_roots(n)?)
}

pub fn zeta_roots(n: usize, parity: Parity) -> Result<Vec<f64>, SpectrumError> {
    match parity {
        Parity::Even => even_zeta_roots(n),
        Parity::Odd => odd_zeta_roots(n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: dense sign-change scan of P on (0, 4(n+1)+10].
    fn scan_roots(n: usize) -> Vec<f64> {
        let hi = 4.0 * (n as f64 + 1.0) + 10.0;
        let steps = 20_000;
        let mut out = Vec::new();
        let mut prev_x = 1e-9;
        let mut prev = even_polynomial(n, prev_x);
        for i in 1..=steps {
            let x = hi * i as f64 / steps as f64;
            let f = even_polynomial(n, x);
            if f.signum() != prev.signum() {
                let (mut a, mut b) = (prev_x, x);
                for _ in 0..200 {
                    let mid = 0.5 * (a + b);
                    if even_polynomial(n, mid).signum() == prev.signum() {
                        a = mid;
                    } else {
                        b = mid;
                    }
                }
                out.push(0.5 * (a + b));
            }
            prev = f;
            prev_x = x;
        }
        out
    }

    #[test]
    fn even_low_order() {
        assert_eq!(even_zeta_roots(0).unwrap(), vec![2.0]);
        let r1 = even_zeta_roots(1).unwrap();
        let s5 = 5f64.sqrt();
        assert_eq!(r1.len(), 2);
        assert!((r1[0] - (3.0 - s5)).abs() < 1e-14);
        assert!((r1[1] - (3.0 + s5)).abs() < 1e-14);
        assert!((r1[0] - 0.763_932_022_5).abs() < 1e-10);
        assert!((r1[1] - 5.236_067_977_5).abs() < 1e-10);
    }

    #[test]
    fn even_n2_against_scan() {
        let r = even_zeta_roots(2).unwrap();
        let oracle = scan_roots(2);
        assert_eq!(r.len(), 3);
        assert_eq!(oracle.len(), 3);
        for (a, b) in r.iter().zip(&oracle) {
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
            assert!(even_condition_residual(2, *a) < ROOT_RESIDUAL_TOL);
        }
    }

    #[test]
    fn even_roots_agree_with_scan_up_to_8() {
        for n in 0..=8 {
            let r = even_zeta_roots(n).unwrap();
            let oracle = scan_roots(n);
            assert_eq!(r.len(), n + 1, "n={n}");
            assert_eq!(oracle.len(), n + 1, "n={n}");
            for (a, b) in r.iter().zip(&oracle) {
                assert!((a - b).abs() < 1e-10 * b.max(1.0), "n={n}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn odd_residual_absolute_for_moderate_n() {
        for n in 0..=10 {
            for z in odd_zeta_roots(n).unwrap() {
                assert!(
                    odd_condition_residual(n, z) < 1e-10 * (n as f64 + 1.0),
                    "n={n} z={z}"
                );
            }
        }
    }

    #[test]
    fn residuals_small() {
        for n in 0..=40 {
            for z in even_zeta_roots(n).unwrap() {
                assert!(
                    root_residual(Parity::Even, n, z) < ROOT_RESIDUAL_TOL,
                    "even n={n} z={z}"
                );
            }
            for z in odd_zeta_roots(n).unwrap() {
                assert!(
                    root_residual(Parity::Odd, n, z) < ROOT_RESIDUAL_TOL,
                    "odd n={n} z={z}"
                );
            }
        }
    }

    #[test]
    fn interlacing() {
        for n in 1..=30 {
            let e = even_zeta_roots(n).unwrap();
            let o = odd_zeta_roots(n).unwrap();
            assert_eq!(e.len(), n + 1);
            for k in 0..n {
                assert!(e[k] < o[k] && o[k] < e[k + 1], "n={n} k={k}");
            }
        }
    }

    #[test]
    fn odd_low_order() {
        assert!(odd_zeta_roots(0).unwrap().is_empty());
        assert_eq!(odd_zeta_roots(1).unwrap(), vec![2.0]);
        let r = odd_zeta_roots(2).unwrap();
        assert!((r[0] - (3.0 - 3f64.sqrt())).abs() < 1e-14);
        assert!((r[1] - (3.0 + 3f64.sqrt())).abs() < 1e-14);
    }
}
