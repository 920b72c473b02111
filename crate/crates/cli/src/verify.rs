//! Invariant suites behind `dkp verify`.

use dkp_qes::algebra::{build_rep, check_dkp_algebra, check_eta_hermiticity, SpinSector};
use dkp_qes::hypergeom::{
    asymptotic_growth_check, gamma, kummer_m, rgamma, wronskian_residual, GrowthLaw, HypergeomError,
};
use dkp_qes::laguerre::{laguerre_coeffs, laguerre_eval};
use dkp_qes::oracle::{cross_validate, oracle_spectrum, OracleConfig, Verdict};
use dkp_qes::spectrum::{
    count_nodes, delta_closed_form, delta_quadrature, even_zeta_roots, figure1, make_state,
    odd_zeta_roots, EnergySign, Parity, QuasiExactState,
};
use dkp_qes::Execution;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use std::fmt;
use std::str::FromStr;

/// `L_n^{(1)}(w)` as seen by the Laguerre checks.
pub type LaguerreEvaluator = fn(usize, f64) -> f64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    Algebra,
    Hypergeom,
    Oracle,
    All,
}

impl FromStr for Scope {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "algebra" => Ok(Self::Algebra),
            "hypergeom" => Ok(Self::Hypergeom),
            "oracle" => Ok(Self::Oracle),
            "all" => Ok(Self::All),
            other => Err(format!(
                "unknown scope '{other}' (expected algebra|hypergeom|oracle|all)"
            )),
        }
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Algebra => "algebra",
            Self::Hypergeom => "hypergeom",
            Self::Oracle => "oracle",
            Self::All => "all",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub threshold: f64,
    pub passed: bool,
}

impl Check {
    fn below(name: &str, value: f64, threshold: f64) -> Self {
        Self {
            name: name.into(),
            value,
            threshold,
            passed: value <= threshold,
        }
    }

    fn failed(name: &str, threshold: f64) -> Self {
        Self {
            name: name.into(),
            value: f64::NAN,
            threshold,
            passed: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub scope: Scope,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }
}

pub struct VerifyOptions {
    pub laguerre: LaguerreEvaluator,
    pub oracle_points: usize,
    pub exec: Execution,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            laguerre: laguerre_eval,
            oracle_points: 20_000,
            exec: Execution::default(),
        }
    }
}

pub fn run(scope: Scope, opts: &VerifyOptions) -> Report {
    let mut checks = Vec::new();
    let all = scope == Scope::All;
    if all || scope == Scope::Algebra {
        algebra(&mut checks);
    }
    if all || scope == Scope::Hypergeom {
        special_functions(&mut checks, opts.laguerre);
    }
    if all {
        spectrum(&mut checks, opts.laguerre);
    }
    if all || scope == Scope::Oracle {
        oracle(&mut checks, opts);
    }
    Report { scope, checks }
}

fn algebra(out: &mut Vec<Check>) {
    for (label, sector) in [("spin0", SpinSector::Spin0), ("spin1", SpinSector::Spin1)] {
        let rep = build_rep(sector);
        out.push(Check::below(
            &format!("dkp_algebra_{label}"),
            check_dkp_algebra(&rep),
            0.0,
        ));
        out.push(Check::below(
            &format!("eta_hermiticity_{label}"),
            check_eta_hermiticity(&rep),
            0.0,
        ));
    }
}

const WRONSKIAN_A: [f64; 3] = [0.3, 0.7, 1.6];
const WRONSKIAN_B: [f64; 3] = [0.4, 1.5, 2.5];
const WRONSKIAN_W: [f64; 3] = [0.5, 1.0, 2.0];

fn special_functions(out: &mut Vec<Check>, lag: LaguerreEvaluator) {
    let mut worst: Result<f64, HypergeomError> = Ok(0.0);
    for a in WRONSKIAN_A {
        for b in WRONSKIAN_B {
            for w in WRONSKIAN_W {
                worst = worst.and_then(|m| Ok(m.max(wronskian_residual(a, b, w)?)));
            }
        }
    }
    out.push(match worst {
        Ok(v) => Check::below("wronskian_grid", v, 1e-6),
        Err(_) => Check::failed("wronskian_grid", 1e-6),
    });

    // both measured against L_n(−w), the absolute scale of the alternating sum
    let mut kummer = 0.0f64;
    let mut exact = 0.0f64;
    for n in 0..=20usize {
        let poly = laguerre_coeffs(n);
        for i in 0..=40 {
            let w = 0.25 + 1.5 * i as f64;
            let scale = laguerre_eval(n, -w);
            let value = lag(n, w);
            let m = kummer_m(-(n as f64), 2.0, w).unwrap_or(f64::NAN) * (n as f64 + 1.0);
            kummer = kummer.max((m - value).abs() / scale);
            let reference = poly.eval_exact(&BigRational::from_float(w).expect("finite"));
            let err = (BigRational::from_float(value).unwrap_or_default() - reference).abs();
            exact = exact.max(err.to_f64().unwrap_or(f64::INFINITY) / scale);
        }
    }
    out.push(Check::below("kummer_laguerre", nan_as_inf(kummer), 1e-12));
    out.push(Check::below("laguerre_exact", nan_as_inf(exact), 1e-12));

    let (a, b, w) = (0.5, 2.0, 40.0);
    let ratio =
        kummer_m(a, b, w).unwrap_or(f64::NAN) / (gamma(b) * rgamma(a) * w.exp() * w.powf(a - b));
    let grows =
        asymptotic_growth_check(a, b, &[10.0, 20.0, 40.0], GrowthLaw::Exponential).unwrap_or(false);
    let mut c = Check::below("growth_exponential", (ratio - 1.0).abs(), 0.1);
    c.passed &= grows;
    out.push(c);

    let mut worst = 0.0f64;
    for n in 1..=4usize {
        match asymptotic_growth_check(-(n as f64), 2.0, &[10.0], GrowthLaw::Exponential) {
            Err(HypergeomError::PolynomialGrowth { exponent, .. }) => {
                worst = worst.max((exponent - n as f64).abs())
            }
            _ => worst = f64::INFINITY,
        }
    }
    out.push(Check::below("growth_polynomial", worst, 1e-2));
}

fn nan_as_inf(x: f64) -> f64 {
    if x.is_nan() {
        f64::INFINITY
    } else {
        x
    }
}

fn spectrum(out: &mut Vec<Check>, lag: LaguerreEvaluator) {
    let s5 = 5f64.sqrt();
    let s3 = 3f64.sqrt();
    let published: [(&str, Parity, usize, Vec<f64>); 5] = [
        ("roots_even_n0", Parity::Even, 0, vec![2.0]),
        ("roots_even_n1", Parity::Even, 1, vec![3.0 - s5, 3.0 + s5]),
        ("roots_odd_n0", Parity::Odd, 0, vec![]),
        ("roots_odd_n1", Parity::Odd, 1, vec![2.0]),
        ("roots_odd_n2", Parity::Odd, 2, vec![3.0 - s3, 3.0 + s3]),
    ];
    for (name, parity, n, expected) in published {
        let found = match parity {
            Parity::Even => even_zeta_roots(n),
            Parity::Odd => odd_zeta_roots(n),
        };
        out.push(match found {
            Ok(r) if r.len() == expected.len() => {
                let err = r
                    .iter()
                    .zip(&expected)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max);
                Check::below(name, err, 1e-10)
            }
            _ => Check::failed(name, 1e-10),
        });
    }

    // quantization conditions re-evaluated with the injected evaluator
    let mut worst = 0.0f64;
    for n in 0..=10usize {
        let scale = n as f64 + 1.0;
        for z in even_zeta_roots(n).unwrap_or_default() {
            let (ln, lm) = (lag(n, z), if n == 0 { 0.0 } else { lag(n - 1, z) });
            worst = worst.max((1.0 - z / (2.0 * scale) - lm / ln).abs());
        }
        for z in odd_zeta_roots(n).unwrap_or_default() {
            worst = worst.max(lag(n, z).abs() / scale);
        }
    }
    out.push(Check::below(
        "quantization_residuals",
        nan_as_inf(worst),
        1e-10,
    ));

    let target = 3.0 * (-2.0f64).exp();
    out.push(Check::below(
        "delta_closed_form",
        (delta_closed_form(0, 2.0) - target).abs() / target,
        1e-12,
    ));
    out.push(match delta_quadrature(0, 2.0) {
        Ok(q) => Check::below("delta_quadrature", (q - target).abs() / target, 1e-12),
        Err(_) => Check::failed("delta_quadrature", 1e-12),
    });
    let charge = make_state(0, Parity::Even, 0, EnergySign::Positive, 1.0)
        .ok()
        .and_then(|s| s.charge_integral().ok());
    out.push(match charge {
        Some(q) => Check::below("charge_integral", (q - 1.0).abs(), 1e-8),
        None => Check::failed("charge_integral", 1e-8),
    });

    out.push(match figure1(1.0) {
        Ok(fig) => {
            let k = fig.x_over_lambda_c.len();
            let mut sym = 0.0f64;
            for i in 0..k {
                let j = k - 1 - i;
                sym = sym.max((fig.phi_n0_scaled[i] - fig.phi_n0_scaled[j]).abs());
                sym = sym.max((fig.phi_n1_scaled[i] + fig.phi_n1_scaled[j]).abs());
            }
            let nodes_ok =
                count_nodes(&fig.phi_n0_scaled) == 0 && count_nodes(&fig.phi_n1_scaled) == 1;
            let mut c = Check::below("figure1_symmetry", sym, 1e-12);
            c.passed &= nodes_ok;
            c
        }
        Err(_) => Check::failed("figure1_symmetry", 1e-12),
    });
}

fn oracle(out: &mut Vec<Check>, opts: &VerifyOptions) {
    let states = [
        ("oracle_even_n0", 0, Parity::Even, 0),
        ("oracle_odd_n1", 1, Parity::Odd, 0),
        ("oracle_even_n1_r0", 1, Parity::Even, 0),
        ("oracle_even_n1_r1", 1, Parity::Even, 1),
        ("oracle_odd_n2_r0", 2, Parity::Odd, 0),
        ("oracle_odd_n2_r1", 2, Parity::Odd, 1),
    ];
    for (name, n, parity, k) in states {
        let result = make_state(n, parity, k, EnergySign::Positive, 1.0)
            .map_err(|e| e.to_string())
            .and_then(|s| validate(&s, opts).map_err(|e| e.to_string()));
        out.push(match result {
            Ok((err, matched)) => {
                let mut c = Check::below(name, err, dkp_qes::oracle::MATCH_TOLERANCE);
                c.passed &= matched;
                c
            }
            Err(_) => Check::failed(name, dkp_qes::oracle::MATCH_TOLERANCE),
        });
    }

    // ζ = 1, n = 0 violates the even condition; the oracle must disagree
    let control = QuasiExactState::at_zeta(0, Parity::Even, 1.0, EnergySign::Positive, 1.0)
        .map_err(|e| e.to_string())
        .and_then(|s| {
            let cfg = OracleConfig::for_state(&s, opts.oracle_points).map_err(|e| e.to_string())?;
            let ground = oracle_spectrum(&cfg, opts.exec)
                .map_err(|e| e.to_string())?
                .energies[0];
            let verdict = cross_validate(&s, &cfg, opts.exec)
                .map_err(|e| e.to_string())?
                .verdict;
            Ok(((ground - s.energy()).abs() / s.energy(), verdict))
        });
    out.push(match control {
        Ok((deviation, verdict)) => Check {
            name: "oracle_negative_control".into(),
            value: deviation,
            threshold: 0.01,
            passed: deviation > 0.01 && verdict != Verdict::Match,
        },
        Err(_) => Check::failed("oracle_negative_control", 0.01),
    });
}

fn validate(
    s: &QuasiExactState,
    opts: &VerifyOptions,
) -> Result<(f64, bool), dkp_qes::oracle::OracleError> {
    let cfg = OracleConfig::for_state(s, opts.oracle_points)?;
    let c = cross_validate(s, &cfg, opts.exec)?;
    Ok((c.relative_error, c.is_match()))
}
