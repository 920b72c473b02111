use dkp_qes::spectrum::{
    delta_closed_form, even_zeta_roots, make_state, odd_zeta_roots, t_of_x, EnergySign, Parity,
    QuasiExactState,
};

fn closed_form_states(m: f64) -> Vec<QuasiExactState> {
    [
        (0, Parity::Even, 0),
        (1, Parity::Odd, 0),
        (1, Parity::Even, 0),
        (1, Parity::Even, 1),
        (2, Parity::Odd, 0),
        (2, Parity::Odd, 1),
    ]
    .into_iter()
    .map(|(n, p, k)| make_state(n, p, k, EnergySign::Positive, m).unwrap())
    .collect()
}

fn reach(s: &QuasiExactState, fraction: f64) -> f64 {
    let lc = s.params().lambda_c();
    let peak = (0..2000)
        .map(|i| s.phi_half(i as f64 * 0.01 * lc).abs())
        .fold(0.0, f64::max);
    let mut x = lc;
    while s.phi_half(x).abs() > fraction * peak || s.phi_half(x * 1.2).abs() > fraction * peak {
        x *= 1.05;
    }
    x
}

#[test]
fn ode_residual_fourth_order() {
    for m in [1.0, 2.5] {
        for s in closed_form_states(m) {
            let p = s.params();
            let (lam, e) = (p.lambda(), s.energy());
            let h = 2e-3 * p.lambda_c();
            let x_end = reach(&s, 1e-6);
            let mut worst = 0.0f64;
            let mut x = 0.05 * p.lambda_c();
            while x < x_end {
                let f = |k: f64| s.phi(x + k * h);
                let d1 = (f(-2.0) - 8.0 * f(-1.0) + 8.0 * f(1.0) - f(2.0)) / (12.0 * h);
                let d2 = (-f(-2.0) + 16.0 * f(-1.0) - 30.0 * f(0.0) + 16.0 * f(1.0) - f(2.0))
                    / (12.0 * h * h);
                let mass = p.effective_mass(x);
                let terms = [
                    d2 / mass,
                    -lam * d1 / (mass * mass),
                    (e * e - mass * mass) / mass * f(0.0),
                ];
                let scale: f64 = terms.iter().map(|t| t.abs()).sum();
                let res = terms.iter().sum::<f64>().abs() / scale;
                worst = worst.max(res);
                x += 0.013 * p.lambda_c();
            }
            assert!(
                worst < 1e-6,
                "n={} {} zeta={} m={m}: {worst:e}",
                s.n(),
                s.parity(),
                s.zeta()
            );
        }
    }
}

#[test]
fn continuity_at_origin() {
    for n in 0..=10 {
        for (parity, roots) in [
            (Parity::Even, even_zeta_roots(n).unwrap()),
            (Parity::Odd, odd_zeta_roots(n).unwrap()),
        ] {
            for k in 0..roots.len() {
                let s = make_state(n, parity, k, EnergySign::Positive, 1.3).unwrap();
                let lc = s.params().lambda_c();
                match parity {
                    Parity::Even => assert!(
                        s.dphi_half(0.0).abs() < 1e-10 * s.norm() / lc,
                        "n={n} k={k}"
                    ),
                    Parity::Odd => assert!(s.phi_half(0.0).abs() < 1e-10 * s.norm(), "n={n} k={k}"),
                }
            }
        }
    }
}

fn trapezoid_half(s: &QuasiExactState, x_end: f64, steps: usize) -> f64 {
    let h = x_end / steps as f64;
    let mut acc = 0.5 * (s.charge_density(0.0) + s.charge_density(x_end));
    for i in 1..steps {
        acc += s.charge_density(i as f64 * h);
    }
    acc * h
}

#[test]
fn charge_by_trapezoid_with_tail() {
    for sign in [EnergySign::Positive, EnergySign::Negative] {
        for s in closed_form_states(1.0)
            .into_iter()
            .map(|s| make_state(s.n(), s.parity(), s.root_index().unwrap(), sign, 1.0).unwrap())
        {
            let p = s.params();
            let x_end = reach(&s, 1e-5);
            let coarse = trapezoid_half(&s, x_end, 40_000);
            let fine = trapezoid_half(&s, x_end, 80_000);
            let body = 2.0 * (4.0 * fine - coarse) / 3.0;
            let tail = s.energy() * s.norm().powi(2) * delta_closed_form(s.n(), t_of_x(x_end, p))
                / p.lambda();
            let total = body + tail;
            assert!(
                (total - sign.factor()).abs() < 1e-8,
                "n={} {}: {total}",
                s.n(),
                s.parity()
            );
        }
    }
}

#[test]
fn roots_independent_of_mass_and_energy_linear() {
    let a = closed_form_states(1.0);
    let b = closed_form_states(2.5);
    for (x, y) in a.iter().zip(&b) {
        assert!((x.zeta() - y.zeta()).abs() < 1e-12);
        assert!((y.energy() / x.energy() - 2.5).abs() < 1e-12);
        let rel = (x.energy().powi(2) * x.zeta() - 4.0 * (x.n() as f64 + 1.0)).abs() / 4.0;
        assert!(rel < 1e-12);
    }
}
