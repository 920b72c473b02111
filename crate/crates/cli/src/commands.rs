use crate::config::{pick, ConfigFile};
use crate::format::{fmt_num, json_num, json_nums, render_json, Csv};
use crate::verify::{self, Scope, VerifyOptions};
use crate::{CliError, Command, Format, Globals, Outcome, StateArgs, EXIT_FAILURE, EXIT_OK};
use dkp_qes::spectrum::{
    degeneracy_scan, eigenfunction_table, figure1, make_state, root_residual, zeta_roots,
    EnergySign, Parity, QuasiExactState, SpectrumError, XExtent, ROOT_RESIDUAL_TOL,
};
use dkp_qes::Execution;
use serde_json::{Map, Value};

pub const MAX_DEGENERACY_N: usize = 100;
pub const DEFAULT_SAMPLES: usize = 501;
/// Relative distance within which `--zeta`/`--lambda` select a root.
pub const ZETA_MATCH: f64 = 1e-6;

pub fn dispatch(cmd: &Command, g: &Globals, cfg: &ConfigFile) -> Result<Outcome, CliError> {
    match cmd {
        Command::Roots(a) => {
            let n = required(pick(a.n, cfg, "n")?, "n")?;
            let parity = parse_parity(required(pick(a.parity.clone(), cfg, "parity")?, "parity")?)?;
            roots(n, parity, g)
        }
        Command::State(a) => {
            let state = select_state(a, g, cfg)?;
            state_record(&state, g)
        }
        Command::Table(a) => {
            let state = select_state(&a.state, g, cfg)?;
            let samples = pick(a.samples, cfg, "samples")?.unwrap_or(DEFAULT_SAMPLES);
            if samples < 3 || samples % 2 == 0 {
                return Err(CliError::Usage(format!(
                    "--samples must be odd and >= 3, got {samples}"
                )));
            }
            let extent = match pick(a.x_max.clone(), cfg, "x_max")?.as_deref() {
                None | Some("auto") => XExtent::Auto,
                Some(s) => match s.parse::<f64>() {
                    Ok(x) if x.is_finite() && x > 0.0 => XExtent::Fixed(x),
                    _ => {
                        return Err(CliError::Usage(format!(
                            "--x-max must be 'auto' or positive, got {s}"
                        )))
                    }
                },
            };
            let scaled = a.scaled || pick(None, cfg, "scaled")?.unwrap_or(false);
            table(&state, extent, samples, scaled, g)
        }
        Command::Figure1 => figure(g),
        Command::Verify(a) => {
            let scope = match pick(a.scope.clone(), cfg, "scope")? {
                Some(s) => s.parse::<Scope>().map_err(CliError::Usage)?,
                None => Scope::All,
            };
            let mut opts = VerifyOptions::default();
            if let Some(points) = cfg.get::<usize>("points")? {
                opts.oracle_points = points;
            }
            Ok(verify_outcome(&verify::run(scope, &opts), g.format))
        }
        Command::Degeneracy(a) => {
            let n_max = pick(a.max_n, cfg, "max_n")?.unwrap_or(MAX_DEGENERACY_N);
            if !(1..=MAX_DEGENERACY_N).contains(&n_max) {
                return Err(CliError::Usage(format!(
                    "--max-n must be in 1..={MAX_DEGENERACY_N}, got {n_max}"
                )));
            }
            degeneracy(n_max, g)
        }
    }
}

fn required<T>(v: Option<T>, name: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("--{} is required", name.replace('_', "-"))))
}

fn parse_parity(s: String) -> Result<Parity, CliError> {
    s.parse().map_err(|e: String| CliError::Usage(e))
}

fn parse_sign(s: String) -> Result<EnergySign, CliError> {
    s.parse().map_err(|e: String| CliError::Usage(e))
}

fn failure(e: SpectrumError) -> CliError {
    CliError::Failure(e.to_string())
}

fn units(m: f64) -> String {
    format!(
        "natural units hbar = c = 1; m = {}; lengths in the same units as 1/m",
        fmt_num(m)
    )
}

fn select_state(a: &StateArgs, g: &Globals, cfg: &ConfigFile) -> Result<QuasiExactState, CliError> {
    let n = required(pick(a.n, cfg, "n")?, "n")?;
    let parity = parse_parity(required(pick(a.parity.clone(), cfg, "parity")?, "parity")?)?;
    let sign = match pick(a.sign.clone(), cfg, "sign")? {
        Some(s) => parse_sign(s)?,
        None => EnergySign::Positive,
    };
    let index = pick(a.root_index, cfg, "root_index")?;
    let zeta = pick(a.zeta, cfg, "zeta")?;
    let lambda = pick(a.lambda, cfg, "lambda")?;
    let target = match (zeta, lambda) {
        (Some(_), Some(_)) => {
            return Err(CliError::Usage(
                "--zeta and --lambda are mutually exclusive".into(),
            ))
        }
        (Some(z), None) => Some(("zeta", z, z)),
        (None, Some(l)) => Some(("lambda", l, g.m * g.m / l)),
        (None, None) => None,
    };
    let Some((flag, raw, z)) = target else {
        return make_state(n, parity, index.unwrap_or(0), sign, g.m).map_err(failure);
    };
    if index.is_some() {
        return Err(CliError::Usage(format!(
            "--{flag} and --root-index are mutually exclusive"
        )));
    }
    if !(raw.is_finite() && raw > 0.0) {
        return Err(CliError::Usage(format!(
            "--{flag} must be positive, got {raw}"
        )));
    }
    let roots = zeta_roots(n, parity).map_err(failure)?;
    if roots.is_empty() {
        return Err(failure(SpectrumError::EmptyRootSet { n, parity }));
    }
    let (k, nearest) = roots
        .iter()
        .copied()
        .enumerate()
        .min_by(|a, b| (a.1 - z).abs().total_cmp(&(b.1 - z).abs()))
        .expect("nonempty");
    if (nearest - z).abs() > ZETA_MATCH * nearest {
        return Err(CliError::Failure(format!(
            "zeta = {} is not a root of the {parity} condition for n = {n} (nearest {})",
            fmt_num(z),
            fmt_num(nearest)
        )));
    }
    make_state(n, parity, k, sign, g.m).map_err(failure)
}

fn roots(n: usize, parity: Parity, g: &Globals) -> Result<Outcome, CliError> {
    let roots = zeta_roots(n, parity).map_err(failure)?;
    let residuals: Vec<f64> = roots.iter().map(|&z| root_residual(parity, n, z)).collect();
    let ok = residuals.iter().all(|&r| r < ROOT_RESIDUAL_TOL);
    let status = if roots.is_empty() {
        "no solutions"
    } else if ok {
        "ok"
    } else {
        "residual exceeds tolerance"
    };
    let body = match g.format {
        Format::Csv => {
            let mut csv = Csv::new();
            csv.comment(&format!(
                "n = {n}, parity = {parity}; zeta = m^2/lambda is dimensionless"
            ));
            if roots.is_empty() {
                csv.comment(&format!(
                    "no solutions: the {parity} condition has no roots for n = {n}"
                ));
            }
            csv.row(&["index", "zeta", "residual"]);
            for (i, (z, r)) in roots.iter().zip(&residuals).enumerate() {
                csv.row(&[i.to_string(), fmt_num(*z), fmt_num(*r)]);
            }
            csv.finish()
        }
        Format::Json => {
            let mut map = Map::new();
            map.insert("n".into(), n.into());
            map.insert("parity".into(), parity.to_string().into());
            map.insert("count".into(), roots.len().into());
            map.insert("roots".into(), json_nums(&roots));
            map.insert("residuals".into(), json_nums(&residuals));
            map.insert("tolerance".into(), json_num(ROOT_RESIDUAL_TOL));
            map.insert("status".into(), status.into());
            render_json(map)
        }
    };
    Ok(Outcome {
        body,
        code: if ok { EXIT_OK } else { EXIT_FAILURE },
    })
}

fn state_record(s: &QuasiExactState, g: &Globals) -> Result<Outcome, CliError> {
    let p = s.params();
    let charge = s.charge_integral().map_err(failure)?;
    let n1 = s.n() as f64 + 1.0;
    let energy_residual = (s.energy().powi(2) * s.zeta() - 4.0 * p.m().powi(2) * n1).abs()
        / (4.0 * p.m().powi(2) * n1);
    let fields: Vec<(&str, Value)> = vec![
        ("n", s.n().into()),
        ("parity", s.parity().to_string().into()),
        (
            "root_index",
            s.root_index().map_or(Value::Null, Value::from),
        ),
        ("sign", s.sign().to_string().into()),
        ("m", json_num(p.m())),
        ("zeta", json_num(s.zeta())),
        ("lambda", json_num(p.lambda())),
        ("g", json_num(p.g())),
        ("energy", json_num(s.energy())),
        ("epsilon", json_num(s.epsilon())),
        ("delta", json_num(s.delta())),
        ("norm", json_num(s.norm())),
        ("charge_integral", json_num(charge)),
        ("residual_condition", json_num(s.condition_residual())),
        ("residual_energy", json_num(energy_residual)),
        (
            "residual_normalization",
            json_num((charge - s.sign().factor()).abs()),
        ),
        ("status", "ok".into()),
    ];
    let body = match g.format {
        Format::Csv => {
            let mut csv = Csv::new();
            csv.comment(&units(p.m()));
            csv.row(
                &fields
                    .iter()
                    .map(|(k, _)| k.to_string())
                    .collect::<Vec<_>>(),
            );
            csv.row(&fields.iter().map(|(_, v)| csv_cell(v)).collect::<Vec<_>>());
            csv.finish()
        }
        Format::Json => {
            let mut map: Map<String, Value> = fields
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect();
            map.insert("units".into(), units(p.m()).into());
            render_json(map)
        }
    };
    Ok(Outcome {
        body,
        code: EXIT_OK,
    })
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Number(x) => x.as_f64().map_or_else(
            || x.to_string(),
            |f| {
                if x.is_f64() {
                    fmt_num(f)
                } else {
                    x.to_string()
                }
            },
        ),
        other => other.to_string(),
    }
}

fn columns_body(
    comments: &[String],
    columns: &[(&str, &[f64])],
    meta: Map<String, Value>,
    format: Format,
) -> String {
    match format {
        Format::Csv => {
            let mut csv = Csv::new();
            for c in comments {
                csv.comment(c);
            }
            csv.row(&columns.iter().map(|(k, _)| *k).collect::<Vec<_>>());
            let rows = columns.first().map_or(0, |c| c.1.len());
            for i in 0..rows {
                csv.row(
                    &columns
                        .iter()
                        .map(|(_, v)| fmt_num(v[i]))
                        .collect::<Vec<_>>(),
                );
            }
            csv.finish()
        }
        Format::Json => {
            let mut map = meta;
            for (k, v) in columns {
                map.insert(k.to_string(), json_nums(v));
            }
            map.insert("status".into(), "ok".into());
            render_json(map)
        }
    }
}

fn table(
    s: &QuasiExactState,
    extent: XExtent,
    samples: usize,
    scaled: bool,
    g: &Globals,
) -> Result<Outcome, CliError> {
    let raw = eigenfunction_table(s, extent, samples).map_err(failure)?;
    let t = if scaled { raw.scaled() } else { raw };
    let unit_note = if scaled {
        "x in units of lambda_C = 1/m; phi, phi2, phi3_im multiplied by sqrt(lambda_C); j0, j1 multiplied by lambda_C".to_string()
    } else {
        units(t.m)
    };
    let comments = vec![
        format!(
            "n = {}, parity = {}, zeta = {}, energy = {}, norm = {}",
            t.n,
            t.parity,
            fmt_num(t.zeta),
            fmt_num(t.energy),
            fmt_num(t.norm)
        ),
        unit_note.clone(),
        "phi3 = i*phi3_im; spin-0 components 4 and 5 and spin-1 component 8 vanish identically"
            .into(),
    ];
    let mut meta = Map::new();
    meta.insert("n".into(), t.n.into());
    meta.insert("parity".into(), t.parity.to_string().into());
    meta.insert("zeta".into(), json_num(t.zeta));
    meta.insert("m".into(), json_num(t.m));
    meta.insert("energy".into(), json_num(t.energy));
    meta.insert("norm".into(), json_num(t.norm));
    meta.insert("scaled".into(), t.scaled.into());
    meta.insert("units".into(), unit_note.into());
    let body = columns_body(
        &comments,
        &[
            ("x", &t.x),
            ("phi", &t.phi),
            ("phi2", &t.phi2),
            ("phi3_im", &t.phi3_im),
            ("j0", &t.j0),
            ("j1", &t.j1),
        ],
        meta,
        g.format,
    );
    Ok(Outcome {
        body,
        code: EXIT_OK,
    })
}

fn figure(g: &Globals) -> Result<Outcome, CliError> {
    let f = figure1(g.m).map_err(failure)?;
    let note = "zeta = 2; even n = 0 and odd n = 1 states; x in units of lambda_C = 1/m; amplitudes times sqrt(lambda_C)";
    let mut meta = Map::new();
    meta.insert("zeta".into(), json_num(2.0));
    meta.insert("units".into(), note.into());
    let body = columns_body(
        &[note.to_string()],
        &[
            ("x_over_lambdaC", &f.x_over_lambda_c),
            ("phi_n0_scaled", &f.phi_n0_scaled),
            ("phi_n1_scaled", &f.phi_n1_scaled),
        ],
        meta,
        g.format,
    );
    Ok(Outcome {
        body,
        code: EXIT_OK,
    })
}

pub fn verify_outcome(report: &verify::Report, format: Format) -> Outcome {
    let status = if report.passed() { "pass" } else { "fail" };
    let body = match format {
        Format::Csv => {
            let mut csv = Csv::new();
            csv.comment(&format!(
                "scope = {}, status = {status}, failed = {}/{}",
                report.scope,
                report.failures(),
                report.checks.len()
            ));
            csv.row(&["check", "value", "threshold", "pass"]);
            for c in &report.checks {
                csv.row(&[
                    c.name.clone(),
                    fmt_num(c.value),
                    fmt_num(c.threshold),
                    c.passed.to_string(),
                ]);
            }
            csv.finish()
        }
        Format::Json => {
            let mut map = Map::new();
            map.insert("scope".into(), report.scope.to_string().into());
            map.insert("status".into(), status.into());
            map.insert("checks".into(), report.checks.len().into());
            map.insert("failed".into(), report.failures().into());
            for c in &report.checks {
                map.insert(c.name.clone(), json_num(c.value));
                map.insert(format!("{}_threshold", c.name), json_num(c.threshold));
                map.insert(format!("{}_pass", c.name), c.passed.into());
            }
            render_json(map)
        }
    };
    Outcome {
        body,
        code: if report.passed() {
            EXIT_OK
        } else {
            EXIT_FAILURE
        },
    }
}

fn degeneracy(n_max: usize, g: &Globals) -> Result<Outcome, CliError> {
    let report = degeneracy_scan(n_max, Execution::default()).map_err(failure)?;
    let ok = report.nondegenerate();
    let verdict = if ok {
        "no two-fold degeneracy"
    } else {
        "degeneracy found"
    };
    let body = match g.format {
        Format::Csv => {
            let mut csv = Csv::new();
            csv.comment(&format!("n_max = {n_max}; verdict: {verdict}"));
            csv.row(&[
                "n",
                "resultant_nonzero",
                "resultant_digits",
                "min_separation",
            ]);
            for e in &report.entries {
                csv.row(&[
                    e.n.to_string(),
                    e.resultant_nonzero.to_string(),
                    e.resultant_digits.to_string(),
                    e.min_separation.map(fmt_num).unwrap_or_default(),
                ]);
            }
            csv.finish()
        }
        Format::Json => {
            let mut map = Map::new();
            map.insert("n_max".into(), n_max.into());
            map.insert("verdict".into(), verdict.into());
            map.insert("status".into(), (if ok { "ok" } else { "fail" }).into());
            let e = &report.entries;
            map.insert("n".into(), e.iter().map(|e| Value::from(e.n)).collect());
            map.insert(
                "resultant_nonzero".into(),
                e.iter().map(|e| Value::from(e.resultant_nonzero)).collect(),
            );
            map.insert(
                "resultant_digits".into(),
                e.iter().map(|e| Value::from(e.resultant_digits)).collect(),
            );
            map.insert(
                "min_separation".into(),
                e.iter()
                    .map(|e| e.min_separation.map_or(Value::Null, json_num))
                    .collect(),
            );
            render_json(map)
        }
    };
    Ok(Outcome {
        body,
        code: if ok { EXIT_OK } else { EXIT_FAILURE },
    })
}
