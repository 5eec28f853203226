//! One function per subcommand; each returns the bytes of the output document.

use nalgebra::Vector2;
use serde_json::{json, Value};

use reservo_core::analysis::{
    build_generator, ellipsoid_residual, ellipsoid_sweep, fd_steady_analytic, fidelity_map,
    mme_secular_steady_analytic, thermal_compensation, SteadyMethod, SweepGrid,
};
use reservo_core::dynamics::{evolve, relaxation_time, steady_state};
use reservo_core::qubit::DEFAULT_RWA_THRESHOLD;
use reservo_core::reservoir::DEFAULT_MARKOV_RATIO;
use reservo_core::{dressed_basis, DressedBasis, GeneratorKind, Liouvillian, QubitState, C64};

use crate::config::{Format, Initial, Method, RunConfig, Spectrum};
use crate::error::CliError;
use crate::io::{complex, csv_document, density_matrix, fmt_f64, fmt_opt, json_document, to_value};

fn warnings(cfg: &RunConfig, max_omega: f64) -> Vec<String> {
    let mut w = Vec::new();
    let ratio = cfg.delta.abs().max(max_omega) / cfg.omega_l;
    if ratio >= DEFAULT_RWA_THRESHOLD {
        w.push(format!("rotating-wave ratio {ratio:.3e} is not small"));
    }
    if let Some(d) = &cfg.density {
        if !d.markov_valid(DEFAULT_MARKOV_RATIO) {
            w.push("spectral width is not much larger than the coupling rate".into());
        }
    }
    w
}

fn liouvillian_json(l: &Liouvillian) -> Value {
    let rows: Vec<Value> = l
        .rows()
        .iter()
        .map(|r| Value::Array(r.iter().map(|(re, im)| complex(C64::new(*re, *im))).collect()))
        .collect();
    json!({ "kind": l.kind(), "matrix": rows })
}

fn bloch_json(s: &QubitState) -> Value {
    let b = s.bloch();
    json!({ "rx": b.rx, "ry": b.ry, "rz": b.rz })
}

fn require_json(cfg: &RunConfig) -> Result<(), CliError> {
    if cfg.format != Format::Json {
        return Err(CliError::Config(format!("`{}` writes JSON only", cfg.command)));
    }
    Ok(())
}

pub fn steady(cfg: &RunConfig) -> Result<Vec<u8>, CliError> {
    require_json(cfg)?;
    let kind = cfg.generator_kind()?;
    let field = cfg.single_field()?;
    let model = cfg.model()?;
    let l = build_generator(kind, &model, &field, cfg.include_lamb)?;
    let ss = steady_state(&l)?;
    let (analytic, rates) = match kind {
        GeneratorKind::Fdme => {
            let (g, n) = model.fd_rates(&field)?;
            (Some(fd_steady_analytic(&field, g, n)?), json!({ "gamma_fd": g, "n_fd": n }))
        }
        _ => {
            let basis = dressed_basis(&field)?;
            let rates = model.rates(&field, &basis)?;
            let analytic = match kind {
                GeneratorKind::MmeSecular => Some(mme_secular_steady_analytic(&basis, &rates, field.phi)?),
                _ => None,
            };
            (analytic, to_value(&rates)?)
        }
    };
    json_document(
        cfg,
        json!({
            "bloch": bloch_json(&ss.state),
            "rho": density_matrix(&ss.state),
            "eigenvalues": ss.state.eigenvalues(),
            "purity": ss.state.purity(),
            "residual": ss.residual,
            "physical": ss.physical,
            "analytic_bloch": analytic.as_ref().map(bloch_json),
            "rates": rates,
            "warnings": warnings(cfg, field.omega),
        }),
    )
}

pub fn show_rates(cfg: &RunConfig) -> Result<Vec<u8>, CliError> {
    require_json(cfg)?;
    let field = cfg.single_field()?;
    let model = cfg.model()?;
    let basis = dressed_basis(&field)?;
    let rates = model.rates(&field, &basis)?;
    let (gamma_fd, n_fd) = model.fd_rates(&field)?;
    let generator = match cfg.generator {
        Some(g) => Some(liouvillian_json(&build_generator(g.into(), &model, &field, cfg.include_lamb)?)),
        None => None,
    };
    json_document(
        cfg,
        json!({
            "field": to_value(&field)?,
            "dressed_basis": to_value(&basis)?,
            "rate_set": to_value(&rates)?,
            "ratio_x": rates.ratio(),
            "gamma_fd": gamma_fd,
            "n_fd": n_fd,
            "generator": generator,
            "warnings": warnings(cfg, field.omega),
        }),
    )
}

pub fn sweep(cfg: &RunConfig) -> Result<Vec<u8>, CliError> {
    let kind = cfg.generator_kind()?;
    let model = cfg.model()?;
    let omegas = cfg.grid_omega_over_delta.clone().expect("sweep grid resolved");
    let method = match (cfg.method, kind) {
        (Some(Method::NullSpace), _) | (_, GeneratorKind::MmeNonsecular) => SteadyMethod::NullSpace,
        _ => SteadyMethod::Analytic,
    };
    let grid = SweepGrid {
        delta: cfg.delta,
        omega_l: cfg.omega_l,
        omega_over_delta: omegas.clone(),
        phis: cfg.phi.clone(),
    };
    let result = ellipsoid_sweep(kind, &model, &grid, method, cfg.include_lamb)?;
    let max_omega = omegas.iter().fold(0.0f64, |m, r| m.max(r * cfg.delta.abs()));
    for w in warnings(cfg, max_omega) {
        eprintln!("warning: {w}");
    }
    match cfg.format {
        Format::Csv => {
            let rows: Vec<Vec<String>> = result
                .points
                .iter()
                .map(|p| {
                    vec![
                        fmt_f64(p.omega_over_delta),
                        fmt_f64(p.phi),
                        fmt_f64(p.bloch.rx),
                        fmt_f64(p.bloch.ry),
                        fmt_f64(p.bloch.rz),
                        fmt_f64(ellipsoid_residual(&p.bloch)),
                        fmt_opt(p.x),
                        fmt_opt(p.fidelity),
                        p.physical.to_string(),
                        fmt_opt(p.residual),
                    ]
                })
                .collect();
            csv_document(
                cfg,
                &[
                    "omega_over_delta",
                    "phi",
                    "rx",
                    "ry",
                    "rz",
                    "ellipsoid_residual",
                    "x",
                    "fidelity",
                    "physical",
                    "residual",
                ],
                &rows,
            )
        }
        Format::Json => {
            let n = omegas.len();
            let nested = |f: &dyn Fn(&reservo_core::analysis::SweepPoint) -> Value| -> Vec<Value> {
                result.points.chunks(n).map(|c| Value::Array(c.iter().map(f).collect())).collect()
            };
            json_document(
                cfg,
                json!({
                    "kind": result.kind,
                    "method": result.method,
                    "omega_over_delta": omegas,
                    "phi": cfg.phi,
                    "rx": nested(&|p| json!(p.bloch.rx)),
                    "ry": nested(&|p| json!(p.bloch.ry)),
                    "rz": nested(&|p| json!(p.bloch.rz)),
                    "ellipsoid_residual": nested(&|p| json!(ellipsoid_residual(&p.bloch))),
                    "x": nested(&|p| json!(p.x)),
                    "fidelity": nested(&|p| json!(p.fidelity)),
                    "physical": nested(&|p| json!(p.physical)),
                    "residual": nested(&|p| json!(p.residual)),
                }),
            )
        }
    }
}

fn initial_state(i: Initial) -> Result<QubitState, CliError> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    Ok(match i {
        Initial::G => QubitState::ground(),
        Initial::E => QubitState::excited(),
        Initial::Mixed => QubitState::maximally_mixed(),
        Initial::Plus => QubitState::pure(&Vector2::new(C64::from(h), C64::from(h)))?,
        Initial::Minus => QubitState::pure(&Vector2::new(C64::from(h), C64::from(-h)))?,
    })
}

pub fn dynamics(cfg: &RunConfig) -> Result<Vec<u8>, CliError> {
    let kind = cfg.generator.map(Into::into).unwrap_or(match cfg.spectrum {
        Some(Spectrum::FixedX { .. }) => GeneratorKind::MmeSecular,
        _ => GeneratorKind::Fdme,
    });
    let field = cfg.single_field()?;
    let model = cfg.model()?;
    let l = build_generator(kind, &model, &field, cfg.include_lamb)?;
    let tmax = match cfg.tmax.as_deref().unwrap_or("auto") {
        "auto" => 20.0 * relaxation_time(&l)?,
        s => {
            let t: f64 = s
                .parse()
                .map_err(|_| CliError::Config(format!("--tmax must be `auto` or a number, got `{s}`")))?;
            if !(t > 0.0) {
                return Err(CliError::Config("--tmax must be positive".into()));
            }
            t / cfg.scale
        }
    };
    let n = cfg.n_times.unwrap_or(400);
    let times: Vec<f64> = if cfg.log_time.unwrap_or(false) {
        let mut t = vec![0.0];
        t.extend(reservo_core::analysis::logspace(tmax.log10() - 6.0, tmax.log10(), n - 1));
        t
    } else {
        reservo_core::analysis::linspace(0.0, tmax, n)
    };
    let rho0 = initial_state(cfg.initial.unwrap_or(Initial::G))?;
    let traj = evolve(&l, &rho0, &times)?;
    for w in warnings(cfg, field.omega) {
        eprintln!("warning: {w}");
    }
    match cfg.format {
        Format::Csv => {
            let rows: Vec<Vec<String>> = traj
                .times
                .iter()
                .zip(&traj.states)
                .zip(&traj.physical)
                .map(|((t, s), p)| {
                    let b = s.bloch();
                    vec![
                        fmt_f64(*t),
                        fmt_f64(b.rx),
                        fmt_f64(b.ry),
                        fmt_f64(b.rz),
                        fmt_f64(s.rho_ee()),
                        fmt_f64(s.rho_eg().re),
                        fmt_f64(s.rho_eg().im),
                        p.to_string(),
                    ]
                })
                .collect();
            csv_document(
                cfg,
                &["t", "rx", "ry", "rz", "rho_ee_re", "rho_eg_re", "rho_eg_im", "physical"],
                &rows,
            )
        }
        Format::Json => json_document(
            cfg,
            json!({
                "kind": kind,
                "t": traj.times,
                "rx": traj.bloch.iter().map(|b| b.rx).collect::<Vec<_>>(),
                "ry": traj.bloch.iter().map(|b| b.ry).collect::<Vec<_>>(),
                "rz": traj.bloch.iter().map(|b| b.rz).collect::<Vec<_>>(),
                "physical": traj.physical,
            }),
        ),
    }
}

pub fn fidelity_map_cmd(cfg: &RunConfig) -> Result<Vec<u8>, CliError> {
    let omegas = cfg.grid_omega_over_delta.clone().expect("grid resolved");
    let lx = cfg.grid_log10_x.clone().expect("grid resolved");
    let map = fidelity_map(&omegas, &lx, cfg.delta, cfg.phi[0])?;
    match cfg.format {
        Format::Csv => {
            let mut rows = Vec::with_capacity(omegas.len() * lx.len());
            for (i, l) in lx.iter().enumerate() {
                for (j, r) in omegas.iter().enumerate() {
                    rows.push(vec![
                        fmt_f64(*l),
                        fmt_f64(10f64.powf(*l)),
                        fmt_f64(*r),
                        fmt_f64(map.values[i][j]),
                    ]);
                }
            }
            csv_document(cfg, &["log10_x", "x", "omega_over_delta", "fidelity"], &rows)
        }
        Format::Json => json_document(cfg, json!({ "fidelity_map": to_value(&map)? })),
    }
}

pub fn compensate(cfg: &RunConfig) -> Result<Vec<u8>, CliError> {
    let x = cfg.x.expect("x resolved");
    let omegas = cfg.grid_omega_over_delta.clone().expect("grid resolved");
    let mut ns = Vec::with_capacity(omegas.len());
    for r in &omegas {
        let basis = DressedBasis::from_detuning(cfg.delta, r * cfg.delta.abs())?;
        ns.push(thermal_compensation(x, &basis)?);
    }
    let temps: Vec<f64> = ns
        .iter()
        .map(|n| if *n == 0.0 { 0.0 } else { cfg.omega_0 / (1.0 / n).ln_1p() / cfg.scale })
        .collect();
    match cfg.format {
        Format::Csv => {
            let rows: Vec<Vec<String>> = omegas
                .iter()
                .zip(&ns)
                .zip(&temps)
                .map(|((r, n), t)| vec![fmt_f64(*r), fmt_f64(x), fmt_f64(*n), fmt_f64(*t)])
                .collect();
            csv_document(cfg, &["omega_over_delta", "x", "n_fd", "temperature"], &rows)
        }
        Format::Json => json_document(
            cfg,
            json!({ "x": x, "omega_over_delta": omegas, "n_fd": ns, "temperature": temps }),
        ),
    }
}
