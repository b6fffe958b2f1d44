use ab_ring::currents::{cross_current, partial_current, richardson_derivative_residual};
use ab_ring::dirac::{
    algebraic_residual, build_spinor, gram_matrix, operator_residuals, GammaSet, Polarization,
};
use ab_ring::persistent::{c_sweep_with, log_grid, persistent_current_with, MuPlacement, PersistentOptions};
use ab_ring::{
    half_odd_range, solve_energy, HalfOddInteger, OccupationSpec, PhysicalRingSpec, Result, RingConfig,
    RingError,
};

use crate::args::{ModeArgs, ModeSelection, PersistentArgs, RingArgs, SweepArgs, VerifyArgs};
use crate::output::{Cell, Document};

/// Step used for the Richardson-extrapolated ∂E/∂β check.
const DERIVATIVE_STEP: f64 = 1e-3;

/// A finished document, plus whether any part of it failed (error rows or
/// failed checks). Failure still produces output but a nonzero exit status.
pub struct Report {
    pub document: Document,
    pub failed: bool,
}

struct Ring {
    config: RingConfig,
    physical: bool,
}

fn build_ring(args: &RingArgs, beta: f64, doc: &mut Document) -> Result<Ring> {
    match (args.mu, args.radius_nm, args.mass_ratio) {
        (Some(mu), _, _) => {
            doc.echo("mu", mu);
            doc.echo("beta", beta);
            Ok(Ring {
                config: RingConfig::new(mu, beta)?,
                physical: false,
            })
        }
        (None, Some(radius_nm), Some(ratio)) => {
            let spec = PhysicalRingSpec::new(radius_nm, ratio)?;
            let config = RingConfig::from_physical(&spec, beta)?;
            doc.echo("radius_nm", radius_nm);
            doc.echo("mass_ratio", ratio);
            doc.echo("beta", beta);
            doc.echo("mu", config.mu());
            doc.echo("radius_natural", config.radius());
            Ok(Ring { config, physical: true })
        }
        // clap's argument groups make this unreachable from the command line
        _ => Err(RingError::InvalidParameter {
            name: "mu",
            reason: "give --mu or both --radius-nm and --mass-ratio".into(),
        }),
    }
}

fn selected_modes(sel: &ModeSelection, doc: &mut Document) -> Result<Vec<HalfOddInteger>> {
    if let Some(max) = sel.lambda_max {
        doc.echo("lambda_max", max.to_f64());
        half_odd_range(max)
    } else {
        let listed: Vec<String> = sel.lambda.iter().map(|l| l.to_string()).collect();
        doc.echo("lambda", listed.join(" "));
        Ok(sel.lambda.clone())
    }
}

/// Row-level failures keep the row (with its inputs) and carry the error kind;
/// the readable message goes to stderr.
fn error_cell(e: &RingError) -> Cell {
    eprintln!("warning: {e}");
    Cell::Text(e.kind().to_string())
}

pub fn spectrum(args: &ModeArgs) -> Result<Report> {
    let mut doc = Document::new("spectrum", &["mu", "beta", "lambda", "nu", "energy", "error"]);
    let ring = build_ring(&args.ring, args.beta, &mut doc)?;
    let modes = selected_modes(&args.modes, &mut doc)?;
    let c = &ring.config;
    let mut failed = false;
    for lambda in modes {
        let head = vec![c.mu().into(), c.beta().into(), lambda.to_f64().into(), c.nu(lambda).into()];
        let tail = match solve_energy(c, lambda) {
            Ok(e) => vec![e.into(), Cell::Null],
            Err(e) => {
                failed = true;
                vec![Cell::Null, error_cell(&e)]
            }
        };
        doc.push_row(head.into_iter().chain(tail).collect());
    }
    Ok(Report { document: doc, failed })
}

pub fn current(args: &ModeArgs) -> Result<Report> {
    let mut doc = Document::new(
        "current",
        &[
            "mu",
            "beta",
            "lambda",
            "nu",
            "energy",
            "chi",
            "current_imax",
            "current_natural",
            "error",
        ],
    );
    let ring = build_ring(&args.ring, args.beta, &mut doc)?;
    let modes = selected_modes(&args.modes, &mut doc)?;
    let c = &ring.config;
    let mut failed = false;
    for lambda in modes {
        let head = vec![c.mu().into(), c.beta().into(), lambda.to_f64().into(), c.nu(lambda).into()];
        let tail = match partial_current(c, lambda) {
            Ok(m) => vec![
                m.energy.into(),
                m.chi.into(),
                m.in_imax_units().into(),
                ring.physical.then_some(m.current_natural).into(),
                Cell::Null,
            ],
            Err(e) => {
                failed = true;
                vec![Cell::Null, Cell::Null, Cell::Null, Cell::Null, error_cell(&e)]
            }
        };
        doc.push_row(head.into_iter().chain(tail).collect());
    }
    Ok(Report { document: doc, failed })
}

pub fn persistent(args: &PersistentArgs) -> Result<Report> {
    let mut doc = Document::new(
        "persistent",
        &[
            "mu",
            "beta",
            "n_electrons",
            "lambda_f",
            "k",
            "exact_sum",
            "exact_c",
            "linearized_c",
            "integral_c",
            "midpoint_integral_c",
            "closed_form",
            "nonrel_c",
            "i_max",
        ],
    );
    let ring = build_ring(&args.ring, args.beta, &mut doc)?;
    let occ = match (args.electrons, args.lambda_max) {
        (Some(n), _) => {
            doc.echo("electrons", n);
            OccupationSpec::from_electrons(n)?
        }
        (None, Some(lf)) => {
            doc.echo("lambda_max", lf.to_f64());
            OccupationSpec::from_fermi_level(lf)?
        }
        (None, None) => return Err(RingError::InvalidParameter {
            name: "electrons",
            reason: "give --electrons or --lambda-max".into(),
        }),
    };
    doc.echo("electron_cap", args.electron_cap);
    let options = PersistentOptions {
        electron_cap: args.electron_cap,
    };
    let r = persistent_current_with(&ring.config, &occ, &options)?;
    doc.push_row(vec![
        r.mu.into(),
        r.beta.into(),
        r.n_electrons.into(),
        r.lambda_f.to_f64().into(),
        r.k.into(),
        r.exact_sum.into(),
        r.exact_c().into(),
        r.linearized_c.into(),
        r.integral_c.into(),
        r.midpoint_integral_c.into(),
        r.closed_form.into(),
        r.nonrel().into(),
        ring.physical.then_some(r.i_max).into(),
    ]);
    if let Some(exact) = r.exact_c() {
        doc.diagnostic("linearization_gap", (exact - r.linearized_c).abs());
    }
    doc.diagnostic("integral_gap", (r.linearized_c - r.integral_c).abs());
    doc.diagnostic("midpoint_integral_gap", (r.linearized_c - r.midpoint_integral_c).abs());
    Ok(Report {
        document: doc,
        failed: false,
    })
}

pub fn sweep(args: &SweepArgs) -> Result<Report> {
    let mut doc = Document::new(
        "sweep",
        &[
            "k_ratio",
            "mu_requested",
            "mu",
            "lambda_f",
            "n_electrons",
            "linearized_c",
            "integral_c",
            "difference",
            "error",
        ],
    );
    doc.echo("k_ratio", args.k_ratio);
    doc.echo("mu_min", args.mu_min);
    doc.echo("mu_max", args.mu_max);
    doc.echo("points", args.points as u64);
    doc.echo("snap", !args.no_snap);
    doc.echo("electron_cap", args.electron_cap);
    if !(args.k_ratio.is_finite() && args.k_ratio > 0.0) {
        return Err(RingError::InvalidParameter {
            name: "k_ratio",
            reason: "must be finite and > 0".into(),
        });
    }
    let grid = log_grid(args.mu_min, args.mu_max, args.points)?;
    let placement = if args.no_snap {
        MuPlacement::AsRequested
    } else {
        MuPlacement::Snapped
    };
    let options = PersistentOptions {
        electron_cap: args.electron_cap,
    };
    let result = c_sweep_with(&grid, args.k_ratio, placement, &options);
    for row in &result.rows {
        let n_electrons = row.lambda_f.map(|l| (l.twice_value() + 1) as u64);
        let ok = row.error.is_none();
        doc.push_row(vec![
            args.k_ratio.into(),
            row.mu_requested.into(),
            row.mu.into(),
            row.lambda_f.map(|l| l.to_f64()).into(),
            n_electrons.map_or(Cell::Null, Cell::from),
            ok.then_some(row.linearized_c).into(),
            ok.then_some(row.integral_c).into(),
            ok.then_some(row.difference).into(),
            row.error.as_ref().map_or(Cell::Null, error_cell),
        ]);
    }
    doc.diagnostic("spread", result.spread());
    doc.diagnostic("monotone_decreasing", result.is_monotone_decreasing());
    doc.diagnostic("last_value", result.last_value());
    doc.diagnostic("error_rows", result.error_count() as u64);
    Ok(Report {
        failed: result.error_count() > 0,
        document: doc,
    })
}

pub fn verify(args: &VerifyArgs) -> Result<Report> {
    let mut doc = Document::new("verify", &["check", "modes", "max_residual", "tolerance", "pass"]);
    let ring = build_ring(&args.ring, args.beta, &mut doc)?;
    let modes = selected_modes(&args.modes, &mut doc)?;
    doc.echo("nodes", args.nodes as u64);
    doc.echo("tolerance", args.tolerance);
    let c = &ring.config;

    let mut spinors = Vec::with_capacity(2 * modes.len());
    for &lambda in &modes {
        for pol in [Polarization::Plus, Polarization::Minus] {
            spinors.push(build_spinor(c, lambda, pol)?);
        }
    }
    let n_spinors = spinors.len() as u64;
    let n_modes = modes.len() as u64;

    let mut checks: Vec<(&str, u64, f64)> = Vec::new();
    checks.push(("gamma_anticommutator", 0, GammaSet::standard().anticommutator_defect()));

    let residuals: Vec<_> = spinors.iter().map(operator_residuals).collect();
    let worst = |f: fn(&ab_ring::dirac::OperatorResiduals) -> f64| residuals.iter().map(f).fold(0.0, f64::max);
    checks.push(("operator_dirac", n_spinors, worst(|r| r.dirac)));
    checks.push(("operator_energy", n_spinors, worst(|r| r.energy)));
    checks.push(("operator_angular_momentum", n_spinors, worst(|r| r.angular_momentum)));
    checks.push(("operator_polarization", n_spinors, worst(|r| r.polarization)));
    checks.push((
        "algebraic_system",
        n_spinors,
        spinors.iter().map(algebraic_residual).fold(0.0, f64::max),
    ));

    let gram = gram_matrix(&spinors, args.nodes)?;
    let mut gram_defect = 0.0f64;
    for (i, row) in gram.iter().enumerate() {
        for (j, z) in row.iter().enumerate() {
            let target = if i == j { 1.0 } else { 0.0 };
            gram_defect = gram_defect.max((z.re - target).hypot(z.im));
        }
    }
    checks.push(("gram_identity", n_spinors, gram_defect));

    let mut cross = 0.0f64;
    let mut derivative = 0.0f64;
    for &lambda in &modes {
        cross = cross.max(cross_current(c, lambda)?);
        derivative = derivative.max(richardson_derivative_residual(c, lambda, DERIVATIVE_STEP)?);
    }
    checks.push(("cross_current", n_modes, cross));
    checks.push(("derivative_identity", n_modes, derivative));

    let mut all_pass = true;
    for (name, count, residual) in checks {
        let pass = residual <= args.tolerance;
        all_pass &= pass;
        doc.push_row(vec![
            name.into(),
            count.into(),
            residual.into(),
            args.tolerance.into(),
            pass.into(),
        ]);
    }
    doc.diagnostic("all_pass", all_pass);
    Ok(Report {
        document: doc,
        failed: !all_pass,
    })
}
