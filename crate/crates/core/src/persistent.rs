//! T = 0 persistent current of a ring holding an even number of electrons.
//!
//! Occupied modes are λ = ±1/2, …, ±λ_F with λ_F = (N_e − 1)/2. The current
//! is reported four ways: the exact sum of χ pairs, its small-β
//! linearization c(μ) = Σ j(μ, λ), the integral ∫₀^{λ_F} j dλ, and the
//! closed form k/√(1 + k²) with k = λ_F/μ.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::currents::chi;
use crate::error::{Result, RingError};
use crate::ring::{HalfOddInteger, RingConfig};
use crate::summation::compensated_sum;

/// Default upper bound on N_e.
pub const DEFAULT_ELECTRON_CAP: u64 = 10_000_000;

/// j(μ, λ) = μ²/(μ² + λ²)^{3/2}, the β-derivative of a χ pair.
pub fn j_kernel(mu: f64, lambda: f64) -> Result<f64> {
    if !(mu.is_finite() && lambda.is_finite()) || mu < 0.0 || lambda < 0.0 {
        return Err(RingError::invalid("j_kernel", "mu and lambda must be finite and >= 0"));
    }
    if mu == 0.0 && lambda == 0.0 {
        return Err(RingError::DegenerateMode { mu, nu: lambda });
    }
    let r = mu.hypot(lambda);
    let s = mu / r;
    Ok(s * s / r)
}

/// χ(μ, λ + β) + χ(μ, −λ + β): the current of the ±λ pair in units of (2πR)⁻¹.
pub fn pair_sum_exact(config: &RingConfig, lambda: HalfOddInteger) -> Result<f64> {
    let up = config.check_mode(lambda)?;
    let down = config.check_mode(-lambda)?;
    Ok(chi(config.mu(), up)? + chi(config.mu(), down)?)
}

/// Occupation of the lowest modes by N_e electrons.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OccupationSpec {
    n_electrons: u64,
    lambda_f: HalfOddInteger,
}

impl OccupationSpec {
    pub fn from_electrons(n_electrons: u64) -> Result<Self> {
        Ok(Self {
            n_electrons,
            lambda_f: HalfOddInteger::fermi_level(n_electrons)?,
        })
    }

    pub fn from_fermi_level(lambda_f: HalfOddInteger) -> Result<Self> {
        if !lambda_f.is_positive() {
            return Err(RingError::invalid("lambda_f", "must be positive"));
        }
        Ok(Self {
            n_electrons: (lambda_f.twice_value() + 1) as u64,
            lambda_f,
        })
    }

    pub fn n_electrons(&self) -> u64 {
        self.n_electrons
    }

    pub fn lambda_f(&self) -> HalfOddInteger {
        self.lambda_f
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PersistentOptions {
    pub electron_cap: u64,
}

impl Default for PersistentOptions {
    fn default() -> Self {
        Self {
            electron_cap: DEFAULT_ELECTRON_CAP,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PersistentResult {
    pub mu: f64,
    pub beta: f64,
    pub n_electrons: u64,
    pub lambda_f: HalfOddInteger,
    /// k = λ_F/μ
    pub k: f64,
    /// Σ_{λ=1/2}^{λ_F} [χ(μ, λ+β) + χ(μ, −λ+β)], units of (2πR)⁻¹.
    pub exact_sum: f64,
    /// c(μ) = Σ_{λ=1/2}^{λ_F} j(μ, λ)
    pub linearized_c: f64,
    /// λ_F/√(μ² + λ_F²)
    pub integral_c: f64,
    /// The same integral taken up to N_e/2 = λ_F + 1/2, which is where the
    /// half-odd sum behaves as a midpoint rule.
    pub midpoint_integral_c: f64,
    /// k/√(1 + k²)
    pub closed_form: f64,
    /// I_max = β/(πR) in natural units.
    pub i_max: f64,
}

impl PersistentResult {
    /// Exact sum in units of I_max: exact_sum/(2β). `None` at zero flux.
    pub fn exact_c(&self) -> Option<f64> {
        (self.beta != 0.0).then(|| self.exact_sum / (2.0 * self.beta))
    }

    /// Non-relativistic total current k, in units of I_max.
    pub fn nonrel(&self) -> f64 {
        self.k
    }
}

/// c(μ) = Σ_{λ=1/2}^{λ_F} j(μ, λ) with compensated accumulation.
pub fn linearized_c(mu: f64, lambda_f: HalfOddInteger) -> Result<f64> {
    if mu.is_nan() || mu <= 0.0 {
        return Err(RingError::invalid("mu", "linearized current needs mu > 0"));
    }
    let terms: Result<Vec<f64>> = lambda_f
        .positive_up_to()
        .map(|l| j_kernel(mu, l.to_f64()))
        .collect();
    Ok(compensated_sum(terms?))
}

/// ∫₀^{upper} j(μ, λ) dλ = upper/√(μ² + upper²).
pub fn integral_c(mu: f64, upper: f64) -> f64 {
    if upper == 0.0 {
        0.0
    } else {
        upper / mu.hypot(upper)
    }
}

/// k/√(1 + k²).
pub fn closed_form(k: f64) -> f64 {
    if k.is_infinite() {
        k.signum()
    } else {
        k / 1f64.hypot(k)
    }
}

pub fn persistent_current(config: &RingConfig, occ: &OccupationSpec) -> Result<PersistentResult> {
    persistent_current_with(config, occ, &PersistentOptions::default())
}

pub fn persistent_current_with(
    config: &RingConfig,
    occ: &OccupationSpec,
    options: &PersistentOptions,
) -> Result<PersistentResult> {
    if occ.n_electrons > options.electron_cap {
        return Err(RingError::OverflowGuard {
            requested: occ.n_electrons,
            cap: options.electron_cap,
        });
    }
    let mu = config.mu();
    let lambda_f = occ.lambda_f;
    let pairs: Result<Vec<f64>> = lambda_f
        .positive_up_to()
        .map(|l| pair_sum_exact(config, l))
        .collect();
    let exact_sum = compensated_sum(pairs?);
    let linearized_c = linearized_c(mu, lambda_f)?;
    let lf = lambda_f.to_f64();
    let k = lf / mu;
    Ok(PersistentResult {
        mu,
        beta: config.beta(),
        n_electrons: occ.n_electrons,
        lambda_f,
        k,
        exact_sum,
        linearized_c,
        integral_c: integral_c(mu, lf),
        midpoint_integral_c: integral_c(mu, lf + 0.5),
        closed_form: closed_form(k),
        i_max: config.beta() / (PI * config.radius()),
    })
}

/// Non-relativistic total current Ĩ = k I_max, in units of I_max.
pub fn nonrel_persistent(k: f64) -> Result<f64> {
    if k.is_nan() || k < 0.0 {
        return Err(RingError::invalid("k", "must be >= 0"));
    }
    Ok(k)
}

/// How a sweep places μ once λ_F has been rounded onto the half-odd lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MuPlacement {
    /// Move μ to λ_F/k so that every row has exactly the requested ratio.
    #[default]
    Snapped,
    /// Keep the grid μ; the effective ratio λ_F/μ jitters by up to 1/(2μ).
    AsRequested,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub mu_requested: f64,
    pub mu: f64,
    pub lambda_f: Option<HalfOddInteger>,
    pub linearized_c: f64,
    pub integral_c: f64,
    pub difference: f64,
    pub error: Option<RingError>,
}

impl SweepRow {
    fn failed(mu_requested: f64, error: RingError) -> Self {
        Self {
            mu_requested,
            mu: mu_requested,
            lambda_f: None,
            linearized_c: f64::NAN,
            integral_c: f64::NAN,
            difference: f64::NAN,
            error: Some(error),
        }
    }

    pub fn is_ok(&self) -> bool {
        self.error.is_none()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub k_ratio: f64,
    pub placement: MuPlacement,
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.rows.iter().filter(|r| r.is_ok()).map(|r| r.linearized_c)
    }

    /// max − min of c(μ) over successful rows.
    pub fn spread(&self) -> f64 {
        let (lo, hi) = self
            .values()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
        if lo > hi {
            f64::NAN
        } else {
            hi - lo
        }
    }

    pub fn is_monotone_decreasing(&self) -> bool {
        let v: Vec<f64> = self.values().collect();
        v.windows(2).all(|w| w[1] < w[0])
    }

    pub fn error_count(&self) -> usize {
        self.rows.iter().filter(|r| !r.is_ok()).count()
    }

    pub fn last_value(&self) -> Option<f64> {
        self.values().last()
    }
}

/// `points` values from `min` to `max`, equally spaced in log μ.
pub fn log_grid(min: f64, max: f64, points: usize) -> Result<Vec<f64>> {
    if !(min > 0.0 && max >= min && max.is_finite()) || points == 0 {
        return Err(RingError::invalid("grid", "need 0 < min <= max and points >= 1"));
    }
    if points == 1 {
        return Ok(vec![min]);
    }
    let (a, b) = (min.ln(), max.ln());
    let step = (b - a) / (points - 1) as f64;
    Ok((0..points)
        .map(|i| {
            if i == 0 {
                min
            } else if i == points - 1 {
                max
            } else {
                (a + step * i as f64).exp()
            }
        })
        .collect())
}

/// c(μ) over a grid of μ with λ_F the nearest half-odd integer to k·μ
/// (ties toward +∞). Row failures are recorded, not propagated.
pub fn c_sweep(mu_grid: &[f64], k_ratio: f64) -> SweepResult {
    c_sweep_with(mu_grid, k_ratio, MuPlacement::default(), &PersistentOptions::default())
}

pub fn c_sweep_with(
    mu_grid: &[f64],
    k_ratio: f64,
    placement: MuPlacement,
    options: &PersistentOptions,
) -> SweepResult {
    let rows = mu_grid
        .par_iter()
        .map(|&mu| sweep_row(mu, k_ratio, placement, options).unwrap_or_else(|e| SweepRow::failed(mu, e)))
        .collect();
    SweepResult {
        k_ratio,
        placement,
        rows,
    }
}

fn sweep_row(
    mu_requested: f64,
    k_ratio: f64,
    placement: MuPlacement,
    options: &PersistentOptions,
) -> Result<SweepRow> {
    if !(mu_requested > 0.0 && mu_requested.is_finite()) {
        return Err(RingError::invalid("mu", "grid values must be finite and > 0"));
    }
    if !(k_ratio > 0.0 && k_ratio.is_finite()) {
        return Err(RingError::invalid("k_ratio", "must be finite and > 0"));
    }
    let lambda_f = HalfOddInteger::nearest(k_ratio * mu_requested)?;
    let occ = OccupationSpec::from_fermi_level(lambda_f)?;
    if occ.n_electrons > options.electron_cap {
        return Err(RingError::OverflowGuard {
            requested: occ.n_electrons,
            cap: options.electron_cap,
        });
    }
    let mu = match placement {
        MuPlacement::Snapped => lambda_f.to_f64() / k_ratio,
        MuPlacement::AsRequested => mu_requested,
    };
    let lin = linearized_c(mu, lambda_f)?;
    let int = integral_c(mu, lambda_f.to_f64());
    Ok(SweepRow {
        mu_requested,
        mu,
        lambda_f: Some(lambda_f),
        linearized_c: lin,
        integral_c: int,
        difference: lin - int,
        error: None,
    })
}
