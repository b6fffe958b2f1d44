//! Partial currents of single modes.
//!
//! Everything is expressed through χ(μ, ν) = ν/√(μ² + ν²), the current of a
//! mode in units of (2πR)⁻¹. Dimensional values are χ/(2πR).

use std::f64::consts::PI;

use crate::dirac::{
    build_spinor, current_bilinear_quadrature, solve_energy, Polarization, SuperpositionState,
    DEFAULT_QUADRATURE_NODES, NORMALIZATION_TOLERANCE,
};
use crate::error::{Result, RingError};
use crate::ring::{HalfOddInteger, RingConfig};

/// χ(μ, ν) = ν/√(μ² + ν²), evaluated through `hypot`.
pub fn chi(mu: f64, nu: f64) -> Result<f64> {
    if mu == 0.0 && nu == 0.0 {
        return Err(RingError::DegenerateMode { mu, nu });
    }
    Ok(nu / mu.hypot(nu))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeCurrent {
    pub lambda: HalfOddInteger,
    pub mu: f64,
    pub beta: f64,
    pub nu: f64,
    /// E·R
    pub energy: f64,
    /// Current in units of (2πR)⁻¹.
    pub chi: f64,
    /// I_λ = χ/(2πR) in natural units, for the configured radius.
    pub current_natural: f64,
}

impl ModeCurrent {
    /// Current in units of I_max = β/(πR); `None` at zero flux.
    pub fn in_imax_units(&self) -> Option<f64> {
        (self.beta != 0.0).then(|| self.chi / (2.0 * self.beta))
    }
}

/// I_λ = (1/2πR²)(β + λ)/E_λ = χ(μ, ν)/(2πR).
pub fn partial_current(config: &RingConfig, lambda: HalfOddInteger) -> Result<ModeCurrent> {
    let nu = config.check_mode(lambda)?;
    let energy = solve_energy(config, lambda)?;
    let chi = chi(config.mu(), nu)?;
    Ok(ModeCurrent {
        lambda,
        mu: config.mu(),
        beta: config.beta(),
        nu,
        energy,
        chi,
        current_natural: chi / (2.0 * PI * config.radius()),
    })
}

/// Current of c₊U⁺ + c₋U⁻ from the spinor bilinear R ψ̄ γ^φ ψ, by quadrature.
///
/// The κ = ± currents coincide and the cross bilinear vanishes, so the
/// result equals [`partial_current`] whatever the amplitudes.
pub fn superposition_current(state: &SuperpositionState) -> Result<ModeCurrent> {
    let norm = state.c_plus().norm_sqr() + state.c_minus().norm_sqr();
    if (norm - 1.0).abs() > NORMALIZATION_TOLERANCE {
        return Err(RingError::NotNormalized { norm });
    }
    let config = state.config();
    let lambda = state.lambda();
    let nu = config.check_mode(lambda)?;
    let psi = state.spinor()?;
    let density = current_bilinear_quadrature(&psi, &psi, DEFAULT_QUADRATURE_NODES)?.re;
    let chi = 2.0 * PI * config.radius() * density;
    Ok(ModeCurrent {
        lambda,
        mu: config.mu(),
        beta: config.beta(),
        nu,
        energy: psi.energy(),
        chi,
        current_natural: density,
    })
}

/// Angular average of the cross bilinear R Ū⁺ γ^φ U⁻ (in units of (2πR)⁻¹).
pub fn cross_current(config: &RingConfig, lambda: HalfOddInteger) -> Result<f64> {
    let up = build_spinor(config, lambda, Polarization::Plus)?;
    let down = build_spinor(config, lambda, Polarization::Minus)?;
    let c = current_bilinear_quadrature(&up, &down, DEFAULT_QUADRATURE_NODES)?;
    Ok(2.0 * PI * config.radius() * c.norm())
}

/// |χ − R (E(β+h) − E(β−h))/(2h)|: residual of I_λ = (1/2π) ∂E_λ/∂β,
/// in units of (2πR)⁻¹.
pub fn current_energy_derivative_check(
    config: &RingConfig,
    lambda: HalfOddInteger,
    h: f64,
) -> Result<f64> {
    if !(h.is_finite() && h > 0.0) {
        return Err(RingError::invalid("h", "step must be finite and > 0"));
    }
    let current = partial_current(config, lambda)?;
    let ep = solve_energy(&config.with_beta(config.beta() + h)?, lambda)?;
    let em = solve_energy(&config.with_beta(config.beta() - h)?, lambda)?;
    Ok((current.chi - (ep - em) / (2.0 * h)).abs())
}

/// Observed convergence order log₂(r(h)/r(h/2)) of the derivative residual.
pub fn derivative_convergence_order(config: &RingConfig, lambda: HalfOddInteger, h: f64) -> Result<f64> {
    let coarse = current_energy_derivative_check(config, lambda, h)?;
    let fine = current_energy_derivative_check(config, lambda, h / 2.0)?;
    Ok((coarse / fine).log2())
}

/// Richardson-extrapolated derivative (4 D(h/2) − D(h))/3 and its residual against χ.
pub fn richardson_derivative_residual(config: &RingConfig, lambda: HalfOddInteger, h: f64) -> Result<f64> {
    let d = |step: f64| -> Result<f64> {
        let ep = solve_energy(&config.with_beta(config.beta() + step)?, lambda)?;
        let em = solve_energy(&config.with_beta(config.beta() - step)?, lambda)?;
        Ok((ep - em) / (2.0 * step))
    };
    let extrapolated = (4.0 * d(h / 2.0)? - d(h)?) / 3.0;
    Ok((partial_current(config, lambda)?.chi - extrapolated).abs())
}

/// Non-relativistic energy and current of a mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonRelLimits {
    /// Ẽ_λ·R = ν²/(2μ)
    pub energy: f64,
    /// Ĩ_λ in units of (2πR)⁻¹, i.e. ν/μ
    pub chi: f64,
}

pub fn nonrel_limits(config: &RingConfig, lambda: HalfOddInteger) -> Result<NonRelLimits> {
    let mu = config.mu();
    if mu <= 0.0 {
        return Err(RingError::invalid("mu", "non-relativistic limit needs mu > 0"));
    }
    let nu = config.nu(lambda);
    Ok(NonRelLimits {
        energy: nu * nu / (2.0 * mu),
        chi: nu / mu,
    })
}

/// Largest |χ(μ, ν) − ν/μ| on a uniform grid over |ν| ≤ window·μ.
/// Returns (supremum, ν at which it occurs).
pub fn nonrel_deviation_sup(mu: f64, window: f64, samples: usize) -> Result<(f64, f64)> {
    if mu <= 0.0 || samples < 2 || window <= 0.0 {
        return Err(RingError::invalid("mu", "need mu > 0, window > 0, samples >= 2"));
    }
    let lo = -window * mu;
    let step = 2.0 * window * mu / (samples - 1) as f64;
    let mut best = (0.0, 0.0);
    for i in 0..samples {
        let nu = lo + step * i as f64;
        let d = (nu / mu.hypot(nu) - nu / mu).abs();
        if d > best.0 {
            best = (d, nu);
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;
    use proptest::prelude::*;

    fn h(twice: i64) -> HalfOddInteger {
        HalfOddInteger::from_twice(twice).unwrap()
    }

    fn cfg(mu: f64, beta: f64) -> RingConfig {
        RingConfig::new(mu, beta).unwrap()
    }

    #[test]
    fn chi_examples() {
        assert_eq!(chi(3.0, 0.0).unwrap(), 0.0);
        for mu in [0.1, 1.0, 100.0, 3495.0] {
            assert_abs_diff_eq!(chi(mu, 5.0 * mu).unwrap(), 0.980580676, epsilon = 1e-9);
            assert_abs_diff_eq!(chi(mu, -5.0 * mu).unwrap(), -0.980580676, epsilon = 1e-9);
        }
        let direct = chi(1.0, 1.0).unwrap();
        assert_abs_diff_eq!(direct, 0.5f64.sqrt(), epsilon = 1e-15);
        // ν = β + λ = 1 with β = 1/2, λ = 1/2; χ = ν/(E R)
        let c = cfg(1.0, 0.5);
        assert_abs_diff_eq!(direct, c.nu(h(1)) / solve_energy(&c, h(1)).unwrap(), epsilon = 1e-15);
        assert!(chi(0.0, 0.0).is_err());
        assert_eq!(chi(0.0, -2.0).unwrap(), -1.0);
    }

    #[test]
    fn chi_survives_extreme_arguments() {
        assert_abs_diff_eq!(chi(1e300, 1e300).unwrap(), 0.5f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(chi(1e-300, 1e-300).unwrap(), 0.5f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(chi(1e6, 1e7).unwrap(), 10.0 / 101f64.sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn partial_current_examples() {
        let c = cfg(7.0, 0.0);
        for twice in (1..40).step_by(2) {
            let a = partial_current(&c, h(twice)).unwrap();
            let b = partial_current(&c, h(-twice)).unwrap();
            assert_eq!(a.chi + b.chi, 0.0);
        }
        let m = partial_current(&cfg(1.0, 0.25), h(1)).unwrap();
        assert_abs_diff_eq!(m.chi, 0.6, epsilon = 1e-15);
        assert_abs_diff_eq!(m.energy, 1.25, epsilon = 1e-15);
        let r = cfg(1.0, 0.25).with_radius(3.0).unwrap();
        assert_abs_diff_eq!(
            partial_current(&r, h(1)).unwrap().current_natural,
            0.6 / (6.0 * PI),
            epsilon = 1e-15
        );
        // heavy ring: χ → ν/μ
        let heavy = cfg(1e6, 0.0);
        let m = partial_current(&heavy, h(3)).unwrap();
        assert_abs_diff_eq!(m.chi / (1.5 / 1e6), 1.0, epsilon = 1e-11);
        assert!(partial_current(&cfg(0.0, 0.5), h(-1)).is_err());
    }

    #[test]
    fn imax_units() {
        let m = partial_current(&cfg(1.0, 0.25), h(1)).unwrap();
        assert_abs_diff_eq!(m.in_imax_units().unwrap(), 1.2, epsilon = 1e-15);
        assert!(partial_current(&cfg(1.0, 0.0), h(1)).unwrap().in_imax_units().is_none());
    }

    #[test]
    fn pure_states_carry_the_same_current() {
        let c = cfg(2.0, 0.3);
        let lam = h(5);
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let closed = partial_current(&c, lam).unwrap().chi;
        let up = superposition_current(&SuperpositionState::new(one, zero, lam, c).unwrap()).unwrap();
        let down = superposition_current(&SuperpositionState::new(zero, one, lam, c).unwrap()).unwrap();
        assert_abs_diff_eq!(up.chi, closed, epsilon = 1e-12);
        assert_abs_diff_eq!(down.chi, closed, epsilon = 1e-12);
        let r = 0.5f64.sqrt();
        let mix = SuperpositionState::new(Complex64::new(r, 0.0), Complex64::new(r, 0.0), lam, c).unwrap();
        assert_abs_diff_eq!(superposition_current(&mix).unwrap().chi, closed, epsilon = 1e-12);
        assert!(cross_current(&c, lam).unwrap() < 1e-12);
    }

    #[test]
    fn derivative_identity() {
        let r = current_energy_derivative_check(&cfg(10.0, 0.0), h(1), 1e-4).unwrap();
        assert!(r < 1e-8, "{r}");
        let order = derivative_convergence_order(&cfg(1.0, 0.1), h(1), 1e-3).unwrap();
        let ratio = 2f64.powf(order);
        assert!((3.5..=4.5).contains(&ratio), "{ratio}");
        for twice in [1, -1, 3, -3] {
            let r = current_energy_derivative_check(&cfg(1.5, 0.0), h(twice), 1e-4).unwrap();
            assert!(r < 1e-7);
        }
        let plain = current_energy_derivative_check(&cfg(1.0, 0.1), h(1), 1e-2).unwrap();
        let rich = richardson_derivative_residual(&cfg(1.0, 0.1), h(1), 1e-2).unwrap();
        assert!(rich < plain / 50.0, "{rich} vs {plain}");
        assert!(current_energy_derivative_check(&cfg(1.0, 0.1), h(1), 0.0).is_err());
    }

    #[test]
    fn nonrel_examples() {
        let lim = nonrel_limits(&cfg(1000.0, 0.0), h(1)).unwrap();
        assert_abs_diff_eq!(lim.energy, 1.25e-4, epsilon = 1e-18);
        assert_abs_diff_eq!(lim.chi, 5e-4, epsilon = 1e-18);
        assert!(nonrel_limits(&cfg(0.0, 0.1), h(1)).is_err());
        // (E − M)R → Ẽ R as μ grows at fixed ν
        let mut last = f64::INFINITY;
        for mu in [1.0, 10.0, 100.0, 1000.0] {
            let c = cfg(mu, 0.0);
            let e = solve_energy(&c, h(1)).unwrap();
            let exact = 0.25 / (e + mu); // (E − M)R without cancellation
            let ratio = exact / nonrel_limits(&c, h(1)).unwrap().energy;
            assert!((ratio - 1.0).abs() < last);
            last = (ratio - 1.0).abs();
        }
        assert!(last < 1e-6);
    }

    #[test]
    fn nonrel_window_supremum() {
        let (sup, at) = nonrel_deviation_sup(10.0, 0.5, 100_001).unwrap();
        assert_abs_diff_eq!(sup, 0.5 - 0.5 / 1.25f64.sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(at.abs(), 5.0, epsilon = 1e-9);
    }

    proptest! {
        #[test]
        fn chi_is_odd_bounded_and_scale_free(mu in 1e-3f64..1e4, nu in -1e5f64..1e5, s in 1e-2f64..1e2) {
            let x = chi(mu, nu).unwrap();
            prop_assert_eq!(chi(mu, -nu).unwrap(), -x);
            prop_assert!(x.abs() < 1.0);
            prop_assert!(x == 0.0 || x.signum() == nu.signum());
            prop_assert!((chi(s * mu, s * nu).unwrap() - x).abs() < 1e-14);
            let e = mu.hypot(nu);
            prop_assert!((x * x + (mu / e).powi(2) - 1.0).abs() < 1e-14);
            prop_assert!(chi(mu, 5.0 * mu).unwrap() > 0.98);
        }

        #[test]
        fn chi_is_increasing(mu in 1e-2f64..1e3, nu in -1e3f64..1e3, d in 1e-3f64..10.0) {
            prop_assert!(chi(mu, nu + d).unwrap() > chi(mu, nu).unwrap());
        }

        #[test]
        fn superposition_is_phase_and_split_invariant(
            theta in 0.0f64..std::f64::consts::FRAC_PI_2,
            a in 0.0f64..6.3,
            b in 0.0f64..6.3,
        ) {
            let c = cfg(0.8, 0.05);
            let lam = h(3);
            let st = SuperpositionState::new(
                Complex64::from_polar(theta.cos(), a),
                Complex64::from_polar(theta.sin(), b),
                lam,
                c,
            ).unwrap();
            let got = superposition_current(&st).unwrap().chi;
            prop_assert!((got - partial_current(&c, lam).unwrap().chi).abs() < 1e-12);
        }
    }
}
