//! Quantum-number arithmetic and ring parameterization.
//!
//! The angular quantum number λ takes half-odd values ±1/2, ±3/2, … and is
//! stored as the odd integer 2λ so that long mode sums never accumulate
//! representation error. Floats only appear at evaluation time.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Neg;
use std::str::FromStr;

use crate::error::{Result, RingError};

/// Reduced electron Compton wavelength ħ/(m_e c) in nanometres (CODATA 2018).
pub const REDUCED_COMPTON_WAVELENGTH_NM: f64 = 3.861_592_679_6e-4;

/// A half-odd integer λ = n + 1/2, stored as the odd integer 2λ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HalfOddInteger {
    twice: i64,
}

impl HalfOddInteger {
    pub const HALF: HalfOddInteger = HalfOddInteger { twice: 1 };

    pub fn from_twice(twice: i64) -> Result<Self> {
        if twice.rem_euclid(2) == 1 {
            Ok(Self { twice })
        } else {
            Err(RingError::NotHalfOdd(format!("{}/2", twice)))
        }
    }

    /// Accepts a float only if it is exactly a half-odd integer.
    pub fn from_f64(value: f64) -> Result<Self> {
        let twice = 2.0 * value;
        if !twice.is_finite() || twice.fract() != 0.0 || twice.abs() > (1u64 << 53) as f64 {
            return Err(RingError::NotHalfOdd(value.to_string()));
        }
        Self::from_twice(twice as i64).map_err(|_| RingError::NotHalfOdd(value.to_string()))
    }

    /// Nearest half-odd integer to `target`, ties resolved toward +∞.
    pub fn nearest(target: f64) -> Result<Self> {
        if !target.is_finite() {
            return Err(RingError::invalid("target", "must be finite"));
        }
        // floor(t) + 1/2 is never farther than 1/2 from t, and wins the tie at integer t.
        let twice = 2.0 * target.floor() + 1.0;
        if twice.abs() > (1u64 << 53) as f64 {
            return Err(RingError::invalid("target", "out of range"));
        }
        Self::from_twice(twice as i64)
    }

    /// Highest occupied level λ_F = (N_e − 1)/2 for an even electron count.
    pub fn fermi_level(n_electrons: u64) -> Result<Self> {
        if n_electrons < 2 || !n_electrons.is_multiple_of(2) {
            return Err(RingError::OddElectronCount(n_electrons));
        }
        Self::from_twice(n_electrons as i64 - 1)
    }

    pub fn twice_value(self) -> i64 {
        self.twice
    }

    pub fn to_f64(self) -> f64 {
        self.twice as f64 / 2.0
    }

    pub fn is_positive(self) -> bool {
        self.twice > 0
    }

    pub fn abs(self) -> Self {
        Self {
            twice: self.twice.abs(),
        }
    }

    /// Number of positive half-odd values up to and including `self`.
    pub fn positive_count(self) -> u64 {
        if self.twice > 0 {
            ((self.twice + 1) / 2) as u64
        } else {
            0
        }
    }

    /// Positive half-odd values 1/2, 3/2, …, `self` in ascending order.
    pub fn positive_up_to(self) -> impl Iterator<Item = HalfOddInteger> + Clone {
        (0..self.positive_count() as i64).map(|n| HalfOddInteger { twice: 2 * n + 1 })
    }
}

impl Neg for HalfOddInteger {
    type Output = HalfOddInteger;

    fn neg(self) -> Self::Output {
        HalfOddInteger { twice: -self.twice }
    }
}

impl PartialOrd for HalfOddInteger {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HalfOddInteger {
    fn cmp(&self, other: &Self) -> Ordering {
        self.twice.cmp(&other.twice)
    }
}

impl From<HalfOddInteger> for f64 {
    fn from(h: HalfOddInteger) -> f64 {
        h.to_f64()
    }
}

impl fmt::Display for HalfOddInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2", self.twice)
    }
}

/// Parses `"3/2"`, `"-1/2"` or a decimal such as `"1.5"`.
impl FromStr for HalfOddInteger {
    type Err = RingError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let bad = || RingError::NotHalfOdd(s.to_string());
            let num: i64 = num.trim().parse().map_err(|_| bad())?;
            let den: i64 = den.trim().parse().map_err(|_| bad())?;
            match den {
                2 => HalfOddInteger::from_twice(num).map_err(|_| bad()),
                _ => Err(bad()),
            }
        } else {
            let v: f64 = s
                .parse()
                .map_err(|_| RingError::NotHalfOdd(s.to_string()))?;
            HalfOddInteger::from_f64(v)
        }
    }
}

/// All modes −λ_max, …, −1/2, +1/2, …, +λ_max in ascending order.
pub fn half_odd_range(lambda_max: HalfOddInteger) -> Result<Vec<HalfOddInteger>> {
    if !lambda_max.is_positive() {
        return Err(RingError::invalid("lambda_max", "must be positive"));
    }
    let positives: Vec<_> = lambda_max.positive_up_to().collect();
    let mut out: Vec<_> = positives.iter().rev().map(|&h| -h).collect();
    out.extend(positives);
    Ok(out)
}

/// Dimensionless ring parameters: μ = MR and flux β = eBR²/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RingConfig {
    mu: f64,
    beta: f64,
    radius_natural: f64,
}

impl RingConfig {
    pub fn new(mu: f64, beta: f64) -> Result<Self> {
        if !mu.is_finite() || mu < 0.0 {
            return Err(RingError::invalid("mu", format!("must be finite and >= 0, got {mu}")));
        }
        if !beta.is_finite() {
            return Err(RingError::invalid("beta", "must be finite"));
        }
        Ok(Self {
            mu,
            beta,
            radius_natural: 1.0,
        })
    }

    /// Sets the radius in natural units. Only dimensional outputs depend on it.
    pub fn with_radius(mut self, radius_natural: f64) -> Result<Self> {
        if !radius_natural.is_finite() || radius_natural <= 0.0 {
            return Err(RingError::invalid("radius", "must be finite and > 0"));
        }
        self.radius_natural = radius_natural;
        Ok(self)
    }

    pub fn from_physical(spec: &PhysicalRingSpec, beta: f64) -> Result<Self> {
        RingConfig::new(mu_from_physical(spec), beta)?.with_radius(spec.radius_natural())
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn radius(&self) -> f64 {
        self.radius_natural
    }

    /// Mass M = μ/R.
    pub fn mass(&self) -> f64 {
        self.mu / self.radius_natural
    }

    /// Same ring with a different flux.
    pub fn with_beta(&self, beta: f64) -> Result<Self> {
        RingConfig::new(self.mu, beta)?.with_radius(self.radius_natural)
    }

    pub fn nu(&self, lambda: HalfOddInteger) -> f64 {
        nu(self, lambda)
    }

    /// Rejects the zero-energy mode μ = 0, ν = 0.
    pub fn check_mode(&self, lambda: HalfOddInteger) -> Result<f64> {
        let nu = self.nu(lambda);
        if self.mu == 0.0 && nu == 0.0 {
            Err(RingError::DegenerateMode { mu: self.mu, nu })
        } else {
            Ok(nu)
        }
    }
}

/// ν = β + λ.
pub fn nu(config: &RingConfig, lambda: HalfOddInteger) -> f64 {
    config.beta + lambda.to_f64()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalRingSpec {
    radius_nm: f64,
    effective_mass_ratio: f64,
}

impl PhysicalRingSpec {
    pub fn new(radius_nm: f64, effective_mass_ratio: f64) -> Result<Self> {
        if !(radius_nm.is_finite() && radius_nm > 0.0) {
            return Err(RingError::invalid("radius_nm", "must be finite and > 0"));
        }
        if !(effective_mass_ratio.is_finite() && effective_mass_ratio > 0.0) {
            return Err(RingError::invalid("effective_mass_ratio", "must be finite and > 0"));
        }
        Ok(Self {
            radius_nm,
            effective_mass_ratio,
        })
    }

    pub fn radius_nm(&self) -> f64 {
        self.radius_nm
    }

    pub fn effective_mass_ratio(&self) -> f64 {
        self.effective_mass_ratio
    }

    /// Radius in units of the reduced electron Compton wavelength.
    pub fn radius_natural(&self) -> f64 {
        self.radius_nm / REDUCED_COMPTON_WAVELENGTH_NM
    }
}

/// μ = m* R c / ħ.
pub fn mu_from_physical(spec: &PhysicalRingSpec) -> f64 {
    spec.effective_mass_ratio * spec.radius_nm / REDUCED_COMPTON_WAVELENGTH_NM
}
