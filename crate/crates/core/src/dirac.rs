//! Dirac fermions on an ideal ring.
//!
//! Gamma matrices use the standard (Dirac) representation with diagonal γ⁰.
//! A mode of angular quantum number λ has the separated form
//!
//! ```text
//! ψ(t, φ) = (f₁ e^{i(λ−½)φ}, f₂ e^{i(λ+½)φ}, g₁ e^{i(λ−½)φ}, g₂ e^{i(λ+½)φ}) e^{−iEt}
//! ```
//!
//! so every operator in the commuting set {E_D, H, K, J₃} acts on the four
//! amplitudes through known phase factors. Amplitudes are stored at t = 0.

use std::f64::consts::{FRAC_PI_4, PI};
use std::sync::LazyLock;

use nalgebra::{Matrix4, Vector4};
use num_complex::Complex64;

use crate::error::{Result, RingError};
use crate::ring::{HalfOddInteger, RingConfig};

pub type Matrix4c = Matrix4<Complex64>;
pub type Vector4c = Vector4<Complex64>;

/// Default node count for trapezoid quadrature over the ring.
pub const DEFAULT_QUADRATURE_NODES: usize = 2048;
/// Smallest node count accepted by the quadrature routines.
pub const MIN_QUADRATURE_NODES: usize = 64;
/// Tolerance on |c₊|² + |c₋|² − 1.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Minkowski metric diag(+1, −1, −1, −1).
pub const METRIC: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

/// The four Dirac matrices in the standard representation.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaSet {
    pub gamma: [Matrix4c; 4],
}

impl GammaSet {
    pub fn standard() -> Self {
        let sigma = pauli();
        let mut gamma = [Matrix4c::zeros(); 4];
        gamma[0] = Matrix4c::from_diagonal(&Vector4c::new(ONE, ONE, -ONE, -ONE));
        for k in 0..3 {
            let mut g = Matrix4c::zeros();
            for r in 0..2 {
                for c in 0..2 {
                    g[(r, c + 2)] = sigma[k][r][c];
                    g[(r + 2, c)] = -sigma[k][r][c];
                }
            }
            gamma[k + 1] = g;
        }
        Self { gamma }
    }

    pub fn convention(&self) -> &'static str {
        "standard (diagonal gamma0)"
    }

    /// Largest entry of {γ^a, γ^b} − 2η^{ab}·1 over all index pairs.
    pub fn anticommutator_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for (a, ga) in self.gamma.iter().enumerate() {
            for (b, gb) in self.gamma.iter().enumerate() {
                let ac = ga * gb + gb * ga;
                let eta = if a == b { 2.0 * METRIC[a] } else { 0.0 };
                let target = Matrix4c::identity() * re(eta);
                worst = worst.max(max_abs(&(ac - target)));
            }
        }
        worst
    }
}

static STANDARD: LazyLock<GammaSet> = LazyLock::new(GammaSet::standard);

fn gammas() -> &'static GammaSet {
    &STANDARD
}

fn pauli() -> [[[Complex64; 2]; 2]; 3] {
    [
        [[ZERO, ONE], [ONE, ZERO]],
        [[ZERO, -I], [I, ZERO]],
        [[ONE, ZERO], [ZERO, -ONE]],
    ]
}

pub(crate) fn max_abs(m: &Matrix4c) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// Dirac adjoint of a matrix: γ⁰ A† γ⁰.
pub fn dirac_adjoint(m: &Matrix4c) -> Matrix4c {
    let g0 = gammas().gamma[0];
    g0 * m.adjoint() * g0
}

/// γ^φ = (1/R)(−γ¹ sin φ + γ² cos φ).
pub fn gamma_phi(phi: f64, radius: f64) -> Matrix4c {
    let g = gammas();
    (g.gamma[1] * re(-phi.sin()) + g.gamma[2] * re(phi.cos())) / re(radius)
}

/// ∂_φ γ^φ = −(1/R)(γ¹ cos φ + γ² sin φ).
pub fn gamma_phi_derivative(phi: f64, radius: f64) -> Matrix4c {
    let g = gammas();
    (g.gamma[1] * re(-phi.cos()) + g.gamma[2] * re(-phi.sin())) / re(radius)
}

/// Polarization operator K = 2γ⁰S₃.
pub fn polarization_operator() -> Matrix4c {
    Matrix4c::from_diagonal(&Vector4c::new(ONE, -ONE, -ONE, ONE))
}

/// Spin projection S₃ = ½ diag(σ₃, σ₃).
pub fn spin_z() -> Matrix4c {
    Matrix4c::from_diagonal(&Vector4c::new(re(0.5), re(-0.5), re(0.5), re(-0.5)))
}

/// Matrix of the separated Dirac equation acting on (f₁, f₂, g₁, g₂).
///
/// `energy` is the dimensionless E·R. Diagonal entries are E − M, E − M,
/// −E − M, −E − M; the antidiagonal carries ±(i/R)(λ + β).
pub fn algebraic_system(config: &RingConfig, lambda: HalfOddInteger, energy: f64) -> Matrix4c {
    let r = config.radius();
    let e = energy / r;
    let m = config.mass();
    let k = I * re(config.nu(lambda) / r);
    let mut a = Matrix4c::zeros();
    a[(0, 0)] = re(e - m);
    a[(1, 1)] = re(e - m);
    a[(2, 2)] = re(-e - m);
    a[(3, 3)] = re(-e - m);
    a[(0, 3)] = k;
    a[(1, 2)] = -k;
    a[(2, 1)] = -k;
    a[(3, 0)] = k;
    a
}

/// Which root of E² = M² + ν²/R² is requested.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnergyBranch {
    Particle,
    Antiparticle,
}

/// Particle energy E_λ·R = √(μ² + ν²).
pub fn solve_energy(config: &RingConfig, lambda: HalfOddInteger) -> Result<f64> {
    let nu = config.check_mode(lambda)?;
    Ok(config.mu().hypot(nu))
}

pub fn solve_energy_branch(
    config: &RingConfig,
    lambda: HalfOddInteger,
    branch: EnergyBranch,
) -> Result<f64> {
    let e = solve_energy(config, lambda)?;
    Ok(match branch {
        EnergyBranch::Particle => e,
        EnergyBranch::Antiparticle => -e,
    })
}

/// Eigenvalue κ = ±1 of K; `Plus` is the Pauli spinor of spin up along the field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarization {
    Plus,
    Minus,
}

impl Polarization {
    pub fn kappa(self) -> f64 {
        match self {
            Polarization::Plus => 1.0,
            Polarization::Minus => -1.0,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Polarization::Plus => Polarization::Minus,
            Polarization::Minus => Polarization::Plus,
        }
    }
}

/// A normalized particle solution U^±_λ at t = 0.
#[derive(Debug, Clone, PartialEq)]
pub struct RingSpinor {
    coeffs: Vector4c,
    lambda: HalfOddInteger,
    energy: f64,
    polarization: Polarization,
    config: RingConfig,
}

impl RingSpinor {
    /// Assembles a spinor record without checking that it solves anything.
    /// Used to probe the residual machinery with deliberately wrong data.
    pub fn from_parts(
        coeffs: Vector4c,
        lambda: HalfOddInteger,
        energy: f64,
        polarization: Polarization,
        config: RingConfig,
    ) -> Self {
        Self {
            coeffs,
            lambda,
            energy,
            polarization,
            config,
        }
    }

    /// Normalized amplitudes (f₁, f₂, g₁, g₂), including the 1/(2√(πER)) factor.
    pub fn coeffs(&self) -> &Vector4c {
        &self.coeffs
    }

    pub fn lambda(&self) -> HalfOddInteger {
        self.lambda
    }

    /// Dimensionless E·R.
    pub fn energy(&self) -> f64 {
        self.energy
    }

    pub fn polarization(&self) -> Polarization {
        self.polarization
    }

    pub fn kappa(&self) -> f64 {
        self.polarization.kappa()
    }

    pub fn config(&self) -> &RingConfig {
        &self.config
    }

    /// Angular exponents of the four components: (λ−½, λ+½, λ−½, λ+½).
    pub fn phase_exponents(&self) -> [f64; 4] {
        phase_exponents(self.lambda)
    }

    /// ψ(t = 0, φ).
    pub fn eval(&self, phi: f64) -> Vector4c {
        let m = self.phase_exponents();
        Vector4c::from_fn(|k, _| self.coeffs[k] * Complex64::from_polar(1.0, m[k] * phi))
    }

    /// ∂_φ ψ(t = 0, φ).
    pub fn eval_dphi(&self, phi: f64) -> Vector4c {
        let m = self.phase_exponents();
        let psi = self.eval(phi);
        Vector4c::from_fn(|k, _| I * re(m[k]) * psi[k])
    }
}

fn phase_exponents(lambda: HalfOddInteger) -> [f64; 4] {
    let l = lambda.to_f64();
    [l - 0.5, l + 0.5, l - 0.5, l + 0.5]
}

/// Normalized particle spinor U^κ_λ.
///
/// κ = +1: (√(E+M), 0, 0, i ν/(R√(E+M))) / (2√(πER));
/// κ = −1: (0, √(E+M), −i ν/(R√(E+M)), 0) / (2√(πER)).
/// Both have |f|² + |g|² = 2E and solve the separated system exactly.
pub fn build_spinor(
    config: &RingConfig,
    lambda: HalfOddInteger,
    polarization: Polarization,
) -> Result<RingSpinor> {
    let energy = solve_energy(config, lambda)?;
    if energy <= 0.0 {
        return Err(RingError::DegenerateMode {
            mu: config.mu(),
            nu: config.nu(lambda),
        });
    }
    let r = config.radius();
    let e = energy / r;
    let upper = (e + config.mass()).sqrt();
    let lower = config.nu(lambda) / r / upper;
    let norm = 1.0 / (2.0 * (PI * energy).sqrt());
    let coeffs = match polarization {
        Polarization::Plus => Vector4c::new(re(upper), ZERO, ZERO, I * re(lower)),
        Polarization::Minus => Vector4c::new(ZERO, re(upper), -I * re(lower), ZERO),
    } * re(norm);
    Ok(RingSpinor {
        coeffs,
        lambda,
        energy,
        polarization,
        config: *config,
    })
}

/// Trapezoid nodes φ_j = 2πj/n on [0, 2π).
pub fn ring_nodes(nodes: usize) -> impl Iterator<Item = f64> {
    let h = 2.0 * PI / nodes as f64;
    (0..nodes).map(move |j| j as f64 * h)
}

fn check_nodes(nodes: usize) -> Result<()> {
    if nodes < MIN_QUADRATURE_NODES {
        Err(RingError::invalid(
            "nodes",
            format!("need at least {MIN_QUADRATURE_NODES}, got {nodes}"),
        ))
    } else {
        Ok(())
    }
}

fn check_same_ring(a: &RingConfig, b: &RingConfig) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(RingError::ConfigMismatch)
    }
}

/// ⟨a, b⟩ = R ∫₀^{2π} ψ_a† ψ_b dφ by the composite trapezoid rule.
pub fn scalar_product_quadrature(a: &RingSpinor, b: &RingSpinor, nodes: usize) -> Result<Complex64> {
    check_nodes(nodes)?;
    check_same_ring(&a.config, &b.config)?;
    let r = a.config.radius();
    let w = 2.0 * PI / nodes as f64;
    let sum: Complex64 = ring_nodes(nodes)
        .map(|phi| a.eval(phi).dotc(&b.eval(phi)))
        .sum();
    Ok(sum * re(r * w))
}

/// Gram matrix of a mode set under the quadrature scalar product.
pub fn gram_matrix(spinors: &[RingSpinor], nodes: usize) -> Result<Vec<Vec<Complex64>>> {
    check_nodes(nodes)?;
    if let Some(first) = spinors.first() {
        for s in spinors {
            check_same_ring(&first.config, &s.config)?;
        }
    }
    let samples: Vec<Vec<Vector4c>> = spinors
        .iter()
        .map(|s| ring_nodes(nodes).map(|phi| s.eval(phi)).collect())
        .collect();
    let scale = spinors
        .first()
        .map_or(0.0, |s| s.config.radius() * 2.0 * PI / nodes as f64);
    Ok(samples
        .iter()
        .map(|a| {
            samples
                .iter()
                .map(|b| {
                    let sum: Complex64 = a.iter().zip(b).map(|(x, y)| x.dotc(y)).sum();
                    sum * re(scale)
                })
                .collect()
        })
        .collect())
}

/// Current bilinear R ψ̄_a γ^φ ψ_b at angle φ.
pub fn current_bilinear(a: &RingSpinor, b: &RingSpinor, phi: f64) -> Complex64 {
    let g0 = gammas().gamma[0];
    let r = a.config.radius();
    let m = g0 * gamma_phi(phi, r);
    a.eval(phi).dotc(&(m * b.eval(phi))) * re(r)
}

/// Angular average (1/2π)∫ R ψ̄_a γ^φ ψ_b dφ by trapezoid quadrature.
pub fn current_bilinear_quadrature(a: &RingSpinor, b: &RingSpinor, nodes: usize) -> Result<Complex64> {
    check_nodes(nodes)?;
    check_same_ring(&a.config, &b.config)?;
    let sum: Complex64 = ring_nodes(nodes).map(|phi| current_bilinear(a, b, phi)).sum();
    Ok(sum / re(nodes as f64))
}

/// Residual norms ‖(Op − eigenvalue)ψ‖ for the commuting set, in the ring
/// scalar-product norm (a normalized spinor has norm 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorResiduals {
    /// E_D ψ = M ψ
    pub dirac: f64,
    /// H ψ = E ψ
    pub energy: f64,
    /// J₃ ψ = λ ψ
    pub angular_momentum: f64,
    /// K ψ = κ ψ
    pub polarization: f64,
}

impl OperatorResiduals {
    pub fn max(&self) -> f64 {
        self.dirac
            .max(self.energy)
            .max(self.angular_momentum)
            .max(self.polarization)
    }
}

const RESIDUAL_SAMPLE_ANGLES: [f64; 6] = [0.0, FRAC_PI_4, 1.0, 2.5, 4.0, 5.9];

/// (E_D ψ)(φ) with time derivative i∂_t → E and angular derivative from the phases.
pub fn apply_dirac_operator(s: &RingSpinor, phi: f64) -> Vector4c {
    let g0 = gammas().gamma[0];
    let r = s.config.radius();
    let e = s.energy / r;
    let psi = s.eval(phi);
    let dpsi = s.eval_dphi(phi);
    let beta = re(s.config.beta());
    g0 * psi * re(e)
        + gamma_phi(phi, r) * (dpsi * I - psi * beta)
        + gamma_phi_derivative(phi, r) * psi * (I * 0.5)
}

/// i∂_t ψ generated by the Dirac equation: γ⁰[M − γ^φ(i∂_φ − β) − (i/2)∂_φγ^φ] ψ.
pub fn apply_hamiltonian(s: &RingSpinor, phi: f64) -> Vector4c {
    let g0 = gammas().gamma[0];
    let r = s.config.radius();
    let psi = s.eval(phi);
    let dpsi = s.eval_dphi(phi);
    let beta = re(s.config.beta());
    let inner = psi * re(s.config.mass())
        - gamma_phi(phi, r) * (dpsi * I - psi * beta)
        - gamma_phi_derivative(phi, r) * psi * (I * 0.5);
    g0 * inner
}

/// J₃ψ = −i∂_φψ + S₃ψ.
pub fn apply_total_angular_momentum(s: &RingSpinor, phi: f64) -> Vector4c {
    s.eval_dphi(phi) * (-I) + spin_z() * s.eval(phi)
}

pub fn operator_residuals(s: &RingSpinor) -> OperatorResiduals {
    let r = s.config.radius();
    // Pointwise norm times √(2πR) is the scalar-product norm for a single mode.
    let scale = (2.0 * PI * r).sqrt();
    let k = polarization_operator();
    let mut out = OperatorResiduals {
        dirac: 0.0,
        energy: 0.0,
        angular_momentum: 0.0,
        polarization: 0.0,
    };
    for &phi in RESIDUAL_SAMPLE_ANGLES.iter() {
        let psi = s.eval(phi);
        let d = apply_dirac_operator(s, phi) - psi * re(s.config.mass());
        let h = apply_hamiltonian(s, phi) - psi * re(s.energy / r);
        let j = apply_total_angular_momentum(s, phi) - psi * re(s.lambda.to_f64());
        let kk = k * psi - psi * re(s.kappa());
        out.dirac = out.dirac.max(d.norm() * scale);
        out.energy = out.energy.max(h.norm() * scale);
        out.angular_momentum = out.angular_momentum.max(j.norm() * scale);
        out.polarization = out.polarization.max(kk.norm() * scale);
    }
    out
}

/// ‖A(E)·(f₁, f₂, g₁, g₂)‖ in the same norm as [`operator_residuals`].
pub fn algebraic_residual(s: &RingSpinor) -> f64 {
    let a = algebraic_system(&s.config, s.lambda, s.energy);
    (a * s.coeffs).norm() * (2.0 * PI * s.config.radius()).sqrt()
}

/// Normalized combination c₊U⁺_λ + c₋U⁻_λ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuperpositionState {
    c_plus: Complex64,
    c_minus: Complex64,
    lambda: HalfOddInteger,
    config: RingConfig,
}

impl SuperpositionState {
    pub fn new(
        c_plus: Complex64,
        c_minus: Complex64,
        lambda: HalfOddInteger,
        config: RingConfig,
    ) -> Result<Self> {
        let norm = c_plus.norm_sqr() + c_minus.norm_sqr();
        if !norm.is_finite() || (norm - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(RingError::NotNormalized { norm });
        }
        Ok(Self {
            c_plus,
            c_minus,
            lambda,
            config,
        })
    }

    /// Rescales arbitrary nonzero amplitudes onto the unit sphere.
    pub fn normalized(
        c_plus: Complex64,
        c_minus: Complex64,
        lambda: HalfOddInteger,
        config: RingConfig,
    ) -> Result<Self> {
        let n = (c_plus.norm_sqr() + c_minus.norm_sqr()).sqrt();
        if !(n.is_finite() && n > 0.0) {
            return Err(RingError::NotNormalized { norm: n * n });
        }
        Self::new(c_plus / n, c_minus / n, lambda, config)
    }

    pub fn c_plus(&self) -> Complex64 {
        self.c_plus
    }

    pub fn c_minus(&self) -> Complex64 {
        self.c_minus
    }

    pub fn lambda(&self) -> HalfOddInteger {
        self.lambda
    }

    pub fn config(&self) -> &RingConfig {
        &self.config
    }

    /// The combined spinor as a [`RingSpinor`] record. Its polarization tag
    /// is only meaningful for pure states.
    pub fn spinor(&self) -> Result<RingSpinor> {
        let up = build_spinor(&self.config, self.lambda, Polarization::Plus)?;
        let down = build_spinor(&self.config, self.lambda, Polarization::Minus)?;
        let coeffs = up.coeffs * self.c_plus + down.coeffs * self.c_minus;
        let tag = if self.c_plus.norm_sqr() >= self.c_minus.norm_sqr() {
            Polarization::Plus
        } else {
            Polarization::Minus
        };
        Ok(RingSpinor::from_parts(
            coeffs,
            self.lambda,
            up.energy,
            tag,
            self.config,
        ))
    }
}

/// ⟨ψ, Kψ⟩ = |c₊|² − |c₋|².
pub fn polarization_expectation(state: &SuperpositionState) -> Result<f64> {
    let norm = state.c_plus.norm_sqr() + state.c_minus.norm_sqr();
    if (norm - 1.0).abs() > NORMALIZATION_TOLERANCE {
        return Err(RingError::NotNormalized { norm });
    }
    Ok(state.c_plus.norm_sqr() - state.c_minus.norm_sqr())
}
