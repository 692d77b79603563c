//! Coalesced eigenvectors at exceptional points in all three model regimes,
//! the phases (γ, β, ξ) of the U₀†U₁ factorization, the group eigenrelation
//! and the polarization classifier.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matkit::{canonical_angle, make_unitary, ModelParams, EPS_TOL};
use crate::types::{Branch, CMatrix2, CVector2};



/// Axial-ratio threshold separating circular/elliptic/linear kinds.
pub const POL_TOL: f64 = 1e-6;

/// The phases of the factorization
/// U₀†U₁ = [[cos β, sin β e^{iξ}], [−sin β e^{−iξ}, cos β]] · z(2γ),
/// with γ the phase of the (1,1)-element, β ∈ [0, π/2] and ξ on the
/// principal branch.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct PhaseTriple {
    pub gamma: f64,
    pub beta: f64,
    pub xi: f64,
}

/// Extract (γ, β, ξ) from U₀†U₁.
///
/// γ = arg M₁₁, cos β = |M₁₁|, ξ = arg M₁₂ + γ. With these conventions the
/// reconstruction in [`reconstruct_u0d_u1`] is an exact identity.
pub fn phases(p: &ModelParams) -> Result<PhaseTriple> {
    let u0 = make_unitary(p.phi0, p.tau0)?;
    let u1 = make_unitary(p.phi1, p.tau1)?;
    let m = u0.adjoint() * u1;
    if m.a12.norm() < EPS_TOL {
        return Err(Error::DegenerateModel(
            "U0^dag U1 is diagonal up to phases (commuting case); xi is undefined".into(),
        ));
    }
    let gamma = m.a11.arg();
    let beta = m.a11.norm().clamp(0.0, 1.0).acos();
    let xi = canonical_angle(m.a12.arg() + gamma);
    Ok(PhaseTriple { gamma, beta, xi })
}

/// Rebuild U₀†U₁ from its phase triple; exact inverse of [`phases`].
pub fn reconstruct_u0d_u1(t: &PhaseTriple) -> CMatrix2 {
    let (sb, cb) = (t.beta.sin(), t.beta.cos());
    let core = CMatrix2::new(
        Complex64::new(cb, 0.0),
        sb * Complex64::from_polar(1.0, t.xi),
        -sb * Complex64::from_polar(1.0, -t.xi),
        Complex64::new(cb, 0.0),
    );
    let z2g = CMatrix2::diag(
        Complex64::from_polar(1.0, t.gamma),
        Complex64::from_polar(1.0, -t.gamma),
    );
    core * z2g
}

/// The time-reversal symmetric EP eigenvector (±i, 1)/√2.
pub fn ep_vector_symmetric(sign: Branch) -> CVector2 {
    let s = sign.factor();
    let r = std::f64::consts::FRAC_1_SQRT_2;
    CVector2::new(Complex64::new(0.0, s * r), Complex64::new(r, 0.0))
}

/// Right and left EP eigenvectors of the τ₀ = τ₁ = τ family:
/// right ∝ (±i e^{iτ}, 1), left ∝ (±i e^{−iτ}, 1) as a row.
pub fn ep_vector_special(tau: f64, sign: Branch) -> (CVector2, CVector2) {
    let s = sign.factor();
    let i = Complex64::new(0.0, 1.0);
    let one = Complex64::new(1.0, 0.0);
    let right = CVector2::new(s * i * Complex64::from_polar(1.0, tau), one);
    let left = CVector2::new(s * i * Complex64::from_polar(1.0, -tau), one);
    (right, left)
}

/// EP eigenvector of the general model in the closed component form
/// (upper, lower) with the lower component real and non-negative.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct GeneralEpVector {
    pub vec: CVector2,
    /// Set when the lower component vanishes and the vector was normalized
    /// by its upper component instead.
    pub lower_vanishes: bool,
}

/// EP eigenvector in the H₀-eigenbasis: (±i e^{iξ}, 1).
pub fn ep_vector_tilde(xi: f64, sign: Branch) -> CVector2 {
    let s = sign.factor();
    CVector2::new(
        s * Complex64::new(0.0, 1.0) * Complex64::from_polar(1.0, xi),
        Complex64::new(1.0, 0.0),
    )
}

/// Basis-change route: U(φ₀,τ₀) · (±i e^{iξ}, 1).
pub fn ep_vector_via_basis_change(p: &ModelParams, sign: Branch) -> Result<CVector2> {
    let t = phases(p)?;
    let u0 = make_unitary(p.phi0, p.tau0)?;
    Ok(u0.mul_vec(&ep_vector_tilde(t.xi, sign)))
}

/// Closed-form route for the same vector, with the lower component chosen
/// real: upper = ±i e^{−iξ}(e^{2iξ} cos²φ₀ + e^{2iτ₀} sin²φ₀),
/// lower = 1 ± sin 2φ₀ sin(τ₀−ξ).
pub fn ep_vector_general(p: &ModelParams, sign: Branch) -> Result<GeneralEpVector> {
    let t = phases(p)?;
    let s = sign.factor();
    let i = Complex64::new(0.0, 1.0);
    let (c0, s0) = (p.phi0.cos(), p.phi0.sin());
    let upper = s
        * i
        * Complex64::from_polar(1.0, -t.xi)
        * (Complex64::from_polar(1.0, 2.0 * t.xi) * c0 * c0
            + Complex64::from_polar(1.0, 2.0 * p.tau0) * s0 * s0);
    let lower = 1.0 + s * (2.0 * p.phi0).sin() * (p.tau0 - t.xi).sin();
    let vec = CVector2::new(upper, Complex64::new(lower, 0.0));
    if lower.abs() < EPS_TOL {
        // normalize by the upper component instead
        let u = if upper.norm() > 0.0 {
            upper
        } else {
            Complex64::new(1.0, 0.0)
        };
        return Ok(GeneralEpVector {
            vec: vec.scale(u.inv()),
            lower_vanishes: true,
        });
    }
    Ok(GeneralEpVector {
        vec,
        lower_vanishes: false,
    })
}

/// Residual of the group eigenrelation U(φ,τ)·v = e^{±iφ}·v for the
/// τ-family EP eigenvector; an exact algebraic identity, so the residual
/// sits at machine precision.
pub fn group_eigenrelation_check(phi: f64, tau: f64, sign: Branch) -> Result<f64> {
    let u = make_unitary(phi, tau)?;
    let (v, _) = ep_vector_special(tau, sign);
    let factor = Complex64::from_polar(1.0, sign.factor() * phi);
    Ok((u.mul_vec(&v) - v.scale(factor)).norm())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolarizationKind {
    Circular,
    Elliptic,
    Linear,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Handedness {
    Plus,
    Minus,
    None,
}

/// Polarization ellipse of a two-component state read as a Jones vector.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct PolarizationDescriptor {
    pub kind: PolarizationKind,
    pub handedness: Handedness,
    /// Minor/major axis ratio in [0, 1]: 1 circular, 0 linear.
    pub axial_ratio: f64,
    /// Major-axis angle in radians.
    pub orientation: f64,
    /// Raw circular-polarization fraction S₃/S₀ in [−1, 1].
    pub s3_over_s0: f64,
}

/// Classify the polarization of v = (a, b) via Stokes parameters
/// S₀ = |a|²+|b|², S₁ = |a|²−|b|², S₂ = 2 Re(a b̄), S₃ = 2 Im(a b̄).
pub fn polarization(v: &CVector2) -> Result<PolarizationDescriptor> {
    if !v.is_finite() {
        return Err(Error::InvalidArgument("vector entries must be finite".into()));
    }
    let s0 = v.upper.norm_sqr() + v.lower.norm_sqr();
    if s0 == 0.0 {
        return Err(Error::InvalidArgument("zero vector has no polarization".into()));
    }
    let ab = v.upper * v.lower.conj();
    let s1 = v.upper.norm_sqr() - v.lower.norm_sqr();
    let s2 = 2.0 * ab.re;
    let s3 = 2.0 * ab.im;
    let chi = (s3 / s0).clamp(-1.0, 1.0);
    let axial_ratio = (0.5 * chi.asin()).tan().abs();
    let orientation = 0.5 * s2.atan2(s1);
    let kind = if axial_ratio > 1.0 - POL_TOL {
        PolarizationKind::Circular
    } else if axial_ratio < POL_TOL {
        PolarizationKind::Linear
    } else {
        PolarizationKind::Elliptic
    };
    let handedness = if kind == PolarizationKind::Linear {
        Handedness::None
    } else if s3 > 0.0 {
        Handedness::Plus
    } else {
        Handedness::Minus
    };
    Ok(PolarizationDescriptor {
        kind,
        handedness,
        axial_ratio,
        orientation,
        s3_over_s0: chi,
    })
}

/// Brute-force polarization axes: trace Re(e^{−iθ} v) over a period and
/// measure the extremal field magnitudes. Independent oracle for the
/// Stokes route, test use only.
pub fn polarization_axes_by_tracing(v: &CVector2, samples: usize) -> (f64, f64) {
    let mut major = 0.0f64;
    let mut minor = f64::INFINITY;
    for k in 0..samples {
        let theta = 2.0 * std::f64::consts::PI * k as f64 / samples as f64;
        let ph = Complex64::from_polar(1.0, -theta);
        let x = (v.upper * ph).re;
        let y = (v.lower * ph).re;
        let r = (x * x + y * y).sqrt();
        major = major.max(r);
        minor = minor.min(r);
    }
    (major, minor)
}
