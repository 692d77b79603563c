//! Construction of the model matrices: the unitaries U(φ,τ), the phase
//! matrix z(τ), the Hermitian parts H₀, H₁ and the Hamiltonians H(λ), H̃(λ).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::types::CMatrix2;

/// Relative tolerance for the non-degeneracy and non-commutation gates.
pub const EPS_TOL: f64 = 1e-9;

/// Wrap an angle into [-π, π).
pub fn canonical_angle(a: f64) -> f64 {
    let mut x = (a + PI).rem_euclid(2.0 * PI) - PI;
    // rem_euclid can return exactly 2π for inputs just below -π after rounding
    if x >= PI {
        x -= 2.0 * PI;
    }
    x
}

/// The eight real numbers defining the model: two level energies, two
/// coupling strengths and the four angles of the unitaries U₀, U₁.
///
/// Construction validates the gates that the analytic formulas rely on:
/// distinct ε's, distinct ω's and non-commuting H₀, H₁.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawModelParams")]
pub struct ModelParams {
    pub eps1: f64,
    pub eps2: f64,
    pub omega1: f64,
    pub omega2: f64,
    pub phi0: f64,
    pub tau0: f64,
    pub phi1: f64,
    pub tau1: f64,
}

#[derive(Deserialize)]
struct RawModelParams {
    eps1: f64,
    eps2: f64,
    omega1: f64,
    omega2: f64,
    phi0: f64,
    tau0: f64,
    phi1: f64,
    tau1: f64,
}

impl TryFrom<RawModelParams> for ModelParams {
    type Error = Error;
    fn try_from(r: RawModelParams) -> Result<Self> {
        ModelParams::new(
            r.eps1, r.eps2, r.omega1, r.omega2, r.phi0, r.tau0, r.phi1, r.tau1,
        )
    }
}

impl ModelParams {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        eps1: f64,
        eps2: f64,
        omega1: f64,
        omega2: f64,
        phi0: f64,
        tau0: f64,
        phi1: f64,
        tau1: f64,
    ) -> Result<Self> {
        for (name, v) in [
            ("eps1", eps1),
            ("eps2", eps2),
            ("omega1", omega1),
            ("omega2", omega2),
            ("phi0", phi0),
            ("tau0", tau0),
            ("phi1", phi1),
            ("tau1", tau1),
        ] {
            if !v.is_finite() {
                return Err(Error::ModelValidation(format!("{name} is not finite")));
            }
        }
        let p = ModelParams {
            eps1,
            eps2,
            omega1,
            omega2,
            phi0: canonical_angle(phi0),
            tau0: canonical_angle(tau0),
            phi1: canonical_angle(phi1),
            tau1: canonical_angle(tau1),
        };
        let eps_scale = eps1.abs().max(eps2.abs()).max(1.0);
        if (eps1 - eps2).abs() <= EPS_TOL * eps_scale {
            return Err(Error::ModelValidation(
                "eps1 and eps2 must differ (epsilon must not be a multiple of the identity)"
                    .into(),
            ));
        }
        let omega_scale = omega1.abs().max(omega2.abs()).max(1.0);
        if (omega1 - omega2).abs() <= EPS_TOL * omega_scale {
            return Err(Error::ModelValidation(
                "omega1 and omega2 must differ (omega must not be a multiple of the identity)"
                    .into(),
            ));
        }
        let h0 = p.h0_unchecked();
        let h1 = p.h1_unchecked();
        let comm_scale = (h0.frobenius_norm() * h1.frobenius_norm()).max(1.0);
        if h0.commutator(&h1).frobenius_norm() <= EPS_TOL * comm_scale {
            return Err(Error::ModelValidation(
                "H0 and H1 commute; H is then diagonalizable for every lambda and no \
                 exceptional points exist"
                    .into(),
            ));
        }
        Ok(p)
    }

    fn h0_unchecked(&self) -> CMatrix2 {
        conjugate_by_unitary(self.phi0, self.tau0, self.eps1, self.eps2)
    }

    fn h1_unchecked(&self) -> CMatrix2 {
        conjugate_by_unitary(self.phi1, self.tau1, self.omega1, self.omega2)
    }
}

fn check_finite_angles(vals: &[(&str, f64)]) -> Result<()> {
    for (name, v) in vals {
        if !v.is_finite() {
            return Err(Error::InvalidArgument(format!("{name} is not finite")));
        }
    }
    Ok(())
}

/// U(φ,τ) = [[cos φ, −sin φ e^{iτ}], [sin φ e^{−iτ}, cos φ]].
pub fn make_unitary(phi: f64, tau: f64) -> Result<CMatrix2> {
    check_finite_angles(&[("phi", phi), ("tau", tau)])?;
    let (s, c) = (phi.sin(), phi.cos());
    let e = Complex64::from_polar(1.0, tau);
    Ok(CMatrix2::new(
        Complex64::new(c, 0.0),
        -s * e,
        s * e.conj(),
        Complex64::new(c, 0.0),
    ))
}

/// The four-parameter unitary U(φ,τ)·diag(e^{iγ₁}, e^{iγ₂}).
pub fn make_general_unitary(phi: f64, tau: f64, gamma1: f64, gamma2: f64) -> Result<CMatrix2> {
    check_finite_angles(&[("gamma1", gamma1), ("gamma2", gamma2)])?;
    let u = make_unitary(phi, tau)?;
    let d = CMatrix2::diag(
        Complex64::from_polar(1.0, gamma1),
        Complex64::from_polar(1.0, gamma2),
    );
    Ok(u * d)
}

/// z(τ) = diag(e^{iτ/2}, e^{−iτ/2}).
pub fn make_z(tau: f64) -> Result<CMatrix2> {
    check_finite_angles(&[("tau", tau)])?;
    Ok(CMatrix2::diag(
        Complex64::from_polar(1.0, tau / 2.0),
        Complex64::from_polar(1.0, -tau / 2.0),
    ))
}

/// U(φ,τ) · diag(d1, d2) · U†(φ,τ) without allocating the unitary twice.
fn conjugate_by_unitary(phi: f64, tau: f64, d1: f64, d2: f64) -> CMatrix2 {
    let u = make_unitary(phi, tau).expect("angles validated");
    u * CMatrix2::diag(Complex64::new(d1, 0.0), Complex64::new(d2, 0.0)) * u.adjoint()
}

/// H₀ = U₀ ε U₀†.
pub fn build_h0(p: &ModelParams) -> CMatrix2 {
    p.h0_unchecked()
}

/// H₁ = U₁ ω U₁†.
pub fn build_h1(p: &ModelParams) -> CMatrix2 {
    p.h1_unchecked()
}

/// H(λ) = H₀ + λ H₁.
pub fn build_hamiltonian(p: &ModelParams, lambda: Complex64) -> Result<CMatrix2> {
    if !lambda.is_finite() {
        return Err(Error::InvalidArgument("lambda is not finite".into()));
    }
    Ok(build_h0(p) + build_h1(p).scale(lambda))
}

/// H̃(λ) = ε + λ U₀†U₁ ω U₁†U₀, the Hamiltonian in the eigenbasis of H₀.
pub fn build_h_tilde(p: &ModelParams, lambda: Complex64) -> Result<CMatrix2> {
    if !lambda.is_finite() {
        return Err(Error::InvalidArgument("lambda is not finite".into()));
    }
    let u0 = make_unitary(p.phi0, p.tau0)?;
    let u1 = make_unitary(p.phi1, p.tau1)?;
    let v = u0.adjoint() * u1;
    let omega = CMatrix2::diag(
        Complex64::new(p.omega1, 0.0),
        Complex64::new(p.omega2, 0.0),
    );
    let eps = CMatrix2::diag(Complex64::new(p.eps1, 0.0), Complex64::new(p.eps2, 0.0));
    Ok(eps + (v * omega * v.adjoint()).scale(lambda))
}

/// Time-reversal defect with T = K: ‖H₀ − H₀*‖_F + ‖H₁ − H₁*‖_F.
/// Zero iff both matrices are real in the working basis.
pub fn trs_defect(p: &ModelParams) -> f64 {
    let h0 = build_h0(p);
    let h1 = build_h1(p);
    (h0 - h0.conj()).frobenius_norm() + (h1 - h1.conj()).frobenius_norm()
}
