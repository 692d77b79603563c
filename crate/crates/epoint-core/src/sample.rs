//! Seeded random draws of models and matrices for property sweeps.
//!
//! Parameters follow the desk-scale convention used throughout the test
//! suites: energies and couplings uniform in [-2, 2], angles uniform in
//! [-π, π), redrawing until the model gates pass.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use std::f64::consts::PI;

use crate::matkit::ModelParams;
use crate::types::CMatrix2;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_complex<R: Rng>(rng: &mut R, scale: f64) -> Complex64 {
    Complex64::new(
        rng.gen_range(-scale..scale),
        rng.gen_range(-scale..scale),
    )
}

pub fn random_matrix<R: Rng>(rng: &mut R, scale: f64) -> CMatrix2 {
    CMatrix2::new(
        random_complex(rng, scale),
        random_complex(rng, scale),
        random_complex(rng, scale),
        random_complex(rng, scale),
    )
}

/// A random valid model; redraws until the validation gates pass.
pub fn random_model<R: Rng>(rng: &mut R) -> ModelParams {
    loop {
        let p = ModelParams::new(
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-PI..PI),
            rng.gen_range(-PI..PI),
            rng.gen_range(-PI..PI),
            rng.gen_range(-PI..PI),
        );
        // keep clear of the gates so closed-form routes stay well conditioned:
        // sin β and cos β bounded away from zero keeps the two EPs distinct
        // and the factorization phases defined
        if let Ok(p) = p {
            let u0 = crate::matkit::make_unitary(p.phi0, p.tau0).unwrap();
            let u1 = crate::matkit::make_unitary(p.phi1, p.tau1).unwrap();
            let m = u0.adjoint() * u1;
            if (p.eps1 - p.eps2).abs() > 0.05
                && (p.omega1 - p.omega2).abs() > 0.05
                && m.a12.norm() > 0.05
                && m.a11.norm() > 0.05
            {
                return p;
            }
        }
    }
}

/// A random valid model with φ₀ = 0 (diagonal H₀ family).
pub fn random_model_diag_h0<R: Rng>(rng: &mut R) -> ModelParams {
    loop {
        let p = ModelParams::new(
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
            0.0,
            rng.gen_range(-PI..PI),
            rng.gen_range(-PI..PI),
            rng.gen_range(-PI..PI),
        );
        if let Ok(p) = p {
            if (p.eps1 - p.eps2).abs() > 0.05
                && (p.omega1 - p.omega2).abs() > 0.05
                && p.phi1.sin().abs() > 0.05
                && p.phi1.cos().abs() > 0.05
            {
                return p;
            }
        }
    }
}
