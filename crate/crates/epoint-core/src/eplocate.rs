//! Exceptional-point location via three independent routes and their
//! cross-validation: the analytic formula of the diagonal-H₀ family, the
//! general analytic route through the U₀†U₁ phases, and numerical roots of
//! the discriminant polynomial.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::epvector::{ep_vector_general, phases};
use crate::error::{Error, Result};
use crate::matkit::{build_hamiltonian, ModelParams, EPS_TOL};
use crate::spectral::stable_quadratic_roots;
use crate::types::{complex_serde, Branch, CMatrix2, CVector2};

/// Discriminant residual tolerance at a reported EP, relative to scale².
pub const DISC_TOL: f64 = 1e-10;
/// Nilpotency residual tolerance at a reported EP.
pub const NILP_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    Special,
    GeneralAppendix,
    Numerical,
}

/// One exceptional-point branch: its location, the coalesced eigenvalue,
/// the eigenvector and (for the general route) the factorization phases.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EPSolution {
    pub branch: Branch,
    #[serde(with = "complex_serde")]
    pub lambda_c: Complex64,
    #[serde(with = "complex_serde")]
    pub e_c: Complex64,
    pub vec: CVector2,
    pub gamma: Option<f64>,
    pub beta: Option<f64>,
    pub xi: Option<f64>,
    pub route: Route,
}

/// Report of [`cross_validate`]: per-route solutions and agreement metrics.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CrossValidation {
    pub special: Option<(EPSolution, EPSolution)>,
    pub general: (EPSolution, EPSolution),
    pub numerical: (EPSolution, EPSolution),
    /// Max pairwise |Δλ_c| over routes, relative to max(1, |λ_c|).
    pub max_rel_delta: f64,
    /// Worst nilpotency residual over all reported EPs.
    pub max_nilpotency: f64,
    /// True when the two EPs nearly coincide and branch matching is
    /// reported as a diagnostic instead of a failure.
    pub ep_collision: bool,
    pub ok: bool,
}

fn prefactor(p: &ModelParams) -> f64 {
    -(p.eps1 - p.eps2) / (p.omega1 - p.omega2)
}

/// Label two discriminant roots: "+" is the root whose e^{2iβ} factor has
/// positive imaginary part, ties broken by Im λ_c, then lexicographically.
fn label_roots(pref: f64, r1: Complex64, r2: Complex64) -> (Complex64, Complex64) {
    let mu1 = r1 / pref;
    let mu2 = r2 / pref;
    let plus_first = if (mu1.im - mu2.im).abs() > 1e-12 * (mu1.norm() + mu2.norm()).max(1.0) {
        mu1.im > mu2.im
    } else if (r1.im - r2.im).abs() > 1e-12 * (r1.norm() + r2.norm()).max(1.0) {
        r1.im > r2.im
    } else {
        (r1.re, r1.im) >= (r2.re, r2.im)
    };
    if plus_first {
        (r1, r2)
    } else {
        (r2, r1)
    }
}

/// Coalesced eigenvalue at λ_c: half the trace of H(λ_c).
fn coalesced_eigenvalue(p: &ModelParams, lambda_c: Complex64) -> Complex64 {
    let h = build_hamiltonian(p, lambda_c).expect("validated model, finite lambda");
    h.trace() / 2.0
}

/// Fill the eigenvector slot by residual minimization over the two
/// eigenvector signs; the pairing between the λ_c branch and the
/// eigenvector sign is not fixed a priori.
fn attach_vector(p: &ModelParams, lambda_c: Complex64, e_c: Complex64) -> CVector2 {
    let h = build_hamiltonian(p, lambda_c).expect("validated model, finite lambda");
    let b = h - CMatrix2::diag(e_c, e_c);
    let mut best = None;
    for sign in [Branch::Plus, Branch::Minus] {
        if let Ok(g) = ep_vector_general(p, sign) {
            let res = b.mul_vec(&g.vec).norm() / g.vec.norm();
            match best {
                None => best = Some((res, g.vec)),
                Some((r, _)) if res < r => best = Some((res, g.vec)),
                _ => {}
            }
        }
    }
    match best {
        Some((_, v)) => v,
        // phases degenerate: fall back to the kernel of (H - e_c)
        None => {
            let adj = b.adjugate();
            let c1 = CVector2::new(adj.a11, adj.a21);
            let c2 = CVector2::new(adj.a12, adj.a22);
            let v = if c1.norm() >= c2.norm() { c1 } else { c2 };
            v.normalized()
        }
    }
}

fn make_pair(
    p: &ModelParams,
    plus: Complex64,
    minus: Complex64,
    route: Route,
    tri: Option<crate::epvector::PhaseTriple>,
) -> (EPSolution, EPSolution) {
    let build = |branch: Branch, lam: Complex64| {
        let e_c = coalesced_eigenvalue(p, lam);
        EPSolution {
            branch,
            lambda_c: lam,
            e_c,
            vec: attach_vector(p, lam, e_c),
            gamma: tri.map(|t| t.gamma),
            beta: tri.map(|t| t.beta),
            xi: tri.map(|t| t.xi),
            route,
        }
    };
    (build(Branch::Plus, plus), build(Branch::Minus, minus))
}

/// Analytic EPs of the diagonal-H₀ family:
/// λ_c± = −((ε₁−ε₂)/(ω₁−ω₂))·e^{±2iφ₁}.
pub fn ep_special(p: &ModelParams) -> Result<(EPSolution, EPSolution)> {
    if p.phi0.abs() > 1e-12 {
        return Err(Error::Precondition(
            "ep_special requires phi0 = 0 (diagonal H0)".into(),
        ));
    }
    if p.phi1.sin().abs() < EPS_TOL {
        return Err(Error::DegenerateModel(
            "phi1 is a multiple of pi; the two EPs collapse onto the real axis degenerately"
                .into(),
        ));
    }
    let pref = prefactor(p);
    let lp = pref * Complex64::from_polar(1.0, 2.0 * p.phi1);
    let lm = pref * Complex64::from_polar(1.0, -2.0 * p.phi1);
    let (plus, minus) = label_roots(pref, lp, lm);
    Ok(make_pair(p, plus, minus, Route::Special, None))
}

/// General analytic EPs through the phase factorization of U₀†U₁:
/// λ_EP± = −((ε₁−ε₂)/(ω₁−ω₂))·e^{±2iβ}.
pub fn ep_general(p: &ModelParams) -> Result<(EPSolution, EPSolution)> {
    let tri = phases(p)?;
    if tri.beta.cos() >= 1.0 - EPS_TOL {
        return Err(Error::DegenerateModel(
            "cos beta ~ 1: U0 and U1 agree up to phases (commuting case)".into(),
        ));
    }
    if tri.beta.sin() < EPS_TOL {
        return Err(Error::DegenerateModel(
            "sin beta ~ 0: the discriminant has a double root on the real axis".into(),
        ));
    }
    let pref = prefactor(p);
    let lp = pref * Complex64::from_polar(1.0, 2.0 * tri.beta);
    let lm = pref * Complex64::from_polar(1.0, -2.0 * tri.beta);
    let (plus, minus) = label_roots(pref, lp, lm);
    Ok(make_pair(p, plus, minus, Route::GeneralAppendix, Some(tri)))
}

/// Discriminant of H(λ): tr² − 4 det, an exact quadratic polynomial in λ.
pub fn discriminant(p: &ModelParams, lambda: Complex64) -> Complex64 {
    let h = build_hamiltonian(p, lambda).expect("validated model, finite lambda");
    let t = h.trace();
    t * t - 4.0 * h.det()
}

/// Numerical EPs: extract the three coefficients of the discriminant
/// polynomial exactly from evaluations at {0, s, −s} and take the stable
/// quadratic roots. Independent of both analytic routes.
pub fn ep_numerical(p: &ModelParams) -> Result<(EPSolution, EPSolution)> {
    // rescale the evaluation points when the natural lambda scale is extreme
    let ratio = ((p.eps1 - p.eps2) / (p.omega1 - p.omega2)).abs();
    let s = if (1e-3..=1e3).contains(&ratio) { 1.0 } else { ratio };
    let d0 = discriminant(p, Complex64::new(0.0, 0.0));
    let dp = discriminant(p, Complex64::new(s, 0.0));
    let dm = discriminant(p, Complex64::new(-s, 0.0));
    let c0 = d0;
    let c1 = (dp - dm) / (2.0 * s);
    let c2 = (dp + dm - 2.0 * d0) / (2.0 * s * s);
    let scale = c0.norm().max(c1.norm()).max(1.0);
    if c2.norm() < EPS_TOL * scale {
        return Err(Error::DegenerateModel(
            "discriminant is not genuinely quadratic in lambda".into(),
        ));
    }
    let (r1, r2) = stable_quadratic_roots(c1 / c2, c0 / c2);
    let (plus, minus) = label_roots(prefactor(p), r1, r2);
    Ok(make_pair(p, plus, minus, Route::Numerical, None))
}

/// Nilpotency residual ‖(H(λ_c) − e_c)²‖_F / max(1, ‖H(λ_c)‖_F²); the
/// testable form of "only one eigenvector exists at the EP".
pub fn nilpotency_residual(p: &ModelParams, sol: &EPSolution) -> f64 {
    let h = build_hamiltonian(p, sol.lambda_c).expect("validated model, finite lambda");
    let n = h - CMatrix2::diag(sol.e_c, sol.e_c);
    let h2 = h.frobenius_norm();
    (n * n).frobenius_norm() / (h2 * h2).max(1.0)
}

fn branch_deltas(a: &(EPSolution, EPSolution), b: &(EPSolution, EPSolution)) -> f64 {
    // match by proximity rather than trusting labels
    let keep = (a.0.lambda_c - b.0.lambda_c).norm() + (a.1.lambda_c - b.1.lambda_c).norm();
    let swap = (a.0.lambda_c - b.1.lambda_c).norm() + (a.1.lambda_c - b.0.lambda_c).norm();
    let scale = a
        .0
        .lambda_c
        .norm()
        .max(a.1.lambda_c.norm())
        .max(1e-30);
    keep.min(swap) / scale
}

/// Run every applicable route and compare them pairwise.
pub fn cross_validate(p: &ModelParams) -> Result<CrossValidation> {
    let general = ep_general(p)?;
    let numerical = ep_numerical(p)?;
    let special = if p.phi0.abs() < 1e-12 {
        Some(ep_special(p)?)
    } else {
        None
    };

    let mut pairs: Vec<&(EPSolution, EPSolution)> = vec![&general, &numerical];
    if let Some(s) = &special {
        pairs.push(s);
    }

    let mut max_rel_delta = 0.0f64;
    for i in 0..pairs.len() {
        for j in i + 1..pairs.len() {
            max_rel_delta = max_rel_delta.max(branch_deltas(pairs[i], pairs[j]));
        }
    }
    let mut max_nilpotency = 0.0f64;
    for pair in &pairs {
        for sol in [&pair.0, &pair.1] {
            max_nilpotency = max_nilpotency.max(nilpotency_residual(p, sol));
        }
    }

    let sep = (general.0.lambda_c - general.1.lambda_c).norm();
    let scale = general.0.lambda_c.norm().max(1.0);
    let ep_collision = sep < 10.0 * DISC_TOL * scale;
    let ok = ep_collision || (max_rel_delta < 1e-9 && max_nilpotency < NILP_TOL);

    Ok(CrossValidation {
        special,
        general,
        numerical,
        max_rel_delta,
        max_nilpotency,
        ep_collision,
        ok,
    })
}
