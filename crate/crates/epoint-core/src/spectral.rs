//! Closed-form eigendecomposition of 2x2 complex matrices, the analytic
//! eigenvalue formula of the diagonal-H₀ family, and biorthogonal
//! normalization with explicit failure at exceptional points.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matkit::ModelParams;
use crate::types::{complex_serde, CMatrix2, CVector2};

/// Below this unconjugated |⟨l|r⟩| (unit-norm l, r) the biorthogonal
/// normalization is declared impossible. Eigenvalues computed at an EP
/// split by ~sqrt(machine epsilon), which pushes the product to the
/// 1e-7..1e-6 range, so the threshold sits one decade above that.
pub const NORM_TOL: f64 = 1e-5;

/// Eigenvalues with right and left eigenvectors of a 2x2 matrix.
///
/// When `biorthogonal_ok` the vectors satisfy ⟨l_k|r_k⟩ = 1 (unconjugated
/// pairing) and the cross products vanish. At an exceptional point the
/// pairing is self-orthogonal; `biorthogonal_ok` is false and `condition`
/// is infinite.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Spectrum {
    #[serde(with = "complex_serde")]
    pub e1: Complex64,
    #[serde(with = "complex_serde")]
    pub e2: Complex64,
    pub r1: CVector2,
    pub r2: CVector2,
    pub l1: CVector2,
    pub l2: CVector2,
    pub biorthogonal_ok: bool,
    /// 1/|⟨l_k|r_k⟩| with unit-norm vectors, maximized over k; ≥ 1.
    pub condition: f64,
}

/// The radical R of the two-level eigenvalue formula; `squared` is R².
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Radical {
    #[serde(with = "complex_serde")]
    pub value: Complex64,
    #[serde(with = "complex_serde")]
    pub squared: Complex64,
}

/// Roots of t² + bt + c, larger-magnitude root first, via the stable
/// quadratic formula (no cancellation in the first root, second from the
/// product of roots).
pub fn stable_quadratic_roots(b: Complex64, c: Complex64) -> (Complex64, Complex64) {
    let disc = b * b - 4.0 * c;
    let s = disc.sqrt();
    // pick the sign that adds magnitudes instead of cancelling
    let q = if (-b + s).norm() >= (-b - s).norm() {
        (-b + s) / 2.0
    } else {
        (-b - s) / 2.0
    };
    if q.norm() == 0.0 {
        (q, q)
    } else {
        (q, c / q)
    }
}

fn canonical_pair(a: Complex64, b: Complex64) -> (Complex64, Complex64) {
    if (a.re, a.im) <= (b.re, b.im) {
        (a, b)
    } else {
        (b, a)
    }
}

/// Right kernel vector of a (numerically) singular 2x2 matrix: the
/// larger-magnitude column of the adjugate, falling back to coordinate
/// axes when the matrix itself vanishes.
fn right_kernel(b: &CMatrix2) -> CVector2 {
    let adj = b.adjugate();
    let c1 = CVector2::new(adj.a11, adj.a21);
    let c2 = CVector2::new(adj.a12, adj.a22);
    let v = if c1.norm() >= c2.norm() { c1 } else { c2 };
    if v.norm() > 0.0 {
        v
    } else {
        CVector2::new(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
    }
}

/// Left kernel row: the larger-magnitude row of the adjugate.
fn left_kernel(b: &CMatrix2) -> CVector2 {
    let adj = b.adjugate();
    let r1 = CVector2::new(adj.a11, adj.a12);
    let r2 = CVector2::new(adj.a21, adj.a22);
    let v = if r1.norm() >= r2.norm() { r1 } else { r2 };
    if v.norm() > 0.0 {
        v
    } else {
        CVector2::new(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
    }
}

/// Closed-form eigendecomposition of an arbitrary 2x2 complex matrix.
///
/// Eigenvalues are the roots of the characteristic polynomial in canonical
/// order (lexicographic by real then imaginary part). Away from exceptional
/// points the right vectors are scaled so their largest component is real
/// positive and the left vectors so ⟨l_k|r_k⟩ = 1.
pub fn eigen2(m: &CMatrix2) -> Result<Spectrum> {
    if !m.is_finite() {
        return Err(Error::InvalidArgument("matrix entries must be finite".into()));
    }
    let (t1, t2) = stable_quadratic_roots(-m.trace(), m.det());
    let (e1, e2) = canonical_pair(t1, t2);
    let scale = m.frobenius_norm().max(1.0);

    let (r1, l1) = eigenpair(m, e1, scale);
    let (r2, l2) = eigenpair(m, e2, scale);

    let d1 = l1.bilinear(&r1);
    let d2 = l2.bilinear(&r2);
    let ok = d1.norm() >= NORM_TOL && d2.norm() >= NORM_TOL;
    let condition = if ok {
        (1.0 / d1.norm()).max(1.0 / d2.norm())
    } else {
        f64::INFINITY
    };
    let (l1, l2) = if ok {
        (l1.scale(d1.inv()), l2.scale(d2.inv()))
    } else {
        (l1, l2)
    };
    Ok(Spectrum {
        e1,
        e2,
        r1,
        r2,
        l1,
        l2,
        biorthogonal_ok: ok,
        condition,
    })
}

fn eigenpair(m: &CMatrix2, e: Complex64, scale: f64) -> (CVector2, CVector2) {
    let b = *m - CMatrix2::diag(e, e);
    // scalar matrix: any basis works
    if b.frobenius_norm() < 1e-14 * scale {
        return (
            CVector2::new(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)),
            CVector2::new(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)),
        );
    }
    (right_kernel(&b).normalized(), left_kernel(&b).normalized())
}

/// Analytic eigenvalues for the diagonal-H₀ family (φ₀ = 0):
/// E_{1,2} = ½(ε₁+ε₂+λ(ω₁+ω₂)) ± R. Returned in canonical order together
/// with the radical.
pub fn eigenvalues_special(
    p: &ModelParams,
    lambda: Complex64,
) -> Result<(Complex64, Complex64, Radical)> {
    if p.phi0.abs() > 1e-12 {
        return Err(Error::Precondition(
            "eigenvalues_special requires phi0 = 0 (diagonal H0)".into(),
        ));
    }
    if !lambda.is_finite() {
        return Err(Error::InvalidArgument("lambda is not finite".into()));
    }
    let de = p.eps1 - p.eps2;
    let dw = p.omega1 - p.omega2;
    let mean = 0.5 * (Complex64::new(p.eps1 + p.eps2, 0.0) + lambda * (p.omega1 + p.omega2));
    let radicand =
        de * de + lambda * lambda * (dw * dw) + 2.0 * lambda * de * dw * (2.0 * p.phi1).cos();
    let r = 0.5 * radicand.sqrt();
    let (e1, e2) = canonical_pair(mean + r, mean - r);
    Ok((
        e1,
        e2,
        Radical {
            value: r,
            squared: r * r,
        },
    ))
}

/// Unconjugated bilinear product l·r, the biorthogonal pairing. Vanishes
/// exactly for the coalescing mode at an exceptional point.
pub fn self_orthogonality(l: &CVector2, r: &CVector2) -> Complex64 {
    l.bilinear(r)
}

/// Consistency check used in tests and cross-validation: residuals of the
/// right/left eigenrelations for a spectrum of `m`.
pub fn eigen_residual(m: &CMatrix2, e: Complex64, r: &CVector2) -> f64 {
    (m.mul_vec(r) - r.scale(e)).norm() / (m.frobenius_norm().max(1.0) * r.norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matkit::build_hamiltonian;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn diagonal_matrix() {
        let m = CMatrix2::diag(c(3.0, 0.0), c(-1.0, 0.0));
        let s = eigen2(&m).unwrap();
        assert!((s.e1 - c(-1.0, 0.0)).norm() < 1e-15);
        assert!((s.e2 - c(3.0, 0.0)).norm() < 1e-15);
        // eigenvectors are the coordinate axes
        assert!(s.r2.upper.norm() > 0.999 && s.r2.lower.norm() < 1e-12);
        assert!(s.r1.lower.norm() > 0.999 && s.r1.upper.norm() < 1e-12);
        assert!(s.biorthogonal_ok);
    }

    #[test]
    fn symmetric_textbook_case() {
        let m = CMatrix2::new(c(2.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0));
        let s = eigen2(&m).unwrap();
        assert!((s.e1 - c(1.0, 0.0)).norm() < 1e-14);
        assert!((s.e2 - c(3.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn characteristic_polynomial_residual_random() {
        let mut rng = crate::sample::rng(7);
        for _ in 0..500 {
            let m = crate::sample::random_matrix(&mut rng, 2.0);
            let s = eigen2(&m).unwrap();
            let scale = m.frobenius_norm().max(1.0);
            for e in [s.e1, s.e2] {
                let res = (e * e - m.trace() * e + m.det()).norm();
                assert!(res < 1e-10 * scale * scale, "residual {res}");
            }
        }
    }

    #[test]
    fn eigenvector_residuals_and_cross_orthogonality() {
        let mut rng = crate::sample::rng(11);
        for _ in 0..200 {
            let m = crate::sample::random_matrix(&mut rng, 2.0);
            let s = eigen2(&m).unwrap();
            if (s.e1 - s.e2).norm() < 1e-3 {
                continue; // near-degenerate draws tested elsewhere
            }
            assert!(eigen_residual(&m, s.e1, &s.r1) < 1e-10);
            assert!(eigen_residual(&m, s.e2, &s.r2) < 1e-10);
            // left eigenrelation, row semantics
            let lr = m.vec_mul(&s.l1) - s.l1.scale(s.e1);
            assert!(lr.norm() / s.l1.norm() < 1e-9 * m.frobenius_norm().max(1.0));
            // cross-orthogonality of the bilinear pairing
            assert!(s.l1.bilinear(&s.r2).norm() / (s.l1.norm() * s.r2.norm()) < 1e-10);
            assert!(s.l2.bilinear(&s.r1).norm() / (s.l2.norm() * s.r1.norm()) < 1e-10);
            // normalization contract
            assert!((s.l1.bilinear(&s.r1) - c(1.0, 0.0)).norm() < 1e-9);
            assert!(s.condition >= 1.0);
        }
    }

    #[test]
    fn rejects_nonfinite_entries() {
        let m = CMatrix2::new(c(f64::NAN, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0));
        assert!(eigen2(&m).is_err());
    }

    #[test]
    fn jordan_block_flags_biorthogonal_failure() {
        let m = CMatrix2::new(c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0));
        let s = eigen2(&m).unwrap();
        assert!(!s.biorthogonal_ok);
        assert!(s.condition.is_infinite());
    }

    #[test]
    fn special_eigenvalues_at_lambda_zero() {
        let p = ModelParams::new(1.3, -0.4, 1.0, -1.0, 0.0, 0.2, 0.8, 0.5).unwrap();
        let (e1, e2, r) = eigenvalues_special(&p, c(0.0, 0.0)).unwrap();
        assert!((e1 - c(-0.4, 0.0)).norm() < 1e-14);
        assert!((e2 - c(1.3, 0.0)).norm() < 1e-14);
        assert!((r.value - c(0.85, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn special_eigenvalues_hand_case() {
        // eps = (1,-1), omega = (1,-1), phi1 = pi/4, lambda = 1:
        // radicand = 4 + 4 + 0, R = sqrt(2), E = {sqrt(2), -sqrt(2)}
        let p = ModelParams::new(
            1.0,
            -1.0,
            1.0,
            -1.0,
            0.0,
            0.0,
            std::f64::consts::FRAC_PI_4,
            0.0,
        )
        .unwrap();
        let (e1, e2, r) = eigenvalues_special(&p, c(1.0, 0.0)).unwrap();
        let s2 = 2.0f64.sqrt();
        assert!((r.value - c(s2, 0.0)).norm() < 1e-14);
        assert!((e1 - c(-s2, 0.0)).norm() < 1e-14);
        assert!((e2 - c(s2, 0.0)).norm() < 1e-14);
        assert!((r.value * r.value - r.squared).norm() < 1e-14);
    }

    #[test]
    fn special_requires_diagonal_h0() {
        let p = ModelParams::new(1.0, -1.0, 1.0, -1.0, 0.4, 0.0, 0.8, 0.0).unwrap();
        assert!(matches!(
            eigenvalues_special(&p, c(0.0, 0.0)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn special_matches_general_solver() {
        let mut rng = crate::sample::rng(23);
        for _ in 0..500 {
            let p = crate::sample::random_model_diag_h0(&mut rng);
            let lam = crate::sample::random_complex(&mut rng, 2.0);
            let (e1, e2, _) = eigenvalues_special(&p, lam).unwrap();
            let s = eigen2(&build_hamiltonian(&p, lam).unwrap()).unwrap();
            let d_keep = (e1 - s.e1).norm() + (e2 - s.e2).norm();
            let d_swap = (e1 - s.e2).norm() + (e2 - s.e1).norm();
            let scale = s.e1.norm().max(s.e2.norm()).max(1.0);
            assert!(d_keep.min(d_swap) < 1e-10 * scale);
        }
    }

    #[test]
    fn self_orthogonality_ep_forms() {
        for tau in [0.0, 0.7, -2.1, std::f64::consts::PI / 2.0] {
            for sign in [1.0, -1.0] {
                let i = c(0.0, 1.0);
                let r = CVector2::new(sign * i * Complex64::from_polar(1.0, tau), c(1.0, 0.0));
                let l = CVector2::new(sign * i * Complex64::from_polar(1.0, -tau), c(1.0, 0.0));
                assert!(self_orthogonality(&l, &r).norm() < 1e-15);
            }
        }
        let e1 = CVector2::new(c(1.0, 0.0), c(0.0, 0.0));
        assert!((self_orthogonality(&e1, &e1) - c(1.0, 0.0)).norm() < 1e-15);
    }
}
