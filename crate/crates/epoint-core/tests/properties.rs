//! Property-based invariants across the core modules.

use num_complex::Complex64;
use proptest::prelude::*;
use std::f64::consts::PI;

use epoint_core::epvector::{ep_vector_special, group_eigenrelation_check, phases, reconstruct_u0d_u1};
use epoint_core::matkit::{
    build_h0, build_h1, build_hamiltonian, make_general_unitary, make_unitary, make_z,
    ModelParams,
};
use epoint_core::spectral::eigen2;
use epoint_core::types::{Branch, CMatrix2};

fn angle() -> impl Strategy<Value = f64> {
    -PI..PI
}

fn energy() -> impl Strategy<Value = f64> {
    -2.0f64..2.0
}

fn close(a: &CMatrix2, b: &CMatrix2, tol: f64) -> bool {
    (*a - *b).frobenius_norm() < tol
}

proptest! {
    #[test]
    fn unitary_is_unitary(phi in angle(), tau in angle()) {
        let u = make_unitary(phi, tau).unwrap();
        let id = u.adjoint() * u;
        // within 4 machine epsilons of the identity
        prop_assert!(close(&id, &CMatrix2::identity(), 4.0 * f64::EPSILON));
    }

    #[test]
    fn z_is_unitary_and_halves_tau(tau in angle()) {
        let z = make_z(tau).unwrap();
        prop_assert!(close(&(z.adjoint() * z), &CMatrix2::identity(), 4.0 * f64::EPSILON));
        prop_assert!((z.a11 * z.a11 - Complex64::from_polar(1.0, tau)).norm() < 1e-14);
    }

    #[test]
    fn hermitian_parts_have_prescribed_spectra(
        e1 in energy(), e2 in energy(), w1 in energy(), w2 in energy(),
        phi0 in angle(), tau0 in angle(), phi1 in angle(), tau1 in angle(),
    ) {
        let p = match ModelParams::new(e1, e2, w1, w2, phi0, tau0, phi1, tau1) {
            Ok(p) => p,
            Err(_) => return Ok(()), // gated draw
        };
        for (h, lo, hi) in [
            (build_h0(&p), e1.min(e2), e1.max(e2)),
            (build_h1(&p), w1.min(w2), w1.max(w2)),
        ] {
            prop_assert!((h - h.adjoint()).frobenius_norm() < 4.0 * f64::EPSILON * h.frobenius_norm().max(1.0));
            let s = eigen2(&h).unwrap();
            let scale = lo.abs().max(hi.abs()).max(1.0);
            prop_assert!((s.e1.re - lo).abs() < 1e-12 * scale && s.e1.im.abs() < 1e-12 * scale);
            prop_assert!((s.e2.re - hi).abs() < 1e-12 * scale && s.e2.im.abs() < 1e-12 * scale);
        }
    }

    #[test]
    fn conjugation_ignores_diagonal_phases(
        phi in angle(), tau in angle(), g1 in angle(), g2 in angle(),
        d1 in energy(), d2 in energy(),
    ) {
        let u = make_unitary(phi, tau).unwrap();
        let ug = make_general_unitary(phi, tau, g1, g2).unwrap();
        let d = CMatrix2::diag(Complex64::new(d1, 0.0), Complex64::new(d2, 0.0));
        let a = u * d * u.adjoint();
        let b = ug * d * ug.adjoint();
        prop_assert!(close(&a, &b, 1e-12));
    }

    #[test]
    fn equal_tau_hamiltonian_factorizes_through_z(
        e1 in energy(), e2 in energy(), w1 in energy(), w2 in energy(),
        phi0 in angle(), phi1 in angle(), tau in angle(),
        lre in -2.0f64..2.0, lim in -2.0f64..2.0,
    ) {
        let (p, p0) = match (
            ModelParams::new(e1, e2, w1, w2, phi0, tau, phi1, tau),
            ModelParams::new(e1, e2, w1, w2, phi0, 0.0, phi1, 0.0),
        ) {
            (Ok(p), Ok(p0)) => (p, p0),
            _ => return Ok(()),
        };
        let lam = Complex64::new(lre, lim);
        let z = make_z(tau).unwrap();
        let lhs = build_hamiltonian(&p, lam).unwrap();
        let rhs = z * build_hamiltonian(&p0, lam).unwrap() * z.adjoint();
        prop_assert!(close(&lhs, &rhs, 1e-12));
    }

    #[test]
    fn eigen2_satisfies_characteristic_polynomial(
        re in proptest::array::uniform4(-2.0f64..2.0),
        im in proptest::array::uniform4(-2.0f64..2.0),
    ) {
        let m = CMatrix2::new(
            Complex64::new(re[0], im[0]),
            Complex64::new(re[1], im[1]),
            Complex64::new(re[2], im[2]),
            Complex64::new(re[3], im[3]),
        );
        let s = eigen2(&m).unwrap();
        let scale = m.frobenius_norm().max(1.0);
        for e in [s.e1, s.e2] {
            prop_assert!((e * e - m.trace() * e + m.det()).norm() < 1e-10 * scale * scale);
        }
    }

    #[test]
    fn phase_factorization_reconstructs(
        e1 in energy(), e2 in energy(), w1 in energy(), w2 in energy(),
        phi0 in angle(), tau0 in angle(), phi1 in angle(), tau1 in angle(),
    ) {
        let p = match ModelParams::new(e1, e2, w1, w2, phi0, tau0, phi1, tau1) {
            Ok(p) => p,
            Err(_) => return Ok(()),
        };
        let t = match phases(&p) {
            Ok(t) => t,
            Err(_) => return Ok(()), // degenerate-phase draw
        };
        let u0 = make_unitary(p.phi0, p.tau0).unwrap();
        let u1 = make_unitary(p.phi1, p.tau1).unwrap();
        prop_assert!(close(&(u0.adjoint() * u1), &reconstruct_u0d_u1(&t), 1e-12));
    }

    #[test]
    fn group_relation_holds_everywhere(phi in angle(), tau in angle()) {
        for sign in [Branch::Plus, Branch::Minus] {
            prop_assert!(group_eigenrelation_check(phi, tau, sign).unwrap() < 1e-12);
        }
    }

    #[test]
    fn special_vectors_self_orthogonal(tau in angle()) {
        for sign in [Branch::Plus, Branch::Minus] {
            let (r, l) = ep_vector_special(tau, sign);
            prop_assert!(l.bilinear(&r).norm() < 1e-14);
        }
    }
}

#[test]
fn complex_json_shape_is_re_im() {
    let v = epoint_core::CVector2::new(Complex64::new(1.0, -2.0), Complex64::new(0.0, 3.0));
    let j = serde_json::to_value(v).unwrap();
    assert_eq!(j["upper"]["re"], 1.0);
    assert_eq!(j["upper"]["im"], -2.0);
    assert_eq!(j["lower"]["im"], 3.0);
}
