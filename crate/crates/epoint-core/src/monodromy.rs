//! Numerical demonstration that λ_c is a square-root branch point:
//! continuous eigenvalue-branch tracking along closed λ-paths, with the
//! induced permutation (identity or swap) as output.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::eplocate::ep_numerical;
use crate::error::{Error, Result};
use crate::matkit::{build_hamiltonian, ModelParams};
use crate::spectral::eigen2;

/// Relative path-admissibility tolerance: loops passing closer than this
/// to an EP are rejected instead of risking a mis-tracked permutation.
pub const GAP_TOL: f64 = 1e-6;

/// Maximum number of step-halving refinements between two path points.
const MAX_REFINE: u32 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Permutation {
    Identity,
    Swap,
}

/// A discretized closed λ-loop with continuously tracked eigenvalue
/// branches.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LoopTrace {
    #[serde(with = "crate::types::complex_serde")]
    pub center: Complex64,
    pub radius: f64,
    pub steps: usize,
    #[serde(with = "crate::types::complex_vec_serde")]
    pub lambdas: Vec<Complex64>,
    #[serde(with = "crate::types::complex_vec_serde")]
    pub branch1: Vec<Complex64>,
    #[serde(with = "crate::types::complex_vec_serde")]
    pub branch2: Vec<Complex64>,
    /// |⟨r_prev|r_curr⟩| of the branch-1 right eigenvector between steps;
    /// recorded for inspection, not asserted.
    pub vector_overlap: Vec<f64>,
    pub permutation: Permutation,
    /// Smallest |E₁ − E₂| seen along the path.
    pub min_gap: f64,
}

struct Tracker<'a> {
    p: &'a ModelParams,
    min_gap: f64,
    gap_floor: f64,
}

impl<'a> Tracker<'a> {
    fn pair_at(&mut self, lambda: Complex64) -> Result<(Complex64, Complex64)> {
        let h = build_hamiltonian(self.p, lambda)?;
        let s = eigen2(&h)?;
        self.min_gap = self.min_gap.min((s.e1 - s.e2).norm());
        Ok((s.e1, s.e2))
    }

    /// Advance the ordered branch pair from `from` to `to`, splitting the
    /// step whenever the nearest-neighbor assignment is not clearly
    /// separated from the alternative.
    fn advance(
        &mut self,
        branches: (Complex64, Complex64),
        from: Complex64,
        to: Complex64,
        depth: u32,
    ) -> Result<(Complex64, Complex64)> {
        let (e1, e2) = self.pair_at(to)?;
        let keep = (e1 - branches.0).norm() + (e2 - branches.1).norm();
        let swap = (e1 - branches.1).norm() + (e2 - branches.0).norm();
        let margin = (keep - swap).abs();
        let motion = keep.min(swap);
        if margin < 2.0 * motion {
            if depth >= MAX_REFINE {
                if self.min_gap < self.gap_floor {
                    return Err(Error::PathDegeneracy(
                        "path passes too close to an eigenvalue coalescence".into(),
                    ));
                }
                return Err(Error::TrackingFailure(
                    "branch assignment ambiguous after maximal step refinement".into(),
                ));
            }
            let mid = (from + to) / 2.0;
            let half = self.advance(branches, from, mid, depth + 1)?;
            return self.advance(half, mid, to, depth + 1);
        }
        Ok(if keep <= swap { (e1, e2) } else { (e2, e1) })
    }
}

fn loop_points(center: Complex64, radius: f64, steps: usize) -> Vec<Complex64> {
    (0..=steps)
        .map(|k| {
            if k == steps {
                center + Complex64::new(radius, 0.0)
            } else {
                let theta = 2.0 * PI * k as f64 / steps as f64;
                center + Complex64::from_polar(radius, theta)
            }
        })
        .collect()
}

fn admissibility_scale(p: &ModelParams) -> Result<(Complex64, Complex64, f64)> {
    let (plus, minus) = ep_numerical(p)?;
    let scale = plus.lambda_c.norm().max(minus.lambda_c.norm()).max(1.0);
    Ok((plus.lambda_c, minus.lambda_c, scale))
}

/// Walk λ around the circle and track both eigenvalue branches.
pub fn encircle(
    p: &ModelParams,
    center: Complex64,
    radius: f64,
    steps: usize,
) -> Result<LoopTrace> {
    let trace = encircle_continued(p, center, radius, steps, None)?;
    Ok(trace)
}

/// Like [`encircle`] but optionally continues from previously tracked
/// branch values (used by the double-loop check).
pub fn encircle_continued(
    p: &ModelParams,
    center: Complex64,
    radius: f64,
    steps: usize,
    start_branches: Option<(Complex64, Complex64)>,
) -> Result<LoopTrace> {
    if !center.is_finite() || !radius.is_finite() || radius <= 0.0 {
        return Err(Error::InvalidArgument(
            "loop center must be finite and radius positive".into(),
        ));
    }
    if steps < 8 {
        return Err(Error::InvalidArgument("steps must be at least 8".into()));
    }
    let (ep_p, ep_m, scale) = admissibility_scale(p)?;
    let gap_tol = GAP_TOL * scale;
    for ep in [ep_p, ep_m] {
        if ((ep - center).norm() - radius).abs() < gap_tol {
            return Err(Error::PathDegeneracy(format!(
                "loop passes within {gap_tol:.3e} of the EP at {ep}"
            )));
        }
    }

    let lambdas = loop_points(center, radius, steps);
    let mut tracker = Tracker {
        p,
        min_gap: f64::INFINITY,
        gap_floor: gap_tol,
    };

    let (e1, e2) = tracker.pair_at(lambdas[0])?;
    let mut branches = match start_branches {
        None => (e1, e2),
        Some((b1, b2)) => {
            // align the solver pair with the caller's branch continuation
            let keep = (e1 - b1).norm() + (e2 - b2).norm();
            let swap = (e1 - b2).norm() + (e2 - b1).norm();
            if keep <= swap {
                (e1, e2)
            } else {
                (e2, e1)
            }
        }
    };
    let mut branch1 = vec![branches.0];
    let mut branch2 = vec![branches.1];
    let mut vector_overlap = Vec::with_capacity(steps);
    let mut prev_vec = eigen2(&build_hamiltonian(p, lambdas[0])?)?.r1;

    for w in lambdas.windows(2) {
        branches = tracker.advance(branches, w[0], w[1], 0)?;
        branch1.push(branches.0);
        branch2.push(branches.1);
        let s = eigen2(&build_hamiltonian(p, w[1])?)?;
        let cur = if (s.e1 - branches.0).norm() <= (s.e2 - branches.0).norm() {
            s.r1
        } else {
            s.r2
        };
        vector_overlap.push(prev_vec.hermitian_dot(&cur).norm());
        prev_vec = cur;
    }

    if tracker.min_gap <= gap_tol {
        return Err(Error::PathDegeneracy(
            "eigenvalue gap along the path fell below the tracking floor".into(),
        ));
    }

    let start = (branch1[0], branch2[0]);
    let end = (*branch1.last().unwrap(), *branch2.last().unwrap());
    let keep = (end.0 - start.0).norm() + (end.1 - start.1).norm();
    let swap = (end.0 - start.1).norm() + (end.1 - start.0).norm();
    let permutation = if keep <= swap {
        Permutation::Identity
    } else {
        Permutation::Swap
    };

    Ok(LoopTrace {
        center,
        radius,
        steps,
        lambdas,
        branch1,
        branch2,
        vector_overlap,
        permutation,
        min_gap: tracker.min_gap,
    })
}

/// Report of [`double_loop_check`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DoubleLoopReport {
    pub first: Permutation,
    pub second: Permutation,
    /// Relative distance of the branch values after two loops from their
    /// starting values.
    pub restoration_defect: f64,
    pub restored: bool,
}

/// Run the same loop twice with continued branch tracking; after two
/// passes around a square-root branch point the branches must return to
/// their starting values.
pub fn double_loop_check(
    p: &ModelParams,
    center: Complex64,
    radius: f64,
    steps: usize,
) -> Result<DoubleLoopReport> {
    let t1 = encircle_continued(p, center, radius, steps, None)?;
    let cont = (*t1.branch1.last().unwrap(), *t1.branch2.last().unwrap());
    let t2 = encircle_continued(p, center, radius, steps, Some(cont))?;
    let start = (t1.branch1[0], t1.branch2[0]);
    let end = (*t2.branch1.last().unwrap(), *t2.branch2.last().unwrap());
    let scale = start.0.norm().max(start.1.norm()).max(1.0);
    let defect = ((end.0 - start.0).norm() + (end.1 - start.1).norm()) / scale;
    Ok(DoubleLoopReport {
        first: t1.permutation,
        second: t2.permutation,
        restoration_defect: defect,
        restored: defect < 1e-8,
    })
}
