//! The four analysis subcommands.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use epoint_core::eplocate::{cross_validate, ep_general};
use epoint_core::epvector::{ep_vector_general, phases, polarization};
use epoint_core::matkit::{build_hamiltonian, ModelParams};
use epoint_core::monodromy::{double_loop_check, encircle};
use epoint_core::sample;
use epoint_core::types::{CMatrix2, CVector2};
use epoint_core::{CrossValidation, Error};

use crate::config::{LoopConfig, RunConfig, SweepConfig};
use crate::report::{num, to_schema_json, CsvWriter};

/// Exit codes shared by every subcommand.
pub fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::ModelValidation(_) | Error::DegenerateModel(_) => 2,
        Error::PathDegeneracy(_) | Error::TrackingFailure(_) => 4,
        Error::InvalidArgument(_) | Error::Precondition(_) => 1,
    }
}

pub struct CmdOutput {
    /// Main artifact; written to --out or stdout.
    pub main: String,
    /// Secondary artifact and its file suffix (the loop trace CSV).
    pub extra: Option<(String, &'static str)>,
    pub exit: u8,
}

#[derive(Serialize)]
struct FindEpReport {
    model: ModelParams,
    routes: CrossValidation,
    random_check: Option<RandomCheckReport>,
    agreement: bool,
}

#[derive(Serialize)]
struct RandomCheckReport {
    seed: u64,
    count: usize,
    worst_rel_delta: f64,
    worst_nilpotency: f64,
    all_ok: bool,
}

pub fn cmd_find_ep(cfg: &RunConfig, p: &ModelParams, seed: u64) -> Result<CmdOutput, Error> {
    let routes = cross_validate(p)?;
    let random_check = cfg.random_check.map(|rc| {
        let mut rng = sample::rng(seed);
        let mut worst_rel_delta = 0.0f64;
        let mut worst_nilpotency = 0.0f64;
        let mut all_ok = true;
        for _ in 0..rc.count {
            let q = sample::random_model(&mut rng);
            match cross_validate(&q) {
                Ok(r) => {
                    worst_rel_delta = worst_rel_delta.max(r.max_rel_delta);
                    worst_nilpotency = worst_nilpotency.max(r.max_nilpotency);
                    all_ok &= r.ok;
                }
                Err(_) => all_ok = false,
            }
        }
        RandomCheckReport {
            seed,
            count: rc.count,
            worst_rel_delta,
            worst_nilpotency,
            all_ok,
        }
    });
    let agreement = routes.ok && random_check.as_ref().map_or(true, |r| r.all_ok);
    let exit = if agreement { 0 } else { 3 };
    let report = FindEpReport {
        model: *p,
        routes,
        random_check,
        agreement,
    };
    Ok(CmdOutput {
        main: to_schema_json(&report),
        extra: None,
        exit,
    })
}

#[derive(Serialize)]
struct BranchVectorReport {
    branch: &'static str,
    #[serde(with = "epoint_core::types::complex_serde")]
    lambda_c: Complex64,
    #[serde(with = "epoint_core::types::complex_serde")]
    e_c: Complex64,
    vector: CVector2,
    lower_vanishes: bool,
    phases: epoint_core::PhaseTriple,
    polarization: epoint_core::PolarizationDescriptor,
    self_orthogonality: f64,
}

#[derive(Serialize)]
struct VectorReport {
    model: ModelParams,
    branches: Vec<BranchVectorReport>,
}

/// Left eigenvector at the EP from the adjugate rows of (H(λ_c) − e_c).
fn left_at_ep(p: &ModelParams, lambda_c: Complex64, e_c: Complex64) -> CVector2 {
    let h = build_hamiltonian(p, lambda_c).expect("validated model");
    let adj = (h - CMatrix2::diag(e_c, e_c)).adjugate();
    let r1 = CVector2::new(adj.a11, adj.a12);
    let r2 = CVector2::new(adj.a21, adj.a22);
    let v = if r1.norm() >= r2.norm() { r1 } else { r2 };
    v.normalized()
}

pub fn cmd_vector(p: &ModelParams) -> Result<CmdOutput, Error> {
    let tri = phases(p)?;
    let (plus, minus) = ep_general(p)?;
    let mut branches = Vec::new();
    for sol in [plus, minus] {
        let g = ep_vector_general(p, sol.branch)?;
        let left = left_at_ep(p, sol.lambda_c, sol.e_c);
        let right = sol.vec.normalized();
        branches.push(BranchVectorReport {
            branch: match sol.branch {
                epoint_core::Branch::Plus => "plus",
                epoint_core::Branch::Minus => "minus",
            },
            lambda_c: sol.lambda_c,
            e_c: sol.e_c,
            vector: sol.vec,
            lower_vanishes: g.lower_vanishes,
            phases: tri,
            polarization: polarization(&sol.vec)?,
            self_orthogonality: left.bilinear(&right).norm(),
        });
    }
    let report = VectorReport {
        model: *p,
        branches,
    };
    Ok(CmdOutput {
        main: to_schema_json(&report),
        extra: None,
        exit: 0,
    })
}

fn apply_axis(p: &ModelParams, param: crate::config::SweepParam, value: f64) -> Result<ModelParams, Error> {
    use crate::config::SweepParam::*;
    let (mut phi0, mut tau0, mut phi1, mut tau1) = (p.phi0, p.tau0, p.phi1, p.tau1);
    match param {
        Tau0 => tau0 = value,
        Tau1 => tau1 = value,
        Phi0 => phi0 = value,
        Phi1 => phi1 = value,
    }
    ModelParams::new(
        p.eps1, p.eps2, p.omega1, p.omega2, phi0, tau0, phi1, tau1,
    )
}

fn grid(axis: &crate::config::SweepAxis) -> Vec<f64> {
    (0..axis.count)
        .map(|k| {
            if axis.count == 1 {
                axis.start
            } else {
                axis.start + (axis.stop - axis.start) * k as f64 / (axis.count - 1) as f64
            }
        })
        .collect()
}

pub fn cmd_sweep(sweep: &SweepConfig, p: &ModelParams) -> Result<CmdOutput, Error> {
    if sweep.axes.is_empty() || sweep.axes.len() > 2 || sweep.axes.iter().any(|a| a.count == 0) {
        return Err(Error::InvalidArgument(
            "sweep needs one or two axes with nonempty grids".into(),
        ));
    }
    let a0 = &sweep.axes[0];
    let g0 = grid(a0);
    let (names, points): (Vec<&str>, Vec<Vec<f64>>) = if sweep.axes.len() == 2 {
        let a1 = &sweep.axes[1];
        let g1 = grid(a1);
        let mut pts = Vec::with_capacity(g0.len() * g1.len());
        for x in &g0 {
            for y in &g1 {
                pts.push(vec![*x, *y]);
            }
        }
        (vec![a0.param.name(), a1.param.name()], pts)
    } else {
        (vec![a0.param.name()], g0.iter().map(|x| vec![*x]).collect())
    };

    let header: Vec<&str> = names
        .iter()
        .copied()
        .chain(
            [
                "status",
                "re_lambda_plus",
                "im_lambda_plus",
                "re_lambda_minus",
                "im_lambda_minus",
                "xi",
                "axial_ratio",
                "handedness",
            ]
            .into_iter(),
        )
        .collect();
    let mut csv = CsvWriter::new(&header);

    let axis_params: Vec<_> = sweep.axes.iter().map(|a| a.param).collect();
    let rows: Vec<Vec<String>> = points
        .par_iter()
        .map(|pt| {
            let mut cells: Vec<String> = pt.iter().map(|x| num(*x)).collect();
            let model = axis_params
                .iter()
                .zip(pt.iter())
                .try_fold(*p, |m, (param, value)| apply_axis(&m, *param, *value));
            match model.and_then(|m| {
                let (plus, minus) = ep_general(&m)?;
                let tri = phases(&m)?;
                let g = ep_vector_general(&m, plus.branch)?;
                let pol = polarization(&g.vec)?;
                Ok((plus, minus, tri, pol))
            }) {
                Ok((plus, minus, tri, pol)) => {
                    cells.push("ok".into());
                    cells.push(num(plus.lambda_c.re));
                    cells.push(num(plus.lambda_c.im));
                    cells.push(num(minus.lambda_c.re));
                    cells.push(num(minus.lambda_c.im));
                    cells.push(num(tri.xi));
                    cells.push(num(pol.axial_ratio));
                    cells.push(
                        serde_json::to_value(pol.handedness)
                            .unwrap()
                            .as_str()
                            .unwrap()
                            .to_string(),
                    );
                }
                Err(e) => {
                    let status = match e {
                        Error::ModelValidation(_) => "model-validation",
                        Error::DegenerateModel(_) => "degenerate-model",
                        _ => "error",
                    };
                    cells.push(status.into());
                    for _ in 0..7 {
                        cells.push("nan".into());
                    }
                }
            }
            cells
        })
        .collect();
    for row in rows {
        csv.row(&row);
    }
    Ok(CmdOutput {
        main: csv.finish(),
        extra: None,
        exit: 0,
    })
}

#[derive(Serialize)]
struct EncircleSummary {
    model: ModelParams,
    #[serde(with = "epoint_core::types::complex_serde")]
    center: Complex64,
    radius: f64,
    steps: usize,
    permutation: epoint_core::Permutation,
    min_gap: f64,
    double_loop: Option<epoint_core::DoubleLoopReport>,
}

pub fn cmd_encircle(geom: &LoopConfig, p: &ModelParams) -> Result<CmdOutput, Error> {
    let center: Complex64 = geom.center.into();
    let trace = encircle(p, center, geom.radius, geom.steps)?;
    let double_loop = if geom.double {
        Some(double_loop_check(p, center, geom.radius, geom.steps)?)
    } else {
        None
    };

    let mut csv = CsvWriter::new(&[
        "step",
        "re_lambda",
        "im_lambda",
        "re_E1",
        "im_E1",
        "re_E2",
        "im_E2",
    ]);
    for (k, ((lam, b1), b2)) in trace
        .lambdas
        .iter()
        .zip(trace.branch1.iter())
        .zip(trace.branch2.iter())
        .enumerate()
    {
        csv.row(&[
            k.to_string(),
            num(lam.re),
            num(lam.im),
            num(b1.re),
            num(b1.im),
            num(b2.re),
            num(b2.im),
        ]);
    }

    let summary = EncircleSummary {
        model: *p,
        center,
        radius: geom.radius,
        steps: geom.steps,
        permutation: trace.permutation,
        min_gap: trace.min_gap,
        double_loop,
    };
    Ok(CmdOutput {
        main: to_schema_json(&summary),
        extra: Some((csv.finish(), "csv")),
        exit: 0,
    })
}
