//! Run configuration: JSON model files with optional degree-suffixed
//! angles, sweep grids and loop geometry.

use num_complex::Complex64;
use serde::Deserialize;
use serde_json::Value;

use epoint_core::ModelParams;

pub const SCHEMA: &str = "epoint/1";

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Flat model object; each angle key accepts a `_deg` variant.
    pub model: Value,
    #[serde(default)]
    pub sweep: Option<SweepConfig>,
    #[serde(default, rename = "loop")]
    pub loop_geometry: Option<LoopConfig>,
    #[serde(default)]
    pub random_check: Option<RandomCheck>,
    #[serde(default)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    /// One or two axes over the model angles.
    pub axes: Vec<SweepAxis>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepAxis {
    pub param: SweepParam,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParam {
    Tau0,
    Tau1,
    Phi0,
    Phi1,
}

impl SweepParam {
    pub fn name(&self) -> &'static str {
        match self {
            SweepParam::Tau0 => "tau0",
            SweepParam::Tau1 => "tau1",
            SweepParam::Phi0 => "phi0",
            SweepParam::Phi1 => "phi1",
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LoopConfig {
    pub center: ComplexField,
    pub radius: f64,
    #[serde(default = "default_steps")]
    pub steps: usize,
    /// Run the loop twice and report branch restoration.
    #[serde(default)]
    pub double: bool,
}

fn default_steps() -> usize {
    256
}

#[derive(Debug, Clone, Copy, Deserialize)]
pub struct ComplexField {
    pub re: f64,
    pub im: f64,
}

impl From<ComplexField> for Complex64 {
    fn from(c: ComplexField) -> Complex64 {
        Complex64::new(c.re, c.im)
    }
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RandomCheck {
    pub count: usize,
}

/// Read a model from the flat JSON object, accepting `phi0_deg` style
/// variants for the four angles (converted to radians on load).
pub fn model_from_value(v: &Value) -> Result<ModelParams, String> {
    let obj = v
        .as_object()
        .ok_or_else(|| "model must be a JSON object".to_string())?;
    let get = |base: &str, is_angle: bool| -> Result<f64, String> {
        let plain = obj.get(base);
        let deg = if is_angle {
            obj.get(&format!("{base}_deg"))
        } else {
            None
        };
        match (plain, deg) {
            (Some(_), Some(_)) => Err(format!("model has both {base} and {base}_deg")),
            (Some(x), None) => x
                .as_f64()
                .ok_or_else(|| format!("model.{base} must be a number")),
            (None, Some(x)) => x
                .as_f64()
                .map(f64::to_radians)
                .ok_or_else(|| format!("model.{base}_deg must be a number")),
            (None, None) => Err(format!("model.{base} is missing")),
        }
    };
    let eps1 = get("eps1", false)?;
    let eps2 = get("eps2", false)?;
    let omega1 = get("omega1", false)?;
    let omega2 = get("omega2", false)?;
    let phi0 = get("phi0", true)?;
    let tau0 = get("tau0", true)?;
    let phi1 = get("phi1", true)?;
    let tau1 = get("tau1", true)?;
    let known: Vec<&str> = vec![
        "eps1", "eps2", "omega1", "omega2", "phi0", "tau0", "phi1", "tau1", "phi0_deg",
        "tau0_deg", "phi1_deg", "tau1_deg",
    ];
    for k in obj.keys() {
        if !known.contains(&k.as_str()) {
            return Err(format!("unknown model key {k}"));
        }
    }
    ModelParams::new(eps1, eps2, omega1, omega2, phi0, tau0, phi1, tau1)
        .map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_variant_converts() {
        let v: Value = serde_json::from_str(
            r#"{"eps1":1,"eps2":-1,"omega1":1,"omega2":-1,
                "phi0":0,"tau0":0,"phi1_deg":45,"tau1":0}"#,
        )
        .unwrap();
        let p = model_from_value(&v).unwrap();
        assert!((p.phi1 - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
    }

    #[test]
    fn duplicate_angle_keys_rejected() {
        let v: Value = serde_json::from_str(
            r#"{"eps1":1,"eps2":-1,"omega1":1,"omega2":-1,
                "phi0":0,"tau0":0,"phi1":0.5,"phi1_deg":45,"tau1":0}"#,
        )
        .unwrap();
        assert!(model_from_value(&v).is_err());
    }

    #[test]
    fn unknown_key_rejected() {
        let v: Value = serde_json::from_str(
            r#"{"eps1":1,"eps2":-1,"omega1":1,"omega2":-1,
                "phi0":0,"tau0":0,"phi1":0.5,"tau1":0,"bogus":1}"#,
        )
        .unwrap();
        assert!(model_from_value(&v).is_err());
    }
}
