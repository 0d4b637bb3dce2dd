//! On-disk witness format: the graph's own fields plus its certificate.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use unitforce::complex::{verify_complex_with, ComplexWitnessGraph};
use unitforce::exec::Execution;
use unitforce::replay::{check_certificate_with, CheckReport, Certificate};
use unitforce::witness::{verify_witness_with, VerificationReport, WitnessGraph};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AnyGraph {
    Complex(ComplexWitnessGraph),
    Real(WitnessGraph),
}

impl AnyGraph {
    pub fn verify(&self, exec: Execution) -> VerificationReport {
        match self {
            AnyGraph::Complex(g) => verify_complex_with(g, exec),
            AnyGraph::Real(g) => verify_witness_with(g, exec),
        }
    }

    pub fn check(&self, cert: &Certificate, exec: Execution) -> CheckReport {
        match self {
            AnyGraph::Complex(g) => check_certificate_with(g, cert, exec),
            AnyGraph::Real(g) => check_certificate_with(g, cert, exec),
        }
    }

    pub fn to_dot(&self) -> String {
        match self {
            AnyGraph::Complex(g) => g.to_dot(),
            AnyGraph::Real(g) => g.to_dot(),
        }
    }

    /// Decimal coordinates, each complex coordinate as `[re, im]`.
    pub fn approx_points(&self) -> Value {
        match self {
            AnyGraph::Real(g) => g.points.iter().map(|p| p.to_f64()).collect::<Vec<_>>().into(),
            AnyGraph::Complex(g) => g
                .points
                .iter()
                .map(|p| p.0.iter().map(|z| vec![z.re.to_f64(), z.im.to_f64()]).collect::<Vec<_>>())
                .collect::<Vec<_>>()
                .into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessFile {
    #[serde(flatten)]
    pub graph: AnyGraph,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
}

pub fn load(path: &Path) -> Result<WitnessFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let mut value: Value = serde_json::from_str(&text).map_err(|e| CliError::failure("parse", format!("{}: {e}", path.display())))?;
    // decimal renderings are informational only
    if let Some(obj) = value.as_object_mut() {
        obj.remove("approx");
    }
    serde_json::from_value(value).map_err(|e| CliError::failure("parse", format!("{}: not a witness file: {e}", path.display())))
}
