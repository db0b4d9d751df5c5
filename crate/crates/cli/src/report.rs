//! Serialized forms of certificates and Juddian points.

use gradslice::verification::{Certificate, Status, Witness};
use gradslice::{UniPoly, Q};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::config::ModelConfig;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub kind: String,
    pub status: String,
    pub model: Option<String>,
    pub n: Option<usize>,
    pub parameter: Option<String>,
    pub witnesses: Map<String, Value>,
}

impl CertificateRecord {
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

impl From<&Certificate> for CertificateRecord {
    fn from(c: &Certificate) -> Self {
        let witnesses = c
            .witnesses
            .iter()
            .map(|(k, w)| {
                let v = match w {
                    Witness::Exact(s) => Value::String(s.clone()),
                    Witness::Float(x) => serde_json::Number::from_f64(*x).map(Value::Number).unwrap_or_else(|| Value::String(x.to_string())),
                    Witness::Flag(b) => Value::Bool(*b),
                };
                (k.clone(), v)
            })
            .collect();
        CertificateRecord {
            kind: c.kind.name().to_string(),
            status: if c.status == Status::Pass { "pass" } else { "fail" }.to_string(),
            model: c.model.clone(),
            n: c.n,
            parameter: c.parameter.clone(),
            witnesses,
        }
    }
}

pub fn records(certs: &[Certificate]) -> Vec<CertificateRecord> {
    certs.iter().map(CertificateRecord::from).collect()
}

/// The sl₂ decomposition at one point, with its checks.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Sl2Record {
    pub two_j: usize,
    pub coefficients: Map<String, Value>,
    /// `C* + b₂p₁ + j(3j−1)a₂ + jb₁`, exactly; zero at a genuine point.
    pub cfrm_defect: String,
    pub certificates: Vec<CertificateRecord>,
}

impl Sl2Record {
    pub fn passed(&self) -> bool {
        self.cfrm_defect == "0" && self.certificates.iter().all(CertificateRecord::passed)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PointRecord {
    pub index: usize,
    /// The coupling as an exact rational (refined midpoint, or the binary
    /// value of a floating-point root).
    pub param: String,
    pub value: f64,
    pub coupling: f64,
    pub energy: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interval: Option<[String; 2]>,
    /// `a_0, …, a_n` of the monic solution.
    pub coefficients: Vec<f64>,
    /// Zeros of the solution as `[re, im]`.
    pub roots: Vec<[f64; 2]>,
    pub residual_rel: f64,
    pub certificates: Vec<CertificateRecord>,
    pub sl2: Option<Sl2Record>,
}

impl PointRecord {
    pub fn passed(&self) -> bool {
        self.certificates.iter().all(CertificateRecord::passed) && self.sl2.as_ref().map_or(true, Sl2Record::passed)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RootsReport {
    pub model: String,
    pub n: usize,
    pub mode: String,
    pub parameter: String,
    pub config: ModelConfig,
    pub interval: [String; 2],
    /// Ascending coefficients of the squarefree polynomial whose roots are
    /// the points (exact mode only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub defining: Option<Vec<String>>,
    pub excluded: usize,
    pub sweep_certificates: Vec<CertificateRecord>,
    pub points: Vec<PointRecord>,
    pub all_passed: bool,
}

pub fn poly_strings(p: &UniPoly<Q>) -> Vec<String> {
    p.coeffs().iter().map(ToString::to_string).collect()
}
