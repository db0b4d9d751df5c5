use std::path::Path;

use gradslice::algebra::parse_rational;
use gradslice::models::{Branch, ModelKind, ModelSpec};
use gradslice::Q;
use serde::{Deserialize, Serialize};

use crate::exit::Exit;

/// A number as written in the config: a decimal/fraction string, or a bare
/// JSON number (read back through its decimal text, never through `f64`).
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum Num {
    Text(String),
    Number(serde_json::Number),
}

impl Num {
    fn parse(&self, field: &str) -> Result<Q, Exit> {
        let text = match self {
            Num::Text(s) => s.clone(),
            Num::Number(n) => n.to_string(),
        };
        parse_rational(&text).ok_or_else(|| Exit::config(format!("`{field}`: cannot parse {text:?} as a rational")))
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub param: Option<String>,
    pub min: Num,
    pub max: Num,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<usize>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    pub model: String,
    pub omega: Num,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<Num>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<Num>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g1: Option<Num>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g2: Option<Num>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_drive: Option<Num>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<Num>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub branch: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepConfig>,
}

/// Sweep interval in the model's coupling parameter.
#[derive(Clone, Debug)]
pub struct Sweep {
    pub lo: Q,
    pub hi: Q,
    pub grid: usize,
}

pub const DEFAULT_GRID: usize = 1000;

impl ModelConfig {
    pub fn load(path: &Path) -> Result<Self, Exit> {
        let text = std::fs::read_to_string(path).map_err(|e| Exit::config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self, Exit> {
        serde_json::from_str(text).map_err(|e| Exit::config(format!("malformed config: {e}")))
    }

    pub fn spec(&self) -> Result<ModelSpec, Exit> {
        let kind = ModelKind::parse(&self.model).ok_or_else(|| Exit::config(format!("unknown model {:?}", self.model)))?;
        let opt = |x: &Option<Num>, f: &str| x.as_ref().map(|v| v.parse(f)).transpose();
        let delta = opt(&self.delta, "delta")?.unwrap_or_default();
        let mut spec = ModelSpec::new(kind, self.omega.parse("omega")?, delta);
        if let Some(g) = opt(&self.g, "g")? {
            spec = spec.with_g(g);
        }
        match (opt(&self.g1, "g1")?, opt(&self.g2, "g2")?) {
            (Some(a), Some(b)) => spec = spec.with_couplings(a, b),
            (None, None) => {}
            _ => return Err(Exit::config("`g1` and `g2` must be given together")),
        }
        if let Some(d) = opt(&self.delta_drive, "delta_drive")? {
            spec = spec.with_drive(d);
        }
        if let Some(q) = opt(&self.q, "q")? {
            spec = spec.with_q(q);
        }
        if let Some(b) = &self.branch {
            let branch = match b.to_ascii_lowercase().as_str() {
                "plus" | "+" => Branch::Plus,
                "minus" | "-" | "primed" => Branch::Minus,
                "degenerate" => Branch::Degenerate,
                other => return Err(Exit::config(format!("unknown branch {other:?}"))),
            };
            spec = spec.with_branch(branch);
        }
        spec.validate().map_err(Exit::config)?;
        Ok(spec)
    }

    pub fn n(&self) -> Result<usize, Exit> {
        self.n.ok_or_else(|| Exit::config("this command needs the baseline index `n`"))
    }

    /// The configured sweep, or the model's default coupling domain.
    pub fn sweep(&self, spec: &ModelSpec) -> Result<Sweep, Exit> {
        let Some(s) = &self.sweep else {
            let (lo, hi) = spec.default_domain();
            return Ok(Sweep { lo, hi, grid: DEFAULT_GRID });
        };
        if let Some(p) = &s.param {
            let expected = spec.kind.coupling_name();
            if !p.eq_ignore_ascii_case(expected) {
                return Err(Exit::config(format!("the {} model sweeps `{expected}`, not `{p}`", spec.kind.name())));
            }
        }
        let (lo, hi) = (s.min.parse("sweep.min")?, s.max.parse("sweep.max")?);
        if lo >= hi {
            return Err(Exit::config("sweep needs min < max"));
        }
        let grid = s.grid.unwrap_or(DEFAULT_GRID);
        if grid < 2 {
            return Err(Exit::config("sweep grid needs at least 2 cells"));
        }
        Ok(Sweep { lo, hi, grid })
    }
}
