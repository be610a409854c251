//! Run parameters and their validation.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_X_CUTOFF: f64 = 30.0;
pub const DEFAULT_K_CUTOFF: f64 = 200.0;

/// Background amplitude and frequency plus numerical controls.
///
/// The background is `amp * cos(2 * freq * x + 8 * freq^3 * t)`. On disk the
/// fields use the short keys `A`, `B`, `tol`, `L`, `R`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    #[serde(rename = "A")]
    pub amp: f64,
    #[serde(rename = "B")]
    pub freq: f64,
    /// Relative tolerance for ODE and quadrature.
    #[serde(default = "default_tol")]
    pub tol: f64,
    /// Jost integrations start at `x = -L` / `x = +L`.
    #[serde(rename = "L", default = "default_x_cutoff")]
    pub x_cutoff: f64,
    /// Cauchy integrals are truncated to `[-R, R]` plus a tail estimate.
    #[serde(rename = "R", default = "default_k_cutoff")]
    pub k_cutoff: f64,
}

fn default_tol() -> f64 {
    DEFAULT_TOL
}
fn default_x_cutoff() -> f64 {
    DEFAULT_X_CUTOFF
}
fn default_k_cutoff() -> f64 {
    DEFAULT_K_CUTOFF
}

impl Params {
    /// Parameters with default numerical controls.
    pub fn new(amp: f64, freq: f64) -> Result<Self> {
        Params {
            amp,
            freq,
            tol: DEFAULT_TOL,
            x_cutoff: DEFAULT_X_CUTOFF,
            k_cutoff: DEFAULT_K_CUTOFF,
        }
        .validated()
    }

    pub fn with_tol(mut self, tol: f64) -> Result<Self> {
        self.tol = tol;
        self.validated()
    }

    pub fn with_cutoffs(mut self, x_cutoff: f64, k_cutoff: f64) -> Result<Self> {
        self.x_cutoff = x_cutoff;
        self.k_cutoff = k_cutoff;
        self.validated()
    }

    /// Checks every invariant, reporting the first violation.
    pub fn validated(self) -> Result<Self> {
        let checks = [
            ("A", self.amp),
            ("B", self.freq),
            ("tol", self.tol),
            ("L", self.x_cutoff),
            ("R", self.k_cutoff),
        ];
        for (name, v) in checks {
            if !v.is_finite() {
                return Err(Error::InvalidInput(format!("{name} must be finite")));
            }
            if v <= 0.0 {
                return Err(Error::InvalidInput(format!("{name} must be positive")));
            }
        }
        if self.k_cutoff <= 2.0 * self.freq {
            return Err(Error::InvalidInput("R must exceed 2B".into()));
        }
        Ok(self)
    }

    /// Builds parameters from a flat key/value map; `A` and `B` are required.
    pub fn from_map(raw: &BTreeMap<String, f64>) -> Result<Self> {
        for key in raw.keys() {
            if !matches!(key.as_str(), "A" | "B" | "tol" | "L" | "R") {
                return Err(Error::InvalidInput(format!("unknown parameter {key}")));
            }
        }
        let get = |k: &str| {
            raw.get(k)
                .copied()
                .ok_or_else(|| Error::InvalidInput(format!("{k} is required")))
        };
        Params {
            amp: get("A")?,
            freq: get("B")?,
            tol: raw.get("tol").copied().unwrap_or(DEFAULT_TOL),
            x_cutoff: raw.get("L").copied().unwrap_or(DEFAULT_X_CUTOFF),
            k_cutoff: raw.get("R").copied().unwrap_or(DEFAULT_K_CUTOFF),
        }
        .validated()
    }

    /// Same as [`Params::from_map`] but for textual values, e.g. from a command line.
    pub fn from_str_map(raw: &BTreeMap<String, String>) -> Result<Self> {
        let mut parsed = BTreeMap::new();
        for (k, v) in raw {
            let x: f64 = v
                .trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("{k}: cannot parse {v:?} as a number")))?;
            parsed.insert(k.clone(), x);
        }
        Self::from_map(&parsed)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let p: Params = serde_json::from_str(text)
            .map_err(|e| Error::InvalidInput(format!("bad parameter file: {e}")))?;
        p.validated()
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain struct serializes")
    }

    /// One-line summary used as a comment header in emitted files.
    pub fn summary(&self) -> String {
        format!(
            "A={:?} B={:?} tol={:?} L={:?} R={:?}",
            self.amp, self.freq, self.tol, self.x_cutoff, self.k_cutoff
        )
    }
}

/// Validates a raw map; see [`Params::from_map`].
pub fn validate_params(raw: &BTreeMap<String, f64>) -> Result<Params> {
    Params::from_map(raw)
}
