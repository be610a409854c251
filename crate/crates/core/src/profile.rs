//! Initial profiles and space-time fields fed to the direct scattering layer.

use std::path::Path;

use crate::background::background_field;
use crate::config::Params;
use crate::error::{Error, Result};

/// A real field `u(x, t)` sampled pointwise. Profiles are `t = 0` slices.
pub trait Field: Send + Sync {
    fn params(&self) -> &Params;
    fn u(&self, x: f64, t: f64) -> f64;
    /// Points where `u` is not smooth; ODE integrations stop there.
    fn breakpoints(&self) -> Vec<f64> {
        Vec::new()
    }
    /// False for initial data, which only exist at `t = 0`.
    fn time_dependent(&self) -> bool {
        false
    }
}

/// Initial datum `u0(x)` on the line with a zero left tail and background right tail.
pub trait InitialProfile: Field {
    fn u0(&self, x: f64) -> f64 {
        self.u(x, 0.0)
    }

    /// Checks that the tails beyond `[-L, L]` match `0` and `A cos 2Bx` to `tol`.
    fn certify(&self, tol: f64) -> Result<()> {
        let p = *self.params();
        let l = p.x_cutoff;
        for i in 0..64 {
            let x = l * (1.0 + i as f64 / 16.0);
            let left = self.u0(-x).abs();
            let right = (self.u0(x) - background_field(&p, x, 0.0)).abs();
            if left > tol || right > tol {
                return Err(Error::Domain(format!(
                    "profile violates its decay certificate near |x| = {x}: tails {left:.3e}, {right:.3e}"
                )));
            }
        }
        Ok(())
    }
}

/// The pure oscillating step: `0` for `x < 0`, `A cos 2Bx` for `x >= 0`.
#[derive(Clone, Copy, Debug)]
pub struct PureStep {
    pub params: Params,
}

impl PureStep {
    pub fn new(params: Params) -> Self {
        PureStep { params }
    }
}

impl Field for PureStep {
    fn params(&self) -> &Params {
        &self.params
    }
    fn u(&self, x: f64, _t: f64) -> f64 {
        if x < 0.0 {
            0.0
        } else {
            background_field(&self.params, x, 0.0)
        }
    }
    fn breakpoints(&self) -> Vec<f64> {
        vec![0.0]
    }
}
impl InitialProfile for PureStep {}

/// Pure step plus a Gaussian bump `eps * exp(-(x - center)^2)`.
#[derive(Clone, Copy, Debug)]
pub struct BumpedStep {
    pub params: Params,
    pub eps: f64,
    pub center: f64,
}

/// Largest bump height accepted; keeps the spectral case of the pure step.
pub const MAX_BUMP: f64 = 0.2;

impl BumpedStep {
    pub fn new(params: Params, eps: f64, center: f64) -> Result<Self> {
        if !eps.is_finite() || eps.abs() > MAX_BUMP {
            return Err(Error::InvalidInput(format!(
                "bump height must satisfy |eps| <= {MAX_BUMP}"
            )));
        }
        if !center.is_finite() {
            return Err(Error::InvalidInput("bump center must be finite".into()));
        }
        Ok(BumpedStep {
            params,
            eps,
            center,
        })
    }
}

impl Field for BumpedStep {
    fn params(&self) -> &Params {
        &self.params
    }
    fn u(&self, x: f64, _t: f64) -> f64 {
        let step = if x < 0.0 {
            0.0
        } else {
            background_field(&self.params, x, 0.0)
        };
        let d = x - self.center;
        step + self.eps * (-d * d).exp()
    }
    fn breakpoints(&self) -> Vec<f64> {
        vec![0.0]
    }
}
impl InitialProfile for BumpedStep {}

/// Linearly interpolated samples with exact background tails outside the table.
#[derive(Clone, Debug)]
pub struct TabulatedProfile {
    pub params: Params,
    xs: Vec<f64>,
    us: Vec<f64>,
}

#[derive(serde::Deserialize)]
struct Row {
    x: f64,
    u0: f64,
}

impl TabulatedProfile {
    pub fn new(params: Params, xs: Vec<f64>, us: Vec<f64>) -> Result<Self> {
        if xs.len() != us.len() || xs.len() < 2 {
            return Err(Error::InvalidInput(
                "profile table needs at least two rows".into(),
            ));
        }
        if xs.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidInput(
                "profile x values must be strictly increasing".into(),
            ));
        }
        if xs.iter().chain(&us).any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput(
                "profile contains non-finite values".into(),
            ));
        }
        Ok(TabulatedProfile { params, xs, us })
    }

    /// Reads a two-column CSV with header `x,u0`; `#` lines are comments.
    pub fn from_reader(params: Params, rdr: impl std::io::Read) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .trim(csv::Trim::All)
            .from_reader(rdr);
        let headers = reader.headers()?.clone();
        if headers.iter().collect::<Vec<_>>() != ["x", "u0"] {
            return Err(Error::InvalidInput(format!(
                "profile header must be `x,u0`, got {headers:?}"
            )));
        }
        let (mut xs, mut us) = (Vec::new(), Vec::new());
        for row in reader.deserialize() {
            let row: Row = row?;
            xs.push(row.x);
            us.push(row.u0);
        }
        Self::new(params, xs, us)
    }

    pub fn from_csv(params: Params, path: &Path) -> Result<Self> {
        let file = std::fs::File::open(path)?;
        Self::from_reader(params, file)
    }
}

impl Field for TabulatedProfile {
    fn params(&self) -> &Params {
        &self.params
    }
    fn u(&self, x: f64, _t: f64) -> f64 {
        let n = self.xs.len();
        if x < self.xs[0] {
            return 0.0;
        }
        if x > self.xs[n - 1] {
            return background_field(&self.params, x, 0.0);
        }
        let i = self.xs.partition_point(|&v| v <= x).clamp(1, n - 1);
        let (x0, x1) = (self.xs[i - 1], self.xs[i]);
        let w = (x - x0) / (x1 - x0);
        self.us[i - 1] * (1.0 - w) + self.us[i] * w
    }
    fn breakpoints(&self) -> Vec<f64> {
        self.xs.clone()
    }
}
impl InitialProfile for TabulatedProfile {}

/// Any closure `u(x, t)` treated as a time-dependent field (e.g. a closed-form solution).
pub struct FnField<F> {
    pub params: Params,
    pub f: F,
}

impl<F: Fn(f64, f64) -> f64 + Send + Sync> Field for FnField<F> {
    fn params(&self) -> &Params {
        &self.params
    }
    fn u(&self, x: f64, t: f64) -> f64 {
        (self.f)(x, t)
    }
    fn time_dependent(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_interpolates_and_uses_tails() {
        let p = Params::new(1.0, 0.25).unwrap();
        let csv = "x,u0\n-1,0\n0,1\n1,3\n";
        let prof = TabulatedProfile::from_reader(p, csv.as_bytes()).unwrap();
        assert_eq!(prof.u0(0.5), 2.0);
        assert_eq!(prof.u0(-5.0), 0.0);
        assert_eq!(prof.u0(4.0), background_field(&p, 4.0, 0.0));
    }

    #[test]
    fn bad_header_rejected() {
        let p = Params::new(1.0, 0.25).unwrap();
        assert!(TabulatedProfile::from_reader(p, "a,b\n0,1\n1,2\n".as_bytes()).is_err());
    }

    #[test]
    fn bump_limit() {
        let p = Params::new(1.0, 0.25).unwrap();
        assert!(BumpedStep::new(p, 0.3, 0.0).is_err());
        assert!(BumpedStep::new(p, 0.1, 0.5).unwrap().certify(1e-12).is_ok());
    }
}
