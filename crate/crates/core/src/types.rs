//! Case taxonomy, sign choices and evaluation grids.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Zero configuration of the spectral function `a1`.
///
/// The plain cases have `a2(±B) != 0`; the tilde cases have `a2(±B) = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseTag {
    /// Two simple purely imaginary zeros.
    #[serde(rename = "I")]
    I,
    /// A simple zero `p` and its reflection `-conj(p)`.
    #[serde(rename = "II")]
    II,
    /// One purely imaginary double zero.
    #[serde(rename = "III")]
    III,
    #[serde(rename = "I~")]
    TildeI,
    #[serde(rename = "II~")]
    TildeII,
    #[serde(rename = "III~")]
    TildeIII,
}

impl CaseTag {
    pub fn is_tilde(self) -> bool {
        matches!(self, CaseTag::TildeI | CaseTag::TildeII | CaseTag::TildeIII)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::I => "I",
            CaseTag::II => "II",
            CaseTag::III => "III",
            CaseTag::TildeI => "I~",
            CaseTag::TildeII => "II~",
            CaseTag::TildeIII => "III~",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CaseTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        Ok(match t.as_str() {
            "i" | "1" => CaseTag::I,
            "ii" | "2" => CaseTag::II,
            "iii" | "3" => CaseTag::III,
            "i~" | "ti" | "tilde-i" | "1t" => CaseTag::TildeI,
            "ii~" | "tii" | "tilde-ii" | "2t" => CaseTag::TildeII,
            "iii~" | "tiii" | "tilde-iii" | "3t" => CaseTag::TildeIII,
            _ => return Err(Error::InvalidInput(format!("unknown case {s:?}"))),
        })
    }
}

/// Zeros of `a1` in the closed upper half-plane together with their case.
///
/// `zeros[0]` and `zeros[1]` coincide for the double-zero cases.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroSet {
    pub case: CaseTag,
    pub zeros: [num_complex::Complex64; 2],
}

impl ZeroSet {
    /// Two purely imaginary zeros `i k1`, `i k2` with `0 < k1 < k2`.
    pub fn imaginary_pair(case: CaseTag, k1: f64, k2: f64) -> Self {
        ZeroSet {
            case,
            zeros: [
                num_complex::Complex64::new(0.0, k1),
                num_complex::Complex64::new(0.0, k2),
            ],
        }
    }

    /// A zero `p` with `Re p < 0` and its mirror `-conj(p)`.
    pub fn mirrored_pair(case: CaseTag, p: num_complex::Complex64) -> Self {
        ZeroSet {
            case,
            zeros: [p, -p.conj()],
        }
    }

    pub fn double(case: CaseTag, l1: f64) -> Self {
        let z = num_complex::Complex64::new(0.0, l1);
        ZeroSet {
            case,
            zeros: [z, z],
        }
    }

    pub fn is_double(&self) -> bool {
        matches!(self.case, CaseTag::III | CaseTag::TildeIII)
    }

    /// Product `(k - z1)(k - z2)`.
    pub fn poly(&self, k: num_complex::Complex64) -> num_complex::Complex64 {
        (k - self.zeros[0]) * (k - self.zeros[1])
    }
}

/// A norming constant; the theory only admits `+1` and `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn from_f64(v: f64) -> Result<Sign> {
        if v == 1.0 {
            Ok(Sign::Plus)
        } else if v == -1.0 {
            Ok(Sign::Minus)
        } else {
            Err(Error::InvalidInput(format!(
                "norming constant must be +1 or -1, got {v}"
            )))
        }
    }

    pub fn both() -> [Sign; 2] {
        [Sign::Plus, Sign::Minus]
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// Norming constants of a reflectionless tilde case: `(gamma1, gamma2)` for the
/// imaginary pair, `eta1` for the mirrored pair, `nu1` for the double zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Norming {
    Gamma(Sign, Sign),
    Eta(Sign),
    Nu(Sign),
}

impl Norming {
    pub fn case(self) -> CaseTag {
        match self {
            Norming::Gamma(..) => CaseTag::TildeI,
            Norming::Eta(_) => CaseTag::TildeII,
            Norming::Nu(_) => CaseTag::TildeIII,
        }
    }

    /// Every sign assignment for a tilde case (4, 2 and 2 of them).
    pub fn all(case: CaseTag) -> Result<Vec<Norming>> {
        let both = Sign::both();
        Ok(match case {
            CaseTag::TildeI => both
                .iter()
                .flat_map(|&g1| both.iter().map(move |&g2| Norming::Gamma(g1, g2)))
                .collect(),
            CaseTag::TildeII => both.iter().map(|&e| Norming::Eta(e)).collect(),
            CaseTag::TildeIII => both.iter().map(|&n| Norming::Nu(n)).collect(),
            other => {
                return Err(Error::InvalidInput(format!(
                    "case {other} has no reflectionless soliton family"
                )))
            }
        })
    }

    /// Short label such as `gamma=(+1,-1)`.
    pub fn label(self) -> String {
        match self {
            Norming::Gamma(a, b) => format!("gamma=({a},{b})"),
            Norming::Eta(e) => format!("eta1={e}"),
            Norming::Nu(n) => format!("nu1={n}"),
        }
    }
}

/// Rectangular `(x, t)` grid with inclusive endpoints and a derivative step.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub xmin: f64,
    pub xmax: f64,
    pub nx: usize,
    pub tmin: f64,
    pub tmax: f64,
    pub nt: usize,
    /// Finite-difference step.
    pub h: f64,
}

impl GridSpec {
    pub fn new(x: (f64, f64), nx: usize, t: (f64, f64), nt: usize, h: f64) -> Result<Self> {
        let g = GridSpec {
            xmin: x.0,
            xmax: x.1,
            nx,
            tmin: t.0,
            tmax: t.1,
            nt,
            h,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.xmin, self.xmax, self.tmin, self.tmax, self.h]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return Err(Error::InvalidInput("grid bounds must be finite".into()));
        }
        if self.nx < 2 || self.nt < 1 {
            return Err(Error::InvalidInput("grid needs nx >= 2 and nt >= 1".into()));
        }
        if self.xmax <= self.xmin {
            return Err(Error::InvalidInput("xmax must exceed xmin".into()));
        }
        if self.nt > 1 && self.tmax <= self.tmin {
            return Err(Error::InvalidInput("tmax must exceed tmin".into()));
        }
        if self.h <= 0.0 {
            return Err(Error::InvalidInput("h must be positive".into()));
        }
        Ok(())
    }

    pub fn xs(&self) -> Vec<f64> {
        linspace(self.xmin, self.xmax, self.nx)
    }

    pub fn ts(&self) -> Vec<f64> {
        linspace(self.tmin, self.tmax, self.nt)
    }
}

/// `n` points from `a` to `b` with both endpoints hit exactly.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![a],
        _ => {
            let step = (b - a) / (n - 1) as f64;
            (0..n)
                .map(|i| if i == n - 1 { b } else { a + step * i as f64 })
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linspace_hits_endpoints() {
        let v = linspace(-10.0, 10.0, 7);
        assert_eq!(v[0], -10.0);
        assert_eq!(v[6], 10.0);
        assert_eq!(v.len(), 7);
    }

    #[test]
    fn case_tags_parse() {
        for tag in [
            CaseTag::I,
            CaseTag::II,
            CaseTag::III,
            CaseTag::TildeI,
            CaseTag::TildeII,
            CaseTag::TildeIII,
        ] {
            assert_eq!(tag.as_str().parse::<CaseTag>().unwrap(), tag);
        }
        assert!("IV".parse::<CaseTag>().is_err());
    }

    #[test]
    fn sign_rejects_non_unit() {
        assert!(Sign::from_f64(0.5).is_err());
        assert_eq!(Sign::from_f64(-1.0).unwrap(), Sign::Minus);
    }
}
