//! Closed-form kink-type two-soliton fields on the oscillating background,
//! their blow-up curves and the large-time asymptotic formulas.

use std::ops::{Add, Div, Mul, Neg, Sub};

use rayon::prelude::*;
use rug::Float;
use serde::Serialize;

use crate::config::Params;
use crate::error::{Error, Result};
use crate::numerics::bisect;
use crate::profile::Field;
use crate::types::{CaseTag, GridSpec, Norming, Sign};

/// Scalar arithmetic shared by the `f64` and multiprecision evaluators.
pub trait Real:
    Clone
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn lit(v: f64) -> Self;
    fn exp(self) -> Self;
    fn cos(self) -> Self;
    fn sin(self) -> Self;
    fn sqrt(self) -> Self;
    fn to_f64(&self) -> f64;
}

impl Real for f64 {
    fn lit(v: f64) -> Self {
        v
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

/// Working precision (bits) of the multiprecision evaluator.
pub const MP_PREC: u32 = 128;

impl Real for Float {
    fn lit(v: f64) -> Self {
        Float::with_val(MP_PREC, v)
    }
    fn exp(self) -> Self {
        Float::exp(self)
    }
    fn cos(self) -> Self {
        Float::cos(self)
    }
    fn sin(self) -> Self {
        Float::sin(self)
    }
    fn sqrt(self) -> Self {
        Float::sqrt(self)
    }
    fn to_f64(&self) -> f64 {
        Float::to_f64(self)
    }
}

/// Tolerance on `|B - A/4| / A` for the double-zero family.
pub const DOUBLE_ZERO_MATCH: f64 = 1e-12;

/// Relative mask: a cell is masked when `|D| <= MASK_REL * (1 + |N|)`.
pub const MASK_REL: f64 = 1e-8;

/// Phase functions and spectral zeros of the reflectionless families.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct PhaseFunctions {
    pub amp: f64,
    pub freq: f64,
    /// `sqrt(A^2 - 16 B^2)` below the threshold, `sqrt(16 B^2 - A^2)` above, 0 at it.
    pub s: f64,
    /// `k1, k2` (imaginary pair), `Re p1, Im p1` (mirrored pair) or `l1, l1`.
    pub zeros: [f64; 2],
}

impl PhaseFunctions {
    pub fn new(case: CaseTag, p: &Params) -> Result<Self> {
        let (a, b) = (p.amp, p.freq);
        let disc = a * a - 16.0 * b * b;
        let (s, zeros) = match case {
            CaseTag::TildeI if disc > 0.0 => {
                let s1 = disc.sqrt();
                (s1, [(a - s1) / 4.0, (a + s1) / 4.0])
            }
            CaseTag::TildeII if disc < 0.0 => {
                let s2 = (-disc).sqrt();
                (s2, [-s2 / 4.0, a / 4.0])
            }
            CaseTag::TildeIII if (b - a / 4.0).abs() <= DOUBLE_ZERO_MATCH * a => {
                (0.0, [a / 4.0, a / 4.0])
            }
            _ => {
                return Err(Error::InvalidInput(format!(
                    "case {case} is inconsistent with A = {a}, B = {b} (needs B {} A/4)",
                    match case {
                        CaseTag::TildeI => "<",
                        CaseTag::TildeII => ">",
                        CaseTag::TildeIII => "=",
                        _ => "?",
                    }
                )))
            }
        };
        Ok(PhaseFunctions {
            amp: a,
            freq: b,
            s,
            zeros,
        })
    }

    /// Background phase `2Bx + 8B^3 t`.
    pub fn phi(&self, x: f64, t: f64) -> f64 {
        2.0 * self.freq * x + 8.0 * self.freq.powi(3) * t
    }

    /// `-2 k x + 8 k^3 t`, the exponent attached to an imaginary zero `ik`.
    pub fn phi_k(k: f64, x: f64, t: f64) -> f64 {
        -2.0 * k * x + 8.0 * k.powi(3) * t
    }

    pub fn phi3(&self, x: f64, t: f64) -> f64 {
        let (a, b) = (self.amp, self.freq);
        -(a / 2.0) * (x + t * (12.0 * b * b - a * a))
    }

    pub fn phi4(&self, x: f64, t: f64) -> f64 {
        let (a, b) = (self.amp, self.freq);
        -(self.s / 2.0) * (x + t * (4.0 * b * b - a * a))
    }
}

/// One evaluated cell.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Sample {
    pub u: f64,
    pub masked: bool,
}

/// A closed-form two-soliton solution for one tilde case and norming choice.
#[derive(Clone, Copy, Debug)]
pub struct SolitonField {
    pub case: CaseTag,
    pub params: Params,
    pub norming: Norming,
    pub phases: PhaseFunctions,
}

impl SolitonField {
    pub fn new(params: Params, norming: Norming) -> Result<Self> {
        let case = norming.case();
        let phases = PhaseFunctions::new(case, &params)?;
        Ok(SolitonField {
            case,
            params,
            norming,
            phases,
        })
    }

    /// Every norming variant of one case.
    pub fn family(params: Params, case: CaseTag) -> Result<Vec<Self>> {
        Norming::all(case)?
            .into_iter()
            .map(|n| Self::new(params, n))
            .collect()
    }

    /// Numerator and denominator of the printed formula, both divided by the
    /// largest exponential present so neither overflows. The ratio is unchanged.
    pub fn parts<R: Real>(&self, x: R, t: R) -> (R, R) {
        let a = R::lit(self.params.amp);
        let bf = self.params.freq;
        let b = R::lit(bf);
        let phi =
            (R::lit(2.0) * b.clone() * x.clone() + R::lit(8.0 * bf.powi(3)) * t.clone()).clone();
        let (cphi, sphi) = (phi.clone().cos(), phi.sin());
        let half = R::lit(0.5);
        match self.norming {
            Norming::Gamma(g1, g2) => {
                let (k1, k2) = (self.phases.zeros[0], self.phases.zeros[1]);
                let s1 = R::lit(self.params.amp.powi(2) - 16.0 * bf * bf).sqrt();
                let ph1 = R::lit(-2.0 * k1) * x.clone() + R::lit(8.0 * k1.powi(3)) * t.clone();
                let ph2 = R::lit(-2.0 * k2) * x + R::lit(8.0 * k2.powi(3)) * t;
                let (f1, f2) = (ph1.to_f64(), ph2.to_f64());
                let m = R::lit(0f64.max(f1).max(f2).max(f1 + f2));
                let one = (-m.clone()).exp();
                let e1 = R::lit(g1.value()) * (ph1.clone() - m.clone()).exp();
                let e2 = R::lit(g2.value()) * (ph2.clone() - m.clone()).exp();
                let e12 = R::lit(g1.value() * g2.value()) * (ph1 + ph2 - m).exp();
                let num = a.clone()
                    * (s1.clone() * cphi.clone() * one.clone()
                        - half
                            * (a * (e1.clone() - e2.clone())
                                + s1.clone() * (e1.clone() + e2.clone())));
                let den = s1.clone() * one
                    - s1.clone() * (e1.clone() + e2.clone()) * cphi
                    - R::lit(4.0) * b * (e1 - e2) * sphi
                    + s1 * e12;
                (num, den)
            }
            Norming::Eta(eta) => {
                let aa = self.params.amp;
                let s2 = R::lit(16.0 * bf * bf - aa * aa).sqrt();
                let ph3 =
                    R::lit(-aa / 2.0) * (x.clone() + t.clone() * R::lit(12.0 * bf * bf - aa * aa));
                let ph4 = -(s2.clone() * half) * (x + t * R::lit(4.0 * bf * bf - aa * aa));
                let f3 = ph3.to_f64();
                let m = R::lit(0f64.max(2.0 * f3));
                let one = (-m.clone()).exp();
                let e3 = R::lit(eta.value()) * (ph3.clone() - m.clone()).exp();
                let e33 = (R::lit(2.0) * ph3 - m).exp();
                let (c4, s4) = (ph4.clone().cos(), ph4.sin());
                let num = a.clone()
                    * (s2.clone() * cphi.clone() * one.clone()
                        + e3.clone() * (a * s4.clone() - s2.clone() * c4.clone()));
                let den = s2.clone() * (e33 + one)
                    + R::lit(2.0) * e3 * (R::lit(4.0) * b * s4 * sphi - s2 * c4 * cphi);
                (num, den)
            }
            Norming::Nu(nu) => {
                let aa = self.params.amp;
                let l1 = aa / 4.0;
                let ph5 = R::lit(-2.0 * l1) * x.clone() + R::lit(8.0 * l1.powi(3)) * t.clone();
                let lin = a.clone() * x - R::lit(0.75 * aa.powi(3)) * t;
                let f5 = ph5.to_f64();
                let m = R::lit(0f64.max(2.0 * f5));
                let one = (-m.clone()).exp();
                let e5 = R::lit(nu.value()) * (ph5.clone() - m.clone()).exp();
                let e55 = (R::lit(2.0) * ph5 - m).exp();
                let num =
                    a * (cphi.clone() * one.clone() - e5.clone() - half * e5.clone() * lin.clone());
                let den = e55 - e5 * (R::lit(2.0) * cphi + lin * sphi) + one;
                (num, den)
            }
        }
    }

    pub fn eval(&self, x: f64, t: f64) -> Sample {
        let (n, d) = self.parts(x, t);
        Sample {
            u: n / d,
            masked: d.abs() <= MASK_REL * (1.0 + n.abs()),
        }
    }

    /// `u` in multiprecision; `None` on a masked cell.
    pub fn eval_mp(&self, x: &Float, t: &Float) -> Option<Float> {
        let (n, d) = self.parts(x.clone(), t.clone());
        let (nf, df) = (n.to_f64(), d.to_f64());
        if df.abs() <= MASK_REL * (1.0 + nf.abs()) {
            return None;
        }
        Some(n / d)
    }

    /// The printed denominator without rescaling (may overflow far out).
    pub fn denominator(&self, x: f64, t: f64) -> f64 {
        let (_, d) = self.parts(x, t);
        d * self.scale(x, t).exp()
    }

    /// Log of the factor removed by [`SolitonField::parts`].
    fn scale(&self, x: f64, t: f64) -> f64 {
        match self.norming {
            Norming::Gamma(..) => {
                let f1 = PhaseFunctions::phi_k(self.phases.zeros[0], x, t);
                let f2 = PhaseFunctions::phi_k(self.phases.zeros[1], x, t);
                0f64.max(f1).max(f2).max(f1 + f2)
            }
            Norming::Eta(_) => 0f64.max(2.0 * self.phases.phi3(x, t)),
            Norming::Nu(_) => 0f64.max(2.0 * PhaseFunctions::phi_k(self.phases.zeros[0], x, t)),
        }
    }

    /// Denominator scaled to `O(1)`; same sign and zeros as the printed one.
    pub fn scaled_denominator(&self, x: f64, t: f64) -> f64 {
        self.parts(x, t).1
    }

    pub fn label(&self) -> String {
        format!("{} {}", self.case, self.norming.label())
    }
}

impl Field for SolitonField {
    fn params(&self) -> &Params {
        &self.params
    }
    fn u(&self, x: f64, t: f64) -> f64 {
        self.eval(x, t).u
    }
    fn time_dependent(&self) -> bool {
        true
    }
}

/// Evaluates a field over a grid in parallel; rows are `t`, columns `x`.
pub fn eval_grid(field: &SolitonField, grid: &GridSpec) -> Vec<(f64, f64, Sample)> {
    let xs = grid.xs();
    grid.ts()
        .par_iter()
        .flat_map_iter(|&t| {
            xs.iter()
                .map(move |&x| (x, t, field.eval(x, t)))
                .collect::<Vec<_>>()
        })
        .collect()
}

/// Resolution of the blow-up bisection in `x`.
pub const BLOWUP_XTOL: f64 = 1e-8;

/// A sign change of the denominator along one fixed-`t` line.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Bracket {
    pub t: f64,
    pub lo: f64,
    pub hi: f64,
    pub root: f64,
    /// `|D(root)|` of the rescaled denominator.
    pub residual: f64,
}

/// Scans sign changes of `d(x)` on `xs` and refines each by bisection.
pub fn scan_line(d: impl Fn(f64) -> f64, xs: &[f64], t: f64) -> Vec<Bracket> {
    let vals: Vec<f64> = xs.iter().map(|&x| d(x)).collect();
    let mut out = Vec::new();
    for i in 0..xs.len().saturating_sub(1) {
        let (a, b) = (vals[i], vals[i + 1]);
        if a == 0.0 || a.signum() != b.signum() {
            if let Ok(root) = bisect(&d, xs[i], xs[i + 1], BLOWUP_XTOL) {
                out.push(Bracket {
                    t,
                    lo: xs[i],
                    hi: xs[i + 1],
                    root,
                    residual: d(root).abs(),
                });
            }
        }
    }
    out
}

/// Sign-change brackets of the closed-form denominator along every grid line.
pub fn blowup_scan(field: &SolitonField, grid: &GridSpec) -> Vec<Bracket> {
    let xs = grid.xs();
    let mut all: Vec<Bracket> = grid
        .ts()
        .par_iter()
        .flat_map_iter(|&t| scan_line(|x| field.scaled_denominator(x, t), &xs, t))
        .collect();
    all.sort_by(|a, b| a.t.total_cmp(&b.t).then(a.root.total_cmp(&b.root)));
    all
}

/// Large-time region. Transitions are numbered from the left.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Region {
    Decaying,
    Transition(u8),
    Oscillation,
    Periodic,
}

impl std::fmt::Display for Region {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Region::Decaying => f.write_str("decaying"),
            Region::Transition(n) => write!(f, "transition{n}"),
            Region::Oscillation => f.write_str("oscillation"),
            Region::Periodic => f.write_str("periodic"),
        }
    }
}

/// Half-width in `x' = x - ray` of a transition region.
pub const TRANSITION_HALF_WIDTH: f64 = 5.0;

/// Positions of the region boundaries at time `t`.
pub fn rays(field: &SolitonField, t: f64) -> Vec<f64> {
    let (a, b) = (field.params.amp, field.params.freq);
    match field.case {
        CaseTag::TildeI => field.phases.zeros.iter().map(|k| 4.0 * k * k * t).collect(),
        CaseTag::TildeII => vec![(a * a - 12.0 * b * b) * t],
        _ => vec![a * a * t / 4.0],
    }
}

/// Region containing `(x, t)`; only `t > 0` is covered.
pub fn region_of(field: &SolitonField, x: f64, t: f64) -> Result<Region> {
    if !(t > 0.0) {
        return Err(Error::Domain(
            "asymptotic regions are defined for t > 0 only".into(),
        ));
    }
    let r = rays(field, t);
    for (i, &ray) in r.iter().enumerate() {
        if (x - ray).abs() <= TRANSITION_HALF_WIDTH {
            return Ok(Region::Transition(i as u8 + 1));
        }
    }
    if x < r[0] {
        return Ok(Region::Decaying);
    }
    if x > r[r.len() - 1] {
        return Ok(Region::Periodic);
    }
    Ok(Region::Oscillation)
}

/// Numerator and denominator of the leading-order formula of `region` at `(x, t)`.
pub fn asymptotic_parts(
    field: &SolitonField,
    region: Region,
    x: f64,
    t: f64,
) -> Result<(f64, f64)> {
    if !(t > 0.0) {
        return Err(Error::Domain(
            "asymptotic formulas are defined for t > 0 only".into(),
        ));
    }
    let (a, b) = (field.params.amp, field.params.freq);
    let ph = &field.phases;
    let phi = ph.phi(x, t);
    let (c, s) = (phi.cos(), phi.sin());
    let r = rays(field, t);
    let mismatch = || {
        Error::InvalidInput(format!(
            "region {region} does not exist for case {}",
            field.case
        ))
    };
    match (field.norming, region) {
        (_, Region::Decaying) => Ok((0.0, 1.0)),
        (_, Region::Periodic) => Ok((a * c, 1.0)),
        (Norming::Gamma(g1, _), Region::Transition(1)) => {
            let (s1, k1) = (ph.s, ph.zeros[0]);
            let xp = x - r[0];
            Ok((
                a / 2.0 * (a - s1),
                4.0 * b * s - s1 * c + g1.value() * s1 * (-2.0 * k1 * xp).exp(),
            ))
        }
        (Norming::Gamma(..), Region::Oscillation) => {
            let s1 = ph.s;
            Ok((a / 2.0 * (a - s1), 4.0 * b * s - s1 * c))
        }
        (Norming::Gamma(_, g2), Region::Transition(2)) => {
            let (s1, k2, g) = (ph.s, ph.zeros[1], g2.value());
            let e = (2.0 * k2 * (x - r[1])).exp();
            Ok((
                a / 2.0 * (2.0 * s1 * e * c + g * a - g * s1),
                s1 * e + 4.0 * b * g * s - s1 * g * c,
            ))
        }
        (Norming::Eta(eta), Region::Transition(1)) => {
            let (s2, n) = (ph.s, eta.value());
            let xp = x - r[0];
            let e = (-a * xp / 2.0).exp();
            let p4 = s2 / 2.0 * (8.0 * b * b * t - xp);
            Ok((
                a * (s2 * c + n * e * (a * p4.sin() - s2 * p4.cos())),
                s2 * ((-a * xp).exp() + 1.0)
                    + 2.0 * n * e * (4.0 * b * p4.sin() * s - s2 * p4.cos() * c),
            ))
        }
        (Norming::Nu(nu), Region::Transition(1)) => {
            let n = nu.value();
            let l1 = ph.zeros[0];
            let xp = x - r[0];
            let lin = a * xp - 0.5 * a.powi(3) * t;
            let e = (2.0 * l1 * xp).exp();
            Ok((
                a * (e * c - n - n / 2.0 * lin),
                1.0 / e - n * (2.0 * c + lin * s) + e,
            ))
        }
        _ => Err(mismatch()),
    }
}

pub fn asymptotic_u(field: &SolitonField, region: Region, x: f64, t: f64) -> Result<f64> {
    let (n, d) = asymptotic_parts(field, region, x, t)?;
    Ok(n / d)
}

/// A figure preset: one parameter set with all its norming variants on a grid.
#[derive(Clone, Debug)]
pub struct FigurePreset {
    pub which: u8,
    pub fields: Vec<SolitonField>,
    pub grid: GridSpec,
}

/// Default plotting window of the presets.
pub fn figure_grid() -> GridSpec {
    GridSpec::new((-20.0, 20.0), 401, (-5.0, 5.0), 101, 1e-3).expect("static grid")
}

/// Presets 1-3: `(A, B) = (1, 0.243)`, `(1, 0.26)`, `(1, 1/4)`.
pub fn figure_preset(which: u8) -> Result<FigurePreset> {
    let (b, case) = match which {
        1 => (0.243, CaseTag::TildeI),
        2 => (0.26, CaseTag::TildeII),
        3 => (0.25, CaseTag::TildeIII),
        _ => {
            return Err(Error::InvalidInput(format!(
                "figure must be 1, 2 or 3, got {which}"
            )))
        }
    };
    let p = Params::new(1.0, b)?;
    Ok(FigurePreset {
        which,
        fields: SolitonField::family(p, case)?,
        grid: figure_grid(),
    })
}

/// Convenience constructor from raw `+-1` values, as supplied on the command line.
pub fn norming_from_values(case: CaseTag, first: f64, second: f64) -> Result<Norming> {
    Ok(match case {
        CaseTag::TildeI => Norming::Gamma(Sign::from_f64(first)?, Sign::from_f64(second)?),
        CaseTag::TildeII => Norming::Eta(Sign::from_f64(first)?),
        CaseTag::TildeIII => Norming::Nu(Sign::from_f64(first)?),
        other => {
            return Err(Error::InvalidInput(format!(
                "case {other} has no soliton family"
            )))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn double_family_at_origin() {
        let p = Params::new(1.0, 0.25).unwrap();
        let f = SolitonField::new(p, Norming::Nu(Sign::Minus)).unwrap();
        assert_eq!(f.eval(0.0, 0.0).u, 0.5);
        let g = SolitonField::new(p, Norming::Nu(Sign::Plus)).unwrap();
        assert!(g.eval(0.0, 0.0).masked);
    }

    #[test]
    fn mismatched_case_rejected() {
        let p = Params::new(1.0, 0.26).unwrap();
        assert!(SolitonField::new(p, Norming::Nu(Sign::Plus)).is_err());
        assert!(SolitonField::new(p, Norming::Gamma(Sign::Plus, Sign::Plus)).is_err());
    }

    #[test]
    fn mp_and_f64_agree() {
        let p = Params::new(1.0, 0.243).unwrap();
        let f = SolitonField::new(p, Norming::Gamma(Sign::Minus, Sign::Minus)).unwrap();
        let u = f.eval(1.3, -0.7).u;
        let v = f
            .eval_mp(
                &Float::with_val(MP_PREC, 1.3),
                &Float::with_val(MP_PREC, -0.7),
            )
            .unwrap();
        assert!((u - v.to_f64()).abs() < 1e-13);
    }
}
