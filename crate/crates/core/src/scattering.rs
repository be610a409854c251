//! Direct scattering: Jost solutions by shooting, spectral functions as
//! Wronskians, pure-step closed forms, the auxiliary `(v1, v2)` system and the
//! conserved quantity `a2(B)`.

use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::background::{n_matrix, Side};
use crate::config::Params;
use crate::error::{Error, Result};
use crate::matrix::{c, mat, CMat2, CVec2, I, ONE, ZERO};
use crate::numerics::richardson;
use crate::ode::Dopri5;
use crate::profile::Field;
use crate::types::{CaseTag, ZeroSet};

/// Local step tolerance as a fraction of the requested accuracy; global error
/// accumulates over `[-L, L]`.
const STEP_SAFETY: f64 = 0.03;

/// One column of one Jost solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]

pub enum JostColumn {
    /// Normalized at `-L`, first column; analytic in the upper half-plane.
    LeftFirst,
    /// Normalized at `-L`, second column; analytic in the lower half-plane.
    LeftSecond,
    /// Normalized at `+L`, first column; analytic in the lower half-plane.
    RightFirst,
    /// Normalized at `+L`, second column; analytic in the upper half-plane.
    RightSecond,
}

impl JostColumn {
    pub fn upper(self) -> bool {
        matches!(self, JostColumn::LeftFirst | JostColumn::RightSecond)
    }

    fn left(self) -> bool {
        matches!(self, JostColumn::LeftFirst | JostColumn::LeftSecond)
    }

    fn first(self) -> bool {
        matches!(self, JostColumn::LeftFirst | JostColumn::RightFirst)
    }
}

fn check_half_plane(col: JostColumn, p: &Params, k: C64) -> Result<()> {
    if !k.is_finite() {
        return Err(Error::InvalidInput(
            "spectral parameter must be finite".into(),
        ));
    }
    let ok = if col.upper() {
        k.im >= 0.0
    } else {
        k.im <= 0.0
    };
    if !ok {
        return Err(Error::Domain(format!("{col:?} is not defined at k = {k}")));
    }
    if col.upper() && ((k - p.freq).norm() == 0.0 || (k + p.freq).norm() == 0.0) {
        return Err(Error::SingularPoint(format!(
            "{col:?} is singular at k = +-B"
        )));
    }
    Ok(())
}

/// Samples one Jost column at `t = 0` on the points `xs` (any order).
///
/// The undressed column obeys a 2x2 linear ODE whose homogeneous part is
/// decaying in the direction of integration on the column's half-plane.
pub fn jost_column(field: &dyn Field, col: JostColumn, k: C64, xs: &[f64]) -> Result<Vec<CVec2>> {
    let p = *field.params();
    check_half_plane(col, &p, k)?;
    let l = p.x_cutoff;
    let start = if col.left() { -l } else { l };
    let init = if col.left() {
        n_matrix(&p, Side::Minus, start, 0.0, k)
    } else {
        n_matrix(&p, Side::Plus, start, 0.0, k)
    };
    // the unit column of N is regular even at k = +-B
    let init = match init {
        Ok(n) => n,
        Err(_) => crate::matrix::identity(),
    };
    let y0 = if col.first() {
        [init[(0, 0)], init[(1, 0)]]
    } else {
        [init[(0, 1)], init[(1, 1)]]
    };

    let dir = if col.left() { 1.0 } else { -1.0 };
    let beyond = |x: f64| (x - start) * dir < 0.0;
    let mut stops: Vec<f64> = xs.iter().copied().filter(|&x| !beyond(x)).collect();
    let far = stops
        .iter()
        .fold(start, |m, &x| if (x - m) * dir > 0.0 { x } else { m });
    for bp in field.breakpoints() {
        for b in [bp, -bp] {
            if (b - start) * dir > 0.0 && (far - b) * dir > 0.0 {
                stops.push(b);
            }
        }
    }
    stops.sort_by(|a, b| ((a - start) * dir).total_cmp(&((b - start) * dir)));
    stops.dedup();

    let two_ik = 2.0 * I * k;
    let first = col.first();
    let rhs = move |x: f64, y: &[C64; 2]| {
        let u = c(field.u(x, 0.0), 0.0);
        let um = c(field.u(-x, 0.0), 0.0);
        if first {
            [u * y[1], -um * y[0] + two_ik * y[1]]
        } else {
            [-two_ik * y[0] + u * y[1], -um * y[0]]
        }
    };
    let ode = Dopri5::new(p.tol * STEP_SAFETY);
    let path = ode.integrate_through(&rhs, start, y0, &stops)?;

    let mut out = Vec::with_capacity(xs.len());
    for &x in xs {
        if beyond(x) {
            // outside the cutoff the column is the background column itself
            let side = if col.left() { Side::Minus } else { Side::Plus };
            let n = n_matrix(&p, side, x, 0.0, k)?;
            let j = if first { 0 } else { 1 };
            out.push(CVec2::new(n[(0, j)], n[(1, j)]));
            continue;
        }
        let i = stops
            .iter()
            .position(|&s| s == x)
            .expect("every sample is a stop");
        out.push(CVec2::new(path[i][0], path[i][1]));
    }
    Ok(out)
}

/// Jost column at a single point.
pub fn jost_column_at(field: &dyn Field, col: JostColumn, k: C64, x: f64) -> Result<CVec2> {
    Ok(jost_column(field, col, k, &[x])?[0])
}

/// Full Jost matrices `(Psi_left, Psi_right)` at `x`; both columns need real `k`.
pub fn jost_matrices(field: &dyn Field, k: f64, x: f64) -> Result<(CMat2, CMat2)> {
    let kc = c(k, 0.0);
    let l1 = jost_column_at(field, JostColumn::LeftFirst, kc, x)?;
    let l2 = jost_column_at(field, JostColumn::LeftSecond, kc, x)?;
    let r1 = jost_column_at(field, JostColumn::RightFirst, kc, x)?;
    let r2 = jost_column_at(field, JostColumn::RightSecond, kc, x)?;
    Ok((
        mat(l1[0], l2[0], l1[1], l2[1]),
        mat(r1[0], r2[0], r1[1], r2[1]),
    ))
}

fn wronskian(a: &CVec2, b: &CVec2) -> C64 {
    a[0] * b[1] - a[1] * b[0]
}

/// `a1(k)` for `Im k >= 0`, `k != +-B`.
pub fn a1(field: &dyn Field, k: C64) -> Result<C64> {
    let l = jost_column_at(field, JostColumn::LeftFirst, k, 0.0)?;
    let r = jost_column_at(field, JostColumn::RightSecond, k, 0.0)?;
    Ok(wronskian(&l, &r))
}

/// `a2(k)` for `Im k <= 0`; regular at `k = +-B`.
pub fn a2(field: &dyn Field, k: C64) -> Result<C64> {
    let r = jost_column_at(field, JostColumn::RightFirst, k, 0.0)?;
    let l = jost_column_at(field, JostColumn::LeftSecond, k, 0.0)?;
    Ok(wronskian(&r, &l))
}

/// `b(k)` for real `k != +-B`.
pub fn b(field: &dyn Field, k: f64) -> Result<C64> {
    let kc = c(k, 0.0);
    let r = jost_column_at(field, JostColumn::RightFirst, kc, 0.0)?;
    let l = jost_column_at(field, JostColumn::LeftFirst, kc, 0.0)?;
    Ok(wronskian(&r, &l))
}

/// Spectral functions at one `k`; entries are `None` where undefined.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ScatteringValues {
    pub k: C64,
    pub a1: Option<C64>,
    pub a2: Option<C64>,
    pub b: Option<C64>,
}

/// Every spectral function defined at `k` (all three on the real axis).
pub fn scattering_data(field: &dyn Field, k: C64) -> Result<ScatteringValues> {
    let a1v = if k.im >= 0.0 {
        Some(a1(field, k)?)
    } else {
        None
    };
    let a2v = if k.im <= 0.0 {
        Some(a2(field, k)?)
    } else {
        None
    };
    let bv = if k.im == 0.0 {
        Some(b(field, k.re)?)
    } else {
        None
    };
    Ok(ScatteringValues {
        k,
        a1: a1v,
        a2: a2v,
        b: bv,
    })
}

/// Closed-form `(a1, a2, b)` of the pure step.
pub fn pure_step_scattering(p: &Params, k: C64) -> Result<(C64, C64, C64)> {
    let d = k * k - p.freq * p.freq;
    if d.norm() == 0.0 {
        return Err(Error::SingularPoint(
            "pure-step a1 and b are singular at k = +-B".into(),
        ));
    }
    let a = p.amp;
    let a1 = ONE + a * a * k * k / (4.0 * d * d);
    let b = -I * a * k / (2.0 * d);
    Ok((a1, ONE, b))
}

/// Relative band on `A^2 - 16 B^2` inside which the zeros count as double.
pub const DOUBLE_ZERO_BAND: f64 = 1e-8;

/// Zeros of the pure-step `a1` in closed form, tagged with the plain case.
pub fn pure_step_zeros(p: &Params) -> ZeroSet {
    let (a, b) = (p.amp, p.freq);
    let disc = a * a - 16.0 * b * b;
    if disc.abs() <= DOUBLE_ZERO_BAND * a * a {
        ZeroSet::double(CaseTag::III, a / 4.0)
    } else if disc > 0.0 {
        let s = disc.sqrt();
        ZeroSet::imaginary_pair(CaseTag::I, (a - s) / 4.0, (a + s) / 4.0)
    } else {
        ZeroSet::mirrored_pair(CaseTag::II, c(-(-disc).sqrt() / 4.0, a / 4.0))
    }
}

/// Auxiliary vectors `(v1, v2)` at each requested `x` (all `>= -L`) and time `t`.
pub fn aux_v(field: &dyn Field, xs: &[f64], t: f64) -> Result<Vec<(C64, C64)>> {
    if t != 0.0 && !field.time_dependent() {
        return Err(Error::InvalidInput(
            "initial profiles only define the t = 0 slice".into(),
        ));
    }
    let p = *field.params();
    let start = -p.x_cutoff;
    if xs.iter().any(|&x| x < start) {
        return Err(Error::Domain(
            "aux_v samples must lie to the right of -L".into(),
        ));
    }
    let b = p.freq;
    let base = -I * (p.amp / 4.0) * (I * (2.0 * b * start + 8.0 * b * b * b * t)).exp();
    let mut stops: Vec<f64> = xs.to_vec();
    let far = xs.iter().fold(start, |m, &x| m.max(x));
    for bp in field.breakpoints() {
        for v in [bp, -bp] {
            if v > start && v < far {
                stops.push(v);
            }
        }
    }
    stops.sort_by(f64::total_cmp);
    stops.dedup();
    let two_ib = 2.0 * I * b;
    let rhs = |x: f64, y: &[C64; 2]| {
        let u = field.u(x, t);
        let um = field.u(-x, -t);
        [y[1] * u, two_ib * y[1] - y[0] * um]
    };
    let path =
        Dopri5::new(p.tol * STEP_SAFETY).integrate_through(&rhs, start, [ZERO, base], &stops)?;
    Ok(xs
        .iter()
        .map(|x| {
            let i = stops.iter().position(|s| s == x).expect("sample is a stop");
            (path[i][0], path[i][1])
        })
        .collect())
}

/// Conserved `a2(B)` from the auxiliary system.
#[derive(Clone, Debug, Serialize)]
pub struct ConservationReport {
    pub t: f64,
    pub value: C64,
    pub max_deviation: f64,
    pub samples: Vec<(f64, C64)>,
}

/// `a2(B) = (16 / A^2) (v1(x,t) v1(-x,-t) - v2(x,t) v2(-x,-t))`, sampled over `xs`.
pub fn conservation_a2b(field: &dyn Field, xs: &[f64], t: f64) -> Result<ConservationReport> {
    if xs.is_empty() {
        return Err(Error::InvalidInput("need at least one sample".into()));
    }
    let p = *field.params();
    let here = aux_v(field, xs, t)?;
    let mirrored: Vec<f64> = xs.iter().map(|x| -x).collect();
    let there = aux_v(field, &mirrored, -t)?;
    let scale = 16.0 / (p.amp * p.amp);
    let samples: Vec<(f64, C64)> = xs
        .iter()
        .zip(here.iter().zip(&there))
        .map(|(&x, (h, m))| (x, scale * (h.0 * m.0 - h.1 * m.1)))
        .collect();
    let value = samples.iter().map(|s| s.1).sum::<C64>() / samples.len() as f64;
    let max_deviation = samples
        .iter()
        .map(|s| (s.1 - value).norm())
        .fold(0.0, f64::max);
    Ok(ConservationReport {
        t,
        value,
        max_deviation,
        samples,
    })
}

/// Reflection coefficients `r1 = b / a1`, `r2 = b / a2` on the real axis.
pub fn reflection_coeffs(a1: C64, a2: C64, b: C64) -> Result<(C64, C64)> {
    if a1.norm() == 0.0 || a2.norm() == 0.0 {
        return Err(Error::SingularPoint(
            "reflection coefficient at a real spectral zero".into(),
        ));
    }
    Ok((b / a1, b / a2))
}

/// Jump matrix of the basic Riemann-Hilbert problem at real `k`.
pub fn jump_matrix(r1: C64, r2: C64, x: f64, t: f64, k: f64) -> CMat2 {
    let theta = I * (2.0 * k * x + 8.0 * k * k * k * t);
    mat(ONE + r1 * r2, r2 * (-theta).exp(), r1 * theta.exp(), ONE)
}

/// Extrapolated leading coefficients at `k = sign * B`, with the predicted values.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SingularRates {
    /// `lim (k -+ B)^2 a1(k)` along `k = +-B + i eps`.
    pub a1_rate: C64,
    /// `lim (k -+ B) b(k)` along real `k = +-B + eps`.
    pub b_rate: C64,
    /// `a2(+-B)` computed directly.
    pub a2_at: C64,
    /// `A^2 a2 / 16`.
    pub a1_expected: C64,
    /// `-i A a2 / 4`.
    pub b_expected: C64,
}

pub const RATE_STEPS: [f64; 3] = [1e-2, 1e-3, 1e-4];

pub fn singular_rates(field: &dyn Field, sign: f64) -> Result<SingularRates> {
    let p = *field.params();
    let kb = sign * p.freq;
    let mut a1s = Vec::new();
    let mut bs = Vec::new();
    for &e in &RATE_STEPS {
        let d = c(0.0, e);
        a1s.push(d * d * a1(field, c(kb, 0.0) + d)?);
        bs.push(e * b(field, kb + e)?);
    }
    let a2_at = a2(field, c(kb, 0.0))?;
    let amp = p.amp;
    Ok(SingularRates {
        a1_rate: richardson(&a1s, 10.0),
        b_rate: richardson(&bs, 10.0),
        a2_at,
        a1_expected: amp * amp * a2_at / 16.0,
        b_expected: -I * amp * a2_at / 4.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::PureStep;

    #[test]
    fn pure_step_origin() {
        let p = Params::new(1.0, 0.25).unwrap();
        let (a1, a2, b) = pure_step_scattering(&p, ZERO).unwrap();
        assert_eq!((a1, a2, b), (ONE, ONE, ZERO));
    }

    #[test]
    fn column_half_planes_enforced() {
        let p = Params::new(1.0, 0.25).unwrap();
        let step = PureStep::new(p);
        assert!(jost_column_at(&step, JostColumn::LeftFirst, c(0.3, -0.1), 0.0).is_err());
        assert!(jost_column_at(&step, JostColumn::RightFirst, c(0.3, 0.1), 0.0).is_err());
    }

    #[test]
    fn double_zero_at_quarter() {
        let p = Params::new(1.0, 0.25).unwrap();
        let z = pure_step_zeros(&p);
        assert_eq!(z.case, CaseTag::III);
        assert!(pure_step_scattering(&p, z.zeros[0]).unwrap().0.norm() < 1e-15);
    }
}
