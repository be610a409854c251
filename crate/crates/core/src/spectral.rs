//! Trace formulas: principal-value and Cauchy integrals of log-determinant data,
//! the derived constants, zero recovery and case classification from `b` alone.

use std::collections::HashMap;
use std::f64::consts::{PI, TAU};
use std::sync::Mutex;

use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::config::Params;
use crate::error::{Error, Result};
use crate::matrix::{c, I, ONE};
use crate::profile::Field;
use crate::quad::GaussKronrod;
use crate::scattering;
use crate::types::{CaseTag, ZeroSet};

/// Source of the spectral function `b` on the real line.
pub trait BSampler: Sync {
    fn b(&self, k: f64) -> C64;
    /// `(k^2 - B^2) * b(k)`, finite at `k = +-B`. Override when the product is
    /// known in closed form.
    fn b_scaled(&self, k: f64, freq: f64) -> C64 {
        (k * k - freq * freq) * self.b(k)
    }
}

/// The reflectionless case `b = 0`.
#[derive(Clone, Copy, Debug, Default)]
pub struct ZeroB;

impl BSampler for ZeroB {
    fn b(&self, _k: f64) -> C64 {
        C64::new(0.0, 0.0)
    }
}

/// `b` of the pure step in closed form.
#[derive(Clone, Copy, Debug)]
pub struct PureStepB(pub Params);

impl BSampler for PureStepB {
    fn b(&self, k: f64) -> C64 {
        scattering::pure_step_scattering(&self.0, c(k, 0.0))
            .map(|s| s.2)
            .unwrap_or(C64::new(f64::INFINITY, f64::INFINITY))
    }
    fn b_scaled(&self, k: f64, _freq: f64) -> C64 {
        -I * self.0.amp * k / 2.0
    }
}

/// `b` computed by direct scattering from a profile, memoised per abscissa.
pub struct NumericB<'a> {
    field: &'a dyn Field,
    cache: Mutex<HashMap<u64, C64>>,
}

impl<'a> NumericB<'a> {
    pub fn new(field: &'a dyn Field) -> Self {
        NumericB {
            field,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn evaluations(&self) -> usize {
        self.cache.lock().expect("cache lock").len()
    }
}

impl BSampler for NumericB<'_> {
    fn b(&self, k: f64) -> C64 {
        if let Some(v) = self.cache.lock().expect("cache lock").get(&k.to_bits()) {
            return *v;
        }
        let v = scattering::b(self.field, k).unwrap_or(C64::new(f64::NAN, f64::NAN));
        self.cache
            .lock()
            .expect("cache lock")
            .insert(k.to_bits(), v);
        v
    }
}

impl<F: Fn(f64) -> C64 + Sync> BSampler for F {
    fn b(&self, k: f64) -> C64 {
        self(k)
    }
}

/// Which log-determinant enters the Cauchy integrals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LogKind {
    /// `log[((z^2 - B^2)/(z^2 + 1))^2 (1 - b^2)]`, used in Cases I-III.
    Plain,
    /// `log(1 - b^2)`, used in the tilde cases.
    Tilde,
}

/// The integrand `log(...)` on the real line, with its branch certified.
pub struct LogData<'a> {
    sampler: &'a dyn BSampler,
    params: Params,
    kind: LogKind,
}

/// Number of samples used by the winding monitor on `[-R, R]`.
const WINDING_SAMPLES: usize = 20_000;

impl<'a> LogData<'a> {
    /// Builds the integrand and rejects data whose argument winds.
    pub fn new(sampler: &'a dyn BSampler, params: Params, kind: LogKind) -> Result<Self> {
        let d = LogData {
            sampler,
            params,
            kind,
        };
        d.check_winding()?;
        Ok(d)
    }

    /// Argument of the log, before taking the log.
    pub fn inner(&self, z: f64) -> C64 {
        let b2 = self.params.freq * self.params.freq;
        match self.kind {
            LogKind::Plain => {
                let w = z * z - b2;
                let s = self.sampler.b_scaled(z, self.params.freq);
                let denom = (z * z + 1.0) * (z * z + 1.0);
                (c(w * w, 0.0) - s * s) / denom
            }
            LogKind::Tilde => {
                let b = self.sampler.b(z);
                ONE - b * b
            }
        }
    }

    pub fn value(&self, z: f64) -> C64 {
        self.inner(z).ln()
    }

    /// Scans the argument along `[-R, R]` and errors if it leaves `(-pi, pi)`,
    /// so that the principal log equals the continuous branch vanishing at infinity.
    fn check_winding(&self) -> Result<()> {
        let r = self.params.k_cutoff;
        let mut prev = self.inner(-r).arg();
        let mut unwrapped = prev;
        let mut worst: f64 = unwrapped.abs();
        for i in 1..=WINDING_SAMPLES {
            // denser sampling near the origin, where the data vary
            let s = -1.0 + 2.0 * i as f64 / WINDING_SAMPLES as f64;
            let z = r * s * s * s;
            let v = self.inner(z);
            if !v.is_finite() || v.norm() == 0.0 {
                return Err(Error::Branch(format!("log argument degenerate at z = {z}")));
            }
            let a = v.arg();
            let mut d = a - prev;
            while d > PI {
                d -= TAU;
            }
            while d < -PI {
                d += TAU;
            }
            unwrapped += d;
            prev = a;
            worst = worst.max(unwrapped.abs());
        }
        if worst >= PI {
            return Err(Error::Branch(format!(
                "log argument winds (|arg| reaches {worst:.3}); outside the implemented class"
            )));
        }
        Ok(())
    }
}

/// Quadrature settings shared by the Cauchy transforms.
#[derive(Clone, Copy)]
pub struct CauchyTransform<'a, 'b> {
    pub data: &'b LogData<'a>,
    pub quad: GaussKronrod,
    /// Half-width of the folded panel around a principal-value point.
    pub delta: f64,
}

/// Panel half-width around the principal-value point.
pub const PV_DELTA: f64 = 1e-3;

impl<'a, 'b> CauchyTransform<'a, 'b> {
    pub fn new(data: &'b LogData<'a>) -> Self {
        let tol = data.params.tol;
        CauchyTransform {
            data,
            quad: GaussKronrod::new(tol, tol),
            delta: PV_DELTA,
        }
    }

    fn cutoff(&self) -> f64 {
        self.data.params.k_cutoff
    }

    /// `int_{|z| > R} f(z) / (z - k) dz` from the `c / z^2` tail model.
    pub fn tail(&self, k: C64) -> C64 {
        let r = self.cutoff();
        let c_plus = r * r * self.data.value(r);
        let c_minus = r * r * self.data.value(-r);
        let mut up = C64::new(0.0, 0.0);
        let mut down = C64::new(0.0, 0.0);
        let mut kn = ONE;
        let mut rn = r * r;
        for n in 0..60 {
            let term = kn / ((n as f64 + 2.0) * rn);
            up += term;
            down -= term * if n % 2 == 0 { 1.0 } else { -1.0 };
            kn *= k;
            rn *= r;
            if term.norm() < 1e-18 * up.norm().max(1e-300) {
                break;
            }
        }
        c_plus * up + c_minus * down
    }

    fn breaks(&self, extra: &[f64]) -> Vec<f64> {
        let r = self.cutoff();
        let b = self.data.params.freq;
        let mut v = vec![-r, -b, 0.0, b, r];
        v.extend(extra.iter().copied().filter(|x| x.abs() < r));
        v.sort_by(f64::total_cmp);
        v.dedup();
        v
    }

    /// Off-axis transform `(1 / 2 pi i) int f(z) / (z - k) dz`.
    pub fn eval(&self, k: C64) -> Result<C64> {
        if k.im == 0.0 {
            return Err(Error::Domain(
                "Cauchy transform needs k off the real axis".into(),
            ));
        }
        let f = |z: f64| self.data.value(z) / (c(z, 0.0) - k);
        let res = self.quad.integrate_panels(&f, &self.breaks(&[k.re]));
        let total = res.value + self.tail(k);
        Ok(total / (2.0 * PI * I))
    }

    /// `(1 / pi i) v.p. int f(z) / (z - x0) dz` at a real point `x0`.
    pub fn pv_at(&self, x0: f64) -> Result<C64> {
        let r = self.cutoff();
        let d = self.delta;
        if x0.abs() + d >= r {
            return Err(Error::Domain(
                "principal-value point too close to the cutoff".into(),
            ));
        }
        let outer = |z: f64| self.data.value(z) / (z - x0);
        let mut left: Vec<f64> = self
            .breaks(&[])
            .into_iter()
            .filter(|&v| v < x0 - d)
            .collect();
        left.push(x0 - d);
        let mut right: Vec<f64> = vec![x0 + d];
        right.extend(self.breaks(&[]).into_iter().filter(|&v| v > x0 + d));
        let lo = self.quad.integrate_panels(&outer, &left);
        let hi = self.quad.integrate_panels(&outer, &right);
        let folded = |s: f64| (self.data.value(x0 + s) - self.data.value(x0 - s)) / s;
        let mid = self.quad.integrate(folded, 0.0, d);
        let total = lo.value + hi.value + mid.value + self.tail(c(x0, 0.0));
        Ok(total / (PI * I))
    }

    /// Boundary values `(phi(x0 + i0), phi(x0 - i0))` by the Plemelj formula.
    pub fn boundary(&self, x0: f64) -> Result<(C64, C64)> {
        let pv = self.pv_at(x0)?;
        let h = self.data.value(x0);
        Ok((0.5 * h + 0.5 * pv, -0.5 * h + 0.5 * pv))
    }
}

/// `phi_1`: the principal-value constant at `k = B` (or at `-B` with `sign = -1`).
pub fn pv_phi1(sampler: &dyn BSampler, p: &Params, sign: f64) -> Result<C64> {
    let data = LogData::new(sampler, *p, LogKind::Plain)?;
    CauchyTransform::new(&data).pv_at(sign * p.freq)
}

/// `(phi2, d1, d2)` derived from `phi1`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct DerivedConstants {
    pub phi2: f64,
    pub d1: f64,
    pub d2: f64,
}

pub fn derived_constants(phi1: C64, p: &Params) -> Result<DerivedConstants> {
    let b = p.freq;
    let base = c(b, 1.0).powi(4) / ((b * b + 1.0) * (b * b + 1.0));
    let rot = base * c(0.0, phi1.im).exp();
    let mut phi2 = rot.im.atan2(rot.re);
    if phi2 < 0.0 {
        phi2 += TAU;
    }
    if phi2 >= TAU {
        phi2 -= TAU;
    }
    let one_minus_cos = 1.0 - phi2.cos();
    if one_minus_cos <= 1e-14 {
        return Err(Error::Classification(
            "phi2 vanishes; the plain cases are excluded".into(),
        ));
    }
    let damp = (-0.5 * phi1.re).exp();
    let d1 = p.amp / 8.0 * (2.0 * one_minus_cos).sqrt() * damp;
    let d2 = d1 * d1 - b * b
        + 2f64.sqrt() * p.amp * b * damp * phi2.sin() / (4.0 * one_minus_cos.sqrt());
    Ok(DerivedConstants { phi2, d1, d2 })
}

/// Relative band `|d2| < band * d1^2` classified as a double zero.
pub const CASE_III_BAND: f64 = 1e-8;

/// Cases I-III from `(d1, d2)`.
pub fn classify_plain(d1: f64, d2: f64) -> Result<ZeroSet> {
    if !(d1 > 0.0) {
        return Err(Error::Classification(format!(
            "d1 must be positive, got {d1}"
        )));
    }
    if d2.abs() < CASE_III_BAND * d1 * d1 {
        return Ok(ZeroSet::double(CaseTag::III, d1));
    }
    if d2 < 0.0 {
        return Ok(ZeroSet::mirrored_pair(CaseTag::II, c(-(-d2).sqrt(), d1)));
    }
    if d2 < d1 * d1 {
        let s = d2.sqrt();
        return Ok(ZeroSet::imaginary_pair(CaseTag::I, d1 - s, d1 + s));
    }
    Err(Error::Classification(format!(
        "d2 = {d2} >= d1^2 = {}: zeros leave the taxonomy",
        d1 * d1
    )))
}

/// The constants `E+, E-, E1, E2` of the tilde cases.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct EConstants {
    pub e_plus: C64,
    pub e_minus: C64,
    pub e1: C64,
    pub e2: C64,
    pub b_at_b: C64,
}

pub fn e_constants(sampler: &dyn BSampler, p: &Params) -> Result<EConstants> {
    let bb = sampler.b(p.freq);
    if !bb.is_finite() {
        return Err(Error::Domain(
            "b(B) must be finite in the tilde cases".into(),
        ));
    }
    if (bb - 1.0).norm() == 0.0 || (bb + 1.0).norm() == 0.0 {
        return Err(Error::InvalidInput("b(B) = +-1 is excluded".into()));
    }
    let data = LogData::new(sampler, *p, LogKind::Tilde)?;
    let pv = CauchyTransform::new(&data).pv_at(p.freq)?;
    let e1 = (0.5 * pv).exp();
    let e2 = (ONE - bb * bb).sqrt();
    let root = (e1 * e1 + bb * bb).sqrt();
    let pref = I * p.amp * p.freq / (2.0 * e1 * e2);
    Ok(EConstants {
        e_plus: pref * (bb + root),
        e_minus: pref * (bb - root),
        e1,
        e2,
        b_at_b: bb,
    })
}

/// Relative band for the equality defining the tilde double-zero case.
pub const TILDE_III_BAND: f64 = 1e-8;

/// Tilde-case zeros from one candidate constant `E`.
pub fn classify_tilde(e: C64, p: &Params) -> Result<ZeroSet> {
    let b = p.freq;
    if !(e.im < 0.0) {
        return Err(Error::NoAdmissibleRoot(format!(
            "Im E must be negative, got {e}"
        )));
    }
    let q = e.im * e.im / (4.0 * b * b);
    let r = b * b - e.re;
    let center = -e.im / (2.0 * b);
    if (q - r).abs() <= TILDE_III_BAND * q {
        return Ok(ZeroSet::double(CaseTag::TildeIII, center));
    }
    if q < r {
        return Ok(ZeroSet::mirrored_pair(
            CaseTag::TildeII,
            c(-(r - q).sqrt(), center),
        ));
    }
    if r > 0.0 {
        let s = (q - r).sqrt();
        return Ok(ZeroSet::imaginary_pair(
            CaseTag::TildeI,
            center - s,
            center + s,
        ));
    }
    Err(Error::NoAdmissibleRoot(format!(
        "E = {e} satisfies none of the tilde inequalities"
    )))
}

/// Every admissible candidate among `E+` and `E-`; the caller disambiguates
/// when both survive.
pub fn classify_tilde_candidates(e: &EConstants, p: &Params) -> Vec<(char, ZeroSet)> {
    let mut out = Vec::new();
    if let Ok(z) = classify_tilde(e.e_plus, p) {
        out.push(('+', z));
    }
    if let Ok(z) = classify_tilde(e.e_minus, p) {
        out.push(('-', z));
    }
    out
}

/// Recovered `a1` / `a2` from the zeros and the Cauchy transform.
pub struct TraceFormula<'a, 'b> {
    pub zeros: ZeroSet,
    pub transform: CauchyTransform<'a, 'b>,
}

impl TraceFormula<'_, '_> {
    fn check_kind(&self) -> Result<()> {
        let want = if self.zeros.case.is_tilde() {
            LogKind::Tilde
        } else {
            LogKind::Plain
        };
        if self.transform.data.kind != want {
            return Err(Error::InvalidInput(
                "log data do not match the case variant".into(),
            ));
        }
        Ok(())
    }

    /// `a1(k)` for `Im k > 0`.
    pub fn a1(&self, k: C64) -> Result<C64> {
        self.check_kind()?;
        if k.im <= 0.0 {
            return Err(Error::Domain("a1 trace formula needs Im k > 0".into()));
        }
        let b2 = self.transform.data.params.freq.powi(2);
        let poly = self.zeros.poly(k);
        let phi = self.transform.eval(k)?;
        let d = k * k - b2;
        if d.norm() == 0.0 {
            return Err(Error::SingularPoint("a1 trace formula at k = +-B".into()));
        }
        Ok(if self.zeros.case.is_tilde() {
            poly / d * phi.exp()
        } else {
            poly * (k + I) * (k + I) / (d * d) * phi.exp()
        })
    }

    /// `a2(k)` for `Im k < 0`.
    pub fn a2(&self, k: C64) -> Result<C64> {
        self.check_kind()?;
        if k.im >= 0.0 {
            return Err(Error::Domain("a2 trace formula needs Im k < 0".into()));
        }
        let b2 = self.transform.data.params.freq.powi(2);
        let poly = self.zeros.poly(k);
        if poly.norm() == 0.0 {
            return Err(Error::SingularPoint(
                "a2 trace formula at a zero of a1".into(),
            ));
        }
        let phi = self.transform.eval(k)?;
        Ok(if self.zeros.case.is_tilde() {
            (k * k - b2) / poly * (-phi).exp()
        } else {
            (k - I) * (k - I) / poly * (-phi).exp()
        })
    }
}

/// Complex number in the `{re, im}` JSON shape.
#[derive(Clone, Copy, Debug, Serialize, serde::Deserialize, PartialEq)]
pub struct Cplx {
    pub re: f64,
    pub im: f64,
}

impl From<C64> for Cplx {
    fn from(z: C64) -> Self {
        Cplx { re: z.re, im: z.im }
    }
}

/// JSON summary of a spectral scan.
#[derive(Clone, Debug, Serialize)]
pub struct SpectralReport {
    #[serde(rename = "A")]
    pub amp: f64,
    #[serde(rename = "B")]
    pub freq: f64,
    pub case: CaseTag,
    pub phi1: Cplx,
    pub phi2: f64,
    pub d1: f64,
    pub d2: f64,
    #[serde(rename = "E_minus")]
    pub e_minus: Cplx,
    pub zeros: Vec<Cplx>,
}

/// Full trace-formula pass from `b`: plain constants, zeros, and `E-`.
pub fn spectral_report(sampler: &dyn BSampler, p: &Params) -> Result<SpectralReport> {
    let phi1 = pv_phi1(sampler, p, 1.0)?;
    let dc = derived_constants(phi1, p)?;
    let zs = classify_plain(dc.d1, dc.d2)?;
    let e = match e_constants(sampler, p) {
        Ok(e) => e.e_minus,
        Err(_) => C64::new(f64::NAN, f64::NAN),
    };
    Ok(SpectralReport {
        amp: p.amp,
        freq: p.freq,
        case: zs.case,
        phi1: phi1.into(),
        phi2: dc.phi2,
        d1: dc.d1,
        d2: dc.d2,
        e_minus: e.into(),
        zeros: zs.zeros.iter().map(|&z| z.into()).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn out_of_taxonomy_rejected() {
        assert!(classify_plain(1.0, 2.0).is_err());
        assert!(classify_plain(-1.0, 0.1).is_err());
    }

    #[test]
    fn e_plus_of_zero_b_is_rejected() {
        let p = Params::new(1.0, 0.243).unwrap();
        assert!(classify_tilde(c(0.0, p.amp * p.freq / 2.0), &p).is_err());
    }
}
