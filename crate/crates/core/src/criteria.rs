//! The acceptance criteria as runnable checks. Each criterion returns its
//! measured values next to the pinned bounds; a criterion passes when every
//! measurement does.

use std::f64::consts::PI;
use std::fmt;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::Params;
use crate::error::{Error, Result};
use crate::matrix::{c, det};
use crate::numerics::{derivative, newton};
use crate::profile::{BumpedStep, PureStep};
use crate::rh::build_case_data;
use crate::scattering::{
    a1, a2, b, conservation_a2b, jost_matrices, pure_step_scattering, pure_step_zeros,
    scattering_data, singular_rates,
};
use crate::solitons::{
    asymptotic_parts, blowup_scan, eval_grid, figure_preset, rays, scan_line, Region, SolitonField,
    TRANSITION_HALF_WIDTH,
};
use crate::spectral::{
    classify_plain, classify_tilde, derived_constants, e_constants, pv_phi1, PureStepB, ZeroB,
};
use crate::types::{linspace, CaseTag, GridSpec, ZeroSet};
use crate::verify::{boundary_check, oracle_harness, residual_convergence};
use crate::C64;

/// Parameter presets shared by most criteria: one per zero regime.
pub const PRESETS: [(f64, f64); 3] = [(1.0, 0.243), (1.0, 0.26), (1.0, 0.25)];

pub const TITLES: [&str; 13] = [
    "pure-step closed forms",
    "zero taxonomy",
    "trace-formula round trip",
    "reflectionless constants",
    "determinant relation and symmetries",
    "singular rates at +-B",
    "conservation law",
    "RH-solver oracle equivalence",
    "PDE residual",
    "boundary conditions",
    "blow-up concordance",
    "large-time asymptotics",
    "figure reproduction",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Bound {
    /// Pass when `value <= bound`.
    Max,
    /// Pass when `value >= bound`.
    Min,
}

#[derive(Clone, Debug, Serialize)]
pub struct Measurement {
    pub label: String,
    pub value: f64,
    pub bound: f64,
    pub kind: Bound,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub seconds: f64,
    pub measurements: Vec<Measurement>,
    /// Set when the check could not run to completion.
    pub error: Option<String>,
}

impl CriterionResult {
    /// The failing measurement with the largest violation, else the tightest passing one.
    pub fn headline(&self) -> Option<&Measurement> {
        // ratio to the bound; exact checks (bound 0) only rank when violated
        let margin = |m: &Measurement| {
            let r = match m.kind {
                Bound::Max if m.bound == 0.0 => {
                    if m.value == 0.0 {
                        0.0
                    } else {
                        f64::INFINITY
                    }
                }
                Bound::Max => m.value / m.bound,
                Bound::Min => m.bound / m.value,
            };
            if r.is_nan() {
                f64::INFINITY
            } else {
                r
            }
        };
        self.measurements
            .iter()
            .max_by(|a, b| margin(a).total_cmp(&margin(b)))
    }
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(
            f,
            "{tag} [{:>2}] {} ({:.1} s)",
            self.id, self.title, self.seconds
        )?;
        if let Some(e) = &self.error {
            return write!(f, ": error: {e}");
        }
        let failed = self.measurements.iter().filter(|m| !m.passed).count();
        if let Some(m) = self.headline() {
            let op = match m.kind {
                Bound::Max => "<=",
                Bound::Min => ">=",
            };
            write!(
                f,
                ": worst {} = {:.3e} (need {op} {:e})",
                m.label, m.value, m.bound
            )?;
        }
        if failed > 0 {
            write!(f, "; {failed}/{} checks failed", self.measurements.len())?;
        }
        Ok(())
    }
}

#[derive(Default)]
struct Checks(Vec<Measurement>);

impl Checks {
    fn max(&mut self, label: impl Into<String>, value: f64, bound: f64) {
        // NaN never passes
        let passed = value <= bound;
        self.0.push(Measurement {
            label: label.into(),
            value,
            bound,
            kind: Bound::Max,
            passed,
        });
    }

    fn min(&mut self, label: impl Into<String>, value: f64, bound: f64) {
        let passed = value >= bound;
        self.0.push(Measurement {
            label: label.into(),
            value,
            bound,
            kind: Bound::Min,
            passed,
        });
    }

    fn holds(&mut self, label: impl Into<String>, ok: bool) {
        self.max(label, if ok { 0.0 } else { 1.0 }, 0.0);
    }
}

fn presets() -> Result<Vec<Params>> {
    PRESETS.iter().map(|&(a, b)| Params::new(a, b)).collect()
}

fn tag(p: &Params) -> String {
    format!("(A,B)=({},{})", p.amp, p.freq)
}

fn rel(got: C64, want: C64) -> f64 {
    (got - want).norm() / want.norm()
}

/// Sample points for the closed-form comparison: ten real, ten in the upper half plane.
pub const SCATTERING_KS: [(f64, f64); 20] = [
    (-3.0, 0.0),
    (-1.5, 0.0),
    (-0.8, 0.0),
    (-0.4, 0.0),
    (-0.1, 0.0),
    (0.05, 0.0),
    (0.35, 0.0),
    (0.7, 0.0),
    (1.2, 0.0),
    (2.5, 0.0),
    (0.3, 0.2),
    (-0.25, 0.1),
    (0.0, 0.6),
    (1.0, 1.0),
    (-2.0, 0.5),
    (0.1, 0.05),
    (0.6, 0.3),
    (-0.9, 1.5),
    (3.0, 2.0),
    (0.0, 2.0),
];

fn criterion_1(ch: &mut Checks) -> Result<()> {
    for p in presets()? {
        let step = PureStep::new(p);
        let errs = SCATTERING_KS
            .par_iter()
            .map(|&(re, im)| {
                let k = c(re, im);
                let (a1c, a2c, bc) = pure_step_scattering(&p, k)?;
                let e1 = rel(a1(&step, k)?, a1c);
                let (e2, eb) = if im == 0.0 {
                    (rel(a2(&step, k)?, a2c), rel(b(&step, re)?, bc))
                } else {
                    (0.0, 0.0)
                };
                Ok((e1, e2, eb))
            })
            .collect::<Result<Vec<_>>>()?;
        let worst = |f: fn(&(f64, f64, f64)) -> f64| errs.iter().map(f).fold(0.0, f64::max);
        ch.max(format!("a1 rel {}", tag(&p)), worst(|e| e.0), 1e-7);
        ch.max(format!("a2 rel {}", tag(&p)), worst(|e| e.1), 1e-7);
        ch.max(format!("b rel {}", tag(&p)), worst(|e| e.2), 1e-7);
    }
    Ok(())
}

/// Closed-form pure-step `a1` and its first derivative.
fn step_a1(p: &Params, k: C64) -> (C64, C64) {
    let a2 = p.amp * p.amp;
    let d = k * k - p.freq * p.freq;
    let val = 1.0 + a2 * k * k / (4.0 * d * d);
    let dval = a2 / 4.0 * (2.0 * k / (d * d) - 4.0 * k * k * k / (d * d * d));
    (val, dval)
}

fn criterion_2(ch: &mut Checks) -> Result<()> {
    let expected = [CaseTag::I, CaseTag::II, CaseTag::III];
    for (p, want) in presets()?.into_iter().zip(expected) {
        let zs = pure_step_zeros(&p);
        ch.holds(format!("case tag {} is {want}", tag(&p)), zs.case == want);
        if zs.is_double() {
            let z = zs.zeros[0];
            // a1' has a simple zero where a1 has a double one
            let da = |k: C64| step_a1(&p, k).1;
            let refined = newton(
                da,
                |k| derivative(da, k, 1e-6),
                z * c(1.0, 1e-3),
                1e-15,
                100,
            )?;
            ch.max(
                format!("double zero Newton {}", tag(&p)),
                (refined - z).norm(),
                1e-10,
            );
            let (v, dv) = step_a1(&p, z);
            ch.max(format!("|a1(i l1)| {}", tag(&p)), v.norm(), 1e-9);
            ch.max(format!("|a1'(i l1)| {}", tag(&p)), dv.norm(), 1e-9);
        } else {
            for z in zs.zeros {
                let refined = newton(
                    |k| step_a1(&p, k).0,
                    |k| step_a1(&p, k).1,
                    z * c(1.0, 1e-3),
                    1e-15,
                    100,
                )?;
                ch.max(
                    format!("zero {z:.6} Newton {}", tag(&p)),
                    (refined - z).norm(),
                    1e-10,
                );
            }
        }
    }
    Ok(())
}

/// Largest distance between the zeros of two sets after pairing by proximity.
fn zero_distance(a: &ZeroSet, b: &ZeroSet) -> f64 {
    let direct = (a.zeros[0] - b.zeros[0])
        .norm()
        .max((a.zeros[1] - b.zeros[1]).norm());
    let swapped = (a.zeros[0] - b.zeros[1])
        .norm()
        .max((a.zeros[1] - b.zeros[0]).norm());
    direct.min(swapped)
}

fn criterion_3(ch: &mut Checks) -> Result<()> {
    let start = Instant::now();
    for p in presets()? {
        let sampler = PureStepB(p);
        let phi1 = pv_phi1(&sampler, &p, 1.0)?;
        let dc = derived_constants(phi1, &p)?;
        ch.max(
            format!("|phi2 - pi| {}", tag(&p)),
            (dc.phi2 - PI).abs(),
            1e-6,
        );
        ch.max(
            format!("|d1 - A/4| {}", tag(&p)),
            (dc.d1 - p.amp / 4.0).abs(),
            1e-6,
        );
        let d2 = p.amp * p.amp / 16.0 - p.freq * p.freq;
        ch.max(
            format!("|d2 - (A^2/16 - B^2)| {}", tag(&p)),
            (dc.d2 - d2).abs(),
            1e-6,
        );
        let recovered = classify_plain(dc.d1, dc.d2)?;
        let direct = pure_step_zeros(&p);
        ch.holds(
            format!("recovered case {} {}", recovered.case, tag(&p)),
            recovered.case == direct.case,
        );
        ch.max(
            format!("zeros {}", tag(&p)),
            zero_distance(&recovered, &direct),
            1e-5,
        );
    }
    ch.max("runtime (s)", start.elapsed().as_secs_f64(), 30.0);
    Ok(())
}

fn criterion_4(ch: &mut Checks) -> Result<()> {
    for p in presets()? {
        let e = e_constants(&ZeroB, &p)?;
        let (a, bf) = (p.amp, p.freq);
        ch.max(format!("|E1 - 1| {}", tag(&p)), (e.e1 - 1.0).norm(), 0.0);
        ch.max(format!("|E2 - 1| {}", tag(&p)), (e.e2 - 1.0).norm(), 0.0);
        ch.max(
            format!("|E- + iAB/2| {}", tag(&p)),
            (e.e_minus - c(0.0, -a * bf / 2.0)).norm(),
            0.0,
        );
        let zs = classify_tilde(e.e_minus, &p)?;
        let q = a * a / 16.0 - bf * bf;
        let want = if q.abs() <= 1e-8 * a * a / 16.0 {
            ZeroSet::double(CaseTag::TildeIII, a / 4.0)
        } else if q > 0.0 {
            ZeroSet::imaginary_pair(CaseTag::TildeI, a / 4.0 - q.sqrt(), a / 4.0 + q.sqrt())
        } else {
            ZeroSet::mirrored_pair(CaseTag::TildeII, c(-(-q).sqrt(), a / 4.0))
        };
        ch.holds(
            format!("tilde case {} {}", zs.case, tag(&p)),
            zs.case == want.case,
        );
        ch.max(
            format!("reflectionless zeros {}", tag(&p)),
            zero_distance(&zs, &want),
            8.0 * f64::EPSILON,
        );
        ch.holds(
            format!("E+ rejected {}", tag(&p)),
            classify_tilde(e.e_plus, &p).is_err(),
        );
    }
    Ok(())
}

/// The perturbed step used by criteria 5-7: a Gaussian bump of height 0.1 at `x = 0.5`.
pub fn perturbed_step() -> Result<BumpedStep> {
    BumpedStep::new(
        Params::new(1.0, 0.243)?.with_cutoffs(10.0, 200.0)?,
        0.1,
        0.5,
    )
}

fn criterion_5(ch: &mut Checks) -> Result<()> {
    let prof = perturbed_step()?;
    let rows = linspace(-3.0, 3.0, 50)
        .into_par_iter()
        .map(|k| {
            let s = scattering_data(&prof, c(k, 0.0))?;
            let (a1v, a2v, bv) = (
                s.a1.unwrap_or_default(),
                s.a2.unwrap_or_default(),
                s.b.unwrap_or_default(),
            );
            let det_rel = (a1v * a2v + bv * bv - 1.0).norm();
            let conj = (bv - b(&prof, -k)?.conj()).norm();
            let (l, r) = jost_matrices(&prof, k, 0.0)?;
            let unimod = (det(&l) - 1.0).norm().max((det(&r) - 1.0).norm());
            Ok((det_rel, conj, unimod))
        })
        .collect::<Result<Vec<_>>>()?;
    let worst = |f: fn(&(f64, f64, f64)) -> f64| rows.iter().map(f).fold(0.0, f64::max);
    ch.max("|a1 a2 + b^2 - 1|", worst(|r| r.0), 1e-6);
    ch.max("|b(k) - conj b(-k)|", worst(|r| r.1), 1e-7);
    ch.max("|det Psi - 1|", worst(|r| r.2), 1e-8);
    Ok(())
}

fn criterion_6(ch: &mut Checks) -> Result<()> {
    let prof = perturbed_step()?;
    for sign in [1.0, -1.0] {
        let r = singular_rates(&prof, sign)?;
        let at = if sign > 0.0 { "+B" } else { "-B" };
        // three significant digits
        ch.max(
            format!("(k-{at})^2 a1 rel"),
            rel(r.a1_rate, r.a1_expected),
            5e-4,
        );
        ch.max(format!("(k-{at}) b rel"), rel(r.b_rate, r.b_expected), 5e-4);
    }
    Ok(())
}

pub const CONSERVATION_XS: [f64; 5] = [-2.0, -0.5, 0.0, 1.0, 3.0];

fn criterion_7(ch: &mut Checks) -> Result<()> {
    let bumped = conservation_a2b(&perturbed_step()?, &CONSERVATION_XS, 0.0)?;
    ch.max("perturbed step x-spread", bumped.max_deviation, 1e-6);
    let pure = conservation_a2b(
        &PureStep::new(Params::new(1.0, 0.243)?),
        &CONSERVATION_XS,
        0.0,
    )?;
    ch.max("pure step x-spread", pure.max_deviation, 1e-6);
    ch.max("pure step |a2(B) - 1|", (pure.value - 1.0).norm(), 1e-6);
    Ok(())
}

/// Every `(parameters, norming)` pair of the closed-form families at the presets.
pub fn all_families() -> Result<Vec<SolitonField>> {
    let cases = [CaseTag::TildeI, CaseTag::TildeII, CaseTag::TildeIII];
    let mut out = Vec::new();
    for (p, case) in presets()?.into_iter().zip(cases) {
        out.extend(SolitonField::family(p, case)?);
    }
    Ok(out)
}

pub const ORACLE_SEED: u64 = 7;

/// Knobs of a suite run.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SuiteOptions {
    /// Seed of the oracle sampling in criterion 8.
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { seed: ORACLE_SEED }
    }
}

fn criterion_8(ch: &mut Checks, seed: u64) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for f in all_families()? {
        let rep = oracle_harness(&f.params, f.norming, 100, seed)?;
        ch.max(format!("{} |u_RH - u|", f.label()), rep.max_diff, 1e-9);
        ch.max(
            format!("{} |u_RH(-x,-t) - u(-x,-t)|", f.label()),
            rep.max_mirror_diff,
            1e-9,
        );
        let problem = build_case_data(&f.params, f.norming)?;
        let (x, t) = loop {
            let (x, t) = (rng.gen_range(-10.0..10.0), rng.gen_range(-3.0..3.0));
            if !f.eval(x, t).masked && !f.eval(-x, -t).masked {
                break (x, t);
            }
        };
        let ks: Vec<C64> = (0..20)
            .map(|_| C64::from_polar(rng.gen_range(0.05..3.0), rng.gen_range(-PI..PI)))
            .collect();
        let inv = problem_invariants(&problem, x, t, &ks)?;
        ch.max(format!("{} |det M - 1|", f.label()), inv.0, 1e-10);
        ch.max(format!("{} M symmetry", f.label()), inv.1, 1e-8);
    }
    Ok(())
}

fn problem_invariants(
    problem: &crate::rh::CaseProblem,
    x: f64,
    t: f64,
    ks: &[C64],
) -> Result<(f64, f64)> {
    let rep = crate::rh::m_invariant_checks(problem, x, t, ks, 1e5)?;
    Ok((rep.det_max, rep.symmetry_max))
}

/// Residual window and step of criterion 9.
pub fn residual_grid() -> Result<GridSpec> {
    GridSpec::new((-10.0, 10.0), 201, (-3.0, 3.0), 61, 1e-3)
}

fn criterion_9(ch: &mut Checks) -> Result<()> {
    let grid = residual_grid()?;
    for f in all_families()? {
        let rep = residual_convergence(&f, &grid, grid.h)?;
        ch.max(format!("{} max residual", f.label()), rep.coarse.max, 1e-4);
        ch.min(format!("{} h-halving ratio", f.label()), rep.ratio, 3.5);
    }
    Ok(())
}

fn criterion_10(ch: &mut Checks) -> Result<()> {
    for f in all_families()? {
        let rep = boundary_check(&f, &[-2.0, 0.0, 2.0], &[25.0]);
        ch.max(format!("{} |u(-25,t)|", f.label()), rep.max_left, 1e-6);
        ch.max(format!("{} right gap", f.label()), rep.max_right, 1e-6);
    }
    Ok(())
}

/// `det N` along a line, rotated onto the real axis. The closed-form
/// relation makes `det N` a constant complex multiple of a real function.
fn projected_det<'a>(
    problem: &'a crate::rh::CaseProblem,
    xs: &[f64],
    t: f64,
) -> impl Fn(f64) -> f64 + 'a {
    let reference =
        xs.iter()
            .map(|&x| problem.solve(x, t).system.det_n)
            .fold(
                C64::new(0.0, 0.0),
                |m, d| if d.norm() > m.norm() { d } else { m },
            );
    let unit = if reference.norm() > 0.0 {
        reference / reference.norm()
    } else {
        C64::new(1.0, 0.0)
    };
    move |x| (problem.solve(x, t).system.det_n * unit.conj()).re
}

/// Relative size of `g` at `x` against its largest value on the line.
fn relative_at(g: &dyn Fn(f64) -> f64, x: f64, scale: f64) -> f64 {
    g(x).abs() / scale
}

fn criterion_11(ch: &mut Checks) -> Result<()> {
    let grid = GridSpec::new((-10.0, 10.0), 401, (-3.0, 3.0), 50, 1e-3)?;
    let xs = grid.xs();
    for f in all_families()? {
        let problem = build_case_data(&f.params, f.norming)?;
        let closed_brackets = blowup_scan(&f, &grid);
        let per_line = grid
            .ts()
            .par_iter()
            .map(|&t| {
                let dn = projected_det(&problem, &xs, t);
                let cd = |x: f64| f.scaled_denominator(x, t);
                let dn_scale = xs.iter().map(|&x| dn(x).abs()).fold(0.0, f64::max);
                let cd_scale = xs.iter().map(|&x| cd(x).abs()).fold(0.0, f64::max);
                let det_brackets = scan_line(&dn, &xs, t);
                let mut worst = 0.0f64;
                for br in &det_brackets {
                    worst = worst.max(relative_at(&cd, br.root, cd_scale));
                }
                for br in closed_brackets.iter().filter(|b| b.t == t) {
                    worst = worst.max(relative_at(&dn, br.root, dn_scale));
                }
                (det_brackets.len(), worst)
            })
            .collect::<Vec<_>>();
        let det_count: usize = per_line.iter().map(|l| l.0).sum();
        let worst = per_line.iter().map(|l| l.1).fold(0.0, f64::max);
        let bisection = closed_brackets
            .iter()
            .map(|b| b.residual)
            .fold(0.0, f64::max);
        ch.max(format!("{} cross residual", f.label()), worst, 1e-6);
        ch.max(format!("{} bisection residual", f.label()), bisection, 1e-6);
        ch.max(
            format!("{} bracket count mismatch", f.label()),
            (det_count as f64 - closed_brackets.len() as f64).abs(),
            0.0,
        );
    }
    Ok(())
}

pub const ASYMPTOTIC_TIME: f64 = 40.0;
/// Points where the leading-order denominator is this small relative to the
/// numerator are treated as its own poles and skipped.
pub const ASYMPTOTIC_POLE_GUARD: f64 = 1e-3;
/// Offsets from a ray sampled inside a transition layer.
pub const TRANSITION_OFFSETS: [f64; 5] = [-4.0, -2.0, 0.0, 2.0, 4.0];
/// Distances beyond the outermost layer, as multiples of `t`, for the
/// decaying and periodic regions.
pub const FAR_OFFSETS: [f64; 2] = [0.5, 1.0];

/// Sample points of every region present for `field` at time `t`.
pub fn asymptotic_samples(field: &SolitonField, t: f64) -> Vec<(Region, f64)> {
    let r = rays(field, t);
    let w = TRANSITION_HALF_WIDTH;
    let mut pts = Vec::new();
    for s in FAR_OFFSETS {
        pts.push((Region::Decaying, r[0] - w - s * t));
        pts.push((Region::Periodic, r[r.len() - 1] + w + s * t));
    }
    for (i, &ray) in r.iter().enumerate() {
        for xp in TRANSITION_OFFSETS {
            pts.push((Region::Transition(i as u8 + 1), ray + xp));
        }
    }
    if r.len() == 2 && r[1] - r[0] > 2.0 * w {
        pts.push((Region::Oscillation, 0.5 * (r[0] + r[1])));
    }
    pts
}

fn criterion_12(ch: &mut Checks) -> Result<()> {
    let t = ASYMPTOTIC_TIME;
    for f in all_families()? {
        let mut worst: Vec<(Region, f64)> = Vec::new();
        for (region, x) in asymptotic_samples(&f, t) {
            let full = f.eval(x, t);
            let (n, d) = asymptotic_parts(&f, region, x, t)?;
            if full.masked || d.abs() <= ASYMPTOTIC_POLE_GUARD * (1.0 + n.abs()) {
                continue;
            }
            let err = (full.u - n / d).abs();
            match worst.iter_mut().find(|w| w.0 == region) {
                Some(w) => w.1 = w.1.max(err),
                None => worst.push((region, err)),
            }
        }
        for (region, err) in worst {
            ch.max(format!("{} {region}", f.label()), err, 1e-4);
        }
    }
    let p = Params::new(1.0, 0.243)?;
    let family = SolitonField::family(p, CaseTag::TildeI)?;
    let r = rays(&family[0], t);
    let mid = 0.5 * (r[0] + r[1]);
    let values = family
        .iter()
        .map(|f| {
            let (n, d) = asymptotic_parts(f, Region::Oscillation, mid, t)?;
            Ok((n / d).to_bits())
        })
        .collect::<Result<Vec<u64>>>()?;
    ch.holds(
        "oscillation value independent of gamma",
        values.iter().all(|&v| v == values[0]),
    );
    Ok(())
}

fn criterion_13(ch: &mut Checks) -> Result<()> {
    for which in 1..=3u8 {
        let preset = figure_preset(which)?;
        for f in &preset.fields {
            let first = eval_grid(f, &preset.grid);
            let second = eval_grid(f, &preset.grid);
            let finite = first
                .iter()
                .filter(|c| !c.2.masked && c.2.u.is_finite())
                .count();
            let stray = first
                .iter()
                .filter(|c| !c.2.masked && !c.2.u.is_finite())
                .count();
            ch.min(
                format!("figure {which} {} finite share", f.label()),
                finite as f64 / first.len() as f64,
                0.99,
            );
            ch.holds(
                format!("figure {which} {} non-finite cells masked", f.label()),
                stray == 0,
            );
            let same = first.iter().zip(&second).all(|(a, b)| {
                a.0 == b.0
                    && a.1 == b.1
                    && a.2.u.to_bits() == b.2.u.to_bits()
                    && a.2.masked == b.2.masked
            });
            ch.holds(format!("figure {which} {} deterministic", f.label()), same);
        }
    }
    Ok(())
}

/// Runs criterion `id` (1-13).
pub fn run_criterion(id: u8) -> Result<CriterionResult> {
    run_criterion_with(id, &SuiteOptions::default())
}

pub fn run_criterion_with(id: u8, opts: &SuiteOptions) -> Result<CriterionResult> {
    let seed = opts.seed;
    let check: &dyn Fn(&mut Checks) -> Result<()> = match id {
        1 => &criterion_1,
        2 => &criterion_2,
        3 => &criterion_3,
        4 => &criterion_4,
        5 => &criterion_5,
        6 => &criterion_6,
        7 => &criterion_7,
        8 => &move |ch: &mut Checks| criterion_8(ch, seed),
        9 => &criterion_9,
        10 => &criterion_10,
        11 => &criterion_11,
        12 => &criterion_12,
        13 => &criterion_13,
        _ => {
            return Err(Error::InvalidInput(format!(
                "criteria are numbered 1-13, got {id}"
            )))
        }
    };
    let start = Instant::now();
    let mut ch = Checks::default();
    let outcome = check(&mut ch);
    let error = outcome.err().map(|e| e.to_string());
    let passed = error.is_none() && !ch.0.is_empty() && ch.0.iter().all(|m| m.passed);
    Ok(CriterionResult {
        id,
        title: TITLES[id as usize - 1],
        passed,
        seconds: start.elapsed().as_secs_f64(),
        measurements: ch.0,
        error,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub passed: bool,
    pub options: SuiteOptions,
    pub criteria: Vec<CriterionResult>,
}

/// Parses a suite selector: `all`, a number, or a comma-separated list.
pub fn parse_suite(spec: &str) -> Result<Vec<u8>> {
    if spec.trim() == "all" {
        return Ok((1..=13).collect());
    }
    spec.split(',')
        .map(|s| {
            s.trim()
                .parse::<u8>()
                .ok()
                .filter(|n| (1..=13).contains(n))
                .ok_or_else(|| {
                    Error::InvalidInput(format!("unknown criterion '{s}'; use 1-13 or 'all'"))
                })
        })
        .collect()
}

pub fn run_suite(ids: &[u8], opts: &SuiteOptions) -> Result<SuiteReport> {
    let criteria = ids
        .iter()
        .map(|&id| run_criterion_with(id, opts))
        .collect::<Result<Vec<_>>>()?;
    Ok(SuiteReport {
        passed: criteria.iter().all(|c| c.passed),
        options: *opts,
        criteria,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_selector() {
        assert_eq!(parse_suite("all").unwrap().len(), 13);
        assert_eq!(parse_suite("2, 5").unwrap(), vec![2, 5]);
        assert!(parse_suite("14").is_err());
        assert!(parse_suite("x").is_err());
        assert!(run_criterion(0).is_err());
    }

    #[test]
    fn nan_measurement_fails() {
        let mut ch = Checks::default();
        ch.max("nan", f64::NAN, 1.0);
        ch.min("nan", f64::NAN, 1.0);
        assert!(ch.0.iter().all(|m| !m.passed));
    }
}
