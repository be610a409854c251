//! Cross-layer checks: finite-difference PDE residuals, boundary gaps, the
//! Riemann-Hilbert vs closed-form oracle, and symmetry relations.
//!
//! Residual stencils are evaluated in `MP_PREC`-bit arithmetic. At `h = 1e-3`
//! the third-difference divides by `2h^3 = 2e-9`, which would leave about
//! `1e-7 |u|` of pure rounding noise in `f64`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rug::Float;
use serde::Serialize;

use crate::config::Params;
use crate::error::{Error, Result};
use crate::matrix::{flip, max_abs};
use crate::profile::Field;
use crate::rh::{build_case_data, recover_u};
use crate::scattering::{b, jost_matrices};
use crate::solitons::{blowup_scan, Bracket, SolitonField, MP_PREC};
use crate::types::{GridSpec, Norming};

/// A field that can be sampled in multiprecision; `None` marks a masked point.
pub trait MpSampler: Sync {
    fn u_mp(&self, x: &Float, t: &Float) -> Option<Float>;
}

impl MpSampler for SolitonField {
    fn u_mp(&self, x: &Float, t: &Float) -> Option<Float> {
        self.eval_mp(x, t)
    }
}

/// The trivial solution.
pub struct ZeroField;

impl MpSampler for ZeroField {
    fn u_mp(&self, _x: &Float, _t: &Float) -> Option<Float> {
        Some(Float::new(MP_PREC))
    }
}

/// `u(-x, -t)` of another sampler; again a solution of the equation.
pub struct Mirrored<'a, S: MpSampler + ?Sized>(pub &'a S);

impl<S: MpSampler + ?Sized> MpSampler for Mirrored<'_, S> {
    fn u_mp(&self, x: &Float, t: &Float) -> Option<Float> {
        self.0
            .u_mp(&Float::with_val(MP_PREC, -x), &Float::with_val(MP_PREC, -t))
    }
}

/// Cells closer than this many steps to a blow-up root are masked.
pub const MASK_STEPS: f64 = 3.0;

#[derive(Clone, Debug, Serialize)]
pub struct ResidualReport {
    pub grid: GridSpec,
    pub h: f64,
    pub max: f64,
    pub mean: f64,
    /// Location of the maximum.
    pub argmax: (f64, f64),
    pub cells: usize,
    pub masked: usize,
    /// Row-major (`t` rows) residuals; `None` on masked cells.
    #[serde(skip)]
    pub residuals: Vec<Option<f64>>,
}

fn mp(v: f64) -> Float {
    Float::with_val(MP_PREC, v)
}

fn cell_residual(s: &dyn MpSampler, x: f64, t: f64, h: f64) -> Option<f64> {
    let (xm, tm, hm) = (mp(x), mp(t), mp(h));
    let at = |dx: i32, dt: i32| -> Option<Float> {
        let xx = Float::with_val(MP_PREC, &xm + Float::with_val(MP_PREC, &hm * dx));
        let tt = Float::with_val(MP_PREC, &tm + Float::with_val(MP_PREC, &hm * dt));
        s.u_mp(&xx, &tt)
    };
    let u0 = at(0, 0)?;
    let mirror = s.u_mp(&mp(-x), &mp(-t))?;
    let (xp1, xm1, xp2, xm2) = (at(1, 0)?, at(-1, 0)?, at(2, 0)?, at(-2, 0)?);
    let (tp, tn) = (at(0, 1)?, at(0, -1)?);
    let two_h = Float::with_val(MP_PREC, &hm * 2u32);
    let h3 = Float::with_val(MP_PREC, hm.clone() * &hm * &hm * 2u32);
    let ut = Float::with_val(MP_PREC, &tp - &tn) / &two_h;
    let ux = Float::with_val(MP_PREC, &xp1 - &xm1) / &two_h;
    let uxxx = (-xm2 + Float::with_val(MP_PREC, &xm1 * 2u32)
        - Float::with_val(MP_PREC, &xp1 * 2u32)
        + xp2)
        / h3;
    let r = ut + Float::with_val(MP_PREC, u0 * mirror * 6u32) * ux + uxxx;
    Some(r.to_f64().abs())
}

/// Finite-difference residual of `u_t + 6 u(x,t) u(-x,-t) u_x + u_xxx` over
/// `grid`, with step `h` and the mirrored factor sampled exactly.
pub fn pde_residual(
    sampler: &dyn MpSampler,
    grid: &GridSpec,
    h: f64,
    brackets: &[Bracket],
) -> Result<ResidualReport> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidInput(
            "residual step h must be positive".into(),
        ));
    }
    let xs = grid.xs();
    let ts = grid.ts();
    let near_blowup = |x: f64, t: f64| {
        brackets
            .iter()
            .any(|b| b.t == t && (x - b.root).abs() <= MASK_STEPS * h)
    };
    let residuals: Vec<Option<f64>> = ts
        .par_iter()
        .flat_map_iter(|&t| {
            xs.iter()
                .map(|&x| {
                    if near_blowup(x, t) {
                        None
                    } else {
                        cell_residual(sampler, x, t, h)
                    }
                })
                .collect::<Vec<_>>()
        })
        .collect();
    let cells = residuals.len();
    let masked = residuals.iter().filter(|r| r.is_none()).count();
    if masked == cells {
        return Err(Error::InvalidInput(
            "every cell of the residual grid is masked".into(),
        ));
    }
    let mut max = 0.0;
    let mut argmax = (f64::NAN, f64::NAN);
    let mut sum = 0.0;
    for (i, r) in residuals.iter().enumerate() {
        if let Some(r) = *r {
            sum += r;
            if !(r <= max) {
                max = r;
                argmax = (xs[i % xs.len()], ts[i / xs.len()]);
            }
        }
    }
    Ok(ResidualReport {
        grid: *grid,
        h,
        max,
        mean: sum / (cells - masked) as f64,
        argmax,
        cells,
        masked,
        residuals,
    })
}

/// Two residual runs at `h` and `h / 2`.
#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceReport {
    pub coarse: ResidualReport,
    pub fine: ResidualReport,
    /// `max(coarse) / max(fine)`; about 4 for a second-order stencil.
    pub ratio: f64,
}

/// Residual of a closed-form family with its own blow-up mask, at `h` and `h/2`.
pub fn residual_convergence(
    field: &SolitonField,
    grid: &GridSpec,
    h: f64,
) -> Result<ConvergenceReport> {
    let brackets = blowup_scan(field, grid);
    let coarse = pde_residual(field, grid, h, &brackets)?;
    let fine = pde_residual(field, grid, h / 2.0, &brackets)?;
    let ratio = coarse.max / fine.max;
    Ok(ConvergenceReport {
        coarse,
        fine,
        ratio,
    })
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct BoundaryRow {
    pub t: f64,
    pub x: f64,
    /// `|u(-X, t)|`.
    pub left: f64,
    /// `|u(X, t) - A cos(2BX + 8B^3 t)|`.
    pub right: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundaryReport {
    pub rows: Vec<BoundaryRow>,
    pub max_left: f64,
    pub max_right: f64,
}

/// Tabulates both boundary gaps for every `(t, X)` pair.
pub fn boundary_check(field: &dyn Field, ts: &[f64], xs: &[f64]) -> BoundaryReport {
    let p = *field.params();
    let mut rows = Vec::new();
    for &t in ts {
        for &x in xs {
            let bg = p.amp * (2.0 * p.freq * x + 8.0 * p.freq.powi(3) * t).cos();
            rows.push(BoundaryRow {
                t,
                x,
                left: field.u(-x, t).abs(),
                right: (field.u(x, t) - bg).abs(),
            });
        }
    }
    let max_left = rows.iter().map(|r| r.left).fold(0.0, f64::max);
    let max_right = rows.iter().map(|r| r.right).fold(0.0, f64::max);
    BoundaryReport {
        rows,
        max_left,
        max_right,
    }
}

/// Sampling box of the oracle harness.
pub const ORACLE_BOX: ((f64, f64), (f64, f64)) = ((-10.0, 10.0), (-3.0, 3.0));
/// Points with `|det N|` below this are treated as masked by the harness.
pub const ORACLE_DET_FLOOR: f64 = 1e-6;

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub label: String,
    pub seed: u64,
    pub samples: usize,
    pub rejected: usize,
    /// `max |u_RH - u_closed|` at the sample points.
    pub max_diff: f64,
    /// Same for the mirrored value `u(-x,-t)`.
    pub max_mirror_diff: f64,
}

/// Compares the Riemann-Hilbert reconstruction with the closed form at
/// `n` seeded random points of [`ORACLE_BOX`].
pub fn oracle_harness(
    params: &Params,
    norming: Norming,
    n: usize,
    seed: u64,
) -> Result<OracleReport> {
    let problem = build_case_data(params, norming)?;
    let field = SolitonField::new(*params, norming)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ((x0, x1), (t0, t1)) = ORACLE_BOX;
    let (mut used, mut rejected) = (0, 0);
    let (mut max_diff, mut max_mirror_diff) = (0.0f64, 0.0f64);
    while used < n {
        let x = rng.gen_range(x0..x1);
        let t = rng.gen_range(t0..t1);
        let here = field.eval(x, t);
        let there = field.eval(-x, -t);
        let sol = problem.solve(x, t);
        if here.masked
            || there.masked
            || sol.singular
            || sol.system.det_n.norm() <= ORACLE_DET_FLOOR
        {
            rejected += 1;
            if rejected > 100 * n {
                return Err(Error::Domain("oracle box is almost entirely masked".into()));
            }
            continue;
        }
        let (u, um) = recover_u(&sol)?;
        max_diff = max_diff.max((u - here.u).norm());
        max_mirror_diff = max_mirror_diff.max((um - there.u).norm());
        used += 1;
    }
    Ok(OracleReport {
        label: field.label(),
        seed,
        samples: used,
        rejected,
        max_diff,
        max_mirror_diff,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ScatteringSymmetryReport {
    /// `max |sigma1 Psi1(-x,k) sigma1 - Psi2(x,k)|` over the `(x, k)` pairs.
    pub jost_max: f64,
    /// `max |b(k) - conj(b(-k))|` over the `k` grid.
    pub b_conj_max: f64,
}

/// Jost-level mirror symmetry and the reality relation of `b`, for an initial profile.
pub fn symmetry_suite(
    profile: &dyn Field,
    pairs: &[(f64, f64)],
    ks: &[f64],
) -> Result<ScatteringSymmetryReport> {
    let mut jost_max = 0.0f64;
    for &(x, k) in pairs {
        let (left, _) = jost_matrices(profile, k, -x)?;
        let (_, right) = jost_matrices(profile, k, x)?;
        jost_max = jost_max.max(max_abs(&(flip(&left) - right)));
    }
    let b_conj_max = ks
        .par_iter()
        .map(|&k| Ok((b(profile, k)? - b(profile, -k)?.conj()).norm()))
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    Ok(ScatteringSymmetryReport {
        jost_max,
        b_conj_max,
    })
}

/// Residual of the PT-mirrored closed-form field, with the mask mirrored too.
pub fn mirrored_residual(field: &SolitonField, grid: &GridSpec, h: f64) -> Result<ResidualReport> {
    let mirrored_grid = GridSpec::new(
        (-grid.xmax, -grid.xmin),
        grid.nx,
        (-grid.tmax, -grid.tmin),
        grid.nt,
        grid.h,
    )?;
    let brackets: Vec<Bracket> = blowup_scan(field, &mirrored_grid)
        .into_iter()
        .map(|b| Bracket {
            t: -b.t,
            lo: -b.hi,
            hi: -b.lo,
            root: -b.root,
            residual: b.residual,
        })
        .collect();
    pde_residual(&Mirrored(field), grid, h, &brackets)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_field_has_zero_residual() {
        let g = GridSpec::new((-1.0, 1.0), 5, (-1.0, 1.0), 3, 1e-3).unwrap();
        let r = pde_residual(&ZeroField, &g, 1e-3, &[]).unwrap();
        assert_eq!(r.max, 0.0);
        assert_eq!(r.masked, 0);
    }

    #[test]
    fn everything_masked_is_rejected() {
        struct Nowhere;
        impl MpSampler for Nowhere {
            fn u_mp(&self, _: &Float, _: &Float) -> Option<Float> {
                None
            }
        }
        let g = GridSpec::new((-1.0, 1.0), 5, (0.0, 0.0), 1, 1e-3).unwrap();
        assert!(pde_residual(&Nowhere, &g, 1e-3, &[]).is_err());
    }
}
