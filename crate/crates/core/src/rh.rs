//! Reflectionless Riemann-Hilbert problems solved in closed form: two simple
//! poles per column, or one double pole in the first column.
//!
//! The first column of `M` carries the poles `w`, the second the poles `q = (B, -B)`;
//! residue coefficients depend on `(x, t)`. The ansatz reduces each problem to a
//! 2x2 linear system, and the field is read off the `1/k` term of `M`.

use std::sync::Arc;

use nalgebra::Matrix3;
use serde::Serialize;

use crate::config::Params;
use crate::error::{Error, Result};
use crate::matrix::{c, det, diag, identity, max_abs, sigma1, CMat2, CVec2, I, ONE, ZERO};
use crate::numerics::richardson;
use crate::solitons::PhaseFunctions;
use crate::types::{CaseTag, Norming, ZeroSet};
use crate::C64;

/// A residue coefficient as a function of `(x, t)`.
pub type Coeff = Arc<dyn Fn(f64, f64) -> C64 + Send + Sync>;

fn coeff(f: impl Fn(f64, f64) -> C64 + Send + Sync + 'static) -> Coeff {
    Arc::new(f)
}

/// Column 1 has simple poles `w1, w2`; column 2 has simple poles `q1, q2`.
///
/// `Res_{w_j} M1 = c_j M2(w_j)`, `Res_{q_j} M2 = f_j M1(q_j)`.
#[derive(Clone)]
pub struct SimplePoleProblem {
    pub w: [C64; 2],
    pub q: [C64; 2],
    pub c: [Coeff; 2],
    pub f: [Coeff; 2],
}

/// Column 1 has a double pole at `w1`; column 2 simple poles `q1, q2`.
///
/// At `w1`: the `(k - w1)^-2` coefficient of `M1` is `c3 M2(w1)` and the residue is
/// `c1 M2'(w1) + c2 M2(w1)`. At `q_j`: `Res M2 = f_j M1(q_j)`.
#[derive(Clone)]
pub struct DoublePoleProblem {
    pub w1: C64,
    pub q: [C64; 2],
    pub c: [Coeff; 3],
    pub f: [Coeff; 2],
}

fn distinct(points: &[C64]) -> bool {
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if (points[i] - points[j]).norm() <= 1e-14 * (1.0 + points[i].norm()) {
                return false;
            }
        }
    }
    true
}

impl SimplePoleProblem {
    pub fn new(w: [C64; 2], q: [C64; 2], c: [Coeff; 2], f: [Coeff; 2]) -> Result<Self> {
        if !distinct(&[w[0], w[1], q[0], q[1]]) {
            return Err(Error::InvalidInput(
                "poles must be pairwise distinct".into(),
            ));
        }
        Ok(SimplePoleProblem { w, q, c, f })
    }
}

impl DoublePoleProblem {
    pub fn new(w1: C64, q: [C64; 2], c: [Coeff; 3], f: [Coeff; 2]) -> Result<Self> {
        if !distinct(&[w1, q[0], q[1]]) {
            return Err(Error::InvalidInput(
                "poles must be pairwise distinct".into(),
            ));
        }
        Ok(DoublePoleProblem { w1, q, c, f })
    }
}

/// Either pole structure.
#[derive(Clone)]
pub enum PoleProblem {
    Simple(SimplePoleProblem),
    Double(DoublePoleProblem),
}

/// A reflectionless tilde-case problem ready to solve at any `(x, t)`.
#[derive(Clone)]
pub struct CaseProblem {
    pub params: Params,
    pub norming: Norming,
    pub zeros: ZeroSet,
    pub poles: PoleProblem,
}

impl CaseProblem {
    /// Reflectionless `a1(k) = (k - z1)(k - z2) / (k^2 - B^2)`.
    pub fn a1(&self, k: C64) -> C64 {
        self.zeros.poly(k) / (k * k - self.params.freq * self.params.freq)
    }

    pub fn solve(&self, x: f64, t: f64) -> RHSolution {
        match &self.poles {
            PoleProblem::Simple(p) => solve_simple(p, x, t),
            PoleProblem::Double(p) => solve_double(p, x, t),
        }
    }
}

/// `a1''(i l1)` for the double zero at `B = A/4`.
pub fn a1_second_derivative(amp: f64) -> f64 {
    -16.0 / (amp * amp)
}

/// `a1'''(i l1)` for the double zero at `B = A/4`.
pub fn a1_third_derivative(amp: f64) -> C64 {
    c(0.0, -192.0 / amp.powi(3))
}

/// Pole and residue data of the reflectionless tilde cases.
pub fn build_case_data(params: &Params, norming: Norming) -> Result<CaseProblem> {
    let case = norming.case();
    let ph = PhaseFunctions::new(case, params)?;
    let (a, b) = (params.amp, params.freq);
    let q = [c(b, 0.0), c(-b, 0.0)];
    let f: [Coeff; 2] = [
        coeff(move |x, t| -I * a / 4.0 * c(0.0, -(2.0 * b * x + 8.0 * b.powi(3) * t)).exp()),
        coeff(move |x, t| -I * a / 4.0 * c(0.0, 2.0 * b * x + 8.0 * b.powi(3) * t).exp()),
    ];
    let (zeros, poles) = match norming {
        Norming::Gamma(g1, g2) => {
            let (k1, k2) = (ph.zeros[0], ph.zeros[1]);
            let (g1, g2) = (g1.value(), g2.value());
            let cj = |sign: f64, g: f64, k: f64| {
                coeff(move |x, t| {
                    sign * I * g * (k * k + b * b) / (k2 - k1)
                        * PhaseFunctions::phi_k(k, x, t).exp()
                })
            };
            let p = SimplePoleProblem::new(
                [c(0.0, k1), c(0.0, k2)],
                q,
                [cj(-1.0, g1, k1), cj(1.0, g2, k2)],
                f,
            )?;
            (
                ZeroSet::imaginary_pair(CaseTag::TildeI, k1, k2),
                PoleProblem::Simple(p),
            )
        }
        Norming::Eta(eta) => {
            let p1 = c(ph.zeros[0], ph.zeros[1]);
            let e = eta.value();
            let w2 = -p1.conj();
            let c1 = coeff(move |x, t| {
                e * (p1 * p1 - b * b) / (2.0 * p1.re)
                    * (2.0 * I * p1 * x + 8.0 * I * p1.powi(3) * t).exp()
            });
            let c2 = coeff(move |x, t| {
                let pb = p1.conj();
                e * (b * b - pb * pb) / (2.0 * p1.re)
                    * (-2.0 * I * pb * x - 8.0 * I * pb.powi(3) * t).exp()
            });
            let p = SimplePoleProblem::new([p1, w2], q, [c1, c2], f)?;
            (
                ZeroSet::mirrored_pair(CaseTag::TildeII, p1),
                PoleProblem::Simple(p),
            )
        }
        Norming::Nu(nu) => {
            let l1 = ph.zeros[0];
            let n = nu.value();
            let base =
                move |x: f64, t: f64| -n * a * a / 8.0 * PhaseFunctions::phi_k(l1, x, t).exp();
            // shift carried by the derivative condition at the double zero
            let shift = move |x: f64, t: f64| {
                2.0 * I * (x - 12.0 * l1 * l1 * t)
                    - a1_third_derivative(a) / (3.0 * a1_second_derivative(a))
            };
            let c1 = coeff(move |x, t| c(base(x, t), 0.0));
            let c2 = coeff(move |x, t| base(x, t) * shift(x, t));
            let c3 = coeff(move |x, t| c(base(x, t), 0.0));
            let p = DoublePoleProblem::new(c(0.0, l1), q, [c1, c2, c3], f)?;
            (
                ZeroSet::double(CaseTag::TildeIII, l1),
                PoleProblem::Double(p),
            )
        }
    };
    Ok(CaseProblem {
        params: *params,
        norming,
        zeros,
        poles,
    })
}

/// Singularity threshold: `|det N| <= SINGULAR_REL * ||N||_F^2` (so `N = 0` counts).
pub const SINGULAR_REL: f64 = 1e-12;

/// Vectors, matrices and determinants of one linear solve.
#[derive(Clone, Debug, Serialize)]
pub struct LinearSystemData {
    /// `xi_1, xi_2` (and `xi_3` in the double-pole case).
    pub xi: Vec<[C64; 2]>,
    pub zeta: [[C64; 2]; 2],
    pub n: [[C64; 2]; 2],
    pub det_n: C64,
    pub det_n1: C64,
    pub det_n2: C64,
    /// Rows `z_1`, `z_2`; zero when singular.
    pub z: [[C64; 2]; 2],
    /// `||N Z + zeta|| / ||zeta||` after the solve.
    pub residual: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PoleKind {
    Simple,
    Double,
}

/// Explicit solution at one `(x, t)`.
#[derive(Clone, Debug, Serialize)]
pub struct RHSolution {
    pub x: f64,
    pub t: f64,
    pub kind: PoleKind,
    /// Column-1 poles (equal entries in the double case).
    pub w: [C64; 2],
    pub q: [C64; 2],
    pub system: LinearSystemData,
    /// `lim k M12` and `lim k M21` as `k -> infinity`.
    pub lim12: C64,
    pub lim21: C64,
    pub singular: bool,
}

fn dot(a: [C64; 2], b: [C64; 2]) -> C64 {
    a[0] * b[0] + a[1] * b[1]
}

fn frob(n: &CMat2) -> f64 {
    n.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
}

/// `det [[N, col], [row, 0]]`.
fn bordered(n: &CMat2, col: [C64; 2], row: [C64; 2]) -> C64 {
    Matrix3::new(
        n[(0, 0)],
        n[(0, 1)],
        col[0],
        n[(1, 0)],
        n[(1, 1)],
        col[1],
        row[0],
        row[1],
        ZERO,
    )
    .determinant()
}

/// Solves `N (z1; z2) = -(zeta1; zeta2)` unless `N` is numerically singular.
fn solve_rows(n: &CMat2, zeta: [[C64; 2]; 2]) -> (bool, [[C64; 2]; 2], f64) {
    let d = det(n);
    let scale = frob(n);
    if d.norm() <= SINGULAR_REL * scale * scale || !d.is_finite() {
        return (true, [[ZERO; 2]; 2], f64::NAN);
    }
    let rhs = -CMat2::new(zeta[0][0], zeta[0][1], zeta[1][0], zeta[1][1]);
    let inv = CMat2::new(n[(1, 1)], -n[(0, 1)], -n[(1, 0)], n[(0, 0)]) / d;
    let zm = inv * rhs;
    let resid = max_abs(&(n * zm - rhs)) / max_abs(&rhs).max(f64::MIN_POSITIVE);
    (
        false,
        [[zm[(0, 0)], zm[(0, 1)]], [zm[(1, 0)], zm[(1, 1)]]],
        resid,
    )
}

pub fn solve_simple(p: &SimplePoleProblem, x: f64, t: f64) -> RHSolution {
    let [w1, w2] = p.w;
    let [q1, q2] = p.q;
    let cs = [(p.c[0])(x, t), (p.c[1])(x, t)];
    let fs = [(p.f[0])(x, t), (p.f[1])(x, t)];
    let xi: Vec<[C64; 2]> = (0..2)
        .map(|j| {
            let sign = if j == 0 { -1.0 } else { 1.0 };
            [
                sign * (w2 - w1) / ((p.w[j] - q1) * (p.w[j] - q2)) * cs[j],
                ONE,
            ]
        })
        .collect();
    let zeta: [[C64; 2]; 2] = std::array::from_fn(|i| {
        let sign = if i == 0 { -1.0 } else { 1.0 };
        [
            sign * (q1 - q2) / ((p.q[i] - w1) * (p.q[i] - w2)) * fs[i],
            ONE,
        ]
    });
    let n = CMat2::from_fn(|i, j| dot(xi[j], zeta[i]) / (p.q[i] - p.w[j]));
    let det_n = det(&n);
    let det_n1 = bordered(&n, [zeta[0][0], zeta[1][0]], [ONE, ONE]);
    let det_n2 = bordered(&n, [ONE, ONE], [xi[0][0], xi[1][0]]);
    let (singular, z, residual) = solve_rows(&n, zeta);
    let (lim12, lim21) = if singular {
        (C64::new(f64::NAN, f64::NAN), C64::new(f64::NAN, f64::NAN))
    } else {
        (det_n1 / det_n, det_n2 / det_n)
    };
    RHSolution {
        x,
        t,
        kind: PoleKind::Simple,
        w: p.w,
        q: p.q,
        system: LinearSystemData {
            xi,
            zeta,
            n: [[n[(0, 0)], n[(0, 1)]], [n[(1, 0)], n[(1, 1)]]],
            det_n,
            det_n1,
            det_n2,
            z,
            residual,
        },
        lim12,
        lim21,
        singular,
    }
}

pub fn solve_double(p: &DoublePoleProblem, x: f64, t: f64) -> RHSolution {
    let w = p.w1;
    let [q1, q2] = p.q;
    let cs = [(p.c[0])(x, t), (p.c[1])(x, t), (p.c[2])(x, t)];
    let fs = [(p.f[0])(x, t), (p.f[1])(x, t)];
    let g = (w - q1) * (w - q2);
    let xi = vec![
        [cs[0] / g, ONE],
        [cs[0] * (q1 + q2 - 2.0 * w) / (g * g) + cs[1] / g, ZERO],
        [cs[2] / g, ONE],
    ];
    let zeta: [[C64; 2]; 2] = std::array::from_fn(|i| {
        let sign = if i == 0 { -1.0 } else { 1.0 };
        let d = p.q[i] - w;
        [sign * (q1 - q2) / (d * d) * fs[i], ONE]
    });
    let n = CMat2::from_fn(|i, j| {
        let d = p.q[i] - w;
        if j == 0 {
            dot(xi[0], zeta[i]) / d
        } else {
            dot(xi[2], zeta[i]) / (d * d) + dot(xi[1], zeta[i]) / d
        }
    });
    let det_n = det(&n);
    // Cramer for the first entry of z_1
    let det_n1 = n[(0, 1)] * zeta[1][0] - n[(1, 1)] * zeta[0][0];
    let det_n2 = bordered(&n, [ONE, ONE], [xi[0][0], xi[1][0]]);
    let (singular, z, residual) = solve_rows(&n, zeta);
    let (lim12, lim21) = if singular {
        (C64::new(f64::NAN, f64::NAN), C64::new(f64::NAN, f64::NAN))
    } else {
        (det_n1 / det_n, det_n2 / det_n)
    };
    RHSolution {
        x,
        t,
        kind: PoleKind::Double,
        w: [w, w],
        q: p.q,
        system: LinearSystemData {
            xi,
            zeta,
            n: [[n[(0, 0)], n[(0, 1)]], [n[(1, 0)], n[(1, 1)]]],
            det_n,
            det_n1,
            det_n2,
            z,
            residual,
        },
        lim12,
        lim21,
        singular,
    }
}

impl RHSolution {
    fn residue_matrices(&self) -> (CMat2, CMat2) {
        let z = &self.system.z;
        let xi = &self.system.xi;
        let outer = |zr: [C64; 2], x: [C64; 2]| {
            CMat2::new(zr[0] * x[0], zr[0] * x[1], zr[1] * x[0], zr[1] * x[1])
        };
        match self.kind {
            PoleKind::Simple => (outer(z[0], xi[0]), outer(z[1], xi[1])),
            PoleKind::Double => (outer(z[0], xi[0]) + outer(z[1], xi[1]), outer(z[1], xi[2])),
        }
    }

    /// `M(x, t, k)` from the rational ansatz; `k` must avoid every pole.
    pub fn m(&self, k: C64) -> Result<CMat2> {
        if self.singular {
            return Err(Error::SingularSystem(format!(
                "det N vanishes at (x, t) = ({}, {})",
                self.x, self.t
            )));
        }
        let (a1, a2) = self.residue_matrices();
        let [w1, w2] = self.w;
        let [q1, q2] = self.q;
        let dq = (k - q1) * (k - q2);
        Ok(match self.kind {
            PoleKind::Simple => {
                (identity() + a1 / (k - w1) + a2 / (k - w2)) * diag(ONE, (k - w1) * (k - w2) / dq)
            }
            PoleKind::Double => {
                let d = k - w1;
                (identity() + a1 / d + a2 / (d * d)) * diag(ONE, d * d / dq)
            }
        })
    }

    /// `lim k M12` recomputed from the residue matrices instead of the bordered determinants.
    pub fn lim12_from_residues(&self) -> C64 {
        let (a1, a2) = self.residue_matrices();
        match self.kind {
            PoleKind::Simple => a1[(0, 1)] + a2[(0, 1)],
            PoleKind::Double => a1[(0, 1)],
        }
    }

    pub fn lim21_from_residues(&self) -> C64 {
        let (a1, a2) = self.residue_matrices();
        match self.kind {
            PoleKind::Simple => a1[(1, 0)] + a2[(1, 0)],
            PoleKind::Double => a1[(1, 0)],
        }
    }
}

/// `(u(x, t), u(-x, -t))` from the large-`k` coefficients. Both carry the factor
/// `2i`, as the `1/k` term of the x-equation and the PT symmetry of `M` require.
pub fn recover_u(sol: &RHSolution) -> Result<(C64, C64)> {
    if sol.singular {
        return Err(Error::SingularSystem(format!(
            "blow-up point at (x, t) = ({}, {})",
            sol.x, sol.t
        )));
    }
    Ok((2.0 * I * sol.lim12, 2.0 * I * sol.lim21))
}

/// Unimodularity, symmetry and normalisation of `M` over sample points.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct InvariantReport {
    pub det_max: f64,
    pub symmetry_max: f64,
    pub large_k_max: f64,
}

/// Checks `det M = 1`, `M(x,t,k) = s1 M(-x,-t,k) s1 diag(1/a1, a1)` on upper
/// half-plane samples, and `|M - I|` at `|k| = large_k`.
pub fn m_invariant_checks(
    problem: &CaseProblem,
    x: f64,
    t: f64,
    ks: &[C64],
    large_k: f64,
) -> Result<InvariantReport> {
    let here = problem.solve(x, t);
    let mirror = problem.solve(-x, -t);
    let s1 = sigma1();
    let mut rep = InvariantReport {
        det_max: 0.0,
        symmetry_max: 0.0,
        large_k_max: 0.0,
    };
    for &k in ks {
        let m = here.m(k)?;
        rep.det_max = rep.det_max.max((det(&m) - ONE).norm());
        if k.im > 0.0 {
            let a1 = problem.a1(k);
            let rhs = s1 * mirror.m(k)? * s1 * diag(ONE / a1, a1);
            rep.symmetry_max = rep
                .symmetry_max
                .max(max_abs(&(m - rhs)) / max_abs(&m).max(1.0));
        }
    }
    for th in [0.3, 1.2, 2.0, 2.9, -0.7, -2.2] {
        let k = C64::from_polar(large_k, th);
        rep.large_k_max = rep.large_k_max.max(max_abs(&(here.m(k)? - identity())));
    }
    Ok(rep)
}

/// Steps used when extrapolating limits at a pole.
pub const RESIDUE_STEPS: [f64; 4] = [1e-3, 5e-4, 2.5e-4, 1.25e-4];

fn column(m: &CMat2, j: usize) -> CVec2 {
    m.column(j).into_owned()
}

/// Value of the second column at a point where it is regular but the ansatz
/// formula is `0 * inf`: symmetric average extrapolated to zero offset.
fn col2_at(sol: &RHSolution, k0: C64, dir: C64) -> Result<CVec2> {
    let vals: Vec<Vec<C64>> = RESIDUE_STEPS
        .iter()
        .map(|&h| {
            let a = column(&sol.m(k0 + h * dir)?, 1);
            let b = column(&sol.m(k0 - h * dir)?, 1);
            Ok(vec![(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0])
        })
        .collect::<Result<_>>()?;
    Ok(extrapolate(&vals))
}

fn col2_derivative_at(sol: &RHSolution, k0: C64, dir: C64) -> Result<CVec2> {
    let vals: Vec<Vec<C64>> = RESIDUE_STEPS
        .iter()
        .map(|&h| {
            let a = column(&sol.m(k0 + h * dir)?, 1);
            let b = column(&sol.m(k0 - h * dir)?, 1);
            Ok(vec![
                (a[0] - b[0]) / (2.0 * h * dir),
                (a[1] - b[1]) / (2.0 * h * dir),
            ])
        })
        .collect::<Result<_>>()?;
    Ok(extrapolate(&vals))
}

fn extrapolate(vals: &[Vec<C64>]) -> CVec2 {
    let comp = |i: usize| richardson(&vals.iter().map(|v| v[i]).collect::<Vec<_>>(), 2.0);
    CVec2::new(comp(0), comp(1))
}

/// Largest mismatch in the residue conditions, each limit extrapolated.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ResidueReport {
    pub column1: f64,
    pub column2: f64,
}

pub fn residue_check(problem: &CaseProblem, x: f64, t: f64) -> Result<ResidueReport> {
    let sol = problem.solve(x, t);
    // approach direction off the real axis and away from the other poles
    let dir = C64::from_polar(1.0, 0.37);
    let mut col1: f64 = 0.0;
    let mut col2: f64 = 0.0;
    let limit = |k0: C64, power: i32, col: usize| -> Result<CVec2> {
        let vals: Vec<Vec<C64>> = RESIDUE_STEPS
            .iter()
            .map(|&h| {
                let d = h * dir;
                let v = column(&sol.m(k0 + d)?, col) * d.powi(power);
                Ok(vec![v[0], v[1]])
            })
            .collect::<Result<_>>()?;
        Ok(extrapolate(&vals))
    };
    let cs: Vec<C64> = match &problem.poles {
        PoleProblem::Simple(p) => p.c.iter().map(|f| f(x, t)).collect(),
        PoleProblem::Double(p) => p.c.iter().map(|f| f(x, t)).collect(),
    };
    let fs: Vec<C64> = match &problem.poles {
        PoleProblem::Simple(p) => p.f.iter().map(|f| f(x, t)).collect(),
        PoleProblem::Double(p) => p.f.iter().map(|f| f(x, t)).collect(),
    };
    match sol.kind {
        PoleKind::Simple => {
            for j in 0..2 {
                let res = limit(sol.w[j], 1, 0)?;
                let m2 = col2_at(&sol, sol.w[j], dir)?;
                col1 = col1.max((res - m2 * cs[j]).norm() / res.norm().max(1.0));
            }
        }
        PoleKind::Double => {
            let w = sol.w[0];
            let m2 = col2_at(&sol, w, dir)?;
            let dm2 = col2_derivative_at(&sol, w, dir)?;
            let lead = limit(w, 2, 0)?;
            // residue: symmetric difference of (k - w)^2 M1 divided by the offset
            let vals: Vec<Vec<C64>> = RESIDUE_STEPS
                .iter()
                .map(|&h| {
                    let d = h * dir;
                    let a = column(&sol.m(w + d)?, 0) * d * d;
                    let b = column(&sol.m(w - d)?, 0) * d * d;
                    Ok(vec![(a[0] - b[0]) / (2.0 * d), (a[1] - b[1]) / (2.0 * d)])
                })
                .collect::<Result<_>>()?;
            let res = extrapolate(&vals);
            col1 = col1.max((lead - m2 * cs[2]).norm() / lead.norm().max(1.0));
            col1 = col1.max((res - dm2 * cs[0] - m2 * cs[1]).norm() / res.norm().max(1.0));
        }
    }
    for j in 0..2 {
        let res = limit(sol.q[j], 1, 1)?;
        let m1 = {
            let vals: Vec<Vec<C64>> = RESIDUE_STEPS
                .iter()
                .map(|&h| {
                    let a = column(&sol.m(sol.q[j] + h * dir)?, 0);
                    let b = column(&sol.m(sol.q[j] - h * dir)?, 0);
                    Ok(vec![(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0])
                })
                .collect::<Result<_>>()?;
            extrapolate(&vals)
        };
        col2 = col2.max((res - m1 * fs[j]).norm() / res.norm().max(1.0));
    }
    Ok(ResidueReport {
        column1: col1,
        column2: col2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_coefficients_give_zero_field() {
        let zero = || coeff(|_, _| ZERO);
        let p = SimplePoleProblem::new(
            [c(0.0, 0.1), c(0.0, 0.4)],
            [c(0.2, 0.0), c(-0.2, 0.0)],
            [zero(), zero()],
            [zero(), zero()],
        )
        .unwrap();
        let sol = solve_simple(&p, 0.3, 0.1);
        assert!(!sol.singular);
        assert_eq!(sol.system.det_n1, ZERO);
        assert_eq!(recover_u(&sol).unwrap().0, ZERO);
    }

    #[test]
    fn coincident_poles_rejected() {
        let zero = || coeff(|_, _| ZERO);
        let w = c(0.0, 0.1);
        assert!(SimplePoleProblem::new(
            [w, w],
            [c(0.2, 0.0), c(-0.2, 0.0)],
            [zero(), zero()],
            [zero(), zero()]
        )
        .is_err());
    }

    #[test]
    fn double_zero_derivatives() {
        // a1 = (k - i l1)^2 / (k^2 - B^2), derivatives at the zero by finite differences
        let a = 1.0;
        let l1 = a / 4.0;
        let w = c(0.0, l1);
        let g = |k: C64| ONE / (k * k - l1 * l1);
        let h = 1e-4;
        let g1 = (g(w + h) - g(w - h)) / (2.0 * h);
        assert!((2.0 * g(w) - a1_second_derivative(a)).norm() < 1e-10);
        assert!((6.0 * g1 - a1_third_derivative(a)).norm() < 1e-5);
    }
}
