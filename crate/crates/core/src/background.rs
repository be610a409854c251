//! Plane-wave background of the Lax pair: dressing matrices, background
//! solutions, Volterra kernels and the coefficient matrices `U`, `V`.

use num_complex::Complex64 as C64;

use crate::config::Params;
use crate::error::{Error, Result};
use crate::matrix::{self, c, exp_sigma3, flip, mat, re, CMat2, I, ONE, ZERO};

/// Which spatial end a background object is attached to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// `x -> +infinity`, where the field oscillates.
    Plus,
    /// `x -> -infinity`, where the field vanishes.
    Minus,
}

/// Background phase `2 B x + 8 B^3 t`.
pub fn phase(p: &Params, x: f64, t: f64) -> f64 {
    let b = p.freq;
    2.0 * b * x + 8.0 * b * b * b * t
}

/// Background field `A cos(2Bx + 8B^3 t)`.
pub fn background_field(p: &Params, x: f64, t: f64) -> f64 {
    p.amp * phase(p, x, t).cos()
}

fn guard_k(p: &Params, k: C64) -> Result<C64> {
    let d = k * k - p.freq * p.freq;
    if d.norm() <= f64::EPSILON * (1.0 + k.norm_sqr()) {
        return Err(Error::SingularPoint(format!(
            "background matrices are singular at k = +-B (k = {k})"
        )));
    }
    Ok(d)
}

/// Off-diagonal entry of the dressing matrix for `side`.
fn dressing_entry(p: &Params, side: Side, x: f64, t: f64, k: C64, denom: C64) -> C64 {
    let th = phase(p, x, t);
    let (s, co) = th.sin_cos();
    let pref = p.amp / (2.0 * denom);
    match side {
        Side::Plus => -pref * (p.freq * s + I * k * co),
        Side::Minus => pref * (p.freq * s - I * k * co),
    }
}

/// Unit-triangular dressing matrix `N_side(x, t, k)`.
pub fn n_matrix(p: &Params, side: Side, x: f64, t: f64, k: C64) -> Result<CMat2> {
    let d = guard_k(p, k)?;
    let e = dressing_entry(p, side, x, t, k, d);
    Ok(match side {
        Side::Plus => mat(ONE, e, ZERO, ONE),
        Side::Minus => mat(ONE, ZERO, e, ONE),
    })
}

/// Background solution `N_side * exp(-(i k x + 4 i k^3 t) sigma3)`.
pub fn phi_background(p: &Params, side: Side, x: f64, t: f64, k: C64) -> Result<CMat2> {
    let n = n_matrix(p, side, x, t, k)?;
    Ok(n * exp_sigma3(-(I * k * x + 4.0 * I * k * k * k * t)))
}

/// Radius around `+-B` inside which [`kernel_g`] switches to its series form.
pub fn series_radius(p: &Params) -> f64 {
    1e-4 * p.freq.max(1.0)
}

/// Volterra kernel `G_side(x, y, t, k) = Phi(x) Phi(y)^{-1}`; continuous through `k = +-B`.
pub fn kernel_g(p: &Params, side: Side, x: f64, y: f64, t: f64, k: C64) -> CMat2 {
    match side {
        Side::Minus => kernel_minus(p, x, y, t, k),
        Side::Plus => flip(&kernel_minus(p, -x, -y, -t, k)),
    }
}

fn kernel_minus(p: &Params, x: f64, y: f64, t: f64, k: C64) -> CMat2 {
    let b = p.freq;
    let eps = series_radius(p);
    if (k - b).norm() <= eps {
        return kernel_minus_near_b(p, x, y, t, k);
    }
    if (k + b).norm() <= eps {
        // G_-(k) = conj(G_-(-conj k)) maps the -B neighbourhood onto the +B one
        return matrix::conj(&kernel_minus_near_b(p, x, y, t, -k.conj()));
    }
    let nx = n_matrix(p, Side::Minus, x, t, k).expect("k away from +-B");
    let ny = n_matrix(p, Side::Minus, y, t, k).expect("k away from +-B");
    let ny_inv = mat(ONE, ZERO, -ny[(1, 0)], ONE);
    nx * exp_sigma3(I * k * (y - x)) * ny_inv
}

/// First-order expansion of `G_-` about `k = B`; the diagonal is kept exact.
fn kernel_minus_near_b(p: &Params, x: f64, y: f64, t: f64, k: C64) -> CMat2 {
    let b = p.freq;
    let d = x - y;
    let mid = b * (x + y + 8.0 * b * b * t);
    let half_sin = 0.5 * (2.0 * b * d).sin();
    let slope = re(mid.cos() * -(half_sin + b * d)) + I * (mid.sin() * (half_sin - b * d));
    let lower = p.amp / (k + b) * slope;
    mat((-I * k * d).exp(), ZERO, lower, (I * k * d).exp())
}

/// `U = [[0, u], [-u_mirror, 0]]` where `u_mirror = u(-x, -t)`.
pub fn lax_u(u: C64, u_mirror: C64) -> CMat2 {
    mat(ZERO, u, -u_mirror, ZERO)
}

/// Field value and its first two `x`-derivatives at one point.
#[derive(Clone, Copy, Debug, Default)]
pub struct Jet {
    pub val: C64,
    pub dx: C64,
    pub dxx: C64,
}

/// Time coefficient `V(x, t, k)`; `mirror` holds `u(-x,-t)` and its `x`-derivatives
/// (derivatives of the composite function, not of `u` at the mirrored point).
pub fn lax_v(here: Jet, mirror: Jet, k: C64) -> CMat2 {
    let (u, ux, uxx) = (here.val, here.dx, here.dxx);
    let (m, mx, mxx) = (mirror.val, mirror.dx, mirror.dxx);
    let a = 2.0 * I * k * u * m - ux * m + u * mx;
    let b = 4.0 * k * k * u + 2.0 * I * k * ux - 2.0 * u * u * m - uxx;
    let cc = -4.0 * k * k * m + 2.0 * I * k * mx + 2.0 * u * m * m + mxx;
    mat(a, b, cc, -a)
}

/// Limiting coefficients `(U_side, V_side)` of the background.
pub fn background_lax(p: &Params, side: Side, x: f64, t: f64, k: C64) -> (CMat2, CMat2) {
    let th = phase(p, x, t);
    let (s, co) = th.sin_cos();
    let a = p.amp;
    let b = p.freq;
    let v = 4.0 * a * (k * k + b * b) * co;
    let w = 4.0 * I * a * b * k * s;
    match side {
        Side::Plus => (
            mat(ZERO, re(a * co), ZERO, ZERO),
            mat(ZERO, v - w, ZERO, ZERO),
        ),
        Side::Minus => (
            mat(ZERO, ZERO, re(-a * co), ZERO),
            mat(ZERO, ZERO, -v - w, ZERO),
        ),
    }
}

/// Background jet `A cos(theta)` with its `x`-derivatives.
pub fn background_jet(p: &Params, x: f64, t: f64) -> Jet {
    let th = phase(p, x, t);
    let (s, co) = th.sin_cos();
    let two_b = 2.0 * p.freq;
    Jet {
        val: re(p.amp * co),
        dx: re(-p.amp * two_b * s),
        dxx: re(-p.amp * two_b * two_b * co),
    }
}

/// `U_t - V_x + [U - i k sigma3, V - 4 i k^3 sigma3]` by central differences.
pub fn zero_curvature_residual(
    u_of: impl Fn(f64, f64) -> CMat2,
    v_of: impl Fn(f64, f64) -> CMat2,
    x: f64,
    t: f64,
    k: C64,
    h: f64,
) -> CMat2 {
    let ut = (u_of(x, t + h) - u_of(x, t - h)) / c(2.0 * h, 0.0);
    let vx = (v_of(x + h, t) - v_of(x - h, t)) / c(2.0 * h, 0.0);
    let s3 = matrix::sigma3();
    let lhs = u_of(x, t) - s3 * (I * k);
    let rhs = v_of(x, t) - s3 * (4.0 * I * k * k * k);
    ut - vx + matrix::commutator(&lhs, &rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> Params {
        Params::new(1.0, 0.243).unwrap()
    }

    #[test]
    fn plus_entry_at_origin() {
        let p = params();
        let k = c(0.3, 0.7);
        let n = n_matrix(&p, Side::Plus, 0.0, 0.0, k).unwrap();
        let expect = -I * p.amp * k / (2.0 * (k * k - p.freq * p.freq));
        assert!((n[(0, 1)] - expect).norm() < 1e-15);
    }

    #[test]
    fn singular_at_b() {
        let p = params();
        assert!(n_matrix(&p, Side::Minus, 0.1, 0.0, re(p.freq)).is_err());
    }

    #[test]
    fn kernel_identity_on_diagonal() {
        let p = params();
        for side in [Side::Plus, Side::Minus] {
            let g = kernel_g(&p, side, 0.7, 0.7, 0.2, c(0.4, 0.1));
            assert!(matrix::max_abs(&(g - matrix::identity())) < 1e-14);
        }
    }
}
