//! Small numerical kernels: complex Newton iteration, Richardson extrapolation,
//! bisection and a complex-step finite difference.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Newton iteration `z <- z - f/f'` until the step falls below `tol * max(1,|z|)`.
pub fn newton<F, D>(f: F, df: D, z0: C64, tol: f64, max_iter: usize) -> Result<C64>
where
    F: Fn(C64) -> C64,
    D: Fn(C64) -> C64,
{
    let mut z = z0;
    for _ in 0..max_iter {
        let fz = f(z);
        if fz == C64::new(0.0, 0.0) {
            return Ok(z);
        }
        let d = df(z);
        if d.norm() == 0.0 || !d.is_finite() {
            return Err(Error::Convergence(format!(
                "Newton derivative vanished at {z}"
            )));
        }
        let step = fz / d;
        z -= step;
        if !z.is_finite() {
            return Err(Error::Convergence("Newton iterate diverged".into()));
        }
        if step.norm() <= tol * z.norm().max(1.0) {
            return Ok(z);
        }
    }
    Err(Error::Convergence(format!(
        "Newton did not converge from {z0}"
    )))
}

/// Central difference of an analytic function along the real direction.
pub fn derivative(f: impl Fn(C64) -> C64, z: C64, h: f64) -> C64 {
    (f(z + h) - f(z - h)) / (2.0 * h)
}

/// Richardson extrapolation to `h -> 0` of samples `values[i] = F(h0 / ratio^i)`,
/// assuming an error expansion in integer powers `h, h^2, ...`.
pub fn richardson(values: &[C64], ratio: f64) -> C64 {
    let mut table: Vec<C64> = values.to_vec();
    let n = table.len();
    for order in 1..n {
        let fac = ratio.powi(order as i32);
        for i in 0..n - order {
            table[i] = (table[i + 1] * fac - table[i]) / (fac - 1.0);
        }
    }
    table[0]
}

/// Bisection on a sign change of `f` in `[a, b]`, to absolute width `tol`.
pub fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> Result<f64> {
    let mut fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::InvalidInput("bisection needs a sign change".into()));
    }
    for _ in 0..200 {
        if (b - a).abs() <= tol {
            break;
        }
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn newton_finds_cube_root() {
        let z = newton(
            |z| z * z * z - 8.0,
            |z| 3.0 * z * z,
            C64::new(1.5, 0.1),
            1e-15,
            50,
        )
        .unwrap();
        assert!((z - C64::new(2.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn richardson_removes_linear_and_quadratic_terms() {
        let f = |h: f64| C64::new(3.0 + 2.0 * h - 5.0 * h * h, h);
        let vals: Vec<C64> = [1e-1, 1e-2, 1e-3].iter().map(|&h| f(h)).collect();
        assert!((richardson(&vals, 10.0) - C64::new(3.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn bisection_hits_root() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0, 1e-12).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-11);
    }
}
