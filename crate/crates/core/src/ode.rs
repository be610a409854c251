//! Adaptive Dormand-Prince 5(4) integrator for small complex systems.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

#[derive(Clone, Copy, Debug)]
pub struct Dopri5 {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
}

impl Dopri5 {
    pub fn new(rtol: f64) -> Self {
        Dopri5 {
            rtol,
            atol: rtol * 1e-3,
            max_steps: 20_000_000,
        }
    }

    /// Integrates `y' = f(x, y)` from `x0` to `x1` (either direction).
    pub fn integrate<const N: usize, F>(
        &self,
        f: F,
        x0: f64,
        y0: [C64; N],
        x1: f64,
    ) -> Result<[C64; N]>
    where
        F: Fn(f64, &[C64; N]) -> [C64; N],
    {
        let mut out = self.integrate_through(&f, x0, y0, &[x1])?;
        Ok(out.pop().expect("one stop requested"))
    }

    /// Integrates through the monotone list `stops`, returning the state at each.
    pub fn integrate_through<const N: usize, F>(
        &self,
        f: &F,
        x0: f64,
        y0: [C64; N],
        stops: &[f64],
    ) -> Result<Vec<[C64; N]>>
    where
        F: Fn(f64, &[C64; N]) -> [C64; N],
    {
        let mut out = Vec::with_capacity(stops.len());
        let mut x = x0;
        let mut y = y0;
        let mut h_mag: Option<f64> = None;
        let mut steps = 0usize;
        for &target in stops {
            if target == x {
                out.push(y);
                continue;
            }
            let dir = (target - x).signum();
            let mut k1 = f(x, &y);
            let mut h = match h_mag {
                Some(h) => h,
                None => self.initial_step(f, x, &y, &k1, (target - x).abs()),
            };
            loop {
                let remaining = (target - x).abs();
                let last = h >= remaining;
                let hs = if last { remaining } else { h };
                let (y_new, k7, err) = self.step(f, x, &y, &k1, dir * hs);
                steps += 1;
                if steps > self.max_steps {
                    return Err(Error::Convergence(format!(
                        "ODE exceeded {} steps near x={x}",
                        self.max_steps
                    )));
                }
                if !err.is_finite() {
                    return Err(Error::Convergence(format!(
                        "non-finite ODE state near x={x}"
                    )));
                }
                if err <= 1.0 {
                    x = if last { target } else { x + dir * hs };
                    y = y_new;
                    k1 = k7;
                    if last {
                        break;
                    }
                    let fac = if err == 0.0 {
                        5.0
                    } else {
                        (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
                    };
                    h = hs * fac;
                } else {
                    h = hs * (0.9 * err.powf(-0.2)).clamp(0.1, 0.9);
                    if h < 1e-14 * x.abs().max(1.0) {
                        return Err(Error::Convergence(format!("ODE step underflow near x={x}")));
                    }
                }
            }
            h_mag = Some(h);
            out.push(y);
        }
        Ok(out)
    }

    fn initial_step<const N: usize, F>(
        &self,
        f: &F,
        x: f64,
        y: &[C64; N],
        k1: &[C64; N],
        span: f64,
    ) -> f64
    where
        F: Fn(f64, &[C64; N]) -> [C64; N],
    {
        let sc: Vec<f64> = y.iter().map(|v| self.atol + self.rtol * v.norm()).collect();
        let d0 = rms(y.iter().zip(&sc).map(|(v, s)| v.norm() / s));
        let d1 = rms(k1.iter().zip(&sc).map(|(v, s)| v.norm() / s));
        let h0 = if d0 < 1e-5 || d1 < 1e-5 {
            1e-6
        } else {
            0.01 * d0 / d1
        };
        let h0 = h0.min(span);
        let mut y1 = *y;
        for i in 0..N {
            y1[i] += k1[i] * h0;
        }
        let k2 = f(x + h0, &y1);
        let d2 = rms(k2
            .iter()
            .zip(k1)
            .zip(&sc)
            .map(|((a, b), s)| (a - b).norm() / s))
            / h0;
        let h1 = if d1.max(d2) <= 1e-15 {
            (h0 * 1e-3).max(1e-6)
        } else {
            (0.01 / d1.max(d2)).powf(0.2)
        };
        (100.0 * h0).min(h1).min(span)
    }

    #[allow(clippy::needless_range_loop)]
    fn step<const N: usize, F>(
        &self,
        f: &F,
        x: f64,
        y: &[C64; N],
        k1: &[C64; N],
        h: f64,
    ) -> ([C64; N], [C64; N], f64)
    where
        F: Fn(f64, &[C64; N]) -> [C64; N],
    {
        let mut t = [C64::new(0.0, 0.0); N];
        for i in 0..N {
            t[i] = y[i] + k1[i] * (h * A21);
        }
        let k2 = f(x + C2 * h, &t);
        for i in 0..N {
            t[i] = y[i] + (k1[i] * A31 + k2[i] * A32) * h;
        }
        let k3 = f(x + C3 * h, &t);
        for i in 0..N {
            t[i] = y[i] + (k1[i] * A41 + k2[i] * A42 + k3[i] * A43) * h;
        }
        let k4 = f(x + C4 * h, &t);
        for i in 0..N {
            t[i] = y[i] + (k1[i] * A51 + k2[i] * A52 + k3[i] * A53 + k4[i] * A54) * h;
        }
        let k5 = f(x + C5 * h, &t);
        for i in 0..N {
            t[i] = y[i] + (k1[i] * A61 + k2[i] * A62 + k3[i] * A63 + k4[i] * A64 + k5[i] * A65) * h;
        }
        let k6 = f(x + h, &t);
        let mut y_new = [C64::new(0.0, 0.0); N];
        for i in 0..N {
            y_new[i] =
                y[i] + (k1[i] * A71 + k3[i] * A73 + k4[i] * A74 + k5[i] * A75 + k6[i] * A76) * h;
        }
        let k7 = f(x + h, &y_new);
        let mut acc = 0.0;
        for i in 0..N {
            let e =
                (k1[i] * E1 + k3[i] * E3 + k4[i] * E4 + k5[i] * E5 + k6[i] * E6 + k7[i] * E7) * h;
            let sc = self.atol + self.rtol * y[i].norm().max(y_new[i].norm());
            acc += (e.norm() / sc).powi(2);
        }
        (y_new, k7, (acc / N as f64).sqrt())
    }
}

fn rms(it: impl Iterator<Item = f64>) -> f64 {
    let (s, n) = it.fold((0.0, 0usize), |(s, n), v| (s + v * v, n + 1));
    (s / n.max(1) as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_exponential() {
        let k = C64::new(0.3, 2.0);
        let ode = Dopri5::new(1e-11);
        let y = ode
            .integrate(|_, y: &[C64; 1]| [k * y[0]], 0.0, [C64::new(1.0, 0.0)], 3.0)
            .unwrap();
        let exact = (k * 3.0).exp();
        assert!((y[0] - exact).norm() / exact.norm() < 1e-9);
    }

    #[test]
    fn backwards_and_stops() {
        let ode = Dopri5::new(1e-11);
        let f = |_: f64, y: &[C64; 2]| [y[1], -y[0]];
        let stops = [-0.5, -1.0, -2.0];
        let ys = ode
            .integrate_through(&f, 0.0, [C64::new(0.0, 0.0), C64::new(1.0, 0.0)], &stops)
            .unwrap();
        for (x, y) in stops.iter().zip(ys) {
            assert!((y[0].re - x.sin()).abs() < 1e-9);
        }
    }
}
