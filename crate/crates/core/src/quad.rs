//! Globally adaptive Gauss-Kronrod (7/15) quadrature for complex integrands.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64 as C64;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Clone, Copy, Debug)]
pub struct QuadResult {
    pub value: C64,
    pub error: f64,
    pub intervals: usize,
    pub converged: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct GaussKronrod {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl GaussKronrod {
    pub fn new(abs_tol: f64, rel_tol: f64) -> Self {
        GaussKronrod {
            abs_tol,
            rel_tol,
            max_intervals: 4000,
        }
    }

    /// Integrates `f` over `[a, b]`, refining the panel with the largest error first.
    pub fn integrate<F: Fn(f64) -> C64>(&self, f: F, a: f64, b: f64) -> QuadResult {
        self.integrate_panels(&f, &[a, b])
    }

    /// Integrates over consecutive panels `[p0,p1], [p1,p2], ...` sharing one error budget.
    pub fn integrate_panels<F: Fn(f64) -> C64>(&self, f: &F, breaks: &[f64]) -> QuadResult {
        let mut heap = BinaryHeap::new();
        let mut total = C64::new(0.0, 0.0);
        let mut err = 0.0;
        for w in breaks.windows(2) {
            if w[1] == w[0] {
                continue;
            }
            let seg = Segment::new(f, w[0], w[1]);
            total += seg.value;
            err += seg.error;
            heap.push(seg);
        }
        let mut converged = false;
        while !heap.is_empty() {
            if err <= self.abs_tol.max(self.rel_tol * total.norm()) {
                converged = true;
                break;
            }
            if heap.len() >= self.max_intervals {
                break;
            }
            let worst = heap.pop().expect("peeked");
            let mid = 0.5 * (worst.a + worst.b);
            if mid <= worst.a.min(worst.b) || mid >= worst.a.max(worst.b) {
                heap.push(worst);
                break;
            }
            let left = Segment::new(f, worst.a, mid);
            let right = Segment::new(f, mid, worst.b);
            total += left.value + right.value - worst.value;
            err += left.error + right.error - worst.error;
            heap.push(left);
            heap.push(right);
        }
        // recompute the sum to shed accumulated cancellation from the running update
        let value = heap.iter().map(|s| s.value).sum();
        let error = heap.iter().map(|s| s.error).sum();
        QuadResult {
            value,
            error,
            intervals: heap.len(),
            converged,
        }
    }
}

struct Segment {
    a: f64,
    b: f64,
    value: C64,
    error: f64,
}

impl Segment {
    fn new<F: Fn(f64) -> C64>(f: &F, a: f64, b: f64) -> Self {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        let fc = f(c);
        let mut kron = fc * WGK[7];
        let mut gauss = fc * WG[3];
        for j in 0..7 {
            let dx = h * XGK[j];
            let s = f(c - dx) + f(c + dx);
            kron += s * WGK[j];
            if j % 2 == 1 {
                gauss += s * WG[j / 2];
            }
        }
        let value = kron * h;
        let error = ((kron - gauss) * h).norm();
        Segment { a, b, value, error }
    }
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exact() {
        let q = GaussKronrod::new(1e-14, 1e-14);
        let r = q.integrate(|x| C64::new(x.powi(5), 2.0 * x), 0.0, 2.0);
        assert!((r.value - C64::new(64.0 / 6.0, 4.0)).norm() < 1e-12);
    }

    #[test]
    fn log_singularity_converges() {
        let q = GaussKronrod::new(1e-12, 1e-12);
        let r = q.integrate(|x| C64::new(x.ln(), 0.0), 0.0, 1.0);
        assert!(r.converged);
        assert!((r.value.re + 1.0).abs() < 1e-10);
    }

    #[test]
    fn oscillatory_complex() {
        let q = GaussKronrod::new(1e-13, 1e-13);
        let k = 7.0;
        let r = q.integrate(|x| C64::new(0.0, k * x).exp(), 0.0, 3.0);
        let exact = (C64::new(0.0, 3.0 * k).exp() - 1.0) / C64::new(0.0, k);
        assert!((r.value - exact).norm() < 1e-11);
    }
}
