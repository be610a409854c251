//! 2x2 complex matrix helpers.

use nalgebra::{Matrix2, Vector2};
use num_complex::Complex64 as C64;

pub type CMat2 = Matrix2<C64>;
pub type CVec2 = Vector2<C64>;

pub const I: C64 = C64::new(0.0, 1.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const ZERO: C64 = C64::new(0.0, 0.0);

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

pub fn mat(a: C64, b: C64, c: C64, d: C64) -> CMat2 {
    CMat2::new(a, b, c, d)
}

pub fn identity() -> CMat2 {
    CMat2::identity()
}

pub fn sigma1() -> CMat2 {
    mat(ZERO, ONE, ONE, ZERO)
}

pub fn sigma3() -> CMat2 {
    mat(ONE, ZERO, ZERO, -ONE)
}

/// `sigma1 * m * sigma1`, i.e. swap both rows and columns.
pub fn flip(m: &CMat2) -> CMat2 {
    mat(m[(1, 1)], m[(1, 0)], m[(0, 1)], m[(0, 0)])
}

/// `exp(z * sigma3)`.
pub fn exp_sigma3(z: C64) -> CMat2 {
    mat(z.exp(), ZERO, ZERO, (-z).exp())
}

pub fn diag(a: C64, d: C64) -> CMat2 {
    mat(a, ZERO, ZERO, d)
}

pub fn det(m: &CMat2) -> C64 {
    m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]
}

/// Determinant of two column vectors placed side by side.
pub fn wronskian(a: &CVec2, b: &CVec2) -> C64 {
    a[0] * b[1] - a[1] * b[0]
}

pub fn commutator(a: &CMat2, b: &CMat2) -> CMat2 {
    a * b - b * a
}

pub fn conj(m: &CMat2) -> CMat2 {
    m.map(|z| z.conj())
}

/// Largest entry modulus.
pub fn max_abs(m: &CMat2) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// Matrix inverse for unimodular-ish 2x2 matrices, erroring on a vanishing determinant.
pub fn inverse(m: &CMat2) -> Option<CMat2> {
    let d = det(m);
    if d == ZERO {
        return None;
    }
    Some(mat(m[(1, 1)], -m[(0, 1)], -m[(1, 0)], m[(0, 0)]) / d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pauli_squares_are_identity() {
        assert_eq!(sigma1() * sigma1(), identity());
        assert_eq!(sigma3() * sigma3(), identity());
    }

    #[test]
    fn flip_matches_conjugation() {
        let m = mat(c(1.0, 2.0), c(-3.0, 0.5), c(0.25, 7.0), c(4.0, -1.0));
        assert_eq!(flip(&m), sigma1() * m * sigma1());
    }
}
