use nmkdv::matrix::{c, flip, max_abs, CMat2};
use nmkdv::profile::{BumpedStep, PureStep};
use nmkdv::scattering::*;
use nmkdv::{CaseTag, Params, C64};

fn presets() -> Vec<Params> {
    [(1.0, 0.243), (1.0, 0.26), (1.0, 0.25)]
        .iter()
        .map(|&(a, b)| Params::new(a, b).unwrap())
        .collect()
}

fn bumped() -> BumpedStep {
    BumpedStep::new(
        Params::new(1.0, 0.243)
            .unwrap()
            .with_cutoffs(10.0, 200.0)
            .unwrap(),
        0.1,
        0.5,
    )
    .unwrap()
}

fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

#[test]
fn pure_step_left_column_is_background_on_negative_axis() {
    let p = Params::new(1.0, 0.243).unwrap();
    let step = PureStep::new(p);
    let k = c(0.7, 0.2);
    let xs = [-3.0, -1.0, 0.0];
    let col = jost_column(&step, JostColumn::LeftFirst, k, &xs).unwrap();
    for (x, v) in xs.iter().zip(col) {
        let n =
            nmkdv::background::n_matrix(&p, nmkdv::background::Side::Minus, *x, 0.0, k).unwrap();
        assert!((v[0] - n[(0, 0)]).norm() < 1e-9);
        assert!((v[1] - n[(1, 0)]).norm() < 1e-9);
    }
}

#[test]
fn numeric_pure_step_matches_closed_form() {
    for p in presets() {
        let step = PureStep::new(p);
        for k in [
            c(0.5, 0.0),
            c(-1.3, 0.0),
            c(0.1, 0.4),
            c(0.0, 0.5),
            c(2.0, 1.0),
        ] {
            let (a1c, a2c, bc) = pure_step_scattering(&p, k).unwrap();
            assert!(rel(a1(&step, k).unwrap(), a1c) < 1e-7, "a1 at {k}");
            if k.im == 0.0 {
                assert!(rel(a2(&step, k).unwrap(), a2c) < 1e-7);
                assert!(rel(b(&step, k.re).unwrap(), bc) < 1e-7);
            }
        }
    }
}

#[test]
fn a1_at_half_i_oracle() {
    let p = Params::new(1.0, 0.25).unwrap();
    let k = c(0.0, 0.5);
    let got = a1(&PureStep::new(p), k).unwrap();
    let k2 = k * k;
    let oracle = 1.0 + k2 / (4.0 * (k2 - 0.0625) * (k2 - 0.0625));
    assert!(rel(got, oracle) < 1e-8);
}

#[test]
fn bumped_step_determinant_and_symmetry() {
    let prof = bumped();
    for k in [-1.7, -0.6, 0.11, 0.5, 2.3] {
        let s = scattering_data(&prof, c(k, 0.0)).unwrap();
        let det = s.a1.unwrap() * s.a2.unwrap() + s.b.unwrap() * s.b.unwrap();
        assert!((det - 1.0).norm() < 1e-6, "k={k} det={det}");
        let bm = b(&prof, -k).unwrap();
        assert!((s.b.unwrap() - bm.conj()).norm() < 1e-7);
        let (l, r) = jost_matrices(&prof, k, 0.0).unwrap();
        assert!((nmkdv::matrix::det(&l) - 1.0).norm() < 1e-8);
        assert!((nmkdv::matrix::det(&r) - 1.0).norm() < 1e-8);
    }
}

#[test]
fn bumped_step_unimodular_at_seven_tenths() {
    let (l, _) = jost_matrices(&bumped(), 0.7, 0.0).unwrap();
    assert!((nmkdv::matrix::det(&l) - 1.0).norm() < 1e-8);
}

#[test]
fn jost_mirror_symmetry() {
    let prof = bumped();
    for (x, k) in [(0.3, 0.4), (-1.2, 1.1), (2.0, -0.8)] {
        let (l, _) = jost_matrices(&prof, k, -x).unwrap();
        let (_, r) = jost_matrices(&prof, k, x).unwrap();
        let diff: CMat2 = flip(&l) - r;
        assert!(max_abs(&diff) < 1e-7, "x={x} k={k}");
    }
}

#[test]
fn large_k_normalization() {
    let p = Params::new(1.0, 0.25).unwrap();
    let step = PureStep::new(p);
    let v = jost_column_at(&step, JostColumn::LeftFirst, c(0.0, 1e3), 0.0).unwrap();
    assert!((v[0] - 1.0).norm() < 1e-3 && v[1].norm() < 1e-3);
    for r in [1e2, 1e3] {
        for th in [0.3, 1.0, 1.6, 2.8] {
            let k = C64::from_polar(r, th);
            let val = a1(&bumped(), k).unwrap();
            assert!((val - 1.0).norm() * r < 10.0, "|k|={r} th={th}");
        }
    }
}

#[test]
fn pure_step_zero_taxonomy() {
    let z = pure_step_zeros(&Params::new(1.0, 0.243).unwrap());
    assert_eq!(z.case, CaseTag::I);
    let (k1, k2) = (z.zeros[0].im, z.zeros[1].im);
    assert!((k1 + k2 - 0.5).abs() < 1e-14 && (k1 * k2 - 0.059049).abs() < 1e-14);
    let z = pure_step_zeros(&Params::new(1.0, 0.26).unwrap());
    assert_eq!(z.case, CaseTag::II);
    assert!((z.zeros[0].im - 0.25).abs() < 1e-14 && (z.zeros[0].norm() - 0.26).abs() < 1e-14);
}

#[test]
fn conservation_pure_step() {
    let p = Params::new(1.0, 0.243).unwrap();
    let rep = conservation_a2b(&PureStep::new(p), &[-2.0, -0.5, 0.0, 1.0, 3.0], 0.0).unwrap();
    assert!((rep.value - 1.0).norm() < 1e-6, "{:?}", rep.value);
    assert!(rep.max_deviation < 1e-6);
}

#[test]
fn conservation_bumped_matches_direct_a2() {
    let prof = bumped();
    let rep = conservation_a2b(&prof, &[-2.0, -0.5, 0.0, 1.0, 3.0], 0.0).unwrap();
    assert!(rep.max_deviation < 1e-6);
    let direct = a2(&prof, c(prof.params.freq, 0.0)).unwrap();
    assert!(
        (rep.value - direct).norm() < 1e-6,
        "{} vs {}",
        rep.value,
        direct
    );
}

#[test]
fn singular_rates_bumped() {
    let prof = bumped();
    for sign in [1.0, -1.0] {
        let r = singular_rates(&prof, sign).unwrap();
        assert!(rel(r.a1_rate, r.a1_expected) < 5e-4, "{r:?}");
        assert!(rel(r.b_rate, r.b_expected) < 5e-4, "{r:?}");
    }
}

#[test]
fn reflection_limits_pure_step() {
    let p = Params::new(1.0, 0.243).unwrap();
    let e = 1e-7;
    let k = c(p.freq + e, 0.0);
    let (a1v, a2v, bv) = pure_step_scattering(&p, k).unwrap();
    let (r1, r2) = reflection_coeffs(a1v, a2v, bv).unwrap();
    assert!(((r2 * e) - c(0.0, -0.25)).norm() < 1e-5);
    assert!(((r1 / e) - c(0.0, -4.0)).norm() < 1e-4);
    let j = jump_matrix(r1, r2, 0.3, 0.1, k.re);
    assert!((nmkdv::matrix::det(&j) - 1.0).norm() < 1e-9);
}
