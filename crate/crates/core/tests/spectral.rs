use std::f64::consts::PI;

use nmkdv::matrix::c;
use nmkdv::profile::BumpedStep;
use nmkdv::scattering::{a1 as direct_a1, pure_step_scattering, pure_step_zeros};
use nmkdv::spectral::*;
use nmkdv::{CaseTag, Params, C64};

fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

#[test]
fn reflectionless_phi1_oracle() {
    for bfreq in [0.243, 0.26, 0.5] {
        let p = Params::new(1.0, bfreq).unwrap();
        let phi1 = pv_phi1(&ZeroB, &p, 1.0).unwrap();
        let oracle = c(0.0, PI - 4.0 * c(bfreq, 1.0).arg());
        assert!(
            (phi1 - oracle).norm() < 1e-8,
            "B={bfreq}: {phi1} vs {oracle}"
        );
    }
}

#[test]
fn pure_step_constants() {
    for (a, bfreq) in [(1.0, 0.243), (1.0, 0.26), (2.0, 0.3)] {
        let p = Params::new(a, bfreq).unwrap();
        let phi1 = pv_phi1(&PureStepB(p), &p, 1.0).unwrap();
        let dc = derived_constants(phi1, &p).unwrap();
        assert!((dc.phi2 - PI).abs() < 1e-8, "{dc:?}");
        assert!((dc.d1 - a / 4.0).abs() < 1e-8);
        assert!((dc.d2 - (a * a / 16.0 - bfreq * bfreq)).abs() < 1e-8);
    }
}

#[test]
fn pure_step_zero_round_trip() {
    for bfreq in [0.243, 0.26] {
        let p = Params::new(1.0, bfreq).unwrap();
        let rep = spectral_report(&PureStepB(p), &p).unwrap();
        let want = pure_step_zeros(&p);
        assert_eq!(rep.case, want.case);
        for (z, w) in rep.zeros.iter().zip(want.zeros) {
            assert!((c(z.re, z.im) - w).norm() < 1e-8);
        }
    }
}

#[test]
fn phi1_mirror_point_is_conjugate_reflection() {
    // b(-k) = conj b(k) makes the data even and real-symmetric.
    let p = Params::new(1.0, 0.243).unwrap();
    let at_b = pv_phi1(&PureStepB(p), &p, 1.0).unwrap();
    let at_mb = pv_phi1(&PureStepB(p), &p, -1.0).unwrap();
    assert!((at_mb - at_b.conj()).norm() < 1e-8, "{at_b} {at_mb}");
}

#[test]
fn reflectionless_e_constants() {
    let p = Params::new(1.0, 0.243).unwrap();
    let e = e_constants(&ZeroB, &p).unwrap();
    let half = p.amp * p.freq / 2.0;
    assert!((e.e_plus - c(0.0, half)).norm() < 1e-12);
    assert!((e.e_minus - c(0.0, -half)).norm() < 1e-12);
    let cands = classify_tilde_candidates(&e, &p);
    assert_eq!(cands.len(), 1);
    let (sign, zs) = cands[0];
    assert_eq!(sign, '-');
    assert_eq!(zs.case, CaseTag::TildeI);
    let s1 = (1.0f64 - 16.0 * p.freq * p.freq).sqrt();
    assert!((zs.zeros[0].im - (1.0 - s1) / 4.0).abs() < 1e-14);
    assert!((zs.zeros[1].im - (1.0 + s1) / 4.0).abs() < 1e-14);
}

#[test]
fn tilde_classes_from_e() {
    let p = Params::new(1.0, 0.26).unwrap();
    let e = c(0.0, -p.amp * p.freq / 2.0);
    let zs = classify_tilde(e, &p).unwrap();
    assert_eq!(zs.case, CaseTag::TildeII);
    assert!((zs.zeros[0].im - 0.25).abs() < 1e-14);
    let p = Params::new(1.0, 0.25).unwrap();
    let zs = classify_tilde(c(0.0, -0.125), &p).unwrap();
    assert_eq!(zs.case, CaseTag::TildeIII);
    assert!((zs.zeros[0] - c(0.0, 0.25)).norm() < 1e-14);
}

#[test]
fn pure_step_trace_formula_matches_closed_form() {
    let p = Params::new(1.0, 0.243).unwrap();
    let sampler = PureStepB(p);
    let data = LogData::new(&sampler, p, LogKind::Plain).unwrap();
    let trace = TraceFormula {
        zeros: pure_step_zeros(&p),
        transform: CauchyTransform::new(&data),
    };
    for k in [c(0.3, 0.2), c(-1.0, 0.5), c(0.0, 1.5), c(2.0, 0.05)] {
        let (a1c, _, _) = pure_step_scattering(&p, k).unwrap();
        assert!(rel(trace.a1(k).unwrap(), a1c) < 1e-8, "a1 at {k}");
        let km = k.conj();
        let (_, a2c, _) = pure_step_scattering(&p, km).unwrap();
        assert!(rel(trace.a2(km).unwrap(), a2c) < 1e-8, "a2 at {km}");
    }
}

#[test]
fn cauchy_transform_is_analytic_and_jumps_by_the_data() {
    let p = Params::new(1.0, 0.243).unwrap();
    let sampler = PureStepB(p);
    let data = LogData::new(&sampler, p, LogKind::Plain).unwrap();
    let ct = CauchyTransform::new(&data);
    let k = c(0.4, 0.3);
    let h = 1e-4;
    let dx = (ct.eval(k + h).unwrap() - ct.eval(k - h).unwrap()) / (2.0 * h);
    let dy = (ct.eval(k + c(0.0, h)).unwrap() - ct.eval(k - c(0.0, h)).unwrap()) / (2.0 * h);
    assert!((dy - c(0.0, 1.0) * dx).norm() < 1e-6, "{dx} {dy}");
    let x0 = 0.7;
    let (up, down) = ct.boundary(x0).unwrap();
    assert!((up - down - data.value(x0)).norm() < 1e-12);
    let near = ct.eval(c(x0, 1e-6)).unwrap();
    assert!((near - up).norm() < 1e-4, "{near} {up}");
}

#[test]
fn winding_data_rejected() {
    let p = Params::new(1.0, 0.243).unwrap();
    let winding = |k: f64| (C64::new(1.0, 0.0) - c(0.0, 4.0 * (k.atan() + PI / 2.0)).exp()).sqrt();
    assert!(matches!(
        LogData::new(&winding, p, LogKind::Tilde),
        Err(nmkdv::Error::Branch(_))
    ));
}

#[test]
fn degenerate_phi2_rejected() {
    let p = Params::new(1.0, 0.243).unwrap();
    let phi1 = c(0.0, -4.0 * c(p.freq, 1.0).arg());
    assert!(derived_constants(phi1, &p).is_err());
}

#[test]
fn bumped_step_trace_round_trip() {
    let p = Params::new(1.0, 0.243)
        .unwrap()
        .with_cutoffs(10.0, 60.0)
        .unwrap()
        .with_tol(1e-10)
        .unwrap();
    let prof = BumpedStep::new(p, 0.1, 0.5).unwrap();
    let sampler = NumericB::new(&prof);
    let phi1 = pv_phi1(&sampler, &p, 1.0).unwrap();
    let dc = derived_constants(phi1, &p).unwrap();
    let zeros = classify_plain(dc.d1, dc.d2).unwrap();
    assert_eq!(zeros.case, CaseTag::I);
    let data = LogData::new(&sampler, p, LogKind::Plain).unwrap();
    let trace = TraceFormula {
        zeros,
        transform: CauchyTransform::new(&data),
    };
    let combined = 2.0 * p.tol;
    for i in 0..10 {
        let th = 0.15 + 0.28 * i as f64;
        let k = C64::from_polar(0.3 + 0.15 * i as f64, th);
        let got = trace.a1(k).unwrap();
        let want = direct_a1(&prof, k).unwrap();
        assert!(
            rel(got, want) < 10.0 * combined,
            "k={k}: {got} vs {want} ({:.2e})",
            rel(got, want)
        );
    }
}
