//! Worked examples for each public operation, checked against exact values.

use std::f64::consts::{LN_2, PI};

use radialgeo::gallery::{self, quartic_tail_slope, CurvatureOracle, LimitOracle};
use radialgeo::pipeline::{bg_ratio_check, evaluate_theorem, ids, Options, VolumeSamples};
use radialgeo::*;

fn linear_then_zero() -> CurvatureProfile {
    // K(t) = 1 - t on [0, 2], zero afterwards
    CurvatureProfile::new(
        vec![Segment {
            start: 0.0,
            end: 2.0,
            expr: Expr::Poly(vec![1.0, -1.0]),
        }],
        TailModel::Zero,
    )
    .unwrap()
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

#[test]
fn profile_evaluation() {
    assert_eq!(CurvatureProfile::zero().eval(5.0).unwrap(), 0.0);
    assert_eq!(CurvatureProfile::constant(-1.0).eval(2.0).unwrap(), -1.0);
    let tail = CurvatureProfile::power_decay(-1.0, 3.0).unwrap();
    assert!(close(tail.eval(1.0).unwrap(), -0.125, 1e-15));
    assert!(tail.eval(-1.0).is_err());
}

#[test]
fn negative_and_positive_parts() {
    let hyp = CurvatureProfile::constant(-1.0);
    let sph = CurvatureProfile::constant(1.0);
    for t in [0.0, 0.5, 3.0, 100.0] {
        assert_eq!(hyp.negative_part().eval(t).unwrap(), -1.0);
        assert_eq!(sph.negative_part().eval(t).unwrap(), 0.0);
        assert_eq!(hyp.positive_part().eval(t).unwrap(), 0.0);
        assert_eq!(sph.positive_part().eval(t).unwrap(), 1.0);
    }

    let k = linear_then_zero();
    let (neg, pos) = (k.negative_part(), k.positive_part());
    assert!(neg.breakpoints().iter().any(|&b| close(b, 1.0, 1e-12)));
    for i in 0..=400 {
        let t = i as f64 * 0.01;
        let v = k.eval(t).unwrap();
        assert!(close(neg.eval(t).unwrap(), v.min(0.0), 1e-14), "t = {t}");
        assert!(close(pos.eval(t).unwrap(), v.max(0.0), 1e-14), "t = {t}");
    }
}

#[test]
fn moment_classes() {
    assert_eq!(CurvatureProfile::constant(-1.0).tail_moment_class(), MomentClass::DivergentMoment);
    assert_eq!(
        CurvatureProfile::power_decay(-1.0, 3.0).unwrap().tail_moment_class(),
        MomentClass::FiniteMoment
    );
    assert_eq!(
        CurvatureProfile::power_decay(-1.0, 2.0).unwrap().tail_moment_class(),
        MomentClass::DivergentMoment
    );
}

#[test]
fn warping_closed_forms() {
    let flat = solve(&CurvatureProfile::zero(), 10.0, 1e-10).unwrap();
    let (f, fp) = flat.eval(10.0).unwrap();
    assert!(close(f, 10.0, 1e-9) && close(fp, 1.0, 1e-10));
    assert!(flat.first_zero().is_none());

    let hyp = solve(&CurvatureProfile::constant(-1.0), 2.0, 1e-10).unwrap();
    let (f, fp) = hyp.eval(2.0).unwrap();
    assert!(close(f, 3.626860408, 1e-8) && close(fp, 3.762195691, 1e-8));

    let sph = solve(&CurvatureProfile::constant(1.0), 4.0, 1e-10).unwrap();
    assert!(close(sph.first_zero().unwrap(), PI, 1e-9));
}

#[test]
fn piecewise_profile_matches_tight_reference() {
    let k = linear_then_zero();
    let reference = solve(&k, 5.0, 1e-13).unwrap().eval(5.0).unwrap();
    let got = solve(&k, 5.0, 1e-10).unwrap().eval(5.0).unwrap();
    assert!(close(got.0, reference.0, 1e-9), "{got:?} vs {reference:?}");
    assert!(close(got.1, reference.1, 1e-9), "{got:?} vs {reference:?}");
    // beyond the last breakpoint K = 0, so f is affine there
    let sol = solve(&k, 5.0, 1e-12).unwrap();
    let (f3, fp3) = sol.eval(3.0).unwrap();
    let (f5, fp5) = sol.eval(5.0).unwrap();
    assert!(close(fp3, fp5, 1e-11) && close(f5, f3 + 2.0 * fp3, 1e-10));
}

#[test]
fn m_solutions() {
    let m = solve_m(&CurvatureProfile::constant(1.0), 5.0, 1e-10).unwrap();
    for t in [1.0, 2.5, 5.0] {
        let (v, d) = m.eval(t).unwrap();
        assert!(close(v, t, 1e-12) && close(d, 1.0, 1e-12));
    }
    let m = solve_m(&CurvatureProfile::constant(-1.0), 2.0, 1e-10).unwrap();
    assert!(close(m.f(2.0).unwrap(), 3.626860408, 1e-8));

    // pure a/(1+t)^4 tail: m = (1+t) sinh(k t/(1+t)) / k with k = sqrt(6)
    let k = 6f64.sqrt();
    let u = k * 100.0 / 101.0;
    let want = u.sinh() / k + u.cosh() / 101.0;
    let m = solve_m(&CurvatureProfile::power_decay(-6.0, 4.0).unwrap(), 100.0, 1e-10).unwrap();
    assert!(close(m.fp(100.0).unwrap(), want, 1e-8));
}

#[test]
fn total_curvature_examples() {
    let flat = CurvatureProfile::zero();
    let c = total_curvature(&flat, &solve(&flat, 4096.0, 1e-8).unwrap(), 1e-8).unwrap();
    assert_eq!(c.value(), Some(0.0));

    let hyp = CurvatureProfile::constant(-1.0);
    let c = total_curvature(&hyp, &solve(&hyp, 4096.0, 1e-8).unwrap(), 1e-8).unwrap();
    assert_eq!(c.classification, Classification::NegativeDivergent);

    let beta = gallery::sign_changing_beta(LN_2);
    let c = total_curvature(&beta, &solve(&beta, 4096.0, 1e-10).unwrap(), 1e-10).unwrap();
    assert!(close(c.value().unwrap(), PI, 1e-6));
}

#[test]
fn slope_limit_examples() {
    let flat = solve(&CurvatureProfile::zero(), 4096.0, 1e-8).unwrap();
    assert!(close(slope_limit(&flat).value().unwrap(), 1.0, 1e-12));
    let hyp = solve(&CurvatureProfile::constant(-1.0), 4096.0, 1e-8).unwrap();
    assert!(slope_limit(&hyp).is_divergent());
    let beta = solve(&gallery::sign_changing_beta(LN_2), 4096.0, 1e-10).unwrap();
    assert!(close(slope_limit(&beta).value().unwrap(), 0.5, 1e-6));
}

#[test]
fn m_prime_limit_examples() {
    let v = m_prime_limit(&CurvatureProfile::constant(1.0), 1e-8).unwrap();
    assert!(close(v.value().unwrap(), 1.0, 1e-12));
    assert!(m_prime_limit(&CurvatureProfile::constant(-1.0), 1e-8).unwrap().is_divergent());
    let v = m_prime_limit(&CurvatureProfile::power_decay(-6.0, 4.0).unwrap(), 1e-10).unwrap();
    assert!(close(v.value().unwrap(), quartic_tail_slope(-6.0), 1e-8));
    assert!(close(quartic_tail_slope(-6.0), 2.34663108800872, 1e-12));
}

#[test]
fn sphere_volumes() {
    assert!(close(unit_sphere_volume(2).unwrap(), 2.0 * PI, 1e-15));
    assert!(close(unit_sphere_volume(3).unwrap(), 12.566370614, 1e-9));
    assert!(close(unit_sphere_volume(4).unwrap(), 19.739208802, 1e-9));
}

#[test]
fn ball_volume_examples() {
    let flat = solve(&CurvatureProfile::zero(), 10.0, 1e-10).unwrap();
    let v = ModelSpace::new(2, flat.clone()).unwrap().ball_volume(3.0).unwrap();
    assert!(close(v, 28.274333882, 1e-8));
    let v = ModelSpace::new(3, flat).unwrap().ball_volume(2.0).unwrap();
    assert!(close(v, 33.510321638, 1e-8));
    let hyp = solve(&CurvatureProfile::constant(-1.0), 3.0, 1e-10).unwrap();
    let v = ModelSpace::new(3, hyp).unwrap().ball_volume(1.0).unwrap();
    assert!(close(v, PI * (2f64.sinh() - 2.0), 1e-7));
}

#[test]
fn growth_coefficient_examples() {
    let flat = CurvatureProfile::zero();
    let f = solve(&flat, 4096.0, 1e-8).unwrap();
    let c = total_curvature(&flat, &f, 1e-8).unwrap();
    for (n, want) in [(2, PI), (3, 4.188790205)] {
        let g = ModelSpace::new(n, f.clone()).unwrap().growth_coefficient(&c);
        assert!(close(g.direct.value().unwrap(), want, 1e-8));
        assert!(close(g.closed_form.unwrap().value().unwrap(), want, 1e-8));
    }

    let beta = gallery::sign_changing_beta(LN_2);
    let f = solve(&beta, 4096.0, 1e-10).unwrap();
    let c = total_curvature(&beta, &f, 1e-10).unwrap();
    let g = ModelSpace::new(2, f).unwrap().growth_coefficient(&c);
    assert!(close(g.closed_form.unwrap().value().unwrap(), PI / 2.0, 1e-5));
    assert!((g.direct.value().unwrap() / (PI / 2.0) - 1.0).abs() < 1e-4);
}

#[test]
fn angle_and_packing_examples() {
    let finite = |value| LimitEstimate::Finite { value, err: 0.0 };
    assert_eq!(angle_bound(&finite(1.0)).unwrap(), Some(PI));
    assert_eq!(angle_bound(&finite(2.0)).unwrap(), Some(PI / 2.0));
    assert_eq!(angle_bound(&LimitEstimate::Divergent { last_probe: 1e7 }).unwrap(), None);
    for m in [1.0, 1.5, gallery::quartic_tail_slope(-3.0), quartic_tail_slope(-6.0)] {
        let c_star = 2.0 * PI * (1.0 - m);
        let two_lambda = angle_bound(&finite(m)).unwrap().unwrap();
        assert!(close(2.0 * PI * PI / (2.0 * PI - c_star), two_lambda, 1e-14));
    }

    assert!(close(packing_bound(PI, 2).unwrap(), 2.0, 1e-15));
    assert!(close(packing_bound(PI / 2.0, 3).unwrap(), 8.0, 1e-14));
    assert!(close(packing_bound(PI, 5).unwrap(), 2.0, 1e-15));
}

#[test]
fn ends_bound_examples() {
    for n in 2..=6 {
        let b = ends_bound(&CurvatureProfile::constant(1.0), n, 1e-8).unwrap();
        assert_eq!(b.raw_bound, Some(2.0));
        assert_eq!(b.integer_bound, Some(2));
        assert!(b.conclusive);
    }
    let b = ends::ends_bound_from(LimitEstimate::Finite { value: 2.0, err: 0.0 }, 3).unwrap();
    assert!(close(b.raw_bound.unwrap(), 8.0, 1e-13));
    assert!(!ends_bound(&CurvatureProfile::constant(-1.0), 3, 1e-8).unwrap().conclusive);
}

#[test]
fn gallery_examples() {
    let flat = entry_by_name("flat").unwrap();
    assert_eq!(flat.oracle.total_curvature, Some(CurvatureOracle::Finite(0.0)));
    assert_eq!(flat.oracle.slope, Some(LimitOracle::Finite(1.0)));
    assert_eq!(flat.oracle.m_prime_inf, Some(LimitOracle::Finite(1.0)));

    let beta = entry_by_name("sign_changing_beta_ln2").unwrap();
    assert_eq!(beta.oracle.total_curvature, Some(CurvatureOracle::Finite(PI)));
    assert_eq!(beta.oracle.slope, Some(LimitOracle::Finite(0.5)));

    let hyp = entry_by_name("hyperbolic").unwrap();
    assert_eq!(hyp.oracle.total_curvature, Some(CurvatureOracle::NegativeInfinite));
    assert_eq!(hyp.oracle.m_prime_inf, Some(LimitOracle::Divergent));

    assert!(entry_by_name("abresch_tail").is_ok());
    assert!(matches!(entry_by_name("nope"), Err(Error::Lookup(_))));
    assert!(list_gallery().len() >= 6);
}

#[test]
fn sample_ingestion() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.csv");
    std::fs::write(&good, format!("t,vol\n1,{}\n2,{}\n3,{}\n", PI, 4.0 * PI, 9.0 * PI)).unwrap();
    assert_eq!(ingest_samples(&good, 2).unwrap().rows.len(), 3);

    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "t,vol\n1,1\n2,2\n1.5,3\n").unwrap();
    assert!(matches!(ingest_samples(&bad, 2), Err(Error::Ingest { row: 3, .. })));

    let empty = dir.path().join("empty.csv");
    std::fs::write(&empty, "").unwrap();
    assert!(ingest_samples(&empty, 2).is_err());
}

#[test]
fn ratio_check_examples() {
    let ms = ModelSpace::new(2, solve(&CurvatureProfile::zero(), 20.0, 1e-10).unwrap()).unwrap();
    let rows: Vec<_> = (1..=8).map(|i| (i as f64, PI * (i * i) as f64)).collect();
    let exact = bg_ratio_check(&VolumeSamples::new(2, rows.clone()).unwrap(), &ms).unwrap();
    assert!(exact.monotone_ok && exact.ratios.iter().all(|r| close(*r, 1.0, 1e-12)));
    assert!(close(exact.ratio_limit.value().unwrap(), 1.0, 1e-12));

    let half: Vec<_> = rows.iter().map(|&(t, v)| (t, 0.5 * v)).collect();
    let half = bg_ratio_check(&VolumeSamples::new(2, half).unwrap(), &ms).unwrap();
    assert!(half.ratios.iter().all(|r| close(*r, 0.5, 1e-12)));

    let rising = VolumeSamples::new(2, vec![(1.0, 0.5 * PI), (2.0, 0.6 * 4.0 * PI)]).unwrap();
    let rising = bg_ratio_check(&rising, &ms).unwrap();
    assert!(!rising.monotone_ok && !rising.warnings.is_empty());
}

#[test]
fn theorem_evaluation_examples() {
    let flat = CurvatureProfile::zero();
    let disks: Vec<_> = (1..=10).map(|i| (i as f64 * 10.0, PI * (i * i * 100) as f64)).collect();
    let samples = VolumeSamples::new(2, disks).unwrap();
    let r = evaluate_theorem(&flat, 2, Options::default(), Some(&samples)).unwrap();
    assert!(close(r.manifold_growth_limit.unwrap().value().unwrap(), PI, 1e-6));
    assert!(r.has_conclusion(ids::FINITE_TOPOLOGICAL_TYPE));
    assert!(r.has_conclusion(ids::ENDS_BOUND));
    assert_eq!(r.ends.unwrap().integer_bound, Some(2));

    let r = evaluate_theorem(&CurvatureProfile::constant(-1.0), 2, Options::default(), None).unwrap();
    assert!(!r.hypothesis_holds && r.conclusions.is_empty());

    // β = ln 2 in dimension 3 with samples at 0.8 of the model volumes
    let beta = gallery::sign_changing_beta(LN_2);
    let opts = Options { tol: 1e-10, ..Options::default() };
    let ms = ModelSpace::new(3, solve(&beta, opts.t_end, opts.tol).unwrap()).unwrap();
    let radii: Vec<f64> = (1..=12).map(|i| 300.0 * i as f64).collect();
    let rows = radii
        .iter()
        .zip(ms.ball_volumes(&radii).unwrap())
        .map(|(&t, v)| (t, 0.8 * v))
        .collect();
    let samples = VolumeSamples::new(3, rows).unwrap();
    let r = evaluate_theorem(&beta, 3, opts, Some(&samples)).unwrap();
    let g = r.growth.direct.value().unwrap();
    assert!(close(r.manifold_growth_limit.unwrap().value().unwrap(), 0.8 * g, 1e-8));
    let m = r.m_prime_limit.unwrap().value().unwrap();
    let cap = r.ends.unwrap().integer_bound.unwrap();
    assert_eq!(cap, (2.0 * m * m).floor() as u64);
    assert!(r.has_conclusion(ids::ENDS_BOUND));
}

#[test]
fn compact_model_is_an_error() {
    let err = evaluate_theorem(&CurvatureProfile::constant(1.0), 2, Options::default(), None).unwrap_err();
    assert!(matches!(err, Error::CompactModel { .. }));
}

#[test]
fn reports_are_deterministic() {
    let k = gallery::sign_changing_beta(LN_2);
    let a = evaluate_theorem(&k, 2, Options::default(), None).unwrap().to_json().unwrap();
    let b = evaluate_theorem(&k, 2, Options::default(), None).unwrap().to_json().unwrap();
    assert_eq!(a, b);
    assert!(a.ends_with("}\n"));
}
