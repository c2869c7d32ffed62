//! End-to-end acceptance suite: analytic identities verified numerically at
//! the stated tolerances, classification parity across regimes, and the
//! two-sided metric certificates. Each test prints one PASS line; a failure
//! panics with the offending value.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use extremal_disc::classify::{
    admissible_omega_set, classify_e, classify_g2, convex_uniqueness_certificate,
    reinhardt_classify, ConvexVerdict, GeodesicMap, Verdict,
};
use extremal_disc::complex::{c, cr, unit, BlaschkeSpec, MoebiusSpec, I, ONE, ZERO};
use extremal_disc::domains::{sample, DomainTag, KExp, PointE, PointG2, SamplePoint};
use extremal_disc::error::Result;
use extremal_disc::geodesics::{EFormVAZ, EGeodesicSpec, G2GeodesicSpec};
use extremal_disc::leftinv::{
    g_h, phi_omega, phi_tilde, phi_tilde_closed, psi_omega, rii_h_eval, tetra_f_h,
    LeftInverseSpec, RIIMapSpec,
};
use extremal_disc::mat2::Mat2;
use extremal_disc::oracle::{
    caratheodory_lb, distinct_maps, equality_check, lambda_grid, lempert_ub_from_geodesic,
    verify_into_disc, verify_left_inverse,
};
use extremal_disc::selfmap::SelfMapSpec;

fn unit_angles(n: usize) -> Vec<Complex64> {
    (0..n).map(|j| unit(TAU * j as f64 / n as f64)).collect()
}

fn as_e(pt: &SamplePoint) -> PointE {
    match pt {
        SamplePoint::E { x1, x2, x3 } => PointE::new(*x1, *x2, *x3),
        other => panic!("expected a tetrablock sample, got {other:?}"),
    }
}

#[test]
fn royal_slope_identity() {
    // -conj(w) Psi_w recovers lambda along (2 lambda, lambda^2) for every
    // unimodular w.
    let mut worst = 0.0_f64;
    for lam in lambda_grid(32) {
        let pt = PointG2::new(cr(2.0) * lam, lam * lam);
        for w in unit_angles(32) {
            let v = -w.conj() * psi_omega(w, &pt).unwrap();
            worst = worst.max((v - lam).norm());
        }
    }
    assert!(worst <= 1e-12, "royal identity residual {worst:.3e}");
    println!("PASS royal slope identity: max residual {worst:.3e} <= 1e-12 over 1024 pairs");
}

#[test]
fn flat_degeneracy_full_disc_of_witnesses() {
    // Along (0, -lambda) the whole closed disc of slopes inverts: -Psi_w
    // recovers lambda for every |w| <= 1.
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst = 0.0_f64;
    for lam in lambda_grid(32) {
        let pt = PointG2::new(ZERO, -lam);
        for j in 0..32 {
            let w = if j == 0 {
                ZERO
            } else {
                unit(rng.gen_range(0.0..TAU)) * cr(rng.gen_range(0.0..=1.0))
            };
            let v = -psi_omega(w, &pt).unwrap();
            worst = worst.max((v - lam).norm());
        }
    }
    assert!(worst <= 1e-12, "flat degeneracy residual {worst:.3e}");
    println!("PASS flat degeneracy: max residual {worst:.3e} <= 1e-12 over 1024 pairs");
}

#[test]
fn royal_surface_slope_identity() {
    // Phi_w is the first-coordinate projection on the graph x3 = x1 x2:
    // along (lambda, a(lambda), lambda a(lambda)) it returns lambda.
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0.0_f64;
    for _ in 0..10 {
        let tau = unit(rng.gen_range(0.0..TAU));
        let alpha = unit(rng.gen_range(0.0..TAU)) * cr(rng.gen_range(0.0..0.95));
        let a = MoebiusSpec::new(tau, alpha).unwrap();
        for lam in lambda_grid(10) {
            let av = a.eval(lam);
            let pt = PointE::new(lam, av, lam * av);
            for w in unit_angles(10) {
                let v = phi_omega(w, &pt, false).unwrap();
                worst = worst.max((v - lam).norm());
            }
        }
    }
    assert!(worst <= 1e-12, "graph identity residual {worst:.3e}");
    println!("PASS royal-surface slope identity: max residual {worst:.3e} <= 1e-12 over 1000 triples");
}

#[test]
fn phitilde_consistency_and_left_inversion() {
    // Root-based evaluation agrees with the closed form wherever the
    // closed-form branch is reliable.
    let pts = sample(&DomainTag::Tetrablock, 10_000, 42).unwrap();
    let omegas = unit_angles(16);
    let mut worst = 0.0_f64;
    let mut compared = 0usize;
    for pt in &pts {
        let e = as_e(pt);
        for &w in &omegas {
            if let Ok(closed) = phi_tilde_closed(w, &e, false) {
                let root = phi_tilde(w, &e, false).unwrap();
                worst = worst.max((root - closed).norm());
                compared += 1;
            }
        }
    }
    assert!(worst <= 1e-9, "root vs closed form residual {worst:.3e}");
    assert!(compared > 100_000, "too few branch-valid comparisons: {compared}");

    // The square-root functional left-inverts the unitary-coefficient
    // geodesic with vanishing inner part, for every royal distance beta.
    let mut worst_inv = 0.0_f64;
    for beta in [0.1, 0.3, 0.5, 0.7, 0.9] {
        let spec = EGeodesicSpec::FormVa {
            beta,
            a: ONE,
            b: ZERO,
            c: ZERO,
            d: ONE,
            z: EFormVAZ::Strict { w: SelfMapSpec::constant(ZERO).unwrap() },
        };
        spec.validate().unwrap();
        for lam in lambda_grid(200) {
            let x = spec.eval(lam).unwrap();
            let v = phi_tilde(ONE, &x, false).unwrap();
            worst_inv = worst_inv.max((v - lam).norm());
        }
    }
    assert!(worst_inv <= 1e-10, "left-inversion residual {worst_inv:.3e}");
    println!(
        "PASS phitilde consistency: root-vs-closed {worst:.3e} <= 1e-9 ({compared} comparisons), \
         left-inversion {worst_inv:.3e} <= 1e-10"
    );
}

#[test]
fn matrix_ball_average_witness() {
    let beta = 0.5;
    let q = 1.0 - beta * beta;
    let h = RIIMapSpec::canonical(beta).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);

    // (a) G_h on [[q lambda, beta], [beta, 0]] returns lambda for any
    // constant h in the closed unit ball.
    let mut worst_a = 0.0_f64;
    for _ in 0..10 {
        let hv = unit(rng.gen_range(0.0..TAU)) * cr(rng.gen_range(0.0..=1.0));
        for lam in lambda_grid(100) {
            let x = Mat2::new(cr(q) * lam, cr(beta), cr(beta), ZERO);
            let v = g_h(beta, hv, &x).unwrap();
            worst_a = worst_a.max((v - lam).norm());
        }
    }
    assert!(worst_a <= 1e-10, "average identity residual {worst_a:.3e}");

    // (b) The canonical h left-inverts [[q lambda, -beta], [-beta, 0]].
    let mut worst_b = 0.0_f64;
    for lam in lambda_grid(100) {
        let x = Mat2::new(cr(q) * lam, cr(-beta), cr(-beta), ZERO);
        let v = rii_h_eval(&h, &x).unwrap();
        worst_b = worst_b.max((v - lam).norm());
    }
    assert!(worst_b <= 1e-9, "matrix-ball inversion residual {worst_b:.3e}");

    // (c) The averaged witness acts as lambda (1 - beta^4) on (lambda, 0, 0).
    let mut worst_c = 0.0_f64;
    for lam in lambda_grid(100) {
        let v = tetra_f_h(beta, &h, &PointE::new(lam, ZERO, ZERO)).unwrap();
        worst_c = worst_c.max((v - cr(0.9375) * lam).norm());
    }
    assert!(worst_c <= 1e-9, "scaled-action residual {worst_c:.3e}");

    // (d) The averaged witness and the square-root functional are far apart.
    let fh = LeftInverseSpec::TetraFh { beta, h: h.clone(), swapped: false, twist: None };
    let pt1 = LeftInverseSpec::PhiTilde { omega: ONE, swapped: false, twist: None };
    let (distinct, sup) = distinct_maps(
        |pt: &SamplePoint| fh.eval(pt),
        |pt: &SamplePoint| pt1.eval(pt),
        &DomainTag::Tetrablock,
        10_000,
        42,
        0.05,
    )
    .unwrap();
    assert!(distinct && sup >= 0.05, "witness gap {sup:.4} below 0.05");
    println!(
        "PASS matrix-ball average witness: identities {worst_a:.3e}/{worst_b:.3e}/{worst_c:.3e}, \
         gap {sup:.3} >= 0.05"
    );
}

#[test]
fn g2_verdict_parity_with_admissible_clusters() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut checked = 0usize;
    let mut agreements = 0usize;
    while checked < 100 {
        let tau = unit(rng.gen_range(0.0..TAU));
        let alpha = unit(rng.gen_range(0.0..TAU)) * cr(rng.gen_range(0.05..0.95));
        let margin = (ONE - tau).norm() - 2.0 * alpha.norm();
        if margin.abs() <= 1e-3 || margin > 0.0 {
            continue;
        }
        let spec = G2GeodesicSpec::AutoForm { a: MoebiusSpec::new(tau, alpha).unwrap() };
        let cl = classify_g2(&spec).unwrap();
        let clusters = admissible_omega_set(tau, alpha, 4096).unwrap();
        if matches!(cl.verdict, Verdict::NonUnique) == (clusters.len() >= 2) {
            agreements += 1;
        }
        checked += 1;
    }
    assert_eq!(agreements, 100, "parity held for only {agreements}/100 specs");
    println!("PASS automorphism-form parity: verdict matched cluster count 100/100");
}

#[test]
fn g2_tangency_unique_closed_form() {
    let spec = G2GeodesicSpec::AutoForm {
        a: MoebiusSpec::new(unit(PI / 3.0), cr(0.5)).unwrap(),
    };
    let cl = classify_g2(&spec).unwrap();
    assert_eq!(cl.verdict, Verdict::Unique);
    assert!(matches!(cl.witnesses[0], LeftInverseSpec::G2Parabolic { .. }));
    let residual = cl.residual_report[0];
    assert!(residual <= 1e-9, "tangency witness residual {residual:.3e}");
    println!("PASS tangency uniqueness: closed-form witness residual {residual:.3e} <= 1e-9");
}

fn formva(beta: f64, a: Complex64, b: Complex64, cc: Complex64, d: Complex64, z: EFormVAZ) -> EGeodesicSpec {
    EGeodesicSpec::FormVa { beta, a, b, c: cc, d, z }
}

fn z_zero() -> EFormVAZ {
    EFormVAZ::Strict { w: SelfMapSpec::constant(ZERO).unwrap() }
}

/// The regime instances exercised by the tetrablock classification test and
/// reused by the metric-coincidence test below.
fn tetrablock_regimes() -> Vec<(EGeodesicSpec, Verdict, usize)> {
    let (rt2, rt8) = (cr(0.2f64.sqrt()), cr(0.8f64.sqrt()));
    vec![
        // Identity inner part: two contact events, four witnesses.
        (formva(0.5, ONE, ZERO, ZERO, ONE, EFormVAZ::Identity), Verdict::NonUnique, 4),
        // Strictly contracting inner part away from the touching manifold.
        (formva(0.5, ONE, ZERO, ZERO, ONE, z_zero()), Verdict::NonUnique, 2),
        // Touching manifold |c||d|(1 + beta^2) = beta: unique.
        (formva(0.5, rt2, rt8, rt8, -rt2, z_zero()), Verdict::Unique, 0),
        // Triangular-slice form, royal case C = 0.
        (
            EGeodesicSpec::Form0 {
                omega1: ONE,
                omega2: ONE,
                c: 0.0,
                psi: SelfMapSpec::new(cr(0.7), 1, vec![]).unwrap(),
            },
            Verdict::NonUnique,
            3,
        ),
        // Flat case C = 1.
        (
            EGeodesicSpec::Form0 {
                omega1: ONE,
                omega2: ONE,
                c: 1.0,
                psi: SelfMapSpec::constant(-ONE).unwrap(),
            },
            Verdict::NonUnique,
            2,
        ),
        // Interior C with strictly contracting psi: unique.
        (
            EGeodesicSpec::Form0 {
                omega1: ONE,
                omega2: ONE,
                c: 0.5,
                psi: SelfMapSpec::new(cr(0.8), 0, vec![cr(0.625)]).unwrap(),
            },
            Verdict::Unique,
            1,
        ),
        // Interior C with automorphism psi: a second slope functional.
        (
            EGeodesicSpec::Form0 {
                omega1: ONE,
                omega2: ONE,
                c: 0.5,
                psi: SelfMapSpec::new(ONE, 0, vec![cr(0.5)]).unwrap(),
            },
            Verdict::NonUnique,
            2,
        ),
    ]
}

#[test]
fn tetrablock_regime_classification() {
    for (spec, want_verdict, want_count) in tetrablock_regimes() {
        let cl = classify_e(&spec).unwrap();
        assert_eq!(cl.verdict, want_verdict, "verdict mismatch for {spec:?}");
        assert_eq!(cl.witnesses.len(), want_count, "witness count mismatch for {spec:?}");
        if matches!(cl.verdict, Verdict::NonUnique) {
            assert!(cl.witnesses.len() >= 2, "non-unique without two witnesses: {spec:?}");
        }
        for r in &cl.residual_report {
            assert!(*r <= 1e-9, "witness residual {r:.3e} for {spec:?}");
        }
    }
    println!("PASS tetrablock regimes: 7 regimes classified, non-unique ones ship >= 2 verified witnesses");
}

#[test]
fn bidisc_convex_certificate() {
    let bump = |lam: Complex64| cr(0.5) * lam * (lam - cr(0.6)) / (ONE - cr(0.6) * lam);
    let f1: GeodesicMap<'_> = Box::new(|lam| Ok(vec![lam, ZERO]));
    let f2: GeodesicMap<'_> = Box::new(move |lam| Ok(vec![lam, bump(lam)]));
    let cert = convex_uniqueness_certificate(
        &[f1, f2],
        &[ZERO, ZERO],
        cr(0.6),
        &[cr(0.6), ZERO],
        &[cr(0.3)],
    )
    .unwrap();
    assert_eq!(cert.verdict, ConvexVerdict::Unique);

    // The certified common inverse is the first-coordinate projection:
    // it inverts both geodesics to machine precision.
    let proj = |pt: &SamplePoint| match pt {
        SamplePoint::Pair { z1, .. } => Ok(*z1),
        other => panic!("expected a bidisc point, got {other:?}"),
    };
    let g1 = |lam: Complex64| -> Result<SamplePoint> { Ok(SamplePoint::Pair { z1: lam, z2: ZERO }) };
    let g2 = |lam: Complex64| -> Result<SamplePoint> {
        Ok(SamplePoint::Pair { z1: lam, z2: bump(lam) })
    };
    let r1 = verify_left_inverse(g1, proj, 200, 1e-12).unwrap();
    let r2 = verify_left_inverse(g2, proj, 200, 1e-12).unwrap();
    assert!(r1.pass && r2.pass, "projection residuals {:.3e}, {:.3e}", r1.max_residual, r2.max_residual);
    println!(
        "PASS bidisc convex certificate: rank witness unique, projection residuals \
         {:.3e}/{:.3e} <= 1e-12",
        r1.max_residual, r2.max_residual
    );
}

#[test]
fn reinhardt_dichotomy() {
    let k = KExp::Finite(2);
    let tag = DomainTag::ReinhardtModel { k, b: 1.0 };
    let betas = [0.0, 0.25, 0.5, 0.75, 0.99];
    let witnesses: Vec<LeftInverseSpec> =
        betas.iter().map(|&beta| LeftInverseSpec::ReinhardtBeta { beta, k }).collect();
    for w in &witnesses {
        let report = verify_into_disc(|pt: &SamplePoint| w.eval(pt), &tag, 100_000, 42, false)
            .unwrap();
        assert!(report.pass, "range check failed for {w:?}: {:.4}", report.max_residual);
    }
    for i in 0..witnesses.len() {
        for j in (i + 1)..witnesses.len() {
            let (wi, wj) = (&witnesses[i], &witnesses[j]);
            let (distinct, sup) = distinct_maps(
                |pt: &SamplePoint| wi.eval(pt),
                |pt: &SamplePoint| wj.eval(pt),
                &tag,
                2000,
                7,
                1e-3,
            )
            .unwrap();
            assert!(distinct, "witnesses {i}, {j} indistinct: sup {sup:.3e}");
        }
    }
    let finite = reinhardt_classify(k, 1.0).unwrap();
    assert_eq!(finite.verdict, Verdict::NonUnique);

    let infinite = reinhardt_classify(KExp::Infinity, 1.0).unwrap();
    assert_eq!(infinite.verdict, Verdict::Unique);
    assert!(matches!(
        infinite.witnesses[0],
        LeftInverseSpec::ReinhardtBeta { beta, k: KExp::Infinity } if beta == 0.0
    ));
    println!(
        "PASS reinhardt dichotomy: 5 finite-type witnesses in range and pairwise distinct, \
         infinite type unique with the projection"
    );
}

#[test]
fn ball_family_nonuniqueness() {
    let mut gammas = Vec::new();
    for r in [0.25, 0.5, 0.75, 1.0] {
        for j in 0..4 {
            gammas.push(unit(TAU * j as f64 / 4.0 + 0.3) * cr(r));
        }
    }
    assert_eq!(gammas.len(), 16);
    let witnesses: Vec<LeftInverseSpec> =
        gammas.iter().map(|&gamma| LeftInverseSpec::BallGamma { gamma }).collect();
    for w in &witnesses {
        let report =
            verify_into_disc(|pt: &SamplePoint| w.eval(pt), &DomainTag::Ball2, 100_000, 42, false)
                .unwrap();
        assert!(report.pass, "range check failed for {w:?}");
        let inv = verify_left_inverse(
            |lam| Ok(SamplePoint::Pair { z1: lam, z2: ZERO }),
            |pt: &SamplePoint| w.eval(pt),
            200,
            1e-12,
        )
        .unwrap();
        assert!(inv.pass, "axis inversion failed for {w:?}: {:.3e}", inv.max_residual);
    }
    for i in 0..witnesses.len() {
        for j in (i + 1)..witnesses.len() {
            let (wi, wj) = (&witnesses[i], &witnesses[j]);
            let (distinct, sup) = distinct_maps(
                |pt: &SamplePoint| wi.eval(pt),
                |pt: &SamplePoint| wj.eval(pt),
                &DomainTag::Ball2,
                2000,
                7,
                1e-3,
            )
            .unwrap();
            assert!(distinct, "ball witnesses {i}, {j} indistinct: sup {sup:.3e}");
        }
    }
    println!(
        "PASS ball family: 16 maps into the disc over 1e5 samples, all invert the axis disc, \
         pairwise distinct"
    );
}

/// Every geodesic the classifiers handled in this suite, as a closure, with
/// the classification re-run to recover its witnesses.
fn classified_pairs() -> Vec<(Box<dyn Fn(Complex64) -> Result<SamplePoint> + Sync>, Vec<LeftInverseSpec>)>
{
    let mut out: Vec<(Box<dyn Fn(Complex64) -> Result<SamplePoint> + Sync>, Vec<LeftInverseSpec>)> =
        Vec::new();

    let mut push_g2 = |spec: G2GeodesicSpec| {
        let cl = classify_g2(&spec).unwrap();
        let geo = move |lam: Complex64| -> Result<SamplePoint> {
            let pt = spec.eval(lam)?;
            Ok(SamplePoint::G2 { s: pt.s, p: pt.p })
        };
        out.push((Box::new(geo), cl.witnesses));
    };
    push_g2(G2GeodesicSpec::BlaschkeForm { alpha: BlaschkeSpec::new(ZERO).unwrap() });
    push_g2(G2GeodesicSpec::BlaschkeForm { alpha: BlaschkeSpec::new(ONE).unwrap() });
    push_g2(G2GeodesicSpec::BlaschkeForm { alpha: BlaschkeSpec::new(cr(0.3)).unwrap() });
    push_g2(G2GeodesicSpec::BlaschkeForm { alpha: BlaschkeSpec::new(c(0.2, -0.4)).unwrap() });
    push_g2(G2GeodesicSpec::AutoForm { a: MoebiusSpec::new(unit(PI / 3.0), cr(0.5)).unwrap() });
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut kept = 0usize;
    while kept < 20 {
        let tau = unit(rng.gen_range(0.0..TAU));
        let alpha = unit(rng.gen_range(0.0..TAU)) * cr(rng.gen_range(0.05..0.95));
        let margin = (ONE - tau).norm() - 2.0 * alpha.norm();
        if margin.abs() <= 1e-3 || margin > 0.0 {
            continue;
        }
        push_g2(G2GeodesicSpec::AutoForm { a: MoebiusSpec::new(tau, alpha).unwrap() });
        kept += 1;
    }

    for (spec, _, _) in tetrablock_regimes() {
        let cl = classify_e(&spec).unwrap();
        let geo = move |lam: Complex64| -> Result<SamplePoint> {
            let pt = spec.eval(lam)?;
            Ok(SamplePoint::E { x1: pt.x1, x2: pt.x2, x3: pt.x3 })
        };
        out.push((Box::new(geo), cl.witnesses));
    }

    for (k, b) in [(KExp::Finite(2), 1.0), (KExp::Infinity, 1.0)] {
        let cl = reinhardt_classify(k, b).unwrap();
        out.push((
            Box::new(|lam: Complex64| Ok(SamplePoint::Pair { z1: lam, z2: ZERO })),
            cl.witnesses,
        ));
    }
    out
}

#[test]
fn metric_coincidence_and_schwarz_pick() {
    // Both invariant-metric bounds meet along every classified geodesic and
    // witness pair: the lower bound through the witness equals the
    // hyperbolic distance of the parameters.
    let pairs = [(cr(0.1), cr(0.4)), (c(-0.2, 0.3), c(0.35, -0.1))];
    let mut checked = 0usize;
    for (geo, witnesses) in classified_pairs() {
        for w in &witnesses {
            for (l1, l2) in pairs {
                let ok = equality_check(&geo, |pt: &SamplePoint| w.eval(pt), l1, l2, 1e-9)
                    .unwrap();
                assert!(ok, "metric equality failed for {w:?} at ({l1}, {l2})");
                checked += 1;
            }
        }
    }
    assert!(checked >= 100, "too few classified pairs reached the metric check: {checked}");

    // One-sided bound on arbitrary cross-combinations: any implemented
    // family composed with any analytic disc contracts the hyperbolic
    // metric.
    let combos: Vec<(Box<dyn Fn(Complex64) -> Result<SamplePoint>>, LeftInverseSpec)> = vec![
        (
            Box::new(|lam: Complex64| {
                Ok(SamplePoint::G2 { s: cr(2.0) * lam, p: lam * lam })
            }),
            LeftInverseSpec::PsiOmega { omega: I, scale: cr(0.9) * I.conj(), post: None },
        ),
        (
            {
                let spec = G2GeodesicSpec::BlaschkeForm { alpha: BlaschkeSpec::new(cr(0.3)).unwrap() };
                Box::new(move |lam: Complex64| {
                    let pt = spec.eval(lam)?;
                    Ok(SamplePoint::G2 { s: pt.s, p: pt.p })
                })
            },
            LeftInverseSpec::PsiOmega { omega: cr(0.5), scale: unit(1.1), post: None },
        ),
        (
            {
                let spec = EGeodesicSpec::Form0 {
                    omega1: ONE,
                    omega2: ONE,
                    c: 0.5,
                    psi: SelfMapSpec::new(cr(0.8), 0, vec![cr(0.625)]).unwrap(),
                };
                Box::new(move |lam: Complex64| {
                    let pt = spec.eval(lam)?;
                    Ok(SamplePoint::E { x1: pt.x1, x2: pt.x2, x3: pt.x3 })
                })
            },
            LeftInverseSpec::PhiOmega { omega: unit(0.7), swapped: true, scale: ONE, post: None },
        ),
        (
            {
                let spec = formva(0.5, ONE, ZERO, ZERO, ONE, EFormVAZ::Identity);
                Box::new(move |lam: Complex64| {
                    let pt = spec.eval(lam)?;
                    Ok(SamplePoint::E { x1: pt.x1, x2: pt.x2, x3: pt.x3 })
                })
            },
            LeftInverseSpec::PhiTilde { omega: unit(-0.4), swapped: false, twist: None },
        ),
        (
            {
                let spec = formva(0.3, ONE, ZERO, ZERO, ONE, z_zero());
                Box::new(move |lam: Complex64| {
                    let pt = spec.eval(lam)?;
                    Ok(SamplePoint::E { x1: pt.x1, x2: pt.x2, x3: pt.x3 })
                })
            },
            LeftInverseSpec::EProj { coord: 1, scale: unit(0.2) },
        ),
        (
            {
                let g = SelfMapSpec::new(cr(0.5), 1, vec![cr(0.6)]).unwrap();
                Box::new(move |lam: Complex64| {
                    Ok(SamplePoint::Pair { z1: lam, z2: g.eval(lam) })
                })
            },
            LeftInverseSpec::BidiscLinear { t: 0.4, gamma: cr(0.3) },
        ),
        (
            Box::new(|lam: Complex64| Ok(SamplePoint::Pair { z1: lam, z2: ZERO })),
            LeftInverseSpec::BallGamma { gamma: c(0.3, 0.4) },
        ),
        (
            Box::new(|lam: Complex64| Ok(SamplePoint::Pair { z1: lam, z2: ZERO })),
            LeftInverseSpec::ReinhardtBeta { beta: 0.4, k: KExp::Finite(2) },
        ),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut tested = 0usize;
    while tested < 10_000 {
        let (geo, w) = &combos[rng.gen_range(0..combos.len())];
        let l1 = unit(rng.gen_range(0.0..TAU)) * cr(rng.gen_range(0.0..0.9));
        let l2 = unit(rng.gen_range(0.0..TAU)) * cr(rng.gen_range(0.0..0.9));
        let p1 = geo(l1).unwrap();
        let p2 = geo(l2).unwrap();
        let lb = caratheodory_lb(|pt: &SamplePoint| w.eval(pt), &p1, &p2).unwrap();
        let ub = lempert_ub_from_geodesic(geo, l1, l2).unwrap();
        assert!(
            lb <= ub + 1e-12,
            "contraction violated: lb {lb:.12} > ub {ub:.12} for {w:?} at ({l1}, {l2})"
        );
        tested += 1;
    }
    println!(
        "PASS metric coincidence: equality on {checked} classified pairs, \
         contraction on 10000 cross-combinations with zero violations"
    );
}
