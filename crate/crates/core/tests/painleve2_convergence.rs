//! Convergence and correctness checks for the ray integrator: fourth-order
//! self-convergence, agreement with the small-amplitude Airy solution of the
//! classical equation, linear response to the deformation parameter, and
//! pole detection.

mod common;

use common::{airy_ai, airy_ai_prime, c};
use qpii_core::{
    integrate, max_abs, trajectory_residual, PIIState, PiiError, RaySpec, SpectralParams,
    Stepping, C64,
};

const CBRT4: f64 = 1.587_401_051_968_199_5; // 4^(1/3)

fn smooth_arc_params() -> (PIIState, SpectralParams) {
    (
        PIIState {
            z: c(0.0, 0.0),
            f: c(0.4, 0.1),
            fp: c(-0.2, 0.0),
        },
        SpectralParams {
            lambda: c(1.0, 0.0),
            c: c(0.3, 0.1),
            hbar: 1.0,
        },
    )
}

fn ray(length: f64, stepping: Stepping) -> RaySpec {
    RaySpec {
        z0: c(0.0, 0.0),
        direction: c(1.0, 0.0),
        length,
        stepping,
    }
}

fn endpoint(stepping: Stepping) -> C64 {
    let (initial, sp) = smooth_arc_params();
    let traj = integrate(&initial, &ray(1.0, stepping), &sp).unwrap();
    traj.last().unwrap().f
}

/// Halving the step size on a smooth arc shrinks the endpoint error by
/// ~2^4: classical Runge-Kutta order, measured by Richardson comparison
/// against a 16x finer reference.
#[test]
fn fixed_step_is_fourth_order() {
    let reference = endpoint(Stepping::Fixed(12_800));
    let errs: Vec<f64> = [200usize, 400, 800]
        .iter()
        .map(|&n| (endpoint(Stepping::Fixed(n)) - reference).norm())
        .collect();
    assert!(errs[2] > 1e-14, "error too close to the floating-point floor");
    for pair in errs.windows(2) {
        let order = (pair[0] / pair[1]).log2();
        assert!(
            (order - 4.0).abs() <= 0.2,
            "measured order {order:.3} (errors {errs:?})"
        );
    }
}

/// The interior central-difference residual of a fixed-step trajectory is
/// second order in the spacing.
#[test]
fn trajectory_residual_is_second_order() {
    let (initial, sp) = smooth_arc_params();
    let res_at = |n: usize| {
        let traj = integrate(&initial, &ray(1.0, Stepping::Fixed(n)), &sp).unwrap();
        max_abs(&trajectory_residual(&traj, &sp).unwrap())
    };
    let (r1, r2) = (res_at(400), res_at(800));
    let order = (r1 / r2).log2();
    assert!(
        (order - 2.0).abs() <= 0.2,
        "measured residual order {order:.3} (residuals {r1:.3e}, {r2:.3e})"
    );
}

/// For c = 0, hbar = 0 and infinitesimal amplitude the equation linearizes
/// to f'' = -4 z f, solved by Ai(-4^(1/3) z). Integrating from z = -2 with
/// the Airy 1-jet reproduces the scaled Airy function along the arc.
#[test]
fn small_amplitude_limit_follows_airy() {
    let eps = 1e-4;
    let z0 = -2.0f64;
    let arg0 = -CBRT4 * z0;
    let initial = PIIState {
        z: c(z0, 0.0),
        f: c(eps * airy_ai(arg0), 0.0),
        fp: c(-eps * CBRT4 * airy_ai_prime(arg0), 0.0),
    };
    let sp = SpectralParams {
        lambda: c(1.0, 0.0),
        c: c(0.0, 0.0),
        hbar: 0.0,
    };
    let spec = RaySpec {
        z0: c(z0, 0.0),
        direction: c(1.0, 0.0),
        length: 2.0,
        stepping: Stepping::Fixed(2000),
    };
    let traj = integrate(&initial, &spec, &sp).unwrap();
    let f_scale = eps * airy_ai(0.0); // largest |f| on the arc
    let mut worst: f64 = 0.0;
    for s in &traj {
        let expect = eps * airy_ai(-CBRT4 * s.z.re);
        worst = worst.max((s.f - c(expect, 0.0)).norm() / f_scale);
    }
    assert!(
        worst <= 1e-4,
        "worst relative deviation from Airy: {worst:.3e}"
    );
    // The derivative tracks -4^(1/3) Ai' as well.
    let end = traj.last().unwrap();
    let expect_fp = -eps * CBRT4 * airy_ai_prime(0.0);
    assert!((end.fp - c(expect_fp, 0.0)).norm() / (eps * CBRT4) <= 1e-4);
}

/// Adaptive stepping reproduces the fixed-step reference endpoint at its
/// requested tolerance.
#[test]
fn adaptive_matches_fixed_reference() {
    let reference = endpoint(Stepping::Fixed(12_800));
    let adaptive = endpoint(Stepping::Adaptive { tol: 1e-10 });
    assert!(
        (adaptive - reference).norm() <= 1e-8,
        "|adaptive - reference| = {:.3e}",
        (adaptive - reference).norm()
    );
}

/// Adaptive output starts at the origin, ends at the ray tip, and uses
/// monotonically increasing arclength.
#[test]
fn adaptive_output_covers_the_ray() {
    let (initial, sp) = smooth_arc_params();
    let spec = ray(1.0, Stepping::Adaptive { tol: 1e-8 });
    let traj = integrate(&initial, &spec, &sp).unwrap();
    assert!((traj.first().unwrap().z - spec.z0).norm() < 1e-14);
    let tip = spec.z0 + spec.length * spec.direction;
    assert!((traj.last().unwrap().z - tip).norm() < 1e-10);
    for w in traj.windows(2) {
        assert!((w[1].z - w[0].z).re > 0.0, "arclength must increase");
    }
}

/// The endpoint responds linearly to small deformation parameter: the
/// deviation from the hbar = 0 trajectory halves when hbar halves.
#[test]
fn deformation_response_is_first_order_in_hbar() {
    let initial = PIIState {
        z: c(0.0, 0.0),
        f: c(0.3, 0.0),
        fp: c(0.1, 0.0),
    };
    let spec = ray(1.0, Stepping::Fixed(4000));
    let end_at = |hbar: f64| {
        let sp = SpectralParams {
            lambda: c(1.0, 0.0),
            c: c(0.2, 0.0),
            hbar,
        };
        integrate(&initial, &spec, &sp).unwrap().last().unwrap().f
    };
    let base = end_at(0.0);
    let d: Vec<f64> = [0.2, 0.1, 0.05]
        .iter()
        .map(|&h| (end_at(h) - base).norm())
        .collect();
    for pair in d.windows(2) {
        let ratio = pair[0] / pair[1];
        assert!(
            (ratio - 2.0).abs() <= 0.2,
            "deviation ratio {ratio:.3} (deviations {d:?})"
        );
    }
}

/// f = 0 with c = 0 is an exact fixed point for every hbar; the integrator
/// must preserve it to rounding.
#[test]
fn zero_solution_is_preserved() {
    for &hbar in &[0.0, 1.0] {
        let sp = SpectralParams {
            lambda: c(1.0, 0.0),
            c: c(0.0, 0.0),
            hbar,
        };
        let initial = PIIState {
            z: c(0.0, 0.0),
            f: c(0.0, 0.0),
            fp: c(0.0, 0.0),
        };
        let traj = integrate(&initial, &ray(2.0, Stepping::Fixed(500)), &sp).unwrap();
        for s in &traj {
            assert!(s.f.norm() <= 1e-14 && s.fp.norm() <= 1e-14);
        }
    }
}

/// Integrating into a movable pole reports a blow-up whose location matches
/// the 1/(z - z*) local model, for both stepping strategies.
#[test]
fn movable_pole_is_reported_as_blowup() {
    // f(z) ~ 1/(0.1 - z): f(0) = 10, f'(0) = 100, pole at z = 0.1.
    let initial = PIIState {
        z: c(0.0, 0.0),
        f: c(10.0, 0.0),
        fp: c(100.0, 0.0),
    };
    let sp = SpectralParams {
        lambda: c(1.0, 0.0),
        c: c(0.0, 0.0),
        hbar: 0.0,
    };
    for stepping in [Stepping::Fixed(100_000), Stepping::Adaptive { tol: 1e-9 }] {
        match integrate(&initial, &ray(0.5, stepping), &sp) {
            Err(PiiError::BlowUp { z_re, z_im }) => {
                assert!(
                    (0.05..0.2).contains(&z_re),
                    "pole reported at z_re = {z_re}"
                );
                assert!(z_im.abs() < 1e-6, "pole off the real axis: {z_im}");
            }
            other => panic!("expected blow-up, got {other:?}"),
        }
    }
}

#[test]
fn ray_validation_rejects_bad_specs() {
    let (initial, sp) = smooth_arc_params();
    let non_unit = RaySpec {
        direction: c(2.0, 0.0),
        ..ray(1.0, Stepping::Fixed(10))
    };
    assert!(matches!(
        integrate(&initial, &non_unit, &sp),
        Err(PiiError::BadRay { .. })
    ));

    let off_origin = PIIState {
        z: c(0.5, 0.0),
        ..initial
    };
    assert_eq!(
        integrate(&off_origin, &ray(1.0, Stepping::Fixed(10)), &sp),
        Err(PiiError::InitialPointOffRay)
    );
}

#[test]
fn residual_input_contracts() {
    let (initial, sp) = smooth_arc_params();
    let short = integrate(&initial, &ray(1.0, Stepping::Fixed(3)), &sp).unwrap();
    assert_eq!(
        trajectory_residual(&short, &sp),
        Err(PiiError::TooFewSamples)
    );

    let adaptive = integrate(&initial, &ray(1.0, Stepping::Adaptive { tol: 1e-6 }), &sp).unwrap();
    assert!(adaptive.len() >= 5);
    assert_eq!(
        trajectory_residual(&adaptive, &sp),
        Err(PiiError::NonUniformSpacing)
    );
}
