use std::f64::consts::PI;

use wkit::mechanics::{
    classify_hyperbolic, cubic_inverted_periods, cubic_solve, hyperbolic_solve, pendulum_roots,
    pendulum_solve, reflection_map, Branch, CubicProblem, HyperbolicProblem, Incoming,
    PendulumProblem, TrajectoryPoint,
};
use wkit::{EllipticContext64, Error, RootKind};

#[test]
fn cubic_small_oscillation_limit() {
    let f0 = -3.0_f64;
    let p = CubicProblem::<f64>::new(f0, -1.0 + 1e-6).unwrap();
    let s = cubic_solve(&p, Branch::Bounded, 0.0).unwrap();
    let small = 2.0 * PI / (-12.0 * f0).powf(0.25);
    assert!((s.period_or_tof - small).abs() < 1e-5 * small);
}

#[test]
fn cubic_unbounded_is_a_single_flight() {
    let s = cubic_solve(
        &CubicProblem::<f64>::new(-3.0, 0.5).unwrap(),
        Branch::Unbounded,
        1.0,
    )
    .unwrap();
    assert_eq!(s.window, (1.0, 1.0 + s.period_or_tof));
    assert_eq!(s.state(0.99), TrajectoryPoint::Scattered);
    assert_eq!(
        s.state(1.0 + s.period_or_tof + 0.01),
        TrajectoryPoint::Scattered
    );
    let mid = s.state(1.0 + s.period_or_tof / 2.0);
    assert!(mid.velocity().unwrap().abs() < 1e-8);
    let roots = *s_context(-3.0, 0.5).roots();
    assert!((mid.position().unwrap() - roots.e1.re).abs() < 1e-10);
}

fn s_context(f0: f64, e: f64) -> EllipticContext64 {
    CubicProblem::<f64>::new(f0, e).unwrap().context().unwrap()
}

#[test]
fn cubic_bounded_oscillates_between_e3_and_e2() {
    let s = cubic_solve(
        &CubicProblem::<f64>::new(-3.0, 0.5).unwrap(),
        Branch::Bounded,
        0.0,
    )
    .unwrap();
    let roots = *s_context(-3.0, 0.5).roots();
    assert!((s.position(0.0).unwrap() - roots.e3.re).abs() < 1e-12);
    assert!((s.position(s.period_or_tof / 2.0).unwrap() - roots.e2.re).abs() < 1e-10);
}

#[test]
fn cubic_inverted_potential_periods() {
    let (a, b) = cubic_inverted_periods(&CubicProblem::<f64>::new(-3.0, 0.0).unwrap()).unwrap();
    assert!((a - b).abs() < 1e-12 * a);
    let (a, b) = cubic_inverted_periods(&CubicProblem::<f64>::new(-3.0, 0.5).unwrap()).unwrap();
    assert!((a - b).abs() < 1e-11 * a);
}

#[test]
fn reflection_preserves_energy_equation() {
    let (f0, e) = (-3.0, 0.5);
    let s = cubic_solve(
        &CubicProblem::<f64>::new(f0, e).unwrap(),
        Branch::Unbounded,
        0.0,
    )
    .unwrap();
    let roots = *s_context(f0, e).roots();
    let h = 1e-5;
    for t in [0.4, 0.9, 1.3] {
        let y = |t: f64| reflection_map(&roots, s.position(t).unwrap());
        let v = (y(t + h) - y(t - h)) / (2.0 * h);
        let x = y(t);
        let residual = v * v - (4.0 * x * x * x + f0 * x + e);
        assert!(residual.abs() < 1e-7, "t = {t}: {residual}");
    }
}

#[test]
fn pendulum_root_table() {
    let (x1, x2, x3) = pendulum_roots(&PendulumProblem::<f64>::new(1.0, -1.0).unwrap());
    for (got, want) in [(x1, -1.0 / 3.0), (x2, 2.0 / 3.0), (x3, -1.0 / 3.0)] {
        assert!((got - want).abs() < 1e-15);
    }
    let ctx = EllipticContext64::new(
        PendulumProblem::<f64>::new(1.0, -1.0)
            .unwrap()
            .invariants()
            .unwrap(),
    )
    .unwrap();
    assert_eq!(ctx.kind(), RootKind::DoubleSmaller);
    let ctx = EllipticContext64::new(
        PendulumProblem::<f64>::new(1.0, 1.0)
            .unwrap()
            .invariants()
            .unwrap(),
    )
    .unwrap();
    assert_eq!(ctx.kind(), RootKind::DoubleLarger);
}

#[test]
fn pendulum_is_odd_in_time_and_bounded() {
    let (w, e) = (1.0, 0.5);
    let s = pendulum_solve(&PendulumProblem::<f64>::new(w, e).unwrap(), 0.0).unwrap();
    let amplitude = PI - (e / (w * w)).acos();
    for j in 0..50 {
        let t = 0.37 * j as f64;
        let (a, b) = (s.position(t).unwrap(), s.position(-t).unwrap());
        assert!((a + b).abs() < 1e-12);
        assert!(a.abs() <= amplitude + 1e-12);
    }
}

#[test]
fn pendulum_rejects_bad_input() {
    assert!(matches!(
        PendulumProblem::<f64>::new(0.0, 1.0),
        Err(Error::InvalidParameter(_))
    ));
    assert!(matches!(
        PendulumProblem::<f64>::new(1.0, f64::NAN),
        Err(Error::NonFinite(_))
    ));
    let err = pendulum_solve(&PendulumProblem::<f64>::new(1.0, -2.0).unwrap(), 0.0).unwrap_err();
    assert_eq!(
        err,
        Error::BelowMinimumEnergy {
            energy: -2.0,
            minimum: -1.0
        }
    );
}

#[test]
fn hyperbolic_table_assignments() {
    let a = classify_hyperbolic(&HyperbolicProblem::<f64>::new(1.0, 1, 1, 0.7).unwrap());
    assert_eq!(a.e_from_x, [2, 1, 3]);
    let a = classify_hyperbolic(&HyperbolicProblem::<f64>::new(1.0, -1, -1, 0.3).unwrap());
    assert_eq!(a.kind, RootKind::OneReal);
    assert_eq!(a.e_from_x[1], 1);
    let a = classify_hyperbolic(&HyperbolicProblem::<f64>::new(1.0, 1, -1, 2.0).unwrap());
    assert_eq!((a.kind, a.e_from_x), (RootKind::ThreeReal, [1, 2, 3]));
}

#[test]
fn hyperbolic_extrema_are_opposite() {
    let (w, e) = (1.0_f64, 2.0);
    let p = HyperbolicProblem::<f64>::new(w, 1, -1, e).unwrap();
    let ctx = EllipticContext64::new(p.invariants().unwrap()).unwrap();
    let r = ctx.roots();
    let lo = (4.0 * (r.e1.re - r.e2.re) / (w * w)).ln();
    let hi = (4.0 * (r.e1.re - r.e3.re) / (w * w)).ln();
    assert!((lo + hi).abs() < 1e-12);
    let s = hyperbolic_solve(&p, 0.0).unwrap();
    let samples: Vec<f64> = (0..400)
        .map(|j| s.position(s.period_or_tof * j as f64 / 400.0).unwrap())
        .collect();
    let max = samples.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    assert!((max - hi.abs()).abs() < 1e-3);
}

#[test]
fn hyperbolic_transmission_is_odd() {
    for e in [0.3, -0.4, 2.0] {
        for incoming in [Incoming::Right, Incoming::Left] {
            let p = HyperbolicProblem::<f64>::new(1.0, -1, -1, e)
                .unwrap()
                .with_incoming(incoming);
            let s = hyperbolic_solve(&p, 0.0).unwrap();
            if s.branch != Branch::Unbounded || !s.window.0.is_finite() || s.window.0 != -s.window.1
            {
                continue;
            }
            for t in [0.1, 0.3, 0.45 * s.window.1] {
                let (a, b) = (s.position(t).unwrap(), s.position(-t).unwrap());
                assert!((a + b).abs() < 1e-9 * (1.0 + a.abs()), "E = {e}, t = {t}");
            }
        }
    }
}

#[test]
fn hyperbolic_equilibrium_limit() {
    let s = hyperbolic_solve(
        &HyperbolicProblem::<f64>::new(1.5, 1, -1, 2.25).unwrap(),
        0.0,
    )
    .unwrap();
    assert_eq!(s.position(0.7), Some(0.0));
    assert!((s.period_or_tof - 2.0 * PI / 1.5).abs() < 1e-12);
}

#[test]
fn hyperbolic_no_real_solution() {
    let p = HyperbolicProblem::<f64>::new(1.0, 1, -1, 0.5).unwrap();
    assert!(matches!(
        hyperbolic_solve(&p, 0.0),
        Err(Error::NoRealSolution(_))
    ));
    assert!(matches!(
        HyperbolicProblem::<f64>::new(1.0, 2, 1, 0.5),
        Err(Error::InvalidParameter(_))
    ));
}
