//! Exact solutions of three one-dimensional problems whose energy
//! conservation law reduces to the Weierstrass equation: the cubic
//! potential, the simple pendulum and the four hyperbolic forces.
//!
//! Every solver returns a [`MotionSolution`]: a classified trajectory with
//! its time offset, its period (or time of flight) and an evaluator. Outside
//! the window in which the particle is at finite distance the evaluator
//! answers [`TrajectoryPoint::Scattered`] instead of a huge number.

mod cubic;
mod hyperbolic;
mod pendulum;

pub use cubic::{cubic_inverted_periods, cubic_solve, reflection_map, CubicProblem};
pub use hyperbolic::{
    classify_hyperbolic, hyperbolic_solve, HyperbolicProblem, Incoming, RootAssignment,
};
pub use pendulum::{pendulum_roots, pendulum_solve, PendulumProblem};

use crate::invariants::RootKind;
use crate::scalar::{Cx, Real};
use crate::weierstrass::EllipticContext;

/// Which of the two real solutions of the Weierstrass equation is used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `℘(t − t0)`: ranges over `[e1, ∞)` (or `[e2, ∞)` with one real root).
    Unbounded,
    /// `℘(t − t0 + ω2)`: oscillates in `[e3, e2]`; needs three real roots.
    Bounded,
}

impl Branch {
    pub fn name(self) -> &'static str {
        match self {
            Branch::Unbounded => "unbounded",
            Branch::Bounded => "bounded",
        }
    }
}

/// State of the particle at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TrajectoryPoint<T> {
    State {
        position: T,
        velocity: T,
    },
    /// The particle is at infinity (outside the time window of the solution).
    Scattered,
}

impl<T: Real> TrajectoryPoint<T> {
    pub fn position(&self) -> Option<T> {
        match *self {
            TrajectoryPoint::State { position, .. } => Some(position),
            TrajectoryPoint::Scattered => None,
        }
    }

    pub fn velocity(&self) -> Option<T> {
        match *self {
            TrajectoryPoint::State { velocity, .. } => Some(velocity),
            TrajectoryPoint::Scattered => None,
        }
    }
}

#[derive(Debug, Clone)]
enum Law<T> {
    Cubic(cubic::Law<T>),
    Pendulum(pendulum::Law<T>),
    Hyperbolic(hyperbolic::Law<T>),
}

/// A classified, evaluable trajectory.
#[derive(Debug, Clone)]
pub struct MotionSolution<T> {
    pub branch: Branch,
    /// Complex constant added to `t − t0` inside `℘`.
    pub shift: Cx<T>,
    pub t0: T,
    /// Period of a periodic motion, or time of flight of a scattering one;
    /// `+∞` at the separatrices.
    pub period_or_tof: T,
    /// Open interval of times at which the particle is at finite distance.
    pub window: (T, T),
    law: Law<T>,
}

impl<T: Real> MotionSolution<T> {
    /// Position and velocity at time `t`.
    pub fn state(&self, t: T) -> TrajectoryPoint<T> {
        if !(t > self.window.0 && t < self.window.1) {
            return TrajectoryPoint::Scattered;
        }
        let tau = t - self.t0;
        let state = match &self.law {
            Law::Cubic(l) => l.state(tau),
            Law::Pendulum(l) => l.state(tau),
            Law::Hyperbolic(l) => l.state(tau),
        };
        match state {
            Some((position, velocity)) if position.is_finite() && velocity.is_finite() => {
                TrajectoryPoint::State { position, velocity }
            }
            _ => TrajectoryPoint::Scattered,
        }
    }

    pub fn position(&self, t: T) -> Option<T> {
        self.state(t).position()
    }

    /// Conserved energy of an arbitrary state, in the normalization of the
    /// problem (`ẋ² + V` for the cubic, `½ẋ² + V` otherwise).
    pub fn energy_of(&self, position: T, velocity: T) -> T {
        match &self.law {
            Law::Cubic(l) => l.energy_of(position, velocity),
            Law::Pendulum(l) => l.energy_of(position, velocity),
            Law::Hyperbolic(l) => l.energy_of(position, velocity),
        }
    }

    /// The energy constant of the problem.
    pub fn energy(&self) -> T {
        match &self.law {
            Law::Cubic(l) => l.energy,
            Law::Pendulum(l) => l.energy,
            Law::Hyperbolic(l) => l.energy,
        }
    }

    /// Right-hand side of the equation of motion, `ẍ = F(x)`.
    pub fn acceleration(&self, position: T) -> T {
        match &self.law {
            Law::Cubic(l) => l.acceleration(position),
            Law::Pendulum(l) => l.acceleration(position),
            Law::Hyperbolic(l) => l.acceleration(position),
        }
    }

    /// `energy_of(state(t)) − E`, or `None` when scattered.
    pub fn energy_residual(&self, t: T) -> Option<T> {
        match self.state(t) {
            TrajectoryPoint::State { position, velocity } => {
                Some(self.energy_of(position, velocity) - self.energy())
            }
            TrajectoryPoint::Scattered => None,
        }
    }
}

/// Real period of `℘` on the real axis.
pub fn real_period<T: Real>(ctx: &EllipticContext<T>) -> T {
    let hp = ctx.half_periods();
    let two = T::lit(2.0);
    match ctx.kind() {
        RootKind::ThreeReal | RootKind::DoubleSmaller => two * hp.omega1.re,
        RootKind::OneReal => two * hp.omega3.re,
        RootKind::DoubleLarger | RootKind::Triple => T::infinity(),
    }
}

/// Length of the shortest purely imaginary period.
pub fn imaginary_period<T: Real>(ctx: &EllipticContext<T>) -> T {
    let hp = ctx.half_periods();
    let two = T::lit(2.0);
    match ctx.kind() {
        RootKind::ThreeReal | RootKind::DoubleLarger => two * hp.omega2.im.abs(),
        RootKind::OneReal => two * (hp.omega2 - hp.omega1).im.abs(),
        RootKind::DoubleSmaller | RootKind::Triple => T::infinity(),
    }
}

fn check_finite<T: Real>(x: T, what: &'static str) -> crate::Result<T> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(crate::Error::NonFinite(what))
    }
}

fn check_positive<T: Real>(x: T, what: &'static str) -> crate::Result<T> {
    if check_finite(x, what)? > T::zero() {
        Ok(x)
    } else {
        Err(crate::Error::InvalidParameter(format!(
            "{what} must be positive"
        )))
    }
}
