//! The simple pendulum `θ̈ = −ω² sin θ`, with `½θ̇² − ω² cos θ = E`.
//!
//! The substitution `−ω² cos θ = 2y + E/3` turns energy conservation into
//! the Weierstrass equation with
//!
//! ```text
//! g2 = E²/3 + ω⁴,   g3 = (E/3)(E²/9 − ω⁴),
//! roots x1 = E/3,  x2 = −E/6 + ω²/2,  x3 = −E/6 − ω²/2.
//! ```
//!
//! Only the bounded solution `y = ℘(t − t0 + ω2)` gives a real angle. The
//! angle is rebuilt from half-angle formulas,
//! `sin²(θ/2) = (y − x3)/ω²` and `cos²(θ/2) = (x2 − y)/ω²`, with each gap
//! `y − e` evaluated without cancellation so that `θ` keeps full relative
//! accuracy at the turning points.

use crate::error::{Error, Result};
use crate::invariants::{Invariants, RootKind};
use crate::scalar::{real, Cx, Real};
use crate::weierstrass::{EllipticContext, HalfPeriod};

use super::{check_finite, check_positive, Branch, Law as AnyLaw, MotionSolution};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PendulumProblem<T> {
    /// Small-oscillation angular frequency.
    pub omega: T,
    pub energy: T,
}

impl<T: Real> PendulumProblem<T> {
    pub fn new(omega: T, energy: T) -> Result<Self> {
        Ok(Self {
            omega: check_positive(omega, "omega")?,
            energy: check_finite(energy, "E")?,
        })
    }

    pub fn invariants(&self) -> Result<Invariants<T>> {
        let (e, w4) = (self.energy, self.omega.powi(4));
        let three = T::lit(3.0);
        Invariants::new(e * e / three + w4, e / three * (e * e / T::lit(9.0) - w4))
    }

    pub fn potential(&self, theta: T) -> T {
        -self.omega * self.omega * theta.cos()
    }
}

/// The roots `(x1, x2, x3)` in closed form; always real.
pub fn pendulum_roots<T: Real>(p: &PendulumProblem<T>) -> (T, T, T) {
    let (e, w2) = (p.energy, p.omega * p.omega);
    let half = T::lit(0.5);
    (
        e / T::lit(3.0),
        -e / T::lit(6.0) + half * w2,
        -e / T::lit(6.0) - half * w2,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Regime {
    /// `E = −ω²`: resting at the stable equilibrium.
    Rest,
    Oscillating,
    /// `E = ω²`: the separatrix, reaching the unstable equilibrium as
    /// `t → ∞`.
    Separatrix,
    Rotating,
}

#[derive(Debug, Clone)]
pub(super) struct Law<T> {
    ctx: EllipticContext<T>,
    regime: Regime,
    omega: T,
    omega1: T,
    shift: Cx<T>,
    pub(super) energy: T,
}

fn parity<T: Real>(k: T) -> T {
    if (k.to_i64().unwrap_or(0)).rem_euclid(2) == 0 {
        T::one()
    } else {
        -T::one()
    }
}

impl<T: Real> Law<T> {
    pub(super) fn state(&self, tau: T) -> Option<(T, T)> {
        let two = T::lit(2.0);
        let w = self.omega;
        match self.regime {
            Regime::Rest => Some((T::zero(), T::zero())),
            Regime::Separatrix => {
                let u = w * tau;
                Some((two * u.sinh().atan(), two * w / u.cosh()))
            }
            Regime::Oscillating | Regime::Rotating => {
                let z = real(tau) + self.shift;
                let gap = |h: HalfPeriod| self.ctx.wp_gap(z, h).ok().map(|g| g.re);
                let w2 = w * w;
                // Roots at (ω1, ω3): (x2, x1) when oscillating, (x1, x2) when
                // rotating; x3 always sits at ω2.
                let (at_x1, at_x2) = match self.regime {
                    Regime::Oscillating => (HalfPeriod::Three, HalfPeriod::One),
                    _ => (HalfPeriod::One, HalfPeriod::Three),
                };
                let sin2 = (gap(HalfPeriod::Two)? / w2).max(T::zero());
                let cos2 = (-gap(at_x2)? / w2).max(T::zero());
                let phi = two * sin2.sqrt().atan2(cos2.sqrt());
                let speed = two * (-gap(at_x1)?).max(T::zero()).sqrt();
                let w1 = self.omega1;
                if self.regime == Regime::Oscillating {
                    let theta = parity((tau / (two * w1)).floor()) * phi;
                    let sign = parity(((tau + w1) / (two * w1)).floor());
                    Some((theta, sign * speed))
                } else {
                    let turns = (tau / (two * w1) + T::lit(0.5)).floor();
                    let theta = parity((tau / w1).floor()) * phi + two * T::PI() * turns;
                    Some((theta, speed))
                }
            }
        }
    }

    pub(super) fn energy_of(&self, theta: T, v: T) -> T {
        T::lit(0.5) * v * v - self.omega * self.omega * theta.cos()
    }

    pub(super) fn acceleration(&self, theta: T) -> T {
        -self.omega * self.omega * theta.sin()
    }
}

/// Solves the pendulum with `θ(t0) = 0` and `θ̇(t0) > 0`.
///
/// The period is `4ω1` for oscillations and `2ω1` (the time of one turn)
/// for rotations; it diverges on the separatrix `E = ω²`.
pub fn pendulum_solve<T: Real>(p: &PendulumProblem<T>, t0: T) -> Result<MotionSolution<T>> {
    let t0 = check_finite(t0, "t0")?;
    let w2 = p.omega * p.omega;
    if p.energy < -w2 {
        return Err(Error::BelowMinimumEnergy {
            energy: p.energy.to_f64_lossy(),
            minimum: -w2.to_f64_lossy(),
        });
    }
    let ctx = EllipticContext::new(p.invariants()?)?;
    let regime = match ctx.kind() {
        RootKind::DoubleSmaller => Regime::Rest,
        RootKind::DoubleLarger => Regime::Separatrix,
        RootKind::ThreeReal if p.energy < w2 => Regime::Oscillating,
        RootKind::ThreeReal => Regime::Rotating,
        RootKind::OneReal | RootKind::Triple => {
            return Err(Error::NoRealSolution(
                "pendulum roots are always real".into(),
            ));
        }
    };
    let omega1 = ctx.half_periods().omega1.re;
    let period = match regime {
        Regime::Rest | Regime::Oscillating => T::lit(4.0) * omega1,
        Regime::Rotating => T::lit(2.0) * omega1,
        Regime::Separatrix => T::infinity(),
    };
    let shift = match regime {
        Regime::Oscillating | Regime::Rotating => ctx.omega(HalfPeriod::Two),
        _ => real(T::zero()),
    };
    Ok(MotionSolution {
        branch: Branch::Bounded,
        shift,
        t0,
        period_or_tof: period,
        window: (T::neg_infinity(), T::infinity()),
        law: AnyLaw::Pendulum(Law {
            ctx,
            regime,
            omega: p.omega,
            omega1,
            shift,
            energy: p.energy,
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn roots_examples() {
        let p = PendulumProblem::new(1.0_f64, 0.0).unwrap();
        assert_eq!(pendulum_roots(&p), (0.0, 0.5, -0.5));
        let p = PendulumProblem::new(2.0_f64, 4.0).unwrap();
        let (x1, x2, _) = pendulum_roots(&p);
        assert!((x1 - x2).abs() < 1e-15 && (x1 - 4.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn below_minimum_is_rejected() {
        let p = PendulumProblem::new(1.0_f64, -1.5).unwrap();
        assert!(matches!(
            pendulum_solve(&p, 0.0),
            Err(Error::BelowMinimumEnergy { .. })
        ));
    }

    #[test]
    fn rest_and_separatrix() {
        let s = pendulum_solve(&PendulumProblem::new(1.5_f64, -2.25).unwrap(), 0.0).unwrap();
        assert_eq!(s.position(3.0), Some(0.0));
        assert!((s.period_or_tof - 2.0 * PI / 1.5).abs() < 1e-12);

        let s = pendulum_solve(&PendulumProblem::new(1.5_f64, 2.25).unwrap(), 0.0).unwrap();
        assert!(s.period_or_tof.is_infinite());
        for t in [-1.0, 0.3, 2.0] {
            let c = s.position(t).unwrap().cos();
            assert!((c - (-1.0 + 2.0 / (1.5 * t).cosh().powi(2))).abs() < 1e-14);
        }
    }

    #[test]
    fn oscillation_amplitude_and_normalization() {
        let (w, e) = (1.3_f64, 0.4);
        let s = pendulum_solve(&PendulumProblem::new(w, e).unwrap(), 0.0).unwrap();
        let st = s.state(0.0);
        assert!(st.position().unwrap().abs() < 1e-12 && st.velocity().unwrap() > 0.0);
        let amplitude = s.position(s.period_or_tof / 4.0).unwrap();
        assert!((amplitude - (PI - (e / (w * w)).acos())).abs() < 1e-10);
        let back = s.position(s.period_or_tof).unwrap();
        assert!(back.abs() < 1e-9);
    }

    #[test]
    fn rotation_advances_by_two_pi() {
        let s = pendulum_solve(&PendulumProblem::new(1.0_f64, 3.0).unwrap(), 0.0).unwrap();
        let a = s.position(0.37).unwrap();
        let b = s.position(0.37 + s.period_or_tof).unwrap();
        assert!((b - a - 2.0 * PI).abs() < 1e-10);
        assert!(s.state(1.1).velocity().unwrap() > 0.0);
    }
}
