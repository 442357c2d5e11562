//! Particle in the cubic potential `V(x) = −4x³ − F0·x`, with energy
//! conservation `ẋ² = 4x³ + F0·x + E`: the Weierstrass equation with
//! `g2 = −F0`, `g3 = −E`.

use crate::error::{Error, Result};
use crate::invariants::{CubicRoots, Invariants, RootKind};
use crate::scalar::{real, Cx, Real};
use crate::weierstrass::{EllipticContext, HalfPeriod};

use super::{check_finite, imaginary_period, real_period, Branch, Law as AnyLaw, MotionSolution};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicProblem<T> {
    /// Linear force constant `F0`.
    pub f0: T,
    pub energy: T,
}

impl<T: Real> CubicProblem<T> {
    pub fn new(f0: T, energy: T) -> Result<Self> {
        Ok(Self {
            f0: check_finite(f0, "F0")?,
            energy: check_finite(energy, "E")?,
        })
    }

    pub fn invariants(&self) -> Result<Invariants<T>> {
        Invariants::new(-self.f0, -self.energy)
    }

    pub fn context(&self) -> Result<EllipticContext<T>> {
        EllipticContext::new(self.invariants()?)
    }

    /// `E0 = (−F0/3)^{3/2}`: the energies `±E0` of the two extrema, when
    /// `F0 < 0`.
    pub fn critical_energy(&self) -> Option<T> {
        (self.f0 < T::zero()).then(|| (-self.f0 / T::lit(3.0)).powf(T::lit(1.5)))
    }

    pub fn potential(&self, x: T) -> T {
        -T::lit(4.0) * x * x * x - self.f0 * x
    }
}

#[derive(Debug, Clone)]
pub(super) struct Law<T> {
    ctx: Option<EllipticContext<T>>,
    shift: Cx<T>,
    /// Position of a particle resting at the local minimum.
    rest: T,
    f0: T,
    pub(super) energy: T,
}

impl<T: Real> Law<T> {
    pub(super) fn state(&self, tau: T) -> Option<(T, T)> {
        let Some(ctx) = &self.ctx else {
            return Some((self.rest, T::zero()));
        };
        let v = ctx.values(real(tau) + self.shift).ok()?;
        Some((v.wp.re, v.wp_prime.re))
    }

    pub(super) fn energy_of(&self, x: T, v: T) -> T {
        v * v - T::lit(4.0) * x * x * x - self.f0 * x
    }

    pub(super) fn acceleration(&self, x: T) -> T {
        T::lit(6.0) * x * x + self.f0 / T::lit(2.0)
    }
}

/// Solves the cubic problem on the requested branch.
///
/// The unbounded solution `x = ℘(t − t0)` comes in from infinity at `t0` and
/// returns after the time of flight `2ω1`; the bounded one,
/// `x = ℘(t − t0 + ω2)`, sits at its minimum `e3` at `t0` and oscillates
/// with the same period `2ω1`. At `E = −E0` the bounded motion is the rest
/// point at the bottom of the well.
pub fn cubic_solve<T: Real>(
    p: &CubicProblem<T>,
    branch: Branch,
    t0: T,
) -> Result<MotionSolution<T>> {
    let t0 = check_finite(t0, "t0")?;
    let ctx = p.context()?;
    let kind = ctx.kind();
    let zero = real(T::zero());
    let law = |ctx: Option<EllipticContext<T>>, shift: Cx<T>, rest: T| {
        AnyLaw::Cubic(Law {
            ctx,
            shift,
            rest,
            f0: p.f0,
            energy: p.energy,
        })
    };
    let period = real_period(&ctx);
    match branch {
        Branch::Unbounded => Ok(MotionSolution {
            branch,
            shift: zero,
            t0,
            period_or_tof: period,
            window: (t0, t0 + period),
            law: law(Some(ctx), zero, T::zero()),
        }),
        Branch::Bounded => match kind {
            RootKind::OneReal | RootKind::Triple => Err(Error::NoBoundedBranch),
            RootKind::DoubleSmaller => {
                let rest = ctx.roots().e2.re;
                Ok(MotionSolution {
                    branch,
                    shift: zero,
                    t0,
                    period_or_tof: period,
                    window: (T::neg_infinity(), T::infinity()),
                    law: law(None, zero, rest),
                })
            }
            RootKind::ThreeReal | RootKind::DoubleLarger => {
                let shift = ctx.omega(HalfPeriod::Two);
                Ok(MotionSolution {
                    branch,
                    shift,
                    t0,
                    period_or_tof: period,
                    window: (T::neg_infinity(), T::infinity()),
                    law: law(Some(ctx), shift, T::zero()),
                })
            }
        },
    }
}

/// Physical meaning of the imaginary period.
///
/// Returns `(|imaginary period at E|, real period at −E)`. The two agree:
/// `℘(iz; g2, g3) = −℘(z; g2, −g3)`, so the imaginary period is the time of
/// flight (or period) in the inverted potential, which is the original one
/// reflected.
pub fn cubic_inverted_periods<T: Real>(p: &CubicProblem<T>) -> Result<(T, T)> {
    let here = p.context()?;
    let inverted = CubicProblem::new(p.f0, -p.energy)?.context()?;
    Ok((imaginary_period(&here), real_period(&inverted)))
}

/// The discrete symmetry `x ↦ e3 + (e3 − e1)(e3 − e2)/(x − e3)` of the
/// energy equation, which exchanges `[e1, ∞)` with `[e3, e2]`.
pub fn reflection_map<T: Real>(roots: &CubicRoots<T>, x: T) -> T {
    let (e1, e2, e3) = (roots.e1.re, roots.e2.re, roots.e3.re);
    e3 + (e3 - e1) * (e3 - e2) / (x - e3)
}
