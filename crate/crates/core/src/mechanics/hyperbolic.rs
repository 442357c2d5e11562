//! The four hyperbolic forces `ẍ = −sω²(eˣ + τe⁻ˣ)/2` (`s, τ = ±1`), with
//! `½ẋ² + V = E`, `V = sω²(eˣ − τe⁻ˣ)/2`.
//!
//! The substitution `−s(ω²/2)eˣ = 2y − E/3` gives the Weierstrass equation
//! with
//!
//! ```text
//! g2 = E²/3 + τω⁴/4,   g3 = −(E/3)(E²/9 + τω⁴/8),
//! roots x1 = E/6,  x2,3 = −E/12 ± ¼√(E² + τω⁴),
//! ```
//!
//! and every solution reads `x(t) = ln[−s(4/ω²)(℘(t − t0 + z) − x1)]` for a
//! suitable complex shift `z`.

use crate::error::{Error, Result};
use crate::invariants::{Invariants, RootKind};
use crate::scalar::{cx, real, Cx, Real};
use crate::weierstrass::{EllipticContext, HalfPeriod};

use super::{check_finite, check_positive, Branch, Law as AnyLaw, MotionSolution};

/// Side from which a scattering particle arrives (only matters for
/// `s = τ = −1`, where the barrier can be approached from either side).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Incoming {
    #[default]
    Right,
    Left,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperbolicProblem<T> {
    pub omega: T,
    pub sign_s: i8,
    pub sign_tau: i8,
    pub energy: T,
    pub incoming: Incoming,
}

impl<T: Real> HyperbolicProblem<T> {
    pub fn new(omega: T, sign_s: i8, sign_tau: i8, energy: T) -> Result<Self> {
        for (name, v) in [("sign_s", sign_s), ("sign_tau", sign_tau)] {
            if v != 1 && v != -1 {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be +1 or -1, got {v}"
                )));
            }
        }
        Ok(Self {
            omega: check_positive(omega, "omega")?,
            sign_s,
            sign_tau,
            energy: check_finite(energy, "E")?,
            incoming: Incoming::Right,
        })
    }

    pub fn with_incoming(self, incoming: Incoming) -> Self {
        Self { incoming, ..self }
    }

    fn s(&self) -> T {
        T::lit(self.sign_s as f64)
    }

    fn tau(&self) -> T {
        T::lit(self.sign_tau as f64)
    }

    pub fn invariants(&self) -> Result<Invariants<T>> {
        let (e, w4, tau) = (self.energy, self.omega.powi(4), self.tau());
        let three = T::lit(3.0);
        Invariants::new(
            e * e / three + tau * w4 / T::lit(4.0),
            -e / three * (e * e / T::lit(9.0) + tau * w4 / T::lit(8.0)),
        )
    }

    /// The roots `[x1, x2, x3]` in closed form (`x2`, `x3` complex when
    /// `τ = −1` and `|E| < ω²`).
    pub fn roots(&self) -> [Cx<T>; 3] {
        let e = self.energy;
        let disc = e * e + self.tau() * self.omega.powi(4);
        let r = disc.abs().sqrt() / T::lit(4.0);
        let d = if disc >= T::zero() {
            real(r)
        } else {
            cx(T::zero(), r)
        };
        let base = real(-e / T::lit(12.0));
        [real(e / T::lit(6.0)), base + d, base - d]
    }

    pub fn potential(&self, x: T) -> T {
        self.s() * self.omega * self.omega / T::lit(2.0) * (x.exp() - self.tau() * (-x).exp())
    }
}

/// A row of the root-ordering table: reality of the roots and which `xᵢ`
/// plays the role of each ordered root.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RootAssignment {
    pub kind: RootKind,
    /// `e_from_x[j] = i` means `e_{j+1} = x_i`.
    pub e_from_x: [u8; 3],
}

/// Assigns the closed-form roots to the ordered roots `e1, e2, e3`.
pub fn classify_hyperbolic<T: Real>(p: &HyperbolicProblem<T>) -> RootAssignment {
    let w2 = p.omega * p.omega;
    let e = p.energy;
    let (kind, e_from_x) = if p.sign_tau > 0 {
        (RootKind::ThreeReal, [2, 1, 3])
    } else if e > w2 {
        (RootKind::ThreeReal, [1, 2, 3])
    } else if e == w2 {
        (RootKind::DoubleSmaller, [1, 2, 3])
    } else if e > -w2 {
        (RootKind::OneReal, [2, 1, 3])
    } else if e == -w2 {
        (RootKind::DoubleLarger, [2, 3, 1])
    } else {
        (RootKind::ThreeReal, [2, 3, 1])
    };
    RootAssignment { kind, e_from_x }
}

#[derive(Debug, Clone)]
pub(super) struct Law<T> {
    ctx: Option<EllipticContext<T>>,
    /// Half-period whose root is `x1 = E/6`.
    anchor: HalfPeriod,
    shift: Cx<T>,
    s: T,
    tau: T,
    omega: T,
    pub(super) energy: T,
}

impl<T: Real> Law<T> {
    pub(super) fn state(&self, t: T) -> Option<(T, T)> {
        let Some(ctx) = &self.ctx else {
            return Some((T::zero(), T::zero()));
        };
        let z = real(t) + self.shift;
        let gap = ctx.wp_gap(z, self.anchor).ok()?.re;
        let dp = ctx.wp_prime(z).ok()?.re;
        let arg = -self.s * T::lit(4.0) * gap / (self.omega * self.omega);
        if arg.is_nan() || arg <= T::zero() {
            return None;
        }
        Some((arg.ln(), dp / gap))
    }

    pub(super) fn energy_of(&self, x: T, v: T) -> T {
        let half = T::lit(0.5);
        half * v * v + self.s * self.omega * self.omega * half * (x.exp() - self.tau * (-x).exp())
    }

    pub(super) fn acceleration(&self, x: T) -> T {
        -self.s * self.omega * self.omega * (x.exp() + self.tau * (-x).exp()) / T::lit(2.0)
    }
}

/// Solves a hyperbolic-force problem.
///
/// The time origin `t0` is the instant of closest approach for reflections,
/// the extremal position for oscillations and bounded reflections, and the
/// crossing of `x = 0` for transmissions. Scattering solutions are defined
/// on a single time-of-flight window around `t0`.
pub fn hyperbolic_solve<T: Real>(p: &HyperbolicProblem<T>, t0: T) -> Result<MotionSolution<T>> {
    let t0 = check_finite(t0, "t0")?;
    let ctx = EllipticContext::new(p.invariants()?)?;
    let kind = ctx.kind();
    let hp = *ctx.half_periods();
    let (w1, w2, w3) = (hp.omega1, hp.omega2, hp.omega3);
    let half = T::lit(0.5);
    let inf = T::infinity();
    let zero = real(T::zero());

    // (branch, shift, window relative to t0, period or time of flight)
    let (branch, shift, window, period) = match (p.sign_s, p.sign_tau, kind) {
        (-1, 1, _) => (Branch::Unbounded, w1, (-w1.re, w1.re), T::lit(2.0) * w1.re),
        (1, 1, _) => (Branch::Bounded, w2, (-w1.re, w1.re), T::lit(2.0) * w1.re),
        (-1, -1, RootKind::ThreeReal) if p.energy < T::zero() => {
            let shift = if p.incoming == Incoming::Right {
                w1
            } else {
                w3
            };
            let branch = if p.incoming == Incoming::Right {
                Branch::Unbounded
            } else {
                Branch::Bounded
            };
            (branch, shift, (-w1.re, w1.re), T::lit(2.0) * w1.re)
        }
        // E = −ω²: the half-period ω1 has run off to infinity; the particle
        // comes in at t0 and creeps up to the top of the barrier.
        (-1, -1, RootKind::DoubleLarger) => {
            let (branch, shift) = if p.incoming == Incoming::Right {
                (Branch::Unbounded, zero)
            } else {
                (Branch::Bounded, w2)
            };
            (branch, shift, (T::zero(), inf), inf)
        }
        (-1, -1, RootKind::OneReal | RootKind::ThreeReal | RootKind::DoubleSmaller) => {
            // Transmission; the time of flight is the real half-period.
            let flight = if kind == RootKind::OneReal {
                w3.re
            } else {
                w1.re
            };
            let quarter = if p.incoming == Incoming::Right {
                half
            } else {
                T::lit(1.5)
            };
            (
                Branch::Unbounded,
                real(flight * quarter),
                (-half * flight, half * flight),
                flight,
            )
        }
        (1, -1, RootKind::ThreeReal) if p.energy > T::zero() => (
            Branch::Bounded,
            w3,
            (T::neg_infinity(), inf),
            T::lit(2.0) * w1.re,
        ),
        (1, -1, RootKind::DoubleSmaller) => {
            let law = Law {
                ctx: None,
                anchor: HalfPeriod::One,
                shift: zero,
                s: p.s(),
                tau: p.tau(),
                omega: p.omega,
                energy: p.energy,
            };
            return Ok(MotionSolution {
                branch: Branch::Bounded,
                shift: zero,
                t0,
                period_or_tof: T::lit(2.0) * w1.re,
                window: (T::neg_infinity(), inf),
                law: AnyLaw::Hyperbolic(law),
            });
        }
        (1, -1, _) => {
            return Err(Error::NoRealSolution(format!(
                "s = +1, tau = -1 oscillates only for E > omega^2 (E = {}, omega^2 = {})",
                p.energy,
                p.omega * p.omega
            )))
        }
        _ => unreachable!("signs validated by HyperbolicProblem::new"),
    };

    let x1 = real(p.energy / T::lit(6.0));
    let anchor = [HalfPeriod::One, HalfPeriod::Two, HalfPeriod::Three]
        .into_iter()
        .min_by(|a, b| {
            let da = (ctx.root_at(*a) - x1).norm();
            let db = (ctx.root_at(*b) - x1).norm();
            da.partial_cmp(&db).unwrap_or(core::cmp::Ordering::Equal)
        })
        .unwrap_or(HalfPeriod::One);
    let law = Law {
        ctx: Some(ctx),
        anchor,
        shift,
        s: p.s(),
        tau: p.tau(),
        omega: p.omega,
        energy: p.energy,
    };
    Ok(MotionSolution {
        branch,
        shift,
        t0,
        period_or_tof: period,
        window: (t0 + window.0, t0 + window.1),
        law: AnyLaw::Hyperbolic(law),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::cubic_roots;

    fn problem(s: i8, tau: i8, e: f64) -> HyperbolicProblem<f64> {
        HyperbolicProblem::new(1.2, s, tau, e).unwrap()
    }

    #[test]
    fn table_matches_cubic_roots() {
        for (tau, e) in [
            (1, -3.0),
            (1, 0.2),
            (1, 5.0),
            (-1, 2.0),
            (-1, 0.3),
            (-1, -0.9),
            (-1, -2.5),
        ] {
            let p = problem(-1, tau, e);
            let a = classify_hyperbolic(&p);
            let r = cubic_roots(&p.invariants().unwrap());
            assert_eq!(a.kind, r.kind, "tau={tau} E={e}");
            let x = p.roots();
            for (j, ej) in r.as_array().into_iter().enumerate() {
                let xi = x[a.e_from_x[j] as usize - 1];
                assert!(
                    (xi - ej).norm() < 1e-12,
                    "tau={tau} E={e} e{}: {xi} vs {ej}",
                    j + 1
                );
            }
        }
    }

    #[test]
    fn oscillation_extrema_are_opposite() {
        let p = problem(1, -1, 3.0);
        let s = hyperbolic_solve(&p, 0.0).unwrap();
        let low = s.position(0.0).unwrap();
        let high = s.position(s.period_or_tof / 2.0).unwrap();
        assert!(low < 0.0 && (low + high).abs() < 1e-10);
    }

    #[test]
    fn no_oscillation_below_threshold() {
        assert!(matches!(
            hyperbolic_solve(&problem(1, -1, 0.5), 0.0),
            Err(Error::NoRealSolution(_))
        ));
        assert!(matches!(
            hyperbolic_solve(&problem(1, -1, -3.0), 0.0),
            Err(Error::NoRealSolution(_))
        ));
    }

    #[test]
    fn double_root_limit_is_equilibrium() {
        let w = 1.2_f64;
        let s = hyperbolic_solve(&problem(1, -1, w * w), 0.0).unwrap();
        assert_eq!(s.position(0.4), Some(0.0));
        assert!((s.period_or_tof - 2.0 * std::f64::consts::PI / w).abs() < 1e-12);
    }

    #[test]
    fn transmission_crosses_origin_at_t0() {
        for e in [0.5, 3.0] {
            for dir in [Incoming::Right, Incoming::Left] {
                let s = hyperbolic_solve(&problem(-1, -1, e).with_incoming(dir), 0.0).unwrap();
                let st = s.state(0.0);
                assert!(
                    st.position().unwrap().abs() < 1e-10,
                    "E={e} {dir:?}: {st:?}"
                );
                let v = st.velocity().unwrap();
                assert!(if dir == Incoming::Right {
                    v < 0.0
                } else {
                    v > 0.0
                });
            }
        }
    }
}
