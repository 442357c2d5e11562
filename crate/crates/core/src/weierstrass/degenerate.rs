//! Closed forms for coincident roots.
//!
//! ```text
//! DoubleLarger  (e1 = e2 = e0):   ℘ = e0 + 3e0/sinh²(kz),  k = √(3e0)
//! DoubleSmaller (e2 = e3 = −e0):  ℘ = −e0 + 3e0/sin²(kz)
//! Triple:                         ℘ = 1/z²
//! ```
//!
//! Integrating once and twice gives
//! `ζ = ∓e0·z + k·coth(kz)` / `k·cot(kz)` and
//! `σ = exp(∓e0z²/2)·sinh(kz)/k` / `sin(kz)/k`.

use crate::error::{Error, Result};
use crate::invariants::RootKind;
use crate::scalar::{real, Cx, Real};

use super::Values;

fn guard<T: Real>(s: Cx<T>, z: Cx<T>) -> Result<()> {
    if s.norm() < T::tol(1e-12) {
        Err(Error::pole(z))
    } else {
        Ok(())
    }
}

/// `℘` for a degenerate root structure; `e0 > 0` for the double-root kinds.
pub fn wp_degenerate<T: Real>(kind: RootKind, e0: T, z: Cx<T>) -> Result<Cx<T>> {
    Ok(local_guarded(kind, e0, z)?.wp)
}

pub(crate) fn local<T: Real>(kind: RootKind, e0: T, z: Cx<T>) -> Result<Values<T>> {
    let one = real(T::one());
    match kind {
        RootKind::Triple => {
            let inv = one / z;
            let p = inv * inv;
            Ok(Values {
                wp: p,
                wp_prime: -p * inv * T::lit(2.0),
                zeta: inv,
                sigma: z,
                sigma_prime: one,
            })
        }
        RootKind::DoubleLarger | RootKind::DoubleSmaller => {
            if e0.is_nan() || e0 <= T::zero() {
                return Err(Error::InvalidParameter("e0 must be positive".into()));
            }
            let k = (T::lit(3.0) * e0).sqrt();
            let kz = z * k;
            let (s, c, sign) = if kind == RootKind::DoubleLarger {
                (kz.sinh(), kz.cosh(), -T::one())
            } else {
                (kz.sin(), kz.cos(), T::one())
            };
            let gauss = (z * z * (sign * e0 / T::lit(2.0))).exp();
            let sigma = gauss * s / k;
            let sigma_prime = gauss * (z * s * (sign * e0) / k + c);
            if s.norm() < T::tol(1e-12) {
                return Ok(Values {
                    wp: real(T::infinity()),
                    wp_prime: real(T::infinity()),
                    zeta: real(T::infinity()),
                    sigma,
                    sigma_prime,
                });
            }
            let cot = c / s;
            let inv2 = one / (s * s);
            let e = T::lit(3.0) * e0;
            Ok(Values {
                wp: real(-sign * e0) + inv2 * e,
                wp_prime: -cot * inv2 * (T::lit(2.0) * e * k),
                zeta: z * (sign * e0) + cot * k,
                sigma,
                sigma_prime,
            })
        }
        _ => Err(Error::InvalidParameter(
            "closed form requires a degenerate root kind".into(),
        )),
    }
}

/// `℘(z) − e` for either the single or the double root, in closed form so
/// that no cancellation occurs near `℘(z) = e`.
pub(crate) fn gap<T: Real>(kind: RootKind, e0: T, z: Cx<T>, at_single_root: bool) -> Result<Cx<T>> {
    local_guarded(kind, e0, z)?;
    let e = T::lit(3.0) * e0;
    let kz = z * e.sqrt();
    Ok(match (kind, at_single_root) {
        (RootKind::Triple, _) => (z * z).inv(),
        (RootKind::DoubleSmaller, false) => (kz.sin() * kz.sin()).inv() * e,
        (RootKind::DoubleSmaller, true) => {
            let c = kz.cos() / kz.sin();
            c * c * e
        }
        (RootKind::DoubleLarger, false) => (kz.sinh() * kz.sinh()).inv() * e,
        (RootKind::DoubleLarger, true) => {
            let c = kz.cosh() / kz.sinh();
            c * c * e
        }
        _ => {
            return Err(Error::InvalidParameter(
                "closed form requires a degenerate root kind".into(),
            ))
        }
    })
}

/// Like [`local`] but raising `PoleAt` inside the pole guard.
pub(crate) fn local_guarded<T: Real>(kind: RootKind, e0: T, z: Cx<T>) -> Result<Values<T>> {
    match kind {
        RootKind::Triple => guard(z, z)?,
        RootKind::DoubleLarger => guard((z * (T::lit(3.0) * e0).sqrt()).sinh(), z)?,
        RootKind::DoubleSmaller => guard((z * (T::lit(3.0) * e0).sqrt()).sin(), z)?,
        _ => {}
    }
    local(kind, e0, z)
}
