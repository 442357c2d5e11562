//! Real invariants `(g2, g3)`, the roots of the Weierstrass cubic and the
//! fundamental half-periods of the associated lattice.
//!
//! The cubic is `Q(t) = 4t³ − g2·t − g3 = 4(t − e1)(t − e2)(t − e3)`.
//!
//! Root conventions:
//!
//! * three real roots: `e1 > e2 > e3`, `ω1` real positive, `ω2` purely
//!   imaginary with positive imaginary part;
//! * one real root: `e2` real, `e1 = conj(e3)` with `Im e1 > 0`,
//!   `ω2 = conj(ω1)` and `ω1 + ω2` real positive.
//!
//! In the one-real-root case the labels are tied together by `℘(ω1) = e1`
//! and the Legendre relation `ω2·η1 − ω1·η2 = iπ/2`; together these put `ω1`
//! in the fourth quadrant.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::quadrature;
use crate::scalar::{cx, imag, real, Cx, Real};

/// Real invariants of a Weierstrass lattice together with the discriminant
/// `Δ = g2³ − 27·g3²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Invariants<T> {
    pub g2: T,
    pub g3: T,
    pub discriminant: T,
}

impl<T: Real> Invariants<T> {
    pub fn new(g2: T, g3: T) -> Result<Self> {
        if !g2.is_finite() || !g3.is_finite() {
            return Err(Error::NonFinite("invariants"));
        }
        let discriminant = g2 * g2 * g2 - T::lit(27.0) * g3 * g3;
        Ok(Self {
            g2,
            g3,
            discriminant,
        })
    }

    /// `Q(t) = 4t³ − g2·t − g3` at a complex point.
    pub fn cubic(&self, t: Cx<T>) -> Cx<T> {
        t * t * t * T::lit(4.0) - t * self.g2 - self.g3
    }
}

/// Reality structure of the roots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RootKind {
    ThreeReal,
    OneReal,
    /// `e1 = e2 = e0 > 0`, `e3 = −2e0`; only the imaginary period is finite.
    DoubleLarger,
    /// `e2 = e3 = −e0 < 0`, `e1 = 2e0`; only the real period is finite.
    DoubleSmaller,
    /// `g2 = g3 = 0`; `℘(z) = 1/z²`.
    Triple,
}

impl RootKind {
    pub fn is_degenerate(self) -> bool {
        matches!(
            self,
            RootKind::DoubleLarger | RootKind::DoubleSmaller | RootKind::Triple
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            RootKind::ThreeReal => "ThreeReal",
            RootKind::OneReal => "OneReal",
            RootKind::DoubleLarger => "DoubleLarger",
            RootKind::DoubleSmaller => "DoubleSmaller",
            RootKind::Triple => "Triple",
        }
    }
}

/// Ordered roots of the Weierstrass cubic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicRoots<T> {
    pub e1: Cx<T>,
    pub e2: Cx<T>,
    pub e3: Cx<T>,
    pub kind: RootKind,
}

impl<T: Real> CubicRoots<T> {
    /// The roots as `[e1, e2, e3]`.
    pub fn as_array(&self) -> [Cx<T>; 3] {
        [self.e1, self.e2, self.e3]
    }

    /// Positive parameter `e0` of a double root (`e0 = |double root|`), or
    /// `None` for non-degenerate and triple roots.
    pub fn e0(&self) -> Option<T> {
        match self.kind {
            RootKind::DoubleLarger => Some(self.e1.re),
            RootKind::DoubleSmaller => Some(-self.e2.re),
            _ => None,
        }
    }
}

/// Fundamental half-periods and the quasi-period constants `η = ζ(ω)`.
///
/// For degenerate roots the diverging half-period (and its `η`) carries an
/// infinite component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPeriods<T> {
    pub omega1: Cx<T>,
    pub omega2: Cx<T>,
    pub omega3: Cx<T>,
    pub eta1: Cx<T>,
    pub eta2: Cx<T>,
}

impl<T: Real> HalfPeriods<T> {
    /// Residual `ω2·η1 − ω1·η2 − iπ/2`.
    pub fn legendre_residual(&self) -> Cx<T> {
        self.omega2 * self.eta1 - self.omega1 * self.eta2 - imag(T::FRAC_PI_2())
    }
}

/// Relative root separation below which roots are declared coincident.
pub const DEGENERACY_TOLERANCE: f64 = 1e-9;

/// Roots of `4t³ − g2·t − g3`, ordered and classified.
pub fn cubic_roots<T: Real>(inv: &Invariants<T>) -> CubicRoots<T> {
    let (g2, g3) = (inv.g2, inv.g3);
    let zero = T::zero();
    if g2 == zero && g3 == zero {
        let z = real(zero);
        return CubicRoots {
            e1: z,
            e2: z,
            e3: z,
            kind: RootKind::Triple,
        };
    }
    let tol = T::tol(DEGENERACY_TOLERANCE);
    let four = T::lit(4.0);
    // Depressed form t³ + p·t + q = 0.
    let p = -g2 / four;
    let q = -g3 / four;
    if inv.discriminant >= zero {
        let r = T::lit(2.0) * (-p / T::lit(3.0)).sqrt();
        let arg = (T::lit(3.0) * q / (T::lit(2.0) * p) * (T::lit(-3.0) / p).sqrt())
            .max(-T::one())
            .min(T::one());
        let theta = arg.acos() / T::lit(3.0);
        let third = T::lit(2.0) * T::PI() / T::lit(3.0);
        let mut e = [0, 1, 2].map(|k| polish(inv, r * (theta - third * T::lit(k as f64)).cos()));
        e.sort_by(|a, b| b.partial_cmp(a).unwrap_or(core::cmp::Ordering::Equal));
        let scale = e[0].abs().max(e[2].abs());
        if e[0] - e[1] < tol * scale {
            return double_larger(double_root(inv));
        }
        if e[1] - e[2] < tol * scale {
            return double_smaller(-double_root(inv));
        }
        CubicRoots {
            e1: real(e[0]),
            e2: real(e[1]),
            e3: real(e[2]),
            kind: RootKind::ThreeReal,
        }
    } else {
        let d = q * q / four + p * p * p / T::lit(27.0);
        let big = (q.abs() / T::lit(2.0) + d.sqrt()).cbrt();
        let a = if q > zero { -big } else { big };
        let b = if a != zero {
            -p / (T::lit(3.0) * a)
        } else {
            zero
        };
        let e2 = polish(inv, a + b);
        let re = -e2 / T::lit(2.0);
        let im = (T::lit(0.75) * e2 * e2 - g2 / four).max(zero).sqrt();
        let scale = e2.abs().max((re * re + im * im).sqrt());
        if T::lit(2.0) * im < tol * scale {
            let d = double_root(inv);
            return if d > e2 {
                double_larger(d)
            } else {
                double_smaller(-d)
            };
        }
        CubicRoots {
            e1: cx(re, im),
            e2: real(e2),
            e3: cx(re, -im),
            kind: RootKind::OneReal,
        }
    }
}

/// The repeated root `−3g3/(2g2)` (from `g2 = 12d²`, `g3 = −8d³`).
fn double_root<T: Real>(inv: &Invariants<T>) -> T {
    -T::lit(1.5) * inv.g3 / inv.g2
}

fn double_larger<T: Real>(e0: T) -> CubicRoots<T> {
    CubicRoots {
        e1: real(e0),
        e2: real(e0),
        e3: real(-T::lit(2.0) * e0),
        kind: RootKind::DoubleLarger,
    }
}

fn double_smaller<T: Real>(e0: T) -> CubicRoots<T> {
    CubicRoots {
        e1: real(T::lit(2.0) * e0),
        e2: real(-e0),
        e3: real(-e0),
        kind: RootKind::DoubleSmaller,
    }
}

/// Two Newton steps on `Q`, each kept only if it lowers `|Q|` (near a
/// double root a raw step can jump toward the neighbouring root).
fn polish<T: Real>(inv: &Invariants<T>, mut t: T) -> T {
    let q = |t: T| T::lit(4.0) * t * t * t - inv.g2 * t - inv.g3;
    for _ in 0..2 {
        let dq = T::lit(12.0) * t * t - inv.g2;
        let next = t - q(t) / dq;
        if !next.is_finite() || q(next).abs() >= q(t).abs() {
            break;
        }
        t = next;
    }
    t
}

/// `∫₀^∞ du / √|(u² + p)(u² + q)|`.
///
/// This is the common form of every period integral after the substitution
/// `t = e ± u²` at the finite endpoint. The further substitution
/// `u = s·tan φ` with `s = (|p||q|)^{1/4}` maps the half line onto
/// `[0, π/2]` with a bounded, smooth integrand, so no tail truncation is
/// needed.
pub(crate) fn period_integral<T: Real>(p: Cx<T>, q: Cx<T>) -> Result<T> {
    let s = (p.norm() * q.norm()).sqrt().sqrt();
    let s2 = s * s;
    let integrand = |phi: T| {
        let (sn, cs) = phi.sin_cos();
        let a = real(s2 * sn * sn) + p * (cs * cs);
        let b = real(s2 * sn * sn) + q * (cs * cs);
        s / (a * b).norm().sqrt()
    };
    let half_pi = T::FRAC_PI_2();
    let mut cuts = vec![T::zero(), half_pi];
    for c in [p, q] {
        cuts.push((c.norm().sqrt() / s).atan());
        if c.re < T::zero() {
            // Near-vanishing factor: the integrand peaks at u² = −Re c.
            cuts.push(((-c.re).sqrt() / s).atan());
        }
    }
    cuts.retain(|c| c.is_finite() && *c >= T::zero() && *c <= half_pi);
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap_or(core::cmp::Ordering::Equal));
    cuts.dedup();
    let rel = T::tol(1e-14);
    let (value, error) = quadrature::integrate(integrand, &cuts, T::min_positive_value(), rel);
    if error.is_nan() || error > T::tol(1e-12) * value.abs() || !value.is_finite() {
        return Err(Error::QuadratureFailed(error.to_f64_lossy()));
    }
    Ok(value)
}

/// `(ω1, ω2)` for non-degenerate roots, from the period integrals.
pub(crate) fn fundamental_half_periods<T: Real>(roots: &CubicRoots<T>) -> Result<(Cx<T>, Cx<T>)> {
    let (e1, e2, e3) = (roots.e1, roots.e2, roots.e3);
    match roots.kind {
        RootKind::ThreeReal => {
            let w1 = period_integral(e1 - e2, e1 - e3)?;
            let w2 = period_integral(e2 - e3, e1 - e3)?;
            Ok((real(w1), imag(w2)))
        }
        RootKind::OneReal => {
            // ω1 + ω2 from [e2, ∞), |ω1 − ω2| from (−∞, e2].
            let sum = period_integral(e2 - e1, e2 - e3)?;
            let diff = period_integral(e1 - e2, e3 - e2)?;
            let half = T::lit(0.5);
            Ok((cx(half * sum, -half * diff), cx(half * sum, half * diff)))
        }
        _ => Err(Error::DegenerateRoots),
    }
}

/// Half-periods and quasi-period constants of the lattice with the given
/// invariants.
///
/// Double roots return the closed-form finite half-period and mark the other
/// one infinite. Triple roots have no periods.
pub fn half_periods<T: Real>(inv: &Invariants<T>, roots: &CubicRoots<T>) -> Result<HalfPeriods<T>> {
    match roots.kind {
        RootKind::Triple => Err(Error::TripleRoot),
        RootKind::DoubleLarger | RootKind::DoubleSmaller => Ok(degenerate_half_periods(roots)),
        RootKind::ThreeReal | RootKind::OneReal => {
            let (w1, w2) = fundamental_half_periods(roots)?;
            let lattice = crate::weierstrass::Lattice::new(inv.g2, inv.g3, w1, w2);
            Ok(lattice.half_periods())
        }
    }
}

pub(crate) fn degenerate_half_periods<T: Real>(roots: &CubicRoots<T>) -> HalfPeriods<T> {
    let inf = T::infinity();
    match roots.kind {
        RootKind::DoubleSmaller => {
            let e0 = -roots.e2.re;
            let w1 = T::FRAC_PI_2() / (T::lit(3.0) * e0).sqrt();
            HalfPeriods {
                omega1: real(w1),
                omega2: imag(inf),
                omega3: cx(w1, inf),
                eta1: real(e0 * w1),
                eta2: imag(inf),
            }
        }
        RootKind::DoubleLarger => {
            let e0 = roots.e1.re;
            let w2 = T::FRAC_PI_2() / (T::lit(3.0) * e0).sqrt();
            HalfPeriods {
                omega1: real(inf),
                omega2: imag(w2),
                omega3: cx(inf, w2),
                eta1: real(-inf),
                eta2: imag(-e0 * w2),
            }
        }
        _ => HalfPeriods {
            omega1: real(inf),
            omega2: imag(inf),
            omega3: cx(inf, inf),
            eta1: real(T::zero()),
            eta2: real(T::zero()),
        },
    }
}

/// Lagrange–Gauss reduction of a lattice basis.
///
/// Returns the reduced basis `(b1, b2)` with `|b1| ≤ |b2|` and the integer
/// matrix `U` such that `b_i = U[i][0]·v1 + U[i][1]·v2`.
pub(crate) fn reduce_basis<T: Real>(v1: Cx<T>, v2: Cx<T>) -> ([Cx<T>; 2], [[i64; 2]; 2]) {
    let mut b = [v1, v2];
    let mut u = [[1_i64, 0], [0, 1]];
    for _ in 0..200 {
        if b[1].norm_sqr() < b[0].norm_sqr() {
            b.swap(0, 1);
            u.swap(0, 1);
        }
        let mu = (b[1] * b[0].conj()).re / b[0].norm_sqr();
        let k = mu.round();
        if k == T::zero() || !k.is_finite() {
            break;
        }
        let ki = k.to_i64().unwrap_or(0);
        b[1] = b[1] - b[0] * k;
        u[1] = [u[1][0] - ki * u[0][0], u[1][1] - ki * u[0][1]];
    }
    (b, u)
}

/// Complex Eisenstein sums `(60·Σ' λ⁻⁴, 140·Σ' λ⁻⁶)` over `λ = 2mω1 + 2nω2`.
///
/// Each row of fixed `n` is summed in closed form,
/// `Σ_m (m + w)⁻⁴ = π⁴(c² − 2c/3)` and `Σ_m (m + w)⁻⁶ = π⁶(c³ − c² + 2c/15)`
/// with `c = csc²(πw)`. The rows then decay like `exp(−2πn·Im τ)`, and
/// summation stops once a row no longer changes the partial sums.
pub fn eisenstein_sums<T: Real>(omega1: Cx<T>, omega2: Cx<T>) -> Result<(Cx<T>, Cx<T>)> {
    if !(crate::scalar::is_finite(omega1) && crate::scalar::is_finite(omega2)) {
        return Err(Error::NonFinite("half-periods"));
    }
    let two = T::lit(2.0);
    let (basis, _) = reduce_basis(omega1 * two, omega2 * two);
    let b1 = basis[0];
    if b1.norm() == T::zero() {
        return Err(Error::DegenerateLattice);
    }
    let tau = basis[1] / b1;
    if tau.im.abs() < T::tol(1e-12) * tau.norm() {
        return Err(Error::DegenerateLattice);
    }
    let pi = T::PI();
    let pi2 = pi * pi;
    let (pi4, pi6) = (pi2 * pi2, pi2 * pi2 * pi2);
    // n = 0 row: 2ζ(4) and 2ζ(6).
    let mut s4: Cx<T> = real(pi4 / T::lit(45.0));
    let mut s6: Cx<T> = real(two * pi6 / T::lit(945.0));
    let eps = T::epsilon();
    for n in 1..100_000 {
        let w = tau * T::lit(n as f64);
        let c = (w * pi).sin().powi(-2);
        if !crate::scalar::is_finite(c) {
            return Err(Error::DegenerateLattice);
        }
        let r4 = (c * c - c * (two / T::lit(3.0))) * pi4 * two;
        let r6 = (c * c * c - c * c + c * (two / T::lit(15.0))) * pi6 * two;
        s4 = s4 + r4;
        s6 = s6 + r6;
        if r4.norm() <= eps * s4.norm() * T::lit(0.01)
            && r6.norm() <= eps * s6.norm().max(s4.norm()) * T::lit(0.01)
        {
            break;
        }
    }
    let g2 = s4 * T::lit(60.0) / b1.powi(4);
    let g3 = s6 * T::lit(140.0) / b1.powi(6);
    Ok((g2, g3))
}

/// Invariants of the lattice generated by `2ω1, 2ω2`.
///
/// Fails with [`Error::NonRealInvariants`] when the lattice is not symmetric
/// under complex conjugation.
pub fn invariants_from_periods<T: Real>(omega1: Cx<T>, omega2: Cx<T>) -> Result<Invariants<T>> {
    let (g2, g3) = eisenstein_sums(omega1, omega2)?;
    // Compare each imaginary part against the homogeneous size of the pair,
    // so that a vanishing invariant does not demand an exact zero.
    let tol = T::tol(1e-9);
    let size2 = g2.norm() + g3.norm().powf(T::lit(2.0 / 3.0));
    let size3 = g3.norm() + g2.norm().powf(T::lit(1.5));
    if g2.im.abs() > tol * size2 || g3.im.abs() > tol * size3 {
        return Err(Error::NonRealInvariants);
    }
    Invariants::new(g2.re, g3.re)
}

/// Change of basis `(ω1′, ω2′) = m·(ω1, ω2)` with a unimodular integer matrix.
///
/// The quasi-period constants transform the same way, since `ζ` is additive
/// on half-periods.
pub fn modular_transform<T: Real>(hp: &HalfPeriods<T>, m: [[i64; 2]; 2]) -> Result<HalfPeriods<T>> {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if det.abs() != 1 {
        return Err(Error::NonUnimodular(det));
    }
    let f = |k: i64| T::lit(k as f64);
    let omega1 = hp.omega1 * f(m[0][0]) + hp.omega2 * f(m[0][1]);
    let omega2 = hp.omega1 * f(m[1][0]) + hp.omega2 * f(m[1][1]);
    let eta1 = hp.eta1 * f(m[0][0]) + hp.eta2 * f(m[0][1]);
    let eta2 = hp.eta1 * f(m[1][0]) + hp.eta2 * f(m[1][1]);
    Ok(HalfPeriods {
        omega1,
        omega2,
        omega3: omega1 + omega2,
        eta1,
        eta2,
    })
}

/// Homogeneity: the invariants `(g2/μ⁴, g3/μ⁶)` of the lattice scaled by `μ`.
pub fn rescale<T: Real>(inv: &Invariants<T>, mu: Cx<T>) -> Result<Invariants<T>> {
    if mu.norm() == T::zero() {
        return Err(Error::ZeroScale);
    }
    let g2 = Complex::new(inv.g2, T::zero()) / mu.powi(4);
    let g3 = Complex::new(inv.g3, T::zero()) / mu.powi(6);
    let tol = T::tol(1e-12);
    if g2.im.abs() > tol * g2.norm() || g3.im.abs() > tol * g3.norm() {
        return Err(Error::NonRealInvariants);
    }
    Invariants::new(g2.re, g3.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inv(g2: f64, g3: f64) -> Invariants<f64> {
        Invariants::new(g2, g3).unwrap()
    }

    #[test]
    fn lemniscatic_roots() {
        let r = cubic_roots(&inv(4.0, 0.0));
        assert_eq!(r.kind, RootKind::ThreeReal);
        assert!(
            (r.e1.re - 1.0).abs() < 1e-15 && r.e2.re.abs() < 1e-15 && (r.e3.re + 1.0).abs() < 1e-15
        );
    }

    #[test]
    fn double_and_triple_roots() {
        let r = cubic_roots(&inv(12.0, -8.0));
        assert_eq!(r.kind, RootKind::DoubleLarger);
        assert_eq!(r.e0(), Some(1.0));
        assert_eq!(r.e3.re, -2.0);
        let r = cubic_roots(&inv(12.0, 8.0));
        assert_eq!(r.kind, RootKind::DoubleSmaller);
        assert_eq!(cubic_roots(&inv(0.0, 0.0)).kind, RootKind::Triple);
    }

    #[test]
    fn one_real_root_conventions() {
        let r = cubic_roots(&inv(-4.0, 0.0));
        assert_eq!(r.kind, RootKind::OneReal);
        assert!(r.e2.re.abs() < 1e-15 && (r.e1.im - 1.0).abs() < 1e-15);
        assert_eq!(r.e1, r.e3.conj());
    }

    #[test]
    fn lemniscatic_periods_are_symmetric() {
        let i = inv(4.0, 0.0);
        let (w1, w2) = fundamental_half_periods(&cubic_roots(&i)).unwrap();
        // Γ(1/4)² / (4√π)
        let expected = 1.311_028_777_146_059_9;
        assert!((w1.re - expected).abs() < 1e-13, "{w1}");
        assert!((w2.im - expected).abs() < 1e-13 && w2.re == 0.0);
    }

    #[test]
    fn unimodular_check() {
        let hp = HalfPeriods {
            omega1: real(1.0),
            omega2: imag(1.0),
            omega3: cx(1.0, 1.0),
            eta1: real(0.0),
            eta2: real(0.0),
        };
        assert_eq!(
            modular_transform(&hp, [[2, 0], [0, 1]]),
            Err(Error::NonUnimodular(2))
        );
        assert_eq!(modular_transform(&hp, [[1, 0], [0, 1]]).unwrap(), hp);
    }

    #[test]
    fn rescale_examples() {
        let r = rescale(&inv(16.0, 64.0), real(2.0)).unwrap();
        assert_eq!((r.g2, r.g3), (1.0, 1.0));
        let r = rescale(&inv(3.0, 5.0), imag(1.0)).unwrap();
        assert!((r.g2 - 3.0).abs() < 1e-15 && (r.g3 + 5.0).abs() < 1e-15);
        assert_eq!(rescale(&inv(3.0, 5.0), real(0.0)), Err(Error::ZeroScale));
    }
}
