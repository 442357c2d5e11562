//! The `n = 1` Lamé problem `−y″ + 2℘(x)·y = λy` and its bounded partner
//! `−ψ″ + 2℘(x + ω2)·ψ = λψ`.
//!
//! The eigenfunctions are
//!
//! ```text
//! y±(x; a) = σ(x ± a) / (σ(x)σ(±a)) · e^{−ζ(±a)x},                       λ = −℘(a)
//! ψ±(x; a) = σ(x + ω2 ± a)σ(ω2) / (σ(x + ω2)σ(ω2 ± a)) · e^{−ζ(±a)x}
//! ```
//!
//! and the two Hamiltonians are intertwined by the superpotential
//! `W = ℘′/(2(℘ − e3))`: `A†y± = (−d/dx + W)y± = (℘(a) − e3)ψ±`.
//!
//! Eigenfunctions follow the normalization above (no L² normalization);
//! `y₊y₋ = ℘(x) − ℘(a)` and `y₊′y₋ − y₊y₋′ = −℘′(a)` are the contract.

mod bands;

pub use bands::{
    band_structure, band_structure_with_tolerance, bloch_phase, bloch_state,
    bounded_band_structure, crystal_momentum, potential_half_period, Band, BandInterval,
    BandStructure, BlochState, EdgeLabel, SCAN_TOLERANCE,
};

use crate::error::{Error, Result};
use crate::invariants::RootKind;
use crate::scalar::{real, Cx, Real};
use crate::weierstrass::{EllipticContext, HalfPeriod};

/// Which of the two eigenfunctions sharing an eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value<T: Real>(self) -> T {
        match self {
            Sign::Plus => T::one(),
            Sign::Minus => -T::one(),
        }
    }
}

/// Evaluator for `y±(x; a)` or `ψ±(x; a)` at real `x`.
#[derive(Debug, Clone)]
pub struct Eigenfunction<'c, T> {
    ctx: &'c EllipticContext<T>,
    sign: Sign,
    a: Cx<T>,
    signed: Cx<T>,
    /// `0` for `y±`, `ω2` for `ψ±`.
    shift: Cx<T>,
    scale: Cx<T>,
    wp_a: Cx<T>,
    wp_prime_signed: Cx<T>,
    zeta_signed: Cx<T>,
}

fn singular<T: Real>(x: T) -> Error {
    Error::Singularity(x.to_f64_lossy())
}

impl<'c, T: Real> Eigenfunction<'c, T> {
    fn build(ctx: &'c EllipticContext<T>, a: Cx<T>, sign: Sign, shift: Cx<T>) -> Result<Self> {
        if ctx.is_pole(a) {
            return Err(Error::SpectralParameterAtLatticePoint);
        }
        let signed = a * sign.value::<T>();
        let v = ctx.values(signed)?;
        let scale = if shift == real(T::zero()) {
            v.sigma.inv()
        } else {
            if ctx.is_pole(shift + signed) {
                return Err(Error::SpectralParameterAtLatticePoint);
            }
            ctx.sigma(shift) / ctx.sigma(shift + signed)
        };
        Ok(Self {
            ctx,
            sign,
            a,
            signed,
            shift,
            scale,
            wp_a: v.wp,
            wp_prime_signed: v.wp_prime,
            zeta_signed: v.zeta,
        })
    }

    pub fn parameter(&self) -> Cx<T> {
        self.a
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    /// `λ = −℘(a)`.
    pub fn eigenvalue(&self) -> Cx<T> {
        -self.wp_a
    }

    pub fn value(&self, x: T) -> Result<Cx<T>> {
        let z = real(x) + self.shift;
        if self.ctx.is_pole(z) {
            return Err(singular(x));
        }
        let ratio = self.ctx.sigma(z + self.signed) / self.ctx.sigma(z);
        Ok(self.scale * ratio * (-self.zeta_signed * x).exp())
    }

    /// `y′ = ½(℘′(x) ∓ ℘′(a))/(℘(x) − ℘(a)) · y`, switching to the σ
    /// quotient rule where `℘(x)` comes close to `℘(a)`.
    pub fn derivative(&self, x: T) -> Result<Cx<T>> {
        let z = real(x) + self.shift;
        let v = self.ctx.values(z).map_err(|_| singular(x))?;
        let d = v.wp - self.wp_a;
        if d.norm() > T::tol(1e-6) * (T::one() + self.wp_a.norm()) {
            let y = self.value(x)?;
            return Ok((v.wp_prime - self.wp_prime_signed) / (d * T::lit(2.0)) * y);
        }
        let top = self.ctx.values(z + self.signed);
        let (num, dnum) = match top {
            Ok(t) => (t.sigma, t.sigma_prime),
            Err(_) => (
                self.ctx.sigma(z + self.signed),
                self.ctx.sigma_prime(z + self.signed),
            ),
        };
        let e = (-self.zeta_signed * x).exp() * self.scale;
        let quotient = (dnum * v.sigma - num * v.sigma_prime) / (v.sigma * v.sigma);
        Ok(e * (quotient - self.zeta_signed * num / v.sigma))
    }

    /// Periodic factor `u(x) = y(x)·e^{∓ik x}`, with period `2ω_L`.
    pub fn periodic_part(&self, x: T) -> Result<Cx<T>> {
        let ik = bloch_phase(self.ctx, self.a)? / potential_half_period(self.ctx)?;
        Ok(self.value(x)? * (-ik * x * self.sign.value::<T>()).exp())
    }
}

/// `y±(x; a)` for the unbounded potential `2℘(x)`.
pub fn eigenfunction<T: Real>(
    ctx: &EllipticContext<T>,
    a: Cx<T>,
    sign: Sign,
) -> Result<Eigenfunction<'_, T>> {
    Eigenfunction::build(ctx, a, sign, real(T::zero()))
}

fn require_three_real<T: Real>(ctx: &EllipticContext<T>) -> Result<()> {
    match ctx.kind() {
        RootKind::ThreeReal => Ok(()),
        RootKind::OneReal => Err(Error::OneRealClassification),
        _ => Err(Error::DegenerateRoots),
    }
}

/// `ψ±(x; a)` for the bounded potential `2℘(x + ω2)`.
///
/// Fails with `SpectralParameterAtLatticePoint` when `a` or `ω2 ± a` is a
/// lattice point.
pub fn bounded_eigenfunction<T: Real>(
    ctx: &EllipticContext<T>,
    a: Cx<T>,
    sign: Sign,
) -> Result<Eigenfunction<'_, T>> {
    require_three_real(ctx)?;
    Eigenfunction::build(ctx, a, sign, ctx.omega(HalfPeriod::Two))
}

/// The pair `y₊, y₋` sharing the eigenvalue `−℘(a)`.
#[derive(Debug, Clone)]
pub struct Eigenpair<'c, T> {
    pub a: Cx<T>,
    pub y_plus: Eigenfunction<'c, T>,
    pub y_minus: Eigenfunction<'c, T>,
}

pub fn eigenpair<T: Real>(ctx: &EllipticContext<T>, a: Cx<T>) -> Result<Eigenpair<'_, T>> {
    Ok(Eigenpair {
        a,
        y_plus: eigenfunction(ctx, a, Sign::Plus)?,
        y_minus: eigenfunction(ctx, a, Sign::Minus)?,
    })
}

/// Second solution at a band edge,
/// `ỹ(x; ω) = y₊(x; ω)·(ζ(x + ω) + e·x)` with `e = ℘(ω)`, `λ = −e`.
#[derive(Debug, Clone)]
pub struct SpecialEigenfunction<'c, T> {
    base: Eigenfunction<'c, T>,
    omega: Cx<T>,
    root: Cx<T>,
}

impl<'c, T: Real> SpecialEigenfunction<'c, T> {
    pub fn eigenvalue(&self) -> Cx<T> {
        -self.root
    }

    /// The first solution `y₊(x; ω) = √(℘(x) − e)` (analytic branch).
    pub fn partner(&self) -> &Eigenfunction<'c, T> {
        &self.base
    }

    pub fn value(&self, x: T) -> Result<Cx<T>> {
        let zeta = self
            .base
            .ctx
            .zeta(real(x) + self.omega)
            .map_err(|_| singular(x))?;
        Ok(self.base.value(x)? * (zeta + self.root * x))
    }

    pub fn derivative(&self, x: T) -> Result<Cx<T>> {
        let v = self
            .base
            .ctx
            .values(real(x) + self.omega)
            .map_err(|_| singular(x))?;
        let y = self.base.value(x)?;
        let dy = self.base.derivative(x)?;
        Ok(dy * (v.zeta + self.root * x) + y * (self.root - v.wp))
    }
}

/// The special solution at the half-period `which` (`ω1, ω2, ω3` pair with
/// `e1, e3, e2`).
pub fn special_eigenfunction<T: Real>(
    ctx: &EllipticContext<T>,
    which: HalfPeriod,
) -> Result<SpecialEigenfunction<'_, T>> {
    if ctx.kind().is_degenerate() {
        return Err(Error::DegenerateRoots);
    }
    let omega = ctx.omega(which);
    Ok(SpecialEigenfunction {
        base: eigenfunction(ctx, omega, Sign::Plus)?,
        omega,
        root: ctx.root_at(which),
    })
}

/// `W(x) = ℘′(x) / (2(℘(x) − e3))`.
pub fn superpotential<T: Real>(ctx: &EllipticContext<T>, x: T) -> Result<T> {
    require_three_real(ctx)?;
    let z = real(x);
    let v = ctx.values(z).map_err(|_| singular(x))?;
    let gap = ctx.wp_gap(z, HalfPeriod::Two).map_err(|_| singular(x))?;
    if gap.norm() <= T::min_positive_value() {
        return Err(singular(x));
    }
    Ok((v.wp_prime / (gap * T::lit(2.0))).re)
}

/// `A†y±(x; a) = −y±′ + W·y±`, which equals `(℘(a) − e3)·ψ±(x; a)`.
#[derive(Debug, Clone)]
pub struct CreationImage<'c, T> {
    y: Eigenfunction<'c, T>,
}

impl<'c, T: Real> CreationImage<'c, T> {
    /// The proportionality constant `℘(a) − e3` to `ψ±`.
    pub fn constant(&self) -> Cx<T> {
        self.y.wp_a - self.y.ctx.roots().e3
    }

    pub fn value(&self, x: T) -> Result<Cx<T>> {
        let w = superpotential(self.y.ctx, x)?;
        Ok(self.y.value(x)? * w - self.y.derivative(x)?)
    }
}

pub fn apply_creation<T: Real>(
    ctx: &EllipticContext<T>,
    a: Cx<T>,
    sign: Sign,
) -> Result<CreationImage<'_, T>> {
    require_three_real(ctx)?;
    Ok(CreationImage {
        y: eigenfunction(ctx, a, sign)?,
    })
}
