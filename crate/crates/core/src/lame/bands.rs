//! Crystal momentum and band structure.
//!
//! With `ω_L` the real half-period of the potential (`ω1`, or `ω1 + ω2` for
//! one real root), the eigenfunctions are Bloch waves
//! `y± = u±·e^{±ikx}`, `u±(x + 2ω_L) = u±(x)`, where
//!
//! ```text
//! ik(a) = f(a)/ω_L,    f(a) = a·ζ(ω_L) − ω_L·ζ(a).
//! ```
//!
//! A state is delta-normalizable iff `k` is real, i.e. iff `f(a)` is purely
//! imaginary. The spectrum is found by walking `a` along the locus where
//! `℘(a)` is real and testing `Re f`.

use crate::error::{Error, Result};
use crate::invariants::RootKind;
use crate::scalar::{imag, real, Cx, Real};
use crate::weierstrass::{EllipticContext, HalfPeriod};

use super::{bounded_eigenfunction, Sign};

/// Spectral classification of a single state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Band {
    /// Inside the finite band `[−e1, −e2]`.
    Valence,
    /// Inside the infinite band.
    Conduction,
    /// Exponentially growing, not normalizable.
    Gap,
    /// At a band edge `λ = −eᵢ`.
    Edge,
}

impl Band {
    pub fn name(self) -> &'static str {
        match self {
            Band::Valence => "valence",
            Band::Conduction => "conduction",
            Band::Gap => "gap",
            Band::Edge => "edge",
        }
    }
}

/// Which root a band edge sits at (`λ = −eᵢ`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeLabel {
    MinusE1,
    MinusE2,
    MinusE3,
}

impl EdgeLabel {
    pub fn name(self) -> &'static str {
        match self {
            EdgeLabel::MinusE1 => "-e1",
            EdgeLabel::MinusE2 => "-e2",
            EdgeLabel::MinusE3 => "-e3",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochState<T> {
    pub a: Cx<T>,
    /// `λ = −℘(a)`.
    pub lambda: T,
    pub k: Cx<T>,
    pub band: Band,
}

/// A closed interval of allowed energies; `upper` may be `+∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandInterval<T> {
    pub lower: T,
    pub upper: T,
    pub lower_edge: Option<EdgeLabel>,
    pub upper_edge: Option<EdgeLabel>,
    pub band: Band,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BandStructure<T> {
    pub kind: RootKind,
    pub bands: Vec<BandInterval<T>>,
    /// Every scanned state, in scan order.
    pub samples: Vec<BlochState<T>>,
    /// Failed consistency checks on the scan (empty when all is well).
    pub diagnostics: Vec<String>,
}

/// Default relative tolerance for both the Bloch test `|Re f| < tol·(1 + |f|)`
/// and edge snapping `|℘(a) − eᵢ| < tol·(1 + |eᵢ|)`.
pub const SCAN_TOLERANCE: f64 = 1e-9;
const ENDPOINT_OFFSET: f64 = 1e-6;

/// Real half-period of the potential `2℘(x)`: `ω1`, or `ω1 + ω2` with one
/// real root.
pub fn potential_half_period<T: Real>(ctx: &EllipticContext<T>) -> Result<Cx<T>> {
    match ctx.kind() {
        RootKind::ThreeReal => Ok(ctx.omega(HalfPeriod::One)),
        RootKind::OneReal => Ok(ctx.omega(HalfPeriod::Three)),
        _ => Err(Error::DegenerateRoots),
    }
}

fn potential_eta<T: Real>(ctx: &EllipticContext<T>) -> Cx<T> {
    match ctx.kind() {
        RootKind::OneReal => ctx.eta(HalfPeriod::Three),
        _ => ctx.eta(HalfPeriod::One),
    }
}

/// `f(a) = a·ζ(ω_L) − ω_L·ζ(a)`.
pub fn bloch_phase<T: Real>(ctx: &EllipticContext<T>, a: Cx<T>) -> Result<Cx<T>> {
    let wl = potential_half_period(ctx)?;
    if ctx.is_pole(a) {
        return Err(Error::SpectralParameterAtLatticePoint);
    }
    Ok(a * potential_eta(ctx) - wl * ctx.zeta(a)?)
}

/// `k(a) = f(a)/(i·ω_L)`.
pub fn crystal_momentum<T: Real>(ctx: &EllipticContext<T>, a: Cx<T>) -> Result<Cx<T>> {
    Ok(bloch_phase(ctx, a)? / (imag(T::one()) * potential_half_period(ctx)?))
}

fn edge_of<T: Real>(ctx: &EllipticContext<T>, p: Cx<T>, tol: T) -> Option<EdgeLabel> {
    let labels = [EdgeLabel::MinusE1, EdgeLabel::MinusE2, EdgeLabel::MinusE3];
    ctx.roots()
        .as_array()
        .into_iter()
        .zip(labels)
        .find(|(e, _)| e.im == T::zero() && (p - e).norm() < tol * (T::one() + e.norm()))
        .map(|(_, l)| l)
}

fn classify<T: Real>(ctx: &EllipticContext<T>, p: Cx<T>, bloch: bool, tol: T) -> Band {
    if edge_of(ctx, p, tol).is_some() {
        Band::Edge
    } else if !bloch {
        Band::Gap
    } else if ctx.kind() == RootKind::ThreeReal && p.re > ctx.roots().e2.re {
        Band::Valence
    } else {
        Band::Conduction
    }
}

/// Crystal momentum and classification of the state with parameter `a`.
pub fn bloch_state<T: Real>(ctx: &EllipticContext<T>, a: Cx<T>) -> Result<BlochState<T>> {
    classify_state(ctx, a, T::tol(SCAN_TOLERANCE))
}

fn classify_state<T: Real>(ctx: &EllipticContext<T>, a: Cx<T>, tol: T) -> Result<BlochState<T>> {
    let f = bloch_phase(ctx, a)?;
    let p = ctx.wp(a)?;
    let bloch = f.re.abs() < tol * (T::one() + f.norm());
    Ok(BlochState {
        a,
        lambda: -p.re,
        k: crystal_momentum(ctx, a)?,
        band: classify(ctx, p, bloch, tol),
    })
}

/// Sides of the locus on which `℘(a)` is real.
fn locus_sides<T: Real>(ctx: &EllipticContext<T>) -> Vec<(Cx<T>, Cx<T>)> {
    let zero = real(T::zero());
    let hp = ctx.half_periods();
    match ctx.kind() {
        RootKind::OneReal => vec![(zero, hp.omega3), (zero, hp.omega1 - hp.omega2)],
        _ => vec![
            (zero, hp.omega1),
            (hp.omega1, hp.omega3),
            (hp.omega3, hp.omega2),
            (hp.omega2, zero),
        ],
    }
}

fn scan_points<T: Real>(ctx: &EllipticContext<T>, n_samples: usize) -> Result<Vec<Cx<T>>> {
    if n_samples < 16 {
        return Err(Error::InvalidParameter(format!(
            "at least 16 samples per side required, got {n_samples}"
        )));
    }
    // Floored so that the first sample clears the pole guard in `f32`.
    let eps = T::lit(ENDPOINT_OFFSET).max(T::epsilon() * T::lit(1024.0));
    let span = T::one() - eps - eps;
    let last = T::lit((n_samples - 1) as f64);
    Ok(locus_sides(ctx)
        .into_iter()
        .flat_map(|(from, to)| {
            (0..n_samples).map(move |j| {
                let b = eps + span * T::lit(j as f64) / last;
                from + (to - from) * b
            })
        })
        .collect())
}

fn stationary_point_checks<T: Real>(
    ctx: &EllipticContext<T>,
    samples: &[BlochState<T>],
) -> Vec<String> {
    let mut out = Vec::new();
    let roots = ctx.roots();
    match ctx.kind() {
        RootKind::ThreeReal => {
            // f′(a) = ζ(ω1) + ω1℘(a) vanishes where ℘(a) = −η1/ω1, which must
            // lie on [ω2, ω3], i.e. strictly between e3 and e2.
            let hp = ctx.half_periods();
            let p_star = -hp.eta1.re / hp.omega1.re;
            if !(p_star > roots.e3.re && p_star < roots.e2.re) {
                out.push(format!(
                    "stationary point of f at wp = {p_star} is not inside (e3, e2)"
                ));
            }
            let n = samples.len() / 4;
            let dips = samples[2 * n..3 * n]
                .iter()
                .filter_map(|s| bloch_phase(ctx, s.a).ok())
                .any(|f| f.re < T::zero());
            if !dips {
                out.push("Re f does not dip below zero on [omega3, omega2]".into());
            }
        }
        RootKind::OneReal => {
            let hp = ctx.half_periods();
            let p_star = -(hp.eta1 + hp.eta2).re / hp.omega3.re;
            if p_star.is_nan() || p_star >= roots.e2.re {
                out.push(format!(
                    "stationary point of f at wp = {p_star} is not on the imaginary segment"
                ));
            }
        }
        _ => {}
    }
    out
}

fn check_tolerance<T: Real>(tolerance: f64) -> Result<T> {
    if tolerance.is_finite() && tolerance > 0.0 {
        Ok(T::tol(tolerance))
    } else {
        Err(Error::InvalidParameter(format!(
            "tolerance must be positive, got {tolerance}"
        )))
    }
}

/// Groups the in-band samples into intervals, snapping edges to the roots.
fn intervals<T: Real>(
    ctx: &EllipticContext<T>,
    samples: &[BlochState<T>],
    tol: T,
) -> Vec<BandInterval<T>> {
    let mut sorted: Vec<&BlochState<T>> = samples.iter().collect();
    sorted.sort_by(|x, y| {
        x.lambda
            .partial_cmp(&y.lambda)
            .unwrap_or(core::cmp::Ordering::Equal)
    });
    let snap = |lambda: T| -> (T, Option<EdgeLabel>) {
        match edge_of(ctx, real(-lambda), tol) {
            Some(label) => {
                let r = ctx.roots().as_array();
                let e = match label {
                    EdgeLabel::MinusE1 => r[0],
                    EdgeLabel::MinusE2 => r[1],
                    EdgeLabel::MinusE3 => r[2],
                };
                (-e.re, Some(label))
            }
            None => (lambda, None),
        }
    };
    let mut out: Vec<BandInterval<T>> = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        if sorted[i].band == Band::Gap {
            i += 1;
            continue;
        }
        let start = i;
        while i + 1 < sorted.len() && sorted[i + 1].band != Band::Gap {
            i += 1;
        }
        let (lower, lower_edge) = snap(sorted[start].lambda);
        let (upper, upper_edge) = if i + 1 == sorted.len() {
            (T::infinity(), None)
        } else {
            snap(sorted[i].lambda)
        };
        let slack = tol * (T::one() + lower.abs());
        match out.last_mut() {
            Some(prev) if lower <= prev.upper + slack => {
                prev.upper = upper;
                prev.upper_edge = upper_edge;
            }
            _ => out.push(BandInterval {
                lower,
                upper,
                lower_edge,
                upper_edge,
                band: Band::Valence,
            }),
        }
        i += 1;
    }
    for b in &mut out {
        b.band = if b.upper.is_infinite() {
            Band::Conduction
        } else {
            Band::Valence
        };
    }
    out
}

/// Band structure of `2℘(x)` from the sign of `Re f` along the locus,
/// `n_samples` (at least 16) per side.
pub fn band_structure<T: Real>(
    ctx: &EllipticContext<T>,
    n_samples: usize,
) -> Result<BandStructure<T>> {
    band_structure_with_tolerance(ctx, n_samples, SCAN_TOLERANCE)
}

/// [`band_structure`] with a custom scan tolerance in place of
/// [`SCAN_TOLERANCE`].
pub fn band_structure_with_tolerance<T: Real>(
    ctx: &EllipticContext<T>,
    n_samples: usize,
    tolerance: f64,
) -> Result<BandStructure<T>> {
    potential_half_period(ctx)?;
    let tol = check_tolerance::<T>(tolerance)?;
    let samples = scan_points(ctx, n_samples)?
        .into_iter()
        .map(|a| classify_state(ctx, a, tol))
        .collect::<Result<Vec<_>>>()?;
    Ok(BandStructure {
        kind: ctx.kind(),
        bands: intervals(ctx, &samples, tol),
        diagnostics: stationary_point_checks(ctx, &samples),
        samples,
    })
}

/// Band structure of the bounded potential `2℘(x + ω2)`, found
/// independently from the Floquet multiplier `ψ₊(x + 2ω1)/ψ₊(x)`.
pub fn bounded_band_structure<T: Real>(
    ctx: &EllipticContext<T>,
    n_samples: usize,
) -> Result<BandStructure<T>> {
    if ctx.kind() != RootKind::ThreeReal {
        return Err(if ctx.kind() == RootKind::OneReal {
            Error::OneRealClassification
        } else {
            Error::DegenerateRoots
        });
    }
    let tol = T::tol(SCAN_TOLERANCE);
    let w1 = ctx.omega(HalfPeriod::One).re;
    let period = w1 + w1;
    let probes = [T::lit(0.3) * w1, T::lit(0.7) * w1];
    let mut samples = Vec::new();
    for a in scan_points(ctx, n_samples)? {
        let psi = bounded_eigenfunction(ctx, a, Sign::Plus)?;
        let x = probes
            .into_iter()
            .max_by(|p, q| {
                let (u, v) = (
                    psi.value(*p).map(|v| v.norm()),
                    psi.value(*q).map(|v| v.norm()),
                );
                u.unwrap_or(T::zero())
                    .partial_cmp(&v.unwrap_or(T::zero()))
                    .unwrap_or(core::cmp::Ordering::Equal)
            })
            .unwrap_or(probes[0]);
        let log_multiplier = (psi.value(x + period)? / psi.value(x)?).ln();
        let ik = log_multiplier / period;
        let half = T::lit(0.5);
        let bloch =
            (log_multiplier.re * half).abs() < tol * (T::one() + (log_multiplier * half).norm());
        let p = ctx.wp(a)?;
        samples.push(BlochState {
            a,
            lambda: -p.re,
            k: ik / imag(T::one()),
            band: classify(ctx, p, bloch, tol),
        });
    }
    Ok(BandStructure {
        kind: ctx.kind(),
        bands: intervals(ctx, &samples, tol),
        diagnostics: Vec::new(),
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn phase_at_half_periods() {
        let c = EllipticContext::from_invariants(4.0_f64, 0.0).unwrap();
        assert!(bloch_phase(&c, c.omega(HalfPeriod::One)).unwrap().norm() < 1e-12);
        for w in [HalfPeriod::Two, HalfPeriod::Three] {
            let f = bloch_phase(&c, c.omega(w)).unwrap();
            assert!((f - imag(FRAC_PI_2)).norm() < 1e-11, "{w:?}: {f}");
        }
        let k = crystal_momentum(&c, c.omega(HalfPeriod::Two)).unwrap();
        assert!((k.re - FRAC_PI_2 / c.omega(HalfPeriod::One).re).abs() < 1e-11);
    }

    #[test]
    fn lemniscatic_bands() {
        let c = EllipticContext::from_invariants(4.0_f64, 0.0).unwrap();
        let bs = band_structure(&c, 64).unwrap();
        assert!(bs.diagnostics.is_empty(), "{:?}", bs.diagnostics);
        assert_eq!(bs.bands.len(), 2, "{:?}", bs.bands);
        let (v, cb) = (bs.bands[0], bs.bands[1]);
        assert_eq!((v.lower, v.upper, cb.lower), (-1.0, 0.0, 1.0));
        assert!(cb.upper.is_infinite());
        assert_eq!(
            (v.lower_edge, v.upper_edge, cb.lower_edge),
            (
                Some(EdgeLabel::MinusE1),
                Some(EdgeLabel::MinusE2),
                Some(EdgeLabel::MinusE3)
            )
        );
    }

    #[test]
    fn one_real_root_single_band() {
        let c = EllipticContext::from_invariants(-4.0_f64, 0.0).unwrap();
        let bs = band_structure(&c, 64).unwrap();
        assert!(bs.diagnostics.is_empty(), "{:?}", bs.diagnostics);
        assert_eq!(bs.bands.len(), 1, "{:?}", bs.bands);
        assert_eq!(bs.bands[0].lower, 0.0);
        assert!(bs.bands[0].upper.is_infinite());
    }

    #[test]
    fn bounded_bands_match() {
        let c = EllipticContext::from_invariants(7.0_f64, -1.5).unwrap();
        let a = band_structure(&c, 48).unwrap();
        let b = bounded_band_structure(&c, 48).unwrap();
        assert_eq!(a.bands, b.bands);
    }
}
