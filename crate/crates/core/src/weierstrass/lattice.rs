//! Evaluation engine for non-degenerate lattices.
//!
//! All work happens on the lattice rescaled by `μ = 1/ρ`, where `ρ` is the
//! length of the shortest nonzero period, so that the Laurent series always
//! sees the same geometry:
//!
//! ```text
//! ℘(z) = μ²℘ₙ(μz),  ℘′(z) = μ³℘ₙ′(μz),  ζ(z) = μζₙ(μz),  σ(z) = σₙ(μz)/μ
//! ```
//!
//! A point is first moved to the nearest lattice point's Voronoi cell, then
//! halved until it lies well inside the disc of convergence, evaluated by
//! the series, and brought back with the duplication formulas
//!
//! ```text
//! ℘(2z) = ℘/4 + (3g2℘² + 9g3℘ + g2²/4) / (4℘′²)
//! ζ(2z) = 2ζ + ℘″/(2℘′)
//! σ(2z) = −℘′σ⁴
//! ```
//!
//! `ζ` and `σ` are finally transported to the original point with their
//! quasi-periodicity laws.

use crate::invariants::{reduce_basis, HalfPeriods};
use crate::scalar::{imag, real, Cx, Real};

use super::{CellReducedPoint, LaurentTable, Values};

/// Radius (in units of the shortest period) inside which the series is used.
const SERIES_RADIUS: f64 = 0.35;
/// Pole guard, in units of the shortest period.
pub(crate) const POLE_GUARD: f64 = 1e-12;

#[derive(Debug, Clone)]
pub(crate) struct Lattice<T> {
    omega1: Cx<T>,
    omega2: Cx<T>,
    eta1: Cx<T>,
    eta2: Cx<T>,
    mu: T,
    g2n: T,
    g3n: T,
    series: LaurentTable<T>,
    basis: [Cx<T>; 2],
    to_original: [[i64; 2]; 2],
    coords: [[T; 2]; 2],
}

fn inverse_2x2<T: Real>(a: Cx<T>, b: Cx<T>) -> [[T; 2]; 2] {
    // Columns a and b as real 2-vectors.
    let det = a.re * b.im - b.re * a.im;
    [[b.im / det, -b.re / det], [-a.im / det, a.re / det]]
}

fn parity_sign<T: Real>(m: i64, n: i64) -> T {
    if (m + n + m * n).rem_euclid(2) == 0 {
        T::one()
    } else {
        -T::one()
    }
}

impl<T: Real> Lattice<T> {
    pub(crate) fn new(g2: T, g3: T, omega1: Cx<T>, omega2: Cx<T>) -> Self {
        let two = T::lit(2.0);
        let (raw, to_original) = reduce_basis(omega1 * two, omega2 * two);
        let rho = raw[0].norm();
        let mu = T::one() / rho;
        let rho2 = rho * rho;
        let g2n = g2 * rho2 * rho2;
        let g3n = g3 * rho2 * rho2 * rho2;
        let basis = [raw[0] * mu, raw[1] * mu];
        let mut lattice = Self {
            omega1,
            omega2,
            eta1: real(T::zero()),
            eta2: real(T::zero()),
            mu,
            g2n,
            g3n,
            series: LaurentTable::new(g2n, g3n, LaurentTable::<T>::DEFAULT_LEN),
            basis,
            to_original,
            coords: inverse_2x2(basis[0], basis[1]),
        };
        // η1 straight from the series/duplication chain (ω1 itself need not
        // be reduced); η2 from the Legendre relation with the orientation of
        // the basis.
        let eta1 = lattice.local(omega1 * mu).zeta * mu;
        let orientation = if (omega2 / omega1).im > T::zero() {
            T::one()
        } else {
            -T::one()
        };
        let eta2 = (omega2 * eta1 - imag(orientation * T::FRAC_PI_2())) / omega1;
        lattice.eta1 = eta1;
        lattice.eta2 = eta2;
        lattice
    }

    pub(crate) fn half_periods(&self) -> HalfPeriods<T> {
        HalfPeriods {
            omega1: self.omega1,
            omega2: self.omega2,
            omega3: self.omega1 + self.omega2,
            eta1: self.eta1,
            eta2: self.eta2,
        }
    }

    fn series_at(&self, v: Cx<T>) -> Values<T> {
        let w = v * v;
        let zero = real(T::zero());
        let (mut p, mut d, mut z, mut s) = (zero, zero, zero, zero);
        for (i, &a) in self.series.coefficients().iter().enumerate().rev() {
            let l = T::lit((i + 1) as f64);
            let two_l = l + l;
            p = p * w + a;
            d = d * w + a * two_l;
            z = z * w + a / (two_l + T::one());
            s = s * w + a / ((two_l + T::one()) * (two_l + T::lit(2.0)));
        }
        let (p, d, z, s) = (p * w, d * w, z * w, s * w);
        let one = real(T::one());
        let inv_w = one / w;
        let log_factor = (-s * w).exp();
        Values {
            wp: inv_w + p,
            wp_prime: (d - inv_w * T::lit(2.0)) / v,
            zeta: one / v - v * z,
            sigma: v * log_factor,
            sigma_prime: log_factor * (one - w * z),
        }
    }

    fn double(&self, l: Values<T>) -> Values<T> {
        let (g2, g3) = (self.g2n, self.g3n);
        let (p, dp) = (l.wp, l.wp_prime);
        let four = T::lit(4.0);
        let q = dp * dp;
        let n = p * p * (T::lit(3.0) * g2) + p * (T::lit(9.0) * g3) + g2 * g2 / four;
        let dn = p * (T::lit(6.0) * g2) + T::lit(9.0) * g3;
        let dq = p * p * T::lit(12.0) - g2;
        let ddp = p * p * T::lit(6.0) - g2 / T::lit(2.0);
        let slope = real(T::lit(0.25)) + (dn * q - n * dq) / (q * q * four);
        let s2 = l.sigma * l.sigma;
        let s3 = s2 * l.sigma;
        Values {
            wp: p / four + n / (q * four),
            wp_prime: dp * slope / T::lit(2.0),
            zeta: l.zeta * T::lit(2.0) + ddp / (dp * T::lit(2.0)),
            sigma: -dp * s3 * l.sigma,
            sigma_prime: -(ddp * s3 * l.sigma + dp * s3 * l.sigma_prime * four) / T::lit(2.0),
        }
    }

    /// Values of the normalized functions at a normalized point, without any
    /// reduction.
    fn local(&self, u: Cx<T>) -> Values<T> {
        let radius = T::lit(SERIES_RADIUS);
        let mut v = u;
        let mut halvings = 0;
        while v.norm() > radius && halvings < 256 {
            v = v / T::lit(2.0);
            halvings += 1;
        }
        let mut values = self.series_at(v);
        for _ in 0..halvings {
            values = self.double(values);
        }
        values
    }

    /// Nearest lattice point to `z`: returns the normalized remainder and the
    /// lattice indices in the `(2ω1, 2ω2)` basis.
    fn nearest(&self, z: Cx<T>) -> (Cx<T>, i64, i64) {
        let u = z * self.mu;
        let c = &self.coords;
        let x = c[0][0] * u.re + c[0][1] * u.im;
        let y = c[1][0] * u.re + c[1][1] * u.im;
        let (m0, n0) = (
            x.round().to_i64().unwrap_or(0),
            y.round().to_i64().unwrap_or(0),
        );
        let at = |m: i64, n: i64| {
            u - self.basis[0] * T::lit(m as f64) - self.basis[1] * T::lit(n as f64)
        };
        let mut best = (at(m0, n0), m0, n0);
        for dm in -1..=1 {
            for dn in -1..=1 {
                let cand = at(m0 + dm, n0 + dn);
                if cand.norm() < best.0.norm() {
                    best = (cand, m0 + dm, n0 + dn);
                }
            }
        }
        let (ur, mp, np) = best;
        let u_ = &self.to_original;
        (
            ur,
            mp * u_[0][0] + np * u_[1][0],
            mp * u_[0][1] + np * u_[1][1],
        )
    }

    pub(crate) fn is_pole(&self, z: Cx<T>) -> bool {
        self.nearest(z).0.norm() < T::tol(POLE_GUARD)
    }

    /// All function values at `z`; `℘`, `℘′` and `ζ` are non-finite at a
    /// lattice point.
    pub(crate) fn values(&self, z: Cx<T>) -> Values<T> {
        let (ur, m, n) = self.nearest(z);
        let l = self.local(ur);
        let mu = self.mu;
        let zr = ur / mu;
        let (mf, nf) = (T::lit(m as f64), T::lit(n as f64));
        let shift = (self.eta1 * mf + self.eta2 * nf) * T::lit(2.0);
        let factor =
            (shift * (zr + self.omega1 * mf + self.omega2 * nf)).exp() * parity_sign::<T>(m, n);
        let sigma_r = l.sigma / mu;
        Values {
            wp: l.wp * (mu * mu),
            wp_prime: l.wp_prime * (mu * mu * mu),
            zeta: l.zeta * mu + shift,
            sigma: factor * sigma_r,
            sigma_prime: factor * (shift * sigma_r + l.sigma_prime),
        }
    }

    /// Reduction in the `(2ω1, 2ω2)` basis with ties rounded toward zero.
    pub(crate) fn reduce(&self, z: Cx<T>) -> CellReducedPoint<T> {
        let two = T::lit(2.0);
        let (a, b) = (self.omega1 * two, self.omega2 * two);
        let c = inverse_2x2(a, b);
        let x = c[0][0] * z.re + c[0][1] * z.im;
        let y = c[1][0] * z.re + c[1][1] * z.im;
        let m = round_half_toward_zero(x);
        let n = round_half_toward_zero(y);
        let z_reduced = z - a * T::lit(m as f64) - b * T::lit(n as f64);
        CellReducedPoint { z_reduced, m, n }
    }
}

pub(crate) fn round_half_toward_zero<T: Real>(x: T) -> i64 {
    let t = x.trunc();
    let r = if (x - t).abs() == T::lit(0.5) {
        t
    } else {
        x.round()
    };
    r.to_i64().unwrap_or(0)
}
