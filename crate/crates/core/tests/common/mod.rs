//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wkit::{Complex64, EllipticContext64, RootKind};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random real invariants of the requested kind, kept away from the
/// degenerate locus.
pub fn random_context(rng: &mut ChaCha8Rng, kind: Option<RootKind>) -> EllipticContext64 {
    loop {
        let (g2, g3) = (rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0));
        let disc: f64 = g2 * g2 * g2 - 27.0 * g3 * g3;
        if disc.abs() < 1e-2 * (g2 * g2 * g2).abs().max(27.0 * g3 * g3) {
            continue;
        }
        let ctx = EllipticContext64::from_invariants(g2, g3).unwrap();
        if kind.is_none_or(|k| k == ctx.kind()) {
            return ctx;
        }
    }
}

/// A random point of the fundamental cell spanned by `2ω1, 2ω2`, at least
/// `margin` (relative to the cell) away from its corners.
pub fn random_in_cell(rng: &mut ChaCha8Rng, ctx: &EllipticContext64, margin: f64) -> Complex64 {
    let hp = ctx.half_periods();
    loop {
        let (u, v): (f64, f64) = (rng.gen(), rng.gen());
        let near_corner = [0.0, 1.0].iter().any(|&cu: &f64| {
            [0.0, 1.0]
                .iter()
                .any(|&cv: &f64| (u - cu).hypot(v - cv) < margin)
        });
        if !near_corner {
            return hp.omega1 * (2.0 * u) + hp.omega2 * (2.0 * v);
        }
    }
}

/// Adaptive 7/15-point Gauss–Kronrod on `[a, b]`, bisecting the interval
/// with the largest error estimate until the total estimate is below `tol`.
#[allow(clippy::excessive_precision)]
pub fn adaptive_gk(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    const XK: [f64; 8] = [
        0.991455371120812639206854697526329,
        0.949107912342758524526189684047851,
        0.864864423359769072789712788640926,
        0.741531185599394439863864773280788,
        0.586087235467691130294144845693013,
        0.405845151377397166906606412076961,
        0.207784955007898467600689403773245,
        0.000000000000000000000000000000000,
    ];
    const WK: [f64; 8] = [
        0.022935322010529224963732008058970,
        0.063092092629978553290700663189204,
        0.104790010322250183839876322541518,
        0.140653259715525918745189590510238,
        0.169004726639267902826583426598550,
        0.190350578064785409913256402421014,
        0.204432940075298892414161999234649,
        0.209482141084727828012999174891714,
    ];
    const WG: [f64; 4] = [
        0.129484966168869693270611432679082,
        0.279705391489276667901467771423780,
        0.381830050505118944950369775488975,
        0.417959183673469387755102040816327,
    ];
    let rule = |a: f64, b: f64| -> (f64, f64) {
        let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
        let fc = f(c);
        let (mut k, mut g) = (WK[7] * fc, WG[3] * fc);
        for j in 0..7 {
            let s = f(c - h * XK[j]) + f(c + h * XK[j]);
            k += WK[j] * s;
            if j % 2 == 1 {
                g += WG[j / 2] * s;
            }
        }
        (k * h, ((k - g) * h).abs())
    };
    let mut pieces = vec![(a, b, rule(a, b))];
    for _ in 0..20_000 {
        let (total_err, worst) = pieces.iter().enumerate().fold((0.0, 0), |(s, w), (i, p)| {
            (s + p.2 .1, if p.2 .1 > pieces[w].2 .1 { i } else { w })
        });
        if total_err < tol {
            break;
        }
        let (lo, hi, _) = pieces.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        pieces.push((lo, mid, rule(lo, mid)));
        pieces.push((mid, hi, rule(mid, hi)));
    }
    pieces.iter().map(|p| p.2 .0).sum()
}

/// `∫_r^∞ dt/√|P(t)|` (`sign = +1`) or `∫_{−∞}^r dt/√|P(t)|` (`sign = −1`)
/// for the Weierstrass cubic with root `r`, integrated as it stands: the
/// inverse square root singularity at `r` is left to the adaptive rule and
/// the tail is mapped to a finite interval by `t = r ± 1/w`.
pub fn brute_force_period_integral(g2: f64, r: f64, sign: f64, tol: f64) -> f64 {
    // The cubic expanded about its root, so that tiny offsets u survive.
    let p = |u: f64| (u * (4.0 * u * u + 12.0 * r * u + 12.0 * r * r - g2)).abs();
    let near = adaptive_gk(&|u| 1.0 / p(sign * u).sqrt(), 0.0, 1.0, tol / 2.0);
    let tail = adaptive_gk(&|w| 1.0 / (w * w * p(sign / w).sqrt()), 0.0, 1.0, tol / 2.0);
    near + tail
}

/// Classical fourth-order Runge–Kutta for `ẍ = a(x)`, returning the state
/// after `n` steps of size `h`, calling `visit(step, x, v)` after each one.
pub fn rk4(
    accel: &dyn Fn(f64) -> f64,
    mut x: f64,
    mut v: f64,
    h: f64,
    n: usize,
    visit: &mut dyn FnMut(usize, f64, f64),
) -> (f64, f64) {
    for step in 1..=n {
        let (k1x, k1v) = (v, accel(x));
        let (k2x, k2v) = (v + 0.5 * h * k1v, accel(x + 0.5 * h * k1x));
        let (k3x, k3v) = (v + 0.5 * h * k2v, accel(x + 0.5 * h * k2x));
        let (k4x, k4v) = (v + h * k3v, accel(x + h * k3x));
        x += h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        visit(step, x, v);
    }
    (x, v)
}

/// Finite-difference Hamiltonian `−d²/dx² + V(x)` on a ring of `n` points
/// with spacing `h`; `twist = ±1` selects periodic or antiperiodic
/// boundary conditions.
pub struct RingOperator {
    diag: Vec<f64>,
    off: f64,
    corner: f64,
}

impl RingOperator {
    pub fn new(potential: &[f64], h: f64, twist: f64) -> Self {
        let off = -1.0 / (h * h);
        Self {
            diag: potential.iter().map(|v| v + 2.0 / (h * h)).collect(),
            off,
            corner: twist * off,
        }
    }

    /// Number of eigenvalues below `lambda`: the count of negative pivots in
    /// the symmetric elimination of `H − λ`, where the ring closure only
    /// fills the last column.
    pub fn count_below(&self, lambda: f64) -> usize {
        let n = self.diag.len();
        let guard = |d: f64| if d == 0.0 { -1e-300 } else { d };
        let mut negatives = 0;
        let mut d = guard(self.diag[0] - lambda);
        let mut u = self.corner;
        let mut last = self.diag[n - 1] - lambda - u * u / d;
        negatives += (d < 0.0) as usize;
        for i in 1..n - 1 {
            let b = self.off;
            let coupling = if i == n - 2 { self.off } else { 0.0 };
            let next_d = guard(self.diag[i] - lambda - b * b / d);
            let next_u = coupling - b * u / d;
            d = next_d;
            u = next_u;
            negatives += (d < 0.0) as usize;
            last -= u * u / d;
        }
        negatives + (last < 0.0) as usize
    }

    /// The `k`-th smallest eigenvalue (from zero) by bisection.
    pub fn eigenvalue(&self, k: usize) -> f64 {
        let spread = 4.0 * self.off.abs();
        let lo0 = self.diag.iter().cloned().fold(f64::INFINITY, f64::min) - spread;
        let hi0 = self.diag.iter().cloned().fold(f64::NEG_INFINITY, f64::max) + spread;
        let (mut lo, mut hi) = (lo0, hi0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
            if hi - lo < 1e-13 * (1.0 + mid.abs()) {
                break;
            }
        }
        0.5 * (lo + hi)
    }
}

/// Lowest periodic and two lowest antiperiodic eigenvalues of
/// `−d²/dx² + 2℘(x + ω2)` on `[0, 2ω1)` with `n` grid points.
pub fn bounded_lame_edges(ctx: &EllipticContext64, n: usize) -> [f64; 3] {
    let hp = ctx.half_periods();
    let period = 2.0 * hp.omega1.re;
    let h = period / n as f64;
    let v: Vec<f64> = (0..n)
        .map(|j| {
            2.0 * ctx
                .wp(Complex64::new(j as f64 * h, 0.0) + hp.omega2)
                .unwrap()
                .re
        })
        .collect();
    let periodic = RingOperator::new(&v, h, 1.0);
    let anti = RingOperator::new(&v, h, -1.0);
    [
        periodic.eigenvalue(0),
        anti.eigenvalue(0),
        anti.eigenvalue(1),
    ]
}

/// Five-point second derivative.
pub fn second_derivative<F: Fn(f64) -> Complex64>(f: F, x: f64, h: f64) -> Complex64 {
    (-f(x + 2.0 * h) + f(x + h) * 16.0 - f(x) * 30.0 + f(x - h) * 16.0 - f(x - 2.0 * h))
        / (12.0 * h * h)
}

/// `ζ(ω) = 1/ω − ∫₀^ω (℘(u) − 1/u²) du` along the straight segment, using
/// only `℘`; the Laurent tail replaces the cancelling difference near 0.
pub fn zeta_by_quadrature(ctx: &EllipticContext64, omega: Complex64) -> Complex64 {
    let inv = ctx.invariants();
    let (g2, g3) = (inv.g2, inv.g3);
    let regular = |s: f64| -> Complex64 {
        let u = omega * s;
        let regular = if u.norm() < 0.02 {
            let u2 = u * u;
            u2 * (g2 / 20.0 + u2 * (g3 / 28.0 + u2 * (g2 * g2 / 1200.0)))
        } else {
            ctx.wp(u).unwrap() - (u * u).inv()
        };
        regular * omega
    };
    let re = adaptive_gk(&|s| regular(s).re, 0.0, 1.0, 1e-14);
    let im = adaptive_gk(&|s| regular(s).im, 0.0, 1.0, 1e-14);
    omega.inv() - Complex64::new(re, im)
}
