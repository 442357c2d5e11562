//! Weierstrass `℘`, `℘′`, `ζ` and `σ` for real invariants, evaluated anywhere
//! in the complex plane, together with the addition, duplication and
//! half-period shift formulas.
//!
//! # References
//!
//! * Abramowitz & Stegun, ch. 18; DLMF §23.

mod degenerate;
mod lattice;
mod laurent;

pub use degenerate::wp_degenerate;
pub(crate) use lattice::Lattice;
pub use laurent::LaurentTable;

use crate::error::{Error, Result};
use crate::invariants::{
    cubic_roots, degenerate_half_periods, fundamental_half_periods, CubicRoots, HalfPeriods,
    Invariants, RootKind,
};
use crate::scalar::{real, Cx, Real};

/// `z = z_reduced + 2m·ω1 + 2n·ω2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellReducedPoint<T> {
    pub z_reduced: Cx<T>,
    pub m: i64,
    pub n: i64,
}

/// Simultaneous values of the Weierstrass family at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Values<T> {
    pub wp: Cx<T>,
    pub wp_prime: Cx<T>,
    pub zeta: Cx<T>,
    pub sigma: Cx<T>,
    pub sigma_prime: Cx<T>,
}

/// One of the three half-periods `ω1`, `ω2`, `ω3 = ω1 + ω2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HalfPeriod {
    One,
    Two,
    Three,
}

impl HalfPeriod {
    pub fn from_index(i: u8) -> Option<Self> {
        match i {
            1 => Some(HalfPeriod::One),
            2 => Some(HalfPeriod::Two),
            3 => Some(HalfPeriod::Three),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
enum Repr<T> {
    Lattice(Lattice<T>),
    Degenerate { kind: RootKind, e0: T },
}

/// Everything needed to evaluate the Weierstrass functions of one lattice.
///
/// Immutable after construction; share it freely between threads.
#[derive(Debug, Clone)]
pub struct EllipticContext<T> {
    inv: Invariants<T>,
    roots: CubicRoots<T>,
    hp: HalfPeriods<T>,
    laurent: LaurentTable<T>,
    repr: Repr<T>,
}

impl<T: Real> EllipticContext<T> {
    pub fn new(inv: Invariants<T>) -> Result<Self> {
        let roots = cubic_roots(&inv);
        let laurent = LaurentTable::new(inv.g2, inv.g3, LaurentTable::<T>::DEFAULT_LEN);
        let (hp, repr) = match roots.kind {
            RootKind::ThreeReal | RootKind::OneReal => {
                let (w1, w2) = fundamental_half_periods(&roots)?;
                let lattice = Lattice::new(inv.g2, inv.g3, w1, w2);
                (lattice.half_periods(), Repr::Lattice(lattice))
            }
            kind => {
                let e0 = roots.e0().unwrap_or_else(T::zero);
                (
                    degenerate_half_periods(&roots),
                    Repr::Degenerate { kind, e0 },
                )
            }
        };
        Ok(Self {
            inv,
            roots,
            hp,
            laurent,
            repr,
        })
    }

    pub fn from_invariants(g2: T, g3: T) -> Result<Self> {
        Self::new(Invariants::new(g2, g3)?)
    }

    pub fn invariants(&self) -> &Invariants<T> {
        &self.inv
    }

    pub fn roots(&self) -> &CubicRoots<T> {
        &self.roots
    }

    pub fn kind(&self) -> RootKind {
        self.roots.kind
    }

    /// Half-periods and `η` constants; degenerate lattices carry infinities.
    pub fn half_periods(&self) -> &HalfPeriods<T> {
        &self.hp
    }

    pub fn laurent(&self) -> &LaurentTable<T> {
        &self.laurent
    }

    pub fn omega(&self, which: HalfPeriod) -> Cx<T> {
        match which {
            HalfPeriod::One => self.hp.omega1,
            HalfPeriod::Two => self.hp.omega2,
            HalfPeriod::Three => self.hp.omega3,
        }
    }

    /// The root taken at a half-period: `℘(ω1) = e1`, `℘(ω2) = e3`,
    /// `℘(ω3) = e2`.
    pub fn root_at(&self, which: HalfPeriod) -> Cx<T> {
        match which {
            HalfPeriod::One => self.roots.e1,
            HalfPeriod::Two => self.roots.e3,
            HalfPeriod::Three => self.roots.e2,
        }
    }

    /// `ζ(ω)` for a half-period.
    pub fn eta(&self, which: HalfPeriod) -> Cx<T> {
        match which {
            HalfPeriod::One => self.hp.eta1,
            HalfPeriod::Two => self.hp.eta2,
            HalfPeriod::Three => self.hp.eta1 + self.hp.eta2,
        }
    }

    /// True when `z` lies within the pole guard of a lattice point.
    pub fn is_pole(&self, z: Cx<T>) -> bool {
        match &self.repr {
            Repr::Lattice(l) => l.is_pole(z),
            Repr::Degenerate { kind, e0 } => degenerate::local_guarded(*kind, *e0, z).is_err(),
        }
    }

    fn raw(&self, z: Cx<T>) -> Values<T> {
        match &self.repr {
            Repr::Lattice(l) => l.values(z),
            Repr::Degenerate { kind, e0 } => degenerate::local(*kind, *e0, z).unwrap_or(Values {
                wp: real(T::nan()),
                wp_prime: real(T::nan()),
                zeta: real(T::nan()),
                sigma: real(T::nan()),
                sigma_prime: real(T::nan()),
            }),
        }
    }

    /// All values at `z`; fails with `PoleAt` inside the pole guard.
    pub fn values(&self, z: Cx<T>) -> Result<Values<T>> {
        if self.is_pole(z) {
            return Err(Error::pole(z));
        }
        Ok(self.raw(z))
    }

    pub fn wp(&self, z: Cx<T>) -> Result<Cx<T>> {
        Ok(self.values(z)?.wp)
    }

    pub fn wp_prime(&self, z: Cx<T>) -> Result<Cx<T>> {
        Ok(self.values(z)?.wp_prime)
    }

    pub fn zeta(&self, z: Cx<T>) -> Result<Cx<T>> {
        Ok(self.values(z)?.zeta)
    }

    /// `σ` is entire; no pole guard applies.
    pub fn sigma(&self, z: Cx<T>) -> Cx<T> {
        self.raw(z).sigma
    }

    pub fn sigma_prime(&self, z: Cx<T>) -> Cx<T> {
        self.raw(z).sigma_prime
    }

    /// Cell reduction in the `(2ω1, 2ω2)` basis, ties rounded toward zero.
    ///
    /// Degenerate lattices reduce along their single finite period.
    pub fn reduce(&self, z: Cx<T>) -> CellReducedPoint<T> {
        match &self.repr {
            Repr::Lattice(l) => l.reduce(z),
            Repr::Degenerate { kind, .. } => {
                let two = T::lit(2.0);
                let (period, along_first) = match kind {
                    RootKind::DoubleSmaller => (self.hp.omega1 * two, true),
                    RootKind::DoubleLarger => (self.hp.omega2 * two, false),
                    _ => {
                        return CellReducedPoint {
                            z_reduced: z,
                            m: 0,
                            n: 0,
                        }
                    }
                };
                let k = lattice::round_half_toward_zero((z / period).re);
                let z_reduced = z - period * T::lit(k as f64);
                if along_first {
                    CellReducedPoint {
                        z_reduced,
                        m: k,
                        n: 0,
                    }
                } else {
                    CellReducedPoint {
                        z_reduced,
                        m: 0,
                        n: k,
                    }
                }
            }
        }
    }

    /// Addition theorem
    /// `℘(z + w) = −℘(z) − ℘(w) + ¼((℘′(z) − ℘′(w))/(℘(z) − ℘(w)))²`.
    pub fn wp_add(&self, z: Cx<T>, w: Cx<T>) -> Result<Cx<T>> {
        if self.is_pole(z + w) {
            return Err(Error::pole(z + w));
        }
        let a = self.values(z)?;
        let b = self.values(w)?;
        let diff = a.wp - b.wp;
        if diff.norm() <= T::tol(1e-8) * (T::one() + a.wp.norm() + b.wp.norm()) {
            return Err(Error::DegenerateArguments);
        }
        let slope = (a.wp_prime - b.wp_prime) / diff;
        Ok(slope * slope * T::lit(0.25) - a.wp - b.wp)
    }

    /// `℘(2z) = ℘/4 + (3g2℘² + 9g3℘ + g2²/4)/(4℘′²)`.
    pub fn wp_duplicate(&self, z: Cx<T>) -> Result<Cx<T>> {
        let v = self.values(z)?;
        let (p, dp) = (v.wp, v.wp_prime);
        if dp.norm() <= T::tol(1e-10) * (T::one() + p.norm().powf(T::lit(1.5))) {
            return Err(Error::StationaryPoint);
        }
        let (g2, g3) = (self.inv.g2, self.inv.g3);
        let four = T::lit(4.0);
        let n = p * p * (T::lit(3.0) * g2) + p * (T::lit(9.0) * g3) + g2 * g2 / four;
        Ok(p / four + n / (dp * dp * four))
    }

    /// `℘(z + ω)` from the rational formula
    /// `e + (2e² + e′e″)/(℘(z) − e)`, where `e = ℘(ω)` and `e′, e″` are the
    /// other two roots.
    pub fn wp_half_shift(&self, z: Cx<T>, which: HalfPeriod) -> Result<Cx<T>> {
        let e = self.root_at(which);
        let [e1, e2, e3] = self.roots.as_array();
        let (ea, eb) = match which {
            HalfPeriod::One => (e2, e3),
            HalfPeriod::Two => (e1, e2),
            HalfPeriod::Three => (e3, e1),
        };
        if self.is_pole(z) {
            return Ok(e);
        }
        let p = self.raw(z).wp;
        let d = p - e;
        if d.norm() <= T::tol(1e-13) * (T::one() + e.norm()) {
            return Err(Error::pole(z + self.omega(which)));
        }
        Ok(e + (e * e * T::lit(2.0) + ea * eb) / d)
    }

    /// `℘(z) − ℘(ω)` without cancellation near `℘(z) = ℘(ω)`, computed as
    /// `(2e² + e′e″)/(℘(z − ω) − e)`.
    pub fn wp_gap(&self, z: Cx<T>, which: HalfPeriod) -> Result<Cx<T>> {
        if self.is_pole(z) {
            return Err(Error::pole(z));
        }
        let e = self.root_at(which);
        match &self.repr {
            Repr::Lattice(l) => {
                let u = z - self.omega(which);
                if l.is_pole(u) {
                    return Ok(real(T::zero()));
                }
                let [e1, e2, e3] = self.roots.as_array();
                let (ea, eb) = match which {
                    HalfPeriod::One => (e2, e3),
                    HalfPeriod::Two => (e1, e2),
                    HalfPeriod::Three => (e3, e1),
                };
                Ok((e * e * T::lit(2.0) + ea * eb) / (l.values(u).wp - e))
            }
            Repr::Degenerate { kind, e0 } => {
                let single = match kind {
                    RootKind::DoubleSmaller => which == HalfPeriod::One,
                    RootKind::DoubleLarger => which == HalfPeriod::Two,
                    _ => false,
                };
                degenerate::gap(*kind, *e0, z, single)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cx;

    fn ctx(g2: f64, g3: f64) -> EllipticContext<f64> {
        EllipticContext::from_invariants(g2, g3).unwrap()
    }

    #[test]
    fn triple_root_examples() {
        let c = ctx(0.0, 0.0);
        assert!((c.wp(real(0.5)).unwrap() - 4.0).norm() < 1e-15);
        assert!((c.wp_prime(real(0.5)).unwrap() + 16.0).norm() < 1e-14);
        assert!(c.wp(real(0.0)).is_err());
    }

    #[test]
    fn wp_at_half_periods() {
        for (g2, g3) in [(4.0, 0.0), (7.0, -1.5), (-4.0, 0.0), (2.0, 3.0)] {
            let c = ctx(g2, g3);
            for w in [HalfPeriod::One, HalfPeriod::Two, HalfPeriod::Three] {
                let p = c.wp(c.omega(w)).unwrap();
                assert!(
                    (p - c.root_at(w)).norm() < 1e-11,
                    "{g2} {g3} {w:?}: {p} vs {}",
                    c.root_at(w)
                );
                assert!(c.wp_prime(c.omega(w)).unwrap().norm() < 1e-9);
            }
        }
    }

    #[test]
    fn legendre_relation() {
        for (g2, g3) in [(4.0, 0.0), (7.0, -1.5), (-4.0, 0.0), (2.0, 3.0), (1.0, 5.0)] {
            let c = ctx(g2, g3);
            let r = c.half_periods().legendre_residual();
            assert!(r.norm() < 1e-12, "{g2} {g3}: {r}");
            // η2 from the Legendre relation must equal ζ(ω2) computed directly.
            let z2 = c.zeta(c.half_periods().omega2).unwrap();
            assert!(
                (z2 - c.half_periods().eta2).norm() < 1e-11,
                "{z2} {}",
                c.half_periods().eta2
            );
        }
    }

    #[test]
    fn double_larger_example() {
        let c = ctx(12.0, -8.0);
        let expected = 1.0 + 3.0 / 3f64.sqrt().sinh().powi(2);
        assert!((c.wp(real(1.0)).unwrap().re - expected).abs() < 1e-14);
    }

    #[test]
    fn half_shift_examples() {
        let c = ctx(7.0, -1.5);
        let hp = *c.half_periods();
        let e2 = c.wp_half_shift(hp.omega2, HalfPeriod::One).unwrap();
        assert!((e2 - c.roots().e2).norm() < 1e-11);
        let z = cx(0.3, 0.2);
        for w in [HalfPeriod::One, HalfPeriod::Two, HalfPeriod::Three] {
            let a = c.wp_half_shift(z, w).unwrap();
            let b = c.wp(z + c.omega(w)).unwrap();
            assert!((a - b).norm() < 1e-11 * (1.0 + b.norm()));
        }
    }

    #[test]
    fn gap_matches_difference() {
        for (g2, g3) in [(7.0, -1.5), (-4.0, 1.0), (12.0, -8.0), (12.0, 8.0)] {
            let c = ctx(g2, g3);
            let z = cx(0.37, 0.11);
            let p = c.wp(z).unwrap();
            for w in [HalfPeriod::One, HalfPeriod::Two, HalfPeriod::Three] {
                let gap = c.wp_gap(z, w).unwrap();
                assert!(
                    (gap - (p - c.root_at(w))).norm() < 1e-11 * (1.0 + p.norm()),
                    "{g2} {g3} {w:?}"
                );
            }
        }
        // Near a half-period the gap keeps full relative accuracy.
        let c = ctx(7.0, -1.5);
        let u = real(1e-6);
        let gap = c
            .wp_gap(c.omega(HalfPeriod::One) + u, HalfPeriod::One)
            .unwrap();
        let [e1, e2, e3] = c.roots().as_array();
        let expected = (e1 - e2) * (e1 - e3) * 1e-12;
        assert!((gap - expected).norm() < 1e-8 * expected.norm());
    }

    #[test]
    fn addition_and_duplication() {
        let c = ctx(2.0, 3.0);
        let (z, w) = (cx(0.31, 0.17), cx(-0.4, 0.52));
        let direct = c.wp(z + w).unwrap();
        assert!((c.wp_add(z, w).unwrap() - direct).norm() < 1e-10 * direct.norm());
        assert!(matches!(c.wp_add(z, -z), Err(Error::PoleAt { .. })));
        let d = c.wp_duplicate(z).unwrap();
        assert!((d - c.wp(z * 2.0).unwrap()).norm() < 1e-10 * d.norm());
        assert_eq!(
            c.wp_duplicate(c.half_periods().omega1),
            Err(Error::StationaryPoint)
        );
    }

    #[test]
    fn reduction_ties_toward_zero() {
        let c = ctx(4.0, 0.0);
        let hp = *c.half_periods();
        let r = c.reduce(hp.omega1);
        assert_eq!((r.m, r.n), (0, 0));
        let r = c.reduce(-hp.omega1 * 3.0);
        assert_eq!((r.m, r.n), (-1, 0));
        let z = cx(5.3, -7.1);
        let r = c.reduce(z);
        let back = r.z_reduced + hp.omega1 * (2.0 * r.m as f64) + hp.omega2 * (2.0 * r.n as f64);
        assert!((back - z).norm() < 1e-13 * (1 + r.m.abs() + r.n.abs()) as f64);
    }
}
