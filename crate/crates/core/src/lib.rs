//! Weierstrass elliptic functions with real invariants and their classical
//! applications: the cubic potential, the simple pendulum, hyperbolic
//! potentials and the n = 1 Lamé band structure.
//!
//! The numerical core is generic over the scalar type (`f32` or `f64`, see
//! [`Real`]); the `*64` aliases below fix it to `f64`, which is what the
//! documented tolerances assume.

pub mod error;
pub mod invariants;
pub mod lame;
pub mod mechanics;
mod quadrature;
pub mod scalar;
pub mod weierstrass;

pub use error::{Error, ErrorClass, Result};
pub use invariants::{
    cubic_roots, half_periods, invariants_from_periods, modular_transform, rescale, CubicRoots,
    HalfPeriods, Invariants, RootKind,
};
pub use scalar::{Cx, Real};
pub use weierstrass::{
    wp_degenerate, CellReducedPoint, EllipticContext, HalfPeriod, LaurentTable, Values,
};

pub type Complex64 = Cx<f64>;
pub type Invariants64 = Invariants<f64>;
pub type CubicRoots64 = CubicRoots<f64>;
pub type HalfPeriods64 = HalfPeriods<f64>;
pub type EllipticContext64 = EllipticContext<f64>;
pub type CubicProblem64 = mechanics::CubicProblem<f64>;
pub type PendulumProblem64 = mechanics::PendulumProblem<f64>;
pub type HyperbolicProblem64 = mechanics::HyperbolicProblem<f64>;
pub type MotionSolution64 = mechanics::MotionSolution<f64>;
pub type BandStructure64 = lame::BandStructure<f64>;
pub type BlochState64 = lame::BlochState<f64>;
