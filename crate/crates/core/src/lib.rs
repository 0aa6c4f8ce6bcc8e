//! Numerical solver for the inhomogeneous biharmonic Dirichlet problem on the
//! unit disk, built on the explicit kernel representation
//!
//! ```text
//! f = P[psi] + Q[psi] - (1 - |z|^2) P[phi_1] - (1/16 pi) \int_D g(w) G(z,w) dA(w)
//! ```
//!
//! together with a verification harness that estimates Lipschitz moduli of the
//! solution and certifies kernel-term gradient bounds and majorant integral
//! conditions at desk scale.
//!
//! The crate is organised around the pipeline:
//!
//! * [`majorants`] — modulus functions and the fast / slow / Hardy-Littlewood
//!   integral condition checks,
//! * [`boundary`] — boundary data on the circle, source terms on the disk,
//!   sup-norms and empirical Lipschitz seminorms,
//! * [`kernels`] — closed-form Poisson, Q and biharmonic Green kernels plus
//!   their first Wirtinger derivatives,
//! * [`quadrature`] — deterministic circle and polar disk rules,
//! * [`solver`] — assembled solution fields with derivatives, residual and
//!   boundary-trace probes,
//! * [`verify`] — normalized sweeps, modulus-of-continuity reports and the
//!   refinement-stability detector.

pub mod boundary;
pub mod error;
pub mod kernels;
pub mod majorants;
pub mod quadrature;
pub mod solver;
pub mod verify;

pub use boundary::{CircleFunction, DiskFunction, SeminormParams};
pub use error::{Error, Result};
pub use kernels::Interior;
pub use majorants::{ConditionReport, Majorant, ScanGrid};
pub use quadrature::{DiskRule, QuadratureSpec};
pub use solver::{GridSpec, SolutionField, TraceReport};
pub use verify::{LipschitzReport, PairSampler, SweepReport};

pub(crate) type C64 = num_complex::Complex64;
