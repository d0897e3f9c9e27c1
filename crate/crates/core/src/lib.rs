//! Local Fourier analysis of two-color (red-black) distributive Jacobi relaxation
//! for the pressure-stabilized collocated Stokes discretization
//!
//! ```text
//!        | -Δh    0     ∂x       |
//! L_h =  |  0    -Δh    ∂y       |
//!        |  ∂x    ∂y   -c h² Δh  |
//! ```
//!
//! together with a geometric multigrid solver that uses the same smoother, so that
//! predicted smoothing factors can be compared with observed convergence.
//!
//! Module map:
//!
//! - [`stencil`]: compact difference stencils, Fourier symbols, pointwise application.
//! - [`grid`]: grid-function containers the stencils are applied to.
//! - [`harmonics`]: 2h-harmonic pairs and the 2×2 Fourier representation of the
//!   red-black Jacobi sweep, plus a brute-force periodic-grid oracle for it.
//! - [`smoothing`]: projected eigenvalues, frequency sweeps, optimal one-stage damping.
//! - [`closedform`]: analytic optimal parameters for the pressure block as functions of `c`.
//! - [`mgsolver`]: distributive red-black smoother, transfers, V-cycle, convergence harness.

pub mod closedform;
pub mod error;
pub mod grid;
pub mod harmonics;
pub mod mgsolver;
pub mod smoothing;
pub mod stencil;

pub use error::{Error, Result};
pub use harmonics::{HarmonicPair, TwoColorRep};
pub use smoothing::{OneStageResult, SweepConfig};
pub use stencil::{ComplexValue, Frequency, OperatorKind, Stencil2D};
