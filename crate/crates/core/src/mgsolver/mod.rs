//! Geometric multigrid for the stabilized collocated Stokes system with distributive
//! red-black Jacobi smoothing.

mod cycle;
mod field;
mod periodic;
mod problem;
mod smoother;
mod transfer;

pub use cycle::{
    cycle_in_place, max_levels, measure_convergence_factor, v_cycle, ConvergenceReport, CycleKind,
    CycleSpec, COARSEST_SWEEPS, DIVERGENCE_RATIO, DIVERGENCE_RUN, K_TAIL, TWO_GRID_COARSE_CYCLES,
};
pub use field::{Field, Topology, PAD};
pub use periodic::{measure_smoothing_rate, SmoothingRateReport};
pub use problem::{Operators, StokesProblem, StokesState};
pub use smoother::{
    apply_stokes_operator, assemble_residual, boundary_relaxation, distribute,
    distributive_two_color_sweep, red_black_jacobi, residual_norm, sweep_in_place,
    BoundaryRelaxation, Damping,
};
pub use transfer::{coarse_size, fine_size, prolong, restrict};
