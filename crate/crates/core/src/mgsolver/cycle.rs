use std::fmt::Write as _;

use super::field::Topology;
use super::problem::{StokesProblem, StokesState};
use super::smoother::{
    assemble_residual, boundary_relaxation, residual_norm, sweep_in_place, BoundaryRelaxation,
    Damping,
};
use super::transfer::{coarse_size, prolong, restrict};
use crate::error::{Error, Result};

/// Sweeps used to solve the coarsest level.
pub const COARSEST_SWEEPS: u32 = 200;
/// V-cycles used to solve the coarse level of a two-grid cycle.
pub const TWO_GRID_COARSE_CYCLES: u32 = 30;
/// Tail length of the observed-factor geometric mean.
pub const K_TAIL: usize = 5;
/// A run counts as divergent when this many consecutive ratios exceed [`DIVERGENCE_RATIO`].
pub const DIVERGENCE_RUN: usize = 3;
pub const DIVERGENCE_RATIO: f64 = 1.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycleKind {
    V,
    TwoGrid,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CycleSpec {
    pub pre_sweeps: u32,
    pub post_sweeps: u32,
    /// Number of grids visited by a V-cycle, finest included. `1` means smoothing only.
    pub levels: usize,
    pub damping: Damping,
    pub boundary: BoundaryRelaxation,
    pub kind: CycleKind,
}

impl CycleSpec {
    /// V(pre, post) cycle over all available levels.
    pub fn v(
        pre_sweeps: u32,
        post_sweeps: u32,
        damping: Damping,
        n: usize,
        topology: Topology,
    ) -> Self {
        Self {
            pre_sweeps,
            post_sweeps,
            levels: max_levels(n, topology),
            damping,
            boundary: BoundaryRelaxation::default(),
            kind: CycleKind::V,
        }
    }

    pub fn two_grid(pre_sweeps: u32, post_sweeps: u32, damping: Damping) -> Self {
        Self {
            pre_sweeps,
            post_sweeps,
            levels: 2,
            damping,
            boundary: BoundaryRelaxation::default(),
            kind: CycleKind::TwoGrid,
        }
    }

    pub fn validate(&self, n: usize, topology: Topology) -> Result<()> {
        if self.pre_sweeps + self.post_sweeps == 0 {
            return Err(Error::InvalidParameter(
                "a cycle needs at least one sweep".into(),
            ));
        }
        let max = max_levels(n, topology);
        if self.levels == 0 || self.levels > max {
            return Err(Error::InvalidParameter(format!(
                "levels must lie in 1..={max} for n = {n}, got {}",
                self.levels
            )));
        }
        if self.kind == CycleKind::TwoGrid && self.levels != 2 {
            return Err(Error::InvalidParameter(
                "a two-grid cycle has exactly 2 levels".into(),
            ));
        }
        for w in [self.damping.momentum, self.damping.pressure] {
            if !(0.0..2.0).contains(&w) {
                return Err(Error::InvalidParameter(format!(
                    "damping must lie in [0, 2), got {w}"
                )));
            }
        }
        Ok(())
    }
}

/// Number of grids in the hierarchy; the coarsest Dirichlet grid has `n + 1 >= 4`, the coarsest
/// periodic grid `n >= 4`.
pub fn max_levels(n: usize, topology: Topology) -> usize {
    let mut levels = 1;
    let mut n = n;
    while let Ok(nc) = coarse_size(n, topology) {
        let ok = match topology {
            Topology::Dirichlet => nc >= 3,
            Topology::Periodic => nc >= 4,
        };
        if !ok {
            break;
        }
        levels += 1;
        n = nc;
    }
    levels
}

fn smooth(prob: &StokesProblem, st: &mut StokesState, spec: &CycleSpec, sweeps: u32) -> Result<()> {
    for _ in 0..sweeps {
        sweep_in_place(prob, st, spec.damping)?;
        boundary_relaxation(prob, st, spec.damping, spec.boundary)?;
    }
    Ok(())
}

fn coarse_correction(
    prob: &StokesProblem,
    st: &mut StokesState,
    spec: &CycleSpec,
    levels: usize,
) -> Result<()> {
    let [r1, r2, r3] = assemble_residual(prob, st)?;
    let rc = [restrict(&r1)?, restrict(&r2)?, restrict(&r3)?];
    let nc = rc[0].n();
    let coarse = StokesProblem::correction(nc, 2.0 * prob.h, prob.c, prob.topology, rc)?;
    let mut e = coarse.zero_state();
    match spec.kind {
        CycleKind::V => cycle_rec(&coarse, &mut e, spec, levels - 1)?,
        CycleKind::TwoGrid => {
            let inner = CycleSpec {
                kind: CycleKind::V,
                levels: max_levels(nc, prob.topology),
                ..*spec
            };
            if inner.levels == 1 {
                smooth(&coarse, &mut e, spec, COARSEST_SWEEPS)?;
            } else {
                for _ in 0..TWO_GRID_COARSE_CYCLES {
                    cycle_rec(&coarse, &mut e, &inner, inner.levels)?;
                }
            }
        }
    }
    let (du, dv, dp) = (prolong(&e.u), prolong(&e.v), prolong(&e.p));
    let points: Vec<_> = du.interior().collect();
    for (i, j) in points {
        st.u.add(i, j, du.get(i, j));
        st.v.add(i, j, dv.get(i, j));
        st.p.add(i, j, dp.get(i, j));
    }
    prob.impose_boundary(st);
    Ok(())
}

fn cycle_rec(
    prob: &StokesProblem,
    st: &mut StokesState,
    spec: &CycleSpec,
    levels: usize,
) -> Result<()> {
    if levels == 1 {
        return smooth(prob, st, spec, COARSEST_SWEEPS);
    }
    smooth(prob, st, spec, spec.pre_sweeps)?;
    coarse_correction(prob, st, spec, levels)?;
    smooth(prob, st, spec, spec.post_sweeps)
}

/// One cycle in place. With `levels == 1` the cycle is `pre + post` smoothing sweeps.
pub fn cycle_in_place(prob: &StokesProblem, st: &mut StokesState, spec: &CycleSpec) -> Result<()> {
    spec.validate(prob.n, prob.topology)?;
    prob.check_state(st)?;
    if spec.levels == 1 {
        return smooth(prob, st, spec, spec.pre_sweeps + spec.post_sweeps);
    }
    cycle_rec(prob, st, spec, spec.levels)
}

/// One cycle of the kind given by `spec`.
pub fn v_cycle(prob: &StokesProblem, st: &StokesState, spec: &CycleSpec) -> Result<StokesState> {
    let mut out = st.clone();
    cycle_in_place(prob, &mut out, spec)?;
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    /// Residual norm after each cycle.
    pub residual_history: Vec<f64>,
    pub initial_residual: f64,
    pub rho_observed: f64,
    pub k_tail: usize,
    pub diverged: bool,
}

impl ConvergenceReport {
    /// Reduction factor of each cycle.
    pub fn ratios(&self) -> Vec<f64> {
        std::iter::once(self.initial_residual)
            .chain(self.residual_history.iter().copied())
            .collect::<Vec<_>>()
            .windows(2)
            .map(|w| w[1] / w[0])
            .collect()
    }

    /// `cycle_index,residual_norm,ratio` rows with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("cycle_index,residual_norm,ratio\n");
        for (k, (r, q)) in self.residual_history.iter().zip(self.ratios()).enumerate() {
            writeln!(out, "{},{:.12e},{:.12e}", k + 1, r, q).expect("writing to a String");
        }
        out
    }
}

fn geometric_tail(ratios: &[f64], k: usize) -> f64 {
    let tail = &ratios[ratios.len().saturating_sub(k)..];
    (tail.iter().map(|r| r.ln()).sum::<f64>() / tail.len() as f64).exp()
}

/// Runs `n_cycles` cycles on the homogeneous version of `prob` from a random state and reports
/// the residual history. Divergence is flagged in the report rather than raised.
pub fn measure_convergence_factor(
    prob: &StokesProblem,
    spec: &CycleSpec,
    n_cycles: usize,
    seed: u64,
) -> Result<ConvergenceReport> {
    if n_cycles < 10 {
        return Err(Error::InvalidParameter(format!(
            "at least 10 cycles are needed, got {n_cycles}"
        )));
    }
    spec.validate(prob.n, prob.topology)?;
    let hom = prob.homogeneous_copy()?;
    let mut st = hom.random_state(seed);
    let initial_residual = residual_norm(&assemble_residual(&hom, &st)?, hom.h);
    let mut history = Vec::with_capacity(n_cycles);
    let mut diverged = false;
    let mut run = 0;
    let mut prev = initial_residual;
    for _ in 0..n_cycles {
        cycle_in_place(&hom, &mut st, spec)?;
        let r = residual_norm(&assemble_residual(&hom, &st)?, hom.h);
        if !r.is_finite() {
            diverged = true;
            break;
        }
        history.push(r);
        run = if r / prev > DIVERGENCE_RATIO {
            run + 1
        } else {
            0
        };
        if run >= DIVERGENCE_RUN {
            diverged = true;
        }
        if r == 0.0 {
            break;
        }
        prev = r;
    }
    let mut report = ConvergenceReport {
        residual_history: history,
        initial_residual,
        rho_observed: f64::NAN,
        k_tail: K_TAIL,
        diverged,
    };
    let ratios: Vec<f64> = report
        .ratios()
        .into_iter()
        .filter(|q| *q > 0.0 && q.is_finite())
        .collect();
    if !ratios.is_empty() {
        report.rho_observed = geometric_tail(&ratios, K_TAIL);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_counts() {
        assert_eq!(max_levels(3, Topology::Dirichlet), 1);
        assert_eq!(max_levels(7, Topology::Dirichlet), 2);
        assert_eq!(max_levels(63, Topology::Dirichlet), 5);
        assert_eq!(max_levels(16, Topology::Periodic), 3);
        assert_eq!(max_levels(6, Topology::Periodic), 1);
    }

    #[test]
    fn geometric_tail_of_constant_ratios() {
        assert!((geometric_tail(&[0.9, 0.5, 0.5, 0.5, 0.5, 0.5], 5) - 0.5).abs() < 1e-15);
    }
}
