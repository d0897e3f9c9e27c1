//! Projected smoothing analysis and optimal one-stage damping.
//!
//! The ideal coarse-grid correction keeps only the high harmonic, `Q = diag(0, 1)`, so
//! `Q·Ŝ(θ)` has one zero eigenvalue and one equal to its `(2, 2)` entry. Sweeps evaluate
//! that eigenvalue over the closed low box `[-π/2, π/2]²` on an odd lattice, then zoom in
//! on the best lattice point so extremizers between lattice points are resolved too.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::harmonics::{two_color_rep, HarmonicPair, TwoColorRep};
use crate::stencil::{make_operator, ComplexValue, Frequency, OperatorKind, Stencil2D};

/// Largest imaginary part tolerated in a projected eigenvalue before it is treated as a bug.
pub const IMAG_TOLERANCE: f64 = 1e-10;

const REFINE_POINTS: usize = 9;
const REFINE_SHRINK: f64 = 4.0;
const REFINE_MIN_WIDTH: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepConfig {
    /// Lattice points per axis. Odd values put `θ = 0, ±π/2` on the lattice.
    pub n_samples_per_axis: usize,
    /// Sample the closed box; when false the `-π/2` edge is dropped (half-open box).
    pub include_boundary: bool,
    /// Zoom in around the best lattice point after the uniform pass.
    pub refine: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            n_samples_per_axis: 257,
            include_boundary: true,
            refine: true,
        }
    }
}

impl SweepConfig {
    pub fn with_samples(n_samples_per_axis: usize) -> Self {
        Self {
            n_samples_per_axis,
            ..Self::default()
        }
    }

    pub fn lattice_only(n_samples_per_axis: usize) -> Self {
        Self {
            n_samples_per_axis,
            include_boundary: true,
            refine: false,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n_samples_per_axis < 2 {
            return Err(Error::InvalidParameter(format!(
                "n_samples_per_axis must be at least 2, got {}",
                self.n_samples_per_axis
            )));
        }
        Ok(())
    }

    fn axis(&self) -> Vec<f64> {
        let n = self.n_samples_per_axis;
        let step = 2.0 * FRAC_PI_2 / (n - 1) as f64;
        let skip = usize::from(!self.include_boundary);
        (skip..n)
            .map(|i| {
                if i == n - 1 {
                    FRAC_PI_2
                } else {
                    -FRAC_PI_2 + step * i as f64
                }
            })
            .collect()
    }
}

/// Extremal projected eigenvalues of a stencil's red-black Jacobi sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extrema {
    pub s_max: f64,
    pub s_min: f64,
    pub argmax_freq: Frequency,
    pub argmin_freq: Frequency,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OneStageParams {
    pub omega: f64,
    pub rho: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OneStageResult {
    pub s_max: f64,
    pub s_min: f64,
    pub omega_opt: f64,
    pub rho_opt: f64,
    pub argmax_freq: Frequency,
    pub argmin_freq: Frequency,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothingReport {
    pub rho: f64,
    pub n_sweeps: u32,
    pub omega: f64,
    pub worst_freq: Frequency,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StokesSmoothing {
    pub rho_total: f64,
    pub rho_poisson: f64,
    pub rho_pressure: f64,
    pub poisson: OneStageResult,
    pub pressure: OneStageResult,
}

/// Eigenvalues of `diag(0, 1) · rep`. The first is always the structural zero.
pub fn projected_eigenvalues(rep: &TwoColorRep) -> (ComplexValue, ComplexValue) {
    (Complex64::zero(), rep.projected().entry(1, 1))
}

/// Eigenvalue of `(1 - ω) I + ω S` given the eigenvalue `eig` of `S`.
pub fn apply_damping(eig: f64, omega: f64) -> f64 {
    (1.0 - omega) + omega * eig
}

/// Nonzero projected eigenvalue at a base frequency, checked to be real.
pub fn projected_eigenvalue_at(s: &Stencil2D, base: Frequency) -> Result<f64> {
    let rep = two_color_rep(s, &HarmonicPair::from_any(base))?;
    let (_, lambda) = projected_eigenvalues(&rep);
    if lambda.im.abs() > IMAG_TOLERANCE {
        return Err(Error::ComplexEigenvalue {
            im: lambda.im,
            theta1: base.theta1,
            theta2: base.theta2,
        });
    }
    Ok(lambda.re)
}

/// Finds `max f` over the low box: lattice pass, then optional zoom refinement.
/// Ties keep the first lattice point in row-major order, so the result does not depend on
/// how the parallel evaluation is scheduled.
pub fn maximize_over_low_box<F>(f: F, cfg: &SweepConfig) -> Result<(f64, Frequency)>
where
    F: Fn(Frequency) -> Result<f64> + Sync,
{
    cfg.validate()?;
    let axis = cfg.axis();
    let values: Vec<Result<f64>> = (0..axis.len() * axis.len())
        .into_par_iter()
        .map(|idx| {
            f(Frequency::new(
                axis[idx % axis.len()],
                axis[idx / axis.len()],
            ))
        })
        .collect();

    let mut best = (f64::NEG_INFINITY, Frequency::ZERO);
    for (idx, value) in values.into_iter().enumerate() {
        let value = value?;
        if value > best.0 {
            best = (
                value,
                Frequency::new(axis[idx % axis.len()], axis[idx / axis.len()]),
            );
        }
    }
    if !cfg.refine {
        return Ok(best);
    }

    let lo = axis[0];
    let hi = FRAC_PI_2;
    let clamp = |t: f64| t.clamp(lo, hi);
    let mut width = 2.0 * (hi - lo) / (cfg.n_samples_per_axis - 1) as f64;
    while width > REFINE_MIN_WIDTH {
        let (c1, c2) = (best.1.theta1, best.1.theta2);
        let step = 2.0 * width / (REFINE_POINTS - 1) as f64;
        for j in 0..REFINE_POINTS {
            for i in 0..REFINE_POINTS {
                let t1 = clamp(c1 - width + step * i as f64);
                let t2 = clamp(c2 - width + step * j as f64);
                let theta = Frequency::new(t1, t2);
                let value = f(theta)?;
                if value > best.0 {
                    best = (value, theta);
                }
            }
        }
        width /= REFINE_SHRINK;
    }
    Ok(best)
}

/// Largest and smallest real projected eigenvalue of the undamped sweep over the low box.
pub fn sweep_extrema(s: &Stencil2D, cfg: &SweepConfig) -> Result<Extrema> {
    if s.center() == 0.0 {
        return Err(Error::ZeroCenter(s.name().to_string()));
    }
    let (s_max, argmax_freq) = maximize_over_low_box(|t| projected_eigenvalue_at(s, t), cfg)?;
    let (neg_min, argmin_freq) =
        maximize_over_low_box(|t| projected_eigenvalue_at(s, t).map(|v| -v), cfg)?;
    Ok(Extrema {
        s_max,
        s_min: -neg_min,
        argmax_freq,
        argmin_freq,
    })
}

/// `ω = 2 / (2 - S_max - S_min)`, `ρ = (S_max - S_min) / (2 - S_max - S_min)`.
pub fn optimal_one_stage(s_max: f64, s_min: f64) -> Result<OneStageParams> {
    let valid = s_min > -1.0 && s_max < 1.0 && s_min <= s_max;
    if !valid {
        return Err(Error::InvalidExtrema { s_min, s_max });
    }
    let denom = 2.0 - s_max - s_min;
    Ok(OneStageParams {
        omega: 2.0 / denom,
        rho: (s_max - s_min) / denom,
    })
}

/// Sweep followed by the optimal one-stage parameters.
pub fn one_stage(s: &Stencil2D, cfg: &SweepConfig) -> Result<OneStageResult> {
    let ext = sweep_extrema(s, cfg)?;
    let params = optimal_one_stage(ext.s_max, ext.s_min)?;
    Ok(OneStageResult {
        s_max: ext.s_max,
        s_min: ext.s_min,
        omega_opt: params.omega,
        rho_opt: params.rho,
        argmax_freq: ext.argmax_freq,
        argmin_freq: ext.argmin_freq,
    })
}

/// `sup_θ ρ(Q Ŝ(θ, ω)^n)^(1/n)` with `Ŝ(θ, ω) = (1 - ω) I + ω Ŝ(θ, 1)`.
pub fn smoothing_factor(
    s: &Stencil2D,
    omega: f64,
    n: u32,
    cfg: &SweepConfig,
) -> Result<SmoothingReport> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "number of sweeps must be at least 1".into(),
        ));
    }
    if !(omega > 0.0 && omega < 2.0) {
        return Err(Error::InvalidParameter(format!(
            "omega must lie in (0, 2), got {omega}"
        )));
    }
    if s.center() == 0.0 {
        return Err(Error::ZeroCenter(s.name().to_string()));
    }
    let (rho, worst_freq) = maximize_over_low_box(
        |t| {
            let rep = two_color_rep(s, &HarmonicPair::from_any(t))?;
            let radius = rep.damped(omega).pow(n).projected().spectral_radius();
            Ok(radius.powf(1.0 / n as f64))
        },
        cfg,
    )?;
    Ok(SmoothingReport {
        rho,
        n_sweeps: n,
        omega,
        worst_freq,
    })
}

/// Optimal one-stage smoothing of both diagonal blocks of the distributed Stokes system.
/// The system's factor is the larger of the two.
pub fn stokes_smoothing_factor(c: f64, cfg: &SweepConfig) -> Result<StokesSmoothing> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::InvalidStabilization(c));
    }
    let poisson = one_stage(&make_operator(OperatorKind::Laplacian, 1.0, None)?, cfg)?;
    let pressure = one_stage(
        &make_operator(OperatorKind::PressureBlock, 1.0, Some(c))?,
        cfg,
    )?;
    Ok(StokesSmoothing {
        rho_total: poisson.rho_opt.max(pressure.rho_opt),
        rho_poisson: poisson.rho_opt,
        rho_pressure: pressure.rho_opt,
        poisson,
        pressure,
    })
}
