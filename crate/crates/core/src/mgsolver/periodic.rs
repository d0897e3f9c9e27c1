//! Smoothing-only measurement on a torus.
//!
//! The error is seeded in the frequencies `θ` whose partner `θ + (π, π)` is low. Each sweep is
//! followed by removing every other Fourier component, which models an exact coarse-grid
//! correction of the low partner. The per-sweep decay of the remaining `(u, v, p)` energy is the
//! measured counterpart of the projected two-color smoothing factor.

use std::f64::consts::PI;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

use super::field::Field;
use super::problem::StokesProblem;
use super::smoother::{sweep_in_place, Damping};
use crate::error::{Error, Result};
use crate::stencil::Frequency;

#[derive(Debug, Clone, PartialEq)]
pub struct SmoothingRateReport {
    pub c: f64,
    pub n_grid: usize,
    /// Energy ratio of each sweep.
    pub ratios: Vec<f64>,
    /// Geometric mean of the last `tail` ratios.
    pub rate: f64,
    pub tail: usize,
}

/// Whether the lattice frequency with index `(k1, k2)` belongs to the measured subspace.
fn kept(k1: usize, k2: usize, n: usize) -> bool {
    let t = |k: usize| 2.0 * PI * k as f64 / n as f64;
    Frequency::new(t(k1), t(k2)).shifted_by_pi().is_low()
}

struct Projector {
    n: usize,
    forward: std::sync::Arc<dyn rustfft::Fft<f64>>,
    inverse: std::sync::Arc<dyn rustfft::Fft<f64>>,
}

impl Projector {
    fn new(n: usize) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            n,
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
        }
    }

    fn transform_2d(&self, data: &mut [Complex64], fft: &dyn rustfft::Fft<f64>) {
        let n = self.n;
        for row in data.chunks_mut(n) {
            fft.process(row);
        }
        let mut col = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            for j in 0..n {
                col[j] = data[j * n + i];
            }
            fft.process(&mut col);
            for j in 0..n {
                data[j * n + i] = col[j];
            }
        }
    }

    /// Orthogonal projection onto the measured subspace, in place.
    fn project(&self, f: &mut Field) {
        let n = self.n;
        let mut data: Vec<Complex64> = f.raw().iter().map(|&x| Complex64::new(x, 0.0)).collect();
        self.transform_2d(&mut data, self.forward.as_ref());
        for k2 in 0..n {
            for k1 in 0..n {
                if !kept(k1, k2, n) {
                    data[k2 * n + k1] = Complex64::new(0.0, 0.0);
                }
            }
        }
        self.transform_2d(&mut data, self.inverse.as_ref());
        let scale = 1.0 / (n * n) as f64;
        for (idx, z) in data.iter().enumerate() {
            f.set((idx % n) as i64, (idx / n) as i64, z.re * scale);
        }
    }
}

/// Measures the per-sweep damping of high-frequency `(u, v, p)` error on an `n_grid` torus.
///
/// `n_grid` must satisfy `n_grid % 4 == 2` so that `±π/2` are off the lattice and the measured
/// subspace is closed under conjugation.
pub fn measure_smoothing_rate(
    c: f64,
    n_grid: usize,
    damping: Damping,
    n_sweeps: usize,
    tail: usize,
    seed: u64,
) -> Result<SmoothingRateReport> {
    if n_grid % 4 != 2 || n_grid < 6 {
        return Err(Error::InvalidGridSize(n_grid));
    }
    if tail == 0 || tail > n_sweeps {
        return Err(Error::InvalidParameter(format!(
            "tail {tail} must lie in 1..={n_sweeps}"
        )));
    }
    let prob = StokesProblem::periodic(n_grid, c)?;
    let proj = Projector::new(n_grid);
    let mut rng = StdRng::seed_from_u64(seed);
    let mut st = prob.zero_state();
    for f in [&mut st.u, &mut st.v, &mut st.p] {
        let points: Vec<_> = f.interior().collect();
        for (i, j) in points {
            f.set(i, j, rng.gen_range(-1.0..=1.0));
        }
        proj.project(f);
    }
    let energy = |st: &super::problem::StokesState| {
        (st.u.interior_dot(&st.u) + st.v.interior_dot(&st.v) + st.p.interior_dot(&st.p)).sqrt()
    };
    let mut prev = energy(&st);
    let mut ratios = Vec::with_capacity(n_sweeps);
    for _ in 0..n_sweeps {
        sweep_in_place(&prob, &mut st, damping)?;
        for f in [&mut st.u, &mut st.v, &mut st.p] {
            proj.project(f);
        }
        let e = energy(&st);
        ratios.push(e / prev);
        // Renormalize so long runs stay in range.
        for f in [&mut st.u, &mut st.v, &mut st.p] {
            let points: Vec<_> = f.interior().collect();
            for (i, j) in points {
                f.set(i, j, f.get(i, j) / e);
            }
        }
        prev = 1.0;
    }
    let t = &ratios[n_sweeps - tail..];
    let rate = (t.iter().map(|r| r.ln()).sum::<f64>() / tail as f64).exp();
    Ok(SmoothingRateReport {
        c,
        n_grid,
        ratios,
        rate,
        tail,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projection_is_idempotent_and_real() {
        let n = 10;
        let proj = Projector::new(n);
        let mut f = Field::from_interior(n, super::super::field::Topology::Periodic, |i, j| {
            ((i * 7 + j * 3) % 5) as f64 - 2.0
        });
        proj.project(&mut f);
        let once = f.clone();
        proj.project(&mut f);
        let diff = once
            .interior()
            .map(|(i, j)| (once.get(i, j) - f.get(i, j)).abs())
            .fold(0.0, f64::max);
        assert!(diff < 1e-13);
    }

    #[test]
    fn checkerboard_is_kept_and_constant_removed() {
        let n = 10;
        let proj = Projector::new(n);
        let mut f = Field::from_interior(n, super::super::field::Topology::Periodic, |i, j| {
            if (i + j) % 2 == 0 {
                1.0
            } else {
                -1.0
            }
        });
        let before = f.clone();
        proj.project(&mut f);
        assert!(f
            .interior()
            .all(|(i, j)| (f.get(i, j) - before.get(i, j)).abs() < 1e-13));
        let mut g = Field::from_interior(n, super::super::field::Topology::Periodic, |_, _| 1.0);
        proj.project(&mut g);
        assert!(g.interior_max_abs() < 1e-13);
    }

    #[test]
    fn rejects_lattice_with_quarter_frequencies() {
        assert!(measure_smoothing_rate(0.125, 16, Damping::uniform(1.0), 4, 2, 1).is_err());
    }
}
