use std::f64::consts::PI;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::field::{Field, Topology};
use crate::error::{Error, Result};
use crate::grid::GridIndex;
use crate::stencil::{make_operator, OperatorKind, Stencil2D};

/// Stencils of one level.
#[derive(Debug, Clone)]
pub struct Operators {
    pub laplacian: Stencil2D,
    pub ddx: Stencil2D,
    pub ddy: Stencil2D,
    pub stabilization: Stencil2D,
    pub pressure_block: Stencil2D,
}

impl Operators {
    pub fn new(h: f64, c: f64) -> Result<Self> {
        Ok(Self {
            laplacian: make_operator(OperatorKind::Laplacian, h, None)?,
            ddx: make_operator(OperatorKind::Ddx, h, None)?,
            ddy: make_operator(OperatorKind::Ddy, h, None)?,
            stabilization: make_operator(OperatorKind::Stabilization, h, Some(c))?,
            pressure_block: make_operator(OperatorKind::PressureBlock, h, Some(c))?,
        })
    }
}

/// Stabilized collocated Stokes system on one grid:
///
/// ```text
/// -Δh u + ∂x p            = f1
/// -Δh v + ∂y p            = f2
///  ∂x u + ∂y v - c h² Δh p = f3
/// ```
///
/// with `u = gu`, `v = gv` on the boundary ring and pressure ghosts mirrored from the interior.
#[derive(Debug, Clone)]
pub struct StokesProblem {
    pub n: usize,
    pub h: f64,
    pub c: f64,
    pub topology: Topology,
    pub f1: Field,
    pub f2: Field,
    pub f3: Field,
    pub gu: Field,
    pub gv: Field,
    pub pressure_anchor: GridIndex,
    pub(crate) ops: Operators,
}

/// Collocated unknowns `(u, v, p)` on one grid.
#[derive(Debug, Clone, PartialEq)]
pub struct StokesState {
    pub u: Field,
    pub v: Field,
    pub p: Field,
    pub h: f64,
}

fn check_c(c: f64) -> Result<()> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::InvalidStabilization(c));
    }
    Ok(())
}

impl StokesProblem {
    /// Zero right-hand side and zero boundary data on the unit square; `n + 1` must be a power of two.
    pub fn homogeneous(n: usize, c: f64) -> Result<Self> {
        if n < 1 || !(n + 1).is_power_of_two() {
            return Err(Error::InvalidParameter(format!(
                "n + 1 must be a power of two, got n = {n}"
            )));
        }
        Self::zero_data(n, 1.0 / (n + 1) as f64, c, Topology::Dirichlet)
    }

    /// Zero right-hand side on an `n × n` torus with mesh size `1/n`; `n` must be even.
    pub fn periodic(n: usize, c: f64) -> Result<Self> {
        if n < 4 || !n.is_multiple_of(2) {
            return Err(Error::InvalidParameter(format!(
                "periodic grid size must be even and >= 4, got {n}"
            )));
        }
        Self::zero_data(n, 1.0 / n as f64, c, Topology::Periodic)
    }

    fn zero_data(n: usize, h: f64, c: f64, topology: Topology) -> Result<Self> {
        check_c(c)?;
        let z = Field::zeros(n, topology);
        let anchor = match topology {
            Topology::Dirichlet => (1, 1),
            Topology::Periodic => (0, 0),
        };
        Ok(Self {
            n,
            h,
            c,
            topology,
            f1: z.clone(),
            f2: z.clone(),
            f3: z.clone(),
            gu: z.clone(),
            gv: z,
            pressure_anchor: anchor,
            ops: Operators::new(h, c)?,
        })
    }

    /// Problem whose exact discrete solution samples
    /// `u = sin(πx) sin(πy)`, `v = cos(πx) sin(πy)`, `p = cos(πx) cos(πy)` (shifted so that
    /// `p(anchor) = 0`). The right-hand sides are the discrete operator applied to those samples,
    /// so the mismatch in discrete divergence ends up in `f3`.
    pub fn manufactured(n: usize, c: f64) -> Result<(Self, StokesState)> {
        let mut prob = Self::homogeneous(n, c)?;
        let h = prob.h;
        let sample = |f: &dyn Fn(f64, f64) -> f64| {
            let mut out = Field::zeros(n, Topology::Dirichlet);
            for j in 0..=n as i64 + 1 {
                for i in 0..=n as i64 + 1 {
                    out.set(i, j, f(i as f64 * h, j as f64 * h));
                }
            }
            out
        };
        let u = sample(&|x, y| (PI * x).sin() * (PI * y).sin());
        let v = sample(&|x, y| (PI * x).cos() * (PI * y).sin());
        let mut p = sample(&|x, y| (PI * x).cos() * (PI * y).cos());
        p.mirror_boundary();
        p.shift_to_zero_at(prob.pressure_anchor);
        prob.gu = u.clone();
        prob.gv = v.clone();
        let exact = StokesState { u, v, p, h };
        let [a1, a2, a3] = super::smoother::apply_stokes_operator(&prob, &exact);
        prob.f1 = a1;
        prob.f2 = a2;
        prob.f3 = a3;
        Ok((prob, exact))
    }

    /// Coarse-grid correction problem for a restricted residual: zero boundary data.
    pub(crate) fn correction(
        n: usize,
        h: f64,
        c: f64,
        topology: Topology,
        rhs: [Field; 3],
    ) -> Result<Self> {
        let mut prob = Self::zero_data(n, h, c, topology)?;
        let [f1, f2, f3] = rhs;
        prob.f1 = f1;
        prob.f2 = f2;
        prob.f3 = f3;
        Ok(prob)
    }

    /// Same grid and `c`, zero data.
    pub fn homogeneous_copy(&self) -> Result<Self> {
        let mut out = Self::zero_data(self.n, self.h, self.c, self.topology)?;
        out.pressure_anchor = self.pressure_anchor;
        Ok(out)
    }

    pub fn operators(&self) -> &Operators {
        &self.ops
    }

    pub fn zero_state(&self) -> StokesState {
        let mut st = StokesState {
            u: Field::zeros(self.n, self.topology),
            v: Field::zeros(self.n, self.topology),
            p: Field::zeros(self.n, self.topology),
            h: self.h,
        };
        self.impose_boundary(&mut st);
        st
    }

    /// Interior values uniform in `[-1, 1]`, boundary data imposed.
    pub fn random_state(&self, seed: u64) -> StokesState {
        let mut rng = StdRng::seed_from_u64(seed);
        let mut st = self.zero_state();
        for field in [&mut st.u, &mut st.v, &mut st.p] {
            let points: Vec<_> = field.interior().collect();
            for (i, j) in points {
                field.set(i, j, rng.gen_range(-1.0..=1.0));
            }
        }
        self.impose_boundary(&mut st);
        st
    }

    /// Velocity boundary values, mirrored pressure ghosts, pressure anchored.
    pub fn impose_boundary(&self, st: &mut StokesState) {
        if self.topology == Topology::Periodic {
            return;
        }
        st.u.copy_boundary_from(&self.gu);
        st.v.copy_boundary_from(&self.gv);
        st.p.mirror_boundary();
        st.p.shift_to_zero_at(self.pressure_anchor);
    }

    pub fn check_state(&self, st: &StokesState) -> Result<()> {
        for (name, f) in [("u", &st.u), ("v", &st.v), ("p", &st.p)] {
            if f.n() != self.n || f.topology() != self.topology {
                return Err(Error::ShapeMismatch(format!(
                    "{name} has n = {} ({:?}), problem has n = {} ({:?})",
                    f.n(),
                    f.topology(),
                    self.n,
                    self.topology
                )));
            }
        }
        Ok(())
    }
}

impl StokesState {
    pub fn max_abs_diff(&self, other: &StokesState) -> f64 {
        [
            (&self.u, &other.u),
            (&self.v, &other.v),
            (&self.p, &other.p),
        ]
        .iter()
        .flat_map(|(a, b)| {
            a.interior()
                .map(move |(i, j)| (a.get(i, j) - b.get(i, j)).abs())
        })
        .fold(0.0, f64::max)
    }
}
