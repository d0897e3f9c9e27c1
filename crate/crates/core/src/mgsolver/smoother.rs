//! Distributive red-black Jacobi smoothing.
//!
//! With the distribution operator
//!
//! ```text
//!        | I  0  -∂x  |
//! C_h =  | 0  I  -∂y  |
//!        | 0  0  -Δh  |
//! ```
//!
//! the product `L_h C_h` is block lower triangular with diagonal blocks `-Δh, -Δh` and
//! `D_h(c) = c h² Δh² - Δ2h`. A sweep relaxes the two momentum blocks, then the pressure
//! block on the updated continuity residual, each with one red-black Jacobi pass on a
//! zero-initialized correction, and maps the corrections back through `C_h`.
//!
//! Near a Dirichlet boundary `L_h C_h` is no longer triangular, so the sweep is a poorer
//! smoother there. [`boundary_relaxation`] repeats the sweep on a few layers next to the
//! boundary to compensate.

use super::field::{Field, Topology};
use super::problem::{StokesProblem, StokesState};
use crate::closedform::{omega_opt_closed, POISSON_OMEGA_OPT};
use crate::error::Result;
use crate::grid::GridIndex;
use crate::stencil::Stencil2D;

/// One-stage damping of the momentum blocks and of the pressure block.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Damping {
    pub momentum: f64,
    pub pressure: f64,
}

impl Damping {
    pub fn uniform(omega: f64) -> Self {
        Self {
            momentum: omega,
            pressure: omega,
        }
    }

    /// Poisson optimum on the momentum blocks, closed-form `ω_opt(c)` on the pressure block.
    pub fn optimal(c: f64) -> Result<Self> {
        Ok(Self {
            momentum: POISSON_OMEGA_OPT,
            pressure: omega_opt_closed(c)?,
        })
    }
}

/// Extra sweeps restricted to the `layers` grid lines nearest a Dirichlet boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundaryRelaxation {
    pub layers: usize,
    pub sweeps: u32,
}

impl BoundaryRelaxation {
    pub const NONE: Self = Self {
        layers: 0,
        sweeps: 0,
    };
}

impl Default for BoundaryRelaxation {
    fn default() -> Self {
        Self {
            layers: 6,
            sweeps: 8,
        }
    }
}

fn at(s: &Stencil2D, f: &Field, point: GridIndex) -> f64 {
    s.apply(f, point)
        .expect("field padding covers every solver stencil")
}

fn momentum_rows(prob: &StokesProblem, st: &StokesState, x: GridIndex) -> (f64, f64) {
    let ops = &prob.ops;
    (
        at(&ops.laplacian, &st.u, x) + at(&ops.ddx, &st.p, x),
        at(&ops.laplacian, &st.v, x) + at(&ops.ddy, &st.p, x),
    )
}

fn continuity_row(prob: &StokesProblem, st: &StokesState, x: GridIndex) -> f64 {
    let ops = &prob.ops;
    at(&ops.ddx, &st.u, x) + at(&ops.ddy, &st.v, x) + at(&ops.stabilization, &st.p, x)
}

/// `L_h` applied at interior points; zero elsewhere.
pub fn apply_stokes_operator(prob: &StokesProblem, st: &StokesState) -> [Field; 3] {
    let mut out = [0; 3].map(|_| Field::zeros(prob.n, prob.topology));
    let points: Vec<_> = out[0].interior().collect();
    for x in points {
        let (a1, a2) = momentum_rows(prob, st, x);
        out[0].set(x.0, x.1, a1);
        out[1].set(x.0, x.1, a2);
        out[2].set(x.0, x.1, continuity_row(prob, st, x));
    }
    out
}

/// `rhs - L_h state` at interior points; boundary rows are zero.
pub fn assemble_residual(prob: &StokesProblem, st: &StokesState) -> Result<[Field; 3]> {
    prob.check_state(st)?;
    let mut r = apply_stokes_operator(prob, st);
    for (res, rhs) in r.iter_mut().zip([&prob.f1, &prob.f2, &prob.f3]) {
        let points: Vec<_> = res.interior().collect();
        for (i, j) in points {
            res.set(i, j, rhs.get(i, j) - res.get(i, j));
        }
    }
    Ok(r)
}

/// Combined 2-norm of the three residual components, scaled by `h`.
pub fn residual_norm(r: &[Field; 3], h: f64) -> f64 {
    h * r.iter().map(|f| f.interior_dot(f)).sum::<f64>().sqrt()
}

/// One red-black Jacobi pass for `s δ = rhs` from `δ = 0`. Within a color all points use the
/// values from before that half-sweep; black points see the new red values.
pub fn red_black_jacobi(s: &Stencil2D, rhs: &Field) -> Field {
    let points: Vec<_> = rhs.interior().collect();
    red_black_jacobi_on(s, rhs, &points)
}

/// [`red_black_jacobi`] with `δ` held at zero outside `points`.
fn red_black_jacobi_on(s: &Stencil2D, rhs: &Field, points: &[GridIndex]) -> Field {
    let center = s.center();
    let mut delta = Field::zeros(rhs.n(), rhs.topology());
    for &(i, j) in points.iter().filter(|(i, j)| (i + j).rem_euclid(2) == 0) {
        delta.set(i, j, rhs.get(i, j) / center);
    }
    let black: Vec<_> = points
        .iter()
        .filter(|(i, j)| (i + j).rem_euclid(2) == 1)
        .map(|&x| (x, (rhs.get(x.0, x.1) - at(s, &delta, x)) / center))
        .collect();
    for ((i, j), value) in black {
        delta.set(i, j, value);
    }
    delta
}

/// `C_h (δ1, δ2, δ3)`, evaluated at interior points.
pub fn distribute(prob: &StokesProblem, ghost: &[Field; 3]) -> [Field; 3] {
    let ops = &prob.ops;
    let mut out = [0; 3].map(|_| Field::zeros(prob.n, prob.topology));
    let points: Vec<_> = out[0].interior().collect();
    for x in points {
        out[0].set(
            x.0,
            x.1,
            ghost[0].get(x.0, x.1) - at(&ops.ddx, &ghost[2], x),
        );
        out[1].set(
            x.0,
            x.1,
            ghost[1].get(x.0, x.1) - at(&ops.ddy, &ghost[2], x),
        );
        out[2].set(x.0, x.1, at(&ops.laplacian, &ghost[2], x));
    }
    out
}

/// Interior points within `layers` grid lines of the boundary ring, or all interior points.
fn region(prob: &StokesProblem, layers: Option<usize>) -> Vec<GridIndex> {
    let m = prob.n as i64 + 1;
    let all = Field::zeros(prob.n, prob.topology)
        .interior()
        .collect::<Vec<_>>();
    match (layers, prob.topology) {
        (Some(l), Topology::Dirichlet) => all
            .into_iter()
            .filter(|&(i, j)| i.min(j).min(m - i).min(m - j) <= l as i64)
            .collect(),
        _ => all,
    }
}

fn relax(
    prob: &StokesProblem,
    st: &mut StokesState,
    damping: Damping,
    layers: Option<usize>,
) -> Result<()> {
    prob.check_state(st)?;
    let ops = &prob.ops;
    let points = region(prob, layers);
    let halo = region(prob, layers.map(|l| l + 1));

    let mut r1 = Field::zeros(prob.n, prob.topology);
    let mut r2 = r1.clone();
    for &x in &points {
        let (a1, a2) = momentum_rows(prob, st, x);
        r1.set(x.0, x.1, prob.f1.get(x.0, x.1) - a1);
        r2.set(x.0, x.1, prob.f2.get(x.0, x.1) - a2);
    }
    let d1 = red_black_jacobi_on(&ops.laplacian, &r1, &points);
    let d2 = red_black_jacobi_on(&ops.laplacian, &r2, &points);
    for &(i, j) in &points {
        st.u.add(i, j, damping.momentum * d1.get(i, j));
        st.v.add(i, j, damping.momentum * d2.get(i, j));
    }

    let mut r3 = r1;
    for &x in &points {
        r3.set(
            x.0,
            x.1,
            prob.f3.get(x.0, x.1) - continuity_row(prob, st, x),
        );
    }
    let mut q = red_black_jacobi_on(&ops.pressure_block, &r3, &points);
    for &(i, j) in &points {
        q.set(i, j, damping.pressure * q.get(i, j));
    }
    let updates: Vec<_> = halo
        .iter()
        .map(|&x| {
            (
                x,
                at(&ops.ddx, &q, x),
                at(&ops.ddy, &q, x),
                at(&ops.laplacian, &q, x),
            )
        })
        .collect();
    for ((i, j), qx, qy, lq) in updates {
        st.u.add(i, j, -qx);
        st.v.add(i, j, -qy);
        st.p.add(i, j, lq);
    }
    prob.impose_boundary(st);
    Ok(())
}

/// One damped distributive red-black sweep, in place.
pub fn sweep_in_place(prob: &StokesProblem, st: &mut StokesState, damping: Damping) -> Result<()> {
    relax(prob, st, damping, None)
}

/// One damped distributive red-black sweep.
pub fn distributive_two_color_sweep(
    prob: &StokesProblem,
    st: &StokesState,
    damping: Damping,
) -> Result<StokesState> {
    let mut out = st.clone();
    sweep_in_place(prob, &mut out, damping)?;
    Ok(out)
}

/// Sweeps restricted to the layers next to a Dirichlet boundary; no-op on a torus.
pub fn boundary_relaxation(
    prob: &StokesProblem,
    st: &mut StokesState,
    damping: Damping,
    br: BoundaryRelaxation,
) -> Result<()> {
    if prob.topology == Topology::Periodic || br.layers == 0 {
        return Ok(());
    }
    for _ in 0..br.sweeps {
        relax(prob, st, damping, Some(br.layers))?;
    }
    Ok(())
}
