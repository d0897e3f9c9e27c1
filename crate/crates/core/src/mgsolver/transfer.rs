//! Full-weighting restriction and bilinear prolongation between a grid and its `2h` coarsening.
//!
//! Coarse point `(I, J)` sits on fine point `(2I, 2J)` in both topologies.

use super::field::{Field, Topology};
use crate::error::{Error, Result};

/// Coarse size for a fine grid of `n` points per axis.
pub fn coarse_size(n: usize, topology: Topology) -> Result<usize> {
    match topology {
        Topology::Dirichlet if n >= 3 && n % 2 == 1 => Ok((n - 1) / 2),
        Topology::Periodic if n >= 4 && n.is_multiple_of(2) => Ok(n / 2),
        _ => Err(Error::InvalidGridSize(n)),
    }
}

/// Fine size whose coarsening has `n_coarse` points per axis.
pub fn fine_size(n_coarse: usize, topology: Topology) -> usize {
    match topology {
        Topology::Dirichlet => 2 * n_coarse + 1,
        Topology::Periodic => 2 * n_coarse,
    }
}

const FW: [f64; 3] = [0.25, 0.5, 0.25];

/// 9-point full weighting `1/16 [1 2 1; 2 4 2; 1 2 1]`. Boundary-ring values of `fine` take part.
pub fn restrict(fine: &Field) -> Result<Field> {
    let nc = coarse_size(fine.n(), fine.topology())?;
    Ok(Field::from_interior(nc, fine.topology(), |i, j| {
        let mut acc = 0.0;
        for (b, wb) in FW.iter().enumerate() {
            for (a, wa) in FW.iter().enumerate() {
                acc += wa * wb * fine.get(2 * i + a as i64 - 1, 2 * j + b as i64 - 1);
            }
        }
        acc
    }))
}

fn stencil_1d(i: i64) -> [(i64, f64); 2] {
    if i % 2 == 0 {
        [(i / 2, 1.0), (i / 2, 0.0)]
    } else {
        [((i - 1) / 2, 0.5), ((i + 1) / 2, 0.5)]
    }
}

/// Bilinear interpolation to the fine interior; the coarse boundary ring is used as data.
pub fn prolong(coarse: &Field) -> Field {
    let nf = fine_size(coarse.n(), coarse.topology());
    Field::from_interior(nf, coarse.topology(), |i, j| {
        let mut acc = 0.0;
        for (cj, wj) in stencil_1d(j) {
            for (ci, wi) in stencil_1d(i) {
                acc += wi * wj * coarse.get(ci, cj);
            }
        }
        acc
    })
}
