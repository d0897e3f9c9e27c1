use crate::grid::{GridFunction, GridIndex};

/// Width of the zero layer stored outside the Dirichlet boundary ring; the widest stencil
/// used by the solver reaches two points.
pub const PAD: i64 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Topology {
    /// Unit square with `n` interior points per axis at indices `1..=n`; indices `0` and `n + 1`
    /// form the boundary ring.
    Dirichlet,
    /// `n × n` torus with indices `0..n`.
    Periodic,
}

/// Real grid function on one level.
#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    n: usize,
    topology: Topology,
    side: usize,
    data: Vec<f64>,
}

impl Field {
    pub fn zeros(n: usize, topology: Topology) -> Self {
        let side = match topology {
            Topology::Dirichlet => n + 2 + 2 * PAD as usize,
            Topology::Periodic => n,
        };
        Self {
            n,
            topology,
            side,
            data: vec![0.0; side * side],
        }
    }

    /// Field with `f(i, j)` at every interior point and zeros elsewhere.
    pub fn from_interior(n: usize, topology: Topology, mut f: impl FnMut(i64, i64) -> f64) -> Self {
        let mut out = Self::zeros(n, topology);
        for (i, j) in out.interior() {
            out.set(i, j, f(i, j));
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    pub fn same_shape(&self, other: &Field) -> bool {
        self.n == other.n && self.topology == other.topology
    }

    fn index(&self, i: i64, j: i64) -> Option<usize> {
        match self.topology {
            Topology::Dirichlet => {
                let (a, b) = (i + PAD, j + PAD);
                let side = self.side as i64;
                (a >= 0 && b >= 0 && a < side && b < side).then(|| (b * side + a) as usize)
            }
            Topology::Periodic => {
                let n = self.n as i64;
                Some((j.rem_euclid(n) * n + i.rem_euclid(n)) as usize)
            }
        }
    }

    pub fn get(&self, i: i64, j: i64) -> f64 {
        self.index(i, j).map_or(0.0, |k| self.data[k])
    }

    pub fn set(&mut self, i: i64, j: i64, value: f64) {
        let k = self
            .index(i, j)
            .unwrap_or_else(|| panic!("index ({i}, {j}) outside field storage"));
        self.data[k] = value;
    }

    pub fn add(&mut self, i: i64, j: i64, value: f64) {
        let k = self
            .index(i, j)
            .unwrap_or_else(|| panic!("index ({i}, {j}) outside field storage"));
        self.data[k] += value;
    }

    /// Range of interior indices along one axis.
    pub fn interior_range(&self) -> std::ops::Range<i64> {
        match self.topology {
            Topology::Dirichlet => 1..self.n as i64 + 1,
            Topology::Periodic => 0..self.n as i64,
        }
    }

    /// Interior points in row-major order (`i` fastest).
    pub fn interior(&self) -> impl Iterator<Item = GridIndex> {
        let r = self.interior_range();
        let r2 = r.clone();
        r2.flat_map(move |j| r.clone().map(move |i| (i, j)))
    }

    pub fn is_interior(&self, i: i64, j: i64) -> bool {
        let r = self.interior_range();
        r.contains(&i) && r.contains(&j)
    }

    /// Boundary ring of a Dirichlet field (empty for periodic fields).
    pub fn boundary(&self) -> Vec<GridIndex> {
        if self.topology == Topology::Periodic {
            return Vec::new();
        }
        let m = self.n as i64 + 1;
        let mut out = Vec::with_capacity(4 * self.n + 4);
        for k in 0..=m {
            out.extend([(k, 0), (k, m)]);
        }
        for k in 1..m {
            out.extend([(0, k), (m, k)]);
        }
        out
    }

    /// Sets the boundary ring to the adjacent interior values (zero normal difference).
    pub fn mirror_boundary(&mut self) {
        if self.topology == Topology::Periodic {
            return;
        }
        let n = self.n as i64;
        for k in 1..=n {
            self.set(0, k, self.get(1, k));
            self.set(n + 1, k, self.get(n, k));
            self.set(k, 0, self.get(k, 1));
            self.set(k, n + 1, self.get(k, n));
        }
        for (ci, cj, si, sj) in [
            (0, 0, 1, 1),
            (n + 1, 0, n, 1),
            (0, n + 1, 1, n),
            (n + 1, n + 1, n, n),
        ] {
            self.set(ci, cj, self.get(si, sj));
        }
    }

    pub fn clear_boundary(&mut self) {
        for (i, j) in self.boundary() {
            self.set(i, j, 0.0);
        }
    }

    /// Copies boundary-ring values from `other`.
    pub fn copy_boundary_from(&mut self, other: &Field) {
        for (i, j) in self.boundary() {
            self.set(i, j, other.get(i, j));
        }
    }

    pub fn interior_dot(&self, other: &Field) -> f64 {
        self.interior()
            .map(|(i, j)| self.get(i, j) * other.get(i, j))
            .sum()
    }

    pub fn interior_norm(&self) -> f64 {
        self.interior_dot(self).sqrt()
    }

    pub fn interior_max_abs(&self) -> f64 {
        self.interior()
            .map(|(i, j)| self.get(i, j).abs())
            .fold(0.0, f64::max)
    }

    /// Subtracts `self(anchor)` at every stored point.
    pub fn shift_to_zero_at(&mut self, anchor: GridIndex) {
        let v = self.get(anchor.0, anchor.1);
        if v != 0.0 {
            self.data.iter_mut().for_each(|x| *x -= v);
        }
    }

    pub(crate) fn raw(&self) -> &[f64] {
        &self.data
    }
}

impl GridFunction for Field {
    type Value = f64;

    fn value_at(&self, k1: i64, k2: i64) -> Option<f64> {
        self.index(k1, k2).map(|k| self.data[k])
    }
}
