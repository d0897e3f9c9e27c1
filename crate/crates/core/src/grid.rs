//! Grid-function containers addressed by integer grid index `(k1, k2)`.

use num_traits::Zero;

pub type GridIndex = (i64, i64);

/// Read access to a grid function. `None` means the index is outside the stored region.
pub trait GridFunction {
    type Value: Copy;

    fn value_at(&self, k1: i64, k2: i64) -> Option<Self::Value>;
}

/// `n × n` grid with periodic wrap-around in both directions.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicGrid<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Copy + Zero> PeriodicGrid<T> {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![T::zero(); n * n],
        }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(i64, i64) -> T) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for k2 in 0..n as i64 {
            for k1 in 0..n as i64 {
                data.push(f(k1, k2));
            }
        }
        Self { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn wrap(&self, k1: i64, k2: i64) -> usize {
        let n = self.n as i64;
        (k2.rem_euclid(n) * n + k1.rem_euclid(n)) as usize
    }

    pub fn get(&self, k1: i64, k2: i64) -> T {
        self.data[self.wrap(k1, k2)]
    }

    pub fn set(&mut self, k1: i64, k2: i64, value: T) {
        let idx = self.wrap(k1, k2);
        self.data[idx] = value;
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }
}

impl<T: Copy + Zero> GridFunction for PeriodicGrid<T> {
    type Value = T;

    fn value_at(&self, k1: i64, k2: i64) -> Option<T> {
        Some(self.get(k1, k2))
    }
}

/// Rectangular grid function on `[lo1, lo1 + n1) × [lo2, lo2 + n2)`; reads outside are `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxGrid<T> {
    lo: GridIndex,
    n1: usize,
    n2: usize,
    data: Vec<T>,
}

impl<T: Copy + Zero> BoxGrid<T> {
    pub fn from_fn(lo: GridIndex, n1: usize, n2: usize, mut f: impl FnMut(i64, i64) -> T) -> Self {
        let mut data = Vec::with_capacity(n1 * n2);
        for j in 0..n2 as i64 {
            for i in 0..n1 as i64 {
                data.push(f(lo.0 + i, lo.1 + j));
            }
        }
        Self { lo, n1, n2, data }
    }

    pub fn contains(&self, k1: i64, k2: i64) -> bool {
        let (i, j) = (k1 - self.lo.0, k2 - self.lo.1);
        i >= 0 && j >= 0 && (i as usize) < self.n1 && (j as usize) < self.n2
    }
}

impl<T: Copy + Zero> GridFunction for BoxGrid<T> {
    type Value = T;

    fn value_at(&self, k1: i64, k2: i64) -> Option<T> {
        if !self.contains(k1, k2) {
            return None;
        }
        let (i, j) = ((k1 - self.lo.0) as usize, (k2 - self.lo.1) as usize);
        Some(self.data[j * self.n1 + i])
    }
}
