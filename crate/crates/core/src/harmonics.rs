//! 2h-harmonics and the Fourier representation of red-black Jacobi relaxation.
//!
//! For a low frequency `θ`, the pair `{θ, θ + (π, π)}` spans a subspace that a two-color
//! sweep maps into itself. Matrices here act on coefficient vectors in the ordering
//! `(θ⁰, θ¹)`: column `α` holds the coefficients of the image of the mode `θ^α`.
//! Red points are those with `k1 + k2` even and are relaxed first.

use std::f64::consts::TAU;
use std::ops::Mul;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::grid::{GridIndex, PeriodicGrid};
use crate::stencil::{ComplexValue, Frequency, Stencil2D};

const LATTICE_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarmonicPair {
    pub base: Frequency,
    pub theta0: Frequency,
    pub theta1: Frequency,
}

impl HarmonicPair {
    /// Pair without the low-frequency check; used when sweeping the closed box.
    pub(crate) fn from_any(base: Frequency) -> Self {
        Self {
            base,
            theta0: base,
            theta1: base.shifted_by_pi(),
        }
    }

    pub fn get(&self, alpha: usize) -> Frequency {
        if alpha == 0 {
            self.theta0
        } else {
            self.theta1
        }
    }
}

pub fn harmonics_of(base: Frequency) -> Result<HarmonicPair> {
    if !base.is_low() {
        return Err(Error::NotLowFrequency(base.theta1, base.theta2));
    }
    Ok(HarmonicPair::from_any(base))
}

/// `exp(i θ·k)`, the mode `φ_h(θ, x)` at `x = k h`.
pub fn evaluate_mode(theta: Frequency, k: GridIndex) -> ComplexValue {
    Complex64::from_polar(1.0, theta.dot(k))
}

/// Symbol of one pointwise Jacobi step, `1 - S̃(θ) / l_(0,0)`.
pub fn jacobi_symbol(s: &Stencil2D, theta: Frequency) -> Result<ComplexValue> {
    let center = s.center();
    if center == 0.0 {
        return Err(Error::ZeroCenter(s.name().to_string()));
    }
    Ok(Complex64::one() - s.symbol(theta) / center)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoColorRep {
    pub m: [[ComplexValue; 2]; 2],
}

impl TwoColorRep {
    pub fn zero() -> Self {
        Self {
            m: [[Complex64::zero(); 2]; 2],
        }
    }

    pub fn identity() -> Self {
        let (o, z) = (Complex64::one(), Complex64::zero());
        Self {
            m: [[o, z], [z, o]],
        }
    }

    /// Red half-sweep given the Jacobi symbols `a0 = A(θ⁰)`, `a1 = A(θ¹)`.
    pub fn red_factor(a0: ComplexValue, a1: ComplexValue) -> Self {
        let o = Complex64::one();
        Self {
            m: [
                [(a0 + o) * 0.5, (a1 - o) * 0.5],
                [(a0 - o) * 0.5, (a1 + o) * 0.5],
            ],
        }
    }

    /// Black half-sweep given the same Jacobi symbols.
    pub fn black_factor(a0: ComplexValue, a1: ComplexValue) -> Self {
        let o = Complex64::one();
        Self {
            m: [
                [(a0 + o) * 0.5, (o - a1) * 0.5],
                [(o - a0) * 0.5, (a1 + o) * 0.5],
            ],
        }
    }

    pub fn entry(&self, row: usize, col: usize) -> ComplexValue {
        self.m[row][col]
    }

    /// `(1 - ω) I + ω self`.
    pub fn damped(&self, omega: f64) -> Self {
        let mut out = *self * omega;
        out.m[0][0] += 1.0 - omega;
        out.m[1][1] += 1.0 - omega;
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::identity(), |acc, _| acc * *self)
    }

    /// `diag(0, 1) · self`: drops the low-harmonic row.
    pub fn projected(&self) -> Self {
        let mut out = *self;
        out.m[0] = [Complex64::zero(); 2];
        out
    }

    pub fn trace(&self) -> ComplexValue {
        self.m[0][0] + self.m[1][1]
    }

    pub fn det(&self) -> ComplexValue {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    /// Both eigenvalues, from the characteristic quadratic.
    pub fn eigenvalues(&self) -> (ComplexValue, ComplexValue) {
        let half_tr = self.trace() * 0.5;
        let disc = (half_tr * half_tr - self.det()).sqrt();
        (half_tr + disc, half_tr - disc)
    }

    pub fn spectral_radius(&self) -> f64 {
        let (a, b) = self.eigenvalues();
        a.norm().max(b.norm())
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..2 {
            for c in 0..2 {
                worst = worst.max((self.m[r][c] - other.m[r][c]).norm());
            }
        }
        worst
    }
}

impl Mul for TwoColorRep {
    type Output = TwoColorRep;

    fn mul(self, rhs: TwoColorRep) -> TwoColorRep {
        let mut out = TwoColorRep::zero();
        for r in 0..2 {
            for c in 0..2 {
                out.m[r][c] = self.m[r][0] * rhs.m[0][c] + self.m[r][1] * rhs.m[1][c];
            }
        }
        out
    }
}

impl Mul<f64> for TwoColorRep {
    type Output = TwoColorRep;

    fn mul(mut self, rhs: f64) -> TwoColorRep {
        for row in self.m.iter_mut() {
            for v in row.iter_mut() {
                *v *= rhs;
            }
        }
        self
    }
}

/// Jacobi symbols `(A(θ⁰), A(θ¹))` of the pair.
pub fn jacobi_pair(s: &Stencil2D, pair: &HarmonicPair) -> Result<(ComplexValue, ComplexValue)> {
    Ok((
        jacobi_symbol(s, pair.theta0)?,
        jacobi_symbol(s, pair.theta1)?,
    ))
}

/// Fourier representation of one undamped red-then-black Jacobi sweep: black · red.
pub fn two_color_rep(s: &Stencil2D, pair: &HarmonicPair) -> Result<TwoColorRep> {
    let (a0, a1) = jacobi_pair(s, pair)?;
    Ok(TwoColorRep::black_factor(a0, a1) * TwoColorRep::red_factor(a0, a1))
}

fn lattice_index(theta: f64, n: usize) -> Option<i64> {
    let x = theta * n as f64 / TAU;
    let k = x.round();
    ((x - k).abs() <= LATTICE_EPS).then_some(k as i64)
}

fn check_lattice(theta: Frequency, n: usize) -> Result<()> {
    match (
        lattice_index(theta.theta1, n),
        lattice_index(theta.theta2, n),
    ) {
        (Some(_), Some(_)) => Ok(()),
        _ => Err(Error::OffLattice(theta.theta1, theta.theta2, n)),
    }
}

fn jacobi_half_sweep(s: &Stencil2D, g: &mut PeriodicGrid<Complex64>, color: i64) {
    let n = g.n() as i64;
    let center = s.center();
    let old = g.clone();
    for k2 in 0..n {
        for k1 in 0..n {
            if (k1 + k2).rem_euclid(2) != color {
                continue;
            }
            let residual = s
                .apply(&old, (k1, k2))
                .expect("periodic grids are unbounded");
            g.set(k1, k2, old.get(k1, k2) - residual / center);
        }
    }
}

/// Measures the two-color representation by running one red-black Jacobi sweep on the
/// two modes of `pair` over an `n_grid × n_grid` periodic grid and projecting back.
pub fn numerical_lfa_oracle(
    s: &Stencil2D,
    pair: &HarmonicPair,
    n_grid: usize,
) -> Result<TwoColorRep> {
    if n_grid < 8 || !n_grid.is_multiple_of(2) {
        return Err(Error::InvalidGridSize(n_grid));
    }
    if s.center() == 0.0 {
        return Err(Error::ZeroCenter(s.name().to_string()));
    }
    check_lattice(pair.theta0, n_grid)?;
    check_lattice(pair.theta1, n_grid)?;

    let modes: [PeriodicGrid<Complex64>; 2] = [0, 1]
        .map(|a| PeriodicGrid::from_fn(n_grid, |k1, k2| evaluate_mode(pair.get(a), (k1, k2))));
    let norm = (n_grid * n_grid) as f64;
    let mut rep = TwoColorRep::zero();
    for alpha in 0..2 {
        let mut g = modes[alpha].clone();
        jacobi_half_sweep(s, &mut g, 0);
        jacobi_half_sweep(s, &mut g, 1);
        for (j, mode) in modes.iter().enumerate() {
            let inner: Complex64 = g
                .as_slice()
                .iter()
                .zip(mode.as_slice())
                .map(|(a, b)| a * b.conj())
                .sum();
            rep.m[j][alpha] = inner / norm;
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stencil::{make_operator, OperatorKind};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn lap() -> Stencil2D {
        make_operator(OperatorKind::Laplacian, 1.0, None).unwrap()
    }

    fn pressure(c: f64) -> Stencil2D {
        make_operator(OperatorKind::PressureBlock, 1.0, Some(c)).unwrap()
    }

    fn assert_freq(f: Frequency, t1: f64, t2: f64) {
        assert_abs_diff_eq!(f.theta1, t1, epsilon = 1e-14);
        assert_abs_diff_eq!(f.theta2, t2, epsilon = 1e-14);
    }

    #[test]
    fn harmonic_pairs() {
        let p = harmonics_of(Frequency::ZERO).unwrap();
        assert_freq(p.theta0, 0.0, 0.0);
        assert_freq(p.theta1, PI, PI);
        let p = harmonics_of(Frequency::new(FRAC_PI_2, FRAC_PI_2)).unwrap();
        assert_freq(p.theta1, -FRAC_PI_2, -FRAC_PI_2);
        let p = harmonics_of(Frequency::new(-FRAC_PI_4, PI / 3.0)).unwrap();
        assert_freq(p.theta0, -FRAC_PI_4, PI / 3.0);
        assert_freq(p.theta1, 3.0 * FRAC_PI_4, -2.0 * PI / 3.0);
        assert!(matches!(
            harmonics_of(Frequency::new(PI, 0.0)),
            Err(Error::NotLowFrequency(..))
        ));
        assert!(harmonics_of(Frequency::new(-FRAC_PI_2, 0.0)).is_err());
    }

    #[test]
    fn mode_values() {
        assert_abs_diff_eq!((evaluate_mode(Frequency::ZERO, (5, -3)) - 1.0).norm(), 0.0);
        assert_abs_diff_eq!(
            (evaluate_mode(Frequency::new(PI, PI), (1, 0)) + 1.0).norm(),
            0.0,
            epsilon = 1e-15
        );
        let z = evaluate_mode(Frequency::new(FRAC_PI_2, 0.0), (3, 5));
        assert_abs_diff_eq!((z - Complex64::new(0.0, -1.0)).norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn jacobi_landmarks() {
        let s = lap();
        assert_abs_diff_eq!(
            (jacobi_symbol(&s, Frequency::ZERO).unwrap() - 1.0).norm(),
            0.0
        );
        assert_abs_diff_eq!(
            (jacobi_symbol(&s, Frequency::new(PI, PI)).unwrap() + 1.0).norm(),
            0.0,
            epsilon = 1e-15
        );
        let z = jacobi_symbol(&s, Frequency::new(FRAC_PI_2, FRAC_PI_2)).unwrap();
        assert_abs_diff_eq!(z.norm(), 0.0, epsilon = 1e-15);
        let ddx = make_operator(OperatorKind::Ddx, 1.0, None).unwrap();
        assert!(matches!(
            jacobi_symbol(&ddx, Frequency::ZERO),
            Err(Error::ZeroCenter(_))
        ));
    }

    #[test]
    fn rep_landmarks() {
        let s = lap();
        let rep = two_color_rep(
            &s,
            &harmonics_of(Frequency::new(FRAC_PI_2, FRAC_PI_2)).unwrap(),
        )
        .unwrap();
        assert!(rep.max_abs_diff(&TwoColorRep::zero()) < 1e-15);

        // A0 = 1, A1 = -1: red = [[1, -1], [0, 0]], black = [[1, 1], [0, 0]], product [[1, -1], [0, 0]]
        let rep = two_color_rep(&s, &harmonics_of(Frequency::ZERO).unwrap()).unwrap();
        let o = Complex64::one();
        let z = Complex64::zero();
        let expected = TwoColorRep {
            m: [[o, -o], [z, z]],
        };
        assert!(rep.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn red_factor_structure() {
        let (a0, a1) = (Complex64::new(0.3, 0.1), Complex64::new(-0.7, 0.2));
        let red = TwoColorRep::red_factor(a0, a1);
        assert_eq!(red.entry(0, 1), (a1 - 1.0) * 0.5);
        assert_eq!(red.entry(1, 0), (a0 - 1.0) * 0.5);
        let black = TwoColorRep::black_factor(a0, a1);
        assert_eq!(black.entry(0, 1), (-a1 + 1.0) * 0.5);
        assert_eq!(black.entry(1, 0), (-a0 + 1.0) * 0.5);
    }

    #[test]
    fn oracle_matches_landmarks() {
        let s = lap();
        let pair = harmonics_of(Frequency::new(FRAC_PI_2, FRAC_PI_2)).unwrap();
        let measured = numerical_lfa_oracle(&s, &pair, 8).unwrap();
        assert!(measured.max_abs_diff(&TwoColorRep::zero()) < 1e-12);

        let pair = harmonics_of(Frequency::ZERO).unwrap();
        let measured = numerical_lfa_oracle(&s, &pair, 8).unwrap();
        assert!(measured.max_abs_diff(&two_color_rep(&s, &pair).unwrap()) < 1e-12);

        let s = pressure(0.125);
        let pair = harmonics_of(Frequency::new(FRAC_PI_4, FRAC_PI_4)).unwrap();
        let measured = numerical_lfa_oracle(&s, &pair, 16).unwrap();
        assert!(measured.max_abs_diff(&two_color_rep(&s, &pair).unwrap()) < 1e-10);
    }

    #[test]
    fn oracle_rejects_bad_input() {
        let s = lap();
        let pair = harmonics_of(Frequency::new(0.1, 0.0)).unwrap();
        assert!(matches!(
            numerical_lfa_oracle(&s, &pair, 16),
            Err(Error::OffLattice(..))
        ));
        let pair = harmonics_of(Frequency::ZERO).unwrap();
        assert!(matches!(
            numerical_lfa_oracle(&s, &pair, 9),
            Err(Error::InvalidGridSize(9))
        ));
        assert!(matches!(
            numerical_lfa_oracle(&s, &pair, 6),
            Err(Error::InvalidGridSize(6))
        ));
    }

    #[test]
    fn poisson_projected_row() {
        let s = lap();
        for (t1, t2) in [(0.3, -1.1), (FRAC_PI_2, 0.0), (-0.7, 0.7), (1.2, 1.5)] {
            let theta = Frequency::new(t1, t2);
            let (s1, s2) = theta.s_variables();
            let q = two_color_rep(&s, &harmonics_of(theta).unwrap())
                .unwrap()
                .projected();
            let t = s1 + s2;
            assert_abs_diff_eq!(q.entry(1, 0).re, 0.5 * t * (1.0 - t), epsilon = 1e-12);
            assert_abs_diff_eq!(q.entry(1, 1).re, 0.5 * t * (t - 1.0), epsilon = 1e-12);
            assert_abs_diff_eq!(q.entry(1, 0).im, 0.0, epsilon = 1e-12);
            assert_eq!(q.entry(0, 0), Complex64::zero());
        }
    }

    #[test]
    fn damping_and_powers() {
        let rep = two_color_rep(&lap(), &harmonics_of(Frequency::new(0.4, -0.2)).unwrap()).unwrap();
        assert_eq!(rep.damped(1.0), rep);
        assert!(rep.damped(0.0).max_abs_diff(&TwoColorRep::identity()) < 1e-15);
        assert!(rep.pow(2).max_abs_diff(&(rep * rep)) < 1e-15);
        let (l0, l1) = rep.eigenvalues();
        assert!(((l0 + l1) - rep.trace()).norm() < 1e-14);
        assert!(((l0 * l1) - rep.det()).norm() < 1e-14);
    }
}
