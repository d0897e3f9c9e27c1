//! Compact 2D difference stencils with their Fourier symbols.
//!
//! A stencil `[l_k]_h` acts on a grid function `g` by `(S g)(x) = Σ_k l_k g(x + k h)` and on
//! the Fourier mode `exp(iθ·x/h)` by multiplication with its symbol `Σ_k l_k exp(iθ·k)`.
//! Coefficients are stored fully scaled, so `h` only enters at construction.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::grid::{GridFunction, GridIndex};

pub type ComplexValue = Complex64;

pub type Offset = (i32, i32);

const LOW_EDGE_EPS: f64 = 1e-12;

/// Fourier frequency `θ = (θ1, θ2)`, each component reduced into `(-π, π]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frequency {
    pub theta1: f64,
    pub theta2: f64,
}

fn reduce_angle(theta: f64) -> f64 {
    let r = theta.rem_euclid(TAU);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

impl Frequency {
    pub const ZERO: Frequency = Frequency {
        theta1: 0.0,
        theta2: 0.0,
    };

    pub fn new(theta1: f64, theta2: f64) -> Self {
        Self {
            theta1: reduce_angle(theta1),
            theta2: reduce_angle(theta2),
        }
    }

    /// `θ + (π, π)` reduced into `(-π, π]`.
    pub fn shifted_by_pi(self) -> Self {
        Self::new(self.theta1 + PI, self.theta2 + PI)
    }

    /// Membership in the half-open low-frequency box `(-π/2, π/2]²`.
    pub fn is_low(self) -> bool {
        let inside = |t: f64| t > -FRAC_PI_2 + LOW_EDGE_EPS && t <= FRAC_PI_2 + LOW_EDGE_EPS;
        inside(self.theta1) && inside(self.theta2)
    }

    /// `(sin²(θ1/2), sin²(θ2/2))`, mapping the low box onto `[0, 1/2]²`.
    pub fn s_variables(self) -> (f64, f64) {
        let s = |t: f64| (0.5 * t).sin().powi(2);
        (s(self.theta1), s(self.theta2))
    }

    pub fn dot(self, k: GridIndex) -> f64 {
        self.theta1 * k.0 as f64 + self.theta2 * k.1 as f64
    }
}

impl fmt::Display for Frequency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:.6}, {:.6})", self.theta1, self.theta2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OperatorKind {
    Identity,
    /// `-Δh`, 5-point.
    Laplacian,
    /// Central `∂x`.
    Ddx,
    /// Central `∂y`.
    Ddy,
    /// `Δh²`, 13-point.
    Biharmonic,
    /// `-Δ2h`, the 5-point Laplacian with spacing `2h`.
    WideLaplacian,
    /// `c h² Δh² - Δ2h`, the pressure block of the distributed system.
    PressureBlock,
    /// `-c h² Δh`, the stabilization entry of the continuity equation.
    Stabilization,
}

impl OperatorKind {
    pub const ALL: [OperatorKind; 8] = [
        OperatorKind::Identity,
        OperatorKind::Laplacian,
        OperatorKind::Ddx,
        OperatorKind::Ddy,
        OperatorKind::Biharmonic,
        OperatorKind::WideLaplacian,
        OperatorKind::PressureBlock,
        OperatorKind::Stabilization,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OperatorKind::Identity => "identity",
            OperatorKind::Laplacian => "laplacian",
            OperatorKind::Ddx => "ddx",
            OperatorKind::Ddy => "ddy",
            OperatorKind::Biharmonic => "biharmonic",
            OperatorKind::WideLaplacian => "wide_laplacian",
            OperatorKind::PressureBlock => "pressure_block",
            OperatorKind::Stabilization => "stabilization",
        }
    }

    pub fn needs_stabilization(self) -> bool {
        matches!(
            self,
            OperatorKind::PressureBlock | OperatorKind::Stabilization
        )
    }

    /// Power of `1/h` carried by the coefficients.
    pub fn order(self) -> i32 {
        match self {
            OperatorKind::Identity | OperatorKind::Stabilization => 0,
            OperatorKind::Ddx | OperatorKind::Ddy => 1,
            OperatorKind::Laplacian | OperatorKind::WideLaplacian | OperatorKind::PressureBlock => {
                2
            }
            OperatorKind::Biharmonic => 4,
        }
    }
}

impl FromStr for OperatorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        OperatorKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::UnknownOperator(s.to_string()))
    }
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A compact stencil `[l_k]_h`. Entries are sorted by offset and always include `(0, 0)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Stencil2D {
    name: String,
    h: f64,
    kind: Option<OperatorKind>,
    c: Option<f64>,
    entries: Vec<(Offset, f64)>,
}

const LAPLACIAN: [(Offset, f64); 5] = [
    ((0, 0), 4.0),
    ((-1, 0), -1.0),
    ((1, 0), -1.0),
    ((0, -1), -1.0),
    ((0, 1), -1.0),
];

const BIHARMONIC: [(Offset, f64); 13] = [
    ((0, 0), 20.0),
    ((-1, 0), -8.0),
    ((1, 0), -8.0),
    ((0, -1), -8.0),
    ((0, 1), -8.0),
    ((-1, -1), 2.0),
    ((1, -1), 2.0),
    ((-1, 1), 2.0),
    ((1, 1), 2.0),
    ((-2, 0), 1.0),
    ((2, 0), 1.0),
    ((0, -2), 1.0),
    ((0, 2), 1.0),
];

const WIDE_LAPLACIAN: [(Offset, f64); 5] = [
    ((0, 0), 4.0),
    ((-2, 0), -1.0),
    ((2, 0), -1.0),
    ((0, -2), -1.0),
    ((0, 2), -1.0),
];

fn scaled(entries: &[(Offset, f64)], factor: f64) -> Vec<(Offset, f64)> {
    entries.iter().map(|&(k, l)| (k, l * factor)).collect()
}

/// Builds one of the named operators on mesh size `h`.
pub fn make_operator(kind: OperatorKind, h: f64, c: Option<f64>) -> Result<Stencil2D> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidMeshSize(h));
    }
    let c = if kind.needs_stabilization() {
        match c {
            None => return Err(Error::MissingStabilization(kind.name())),
            Some(c) if !(c > 0.0 && c.is_finite()) => return Err(Error::InvalidStabilization(c)),
            Some(c) => Some(c),
        }
    } else {
        None
    };
    let h2 = h * h;
    let entries = match kind {
        OperatorKind::Identity => vec![((0, 0), 1.0)],
        OperatorKind::Laplacian => scaled(&LAPLACIAN, 1.0 / h2),
        OperatorKind::Ddx => vec![((-1, 0), -0.5 / h), ((0, 0), 0.0), ((1, 0), 0.5 / h)],
        OperatorKind::Ddy => vec![((0, -1), -0.5 / h), ((0, 0), 0.0), ((0, 1), 0.5 / h)],
        OperatorKind::Biharmonic => scaled(&BIHARMONIC, 1.0 / (h2 * h2)),
        OperatorKind::WideLaplacian => scaled(&WIDE_LAPLACIAN, 0.25 / h2),
        OperatorKind::PressureBlock => {
            let c = c.unwrap_or_default();
            // c h² · (1/h⁴) Δ² + (1/4h²) (-Δ2h)
            let mut merged = scaled(&BIHARMONIC, c / h2);
            for &(k, l) in WIDE_LAPLACIAN.iter() {
                let l = 0.25 * l / h2;
                match merged.iter_mut().find(|(o, _)| *o == k) {
                    Some((_, v)) => *v += l,
                    None => merged.push((k, l)),
                }
            }
            merged
        }
        OperatorKind::Stabilization => scaled(&LAPLACIAN, c.unwrap_or_default()),
    };
    Ok(Stencil2D::build(
        kind.name().to_string(),
        h,
        Some(kind),
        c,
        entries,
    ))
}

impl Stencil2D {
    fn build(
        name: String,
        h: f64,
        kind: Option<OperatorKind>,
        c: Option<f64>,
        mut entries: Vec<(Offset, f64)>,
    ) -> Self {
        if !entries.iter().any(|(k, _)| *k == (0, 0)) {
            entries.push(((0, 0), 0.0));
        }
        entries.sort_by_key(|&((k1, k2), _)| (k2, k1));
        Self {
            name,
            h,
            kind,
            c,
            entries,
        }
    }

    /// A user-defined stencil. Repeated offsets are summed.
    pub fn from_entries(
        name: impl Into<String>,
        h: f64,
        entries: &[(Offset, f64)],
    ) -> Result<Self> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::InvalidMeshSize(h));
        }
        let mut merged: Vec<(Offset, f64)> = Vec::with_capacity(entries.len());
        for &(k, l) in entries {
            match merged.iter_mut().find(|(o, _)| *o == k) {
                Some((_, v)) => *v += l,
                None => merged.push((k, l)),
            }
        }
        Ok(Self::build(name.into(), h, None, None, merged))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn kind(&self) -> Option<OperatorKind> {
        self.kind
    }

    pub fn stabilization(&self) -> Option<f64> {
        self.c
    }

    pub fn entries(&self) -> &[(Offset, f64)] {
        &self.entries
    }

    pub fn coefficient(&self, offset: Offset) -> f64 {
        self.entries
            .iter()
            .find(|(k, _)| *k == offset)
            .map_or(0.0, |(_, l)| *l)
    }

    pub fn center(&self) -> f64 {
        self.coefficient((0, 0))
    }

    /// Largest `max(|k1|, |k2|)` over the entries.
    pub fn reach(&self) -> i32 {
        self.entries
            .iter()
            .map(|((a, b), _)| a.abs().max(b.abs()))
            .max()
            .unwrap_or(0)
    }

    /// Rebuilds the same named operator on a different mesh size.
    pub fn rescaled(&self, h: f64) -> Result<Self> {
        match self.kind {
            Some(kind) => make_operator(kind, h, self.c),
            None => Err(Error::InvalidParameter(format!(
                "custom stencil `{}` carries no scaling rule",
                self.name
            ))),
        }
    }

    /// `Σ_k l_k exp(i θ·k)`.
    pub fn symbol(&self, theta: Frequency) -> ComplexValue {
        self.entries
            .iter()
            .fold(Complex64::zero(), |acc, &((k1, k2), l)| {
                acc + Complex64::from_polar(l, theta.dot((k1 as i64, k2 as i64)))
            })
    }

    /// `Σ_k l_k g(point + k)`; fails if any touched index is outside `g`.
    pub fn apply<G>(&self, g: &G, point: GridIndex) -> Result<G::Value>
    where
        G: GridFunction,
        G::Value: Zero + Add<Output = G::Value> + Mul<f64, Output = G::Value>,
    {
        let mut acc = G::Value::zero();
        for &((k1, k2), l) in &self.entries {
            let (i, j) = (point.0 + k1 as i64, point.1 + k2 as i64);
            let value = g.value_at(i, j).ok_or(Error::OutOfBounds(i, j))?;
            acc = acc + value * l;
        }
        Ok(acc)
    }
}
