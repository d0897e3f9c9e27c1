//! Closed-form optimal one-stage parameters of red-black Jacobi for the pressure block
//! `D_h(c) = c h² Δh² - Δ2h`, and for the Poisson block.
//!
//! In the variables `s_i = sin²(θ_i / 2) ∈ [0, 1/2]` the projected eigenvalue of the pressure
//! block is a rational function `λ2(s1, s2)`. Its maximum sits at the origin and its minimum
//! at the symmetric critical point `s1 = s2 = s*(c)`. Expressions are evaluated as written,
//! with a single square root of the quartic radicand. `c = 1/8` is a removable singularity
//! of the general formulas and is handled by a dedicated branch.

use crate::error::{Error, Result};

pub const POISSON_OMEGA_OPT: f64 = 16.0 / 17.0;
pub const POISSON_RHO_OPT: f64 = 1.0 / 17.0;

pub const C_EIGHTH: f64 = 0.125;
/// `ρ_opt(1/8)`. Not the global minimum over `c`; see [`rho_opt_minimum`].
pub const RHO_OPT_EIGHTH: f64 = 25.0 / 217.0;
/// `lim_{c→1/8} ω_opt(c)`; direct evaluation of `2 / (2 - S_max - S_min)` at `c = 1/8` gives the same value.
pub const OMEGA_OPT_EIGHTH: f64 = 28.0 / 31.0;
/// Competing published value for `ω_opt(1/8)`, kept only for reporting.
pub const OMEGA_OPT_EIGHTH_ALT: f64 = 98.0 / 217.0;
pub const S_MAX_EIGHTH: f64 = 1.0 / 49.0;
pub const S_MIN_EIGHTH: f64 = -23.0 / 98.0;

pub const RHO_LIMIT_LARGE_C: f64 = 11.0 / 43.0;
pub const OMEGA_LIMIT_LARGE_C: f64 = 50.0 / 43.0;
pub const OMEGA_MIN_REFERENCE: f64 = 0.834733;
pub const C0_REFERENCE: f64 = 0.0360548;
pub const C0_BRACKET: (f64, f64) = (1.0 / 28.0, 1.0 / 27.0);
/// Lower end of the zone `c > 1/27` in which `ρ_opt ∈ [25/217, 11/43]`.
pub const C_ZONE_SPLIT: f64 = 1.0 / 27.0;

/// Half-width of the window around `c = 1/8` where the dedicated branch is used.
pub const EIGHTH_WINDOW: f64 = 1e-6;
const CRITICAL_WINDOW: f64 = 1e-9;
const BISECTION_TOL: f64 = 1e-12;

fn check_c(c: f64) -> Result<()> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::InvalidStabilization(c));
    }
    Ok(())
}

fn check_away_from_eighth(c: f64, window: f64) -> Result<()> {
    check_c(c)?;
    if (c - C_EIGHTH).abs() <= window {
        return Err(Error::NearSingularity(c));
    }
    Ok(())
}

/// `82944c⁴ - 6912c³ + 336c² + 24c + 1`.
fn radicand(c: f64) -> f64 {
    82944.0 * c.powi(4) - 6912.0 * c.powi(3) + 336.0 * c * c + 24.0 * c + 1.0
}

/// `(1 + 24c + 336c² - 6912c³ + 82944c⁴) · sqrt(radicand)`.
fn surd_term(c: f64) -> f64 {
    let p = 1.0 + 24.0 * c + 336.0 * c * c - 6912.0 * c.powi(3) + 82944.0 * c.powi(4);
    p * radicand(c).sqrt()
}

fn shared_denominator(c: f64) -> f64 {
    -1.0 - 36.0 * c + 2736.0 * c * c + 157248.0 * c.powi(3)
        - 2115072.0 * c.powi(4)
        - 2985984.0 * c.powi(5)
        + 52199424.0 * c.powi(6)
        + surd_term(c)
}

/// Nonzero projected eigenvalue of the Poisson block, `½(s1 + s2)(s1 + s2 - 1)`.
pub fn lambda_poisson(s1: f64, s2: f64) -> f64 {
    let t = s1 + s2;
    0.5 * t * (t - 1.0)
}

/// Lower-left entry of the projected representation of the pressure block.
pub fn r21_pressure(c: f64, s1: f64, s2: f64) -> f64 {
    let q = s1 - s1 * s1 + s2 - s2 * s2;
    let t = s1 + s2;
    -64.0 * c * (t - 1.0) * (q + 4.0 * c * t * t) / (1.0 + 20.0 * c).powi(2)
}

/// Nonzero projected eigenvalue `λ2(s1, s2)` of the pressure block.
pub fn lambda2_pressure(c: f64, s1: f64, s2: f64) -> f64 {
    let q = s1 - s1 * s1 + s2 - s2 * s2;
    let t = s1 + s2;
    let m = (t - 2.0).powi(2);
    let first = 4.0 * (-q - 4.0 * c * m) * (q + 4.0 * c * t * t);
    let second = (1.0 + 20.0 * c - 2.0 * q - 8.0 * c * m).powi(2);
    (first + second) / (1.0 + 20.0 * c).powi(2)
}

/// `λ2` at `c = 1/8` in its simplified form.
pub fn lambda2_pressure_eighth(s1: f64, s2: f64) -> f64 {
    (1.0 - 40.0 * (s1 + s2 - s1 * s2)
        + 16.0 * (s1 - s2).powi(2) * (s1 + s2)
        + 44.0 * (s1 * s1 + s2 * s2))
        / 49.0
}

/// Symmetric critical point `s1* = s2*` of `λ2`.
pub fn critical_point(c: f64) -> Result<f64> {
    check_away_from_eighth(c, CRITICAL_WINDOW)?;
    Ok(-(-1.0 + 36.0 * c - 480.0 * c * c + radicand(c).sqrt()) / (96.0 * c * (-1.0 + 8.0 * c)))
}

/// `λ2(s*, s*)` from its closed form; this is `S_min` of the pressure block.
pub fn lambda2_at_critical(c: f64) -> Result<f64> {
    check_away_from_eighth(c, CRITICAL_WINDOW)?;
    let num = 1.0 + 36.0 * c - 1008.0 * c * c - 5184.0 * c.powi(3) + 483840.0 * c.powi(4)
        - 3649536.0 * c.powi(5)
        + 20348928.0 * c.powi(6)
        - surd_term(c);
    let den = 1728.0 * c * c * (1.0 - 8.0 * c).powi(2) * (1.0 + 20.0 * c).powi(2);
    Ok(num / den)
}

/// `S_max = λ2(0, 0) = (1 - 12c)² / (1 + 20c)²`.
pub fn s_max_pressure(c: f64) -> f64 {
    lambda2_pressure(c, 0.0, 0.0)
}

/// Optimal one-stage smoothing factor of the pressure block.
pub fn rho_opt_closed(c: f64) -> Result<f64> {
    check_c(c)?;
    if (c - C_EIGHTH).abs() <= EIGHTH_WINDOW {
        return Ok(RHO_OPT_EIGHTH);
    }
    let num = -1.0 - 36.0 * c + 2736.0 * c * c - 63936.0 * c.powi(3) + 539136.0 * c.powi(4)
        - 2985984.0 * c.powi(5)
        - 4423680.0 * c.powi(6)
        + surd_term(c);
    Ok(num / shared_denominator(c))
}

/// Optimal one-stage damping of the pressure block. Near `c = 1/8` returns the limit 28/31.
pub fn omega_opt_closed(c: f64) -> Result<f64> {
    check_c(c)?;
    if (c - C_EIGHTH).abs() <= EIGHTH_WINDOW {
        return Ok(OMEGA_OPT_EIGHTH);
    }
    let num = 3456.0 * (1.0 - 8.0 * c).powi(2) * c * c * (20.0 * c + 1.0).powi(2);
    Ok(num / shared_denominator(c))
}

/// `(ω_opt, ρ_opt)` for the Poisson block.
pub fn poisson_optimum() -> (f64, f64) {
    (POISSON_OMEGA_OPT, POISSON_RHO_OPT)
}

/// Root of `ρ_opt(c) = 11/43` in `(1/28, 1/27)`, by bisection.
pub fn find_c0() -> Result<f64> {
    let f = |c: f64| rho_opt_closed(c).map(|r| r - RHO_LIMIT_LARGE_C);
    let (mut lo, mut hi) = C0_BRACKET;
    let (f_lo, f_hi) = (f(lo)?, f(hi)?);
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::NotBracketed { lo, hi, f_lo, f_hi });
    }
    let lo_sign = f_lo.signum();
    while hi - lo > BISECTION_TOL {
        let mid = 0.5 * (lo + hi);
        if f(mid)?.signum() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Location and value of the minimum of `ρ_opt(c)`, by golden-section search on `[1/27, 1]`.
///
/// The minimum lies slightly above `c = 1/8` and is smaller than `ρ_opt(1/8) = 25/217`.
pub fn rho_opt_minimum() -> Result<(f64, f64)> {
    let inv_phi = 0.5 * (5f64.sqrt() - 1.0);
    let (mut a, mut b) = (C_ZONE_SPLIT, 1.0);
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let (mut f1, mut f2) = (rho_opt_closed(x1)?, rho_opt_closed(x2)?);
    while b - a > 1e-10 {
        if f1 < f2 {
            b = x2;
            (x2, f2) = (x1, f1);
            x1 = b - inv_phi * (b - a);
            f1 = rho_opt_closed(x1)?;
        } else {
            a = x1;
            (x1, f1) = (x2, f2);
            x2 = a + inv_phi * (b - a);
            f2 = rho_opt_closed(x2)?;
        }
    }
    let c = 0.5 * (a + b);
    Ok((c, rho_opt_closed(c)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Zone {
    /// `c > 1/27`: nominal band `25/217 ≤ ρ ≤ 11/43`. The lower end is violated on `(1/8, 0.13415)`.
    Above127,
    /// `0 < c ≤ 1/27`: `ρ_opt(1/27) ≤ ρ < 1`.
    Below127,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CZoneReport {
    pub c: f64,
    pub rho: f64,
    pub rho_lower: f64,
    pub rho_upper: f64,
    pub zone: Zone,
}

/// Zone bounds for `ρ_opt(c)`. The lower bound at exactly `c = 1/27` is treated as inclusive.
/// Fails if the closed-form value falls outside its zone.
pub fn zone_of(c: f64) -> Result<CZoneReport> {
    check_c(c)?;
    let rho = rho_opt_closed(c)?;
    let report = if c > C_ZONE_SPLIT {
        CZoneReport {
            c,
            rho,
            rho_lower: RHO_OPT_EIGHTH,
            rho_upper: RHO_LIMIT_LARGE_C,
            zone: Zone::Above127,
        }
    } else {
        let lower = rho_opt_closed(C_ZONE_SPLIT)?;
        CZoneReport {
            c,
            rho,
            rho_lower: lower,
            rho_upper: 1.0,
            zone: Zone::Below127,
        }
    };
    let inside = match report.zone {
        Zone::Above127 => rho >= report.rho_lower - 1e-12 && rho <= report.rho_upper + 1e-12,
        Zone::Below127 => rho >= report.rho_lower - 1e-12 && rho < report.rho_upper,
    };
    if !inside {
        return Err(Error::ZoneViolation {
            c,
            rho,
            lower: report.rho_lower,
            upper: report.rho_upper,
        });
    }
    Ok(report)
}
