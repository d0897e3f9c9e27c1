//! Angle parsing for `--theta`.

use std::f64::consts::PI;

use anyhow::{anyhow, bail, Result};
use stokes_lfa::Frequency;

/// Parses an angle such as `pi`, `-pi/4`, `3pi/4`, `2*pi/3` or a plain decimal.
pub fn parse_angle(text: &str) -> Result<f64> {
    let s = text.trim().to_ascii_lowercase();
    let Some(at) = s.find("pi") else {
        return s
            .parse::<f64>()
            .map_err(|_| anyhow!("cannot parse angle `{text}`"));
    };
    let (head, tail) = (&s[..at], &s[at + 2..]);
    let head = head.strip_suffix('*').unwrap_or(head).trim();
    let factor = match head {
        "" | "+" => 1.0,
        "-" => -1.0,
        _ => head
            .parse::<f64>()
            .map_err(|_| anyhow!("cannot parse angle `{text}`"))?,
    };
    let divisor = match tail.trim() {
        "" => 1.0,
        t => {
            let Some(d) = t.strip_prefix('/') else {
                bail!("cannot parse angle `{text}`");
            };
            let d: f64 = d
                .trim()
                .parse()
                .map_err(|_| anyhow!("cannot parse angle `{text}`"))?;
            if d == 0.0 {
                bail!("division by zero in angle `{text}`");
            }
            d
        }
    };
    Ok(factor * PI / divisor)
}

/// Parses `t1,t2`.
pub fn parse_theta(text: &str) -> Result<Frequency> {
    let parts: Vec<&str> = text.split(',').collect();
    let [t1, t2] = parts[..] else {
        bail!("expected two comma-separated angles, got `{text}`");
    };
    Ok(Frequency::new(parse_angle(t1)?, parse_angle(t2)?))
}
