use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum GridScale {
    #[default]
    Linear,
    Log,
}

/// Evenly spaced (or log-spaced) δ values between `lo` and `hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
    #[serde(default)]
    pub scale: GridScale,
    /// When false the grid is the half-open `(lo, hi]`: `count` points
    /// `lo + (hi − lo)·k/count`, k = 1..=count.
    #[serde(default = "default_true")]
    pub include_lo: bool,
}

fn default_true() -> bool {
    true
}

impl Grid {
    pub fn linear(lo: f64, hi: f64, count: usize) -> Self {
        Grid {
            lo,
            hi,
            count,
            scale: GridScale::Linear,
            include_lo: true,
        }
    }

    pub fn log(lo: f64, hi: f64, count: usize) -> Self {
        Grid {
            scale: GridScale::Log,
            ..Grid::linear(lo, hi, count)
        }
    }

    pub fn excluding_lo(mut self) -> Self {
        self.include_lo = false;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.count < 2 {
            return Err(Error::Config(format!("grid count must be >= 2, got {}", self.count)));
        }
        if self.lo.is_nan() || self.hi.is_nan() || self.lo >= self.hi {
            return Err(Error::Config(format!(
                "grid needs lo < hi, got lo = {}, hi = {}",
                self.lo, self.hi
            )));
        }
        if self.scale == GridScale::Log && (self.lo.is_nan() || self.lo <= 0.0) {
            return Err(Error::Config(format!("log grid needs lo > 0, got {}", self.lo)));
        }
        Ok(())
    }

    pub fn points(&self) -> Vec<f64> {
        let (steps, offset) = if self.include_lo {
            (self.count - 1, 0)
        } else {
            (self.count, 1)
        };
        let (a, b) = match self.scale {
            GridScale::Linear => (self.lo, self.hi),
            GridScale::Log => (self.lo.log10(), self.hi.log10()),
        };
        (offset..offset + self.count)
            .map(|j| {
                // endpoints are pinned so they are hit exactly
                if j == 0 {
                    return self.lo;
                }
                if j == steps {
                    return self.hi;
                }
                let t = a + (b - a) * j as f64 / steps as f64;
                match self.scale {
                    GridScale::Linear => t,
                    GridScale::Log => 10f64.powf(t),
                }
            })
            .collect()
    }
}

/// `lo:hi:count[:log]`
impl FromStr for Grid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if !(3..=4).contains(&parts.len()) {
            return Err(Error::Config(format!("grid '{s}' must look like lo:hi:count[:log]")));
        }
        let num = |field: &str, v: &str| -> Result<f64> {
            v.trim()
                .parse::<f64>()
                .map_err(|_| Error::Config(format!("grid {field} '{v}' is not a number")))
        };
        let lo = num("lo", parts[0])?;
        let hi = num("hi", parts[1])?;
        let count = parts[2]
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::Config(format!("grid count '{}' is not a positive integer", parts[2])))?;
        let scale = match parts.get(3).map(|p| p.trim()) {
            None | Some("lin") | Some("linear") => GridScale::Linear,
            Some("log") => GridScale::Log,
            Some(other) => return Err(Error::Config(format!("unknown grid scale '{other}'"))),
        };
        let grid = Grid {
            lo,
            hi,
            count,
            scale,
            include_lo: true,
        };
        grid.validate()?;
        Ok(grid)
    }
}
