//! Sweep ranges written as `start:stop:count[:lin|log]`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SweepError {
    #[error("range `{0}` must look like start:stop:count[:lin|log]")]
    Syntax(String),
    #[error("range `{0}`: count must be at least 2")]
    Count(String),
    #[error("range `{0}`: start must be below stop")]
    Order(String),
    #[error("range `{0}`: log spacing needs a positive start")]
    LogStart(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRange {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    pub spacing: Spacing,
}

impl SweepRange {
    pub fn new(start: f64, stop: f64, count: usize, spacing: Spacing) -> Result<Self, SweepError> {
        let r = Self {
            start,
            stop,
            count,
            spacing,
        };
        let text = r.to_string();
        if !(start.is_finite() && stop.is_finite()) {
            return Err(SweepError::Syntax(text));
        }
        if count < 2 {
            return Err(SweepError::Count(text));
        }
        if !(start < stop) {
            return Err(SweepError::Order(text));
        }
        if spacing == Spacing::Log && !(start > 0.0) {
            return Err(SweepError::LogStart(text));
        }
        Ok(r)
    }

    /// Grid points; the endpoints are reproduced exactly.
    pub fn values(&self) -> Vec<f64> {
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i == 0 {
                    return self.start;
                }
                if i == self.count - 1 {
                    return self.stop;
                }
                let t = i as f64 / last;
                match self.spacing {
                    Spacing::Linear => self.start + t * (self.stop - self.start),
                    Spacing::Log => (self.start.ln() + t * (self.stop.ln() - self.start.ln())).exp(),
                }
            })
            .collect()
    }
}

impl fmt::Display for SweepRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.spacing {
            Spacing::Linear => "lin",
            Spacing::Log => "log",
        };
        write!(f, "{}:{}:{}:{}", self.start, self.stop, self.count, s)
    }
}

impl FromStr for SweepRange {
    type Err = SweepError;

    fn from_str(text: &str) -> Result<Self, SweepError> {
        let bad = || SweepError::Syntax(text.to_string());
        let parts: Vec<&str> = text.trim().split(':').collect();
        if !(3..=4).contains(&parts.len()) {
            return Err(bad());
        }
        let start: f64 = parts[0].trim().parse().map_err(|_| bad())?;
        let stop: f64 = parts[1].trim().parse().map_err(|_| bad())?;
        let count: usize = parts[2].trim().parse().map_err(|_| bad())?;
        let spacing = match parts.get(3).map(|s| s.trim()) {
            None | Some("lin") | Some("linear") => Spacing::Linear,
            Some("log") => Spacing::Log,
            Some(_) => return Err(bad()),
        };
        Self::new(start, stop, count, spacing).map_err(|e| match e {
            SweepError::Syntax(_) => bad(),
            SweepError::Count(_) => SweepError::Count(text.to_string()),
            SweepError::Order(_) => SweepError::Order(text.to_string()),
            SweepError::LogStart(_) => SweepError::LogStart(text.to_string()),
        })
    }
}
