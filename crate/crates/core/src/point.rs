//! Text form of points for traces and command-line arguments.
//!
//! Reals print with 17 significant digits so a trace row parses back to the
//! identical `f64`. Vector coordinates are separated by `;` so they never
//! collide with the comma of a CSV row; parsing also accepts `,`.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse point {input:?}: {reason}")]
pub struct PointParseError {
    pub input: String,
    pub reason: String,
}

impl PointParseError {
    fn new(input: &str, reason: impl ToString) -> Self {
        Self { input: input.to_string(), reason: reason.to_string() }
    }
}

pub trait PointFormat: Sized {
    fn format_point(&self) -> String;
    fn parse_point(s: &str) -> Result<Self, PointParseError>;
}

pub fn format_real(v: f64) -> String {
    format!("{v:.16e}")
}

impl PointFormat for f64 {
    fn format_point(&self) -> String {
        format_real(*self)
    }

    fn parse_point(s: &str) -> Result<Self, PointParseError> {
        s.trim().parse::<f64>().map_err(|e| PointParseError::new(s, e))
    }
}

impl PointFormat for Vec<f64> {
    fn format_point(&self) -> String {
        self.iter().map(|v| format_real(*v)).collect::<Vec<_>>().join(";")
    }

    fn parse_point(s: &str) -> Result<Self, PointParseError> {
        let t = s.trim();
        if t.is_empty() {
            return Err(PointParseError::new(s, "empty vector"));
        }
        t.split([';', ','])
            .map(|c| c.trim().parse::<f64>().map_err(|e| PointParseError::new(s, e)))
            .collect()
    }
}

impl PointFormat for usize {
    fn format_point(&self) -> String {
        self.to_string()
    }

    fn parse_point(s: &str) -> Result<Self, PointParseError> {
        s.trim().parse::<usize>().map_err(|e| PointParseError::new(s, e))
    }
}
