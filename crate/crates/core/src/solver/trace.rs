//! Iteration traces, their CSV form, and replay of the geometric bounds.

use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::mappings::{CheckReport, Witness};
use crate::metric::{MetricSpace, SpaceError, EPS_EQ};
use crate::point::{format_real, PointFormat, PointParseError};

pub const TRACE_HEADER: &str = "n,x_n,y_n,gx_n,gy_n,gap,residual_x,residual_y,diagonal_bound,pair_bound";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceRow<P> {
    pub n: usize,
    pub x: P,
    pub y: P,
    pub gx: P,
    pub gy: P,
    /// `d(g(x_n), g(y_n))`.
    pub gap: f64,
    pub residual_x: f64,
    pub residual_y: f64,
    /// `k^n · d(g(x_0), g(y_0))`.
    pub diagonal_bound: f64,
    /// `(k^n / 2) · [d(g(x_0), g(y_1)) + d(g(y_0), g(x_1))]`.
    pub pair_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IterationTrace<P> {
    pub rows: Vec<TraceRow<P>>,
}

impl<P> Default for IterationTrace<P> {
    fn default() -> Self {
        Self { rows: Vec::new() }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TraceParseError {
    #[error("trace header mismatch: expected {TRACE_HEADER:?}")]
    Header,
    #[error("line {line}: expected 10 fields, found {found}")]
    FieldCount { line: usize, found: usize },
    #[error("line {line}: {source}")]
    Point { line: usize, source: PointParseError },
    #[error("line {line}, field {field}: {reason}")]
    Number { line: usize, field: &'static str, reason: String },
}

impl<P: PointFormat> IterationTrace<P> {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(TRACE_HEADER);
        out.push('\n');
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{}",
                r.n,
                r.x.format_point(),
                r.y.format_point(),
                r.gx.format_point(),
                r.gy.format_point(),
                format_real(r.gap),
                format_real(r.residual_x),
                format_real(r.residual_y),
                format_real(r.diagonal_bound),
                format_real(r.pair_bound),
            );
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self, TraceParseError> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        match lines.next() {
            Some((_, h)) if h.trim() == TRACE_HEADER => {}
            _ => return Err(TraceParseError::Header),
        }
        let mut rows = Vec::new();
        for (idx, line) in lines {
            let line_no = idx + 1;
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 10 {
                return Err(TraceParseError::FieldCount { line: line_no, found: fields.len() });
            }
            let point = |s: &str| P::parse_point(s).map_err(|source| TraceParseError::Point { line: line_no, source });
            let real = |s: &str, field: &'static str| {
                s.trim().parse::<f64>().map_err(|e| TraceParseError::Number { line: line_no, field, reason: e.to_string() })
            };
            let n = fields[0].trim().parse::<usize>().map_err(|e| TraceParseError::Number {
                line: line_no,
                field: "n",
                reason: e.to_string(),
            })?;
            rows.push(TraceRow {
                n,
                x: point(fields[1])?,
                y: point(fields[2])?,
                gx: point(fields[3])?,
                gy: point(fields[4])?,
                gap: real(fields[5], "gap")?,
                residual_x: real(fields[6], "residual_x")?,
                residual_y: real(fields[7], "residual_y")?,
                diagonal_bound: real(fields[8], "diagonal_bound")?,
                pair_bound: real(fields[9], "pair_bound")?,
            });
        }
        Ok(Self { rows })
    }
}

/// Replays the bound chain of the iteration on a recorded trace with the
/// claimed constant `k`:
///
/// * diagonal: `d(gx_n, gy_n) ≤ k^n · d(gx_0, gy_0)` for every `n`;
/// * cross: `d(gx_n, gy_{n+1})` and `d(gy_n, gx_{n+1})` are at most
///   `(k^n / 2) · c` for `n ≥ 1`, where `c = d(gx_0, gy_1) + d(gy_0, gx_1)`;
/// * step sum: `d(gx_n, gx_{n+1}) + d(gy_n, gy_{n+1}) ≤ 2k^n · d(gx_0, gy_0) + k^n · c`
///   for `n ≥ 1`.
///
/// Bounds are recomputed from the first two rows; the stored bound columns
/// are ignored. Slack is [`EPS_EQ`].
pub fn verify_trace_bounds<S: MetricSpace>(
    space: &S,
    trace: &IterationTrace<S::Point>,
    k: f64,
) -> Result<CheckReport<S::Point>, SpaceError> {
    const NAME: &str = "trace bounds";
    let rows = &trace.rows;
    if rows.len() < 2 {
        return Ok(CheckReport::inapplicable(NAME, "trace has fewer than two steps", None));
    }
    let d = |p: &S::Point, q: &S::Point| space.distance(p, q);
    let d0 = d(&rows[0].gx, &rows[0].gy)?;
    let c = d(&rows[0].gx, &rows[1].gy)? + d(&rows[0].gy, &rows[1].gx)?;

    let mut witnesses = Vec::new();
    let mut kn = 1.0_f64;
    for (i, row) in rows.iter().enumerate() {
        let diag = kn * d0;
        let gap = d(&row.gx, &row.gy)?;
        if gap > diag + EPS_EQ {
            witnesses.push(w(row.n, "diagonal gap exceeds k^n·d(gx_0,gy_0)", vec![row.gx.clone(), row.gy.clone()], gap, diag));
        }
        if i >= 1 && i + 1 < rows.len() {
            let next = &rows[i + 1];
            let cross = 0.5 * kn * c;
            let xy = d(&row.gx, &next.gy)?;
            if xy > cross + EPS_EQ {
                witnesses.push(w(row.n, "d(gx_n, gy_n+1) exceeds the cross bound", vec![row.gx.clone(), next.gy.clone()], xy, cross));
            }
            let yx = d(&row.gy, &next.gx)?;
            if yx > cross + EPS_EQ {
                witnesses.push(w(row.n, "d(gy_n, gx_n+1) exceeds the cross bound", vec![row.gy.clone(), next.gx.clone()], yx, cross));
            }
            let steps = d(&row.gx, &next.gx)? + d(&row.gy, &next.gy)?;
            let sum_bound = 2.0 * kn * d0 + kn * c;
            if steps > sum_bound + EPS_EQ {
                witnesses.push(w(
                    row.n,
                    "step sum exceeds the telescoping bound",
                    vec![row.gx.clone(), next.gx.clone(), row.gy.clone(), next.gy.clone()],
                    steps,
                    sum_bound,
                ));
            }
        }
        kn *= k;
    }
    Ok(CheckReport::from_witnesses(NAME, witnesses, rows.len(), None))
}

fn w<P>(n: usize, condition: &'static str, points: Vec<P>, lhs: f64, bound: f64) -> Witness<P> {
    Witness { sample_index: n, condition, points, quantities: vec![("lhs", lhs), ("bound", bound)] }
}
