//! (α, β) grids for entropy and divergence surfaces.

use std::io::Write;

use clap::ValueEnum;
use expfam_core::measures::{self, OrderPair, Regime};
use expfam_core::{Error, NaturalParam};

use crate::error::{CliError, CliResult};
use crate::format::fmt_f64;

/// Evenly spaced axis with both endpoints included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Axis {
    pub fn new(name: &str, min: f64, max: f64, steps: usize) -> CliResult<Self> {
        if steps < 2 {
            return Err(CliError::input(format!(
                "{name} steps must be ≥ 2, got {steps}"
            )));
        }
        if !(min < max) || !min.is_finite() || !max.is_finite() {
            return Err(CliError::input(format!(
                "{name} range needs min < max, got [{min}, {max}]"
            )));
        }
        Ok(Self { min, max, steps })
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        let last = self.steps - 1;
        (0..self.steps).map(move |i| {
            if i == last {
                self.max
            } else {
                self.min + (self.max - self.min) * i as f64 / last as f64
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepKind {
    /// Full α × β surface.
    Sm,
    /// β = 1 along the α axis.
    Renyi,
    /// β = α along the α axis.
    Tsallis,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepQuantity {
    Entropy,
    Divergence,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepGrid {
    pub alpha: Axis,
    /// Required for [`SweepKind::Sm`], ignored otherwise.
    pub beta: Option<Axis>,
    pub kind: SweepKind,
}

impl SweepGrid {
    pub fn new(alpha: Axis, beta: Option<Axis>, kind: SweepKind) -> CliResult<Self> {
        if !(alpha.min > 0.0) {
            return Err(CliError::input(format!(
                "α range must be positive, got min {}",
                alpha.min
            )));
        }
        if kind == SweepKind::Sm && beta.is_none() {
            return Err(CliError::input("an sm sweep needs a β range"));
        }
        Ok(Self { alpha, beta, kind })
    }

    /// Grid points in row-major order, α outer.
    pub fn points(&self) -> Vec<(f64, f64)> {
        let mut out = Vec::new();
        for a in self.alpha.values() {
            match self.kind {
                SweepKind::Sm => {
                    out.extend(self.beta.expect("checked in new").values().map(|b| (a, b)))
                }
                SweepKind::Renyi => out.push((a, 1.0)),
                SweepKind::Tsallis => out.push((a, a)),
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub alpha: f64,
    pub beta: f64,
    /// `None` when the cell leaves the natural parameter space.
    pub value: Option<f64>,
    pub regime: Regime,
}

/// Entropy of `p` (no `q`) or divergence `D(p:q)` at every grid point.
pub fn run_sweep(
    p: &NaturalParam,
    q: Option<&NaturalParam>,
    grid: &SweepGrid,
) -> CliResult<Vec<SweepRow>> {
    grid.points()
        .into_iter()
        .map(|(alpha, beta)| {
            let order = OrderPair::new(alpha, beta)?;
            let value = match q {
                None => measures::sm_entropy(p, order).map(|h| h.value),
                Some(q) => measures::sm_divergence(p, q, order).map(|d| d.value),
            };
            let value = match value {
                Ok(v) => Some(v),
                Err(Error::OutOfDomain(_)) => None,
                Err(e) => return Err(e.into()),
            };
            Ok(SweepRow {
                alpha,
                beta,
                value,
                regime: order.regime(),
            })
        })
        .collect()
}

/// Header `alpha,beta,value,regime`; empty `value` for out-of-domain cells.
pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], out: W) -> CliResult<()> {
    let mut writer = csv::Writer::from_writer(out);
    let io = |e: csv::Error| CliError::input(e.to_string());
    writer
        .write_record(["alpha", "beta", "value", "regime"])
        .map_err(io)?;
    for row in rows {
        writer
            .write_record([
                fmt_f64(row.alpha),
                fmt_f64(row.beta),
                row.value.map(fmt_f64).unwrap_or_default(),
                row.regime.as_str().to_string(),
            ])
            .map_err(io)?;
    }
    writer.flush().map_err(|e| CliError::input(e.to_string()))?;
    Ok(())
}
