//! Command implementations. Each returns the JSON document the binary prints.

use std::io::Write;
use std::path::Path;

use clap::ValueEnum;
use expfam_core::estimation::{
    carrier_expectation_exact, mc_c_alpha, mc_carrier_expectation, mc_malpha, mc_sm_divergence,
    mc_sm_entropy, mle_fit, sm_entropy_carrier_corrected, SampleSet,
};
use expfam_core::measures::{self, log_malpha_factor, OrderPair};
use expfam_core::NaturalParam;
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};
use crate::format::fmt_f64;
use crate::spec::{family_from_name, natural_json, source_json};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EntropyKind {
    Sm,
    Renyi,
    Tsallis,
    Shannon,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DivergenceKind {
    Sm,
    Renyi,
    Tsallis,
    Kl,
}

fn need(name: &str, value: Option<f64>) -> CliResult<f64> {
    value.ok_or_else(|| CliError::input(format!("--{name} is required for this kind")))
}

pub fn entropy_order(
    kind: EntropyKind,
    alpha: Option<f64>,
    beta: Option<f64>,
) -> CliResult<OrderPair> {
    let order = match kind {
        EntropyKind::Sm => OrderPair::new(need("alpha", alpha)?, need("beta", beta)?),
        EntropyKind::Renyi => OrderPair::renyi(need("alpha", alpha)?),
        EntropyKind::Tsallis => OrderPair::tsallis(need("alpha", alpha)?),
        EntropyKind::Shannon => Ok(OrderPair::shannon()),
    };
    Ok(order?)
}

pub fn divergence_order(
    kind: DivergenceKind,
    alpha: Option<f64>,
    beta: Option<f64>,
) -> CliResult<OrderPair> {
    let kind = match kind {
        DivergenceKind::Sm => EntropyKind::Sm,
        DivergenceKind::Renyi => EntropyKind::Renyi,
        DivergenceKind::Tsallis => EntropyKind::Tsallis,
        DivergenceKind::Kl => EntropyKind::Shannon,
    };
    entropy_order(kind, alpha, beta)
}

pub fn entropy(theta: &NaturalParam, order: OrderPair) -> CliResult<Value> {
    let h = measures::sm_entropy(theta, order)?;
    Ok(json!({
        "value": h.value,
        "regime": h.regime.as_str(),
        "alpha": order.alpha(),
        "beta": order.beta(),
        "nats": true,
    }))
}

pub fn divergence(p: &NaturalParam, q: &NaturalParam, order: OrderPair) -> CliResult<Value> {
    let d = measures::sm_divergence(p, q, order)?;
    Ok(json!({
        "value": d.value,
        "regime": d.regime.as_str(),
        "jensen": d.jensen,
        "alpha": order.alpha(),
        "beta": order.beta(),
        "nats": true,
    }))
}

/// Reads one observation per row; `header` skips the first line.
pub fn read_samples(family: &str, path: &Path, header: bool) -> CliResult<SampleSet> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(header)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    let mut points = Vec::new();
    let mut width = None;
    for (row, record) in reader.records().enumerate() {
        let line = row + 1 + usize::from(header);
        let record = record.map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
        if record.iter().all(str::is_empty) {
            continue;
        }
        if *width.get_or_insert(record.len()) != record.len() {
            return Err(CliError::input(format!(
                "{}:{line}: inconsistent column count",
                path.display()
            )));
        }
        for field in record.iter() {
            let x = field.parse::<f64>().map_err(|e| {
                CliError::input(format!("{}:{line}: {field:?}: {e}", path.display()))
            })?;
            points.push(x);
        }
    }
    let width =
        width.ok_or_else(|| CliError::input(format!("{}: no observations", path.display())))?;
    let family = family_from_name(family, width)?;
    if family.sample_dim() != width {
        return Err(CliError::input(format!(
            "{}: {} samples have one column, found {width}",
            path.display(),
            family.name()
        )));
    }
    SampleSet::new(family, points).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

pub fn fit(samples: &SampleSet) -> CliResult<Value> {
    let theta = mle_fit(samples, samples.family())?;
    Ok(json!({
        "family": samples.family().name(),
        "n": samples.len(),
        "source": source_json(&theta)?,
        "natural": natural_json(&theta),
    }))
}

pub fn write_samples<W: Write>(samples: &SampleSet, out: W) -> CliResult<()> {
    let mut writer = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(out);
    let integer = !matches!(samples.family(), expfam_core::FamilyId::Gaussian { .. })
        && samples.family().spec().has_carrier;
    for x in samples.iter() {
        let row: Vec<String> = x
            .iter()
            .map(|&v| {
                if integer {
                    format!("{}", v as u64)
                } else {
                    fmt_f64(v)
                }
            })
            .collect();
        writer
            .write_record(&row)
            .map_err(|e| CliError::input(e.to_string()))?;
    }
    writer.flush().map_err(|e| CliError::input(e.to_string()))?;
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckQuantity {
    /// Sharma-Mittal entropy (carrier-corrected for Poisson).
    Entropy,
    /// Sharma-Mittal divergence between --p/--dist and --q.
    Divergence,
    /// `∫p^α`.
    Malpha,
    /// `∫p^α q^{1−α}`.
    Calpha,
    /// Carrier factor of families with k ≠ 0.
    Carrier,
}

/// `|z|` above which a check fails.
pub const CHECK_Z: f64 = 3.0;

/// Closed form against its Monte Carlo oracle. Returns the report and
/// whether it passed.
pub fn check(
    p: &NaturalParam,
    q: Option<&NaturalParam>,
    quantity: CheckQuantity,
    order: OrderPair,
    n: usize,
    seed: u64,
) -> CliResult<(Value, bool)> {
    let need_q =
        || q.ok_or_else(|| CliError::input("this quantity needs a second distribution (--q)"));
    let a = order.alpha();
    let (closed, est) = match quantity {
        CheckQuantity::Entropy => (
            sm_entropy_carrier_corrected(p, order)?.value,
            mc_sm_entropy(p, order, n, seed)?,
        ),
        CheckQuantity::Divergence => {
            let q = need_q()?;
            (
                measures::sm_divergence(p, q, order)?.value,
                mc_sm_divergence(p, q, order, n, seed)?,
            )
        }
        CheckQuantity::Malpha => {
            let mut log_m = log_malpha_factor(p, a)?;
            if p.spec().has_carrier {
                log_m += carrier_expectation_exact(p, a)?.ln();
            }
            (log_m.exp(), mc_malpha(p, a, n, seed)?)
        }
        CheckQuantity::Calpha => {
            let q = need_q()?;
            (measures::c_alpha(p, q, a)?, mc_c_alpha(p, q, a, n, seed)?)
        }
        CheckQuantity::Carrier => (
            carrier_expectation_exact(p, a)?,
            mc_carrier_expectation(p, a, n, seed)?,
        ),
    };
    let z = est.z_score(closed);
    let pass = z.abs() <= CHECK_Z;
    let report = json!({
        "quantity": quantity.to_possible_value().map(|v| v.get_name().to_string()),
        "closed_form": closed,
        "mc_estimate": est.mean,
        "std_error": est.std_error,
        "z": if z.is_finite() { json!(z) } else { json!(fmt_inf(z)) },
        "pass": pass,
        "regime": order.regime().as_str(),
        "alpha": order.alpha(),
        "beta": order.beta(),
        "n": est.n,
        "seed": est.seed,
    });
    Ok((report, pass))
}

fn fmt_inf(z: f64) -> &'static str {
    if z > 0.0 {
        "inf"
    } else {
        "-inf"
    }
}
