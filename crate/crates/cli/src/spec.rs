//! Distribution spec files and inline parameter flags.
//!
//! ```json
//! {"family": "gaussian", "mu": [0, 0], "sigma": [[4, 0], [0, 4]]}
//! {"family": "exponential", "rate": 2}
//! {"family": "poisson", "rate": 3.5}
//! {"family": "gaussian", "natural": true, "v": [0.5], "m": [[-0.25]]}
//! ```

use std::path::Path;

use expfam_core::families::{ExponentialSource, GaussianSource, PoissonSource, Source};
use expfam_core::{FamilyId, NaturalParam, SpdMatrix, SymMatrix};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct DistributionSpecFile {
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rate: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub natural: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<Vec<Vec<f64>>>,
}

impl DistributionSpecFile {
    pub fn parse(text: &str) -> CliResult<Self> {
        serde_json::from_str(text).map_err(|e| CliError::input(format!("distribution spec: {e}")))
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
            .map_err(|e| CliError::input(format!("{}: {}", path.display(), e.message)))
    }

    /// Validates the document and returns the natural parameter.
    pub fn to_natural(&self) -> CliResult<NaturalParam> {
        let natural = self.natural.unwrap_or(false);
        let has_source = self.mu.is_some() || self.sigma.is_some() || self.rate.is_some();
        let has_natural = self.v.is_some() || self.m.is_some();
        if natural && has_source {
            return Err(CliError::input(
                "field `natural`: true excludes `mu`, `sigma` and `rate`",
            ));
        }
        if !natural && has_natural {
            return Err(CliError::input("fields `v`/`m` require \"natural\": true"));
        }
        if natural {
            let v = self
                .v
                .clone()
                .ok_or_else(|| CliError::input("missing field `v`"))?;
            return match self.family.as_str() {
                "gaussian" => {
                    let m = self
                        .m
                        .as_ref()
                        .ok_or_else(|| CliError::input("missing field `m`"))?;
                    let m = SymMatrix::from_rows(m)
                        .map_err(|e| CliError::input(format!("field `m`: {e}")))?;
                    NaturalParam::gaussian(v, m)
                        .map_err(|e| CliError::input(format!("field `m`: {e}")))
                }
                "exponential" | "poisson" => {
                    if self.m.is_some() {
                        return Err(CliError::input(format!(
                            "field `m`: {} has no matrix part",
                            self.family
                        )));
                    }
                    let family = if self.family == "poisson" {
                        FamilyId::Poisson
                    } else {
                        FamilyId::Exponential
                    };
                    NaturalParam::new(family, v, None)
                        .map_err(|e| CliError::input(format!("field `v`: {e}")))
                }
                other => Err(unknown_family(other)),
            };
        }
        Ok(self.to_source()?.to_natural())
    }

    pub fn to_source(&self) -> CliResult<Source> {
        match self.family.as_str() {
            "gaussian" => {
                if self.rate.is_some() {
                    return Err(CliError::input(
                        "field `rate` is not used by the gaussian family",
                    ));
                }
                let mu = self
                    .mu
                    .clone()
                    .ok_or_else(|| CliError::input("missing field `mu`"))?;
                let sigma = self
                    .sigma
                    .as_ref()
                    .ok_or_else(|| CliError::input("missing field `sigma`"))?;
                let sigma = SpdMatrix::from_rows(sigma)
                    .map_err(|e| CliError::input(format!("field `sigma`: {e}")))?;
                let src = GaussianSource::new(mu, sigma)
                    .map_err(|e| CliError::input(format!("field `mu`: {e}")))?;
                Ok(Source::Gaussian(src))
            }
            "exponential" | "poisson" => {
                if self.mu.is_some() || self.sigma.is_some() {
                    return Err(CliError::input(format!(
                        "fields `mu`/`sigma` are not used by {}",
                        self.family
                    )));
                }
                let rate = self
                    .rate
                    .ok_or_else(|| CliError::input("missing field `rate`"))?;
                let wrap = |e: expfam_core::Error| CliError::input(format!("field `rate`: {e}"));
                if self.family == "poisson" {
                    Ok(Source::Poisson(PoissonSource::new(rate).map_err(wrap)?))
                } else {
                    Ok(Source::Exponential(
                        ExponentialSource::new(rate).map_err(wrap)?,
                    ))
                }
            }
            other => Err(unknown_family(other)),
        }
    }
}

fn unknown_family(name: &str) -> CliError {
    CliError::input(format!(
        "field `family`: unknown family {name:?} (expected gaussian, exponential or poisson)"
    ))
}

pub fn family_from_name(name: &str, dim: usize) -> CliResult<FamilyId> {
    match name {
        "gaussian" => Ok(FamilyId::Gaussian { dim }),
        "exponential" => Ok(FamilyId::Exponential),
        "poisson" => Ok(FamilyId::Poisson),
        other => Err(unknown_family(other)),
    }
}

/// Parses `"1,2,3"` into numbers.
pub fn parse_list(flag: &str, text: &str) -> CliResult<Vec<f64>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| CliError::input(format!("flag --{flag}: {s:?}: {e}")))
        })
        .collect()
}

/// Builds a spec from inline flags (`--family`, `--mu`, `--sigma`, `--rate`).
pub fn inline_spec(
    family: &str,
    mu: Option<&str>,
    sigma: Option<&str>,
    rate: Option<f64>,
) -> CliResult<DistributionSpecFile> {
    let mu = mu.map(|s| parse_list("mu", s)).transpose()?;
    let sigma = match sigma {
        None => None,
        Some(text) => {
            let flat = parse_list("sigma", text)?;
            let d = (flat.len() as f64).sqrt().round() as usize;
            if d * d != flat.len() || d == 0 {
                return Err(CliError::input(format!(
                    "flag --sigma: expected d² row-major entries, got {}",
                    flat.len()
                )));
            }
            Some(flat.chunks(d).map(<[f64]>::to_vec).collect())
        }
    };
    Ok(DistributionSpecFile {
        family: family.to_string(),
        mu,
        sigma,
        rate,
        natural: None,
        v: None,
        m: None,
    })
}

/// Source-coordinate spec document for a natural parameter.
pub fn source_json(theta: &NaturalParam) -> CliResult<Value> {
    Ok(match Source::from_natural(theta)? {
        Source::Gaussian(g) => json!({
            "family": "gaussian",
            "mu": g.mu(),
            "sigma": g.sigma().matrix().rows(),
        }),
        Source::Exponential(e) => json!({"family": "exponential", "rate": e.rate()}),
        Source::Poisson(p) => json!({"family": "poisson", "rate": p.rate()}),
    })
}

/// Natural-coordinate spec document.
pub fn natural_json(theta: &NaturalParam) -> Value {
    let mut doc = json!({
        "family": theta.family().name(),
        "natural": true,
        "v": theta.vec(),
    });
    if let Some(m) = theta.mat() {
        doc["m"] = json!(m.rows());
    }
    doc
}
