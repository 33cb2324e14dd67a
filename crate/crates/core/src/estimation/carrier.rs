//! The carrier factor `E_{p(·|αθ)}[e^{(α−1)k(X)}]`, which turns
//! `e^{F(αθ) − αF(θ)}` into `∫p^α` when `k ≢ 0`.

use super::mc::{mc_mean, McEstimate};
use crate::error::{Error, Result};
use crate::expfam::{FamilyId, NaturalParam};
use crate::families::poisson_carrier;
use crate::measures::{self, EntropyValue, OrderPair, Regime};

// Hard stop for the series; far beyond any rate the sampler supports.
const MAX_TERMS: u64 = 50_000_000;

fn require_carrier(theta: &NaturalParam) -> Result<()> {
    if !theta.spec().has_carrier {
        return Err(Error::CarrierIsZero(theta.family().to_string()));
    }
    Ok(())
}

/// Monte Carlo estimate of the carrier factor, sampling from `p(·|αθ)`.
pub fn mc_carrier_expectation(
    theta: &NaturalParam,
    alpha: f64,
    n: usize,
    seed: u64,
) -> Result<McEstimate> {
    require_carrier(theta)?;
    let scaled = theta.scale(alpha)?;
    Ok(mc_mean(&scaled, n, seed, |x| {
        ((alpha - 1.0) * poisson_carrier(x[0]).expect("sampler output is valid")).exp()
    }))
}

/// Log-sum-exp over `x = 0, 1, …` of `log_term(x)` for a Poisson series.
///
/// Sums at least to `⌈λ + 20√λ + 40⌉` and then until the next-term ratio is
/// below ½ and the current term is `e^{-40}` below the running total, which
/// bounds the remaining tail by the last term.
fn poisson_log_series<F>(rate: f64, decay: impl Fn(u64) -> f64, log_term: F) -> Result<f64>
where
    F: Fn(u64) -> f64,
{
    let min_terms = (rate + 20.0 * rate.sqrt() + 40.0).ceil() as u64;
    let mut log_total = f64::NEG_INFINITY;
    let mut x = 0u64;
    loop {
        let t = log_term(x);
        log_total = log_add(log_total, t);
        if x >= min_terms && decay(x) < 0.5 && t < log_total - 40.0 {
            return Ok(log_total);
        }
        x += 1;
        if x > MAX_TERMS {
            return Err(Error::OutOfDomain(format!(
                "poisson series did not converge (rate {rate})"
            )));
        }
    }
}

fn log_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// `log E_{p(·|αθ)}[e^{(α−1)k(X)}]` by truncated exact summation.
pub fn log_carrier_expectation_exact(theta: &NaturalParam, alpha: f64) -> Result<f64> {
    require_carrier(theta)?;
    let scaled = theta.scale(alpha)?;
    match theta.family() {
        FamilyId::Poisson => {
            let rate = scaled.scalar().exp();
            // term(x) = p(x | αθ) (x!)^{1−α}, ratio of consecutive terms λ / (x+1)^α
            poisson_log_series(
                rate,
                |x| rate / ((x + 1) as f64).powf(alpha),
                |x| {
                    let k = poisson_carrier(x as f64).expect("count");
                    scaled.log_density(&[x as f64]).expect("count") + (alpha - 1.0) * k
                },
            )
        }
        _ => unreachable!("only poisson carries a carrier measure"),
    }
}

pub fn carrier_expectation_exact(theta: &NaturalParam, alpha: f64) -> Result<f64> {
    Ok(log_carrier_expectation_exact(theta, alpha)?.exp())
}

/// `E_p[k(X)]` by exact summation, for the Shannon limit of carrier families.
fn carrier_mean_exact(theta: &NaturalParam) -> Result<f64> {
    let rate = theta.scalar().exp();
    // E[k] = −E[log X!]; sum p(x) log x! in log space, skipping x < 2 where it is 0.
    let log_sum = poisson_log_series(
        rate,
        |x| rate / (x + 1) as f64,
        |x| {
            if x < 2 {
                return f64::NEG_INFINITY;
            }
            let k = poisson_carrier(x as f64).expect("count");
            theta.log_density(&[x as f64]).expect("count") + (-k).ln()
        },
    )?;
    Ok(-log_sum.exp())
}

/// Sharma-Mittal entropy valid for every family, with the carrier factor
/// computed exactly. Identical to [`measures::sm_entropy`] when `k ≡ 0`.
pub fn sm_entropy_carrier_corrected(
    theta: &NaturalParam,
    order: OrderPair,
) -> Result<EntropyValue> {
    if !theta.spec().has_carrier {
        return measures::sm_entropy(theta, order);
    }
    let (a, b) = (order.alpha(), order.beta());
    let log_malpha = || -> Result<f64> {
        Ok(measures::log_malpha_factor(theta, a)? + log_carrier_expectation_exact(theta, a)?)
    };
    let shannon = || -> Result<f64> {
        Ok(theta.log_normalizer()
            - theta.inner(&theta.grad_log_normalizer())
            - carrier_mean_exact(theta)?)
    };
    let value = match order.regime() {
        Regime::ShannonLimit => shannon()?,
        Regime::AlphaOneLimit => ((1.0 - b) * shannon()?).exp_m1() / (1.0 - b),
        Regime::RenyiLimit => log_malpha()? / (1.0 - a),
        Regime::TsallisLimit => log_malpha()?.exp_m1() / (1.0 - a),
        Regime::Generic => ((1.0 - b) / (1.0 - a) * log_malpha()?).exp_m1() / (1.0 - b),
    };
    Ok(EntropyValue {
        value,
        order,
        regime: order.regime(),
    })
}
