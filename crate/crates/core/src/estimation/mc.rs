use rayon::prelude::*;

use super::rng::{chunks, substream};
use super::sampler::Sampler;
use crate::error::{Error, Result};
use crate::expfam::NaturalParam;
use crate::measures::{OrderPair, Regime};

/// A Monte Carlo mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    /// Sample standard deviation over `√n`.
    pub std_error: f64,
    pub n: usize,
    pub seed: u64,
}

impl McEstimate {
    /// `(closed − mean) / std_error`; zero when both agree and the error is 0.
    pub fn z_score(&self, closed: f64) -> f64 {
        let diff = closed - self.mean;
        if self.std_error > 0.0 {
            diff / self.std_error
        } else if diff.abs() <= 1e-12 * closed.abs().max(1.0) {
            0.0
        } else {
            diff.signum() * f64::INFINITY
        }
    }

    // First-order propagation through a smooth transform.
    fn map(self, value: f64, derivative: f64) -> Self {
        Self {
            mean: value,
            std_error: (derivative * self.std_error).abs(),
            ..self
        }
    }
}

#[derive(Clone, Copy)]
struct Moments {
    count: f64,
    mean: f64,
    m2: f64,
}

impl Moments {
    const EMPTY: Self = Self {
        count: 0.0,
        mean: 0.0,
        m2: 0.0,
    };

    fn push(&mut self, x: f64) {
        self.count += 1.0;
        let delta = x - self.mean;
        self.mean += delta / self.count;
        self.m2 += delta * (x - self.mean);
    }

    // Chan et al. pairwise combination.
    fn merge(self, other: Self) -> Self {
        if self.count == 0.0 {
            return other;
        }
        if other.count == 0.0 {
            return self;
        }
        let count = self.count + other.count;
        let delta = other.mean - self.mean;
        Self {
            count,
            mean: self.mean + delta * other.count / count,
            m2: self.m2 + other.m2 + delta * delta * self.count * other.count / count,
        }
    }
}

/// Mean of `f(X)` over `n` draws of `X ~ p(·|θ)`, using the same draws as
/// [`super::sample`] for identical `(θ, n, seed)`.
pub(crate) fn mc_mean<F>(theta: &NaturalParam, n: usize, seed: u64, f: F) -> McEstimate
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let sampler = Sampler::new(theta);
    let dim = theta.family().sample_dim();
    let blocks: Vec<(u64, usize)> = chunks(n).collect();
    let parts: Vec<Moments> = blocks
        .into_par_iter()
        .map(|(chunk, len)| {
            let mut rng = substream(seed, chunk);
            let mut x = vec![0.0; dim];
            let mut acc = Moments::EMPTY;
            for _ in 0..len {
                sampler.draw(&mut rng, &mut x);
                acc.push(f(&x));
            }
            acc
        })
        .collect();
    let total = parts.into_iter().fold(Moments::EMPTY, Moments::merge);
    let std_error = if total.count > 1.0 {
        (total.m2 / (total.count - 1.0)).sqrt() / total.count.sqrt()
    } else {
        0.0
    };
    McEstimate {
        mean: total.mean,
        std_error,
        n,
        seed,
    }
}

/// `M_α = ∫p^α = E_p[p(X)^{α−1}]`.
pub fn mc_malpha(theta: &NaturalParam, alpha: f64, n: usize, seed: u64) -> Result<McEstimate> {
    check_alpha(alpha)?;
    let f_theta = theta.log_normalizer();
    Ok(mc_mean(theta, n, seed, |x| {
        let log_p = theta
            .log_density_unnormalized(x)
            .expect("sampler output is valid")
            - f_theta;
        ((alpha - 1.0) * log_p).exp()
    }))
}

/// `C_α = ∫p^α q^{1−α} = E_p[(q(X)/p(X))^{1−α}]`.
pub fn mc_c_alpha(
    theta: &NaturalParam,
    theta2: &NaturalParam,
    alpha: f64,
    n: usize,
    seed: u64,
) -> Result<McEstimate> {
    theta.check_same_family(theta2)?;
    let f_p = theta.log_normalizer();
    let f_q = theta2.log_normalizer();
    Ok(mc_mean(theta, n, seed, |x| {
        let log_p = theta
            .log_density_unnormalized(x)
            .expect("sampler output is valid")
            - f_p;
        let log_q = theta2
            .log_density_unnormalized(x)
            .expect("sampler output is valid")
            - f_q;
        ((1.0 - alpha) * (log_q - log_p)).exp()
    }))
}

fn mc_neg_log_density(theta: &NaturalParam, n: usize, seed: u64) -> McEstimate {
    let f_theta = theta.log_normalizer();
    mc_mean(theta, n, seed, |x| {
        f_theta
            - theta
                .log_density_unnormalized(x)
                .expect("sampler output is valid")
    })
}

/// Sharma-Mittal entropy from a Monte Carlo estimate of `M_α` (or of
/// `−E[log p]` on the `α = 1` limits). Works for every family, carrier or not.
pub fn mc_sm_entropy(
    theta: &NaturalParam,
    order: OrderPair,
    n: usize,
    seed: u64,
) -> Result<McEstimate> {
    let (a, b) = (order.alpha(), order.beta());
    Ok(match order.regime() {
        Regime::ShannonLimit => mc_neg_log_density(theta, n, seed),
        Regime::AlphaOneLimit => {
            let s = mc_neg_log_density(theta, n, seed);
            let g = ((1.0 - b) * s.mean).exp();
            s.map((g - 1.0) / (1.0 - b), g)
        }
        Regime::RenyiLimit => {
            let m = mc_malpha(theta, a, n, seed)?;
            m.map(m.mean.ln() / (1.0 - a), 1.0 / ((1.0 - a) * m.mean))
        }
        Regime::TsallisLimit => {
            let m = mc_malpha(theta, a, n, seed)?;
            m.map((m.mean - 1.0) / (1.0 - a), 1.0 / (1.0 - a))
        }
        Regime::Generic => {
            let m = mc_malpha(theta, a, n, seed)?;
            let e = (1.0 - b) / (1.0 - a);
            m.map(
                (m.mean.powf(e) - 1.0) / (1.0 - b),
                m.mean.powf(e - 1.0) / (1.0 - a),
            )
        }
    })
}

/// Sharma-Mittal divergence from a Monte Carlo estimate of `C_α` (or of
/// `E_p[log p − log q]` on the `α = 1` limits).
pub fn mc_sm_divergence(
    theta: &NaturalParam,
    theta2: &NaturalParam,
    order: OrderPair,
    n: usize,
    seed: u64,
) -> Result<McEstimate> {
    theta.check_same_family(theta2)?;
    let (a, b) = (order.alpha(), order.beta());
    let kl = || {
        let f_p = theta.log_normalizer();
        let f_q = theta2.log_normalizer();
        mc_mean(theta, n, seed, |x| {
            let lp = theta
                .log_density_unnormalized(x)
                .expect("sampler output is valid")
                - f_p;
            let lq = theta2
                .log_density_unnormalized(x)
                .expect("sampler output is valid")
                - f_q;
            lp - lq
        })
    };
    Ok(match order.regime() {
        Regime::ShannonLimit => kl(),
        Regime::AlphaOneLimit => {
            let k = kl();
            let g = (-(1.0 - b) * k.mean).exp();
            k.map((g - 1.0) / (b - 1.0), g)
        }
        Regime::RenyiLimit => {
            let c = mc_c_alpha(theta, theta2, a, n, seed)?;
            c.map(-c.mean.ln() / (1.0 - a), 1.0 / ((1.0 - a) * c.mean))
        }
        Regime::TsallisLimit => {
            let c = mc_c_alpha(theta, theta2, a, n, seed)?;
            c.map((c.mean - 1.0) / (a - 1.0), 1.0 / (a - 1.0))
        }
        Regime::Generic => {
            let c = mc_c_alpha(theta, theta2, a, n, seed)?;
            let e = (1.0 - b) / (1.0 - a);
            c.map(
                (c.mean.powf(e) - 1.0) / (b - 1.0),
                c.mean.powf(e - 1.0) / (1.0 - a),
            )
        }
    })
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::InvalidOrder(format!("α must be > 0, got {alpha}")));
    }
    Ok(())
}
