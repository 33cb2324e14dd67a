use rand::Rng;
use rand_distr::{Distribution, Poisson, StandardNormal};
use rayon::prelude::*;

use super::rng::{chunks, substream};
use crate::error::{Error, Result};
use crate::expfam::{check_sample, FamilyId, NaturalParam};
use crate::families::gaussian_from_natural;
use crate::linalg::SpdMatrix;

/// Above this rate the Poisson sampler switches from inversion to rejection.
const POISSON_INVERSION_MAX: f64 = 30.0;

/// i.i.d. observations stored row-major, `dim` values per point.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    family: FamilyId,
    points: Vec<f64>,
}

impl SampleSet {
    pub fn new(family: FamilyId, points: Vec<f64>) -> Result<Self> {
        let dim = family.sample_dim();
        if points.is_empty() || !points.len().is_multiple_of(dim) {
            return Err(Error::InvalidSample(format!(
                "expected a nonempty multiple of {dim} values, got {}",
                points.len()
            )));
        }
        for x in points.chunks(dim) {
            check_sample(family, x)?;
        }
        Ok(Self { family, points })
    }

    pub fn family(&self) -> FamilyId {
        self.family
    }

    pub fn dim(&self) -> usize {
        self.family.sample_dim()
    }

    pub fn len(&self) -> usize {
        self.points.len() / self.dim()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &[f64]> {
        self.points.chunks(self.dim())
    }

    pub fn as_flat(&self) -> &[f64] {
        &self.points
    }
}

/// Per-family draw routine.
pub(crate) enum Sampler {
    Gaussian { mu: Vec<f64>, sigma: SpdMatrix },
    Exponential { rate: f64 },
    PoissonInversion { rate: f64, p0: f64 },
    PoissonRejection(Poisson<f64>),
}

impl Sampler {
    pub(crate) fn new(theta: &NaturalParam) -> Self {
        match theta.family() {
            FamilyId::Gaussian { .. } => {
                let src = gaussian_from_natural(theta).expect("validated gaussian");
                Sampler::Gaussian {
                    mu: src.mu().to_vec(),
                    sigma: src.sigma().clone(),
                }
            }
            FamilyId::Exponential => Sampler::Exponential {
                rate: -theta.scalar(),
            },
            FamilyId::Poisson => {
                let rate = theta.scalar().exp();
                if rate <= POISSON_INVERSION_MAX {
                    Sampler::PoissonInversion {
                        rate,
                        p0: (-rate).exp(),
                    }
                } else {
                    Sampler::PoissonRejection(Poisson::new(rate).expect("finite positive rate"))
                }
            }
        }
    }

    pub(crate) fn draw<R: Rng>(&self, rng: &mut R, out: &mut [f64]) {
        match self {
            Sampler::Gaussian { mu, sigma } => {
                let z: Vec<f64> = (0..mu.len()).map(|_| rng.sample(StandardNormal)).collect();
                for ((o, m), lz) in out.iter_mut().zip(mu).zip(sigma.factor_mul(&z)) {
                    *o = m + lz;
                }
            }
            Sampler::Exponential { rate } => {
                // 1 − u ∈ (0, 1]
                let u: f64 = 1.0 - rng.random::<f64>();
                out[0] = -u.ln() / rate;
            }
            Sampler::PoissonInversion { rate, p0 } => {
                let u: f64 = rng.random();
                let cap = (rate + 40.0 * rate.sqrt() + 100.0) as u64;
                let (mut x, mut p, mut cdf) = (0u64, *p0, *p0);
                while u > cdf && x < cap {
                    x += 1;
                    p *= rate / x as f64;
                    cdf += p;
                }
                out[0] = x as f64;
            }
            Sampler::PoissonRejection(dist) => out[0] = dist.sample(rng),
        }
    }
}

/// Draws `n` i.i.d. points from `p(·|θ)`; deterministic in `(θ, n, seed)`.
pub fn sample(theta: &NaturalParam, n: usize, seed: u64) -> SampleSet {
    let sampler = Sampler::new(theta);
    let dim = theta.family().sample_dim();
    let blocks: Vec<(u64, usize)> = chunks(n).collect();
    let points: Vec<f64> = blocks
        .into_par_iter()
        .map(|(chunk, len)| {
            let mut rng = substream(seed, chunk);
            let mut block = vec![0.0; len * dim];
            for x in block.chunks_mut(dim) {
                sampler.draw(&mut rng, x);
            }
            block
        })
        .collect::<Vec<_>>()
        .concat();
    SampleSet {
        family: theta.family(),
        points,
    }
}
