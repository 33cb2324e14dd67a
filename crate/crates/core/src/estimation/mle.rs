use crate::error::{Error, Result};
use crate::expfam::{FamilyId, NaturalParam};
use crate::families::GaussianSource;
use crate::linalg::{SpdMatrix, SymMatrix};

use super::sampler::SampleSet;

/// Maximum-likelihood natural parameter: the `θ̂` with
/// `∇F(θ̂) = (1/n) Σ t(xᵢ)`.
///
/// For Gaussians this is the sample mean and the biased (`1/n`) covariance.
pub fn mle_fit(samples: &SampleSet, family: FamilyId) -> Result<NaturalParam> {
    if samples.family() != family {
        return Err(Error::FamilyMismatch(
            samples.family().to_string(),
            family.to_string(),
        ));
    }
    let n = samples.len() as f64;
    match family {
        FamilyId::Gaussian { dim } => {
            if samples.len() < dim + 1 {
                return Err(Error::DegenerateSample(format!(
                    "need at least {} points for a {dim}-dimensional gaussian, got {}",
                    dim + 1,
                    samples.len()
                )));
            }
            let mut mean = vec![0.0; dim];
            for x in samples.iter() {
                mean.iter_mut().zip(x).for_each(|(m, v)| *m += v);
            }
            mean.iter_mut().for_each(|m| *m /= n);
            let mut cov = vec![0.0; dim * dim];
            let mut centered = vec![0.0; dim];
            for x in samples.iter() {
                centered
                    .iter_mut()
                    .zip(x.iter().zip(&mean))
                    .for_each(|(c, (v, m))| *c = v - m);
                for i in 0..dim {
                    for j in 0..=i {
                        cov[i * dim + j] += centered[i] * centered[j];
                    }
                }
            }
            for i in 0..dim {
                for j in 0..=i {
                    cov[i * dim + j] /= n;
                    cov[j * dim + i] = cov[i * dim + j];
                }
            }
            let sigma =
                SpdMatrix::from_sym(SymMatrix::from_row_major(dim, &cov)?).map_err(|_| {
                    Error::DegenerateSample("sample covariance is not positive definite".into())
                })?;
            Ok(GaussianSource::new(mean, sigma)?.to_natural())
        }
        FamilyId::Exponential => {
            let mean = samples.as_flat().iter().sum::<f64>() / n;
            if !(mean > 0.0) {
                return Err(Error::DegenerateSample(format!(
                    "sample mean {mean} must be > 0"
                )));
            }
            NaturalParam::exponential(-1.0 / mean)
        }
        FamilyId::Poisson => {
            let mean = samples.as_flat().iter().sum::<f64>() / n;
            if !(mean > 0.0) {
                return Err(Error::DegenerateSample(format!(
                    "sample mean {mean} must be > 0"
                )));
            }
            NaturalParam::poisson(mean.ln())
        }
    }
}
