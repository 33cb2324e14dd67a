//! Concrete families and their source-coordinate conversions.
//!
//! | family      | θ                  | t(x)       | F(θ)                                  | k(x)      |
//! |-------------|--------------------|------------|---------------------------------------|-----------|
//! | Gaussian    | (Σ⁻¹μ, −½Σ⁻¹)      | (x, x xᵀ)  | d/2 log 2π − ½ log\|−2M\| − ¼ vᵀM⁻¹v   | 0         |
//! | exponential | −λ                 | x          | −log(−θ)                              | 0         |
//! | Poisson     | log λ              | x          | e^θ                                   | −log x!   |

use std::f64::consts::PI;

use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::expfam::{FamilyId, NaturalParam};
use crate::linalg::{SpdMatrix, SymMatrix};

pub(crate) const LN_2PI: f64 = 1.837_877_066_409_345_3;

/// Multivariate normal in mean/covariance coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianSource {
    mu: Vec<f64>,
    sigma: SpdMatrix,
}

impl GaussianSource {
    pub fn new(mu: Vec<f64>, sigma: SpdMatrix) -> Result<Self> {
        if mu.len() != sigma.dim() {
            return Err(Error::DimensionMismatch {
                expected: sigma.dim(),
                found: mu.len(),
            });
        }
        if mu.iter().any(|x| !x.is_finite()) {
            return Err(Error::OutOfDomain("mean must be finite".into()));
        }
        Ok(Self { mu, sigma })
    }

    /// Univariate `N(mean, variance)`.
    pub fn univariate(mean: f64, variance: f64) -> Result<Self> {
        Self::new(vec![mean], SpdMatrix::diagonal(&[variance])?)
    }

    pub fn dim(&self) -> usize {
        self.mu.len()
    }

    pub fn mu(&self) -> &[f64] {
        &self.mu
    }

    pub fn sigma(&self) -> &SpdMatrix {
        &self.sigma
    }

    pub fn to_natural(&self) -> NaturalParam {
        gaussian_to_natural(self)
    }
}

/// Exponential distribution with density `λ e^{−λx}` on `x ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentialSource {
    rate: f64,
}

impl ExponentialSource {
    pub fn new(rate: f64) -> Result<Self> {
        if !(rate > 0.0 && rate.is_finite()) {
            return Err(Error::OutOfDomain(format!(
                "exponential rate must be > 0, got {rate}"
            )));
        }
        Ok(Self { rate })
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    /// `θ = −λ`.
    pub fn to_natural(&self) -> NaturalParam {
        NaturalParam::exponential(-self.rate).expect("negative rate is in Θ")
    }
}

/// Poisson distribution with mean `λ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoissonSource {
    rate: f64,
}

impl PoissonSource {
    pub fn new(rate: f64) -> Result<Self> {
        if !(rate > 0.0 && rate.is_finite()) {
            return Err(Error::OutOfDomain(format!(
                "poisson rate must be > 0, got {rate}"
            )));
        }
        Ok(Self { rate })
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    /// `θ = ln λ`.
    pub fn to_natural(&self) -> NaturalParam {
        NaturalParam::poisson(self.rate.ln()).expect("log rate is in Θ")
    }
}

/// Any supported family member in its source coordinates.
#[derive(Debug, Clone, PartialEq)]
pub enum Source {
    Gaussian(GaussianSource),
    Exponential(ExponentialSource),
    Poisson(PoissonSource),
}

impl Source {
    pub fn to_natural(&self) -> NaturalParam {
        match self {
            Source::Gaussian(g) => gaussian_to_natural(g),
            Source::Exponential(e) => e.to_natural(),
            Source::Poisson(p) => p.to_natural(),
        }
    }

    pub fn from_natural(theta: &NaturalParam) -> Result<Self> {
        Ok(match theta.family() {
            FamilyId::Gaussian { .. } => Source::Gaussian(gaussian_from_natural(theta)?),
            FamilyId::Exponential => Source::Exponential(ExponentialSource::new(-theta.scalar())?),
            FamilyId::Poisson => Source::Poisson(PoissonSource::new(theta.scalar().exp())?),
        })
    }
}

/// `θ = (Σ⁻¹μ, −½Σ⁻¹)`.
pub fn gaussian_to_natural(src: &GaussianSource) -> NaturalParam {
    let v = src
        .sigma
        .solve(&src.mu)
        .expect("dimensions checked on construction");
    let precision = src.sigma.inverse().expect("inverse of SPD is SPD");
    let m = precision.matrix().scale(-0.5);
    NaturalParam::gaussian(v, m).expect("−½Σ⁻¹ is negative definite")
}

/// `Σ = −½M⁻¹`, `μ = Σv`.
pub fn gaussian_from_natural(theta: &NaturalParam) -> Result<GaussianSource> {
    let m = theta
        .mat()
        .ok_or_else(|| Error::FamilyMismatch(theta.family().to_string(), "gaussian".into()))?;
    let precision = SpdMatrix::from_sym(m.scale(-2.0))
        .map_err(|_| Error::OutOfDomain("−2M is not positive definite".into()))?;
    let sigma = precision.inverse()?;
    let mu = precision.solve(theta.vec())?;
    GaussianSource::new(mu, sigma)
}

/// `F(μ, Σ) = ½ log((2π)^d |Σ|) + ½ μᵀΣ⁻¹μ`.
pub fn gaussian_log_normalizer_source(src: &GaussianSource) -> f64 {
    let d = src.dim() as f64;
    let quad = src
        .sigma
        .quad_form(&src.mu)
        .expect("dimensions checked on construction");
    0.5 * (d * LN_2PI + src.sigma.log_det()) + 0.5 * quad
}

/// `F(v, M) = d/2 log 2π − ½ log|−2M| − ¼ vᵀM⁻¹v`, given the precision `−2M`.
pub(crate) fn gaussian_log_normalizer_natural(v: &[f64], precision: &SpdMatrix) -> f64 {
    let d = v.len() as f64;
    // −¼ vᵀM⁻¹v = ½ vᵀ(−2M)⁻¹v
    0.5 * d * LN_2PI - 0.5 * precision.log_det()
        + 0.5 * precision.quad_form(v).expect("shape validated")
}

/// `∇F(v, M) = (μ, Σ + μμᵀ)`.
pub(crate) fn gaussian_moments(v: &[f64], precision: &SpdMatrix) -> (Vec<f64>, SymMatrix) {
    let mu = precision.solve(v).expect("shape validated");
    let sigma = precision.inverse().expect("inverse of SPD is SPD");
    let second = sigma
        .matrix()
        .lincomb(1.0, &SymMatrix::outer(&mu), 1.0)
        .expect("same dimension");
    (mu, second)
}

/// `F(θ) = −log(−θ)` for the exponential distribution.
pub fn exponential_log_normalizer(theta: f64) -> Result<f64> {
    if !(theta < 0.0) || !theta.is_finite() {
        return Err(Error::OutOfDomain(format!(
            "exponential θ must be < 0, got {theta}"
        )));
    }
    Ok(-(-theta).ln())
}

/// `F(θ) = e^θ` for the Poisson distribution.
pub(crate) fn poisson_log_normalizer(theta: f64) -> f64 {
    theta.exp()
}

/// Carrier measure `k(x) = −log x!` of the Poisson family.
pub fn poisson_carrier(x: f64) -> Result<f64> {
    if !is_count(x) {
        return Err(Error::InvalidSample(format!(
            "poisson sample must be a nonnegative integer, got {x}"
        )));
    }
    if x < 2.0 {
        return Ok(0.0);
    }
    Ok(-ln_gamma(x + 1.0))
}

pub(crate) fn is_count(x: f64) -> bool {
    x >= 0.0 && x.is_finite() && x.fract() == 0.0
}

/// `½ log(2π)` to full precision, handy for the standard-normal checks.
pub fn half_ln_2pi() -> f64 {
    0.5 * (2.0 * PI).ln()
}
