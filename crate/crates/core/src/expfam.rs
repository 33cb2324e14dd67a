//! Exponential families in canonical form
//! `p(x | θ) = exp(⟨θ, t(x)⟩ − F(θ) + k(x))`.
//!
//! A [`NaturalParam`] carries its family tag and is validated against the
//! family's natural parameter space on construction, so every downstream
//! closed form may assume `θ ∈ Θ`.

use std::fmt;

use crate::error::{Error, Result};
use crate::families;
use crate::linalg::{SpdMatrix, SymMatrix};

/// The closed set of supported families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyId {
    /// Multivariate normal on ℝ^dim.
    Gaussian { dim: usize },
    /// Exponential distribution on [0, ∞).
    Exponential,
    /// Poisson distribution on ℕ.
    Poisson,
}

impl FamilyId {
    pub fn spec(self) -> FamilySpec {
        match self {
            FamilyId::Gaussian { dim } => FamilySpec {
                id: self,
                dim,
                order: dim * (dim + 3) / 2,
                has_carrier: false,
                theta_is_cone: true,
            },
            FamilyId::Exponential => FamilySpec {
                id: self,
                dim: 1,
                order: 1,
                has_carrier: false,
                theta_is_cone: true,
            },
            FamilyId::Poisson => FamilySpec {
                id: self,
                dim: 1,
                order: 1,
                has_carrier: true,
                theta_is_cone: true,
            },
        }
    }

    /// Dimension of one sample point.
    pub fn sample_dim(self) -> usize {
        self.spec().dim
    }

    pub fn name(self) -> &'static str {
        match self {
            FamilyId::Gaussian { .. } => "gaussian",
            FamilyId::Exponential => "exponential",
            FamilyId::Poisson => "poisson",
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyId::Gaussian { dim } => write!(f, "gaussian(d={dim})"),
            other => f.write_str(other.name()),
        }
    }
}

/// Static description of a family: dimensions and structural flags.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilySpec {
    pub id: FamilyId,
    /// Sample-space dimension.
    pub dim: usize,
    /// Number of independent natural-parameter coordinates.
    pub order: usize,
    /// Whether `k(x)` is not identically zero.
    pub has_carrier: bool,
    /// Whether Θ is closed under positive scaling.
    pub theta_is_cone: bool,
}

/// A natural parameter `θ = (v, M)`, validated against Θ.
///
/// Scalar families store their single coordinate in `vec` and have no
/// matrix part.
#[derive(Debug, Clone, PartialEq)]
pub struct NaturalParam {
    family: FamilyId,
    vec: Vec<f64>,
    mat: Option<SymMatrix>,
    // −2M for Gaussians, cached from the membership check.
    precision: Option<SpdMatrix>,
}

/// Expectation parameter `η = ∇F(θ) = E[t(X)]`, same shape as θ.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpectationParam {
    family: FamilyId,
    vec: Vec<f64>,
    mat: Option<SymMatrix>,
}

impl NaturalParam {
    pub fn new(family: FamilyId, vec: Vec<f64>, mat: Option<SymMatrix>) -> Result<Self> {
        if vec.iter().any(|x| !x.is_finite()) {
            return Err(Error::OutOfDomain(
                "natural parameter must be finite".into(),
            ));
        }
        match family {
            FamilyId::Gaussian { dim } => {
                let mat = mat.ok_or_else(|| {
                    Error::OutOfDomain("gaussian natural parameter needs a matrix part".into())
                })?;
                if vec.len() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        found: vec.len(),
                    });
                }
                if mat.dim() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        found: mat.dim(),
                    });
                }
                let precision = SpdMatrix::from_sym(mat.scale(-2.0)).map_err(|_| {
                    Error::OutOfDomain("matrix part is not negative definite".into())
                })?;
                Ok(Self {
                    family,
                    vec,
                    mat: Some(mat),
                    precision: Some(precision),
                })
            }
            FamilyId::Exponential | FamilyId::Poisson => {
                if mat.is_some() {
                    return Err(Error::OutOfDomain(format!("{family} has no matrix part")));
                }
                if vec.len() != 1 {
                    return Err(Error::DimensionMismatch {
                        expected: 1,
                        found: vec.len(),
                    });
                }
                if family == FamilyId::Exponential && !(vec[0] < 0.0) {
                    return Err(Error::OutOfDomain(format!(
                        "exponential θ must be < 0, got {}",
                        vec[0]
                    )));
                }
                Ok(Self {
                    family,
                    vec,
                    mat: None,
                    precision: None,
                })
            }
        }
    }

    pub fn gaussian(v: Vec<f64>, m: SymMatrix) -> Result<Self> {
        Self::new(FamilyId::Gaussian { dim: v.len() }, v, Some(m))
    }

    pub fn exponential(theta: f64) -> Result<Self> {
        Self::new(FamilyId::Exponential, vec![theta], None)
    }

    pub fn poisson(theta: f64) -> Result<Self> {
        Self::new(FamilyId::Poisson, vec![theta], None)
    }

    pub fn family(&self) -> FamilyId {
        self.family
    }

    pub fn spec(&self) -> FamilySpec {
        self.family.spec()
    }

    pub fn vec(&self) -> &[f64] {
        &self.vec
    }

    pub fn mat(&self) -> Option<&SymMatrix> {
        self.mat.as_ref()
    }

    /// The single coordinate of a scalar family (first vector entry otherwise).
    pub fn scalar(&self) -> f64 {
        self.vec[0]
    }

    /// `−2M`, i.e. `Σ⁻¹`, for Gaussians.
    pub fn precision(&self) -> Option<&SpdMatrix> {
        self.precision.as_ref()
    }

    /// Independent coordinates (upper triangle for the matrix part).
    pub fn coord_count(&self) -> usize {
        let d = self.mat.as_ref().map_or(0, SymMatrix::dim);
        self.vec.len() + d * (d + 1) / 2
    }

    pub fn log_normalizer(&self) -> f64 {
        match self.family {
            FamilyId::Gaussian { .. } => families::gaussian_log_normalizer_natural(
                &self.vec,
                self.precision.as_ref().expect("validated gaussian"),
            ),
            FamilyId::Exponential => {
                families::exponential_log_normalizer(self.vec[0]).expect("validated θ < 0")
            }
            FamilyId::Poisson => families::poisson_log_normalizer(self.vec[0]),
        }
    }

    pub fn grad_log_normalizer(&self) -> ExpectationParam {
        match self.family {
            FamilyId::Gaussian { .. } => {
                let (mu, second) = families::gaussian_moments(
                    &self.vec,
                    self.precision.as_ref().expect("validated gaussian"),
                );
                ExpectationParam {
                    family: self.family,
                    vec: mu,
                    mat: Some(second),
                }
            }
            FamilyId::Exponential => ExpectationParam {
                family: self.family,
                vec: vec![-1.0 / self.vec[0]],
                mat: None,
            },
            FamilyId::Poisson => ExpectationParam {
                family: self.family,
                vec: vec![self.vec[0].exp()],
                mat: None,
            },
        }
    }

    /// `a·θ`, which must stay inside Θ.
    pub fn scale(&self, a: f64) -> Result<Self> {
        if !(a > 0.0) || !a.is_finite() {
            return Err(Error::InvalidOrder(format!(
                "scale factor must be > 0, got {a}"
            )));
        }
        Self::new(
            self.family,
            self.vec.iter().map(|x| a * x).collect(),
            self.mat.as_ref().map(|m| m.scale(a)),
        )
    }

    /// `a·θ + (1 − a)·θ′`. Membership is checked explicitly, so `a` outside
    /// `(0, 1)` may yield `OutOfDomain`.
    pub fn mix(&self, other: &Self, a: f64) -> Result<Self> {
        self.check_same_family(other)?;
        if !a.is_finite() {
            return Err(Error::InvalidOrder(format!(
                "mixing weight must be finite, got {a}"
            )));
        }
        let b = 1.0 - a;
        let vec = self
            .vec
            .iter()
            .zip(&other.vec)
            .map(|(x, y)| a * x + b * y)
            .collect();
        let mat = match (&self.mat, &other.mat) {
            (Some(m), Some(n)) => Some(m.lincomb(a, n, b)?),
            _ => None,
        };
        Self::new(self.family, vec, mat)
    }

    /// `⟨θ, η⟩ = vᵀv′ + tr(MᵀM′)`.
    pub fn inner(&self, eta: &ExpectationParam) -> f64 {
        inner_parts(&self.vec, self.mat.as_ref(), &eta.vec, eta.mat.as_ref())
    }

    /// `⟨θ, θ′⟩` between two natural parameters.
    pub fn inner_natural(&self, other: &NaturalParam) -> f64 {
        inner_parts(&self.vec, self.mat.as_ref(), &other.vec, other.mat.as_ref())
    }

    /// `log p(x | θ) = ⟨θ, t(x)⟩ − F(θ) + k(x)`.
    pub fn log_density(&self, x: &[f64]) -> Result<f64> {
        Ok(self.log_density_unnormalized(x)? - self.log_normalizer())
    }

    /// `⟨θ, t(x)⟩ + k(x)`, without the normalizer. Lets hot loops hoist `F(θ)`.
    pub fn log_density_unnormalized(&self, x: &[f64]) -> Result<f64> {
        check_sample(self.family, x)?;
        Ok(match self.family {
            FamilyId::Gaussian { .. } => {
                let m = self.mat.as_ref().expect("validated gaussian");
                let lin: f64 = self.vec.iter().zip(x).map(|(a, b)| a * b).sum();
                lin + m.bilinear(x)?
            }
            FamilyId::Exponential => self.vec[0] * x[0],
            FamilyId::Poisson => self.vec[0] * x[0] + families::poisson_carrier(x[0])?,
        })
    }

    pub(crate) fn check_same_family(&self, other: &Self) -> Result<()> {
        if self.family != other.family {
            return Err(Error::FamilyMismatch(
                self.family.to_string(),
                other.family.to_string(),
            ));
        }
        Ok(())
    }
}

impl ExpectationParam {
    pub fn new(family: FamilyId, vec: Vec<f64>, mat: Option<SymMatrix>) -> Self {
        Self { family, vec, mat }
    }

    pub fn family(&self) -> FamilyId {
        self.family
    }

    pub fn vec(&self) -> &[f64] {
        &self.vec
    }

    pub fn mat(&self) -> Option<&SymMatrix> {
        self.mat.as_ref()
    }
}

fn inner_parts(v: &[f64], m: Option<&SymMatrix>, w: &[f64], n: Option<&SymMatrix>) -> f64 {
    let vec_part: f64 = v.iter().zip(w).map(|(a, b)| a * b).sum();
    let mat_part = match (m, n) {
        (Some(m), Some(n)) => m.frobenius_dot(n).expect("same family has same dimension"),
        _ => 0.0,
    };
    vec_part + mat_part
}

pub(crate) fn check_sample(family: FamilyId, x: &[f64]) -> Result<()> {
    let dim = family.sample_dim();
    if x.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: x.len(),
        });
    }
    match family {
        FamilyId::Gaussian { .. } => {
            if x.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidSample(
                    "gaussian sample must be finite".into(),
                ));
            }
        }
        FamilyId::Exponential => {
            if !(x[0] >= 0.0 && x[0].is_finite()) {
                return Err(Error::InvalidSample(format!(
                    "exponential sample must be ≥ 0, got {}",
                    x[0]
                )));
            }
        }
        FamilyId::Poisson => {
            if !families::is_count(x[0]) {
                return Err(Error::InvalidSample(format!(
                    "poisson sample must be a nonnegative integer, got {}",
                    x[0]
                )));
            }
        }
    }
    Ok(())
}

/// Sufficient statistic `t(x)`: `(x, x xᵀ)` for Gaussians, `x` otherwise.
pub fn sufficient_stat(family: FamilyId, x: &[f64]) -> Result<ExpectationParam> {
    check_sample(family, x)?;
    Ok(match family {
        FamilyId::Gaussian { .. } => ExpectationParam {
            family,
            vec: x.to_vec(),
            mat: Some(SymMatrix::outer(x)),
        },
        _ => ExpectationParam {
            family,
            vec: vec![x[0]],
            mat: None,
        },
    })
}
