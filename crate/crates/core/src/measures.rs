//! Sharma-Mittal entropies and divergences in closed form.
//!
//! Everything is driven by two quantities of the log-normalizer:
//!
//! * `F(αθ) − αF(θ)`, the log of `∫p^α` for families without a carrier;
//! * the Jensen difference `J_α(θ:θ′) = αF(θ) + (1−α)F(θ′) − F(αθ + (1−α)θ′)`,
//!   with `∫p^α q^{1−α} = e^{−J_α}`.
//!
//! The Gaussian functions evaluate the same quantities from `(μ, Σ)` directly
//! and serve as an independent route for cross-checking.
//!
//! All values are in nats.

use std::fmt;

use crate::error::{Error, Result};
use crate::expfam::NaturalParam;
use crate::families::{GaussianSource, LN_2PI};
use crate::linalg::SpdMatrix;

/// Distance under which `α`, `β` snap onto a limit.
pub const LIMIT_SNAP: f64 = 1e-12;

/// Which formula an [`OrderPair`] selects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    Generic,
    /// `β = 1`.
    RenyiLimit,
    /// `β = α`.
    TsallisLimit,
    /// `α = β = 1`.
    ShannonLimit,
    /// `α = 1`, `β ≠ 1`.
    AlphaOneLimit,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Generic => "generic",
            Regime::RenyiLimit => "renyi-limit",
            Regime::TsallisLimit => "tsallis-limit",
            Regime::ShannonLimit => "shannon-limit",
            Regime::AlphaOneLimit => "alpha-one-limit",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Entropy order `(α, β)` after limit snapping.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderPair {
    alpha: f64,
    beta: f64,
    regime: Regime,
}

impl OrderPair {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::InvalidOrder(format!("α must be > 0, got {alpha}")));
        }
        if !beta.is_finite() {
            return Err(Error::InvalidOrder(format!("β must be finite, got {beta}")));
        }
        let mut alpha = alpha;
        let mut beta = beta;
        if (alpha - 1.0).abs() < LIMIT_SNAP {
            alpha = 1.0;
        }
        if (beta - 1.0).abs() < LIMIT_SNAP {
            beta = 1.0;
        }
        if (beta - alpha).abs() < LIMIT_SNAP {
            beta = alpha;
        }
        let regime = if alpha == 1.0 && beta == 1.0 {
            Regime::ShannonLimit
        } else if beta == 1.0 {
            Regime::RenyiLimit
        } else if beta == alpha {
            Regime::TsallisLimit
        } else if alpha == 1.0 {
            Regime::AlphaOneLimit
        } else {
            Regime::Generic
        };
        Ok(Self {
            alpha,
            beta,
            regime,
        })
    }

    pub fn renyi(alpha: f64) -> Result<Self> {
        Self::new(alpha, 1.0)
    }

    pub fn tsallis(alpha: f64) -> Result<Self> {
        Self::new(alpha, alpha)
    }

    pub fn shannon() -> Self {
        Self {
            alpha: 1.0,
            beta: 1.0,
            regime: Regime::ShannonLimit,
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyValue {
    pub value: f64,
    pub order: OrderPair,
    pub regime: Regime,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DivergenceValue {
    pub value: f64,
    pub order: OrderPair,
    pub regime: Regime,
    /// `J_α(θ:θ′)`, when the regime goes through it.
    pub jensen: Option<f64>,
}

/// Bhattacharyya coefficient `C_½` and squared Hellinger distance `1 − C_½`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bhattacharyya {
    pub coefficient: f64,
    pub squared_hellinger: f64,
}

/// `F(αθ) − αF(θ)`.
pub fn log_malpha_factor(theta: &NaturalParam, alpha: f64) -> Result<f64> {
    let scaled = theta.scale(alpha)?;
    Ok(scaled.log_normalizer() - alpha * theta.log_normalizer())
}

/// Shannon entropy `F(θ) − ⟨θ, ∇F(θ)⟩` (carrier-free families).
pub fn shannon_entropy(theta: &NaturalParam) -> Result<f64> {
    require_no_carrier(theta)?;
    Ok(theta.log_normalizer() - theta.inner(&theta.grad_log_normalizer()))
}

/// Sharma-Mittal entropy `H_{α,β}` of a carrier-free family member.
pub fn sm_entropy(theta: &NaturalParam, order: OrderPair) -> Result<EntropyValue> {
    require_no_carrier(theta)?;
    let (a, b) = (order.alpha, order.beta);
    let value = match order.regime {
        Regime::ShannonLimit => shannon_entropy(theta)?,
        Regime::AlphaOneLimit => ((1.0 - b) * shannon_entropy(theta)?).exp_m1() / (1.0 - b),
        Regime::RenyiLimit => log_malpha_factor(theta, a)? / (1.0 - a),
        Regime::TsallisLimit => log_malpha_factor(theta, a)?.exp_m1() / (1.0 - a),
        Regime::Generic => {
            let l = log_malpha_factor(theta, a)?;
            ((1.0 - b) / (1.0 - a) * l).exp_m1() / (1.0 - b)
        }
    };
    Ok(EntropyValue {
        value,
        order,
        regime: order.regime,
    })
}

/// Sharma-Mittal entropy of a Gaussian straight from `d` and `log|Σ|`.
pub fn sm_entropy_gaussian(src: &GaussianSource, order: OrderPair) -> EntropyValue {
    let d = src.dim() as f64;
    let log_det = src.sigma().log_det();
    let (a, b) = (order.alpha, order.beta);
    // log((2π)^{d/2} |Σ|^{1/2})
    let s = 0.5 * (d * LN_2PI + log_det);
    let shannon = 0.5 * (d + d * LN_2PI + log_det);
    let value = match order.regime {
        Regime::ShannonLimit => shannon,
        Regime::AlphaOneLimit => ((1.0 - b) * shannon).exp_m1() / (1.0 - b),
        Regime::RenyiLimit => s - d * a.ln() / (2.0 * (1.0 - a)),
        Regime::TsallisLimit => ((1.0 - a) * s - 0.5 * d * a.ln()).exp_m1() / (1.0 - a),
        Regime::Generic => ((1.0 - b) * (s - d * a.ln() / (2.0 * (1.0 - a)))).exp_m1() / (1.0 - b),
    };
    EntropyValue {
        value,
        order,
        regime: order.regime,
    }
}

/// Jensen difference `αF(θ) + (1−α)F(θ′) − F(αθ + (1−α)θ′)`.
pub fn jensen_divergence(theta: &NaturalParam, theta2: &NaturalParam, alpha: f64) -> Result<f64> {
    let mix = theta.mix(theta2, alpha)?;
    Ok(
        alpha * theta.log_normalizer() + (1.0 - alpha) * theta2.log_normalizer()
            - mix.log_normalizer(),
    )
}

/// `C_α = ∫p^α q^{1−α} = e^{−J_α}`; holds for carrier families as well.
pub fn c_alpha(theta: &NaturalParam, theta2: &NaturalParam, alpha: f64) -> Result<f64> {
    Ok((-jensen_divergence(theta, theta2, alpha)?).exp())
}

/// `KL(p_θ ‖ p_θ′) = F(θ′) − F(θ) − ⟨θ′ − θ, ∇F(θ)⟩`.
pub fn kl_divergence(theta: &NaturalParam, theta2: &NaturalParam) -> Result<f64> {
    theta.check_same_family(theta2)?;
    let eta = theta.grad_log_normalizer();
    Ok(theta2.log_normalizer() - theta.log_normalizer() - (theta2.inner(&eta) - theta.inner(&eta)))
}

/// Sharma-Mittal divergence `D_{α,β}(p:q)`, evaluated through `J_α`.
pub fn sm_divergence(
    theta: &NaturalParam,
    theta2: &NaturalParam,
    order: OrderPair,
) -> Result<DivergenceValue> {
    theta.check_same_family(theta2)?;
    let (a, b) = (order.alpha, order.beta);
    let (value, jensen) = match order.regime {
        Regime::ShannonLimit => (kl_divergence(theta, theta2)?, None),
        Regime::AlphaOneLimit => {
            let kl = kl_divergence(theta, theta2)?;
            ((-(1.0 - b) * kl).exp_m1() / (b - 1.0), None)
        }
        Regime::RenyiLimit => {
            let j = jensen_divergence(theta, theta2, a)?;
            (j / (1.0 - a), Some(j))
        }
        Regime::TsallisLimit => {
            let j = jensen_divergence(theta, theta2, a)?;
            ((-j).exp_m1() / (a - 1.0), Some(j))
        }
        Regime::Generic => {
            let j = jensen_divergence(theta, theta2, a)?;
            ((-(1.0 - b) / (1.0 - a) * j).exp_m1() / (b - 1.0), Some(j))
        }
    };
    Ok(DivergenceValue {
        value,
        order,
        regime: order.regime,
        jensen,
    })
}

pub fn bhattacharyya_hellinger(
    theta: &NaturalParam,
    theta2: &NaturalParam,
) -> Result<Bhattacharyya> {
    let coefficient = c_alpha(theta, theta2, 0.5)?;
    Ok(Bhattacharyya {
        coefficient,
        squared_hellinger: 1.0 - coefficient,
    })
}

/// The Gaussian at `αθ + (1−α)θ′`: `Σ̄ = (αΣ⁻¹ + (1−α)Σ′⁻¹)⁻¹`,
/// `μ̄ = Σ̄(αΣ⁻¹μ + (1−α)Σ′⁻¹μ′)`.
pub fn gaussian_alpha_mixture(
    p: &GaussianSource,
    q: &GaussianSource,
    alpha: f64,
) -> Result<GaussianSource> {
    check_gaussian_dims(p, q)?;
    let pp = p.sigma().inverse()?;
    let qp = q.sigma().inverse()?;
    let mixed = pp.matrix().lincomb(alpha, qp.matrix(), 1.0 - alpha)?;
    let precision = SpdMatrix::from_sym(mixed).map_err(|_| {
        Error::OutOfDomain(format!(
            "precision mix at α={alpha} is not positive definite"
        ))
    })?;
    let v: Vec<f64> = p
        .sigma()
        .solve(p.mu())?
        .iter()
        .zip(q.sigma().solve(q.mu())?)
        .map(|(x, y)| alpha * x + (1.0 - alpha) * y)
        .collect();
    let mu = precision.solve(&v)?;
    GaussianSource::new(mu, precision.inverse()?)
}

struct GaussianJensenParts {
    log_ratio: f64,
    quad: f64,
}

// log(|Σ|^α |Σ′|^{1−α} / |Σ̄_α|) and Δμᵀ((1−α)Σ + αΣ′)⁻¹Δμ.
//
// Expanding μ̄ᵀΣ̄⁻¹μ̄ leaves α(1−α)ΔμᵀΣ⁻¹ Σ̄ Σ′⁻¹Δμ for the mean part, and
// Σ⁻¹ Σ̄ Σ′⁻¹ = ((1−α)Σ + αΣ′)⁻¹. It reduces to Σ̄⁻¹ only when Σ = Σ′.
fn gaussian_jensen_parts(
    p: &GaussianSource,
    q: &GaussianSource,
    alpha: f64,
) -> Result<GaussianJensenParts> {
    check_gaussian_dims(p, q)?;
    let pp = p.sigma().inverse()?;
    let qp = q.sigma().inverse()?;
    let out_of_domain = |_| {
        Error::OutOfDomain(format!(
            "covariance mix at α={alpha} is not positive definite"
        ))
    };
    let precision_mix =
        SpdMatrix::from_sym(pp.matrix().lincomb(alpha, qp.matrix(), 1.0 - alpha)?)
            .map_err(out_of_domain)?;
    let cov_mix = SpdMatrix::from_sym(p.sigma().matrix().lincomb(
        1.0 - alpha,
        q.sigma().matrix(),
        alpha,
    )?)
    .map_err(out_of_domain)?;
    let dmu: Vec<f64> = q.mu().iter().zip(p.mu()).map(|(b, a)| b - a).collect();
    // log|Σ̄| = −log|Σ̄⁻¹|
    let log_ratio =
        alpha * p.sigma().log_det() + (1.0 - alpha) * q.sigma().log_det() + precision_mix.log_det();
    let quad = cov_mix.quad_form(&dmu)?;
    Ok(GaussianJensenParts { log_ratio, quad })
}

/// `J_α` between two Gaussians from `(μ, Σ)` coordinates.
pub fn jensen_divergence_gaussian(
    p: &GaussianSource,
    q: &GaussianSource,
    alpha: f64,
) -> Result<f64> {
    let parts = gaussian_jensen_parts(p, q, alpha)?;
    Ok(0.5 * (parts.log_ratio + alpha * (1.0 - alpha) * parts.quad))
}

/// `KL(N(μ,Σ) ‖ N(μ′,Σ′)) = ½(tr(Σ′⁻¹Σ) + Δμᵀ Σ′⁻¹ Δμ − d + log|Σ′| − log|Σ|)`.
pub fn kl_divergence_gaussian(p: &GaussianSource, q: &GaussianSource) -> Result<f64> {
    check_gaussian_dims(p, q)?;
    let d = p.dim();
    let mut trace = 0.0;
    let mut col = vec![0.0; d];
    for j in 0..d {
        for (i, c) in col.iter_mut().enumerate() {
            *c = p.sigma().get(i, j);
        }
        trace += q.sigma().solve(&col)?[j];
    }
    let dmu: Vec<f64> = q.mu().iter().zip(p.mu()).map(|(b, a)| b - a).collect();
    let quad = q.sigma().quad_form(&dmu)?;
    Ok(0.5 * (trace + quad - d as f64 + q.sigma().log_det() - p.sigma().log_det()))
}

/// Sharma-Mittal divergence between Gaussians in explicit `(μ, Σ)` form:
/// `(1/(β−1)) ((|Σ|^α|Σ′|^{1−α}/|Σ̄|)^{−(1−β)/(2(1−α))} e^{−α(1−β)/2 · Δμᵀ S⁻¹ Δμ} − 1)`
/// with `S = (1−α)Σ + αΣ′`.
pub fn sm_divergence_gaussian(
    p: &GaussianSource,
    q: &GaussianSource,
    order: OrderPair,
) -> Result<DivergenceValue> {
    let (a, b) = (order.alpha, order.beta);
    let (value, jensen) = match order.regime {
        Regime::ShannonLimit => (kl_divergence_gaussian(p, q)?, None),
        Regime::AlphaOneLimit => {
            let kl = kl_divergence_gaussian(p, q)?;
            ((-(1.0 - b) * kl).exp_m1() / (b - 1.0), None)
        }
        Regime::RenyiLimit => {
            let parts = gaussian_jensen_parts(p, q, a)?;
            let value = parts.log_ratio / (2.0 * (1.0 - a)) + 0.5 * a * parts.quad;
            (
                value,
                Some(0.5 * (parts.log_ratio + a * (1.0 - a) * parts.quad)),
            )
        }
        Regime::TsallisLimit | Regime::Generic => {
            let parts = gaussian_jensen_parts(p, q, a)?;
            let exponent =
                -(1.0 - b) / (2.0 * (1.0 - a)) * parts.log_ratio - 0.5 * a * (1.0 - b) * parts.quad;
            (
                exponent.exp_m1() / (b - 1.0),
                Some(0.5 * (parts.log_ratio + a * (1.0 - a) * parts.quad)),
            )
        }
    };
    Ok(DivergenceValue {
        value,
        order,
        regime: order.regime,
        jensen,
    })
}

fn check_gaussian_dims(p: &GaussianSource, q: &GaussianSource) -> Result<()> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: q.dim(),
        });
    }
    Ok(())
}

fn require_no_carrier(theta: &NaturalParam) -> Result<()> {
    if theta.spec().has_carrier {
        return Err(Error::CarrierNotZero(theta.family().to_string()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::gaussian_to_natural;

    const SHANNON_STD: f64 = 1.418_938_533_204_672_7;
    const RENYI2_STD: f64 = 1.265_512_123_484_645_4;

    fn normal(mean: f64, var: f64) -> GaussianSource {
        GaussianSource::univariate(mean, var).unwrap()
    }

    fn nat(src: &GaussianSource) -> NaturalParam {
        gaussian_to_natural(src)
    }

    fn iso4d() -> GaussianSource {
        GaussianSource::new(vec![0.0; 4], SpdMatrix::diagonal(&[4.0; 4]).unwrap()).unwrap()
    }

    #[test]
    fn order_snapping() {
        assert_eq!(
            OrderPair::new(1.0 + 1e-13, 1.0 - 1e-13).unwrap().regime(),
            Regime::ShannonLimit
        );
        assert_eq!(
            OrderPair::new(2.0, 1.0 + 5e-13).unwrap().regime(),
            Regime::RenyiLimit
        );
        let t = OrderPair::new(0.5, 0.5 + 1e-13).unwrap();
        assert_eq!((t.regime(), t.beta()), (Regime::TsallisLimit, 0.5));
        assert_eq!(
            OrderPair::new(1.0, 0.5).unwrap().regime(),
            Regime::AlphaOneLimit
        );
        assert_eq!(OrderPair::new(2.0, 0.5).unwrap().regime(), Regime::Generic);
        assert_eq!(
            OrderPair::new(1.0 - 1e-8, 1.0 - 1e-8).unwrap().regime(),
            Regime::TsallisLimit
        );
        assert!(matches!(
            OrderPair::new(0.0, 0.5),
            Err(Error::InvalidOrder(_))
        ));
        assert!(OrderPair::new(-1.0, 0.5).is_err());
        assert!(OrderPair::new(0.5, f64::NAN).is_err());
        assert!(OrderPair::new(0.5, -3.0).is_ok());
    }

    #[test]
    fn log_malpha_examples() {
        let std = nat(&normal(0.0, 1.0));
        assert_eq!(log_malpha_factor(&std, 1.0).unwrap(), 0.0);
        assert!((log_malpha_factor(&std, 2.0).unwrap() + RENYI2_STD).abs() < 1e-12);
        let e = NaturalParam::exponential(-1.0).unwrap();
        assert!((log_malpha_factor(&e, 2.0).unwrap() + std::f64::consts::LN_2).abs() < 1e-15);
        assert!(log_malpha_factor(&e, 0.0).is_err());
    }

    #[test]
    fn sm_entropy_examples() {
        let std = nat(&normal(0.0, 1.0));
        let h = sm_entropy(&std, OrderPair::shannon()).unwrap();
        assert!((h.value - SHANNON_STD).abs() < 1e-12);
        assert_eq!(h.regime, Regime::ShannonLimit);

        let r = sm_entropy(&std, OrderPair::renyi(2.0).unwrap()).unwrap();
        assert!((r.value - RENYI2_STD).abs() < 1e-12);

        // 2((2π)^{1/4} 2^{1/4} − 1)
        let expect = 1.765_585_055_106_859_3;
        for mean in [-3.0, 0.0, 7.5] {
            let h =
                sm_entropy(&nat(&normal(mean, 1.0)), OrderPair::new(2.0, 0.5).unwrap()).unwrap();
            assert!((h.value - expect).abs() < 1e-12, "{}", h.value);
        }

        let p = NaturalParam::poisson(0.0).unwrap();
        assert!(matches!(
            sm_entropy(&p, OrderPair::shannon()),
            Err(Error::CarrierNotZero(_))
        ));
    }

    #[test]
    fn gaussian_entropy_examples() {
        let h = sm_entropy_gaussian(&iso4d(), OrderPair::new(2.0, 2.0).unwrap());
        assert!((h.value - 0.999_604_214_126_397_1).abs() < 1e-12);

        let h = sm_entropy_gaussian(&normal(0.0, 4.0), OrderPair::shannon());
        assert!((h.value - 2.112_085_713_764_618).abs() < 1e-12);

        let order = OrderPair::new(0.7, -0.4).unwrap();
        let a = sm_entropy_gaussian(&normal(-2.0, 3.0), order);
        let b = sm_entropy_gaussian(&normal(9.0, 3.0), order);
        assert_eq!(a.value, b.value);
    }

    #[test]
    fn entropy_routes_agree_on_every_regime() {
        let src = GaussianSource::new(
            vec![1.0, -2.0],
            SpdMatrix::from_rows(&[vec![2.0, 0.3], vec![0.3, 0.5]]).unwrap(),
        )
        .unwrap();
        let theta = nat(&src);
        for (a, b) in [
            (2.0, 2.0),
            (0.5, 1.0),
            (3.0, 3.0),
            (1.0, 1.0),
            (1.0, 0.3),
            (0.4, -1.0),
        ] {
            let order = OrderPair::new(a, b).unwrap();
            let x = sm_entropy(&theta, order).unwrap().value;
            let y = sm_entropy_gaussian(&src, order).value;
            assert!(
                (x - y).abs() <= 1e-10 * y.abs().max(1e-300),
                "{a},{b}: {x} vs {y}"
            );
        }
    }

    #[test]
    fn jensen_examples() {
        let p = nat(&normal(0.0, 2.0));
        let q = nat(&normal(4.0, 4.0));
        assert_eq!(jensen_divergence(&p, &p, 0.3).unwrap().abs(), 0.0);
        assert_eq!(jensen_divergence(&p, &q, 0.0).unwrap(), 0.0);
        assert_eq!(jensen_divergence(&p, &q, 1.0).unwrap(), 0.0);

        // ½(log(3/(2√2)) + 4/3), confirmed by quadrature of ∫√(pq)
        let j_half = 0.696_112_425_580_762_5;
        assert!((jensen_divergence(&p, &q, 0.5).unwrap() - j_half).abs() < 1e-12);
        let g = jensen_divergence_gaussian(&normal(0.0, 2.0), &normal(4.0, 4.0), 0.5).unwrap();
        assert!((g - j_half).abs() < 1e-12);

        let g = jensen_divergence_gaussian(&normal(0.0, 1.0), &normal(2.0, 1.0), 0.5).unwrap();
        assert!((g - 0.5).abs() < 1e-15);
        assert!(
            jensen_divergence_gaussian(&normal(1.0, 3.0), &normal(1.0, 3.0), 0.5)
                .unwrap()
                .abs()
                < 1e-15
        );
    }

    #[test]
    fn jensen_rejects_bad_mix() {
        let p = nat(&normal(0.0, 1.0));
        let q = nat(&normal(0.0, 0.5));
        assert!(matches!(
            jensen_divergence(&p, &q, 3.0),
            Err(Error::OutOfDomain(_))
        ));
        assert!(matches!(
            jensen_divergence_gaussian(&normal(0.0, 1.0), &normal(0.0, 0.5), 3.0),
            Err(Error::OutOfDomain(_))
        ));
        let e = NaturalParam::exponential(-1.0).unwrap();
        assert!(matches!(
            jensen_divergence(&p, &e, 0.5),
            Err(Error::FamilyMismatch(..))
        ));
    }

    #[test]
    fn c_alpha_examples() {
        let p = nat(&normal(0.0, 1.0));
        assert_eq!(c_alpha(&p, &p, 0.5).unwrap(), 1.0);

        let a = NaturalParam::poisson(0.0).unwrap();
        let b = NaturalParam::poisson(4f64.ln()).unwrap();
        let c = c_alpha(&a, &b, 0.5).unwrap();
        assert!((c - (-0.5f64).exp()).abs() < 1e-15);
        // direct series Σ √(p(x) q(x))
        let series: f64 = (0..200)
            .map(|x| {
                (0.5 * (a.log_density(&[x as f64]).unwrap() + b.log_density(&[x as f64]).unwrap()))
                    .exp()
            })
            .sum();
        assert!((c - series).abs() < 1e-12);

        let q = nat(&normal(2.0, 1.0));
        assert!((c_alpha(&p, &q, 0.5).unwrap() - (-0.5f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn divergence_examples() {
        let p = nat(&normal(0.0, 2.0));
        let q = nat(&normal(4.0, 4.0));
        for (a, b) in [(0.5, 0.5), (0.5, 2.0), (0.9, 1.0), (1.0, 1.0), (0.3, -1.0)] {
            let d = sm_divergence(&p, &p, OrderPair::new(a, b).unwrap()).unwrap();
            assert!(d.value.abs() < 1e-12);
        }

        let kl = sm_divergence(&p, &q, OrderPair::shannon()).unwrap();
        assert!((kl.value - 2.096_573_590_279_972_7).abs() < 1e-12);
        assert_eq!(kl.jensen, None);

        let a = nat(&normal(0.0, 1.0));
        let b = nat(&normal(2.0, 1.0));
        let d = sm_divergence(&a, &b, OrderPair::new(0.5, 0.5).unwrap()).unwrap();
        assert!((d.value - 0.786_938_680_574_733_2).abs() < 1e-12);
        assert!((d.jensen.unwrap() - 0.5).abs() < 1e-12);

        let pa = NaturalParam::poisson(0.0).unwrap();
        let pb = NaturalParam::poisson(4f64.ln()).unwrap();
        let r = sm_divergence(&pa, &pb, OrderPair::renyi(0.5).unwrap()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn kl_orientation_matches_limit() {
        let p = nat(&normal(0.0, 2.0));
        let q = nat(&normal(4.0, 4.0));
        let near = sm_divergence(&p, &q, OrderPair::new(1.0 - 1e-8, 1.0 - 1e-8).unwrap()).unwrap();
        let kl_pq = kl_divergence(&p, &q).unwrap();
        let kl_qp = kl_divergence(&q, &p).unwrap();
        assert!((near.value - kl_pq).abs() < 1e-6);
        assert!((near.value - kl_qp).abs() > 0.1);
    }

    #[test]
    fn gaussian_divergence_routes() {
        let p = normal(0.0, 2.0);
        let q = normal(4.0, 4.0);
        for (a, b) in [
            (0.5, 0.5),
            (0.5, 1.0),
            (0.3, 0.3),
            (1.0, 1.0),
            (0.7, -1.0),
            (1.0, 2.0),
        ] {
            let order = OrderPair::new(a, b).unwrap();
            let x = sm_divergence(&nat(&p), &nat(&q), order).unwrap().value;
            let y = sm_divergence_gaussian(&p, &q, order).unwrap().value;
            assert!((x - y).abs() <= 1e-9 * y.abs(), "{a},{b}: {x} vs {y}");
        }

        let p = GaussianSource::new(vec![0.0, 0.0], SpdMatrix::identity(2)).unwrap();
        let q = GaussianSource::new(vec![2.0, 0.0], SpdMatrix::identity(2)).unwrap();
        let r = sm_divergence_gaussian(&p, &q, OrderPair::renyi(0.5).unwrap()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
        assert_eq!(
            sm_divergence_gaussian(&p, &p, OrderPair::new(0.5, 0.5).unwrap())
                .unwrap()
                .value,
            0.0
        );
    }

    #[test]
    fn alpha_mixture_matches_natural_mix() {
        let p = normal(0.0, 2.0);
        let q = normal(4.0, 4.0);
        let mixed = gaussian_alpha_mixture(&p, &q, 0.5).unwrap();
        assert!((mixed.sigma().get(0, 0) - 8.0 / 3.0).abs() < 1e-14);
        assert!((mixed.mu()[0] - 4.0 / 3.0).abs() < 1e-14);
        let via_theta = nat(&p).mix(&nat(&q), 0.5).unwrap();
        let back = crate::families::gaussian_from_natural(&via_theta).unwrap();
        assert!((back.mu()[0] - mixed.mu()[0]).abs() < 1e-14);
    }

    #[test]
    fn bhattacharyya_examples() {
        let a = nat(&normal(0.0, 1.0));
        let b = nat(&normal(2.0, 1.0));
        let same = bhattacharyya_hellinger(&a, &a).unwrap();
        assert_eq!((same.coefficient, same.squared_hellinger), (1.0, 0.0));
        let bh = bhattacharyya_hellinger(&a, &b).unwrap();
        assert!((bh.coefficient - 0.606_530_659_712_633_4).abs() < 1e-12);
        assert!((bh.squared_hellinger - 0.393_469_340_287_366_6).abs() < 1e-12);
        assert_eq!(bhattacharyya_hellinger(&b, &a).unwrap(), bh);

        let c = nat(&GaussianSource::new(vec![1.0], SpdMatrix::diagonal(&[0.3]).unwrap()).unwrap());
        assert_eq!(
            bhattacharyya_hellinger(&a, &c).unwrap(),
            bhattacharyya_hellinger(&c, &a).unwrap()
        );
    }
}
