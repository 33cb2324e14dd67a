use expfam_core::estimation::{mle_fit, sample};
use expfam_core::families::{ExponentialSource, GaussianSource, PoissonSource};
use expfam_core::measures::{
    c_alpha, jensen_divergence, kl_divergence, sm_divergence, sm_entropy, OrderPair,
};
use expfam_core::{sufficient_stat, NaturalParam, SpdMatrix};
use proptest::prelude::*;

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1.0)
}

/// `Σ = AAᵀ + ½I` from a flat `A`.
fn covariance(d: usize, a: &[f64]) -> SpdMatrix {
    let mut s = vec![0.0; d * d];
    for i in 0..d {
        for j in 0..d {
            s[i * d + j] = (0..d).map(|k| a[i * d + k] * a[j * d + k]).sum::<f64>()
                + if i == j { 0.5 } else { 0.0 };
        }
    }
    SpdMatrix::cholesky(d, &s).unwrap()
}

fn gaussian(d: usize) -> impl Strategy<Value = GaussianSource> {
    (
        prop::collection::vec(-2.0..2.0f64, d),
        prop::collection::vec(-1.0..1.0f64, d * d),
    )
        .prop_map(move |(mu, a)| GaussianSource::new(mu, covariance(d, &a)).unwrap())
}

fn gaussian_pair() -> impl Strategy<Value = (GaussianSource, GaussianSource)> {
    (1usize..=3).prop_flat_map(|d| (gaussian(d), gaussian(d)))
}

fn any_member() -> impl Strategy<Value = NaturalParam> {
    prop_oneof![
        (1usize..=3)
            .prop_flat_map(gaussian)
            .prop_map(|g| g.to_natural()),
        (0.2..5.0f64).prop_map(|r| ExponentialSource::new(r).unwrap().to_natural()),
        (0.2..30.0f64).prop_map(|r| PoissonSource::new(r).unwrap().to_natural()),
    ]
}

fn scalar_pair() -> impl Strategy<Value = (NaturalParam, NaturalParam)> {
    prop_oneof![
        (0.2..5.0f64, 0.2..5.0f64).prop_map(|(a, b)| {
            (
                ExponentialSource::new(a).unwrap().to_natural(),
                ExponentialSource::new(b).unwrap().to_natural(),
            )
        }),
        (0.2..30.0f64, 0.2..30.0f64).prop_map(|(a, b)| {
            (
                PoissonSource::new(a).unwrap().to_natural(),
                PoissonSource::new(b).unwrap().to_natural(),
            )
        }),
    ]
}

fn away_from_one() -> impl Strategy<Value = f64> {
    (0.3..3.0f64).prop_filter("clear of α = 1", |a| (a - 1.0).abs() > 0.05)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gradient_matches_finite_differences(theta in any_member()) {
        let eta = theta.grad_log_normalizer();
        for k in 0..theta.vec().len() {
            let h = 1e-5 * theta.vec()[k].abs().max(1.0);
            let shifted = |s: f64| {
                let mut v = theta.vec().to_vec();
                v[k] += s;
                NaturalParam::new(theta.family(), v, theta.mat().cloned()).unwrap().log_normalizer()
            };
            let fd = (shifted(h) - shifted(-h)) / (2.0 * h);
            prop_assert!(close(fd, eta.vec()[k], 1e-6), "∂F/∂v{k}: {fd} vs {}", eta.vec()[k]);
        }
    }

    #[test]
    fn c_alpha_swap_symmetry((p, q) in gaussian_pair(), a in 0.05..0.95f64) {
        let (p, q) = (p.to_natural(), q.to_natural());
        let lhs = c_alpha(&p, &q, a).unwrap();
        let rhs = c_alpha(&q, &p, 1.0 - a).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.max(1e-300), "{lhs} vs {rhs}");
    }

    #[test]
    fn scalar_c_alpha_swap_symmetry((p, q) in scalar_pair(), a in 0.05..0.95f64) {
        let lhs = c_alpha(&p, &q, a).unwrap();
        let rhs = c_alpha(&q, &p, 1.0 - a).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.max(1e-300), "{lhs} vs {rhs}");
    }

    #[test]
    fn gaussian_entropy_ignores_the_mean(g in (1usize..=3).prop_flat_map(gaussian), shift in -5.0..5.0f64,
                                         a in away_from_one(), b in -1.0..3.0f64) {
        let moved: Vec<f64> = g.mu().iter().map(|m| m + shift).collect();
        let h = GaussianSource::new(moved, g.sigma().clone()).unwrap();
        let order = OrderPair::new(a, b).unwrap();
        let lhs = sm_entropy(&g.to_natural(), order).unwrap().value;
        let rhs = sm_entropy(&h.to_natural(), order).unwrap().value;
        prop_assert!(close(lhs, rhs, 1e-10), "{lhs} vs {rhs}");
    }

    #[test]
    fn shannon_is_half_log_det(g in (1usize..=3).prop_flat_map(gaussian)) {
        let d = g.dim() as f64;
        let want = 0.5 * (d * (2.0 * std::f64::consts::PI * std::f64::consts::E).ln() + g.sigma().log_det());
        let got = sm_entropy(&g.to_natural(), OrderPair::shannon()).unwrap().value;
        prop_assert!(close(got, want, 1e-12), "{got} vs {want}");
    }

    #[test]
    fn renyi_and_tsallis_are_limits(g in (1usize..=3).prop_flat_map(gaussian), a in away_from_one()) {
        let theta = g.to_natural();
        let renyi = sm_entropy(&theta, OrderPair::renyi(a).unwrap()).unwrap().value;
        let tsallis = sm_entropy(&theta, OrderPair::tsallis(a).unwrap()).unwrap().value;
        for eps in [1e-7, -1e-7] {
            let near_renyi = sm_entropy(&theta, OrderPair::new(a, 1.0 + eps).unwrap()).unwrap().value;
            // first-order gap is ε R²/2
            prop_assert!((near_renyi - renyi).abs() <= eps.abs() * (renyi * renyi + 1.0), "{near_renyi} vs {renyi}");
            let near_tsallis = sm_entropy(&theta, OrderPair::new(a, a + eps).unwrap()).unwrap().value;
            prop_assert!((near_tsallis - tsallis).abs() <= eps.abs() * (tsallis * tsallis + 1.0) * 10.0,
                "{near_tsallis} vs {tsallis}");
        }
    }

    #[test]
    fn kl_is_the_divergence_limit((p, q) in gaussian_pair()) {
        let (p, q) = (p.to_natural(), q.to_natural());
        let kl = kl_divergence(&p, &q).unwrap();
        let near = 1.0 - 1e-7;
        let d = sm_divergence(&p, &q, OrderPair::new(near, near).unwrap()).unwrap().value;
        prop_assert!((d - kl).abs() <= 1e-7 * (kl * kl + 1.0) * 10.0, "{d} vs {kl}");
    }

    #[test]
    fn divergences_are_nonnegative((p, q) in gaussian_pair(), a in 0.05..0.95f64, b in -1.0..3.0f64) {
        let (p, q) = (p.to_natural(), q.to_natural());
        prop_assert!(jensen_divergence(&p, &q, a).unwrap() >= 0.0);
        prop_assert!(kl_divergence(&p, &q).unwrap() >= 0.0);
        prop_assert!(sm_divergence(&p, &q, OrderPair::new(a, b).unwrap()).unwrap().value >= 0.0);
    }

    #[test]
    fn scalar_divergences_are_nonnegative((p, q) in scalar_pair(), a in 0.05..0.95f64, b in -1.0..3.0f64) {
        prop_assert!(kl_divergence(&p, &q).unwrap() >= 0.0);
        prop_assert!(sm_divergence(&p, &q, OrderPair::new(a, b).unwrap()).unwrap().value >= 0.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// The sample mean of t(x) sits within 5 standard errors of ∇F(θ).
    #[test]
    fn sample_mean_matches_expectation(theta in any_member(), seed in any::<u64>()) {
        const N: usize = 50_000;
        let samples = sample(&theta, N, seed);
        let stats: Vec<Vec<f64>> = samples
            .iter()
            .map(|x| {
                let t = sufficient_stat(theta.family(), x).unwrap();
                let mut flat = t.vec().to_vec();
                if let Some(m) = t.mat() {
                    flat.extend_from_slice(m.as_slice());
                }
                flat
            })
            .collect();
        let eta = theta.grad_log_normalizer();
        let mut want = eta.vec().to_vec();
        if let Some(m) = eta.mat() {
            want.extend_from_slice(m.as_slice());
        }
        for (k, &w) in want.iter().enumerate() {
            let mean = stats.iter().map(|s| s[k]).sum::<f64>() / N as f64;
            let var = stats.iter().map(|s| (s[k] - mean).powi(2)).sum::<f64>() / (N - 1) as f64;
            let se = (var / N as f64).sqrt();
            prop_assert!((mean - w).abs() <= 5.0 * se + 1e-12, "coordinate {k}: mean {mean}, η {w}, se {se}");
        }
    }

    /// Fitting a large sample lands close to the source in KL.
    #[test]
    fn mle_recovers_the_source(theta in any_member(), seed in any::<u64>()) {
        let samples = sample(&theta, 50_000, seed);
        let fit = mle_fit(&samples, theta.family()).unwrap();
        let kl = kl_divergence(&theta, &fit).unwrap();
        prop_assert!(kl < 1e-3, "KL(θ ‖ θ̂) = {kl}");
    }
}
