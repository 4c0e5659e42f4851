use statrs::function::erf::erfc;

/// Standard normal CDF.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / std::f64::consts::SQRT_2)
}

/// Bayes error of `N(0, I)` against `N(c·1, I)` in `p` dimensions with equal
/// priors: `Φ(-c√p / 2)`.
pub fn bayes_error_exp1(p: usize, c: f64) -> f64 {
    normal_cdf(-c * (p as f64).sqrt() / 2.0)
}
