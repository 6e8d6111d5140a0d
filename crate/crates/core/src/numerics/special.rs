//! Overflow-safe elementary functions.

/// `ln(2 cosh x)` without overflow for large `|x|`.
pub fn ln_two_cosh(x: f64) -> f64 {
    let a = x.abs();
    a + (-2.0 * a).exp().ln_1p()
}

/// `sech(x)^2` without overflow.
pub fn sech2(x: f64) -> f64 {
    let e = (-2.0 * x.abs()).exp();
    4.0 * e / ((1.0 + e) * (1.0 + e))
}

/// `ln(2 cosh y) - y tanh y`, the entropy of a two-level system at reduced field `y`,
/// evaluated without cancellation for large `|y|`.
pub fn two_level_entropy(y: f64) -> f64 {
    let a = y.abs();
    let e = (-2.0 * a).exp();
    e.ln_1p() + 2.0 * a * e / (1.0 + e)
}

/// `tanh(eta * x) / x`, continuous at `x = 0`.
pub fn tanh_ratio(eta: f64, x: f64) -> f64 {
    if x == 0.0 {
        eta
    } else {
        (eta * x).tanh() / x
    }
}

/// `x ln x` with the limit value 0 at `x = 0`.
pub fn xlogx(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

/// Entropy of a two-level population with polarization `z` in `[-1, 1]`:
/// `ln 2 - (1+z)/2 ln(1+z) - (1-z)/2 ln(1-z)`.
pub fn binary_entropy(z: f64) -> f64 {
    std::f64::consts::LN_2 - 0.5 * (xlogx(1.0 + z) + xlogx(1.0 - z))
}

/// `ln(sum exp(x_i))`, returning `-inf` for an empty or all `-inf` input.
pub fn log_sum_exp(xs: &[f64]) -> f64 {
    let m = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + xs.iter().map(|x| (x - m).exp()).sum::<f64>().ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_two_cosh_small_and_large() {
        assert!((ln_two_cosh(0.3) - (2.0 * 0.3f64.cosh()).ln()).abs() < 1e-15);
        assert!((ln_two_cosh(1000.0) - 1000.0).abs() < 1e-12);
        assert_eq!(ln_two_cosh(-2.0), ln_two_cosh(2.0));
    }

    #[test]
    fn sech2_matches_definition() {
        let x: f64 = 1.3;
        assert!((sech2(x) - 1.0 / x.cosh().powi(2)).abs() < 1e-15);
        assert_eq!(sech2(1e4), 0.0);
    }

    #[test]
    fn binary_entropy_limits() {
        assert!((binary_entropy(0.0) - std::f64::consts::LN_2).abs() < 1e-15);
        assert_eq!(binary_entropy(1.0), 0.0);
        assert_eq!(binary_entropy(-1.0), 0.0);
    }

    #[test]
    fn binary_entropy_of_tanh() {
        // h(tanh a) = ln 2cosh a - a tanh a
        for a in [0.1, 0.7, 2.5] {
            let lhs = binary_entropy(f64::tanh(a));
            let rhs = ln_two_cosh(a) - a * a.tanh();
            assert!((lhs - rhs).abs() < 1e-14);
        }
    }

    #[test]
    fn two_level_entropy_matches_direct_form() {
        for a in [0.01, 0.7, 2.5, -4.0] {
            let direct = ln_two_cosh(a) - a * f64::tanh(a);
            assert!((two_level_entropy(a) - direct).abs() < 1e-14);
        }
        let y = 100.0f64;
        let tail = (2.0 * y + 1.0) * (-2.0 * y).exp();
        assert!((two_level_entropy(y) / tail - 1.0).abs() < 1e-12);
    }

    #[test]
    fn log_sum_exp_basic() {
        let v = log_sum_exp(&[1000.0, 1000.0]);
        assert!((v - 1000.0 - std::f64::consts::LN_2).abs() < 1e-12);
        assert_eq!(log_sum_exp(&[]), f64::NEG_INFINITY);
    }
}
