//! Gain functions mapping total synaptic drive to a firing rate.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum GainSpec {
    /// Logistic `1 / (1 + e^{-z})`.
    #[default]
    Sigmoid,
    /// `(e^{az} - e^{-bz}) / (e^{cz} + e^{-dz})`.
    Soboleva { a: f64, b: f64, c: f64, d: f64 },
}

impl fmt::Display for GainSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GainSpec::Sigmoid => f.write_str("sigmoid"),
            GainSpec::Soboleva { .. } => f.write_str("soboleva"),
        }
    }
}

impl GainSpec {
    pub fn eval(&self, z: f64) -> f64 {
        match *self {
            GainSpec::Sigmoid => sigmoid(z),
            GainSpec::Soboleva { a, b, c, d } => soboleva(a, b, c, d, z),
        }
    }

    pub fn derivative(&self, z: f64) -> f64 {
        match *self {
            GainSpec::Sigmoid => sigmoid_derivative(z),
            GainSpec::Soboleva { a, b, c, d } => soboleva_derivative(a, b, c, d, z),
        }
    }
}

pub fn gain(spec: &GainSpec, z: f64) -> f64 {
    spec.eval(z)
}

pub fn gain_derivative(spec: &GainSpec, z: f64) -> f64 {
    spec.derivative(z)
}

fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

// G(1 - G) written as e^{-|z|} / (1 + e^{-|z|})^2 so neither tail cancels.
fn sigmoid_derivative(z: f64) -> f64 {
    let e = (-z.abs()).exp();
    let d = 1.0 + e;
    e / (d * d)
}

/// ln(e^p + e^q)
fn log_add_exp(p: f64, q: f64) -> f64 {
    let hi = p.max(q);
    hi + (-(p - q).abs()).exp().ln_1p()
}

fn soboleva(a: f64, b: f64, c: f64, d: f64, z: f64) -> f64 {
    let (p, q) = (a * z, -b * z);
    if p == q {
        return 0.0;
    }
    // Numerator e^p - e^q in log-magnitude form, denominator likewise.
    let hi = p.max(q);
    let log_num = hi + (-(-(p - q).abs()).exp()).ln_1p();
    let log_den = log_add_exp(c * z, -d * z);
    let mag = (log_num - log_den).exp();
    if p > q {
        mag
    } else {
        -mag
    }
}

fn soboleva_derivative(a: f64, b: f64, c: f64, d: f64, z: f64) -> f64 {
    // G' = N'/D - G * D'/D, every ratio scaled by the dominant denominator term.
    let s = (c * z).max(-d * z);
    let ec = (c * z - s).exp();
    let ed = (-d * z - s).exp();
    let den = ec + ed;
    let dnum = a * (a * z - s).exp() + b * (-b * z - s).exp();
    let dden = c * ec - d * ed;
    dnum / den - soboleva(a, b, c, d, z) * dden / den
}

#[cfg(test)]
mod tests {
    use super::*;

    fn central_diff(spec: &GainSpec, z: f64) -> f64 {
        let h = 1e-6;
        (spec.eval(z + h) - spec.eval(z - h)) / (2.0 * h)
    }

    #[test]
    fn sigmoid_reference_values() {
        let g = GainSpec::Sigmoid;
        assert_eq!(g.eval(0.0), 0.5);
        assert!((g.eval(40.0) - 1.0).abs() <= 1e-15);
        assert_eq!(g.derivative(0.0), 0.25);
        // 1 / (1 + e^-1.25)
        assert!((g.eval(1.25) - 0.777_299_861).abs() < 1e-8);
    }

    #[test]
    fn sigmoid_derivative_at_two() {
        let g = GainSpec::Sigmoid;
        let s = 1.0 / (1.0 + (-2.0f64).exp());
        let expected = s * (1.0 - s);
        assert!((expected - 0.104_993_585).abs() < 1e-8);
        assert!((g.derivative(2.0) - expected).abs() < 1e-15);
        assert!((central_diff(&g, 2.0) - expected).abs() < 1e-8);
    }

    #[test]
    fn sigmoid_tails_do_not_overflow() {
        let g = GainSpec::Sigmoid;
        for z in [-700.0, -300.0, 300.0, 700.0] {
            let v = g.eval(z);
            let dv = g.derivative(z);
            assert!(v.is_finite() && (0.0..=1.0).contains(&v));
            assert!(dv.is_finite() && dv >= 0.0);
        }
    }

    #[test]
    fn soboleva_is_odd_at_origin_with_unit_params() {
        let g = GainSpec::Soboleva { a: 1.0, b: 1.0, c: 1.0, d: 1.0 };
        assert_eq!(g.eval(0.0), 0.0);
        // with a=b=c=d=1 the function is tanh
        for z in [-3.0, -0.5, 0.7, 2.0] {
            assert!((g.eval(z) - f64::tanh(z)).abs() < 1e-14);
        }
        for z in [-700.0, 700.0] {
            assert!(g.eval(z).is_finite());
            assert!(g.derivative(z).is_finite());
        }
    }

    #[test]
    fn soboleva_derivative_matches_finite_difference() {
        let g = GainSpec::Soboleva { a: 0.8, b: 1.3, c: 1.1, d: 0.6 };
        for i in 0..=40 {
            let z = -5.0 + 0.25 * i as f64;
            assert!((g.derivative(z) - central_diff(&g, z)).abs() < 1e-6, "z = {z}");
        }
    }

    #[test]
    fn sigmoid_derivative_matches_finite_difference_on_grid() {
        let g = GainSpec::Sigmoid;
        for i in 0..=200 {
            let z = -10.0 + 0.1 * i as f64;
            assert!((g.derivative(z) - central_diff(&g, z)).abs() < 1e-6);
        }
    }

    proptest::proptest! {
        #[test]
        fn sigmoid_bounds(z in -700.0f64..700.0) {
            let g = GainSpec::Sigmoid;
            let v = g.eval(z);
            let dv = g.derivative(z);
            proptest::prop_assert!(v >= 0.0 && v <= 1.0);
            if z.abs() < 36.0 {
                proptest::prop_assert!(v > 0.0 && v < 1.0);
            }
            proptest::prop_assert!((0.0..=0.25).contains(&dv));
        }
    }
}
