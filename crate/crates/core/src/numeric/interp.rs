//! Natural cubic spline on a uniform grid.

use num_complex::Complex64;

/// Natural cubic spline through `values` sampled at `start + i*step`.
///
/// Evaluation outside the sampled range returns zero, which matches how the
/// rescaling transforms treat unsampled regions of a wave function.
#[derive(Debug, Clone)]
pub struct CubicSpline {
    start: f64,
    step: f64,
    values: Vec<f64>,
    second_derivs: Vec<f64>,
}

impl CubicSpline {
    pub fn new(start: f64, step: f64, values: Vec<f64>) -> Self {
        assert!(step > 0.0, "step must be positive");
        assert!(values.len() >= 2, "need at least two samples");
        let n = values.len();
        let mut m = vec![0.0; n];
        if n > 2 {
            // tridiagonal system for second derivatives, natural end conditions
            let mut diag = vec![4.0; n - 2];
            let mut rhs = vec![0.0; n - 2];
            for i in 1..n - 1 {
                rhs[i - 1] = 6.0 * (values[i + 1] - 2.0 * values[i] + values[i - 1]) / (step * step);
            }
            // Thomas algorithm, off-diagonals are all 1
            for i in 1..n - 2 {
                let w = 1.0 / diag[i - 1];
                diag[i] -= w;
                rhs[i] -= w * rhs[i - 1];
            }
            m[n - 2] = rhs[n - 3] / diag[n - 3];
            for i in (1..n - 2).rev() {
                m[i] = (rhs[i - 1] - m[i + 1]) / diag[i - 1];
            }
        }
        Self {
            start,
            step,
            values,
            second_derivs: m,
        }
    }

    /// Spline value at `x`; zero outside the sampled range.
    pub fn eval(&self, x: f64) -> f64 {
        let n = self.values.len();
        let t = (x - self.start) / self.step;
        if t < 0.0 || t > (n - 1) as f64 {
            return 0.0;
        }
        let i = (t.floor() as usize).min(n - 2);
        let a = (i + 1) as f64 - t;
        let b = t - i as f64;
        let h2 = self.step * self.step / 6.0;
        a * self.values[i]
            + b * self.values[i + 1]
            + ((a * a * a - a) * self.second_derivs[i] + (b * b * b - b) * self.second_derivs[i + 1])
                * h2
    }
}

/// Pair of splines interpolating the real and imaginary parts of a sampled
/// complex-valued function.
#[derive(Debug, Clone)]
pub struct ComplexSpline {
    re: CubicSpline,
    im: CubicSpline,
}

impl ComplexSpline {
    pub fn new(start: f64, step: f64, values: &[Complex64]) -> Self {
        let re: Vec<f64> = values.iter().map(|z| z.re).collect();
        let im: Vec<f64> = values.iter().map(|z| z.im).collect();
        Self {
            re: CubicSpline::new(start, step, re),
            im: CubicSpline::new(start, step, im),
        }
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        Complex64::new(self.re.eval(x), self.im.eval(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn reproduces_samples_exactly() {
        let vals: Vec<f64> = (0..50).map(|i| ((i as f64) * 0.3).sin()).collect();
        let sp = CubicSpline::new(-2.0, 0.1, vals.clone());
        for (i, &v) in vals.iter().enumerate() {
            assert_relative_eq!(sp.eval(-2.0 + 0.1 * i as f64), v, epsilon = 1e-12);
        }
    }

    #[test]
    fn quartic_accuracy_on_smooth_interior() {
        let h = 0.01;
        let n = 1601;
        let start = -8.0;
        let f = |x: f64| (-x * x).exp();
        let vals: Vec<f64> = (0..n).map(|i| f(start + h * i as f64)).collect();
        let sp = CubicSpline::new(start, h, vals);
        let mut worst: f64 = 0.0;
        for k in 0..2000 {
            let x = -3.0 + 6.0 * (k as f64) / 1999.0;
            worst = worst.max((sp.eval(x) - f(x)).abs());
        }
        assert!(worst < 1e-8, "spline error {worst:.2e}");
    }

    #[test]
    fn zero_outside_range() {
        let sp = CubicSpline::new(0.0, 1.0, vec![1.0, 2.0, 3.0]);
        assert_eq!(sp.eval(-0.5), 0.0);
        assert_eq!(sp.eval(2.5), 0.0);
    }
}
