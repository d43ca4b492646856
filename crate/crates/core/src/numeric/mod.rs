//! Shared numerical kernels: `sinc`, compensated summation, quadrature rules.

pub mod interp;

use crate::error::{Error, Result};

/// `sin(z)/z` with a Taylor fallback near the origin.
///
/// For |z| < 1e-4 the truncated series `1 - z^2/6 + z^4/120` is used; the first
/// neglected term is z^6/5040 < 3e-28, so the relative error stays below 1e-15.
/// The series is even in `z`, which keeps `sinc(-z) == sinc(z)` bit-exact on
/// that branch; callers that need exact evenness on the large-|z| branch should
/// pass `z.abs()`.
#[inline]
pub fn sinc(z: f64) -> f64 {
    if z.abs() < 1e-4 {
        let z2 = z * z;
        1.0 - z2 / 6.0 * (1.0 - z2 / 20.0)
    } else {
        z.sin() / z
    }
}

/// Neumaier variant of Kahan compensated summation.
///
/// Used wherever reproduction of tabulated 16-significant-figure results
/// depends on the accumulation order not leaking rounding error.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Compensated sum of an iterator of f64.
pub fn csum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut acc = CompensatedSum::new();
    for v in values {
        acc.add(v);
    }
    acc.value()
}

/// Gauss–Legendre nodes and weights on `[a, b]`.
///
/// Nodes are found by Newton iteration on the Legendre polynomial with the
/// usual Chebyshev-like initial guesses; accurate to ~1e-15 for the orders
/// used here (up to a few thousand).
pub fn gauss_legendre(a: f64, b: f64, n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "need at least one node");
    assert!(b > a, "empty interval");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let mid = 0.5 * (b + a);
    let half = 0.5 * (b - a);
    let m = n.div_ceil(2);
    for i in 0..m {
        // initial guess for the i-th root of P_n on (-1, 1)
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut pp = 0.0;
        for _ in 0..100 {
            // recurrence for P_n(z) and derivative
            let mut p0 = 1.0;
            let mut p1 = 0.0;
            for j in 0..n {
                let p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j as f64 + 1.0) * z * p1 - j as f64 * p2) / (j as f64 + 1.0);
            }
            pp = n as f64 * (z * p0 - p1) / (z * z - 1.0);
            let dz = p0 / pp;
            z -= dz;
            if dz.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = mid - half * z;
        nodes[n - 1 - i] = mid + half * z;
        let w = 2.0 * half / ((1.0 - z * z) * pp * pp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Adaptive Simpson quadrature with Richardson acceptance test.
///
/// `tol` is an absolute tolerance on the whole interval; it is split in half
/// at every bisection. Returns an error if the recursion depth limit is hit
/// before the tolerance is met.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> Result<f64> {
    if !(b >= a) {
        return Err(Error::invalid(format!("bad interval [{a}, {b}]")));
    }
    if a == b {
        return Ok(0.0);
    }
    let fa = f(a);
    let fb = f(b);
    let mid = 0.5 * (a + b);
    let fm = f(mid);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_recurse(f, a, b, fa, fm, fb, whole, tol, 0)
}

const SIMPSON_MAX_DEPTH: usize = 48;

#[allow(clippy::too_many_arguments)]
fn simpson_recurse<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: usize,
) -> Result<f64> {
    let mid = 0.5 * (a + b);
    let lm = 0.5 * (a + mid);
    let rm = 0.5 * (mid + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (mid - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - mid) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * tol || (b - a) < 1e-14 * (a.abs() + b.abs() + 1.0) {
        return Ok(left + right + delta / 15.0);
    }
    if depth >= SIMPSON_MAX_DEPTH {
        return Err(Error::Quadrature(format!(
            "depth limit at [{a}, {b}] (residual {:.3e}, tol {:.3e})",
            delta.abs(),
            tol
        )));
    }
    let l = simpson_recurse(f, a, mid, fa, flm, fm, left, 0.5 * tol, depth + 1)?;
    let r = simpson_recurse(f, mid, b, fm, frm, fb, right, 0.5 * tol, depth + 1)?;
    Ok(l + r)
}

/// Composite Simpson rule over uniformly sampled values with spacing `h`.
///
/// Handles an even number of intervals directly; an odd count is finished
/// with a Simpson 3/8 cell so the order of accuracy is preserved.
pub fn simpson_sampled(values: &[f64], h: f64) -> f64 {
    let n = values.len();
    match n {
        0 => 0.0,
        1 => 0.0,
        2 => 0.5 * h * (values[0] + values[1]),
        3 => h / 3.0 * (values[0] + 4.0 * values[1] + values[2]),
        _ => {
            let intervals = n - 1;
            let (simpson_part, tail) = if intervals % 2 == 0 {
                (n, 0.0)
            } else {
                // last three intervals by Simpson 3/8
                let k = n - 4;
                let t = 3.0 * h / 8.0
                    * (values[k] + 3.0 * values[k + 1] + 3.0 * values[k + 2] + values[k + 3]);
                (n - 3, t)
            };
            let mut acc = CompensatedSum::new();
            acc.add(values[0]);
            acc.add(values[simpson_part - 1]);
            for (i, &v) in values[1..simpson_part - 1].iter().enumerate() {
                acc.add(if i % 2 == 0 { 4.0 * v } else { 2.0 * v });
            }
            h / 3.0 * acc.value() + tail
        }
    }
}

/// Complex-valued composite Simpson over uniform samples.
pub fn simpson_sampled_complex(values: &[num_complex::Complex64], h: f64) -> num_complex::Complex64 {
    let re: Vec<f64> = values.iter().map(|z| z.re).collect();
    let im: Vec<f64> = values.iter().map(|z| z.im).collect();
    num_complex::Complex64::new(simpson_sampled(&re, h), simpson_sampled(&im, h))
}
