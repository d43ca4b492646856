//! Closed-form trial families for the rescaled state: a superposition of two
//! complex Gaussians and a piecewise polynomial-times-Gaussian profile with
//! independent branches on the two half-axes.

use crate::error::{Error, Result};
use crate::numeric::gauss_legendre;
use crate::states::RescaledState;
use num_complex::Complex64;

/// phi(u) = C ( e^{-a1 (u-b1)^2} cos(alpha) + e^{-a2 (u-b2)^2} e^{i beta} sin(alpha) )
/// with complex shape parameters and real mixing angles.
#[derive(Debug, Clone, Copy)]
pub struct TwoGaussianAnsatz {
    pub a1: Complex64,
    pub b1: Complex64,
    pub a2: Complex64,
    pub b2: Complex64,
    pub alpha: f64,
    pub beta: f64,
}

impl TwoGaussianAnsatz {
    pub fn new(
        a1: Complex64,
        b1: Complex64,
        a2: Complex64,
        b2: Complex64,
        alpha: f64,
        beta: f64,
    ) -> Result<Self> {
        if !(a1.re > 0.0) || !(a2.re > 0.0) {
            return Err(Error::invalid(
                "normalizability requires Re a1 > 0 and Re a2 > 0",
            ));
        }
        Ok(Self {
            a1,
            b1,
            a2,
            b2,
            alpha,
            beta,
        })
    }

    /// Convenience constructor for real shape parameters.
    pub fn from_real(a1: f64, b1: f64, a2: f64, b2: f64, alpha: f64, beta: f64) -> Result<Self> {
        Self::new(
            Complex64::new(a1, 0.0),
            Complex64::new(b1, 0.0),
            Complex64::new(a2, 0.0),
            Complex64::new(b2, 0.0),
            alpha,
            beta,
        )
    }

    /// Inverse square of the normalization constant, in closed form:
    /// two single-Gaussian terms plus the interference term.
    pub fn inverse_c_squared(&self) -> f64 {
        let single = |a: Complex64, b: Complex64| -> f64 {
            let ab = a * b;
            let ab2 = a * b * b;
            (std::f64::consts::PI / (2.0 * a.re)).sqrt()
                * (2.0 * ab.re * ab.re / a.re - 2.0 * ab2.re).exp()
        };
        let t1 = self.alpha.cos().powi(2) * single(self.a1, self.b1);
        let t2 = self.alpha.sin().powi(2) * single(self.a2, self.b2);
        let s = self.a1 + self.a2.conj();
        let num = self.a1 * self.b1 + (self.a2 * self.b2).conj();
        let arg = num * num / s
            - self.a1 * self.b1 * self.b1
            - (self.a2 * self.b2 * self.b2).conj()
            - Complex64::new(0.0, self.beta);
        let t3 = (2.0 * self.alpha).sin() * ((std::f64::consts::PI / s).sqrt() * arg.exp()).re;
        t1 + t2 + t3
    }

    /// Closed-form normalization constant C.
    pub fn normalization_constant(&self) -> Result<f64> {
        let c2inv = self.inverse_c_squared();
        if !(c2inv > 0.0) || !c2inv.is_finite() {
            return Err(Error::Norm(format!(
                "parameters are not normalizable (C^-2 = {c2inv})"
            )));
        }
        Ok(1.0 / c2inv.sqrt())
    }

    pub fn unnormalized_value(&self, u: f64) -> Complex64 {
        let du1 = Complex64::new(u, 0.0) - self.b1;
        let du2 = Complex64::new(u, 0.0) - self.b2;
        (-self.a1 * du1 * du1).exp() * self.alpha.cos()
            + (-self.a2 * du2 * du2).exp() * Complex64::from_polar(1.0, self.beta) * self.alpha.sin()
    }

    /// Normalized profile phi(u) using the closed-form C.
    pub fn profile(&self) -> Result<impl Fn(f64) -> Complex64 + Sync + '_> {
        let c = self.normalization_constant()?;
        Ok(move |u: f64| c * self.unnormalized_value(u))
    }

    /// Samples phi on the (L, N) grid with the closed-form C. Fails when the
    /// grid is too coarse or too narrow to hold the state at the discrete-norm
    /// tolerance.
    pub fn sample(&self, half_width: f64, half_count: usize) -> Result<RescaledState> {
        let c = self.normalization_constant()?;
        let h = half_width / half_count as f64;
        let samples: Vec<Complex64> = (0..2 * half_count + 1)
            .map(|i| {
                let u = (i as f64 - half_count as f64) * h;
                c * self.unnormalized_value(u)
            })
            .collect();
        RescaledState::new(samples, half_width, half_count)
    }
}

/// phi(u) = C cos(alpha) (beta1 - u) e^{-gamma1^2 u^2} on u > 0 and
/// C sin(alpha) (beta2 - u) e^{-gamma2^2 u^2} on u < 0, with C fixed
/// numerically. The u = 0 sample takes the u > 0 branch value so that sampled
/// grids are deterministic.
#[derive(Debug, Clone, Copy)]
pub struct PiecewiseAnsatz {
    pub alpha: f64,
    pub beta1: f64,
    pub gamma1: f64,
    pub beta2: f64,
    pub gamma2: f64,
}

impl PiecewiseAnsatz {
    pub fn new(alpha: f64, beta1: f64, gamma1: f64, beta2: f64, gamma2: f64) -> Result<Self> {
        if gamma1 == 0.0 || gamma2 == 0.0 {
            return Err(Error::invalid(
                "gamma1 and gamma2 must be nonzero for a normalizable profile",
            ));
        }
        Ok(Self {
            alpha,
            beta1,
            gamma1,
            beta2,
            gamma2,
        })
    }

    pub fn unnormalized_value(&self, u: f64) -> f64 {
        if u >= 0.0 {
            self.alpha.cos() * (self.beta1 - u) * (-self.gamma1 * self.gamma1 * u * u).exp()
        } else {
            self.alpha.sin() * (self.beta2 - u) * (-self.gamma2 * self.gamma2 * u * u).exp()
        }
    }

    /// Normalization constant for continuum work, from split Gauss-Legendre
    /// quadrature on (-L, 0) and (0, L).
    pub fn normalization_on(&self, half_width: f64, nodes_per_half: usize) -> Result<f64> {
        let mut norm2 = 0.0;
        for (lo, hi) in [(-half_width, 0.0), (0.0, half_width)] {
            let (x, w) = gauss_legendre(lo, hi, nodes_per_half);
            norm2 += x
                .iter()
                .zip(&w)
                .map(|(&u, &w)| {
                    let v = self.unnormalized_value(u);
                    w * v * v
                })
                .sum::<f64>();
        }
        if !(norm2 > 0.0) || !norm2.is_finite() {
            return Err(Error::Norm(format!("profile norm^2 = {norm2}")));
        }
        Ok(1.0 / norm2.sqrt())
    }

    /// Normalized profile for Gauss-Legendre evaluation of the functional.
    pub fn profile(
        &self,
        half_width: f64,
        nodes_per_half: usize,
    ) -> Result<impl Fn(f64) -> Complex64 + Sync + '_> {
        let c = self.normalization_on(half_width, nodes_per_half)?;
        Ok(move |u: f64| Complex64::new(c * self.unnormalized_value(u), 0.0))
    }

    /// Samples phi on the (L, N) grid, normalizing by the discrete norm.
    pub fn sample(&self, half_width: f64, half_count: usize) -> Result<RescaledState> {
        let h = half_width / half_count as f64;
        let samples: Vec<Complex64> = (0..2 * half_count + 1)
            .map(|i| {
                let u = (i as f64 - half_count as f64) * h;
                Complex64::new(self.unnormalized_value(u), 0.0)
            })
            .collect();
        RescaledState::from_unnormalized(samples, half_width, half_count)
    }
}
