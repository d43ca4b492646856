//! Rescaling transforms taking a physical wave function and a measurement
//! window to the dimensionless state phi(u) the functional acts on.
//!
//! Backflow absorbs (hbar, m, T = t2 - t1) through
//!     phi(u) = (4 hbar m / T)^{1/4} e^{-i (t2+t1)/T u^2} psi_tilde(u sqrt(4 hbar m / T)),
//! reentry absorbs the three times through omega = (tau2 - tau1)/(tau2 tau1),
//!     phi(u) = (4 hbar /(m omega))^{1/4} e^{+i (tau2+tau1)/(tau2-tau1) u^2} psi(-u sqrt(4 hbar/(m omega))).
//! Off-grid arguments of the physical samples are cubic-spline interpolated;
//! anything outside the sampled support counts as zero and shows up as lost
//! norm in the outcome.

use crate::error::{Error, Result};
use crate::numeric::interp::ComplexSpline;
use crate::states::{PhysicalMomentumState, PhysicalPositionState, RescaledState, TimeWindow};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Warnings attached to a rescaling outcome.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum RescaleWarning {
    /// More than 1% of the probability fell outside the (L, N) grid.
    NormLoss { lost: f64 },
}

/// Result of sampling a rescaled state on the (L, N) grid. The state itself is
/// renormalized to unit discrete norm; `captured_norm` records how much
/// probability the grid actually held before renormalization.
#[derive(Debug, Clone)]
pub struct RescaleOutcome {
    pub state: RescaledState,
    pub captured_norm: f64,
    pub warnings: Vec<RescaleWarning>,
}

/// Continuously evaluable rescaled wave function.
#[derive(Debug, Clone)]
pub struct RescaleProfile {
    spline: ComplexSpline,
    /// Argument scaling of the physical wave function.
    scale: f64,
    /// Coefficient of u^2 in the phase factor (sign included).
    chirp: f64,
    /// (scale)^{1/2}, keeping the transform unitary.
    prefactor: f64,
    /// -1 for the reentry transform (x = -u * scale), +1 for backflow.
    argument_sign: f64,
}

impl RescaleProfile {
    /// Backflow rescaling of a momentum-space state over (t1, t2).
    pub fn backflow(state: &PhysicalMomentumState, window: &TimeWindow) -> Result<Self> {
        let t = window.duration();
        if !(t > 0.0) {
            return Err(Error::invalid("degenerate window: t2 <= t1"));
        }
        let scale = (4.0 * state.hbar() * state.mass() / t).sqrt();
        Ok(Self {
            spline: ComplexSpline::new(state.grid().start(), state.grid().step(), state.samples()),
            scale,
            chirp: -(window.t2() + window.t1()) / t,
            prefactor: scale.sqrt(),
            argument_sign: 1.0,
        })
    }

    /// Reentry rescaling of a position-space state over (t0, t1, t2).
    pub fn reentry(state: &PhysicalPositionState, window: &TimeWindow) -> Result<Self> {
        let (tau1, tau2) = window.elapsed()?;
        let omega = (tau2 - tau1) / (tau2 * tau1);
        let scale = (4.0 * state.hbar() / (state.mass() * omega)).sqrt();
        Ok(Self {
            spline: ComplexSpline::new(state.grid().start(), state.grid().step(), state.samples()),
            scale,
            chirp: (tau2 + tau1) / (tau2 - tau1),
            prefactor: scale.sqrt(),
            argument_sign: -1.0,
        })
    }

    /// phi(u); zero where the physical samples end.
    #[inline]
    pub fn value(&self, u: f64) -> Complex64 {
        let base = self.spline.eval(self.argument_sign * self.scale * u);
        if base == Complex64::new(0.0, 0.0) {
            return base;
        }
        self.prefactor * Complex64::from_polar(1.0, self.chirp * u * u) * base
    }

    /// Argument scaling factor sqrt(4 hbar m / T) (or its reentry analogue).
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Chirp coefficient, sign included.
    pub fn chirp(&self) -> f64 {
        self.chirp
    }

    /// Samples the profile on the symmetric (L, N) grid and renormalizes.
    pub fn sample(&self, half_width: f64, half_count: usize) -> Result<RescaleOutcome> {
        if !(half_width > 0.0) || half_count < 1 {
            return Err(Error::invalid("need L > 0 and N >= 1"));
        }
        let h = half_width / half_count as f64;
        let raw: Vec<Complex64> = (0..2 * half_count + 1)
            .map(|i| self.value((i as f64 - half_count as f64) * h))
            .collect();
        let captured: f64 = raw.iter().map(|z| z.norm_sqr()).sum::<f64>() * h;
        if !(captured > 0.0) {
            return Err(Error::Norm(
                "rescaled state has no support on the chosen grid".into(),
            ));
        }
        let mut warnings = Vec::new();
        let captured_norm = captured.sqrt();
        if captured < 0.99 {
            warnings.push(RescaleWarning::NormLoss {
                lost: 1.0 - captured,
            });
        }
        let state = RescaledState::from_unnormalized(raw, half_width, half_count)?;
        Ok(RescaleOutcome {
            state,
            captured_norm,
            warnings,
        })
    }
}

/// Backflow rescaling sampled on the (L, N) grid.
pub fn rescale_backflow(
    state: &PhysicalMomentumState,
    window: &TimeWindow,
    half_width: f64,
    half_count: usize,
) -> Result<RescaleOutcome> {
    RescaleProfile::backflow(state, window)?.sample(half_width, half_count)
}

/// Reentry rescaling sampled on the (L, N) grid.
pub fn rescale_reentry(
    state: &PhysicalPositionState,
    window: &TimeWindow,
    half_width: f64,
    half_count: usize,
) -> Result<RescaleOutcome> {
    RescaleProfile::reentry(state, window)?.sample(half_width, half_count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::UniformGrid;
    use approx::assert_relative_eq;

    fn gaussian_momentum_state(center: f64, sigma_p: f64, span: f64, n: usize) -> PhysicalMomentumState {
        let grid = UniformGrid::from_span(center - span, center + span, n).unwrap();
        let samples: Vec<Complex64> = grid
            .points()
            .map(|p| {
                Complex64::new(
                    (-(p - center) * (p - center) / (4.0 * sigma_p * sigma_p)).exp(),
                    0.0,
                )
            })
            .collect();
        PhysicalMomentumState::new(samples, grid, 1.0, 1.0).unwrap()
    }

    #[test]
    fn unit_window_gives_expected_scale_and_chirp() {
        // hbar = m = 1, (t1, t2) = (0, 1): phi(u) = 4^{1/4} e^{-i u^2} psi(2u)
        let st = gaussian_momentum_state(1.0, 0.25, 4.0, 4001);
        let w = TimeWindow::backflow(0.0, 1.0).unwrap();
        let prof = RescaleProfile::backflow(&st, &w).unwrap();
        assert_relative_eq!(prof.scale(), 2.0, epsilon = 1e-14);
        assert_relative_eq!(prof.chirp(), -1.0, epsilon = 1e-14);
        // pick u so that 2u lands exactly on a grid node (start -3, step 0.002)
        let u = 0.877;
        let grid = st.grid();
        let idx = ((2.0 * u - grid.start()) / grid.step()).round() as usize;
        assert_relative_eq!(grid.point(idx), 2.0 * u, epsilon = 1e-12);
        let v = prof.value(u);
        assert_relative_eq!(v.arg(), -u * u, epsilon = 1e-9);
        assert_relative_eq!(
            v.norm(),
            2.0f64.sqrt() * st.samples()[idx].norm(),
            max_relative = 1e-9
        );
    }

    #[test]
    fn norm_is_preserved_up_to_truncation() {
        let st = gaussian_momentum_state(1.0, 0.2, 3.0, 3001);
        let w = TimeWindow::backflow(0.0, 1.0).unwrap();
        let out = rescale_backflow(&st, &w, 10.0, 2000).unwrap();
        assert!((out.captured_norm - 1.0).abs() < 1e-8);
        assert!(out.warnings.is_empty());
        assert_relative_eq!(out.state.discrete_norm(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn gross_truncation_is_flagged() {
        let st = gaussian_momentum_state(1.0, 0.2, 3.0, 3001);
        let w = TimeWindow::backflow(0.0, 1.0).unwrap();
        // the state lives at u ~ p/scale = 0.5; an L = 0.2 grid cuts most of it
        let out = rescale_backflow(&st, &w, 0.2, 50).unwrap();
        assert!(matches!(
            out.warnings.first(),
            Some(RescaleWarning::NormLoss { .. })
        ));
    }

    #[test]
    fn reentry_parameters_for_the_simple_window() {
        // t0 = 0, t1 = 1, t2 = 2: omega = 1/2, scale = sqrt(8)
        let grid = UniformGrid::from_span(-12.0, 12.0, 4001).unwrap();
        let samples: Vec<Complex64> = grid
            .points()
            .map(|x| Complex64::new((-x * x / 4.0).exp(), 0.0))
            .collect();
        let st = PhysicalPositionState::new(samples, grid, 1.0, 1.0).unwrap();
        let w = TimeWindow::reentry(0.0, 1.0, 2.0).unwrap();
        let prof = RescaleProfile::reentry(&st, &w).unwrap();
        assert_relative_eq!(prof.scale(), 8.0f64.sqrt(), epsilon = 1e-14);
        assert_relative_eq!(prof.chirp(), 3.0, epsilon = 1e-14);
    }

    #[test]
    fn real_even_position_state_gives_even_profile_magnitude() {
        let grid = UniformGrid::from_span(-14.0, 14.0, 4001).unwrap();
        let samples: Vec<Complex64> = grid
            .points()
            .map(|x| Complex64::new((-x * x / 6.0).exp() * (1.0 + 0.2 * (x * x / 9.0).cos()), 0.0))
            .collect();
        let st = PhysicalPositionState::new(samples, grid, 1.0, 1.0).unwrap();
        let w = TimeWindow::reentry(0.0, 0.7, 1.9).unwrap();
        let prof = RescaleProfile::reentry(&st, &w).unwrap();
        for &u in &[0.13, 0.77, 1.9] {
            assert_relative_eq!(prof.value(u).norm(), prof.value(-u).norm(), epsilon = 1e-10);
        }
    }

    #[test]
    fn backflow_requires_forward_window() {
        assert!(TimeWindow::backflow(1.0, 0.5).is_err());
    }
}
