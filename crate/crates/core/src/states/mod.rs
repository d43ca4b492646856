//! Wave-function representations: physical momentum/position states sampled on
//! uniform grids, the dimensionless rescaled state the functional acts on, and
//! half-line states for the positive-momentum problem.

pub mod ansatz;
pub mod rescale;

use crate::error::{Error, Result};
use crate::numeric::{csum, simpson_sampled};
use num_complex::Complex64;

/// Uniform sampling grid `start + i*step`, `i = 0..len`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformGrid {
    start: f64,
    step: f64,
    len: usize,
}

impl UniformGrid {
    pub fn new(start: f64, step: f64, len: usize) -> Result<Self> {
        if !(step > 0.0) || !step.is_finite() || !start.is_finite() {
            return Err(Error::invalid("grid must be finite with positive step"));
        }
        if len < 2 {
            return Err(Error::invalid("grid needs at least two points"));
        }
        Ok(Self { start, step, len })
    }

    pub fn from_span(min: f64, max: f64, len: usize) -> Result<Self> {
        if !(max > min) {
            return Err(Error::invalid("grid span must be increasing"));
        }
        Self::new(min, (max - min) / (len - 1) as f64, len)
    }

    pub fn start(&self) -> f64 {
        self.start
    }
    pub fn step(&self) -> f64 {
        self.step
    }
    pub fn len(&self) -> usize {
        self.len
    }
    pub fn is_empty(&self) -> bool {
        false
    }
    pub fn end(&self) -> f64 {
        self.point(self.len - 1)
    }
    #[inline]
    pub fn point(&self, i: usize) -> f64 {
        self.start + self.step * i as f64
    }
    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len).map(|i| self.point(i))
    }
}

/// Momentum-space wave function sampled on a uniform grid, with the physical
/// constants needed to evolve it. Normalized on construction.
#[derive(Debug, Clone)]
pub struct PhysicalMomentumState {
    samples: Vec<Complex64>,
    grid: UniformGrid,
    hbar: f64,
    mass: f64,
}

/// Position-space wave function sampled on a uniform grid. Normalized on
/// construction.
#[derive(Debug, Clone)]
pub struct PhysicalPositionState {
    samples: Vec<Complex64>,
    grid: UniformGrid,
    hbar: f64,
    mass: f64,
}

fn normalize_sampled(samples: &mut [Complex64], grid: &UniformGrid) -> Result<f64> {
    let density: Vec<f64> = samples.iter().map(|z| z.norm_sqr()).collect();
    let norm2 = simpson_sampled(&density, grid.step());
    if !(norm2 > 0.0) || !norm2.is_finite() {
        return Err(Error::Norm(format!("state norm^2 = {norm2} is not usable")));
    }
    let scale = 1.0 / norm2.sqrt();
    for z in samples.iter_mut() {
        *z *= scale;
    }
    Ok(norm2)
}

macro_rules! physical_state_impl {
    ($ty:ident, $coord:literal) => {
        impl $ty {
            /// Builds the state and rescales it to unit quadrature norm.
            pub fn new(
                samples: Vec<Complex64>,
                grid: UniformGrid,
                hbar: f64,
                mass: f64,
            ) -> Result<Self> {
                if samples.len() != grid.len() {
                    return Err(Error::invalid(format!(
                        "{} samples on a grid of {} points",
                        samples.len(),
                        grid.len()
                    )));
                }
                if !(hbar > 0.0) || !(mass > 0.0) {
                    return Err(Error::invalid("hbar and mass must be positive"));
                }
                let mut samples = samples;
                normalize_sampled(&mut samples, &grid)?;
                Ok(Self {
                    samples,
                    grid,
                    hbar,
                    mass,
                })
            }

            pub fn samples(&self) -> &[Complex64] {
                &self.samples
            }
            pub fn grid(&self) -> &UniformGrid {
                &self.grid
            }
            pub fn hbar(&self) -> f64 {
                self.hbar
            }
            pub fn mass(&self) -> f64 {
                self.mass
            }

            /// Quadrature norm of the stored samples; unity up to the Simpson
            /// rule error by construction.
            pub fn quadrature_norm(&self) -> f64 {
                let density: Vec<f64> = self.samples.iter().map(|z| z.norm_sqr()).collect();
                simpson_sampled(&density, self.grid.step()).sqrt()
            }
        }
    };
}

physical_state_impl!(PhysicalMomentumState, "p");
physical_state_impl!(PhysicalPositionState, "x");

/// Tolerance on the discrete norm of a [`RescaledState`].
pub const RESCALED_NORM_TOL: f64 = 1e-8;

/// Dimensionless rescaled wave function phi(u) on the symmetric uniform grid
/// `u_i = i*L/N`, `i = -N..N`. This is the universal input to the backflow
/// functional; its discrete norm `sum |phi_i|^2 * (L/N)` is unity within
/// [`RESCALED_NORM_TOL`].
#[derive(Debug, Clone)]
pub struct RescaledState {
    samples: Vec<Complex64>,
    half_width: f64,
    half_count: usize,
}

impl RescaledState {
    pub fn new(samples: Vec<Complex64>, half_width: f64, half_count: usize) -> Result<Self> {
        if !(half_width > 0.0) || half_count < 1 {
            return Err(Error::invalid("need L > 0 and N >= 1"));
        }
        if samples.len() != 2 * half_count + 1 {
            return Err(Error::invalid(format!(
                "expected {} samples for N = {}, got {}",
                2 * half_count + 1,
                half_count,
                samples.len()
            )));
        }
        let state = Self {
            samples,
            half_width,
            half_count,
        };
        let norm = state.discrete_norm();
        if (norm - 1.0).abs() > RESCALED_NORM_TOL {
            return Err(Error::Norm(format!(
                "discrete norm {norm} deviates from 1 by more than {RESCALED_NORM_TOL}"
            )));
        }
        Ok(state)
    }

    /// Builds the state from unnormalized samples by dividing out the discrete
    /// norm. Errors only when the samples carry no probability at all.
    pub fn from_unnormalized(
        mut samples: Vec<Complex64>,
        half_width: f64,
        half_count: usize,
    ) -> Result<Self> {
        if !(half_width > 0.0) || half_count < 1 {
            return Err(Error::invalid("need L > 0 and N >= 1"));
        }
        if samples.len() != 2 * half_count + 1 {
            return Err(Error::invalid("sample count does not match grid"));
        }
        let h = half_width / half_count as f64;
        let norm2 = csum(samples.iter().map(|z| z.norm_sqr())) * h;
        if !(norm2 > 0.0) || !norm2.is_finite() {
            return Err(Error::Norm(format!("norm^2 = {norm2} is not usable")));
        }
        let scale = 1.0 / norm2.sqrt();
        for z in samples.iter_mut() {
            *z *= scale;
        }
        Self::new(samples, half_width, half_count)
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }
    /// Half-width L of the truncated domain (-L, L).
    pub fn half_width(&self) -> f64 {
        self.half_width
    }
    /// Half grid count N; the grid has 2N + 1 points.
    pub fn half_count(&self) -> usize {
        self.half_count
    }
    /// Grid spacing L/N, also the quadrature weight of every node.
    pub fn step(&self) -> f64 {
        self.half_width / self.half_count as f64
    }
    /// Grid point for sample index `i` in `0..2N+1` (u = (i - N) * L/N).
    #[inline]
    pub fn u(&self, i: usize) -> f64 {
        (i as f64 - self.half_count as f64) * self.step()
    }
    /// Index of the u = 0 node.
    pub fn origin_index(&self) -> usize {
        self.half_count
    }

    /// Discrete L2 norm `sqrt(sum |phi_i|^2 h)`.
    pub fn discrete_norm(&self) -> f64 {
        (csum(self.samples.iter().map(|z| z.norm_sqr())) * self.step()).sqrt()
    }

    /// Probability weight carried by the negative-u nodes, with the origin
    /// node counted at half weight (midpoint sampling of the step function).
    pub fn negative_axis_weight(&self) -> f64 {
        let h = self.step();
        let mut acc = csum(
            self.samples[..self.half_count]
                .iter()
                .map(|z| z.norm_sqr()),
        );
        acc += 0.5 * self.samples[self.half_count].norm_sqr();
        acc * h
    }

    /// State multiplied by a global phase.
    pub fn with_phase(&self, theta: f64) -> Self {
        let rot = Complex64::from_polar(1.0, theta);
        Self {
            samples: self.samples.iter().map(|z| z * rot).collect(),
            ..*self
        }
    }

    /// Every-other-sample coarsening, used for quadrature error estimates.
    /// Returns `None` when the grid is too small to coarsen.
    pub fn coarsened(&self) -> Option<Self> {
        let n = self.half_count;
        if n < 4 {
            return None;
        }
        let (offset, new_n, new_l) = if n % 2 == 0 {
            (0usize, n / 2, self.half_width)
        } else {
            // drop the outermost points; spacing doubles, L shrinks by one step
            (1usize, (n - 1) / 2, self.half_width - self.step())
        };
        let samples: Vec<Complex64> = (0..2 * new_n + 1)
            .map(|k| self.samples[offset + 2 * k])
            .collect();
        Self::from_unnormalized(samples, new_l, new_n).ok()
    }

    /// Ratio of the jump across u = 0 (straddling difference |phi(+h) - phi(-h)|)
    /// to the mean adjacent-sample difference on u > 0. Smooth states give
    /// values near 2; a genuine discontinuity at the origin gives much more.
    pub fn origin_jump_ratio(&self) -> f64 {
        let n = self.half_count;
        if n < 2 {
            return f64::NAN;
        }
        let jump = (self.samples[n + 1] - self.samples[n - 1]).norm();
        let mut acc = 0.0;
        for i in n + 1..2 * n {
            acc += (self.samples[i + 1] - self.samples[i]).norm();
        }
        let mean = acc / (n - 1) as f64;
        jump / mean
    }
}

/// Real state supported on the half-line grid `u_i = i*L/N`, `i = 1..=N`,
/// with unit discrete norm. Used by the positive-momentum problem and the
/// perturbative construction built on top of it.
#[derive(Debug, Clone)]
pub struct HalfLineState {
    samples: Vec<f64>,
    half_width: f64,
    count: usize,
}

impl HalfLineState {
    pub fn new(samples: Vec<f64>, half_width: f64) -> Result<Self> {
        let count = samples.len();
        if !(half_width > 0.0) || count < 1 {
            return Err(Error::invalid("need L > 0 and at least one sample"));
        }
        let h = half_width / count as f64;
        let norm2 = csum(samples.iter().map(|s| s * s)) * h;
        if (norm2.sqrt() - 1.0).abs() > RESCALED_NORM_TOL {
            return Err(Error::Norm(format!(
                "half-line state norm {} deviates from 1",
                norm2.sqrt()
            )));
        }
        Ok(Self {
            samples,
            half_width,
            count,
        })
    }

    pub fn from_unnormalized(mut samples: Vec<f64>, half_width: f64) -> Result<Self> {
        let count = samples.len();
        if !(half_width > 0.0) || count < 1 {
            return Err(Error::invalid("need L > 0 and at least one sample"));
        }
        let h = half_width / count as f64;
        let norm2 = csum(samples.iter().map(|s| s * s)) * h;
        if !(norm2 > 0.0) || !norm2.is_finite() {
            return Err(Error::Norm("half-line state carries no weight".into()));
        }
        let scale = 1.0 / norm2.sqrt();
        for s in &mut samples {
            *s *= scale;
        }
        Ok(Self {
            samples,
            half_width,
            count,
        })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }
    pub fn half_width(&self) -> f64 {
        self.half_width
    }
    pub fn count(&self) -> usize {
        self.count
    }
    pub fn step(&self) -> f64 {
        self.half_width / self.count as f64
    }
    #[inline]
    pub fn u(&self, i: usize) -> f64 {
        (i as f64 + 1.0) * self.step()
    }
}

/// Measurement times for backflow (t1 < t2) or reentry (t0 < t1 < t2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeWindow {
    t0: Option<f64>,
    t1: f64,
    t2: f64,
}

impl TimeWindow {
    /// Window for the backflow problem; only the interval (t1, t2) matters.
    pub fn backflow(t1: f64, t2: f64) -> Result<Self> {
        if !(t2 > t1) || !t1.is_finite() || !t2.is_finite() {
            return Err(Error::invalid(format!("need t1 < t2, got ({t1}, {t2})")));
        }
        Ok(Self { t0: None, t1, t2 })
    }

    /// Window for the reentry problem; requires t0 < t1 < t2.
    pub fn reentry(t0: f64, t1: f64, t2: f64) -> Result<Self> {
        if !(t0 < t1 && t1 < t2) || !t0.is_finite() || !t2.is_finite() {
            return Err(Error::invalid(format!(
                "need t0 < t1 < t2, got ({t0}, {t1}, {t2})"
            )));
        }
        Ok(Self {
            t0: Some(t0),
            t1,
            t2,
        })
    }

    pub fn t0(&self) -> Option<f64> {
        self.t0
    }
    pub fn t1(&self) -> f64 {
        self.t1
    }
    pub fn t2(&self) -> f64 {
        self.t2
    }
    /// Duration T = t2 - t1.
    pub fn duration(&self) -> f64 {
        self.t2 - self.t1
    }
    /// Elapsed times (tau1, tau2) = (t1 - t0, t2 - t0); requires a reentry window.
    pub fn elapsed(&self) -> Result<(f64, f64)> {
        let t0 = self
            .t0
            .ok_or_else(|| Error::invalid("window has no reference time t0"))?;
        Ok((self.t1 - t0, self.t2 - t0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn unit_gaussian_rescaled(l: f64, n: usize) -> RescaledState {
        let h = l / n as f64;
        let samples: Vec<Complex64> = (0..2 * n + 1)
            .map(|i| {
                let u = (i as f64 - n as f64) * h;
                Complex64::new((-u * u / 2.0).exp(), 0.0)
            })
            .collect();
        RescaledState::from_unnormalized(samples, l, n).unwrap()
    }

    #[test]
    fn rescaled_state_rejects_bad_norm() {
        let n = 10;
        let samples = vec![Complex64::new(1.0, 0.0); 2 * n + 1];
        assert!(RescaledState::new(samples, 1.0, n).is_err());
    }

    #[test]
    fn rescaled_state_grid_layout() {
        let st = unit_gaussian_rescaled(5.0, 100);
        assert_eq!(st.u(0), -5.0);
        assert_eq!(st.u(st.origin_index()), 0.0);
        assert_relative_eq!(st.u(2 * 100), 5.0, epsilon = 1e-12);
        assert_relative_eq!(st.discrete_norm(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn negative_axis_weight_of_even_state_is_half() {
        let st = unit_gaussian_rescaled(12.0, 400);
        // |phi|^2 even: half the weight sits at u < 0 (origin counted half)
        assert_relative_eq!(st.negative_axis_weight(), 0.5, epsilon = 1e-9);
    }

    #[test]
    fn coarsening_preserves_shape_even_and_odd() {
        for n in [400usize, 401] {
            let st = unit_gaussian_rescaled(10.0, n);
            let c = st.coarsened().unwrap();
            assert_relative_eq!(c.discrete_norm(), 1.0, epsilon = 1e-10);
            assert!((c.negative_axis_weight() - 0.5).abs() < 1e-6);
        }
    }

    #[test]
    fn smooth_state_has_small_jump_ratio() {
        let st = unit_gaussian_rescaled(10.0, 500);
        assert!(st.origin_jump_ratio() < 5.0);
    }

    #[test]
    fn time_window_validation() {
        assert!(TimeWindow::backflow(1.0, 1.0).is_err());
        assert!(TimeWindow::reentry(0.5, 0.2, 1.0).is_err());
        let w = TimeWindow::reentry(0.0, 1.0, 2.0).unwrap();
        assert_eq!(w.elapsed().unwrap(), (1.0, 2.0));
        assert_eq!(w.duration(), 1.0);
    }

    #[test]
    fn physical_state_normalizes_on_construction() {
        let grid = UniformGrid::from_span(-8.0, 8.0, 2001).unwrap();
        let samples: Vec<Complex64> = grid
            .points()
            .map(|p| Complex64::new(3.7 * (-(p - 1.0) * (p - 1.0)).exp(), 0.0))
            .collect();
        let st = PhysicalMomentumState::new(samples, grid, 1.0, 1.0).unwrap();
        assert_relative_eq!(st.quadrature_norm(), 1.0, epsilon = 1e-10);
    }
}
