//! Dense discretization of the backflow kernel
//! `K(u,u') = -(u+u') sinc(u^2-u'^2)/pi - Theta(-u) delta(u-u')`
//! on the symmetric grid `u_n = n L/N`, and of its half-line restriction
//! (no delta term) on `u_n = n L/N`, `n = 1..N`.

use crate::error::{Error, Result};
use crate::numeric::sinc;
use rayon::prelude::*;

/// Which discretized operator a matrix represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelKind {
    /// Full-line kernel with the negative-axis delta term; dimension 2N + 1.
    FullLine,
    /// Half-line (positive-momentum) kernel; dimension N.
    HalfLine,
}

/// Dense real symmetric kernel matrix.
///
/// Diagonal entries on the negative axis include the -1 delta contribution;
/// the origin node carries -1/2, the midpoint value of the step function,
/// which is the convention that makes the discrete eigenvalues match the
/// tabulated reference data.
#[derive(Debug, Clone)]
pub struct KernelMatrix {
    data: Vec<f64>,
    dim: usize,
    half_width: f64,
    half_count: usize,
    kind: KernelKind,
}

fn flow_entry(l: f64, n: usize, a: i64, b: i64) -> f64 {
    let nn = n as f64;
    let arg = l * l * ((a * a - b * b).abs() as f64) / (nn * nn);
    -(l * l * (a + b) as f64) / (std::f64::consts::PI * nn * nn) * sinc(arg)
}

/// Builds the full-line kernel matrix for half-width `l` and half-count `n`;
/// the matrix has dimension 2n + 1 with rows indexed by `a = i - n`.
pub fn build_kernel(l: f64, n: usize) -> Result<KernelMatrix> {
    if !(l > 0.0) || n < 1 {
        return Err(Error::invalid("need L > 0 and N >= 1"));
    }
    let dim = 2 * n + 1;
    let mut data = vec![0.0f64; dim * dim];
    data.par_chunks_mut(dim).enumerate().for_each(|(i, row)| {
        let a = i as i64 - n as i64;
        for (j, slot) in row.iter_mut().enumerate() {
            let b = j as i64 - n as i64;
            let mut v = flow_entry(l, n, a, b);
            if i == j {
                if a < 0 {
                    v -= 1.0;
                } else if a == 0 {
                    v -= 0.5;
                }
            }
            *slot = v;
        }
    });
    Ok(KernelMatrix {
        data,
        dim,
        half_width: l,
        half_count: n,
        kind: KernelKind::FullLine,
    })
}

/// Builds the half-line kernel matrix (dimension `n`, rows indexed by
/// `a = i + 1`); no delta term.
pub fn build_bm_kernel(l: f64, n: usize) -> Result<KernelMatrix> {
    if !(l > 0.0) || n < 1 {
        return Err(Error::invalid("need L > 0 and N >= 1"));
    }
    let dim = n;
    let mut data = vec![0.0f64; dim * dim];
    data.par_chunks_mut(dim).enumerate().for_each(|(i, row)| {
        let a = i as i64 + 1;
        for (j, slot) in row.iter_mut().enumerate() {
            let b = j as i64 + 1;
            *slot = flow_entry(l, n, a, b);
        }
    });
    Ok(KernelMatrix {
        data,
        dim,
        half_width: l,
        half_count: n,
        kind: KernelKind::HalfLine,
    })
}

impl KernelMatrix {
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn half_width(&self) -> f64 {
        self.half_width
    }
    pub fn half_count(&self) -> usize {
        self.half_count
    }
    pub fn kind(&self) -> KernelKind {
        self.kind
    }
    /// Grid spacing L/N.
    pub fn step(&self) -> f64 {
        self.half_width / self.half_count as f64
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    /// Grid coordinate of row/column `i`.
    pub fn node(&self, i: usize) -> f64 {
        match self.kind {
            KernelKind::FullLine => (i as f64 - self.half_count as f64) * self.step(),
            KernelKind::HalfLine => (i as f64 + 1.0) * self.step(),
        }
    }

    /// y = K x.
    pub fn matvec(&self, x: &[f64], y: &mut [f64]) {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        y.par_iter_mut().enumerate().for_each(|(i, out)| {
            let row = &self.data[i * self.dim..(i + 1) * self.dim];
            let mut acc = 0.0;
            for (a, b) in row.iter().zip(x.iter()) {
                acc += a * b;
            }
            *out = acc;
        });
    }

    /// x^T K x for a unit or general vector.
    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        let mut y = vec![0.0; self.dim];
        self.matvec(x, &mut y);
        x.iter().zip(&y).map(|(a, b)| a * b).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn full_line_matrix_is_exactly_symmetric() {
        let k = build_kernel(7.3, 40).unwrap();
        for i in 0..k.dim() {
            for j in 0..i {
                assert_eq!(k.entry(i, j).to_bits(), k.entry(j, i).to_bits());
            }
        }
    }

    #[test]
    fn diagonal_carries_the_delta_term() {
        // L = 10, N = 100: at n = m = -1 the entry is 200/(pi 1e4) - 1
        let k = build_kernel(10.0, 100).unwrap();
        let i = 99; // a = -1
        assert_relative_eq!(
            k.entry(i, i),
            200.0 / (std::f64::consts::PI * 1e4) - 1.0,
            max_relative = 1e-15
        );
        // origin node: flow part vanishes (a + b = 0), step function counts 1/2
        assert_relative_eq!(k.entry(100, 100), -0.5, max_relative = 1e-15);
        // positive axis: no delta
        assert_relative_eq!(
            k.entry(101, 101),
            -200.0 / (std::f64::consts::PI * 1e4),
            max_relative = 1e-15
        );
    }

    #[test]
    fn half_line_matrix_entry_and_symmetry() {
        let k = build_bm_kernel(10.0, 100).unwrap();
        // n = m = 1: -2 * 100 / (pi 1e4)
        assert_relative_eq!(
            k.entry(0, 0),
            -200.0 / (std::f64::consts::PI * 1e4),
            max_relative = 1e-15
        );
        for i in 0..k.dim() {
            for j in 0..i {
                assert_eq!(k.entry(i, j).to_bits(), k.entry(j, i).to_bits());
            }
        }
    }

    #[test]
    fn node_coordinates() {
        let k = build_kernel(10.0, 100).unwrap();
        assert_relative_eq!(k.node(0), -10.0);
        assert_relative_eq!(k.node(100), 0.0);
        assert_relative_eq!(k.node(200), 10.0);
        let b = build_bm_kernel(10.0, 100).unwrap();
        assert_relative_eq!(b.node(0), 0.1);
        assert_relative_eq!(b.node(99), 10.0);
    }

    #[test]
    fn matvec_matches_manual_product() {
        let k = build_kernel(3.0, 5).unwrap();
        let x: Vec<f64> = (0..k.dim()).map(|i| (i as f64 * 0.37).sin()).collect();
        let mut y = vec![0.0; k.dim()];
        k.matvec(&x, &mut y);
        for i in 0..k.dim() {
            let manual: f64 = (0..k.dim()).map(|j| k.entry(i, j) * x[j]).sum();
            assert_relative_eq!(y[i], manual, max_relative = 1e-14);
        }
    }
}
