//! Ricci components of invariant metrics, the positive-Ricci region and the
//! first integral of the flow.

use serde::Serialize;

use crate::catalog::SpaceParams;
use crate::error::{Error, Result};

/// A point counts as outside the positive region once `min r_i` drops to this.
pub const BOUNDARY_TOL: f64 = 1e-12;

/// Relative closeness at which two metric components count as equal.
pub const GENERICITY_TOL: f64 = 1e-9;

/// Invariant metric `x1 <.,.>|p1 + x2 <.,.>|p2 + x3 <.,.>|p3`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MetricPoint {
    x: [f64; 3],
}

impl MetricPoint {
    pub fn new(x1: f64, x2: f64, x3: f64) -> Result<Self> {
        Self::from_array([x1, x2, x3])
    }

    pub fn from_array(x: [f64; 3]) -> Result<Self> {
        for (i, &v) in x.iter().enumerate() {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidMetric { index: i + 1, value: v });
            }
        }
        Ok(Self { x })
    }

    pub fn as_array(&self) -> [f64; 3] {
        self.x
    }

    pub fn x1(&self) -> f64 {
        self.x[0]
    }

    pub fn x2(&self) -> f64 {
        self.x[1]
    }

    pub fn x3(&self) -> f64 {
        self.x[2]
    }

    /// `lambda * x`; `lambda` must be positive.
    pub fn scaled(&self, lambda: f64) -> Self {
        debug_assert!(lambda > 0.0);
        Self {
            x: self.x.map(|v| v * lambda),
        }
    }

    /// Pairwise distinct components, up to [`GENERICITY_TOL`] relative to the
    /// largest one. Non-generic (exceptional) metrics move along invariant
    /// curves.
    pub fn is_generic(&self) -> bool {
        let scale = self.x.iter().cloned().fold(0.0, f64::max);
        let tol = GENERICITY_TOL * scale;
        (0..3).all(|i| (self.x[i] - self.x[(i + 1) % 3]).abs() > tol)
    }

    pub fn permuted(&self, perm: [usize; 3]) -> Self {
        Self {
            x: [self.x[perm[0]], self.x[perm[1]], self.x[perm[2]]],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RicciComponents {
    pub r: [f64; 3],
}

impl RicciComponents {
    pub fn min(&self) -> f64 {
        self.r.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    /// Index (0-based) of the smallest component.
    pub fn argmin(&self) -> usize {
        (0..3).fold(0, |best, i| if self.r[i] < self.r[best] { i } else { best })
    }
}

/// `r_i = 1/(2 x_i) + (a_i/2) (x_i/(x_j x_k) - x_j/(x_k x_i) - x_k/(x_i x_j))`
/// with `(i, j, k)` running over the cyclic shifts of `(1, 2, 3)`.
pub fn ricci_components(a: &SpaceParams, x: &MetricPoint) -> RicciComponents {
    ricci_raw(&a.as_array(), &x.x)
}

#[inline]
pub(crate) fn ricci_raw(a: &[f64; 3], x: &[f64; 3]) -> RicciComponents {
    let mut r = [0.0; 3];
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let (xi, xj, xk) = (x[i], x[j], x[k]);
        r[i] = 0.5 / xi + 0.5 * a[i] * (xi / (xj * xk) - xj / (xk * xi) - xk / (xi * xj));
    }
    RicciComponents { r }
}

/// Membership in the positive-Ricci region, with a [`BOUNDARY_TOL`] margin.
pub fn in_positive_region(a: &SpaceParams, x: &MetricPoint) -> bool {
    ricci_components(a, x).min() > BOUNDARY_TOL
}

/// `ln V = sum (1/a_i) ln x_i`.
pub fn log_first_integral(a: &SpaceParams, x: &MetricPoint) -> f64 {
    log_first_integral_raw(&a.as_array(), &x.x)
}

#[inline]
pub(crate) fn log_first_integral_raw(a: &[f64; 3], x: &[f64; 3]) -> f64 {
    (0..3).map(|i| x[i].ln() / a[i]).sum()
}

/// `V = x1^(1/a1) x2^(1/a2) x3^(1/a3)`, constant along the flow. The invariant
/// surface is `V = 1`.
pub fn first_integral(a: &SpaceParams, x: &MetricPoint) -> f64 {
    log_first_integral(a, x).exp()
}

/// Rescales `x` onto the invariant surface `V = 1`.
pub fn project_to_sigma(a: &SpaceParams, x: &MetricPoint) -> MetricPoint {
    let lambda = (-log_first_integral(a, x) / a.weight_sum()).exp();
    x.scaled(lambda)
}
