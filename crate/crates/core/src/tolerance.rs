//! Numerical tolerances, each relative to the natural magnitude of the
//! compared quantity.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    /// Hasse–Davenport residual, relative to `q^{m/2}`.
    pub hasse_davenport: f64,
    /// Two-character Gauss quotient identity, relative to `(q-1) q`.
    pub prop31: f64,
    /// Theorem-form identity, relative to `q^n`.
    pub thm32: f64,
    /// Direct vs quotient Jacobi sums, relative to `q`.
    pub jacobi: f64,
    /// `hgf` vs the single-sum `_2F_1`, absolute.
    pub greene_alt: f64,
    /// `hgf` vs the multi-sum, relative to `q`.
    pub greene_multisum: f64,
    /// Leftover cancellation, relative to `q^{(d-1)/2}`.
    pub cancellation: f64,
    /// Largest accepted distance from the nearest integer for a point count.
    pub rounding_guard: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            hasse_davenport: 1e-7,
            prop31: 1e-6,
            thm32: 1e-6,
            jacobi: 1e-8,
            greene_alt: 1e-8,
            greene_multisum: 1e-7,
            cancellation: 1e-6,
            rounding_guard: 0.01,
        }
    }
}
