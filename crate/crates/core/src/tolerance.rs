use crate::Complex;

/// Relative/absolute comparison thresholds used by every numeric check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { rel: 1e-9, abs: 1e-12 }
    }
}

impl Tolerance {
    pub const fn new(rel: f64, abs: f64) -> Self {
        Self { rel, abs }
    }

    /// Relative tolerance with the default absolute floor.
    pub const fn relative(rel: f64) -> Self {
        Self { rel, abs: 1e-12 }
    }

    /// `|a - b| <= abs + rel * scale`
    pub fn within(&self, a: Complex, b: Complex, scale: f64) -> bool {
        (a - b).norm() <= self.abs + self.rel * scale
    }

    pub fn close(&self, a: Complex, b: Complex) -> bool {
        self.within(a, b, a.norm().max(b.norm()))
    }

    pub fn is_zero(&self, a: Complex, scale: f64) -> bool {
        a.norm() <= self.abs + self.rel * scale
    }
}

/// Relative error `|a - b| / max(1, |b|)` used by the engine/oracle comparisons.
pub fn relative_error(a: Complex, b: Complex) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}
