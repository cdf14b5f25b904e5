use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A marginal ratio on the Riemann sphere: a finite complex number or infinity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Ratio {
    Finite(Complex64),
    Infinity,
}

impl Ratio {
    pub const ZERO: Ratio = Ratio::Finite(Complex64::new(0.0, 0.0));

    pub fn real(x: f64) -> Self {
        Ratio::Finite(Complex64::new(x, 0.0))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Ratio::Infinity)
    }

    pub fn finite(&self) -> Option<Complex64> {
        match self {
            Ratio::Finite(z) => Some(*z),
            Ratio::Infinity => None,
        }
    }

    /// Relative comparison; infinity only matches infinity.
    pub fn approx_eq(&self, other: &Ratio, rel_tol: f64) -> bool {
        match (self, other) {
            (Ratio::Infinity, Ratio::Infinity) => true,
            (Ratio::Finite(a), Ratio::Finite(b)) => {
                a == b || (a - b).norm() <= rel_tol * a.norm().max(b.norm())
            }
            _ => false,
        }
    }
}

impl From<Complex64> for Ratio {
    fn from(z: Complex64) -> Self {
        Ratio::Finite(z)
    }
}

impl From<f64> for Ratio {
    fn from(x: f64) -> Self {
        Ratio::real(x)
    }
}
