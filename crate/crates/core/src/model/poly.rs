use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A partition function written as a polynomial in the activity.
///
/// Coefficients are real because every model parameter in this crate is real;
/// evaluation accepts complex activities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartitionPolynomial {
    pub coeffs: Vec<f64>,
}

impl PartitionPolynomial {
    pub fn new(coeffs: Vec<f64>) -> Self {
        PartitionPolynomial { coeffs }
    }

    /// Horner evaluation at a complex point.
    pub fn eval(&self, x: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c)
    }

    pub fn eval_real(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// Degree after dropping zero leading coefficients; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|&c| c != 0.0)
    }

    /// Multiplicity of the root at the origin (number of leading zero low-order terms).
    pub fn order_at_origin(&self) -> usize {
        self.coeffs.iter().position(|&c| c != 0.0).unwrap_or(self.coeffs.len())
    }

    /// Divides out the power of the activity that pinned-to-one vertices contribute,
    /// and trims high-order zeros.
    pub fn strip_origin(&self) -> PartitionPolynomial {
        let lo = self.order_at_origin();
        let hi = self.degree().map_or(lo, |d| d + 1);
        PartitionPolynomial { coeffs: self.coeffs[lo..hi.max(lo)].to_vec() }
    }
}
