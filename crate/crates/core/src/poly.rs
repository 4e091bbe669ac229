//! Dense univariate polynomials in the monomial basis.

use alloc::vec;
use alloc::vec::Vec;

/// `coeffs[i]` multiplies `x^i`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Poly {
    pub coeffs: Vec<f64>,
}

impl Poly {
    pub fn new(coeffs: Vec<f64>) -> Self {
        Poly { coeffs }
    }

    pub fn monomial(degree: usize) -> Self {
        let mut c = vec![0.0; degree + 1];
        c[degree] = 1.0;
        Poly { coeffs: c }
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::default();
        }
        Poly { coeffs: self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| i as f64 * c).collect() }
    }

    pub fn nth_derivative(&self, n: usize) -> Poly {
        (0..n).fold(self.clone(), |p, _| p.derivative())
    }

    /// Value of the `n`-th derivative at `x`.
    pub fn eval_derivative(&self, n: usize, x: f64) -> f64 {
        let mut acc = 0.0;
        for i in (n..self.coeffs.len()).rev() {
            acc = acc * x + self.coeffs[i] * falling(i, n);
        }
        acc
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Poly::default();
        }
        let mut c = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (k, b) in other.coeffs.iter().enumerate() {
                c[i + k] += a * b;
            }
        }
        Poly { coeffs: c }
    }

    /// Exact ∫₀^ℓ p(x) dx from monomial antiderivatives.
    pub fn integrate(&self, length: f64) -> f64 {
        let mut acc = 0.0;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            acc = acc * length + c / (i + 1) as f64;
        }
        acc * length
    }

    /// Sum of absolute values of the monomial terms of ∫₀^ℓ |p|, an upper
    /// bound used to scale roundoff tolerances.
    pub fn integrate_abs_terms(&self, length: f64) -> f64 {
        self.coeffs.iter().enumerate().map(|(i, c)| c.abs() * libm::pow(length, (i + 1) as f64) / (i + 1) as f64).sum()
    }
}

/// `i·(i−1)·…·(i−n+1)`.
fn falling(i: usize, n: usize) -> f64 {
    (0..n).fold(1.0, |acc, m| acc * (i - m) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn calculus_on_monomials() {
        let p = Poly::new(vec![1.0, 2.0, 3.0]); // 1 + 2x + 3x²
        assert_eq!(p.eval(2.0), 17.0);
        assert_eq!(p.derivative(), Poly::new(vec![2.0, 6.0]));
        assert_eq!(p.eval_derivative(1, 2.0), 14.0);
        assert_eq!(p.eval_derivative(2, 5.0), 6.0);
        assert_eq!(p.eval_derivative(3, 5.0), 0.0);
        assert_eq!(p.integrate(1.0), 3.0);
        assert_eq!(Poly::monomial(3).mul(&Poly::monomial(2)), Poly::monomial(5));
    }
}
