//! Polynomials in the spectral parameter whose coefficients are differential polynomials.

use std::ops::{Add, Mul, Neg, Sub};

use super::coeff::{Coeff, Rational};
use super::monomial::{Alphabet, KdvField};
use super::poly::Poly;
use super::DiffPolyError;

/// `sum_i coeffs[i] * lambda^i`; trailing zero coefficients are trimmed.
#[derive(Clone, PartialEq, Debug)]
pub struct LambdaPoly<C: Coeff, A: Alphabet> {
    coeffs: Vec<Poly<C, A>>,
}

pub type KdvLambdaPoly = LambdaPoly<Rational, KdvField>;

impl<C: Coeff, A: Alphabet> Default for LambdaPoly<C, A> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff, A: Alphabet> LambdaPoly<C, A> {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn from_coeffs(coeffs: Vec<Poly<C, A>>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn constant(c: Poly<C, A>) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The spectral parameter itself.
    pub fn lambda() -> Self {
        Self::from_coeffs(vec![Poly::zero(), Poly::one()])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// λ-degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Poly<C, A> {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[Poly<C, A>] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Poly<C, A>> {
        self.coeffs.last()
    }

    pub fn map(&self, f: impl Fn(&Poly<C, A>) -> Poly<C, A>) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    /// Coefficient-wise total x-derivative.
    pub fn derivative(&self) -> Self {
        self.map(|c| c.derivative())
    }

    pub fn scale(&self, s: &C) -> Self {
        self.map(|c| c.scale(s))
    }

    pub fn mul_poly(&self, p: &Poly<C, A>) -> Self {
        self.map(|c| c * p)
    }

    /// Multiplies by `lambda^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Poly::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }
}

impl LambdaPoly<Rational, KdvField> {
    /// Numeric coefficients at a jet `(q, q', ...)`, lowest power first.
    pub fn evaluate(&self, jet: &[f64]) -> Result<Vec<f64>, DiffPolyError> {
        self.coeffs.iter().map(|c| c.evaluate(jet)).collect()
    }
}

impl<C: Coeff, A: Alphabet> Add for LambdaPoly<C, A> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<C: Coeff, A: Alphabet> Neg for LambdaPoly<C, A> {
    type Output = Self;
    fn neg(self) -> Self {
        self.map(|c| -c.clone())
    }
}

impl<C: Coeff, A: Alphabet> Sub for LambdaPoly<C, A> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<C: Coeff, A: Alphabet> Mul<&LambdaPoly<C, A>> for &LambdaPoly<C, A> {
    type Output = LambdaPoly<C, A>;
    fn mul(self, rhs: &LambdaPoly<C, A>) -> LambdaPoly<C, A> {
        if self.is_zero() || rhs.is_zero() {
            return LambdaPoly::zero();
        }
        let mut coeffs = vec![Poly::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        LambdaPoly::from_coeffs(coeffs)
    }
}
