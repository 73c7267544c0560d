//! Differential polynomials with exact coefficients.

use std::collections::BTreeMap;
use std::marker::PhantomData;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::coeff::{Coeff, Rational};
use super::monomial::{Alphabet, KdvField, Monomial, Var};
use super::DiffPolyError;

/// Polynomial in the fields of `A` and their x-derivatives. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly<C: Coeff, A: Alphabet> {
    terms: BTreeMap<Monomial, C>,
    _alphabet: PhantomData<A>,
}

/// Differential polynomial in `q` with rational coefficients.
pub type DiffPoly = Poly<Rational, KdvField>;

impl<C: Coeff, A: Alphabet> Default for Poly<C, A> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff, A: Alphabet> Poly<C, A> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new(), _alphabet: PhantomData }
    }

    pub fn constant(c: C) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn term(m: Monomial, c: C) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    /// The variable `field^(order)`.
    pub fn var(field: u8, order: u32) -> Self {
        Self::term(Monomial::var(Var::new(field, order)), C::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    /// Constant term.
    pub fn constant_term(&self) -> C {
        self.coeff(&Monomial::one())
    }

    pub fn as_constant(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 if self.terms.contains_key(&Monomial::one()) => Some(self.constant_term()),
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = existing.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn scale(&self, s: &C) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.clone() * s.clone());
        }
        out
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&C::from_int(n))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Highest derivative order of `field` present, if any.
    pub fn max_order(&self, field: u8) -> Option<u32> {
        self.terms.keys().filter_map(|m| m.max_order(field)).max()
    }

    /// Set of monomial weights present.
    pub fn weights(&self) -> Vec<u32> {
        let mut w: Vec<u32> = self.terms.keys().map(|m| m.weight::<A>()).collect();
        w.sort_unstable();
        w.dedup();
        w
    }

    pub fn is_homogeneous(&self) -> bool {
        self.weights().len() <= 1
    }

    /// Part of weight exactly `w`.
    pub fn weight_component(&self, w: u32) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if m.weight::<A>() == w {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// Total x-derivative: Leibniz rule with `D u^(k) = u^(k+1)`.
    pub fn derivative(&self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            for &(v, e) in m.factors() {
                let mut nm = m.clone();
                nm.div_var(v);
                nm.mul_var(v.derivative(), 1);
                out.add_term(nm, c.clone() * C::from_int(e as i64));
            }
        }
        out
    }

    pub fn nth_derivative(&self, n: u32) -> Self {
        let mut p = self.clone();
        for _ in 0..n {
            p = p.derivative();
        }
        p
    }

    /// Partial derivative with respect to a single variable.
    pub fn partial(&self, v: Var) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e > 0 {
                let mut nm = m.clone();
                nm.div_var(v);
                out.add_term(nm, c.clone() * C::from_int(e as i64));
            }
        }
        out
    }

    /// Variational derivative with respect to `field`: `sum_k (-D)^k dp/du^(k)`.
    pub fn euler_operator(&self, field: u8) -> Self {
        let mut out = Self::zero();
        let Some(top) = self.max_order(field) else {
            return out;
        };
        for k in 0..=top {
            let mut term = self.partial(Var::new(field, k)).nth_derivative(k);
            if k % 2 == 1 {
                term = -term;
            }
            out = out + term;
        }
        out
    }

    /// True when every field's Euler operator annihilates `self`.
    pub fn is_exact(&self) -> bool {
        (0..A::NAMES.len() as u8).all(|f| self.euler_operator(f).is_zero())
    }

    /// Substitutes values for the variables and evaluates in the scalar type `S`.
    pub fn eval_with<S, V, K>(&self, mut var: V, coeff: K) -> Result<S, DiffPolyError>
    where
        S: Clone + Zero + One + Add<Output = S> + Mul<Output = S>,
        V: FnMut(Var) -> Option<S>,
        K: Fn(&C) -> S,
    {
        let mut acc = S::zero();
        for (m, c) in &self.terms {
            let mut t = coeff(c);
            for &(v, e) in m.factors() {
                let x =
                    var(v).ok_or(DiffPolyError::JetTooShort { field: A::NAMES[v.field as usize], order: v.order })?;
                for _ in 0..e {
                    t = t * x.clone();
                }
            }
            acc = acc + t;
        }
        Ok(acc)
    }
}

impl DiffPoly {
    /// The field `q^(k)`.
    pub fn q(k: u32) -> Self {
        Self::var(0, k)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(Rational::from_int(n))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::constant(super::coeff::rat(num, den))
    }

    /// Floating-point evaluation at a jet `(q, q', q'', ...)`.
    pub fn evaluate(&self, jet: &[f64]) -> Result<f64, DiffPolyError> {
        self.eval_with(|v| jet.get(v.order as usize).copied(), super::coeff::rational_to_f64)
    }

    /// Exact evaluation at a rational jet.
    pub fn evaluate_exact(&self, jet: &[Rational]) -> Result<Rational, DiffPolyError> {
        self.eval_with(|v| jet.get(v.order as usize).cloned(), |c| c.clone())
    }

    /// The operator `B = D^3 + 4q D + 2q'` applied to `self`.
    pub fn apply_b(&self) -> Self {
        let d1 = self.derivative();
        let d3 = d1.nth_derivative(2);
        d3 + (&Self::q(0) * &d1).scale_int(4) + (&Self::q(1) * self).scale_int(2)
    }
}

impl<C: Coeff, A: Alphabet> Add for Poly<C, A> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl<C: Coeff, A: Alphabet> Add<&Poly<C, A>> for &Poly<C, A> {
    type Output = Poly<C, A>;
    fn add(self, rhs: &Poly<C, A>) -> Poly<C, A> {
        self.clone() + rhs.clone()
    }
}

impl<C: Coeff, A: Alphabet> Neg for Poly<C, A> {
    type Output = Self;
    fn neg(self) -> Self {
        let mut out = Self::zero();
        for (m, c) in self.terms {
            out.terms.insert(m, -c);
        }
        out
    }
}

impl<C: Coeff, A: Alphabet> Sub for Poly<C, A> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<C: Coeff, A: Alphabet> Sub<&Poly<C, A>> for &Poly<C, A> {
    type Output = Poly<C, A>;
    fn sub(self, rhs: &Poly<C, A>) -> Poly<C, A> {
        self.clone() - rhs.clone()
    }
}

impl<C: Coeff, A: Alphabet> Mul<&Poly<C, A>> for &Poly<C, A> {
    type Output = Poly<C, A>;
    fn mul(self, rhs: &Poly<C, A>) -> Poly<C, A> {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<C: Coeff, A: Alphabet> Mul for Poly<C, A> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<C: Coeff, A: Alphabet> Mul<&Poly<C, A>> for Poly<C, A> {
    type Output = Self;
    fn mul(self, rhs: &Self) -> Self {
        &self * rhs
    }
}

impl<C: Coeff, A: Alphabet> Mul<Poly<C, A>> for &Poly<C, A> {
    type Output = Poly<C, A>;
    fn mul(self, rhs: Poly<C, A>) -> Poly<C, A> {
        self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffpoly::coeff::rat;

    fn q(k: u32) -> DiffPoly {
        DiffPoly::q(k)
    }

    #[test]
    fn ring_basics() {
        assert_eq!(q(0) + DiffPoly::zero(), q(0));
        assert_eq!(&q(0) * &q(0), q(0).pow(2));
        assert_eq!(q(0).pow(2).scale_int(3) + q(0).pow(2), q(0).pow(2).scale_int(4));
        assert!((q(1) - q(1)).is_zero());
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(q(0).derivative(), q(1));
        assert_eq!(q(0).pow(2).derivative(), (&q(0) * &q(1)).scale_int(2));
        let f1 = q(2) + q(0).pow(2).scale_int(3);
        assert_eq!(f1.derivative(), q(3) + (&q(0) * &q(1)).scale_int(6));
    }

    #[test]
    fn apply_b_examples() {
        assert_eq!(DiffPoly::from_ratio(1, 2).apply_b(), q(1));
        assert_eq!(q(0).apply_b(), q(3) + (&q(0) * &q(1)).scale_int(6));
        assert!(DiffPoly::zero().apply_b().is_zero());
    }

    #[test]
    fn euler_examples() {
        assert!((&q(0) * &q(1)).euler_operator(0).is_zero());
        assert_eq!(q(0).pow(2).euler_operator(0), q(0).scale_int(2));
        assert!(q(0).apply_b().euler_operator(0).is_zero());
    }

    #[test]
    fn evaluate_examples() {
        let p = q(0).pow(2) + q(1);
        assert_eq!(p.evaluate(&[2.0, 3.0]).unwrap(), 7.0);
        assert_eq!(DiffPoly::zero().evaluate(&[]).unwrap(), 0.0);
        let f1 = q(2) + q(0).pow(2).scale_int(3);
        assert_eq!(f1.evaluate(&[1.0, 0.0, -3.0]).unwrap(), 0.0);
        assert!(matches!(f1.evaluate(&[1.0]), Err(DiffPolyError::JetTooShort { order: 2, .. })));
        let exact = f1.evaluate_exact(&[rat(1, 2), rat(0, 1), rat(1, 4)]).unwrap();
        assert_eq!(exact, rat(1, 1));
    }

    #[test]
    fn weights_of_f1() {
        let f1 = q(2) + q(0).pow(2).scale_int(3);
        assert_eq!(f1.weights(), vec![4]);
        assert!(f1.is_homogeneous());
        assert_eq!(f1.weight_component(4), f1);
    }
}
