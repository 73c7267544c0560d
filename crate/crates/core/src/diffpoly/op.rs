//! Linear differential operators `sum_k a_k D^k` with differential-polynomial coefficients.

use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use super::coeff::Coeff;
use super::monomial::Alphabet;
use super::poly::Poly;

#[derive(Clone, PartialEq, Debug)]
pub struct LinDiffOp<C: Coeff, A: Alphabet> {
    terms: BTreeMap<u32, Poly<C, A>>,
}

fn binomial(n: u32, k: u32) -> i64 {
    let mut r: i64 = 1;
    for i in 0..k as i64 {
        r = r * (n as i64 - i) / (i + 1);
    }
    r
}

impl<C: Coeff, A: Alphabet> LinDiffOp<C, A> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    /// Builds from `(coefficient, order)` pairs; repeated orders are summed.
    pub fn new(terms: impl IntoIterator<Item = (Poly<C, A>, u32)>) -> Self {
        let mut op = Self::zero();
        for (c, k) in terms {
            op.add_term(c, k);
        }
        op
    }

    /// `D^k`.
    pub fn d(k: u32) -> Self {
        Self::new([(Poly::one(), k)])
    }

    /// Multiplication by `c`.
    pub fn mult(c: Poly<C, A>) -> Self {
        Self::new([(c, 0)])
    }

    fn add_term(&mut self, c: Poly<C, A>, k: u32) {
        let sum = self.terms.remove(&k).unwrap_or_default() + c;
        if !sum.is_zero() {
            self.terms.insert(k, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn order(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    pub fn coeff(&self, k: u32) -> Poly<C, A> {
        self.terms.get(&k).cloned().unwrap_or_default()
    }

    /// `(coefficient, order)` pairs in descending order.
    pub fn terms(&self) -> impl Iterator<Item = (&Poly<C, A>, u32)> {
        self.terms.iter().rev().map(|(k, c)| (c, *k))
    }

    /// Applies the operator to a function.
    pub fn apply(&self, f: &Poly<C, A>) -> Poly<C, A> {
        let mut out = Poly::zero();
        for (k, c) in &self.terms {
            out = out + c * &f.nth_derivative(*k);
        }
        out
    }

    /// `self ∘ other`, using `D^n g = sum_i C(n,i) g^(n-i) D^i`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&n, f) in &self.terms {
            for (&m, g) in &other.terms {
                let mut gd = g.clone();
                let mut derivs = vec![g.clone()];
                for _ in 0..n {
                    gd = gd.derivative();
                    derivs.push(gd.clone());
                }
                for i in 0..=n {
                    let c = (f * &derivs[(n - i) as usize]).scale_int(binomial(n, i));
                    out.add_term(c, i + m);
                }
            }
        }
        out
    }

    /// `[a, b] = a∘b − b∘a`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.compose(other) - other.compose(self)
    }
}

impl<C: Coeff, A: Alphabet> Add for LinDiffOp<C, A> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (k, c) in rhs.terms {
            self.add_term(c, k);
        }
        self
    }
}

impl<C: Coeff, A: Alphabet> Neg for LinDiffOp<C, A> {
    type Output = Self;
    fn neg(self) -> Self {
        Self { terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect() }
    }
}

impl<C: Coeff, A: Alphabet> Sub for LinDiffOp<C, A> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}
