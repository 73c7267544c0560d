//! Variables `u^(k)` of a differential alphabet and monomials over them.

use std::cmp::Ordering;
use std::fmt::Debug;

/// The `order`-th x-derivative of dependent field number `field`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Var {
    pub field: u8,
    pub order: u32,
}

impl Var {
    pub const fn new(field: u8, order: u32) -> Self {
        Self { field, order }
    }

    pub fn derivative(self) -> Self {
        Self::new(self.field, self.order + 1)
    }
}

/// Names and scaling weights of the dependent fields a ring is built over.
pub trait Alphabet: Clone + Copy + Debug + PartialEq + Eq + Send + Sync + 'static {
    const NAMES: &'static [&'static str];

    /// Scaling weight of a single variable; must be positive.
    fn weight(v: Var) -> u32;
}

/// KdV alphabet: one field `q`, with `w(q^(k)) = k + 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct KdvField;

impl Alphabet for KdvField {
    const NAMES: &'static [&'static str] = &["q"];
    fn weight(v: Var) -> u32 {
        v.order + 2
    }
}

/// Power product of variables. Exponents are positive and keys sorted.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial {
    factors: Vec<(Var, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(v: Var) -> Self {
        Self { factors: vec![(v, 1)] }
    }

    pub fn from_factors(items: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut m = Self::one();
        for (v, e) in items {
            m.mul_var(v, e);
        }
        m
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    pub fn weight<A: Alphabet>(&self) -> u32 {
        self.factors.iter().map(|&(v, e)| A::weight(v) * e).sum()
    }

    pub fn max_order(&self, field: u8) -> Option<u32> {
        self.factors.iter().filter(|(v, _)| v.field == field).map(|(v, _)| v.order).max()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        match self.factors.binary_search_by(|(w, _)| w.cmp(&v)) {
            Ok(i) => self.factors[i].1,
            Err(_) => 0,
        }
    }

    pub fn mul_var(&mut self, v: Var, e: u32) {
        if e == 0 {
            return;
        }
        match self.factors.binary_search_by(|(w, _)| w.cmp(&v)) {
            Ok(i) => self.factors[i].1 += e,
            Err(i) => self.factors.insert(i, (v, e)),
        }
    }

    /// Removes one power of `v`; the caller guarantees `v` divides `self`.
    pub fn div_var(&mut self, v: Var) {
        let i = self.factors.binary_search_by(|(w, _)| w.cmp(&v)).expect("variable not present in monomial");
        if self.factors[i].1 == 1 {
            self.factors.remove(i);
        } else {
            self.factors[i].1 -= 1;
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut m = self.clone();
        for &(v, e) in &other.factors {
            m.mul_var(v, e);
        }
        m
    }

    fn expanded(&self) -> impl Iterator<Item = Var> + '_ {
        self.factors.iter().flat_map(|&(v, e)| std::iter::repeat_n(v, e as usize))
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then the sorted variable lists.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.expanded().cmp(other.expanded()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of exact weight `w` over the alphabet (the constant 1 when `w == 0`).
pub fn monomials_of_weight<A: Alphabet>(w: u32) -> Vec<Monomial> {
    let mut vars = Vec::new();
    for field in 0..A::NAMES.len() as u8 {
        let mut order = 0;
        loop {
            let v = Var::new(field, order);
            if A::weight(v) > w {
                break;
            }
            vars.push(v);
            order += 1;
        }
    }
    let mut out = Vec::new();
    let mut current = Monomial::one();
    fill::<A>(&vars, 0, w, &mut current, &mut out);
    out.sort();
    out
}

fn fill<A: Alphabet>(vars: &[Var], idx: usize, rest: u32, cur: &mut Monomial, out: &mut Vec<Monomial>) {
    if rest == 0 {
        out.push(cur.clone());
        return;
    }
    if idx == vars.len() {
        return;
    }
    let v = vars[idx];
    let wv = A::weight(v);
    let mut e = 0;
    while e * wv <= rest {
        let mut next = cur.clone();
        next.mul_var(v, e);
        fill::<A>(vars, idx + 1, rest - e * wv, &mut next, out);
        e += 1;
    }
}
