//! Vandermonde-type products and the rational symmetric identity
//! `sum_k λ_k^μ / prod_{j≠k}(λ_k − λ_j) = [μ = n]` for `n+1` distinct values.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::diffpoly::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SymmetryError {
    #[error("entries {0} and {1} coincide")]
    NotDistinct(usize, usize),
    #[error("identity not claimed for mu={mu} > n={n}")]
    DomainError { mu: usize, n: usize },
}

/// Pairwise distinct rationals.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalVector(Vec<Rational>);

impl RationalVector {
    pub fn new(entries: Vec<Rational>) -> Result<Self, SymmetryError> {
        for i in 0..entries.len() {
            for j in i + 1..entries.len() {
                if entries[i] == entries[j] {
                    return Err(SymmetryError::NotDistinct(i, j));
                }
            }
        }
        Ok(Self(entries))
    }

    pub fn from_ints(v: &[i64]) -> Result<Self, SymmetryError> {
        Self::new(v.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect())
    }

    /// Random distinct entries with numerators in `[-60, 60]` and denominators in `[1, 24]`.
    pub fn random(rng: &mut impl Rng, len: usize) -> Self {
        let mut v: Vec<Rational> = Vec::with_capacity(len);
        while v.len() < len {
            let r =
                Rational::new(BigInt::from(rng.random_range(-60i64..=60)), BigInt::from(rng.random_range(1i64..=24)));
            if !v.contains(&r) {
                v.push(r);
            }
        }
        Self(v)
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn scaled(&self, s: &Rational) -> Self {
        Self(self.0.iter().map(|x| x * s).collect())
    }
}

/// `prod_{i<j} (x_i − x_j)`; 1 for fewer than two entries. Zero on repeated values.
pub fn vandermonde_p(xs: &[Rational]) -> Rational {
    let mut p = Rational::one();
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            p *= &xs[i] - &xs[j];
        }
    }
    p
}

/// `Q_{n+1,j} = sum_i (−1)^{i+1} x_i^j P(x without x_i)` with 1-based `i`.
pub fn q_polynomial(xs: &[Rational], j: u32) -> Rational {
    let mut acc = Rational::zero();
    for i in 0..xs.len() {
        let rest: Vec<Rational> = xs.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, x)| x.clone()).collect();
        let term = num_traits::pow(xs[i].clone(), j as usize) * vandermonde_p(&rest);
        if i % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// `sum_k λ_k^μ / prod_{j≠k}(λ_k − λ_j)`, for `μ ≤ n` where `n + 1 = xs.len()`.
pub fn symmetric_sum(xs: &RationalVector, mu: usize) -> Result<Rational, SymmetryError> {
    let n = xs.len().saturating_sub(1);
    if mu > n {
        return Err(SymmetryError::DomainError { mu, n });
    }
    Ok(symmetric_sum_unchecked(xs.entries(), mu))
}

fn symmetric_sum_unchecked(xs: &[Rational], mu: usize) -> Rational {
    let mut acc = Rational::zero();
    for (k, xk) in xs.iter().enumerate() {
        let mut den = Rational::one();
        for (j, xj) in xs.iter().enumerate() {
            if j != k {
                den *= xk - xj;
            }
        }
        acc += num_traits::pow(xk.clone(), mu) / den;
    }
    acc
}

/// Floating-point version of [`symmetric_sum`] without the domain check.
pub fn symmetric_sum_f64(xs: &[f64], mu: usize) -> f64 {
    xs.iter()
        .enumerate()
        .map(|(k, &xk)| {
            let den: f64 = xs.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &xj)| xk - xj).product();
            xk.powi(mu as i32) / den
        })
        .sum()
}

/// Result of checking every `μ ≤ n` for one random vector.
#[derive(Debug, Clone, Serialize)]
pub struct TrialOutcome {
    pub trial: u64,
    pub size: usize,
    pub checks: usize,
    pub failures: usize,
}

/// Size used by trial `t` when cycling through `2..=max_size`.
pub fn trial_size(t: u64, max_size: usize) -> usize {
    let span = max_size.max(2) - 1;
    2 + (t as usize % span)
}

/// Runs one deterministic trial: stream `t` of a ChaCha generator seeded with `seed`.
pub fn identity_trial(seed: u64, t: u64, max_size: usize) -> TrialOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(t);
    let size = trial_size(t, max_size);
    let xs = RationalVector::random(&mut rng, size);
    let n = size - 1;
    let p = vandermonde_p(xs.entries());
    let mut failures = 0;
    let mut checks = 0;
    for mu in 0..=n {
        let direct = symmetric_sum(&xs, mu).expect("mu <= n");
        let expected = if mu == n { Rational::one() } else { Rational::zero() };
        let quotient = q_polynomial(xs.entries(), mu as u32) / &p;
        checks += 1;
        if direct != expected || quotient != direct || p.is_zero() {
            failures += 1;
        }
    }
    TrialOutcome { trial: t, size, checks, failures }
}

/// Sign of the Vandermonde product after permuting entries, relative to the original.
pub fn permutation_sign(xs: &[Rational], perm: &[usize]) -> i32 {
    let a = vandermonde_p(xs);
    let permuted: Vec<Rational> = perm.iter().map(|&i| xs[i].clone()).collect();
    let b = vandermonde_p(&permuted);
    if a.is_zero() {
        0
    } else if (a / b).is_positive() {
        1
    } else {
        -1
    }
}
