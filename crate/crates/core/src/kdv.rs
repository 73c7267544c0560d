//! KdV recursion: conserved densities `F_n`, basic solitons `φ_n`, the `H` functional,
//! the monic curve polynomial and soliton combinations.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use crate::diffpoly::{rat, DiffPoly, DiffPolyError, KdvLambdaPoly, Rational};

/// Largest `n` accepted by [`expansion_check`] unless a bound is given explicitly.
pub const EXPANSION_DEFAULT_BOUND: u32 = 4;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum KdvError {
    #[error("hierarchy index {0} out of range")]
    OutOfRange(i64),
    #[error("check failed for n={n} at (4λ)^{m}: {detail}")]
    CheckFailed { n: u32, m: u32, detail: String },
    #[error("soliton combination needs a nonzero leading coefficient")]
    ZeroLeading,
    #[error(transparent)]
    DiffPoly(#[from] DiffPolyError),
}

/// Memo table of `F_{-1}, F_0, F_1, ...`; concurrent readers, serialized growth.
#[derive(Debug)]
pub struct Hierarchy {
    table: RwLock<Vec<DiffPoly>>,
}

impl Default for Hierarchy {
    fn default() -> Self {
        Self::new()
    }
}

impl Hierarchy {
    pub fn new() -> Self {
        Self { table: RwLock::new(vec![DiffPoly::from_ratio(1, 2)]) }
    }

    /// Process-wide table shared by the free functions of this module.
    pub fn global() -> &'static Hierarchy {
        static H: OnceLock<Hierarchy> = OnceLock::new();
        H.get_or_init(Hierarchy::new)
    }

    /// `F_n` for `n >= -1`, integration constants zero.
    pub fn density(&self, n: i64) -> DiffPoly {
        assert!(n >= -1, "F_n is defined for n >= -1");
        let idx = (n + 1) as usize;
        if let Some(p) = self.table.read().expect("hierarchy lock poisoned").get(idx) {
            return p.clone();
        }
        let mut table = self.table.write().expect("hierarchy lock poisoned");
        while table.len() <= idx {
            let next = table.last().unwrap().apply_b().formal_integral().expect("B(F_n) is always a total derivative");
            table.push(next);
        }
        table[idx].clone()
    }

    pub fn cached_len(&self) -> usize {
        self.table.read().expect("hierarchy lock poisoned").len()
    }
}

/// `F_n`.
pub fn conserved_density(n: i64) -> DiffPoly {
    Hierarchy::global().density(n)
}

fn pow4(i: u32) -> Rational {
    Rational::from_integer(BigInt::from(4u32).pow(i))
}

/// `φ_n = sum_i 4^i F_{n-1-i} λ^i`.
pub fn basic_soliton(n: u32) -> KdvLambdaPoly {
    let coeffs = (0..=n).map(|i| conserved_density(n as i64 - 1 - i as i64).scale(&pow4(i))).collect();
    KdvLambdaPoly::from_coeffs(coeffs)
}

/// `B(φ) − 4λ φ'`, coefficient-wise in λ.
pub fn soliton_residual(phi: &KdvLambdaPoly) -> KdvLambdaPoly {
    phi.map(DiffPoly::apply_b) - phi.derivative().shift(1).scale(&rat(4, 1))
}

/// `D F_n`: the n-th stationary equation.
pub fn stationary_equation(n: i64) -> DiffPoly {
    conserved_density(n).derivative()
}

/// `H(φ) = φφ'' − ½(φ')² + 2(q − λ)φ²`.
pub fn h_functional(phi: &KdvLambdaPoly) -> KdvLambdaPoly {
    let d1 = phi.derivative();
    let d2 = d1.derivative();
    let q_minus_lambda = KdvLambdaPoly::from_coeffs(vec![DiffPoly::q(0), DiffPoly::from_int(-1)]);
    let sq = phi * phi;
    (phi * &d2) - (&d1 * &d1).scale(&rat(1, 2)) + (&q_minus_lambda * &sq).scale(&rat(2, 1))
}

/// `H_n = H(φ_n)`, λ-degree `2n+1`.
pub fn hn_closed_form(n: u32) -> KdvLambdaPoly {
    h_functional(&basic_soliton(n))
}

/// Monic `P_n = −2 H_n / 4^{2n}`.
pub fn curve_polynomial(n: u32) -> KdvLambdaPoly {
    hn_closed_form(n).scale(&(rat(-2, 1) / pow4(2 * n)))
}

/// Coefficient of `(4λ)^m` in a λ-polynomial.
pub fn four_lambda_coeff(p: &KdvLambdaPoly, m: u32) -> DiffPoly {
    p.coeff(m as usize).scale(&(Rational::one() / pow4(m)))
}

/// Outcome of one sub-check of the differentiated expansion of `H_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionItem {
    pub m: u32,
    pub what: &'static str,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionReport {
    pub n: u32,
    pub items: Vec<ExpansionItem>,
}

impl ExpansionReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }
}

/// [`expansion_check_bounded`] with [`EXPANSION_DEFAULT_BOUND`].
pub fn expansion_check(n: u32) -> Result<ExpansionReport, KdvError> {
    expansion_check_bounded(n, EXPANSION_DEFAULT_BOUND)
}

/// Verifies the (4λ)-expansion of `H_n`: vanishing powers `n+1..2n`, top coefficient
/// `−F_{-1}²/2`, and the derivatives of the lower coefficients. Fails on the first
/// mismatch.
pub fn expansion_check_bounded(n: u32, bound: u32) -> Result<ExpansionReport, KdvError> {
    if n > bound {
        return Err(KdvError::OutOfRange(n as i64));
    }
    let h = hn_closed_form(n);
    let f = |j: i64| conserved_density(j);
    let fn_ = f(n as i64);
    let dfn = fn_.derivative();
    let mut items = Vec::new();
    let fail = |m: u32, detail: String| KdvError::CheckFailed { n, m, detail };

    for m in n + 1..=2 * n {
        let c = four_lambda_coeff(&h, m);
        if !c.is_zero() {
            return Err(fail(m, format!("expected 0, found {c}")));
        }
        items.push(ExpansionItem { m, what: "vanishes", passed: true });
    }

    let top = four_lambda_coeff(&h, 2 * n + 1);
    let f_m1 = f(-1);
    let expected = (&f_m1 * &f_m1).scale(&rat(-1, 2));
    if top != expected {
        return Err(fail(2 * n + 1, format!("expected {expected}, found {top}")));
    }
    items.push(ExpansionItem { m: 2 * n + 1, what: "leading", passed: true });

    for m in 0..=n {
        let j = n as i64 - m as i64 - 1;
        let c = four_lambda_coeff(&h, m);
        let fj = f(j);
        let expected_d = &fj * &dfn;
        if c.derivative() != expected_d {
            return Err(fail(m, format!("D(coeff) = {}, expected {expected_d}", c.derivative())));
        }
        items.push(ExpansionItem { m, what: "derivative", passed: true });

        // Undifferentiated form with zero integration constant.
        let integral = (&fj.derivative() * &fn_).formal_integral()?;
        let expected_c = &(&fj * &fn_) - &integral;
        if c != expected_c {
            return Err(fail(m, format!("coeff = {c}, expected {expected_c}")));
        }
        items.push(ExpansionItem { m, what: "integrated", passed: true });
    }
    Ok(ExpansionReport { n, items })
}

/// `ψ = α_n φ_n + … + α_0 φ_0`; `alphas` is stored highest index first.
#[derive(Debug, Clone, PartialEq)]
pub struct SolitonCombination {
    alphas: Vec<Rational>,
}

impl SolitonCombination {
    /// `alphas = (α_n, …, α_0)`.
    pub fn new(alphas: Vec<Rational>) -> Result<Self, KdvError> {
        match alphas.first() {
            Some(a) if !a.is_zero() => Ok(Self { alphas }),
            _ => Err(KdvError::ZeroLeading),
        }
    }

    pub fn from_ints(alphas: &[i64]) -> Result<Self, KdvError> {
        Self::new(alphas.iter().map(|&a| rat(a, 1)).collect())
    }

    /// Pure `φ_n`.
    pub fn basic(n: u32) -> Self {
        let mut alphas = vec![Rational::zero(); n as usize + 1];
        alphas[0] = Rational::one();
        Self { alphas }
    }

    pub fn n(&self) -> u32 {
        (self.alphas.len() - 1) as u32
    }

    /// `α_j`.
    pub fn alpha(&self, j: u32) -> &Rational {
        &self.alphas[(self.n() - j) as usize]
    }

    pub fn alphas(&self) -> &[Rational] {
        &self.alphas
    }

    pub fn psi(&self) -> KdvLambdaPoly {
        (0..=self.n()).fold(KdvLambdaPoly::zero(), |acc, j| acc + basic_soliton(j).scale(self.alpha(j)))
    }

    /// `sum_j α_j F_j`.
    pub fn constancy(&self) -> DiffPoly {
        (0..=self.n()).fold(DiffPoly::zero(), |acc, j| acc + conserved_density(j as i64).scale(self.alpha(j)))
    }

    /// Monic curve `−2 H(ψ) / (α_n² 4^{2n})`.
    pub fn curve(&self) -> KdvLambdaPoly {
        let an = self.alpha(self.n());
        let s = rat(-2, 1) / (an * an * pow4(2 * self.n()));
        h_functional(&self.psi()).scale(&s)
    }
}

/// `sum_j α_j F_j`.
pub fn combination_constancy(c: &SolitonCombination) -> DiffPoly {
    c.constancy()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(k: u32) -> DiffPoly {
        DiffPoly::q(k)
    }

    fn f1() -> DiffPoly {
        q(2) + q(0).pow(2).scale_int(3)
    }

    #[test]
    fn first_densities() {
        assert_eq!(conserved_density(-1), DiffPoly::from_ratio(1, 2));
        assert_eq!(conserved_density(0), q(0));
        assert_eq!(conserved_density(1), f1());
        let f2 = q(4) + (&q(0) * &q(2)).scale_int(10) + q(1).pow(2).scale_int(5) + q(0).pow(3).scale_int(10);
        assert_eq!(conserved_density(2), f2);
    }

    #[test]
    fn basic_solitons() {
        assert_eq!(basic_soliton(0), KdvLambdaPoly::constant(DiffPoly::from_ratio(1, 2)));
        assert_eq!(basic_soliton(1), KdvLambdaPoly::from_coeffs(vec![q(0), DiffPoly::from_int(2)]));
        assert_eq!(basic_soliton(2), KdvLambdaPoly::from_coeffs(vec![f1(), q(0).scale_int(4), DiffPoly::from_int(8)]));
    }

    #[test]
    fn residual_examples() {
        assert_eq!(soliton_residual(&basic_soliton(0)), KdvLambdaPoly::constant(q(1)));
        assert_eq!(soliton_residual(&basic_soliton(1)), KdvLambdaPoly::constant(q(0).apply_b()));
        assert_eq!(soliton_residual(&basic_soliton(2)), KdvLambdaPoly::constant(f1().apply_b()));
    }

    #[test]
    fn stationary_examples() {
        assert_eq!(stationary_equation(0), q(1));
        let s2 =
            q(5) + (&q(0) * &q(3)).scale_int(10) + (&q(1) * &q(2)).scale_int(20) + (&q(0).pow(2) * &q(1)).scale_int(30);
        assert_eq!(stationary_equation(2), s2);
    }

    #[test]
    fn h0_and_curve_leading() {
        let h0 = hn_closed_form(0);
        assert_eq!(h0, KdvLambdaPoly::from_coeffs(vec![q(0).scale(&rat(1, 2)), DiffPoly::from_ratio(-1, 2)]));
        for n in 0..4 {
            let p = curve_polynomial(n);
            assert_eq!(p.degree(), Some(2 * n as usize + 1));
            assert_eq!(p.leading(), Some(&DiffPoly::one()));
        }
    }

    #[test]
    fn expansion_small() {
        for n in 0..=2 {
            assert!(expansion_check(n).unwrap().passed());
        }
        assert!(matches!(expansion_check(5), Err(KdvError::OutOfRange(5))));
    }

    #[test]
    fn combination_examples() {
        let c = SolitonCombination::from_ints(&[1, 2]).unwrap();
        assert_eq!(c.constancy(), f1() + q(0).scale_int(2));
        assert_eq!(SolitonCombination::from_ints(&[1]).unwrap().constancy(), q(0));
        assert_eq!(SolitonCombination::basic(2).psi(), basic_soliton(2));
        assert_eq!(SolitonCombination::basic(2).curve(), curve_polynomial(2));
        assert!(SolitonCombination::from_ints(&[0, 1]).is_err());
    }

    #[test]
    fn combination_curve_subleading() {
        // α_{n-1}/(2α_n) sits just below the leading power.
        let c = SolitonCombination::new(vec![rat(2, 1), rat(3, 1), rat(5, 1)]).unwrap();
        let p = c.curve();
        assert_eq!(p.leading(), Some(&DiffPoly::one()));
        assert_eq!(p.coeff(4), DiffPoly::from_ratio(3, 4));
    }
}
