//! Scalar NLS squared-eigenfunction recursion in the generators
//! `E = i q_x / q` and `F = −E²/4 − σ|q|² + (i/2)E'`.

mod profile;

use std::sync::{OnceLock, RwLock};

use crate::diffpoly::{rat, Alphabet, DiffPolyError, GaussianRational, LambdaPoly, Poly, Rational, Var};

pub use profile::{
    condition_a2_comparison, derivative_identity_check, ef_from_profile, evaluate_ef, nls_curve_check, A2Comparison,
    ComplexProfile, CurveReport, DerivativeIdentityReport, EfJet, ProfileShape,
};

/// Two-field alphabet `E, F` with `w(E^(k)) = k + 1`, `w(F^(k)) = k + 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct NlsFields;

impl Alphabet for NlsFields {
    const NAMES: &'static [&'static str] = &["E", "F"];
    fn weight(v: Var) -> u32 {
        v.order + 1 + v.field as u32
    }
}

pub type EFPoly = Poly<GaussianRational, NlsFields>;
pub type NlsLambdaPoly = LambdaPoly<GaussianRational, NlsFields>;

/// Largest `n` for which the basic solitons are offered by default.
pub const MAX_BASIC_N: u32 = 6;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NlsError {
    #[error("coefficient index {0} out of range")]
    OutOfRange(i64),
    #[error("q vanishes at x={0}")]
    ZeroField(f64),
    #[error("combination needs a nonzero leading coefficient")]
    ZeroLeading,
    #[error(transparent)]
    DiffPoly(#[from] DiffPolyError),
}

/// `E^(k)`.
pub fn e(k: u32) -> EFPoly {
    EFPoly::var(0, k)
}

/// `F^(k)`.
pub fn f(k: u32) -> EFPoly {
    EFPoly::var(1, k)
}

pub fn gauss(re_num: i64, re_den: i64) -> GaussianRational {
    GaussianRational::real(rat(re_num, re_den))
}

fn scale(p: &EFPoly, r: Rational) -> EFPoly {
    p.scale(&GaussianRational::real(r))
}

/// `⟨a, b⟩ = a' b + 2 a b'`.
pub fn bilinear_bracket(a: &EFPoly, b: &EFPoly) -> EFPoly {
    &a.derivative() * b + scale(&(a * &b.derivative()), rat(2, 1))
}

/// Memo table of `A_{-1}, A_0, A_1, ...`.
#[derive(Debug)]
pub struct NlsHierarchy {
    table: RwLock<Vec<EFPoly>>,
}

impl Default for NlsHierarchy {
    fn default() -> Self {
        Self::new()
    }
}

impl NlsHierarchy {
    pub fn new() -> Self {
        Self { table: RwLock::new(vec![EFPoly::zero(), EFPoly::constant(gauss(2, 1))]) }
    }

    pub fn global() -> &'static NlsHierarchy {
        static H: OnceLock<NlsHierarchy> = OnceLock::new();
        H.get_or_init(NlsHierarchy::new)
    }

    /// `A_j = ½∫[⟨E, A_{j−1}⟩ + ⟨F, A_{j−2}⟩] − ¼A_{j−2}''` with zero constants.
    pub fn coefficient(&self, j: i64) -> Result<EFPoly, NlsError> {
        if j < -1 {
            return Err(NlsError::OutOfRange(j));
        }
        let idx = (j + 1) as usize;
        if let Some(p) = self.table.read().expect("hierarchy lock poisoned").get(idx) {
            return Ok(p.clone());
        }
        let mut table = self.table.write().expect("hierarchy lock poisoned");
        while table.len() <= idx {
            let n = table.len();
            let (a1, a2) = (&table[n - 1], &table[n - 2]);
            let integrand = bilinear_bracket(&e(0), a1) + bilinear_bracket(&f(0), a2);
            let next = scale(&integrand.formal_integral()?, rat(1, 2)) - scale(&a2.nth_derivative(2), rat(1, 4));
            table.push(next);
        }
        Ok(table[idx].clone())
    }
}

/// `A_j` from the shared table.
pub fn nls_coefficient(j: i64) -> Result<EFPoly, NlsError> {
    NlsHierarchy::global().coefficient(j)
}

/// `φ_n = sum_j A_j λ^{n−j}`.
pub fn nls_basic_soliton(n: u32) -> Result<NlsLambdaPoly, NlsError> {
    let coeffs = (0..=n).rev().map(|j| nls_coefficient(j as i64)).collect::<Result<_, _>>()?;
    Ok(NlsLambdaPoly::from_coeffs(coeffs))
}

/// Differential-form closure residuals for degree `n`:
/// `R_A = A_{n−1}''' − 2⟨E, A_n⟩ − 2⟨F, A_{n−1}⟩` and `R_B = A_n''' − 2⟨F, A_n⟩`.
pub fn condition_residuals(n: u32) -> Result<(EFPoly, EFPoly), NlsError> {
    let an = nls_coefficient(n as i64)?;
    let am = nls_coefficient(n as i64 - 1)?;
    let two = rat(2, 1);
    let ra = am.nth_derivative(3)
        - scale(&bilinear_bracket(&e(0), &an), two.clone())
        - scale(&bilinear_bracket(&f(0), &am), two.clone());
    let rb = an.nth_derivative(3) - scale(&bilinear_bracket(&f(0), &an), two);
    Ok((ra, rb))
}

/// `ψ_n = sum_k α_k φ_{n−k}` with its aggregated closure residuals.
#[derive(Debug, Clone, PartialEq)]
pub struct NlsCombination {
    pub psi: NlsLambdaPoly,
    pub condition_a: EFPoly,
    pub condition_b: EFPoly,
}

/// Coefficients `B_i = sum_{j≤i} α_j A_{i−j}` and `sum_k α_k R_{A,B}(n−k)`.
pub fn combination_expand(alphas: &[GaussianRational]) -> Result<NlsCombination, NlsError> {
    if alphas.first().is_none_or(|a| *a == GaussianRational::real(Rational::from_integer(0.into()))) {
        return Err(NlsError::ZeroLeading);
    }
    let n = alphas.len() - 1;
    let mut coeffs = vec![EFPoly::zero(); n + 1];
    let mut ca = EFPoly::zero();
    let mut cb = EFPoly::zero();
    for i in 0..=n {
        let mut b = EFPoly::zero();
        for (j, a) in alphas.iter().enumerate().take(i + 1) {
            b = b + nls_coefficient((i - j) as i64)?.scale(a);
        }
        coeffs[n - i] = b;
        let (ra, rb) = condition_residuals((n - i) as u32)?;
        ca = ca + ra.scale(&alphas[i]);
        cb = cb + rb.scale(&alphas[i]);
    }
    Ok(NlsCombination { psi: NlsLambdaPoly::from_coeffs(coeffs), condition_a: ca, condition_b: cb })
}
