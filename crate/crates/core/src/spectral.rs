//! Numeric spectral curves `Y² ∝ P_n(X)` and the auxiliary spectrum (roots of `ψ` in λ).

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::diffpoly::{rational_to_f64, DiffPolyError, KdvLambdaPoly};
use crate::elliptic::ProfileJet;
use crate::kdv::SolitonCombination;

/// Minimum separation between distinct roots, and the imaginary-part cutoff.
pub const ROOT_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpectralError {
    #[error("degenerate curve: {0}")]
    DegenerateCurve(String),
    #[error("auxiliary spectrum has nonreal roots: {0:?}")]
    ComplexAuxSpectrum(Vec<(f64, f64)>),
    #[error("invalid curve data: {0}")]
    Invalid(String),
    #[error(transparent)]
    DiffPoly(#[from] DiffPolyError),
}

/// Monic `P_n(X) = sum_j coeffs[j] X^j` of degree `2n+1` with sorted real roots.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralCurveNumeric {
    pub n: usize,
    pub coeffs: Vec<f64>,
    pub branch_points: Vec<f64>,
}

/// A point of the auxiliary spectrum with its branch of `sqrt(P_n)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AuxiliaryPoint {
    pub lambda: f64,
    pub sign: i8,
}

impl AuxiliaryPoint {
    pub fn new(lambda: f64, sign: i8) -> Self {
        Self { lambda, sign: if sign < 0 { -1 } else { 1 } }
    }
}

/// Coefficients of `prod (X − r_i)`, lowest power first.
pub fn expand_roots(roots: &[f64]) -> Vec<f64> {
    let mut c = vec![1.0];
    for &r in roots {
        let mut next = vec![0.0; c.len() + 1];
        for (i, &ci) in c.iter().enumerate() {
            next[i + 1] += ci;
            next[i] -= r * ci;
        }
        c = next;
    }
    c
}

/// Horner evaluation of `sum c_j x^j`.
pub fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &cj| acc * x + cj)
}

fn horner_with_derivative(c: &[f64], x: f64) -> (f64, f64) {
    let mut p = 0.0;
    let mut d = 0.0;
    for &cj in c.iter().rev() {
        d = d * x + p;
        p = p * x + cj;
    }
    (p, d)
}

/// Real roots of `sum c_j x^j` (leading entry nonzero) via companion eigenvalues and
/// two Newton steps. Errors if a root is nonreal beyond [`ROOT_TOL`].
pub fn real_roots(c: &[f64]) -> Result<Vec<f64>, Vec<(f64, f64)>> {
    let deg = c.len() - 1;
    let lead = c[deg];
    let monic: Vec<f64> = c.iter().map(|v| v / lead).collect();
    if deg == 0 {
        return Ok(Vec::new());
    }
    let mut comp = DMatrix::<f64>::zeros(deg, deg);
    for i in 1..deg {
        comp[(i, i - 1)] = 1.0;
    }
    for i in 0..deg {
        comp[(i, deg - 1)] = -monic[i];
    }
    let eig: Vec<Complex64> = match Schur::try_new(comp, f64::EPSILON, 10_000) {
        Some(schur) => schur.complex_eigenvalues().iter().copied().collect(),
        None => durand_kerner(&monic),
    };
    let mut roots = Vec::with_capacity(deg);
    let mut complex = Vec::new();
    for z in eig.iter() {
        if z.im.abs() > ROOT_TOL * (1.0 + z.re.abs()) {
            complex.push((z.re, z.im));
        }
        let mut x = z.re;
        for _ in 0..2 {
            let (p, d) = horner_with_derivative(&monic, x);
            if d != 0.0 && d.is_finite() {
                let step = p / d;
                if step.is_finite() {
                    x -= step;
                }
            }
        }
        roots.push(x);
    }
    if !complex.is_empty() {
        return Err(complex);
    }
    roots.sort_by(f64::total_cmp);
    Ok(roots)
}

/// Simultaneous root iteration, used when the Schur iteration does not converge.
fn durand_kerner(monic: &[f64]) -> Vec<Complex64> {
    let deg = monic.len() - 1;
    let radius = 1.0 + monic[..deg].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..deg).map(|k| seed.powu(k as u32) * radius).collect();
    let eval = |x: Complex64| monic.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c);
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..deg {
            let mut den = Complex64::new(1.0, 0.0);
            for j in (0..deg).filter(|&j| j != i) {
                den *= z[i] - z[j];
            }
            if den.norm() == 0.0 {
                continue;
            }
            let step = eval(z[i]) / den;
            z[i] -= step;
            moved = moved.max(step.norm());
        }
        if moved < 1e-15 * radius {
            break;
        }
    }
    z
}

fn check_separation(roots: &[f64]) -> Result<(), SpectralError> {
    for w in roots.windows(2) {
        if w[1] - w[0] < ROOT_TOL {
            return Err(SpectralError::DegenerateCurve(format!("roots {} and {} closer than {ROOT_TOL}", w[0], w[1])));
        }
    }
    Ok(())
}

impl SpectralCurveNumeric {
    /// Curve from its monic coefficient vector `c_0..c_{2n+1}`; branch points must be
    /// distinct reals.
    pub fn from_coeffs(coeffs: Vec<f64>) -> Result<Self, SpectralError> {
        if !coeffs.len().is_multiple_of(2) || coeffs.len() < 2 {
            return Err(SpectralError::Invalid(format!("{} coefficients do not give an odd degree", coeffs.len())));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(SpectralError::Invalid("non-finite coefficient".into()));
        }
        let lead = *coeffs.last().unwrap();
        if (lead - 1.0).abs() > 1e-12 {
            return Err(SpectralError::Invalid(format!("leading coefficient {lead} is not 1")));
        }
        let roots =
            real_roots(&coeffs).map_err(|c| SpectralError::DegenerateCurve(format!("nonreal branch points {c:?}")))?;
        check_separation(&roots)?;
        Ok(Self { n: (coeffs.len() - 2) / 2, coeffs, branch_points: roots })
    }

    /// Curve with prescribed distinct branch points.
    pub fn from_branch_points(points: Vec<f64>) -> Result<Self, SpectralError> {
        let curve = Self::from_branch_points_allow_degenerate(points)?;
        check_separation(&curve.branch_points)?;
        Ok(curve)
    }

    /// As [`Self::from_branch_points`] but permitting repeated points (collapsed gaps).
    pub fn from_branch_points_allow_degenerate(mut points: Vec<f64>) -> Result<Self, SpectralError> {
        if points.len() % 2 != 1 {
            return Err(SpectralError::Invalid(format!("need 2n+1 branch points, got {}", points.len())));
        }
        if points.iter().any(|p| !p.is_finite()) {
            return Err(SpectralError::Invalid("non-finite branch point".into()));
        }
        points.sort_by(f64::total_cmp);
        Ok(Self { n: points.len() / 2, coeffs: expand_roots(&points), branch_points: points })
    }

    pub fn eval(&self, x: f64) -> f64 {
        horner(&self.coeffs, x)
    }

    /// Closed real ovals `[e_{2k}, e_{2k+1}]`, `k = 0..n`, on which `P_n ≥ 0`.
    pub fn gaps(&self) -> Vec<(f64, f64)> {
        (0..self.n).map(|k| (self.branch_points[2 * k], self.branch_points[2 * k + 1])).collect()
    }

    /// Index of the gap containing `x`, with slack `tol`.
    pub fn gap_of(&self, x: f64, tol: f64) -> Option<usize> {
        self.gaps().iter().position(|&(a, b)| x >= a - tol && x <= b + tol)
    }

    /// `c_{2n}`, equal to minus the sum of branch points.
    pub fn subleading(&self) -> f64 {
        self.coeffs[2 * self.n]
    }

    /// `q = −2 sum λ_k − c_{2n}`.
    pub fn trace_q(&self, lambdas: impl IntoIterator<Item = f64>) -> f64 {
        -2.0 * lambdas.into_iter().sum::<f64>() - self.subleading()
    }

    /// Largest relative deviation between `coeffs` and the expansion of the branch points.
    pub fn expansion_mismatch(&self) -> f64 {
        let e = expand_roots(&self.branch_points);
        let scale = self.coeffs.iter().fold(1.0f64, |m, c| m.max(c.abs()));
        e.iter().zip(&self.coeffs).map(|(a, b)| (a - b).abs() / scale).fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "schema": crate::SCHEMA,
            "n": self.n,
            "coeffs": self.coeffs,
            "branch_points": self.branch_points,
        })
    }
}

/// `P(x)` by Horner.
pub fn curve_eval(c: &SpectralCurveNumeric, x: f64) -> f64 {
    c.eval(x)
}

fn eval_lambda_poly(p: &KdvLambdaPoly, jet: &ProfileJet) -> Result<Vec<f64>, SpectralError> {
    Ok(p.evaluate(&jet.derivs)?)
}

/// Coefficients of the monic curve of `comb` at a jet, without root finding.
pub fn curve_coeffs_at(comb: &SolitonCombination, jet: &ProfileJet) -> Result<Vec<f64>, SpectralError> {
    eval_lambda_poly(&comb.curve(), jet)
}

/// Curve of `comb` evaluated at a jet of `q`.
pub fn curve_from_profile_combo(
    comb: &SolitonCombination,
    jet: &ProfileJet,
) -> Result<SpectralCurveNumeric, SpectralError> {
    let mut c = curve_coeffs_at(comb, jet)?;
    c.resize(2 * comb.n() as usize + 2, 0.0);
    SpectralCurveNumeric::from_coeffs(c)
}

/// Curve of the basic soliton `φ_n` at a jet of `q` (derivatives to order `2n`).
pub fn curve_from_profile(n: u32, jet: &ProfileJet) -> Result<SpectralCurveNumeric, SpectralError> {
    curve_from_profile_combo(&SolitonCombination::basic(n), jet)
}

/// Real roots of `ψ(x; λ)` with branch signs `sign(ψ'(λ_k))`.
pub fn aux_spectrum_combo(comb: &SolitonCombination, jet: &ProfileJet) -> Result<Vec<AuxiliaryPoint>, SpectralError> {
    let psi = comb.psi();
    let c = eval_lambda_poly(&psi, jet)?;
    if comb.n() == 0 {
        return Ok(Vec::new());
    }
    let roots = real_roots(&c).map_err(SpectralError::ComplexAuxSpectrum)?;
    let dpsi = psi.derivative();
    let lead = rational_to_f64(comb.alpha(comb.n()));
    let dc = if dpsi.is_zero() { Vec::new() } else { eval_lambda_poly(&dpsi, jet)? };
    Ok(roots
        .into_iter()
        .map(|l| {
            let slope = horner(&dc, l) * lead.signum();
            AuxiliaryPoint::new(l, if slope < 0.0 { -1 } else { 1 })
        })
        .collect())
}

/// Auxiliary spectrum of `φ_n` at a jet of `q`.
pub fn aux_spectrum(n: u32, jet: &ProfileJet) -> Result<Vec<AuxiliaryPoint>, SpectralError> {
    aux_spectrum_combo(&SolitonCombination::basic(n), jet)
}
