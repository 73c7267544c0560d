//! Analytic complex profiles `q(x)` and numeric checks of the NLS reductions.

use num_complex::Complex64;
use serde::Serialize;

use super::{condition_residuals, EFPoly, NlsError};
use crate::diffpoly::Coeff;
use crate::elliptic::sech_power_derivs;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Closed-form shapes with derivatives of every order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProfileShape {
    /// `c e^{−ikx}`.
    PlaneWave { c_re: f64, c_im: f64, k: f64 },
    /// `e^{rate x}`.
    Exp { rate: f64 },
    /// `a sech(a x)`.
    Sech { a: f64 },
    /// `(x² + 2) e^{ix}`.
    QuadraticPhase,
    /// `a sech(a x) (1 + eps cos x)`, not a stationary solution for `eps ≠ 0`.
    PerturbedSech { a: f64, eps: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComplexProfile {
    pub shape: ProfileShape,
    /// `+1` focusing, `−1` defocusing.
    pub sigma: f64,
}

fn binom(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn leibniz(f: &[Complex64], g: &[Complex64]) -> Vec<Complex64> {
    (0..f.len().min(g.len())).map(|n| (0..=n).map(|j| f[j] * g[n - j] * binom(n, j)).sum()).collect()
}

impl ComplexProfile {
    pub fn new(shape: ProfileShape, sigma: f64) -> Self {
        Self { shape, sigma }
    }

    /// `q, q', ..., q^(order)` at `x`.
    pub fn jet(&self, x: f64, order: usize) -> Vec<Complex64> {
        match self.shape {
            ProfileShape::PlaneWave { c_re, c_im, k } => {
                let base = Complex64::new(c_re, c_im) * (-I * k * x).exp();
                (0..=order).map(|n| base * (-I * k).powu(n as u32)).collect()
            }
            ProfileShape::Exp { rate } => {
                (0..=order).map(|n| Complex64::from(rate.powi(n as i32) * (rate * x).exp())).collect()
            }
            ProfileShape::Sech { a } => sech_jet(a, x, order),
            ProfileShape::QuadraticPhase => {
                let mut p = vec![Complex64::from(x * x + 2.0), Complex64::from(2.0 * x), Complex64::from(2.0)];
                p.resize(order + 1, Complex64::from(0.0));
                let w = (I * x).exp();
                let ph: Vec<Complex64> = (0..=order).map(|n| w * I.powu(n as u32)).collect();
                leibniz(&p, &ph)
            }
            ProfileShape::PerturbedSech { a, eps } => {
                let s = sech_jet(a, x, order);
                let c: Vec<Complex64> = (0..=order)
                    .map(|n| {
                        let d = match n % 4 {
                            0 => x.cos(),
                            1 => -x.sin(),
                            2 => -x.cos(),
                            _ => x.sin(),
                        };
                        Complex64::from(if n == 0 { 1.0 + eps * d } else { eps * d })
                    })
                    .collect();
                leibniz(&s, &c)
            }
        }
    }
}

fn sech_jet(a: f64, x: f64, order: usize) -> Vec<Complex64> {
    sech_power_derivs(1, a * x, order)
        .iter()
        .enumerate()
        .map(|(n, v)| Complex64::from(a.powi(n as i32 + 1) * v))
        .collect()
}

fn taylor(jet: &[Complex64]) -> Vec<Complex64> {
    let mut fact = 1.0;
    jet.iter()
        .enumerate()
        .map(|(j, v)| {
            if j > 0 {
                fact *= j as f64;
            }
            v / fact
        })
        .collect()
}

fn untaylor(s: &[Complex64]) -> Vec<Complex64> {
    let mut fact = 1.0;
    s.iter()
        .enumerate()
        .map(|(j, v)| {
            if j > 0 {
                fact *= j as f64;
            }
            v * fact
        })
        .collect()
}

fn smul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    (0..a.len().min(b.len())).map(|n| (0..=n).map(|j| a[j] * b[n - j]).sum()).collect()
}

fn sdiv(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let n = a.len().min(b.len());
    let mut c = vec![Complex64::from(0.0); n];
    for j in 0..n {
        let s: Complex64 = (0..j).map(|i| c[i] * b[j - i]).sum();
        c[j] = (a[j] - s) / b[0];
    }
    c
}

fn check_nonzero(q: Complex64, x: f64) -> Result<(), NlsError> {
    if !(q.norm() > 1e-12) {
        return Err(NlsError::ZeroField(x));
    }
    Ok(())
}

/// Derivative jets of `E` and `F` at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct EfJet {
    pub e: Vec<Complex64>,
    pub f: Vec<Complex64>,
}

/// `E = i q'/q` and `F = −E²/4 − σ|q|² + (i/2)E'` with derivatives to `order`.
pub fn ef_from_profile(p: &ComplexProfile, x: f64, order: usize) -> Result<EfJet, NlsError> {
    let qj = p.jet(x, order + 2);
    check_nonzero(qj[0], x)?;
    let q = taylor(&qj);
    let len = order + 2;
    let dq: Vec<Complex64> = (0..len).map(|j| q[j + 1] * (j + 1) as f64).collect();
    let e: Vec<Complex64> = sdiv(&dq, &q[..len]).iter().map(|v| v * I).collect();
    let conj: Vec<Complex64> = q.iter().map(|v| v.conj()).collect();
    let modsq = smul(&q[..len], &conj[..len]);
    let e2 = smul(&e, &e);
    let de: Vec<Complex64> = (0..len - 1).map(|j| e[j + 1] * (j + 1) as f64).collect();
    let f: Vec<Complex64> = (0..=order).map(|j| -0.25 * e2[j] - p.sigma * modsq[j] + 0.5 * I * de[j]).collect();
    Ok(EfJet { e: untaylor(&e[..=order]), f: untaylor(&f) })
}

/// Numeric value of an `(E, F)` polynomial at a jet.
pub fn evaluate_ef(p: &EFPoly, jet: &EfJet) -> Result<Complex64, NlsError> {
    Ok(p.eval_with(
        |v| if v.field == 0 { jet.e.get(v.order as usize).copied() } else { jet.f.get(v.order as usize).copied() },
        |c| c.to_complex(),
    )?)
}

/// Genus-1 curve constants fitted at the first sample, and the drift of
/// `E'² + E⁴ + 4ωE² − 2C₁E − 2C₂` along the samples.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurveReport {
    pub c1_re: f64,
    pub c1_im: f64,
    pub c2_re: f64,
    pub c2_im: f64,
    pub drift: f64,
}

pub fn nls_curve_check(p: &ComplexProfile, omega: f64, xs: &[f64]) -> Result<CurveReport, NlsError> {
    let jets = xs.iter().map(|&x| ef_from_profile(p, x, 2)).collect::<Result<Vec<_>, _>>()?;
    let j0 = &jets[0];
    let (e, de, dde) = (j0.e[0], j0.e[1], j0.e[2]);
    let c1 = dde + 2.0 * e.powu(3) + 4.0 * omega * e;
    let c2 = 0.5 * de * de + 0.5 * e.powu(4) + 2.0 * omega * e * e - c1 * e;
    let drift = jets
        .iter()
        .map(|j| {
            let (e, de) = (j.e[0], j.e[1]);
            (de * de + e.powu(4) + 4.0 * omega * e * e - 2.0 * c1 * e - 2.0 * c2).norm()
        })
        .fold(0.0, f64::max);
    Ok(CurveReport { c1_re: c1.re, c1_im: c1.im, c2_re: c2.re, c2_im: c2.im, drift })
}

/// Largest deviation in each of the three identities for `E', E'', E'''` in terms of
/// `E_(n) = i q^(n) / q`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DerivativeIdentityReport {
    pub samples: usize,
    pub max_error: [f64; 3],
}

pub fn derivative_identity_check(p: &ComplexProfile, xs: &[f64]) -> Result<DerivativeIdentityReport, NlsError> {
    let mut worst = [0.0f64; 3];
    for &x in xs {
        let qj = p.jet(x, 4);
        check_nonzero(qj[0], x)?;
        let en: Vec<Complex64> = qj.iter().map(|d| I * d / qj[0]).collect();
        let ej = ef_from_profile(p, x, 3)?.e;
        let e = ej[0];
        let r = [
            ej[1] - (en[2] + I * e * e),
            ej[2] - (en[3] + 3.0 * I * en[2] * e - 2.0 * e.powu(3)),
            ej[3]
                - (en[4] + 4.0 * I * en[3] * e - 12.0 * e * e * en[2] - 6.0 * I * e.powu(4) + 3.0 * I * en[2] * en[2]),
        ];
        for (w, v) in worst.iter_mut().zip(r) {
            *w = w.max(v.norm());
        }
    }
    Ok(DerivativeIdentityReport { samples: xs.len(), max_error: worst })
}

/// Integrated degree-2 Condition A, `G = E'' − (5/2)E³ − 6EF` with `G' = R_A`,
/// compared with its q-form. `lhs = q (G(x) − G(x₀))`; `rhs = i q''' + 6iσ|q|² q' − C q`
/// with `C` fitted at `x₀`. `literal_mismatch` repeats the comparison with the
/// `6σ|q|² q'` term lacking the factor `i`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct A2Comparison {
    pub residual_scale: f64,
    pub mismatch: f64,
    pub literal_mismatch: f64,
}

pub fn condition_a2_comparison(p: &ComplexProfile, xs: &[f64]) -> Result<A2Comparison, NlsError> {
    let g = condition_residuals(2)?.0.formal_integral()?;
    let rows = xs
        .iter()
        .map(|&x| {
            let jet = ef_from_profile(p, x, 2)?;
            let qj = p.jet(x, 3);
            let gv = evaluate_ef(&g, &jet)?;
            let with_i = I * qj[3] + 6.0 * I * p.sigma * qj[0].norm_sqr() * qj[1];
            let literal = I * qj[3] + 6.0 * p.sigma * qj[0].norm_sqr() * qj[1];
            Ok((qj[0], gv, with_i, literal))
        })
        .collect::<Result<Vec<_>, NlsError>>()?;
    let (q0, g0, w0, l0) = rows[0];
    let (c, c_lit) = (w0 / q0, l0 / q0);
    let mut out = A2Comparison { residual_scale: 0.0, mismatch: 0.0, literal_mismatch: 0.0 };
    for &(q, gv, w, l) in &rows {
        let lhs = q * (gv - g0);
        out.residual_scale = out.residual_scale.max(lhs.norm());
        out.mismatch = out.mismatch.max((lhs - (w - c * q)).norm());
        out.literal_mismatch = out.literal_mismatch.max((lhs - (l - c_lit * q)).norm());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nls::{condition_residuals, e, f, nls_coefficient};

    fn lin(a: f64, b: f64, n: usize) -> Vec<f64> {
        (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
    }

    #[test]
    fn ef_examples() {
        let pw = ComplexProfile::new(ProfileShape::PlaneWave { c_re: 0.5, c_im: 0.2, k: 1.5 }, 1.0);
        let j = ef_from_profile(&pw, 0.7, 3).unwrap();
        assert!((j.e[0] - 1.5).norm() < 1e-14 && j.e[1].norm() < 1e-14);
        assert!((j.f[0] + 1.5 * 1.5 / 4.0 + 0.29).norm() < 1e-14);
        let ex = ComplexProfile::new(ProfileShape::Exp { rate: 1.0 }, 1.0);
        assert!((ef_from_profile(&ex, 0.3, 2).unwrap().e[0] - I).norm() < 1e-15);
        let s = ComplexProfile::new(ProfileShape::Sech { a: 1.3 }, 1.0);
        let j = ef_from_profile(&s, 0.4, 1).unwrap();
        assert!((j.e[0] + I * 1.3 * (1.3f64 * 0.4).tanh()).norm() < 1e-14);
    }

    #[test]
    fn zero_field_rejected() {
        let pw = ComplexProfile::new(ProfileShape::PlaneWave { c_re: 0.0, c_im: 0.0, k: 1.0 }, 1.0);
        assert!(matches!(ef_from_profile(&pw, 0.0, 2), Err(NlsError::ZeroField(_))));
    }

    #[test]
    fn one_soliton_condition_matches_q_form() {
        for shape in [ProfileShape::QuadraticPhase, ProfileShape::Sech { a: 0.8 }] {
            let p = ComplexProfile::new(shape, -1.0);
            for x in lin(-1.0, 1.0, 9) {
                let j = ef_from_profile(&p, x, 1).unwrap();
                let q = p.jet(x, 2);
                let lhs = 2.0 * j.f[0] + 1.5 * j.e[0] * j.e[0];
                let rhs = -2.0 * p.sigma * q[0].norm_sqr() - q[2] / q[0];
                assert!((lhs - rhs).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn plane_wave_closes_every_level() {
        let p = ComplexProfile::new(ProfileShape::PlaneWave { c_re: 1.0, c_im: -0.3, k: 0.7 }, -1.0);
        let jet = ef_from_profile(&p, 0.2, 6).unwrap();
        for n in 0..=4 {
            let (ra, rb) = condition_residuals(n).unwrap();
            assert!(evaluate_ef(&ra, &jet).unwrap().norm() < 1e-12);
            assert!(evaluate_ef(&rb, &jet).unwrap().norm() < 1e-12);
        }
    }

    #[test]
    fn symbolic_derivative_matches_numeric() {
        let p = ComplexProfile::new(ProfileShape::QuadraticPhase, 1.0);
        let a3 = nls_coefficient(3).unwrap();
        let h = 1e-4;
        let v = |x: f64| evaluate_ef(&a3, &ef_from_profile(&p, x, 4).unwrap()).unwrap();
        let fd = (v(0.3 + h) - v(0.3 - h)) / (2.0 * h);
        let exact = evaluate_ef(&a3.derivative(), &ef_from_profile(&p, 0.3, 4).unwrap()).unwrap();
        assert!((fd - exact).norm() < 1e-6);
        assert!(evaluate_ef(&(e(0) * f(1)), &ef_from_profile(&p, 0.3, 1).unwrap()).is_ok());
    }

    #[test]
    fn curve_checks() {
        let s = ComplexProfile::new(ProfileShape::Sech { a: 1.0 }, 1.0);
        let r = nls_curve_check(&s, 0.5, &lin(-3.0, 3.0, 61)).unwrap();
        assert!(r.drift < 1e-12 && r.c1_re.abs() < 1e-14 && (r.c2_re + 0.5).abs() < 1e-12);
        let pw = ComplexProfile::new(ProfileShape::PlaneWave { c_re: 1.0, c_im: 0.0, k: 2.0 }, 1.0);
        assert_eq!(nls_curve_check(&pw, 1.0, &lin(0.0, 1.0, 5)).unwrap().drift, 0.0);
        let bad = ComplexProfile::new(ProfileShape::PerturbedSech { a: 1.0, eps: 0.3 }, 1.0);
        assert!(nls_curve_check(&bad, 0.5, &lin(-3.0, 3.0, 61)).unwrap().drift > 0.1);
    }

    #[test]
    fn derivative_identity_examples() {
        let ex = ComplexProfile::new(ProfileShape::Exp { rate: 1.0 }, 1.0);
        assert!(derivative_identity_check(&ex, &lin(-1.0, 1.0, 10)).unwrap().max_error.iter().all(|&v| v < 1e-12));
        let qp = ComplexProfile::new(ProfileShape::QuadraticPhase, 1.0);
        assert!(derivative_identity_check(&qp, &lin(-1.0, 1.0, 50)).unwrap().max_error.iter().all(|&v| v < 1e-10));
    }

    #[test]
    fn condition_a2_forms_agree() {
        let s = ComplexProfile::new(ProfileShape::Sech { a: 1.0 }, 1.0);
        let cmp = condition_a2_comparison(&s, &lin(-2.0, 2.0, 41)).unwrap();
        assert!(cmp.residual_scale > 0.1);
        assert!(cmp.mismatch < 1e-10);
        assert!(cmp.literal_mismatch > 0.1);
    }
}
