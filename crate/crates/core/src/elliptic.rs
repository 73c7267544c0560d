//! Complete elliptic integral, Jacobi functions, and the cnoidal / sech² travelling waves.
//!
//! Cnoidal formulas are in the field `u`, which solves `u_t − 6uu_x + u_xxx = 0`;
//! the KdV-convention field is `q = −u`.

use std::f64::consts::FRAC_PI_2;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EllipticError {
    #[error("parameter m={0} outside the allowed range")]
    DomainError(f64),
    #[error("cnoidal roots must satisfy f3 < f2 < f1 (got {f1}, {f2}, {f3})")]
    RootOrder { f1: f64, f2: f64, f3: f64 },
    #[error("speed {given} inconsistent with roots (expected {expected})")]
    SpeedMismatch { given: f64, expected: f64 },
    #[error("sech soliton needs c > 0 (got {0})")]
    NonPositiveSpeed(f64),
}

/// `K(m) = ∫_0^{π/2} dθ / sqrt(1 − m sin²θ)` by the arithmetic-geometric mean.
pub fn complete_k(m: f64) -> Result<f64, EllipticError> {
    if !(0.0..1.0).contains(&m) {
        return Err(EllipticError::DomainError(m));
    }
    let (mut a, mut b) = (1.0f64, (1.0 - m).sqrt());
    for _ in 0..64 {
        if (a - b).abs() <= f64::EPSILON * a {
            break;
        }
        let an = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = an;
    }
    Ok(FRAC_PI_2 / a)
}

/// `(sn, cn, dn)(u | m)` for `0 ≤ m ≤ 1` by descending Landen transformation.
pub fn jacobi_sn_cn_dn(u: f64, m: f64) -> Result<(f64, f64, f64), EllipticError> {
    if !(0.0..=1.0).contains(&m) {
        return Err(EllipticError::DomainError(m));
    }
    if m == 0.0 {
        return Ok((u.sin(), u.cos(), 1.0));
    }
    if m == 1.0 {
        let s = 1.0 / u.cosh();
        return Ok((u.tanh(), s, s));
    }
    let mut a = vec![1.0f64];
    let mut c = vec![m.sqrt()];
    let mut b = (1.0 - m).sqrt();
    while c.last().unwrap().abs() > f64::EPSILON && a.len() < 64 {
        let an = *a.last().unwrap();
        let a_next = 0.5 * (an + b);
        let c_next = 0.5 * (an - b);
        b = (an * b).sqrt();
        a.push(a_next);
        c.push(c_next);
    }
    let n = a.len() - 1;
    let mut phi = 2f64.powi(n as i32) * a[n] * u;
    for k in (1..=n).rev() {
        phi = 0.5 * (phi + (c[k] / a[k] * phi.sin()).asin());
    }
    let sn = phi.sin();
    let cn = phi.cos();
    let dn = (1.0 - m * sn * sn).sqrt();
    Ok((sn, cn, dn))
}

pub fn jacobi_cn(u: f64, m: f64) -> Result<f64, EllipticError> {
    jacobi_sn_cn_dn(u, m).map(|t| t.1)
}

pub fn jacobi_sn(u: f64, m: f64) -> Result<f64, EllipticError> {
    jacobi_sn_cn_dn(u, m).map(|t| t.0)
}

/// Value and x-derivatives of a real field at one point: `derivs[k] = f^(k)(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileJet {
    pub derivs: Vec<f64>,
}

impl ProfileJet {
    pub fn new(derivs: Vec<f64>) -> Self {
        Self { derivs }
    }

    pub fn value(&self) -> f64 {
        self.derivs[0]
    }

    pub fn d(&self, k: usize) -> f64 {
        self.derivs[k]
    }

    pub fn order(&self) -> usize {
        self.derivs.len().saturating_sub(1)
    }

    /// `q = −u` conversion.
    pub fn negated(&self) -> Self {
        Self::new(self.derivs.iter().map(|v| -v).collect())
    }

    pub fn is_finite(&self) -> bool {
        self.derivs.iter().all(|v| v.is_finite())
    }
}

/// Roots `f3 < f2 < f1` of `(f − f1)(f − f2)(f − f3)`, speed `c` and phase `x0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CnoidalParams {
    pub f1: f64,
    pub f2: f64,
    pub f3: f64,
    pub c: f64,
    pub x0: f64,
}

impl CnoidalParams {
    /// Speed derived from the roots: `c = −2(f1 + f2 + f3)`.
    pub fn new(f1: f64, f2: f64, f3: f64, x0: f64) -> Result<Self, EllipticError> {
        if !(f3 < f2 && f2 < f1) || !(f1.is_finite() && f3.is_finite()) {
            return Err(EllipticError::RootOrder { f1, f2, f3 });
        }
        Ok(Self { f1, f2, f3, c: -2.0 * (f1 + f2 + f3), x0 })
    }

    /// Validates a user-supplied speed against the roots.
    pub fn with_speed(f1: f64, f2: f64, f3: f64, c: f64, x0: f64) -> Result<Self, EllipticError> {
        let p = Self::new(f1, f2, f3, x0)?;
        let tol = 1e-12 * (1.0 + p.c.abs());
        if (p.c - c).abs() > tol {
            return Err(EllipticError::SpeedMismatch { given: c, expected: p.c });
        }
        Ok(p)
    }

    pub fn modulus(&self) -> f64 {
        (self.f2 - self.f3) / (self.f1 - self.f3)
    }

    /// Spatial wavenumber of the argument of `sn`.
    pub fn kappa(&self) -> f64 {
        (0.5 * (self.f1 - self.f3)).sqrt()
    }

    /// `A` in `½f'² = f³ + (c/2)f² + Af + B`.
    pub fn a_coef(&self) -> f64 {
        self.f1 * self.f2 + self.f1 * self.f3 + self.f2 * self.f3
    }

    /// `B` in `½f'² = f³ + (c/2)f² + Af + B`.
    pub fn b_coef(&self) -> f64 {
        -self.f1 * self.f2 * self.f3
    }

    /// Residual of `½f'² = f³ + (c/2)f² + Af + B` at a jet of `u`.
    pub fn phase_space_residual(&self, jet: &ProfileJet) -> f64 {
        let f = jet.d(0);
        0.5 * jet.d(1).powi(2) - (f.powi(3) + 0.5 * self.c * f * f + self.a_coef() * f + self.b_coef())
    }
}

/// `u = f3 + (f2 − f3) sn²(κ(x − x0) | m)` with four analytic derivatives.
pub fn cnoidal_profile(p: &CnoidalParams, x: f64) -> ProfileJet {
    let m = p.modulus();
    let k = p.kappa();
    let (s, c, d) = jacobi_sn_cn_dn(k * (x - p.x0), m).expect("modulus in (0,1)");
    let ss = s * s;
    let scd = s * c * d;
    let w1 = 2.0 * scd;
    let w2 = 2.0 * (1.0 - 2.0 * (1.0 + m) * ss + 3.0 * m * ss * ss);
    let w3 = 4.0 * scd * (-2.0 * (1.0 + m) + 6.0 * m * ss);
    let w4 = 48.0 * m * ss * (1.0 - ss) * (1.0 - m * ss)
        + (-4.0 * (1.0 + m) + 12.0 * m * ss) * (2.0 - 4.0 * (1.0 + m) * ss + 6.0 * m * ss * ss);
    let amp = p.f2 - p.f3;
    ProfileJet::new(vec![
        p.f3 + amp * ss,
        amp * k * w1,
        amp * k.powi(2) * w2,
        amp * k.powi(3) * w3,
        amp * k.powi(4) * w4,
    ])
}

/// Derivatives `d^k/dz^k sech^p(z)` for `k = 0..=order`.
///
/// Uses `d/dz[sech^p g(T)] = sech^p (−pT g + (1 − T²) g')` with `T = tanh z`.
pub fn sech_power_derivs(p: u32, z: f64, order: usize) -> Vec<f64> {
    let t = z.tanh();
    let s = 1.0 / z.cosh();
    let sp = s.powi(p as i32);
    let mut g = vec![1.0f64];
    let mut out = Vec::with_capacity(order + 1);
    for _ in 0..=order {
        let gv = g.iter().rev().fold(0.0, |acc, c| acc * t + c);
        out.push(sp * gv);
        let mut next = vec![0.0; g.len() + 1];
        for (i, &c) in g.iter().enumerate() {
            next[i + 1] -= p as f64 * c;
            if i > 0 {
                next[i - 1] += i as f64 * c;
                next[i + 1] -= i as f64 * c;
            }
        }
        g = next;
    }
    out
}

/// KdV soliton `q = (c/2) sech²(√c (x − x0) / 2)` with derivatives to `order`.
pub fn sech_soliton_jet(c: f64, x0: f64, x: f64, order: usize) -> Result<ProfileJet, EllipticError> {
    if c <= 0.0 || !c.is_finite() {
        return Err(EllipticError::NonPositiveSpeed(c));
    }
    let k = 0.5 * c.sqrt();
    let d = sech_power_derivs(2, k * (x - x0), order);
    Ok(ProfileJet::new(d.iter().enumerate().map(|(i, v)| 0.5 * c * k.powi(i as i32) * v).collect()))
}

/// [`sech_soliton_jet`] to fourth order.
pub fn sech_soliton(c: f64, x0: f64, x: f64) -> Result<ProfileJet, EllipticError> {
    sech_soliton_jet(c, x0, x, 4)
}

/// `P = 2K(m) sqrt(2 / (f1 − f3))`.
pub fn period(p: &CnoidalParams) -> f64 {
    2.0 * complete_k(p.modulus()).expect("modulus in (0,1)") / p.kappa()
}

/// `−c f' − 6 f f' + f'''` at a jet of `f = u`.
pub fn travelling_residual(c: f64, jet: &ProfileJet) -> f64 {
    -c * jet.d(1) - 6.0 * jet.d(0) * jet.d(1) + jet.d(3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn k_values() {
        assert_eq!(complete_k(0.0).unwrap(), FRAC_PI_2);
        assert!(complete_k(1.0).is_err());
        assert!(complete_k(-0.1).is_err());
        let quad = crate::quad::integrate(|t| 1.0 / (1.0 - 0.5 * t.sin().powi(2)).sqrt(), 0.0, FRAC_PI_2, 20, 8);
        assert!((complete_k(0.5).unwrap() - quad).abs() < 1e-12);
        assert!((complete_k(0.5).unwrap() - 1.854_074_677_301_372).abs() < 1e-14);
    }

    #[test]
    fn jacobi_limits() {
        assert_eq!(jacobi_cn(0.0, 0.3).unwrap(), 1.0);
        assert!((jacobi_cn(1.0, 0.0).unwrap() - 1f64.cos()).abs() < 1e-15);
        assert!((jacobi_cn(0.7, 1.0).unwrap() - 1.0 / 0.7f64.cosh()).abs() < 1e-15);
        let (sn, cn, dn) = jacobi_sn_cn_dn(0.5, 0.3).unwrap();
        assert!((cn * cn + sn * sn - 1.0).abs() < 1e-15);
        assert!((dn * dn + 0.3 * sn * sn - 1.0).abs() < 1e-15);
        assert!(jacobi_cn(0.1, 1.5).is_err());
    }

    #[test]
    fn quarter_period_zero() {
        let m = 0.6;
        let k = complete_k(m).unwrap();
        assert!(jacobi_cn(k, m).unwrap().abs() < 1e-13);
        assert!((jacobi_sn(k, m).unwrap() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn sn_matches_inverse_of_incomplete_integral() {
        // u = F(φ|m) ⇒ sn(u|m) = sin φ
        let (m, phi) = (0.3, 0.8);
        let u = crate::quad::integrate(|t| 1.0 / (1.0 - m * t.sin().powi(2)).sqrt(), 0.0, phi, 20, 4);
        assert!((jacobi_sn(u, m).unwrap() - phi.sin()).abs() < 1e-14);
    }

    #[test]
    fn cnoidal_basics() {
        let p = CnoidalParams::new(1.0, 0.0, -1.0, 0.3).unwrap();
        assert_eq!(p.c, 0.0);
        assert_eq!(cnoidal_profile(&p, 0.3).value(), -1.0);
        assert!((period(&p) - 2.0 * complete_k(0.5).unwrap()).abs() < 1e-14);
        assert!(CnoidalParams::new(0.0, 1.0, -1.0, 0.0).is_err());
        assert!(CnoidalParams::with_speed(1.0, 0.5, -1.0, -1.0, 0.0).is_ok());
        assert!(CnoidalParams::with_speed(1.0, 0.5, -1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn cnoidal_derivatives_match_finite_differences() {
        let p = CnoidalParams::new(1.3, 0.2, -0.9, 0.1).unwrap();
        let h = 1e-5;
        for i in 0..20 {
            let x = -2.0 + 0.23 * i as f64;
            let j = cnoidal_profile(&p, x);
            let jp = cnoidal_profile(&p, x + h);
            let jm = cnoidal_profile(&p, x - h);
            for k in 0..4 {
                let fd = (jp.d(k) - jm.d(k)) / (2.0 * h);
                assert!((fd - j.d(k + 1)).abs() < 1e-6, "order {k} at {x}: {fd} vs {}", j.d(k + 1));
            }
        }
    }

    #[test]
    fn cnoidal_solves_travelling_equation() {
        let p = CnoidalParams::new(1.3, 0.2, -0.9, 0.1).unwrap();
        for i in 0..50 {
            let j = cnoidal_profile(&p, 0.17 * i as f64);
            assert!(p.phase_space_residual(&j).abs() < 1e-12);
            assert!(travelling_residual(p.c, &j).abs() < 1e-11);
        }
    }

    #[test]
    fn sech_basics() {
        let j = sech_soliton(2.0, 1.0, 1.0).unwrap();
        assert_eq!(j.value(), 1.0);
        assert!(sech_soliton(2.0, 0.0, 60.0).unwrap().value() < 1e-30);
        assert!(sech_soliton(-1.0, 0.0, 0.0).is_err());
        for i in 0..30 {
            let j = sech_soliton(1.7, 0.2, -3.0 + 0.2 * i as f64).unwrap().negated();
            assert!(travelling_residual(1.7, &j).abs() < 1e-12);
        }
    }

    #[test]
    fn sech_power_derivative_rule() {
        let z = 0.37;
        let d = sech_power_derivs(1, z, 2);
        let s = 1.0 / z.cosh();
        let t = z.tanh();
        assert!((d[1] + s * t).abs() < 1e-15);
        assert!((d[2] - s * (2.0 * t * t - 1.0)).abs() < 1e-15);
    }

    #[test]
    fn harmonic_limit() {
        let p = CnoidalParams::new(1.0, -0.999_999, -1.0, 0.0).unwrap();
        let harmonic = 2.0 * PI / (2.0 * (p.f1 - p.f3)).sqrt();
        assert!((period(&p) - harmonic).abs() < 1e-5);
    }

    #[test]
    fn near_one_modulus_approaches_sech() {
        let c = 1.5;
        let m = 1.0 - 1e-10;
        let delta = (1.0 - m) * c / 2.0;
        let p = CnoidalParams::new(0.0, -delta, -c / 2.0, 0.0).unwrap();
        for i in 0..20 {
            let x = -4.0 + 0.4 * i as f64;
            let u = cnoidal_profile(&p, x).value();
            let q = sech_soliton(c, 0.0, x).unwrap().value();
            assert!((u + q).abs() < 1e-8, "{x}: {u} vs {q}");
        }
    }
}
