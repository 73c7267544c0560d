//! Acceptance suite: one test per criterion, each printing a single
//! `criterion N ... PASS|FAIL` line.

use std::io::Write;
use std::time::{Duration, Instant};

use soliton_forge::abel::{abel_map_theta, accumulate_along, drift, slope_fit};
use soliton_forge::diffpoly::{
    apply_b, lax_l, lax_p, op_commutator, rat, Alphabet, DiffPoly, GaussianRational, KdvLambdaPoly, LambdaPoly, Poly,
    Rational, Var,
};
use soliton_forge::dubrovin::fd::{d1_periodic, d2_periodic, d5_seven_point, d_five_point};
use soliton_forge::dubrovin::{kdv_residual, reconstruct_q, t_flow, x_flow};
use soliton_forge::elliptic::{cnoidal_profile, complete_k, jacobi_cn, period, CnoidalParams, ProfileJet};
use soliton_forge::kdv::{
    basic_soliton, conserved_density, curve_polynomial, expansion_check, hn_closed_form, soliton_residual,
    SolitonCombination,
};
use soliton_forge::nls::{
    condition_a2_comparison, condition_residuals, derivative_identity_check, e, ef_from_profile, evaluate_ef, f,
    nls_basic_soliton, nls_coefficient, nls_curve_check, ComplexProfile, EFPoly, ProfileShape,
};
use soliton_forge::spectral::{
    aux_spectrum, aux_spectrum_combo, curve_coeffs_at, curve_from_profile, curve_from_profile_combo, AuxiliaryPoint,
    SpectralCurveNumeric,
};
use soliton_forge::symmetry::identity_trial;

/// Writes to the process stdout directly so the line survives the test harness's capture.
fn report(n: u32, title: &str, pass: bool, detail: String) {
    let line = format!("criterion {n:>2} {} {title} ({detail})\n", if pass { "PASS" } else { "FAIL" });
    std::io::stdout().lock().write_all(line.as_bytes()).expect("stdout");
}

fn within(start: Instant, budget: Duration) -> (bool, String) {
    let t = start.elapsed();
    (t < budget, format!("{:.2}s of {:.0}s", t.as_secs_f64(), budget.as_secs_f64()))
}

fn q(k: u32) -> DiffPoly {
    DiffPoly::q(k)
}

fn c(num: i64, den: i64) -> DiffPoly {
    DiffPoly::from_ratio(num, den)
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}

#[test]
fn criterion_01_hierarchy_exactness() {
    let t = Instant::now();
    let f1 = q(2) + c(3, 1) * q(0).pow(2);
    let f2 = q(4) + c(10, 1) * &q(0) * &q(2) + c(5, 1) * q(1).pow(2) + c(10, 1) * q(0).pow(3);
    let ok = conserved_density(0) == q(0) && conserved_density(1) == f1 && conserved_density(2) == f2;
    let (fast, time) = within(t, Duration::from_secs(1));
    report(1, "hierarchy exactness F0, F1, F2", ok && fast, time);
    assert!(ok && fast);
}

#[test]
fn criterion_02_soliton_residual() {
    let t = Instant::now();
    let mut ok = true;
    for n in 0..=5u32 {
        let lhs = soliton_residual(&basic_soliton(n));
        let rhs = KdvLambdaPoly::constant(apply_b(&conserved_density(n as i64 - 1)));
        ok &= lhs == rhs;
    }
    let (fast, time) = within(t, Duration::from_secs(5));
    report(2, "B(phi_n) - 4 lambda phi_n' = B(F_{n-1}), n=0..5", ok && fast, time);
    assert!(ok && fast);
}

#[test]
fn criterion_03_expansion_identity() {
    let t = Instant::now();
    let mut failures = Vec::new();
    for n in 0..=4 {
        match expansion_check(n) {
            Ok(r) if r.passed() => {}
            Ok(_) => failures.push(format!("n={n}")),
            Err(e) => failures.push(format!("n={n}: {e}")),
        }
    }
    let (fast, time) = within(t, Duration::from_secs(10));
    let ok = failures.is_empty() && fast;
    report(3, "H_n expansion, differentiated form, n=0..4", ok, format!("{time}; failures {failures:?}"));
    assert!(ok);
}

/// Reference closed forms of the genus-1 and genus-2 curve polynomials, compared literally with `H_1`, `H_2`.
#[test]
fn criterion_04_reference_curve_polynomials() {
    let lambda = KdvLambdaPoly::lambda();
    let lam = |k: u32| (0..k).fold(KdvLambdaPoly::constant(DiffPoly::one()), |acc, _| &acc * &lambda);
    let sc = |p: DiffPoly, k: u32| &KdvLambdaPoly::constant(p) * &lam(k);
    let f1 = q(2) + c(3, 1) * q(0).pow(2);
    let r3 =
        lam(3) - sc(c(1, 4) * f1.clone(), 1) + sc(c(1, 8) * ((q(0).pow(3) + c(1, 2) * q(1).pow(2)) - &q(0) * &f1), 0);
    let n1 = hn_closed_form(1) == r3.scale(&rat(-8, 1));

    let f2 = conserved_density(2);
    let k2 = &q(0) * &q(4) - &q(1) * &q(3)
        + c(10, 1) * &q(0).pow(2) * &q(2)
        + c(1, 2) * q(2).pow(2)
        + c(10, 1) * &q(0) * &q(1).pow(2)
        + c(25, 2) * q(0).pow(4);
    let l2 = &q(4) * &(q(2) + c(3, 1) * q(0).pow(2)) - &q(3) * &(c(1, 2) * q(3) + c(6, 1) * &q(0) * &q(1))
        + &q(2) * &(c(8, 1) * &q(2) * &q(0) + c(6, 1) * q(1).pow(2) + c(30, 1) * q(0).pow(3))
        + c(18, 1) * q(0).pow(5);
    let r5 = lam(5) - sc(c(1, 16) * f2, 3) - sc(c(1, 32) * k2, 1) - sc(c(1, 128) * l2, 0);
    let h2 = hn_closed_form(2);
    let n2 = h2 == r5.scale(&rat(-128, 1));

    // What the recursion actually gives: no λ³ term, 8F_2 at λ², and the λ¹ coefficient below.
    let k2_true = &q(0) * &q(4) - &q(1) * &q(3)
        + c(10, 1) * &q(0).pow(2) * &q(2)
        + c(1, 2) * q(2).pow(2)
        + c(15, 2) * q(0).pow(4);
    let structure = h2.coeff(3).is_zero()
        && h2.coeff(2) == c(8, 1) * conserved_density(2)
        && h2.coeff(1) == c(4, 1) * k2_true
        && curve_polynomial(2).coeff(5) == DiffPoly::one();

    let ok = n1 && n2;
    report(
        4,
        "reference genus-1/genus-2 curve polynomials reproduced literally",
        ok,
        format!("genus-1 match {n1}, genus-2 match {n2}; recomputed genus-2 structure holds: {structure}"),
    );
    assert!(structure, "recomputed H_2 structure");
    assert!(ok, "reference genus-2 polynomial disagrees with H_2");
}

#[test]
fn criterion_05_commutator() {
    let lhs = op_commutator(&lax_l(), &lax_p());
    let target = q(3) + c(6, 1) * &q(0) * &q(1);
    let ok = lhs.order() == Some(0) && lhs.coeff(0) == target;
    report(5, "[D^2+q, -4D^3-6qD-3q'] = q''' + 6qq'", ok, format!("got {lhs}"));
    assert!(ok);
}

#[test]
fn criterion_06_symmetric_identity() {
    let (mut checks, mut failures) = (0, 0);
    for t in 0..200 {
        let o = identity_trial(20240611, t, 9);
        checks += o.checks;
        failures += o.failures;
    }
    let ok = failures == 0 && checks > 0;
    report(
        6,
        "symmetric rational identity, 200 vectors of size 2..9",
        ok,
        format!("{checks} checks, {failures} failures"),
    );
    assert!(ok);
}

#[test]
fn criterion_07_genus_one_round_trip() {
    let t = Instant::now();
    let p = CnoidalParams::new(1.0, 0.0, -1.0, 0.0).unwrap();
    let jet0 = cnoidal_profile(&p, 0.0).negated();
    let curve = curve_from_profile(1, &jet0).unwrap();
    let start = aux_spectrum(1, &jet0).unwrap();
    let xs = linspace(0.0, 2.0 * period(&p), 801);
    let traj = x_flow(&curve, &start, &xs, 1e-12).unwrap();
    let grid = reconstruct_q(&traj);
    let field_err =
        xs.iter().zip(&grid.q).map(|(&x, qv)| (qv + cnoidal_profile(&p, x).value()).abs()).fold(0.0, f64::max);
    let comb = SolitonCombination::basic(1);
    let coeff_drift = (0..xs.len())
        .map(|i| {
            let c = curve_coeffs_at(&comb, &traj.jet_at(i, 2)).unwrap();
            c.iter().zip(&curve.coeffs).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
        })
        .fold(0.0, f64::max);
    let (fast, time) = within(t, Duration::from_secs(5));
    let ok = field_err < 1e-6 && coeff_drift < 1e-8 && fast;
    report(
        7,
        "genus-1 round trip over two periods",
        ok,
        format!(
            "max field error {field_err:.2e}, curve drift {coeff_drift:.2e}, {} branch events, {time}",
            traj.events.len()
        ),
    );
    assert!(ok);
}

/// Genus 2 with branch points −2..2. The Abel components come from direct quadrature
/// on the angle chart, independent of the flow's right-hand side.
#[test]
fn criterion_08_genus_two_linearization() {
    let t = Instant::now();
    let curve = SpectralCurveNumeric::from_branch_points(vec![-2.0, -1.0, 0.0, 1.0, 2.0]).unwrap();
    let start = [AuxiliaryPoint::new(-1.5, 1), AuxiliaryPoint::new(0.5, 1)];
    let dx = 0.005;
    let xs = linspace(0.0, 5.0, 1001);
    let traj = x_flow(&curve, &start, &xs, 1e-12).unwrap();

    let quad = abel_map_theta(&traj, 20);
    let a1_drift = drift(quad.iter().map(|a| a.components[0]));
    let a2: Vec<f64> = quad.iter().map(|a| a.components[1]).collect();
    let (slope, _) = slope_fit(&xs, &a2);
    let trap = accumulate_along(&traj).unwrap();
    let trap_gap = quad
        .iter()
        .zip(&trap)
        .flat_map(|(a, b)| a.components.iter().zip(&b.components).map(|(x, y)| (x - y).abs()))
        .fold(0.0, f64::max);

    // Fifth-order stationary residual q^(5) + 10qq''' + 20q'q'' + 30q²q'. Lower derivatives use
    // five-point stencils; the fifth derivative needs the centred seven-point one.
    let qv = reconstruct_q(&traj).q;
    let d1 = d_five_point(&qv, dx, 1);
    let d2 = d_five_point(&qv, dx, 2);
    let d3 = d_five_point(&qv, dx, 3);
    let d5 = d5_seven_point(&qv, dx);
    let (mut fd_residual, mut fd_shifted) = (0.0f64, 0.0f64);
    for (j, d5j) in d5.iter().enumerate() {
        let i = j + 3;
        let (q0, q1, q2, q3) = (qv[i], d1[i - 2], d2[i - 2], d3[i - 2]);
        let r = d5j + 10.0 * q0 * q3 + 20.0 * q1 * q2 + 30.0 * q0 * q0 * q1;
        fd_residual = fd_residual.max(r.abs());
        fd_shifted = fd_shifted.max((r - 40.0 * q1).abs());
    }

    // The curve X⁵ − 5X³ + 4X belongs to ψ = φ_2 − 40φ_0, whose stationary law is (F_2 − 40q)' = 0.
    let comb = SolitonCombination::from_ints(&[1, 0, -40]).unwrap();
    let law = comb.constancy().derivative();
    let (mut comb_curve_err, mut law_residual) = (0.0f64, 0.0f64);
    for i in (0..xs.len()).step_by(10) {
        let jet: ProfileJet = traj.jet_at(i, 5);
        let cc = curve_coeffs_at(&comb, &jet).unwrap();
        comb_curve_err = cc.iter().zip(&curve.coeffs).map(|(a, b)| (a - b).abs()).fold(comb_curve_err, f64::max);
        law_residual = law_residual.max(law.evaluate(&jet.derivs).unwrap().abs());
    }

    let (fast, time) = within(t, Duration::from_secs(10));
    let abel_ok = a1_drift < 1e-6 && (slope + 2.0).abs() < 1e-6;
    let ok = abel_ok && fd_residual < 1e-4 && fast;
    report(
        8,
        "genus-2 linearization and fifth-order stationary residual",
        ok,
        format!(
            "A1 drift {a1_drift:.2e}, A2 slope {slope:.9}, quadrature vs trapezoid {trap_gap:.1e}, \
             FD residual {fd_residual:.2e} (minus 40q': {fd_shifted:.1e}); (F2-40q)' residual {law_residual:.1e}, combination curve error {comb_curve_err:.1e}, {time}"
        ),
    );
    assert!(abel_ok && fast, "Abel linearization");
    assert!(law_residual < 1e-8 && comb_curve_err < 1e-9, "combination law");
    assert!(fd_residual < 1e-4, "fifth-order residual {fd_residual}");
}

#[test]
fn criterion_09_elliptic_oracles() {
    let k0 = complete_k(0.0).unwrap() == std::f64::consts::FRAC_PI_2;
    let us = linspace(-5.0, 5.0, 100);
    let cos_err = us.iter().map(|&u| (jacobi_cn(u, 0.0).unwrap() - u.cos()).abs()).fold(0.0, f64::max);
    let sech_err = us.iter().map(|&u| (jacobi_cn(u, 1.0).unwrap() - 1.0 / u.cosh()).abs()).fold(0.0, f64::max);
    let p = CnoidalParams::new(1.0, 0.0, -1.0, 0.3).unwrap();
    let phase = linspace(0.0, period(&p), 100)
        .iter()
        .map(|&x| p.phase_space_residual(&cnoidal_profile(&p, x)).abs())
        .fold(0.0, f64::max);
    let ok = k0 && cos_err < 1e-12 && sech_err < 1e-12 && phase < 1e-9;
    report(
        9,
        "elliptic oracles",
        ok,
        format!("K(0) exact {k0}, cn(.|0) {cos_err:.1e}, cn(.|1) {sech_err:.1e}, phase-space {phase:.1e}"),
    );
    assert!(ok);
}

/// Travelling cnoidal wave with roots (1.1, 0.1, −0.9) and speed −0.6, one period on 2048 nodes.
/// A wave moving at speed `c` obeys `F_1 − cF_0 = const`, so its curve belongs to the combination `(1, −c)`.
#[test]
fn criterion_10_t_flow_isospectrality() {
    let t = Instant::now();
    let p = CnoidalParams::new(1.1, 0.1, -0.9, 0.0).unwrap();
    let n = 2048;
    let len = period(&p);
    let dx = len / n as f64;
    let xs: Vec<f64> = (0..n).map(|i| i as f64 * dx).collect();
    let comb = SolitonCombination::new(vec![rat(1, 1), rat(3, 5)]).unwrap();
    let jet0 = cnoidal_profile(&p, 0.0).negated();
    let curve = curve_from_profile_combo(&comb, &jet0).unwrap();
    let start = aux_spectrum_combo(&comb, &jet0).unwrap();
    let traj = x_flow(&curve, &start, &xs, 1e-12).unwrap();
    let evolved = t_flow(&reconstruct_q(&traj), 0.1, 0.9).unwrap();
    let last = evolved.levels.last().unwrap();
    let qx = d1_periodic(&last.q, dx);
    let qxx = d2_periodic(&last.q, dx);
    let coeff_drift = (0..n)
        .map(|i| {
            let cc = curve_coeffs_at(&comb, &ProfileJet::new(vec![last.q[i], qx[i], qxx[i]])).unwrap();
            cc.iter().zip(&curve.coeffs).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
        })
        .fold(0.0, f64::max);
    let residual = kdv_residual(&evolved).unwrap();
    let exact_err = xs
        .iter()
        .zip(&last.q)
        .map(|(&x, qv)| (qv + cnoidal_profile(&p, x - p.c * last.t).value()).abs())
        .fold(0.0, f64::max);
    let (fast, time) = within(t, Duration::from_secs(30));
    let ok = coeff_drift < 1e-3 && residual < 1e-2 && fast;
    report(
        10,
        "t-flow isospectrality, genus 1, 2048 nodes, t in [0, 0.1]",
        ok,
        format!(
            "curve drift {coeff_drift:.2e}, KdV residual {residual:.2e}, error vs travelling wave {exact_err:.2e}, {} levels, {time}",
            evolved.levels.len()
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_11_nls_hierarchy() {
    let g = |num: i64, den: i64| EFPoly::constant(GaussianRational::real(rat(num, den)));
    let e0 = e(0);
    let a1 = nls_coefficient(1).unwrap() == e0;
    let a2 = nls_coefficient(2).unwrap() == g(3, 4) * e0.pow(2) + f(0);
    let phi3 = LambdaPoly::from_coeffs(vec![
        g(5, 8) * e0.pow(3) + g(3, 2) * &f(0) * &e0 - g(1, 4) * e(2),
        g(3, 4) * e0.pow(2) + f(0),
        e0.clone(),
        g(2, 1),
    ]);
    let a4 = g(35, 64) * e0.pow(4) + g(15, 8) * &e0.pow(2) * &f(0) + g(3, 4) * f(0).pow(2)
        - g(5, 16) * e(1).pow(2)
        - g(5, 8) * &e0 * &e(2)
        - g(1, 4) * f(2);
    let mut c4 = vec![a4];
    c4.extend(phi3.coeffs().iter().cloned());
    let phi4 = LambdaPoly::from_coeffs(c4);
    let p3 = nls_basic_soliton(3).unwrap() == phi3;
    let p4 = nls_basic_soliton(4).unwrap() == phi4;
    let ok = a1 && a2 && p3 && p4;
    report(11, "NLS coefficients A1, A2 and phi_3, phi_4", ok, format!("A1 {a1}, A2 {a2}, phi3 {p3}, phi4 {p4}"));
    assert!(ok);
}

/// The q-form of the degree-2 condition carries `6iσ|q|²q'`; the form without the `i`
/// is reported alongside for reference.
#[test]
fn criterion_12_nls_reductions() {
    let pw = ComplexProfile::new(ProfileShape::PlaneWave { c_re: 0.8, c_im: -0.6, k: 1.3 }, 1.0);
    let mut plane = 0.0f64;
    for x in linspace(-2.0, 2.0, 9) {
        let jet = ef_from_profile(&pw, x, 6).unwrap();
        for n in 0..=4 {
            let (ra, rb) = condition_residuals(n).unwrap();
            plane = plane.max(evaluate_ef(&ra, &jet).unwrap().norm()).max(evaluate_ef(&rb, &jet).unwrap().norm());
        }
    }
    let sech = ComplexProfile::new(ProfileShape::Sech { a: 1.0 }, 1.0);
    let curve = nls_curve_check(&sech, 0.5, &linspace(-4.0, 4.0, 201)).unwrap();
    let a2 = condition_a2_comparison(&sech, &linspace(-3.0, 3.0, 121)).unwrap();
    let ok = plane < 1e-12 && curve.drift < 1e-8 && a2.mismatch < 1e-8 && a2.residual_scale > 1e-3;
    report(
        12,
        "NLS reductions: plane wave, sech curve, degree-2 Condition A",
        ok,
        format!(
            "plane wave {plane:.1e}, curve drift {:.1e}, A2 mismatch {:.1e} on residual scale {:.2}, without i {:.2}",
            curve.drift, a2.mismatch, a2.residual_scale, a2.literal_mismatch
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_13_derivative_identities() {
    let quad = ComplexProfile::new(ProfileShape::QuadraticPhase, 1.0);
    let sech = ComplexProfile::new(ProfileShape::Sech { a: 1.2 }, 1.0);
    let r1 = derivative_identity_check(&quad, &linspace(-1.0, 1.0, 50)).unwrap();
    let r2 = derivative_identity_check(&sech, &linspace(-2.0, 2.0, 50)).unwrap();
    let worst = r1.max_error.iter().chain(&r2.max_error).fold(0.0f64, |m, v| m.max(*v));
    let ok = worst < 1e-10;
    report(13, "derivative identities for E = iq'/q", ok, format!("max error {worst:.1e} over 2x50 samples"));
    assert!(ok);
}

/// Root symbols `l_1..l_n` as a polynomial alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Roots;

impl Alphabet for Roots {
    const NAMES: &'static [&'static str] = &["l1", "l2", "l3"];
    fn weight(_: Var) -> u32 {
        1
    }
}

/// Reconstruction constant. Expanding `φ_n = (4ⁿ/2) prod_k (λ − λ_k)` gives the
/// λ^{n−1} coefficient `−(4ⁿ/2) sum_k λ_k`, while the recursion gives `4^{n−1} F_0 = 4^{n−1} q`.
/// Equating, `q = −2 sum_k λ_k`; the alternative `q = −½ sum_k λ_k` fails the same match.
#[test]
fn criterion_14_reconstruction_constant() {
    type RootPoly = Poly<Rational, Roots>;
    let mut ok = true;
    let mut rejects_half = true;
    for n in 1..=2u32 {
        let lead = Rational::from_integer(4.into()).pow(n as i32) / rat(2, 1);
        let mut prod = LambdaPoly::<Rational, Roots>::constant(RootPoly::constant(lead));
        for k in 0..n {
            let factor = LambdaPoly::from_coeffs(vec![-RootPoly::var(k as u8, 0), RootPoly::one()]);
            prod = &prod * &factor;
        }
        let sum: RootPoly = (0..n).fold(RootPoly::zero(), |acc, k| acc + RootPoly::var(k as u8, 0));
        let phi = basic_soliton(n);
        let scale = phi.coeff(n as usize - 1).coeff(&soliton_forge::diffpoly::Monomial::var(Var::new(0, 0)));
        let assert_q = |qv: RootPoly| qv.scale(&scale) == prod.coeff(n as usize - 1);
        ok &= phi.coeff(n as usize) == DiffPoly::constant(prod.coeff(n as usize).as_constant().unwrap());
        ok &= assert_q(sum.scale(&rat(-2, 1)));
        rejects_half &= !assert_q(sum.scale(&rat(-1, 2)));
    }
    // Numeric confirmation on a genus-2 jet through the auxiliary spectrum.
    let jet = ProfileJet::new(vec![0.3, 0.1, -8.0, 0.2, 0.5]);
    let pts = aux_spectrum(2, &jet).unwrap();
    let numeric = (-2.0 * pts.iter().map(|p| p.lambda).sum::<f64>() - jet.value()).abs();
    let pass = ok && rejects_half && numeric < 1e-12;
    report(
        14,
        "reconstruction constant q = -2 sum lambda_k (n=1,2)",
        pass,
        format!("symbolic match {ok}, -1/2 rejected {rejects_half}, numeric trace error {numeric:.1e}"),
    );
    assert!(pass);
}
