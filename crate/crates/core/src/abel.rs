//! Abel sums of the holomorphic differentials `ω_μ = λ^{μ−1} dλ / sqrt(P)` along
//! auxiliary-spectrum trajectories.
//!
//! The base point is the trajectory's first sample, so every accumulator starts at zero.

use serde::Serialize;

use crate::diffpoly::Rational;
use crate::dubrovin::AuxiliaryTrajectory;
use crate::quad;
use crate::spectral::AuxiliaryPoint;
use crate::symmetry::{symmetric_sum, RationalVector, SymmetryError};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AbelError {
    #[error("points {i} and {j} coincide")]
    CollisionError { i: usize, j: usize },
    #[error("component μ={mu} outside 1..={n}")]
    DomainError { mu: usize, n: usize },
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
}

/// Components `A^(1)..A^(n)` at position `x`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AbelAccumulator {
    pub x: f64,
    pub components: Vec<f64>,
}

fn check_mu(mu: usize, n: usize) -> Result<(), AbelError> {
    if mu == 0 || mu > n {
        return Err(AbelError::DomainError { mu, n });
    }
    Ok(())
}

/// `sum_k −2 λ_k^{μ−1} / prod_{i≠k}(λ_k − λ_i)`.
pub fn abel_sum(points: &[AuxiliaryPoint], mu: usize) -> Result<f64, AbelError> {
    check_mu(mu, points.len())?;
    let mut acc = 0.0;
    for (k, pk) in points.iter().enumerate() {
        let mut den = 1.0;
        for (i, pi) in points.iter().enumerate() {
            if i != k {
                let d = pk.lambda - pi.lambda;
                if d == 0.0 {
                    return Err(AbelError::CollisionError { i: k.min(i), j: k.max(i) });
                }
                den *= d;
            }
        }
        acc += -2.0 * pk.lambda.powi(mu as i32 - 1) / den;
    }
    Ok(acc)
}

/// Exact version of [`abel_sum`] on rationals: `0` for `μ < n`, `−2` for `μ = n`.
pub fn abel_sum_exact(xs: &RationalVector, mu: usize) -> Result<Rational, AbelError> {
    check_mu(mu, xs.len())?;
    Ok(symmetric_sum(xs, mu - 1)? * Rational::from_integer((-2).into()))
}

/// Trapezoid accumulation of `dA^(μ)/dx = sum_k λ_k^{μ−1} λ_k' / (s_k sqrt(P(λ_k)))`,
/// evaluated through the regular form [`abel_sum`].
pub fn accumulate_along(traj: &AuxiliaryTrajectory) -> Result<Vec<AbelAccumulator>, AbelError> {
    let n = traj.n();
    let rates: Vec<Vec<f64>> = traj
        .points
        .iter()
        .map(|p| (1..=n).map(|mu| abel_sum(p, mu)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<_, _>>()?;
    let mut out = Vec::with_capacity(traj.xs.len());
    let mut acc = vec![0.0; n];
    for (i, &x) in traj.xs.iter().enumerate() {
        if i > 0 {
            let h = x - traj.xs[i - 1];
            for mu in 0..n {
                acc[mu] += 0.5 * h * (rates[i][mu] + rates[i - 1][mu]);
            }
        }
        out.push(AbelAccumulator { x, components: acc.clone() });
    }
    Ok(out)
}

/// Abel map by direct quadrature on the angle chart: with `λ = c + r cos θ`,
/// `λ^{μ−1} dλ / (s sqrt(P)) = −λ^{μ−1} dθ / sqrt(−Q_k(λ))`, which is smooth through
/// branch points. Independent of the flow's right-hand side.
pub fn abel_map_theta(traj: &AuxiliaryTrajectory, order: usize) -> Vec<AbelAccumulator> {
    let g = traj.geometry();
    let n = traj.n();
    let base = &traj.thetas[0];
    traj.xs
        .iter()
        .zip(&traj.thetas)
        .map(|(&x, th)| {
            let components = (1..=n)
                .map(|mu| {
                    (0..n)
                        .filter(|&k| g.radii[k] > 0.0)
                        .map(|k| {
                            let panels = 1 + ((th[k] - base[k]).abs() / 0.5).ceil() as usize;
                            -quad::integrate(
                                |t| {
                                    let l = g.lambda(k, t);
                                    l.powi(mu as i32 - 1) / g.minus_q(k, l).sqrt()
                                },
                                base[k],
                                th[k],
                                order,
                                panels,
                            )
                        })
                        .sum()
                })
                .collect();
            AbelAccumulator { x, components }
        })
        .collect()
}

/// Least-squares slope and intercept of `ys` against `xs`.
pub fn slope_fit(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

/// `max − min` of a component over the run.
pub fn drift(values: impl IntoIterator<Item = f64>) -> f64 {
    let (lo, hi) = values.into_iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    hi - lo
}
