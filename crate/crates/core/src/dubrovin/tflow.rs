//! Advective t-flow `∂_t λ_k = −2(q + 2λ_k) ∂_x λ_k` on a periodic uniform grid.

use super::fd::{d1_periodic, d3_periodic};
use super::{DubrovinError, FieldGrid};

/// Auxiliary spectrum and field at one time.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeLevel {
    pub t: f64,
    /// `lambdas[k][i]` is `λ_k` at node `i`.
    pub lambdas: Vec<Vec<f64>>,
    pub q: Vec<f64>,
}

/// Grid spacing of a uniform increasing grid, treated as one period of `xs.len()` cells.
pub(crate) fn uniform_spacing(xs: &[f64]) -> Result<f64, DubrovinError> {
    if xs.len() < 8 {
        return Err(DubrovinError::InvalidGrid(format!("need at least 8 nodes, got {}", xs.len())));
    }
    let dx = (xs[xs.len() - 1] - xs[0]) / (xs.len() - 1) as f64;
    if !(dx > 0.0) {
        return Err(DubrovinError::InvalidGrid("grid must be increasing".into()));
    }
    for (i, x) in xs.iter().enumerate() {
        if (x - xs[0] - i as f64 * dx).abs() > 1e-9 * dx.max(x.abs()) {
            return Err(DubrovinError::InvalidGrid("grid must be uniform".into()));
        }
    }
    Ok(dx)
}

fn field_of(field: &FieldGrid, lambdas: &[Vec<f64>]) -> Vec<f64> {
    let n = lambdas[0].len();
    (0..n).map(|i| field.curve.trace_q(lambdas.iter().map(|l| l[i]))).collect()
}

/// Largest `|2(q + 2λ_k)|` over the grid.
fn max_speed(lambdas: &[Vec<f64>], q: &[f64]) -> f64 {
    lambdas.iter().flat_map(|l| l.iter().zip(q).map(|(lk, qi)| (2.0 * (qi + 2.0 * lk)).abs())).fold(0.0, f64::max)
}

/// `−v ∂_x λ_k` with first-order upwind differences, `v = 2(q + 2λ_k)`.
fn rhs(lambdas: &[Vec<f64>], q: &[f64], dx: f64) -> Vec<Vec<f64>> {
    let n = q.len();
    lambdas
        .iter()
        .map(|l| {
            (0..n)
                .map(|i| {
                    let v = 2.0 * (q[i] + 2.0 * l[i]);
                    let grad = if v > 0.0 { l[i] - l[(i + n - 1) % n] } else { l[(i + 1) % n] - l[i] };
                    -v * grad / dx
                })
                .collect()
        })
        .collect()
}

fn axpy(base: &[Vec<f64>], dt: f64, dir: &[Vec<f64>]) -> Vec<Vec<f64>> {
    base.iter().zip(dir).map(|(b, d)| b.iter().zip(d).map(|(x, y)| x + dt * y).collect()).collect()
}

/// Advances the last level of `field` to `t_end` with Heun steps of fixed size
/// `Δt ≤ cfl·Δx / max|v|`, storing every level. The grid is one period.
pub fn t_flow(field: &FieldGrid, t_end: f64, cfl: f64) -> Result<FieldGrid, DubrovinError> {
    if !(cfl > 0.0 && cfl <= 1.0) {
        return Err(DubrovinError::CflViolation(format!("CFL number {cfl} outside (0, 1]")));
    }
    let dx = uniform_spacing(&field.xs)?;
    let last = field
        .levels
        .last()
        .ok_or_else(|| DubrovinError::InvalidGrid("field has no auxiliary-spectrum level".into()))?;
    if last.lambdas.len() != field.curve.n || last.lambdas.iter().any(|l| l.len() != field.xs.len()) {
        return Err(DubrovinError::InvalidGrid("level shape does not match grid and genus".into()));
    }
    let span = t_end - last.t;
    if !(span >= 0.0) {
        return Err(DubrovinError::InvalidGrid(format!("t_end {t_end} precedes current time {}", last.t)));
    }
    let mut out = field.clone();
    if span == 0.0 || field.curve.n == 0 {
        return Ok(out);
    }
    let v0 = max_speed(&last.lambdas, &last.q);
    if v0 == 0.0 {
        let mut lvl = last.clone();
        lvl.t = t_end;
        out.levels.push(lvl);
        return Ok(out);
    }
    let steps = (span * v0 / (cfl * dx)).ceil().max(1.0) as usize;
    let dt = span / steps as f64;
    let mut lam = last.lambdas.clone();
    let mut q = last.q.clone();
    for s in 1..=steps {
        let v = max_speed(&lam, &q);
        if v * dt > dx * (1.0 + 1e-12) {
            return Err(DubrovinError::CflViolation(format!(
                "speed {v} exceeds the step bound {} at t={}",
                dx / dt,
                last.t + (s - 1) as f64 * dt
            )));
        }
        let k1 = rhs(&lam, &q, dx);
        let stage = axpy(&lam, dt, &k1);
        let q_stage = field_of(field, &stage);
        let k2 = rhs(&stage, &q_stage, dx);
        let avg: Vec<Vec<f64>> =
            k1.iter().zip(&k2).map(|(a, b)| a.iter().zip(b).map(|(x, y)| 0.5 * (x + y)).collect()).collect();
        lam = axpy(&lam, dt, &avg);
        q = field_of(field, &lam);
        out.levels.push(TimeLevel { t: last.t + s as f64 * dt, lambdas: lam.clone(), q: q.clone() });
    }
    out.q = q;
    Ok(out)
}

/// Sup of `|q_t + 6qq_x + q_xxx|` over the interior levels, with centred time
/// differences and fourth-order periodic x stencils.
pub fn kdv_residual(field: &FieldGrid) -> Result<f64, DubrovinError> {
    let dx = uniform_spacing(&field.xs)?;
    let lv = &field.levels;
    if lv.len() < 3 {
        return Err(DubrovinError::InvalidGrid("need at least three time levels".into()));
    }
    let mut worst = 0.0f64;
    for j in 1..lv.len() - 1 {
        let dt = lv[j + 1].t - lv[j - 1].t;
        let q = &lv[j].q;
        let qx = d1_periodic(q, dx);
        let qxxx = d3_periodic(q, dx);
        for i in 0..q.len() {
            let qt = (lv[j + 1].q[i] - lv[j - 1].q[i]) / dt;
            worst = worst.max((qt + 6.0 * q[i] * qx[i] + qxxx[i]).abs());
        }
    }
    Ok(worst)
}

/// Sup of `|φ_t + φ''' + 6qφ'|` for rows sampled at times `dt` apart on a periodic
/// grid of spacing `dx`; centred in time, interior rows only.
pub fn linearized_residual(phi: &[Vec<f64>], q: &[Vec<f64>], dx: f64, dt: f64) -> f64 {
    let mut worst = 0.0f64;
    for j in 1..phi.len().saturating_sub(1) {
        let px = d1_periodic(&phi[j], dx);
        let pxxx = d3_periodic(&phi[j], dx);
        for i in 0..phi[j].len() {
            let pt = (phi[j + 1][i] - phi[j - 1][i]) / (2.0 * dt);
            worst = worst.max((pt + pxxx[i] + 6.0 * q[j][i] * px[i]).abs());
        }
    }
    worst
}
