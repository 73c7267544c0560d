//! Auxiliary-spectrum flows in x and t, and reconstruction of the KdV field.
//!
//! Each `λ_k` moves in its gap `[a_k, b_k]`. Writing `λ_k = c_k + r_k cos θ_k`
//! (midpoint `c_k`, half-width `r_k`) turns
//! `λ_k' = −2 s_k sqrt(P(λ_k)) / prod_{i≠k}(λ_k − λ_i)` into the regular system
//! `θ_k' = 2 sqrt(−Q_k(λ_k)) / prod_{i≠k}(λ_k − λ_i)` with
//! `Q_k = P / ((λ − a_k)(λ − b_k))` and `s_k = sign(sin θ_k)`.
//! Branch points are the crossings `θ_k ∈ πZ`.

pub mod fd;
pub mod ode;
pub mod taylor;
mod tflow;

use serde::Serialize;

use crate::elliptic::ProfileJet;
use crate::spectral::{AuxiliaryPoint, SpectralCurveNumeric, SpectralError};
use ode::{OdeOptions, OdeStats};
use taylor::Series;

pub use tflow::{kdv_residual, linearized_residual, t_flow, TimeLevel};

/// Separation below which two `λ_k` count as collided.
pub const COLLISION_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DubrovinError {
    #[error("auxiliary points {i} and {j} collided near x={x}")]
    CollisionError { x: f64, i: usize, j: usize },
    #[error("step-size control failed near x={0}")]
    StepFailure(f64),
    #[error("invalid start configuration: {0}")]
    InvalidStart(String),
    #[error("CFL condition violated: {0}")]
    CflViolation(String),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// Gap geometry of a curve used by the angle form of the flow.
#[derive(Debug, Clone)]
pub struct GapGeometry {
    pub centers: Vec<f64>,
    pub radii: Vec<f64>,
    /// Branch points outside gap `k`.
    others: Vec<Vec<f64>>,
}

impl GapGeometry {
    pub fn new(curve: &SpectralCurveNumeric) -> Self {
        let e = &curve.branch_points;
        let n = curve.n;
        let mut centers = Vec::with_capacity(n);
        let mut radii = Vec::with_capacity(n);
        let mut others = Vec::with_capacity(n);
        for k in 0..n {
            centers.push(0.5 * (e[2 * k] + e[2 * k + 1]));
            radii.push(0.5 * (e[2 * k + 1] - e[2 * k]));
            others.push(e.iter().enumerate().filter(|&(j, _)| j != 2 * k && j != 2 * k + 1).map(|(_, &v)| v).collect());
        }
        Self { centers, radii, others }
    }

    pub fn n(&self) -> usize {
        self.centers.len()
    }

    pub fn lambda(&self, k: usize, theta: f64) -> f64 {
        self.centers[k] + self.radii[k] * theta.cos()
    }

    /// `−Q_k(λ)`, positive inside gap `k`.
    pub fn minus_q(&self, k: usize, lambda: f64) -> f64 {
        -self.others[k].iter().map(|e| lambda - e).product::<f64>()
    }

    /// `dθ/dx` for every component.
    pub fn rhs(&self, theta: &[f64], out: &mut [f64]) {
        let lam: Vec<f64> = (0..self.n()).map(|k| self.lambda(k, theta[k])).collect();
        for k in 0..self.n() {
            if self.radii[k] == 0.0 {
                out[k] = 0.0;
                continue;
            }
            let pi: f64 = (0..self.n()).filter(|&i| i != k).map(|i| lam[k] - lam[i]).product();
            out[k] = 2.0 * self.minus_q(k, lam[k]).max(0.0).sqrt() / pi;
        }
    }

    /// Angle for a point in gap `k` on the branch `sign`.
    pub fn angle_of(&self, k: usize, p: AuxiliaryPoint) -> f64 {
        if self.radii[k] == 0.0 {
            return 0.0;
        }
        let c = ((p.lambda - self.centers[k]) / self.radii[k]).clamp(-1.0, 1.0);
        let th = c.acos();
        if p.sign < 0 {
            -th
        } else {
            th
        }
    }

    /// Branch sign `sign(sin θ)`; at a branch point, the sign the flow enters next.
    pub fn sign_of(&self, theta: f64, rate: f64) -> i8 {
        let s = theta.sin();
        let s = if s.abs() < 1e-14 { (theta + 1e-9 * rate.signum()).sin() } else { s };
        if s < 0.0 {
            -1
        } else {
            1
        }
    }

    /// Taylor coefficients of `θ(x0 + h)` to `order`.
    pub fn theta_series(&self, theta: &[f64], order: usize) -> Vec<Series> {
        let n = self.n();
        let len = order + 1;
        let mut series: Vec<Series> = theta.iter().map(|&t| Series::constant(t, len)).collect();
        for j in 0..order {
            let rates = self.rhs_series(&series);
            for k in 0..n {
                series[k].0[j + 1] = rates[k].0[j] / (j + 1) as f64;
            }
        }
        series
    }

    fn rhs_series(&self, theta: &[Series]) -> Vec<Series> {
        let n = self.n();
        let len = theta[0].len();
        let lam: Vec<Series> =
            (0..n).map(|k| theta[k].sin_cos().1.scale(self.radii[k]).add_scalar(self.centers[k])).collect();
        (0..n)
            .map(|k| {
                if self.radii[k] == 0.0 {
                    return Series::constant(0.0, len);
                }
                let mut q = Series::constant(-1.0, len);
                for e in &self.others[k] {
                    q = &q * &lam[k].add_scalar(-e);
                }
                let mut pi = Series::constant(1.0, len);
                for i in (0..n).filter(|&i| i != k) {
                    pi = &pi * &(&lam[k] - &lam[i]);
                }
                q.sqrt().scale(2.0).div(&pi)
            })
            .collect()
    }

    /// Exact jet of `q = −2 sum λ_k − c_{2n}` at an angle state.
    pub fn q_jet(&self, theta: &[f64], subleading: f64, order: usize) -> ProfileJet {
        let series = self.theta_series(theta, order);
        let mut q = Series::constant(-subleading, order + 1);
        for (k, s) in series.iter().enumerate() {
            let lam = s.sin_cos().1.scale(self.radii[k]).add_scalar(self.centers[k]);
            q = &q - &lam.scale(2.0);
        }
        ProfileJet::new(q.derivatives())
    }
}

/// A crossing of a branch point by `λ_k`, where its sign flips.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BranchEvent {
    pub k: usize,
    pub x: f64,
    pub lambda: f64,
}

/// Sampled auxiliary spectrum along x.
#[derive(Debug, Clone)]
pub struct AuxiliaryTrajectory {
    pub xs: Vec<f64>,
    pub points: Vec<Vec<AuxiliaryPoint>>,
    pub thetas: Vec<Vec<f64>>,
    pub curve: SpectralCurveNumeric,
    pub events: Vec<BranchEvent>,
    pub stats: OdeStats,
    geometry: GapGeometry,
}

impl AuxiliaryTrajectory {
    pub fn n(&self) -> usize {
        self.curve.n
    }

    pub fn geometry(&self) -> &GapGeometry {
        &self.geometry
    }

    pub fn lambdas(&self, i: usize) -> Vec<f64> {
        self.points[i].iter().map(|p| p.lambda).collect()
    }

    /// `q` and derivatives to `order` at sample `i`, from the Taylor expansion of the flow.
    pub fn jet_at(&self, i: usize, order: usize) -> ProfileJet {
        self.geometry.q_jet(&self.thetas[i], self.curve.subleading(), order)
    }

    /// `dλ_k/dx` at sample `i` from the Dubrovin right-hand side.
    pub fn lambda_rates(&self, i: usize) -> Vec<f64> {
        let n = self.n();
        let mut rate = vec![0.0; n];
        self.geometry.rhs(&self.thetas[i], &mut rate);
        (0..n).map(|k| -self.geometry.radii[k] * self.thetas[i][k].sin() * rate[k]).collect()
    }

    /// Largest violation of `P(λ_k) ≥ 0` and of gap confinement over all samples.
    pub fn oval_violation(&self) -> f64 {
        let gaps = self.curve.gaps();
        let mut worst = 0.0f64;
        for pts in &self.points {
            for (k, p) in pts.iter().enumerate() {
                worst = worst.max(-self.curve.eval(p.lambda));
                worst = worst.max(gaps[k].0 - p.lambda).max(p.lambda - gaps[k].1);
            }
        }
        worst
    }
}

/// Integrates the auxiliary spectrum over the monotone grid `xs`, starting from `start` at `xs[0]`.
pub fn x_flow(
    curve: &SpectralCurveNumeric,
    start: &[AuxiliaryPoint],
    xs: &[f64],
    tol: f64,
) -> Result<AuxiliaryTrajectory, DubrovinError> {
    let n = curve.n;
    if start.len() != n {
        return Err(DubrovinError::InvalidStart(format!("need {n} points, got {}", start.len())));
    }
    if xs.is_empty() {
        return Err(DubrovinError::InvalidGrid("empty grid".into()));
    }
    if !(tol > 0.0) {
        return Err(DubrovinError::InvalidStart(format!("tolerance must be positive, got {tol}")));
    }
    let monotone = xs.windows(2).all(|w| w[1] > w[0]) || xs.windows(2).all(|w| w[1] < w[0]);
    if !monotone {
        return Err(DubrovinError::InvalidGrid("sample grid must be strictly monotone".into()));
    }
    let geometry = GapGeometry::new(curve);
    let slack = 1e-9 * (1.0 + curve.branch_points.iter().fold(0.0f64, |m, e| m.max(e.abs())));
    // The k-th smallest point belongs to gap k.
    let mut sorted = start.to_vec();
    sorted.sort_by(|a, b| a.lambda.total_cmp(&b.lambda));
    for (k, p) in sorted.iter().enumerate() {
        if curve.gaps()[k].0 - slack > p.lambda || p.lambda > curve.gaps()[k].1 + slack {
            let why = match curve.gap_of(p.lambda, slack) {
                Some(g) => format!("λ={} lies in gap {g}, but each gap takes exactly one point", p.lambda),
                None => format!("λ={} is not on a real oval", p.lambda),
            };
            return Err(DubrovinError::InvalidStart(why));
        }
    }
    let mut theta: Vec<f64> = sorted.iter().enumerate().map(|(k, &p)| geometry.angle_of(k, p)).collect();

    let opts = OdeOptions::new(tol);
    let mut stats = OdeStats::default();
    let mut h = opts.h_init;
    let mut thetas = Vec::with_capacity(xs.len());
    let mut points = Vec::with_capacity(xs.len());
    let mut events = Vec::new();
    let mut rate = vec![0.0; n];
    let dir = if xs.len() > 1 && xs[1] < xs[0] { -1.0 } else { 1.0 };

    let snapshot = |theta: &[f64], rate: &mut [f64]| -> Vec<AuxiliaryPoint> {
        geometry.rhs(theta, rate);
        (0..n)
            .map(|k| AuxiliaryPoint::new(geometry.lambda(k, theta[k]), geometry.sign_of(theta[k], rate[k] * dir)))
            .collect()
    };
    // Keep the requested start signs at an exact branch point.
    let mut first = snapshot(&theta, &mut rate);
    for k in 0..n {
        if theta[k].sin().abs() < 1e-14 {
            first[k].sign = sorted[k].sign;
        }
    }
    check_collisions(&first, xs[0])?;
    thetas.push(theta.clone());
    points.push(first);

    for w in xs.windows(2) {
        let prev = theta.clone();
        let mut prev_rate = vec![0.0; n];
        geometry.rhs(&prev, &mut prev_rate);
        ode::integrate(|_, y, dy| geometry.rhs(y, dy), w[0], w[1], &mut theta, &mut h, &opts, &mut stats)
            .map_err(|e| DubrovinError::StepFailure(e.0))?;
        let pts = snapshot(&theta, &mut rate);
        check_collisions(&pts, w[1])?;
        for k in 0..n {
            let (a, b) = (prev[k] / std::f64::consts::PI, theta[k] / std::f64::consts::PI);
            let (lo, hi) = (a.min(b), a.max(b));
            let mut j = lo.floor() + 1.0;
            while j <= hi {
                let target = j * std::f64::consts::PI;
                let x = hermite_crossing(w[0], w[1], prev[k], theta[k], prev_rate[k], rate[k], target);
                events.push(BranchEvent { k, x, lambda: geometry.lambda(k, target) });
                j += 1.0;
            }
        }
        thetas.push(theta.clone());
        points.push(pts);
    }
    Ok(AuxiliaryTrajectory { xs: xs.to_vec(), points, thetas, curve: curve.clone(), events, stats, geometry })
}

fn check_collisions(pts: &[AuxiliaryPoint], x: f64) -> Result<(), DubrovinError> {
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            if (pts[i].lambda - pts[j].lambda).abs() < COLLISION_TOL {
                return Err(DubrovinError::CollisionError { x, i, j });
            }
        }
    }
    Ok(())
}

/// Abscissa where the cubic Hermite interpolant of θ reaches `target`.
fn hermite_crossing(x0: f64, x1: f64, t0: f64, t1: f64, d0: f64, d1: f64, target: f64) -> f64 {
    let h = x1 - x0;
    let eval = |s: f64| {
        let h00 = 2.0 * s.powi(3) - 3.0 * s * s + 1.0;
        let h10 = s.powi(3) - 2.0 * s * s + s;
        let h01 = -2.0 * s.powi(3) + 3.0 * s * s;
        let h11 = s.powi(3) - s * s;
        h00 * t0 + h10 * h * d0 + h01 * t1 + h11 * h * d1 - target
    };
    let (mut lo, mut hi) = (0.0, 1.0);
    let flo = eval(lo);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if (eval(mid) > 0.0) == (flo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    x0 + 0.5 * (lo + hi) * h
}

/// Field samples `q(x)` with optional t-levels of the auxiliary spectrum.
#[derive(Debug, Clone)]
pub struct FieldGrid {
    pub xs: Vec<f64>,
    pub q: Vec<f64>,
    pub curve: SpectralCurveNumeric,
    pub levels: Vec<TimeLevel>,
}

/// `q = −2 sum λ_k − c_{2n}` at every sample.
pub fn reconstruct_q(traj: &AuxiliaryTrajectory) -> FieldGrid {
    let n = traj.n();
    let q: Vec<f64> = (0..traj.xs.len()).map(|i| traj.curve.trace_q(traj.lambdas(i))).collect();
    let lambdas = (0..n).map(|k| traj.points.iter().map(|p| p[k].lambda).collect()).collect();
    FieldGrid {
        xs: traj.xs.clone(),
        q: q.clone(),
        curve: traj.curve.clone(),
        levels: vec![TimeLevel { t: 0.0, lambdas, q }],
    }
}

/// `sum_k λ_k^{μ−1} λ_k' / (s_k sqrt(P(λ_k)))` at sample `i`, by the angle form.
pub fn differential_sum(traj: &AuxiliaryTrajectory, i: usize, mu: usize) -> f64 {
    let g = traj.geometry();
    let n = traj.n();
    let mut rate = vec![0.0; n];
    g.rhs(&traj.thetas[i], &mut rate);
    (0..n)
        .filter(|&k| g.radii[k] > 0.0)
        .map(|k| {
            let l = g.lambda(k, traj.thetas[i][k]);
            -l.powi(mu as i32 - 1) * rate[k] / g.minus_q(k, l).sqrt()
        })
        .sum()
}
