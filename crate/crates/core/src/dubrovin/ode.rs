//! Dormand–Prince 5(4) with step-size control, usable in either x direction.

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeOptions {
    /// Absolute and relative local error bound per step.
    pub tol: f64,
    pub h_init: f64,
    pub h_min: f64,
    pub max_rejects: usize,
}

impl OdeOptions {
    pub fn new(tol: f64) -> Self {
        Self { tol, h_init: 1e-2, h_min: 1e-14, max_rejects: 60 }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OdeStats {
    pub accepted: usize,
    pub rejected: usize,
}

/// Step failure at the given abscissa.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepFailure(pub f64);

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] =
    [5179.0 / 57600.0, 0.0, 7571.0 / 16695.0, 393.0 / 640.0, -92097.0 / 339200.0, 187.0 / 2100.0, 1.0 / 40.0];

/// Integrates `y' = f(x, y)` from `x0` to `x1`, updating `y` in place.
///
/// `h` carries the step size between calls; its sign is adjusted to the direction.
pub fn integrate<F>(
    mut f: F,
    x0: f64,
    x1: f64,
    y: &mut [f64],
    h: &mut f64,
    opts: &OdeOptions,
    stats: &mut OdeStats,
) -> Result<(), StepFailure>
where
    F: FnMut(f64, &[f64], &mut [f64]),
{
    let dim = y.len();
    let dir = if x1 >= x0 { 1.0 } else { -1.0 };
    let span = (x1 - x0).abs();
    if span == 0.0 {
        return Ok(());
    }
    let mut x = x0;
    let mut step = h.abs().max(opts.h_min).min(span) * dir;
    let mut k = vec![vec![0.0; dim]; 7];
    let mut tmp = vec![0.0; dim];
    let mut y5 = vec![0.0; dim];
    let mut rejects = 0;
    while (x1 - x) * dir > 0.0 {
        let remaining = x1 - x;
        let last = step.abs() >= remaining.abs();
        if last {
            step = remaining;
        }
        f(x, y, &mut k[0]);
        for s in 1..7 {
            for i in 0..dim {
                let mut acc = y[i];
                for j in 0..s {
                    acc += step * A[s][j] * k[j][i];
                }
                tmp[i] = acc;
            }
            f(x + C[s] * step, &tmp, &mut k[s]);
        }
        let mut err = 0.0f64;
        for i in 0..dim {
            let mut s5 = 0.0;
            let mut s4 = 0.0;
            for s in 0..7 {
                s5 += B5[s] * k[s][i];
                s4 += B4[s] * k[s][i];
            }
            y5[i] = y[i] + step * s5;
            let sc = opts.tol * (1.0 + y[i].abs().max(y5[i].abs()));
            let e = (step * (s5 - s4)).abs() / sc;
            // `f64::max` would drop a NaN here.
            err = if e.is_nan() || !y5[i].is_finite() { f64::INFINITY } else { err.max(e) };
        }
        if !err.is_finite() {
            err = 1e10;
        }
        if err <= 1.0 {
            x = if last { x1 } else { x + step };
            y.copy_from_slice(&y5);
            stats.accepted += 1;
            rejects = 0;
            let fac = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
            // A truncated final step says little about the natural step size.
            if !last {
                step *= fac;
                *h = step.abs();
            }
        } else {
            stats.rejected += 1;
            rejects += 1;
            let fac = (0.9 * err.powf(-0.2)).clamp(0.1, 0.9);
            step *= fac;
            if step.abs() < opts.h_min || rejects > opts.max_rejects {
                return Err(StepFailure(x));
            }
        }
    }
    Ok(())
}
