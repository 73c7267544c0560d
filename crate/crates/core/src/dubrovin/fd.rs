//! Finite-difference stencils on uniform grids.
//!
//! The periodic variants wrap indices; the others return values only at nodes
//! far enough from the ends for the full stencil.

fn wrap(i: isize, n: usize) -> usize {
    i.rem_euclid(n as isize) as usize
}

fn periodic<const W: usize>(f: &[f64], weights: [f64; W], scale: f64) -> Vec<f64> {
    let n = f.len();
    let half = (W / 2) as isize;
    (0..n as isize)
        .map(|i| weights.iter().enumerate().map(|(j, w)| w * f[wrap(i + j as isize - half, n)]).sum::<f64>() * scale)
        .collect()
}

/// Fourth-order first derivative, periodic.
pub fn d1_periodic(f: &[f64], dx: f64) -> Vec<f64> {
    periodic(f, [1.0, -8.0, 0.0, 8.0, -1.0], 1.0 / (12.0 * dx))
}

/// Fourth-order second derivative, periodic.
pub fn d2_periodic(f: &[f64], dx: f64) -> Vec<f64> {
    periodic(f, [-1.0, 16.0, -30.0, 16.0, -1.0], 1.0 / (12.0 * dx * dx))
}

/// Fourth-order third derivative on a seven-point stencil, periodic.
pub fn d3_periodic(f: &[f64], dx: f64) -> Vec<f64> {
    periodic(f, [1.0, -8.0, 13.0, 0.0, -13.0, 8.0, -1.0], 1.0 / (8.0 * dx.powi(3)))
}

/// Five-point central stencils for derivative orders 1..=4 (orders 3 and 4 are
/// second-order accurate). Entry `i` of the result belongs to node `i + 2`.
pub fn d_five_point(f: &[f64], dx: f64, order: usize) -> Vec<f64> {
    let w: [f64; 5] = match order {
        1 => [1.0 / 12.0, -8.0 / 12.0, 0.0, 8.0 / 12.0, -1.0 / 12.0],
        2 => [-1.0 / 12.0, 16.0 / 12.0, -30.0 / 12.0, 16.0 / 12.0, -1.0 / 12.0],
        3 => [-0.5, 1.0, 0.0, -1.0, 0.5],
        4 => [1.0, -4.0, 6.0, -4.0, 1.0],
        _ => panic!("five-point stencil supports orders 1..=4"),
    };
    let s = dx.powi(order as i32);
    f.windows(5).map(|v| v.iter().zip(&w).map(|(a, b)| a * b).sum::<f64>() / s).collect()
}

/// Fifth derivative from the seven-point central stencil; entry `i` belongs to node `i + 3`.
pub fn d5_seven_point(f: &[f64], dx: f64) -> Vec<f64> {
    let w = [-0.5, 2.0, -2.5, 0.0, 2.5, -2.0, 0.5];
    let s = dx.powi(5);
    f.windows(7).map(|v| v.iter().zip(&w).map(|(a, b)| a * b).sum::<f64>() / s).collect()
}
