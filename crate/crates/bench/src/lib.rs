//! Shared fixtures for the criterion benchmarks.

use soliton_forge::diffpoly::rat;
use soliton_forge::dubrovin::{reconstruct_q, x_flow};
use soliton_forge::elliptic::{cnoidal_profile, period, CnoidalParams};
use soliton_forge::spectral::{aux_spectrum_combo, curve_from_profile_combo};
use soliton_forge::{AuxiliaryPoint, FieldGrid, SolitonCombination, SpectralCurveNumeric};

pub fn grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}

/// Genus 2 with branch points −2..2 and one start point per gap.
pub fn genus_two() -> (SpectralCurveNumeric, [AuxiliaryPoint; 2]) {
    let curve = SpectralCurveNumeric::from_branch_points(vec![-2.0, -1.0, 0.0, 1.0, 2.0]).expect("separated roots");
    (curve, [AuxiliaryPoint::new(-1.5, 1), AuxiliaryPoint::new(0.5, 1)])
}

/// One period of the cnoidal wave with roots (1.1, 0.1, −0.9) on `n` periodic nodes.
/// It moves at speed −0.6, so its curve belongs to the combination (1, 3/5).
pub fn cnoidal_field(n: usize) -> FieldGrid {
    let p = CnoidalParams::new(1.1, 0.1, -0.9, 0.0).expect("ordered roots");
    let comb = SolitonCombination::new(vec![rat(1, 1), rat(3, 5)]).expect("nonzero leading coefficient");
    let dx = period(&p) / n as f64;
    let xs: Vec<f64> = (0..n).map(|i| i as f64 * dx).collect();
    let jet = cnoidal_profile(&p, 0.0).negated();
    let curve = curve_from_profile_combo(&comb, &jet).expect("genus-1 curve");
    let start = aux_spectrum_combo(&comb, &jet).expect("real auxiliary spectrum");
    reconstruct_q(&x_flow(&curve, &start, &xs, 1e-12).expect("flow"))
}
