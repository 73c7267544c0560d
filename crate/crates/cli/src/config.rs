//! JSON scenario files and their merge with command-line flags.

use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use soliton_forge::elliptic::cnoidal_profile;
use soliton_forge::spectral::{aux_spectrum_combo, curve_from_profile_combo};
use soliton_forge::{AuxiliaryPoint, CnoidalParams, Rational, SolitonCombination, SpectralCurveNumeric};

use crate::error::CliError;

pub const DEFAULT_SEED: u64 = 20240611;

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    pub branch_points: Vec<f64>,
}

/// Cnoidal profile `u` by its roots; the field is `q = −u`.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CnoidalSpec {
    pub f1: f64,
    pub f2: f64,
    pub f3: f64,
    #[serde(default)]
    pub x0: f64,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub curve: Option<CurveSpec>,
    pub profile: Option<CnoidalSpec>,
    pub start: Option<Vec<AuxiliaryPoint>>,
    pub x_range: Option<[f64; 2]>,
    pub samples: Option<usize>,
    pub tol: Option<f64>,
    pub seed: Option<u64>,
    pub nodes: Option<usize>,
    pub t_end: Option<f64>,
    pub cfl: Option<f64>,
}

impl ScenarioConfig {
    pub fn load(path: Option<&Path>) -> anyhow::Result<Self> {
        let Some(path) = path else { return Ok(Self::default()) };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("cannot parse {}: {e}", path.display())).into())
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |m: &str| Err(CliError::Config(m.into()));
        if self.curve.is_some() && self.profile.is_some() {
            return bad("give either a curve or a profile, not both");
        }
        if self.tol.is_some_and(|t| !(t > 0.0)) {
            return bad("tol must be positive");
        }
        if let Some([a, b]) = self.x_range {
            if !(a.is_finite() && b.is_finite() && a != b) {
                return bad("x_range must be a nonempty finite interval");
            }
        }
        if self.samples.is_some_and(|s| s < 2) {
            return bad("samples must be at least 2");
        }
        if self.nodes.is_some_and(|n| n < 8) {
            return bad("nodes must be at least 8");
        }
        if self.t_end.is_some_and(|t| !(t >= 0.0)) {
            return bad("t_end must be non-negative");
        }
        if self.cfl.is_some_and(|c| !(c > 0.0 && c <= 1.0)) {
            return bad("cfl must lie in (0, 1]");
        }
        Ok(())
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(DEFAULT_SEED)
    }
}

/// Where the curve came from.
#[derive(Debug, Clone)]
pub enum Source {
    BranchPoints,
    Cnoidal { params: CnoidalParams, comb: SolitonCombination },
}

/// A curve, start configuration and x samples ready for integration.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub source: Source,
    pub curve: SpectralCurveNumeric,
    pub start: Vec<AuxiliaryPoint>,
    pub xs: Vec<f64>,
    pub tol: f64,
}

/// Genus-1 combination `(1, −c)` whose curve carries a wave of speed `c`.
pub fn travelling_combination(c: f64) -> anyhow::Result<SolitonCombination> {
    if c == 0.0 {
        return Ok(SolitonCombination::basic(1));
    }
    let alpha = Rational::from_float(-c).ok_or_else(|| CliError::Config(format!("speed {c} is not finite")))?;
    Ok(SolitonCombination::new(vec![Rational::from_integer(1.into()), alpha])?)
}

pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}

/// Random start points inside each gap, away from the edges, with random branch signs.
pub fn seeded_start(curve: &SpectralCurveNumeric, seed: u64) -> Vec<AuxiliaryPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    curve
        .gaps()
        .into_iter()
        .map(|(a, b)| {
            let u: f64 = rng.random_range(0.1..0.9);
            let sign = if rng.random_bool(0.5) { 1 } else { -1 };
            AuxiliaryPoint::new(a + u * (b - a), sign)
        })
        .collect()
}

impl Scenario {
    pub fn build(cfg: &ScenarioConfig, default_periods: f64) -> anyhow::Result<Self> {
        cfg.validate()?;
        let samples = cfg.samples.unwrap_or(1001);
        let tol = cfg.tol.unwrap_or(1e-12);
        if let Some(spec) = cfg.profile {
            let params = CnoidalParams::new(spec.f1, spec.f2, spec.f3, spec.x0)?;
            let comb = travelling_combination(params.c)?;
            let [a, b] = cfg.x_range.unwrap_or([0.0, default_periods * soliton_forge::elliptic::period(&params)]);
            let jet = cnoidal_profile(&params, a).negated();
            let curve = curve_from_profile_combo(&comb, &jet)?;
            let start = match &cfg.start {
                Some(s) => s.clone(),
                None => aux_spectrum_combo(&comb, &jet)?,
            };
            return Ok(Self {
                source: Source::Cnoidal { params, comb },
                curve,
                start,
                xs: linspace(a, b, samples),
                tol,
            });
        }
        let spec = cfg.curve.as_ref().ok_or_else(|| CliError::Config("need a curve or a profile".into()))?;
        let curve = SpectralCurveNumeric::from_branch_points(spec.branch_points.clone())?;
        let start = cfg.start.clone().unwrap_or_else(|| seeded_start(&curve, cfg.seed()));
        let [a, b] = cfg.x_range.unwrap_or([0.0, 5.0]);
        Ok(Self { source: Source::BranchPoints, curve, start, xs: linspace(a, b, samples), tol })
    }
}
