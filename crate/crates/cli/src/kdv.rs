use std::path::Path;

use clap::{Args, Subcommand};
use serde_json::json;
use soliton_forge::abel::{abel_map_theta, drift, slope_fit};
use soliton_forge::diffpoly::Style;
use soliton_forge::dubrovin::fd::{d1_periodic, d2_periodic};
use soliton_forge::dubrovin::{kdv_residual, reconstruct_q, t_flow, x_flow};
use soliton_forge::elliptic::{cnoidal_profile, period};
use soliton_forge::kdv::{basic_soliton, conserved_density, curve_polynomial, hn_closed_form};
use soliton_forge::spectral::curve_coeffs_at;
use soliton_forge::{AuxiliaryPoint, ProfileJet};

use crate::config::{CnoidalSpec, CurveSpec, Scenario, ScenarioConfig, Source};
use crate::emit::{csv, json_doc, num, write_atomic, Format};
use crate::error::CliError;
use crate::Globals;

#[derive(Subcommand, Debug)]
pub enum KdvCommand {
    /// Print F_n, phi_n, H_n and the curve polynomial P_n.
    Hierarchy {
        #[arg(long, value_parser = clap::value_parser!(u32).range(0..=6))]
        n: u32,
    },
    /// Build a spectral curve from branch points or a cnoidal profile.
    Curve(ScenarioFlags),
    /// Integrate the auxiliary spectrum along x; writes trajectory, reconstruction and Abel CSVs.
    Flow(ScenarioFlags),
    /// Evolve a genus-1 cnoidal field in t through the auxiliary spectrum.
    Evolve {
        #[command(flatten)]
        scenario: ScenarioFlags,
        /// Grid nodes over one period.
        #[arg(long)]
        nodes: Option<usize>,
        #[arg(long)]
        t_end: Option<f64>,
        #[arg(long)]
        cfl: Option<f64>,
    },
}

fn parse_point(s: &str) -> Result<AuxiliaryPoint, String> {
    let (l, sign) = s.split_once(':').ok_or("expected lambda:sign")?;
    let lambda = l.trim().parse::<f64>().map_err(|e| e.to_string())?;
    let sign = match sign.trim() {
        "+1" | "1" | "+" => 1,
        "-1" | "-" => -1,
        other => return Err(format!("sign must be +1 or -1, got {other}")),
    };
    Ok(AuxiliaryPoint::new(lambda, sign))
}

#[derive(Args, Debug, Default)]
pub struct ScenarioFlags {
    /// Branch points, comma separated (2n+1 values).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    branch_points: Option<Vec<f64>>,
    /// Cnoidal roots f1,f2,f3 of u; the field is q = -u.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    cnoidal: Option<Vec<f64>>,
    /// Phase of the cnoidal profile.
    #[arg(long, allow_hyphen_values = true)]
    x0: Option<f64>,
    /// Integration range a,b.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    x_range: Option<Vec<f64>>,
    #[arg(long)]
    samples: Option<usize>,
    /// ODE tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// Start points as lambda:sign pairs, comma separated.
    #[arg(long, value_delimiter = ',', value_parser = parse_point, allow_hyphen_values = true)]
    start: Option<Vec<AuxiliaryPoint>>,
}

impl ScenarioFlags {
    fn merge(&self, g: &Globals) -> anyhow::Result<ScenarioConfig> {
        let mut cfg = ScenarioConfig::load(g.config.as_deref())?;
        if let Some(bp) = &self.branch_points {
            cfg.curve = Some(CurveSpec { branch_points: bp.clone() });
            cfg.profile = None;
        }
        if let Some(f) = &self.cnoidal {
            let [f1, f2, f3] = f[..] else {
                return Err(CliError::Config("--cnoidal takes three roots".into()).into());
            };
            cfg.profile = Some(CnoidalSpec { f1, f2, f3, x0: 0.0 });
            cfg.curve = None;
        }
        if let (Some(x0), Some(p)) = (self.x0, cfg.profile.as_mut()) {
            p.x0 = x0;
        }
        if let Some(r) = &self.x_range {
            let [a, b] = r[..] else {
                return Err(CliError::Config("--x-range takes two values".into()).into());
            };
            cfg.x_range = Some([a, b]);
        }
        cfg.samples = self.samples.or(cfg.samples);
        cfg.tol = self.tol.or(cfg.tol);
        cfg.start = self.start.clone().or(cfg.start);
        cfg.seed = g.seed.or(cfg.seed);
        Ok(cfg)
    }
}

pub fn run(cmd: &KdvCommand, g: &Globals) -> anyhow::Result<String> {
    match cmd {
        KdvCommand::Hierarchy { n } => hierarchy(*n, g.format),
        KdvCommand::Curve(flags) => curve(&flags.merge(g)?, g.format),
        KdvCommand::Flow(flags) => flow(&flags.merge(g)?, g.format, &g.out),
        KdvCommand::Evolve { scenario, nodes, t_end, cfl } => {
            let mut cfg = scenario.merge(g)?;
            cfg.nodes = nodes.or(cfg.nodes);
            cfg.t_end = t_end.or(cfg.t_end);
            cfg.cfl = cfl.or(cfg.cfl);
            evolve(&cfg, g.format, &g.out)
        }
    }
}

fn hierarchy(n: u32, format: Format) -> anyhow::Result<String> {
    let f = conserved_density(n as i64);
    let phi = basic_soliton(n);
    let h = hn_closed_form(n);
    let p = curve_polynomial(n);
    Ok(match format {
        Format::Text => format!("F_{n} = {f}\nphi_{n} = {phi}\nH_{n} = {h}\nP_{n} = {p}\n"),
        Format::Latex => format!(
            "\\begin{{align*}}\nF_{{{n}}} &= {} \\\\\n\\phi_{{{n}}} &= {} \\\\\nH_{{{n}}} &= {} \\\\\nP_{{{n}}} &= {}\n\\end{{align*}}\n",
            f.render(Style::Latex),
            phi.render(Style::Latex),
            h.render(Style::Latex),
            p.render(Style::Latex)
        ),
        Format::Json => json_doc(json!({
            "n": n,
            "F": f.to_json(),
            "phi": phi.to_json(),
            "H": h.to_json(),
            "P": p.to_json(),
        })),
        Format::Csv => return Err(format.unsupported("kdv hierarchy")),
    })
}

fn poly_text(coeffs: &[f64], latex: bool) -> String {
    let mut parts = Vec::new();
    for (j, c) in coeffs.iter().enumerate().rev() {
        if *c == 0.0 {
            continue;
        }
        let x = match (j, latex) {
            (0, _) => String::new(),
            (1, _) => "X".into(),
            (_, true) => format!("X^{{{j}}}"),
            (_, false) => format!("X^{j}"),
        };
        parts.push(if x.is_empty() {
            format!("{c}")
        } else if *c == 1.0 {
            x
        } else {
            format!("{c}{x}")
        });
    }
    parts.join(" + ").replace("+ -", "- ")
}

fn curve(cfg: &ScenarioConfig, format: Format) -> anyhow::Result<String> {
    let sc = Scenario::build(cfg, 1.0)?;
    let c = &sc.curve;
    Ok(match format {
        Format::Text => format!(
            "n = {}\nP(X) = {}\nbranch_points = [{}]\n",
            c.n,
            poly_text(&c.coeffs, false),
            c.branch_points.iter().map(|b| num(*b)).collect::<Vec<_>>().join(", ")
        ),
        Format::Latex => format!("P(X) = {}\n", poly_text(&c.coeffs, true)),
        Format::Json => json_doc(c.to_json()),
        Format::Csv => {
            let Source::Cnoidal { params, comb } = &sc.source else {
                return Err(CliError::Config("coefficient samples need a profile".into()).into());
            };
            let width = 2 * c.n + 2;
            let mut header = vec!["x".to_string()];
            header.extend((0..width).map(|j| format!("c{j}")));
            let mut rows = Vec::with_capacity(sc.xs.len());
            for &x in &sc.xs {
                let mut cc = curve_coeffs_at(comb, &cnoidal_profile(params, x).negated())?;
                cc.resize(width, 0.0);
                rows.push(std::iter::once(x).chain(cc).collect());
            }
            csv(&header, rows)
        }
    })
}

fn flow(cfg: &ScenarioConfig, format: Format, out: &Path) -> anyhow::Result<String> {
    if !matches!(format, Format::Text | Format::Json) {
        return Err(format.unsupported("kdv flow"));
    }
    let sc = Scenario::build(cfg, 2.0)?;
    let traj = x_flow(&sc.curve, &sc.start, &sc.xs, sc.tol)?;
    let n = traj.n();
    let grid = reconstruct_q(&traj);

    let mut header = vec!["x".to_string()];
    header.extend((1..=n).map(|k| format!("lambda{k}")));
    header.extend((1..=n).map(|k| format!("s{k}")));
    header.push("q".into());
    let rows = (0..sc.xs.len()).map(|i| {
        let p = &traj.points[i];
        std::iter::once(sc.xs[i])
            .chain(p.iter().map(|a| a.lambda))
            .chain(p.iter().map(|a| a.sign as f64))
            .chain([grid.q[i]])
            .collect()
    });
    write_atomic(out, "trajectory.csv", &csv(&header, rows))?;

    let exact: Option<Vec<f64>> = match &sc.source {
        Source::Cnoidal { params, .. } => Some(sc.xs.iter().map(|&x| -cnoidal_profile(params, x).value()).collect()),
        Source::BranchPoints => None,
    };
    let mut rheader = vec!["x".to_string(), "q".to_string()];
    if exact.is_some() {
        rheader.push("q_exact".into());
    }
    let rrows = (0..sc.xs.len()).map(|i| {
        let mut r = vec![sc.xs[i], grid.q[i]];
        if let Some(e) = &exact {
            r.push(e[i]);
        }
        r
    });
    write_atomic(out, "reconstruction.csv", &csv(&rheader, rrows))?;

    let abel = abel_map_theta(&traj, 20);
    let mut aheader = vec!["x".to_string()];
    aheader.extend((1..=n).map(|mu| format!("A{mu}")));
    let arows = abel.iter().map(|a| std::iter::once(a.x).chain(a.components.iter().copied()).collect());
    write_atomic(out, "abel.csv", &csv(&aheader, arows))?;

    let confined =
        traj.points.iter().all(|pts| pts.iter().enumerate().all(|(k, p)| traj.curve.gap_of(p.lambda, 1e-9) == Some(k)));
    let drifts: Vec<f64> = (0..n.saturating_sub(1)).map(|mu| drift(abel.iter().map(|a| a.components[mu]))).collect();
    let slope = (n > 0).then(|| {
        let last: Vec<f64> = abel.iter().map(|a| a.components[n - 1]).collect();
        slope_fit(&sc.xs, &last).0
    });
    let field_error = exact.as_ref().map(|e| e.iter().zip(&grid.q).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max));

    if format == Format::Json {
        return Ok(json_doc(json!({
            "genus": n,
            "samples": sc.xs.len(),
            "gap_confined": confined,
            "oval_violation": traj.oval_violation(),
            "branch_events": traj.events.len(),
            "steps": { "accepted": traj.stats.accepted, "rejected": traj.stats.rejected },
            "abel_drift": drifts,
            "abel_slope": slope,
            "field_error": field_error,
        })));
    }
    let mut s = format!(
        "genus={n} samples={} branch_events={} steps_accepted={} steps_rejected={}\n",
        sc.xs.len(),
        traj.events.len(),
        traj.stats.accepted,
        traj.stats.rejected
    );
    s += &format!(
        "gap_confinement={} oval_violation={:.1e}\n",
        if confined { "ok" } else { "violated" },
        traj.oval_violation()
    );
    for (mu, d) in drifts.iter().enumerate() {
        s += &format!("mu={} drift={d:.2e}\n", mu + 1);
    }
    if let Some(slope) = slope {
        s += &format!("abel_slope={slope:.6} deviation={:.1e}\n", (slope + 2.0).abs());
    }
    if let Some(e) = field_error {
        s += &format!("field_error={e:.2e}\n");
    }
    Ok(s)
}

fn evolve(cfg: &ScenarioConfig, format: Format, out: &Path) -> anyhow::Result<String> {
    if !matches!(format, Format::Text | Format::Json) {
        return Err(format.unsupported("kdv evolve"));
    }
    let mut cfg = cfg.clone();
    if cfg.curve.is_some() {
        return Err(CliError::Config("evolve needs a cnoidal profile".into()).into());
    }
    let spec = *cfg.profile.get_or_insert(CnoidalSpec { f1: 1.1, f2: 0.1, f3: -0.9, x0: 0.0 });
    let nodes = cfg.nodes.unwrap_or(2048);
    let params = soliton_forge::CnoidalParams::new(spec.f1, spec.f2, spec.f3, spec.x0)?;
    let len = period(&params);
    let dx = len / nodes as f64;
    cfg.x_range = Some([0.0, (nodes - 1) as f64 * dx]);
    cfg.samples = Some(nodes);
    cfg.validate()?;
    let sc = Scenario::build(&cfg, 1.0)?;
    let Source::Cnoidal { comb, .. } = &sc.source else { unreachable!("profile source") };
    let traj = x_flow(&sc.curve, &sc.start, &sc.xs, sc.tol)?;
    let field = t_flow(&reconstruct_q(&traj), cfg.t_end.unwrap_or(0.1), cfg.cfl.unwrap_or(0.9))?;
    let first = &field.levels[0];
    let last = field.levels.last().expect("at least one level");
    let qx = d1_periodic(&last.q, dx);
    let qxx = d2_periodic(&last.q, dx);
    let mut curve_drift = 0.0f64;
    for i in 0..nodes {
        let cc = curve_coeffs_at(comb, &ProfileJet::new(vec![last.q[i], qx[i], qxx[i]]))?;
        curve_drift = cc.iter().zip(&sc.curve.coeffs).map(|(a, b)| (a - b).abs()).fold(curve_drift, f64::max);
    }
    let residual = if field.levels.len() >= 3 { Some(kdv_residual(&field)?) } else { None };
    let exact: Vec<f64> = sc.xs.iter().map(|&x| -cnoidal_profile(&params, x - params.c * last.t).value()).collect();
    let wave_error = exact.iter().zip(&last.q).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);

    let header: Vec<String> = ["x", "q_initial", "q_final", "q_exact"].iter().map(|s| s.to_string()).collect();
    let rows = (0..nodes).map(|i| vec![sc.xs[i], first.q[i], last.q[i], exact[i]]);
    write_atomic(out, "evolve.csv", &csv(&header, rows))?;

    if format == Format::Json {
        return Ok(json_doc(json!({
            "nodes": nodes,
            "t_end": last.t,
            "levels": field.levels.len(),
            "curve_drift": curve_drift,
            "kdv_residual": residual,
            "wave_error": wave_error,
        })));
    }
    let mut s = format!("nodes={nodes} t_end={} levels={}\n", last.t, field.levels.len());
    s += &format!("curve_drift={curve_drift:.2e}\n");
    if let Some(r) = residual {
        s += &format!("kdv_residual={r:.2e}\n");
    }
    s += &format!("wave_error={wave_error:.2e}\n");
    Ok(s)
}
