use clap::Subcommand;
use rayon::prelude::*;
use serde_json::{json, Value};
use soliton_forge::diffpoly::Style;
use soliton_forge::nls::{
    condition_a2_comparison, condition_residuals, derivative_identity_check, ef_from_profile, evaluate_ef,
    nls_basic_soliton, nls_coefficient, nls_curve_check, ComplexProfile, ProfileShape, MAX_BASIC_N,
};

use crate::config::linspace;
use crate::emit::{json_doc, Format};
use crate::error::CliError;
use crate::Report;

#[derive(Subcommand, Debug)]
pub enum NlsCommand {
    /// Print A_0..A_n and phi_n.
    Hierarchy {
        #[arg(long, value_parser = clap::value_parser!(u32).range(0..=MAX_BASIC_N as i64))]
        n: u32,
    },
    /// Print the closure residuals R_A and R_B of degree n.
    Conditions {
        #[arg(long, value_parser = clap::value_parser!(u32).range(0..=MAX_BASIC_N as i64))]
        n: u32,
    },
    /// Run the numeric reduction checks on plane-wave, sech and quadratic-phase profiles.
    Check {
        /// Amplitude of the sech profile a·sech(ax).
        #[arg(long, default_value_t = 1.0)]
        a: f64,
    },
}

pub fn run(cmd: &NlsCommand, format: Format) -> anyhow::Result<Report> {
    match cmd {
        NlsCommand::Hierarchy { n } => hierarchy(*n, format).map(Report::ok),
        NlsCommand::Conditions { n } => conditions(*n, format).map(Report::ok),
        NlsCommand::Check { a } => check(*a, format),
    }
}

fn hierarchy(n: u32, format: Format) -> anyhow::Result<String> {
    let coeffs = (0..=n).map(|j| nls_coefficient(j as i64)).collect::<Result<Vec<_>, _>>()?;
    let phi = nls_basic_soliton(n)?;
    Ok(match format {
        Format::Text => {
            let mut s: String = coeffs.iter().enumerate().map(|(j, a)| format!("A_{j} = {a}\n")).collect();
            s += &format!("phi_{n} = {phi}\n");
            s
        }
        Format::Latex => {
            let mut s = String::from("\\begin{align*}\n");
            for (j, a) in coeffs.iter().enumerate() {
                s += &format!("A_{{{j}}} &= {} \\\\\n", a.render(Style::Latex));
            }
            s += &format!("\\phi_{{{n}}} &= {}\n\\end{{align*}}\n", phi.render(Style::Latex));
            s
        }
        Format::Json => json_doc(json!({
            "n": n,
            "A": coeffs.iter().map(|a| a.to_json()).collect::<Vec<_>>(),
            "phi": phi.to_json(),
        })),
        Format::Csv => return Err(format.unsupported("nls hierarchy")),
    })
}

fn conditions(n: u32, format: Format) -> anyhow::Result<String> {
    let (ra, rb) = condition_residuals(n)?;
    Ok(match format {
        Format::Text => format!("R_A({n}) = {ra}\nR_B({n}) = {rb}\n"),
        Format::Latex => format!(
            "\\begin{{align*}}\nR_A &= {} \\\\\nR_B &= {}\n\\end{{align*}}\n",
            ra.render(Style::Latex),
            rb.render(Style::Latex)
        ),
        Format::Json => json_doc(json!({ "n": n, "R_A": ra.to_json(), "R_B": rb.to_json() })),
        Format::Csv => return Err(format.unsupported("nls conditions")),
    })
}

struct Check {
    name: &'static str,
    value: f64,
    tol: f64,
}

fn plane_wave() -> anyhow::Result<f64> {
    let p = ComplexProfile::new(ProfileShape::PlaneWave { c_re: 0.8, c_im: -0.6, k: 1.3 }, 1.0);
    let mut worst = 0.0f64;
    for x in linspace(-2.0, 2.0, 9) {
        let jet = ef_from_profile(&p, x, 6)?;
        for n in 0..=4 {
            let (ra, rb) = condition_residuals(n)?;
            worst = worst.max(evaluate_ef(&ra, &jet)?.norm()).max(evaluate_ef(&rb, &jet)?.norm());
        }
    }
    Ok(worst)
}

fn check(a: f64, format: Format) -> anyhow::Result<Report> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(CliError::Config("sech amplitude must be positive".into()).into());
    }
    let sech = ComplexProfile::new(ProfileShape::Sech { a }, 1.0);
    let quad = ComplexProfile::new(ProfileShape::QuadraticPhase, 1.0);
    let span = 4.0 / a;
    let jobs: Vec<Box<dyn Fn() -> anyhow::Result<Check> + Sync>> = vec![
        Box::new(|| Ok(Check { name: "plane_wave_conditions", value: plane_wave()?, tol: 1e-12 })),
        Box::new(|| {
            let r = nls_curve_check(&sech, 0.5 * a * a, &linspace(-span, span, 201))?;
            Ok(Check { name: "sech_curve_drift", value: r.drift, tol: 1e-8 })
        }),
        Box::new(|| {
            let r = condition_a2_comparison(&sech, &linspace(-0.75 * span, 0.75 * span, 121))?;
            Ok(Check { name: "condition_a2_mismatch", value: r.mismatch, tol: 1e-8 })
        }),
        Box::new(|| {
            let r = derivative_identity_check(&quad, &linspace(-1.0, 1.0, 50))?;
            Ok(Check {
                name: "identities_quadratic_phase",
                value: r.max_error.iter().fold(0.0, |m, v| v.max(m)),
                tol: 1e-10,
            })
        }),
        Box::new(|| {
            let r = derivative_identity_check(&sech, &linspace(-0.5 * span, 0.5 * span, 50))?;
            Ok(Check { name: "identities_sech", value: r.max_error.iter().fold(0.0, |m, v| v.max(m)), tol: 1e-10 })
        }),
    ];
    let checks = jobs.par_iter().map(|job| job()).collect::<anyhow::Result<Vec<_>>>()?;
    let failed = checks.iter().filter(|c| !(c.value < c.tol)).count();
    let stdout = match format {
        Format::Text => checks
            .iter()
            .map(|c| {
                format!(
                    "{} {} value={:.2e} tol={:.0e}\n",
                    if c.value < c.tol { "PASS" } else { "FAIL" },
                    c.name,
                    c.value,
                    c.tol
                )
            })
            .collect(),
        Format::Json => json_doc(json!({
            "checks": checks.iter().map(|c| json!({
                "name": c.name, "value": c.value, "tol": c.tol, "pass": c.value < c.tol,
            })).collect::<Vec<Value>>(),
            "failures": failed,
        })),
        _ => return Err(format.unsupported("nls check")),
    };
    let total = checks.len();
    Ok(Report { stdout, failure: (failed > 0).then_some(CliError::CheckFailed { failed, total }) })
}
