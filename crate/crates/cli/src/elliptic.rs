use clap::Subcommand;
use serde_json::json;
use soliton_forge::elliptic::{cnoidal_profile, complete_k, jacobi_sn_cn_dn};
use soliton_forge::CnoidalParams;

use crate::config::linspace;
use crate::emit::{csv, json_doc, Format};
use crate::error::CliError;

#[derive(Subcommand, Debug)]
pub enum EllipticCommand {
    /// Complete elliptic integral K(m).
    #[command(name = "K")]
    K {
        /// Parameter values, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        m: Vec<f64>,
    },
    /// Jacobi cn(u|m) (sn and dn in json and csv output).
    Cn {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        u: Vec<f64>,
        #[arg(long)]
        m: f64,
    },
    /// Cnoidal profile u and its first four derivatives as CSV.
    Profile {
        /// Roots f1,f2,f3.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "1,0,-1")]
        cnoidal: Vec<f64>,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        x0: f64,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0,10")]
        x_range: Vec<f64>,
        #[arg(long, default_value_t = 201)]
        samples: usize,
    },
}

pub fn run(cmd: &EllipticCommand, format: Format) -> anyhow::Result<String> {
    match cmd {
        EllipticCommand::K { m } => {
            let ks = m.iter().map(|&m| complete_k(m)).collect::<Result<Vec<_>, _>>()?;
            Ok(match format {
                Format::Text => ks.iter().map(|k| format!("{k}\n")).collect(),
                Format::Csv => csv(&["m".into(), "K".into()], m.iter().zip(&ks).map(|(m, k)| vec![*m, *k])),
                Format::Json => json_doc(json!({ "m": m, "K": ks })),
                Format::Latex => return Err(format.unsupported("elliptic K")),
            })
        }
        EllipticCommand::Cn { u, m } => {
            let vals = u.iter().map(|&u| jacobi_sn_cn_dn(u, *m)).collect::<Result<Vec<_>, _>>()?;
            Ok(match format {
                Format::Text => vals.iter().map(|v| format!("{}\n", v.1)).collect(),
                Format::Csv => csv(
                    &["u".into(), "sn".into(), "cn".into(), "dn".into()],
                    u.iter().zip(&vals).map(|(u, v)| vec![*u, v.0, v.1, v.2]),
                ),
                Format::Json => json_doc(json!({
                    "m": m,
                    "u": u,
                    "sn": vals.iter().map(|v| v.0).collect::<Vec<_>>(),
                    "cn": vals.iter().map(|v| v.1).collect::<Vec<_>>(),
                    "dn": vals.iter().map(|v| v.2).collect::<Vec<_>>(),
                })),
                Format::Latex => return Err(format.unsupported("elliptic cn")),
            })
        }
        EllipticCommand::Profile { cnoidal, x0, x_range, samples } => {
            let (&[f1, f2, f3], &[a, b]) = (&cnoidal[..], &x_range[..]) else {
                return Err(CliError::Config("--cnoidal takes three roots and --x-range two values".into()).into());
            };
            if *samples < 2 || a == b {
                return Err(CliError::Config("profile needs a nonempty range and at least 2 samples".into()).into());
            }
            let p = CnoidalParams::new(f1, f2, f3, *x0)?;
            let xs = linspace(a, b, *samples);
            let jets: Vec<Vec<f64>> = xs.iter().map(|&x| cnoidal_profile(&p, x).derivs).collect();
            Ok(match format {
                Format::Text | Format::Csv => {
                    let mut header = vec!["x".to_string(), "u".to_string()];
                    header.extend((1..jets[0].len()).map(|k| format!("u{}", "'".repeat(k))));
                    csv(
                        &header,
                        xs.iter().zip(&jets).map(|(x, j)| std::iter::once(*x).chain(j.iter().copied()).collect()),
                    )
                }
                Format::Json => json_doc(json!({ "x": xs, "jets": jets, "speed": p.c, "modulus": p.modulus() })),
                Format::Latex => return Err(format.unsupported("elliptic profile")),
            })
        }
    }
}
