use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;

use rptkit_core::combinatorics::bell_numbers;
use rptkit_core::diagram::{
    is_connected, is_one_particle_irreducible, is_prime, bridges, DiagramData,
};
use rptkit_core::power_counting::{feynman_combine, symmetric_mixture, DivergenceReport, QuadratureCheck};
use rptkit_core::variational::{check_2nvar_deltas, check_2nvar_identity, check_2var_identity, check_bell_egf};
use rptkit_core::{
    compare_cumulant_methods, cumulants_from_moments_partition, cumulants_from_moments_series,
    moments_from_cumulants, parse_rational, CumulantTable, Diagram, MomentTable,
};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use crate::args::{Check, Command, CumulantsArgs, DiagramArgs, FeynmanArgs, Format, IdentitiesArgs};

pub const MAX_BELL: u32 = 500;
pub const MAX_SERIES_ORDER: u32 = 32;
const SWEEP_LO: f64 = 0.1;
const SWEEP_HI: f64 = 10.0;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Contract(String),
    #[error("{0}")]
    Input(String),
}

impl From<rptkit_core::Error> for CliError {
    fn from(e: rptkit_core::Error) -> Self {
        CliError::Contract(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

pub fn run(command: Command) -> CliResult<String> {
    match command {
        Command::Bell(a) => bell(a.max, a.format),
        Command::Cumulants(a) => cumulants(&a),
        Command::Moments(a) => {
            let kappa: CumulantTable = read_json(&a.input)?;
            Ok(render(&json!({ "moments": moments_from_cumulants(&kappa)? })))
        }
        Command::Diagram(a) => diagram(&a),
        Command::Identities(a) => identities(&a),
        Command::Feynman(a) => feynman(&a),
    }
}

/// Pretty JSON with sorted keys and a trailing newline.
fn render<T: serde::Serialize>(value: &T) -> String {
    // round-trip through Value: its map type is a BTreeMap, so keys come out sorted
    let value = serde_json::to_value(value).expect("outputs serialize");
    let mut text = serde_json::to_string_pretty(&value).expect("values serialize");
    text.push('\n');
    text
}

fn read_input(path: &Path) -> CliResult<String> {
    let mut text = String::new();
    let result = if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    result.map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok(text)
}

fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = read_input(path)?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Floats carry 17 significant digits.
fn float(x: f64) -> String {
    format!("{x:.16e}")
}

fn bell(max: u32, format: Format) -> CliResult<String> {
    if max > MAX_BELL {
        return Err(CliError::Contract(format!("--max {max} exceeds the cap of {MAX_BELL}")));
    }
    let bells = bell_numbers(max);
    Ok(match format {
        Format::Csv => {
            let mut out = String::from("n,bell_n\n");
            for (n, b) in bells.iter().enumerate() {
                let _ = writeln!(out, "{n},{b}");
            }
            out
        }
        Format::Json => {
            let rows: Vec<Value> =
                bells.iter().enumerate().map(|(n, b)| json!({ "n": n, "bell_n": b.to_string() })).collect();
            render(&json!({ "bell": rows }))
        }
    })
}

fn cumulants(a: &CumulantsArgs) -> CliResult<String> {
    use crate::args::Method;
    let mu: MomentTable = read_json(&a.input.input)?;
    let value = match a.method {
        Method::Series => json!({ "method": "series", "cumulants": cumulants_from_moments_series(&mu)? }),
        Method::Partition => {
            json!({ "method": "partition", "cumulants": cumulants_from_moments_partition(&mu)? })
        }
        Method::Both => json!({
            "method": "both",
            "cumulants": cumulants_from_moments_series(&mu)?,
            "discrepancy": compare_cumulant_methods(&mu)?,
        }),
    };
    Ok(render(&value))
}

fn diagram(a: &DiagramArgs) -> CliResult<String> {
    let data: DiagramData = read_json(&a.input.input)?;
    let d = Diagram::try_from(data)?;
    if a.dot {
        return Ok(d.to_dot());
    }
    let sobolev = parse_rational(&a.sobolev_index)?;
    let connected = is_connected(&d);
    let divergence = if connected && d.el() % 2 == 0 {
        let report = DivergenceReport::for_diagram(&d, sobolev)?;
        Some(match &a.lattice_spacing {
            Some(label) => report.with_lattice_spacing(label.clone()),
            None => report,
        })
    } else {
        None
    };
    let value = json!({
        "connected": connected,
        "one_particle_irreducible": if connected { Some(is_one_particle_irreducible(&d)?) } else { None },
        "bridges": bridges(&d),
        "prime": is_prime(&d),
        "el": d.el(),
        "divergence": divergence,
    });
    Ok(render(&value))
}

fn identities(a: &IdentitiesArgs) -> CliResult<String> {
    if a.order > MAX_SERIES_ORDER {
        return Err(CliError::Contract(format!(
            "--order {} exceeds the series cap of {MAX_SERIES_ORDER}",
            a.order
        )));
    }
    let reports = match a.check {
        Check::BellEgf => vec![check_bell_egf(a.order)],
        Check::TwoVar => check_2var_identity(a.order)?,
        Check::TwoNVar => match a.from_order {
            Some(from) => vec![check_2nvar_deltas(a.n, a.order, from)?],
            None => vec![check_2nvar_identity(a.n, a.order)?],
        },
    };
    Ok(render(&json!({ "reports": reports })))
}

fn quadrature_json(check: &QuadratureCheck) -> Value {
    json!({
        "value": float(check.value),
        "reference": float(check.reference),
        "abs_error": float(check.abs_error),
    })
}

fn feynman(a: &FeynmanArgs) -> CliResult<String> {
    if a.sweep {
        return sweep(a.grid, a.combine_points());
    }
    if let Some(alphas) = &a.mixture {
        let points = a.mixture_points();
        let check = symmetric_mixture(alphas, points)?;
        let mut value = quadrature_json(&check);
        value["alphas"] = alphas.iter().map(|&x| Value::from(float(x))).collect();
        value["points"] = points.into();
        return Ok(render(&value));
    }
    let (alpha, beta) = (a.alpha.expect("required by clap"), a.beta.expect("required by clap"));
    let points = a.combine_points();
    let check = feynman_combine(alpha, beta, points)?;
    let mut value = quadrature_json(&check);
    value["alpha"] = float(alpha).into();
    value["beta"] = float(beta).into();
    value["points"] = points.into();
    Ok(render(&value))
}

fn sweep(grid: usize, points: usize) -> CliResult<String> {
    if grid < 2 {
        return Err(CliError::Contract("--grid must be at least 2".into()));
    }
    let axis: Vec<f64> = (0..grid)
        .map(|i| {
            let t = i as f64 / (grid - 1) as f64;
            SWEEP_LO * (SWEEP_HI / SWEEP_LO).powf(t)
        })
        .collect();
    let mut out = String::from("alpha,beta,value,reference,abs_error\n");
    for &alpha in &axis {
        for &beta in &axis {
            let c = feynman_combine(alpha, beta, points)?;
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                float(alpha),
                float(beta),
                float(c.value),
                float(c.reference),
                float(c.abs_error)
            );
        }
    }
    Ok(out)
}
