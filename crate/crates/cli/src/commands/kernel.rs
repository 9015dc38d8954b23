//! Heat or potential kernel on a tensor grid of (x, y) pairs.

use potentia::potential::potential_kernel_with;
use potentia::{Error, PotentialRequest, QuadratureSpec};
use rayon::prelude::*;

use super::build_setting;
use crate::config::{fmt_real, parse_grid, CliError, CliResult, Params};
use crate::output::Table;

pub const KEYS: [&str; 7] = ["setting", "d", "alpha", "t", "sigma", "grid", "tol"];

fn tensor(axes: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut pts = vec![Vec::new()];
    for ax in axes {
        pts = pts.iter().flat_map(|p| ax.iter().map(move |v| [p.as_slice(), &[*v]].concat())).collect();
    }
    pts
}

pub fn run(p: &Params) -> CliResult<Table> {
    let name = p.require("setting")?;
    let setting = build_setting(&name, p)?;
    let d = setting.dim();
    let t = p.real("t")?;
    let sigma = p.real("sigma")?;
    if t.is_some() == sigma.is_some() {
        return Err(CliError::Usage("give exactly one of --t (heat kernel) and --sigma (potential kernel)".into()));
    }
    let axes = parse_grid("grid", &p.require("grid")?, d)?;
    let pts = tensor(&axes);
    for x in &pts {
        setting.check_point(x)?;
    }
    let pairs: Vec<(&Vec<f64>, &Vec<f64>)> = pts.iter().flat_map(|x| pts.iter().map(move |y| (x, y))).collect();

    let values: Vec<CliResult<(String, &'static str)>> = match (t, sigma) {
        (Some(t), _) => {
            if !(t > 0.0 && t.is_finite()) {
                return Err(CliError::Invalid(format!("t = {t} must be positive")));
            }
            pairs.par_iter().map(|(x, y)| Ok((fmt_real(setting.heat(t, x, y)), "ok"))).collect()
        }
        (_, Some(s)) => {
            let req = PotentialRequest::new(setting.clone(), s)?;
            let mut spec = QuadratureSpec::kernel();
            if let Some(tol) = p.real("tol")? {
                if !(tol > 0.0) {
                    return Err(CliError::Invalid(format!("tol = {tol} must be positive")));
                }
                spec = spec.with_tol(tol);
            }
            pairs
                .par_iter()
                .map(|(x, y)| match potential_kernel_with(&req, x, y, &spec) {
                    Ok(v) => Ok((fmt_real(v), "ok")),
                    Err(Error::Divergent { .. }) => Ok((String::new(), "divergent")),
                    Err(Error::NearDiagonal { .. }) => Ok((String::new(), "near-diagonal")),
                    Err(Error::Domain(_)) => Ok((String::new(), "critical")),
                    Err(e) => Err(e.into()),
                })
                .collect()
        }
        _ => unreachable!(),
    };

    let mut cols: Vec<String> = (1..=d).map(|i| format!("x{i}")).collect();
    cols.extend((1..=d).map(|i| format!("y{i}")));
    cols.push("value".into());
    cols.push("status".into());
    let mut table = Table::new(&cols);
    for ((x, y), v) in pairs.iter().zip(values) {
        let (value, status) = v?;
        let mut row: Vec<String> = x.iter().chain(y.iter()).map(|c| fmt_real(*c)).collect();
        row.push(value);
        row.push(status.into());
        table.push(row);
    }
    Ok(table)
}
