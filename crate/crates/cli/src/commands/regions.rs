//! Admissibility verdicts for single tuples, tuple files, sweeps, and interpolation plans.

use std::collections::BTreeMap;
use std::path::Path;

use potentia::regions::{classify, equivalence_check, interpolation_plan, record, ExponentTuple, Theorem, RECORD_HEADER};

use crate::config::{fmt_real, parse_list, parse_range, parse_real, parse_usize, CliError, CliResult, Params};
use crate::output::Table;

pub const TUPLE_KEYS: [&str; 11] = ["d", "p", "q", "a", "b", "sigma", "alpha", "A", "B", "r", "eta"];
pub const KEYS: [&str; 15] =
    ["theorem", "d", "p", "q", "a", "b", "sigma", "alpha", "A", "B", "r", "eta", "sweep", "tuples", "plan"];

const SWEEPABLE: [&str; 9] = ["p", "q", "a", "b", "sigma", "A", "B", "r", "eta"];

/// Builds a tuple from raw key values.
pub fn tuple_from(raw: &BTreeMap<String, String>) -> CliResult<ExponentTuple> {
    let real = |k: &str| raw.get(k).map(|v| parse_real(k, v)).transpose();
    let need = |k: &str| real(k)?.ok_or_else(|| CliError::Invalid(format!("tuple is missing `{k}`")));
    let alpha = raw.get("alpha").map(|v| parse_list("alpha", v)).transpose()?;
    let d = match raw.get("d") {
        Some(v) => parse_usize("d", v)?,
        None => alpha.as_ref().map_or(1, |a| a.len()),
    };
    let mut t = ExponentTuple::new(d, need("p")?, need("q")?, need("sigma")?)?
        .weights(real("a")?.unwrap_or(0.0), real("b")?.unwrap_or(0.0));
    if let Some(mut a) = alpha {
        if a.len() == 1 && d > 1 {
            a = vec![a[0]; d];
        }
        if a.len() != d {
            return Err(CliError::Invalid(format!("alpha has {} entries for d = {d}", a.len())));
        }
        t = t.alpha(a)?;
    }
    let (ba, bb) = (real("A")?, real("B")?);
    if ba.is_some() || bb.is_some() {
        t = t.big(ba.unwrap_or(0.0), bb.unwrap_or(0.0));
    }
    let (r, eta) = (real("r")?, real("eta")?);
    match (r, eta) {
        (Some(r), Some(eta)) => t = t.kernel(r, eta),
        (None, None) => {}
        _ => return Err(CliError::Invalid("r and eta go together".into())),
    }
    Ok(t)
}

fn base_values(p: &Params) -> BTreeMap<String, String> {
    TUPLE_KEYS.iter().filter_map(|k| p.get(k).map(|v| (k.to_string(), v))).collect()
}

/// Rows of a CSV tuple file (header = tuple keys; `#` lines are comments), merged over `base`.
fn read_tuples(path: &Path, base: &BTreeMap<String, String>) -> CliResult<Vec<BTreeMap<String, String>>> {
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| CliError::Invalid(format!("cannot read tuples {}: {e}", path.display())))?;
    let header: Vec<String> = rdr
        .headers()
        .map_err(|e| CliError::Invalid(format!("tuples {}: {e}", path.display())))?
        .iter()
        .map(String::from)
        .collect();
    if let Some(bad) = header.iter().find(|h| !TUPLE_KEYS.contains(&h.as_str())) {
        return Err(CliError::Invalid(format!("tuples {}: unknown column `{bad}`", path.display())));
    }
    let mut out = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| CliError::Invalid(format!("tuples {} row {}: {e}", path.display(), i + 1)))?;
        let mut m = base.clone();
        for (k, v) in header.iter().zip(rec.iter()) {
            if !v.is_empty() {
                m.insert(k.clone(), v.to_string());
            }
        }
        out.push(m);
    }
    Ok(out)
}

fn tuples(p: &Params) -> CliResult<Vec<BTreeMap<String, String>>> {
    let base = base_values(p);
    let sweep = p.get("sweep");
    let file = p.get("tuples");
    match (sweep, file) {
        (Some(_), Some(_)) => Err(CliError::Usage("--sweep and --tuples are exclusive".into())),
        (None, Some(f)) => read_tuples(Path::new(&f), &base),
        (Some(s), None) => {
            let (var, range) = s
                .split_once(char::is_whitespace)
                .ok_or_else(|| CliError::Invalid(format!("sweep = {s:?}: expected `VAR lo:hi:n`")))?;
            if !SWEEPABLE.contains(&var) {
                return Err(CliError::Invalid(format!("cannot sweep `{var}` (one of {})", SWEEPABLE.join(", "))));
            }
            Ok(parse_range("sweep", range.trim())?
                .into_iter()
                .map(|v| {
                    let mut m = base.clone();
                    m.insert(var.to_string(), fmt_real(v));
                    m
                })
                .collect())
        }
        (None, None) => Ok(vec![base]),
    }
}

const PLAN_HEADER: [&str; 16] = [
    "alpha", "axis", "beta", "gamma", "lambda", "sigma", "sigma_beta", "sigma_gamma", "a", "a_beta", "a_gamma", "b",
    "b_beta", "b_gamma", "residual", "consistent",
];

fn join(v: &[f64]) -> String {
    v.iter().map(|x| fmt_real(*x)).collect::<Vec<_>>().join(";")
}

pub fn run(p: &Params) -> CliResult<Table> {
    let plan = p.flag("plan")?;
    let list = tuples(p)?;
    if plan {
        let mut table = Table::new(&PLAN_HEADER);
        for raw in &list {
            let t = tuple_from(raw)?;
            let alpha = t.alpha.clone().ok_or_else(|| CliError::Usage("--plan needs alpha".into()))?;
            let pl = interpolation_plan(&alpha, t.sigma, t.a, t.b)?;
            let eq = equivalence_check(&t)?;
            table.push(vec![
                join(&pl.alpha.0),
                pl.axis.map(|a| (a + 1).to_string()).unwrap_or_default(),
                join(&pl.beta.0),
                join(&pl.gamma.0),
                fmt_real(pl.lambda),
                fmt_real(pl.sigma),
                fmt_real(pl.sigma_beta),
                fmt_real(pl.sigma_gamma),
                fmt_real(pl.a),
                fmt_real(pl.a_beta),
                fmt_real(pl.a_gamma),
                fmt_real(pl.b),
                fmt_real(pl.b_beta),
                fmt_real(pl.b_gamma),
                format!("{:e}", pl.residual()),
                eq.consistent.to_string(),
            ]);
        }
        return Ok(table);
    }
    let id = p.require("theorem")?;
    let th: Theorem = id.parse()?;
    let mut table = Table::new(&RECORD_HEADER);
    for raw in &list {
        let t = tuple_from(raw)?;
        let v = classify(&id, &t)?;
        table.push(record(th, &t, &v));
    }
    Ok(table)
}
