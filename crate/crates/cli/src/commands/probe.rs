//! Dilation sweeps of weighted norm ratios.

use potentia::probe::{dyadic_scales, ratio_sweep, BumpFamily, BumpKind, Calibration, ProbeOperator};
use potentia::regions::{classify, ExponentTuple};
use potentia::Setting;

use super::{build_setting, dimension, type_index};
use crate::config::{fmt_real, parse_list, CliError, CliResult, Params};
use crate::output::Table;

pub const KEYS: [&str; 16] = [
    "setting",
    "d",
    "alpha",
    "theorem",
    "sigma",
    "p",
    "q",
    "a",
    "b",
    "family",
    "center",
    "scales",
    "dyadic",
    "plateau_factor",
    "slope_tol",
    "growth_threshold",
];

pub const HEADER: [&str; 14] = [
    "theorem",
    "d",
    "p",
    "q",
    "a",
    "b",
    "sigma",
    "alpha",
    "scale",
    "ratio",
    "slope",
    "small_scale_slope",
    "verdict",
    "region",
];

fn default_theorem(s: Option<&Setting>) -> &'static str {
    match s {
        None => "stein-weiss",
        Some(Setting::Hermite { .. }) => "hermite-weighted",
        Some(Setting::LaguerreHermite(_)) => "laguerre-hermite-weighted",
        Some(Setting::LaguerreConv(_)) => "laguerre-weighted",
        Some(Setting::Dunkl(_)) => "dunkl-weighted",
        Some(Setting::LaguerreStandard(_)) => "standard-1d",
    }
}

pub fn calibration(p: &Params) -> CliResult<Calibration> {
    let def = Calibration::default();
    let cal = Calibration {
        plateau_factor: p.real_or("plateau_factor", def.plateau_factor)?,
        slope_tol: p.real_or("slope_tol", def.slope_tol)?,
        growth_threshold: p.real_or("growth_threshold", def.growth_threshold)?,
    };
    if !(cal.plateau_factor >= 1.0 && cal.slope_tol > 0.0 && cal.growth_threshold >= 0.0) {
        return Err(CliError::Invalid("calibration needs plateau_factor >= 1, slope_tol > 0, growth_threshold >= 0".into()));
    }
    Ok(cal)
}

fn scales(p: &Params) -> CliResult<Vec<f64>> {
    if let Some(s) = p.get("scales") {
        if p.get("dyadic").is_some() {
            return Err(CliError::Usage("--scales and --dyadic are exclusive".into()));
        }
        return parse_list("scales", &s);
    }
    let raw = p.get_or("dyadic", "-5:5");
    let (lo, hi) = raw
        .split_once(':')
        .and_then(|(a, b)| Some((a.trim().parse::<i32>().ok()?, b.trim().parse::<i32>().ok()?)))
        .filter(|(a, b)| a <= b && (-60..=60).contains(a) && (-60..=60).contains(b))
        .ok_or_else(|| CliError::Invalid(format!("dyadic = {raw:?}: expected lo:hi integer exponents")))?;
    Ok(dyadic_scales(lo, hi))
}

pub fn run(p: &Params) -> CliResult<Table> {
    let name = p.require("setting")?;
    let (op, setting) = if name == "riesz" {
        (ProbeOperator::Riesz { d: dimension(p)? }, None)
    } else {
        let s = build_setting(&name, p)?;
        (ProbeOperator::Potential(s.clone()), Some(s))
    };
    let d = op.dim();
    let sigma = p.real("sigma")?.ok_or_else(|| CliError::Usage("missing required parameter `sigma`".into()))?;
    let pe = p.real("p")?.ok_or_else(|| CliError::Usage("missing required parameter `p`".into()))?;
    let qe = p.real("q")?.ok_or_else(|| CliError::Usage("missing required parameter `q`".into()))?;
    let a = p.real_or("a", 0.0)?;
    let b = p.real_or("b", 0.0)?;
    let theorem = p.get_or("theorem", default_theorem(setting.as_ref()));

    let mut t = ExponentTuple::new(d, pe, qe, sigma)?.weights(a, b);
    let alpha = match &setting {
        Some(Setting::Hermite { .. }) | None => type_index(p, d)?,
        Some(s) => Some(potentia::TypeIndex((0..d).map(|i| s.alpha_at(i)).collect())),
    };
    if let Some(al) = &alpha {
        t = t.alpha(al.0.clone())?;
    }
    if theorem.starts_with("standard-1d") || theorem == "laguerre-hermite-1d" {
        t = t.big(a, b);
    }
    let region = classify(&theorem, &t)?;

    let kind: BumpKind = p.get_or("family", "gaussian").parse()?;
    let mut center = parse_list("center", &p.get_or("center", "1"))?;
    if center.len() == 1 && d > 1 {
        center = vec![center[0]; d];
    }
    if center.len() != d {
        return Err(CliError::Invalid(format!("center has {} entries for d = {d}", center.len())));
    }
    let sc = scales(p)?;
    let mut distinct = sc.clone();
    distinct.sort_by(|x, y| x.partial_cmp(y).unwrap());
    distinct.dedup();
    if distinct.len() < 2 {
        return Err(CliError::Usage("a probe needs at least two distinct scales (the slope is undefined)".into()));
    }
    let cal = calibration(p)?;
    let series = ratio_sweep(&op, sigma, &t, &BumpFamily::new(kind, center), &sc)?;
    let verdict = series.verdict(&cal).to_string();

    let alpha_s = alpha.map(|a| a.0.iter().map(|v| fmt_real(*v)).collect::<Vec<_>>().join(";")).unwrap_or_default();
    let mut table = Table::new(&HEADER);
    for (s, r) in series.scales.iter().zip(&series.ratios) {
        table.push(vec![
            theorem.clone(),
            d.to_string(),
            fmt_real(pe),
            fmt_real(qe),
            fmt_real(a),
            fmt_real(b),
            fmt_real(sigma),
            alpha_s.clone(),
            fmt_real(*s),
            fmt_real(*r),
            fmt_real(series.slope),
            fmt_real(series.small_scale_slope),
            verdict.clone(),
            region.status.to_string(),
        ]);
    }
    Ok(table)
}
