//! Potential operators I^sigma f(x) = Gamma(sigma)^{-1} int_0^inf t^{sigma-1} e^{-tL} f(x) dt.
//!
//! The kernel K^sigma(x, .) is singular at x when sigma <= d/2, so the space
//! integral is done inside the time integral: for each t the heat kernel is a
//! smooth bump of width sqrt(tanh 2t) and the space rule is fitted to it.

use statrs::function::gamma::ln_gamma;

use super::{PotentialRequest, QuadratureSpec};
use crate::error::{Error, Result};
use crate::grid::Source;
use crate::heatkernel::Setting;
use crate::quad::{clean_breaks, GaussLegendre, Rule1D};

/// Operator value with the certificate (difference to the refined rule).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorValue {
    pub value: f64,
    pub err: f64,
}

fn axis_rule(setting: &Setting, i: usize, t: f64, xi: f64, f: &Source, spec: &QuadratureSpec) -> Rule1D {
    let (slo, shi) = f.support[i];
    let dunkl = matches!(setting, Setting::Dunkl(_));
    let mut out = Rule1D::default();
    for (a, b) in setting.heat_window(t, xi, spec.window) {
        let mut lo = a.max(slo);
        let hi = b.min(shi);
        if setting.half_line() {
            lo = lo.max(0.0);
        }
        if !(hi > lo) {
            continue;
        }
        let n = spec.space_panels.max(1);
        let w = (hi - lo) / n as f64;
        let mut extra: Vec<f64> = (1..n).map(|j| lo + j as f64 * w).collect();
        extra.extend(f.breaks[i].iter().copied());
        let mut singular = Vec::new();
        if dunkl && lo < 0.0 && hi > 0.0 {
            extra.push(0.0);
            singular.push(0.0);
        }
        if (setting.half_line() || dunkl) && lo == 0.0 {
            singular.push(0.0);
        }
        if (setting.half_line() || dunkl) && hi == 0.0 {
            singular.push(0.0);
        }
        let breaks = clean_breaks(lo, hi, extra);
        let r = Rule1D::composite(&breaks, &singular, spec.space_order, spec.ts_level);
        for (y, wt) in r.nodes.into_iter().zip(r.weights) {
            let k = setting.heat_1d(i, t, xi, y) * setting.density_1d(i, y);
            if k != 0.0 && k.is_finite() {
                out.nodes.push(y);
                out.weights.push(wt * k);
            }
        }
    }
    out
}

/// e^{-tL} f(x) by space quadrature against the heat kernel.
pub fn semigroup(setting: &Setting, t: f64, x: &[f64], f: &Source, spec: &QuadratureSpec) -> f64 {
    let axes: Vec<Rule1D> = (0..setting.dim()).map(|i| axis_rule(setting, i, t, x[i], f, spec)).collect();
    if let Some(fs) = f.factors() {
        return axes.iter().zip(fs).map(|(r, g)| r.sum(|y| g(y))).product();
    }
    let mut s = 0.0;
    crate::grid::for_each_node(&axes, |y, w| s += w * f.eval(y));
    s
}

fn apply_once(req: &PotentialRequest, f: &Source, x: &[f64], spec: &QuadratureSpec) -> f64 {
    let sigma = req.sigma;
    let setting = &req.setting;
    let t_lo = 1e-10 * f.scale.min(1.0).powi(2);
    let t_hi = (60.0 / setting.lambda0()).max(2.0);
    let (s_lo, s_hi) = (t_lo.ln(), t_hi.ln());
    let g = GaussLegendre::get(spec.time_order);
    let mut total = f.eval(x) * t_lo.powf(sigma) / sigma;
    for (a, b) in [(s_lo, 0.0), (0.0, s_hi)] {
        let n = ((b - a) / spec.time_panel).ceil().max(1.0) as usize;
        let w = (b - a) / n as f64;
        for j in 0..n {
            let lo = a + j as f64 * w;
            total += g.integrate(lo, lo + w, |s| {
                let t = s.exp();
                (sigma * s).exp() * semigroup(setting, t, x, f, spec)
            });
        }
    }
    total * (-ln_gamma(sigma)).exp()
}

/// Potential operator of the request's setting applied to `f` at `x`, default rules.
pub fn apply_potential(req: &PotentialRequest, f: &Source, x: &[f64]) -> Result<f64> {
    apply_potential_with(req, f, x, &QuadratureSpec::default()).map(|v| v.value)
}

pub fn apply_potential_with(
    req: &PotentialRequest,
    f: &Source,
    x: &[f64],
    spec: &QuadratureSpec,
) -> Result<OperatorValue> {
    spec.validate()?;
    let setting = &req.setting;
    if x.len() != setting.dim() || f.dim() != setting.dim() {
        return Err(Error::Invalid("dimension mismatch between setting, source and point".into()));
    }
    if setting.half_line() && x.iter().any(|v| *v < 0.0) {
        return Err(Error::Domain("Laguerre settings need coordinates >= 0".into()));
    }
    if f.is_zero() {
        return Ok(OperatorValue { value: 0.0, err: 0.0 });
    }
    let base = apply_once(req, f, x, spec);
    if !spec.certify {
        return Ok(OperatorValue { value: base, err: 0.0 });
    }
    let fine = apply_once(req, f, x, &spec.refined());
    let err = (fine - base).abs();
    if !err.is_finite() || err > spec.tol * fine.abs().max(1e-12) {
        return Err(Error::Tolerance { estimate: err, tol: spec.tol * fine.abs() });
    }
    Ok(OperatorValue { value: fine, err })
}
