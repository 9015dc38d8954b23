//! Empirical L^p - L^q evidence: weighted norms of bump families, dilation
//! sweeps of norm ratios, and measured constants of the kernel majorizations.

mod constants;

pub use constants::{constant_tracker, ConstantReport, Inequality, SampleSpec};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{for_each_node, GridFunction, Measure, Source};
use crate::heatkernel::Setting;
use crate::potential::{apply_potential_with, riesz_potential_with, PotentialRequest, QuadratureSpec};
use crate::quad::{clean_breaks, Rule1D};
use crate::regions::ExponentTuple;

/// Harness constants for the probe verdicts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Calibration {
    /// Largest max/min ratio over the sweep still called a plateau.
    pub plateau_factor: f64,
    /// Relative tolerance on fitted slopes and on refinement drift of constants.
    pub slope_tol: f64,
    /// Small-scale slopes below minus this count as growth.
    pub growth_threshold: f64,
}

impl Default for Calibration {
    fn default() -> Self {
        Calibration { plateau_factor: 10.0, slope_tol: 0.2, growth_threshold: 0.01 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BumpKind {
    Gaussian,
    Plateau,
}

impl std::str::FromStr for BumpKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gaussian" => Ok(BumpKind::Gaussian),
            "plateau" => Ok(BumpKind::Plateau),
            _ => Err(Error::Invalid(format!("unknown bump family {s:?}"))),
        }
    }
}

/// g_s(x) = g((x - center)/s) for a fixed profile g.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BumpFamily {
    pub kind: BumpKind,
    pub center: Vec<f64>,
}

impl BumpFamily {
    pub fn new(kind: BumpKind, center: Vec<f64>) -> Self {
        BumpFamily { kind, center }
    }

    /// The member at scale s, cut to the half line when `half_line`.
    pub fn member(&self, s: f64, half_line: bool) -> Source {
        let mut src = match self.kind {
            BumpKind::Gaussian => Source::gaussian(self.center.clone(), s),
            BumpKind::Plateau => Source::plateau(self.center.clone(), s),
        };
        for i in 0..src.dim() {
            if half_line {
                src.support[i].0 = src.support[i].0.max(0.0);
            }
            if src.support[i].0 < 0.0 && src.support[i].1 > 0.0 {
                src = src.with_breaks(i, [0.0]);
            }
        }
        src
    }
}

/// The operator whose norm ratios are probed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ProbeOperator {
    Potential(Setting),
    /// Classical Riesz potential on R^d with Lebesgue measure.
    Riesz { d: usize },
}

impl ProbeOperator {
    pub fn dim(&self) -> usize {
        match self {
            ProbeOperator::Potential(s) => s.dim(),
            ProbeOperator::Riesz { d } => *d,
        }
    }

    fn half_line(&self) -> bool {
        matches!(self, ProbeOperator::Potential(s) if s.half_line())
    }

    fn measure(&self) -> Measure {
        match self {
            ProbeOperator::Potential(s) => s.measure(),
            ProbeOperator::Riesz { .. } => Measure::Lebesgue,
        }
    }

    fn singular_origin(&self) -> bool {
        match self {
            ProbeOperator::Potential(s) => s.half_line() || matches!(s, Setting::Dunkl(_)),
            ProbeOperator::Riesz { .. } => false,
        }
    }
}

fn power_weight(y: &[f64], c: f64) -> f64 {
    if c == 0.0 {
        return 1.0;
    }
    y.iter().map(|v| v * v).sum::<f64>().sqrt().powf(c)
}

/// (int |f|^p ||x||^{cp} dnu)^{1/p} with nu the measure attached to `f`;
/// for p = inf the largest |f| ||x||^c over the nodes.
pub fn weighted_norm(f: &GridFunction, p: f64, c: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::Invalid(format!("p = {p} must lie in [1, inf]")));
    }
    let v = if p.is_infinite() {
        let mut m: f64 = 0.0;
        let mut idx = 0;
        for_each_node(&f.axes, |y, _| {
            m = m.max(f.values[idx].abs() * power_weight(y, c));
            idx += 1;
        });
        m
    } else {
        f.integrate(|y, v| v.abs().powf(p) * power_weight(y, c * p)).powf(1.0 / p)
    };
    if !v.is_finite() {
        return Err(Error::Tolerance { estimate: v, tol: 0.0 });
    }
    Ok(v)
}

/// ||g_s||_{L^p(||x||^{ap} dnu)} on a fine rule over the support of g_s.
pub fn source_norm(src: &Source, p: f64, c: f64, measure: Measure) -> Result<f64> {
    weighted_norm(&GridFunction::on_support(src, 8, 16, measure), p, c)
}

/// Evaluation axis of the operator image at scale s: panels at centre +- s 2^k
/// out to `reach`, Gauss-Legendre of order `order`.
fn image_axis(center: f64, s: f64, reach: f64, half_line: bool, singular0: bool, order: usize) -> Rule1D {
    let mut b = vec![center];
    let mut r = 0.25 * s;
    while r < reach {
        b.push(center - r);
        b.push(center + r);
        r *= 2.0;
    }
    let lo = if half_line { 0.0 } else { center - reach };
    if lo < 0.0 && center + reach > 0.0 {
        b.push(0.0);
    }
    let breaks = clean_breaks(lo, center + reach, b);
    let singular: &[f64] = if singular0 { &[0.0] } else { &[] };
    Rule1D::composite(&breaks, singular, order, 4)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioSeries {
    pub scales: Vec<f64>,
    /// ||I f_s||_{L^q(||x||^{-bq})} / ||f_s||_{L^p(||x||^{ap})}
    pub ratios: Vec<f64>,
    /// Least-squares slope of ln ratio against ln s over all scales.
    pub slope: f64,
    /// The same over the smaller half of the scales.
    pub small_scale_slope: f64,
}

impl RatioSeries {
    pub fn spread(&self) -> f64 {
        let max = self.ratios.iter().cloned().fold(f64::MIN, f64::max);
        let min = self.ratios.iter().cloned().fold(f64::MAX, f64::min);
        max / min
    }

    pub fn verdict(&self, cal: &Calibration) -> ProbeVerdict {
        if self.small_scale_slope < -cal.growth_threshold {
            ProbeVerdict::Growth
        } else if self.spread() <= cal.plateau_factor {
            ProbeVerdict::Plateau
        } else {
            ProbeVerdict::Inconclusive
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProbeVerdict {
    Plateau,
    Growth,
    Inconclusive,
}

impl std::fmt::Display for ProbeVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ProbeVerdict::Plateau => "plateau",
            ProbeVerdict::Growth => "growth",
            ProbeVerdict::Inconclusive => "inconclusive",
        })
    }
}

/// Least-squares slope of ln y against ln x.
pub fn log_log_slope(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() < 2 || x.len() != y.len() {
        return Err(Error::Invalid("a slope needs at least two scales".into()));
    }
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    if sxx == 0.0 {
        return Err(Error::Invalid("scales must not all coincide".into()));
    }
    Ok(sxy / sxx)
}

/// Geometric list 2^lo, ..., 2^hi.
pub fn dyadic_scales(lo: i32, hi: i32) -> Vec<f64> {
    (lo..=hi).map(|k| 2f64.powi(k)).collect()
}

/// Ratios ||I^sigma f_s||_{L^q(||x||^{-bq} dnu)} / ||f_s||_{L^p(||x||^{ap} dnu)} over
/// `scales`. The image is sampled on a rule adapted to the scale; every
/// (scale, node) cell is evaluated independently in parallel.
pub fn ratio_sweep(
    op: &ProbeOperator,
    sigma: f64,
    t: &ExponentTuple,
    family: &BumpFamily,
    scales: &[f64],
) -> Result<RatioSeries> {
    ratio_sweep_with(op, sigma, t, family, scales, &probe_spec())
}

/// Operator rules for the sweeps: coarser than the defaults and uncertified,
/// since the verdicts only need a few digits.
pub fn probe_spec() -> QuadratureSpec {
    QuadratureSpec { time_order: 8, space_order: 10, space_panels: 3, ..QuadratureSpec::default() }.uncertified()
}

pub fn ratio_sweep_with(
    op: &ProbeOperator,
    sigma: f64,
    t: &ExponentTuple,
    family: &BumpFamily,
    scales: &[f64],
    spec: &QuadratureSpec,
) -> Result<RatioSeries> {
    let mut sorted = scales.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    sorted.dedup();
    if sorted.len() < 2 {
        return Err(Error::Invalid("a ratio sweep needs at least two distinct scales".into()));
    }
    if sorted[0] <= 0.0 {
        return Err(Error::Invalid("scales must be positive".into()));
    }
    let d = op.dim();
    if t.d != d || family.center.len() != d {
        return Err(Error::Invalid("dimension mismatch between operator, tuple and family".into()));
    }
    if t.p.is_infinite() {
        return Err(Error::Invalid("the source exponent p must be finite".into()));
    }
    let req = match op {
        ProbeOperator::Potential(s) => Some(PotentialRequest::new(s.clone(), sigma)?),
        ProbeOperator::Riesz { .. } => None,
    };
    let half = op.half_line();
    let measure = op.measure();

    let grids: Vec<(Source, Vec<Rule1D>)> = sorted
        .iter()
        .map(|&s| {
            let src = family.member(s, half);
            let reach = match op {
                ProbeOperator::Riesz { .. } => s * 1024.0,
                ProbeOperator::Potential(_) => 8.0 + 12.0 * s,
            };
            let axes = family
                .center
                .iter()
                .map(|&c| image_axis(c, s, reach, half, op.singular_origin(), 8))
                .collect();
            (src, axes)
        })
        .collect();

    let mut cells = Vec::new();
    for (gi, (_, axes)) in grids.iter().enumerate() {
        for_each_node(axes, |y, _| cells.push((gi, y.to_vec())));
    }
    let values: Vec<Result<f64>> = cells
        .par_iter()
        .map(|(gi, x)| {
            let src = &grids[*gi].0;
            match &req {
                Some(r) => apply_potential_with(r, src, x, spec).map(|v| v.value),
                None => riesz_potential_with(sigma, src, x, 1e-10).map(|v| v.value),
            }
        })
        .collect();

    let mut ratios = Vec::with_capacity(sorted.len());
    let mut it = values.into_iter();
    for (src, axes) in &grids {
        let n: usize = axes.iter().map(|a| a.len()).product();
        let vals: Vec<f64> = it.by_ref().take(n).collect::<Result<_>>()?;
        let image = GridFunction::from_values(axes.clone(), vals, measure.clone());
        let num = weighted_norm(&image, t.q, -t.b)?;
        let den = source_norm(src, t.p, t.a, measure.clone())?;
        let r = num / den;
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::Tolerance { estimate: r, tol: 0.0 });
        }
        ratios.push(r);
    }
    let slope = log_log_slope(&sorted, &ratios)?;
    let half_n = (sorted.len() + 1) / 2;
    let small_scale_slope = log_log_slope(&sorted[..half_n.max(2)], &ratios[..half_n.max(2)])?;
    Ok(RatioSeries { scales: sorted, ratios, slope, small_scale_slope })
}

/// Local dilation exponent 2 sigma + d/q - d/p of a potential of order 2 sigma in d dimensions.
pub fn riesz_predicted_exponent(d: usize, two_sigma: f64, p: f64, q: f64) -> f64 {
    let inv = |r: f64| if r.is_infinite() { 0.0 } else { 1.0 / r };
    two_sigma + d as f64 * (inv(q) - inv(p))
}
