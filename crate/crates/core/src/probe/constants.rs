//! Measured constants of the pointwise majorizations between kernels and
//! operators of different settings.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::Source;
use crate::heatkernel::Setting;
use crate::potential::{
    apply_potential_with, majorant_kernel, potential_kernel, PotentialRequest, QuadratureSpec, DIAGONAL_GUARD,
};
use crate::regions::{interpolation_plan, InterpolationPlan};
use crate::relations::{reflect, sign_patterns};
use crate::specfun::TypeIndex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Inequality {
    /// Hermite potential kernel against the explicit majorant K^sigma(x - y).
    HermiteMajorant,
    /// G^{alpha,H}_t <= C_alpha G^{alpha_o,H}_t.
    LaguerreHermiteHeat,
    /// K^{alpha,sigma}_H(x, y) <= C sum_eps K^sigma(eps x, y).
    LaguerreHermiteKernel,
    /// I^{alpha,sigma}_H f(x) <= C sum_eps I^sigma f(eps x), f >= 0.
    LaguerreHermiteOperator,
    /// Two-sided comparison of G^alpha_t with (G^beta_t)^lambda (G^gamma_t)^{1-lambda}.
    ConvexityHeat,
    /// K^{alpha,sigma} <= C (K^{beta,sigma_beta})^lambda (K^{gamma,sigma_gamma})^{1-lambda}.
    ConvexityKernel,
    /// I^{alpha,sigma} f <= C (I^{beta,sigma_beta} f1)^lambda (I^{gamma,sigma_gamma} f2)^{1-lambda}.
    ConvexityOperator,
    /// G^{alpha,D}_t(x, y) <= C G^alpha_t(|x|, |y|).
    DunklHeat,
    /// K^{alpha,sigma}_D(x, y) <= C K^{alpha,sigma}(|x|, |y|).
    DunklKernel,
}

impl Inequality {
    pub const ALL: [Inequality; 9] = [
        Inequality::HermiteMajorant,
        Inequality::LaguerreHermiteHeat,
        Inequality::LaguerreHermiteKernel,
        Inequality::LaguerreHermiteOperator,
        Inequality::ConvexityHeat,
        Inequality::ConvexityKernel,
        Inequality::ConvexityOperator,
        Inequality::DunklHeat,
        Inequality::DunklKernel,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            Inequality::HermiteMajorant => "hermite-majorant",
            Inequality::LaguerreHermiteHeat => "laguerre-hermite-heat",
            Inequality::LaguerreHermiteKernel => "laguerre-hermite-kernel",
            Inequality::LaguerreHermiteOperator => "laguerre-hermite-operator",
            Inequality::ConvexityHeat => "convexity-heat",
            Inequality::ConvexityKernel => "convexity-kernel",
            Inequality::ConvexityOperator => "convexity-operator",
            Inequality::DunklHeat => "dunkl-heat",
            Inequality::DunklKernel => "dunkl-kernel",
        }
    }

    pub fn two_sided(&self) -> bool {
        matches!(self, Inequality::ConvexityHeat)
    }
}

impl FromStr for Inequality {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Inequality::ALL
            .iter()
            .copied()
            .find(|i| i.id() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown inequality {s:?}")))
    }
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// Where the ratio LHS/RHS is sampled.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleSpec {
    /// Type index; its length fixes d (ignored by the pure Hermite inequality except for d).
    pub alpha: TypeIndex,
    pub sigma: f64,
    /// Points per axis at the base level (halved, rounded up, for d >= 2).
    pub n: usize,
    /// Coordinates lie in (0, hi] for half-line settings and in [-hi, hi] otherwise.
    pub hi: f64,
    /// Times are log-spaced on [t_lo, t_hi].
    pub t_lo: f64,
    pub t_hi: f64,
    /// Largest admissible relative change of a constant under doubling of the sample.
    pub drift_tol: f64,
}

impl SampleSpec {
    pub fn new(alpha: TypeIndex, sigma: f64) -> Self {
        SampleSpec { alpha, sigma, n: 8, hi: 4.0, t_lo: 0.01, t_hi: 8.0, drift_tol: 0.2 }
    }

    fn d(&self) -> usize {
        self.alpha.dim()
    }

    fn per_axis(&self, level: usize) -> usize {
        let base = if self.d() == 1 { self.n } else { self.n.div_ceil(2) };
        base.max(2) << level
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantReport {
    pub inequality: Inequality,
    /// sup LHS/RHS at the base sample.
    pub upper: f64,
    /// sup RHS/LHS (two-sided inequalities only).
    pub lower: Option<f64>,
    pub upper_refined: f64,
    pub lower_refined: Option<f64>,
    /// Largest relative change between base and refined constants.
    pub drift: f64,
    /// Number of ratios in the refined sample.
    pub samples: usize,
    /// Smallest LHS seen; positivity of the majorized quantity.
    pub min_lhs: f64,
    pub stable: bool,
}

/// Midpoint grid with m cells on (0, hi] or [-hi, hi].
fn axis_points(m: usize, hi: f64, half_line: bool) -> Vec<f64> {
    let (lo, w) = if half_line { (0.0, hi / m as f64) } else { (-hi, 2.0 * hi / m as f64) };
    (0..m).map(|j| lo + (j as f64 + 0.5) * w).collect()
}

fn tensor(axis: &[f64], d: usize) -> Vec<Vec<f64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|p| {
                axis.iter().map(move |&v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out
}

fn times(m: usize, lo: f64, hi: f64) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..m).map(|j| (a + (b - a) * j as f64 / (m - 1).max(1) as f64).exp()).collect()
}

fn dist(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
}

fn abs_dist(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a.abs() - b.abs()).powi(2)).sum::<f64>().sqrt()
}

fn abs(x: &[f64]) -> Vec<f64> {
    x.iter().map(|v| v.abs()).collect()
}

/// (lhs, rhs) pairs at one refinement level.
type Samples = Vec<(f64, f64)>;

fn first_plan(alpha: &TypeIndex, sigma: f64) -> Result<InterpolationPlan> {
    let plan = interpolation_plan(alpha, sigma, 0.0, 0.0)?;
    if plan.axis.is_none() {
        return Err(Error::Invalid("convexity needs a non-half-integer type index".into()));
    }
    Ok(plan)
}

/// Brackets of alpha, then of every bracket that still has a non-half-integer coordinate.
fn plan_chain(alpha: &TypeIndex, sigma: f64) -> Result<Vec<InterpolationPlan>> {
    let mut out = vec![first_plan(alpha, sigma)?];
    let mut i = 0;
    while i < out.len() {
        let (b, sb, g, sg) = (out[i].beta.clone(), out[i].sigma_beta, out[i].gamma.clone(), out[i].sigma_gamma);
        for (idx, s) in [(b, sb), (g, sg)] {
            let next = interpolation_plan(&idx, s, 0.0, 0.0)?;
            if next.axis.is_some() {
                out.push(next);
            }
        }
        i += 1;
    }
    Ok(out)
}

/// Grid pairs plus, from every grid point x, the points x +- r (1, .., 1)/sqrt(d)
/// with r log-spaced from `hi` down to `r_min`, so that near-diagonal limits are sampled.
fn kernel_pairs(pts: &[Vec<f64>], spec: &SampleSpec, level: usize, sigma: f64, half_line: bool, tested_abs: bool) -> Vec<(Vec<f64>, Vec<f64>)> {
    let d = spec.d();
    let singular = sigma <= 0.5 * d as f64;
    let r_min = 0.02 / (1usize << level) as f64;
    let radii = times(spec.per_axis(level), r_min, spec.hi);
    let mut out = Vec::new();
    let mut push = |x: &Vec<f64>, y: Vec<f64>| {
        let sep = if tested_abs { abs_dist(x, &y) } else { dist(x, &y) };
        if !(singular && sep < DIAGONAL_GUARD) {
            out.push((x.clone(), y));
        }
    };
    for x in pts {
        for y in pts {
            push(x, y.clone());
        }
        for &r in &radii {
            for sgn in [-1.0, 1.0] {
                let y: Vec<f64> = x.iter().map(|v| v + sgn * r / (d as f64).sqrt()).collect();
                if !half_line || y.iter().all(|v| *v > 0.0) {
                    push(x, y);
                }
            }
        }
    }
    out
}

fn heat_triples(pts: &[Vec<f64>], ts: &[f64]) -> Vec<(f64, Vec<f64>, Vec<f64>)> {
    let mut out = Vec::new();
    for &t in ts {
        for x in pts {
            for y in pts {
                out.push((t, x.clone(), y.clone()));
            }
        }
    }
    out
}

fn sample(id: Inequality, spec: &SampleSpec, level: usize) -> Result<Vec<Samples>> {
    let d = spec.d();
    let m = spec.per_axis(level);
    let sigma = spec.sigma;
    let alpha = &spec.alpha;
    let half_pts = tensor(&axis_points(m, spec.hi, true), d);
    let full_pts = tensor(&axis_points(m, spec.hi, false), d);
    let ts = times(m, spec.t_lo, spec.t_hi);
    // operator values are costly; d >= 2 uses half the points per axis
    let op_pts = if d == 1 { half_pts.clone() } else { tensor(&axis_points((m / 2).max(2), spec.hi, true), d) };
    let k = |s: &Setting, sg: f64, x: &[f64], y: &[f64]| -> Result<f64> {
        potential_kernel(&PotentialRequest::new(s.clone(), sg)?, x, y)
    };
    Ok(match id {
        Inequality::HermiteMajorant => {
            let h = Setting::hermite(d);
            let pairs = kernel_pairs(&full_pts, spec, level, sigma, false, false);
            vec![pairs
                .par_iter()
                .map(|(x, y)| {
                    let diff: Vec<f64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
                    Ok((k(&h, sigma, x, y)?, majorant_kernel(sigma, d, &diff)?))
                })
                .collect::<Result<_>>()?]
        }
        Inequality::LaguerreHermiteHeat => {
            let (s, so) = (Setting::LaguerreHermite(alpha.clone()), Setting::LaguerreHermite(TypeIndex::alpha_o(d)));
            vec![heat_triples(&half_pts, &ts)
                .par_iter()
                .map(|(t, x, y)| {
                    let (l, r) = (s.ln_heat(*t, x, y), so.ln_heat(*t, x, y));
                    Ok(((l - r).exp(), 1.0))
                })
                .collect::<Result<_>>()?]
        }
        Inequality::LaguerreHermiteKernel => {
            let (s, h) = (Setting::LaguerreHermite(alpha.clone()), Setting::hermite(d));
            let eps = sign_patterns(d);
            let pairs = kernel_pairs(&half_pts, spec, level, sigma, true, false);
            vec![pairs
                .par_iter()
                .map(|(x, y)| {
                    let mut rhs = 0.0;
                    for e in &eps {
                        rhs += k(&h, sigma, &reflect(e, x), y)?;
                    }
                    Ok((k(&s, sigma, x, y)?, rhs))
                })
                .collect::<Result<_>>()?]
        }
        Inequality::LaguerreHermiteOperator => {
            let s = PotentialRequest::new(Setting::LaguerreHermite(alpha.clone()), sigma)?;
            let h = PotentialRequest::new(Setting::hermite(d), sigma)?;
            let mut f = Source::gaussian(vec![1.0; d], 0.5);
            for i in 0..d {
                f.support[i].0 = f.support[i].0.max(0.0);
            }
            let eps = sign_patterns(d);
            let q = QuadratureSpec::default();
            vec![op_pts
                .par_iter()
                .map(|x| {
                    let mut rhs = 0.0;
                    for e in &eps {
                        rhs += apply_potential_with(&h, &f, &reflect(e, x), &q)?.value;
                    }
                    Ok((apply_potential_with(&s, &f, x, &q)?.value, rhs))
                })
                .collect::<Result<_>>()?]
        }
        Inequality::ConvexityHeat => {
            let mut out = Vec::new();
            for plan in plan_chain(alpha, sigma)? {
                let (sa, sb, sg) = (
                    Setting::LaguerreConv(plan.alpha.clone()),
                    Setting::LaguerreConv(plan.beta.clone()),
                    Setting::LaguerreConv(plan.gamma.clone()),
                );
                let l = plan.lambda;
                out.push(
                    heat_triples(&half_pts, &ts)
                        .par_iter()
                        .map(|(t, x, y)| {
                            let r = l * sb.ln_heat(*t, x, y) + (1.0 - l) * sg.ln_heat(*t, x, y);
                            Ok(((sa.ln_heat(*t, x, y) - r).exp(), 1.0))
                        })
                        .collect::<Result<_>>()?,
                );
            }
            out
        }
        Inequality::ConvexityKernel => {
            let mut out = Vec::new();
            for plan in plan_chain(alpha, sigma)? {
                let (sa, sb, sg) = (
                    Setting::LaguerreConv(plan.alpha.clone()),
                    Setting::LaguerreConv(plan.beta.clone()),
                    Setting::LaguerreConv(plan.gamma.clone()),
                );
                let l = plan.lambda;
                let smin = plan.sigma.min(plan.sigma_beta).min(plan.sigma_gamma);
                let pairs = kernel_pairs(&half_pts, spec, level, smin, true, false);
                out.push(
                    pairs
                        .par_iter()
                        .map(|(x, y)| {
                            let lhs = k(&sa, plan.sigma, x, y)?;
                            let rhs = k(&sb, plan.sigma_beta, x, y)?.powf(l)
                                * k(&sg, plan.sigma_gamma, x, y)?.powf(1.0 - l);
                            Ok((lhs, rhs))
                        })
                        .collect::<Result<_>>()?,
                );
            }
            out
        }
        Inequality::ConvexityOperator => {
            let mut out = Vec::new();
            let f1 = Source::gaussian(vec![0.8; d], 0.5);
            let f2 = Source::gaussian(vec![1.4; d], 0.7);
            let cut = |mut s: Source| {
                for i in 0..d {
                    s.support[i].0 = s.support[i].0.max(0.0);
                }
                s
            };
            let q = QuadratureSpec::default();
            for plan in plan_chain(alpha, sigma)? {
                let (f1, f2) = (cut(f1.clone()), cut(f2.clone()));
                let f = Source::geometric_mean(&f1, &f2, plan.lambda);
                let ra = PotentialRequest::new(Setting::LaguerreConv(plan.alpha.clone()), plan.sigma)?;
                let rb = PotentialRequest::new(Setting::LaguerreConv(plan.beta.clone()), plan.sigma_beta)?;
                let rg = PotentialRequest::new(Setting::LaguerreConv(plan.gamma.clone()), plan.sigma_gamma)?;
                let l = plan.lambda;
                out.push(
                    op_pts
                        .par_iter()
                        .map(|x| {
                            let lhs = apply_potential_with(&ra, &f, x, &q)?.value;
                            let rhs = apply_potential_with(&rb, &f1, x, &q)?.value.powf(l)
                                * apply_potential_with(&rg, &f2, x, &q)?.value.powf(1.0 - l);
                            Ok((lhs, rhs))
                        })
                        .collect::<Result<_>>()?,
                );
            }
            out
        }
        Inequality::DunklHeat => {
            let (sd, sl) = (Setting::Dunkl(alpha.clone()), Setting::LaguerreConv(alpha.clone()));
            vec![heat_triples(&full_pts, &ts)
                .par_iter()
                .map(|(t, x, y)| {
                    let l = sd.ln_heat(*t, x, y);
                    let r = sl.ln_heat(*t, &abs(x), &abs(y));
                    Ok(((l - r).exp(), 1.0))
                })
                .collect::<Result<_>>()?]
        }
        Inequality::DunklKernel => {
            let (sd, sl) = (Setting::Dunkl(alpha.clone()), Setting::LaguerreConv(alpha.clone()));
            let pairs = kernel_pairs(&full_pts, spec, level, sigma, false, true);
            vec![pairs
                .par_iter()
                .map(|(x, y)| Ok((k(&sd, sigma, x, y)?, k(&sl, sigma, &abs(x), &abs(y))?)))
                .collect::<Result<_>>()?]
        }
    })
}

fn sups(groups: &[Samples]) -> (f64, f64, f64, usize) {
    let mut up: f64 = 0.0;
    let mut low: f64 = 0.0;
    let mut min_lhs = f64::INFINITY;
    let mut n = 0;
    for g in groups {
        for &(l, r) in g {
            up = up.max(l / r);
            low = low.max(r / l);
            min_lhs = min_lhs.min(l);
            n += 1;
        }
    }
    (up, low, min_lhs, n)
}

/// sup LHS/RHS over the sample (and sup RHS/LHS for two-sided estimates),
/// recomputed after doubling the points per axis and the time samples.
pub fn constant_tracker(id: Inequality, spec: &SampleSpec) -> Result<ConstantReport> {
    if !(spec.sigma > 0.0) || spec.n < 2 || !(spec.hi > 0.0) || !(spec.t_lo > 0.0 && spec.t_hi > spec.t_lo) {
        return Err(Error::Invalid("invalid sample specification".into()));
    }
    let (u0, l0, _, _) = sups(&sample(id, spec, 0)?);
    let (u1, l1, min_lhs, n) = sups(&sample(id, spec, 1)?);
    let rel = |a: f64, b: f64| (b - a).abs() / a.abs().max(f64::MIN_POSITIVE);
    let two = id.two_sided();
    let mut drift = rel(u0, u1);
    if two {
        drift = drift.max(rel(l0, l1));
    }
    let finite = u1.is_finite() && (!two || l1.is_finite());
    Ok(ConstantReport {
        inequality: id,
        upper: u0,
        lower: two.then_some(l0),
        upper_refined: u1,
        lower_refined: two.then_some(l1),
        drift,
        samples: n,
        min_lhs,
        stable: finite && u1 > 0.0 && drift < spec.drift_tol,
    })
}
