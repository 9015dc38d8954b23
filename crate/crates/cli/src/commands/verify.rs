//! Verification suites: identities and inequalities checked numerically, one row per check.
//!
//! Samples come from fixed seeds, so a suite's output is a pure function of its parameters.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use potentia::heatkernel::{dunkl_heat, mehler_kernel, spectral_heat_series};
use potentia::potential::{
    apply_potential_with, e_integral_with, potential_kernel, potential_kernel_standard, OperatorValue,
};
use potentia::probe::{
    constant_tracker, dyadic_scales, ratio_sweep, riesz_predicted_exponent, BumpFamily, BumpKind, Calibration,
    Inequality, ProbeOperator, SampleSpec,
};
use potentia::regions::{classify, equivalence_check, interpolation_plan, ExponentTuple, Status};
use potentia::relations::{
    dunkl_laguerre_correspondence, phi_map, sign_patterns, sphere_average_heat, standard_link_check,
    transfer_potential_check, transference_norms, reflect, TransferenceShape,
};
use potentia::{KernelPoint, MultiIndex, PotentialRequest, QuadratureSpec, Setting, Source, TypeIndex};

use super::probe::calibration;
use crate::config::{parse_list, CliError, CliResult, Params};
use crate::output::Table;

pub const KEYS: [&str; 5] = ["suite", "alpha", "plateau_factor", "slope_tol", "growth_threshold"];
pub const HEADER: [&str; 5] = ["suite", "check", "measured", "bound", "status"];

pub struct Check {
    pub check: String,
    pub measured: f64,
    pub bound: String,
    pub pass: bool,
}

fn at_most(check: impl Into<String>, measured: f64, bound: f64) -> Check {
    Check { check: check.into(), measured, bound: format!("<= {bound:e}"), pass: measured <= bound }
}

fn finite_positive(check: impl Into<String>, measured: f64) -> Check {
    Check { check: check.into(), measured, bound: "finite, > 0".into(), pass: measured.is_finite() && measured > 0.0 }
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn log_uniform(r: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    (lo.ln() + r.gen::<f64>() * (hi / lo).ln()).exp()
}

fn fmt_alpha(a: &[f64]) -> String {
    a.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(";")
}

fn label(s: &Setting) -> String {
    let a: Vec<f64> = (0..s.dim()).map(|i| s.alpha_at(i)).collect();
    match s {
        Setting::Hermite { d } => format!("hermite d={d}"),
        _ => format!("{} alpha={}", s.name(), fmt_alpha(&a)),
    }
}

pub struct Ctx {
    pub alpha: Option<Vec<f64>>,
    pub cal: Calibration,
}

type Suite = fn(&Ctx) -> CliResult<Vec<Check>>;

pub const SUITES: [(&str, Suite); 13] = [
    ("series", series),
    ("eigenaction", eigenaction),
    ("symmetrization", symmetrization),
    ("heat-comparison", heat_comparison),
    ("majorant", majorant),
    ("intertwining", intertwining),
    ("convexity", convexity),
    ("transference", transference),
    ("dunkl", dunkl),
    ("ultracontractivity", ultracontractivity),
    ("e-integral", e_integral_suite),
    ("regions", regions),
    ("probe", probe),
];

/// Closed-form heat kernels against their eigenfunction expansions, at points
/// where the double-precision sum is well conditioned.
fn series(_: &Ctx) -> CliResult<Vec<Check>> {
    let mut settings = vec![Setting::hermite(1), Setting::hermite(2)];
    for &a in &[-0.5, 0.0, 0.7, 1.5] {
        for d in 1..=2 {
            settings.push(Setting::LaguerreHermite(TypeIndex::new(vec![a; d])?));
            settings.push(Setting::LaguerreConv(TypeIndex::new(vec![a; d])?));
        }
    }
    let mut r = rng(11);
    let mut out = Vec::new();
    for s in settings {
        let d = s.dim();
        let pts: Vec<KernelPoint> = (0..10)
            .map(|_| {
                let t = log_uniform(&mut r, 0.05, 2.0);
                let x: Vec<f64> = (0..d).map(|_| 4.0 * (1.0 - r.gen::<f64>())).collect();
                let y: Vec<f64> =
                    x.iter().map(|&xi| (xi + (2.0 * r.gen::<f64>() - 1.0) * t.sqrt()).clamp(0.01, 4.0)).collect();
                KernelPoint::new(t, x, y)
            })
            .collect();
        let errs: Vec<Option<f64>> = pts
            .par_iter()
            .map(|p| {
                let sv = spectral_heat_series(&s, p, 400, 1e-12)?;
                let closed = s.heat(p.t, &p.x, &p.y);
                Ok((sv.rounding <= 1e-10 * closed.abs()).then(|| rel(sv.value, closed)))
            })
            .collect::<potentia::Result<_>>()?;
        let used = errs.iter().flatten().count();
        let worst = errs.iter().flatten().fold(0.0f64, |m, e| m.max(*e));
        let mut c = at_most(format!("{} max rel err, {used} of {} points", label(&s), pts.len()), worst, 1e-8);
        c.pass &= used > 0;
        out.push(c);
    }
    Ok(out)
}

/// I^sigma e_k = lambda_k^{-sigma} e_k, error relative to lambda^{-sigma} max |e_k| over the points.
fn eigenaction(_: &Ctx) -> CliResult<Vec<Check>> {
    let settings = [
        Setting::hermite(1),
        Setting::LaguerreHermite(TypeIndex::new(vec![0.5])?),
        Setting::LaguerreConv(TypeIndex::new(vec![0.5])?),
        Setting::LaguerreStandard(0.5),
        Setting::Dunkl(TypeIndex::new(vec![0.5])?),
        Setting::hermite(2),
    ];
    let spec = QuadratureSpec::default();
    let mut out = Vec::new();
    for s in settings {
        let d = s.dim();
        let ks: Vec<MultiIndex> = (0..=3).flat_map(|n| MultiIndex::level(d, n)).collect();
        let xs: Vec<Vec<f64>> = match (&s, d) {
            (Setting::LaguerreStandard(_), _) => vec![vec![0.4], vec![2.5], vec![7.0]],
            (_, 1) if s.half_line() => vec![vec![0.3], vec![1.1], vec![2.2]],
            (_, 1) => vec![vec![-1.3], vec![0.4], vec![1.9]],
            _ => vec![vec![0.3, -0.8], vec![1.2, 0.5]],
        };
        let mut worst = 0.0f64;
        for sigma in [0.5, 1.0, 2.0] {
            let req = PotentialRequest::new(s.clone(), sigma)?;
            let jobs: Vec<(&MultiIndex, &Vec<f64>)> = ks.iter().flat_map(|k| xs.iter().map(move |x| (k, x))).collect();
            let vals: Vec<(f64, f64)> = jobs
                .par_iter()
                .map(|(k, x)| {
                    let f = Source::eigenfunction(&s, k);
                    let v = apply_potential_with(&req, &f, x, &spec)?.value;
                    let e = s.eigenvalue(k).powf(-sigma) * s.eigenfunction(k, x)?;
                    Ok((v, e))
                })
                .collect::<potentia::Result<_>>()?;
            for (ki, _) in ks.iter().enumerate() {
                let chunk = &vals[ki * xs.len()..(ki + 1) * xs.len()];
                let scale = chunk.iter().map(|(_, e)| e.abs()).fold(0.0, f64::max);
                for (v, e) in chunk {
                    worst = worst.max((v - e).abs() / scale);
                }
            }
        }
        out.push(at_most(format!("{} |k|<=3 sigma in 0.5,1,2 max rel err", label(&s)), worst, 1e-6));
    }
    Ok(out)
}

/// G^{alpha_o,H}_t(x, y) = sum over sign patterns of G_t(eps x, y).
fn symmetrization(_: &Ctx) -> CliResult<Vec<Check>> {
    let mut r = rng(3);
    let mut out = Vec::new();
    for d in 1..=2 {
        let lh = Setting::LaguerreHermite(TypeIndex::alpha_o(d));
        let her = Setting::hermite(d);
        let mut worst = 0.0f64;
        for _ in 0..1000 {
            let t = log_uniform(&mut r, 0.01, 10.0);
            let x: Vec<f64> = (0..d).map(|_| 4.0 * r.gen::<f64>()).collect();
            let y: Vec<f64> = (0..d).map(|_| 4.0 * r.gen::<f64>()).collect();
            let lhs = lh.heat(t, &x, &y);
            let rhs: f64 = sign_patterns(d).iter().map(|e| her.heat(t, &reflect(e, &x), &y)).sum();
            if rhs > 0.0 {
                worst = worst.max(rel(lhs, rhs));
            }
        }
        out.push(at_most(format!("d={d} 1000 samples max rel err"), worst, 1e-12));
    }
    Ok(out)
}

fn tracker(id: Inequality, alpha: &[f64], sigma: f64, cal: &Calibration) -> CliResult<Vec<Check>> {
    let mut spec = SampleSpec::new(TypeIndex::new(alpha.to_vec())?, sigma);
    spec.drift_tol = cal.slope_tol;
    let name = if id.id().ends_with("heat") {
        format!("{id} alpha={}", fmt_alpha(alpha))
    } else {
        format!("{id} alpha={} sigma={sigma}", fmt_alpha(alpha))
    };
    let r = constant_tracker(id, &spec)?;
    let mut out = vec![finite_positive(format!("{name} upper constant"), r.upper_refined)];
    if let Some(l) = r.lower_refined {
        out.push(finite_positive(format!("{name} lower constant"), l));
    }
    out.push(Check {
        check: format!("{name} refinement drift"),
        measured: r.drift,
        bound: format!("<= {:e}", spec.drift_tol),
        pass: r.stable,
    });
    Ok(out)
}

fn alphas_or(ctx: &Ctx, default: &[f64]) -> Vec<Vec<f64>> {
    match &ctx.alpha {
        Some(a) => vec![a.clone()],
        None => default.iter().map(|a| vec![*a]).collect(),
    }
}

fn heat_comparison(ctx: &Ctx) -> CliResult<Vec<Check>> {
    let mut out = Vec::new();
    for a in alphas_or(ctx, &[0.0, 0.5, 1.3]) {
        out.extend(tracker(Inequality::LaguerreHermiteHeat, &a, 0.5, &ctx.cal)?);
    }
    Ok(out)
}

fn majorant(ctx: &Ctx) -> CliResult<Vec<Check>> {
    let mut out = Vec::new();
    for sigma in [0.2, 0.5, 1.5] {
        out.extend(tracker(Inequality::HermiteMajorant, &[-0.5], sigma, &ctx.cal)?);
    }
    for a in alphas_or(ctx, &[0.0, 0.5, 1.3]) {
        for sigma in [0.2, 0.5, 1.5] {
            out.extend(tracker(Inequality::LaguerreHermiteKernel, &a, sigma, &ctx.cal)?);
        }
        out.extend(tracker(Inequality::DunklHeat, &a, 0.5, &ctx.cal)?);
    }
    Ok(out)
}

fn convexity(ctx: &Ctx) -> CliResult<Vec<Check>> {
    let a = ctx.alpha.clone().unwrap_or_else(|| vec![0.25]);
    let mut out = Vec::new();
    for id in [Inequality::ConvexityHeat, Inequality::ConvexityKernel, Inequality::ConvexityOperator] {
        out.extend(tracker(id, &a, 0.5, &ctx.cal)?);
    }
    Ok(out)
}

fn multiply(f: &Source, alpha: &TypeIndex, sign: f64) -> Source {
    let a = alpha.0.clone();
    f.clone().map(move |y, v| v * y.iter().zip(&a).map(|(yi, ai)| yi.powf(sign * (ai + 0.5))).product::<f64>())
}

/// Kernel and operator identities between the two Laguerre systems and the standard link.
fn intertwining(_: &Ctx) -> CliResult<Vec<Check>> {
    let mut out = Vec::new();
    let mut r = rng(22);
    let alpha = TypeIndex::new(vec![0.7])?;
    let lc = Setting::LaguerreConv(alpha.clone());
    let lh = Setting::LaguerreHermite(alpha.clone());
    let prod = |x: &[f64], y: &[f64]| -> f64 {
        x.iter().zip(y).zip(&alpha.0).map(|((a, b), al)| (a * b).powf(-al - 0.5)).product()
    };

    let mut pairs = Vec::new();
    while pairs.len() < 100 {
        let x = 0.05 + 3.0 * r.gen::<f64>();
        let y = 0.05 + 3.0 * r.gen::<f64>();
        if (x - y).abs() > 0.05 {
            pairs.push((x, y, log_uniform(&mut r, 0.02, 5.0)));
        }
    }
    let heat = pairs
        .iter()
        .map(|&(x, y, t)| rel(lc.heat(t, &[x], &[y]), lh.heat(t, &[x], &[y]) * prod(&[x], &[y])))
        .fold(0.0, f64::max);
    out.push(at_most("heat kernels G^a = G^{a,H} prod (x y)^{-a-1/2}, 100 points", heat, 1e-8));

    let sigma = 0.4;
    let qc = PotentialRequest::new(lc.clone(), sigma)?;
    let qh = PotentialRequest::new(lh.clone(), sigma)?;
    let kern: Vec<f64> = pairs
        .par_iter()
        .map(|&(x, y, _)| {
            Ok(rel(potential_kernel(&qc, &[x], &[y])?, potential_kernel(&qh, &[x], &[y])? * prod(&[x], &[y])))
        })
        .collect::<potentia::Result<_>>()?;
    out.push(at_most(
        "potential kernels K^a = K^a_H prod (x y)^{-a-1/2}, sigma=0.4, 100 points",
        kern.iter().copied().fold(0.0, f64::max),
        1e-8,
    ));

    let spec = QuadratureSpec::kernel();
    let f = Source::gaussian(vec![1.2], 0.4).map(|y, v| if y[0] >= 0.0 { v } else { 0.0 });
    let mut f = f;
    f.support[0].0 = 0.0;
    let sf = multiply(&f, &alpha, 1.0);
    let xs: Vec<f64> = (0..100).map(|_| 0.1 + 3.0 * r.gen::<f64>()).collect();
    let op: Vec<f64> = xs
        .par_iter()
        .map(|&x| {
            let a = apply_potential_with(&qc, &f, &[x], &spec)?.value;
            let b = apply_potential_with(&qh, &sf, &[x], &spec)?.value * x.powf(-alpha.0[0] - 0.5);
            Ok(rel(a, b))
        })
        .collect::<potentia::Result<_>>()?;
    out.push(at_most(
        "operators I^a f = x^{-a-1/2} I^a_H (S_a f), gaussian bump, 100 points",
        op.iter().copied().fold(0.0, f64::max),
        1e-8,
    ));

    let g = Source::gaussian(vec![1.5], 0.5).map(|y, v| if y[0] >= 0.0 { v } else { 0.0 });
    let mut g = g;
    g.support[0].0 = 0.0;
    let xs: Vec<f64> = (0..100).map(|_| 0.2 + 2.8 * r.gen::<f64>()).collect();
    let link: Vec<f64> = xs
        .par_iter()
        .map(|&x| {
            let (l, rr) = standard_link_check(0.5, sigma, &g, x, &spec)?;
            Ok(rel(l, rr))
        })
        .collect::<potentia::Result<_>>()?;
    out.push(at_most(
        "standard link P I_S f = 2^{2 sigma} I_H P f, sigma=0.4, 100 points",
        link.iter().copied().fold(0.0, f64::max),
        1e-8,
    ));

    let qh5 = PotentialRequest::new(Setting::LaguerreHermite(TypeIndex::new(vec![0.5])?), sigma)?;
    let ks: Vec<f64> = pairs
        .par_iter()
        .map(|&(x, y, _)| {
            let h = potential_kernel(&qh5, &[x], &[y])?;
            let s = 2f64.powf(-2.0 * sigma + 1.0) * (x * y).sqrt() * potential_kernel_standard(sigma, 0.5, x * x, y * y)?;
            Ok(rel(s, h))
        })
        .collect::<potentia::Result<_>>()?;
    out.push(at_most(
        "K_H(x,y) = 2^{1-2 sigma} sqrt(xy) K_S(x^2,y^2), sigma=0.4, 100 points",
        ks.iter().copied().fold(0.0, f64::max),
        1e-8,
    ));
    Ok(out)
}

/// Sphere averages of the Hermite kernel on R^{|n|} against the half-integer Laguerre kernel,
/// the operator identity under phi, and the transference norm inequality.
fn transference(_: &Ctx) -> CliResult<Vec<Check>> {
    let mut out = Vec::new();
    let mut r = rng(7);
    for n in 1..=3usize {
        let shape = TransferenceShape::new(vec![n])?;
        let lag = shape.laguerre();
        let mut worst = 0.0f64;
        for _ in 0..40 {
            let t = log_uniform(&mut r, 0.05, 3.0);
            let x: Vec<f64> = (0..n).map(|_| 3.0 * (2.0 * r.gen::<f64>() - 1.0)).collect();
            let y = vec![0.05 + 3.0 * r.gen::<f64>()];
            let lhs = sphere_average_heat(&shape, t, &x, &y)?;
            let rhs = lag.heat(t, &phi_map(&shape, &x), &y);
            worst = worst.max(rel(lhs, rhs));
        }
        out.push(at_most(format!("sphere average n=({n}), 40 points"), worst, 1e-6));
    }

    let spec = QuadratureSpec::default();
    let sigma = 0.6;
    for n in [1usize, 2] {
        let shape = TransferenceShape::new(vec![n])?;
        let lag = shape.laguerre();
        let bump = {
            let mut b = Source::gaussian(vec![1.0], 0.35).map(|y, v| if y[0] >= 0.0 { v } else { 0.0 });
            b.support[0].0 = 0.0;
            b
        };
        let sources = [
            ("eigenfunction k=1", Source::eigenfunction(&lag, &MultiIndex(vec![1]))),
            ("eigenfunction k=2", Source::eigenfunction(&lag, &MultiIndex(vec![2]))),
            ("gaussian bump", bump),
        ];
        let xs: Vec<Vec<f64>> = match n {
            1 => vec![vec![-0.9], vec![0.6], vec![1.7]],
            _ => vec![vec![0.3, -0.5], vec![1.1, 0.7]],
        };
        for (name, f) in &sources {
            let errs: Vec<f64> = xs
                .par_iter()
                .map(|x| {
                    let (a, b): (OperatorValue, OperatorValue) = transfer_potential_check(&shape, sigma, f, x, &spec)?;
                    Ok(rel(a.value, b.value))
                })
                .collect::<potentia::Result<_>>()?;
            out.push(at_most(
                format!("operator under phi n=({n}) {name}, sigma={sigma}"),
                errs.iter().copied().fold(0.0, f64::max),
                1e-5,
            ));
        }
    }

    let shape = TransferenceShape::new(vec![2])?;
    let lag = shape.laguerre();
    let k = MultiIndex(vec![1]);
    let f = Source::eigenfunction(&lag, &k);
    let lam = lag.eigenvalue(&k).powf(-sigma);
    let tf = f.clone().map(move |_, v| lam * v);
    let norms = transference_norms(&shape, &f, &tf, 2.0, 4.0, 24);
    out.push(Check {
        check: "transference norm inequality n=(2), p=2, q=4: lhs / bound".into(),
        measured: norms.lhs / norms.bound,
        bound: "<= 1".into(),
        pass: norms.lhs <= norms.bound * (1.0 + 1e-9),
    });
    Ok(out)
}

fn dunkl(ctx: &Ctx) -> CliResult<Vec<Check>> {
    let mut out = Vec::new();
    let mut r = rng(5);
    for d in 1..=2 {
        let ao = TypeIndex::alpha_o(d);
        let mut worst = 0.0f64;
        let mut used = 0;
        for _ in 0..20 {
            let t = log_uniform(&mut r, 0.1, 2.0);
            let x: Vec<f64> = (0..d).map(|_| 3.0 * (2.0 * r.gen::<f64>() - 1.0)).collect();
            let y: Vec<f64> = x.iter().map(|xi| xi + (2.0 * r.gen::<f64>() - 1.0) * t.sqrt()).collect();
            let p = KernelPoint::new(t, x, y);
            let s = dunkl_heat(&p, &ao, 400, 1e-12)?;
            let m = mehler_kernel(&p);
            if s.rounding <= 1e-10 * m.abs() {
                used += 1;
                worst = worst.max(rel(s.value, m));
            }
        }
        let mut c = at_most(format!("series at alpha_o vs Mehler d={d}, {used} of 20 points"), worst, 1e-8);
        c.pass &= used > 0;
        out.push(c);
    }
    for a in [0.0, 0.5] {
        let alpha = TypeIndex::new(vec![a])?;
        let lc = Setting::LaguerreConv(alpha.clone());
        let mut worst = 0.0f64;
        for _ in 0..20 {
            let t = log_uniform(&mut r, 0.1, 2.0);
            let x = 0.05 + 2.5 * r.gen::<f64>();
            let y = 0.05 + 2.5 * r.gen::<f64>();
            let sx = if r.gen::<bool>() { -x } else { x };
            let sy = if r.gen::<bool>() { -y } else { y };
            let mut sum = 0.0;
            for e in [sx, -sx] {
                sum += dunkl_heat(&KernelPoint::new(t, vec![e], vec![sy]), &alpha, 400, 1e-12)?.value;
            }
            worst = worst.max(rel(sum, lc.heat(t, &[x], &[y])));
        }
        out.push(at_most(format!("reflection sum vs laguerre-conv alpha={a}, 20 points"), worst, 1e-6));
    }
    let spec = QuadratureSpec::default();
    let az = TypeIndex::new(vec![0.5])?;
    let mut f = Source::gaussian(vec![1.0], 0.4);
    f.support[0].0 = 0.0;
    let errs: Vec<f64> = [-1.3, -0.4, 0.7, 1.6]
        .par_iter()
        .map(|&x| {
            let (a, b) = dunkl_laguerre_correspondence(&az, 0.6, &f, &[x], &spec)?;
            Ok(rel(a.value, b.value))
        })
        .collect::<potentia::Result<_>>()?;
    out.push(at_most(
        "even extension: I_D f~(x) = I f(|x|), alpha=0.5, sigma=0.6, 4 points",
        errs.iter().copied().fold(0.0, f64::max),
        1e-6,
    ));
    for a in alphas_or(ctx, &[0.0, 0.5]) {
        out.extend(tracker(Inequality::DunklKernel, &a, 0.5, &ctx.cal)?);
    }
    Ok(out)
}

/// int int f(x, y) dx dy over R^2 for f concentrated in |x - y| <~ w and |x + y| <~ r.
fn double_integral<F: Fn(f64, f64) -> f64>(w: f64, r: f64, f: F) -> f64 {
    let g = potentia::quad::GaussLegendre::get(20);
    let h = 12.0 * w;
    let panels = (2.0 * r / h).ceil() as usize;
    (0..panels)
        .map(|i| {
            let a = -r + 2.0 * r * i as f64 / panels as f64;
            let b = -r + 2.0 * r * (i + 1) as f64 / panels as f64;
            g.integrate(a, b, |x| {
                (0..4)
                    .map(|j| {
                        let lo = x - h + 0.5 * h * j as f64;
                        g.integrate(lo, lo + 0.5 * h, |y| f(x, y))
                    })
                    .sum::<f64>()
            })
        })
        .sum()
}

/// t^{d/2} sup G_t and t^{d/2} int int G_t over t = 2^{-k}.
fn ultracontractivity(_: &Ctx) -> CliResult<Vec<Check>> {
    let mut out = Vec::new();
    let grid: Vec<f64> = (0..=40).map(|i| -4.0 + 0.2 * i as f64).collect();
    for d in 1..=2usize {
        let her = Setting::hermite(d);
        let mut sup = 0.0f64;
        let mut mass = 0.0f64;
        let mut mass_err = 0.0f64;
        for k in 1..=10 {
            let t = 0.5f64.powi(k);
            let w = t.powf(0.5 * d as f64);
            for x in &grid {
                for y in &grid {
                    let (xv, yv) = if d == 1 { (vec![*x], vec![*y]) } else { (vec![*x, *y], vec![*y, *x]) };
                    sup = sup.max(w * her.heat(t, &xv, &yv));
                }
            }
            let one = double_integral(t.sqrt(), (160.0 / t.tanh()).sqrt(), |x, y| her.heat_1d(0, t, x, y));
            mass_err = mass_err.max(rel(one, (2.0 * PI / (2.0 * t).sinh()).sqrt()));
            mass = mass.max(w * one.powi(d as i32));
        }
        let cap = (4.0 * PI).powf(-0.5 * d as f64);
        out.push(at_most(format!("d={d} max_k t^(d/2) sup_grid G_t"), sup, cap));
        out.push(at_most(format!("d={d} max_k t^(d/2) int int G_t"), mass, PI.powf(0.5 * d as f64)));
        out.push(at_most(format!("d={d} int int G_t vs sqrt(2 pi / sinh 2t) per axis"), mass_err, 1e-8));
    }
    // int int exp(-t|x+y|^2/8 - |x-y|^2/(4t)) is 2 sqrt(2) pi per axis for every t
    let mut worst = 0.0f64;
    for k in 1..=10 {
        let t = 0.5f64.powi(k);
        let v = double_integral(t.sqrt(), (320.0 / t).sqrt(), |x, y| {
            (-t * (x + y) * (x + y) / 8.0 - (x - y) * (x - y) / (4.0 * t)).exp()
        });
        worst = worst.max(rel(v, 2.0 * 2f64.sqrt() * PI));
    }
    out.push(at_most("comparison integral vs 2 sqrt(2) pi, t = 2^-1..2^-10", worst, 1e-8));
    Ok(out)
}

fn e_integral_suite(_: &Ctx) -> CliResult<Vec<Check>> {
    let mut out = Vec::new();
    let (e21, _) = e_integral_with(2.0, 1.0, 1e-13)?;
    out.push(at_most("E_2(1) vs 1/e", rel(e21, (-1f64).exp()), 1e-10));
    let small: Vec<f64> = (0..=40).map(|i| 1e-6 * (0.5e6f64).powf(i as f64 / 40.0)).collect();
    let large: Vec<f64> = (0..=38).map(|i| 1.0 + 0.5 * i as f64).collect();
    for a in [0.5, 1.0, 2.0] {
        let regime = |t: f64| {
            if a < 1.0 {
                1.0
            } else if a == 1.0 {
                (2.0 / t).ln()
            } else {
                t.powf(1.0 - a)
            }
        };
        let which = if a < 1.0 { "1" } else if a == 1.0 { "log(2/T)" } else { "T^(1-a)" };
        let mut ratios = Vec::new();
        let mut drift = 0.0f64;
        for &t in &small {
            let (fine, _) = e_integral_with(a, t, 1e-13)?;
            let (coarse, _) = e_integral_with(a, t, 1e-7)?;
            drift = drift.max(rel(coarse, fine));
            ratios.push(fine / regime(t));
        }
        let lo = ratios.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = ratios.iter().copied().fold(0.0, f64::max);
        out.push(Check {
            check: format!("a={a} E_a(T) / {which} on [1e-6, 0.5], min"),
            measured: lo,
            bound: ">= 1e-1".into(),
            pass: lo >= 0.1,
        });
        out.push(at_most(format!("a={a} E_a(T) / {which} on [1e-6, 0.5], max"), hi, 10.0));
        let mut top = 0.0f64;
        for &t in &large {
            let (fine, _) = e_integral_with(a, t, 1e-13)?;
            let (coarse, _) = e_integral_with(a, t, 1e-7)?;
            drift = drift.max(rel(coarse, fine));
            top = top.max(fine / (-t / 2.0).exp());
        }
        out.push(at_most(format!("a={a} E_a(T) / exp(-T/2) on [1, 20], max"), top, 10.0));
        out.push(at_most(format!("a={a} relative change tol 1e-7 -> 1e-13"), drift, 1e-6));
    }
    Ok(out)
}

fn regions(_: &Ctx) -> CliResult<Vec<Check>> {
    let mut out = Vec::new();
    let status = |th: &str, t: &ExponentTuple| classify(th, t).map(|v| v.status);
    let cases: [(&str, ExponentTuple, Status); 6] = [
        ("hermite", ExponentTuple::new(1, 2.0, 2.0, 0.25)?, Status::Admissible),
        ("hermite", ExponentTuple::new(1, 2.0, 4.0, 0.1)?, Status::Excluded),
        ("hermite-weighted", ExponentTuple::new(1, 2.0, 2.0, 0.2)?.weights(0.0, 0.1), Status::Admissible),
        ("hermite-weighted", ExponentTuple::new(1, 2.0, 2.0, 0.2)?.weights(0.6, 0.0), Status::Excluded),
        ("laguerre-weighted", ExponentTuple::new(1, 2.0, 2.0, 0.2)?.alpha(vec![0.5])?, Status::Admissible),
        ("hls", ExponentTuple::new(1, 1.0, 2.0, 0.5)?, Status::WeakTypeOnly),
    ];
    let mut wrong = 0;
    for (th, t, s) in &cases {
        if status(th, t)? != *s {
            wrong += 1;
        }
    }
    out.push(at_most(format!("reference verdicts, {} tuples: mismatches", cases.len()), wrong as f64, 0.0));

    let mut r = rng(10);
    let mut bad = 0;
    let mut residual = 0.0f64;
    for _ in 0..100 {
        let d = 1 + r.gen_range(0..2usize);
        let alpha: Vec<f64> = (0..d).map(|_| -0.5 + 0.25 * r.gen_range(0..12) as f64 + 0.05 * r.gen_range(0..5) as f64).collect();
        let p = 1.0 + 3.0 * r.gen::<f64>();
        let q = p + 4.0 * r.gen::<f64>();
        let sigma = 0.05 + 2.0 * r.gen::<f64>();
        let (a, b) = (0.3 * r.gen::<f64>() - 0.1, 0.3 * r.gen::<f64>() - 0.1);
        let t = ExponentTuple::new(d, p, q, sigma)?.weights(a, b).alpha(alpha.clone())?;
        if !equivalence_check(&t)?.consistent {
            bad += 1;
        }
        residual = residual.max(interpolation_plan(&TypeIndex::new(alpha)?, sigma, a, b)?.residual());
    }
    out.push(at_most("equivalence under the interpolation plan, 100 tuples: inconsistent", bad as f64, 0.0));
    out.push(at_most("interpolation plan residual, 100 tuples", residual, 1e-14));

    let mut disagree = 0;
    for &p in &[1.0, 1.5, 2.0, 4.0] {
        for &q in &[1.5, 2.0, 3.0, 8.0, f64::INFINITY] {
            for &sigma in &[0.1, 0.25, 0.5, 1.0] {
                let t = ExponentTuple::new(1, p, q, sigma)?;
                let her = status("hermite", &t)? == Status::Admissible;
                let hwt = status("hermite-weighted", &t)? == Status::Admissible;
                if hwt && !her {
                    disagree += 1;
                }
            }
        }
    }
    out.push(at_most("weighted hermite at a=b=0 admits only unweighted-admissible tuples: violations", disagree as f64, 0.0));
    Ok(out)
}

fn probe(ctx: &Ctx) -> CliResult<Vec<Check>> {
    let mut out = Vec::new();
    let t = ExponentTuple::new(1, 2.0, 4.0, 0.5)?;
    let fam = BumpFamily::new(BumpKind::Gaussian, vec![0.0]);
    let s = ratio_sweep(&ProbeOperator::Riesz { d: 1 }, 0.5, &t, &fam, &[0.5, 1.0, 2.0])?;
    let e = riesz_predicted_exponent(1, 0.5, 2.0, 4.0);
    out.push(at_most("riesz d=1 sigma=0.5 p=2 q=4 dilation slope error", (s.slope - e).abs(), 1e-3));

    let her = ProbeOperator::Potential(Setting::hermite(1));
    let fam = BumpFamily::new(BumpKind::Gaussian, vec![1.0]);
    let t = ExponentTuple::new(1, 2.0, 2.0, 0.25)?;
    let s = ratio_sweep(&her, 0.25, &t, &fam, &dyadic_scales(-5, 5))?;
    out.push(Check {
        check: "hermite sigma=0.25 p=q=2 ratio spread over 2^-5..2^5".into(),
        measured: s.spread(),
        bound: format!("<= {:e}, plateau", ctx.cal.plateau_factor),
        pass: s.verdict(&ctx.cal) == potentia::probe::ProbeVerdict::Plateau,
    });

    let t = ExponentTuple::new(1, 2.0, f64::INFINITY, 0.1)?;
    let s = ratio_sweep(&her, 0.1, &t, &fam, &dyadic_scales(-14, -6))?;
    let e = riesz_predicted_exponent(1, 0.2, 2.0, f64::INFINITY);
    out.push(Check {
        check: "hermite sigma=0.1 p=2 q=inf small-scale slope vs 2 sigma + d/q - d/p".into(),
        measured: s.small_scale_slope,
        bound: format!("{e} within {}", ctx.cal.slope_tol),
        pass: s.small_scale_slope < 0.0 && (s.small_scale_slope - e).abs() <= ctx.cal.slope_tol * e.abs(),
    });
    Ok(out)
}

pub fn run(p: &Params) -> CliResult<(Table, bool)> {
    let suite = p.get_or("suite", "all");
    let alpha = p.get("alpha").map(|a| parse_list("alpha", &a)).transpose()?;
    let ctx = Ctx { alpha, cal: calibration(p)? };
    let chosen: Vec<(&str, Suite)> = if suite == "all" {
        SUITES.to_vec()
    } else {
        let s = SUITES.iter().find(|(n, _)| *n == suite).ok_or_else(|| {
            let names: Vec<&str> = SUITES.iter().map(|(n, _)| *n).collect();
            CliError::Invalid(format!("unknown suite `{suite}` (one of all, {})", names.join(", ")))
        })?;
        vec![*s]
    };
    let mut table = Table::new(&HEADER);
    let mut all_pass = true;
    for (name, f) in chosen {
        let checks = match f(&ctx) {
            Ok(c) => c,
            Err(e) => vec![Check { check: "error".into(), measured: f64::NAN, bound: e.to_string(), pass: false }],
        };
        for c in checks {
            let pass = c.pass && !c.measured.is_nan();
            all_pass &= pass;
            table.push(vec![
                name.into(),
                c.check,
                format!("{:.6e}", c.measured),
                c.bound,
                if pass { "PASS" } else { "FAIL" }.into(),
            ]);
        }
    }
    Ok((table, all_pass))
}
