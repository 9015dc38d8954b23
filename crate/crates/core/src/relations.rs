//! Transference between the Hermite setting on R^{|n|} and the half-integer
//! Laguerre setting on R^d_+, Dunkl reflections and the standard Laguerre link.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::grid::{GridFunction, Measure, Source};
use crate::heatkernel::{ln_mehler_1d, Setting};
use crate::potential::{apply_potential_with, OperatorValue, PotentialRequest, QuadratureSpec};
use crate::quad::GaussLegendre;
use crate::specfun::TypeIndex;

/// Block structure n = (n_1, .., n_d) with alpha_i = n_i / 2 - 1.
#[derive(Debug, Clone, PartialEq)]
pub struct TransferenceShape {
    pub n: Vec<usize>,
    pub alpha: TypeIndex,
}

impl TransferenceShape {
    pub fn new(n: Vec<usize>) -> Result<Self> {
        if n.is_empty() || n.contains(&0) {
            return Err(Error::Invalid("block sizes must be positive".into()));
        }
        let alpha = TypeIndex(n.iter().map(|&ni| 0.5 * ni as f64 - 1.0).collect());
        Ok(TransferenceShape { n, alpha })
    }

    pub fn dim(&self) -> usize {
        self.n.len()
    }

    pub fn total(&self) -> usize {
        self.n.iter().sum()
    }

    /// prod_i |S_{n_i - 1}| with the unnormalized surface measure.
    pub fn sphere_constant(&self) -> f64 {
        self.n.iter().map(|&ni| sphere_area(ni)).product()
    }

    fn blocks(&self) -> impl Iterator<Item = std::ops::Range<usize>> + '_ {
        let mut start = 0;
        self.n.iter().map(move |&ni| {
            let r = start..start + ni;
            start += ni;
            r
        })
    }

    pub fn laguerre(&self) -> Setting {
        Setting::LaguerreConv(self.alpha.clone())
    }

    pub fn hermite(&self) -> Setting {
        Setting::hermite(self.total())
    }
}

/// |S_{n-1}| = 2 pi^{n/2} / Gamma(n/2).
pub fn sphere_area(n: usize) -> f64 {
    2.0 * PI.powf(0.5 * n as f64) / statrs::function::gamma::gamma(0.5 * n as f64)
}

/// Blockwise Euclidean norms.
pub fn phi_map(shape: &TransferenceShape, y: &[f64]) -> Vec<f64> {
    shape.blocks().map(|r| y[r].iter().map(|v| v * v).sum::<f64>().sqrt()).collect()
}

/// Quadrature on S_{n-1} for integrands whose angular frequency is about `s`.
fn sphere_rule(n: usize, s: f64) -> Result<Vec<(Vec<f64>, f64)>> {
    let m = (24.0 + 2.0 * s + 6.0 * s.sqrt()).ceil().min(20000.0) as usize;
    Ok(match n {
        1 => vec![(vec![1.0], 1.0), (vec![-1.0], 1.0)],
        2 => (0..m)
            .map(|j| {
                let th = 2.0 * PI * j as f64 / m as f64;
                (vec![th.cos(), th.sin()], 2.0 * PI / m as f64)
            })
            .collect(),
        3 => {
            let g = GaussLegendre::get(m / 2 + 8);
            let mut out = Vec::with_capacity(g.nodes.len() * m);
            for (z, wz) in g.nodes.iter().zip(&g.weights) {
                let r = (1.0 - z * z).sqrt();
                for j in 0..m {
                    let ph = 2.0 * PI * (j as f64 + 0.5) / m as f64;
                    out.push((vec![r * ph.cos(), r * ph.sin(), *z], wz * 2.0 * PI / m as f64));
                }
            }
            out
        }
        _ => return Err(Error::UnsupportedSphere(n)),
    })
}

/// Iterated surface integral of the Hermite heat kernel on R^{|n|} at
/// (x, (y_1 xi^1, .., y_d xi^d)) over the product of unit spheres.
pub fn sphere_average_heat(shape: &TransferenceShape, t: f64, x: &[f64], y: &[f64]) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Domain("t must be positive".into()));
    }
    if x.len() != shape.total() || y.len() != shape.dim() {
        return Err(Error::Invalid("point dimensions do not match the shape".into()));
    }
    let mut ln_total = 0.0;
    for (i, r) in shape.blocks().enumerate() {
        let xb = &x[r];
        let xn = xb.iter().map(|v| v * v).sum::<f64>().sqrt();
        let s = xn * y[i] / (2.0 * t).sinh();
        let rule = sphere_rule(shape.n[i], s)?;
        let lv: Vec<f64> = rule
            .iter()
            .map(|(xi, w)| w.ln() + xb.iter().zip(xi).map(|(a, b)| ln_mehler_1d(t, *a, y[i] * b)).sum::<f64>())
            .collect();
        let m = lv.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        ln_total += m + lv.iter().map(|v| (v - m).exp()).sum::<f64>().ln();
    }
    Ok(ln_total.exp())
}

/// f o phi as a function on R^{|n|}.
pub fn compose_phi(shape: &TransferenceShape, f: &Source) -> Source {
    let sh = shape.clone();
    let g = f.clone();
    let mut support = Vec::new();
    for (i, &ni) in shape.n.iter().enumerate() {
        let r = f.support[i].1.max(0.0);
        support.extend(std::iter::repeat((-r, r)).take(ni));
    }
    let mut src = Source::new(shape.total(), support, move |y| g.eval(&phi_map(&sh, y))).with_scale(f.scale);
    for j in 0..shape.total() {
        src = src.with_breaks(j, [0.0]);
    }
    src
}

/// Both sides of (I^{alpha,sigma} f)(phi(x)) = I^sigma (f o phi)(x), with the
/// Laguerre operator on R^d_+ and the Hermite operator on R^{|n|}.
pub fn transfer_potential_check(
    shape: &TransferenceShape,
    sigma: f64,
    f: &Source,
    x: &[f64],
    spec: &QuadratureSpec,
) -> Result<(OperatorValue, OperatorValue)> {
    let lag = PotentialRequest::new(shape.laguerre(), sigma)?;
    let her = PotentialRequest::new(shape.hermite(), sigma)?;
    let lhs = apply_potential_with(&lag, f, &phi_map(shape, x), spec)?;
    let rhs = apply_potential_with(&her, &compose_phi(shape, f), x, spec)?;
    Ok((lhs, rhs))
}

/// Coordinatewise sign flip y_i -> (-1)^{eps_i} y_i.
pub fn reflect(eps: &[bool], x: &[f64]) -> Vec<f64> {
    x.iter().zip(eps).map(|(v, e)| if *e { -v } else { *v }).collect()
}

/// f_eps(y) = f(eps y).
pub fn reflect_source(eps: &[bool], f: &Source) -> Source {
    let e = eps.to_vec();
    let g = f.clone();
    let mut support = f.support.clone();
    let mut breaks = f.breaks.clone();
    for i in 0..eps.len() {
        if eps[i] {
            support[i] = (-f.support[i].1, -f.support[i].0);
            breaks[i] = breaks[i].iter().map(|b| -b).collect();
        }
    }
    let mut src = Source::new(f.dim(), support, move |y| g.eval(&reflect(&e, y))).with_scale(f.scale);
    for (i, b) in breaks.into_iter().enumerate() {
        src = src.with_breaks(i, b);
    }
    src
}

/// All 2^d sign patterns.
pub fn sign_patterns(d: usize) -> Vec<Vec<bool>> {
    (0..1usize << d).map(|m| (0..d).map(|i| m >> i & 1 == 1).collect()).collect()
}

/// The reflection-invariant extension y -> f(|y_1|, .., |y_d|) of a function on R^d_+.
pub fn symmetric_extension(f: &Source) -> Source {
    let g = f.clone();
    let d = f.dim();
    let support = f.support.iter().map(|&(_, b)| (-b, b)).collect();
    let mut src = Source::new(d, support, move |y| {
        let a: Vec<f64> = y.iter().map(|v| v.abs()).collect();
        g.eval(&a)
    })
    .with_scale(f.scale);
    for i in 0..d {
        let b: Vec<f64> = f.breaks[i].iter().flat_map(|&b| [b, -b]).chain([0.0]).collect();
        src = src.with_breaks(i, b);
    }
    src
}

/// (I_D^{alpha,sigma}(even extension of f)(x), I^{alpha,sigma} f(|x|)).
pub fn dunkl_laguerre_correspondence(
    alpha: &TypeIndex,
    sigma: f64,
    f: &Source,
    x: &[f64],
    spec: &QuadratureSpec,
) -> Result<(OperatorValue, OperatorValue)> {
    if x.iter().any(|v| *v == 0.0) {
        return Err(Error::Domain("x is a critical point (a coordinate vanishes)".into()));
    }
    let dk = PotentialRequest::new(Setting::Dunkl(alpha.clone()), sigma)?;
    let lg = PotentialRequest::new(Setting::LaguerreConv(alpha.clone()), sigma)?;
    let ax: Vec<f64> = x.iter().map(|v| v.abs()).collect();
    let a = apply_potential_with(&dk, &symmetric_extension(f), x, spec)?;
    let b = apply_potential_with(&lg, f, &ax, spec)?;
    Ok((a, b))
}

/// Pf(x) = sqrt(x) f(x^2) on R_+.
pub fn standard_link(f: &Source) -> Source {
    assert_eq!(f.dim(), 1, "standard link is one-dimensional");
    let g = f.clone();
    let (lo, hi) = f.support[0];
    let mut src = Source::new(1, vec![(lo.max(0.0).sqrt(), hi.max(0.0).sqrt())], move |y| {
        y[0].max(0.0).sqrt() * g.eval(&[y[0] * y[0]])
    })
    .with_scale(f.scale.sqrt().min(f.scale));
    let b: Vec<f64> = f.breaks[0].iter().filter(|b| **b >= 0.0).map(|b| b.sqrt()).collect();
    src = src.with_breaks(0, b);
    src
}

/// Both sides of P(I_S^{alpha,sigma} f)(x) = 2^{2 sigma} I_H^{alpha,sigma}(Pf)(x).
pub fn standard_link_check(alpha: f64, sigma: f64, f: &Source, x: f64, spec: &QuadratureSpec) -> Result<(f64, f64)> {
    let s = PotentialRequest::new(Setting::LaguerreStandard(alpha), sigma)?;
    let h = PotentialRequest::new(Setting::LaguerreHermite(TypeIndex::new(vec![alpha])?), sigma)?;
    let lhs = x.sqrt() * apply_potential_with(&s, f, &[x * x], spec)?.value;
    let rhs = 2f64.powf(2.0 * sigma) * apply_potential_with(&h, &standard_link(f), &[x], spec)?.value;
    Ok((lhs, rhs))
}

/// Both sides of int_{R^{|n|}} g(phi(y)) dy = int_{R^d_+} g dmu_alpha * prod |S_{n_i-1}|,
/// computed by Cartesian quadrature on the left and on R^d_+ on the right.
pub fn pushforward_check(shape: &TransferenceShape, g: &Source, panels: usize) -> (f64, f64) {
    let lhs = GridFunction::on_support(&compose_phi(shape, g), panels, 16, Measure::Lebesgue).integrate(|_, v| v);
    let rhs = GridFunction::on_support(g, panels, 16, Measure::Laguerre(shape.alpha.clone())).integrate(|_, v| v)
        * shape.sphere_constant();
    (lhs, rhs)
}

/// Norms entering the transference lemma for an operator pair T, T~ with
/// (T f) o phi = T~ (f o phi), given f and T f on R^d_+.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferenceNorms {
    /// ||T f||_{L^q(mu_alpha)}
    pub lhs: f64,
    /// C ||f||_{L^p(mu_alpha)} C_dn^{1/p - 1/q} with C = ||T~(f o phi)||_q / ||f o phi||_p.
    pub bound: f64,
    pub hermite_constant: f64,
}

pub fn transference_norms(
    shape: &TransferenceShape,
    f: &Source,
    tf: &Source,
    p: f64,
    q: f64,
    panels: usize,
) -> TransferenceNorms {
    let mu = Measure::Laguerre(shape.alpha.clone());
    let lhs = GridFunction::on_support(tf, panels, 16, mu.clone()).norm(q);
    let fp = GridFunction::on_support(f, panels, 16, mu).norm(p);
    let hf = GridFunction::on_support(&compose_phi(shape, f), panels, 16, Measure::Lebesgue).norm(p);
    let htf = GridFunction::on_support(&compose_phi(shape, tf), panels, 16, Measure::Lebesgue).norm(q);
    let c = htf / hf;
    let expo = inv(p) - inv(q);
    TransferenceNorms { lhs, bound: c * fp * shape.sphere_constant().powf(expo), hermite_constant: c }
}

fn inv(p: f64) -> f64 {
    if p.is_infinite() {
        0.0
    } else {
        1.0 / p
    }
}

/// f given by finitely many coefficients in the eigenbasis of `setting`.
pub fn eigen_combination(setting: &Setting, coeffs: &[(crate::MultiIndex, f64)]) -> Source {
    let s = setting.clone();
    let c: Vec<_> = coeffs.to_vec();
    let kmax = coeffs.iter().flat_map(|(k, _)| k.0.iter().copied()).max().unwrap_or(0);
    let base = Source::eigenfunction(setting, &crate::MultiIndex(vec![kmax; setting.dim()]));
    Source::new(setting.dim(), base.support, move |y| c.iter().map(|(k, a)| a * s.eigenfunction(k, y).unwrap_or(0.0)).sum())
}
