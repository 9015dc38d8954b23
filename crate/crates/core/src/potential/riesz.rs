//! Classical Riesz potential I^sigma f(x) = int ||x - y||^{sigma - d} f(y) dy, without
//! normalizing constant.

use super::OperatorValue;
use crate::error::{Error, Result};
use crate::grid::Source;
use crate::quad::{adaptive, GaussLegendre};

/// int_0^R r^{sigma-1} g(r) dr = sigma^{-1} int_0^{R^sigma} g(rho^{1/sigma}) drho,
/// split at the radial breakpoints.
fn radial<G: Fn(f64) -> f64>(sigma: f64, r_max: f64, breaks: &[f64], tol: f64, g: G) -> (f64, f64) {
    let mut pts: Vec<f64> = breaks.iter().copied().filter(|b| *b > 0.0 && *b < r_max).collect();
    pts.push(0.0);
    pts.push(r_max);
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup();
    let h = |rho: f64| g(rho.powf(1.0 / sigma));
    let (mut v, mut e) = (0.0, 0.0);
    for w in pts.windows(2) {
        let (pv, pe) = adaptive(&h, w[0].powf(sigma), w[1].powf(sigma), tol);
        v += pv;
        e += pe;
    }
    (v / sigma, e / sigma)
}

pub fn riesz_potential(sigma: f64, f: &Source, x: &[f64]) -> Result<f64> {
    riesz_potential_with(sigma, f, x, 1e-10).map(|v| v.value)
}

/// Riesz potential in polar coordinates about x. The angular rule is a
/// trapezoid rule on the circle (d = 2) or Gauss-Legendre in cos(theta) times
/// a trapezoid rule in phi (d = 3); `err` compares against the doubled angular rule.
pub fn riesz_potential_with(sigma: f64, f: &Source, x: &[f64], tol: f64) -> Result<OperatorValue> {
    let d = f.dim();
    if x.len() != d {
        return Err(Error::Invalid("point dimension does not match the source".into()));
    }
    if !(sigma > 0.0 && sigma < d as f64) {
        return Err(Error::Domain(format!("Riesz potential needs 0 < sigma < d, got sigma = {sigma}, d = {d}")));
    }
    if f.is_zero() {
        return Ok(OperatorValue { value: 0.0, err: 0.0 });
    }
    let r_max = f
        .support
        .iter()
        .zip(x)
        .map(|((a, b), xi)| (xi - a).abs().max((b - xi).abs()).powi(2))
        .sum::<f64>()
        .sqrt();
    let atol = tol * 1e-3;
    match d {
        1 => {
            let mut value = 0.0;
            let mut err = 0.0;
            for side in [-1.0, 1.0] {
                let br: Vec<f64> = f.breaks[0].iter().map(|b| side * (b - x[0])).collect();
                let (v, e) = radial(sigma, r_max, &br, atol, |r| f.eval(&[x[0] + side * r]));
                value += v;
                err += e;
            }
            Ok(OperatorValue { value, err })
        }
        2 => {
            let ring = |n: usize| -> f64 {
                let mut s = 0.0;
                for j in 0..n {
                    let th = 2.0 * std::f64::consts::PI * (j as f64 + 0.5) / n as f64;
                    let (c, sn) = (th.cos(), th.sin());
                    s += radial(sigma, r_max, &[], atol, |r| f.eval(&[x[0] + r * c, x[1] + r * sn])).0;
                }
                s * 2.0 * std::f64::consts::PI / n as f64
            };
            let base = ring(64);
            let fine = ring(128);
            check(fine, (fine - base).abs(), tol)
        }
        3 => {
            let sphere = |n: usize| -> f64 {
                let g = GaussLegendre::get(n / 2);
                let mut s = 0.0;
                for (ct, wt) in g.nodes.iter().zip(&g.weights) {
                    let st = (1.0 - ct * ct).sqrt();
                    for j in 0..n {
                        let ph = 2.0 * std::f64::consts::PI * (j as f64 + 0.5) / n as f64;
                        let dir = [st * ph.cos(), st * ph.sin(), *ct];
                        let v = radial(sigma, r_max, &[], atol, |r| {
                            f.eval(&[x[0] + r * dir[0], x[1] + r * dir[1], x[2] + r * dir[2]])
                        })
                        .0;
                        s += wt * v;
                    }
                }
                s * 2.0 * std::f64::consts::PI / n as f64
            };
            let base = sphere(32);
            let fine = sphere(64);
            check(fine, (fine - base).abs(), tol)
        }
        _ => Err(Error::Invalid("Riesz oracle supports d <= 3".into())),
    }
}

fn check(value: f64, err: f64, tol: f64) -> Result<OperatorValue> {
    if err > tol.max(1e-9) * value.abs().max(1e-300) {
        return Err(Error::Tolerance { estimate: err, tol });
    }
    Ok(OperatorValue { value, err })
}
