//! Heat kernels of the five settings: closed forms in log space, spectral
//! series with certified tails, and the Gauss-Weierstrass majorant.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::{self, MultiIndex, TypeIndex};

/// Which operator family a kernel or operator lives in.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Setting {
    Hermite { d: usize },
    LaguerreHermite(TypeIndex),
    LaguerreConv(TypeIndex),
    /// d = 1 only.
    LaguerreStandard(f64),
    Dunkl(TypeIndex),
}

/// (t, x, y) for G_t(x, y).
#[derive(Debug, Clone, PartialEq)]
pub struct KernelPoint {
    pub t: f64,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

impl KernelPoint {
    pub fn new(t: f64, x: Vec<f64>, y: Vec<f64>) -> Self {
        KernelPoint { t, x, y }
    }
}

impl Setting {
    pub fn hermite(d: usize) -> Self {
        Setting::Hermite { d }
    }

    pub fn dim(&self) -> usize {
        match self {
            Setting::Hermite { d } => *d,
            Setting::LaguerreHermite(a) | Setting::LaguerreConv(a) | Setting::Dunkl(a) => a.dim(),
            Setting::LaguerreStandard(_) => 1,
        }
    }

    /// alpha_i for coordinate i (-1/2 for Hermite).
    pub fn alpha_at(&self, i: usize) -> f64 {
        match self {
            Setting::Hermite { .. } => -0.5,
            Setting::LaguerreHermite(a) | Setting::LaguerreConv(a) | Setting::Dunkl(a) => a.0[i],
            Setting::LaguerreStandard(a) => *a,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Setting::Hermite { .. } => "hermite",
            Setting::LaguerreHermite(_) => "laguerre-hermite",
            Setting::LaguerreConv(_) => "laguerre-conv",
            Setting::LaguerreStandard(_) => "laguerre-standard",
            Setting::Dunkl(_) => "dunkl",
        }
    }

    /// Laguerre settings live on the half line, Hermite and Dunkl on R.
    pub fn half_line(&self) -> bool {
        matches!(
            self,
            Setting::LaguerreHermite(_) | Setting::LaguerreConv(_) | Setting::LaguerreStandard(_)
        )
    }

    /// Per-coordinate eigenvalue slope c and offset l0: lambda = sum_i (c k_i + l0_i).
    fn spectrum_1d(&self, i: usize) -> (f64, f64) {
        let a = self.alpha_at(i);
        match self {
            Setting::Hermite { .. } => (2.0, 1.0),
            Setting::LaguerreHermite(_) | Setting::LaguerreConv(_) => (4.0, 2.0 * a + 2.0),
            Setting::Dunkl(_) => (2.0, 2.0 * a + 2.0),
            Setting::LaguerreStandard(_) => (1.0, 0.5 * a + 0.5),
        }
    }

    /// Eigenvalue of the k-th eigenfunction.
    pub fn eigenvalue(&self, k: &MultiIndex) -> f64 {
        (0..self.dim())
            .map(|i| {
                let (c, l0) = self.spectrum_1d(i);
                c * k.0[i] as f64 + l0
            })
            .sum()
    }

    /// Lowest eigenvalue.
    pub fn lambda0(&self) -> f64 {
        (0..self.dim()).map(|i| self.spectrum_1d(i).1).sum()
    }

    /// Density of the setting's measure with respect to Lebesgue measure, coordinate i.
    pub fn density_1d(&self, i: usize, y: f64) -> f64 {
        match self {
            Setting::LaguerreConv(a) | Setting::Dunkl(a) => {
                let p = 2.0 * a.0[i] + 1.0;
                if p == 0.0 {
                    1.0
                } else {
                    y.abs().powf(p)
                }
            }
            _ => 1.0,
        }
    }

    pub fn density(&self, y: &[f64]) -> f64 {
        y.iter().enumerate().map(|(i, &v)| self.density_1d(i, v)).product()
    }

    /// One-dimensional eigenfunctions 0..=kmax at x for coordinate i.
    pub fn eigen_1d_all(&self, i: usize, kmax: usize, x: f64) -> Vec<f64> {
        let a = self.alpha_at(i);
        match self {
            Setting::Hermite { .. } => specfun::hermite_1d_all(kmax, x),
            Setting::LaguerreHermite(_) => {
                if x == 0.0 && a == -0.5 {
                    specfun::laguerre_scaled_all(kmax, a, 0.0, 0.5 * std::f64::consts::LN_2)
                } else {
                    specfun::laguerre_phi_1d_all(kmax, a, x)
                }
            }
            Setting::LaguerreConv(_) => specfun::laguerre_ell_1d_all(kmax, a, x),
            Setting::LaguerreStandard(_) => {
                if x == 0.0 && a == 0.0 {
                    specfun::laguerre_scaled_all(kmax, a, 0.0, 0.0)
                } else {
                    specfun::laguerre_standard_all(kmax, a, x)
                }
            }
            Setting::Dunkl(_) => specfun::generalized_hermite_1d_all(kmax, a, x),
        }
    }

    /// The k-th eigenfunction at x.
    pub fn eigenfunction(&self, k: &MultiIndex, x: &[f64]) -> Result<f64> {
        self.check_point(x)?;
        Ok((0..self.dim())
            .map(|i| self.eigen_1d_all(i, k.0[i], x[i])[k.0[i]])
            .product())
    }

    /// Dimension and half-line domain check.
    pub fn check_point(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::Invalid(format!(
                "point has dimension {}, setting has {}",
                x.len(),
                self.dim()
            )));
        }
        if self.half_line() && x.iter().any(|v| *v < 0.0) {
            return Err(Error::Domain("Laguerre settings need coordinates >= 0".into()));
        }
        Ok(())
    }

    /// Closed-form heat kernel with respect to the setting's measure. The Dunkl
    /// kernel uses the parity split, see [`dunkl_heat_parity`].
    pub fn heat(&self, t: f64, x: &[f64], y: &[f64]) -> f64 {
        (0..self.dim()).map(|i| self.heat_1d(i, t, x[i], y[i])).product()
    }

    /// One factor of the tensor-product heat kernel.
    pub fn heat_1d(&self, i: usize, t: f64, x: f64, y: f64) -> f64 {
        let a = self.alpha_at(i);
        match self {
            Setting::Hermite { .. } => ln_mehler_1d(t, x, y).exp(),
            Setting::LaguerreHermite(_) => ln_laguerre_hermite_1d(t, a, x, y).exp(),
            Setting::LaguerreConv(_) => ln_laguerre_conv_1d(t, a, x, y).exp(),
            Setting::LaguerreStandard(_) => standard_heat_1d(t, a, x, y),
            Setting::Dunkl(_) => dunkl_parity_1d(t, a, x, y),
        }
    }

    /// ln G_t(x, y); -inf where the kernel vanishes.
    pub fn ln_heat(&self, t: f64, x: &[f64], y: &[f64]) -> f64 {
        (0..self.dim()).map(|i| self.ln_heat_1d(i, t, x[i], y[i])).sum()
    }

    pub fn ln_heat_1d(&self, i: usize, t: f64, x: f64, y: f64) -> f64 {
        let a = self.alpha_at(i);
        match self {
            Setting::Hermite { .. } => ln_mehler_1d(t, x, y),
            Setting::LaguerreHermite(_) => ln_laguerre_hermite_1d(t, a, x, y),
            Setting::LaguerreConv(_) => ln_laguerre_conv_1d(t, a, x, y),
            Setting::LaguerreStandard(_) => ln_standard_1d(t, a, x, y),
            Setting::Dunkl(_) => ln_dunkl_parity_1d(t, a, x, y),
        }
    }

    /// Intervals (in y) outside of which G_t(x, y) times the measure density is
    /// below roughly e^{-c^2/2} of its peak, coordinate i.
    pub fn heat_window(&self, t: f64, x: f64, c: f64) -> Vec<(f64, f64)> {
        let (tt, xx) = match self {
            Setting::LaguerreStandard(_) => (0.25 * t, x.max(0.0).sqrt()),
            _ => (t, x),
        };
        let center = xx / (2.0 * tt).cosh();
        let w = c * (2.0 * tt).tanh().sqrt();
        let mut iv = match self {
            Setting::Hermite { .. } => vec![(center - w, center + w)],
            Setting::Dunkl(_) => {
                let c0 = center.abs();
                if c0 - w <= 0.0 {
                    vec![(-c0 - w, c0 + w)]
                } else {
                    vec![(-c0 - w, -c0 + w), (c0 - w, c0 + w)]
                }
            }
            _ => vec![((center - w).max(0.0), center + w)],
        };
        if let Setting::LaguerreStandard(_) = self {
            for v in iv.iter_mut() {
                *v = (v.0 * v.0, v.1 * v.1);
            }
        }
        iv
    }
}

/// ln sinh(u) for u > 0 without overflow.
pub fn ln_sinh(u: f64) -> f64 {
    if u > 20.0 {
        u - std::f64::consts::LN_2 + (-(-2.0 * u).exp()).ln_1p()
    } else {
        u.sinh().ln()
    }
}

/// -1/4 [tanh t (x+y)^2 + coth t (x-y)^2]
fn mehler_exponent(t: f64, x: f64, y: f64) -> f64 {
    let th = t.tanh();
    -0.25 * (th * (x + y).powi(2) + (x - y).powi(2) / th)
}

pub(crate) fn ln_mehler_1d(t: f64, x: f64, y: f64) -> f64 {
    -0.5 * (std::f64::consts::TAU.ln() + ln_sinh(2.0 * t)) + mehler_exponent(t, x, y)
}

/// ln of the x,y-dependent Bessel factor m e^{E - s}, s = xy / sinh 2t.
fn ln_bessel_folded(t: f64, a: f64, x: f64, y: f64) -> f64 {
    let xy = x * y;
    let s = if xy == 0.0 { 0.0 } else { (xy.ln() - ln_sinh(2.0 * t)).exp() };
    let b = specfun::bessel_i_ratio(a, s);
    b.m.ln() + (b.e - s)
}

/// One factor of G_t^alpha (convolution type, measure mu_alpha).
pub fn ln_laguerre_conv_1d(t: f64, a: f64, x: f64, y: f64) -> f64 {
    -(1.0 + a) * ln_sinh(2.0 * t) + mehler_exponent(t, x, y) + ln_bessel_folded(t, a, x, y)
}

/// One factor of G_t^{alpha,H} (Hermite type, Lebesgue measure).
pub fn ln_laguerre_hermite_1d(t: f64, a: f64, x: f64, y: f64) -> f64 {
    let xy = x * y;
    let pw = a + 0.5;
    let lxy = if pw == 0.0 {
        0.0
    } else if xy == 0.0 {
        if pw > 0.0 {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    } else {
        pw * xy.ln()
    };
    // sqrt(xy) I_a(s) = (xy)^{a+1/2} (sinh 2t)^{-a} [s^{-a} I_a(s)]
    -(1.0 + a) * ln_sinh(2.0 * t) + lxy + mehler_exponent(t, x, y) + ln_bessel_folded(t, a, x, y)
}

fn ln_standard_1d(tau: f64, a: f64, u: f64, v: f64) -> f64 {
    let (x, y) = (u.sqrt(), v.sqrt());
    let uv = u * v;
    let luv = if a == 0.0 {
        0.0
    } else if uv == 0.0 {
        if a > 0.0 {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    } else {
        0.5 * a * uv.ln()
    };
    -std::f64::consts::LN_2 + luv + ln_laguerre_conv_1d(0.25 * tau, a, x, y)
}

fn standard_heat_1d(tau: f64, a: f64, u: f64, v: f64) -> f64 {
    ln_standard_1d(tau, a, u, v).exp()
}

/// ln of (1/2)[G^a(|x|,|y|) + xy G^{a+1}(|x|,|y|)]; -inf if the sum is not positive.
fn ln_dunkl_parity_1d(t: f64, a: f64, x: f64, y: f64) -> f64 {
    let (ax, ay) = (x.abs(), y.abs());
    let le = ln_laguerre_conv_1d(t, a, ax, ay);
    let xy = x * y;
    if xy == 0.0 {
        return le - std::f64::consts::LN_2;
    }
    let lo = xy.abs().ln() + ln_laguerre_conv_1d(t, a + 1.0, ax, ay);
    let r = (lo - le).exp();
    let inner = if xy > 0.0 { r.ln_1p() } else if r < 1.0 { (-r).ln_1p() } else { f64::NEG_INFINITY };
    le + inner - std::f64::consts::LN_2
}

fn dunkl_parity_1d(t: f64, a: f64, x: f64, y: f64) -> f64 {
    ln_dunkl_parity_1d(t, a, x, y).exp()
}

/// Mehler kernel G_t(x, y) on R^d.
pub fn mehler_kernel(p: &KernelPoint) -> f64 {
    let d = p.x.len();
    let mut l = -0.5 * d as f64 * (std::f64::consts::TAU.ln() + ln_sinh(2.0 * p.t));
    for i in 0..d {
        l += mehler_exponent(p.t, p.x[i], p.y[i]);
    }
    l.exp()
}

/// G_t^{alpha,H}(x, y) on R^d_+ (Lebesgue measure).
pub fn laguerre_hermite_heat(p: &KernelPoint, alpha: &TypeIndex) -> f64 {
    (0..alpha.dim())
        .map(|i| ln_laguerre_hermite_1d(p.t, alpha.0[i], p.x[i], p.y[i]))
        .sum::<f64>()
        .exp()
}

/// G_t^alpha(x, y) on R^d_+ (measure mu_alpha); finite at coordinate zeros.
pub fn laguerre_conv_heat(p: &KernelPoint, alpha: &TypeIndex) -> f64 {
    (0..alpha.dim())
        .map(|i| ln_laguerre_conv_1d(p.t, alpha.0[i], p.x[i], p.y[i]))
        .sum::<f64>()
        .exp()
}

/// G_t^{alpha,S}(u, v) on R_+ (Lebesgue measure), from
/// G_t^{alpha,H}(x, y) = 2 sqrt(xy) G_{4t}^{alpha,S}(x^2, y^2).
pub fn laguerre_standard_heat(t: f64, alpha: f64, u: f64, v: f64) -> f64 {
    standard_heat_1d(t, alpha, u, v)
}

/// Dunkl heat kernel through its even/odd split into convolution-type
/// Laguerre kernels of type alpha and alpha + 1 per coordinate.
pub fn dunkl_heat_parity(p: &KernelPoint, alpha: &TypeIndex) -> f64 {
    (0..alpha.dim())
        .map(|i| dunkl_parity_1d(p.t, alpha.0[i], p.x[i], p.y[i]))
        .product()
}

/// (4 pi t)^{-d/2} exp(-|x|^2 / 4t)
pub fn gauss_weierstrass(t: f64, x: &[f64]) -> f64 {
    let d = x.len() as f64;
    let r2: f64 = x.iter().map(|v| v * v).sum();
    (-0.5 * d * (4.0 * std::f64::consts::PI * t).ln() - r2 / (4.0 * t)).exp()
}

/// Truncated spectral sum with its certified tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    /// Bound on the omitted terms.
    pub tail: f64,
    /// Rounding estimate: eps times the sum of absolute values of the terms.
    pub rounding: f64,
    /// Highest level |k| that was summed.
    pub levels: usize,
}

/// Sup bound on |e_k(x) e_k(y)| of the form M (n+1)^gamma used for the tail.
fn tail_growth(setting: &Setting) -> f64 {
    match setting {
        Setting::Hermite { .. } => 0.0,
        _ => (0..setting.dim())
            .map(|i| setting.alpha_at(i).max(0.0) + 1.0)
            .sum(),
    }
}

/// sum_{|k| <= n_max} e^{-lambda_k t} e_k(x) e_k(y), summed level by level, with an
/// early exit once three consecutive levels contribute less than 1e-3 tol.
pub fn spectral_heat_series(
    setting: &Setting,
    p: &KernelPoint,
    n_max: usize,
    tol: f64,
) -> Result<SeriesValue> {
    let d = setting.dim();
    setting.check_point(&p.x)?;
    setting.check_point(&p.y)?;
    if !(p.t > 0.0) {
        return Err(Error::Domain("t must be positive".into()));
    }
    // per coordinate: products e_k(x_i) e_k(y_i) e^{-c k t}
    let mut prods: Vec<Vec<f64>> = Vec::with_capacity(d);
    let mut slope = f64::INFINITY;
    for i in 0..d {
        let (c, _) = setting.spectrum_1d(i);
        slope = slope.min(c);
        let ex = setting.eigen_1d_all(i, n_max, p.x[i]);
        let ey = setting.eigen_1d_all(i, n_max, p.y[i]);
        prods.push(
            (0..=n_max)
                .map(|k| ex[k] * ey[k] * (-c * k as f64 * p.t).exp())
                .collect(),
        );
    }
    let base = (-setting.lambda0() * p.t).exp();
    let gamma = tail_growth(setting);
    let mut sum = 0.0;
    let mut abs_sum = 0.0;
    let mut quiet = 0;
    let mut bound_m: f64 = 0.0;
    let mut last = 0;
    for n in 0..=n_max {
        let mut level = 0.0;
        let mut level_abs = 0.0;
        for k in MultiIndex::level(d, n) {
            let term: f64 = (0..d).map(|i| prods[i][k.0[i]]).product();
            level += term;
            level_abs += term.abs();
        }
        level *= base;
        level_abs *= base;
        sum += level;
        abs_sum += level_abs;
        last = n;
        // undo the time decay to estimate the eigenfunction envelope
        let decay = (-slope * n as f64 * p.t).exp();
        if decay > 0.0 {
            let levels_here = MultiIndex::level(d, n).len() as f64;
            bound_m = bound_m.max(level_abs / (base * decay * levels_here * (n as f64 + 1.0).powf(gamma)));
        }
        if let Setting::Hermite { .. } = setting {
            // Cramer: |h_k| <= pi^{-1/4}
            bound_m = std::f64::consts::PI.powf(-0.5 * d as f64);
        }
        if level_abs < 1e-3 * tol * sum.abs() {
            quiet += 1;
            if quiet >= 3 {
                let tail = geometric_tail(n, slope * p.t, d as f64 - 1.0 + gamma, bound_m * base);
                if tail <= tol * sum.abs() {
                    break;
                }
            }
        } else {
            quiet = 0;
        }
    }
    let tail = geometric_tail(last, slope * p.t, d as f64 - 1.0 + gamma, bound_m * base);
    let value = SeriesValue {
        value: sum,
        tail,
        rounding: f64::EPSILON * abs_sum,
        levels: last,
    };
    if tail > tol * sum.abs() {
        return Err(Error::Truncation { tail, tol: tol * sum.abs() });
    }
    Ok(value)
}

/// Bound on sum_{n > n0} m (n+1)^p e^{-r n}.
fn geometric_tail(n0: usize, r: f64, p: f64, m: f64) -> f64 {
    let q = (-r).exp();
    let n = n0 as f64 + 1.0;
    let growth = ((n + 2.0) / (n + 1.0)).powf(p);
    let ratio = q * growth;
    if ratio >= 1.0 {
        return f64::INFINITY;
    }
    m * (n + 1.0).powf(p) * q.powf(n) / (1.0 - ratio)
}

/// Dunkl heat kernel by its defining spectral series.
pub fn dunkl_heat(p: &KernelPoint, alpha: &TypeIndex, n_max: usize, tol: f64) -> Result<SeriesValue> {
    spectral_heat_series(&Setting::Dunkl(alpha.clone()), p, n_max, tol)
}
