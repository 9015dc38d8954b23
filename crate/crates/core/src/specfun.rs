//! Eigenfunction families and the scaled modified Bessel ratio.
//!
//! Every normalization is carried in log space and every family is produced
//! by a normalized three-term recurrence, so nothing overflows for |k| <= 200
//! and |x| <= 30.

use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};

const LN_PI: f64 = 1.144_729_885_849_400_2;
const LN_2PI: f64 = 1.837_877_066_409_345_5;

/// k in N^d.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultiIndex(pub Vec<usize>);

impl MultiIndex {
    pub fn new(k: Vec<usize>) -> Result<Self> {
        if k.is_empty() {
            return Err(Error::Invalid("multi-index must have length >= 1".into()));
        }
        Ok(MultiIndex(k))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// |k| = k_1 + ... + k_d
    pub fn length(&self) -> usize {
        self.0.iter().sum()
    }

    /// All multi-indices of dimension `d` with |k| = n, in lexicographic order.
    pub fn level(d: usize, n: usize) -> Vec<MultiIndex> {
        fn rec(d: usize, n: usize, prefix: &mut Vec<usize>, out: &mut Vec<MultiIndex>) {
            if d == 1 {
                prefix.push(n);
                out.push(MultiIndex(prefix.clone()));
                prefix.pop();
                return;
            }
            for first in 0..=n {
                prefix.push(first);
                rec(d - 1, n - first, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(d, n, &mut Vec::with_capacity(d), &mut out);
        out
    }
}

/// Type index alpha in (-1, inf)^d.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TypeIndex(pub Vec<f64>);

impl TypeIndex {
    pub fn new(alpha: Vec<f64>) -> Result<Self> {
        if alpha.is_empty() {
            return Err(Error::Invalid("type index must have length >= 1".into()));
        }
        if let Some(a) = alpha.iter().find(|a| !(**a > -1.0) || !a.is_finite()) {
            return Err(Error::Domain(format!("type index entry {a} must be > -1")));
        }
        Ok(TypeIndex(alpha))
    }

    /// (-1/2, ..., -1/2), the index that reproduces the Hermite setting.
    pub fn alpha_o(d: usize) -> Self {
        TypeIndex(vec![-0.5; d])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// |alpha| = alpha_1 + ... + alpha_d (entries may be negative).
    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    pub fn is_half_integer(&self) -> bool {
        self.0.iter().all(|a| (2.0 * a).fract() == 0.0)
    }

    pub fn in_admissible_range(&self) -> bool {
        self.0.iter().all(|&a| a >= -0.5)
    }
}

/// Normalized Hermite functions h_0 .. h_n at x.
pub fn hermite_1d_all(n: usize, x: f64) -> Vec<f64> {
    let mut h = Vec::with_capacity(n + 1);
    h.push((-0.25 * LN_PI - 0.5 * x * x).exp());
    if n >= 1 {
        h.push(std::f64::consts::SQRT_2 * x * h[0]);
    }
    for k in 1..n {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * x * h[k] - (kf / (kf + 1.0)).sqrt() * h[k - 1];
        h.push(next);
    }
    h
}

pub fn hermite_1d(n: usize, x: f64) -> f64 {
    hermite_1d_all(n, x)[n]
}

/// h_k(x) = prod_i h_{k_i}(x_i).
pub fn hermite_function(k: &MultiIndex, x: &[f64]) -> f64 {
    assert_eq!(k.dim(), x.len());
    k.0.iter().zip(x).map(|(&ki, &xi)| hermite_1d(ki, xi)).product()
}

/// Raw Laguerre polynomial L_k^alpha(x) by the three-term recurrence.
pub fn laguerre_polynomial(k: usize, alpha: f64, x: f64) -> f64 {
    let mut l0 = 1.0;
    if k == 0 {
        return l0;
    }
    let mut l1 = 1.0 + alpha - x;
    for j in 1..k {
        let jf = j as f64;
        let l2 = ((2.0 * jf + 1.0 + alpha - x) * l1 - (jf + alpha) * l0) / (jf + 1.0);
        l0 = l1;
        l1 = l2;
    }
    l1
}

/// c_j L_j^alpha(u) e^{-u/2} exp(log_pref) for j = 0..=kmax, with
/// c_j = (j!/Gamma(j+alpha+1))^{1/2}, via the normalized recurrence.
pub fn laguerre_scaled_all(kmax: usize, alpha: f64, u: f64, log_pref: f64) -> Vec<f64> {
    let mut v = Vec::with_capacity(kmax + 1);
    v.push((log_pref - 0.5 * u - 0.5 * ln_gamma(alpha + 1.0)).exp());
    if kmax >= 1 {
        v.push((1.0 + alpha - u) * v[0] / (1.0 + alpha).sqrt());
    }
    for j in 1..kmax {
        let jf = j as f64;
        let next = ((2.0 * jf + 1.0 + alpha - u) * v[j] - (jf * (jf + alpha)).sqrt() * v[j - 1])
            / ((jf + 1.0) * (jf + 1.0 + alpha)).sqrt();
        v.push(next);
    }
    v
}

fn check_positive(x: &[f64]) -> Result<()> {
    match x.iter().find(|v| !(**v > 0.0)) {
        Some(v) => Err(Error::Domain(format!("coordinate {v} must be > 0"))),
        None => Ok(()),
    }
}

/// Laguerre functions of Hermite type phi_0^alpha .. phi_kmax^alpha at x > 0.
pub fn laguerre_phi_1d_all(kmax: usize, alpha: f64, x: f64) -> Vec<f64> {
    let lp = 0.5 * std::f64::consts::LN_2 + (alpha + 0.5) * x.ln();
    laguerre_scaled_all(kmax, alpha, x * x, lp)
}

/// Laguerre functions of convolution type ell_0^alpha .. ell_kmax^alpha at x >= 0.
pub fn laguerre_ell_1d_all(kmax: usize, alpha: f64, x: f64) -> Vec<f64> {
    laguerre_scaled_all(kmax, alpha, x * x, 0.5 * std::f64::consts::LN_2)
}

/// Standard Laguerre functions L_0^alpha .. L_kmax^alpha at x > 0.
pub fn laguerre_standard_all(kmax: usize, alpha: f64, x: f64) -> Vec<f64> {
    laguerre_scaled_all(kmax, alpha, x, 0.5 * alpha * x.ln())
}

pub fn laguerre_phi(k: &MultiIndex, alpha: &TypeIndex, x: &[f64]) -> Result<f64> {
    check_positive(x)?;
    Ok(k.0
        .iter()
        .zip(&alpha.0)
        .zip(x)
        .map(|((&ki, &ai), &xi)| laguerre_phi_1d_all(ki, ai, xi)[ki])
        .product())
}

pub fn laguerre_ell(k: &MultiIndex, alpha: &TypeIndex, x: &[f64]) -> Result<f64> {
    check_positive(x)?;
    Ok(k.0
        .iter()
        .zip(&alpha.0)
        .zip(x)
        .map(|((&ki, &ai), &xi)| laguerre_ell_1d_all(ki, ai, xi)[ki])
        .product())
}

pub fn laguerre_standard(k: usize, alpha: f64, x: f64) -> Result<f64> {
    check_positive(&[x])?;
    Ok(laguerre_standard_all(k, alpha, x)[k])
}

/// Generalized Hermite functions h_0^alpha .. h_nmax^alpha on R (weight |x|^{2 alpha + 1}).
pub fn generalized_hermite_1d_all(nmax: usize, alpha: f64, x: f64) -> Vec<f64> {
    let half = std::f64::consts::FRAC_1_SQRT_2;
    let even = laguerre_ell_1d_all(nmax / 2, alpha, x.abs());
    let odd = if nmax >= 1 {
        laguerre_ell_1d_all((nmax - 1) / 2, alpha + 1.0, x.abs())
    } else {
        Vec::new()
    };
    (0..=nmax)
        .map(|n| {
            let k = n / 2;
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            if n % 2 == 0 {
                sign * half * even[k]
            } else {
                sign * half * x * odd[k]
            }
        })
        .collect()
}

pub fn generalized_hermite(k: &MultiIndex, alpha: &TypeIndex, x: &[f64]) -> f64 {
    k.0.iter()
        .zip(&alpha.0)
        .zip(x)
        .map(|((&ki, &ai), &xi)| generalized_hermite_1d_all(ki, ai, xi)[ki])
        .product()
}

/// s^{-nu} I_nu(s) = m e^{e}, with the exponent split off so callers can fold it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scaled {
    pub m: f64,
    pub e: f64,
}

impl Scaled {
    pub fn ln(&self) -> f64 {
        self.m.ln() + self.e
    }

    pub fn value(&self) -> f64 {
        self.m * self.e.exp()
    }
}

/// Power series crossover point.
pub const BESSEL_SERIES_MAX: f64 = 30.0;

/// s^{-nu} I_nu(s) for nu > -1, s >= 0.
pub fn bessel_i_ratio(nu: f64, s: f64) -> Scaled {
    debug_assert!(nu > -1.0 && s >= 0.0);
    if s <= BESSEL_SERIES_MAX || 4.0 * nu * nu > s {
        bessel_ratio_series(nu, s)
    } else {
        bessel_ratio_asymptotic(nu, s)
    }
}

/// Power series, summed in log space relative to the largest term.
pub fn bessel_ratio_series(nu: f64, s: f64) -> Scaled {
    let lt0 = -nu * std::f64::consts::LN_2 - ln_gamma(nu + 1.0);
    if s == 0.0 {
        return Scaled { m: lt0.exp(), e: 0.0 };
    }
    let q = 0.25 * s * s;
    if s <= 2.0 * BESSEL_SERIES_MAX {
        // terms stay below e^{2s}; plain products are safe here
        let mut term = 1.0f64;
        let mut sum = 1.0f64;
        let mut k = 0.0f64;
        loop {
            term *= q / ((k + 1.0) * (k + 1.0 + nu));
            sum += term;
            k += 1.0;
            if term < 1e-17 * sum && k > 0.5 * s {
                break;
            }
        }
        return Scaled { m: sum * lt0.exp(), e: 0.0 };
    }
    let lq = q.ln();
    // log of the k-th term minus lt0
    let mut logs = Vec::new();
    let mut lt = 0.0f64;
    let mut k = 0usize;
    let mut peak = 0.0f64;
    loop {
        logs.push(lt);
        peak = peak.max(lt);
        let kf = k as f64;
        lt += lq - ((kf + 1.0) * (kf + 1.0 + nu)).ln();
        k += 1;
        if lt < peak - 40.0 && kf + 1.0 > 0.5 * s {
            break;
        }
    }
    let sum: f64 = logs.iter().map(|l| (l - peak).exp()).sum();
    let e = lt0 + peak;
    Scaled { m: sum, e }
}

/// Large-argument expansion I_nu(s) ~ e^s (2 pi s)^{-1/2} sum (-1)^k a_k / s^k.
pub fn bessel_ratio_asymptotic(nu: f64, s: f64) -> Scaled {
    let mu = 4.0 * nu * nu;
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    for k in 1..200 {
        let kf = k as f64;
        let next = -term * (mu - (2.0 * kf - 1.0).powi(2)) / (8.0 * kf * s);
        if next.abs() > term.abs() {
            break;
        }
        term = next;
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    let lm = -(nu + 0.5) * s.ln() - 0.5 * LN_2PI;
    Scaled { m: sum * lm.exp(), e: s }
}
