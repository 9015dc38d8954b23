//! Potential kernels, potential operators and the classical Riesz potential.

mod kernel;
mod operator;
mod riesz;
mod time;

pub use kernel::{potential_kernel, potential_kernel_standard, potential_kernel_with, DIAGONAL_GUARD};
pub use operator::{apply_potential, apply_potential_with, semigroup, OperatorValue};
pub use riesz::{riesz_potential, riesz_potential_with};
pub use time::{log_time_integral, LogIntegral};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::heatkernel::Setting;
use crate::quad;
use crate::specfun::MultiIndex;

/// Quadrature parameters for the time and space integrals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    /// Gauss-Legendre panel width in s = ln t.
    pub time_panel: f64,
    pub time_order: usize,
    /// Gauss-Legendre order of the space panels.
    pub space_order: usize,
    /// Number of equal panels per heat window.
    pub space_panels: usize,
    /// tanh-sinh level for panels touching a singular point.
    pub ts_level: u32,
    /// Heat windows extend `window` standard deviations around the centre.
    pub window: f64,
    pub tol: f64,
    /// Recompute with a refined rule and fail if the two differ by more than `tol`.
    pub certify: bool,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            time_panel: 1.0,
            time_order: 12,
            space_order: 16,
            space_panels: 5,
            ts_level: 3,
            window: 10.0,
            tol: 1e-6,
            certify: true,
        }
    }
}

impl QuadratureSpec {
    /// Defaults for pointwise kernel evaluation.
    pub fn kernel() -> Self {
        QuadratureSpec { time_panel: 0.5, time_order: 10, tol: 1e-10, ..Default::default() }
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn uncertified(mut self) -> Self {
        self.certify = false;
        self
    }

    /// The doubled rule used for the convergence certificate.
    pub fn refined(&self) -> Self {
        QuadratureSpec {
            time_panel: 0.5 * self.time_panel,
            space_order: self.space_order + 8,
            space_panels: 2 * self.space_panels,
            ts_level: self.ts_level + 1,
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(Error::Invalid("tolerance must be positive".into()));
        }
        if self.time_order < 8 || self.space_order < 8 {
            return Err(Error::Invalid("node counts must be at least 8".into()));
        }
        Ok(())
    }
}

/// Setting and order of the negative power.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PotentialRequest {
    pub setting: Setting,
    pub sigma: f64,
    pub weights: Option<(f64, f64)>,
}

impl PotentialRequest {
    pub fn new(setting: Setting, sigma: f64) -> Result<Self> {
        if !(sigma > 0.0) {
            return Err(Error::Invalid(format!("sigma = {sigma} must be positive")));
        }
        Ok(PotentialRequest { setting, sigma, weights: None })
    }

    /// sigma at or below which the kernel is infinite on the diagonal.
    pub fn diagonal_threshold(&self) -> f64 {
        0.5 * self.setting.dim() as f64
    }
}

/// E_a(T) = int_0^1 zeta^{-a} exp(-T/zeta) dzeta = T^{1-a} int_T^inf y^{a-2} e^{-y} dy.
pub fn e_integral(a: f64, t: f64) -> Result<f64> {
    e_integral_with(a, t, 1e-13).map(|(v, _)| v)
}

/// E_a(T) with the relative tolerance of the adaptive rule; returns (value, error estimate).
pub fn e_integral_with(a: f64, t: f64, tol: f64) -> Result<(f64, f64)> {
    if !(t > 0.0) {
        return Err(Error::Domain("E_a needs T > 0".into()));
    }
    // y = e^u: int y^{a-1} e^{-y} du over u > ln T, relative to the value at the peak
    let u0 = t.ln();
    let u1 = (t.max(1.0) + 60.0 + 2.0 * a.abs()).ln();
    let peak_u = if a > 1.0 { (a - 1.0).ln().max(u0) } else { u0 };
    let lpeak = (a - 1.0) * peak_u - peak_u.exp();
    let f = |u: f64| ((a - 1.0) * u - u.exp() - lpeak).exp();
    let g = quad::GaussLegendre::get(10);
    let h = (u1 - u0) / 64.0;
    let scale: f64 = (0..64)
        .map(|i| g.integrate(u0 + i as f64 * h, u0 + (i + 1) as f64 * h, f))
        .sum::<f64>()
        .max(1e-300);
    let (v, err) = quad::adaptive(&f, u0, u1, tol * scale);
    let pref = ((1.0 - a) * t.ln() + lpeak).exp();
    Ok((pref * v, pref * err))
}

/// The explicit majorant K^sigma of the Hermite potential kernel.
pub fn majorant_kernel(sigma: f64, d: usize, x: &[f64]) -> Result<f64> {
    let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    let half = 0.5 * d as f64;
    if r >= 1.0 {
        return Ok((-r * r / 8.0).exp());
    }
    if sigma > half {
        Ok(1.0)
    } else if r == 0.0 {
        Err(Error::Domain("majorant is infinite at 0 for sigma <= d/2".into()))
    } else if sigma == half {
        Ok((4.0 / r).ln())
    } else {
        Ok(r.powf(2.0 * sigma - d as f64))
    }
}

/// Multiply each coefficient by lambda_k^{-sigma}.
pub fn spectral_potential(setting: &Setting, sigma: f64, coeffs: &[(MultiIndex, f64)]) -> Vec<(MultiIndex, f64)> {
    coeffs
        .iter()
        .map(|(k, c)| (k.clone(), c * setting.eigenvalue(k).powf(-sigma)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn e_integral_closed_form() {
        assert_relative_eq!(e_integral(2.0, 1.0).unwrap(), (-1f64).exp(), max_relative = 1e-12);
        assert_relative_eq!(e_integral(0.0, 1e-12).unwrap(), 1.0, max_relative = 1e-9);
        for &t in &[0.01, 0.3, 2.0, 7.5] {
            assert_relative_eq!(e_integral(2.0, t).unwrap(), (-t).exp() / t, max_relative = 1e-11);
        }
    }

    #[test]
    fn majorant_cases() {
        assert_relative_eq!(majorant_kernel(0.3, 1, &[1.0]).unwrap(), (-0.125f64).exp());
        assert_relative_eq!(majorant_kernel(0.5, 1, &[0.5]).unwrap(), 8f64.ln());
        assert_relative_eq!(majorant_kernel(0.25, 1, &[0.25]).unwrap(), 2.0, max_relative = 1e-14);
        assert_eq!(majorant_kernel(2.0, 2, &[0.1, 0.0]).unwrap(), 1.0);
        assert!(majorant_kernel(0.5, 1, &[0.0]).is_err());
    }

    #[test]
    fn spectral_factors() {
        let h = Setting::hermite(2);
        let out = spectral_potential(&h, 1.0, &[(MultiIndex(vec![1, 2]), 1.0)]);
        assert_relative_eq!(out[0].1, 0.125);
        let l = Setting::LaguerreConv(crate::TypeIndex::new(vec![0.0, 0.0]).unwrap());
        let out = spectral_potential(&l, 2.0, &[(MultiIndex(vec![0, 0]), 1.0)]);
        assert_relative_eq!(out[0].1, 1.0 / 16.0);
        let out = spectral_potential(&h, 0.0, &[(MultiIndex(vec![3, 1]), 0.7)]);
        assert_eq!(out[0].1, 0.7);
    }
}
