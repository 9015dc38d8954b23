use statrs::function::gamma::ln_gamma;

use super::time::log_time_integral;
use super::{PotentialRequest, QuadratureSpec};
use crate::error::{Error, Result};
use crate::heatkernel::Setting;

/// Near-diagonal distance below which singular kernels are refused.
pub const DIAGONAL_GUARD: f64 = 1e-3;

/// K^sigma(x, y) = Gamma(sigma)^{-1} int_0^inf G_t(x, y) t^{sigma-1} dt with default rules.
pub fn potential_kernel(req: &PotentialRequest, x: &[f64], y: &[f64]) -> Result<f64> {
    potential_kernel_with(req, x, y, &QuadratureSpec::kernel())
}

pub fn potential_kernel_with(
    req: &PotentialRequest,
    x: &[f64],
    y: &[f64],
    spec: &QuadratureSpec,
) -> Result<f64> {
    spec.validate()?;
    let s = &req.setting;
    let d = s.dim();
    if x.len() != d || y.len() != d {
        return Err(Error::Invalid("point dimension does not match the setting".into()));
    }
    if s.half_line() && (x.iter().chain(y).any(|v| *v < 0.0)) {
        return Err(Error::Domain("Laguerre settings need coordinates >= 0".into()));
    }
    if matches!(s, Setting::Dunkl(_)) && x.iter().chain(y).any(|v| *v == 0.0) {
        return Err(Error::Domain("Dunkl potential kernels are evaluated at non-critical points only".into()));
    }
    let dist = x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
    let threshold = req.diagonal_threshold();
    if req.sigma <= threshold {
        if dist == 0.0 {
            return Err(Error::Divergent { sigma: req.sigma, threshold });
        }
        if dist < DIAGONAL_GUARD {
            return Err(Error::NearDiagonal { dist });
        }
    }
    let sigma = req.sigma;
    let r = log_time_integral(
        |sv: f64| sigma * sv + s.ln_heat(sv.exp(), x, y),
        spec.time_panel,
        spec.time_order,
        spec.certify,
    )
    .map_err(|e| match e {
        Error::Divergent { .. } => Error::Divergent { sigma, threshold },
        other => other,
    })?;
    if spec.certify && r.rel_err > spec.tol {
        return Err(Error::Tolerance { estimate: r.rel_err, tol: spec.tol });
    }
    Ok((r.ln_value - ln_gamma(sigma)).exp())
}

/// Potential kernel of the standard Laguerre functions on R_+.
pub fn potential_kernel_standard(sigma: f64, alpha: f64, x: f64, y: f64) -> Result<f64> {
    if x == y {
        return Err(Error::Domain("standard Laguerre potential kernel needs x != y".into()));
    }
    let req = PotentialRequest::new(Setting::LaguerreStandard(alpha), sigma)?;
    potential_kernel(&req, &[x], &[y])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::TypeIndex;

    #[test]
    fn diagonal_rules() {
        let req = PotentialRequest::new(Setting::hermite(1), 0.5).unwrap();
        assert!(matches!(potential_kernel(&req, &[0.3], &[0.3]), Err(Error::Divergent { .. })));
        assert!(matches!(potential_kernel(&req, &[0.3], &[0.3005]), Err(Error::NearDiagonal { .. })));
        let req = PotentialRequest::new(Setting::hermite(1), 0.8).unwrap();
        assert!(potential_kernel(&req, &[0.3], &[0.3]).unwrap() > 0.0);
    }

    #[test]
    fn laguerre_kernels_differ_by_a_power() {
        let a = TypeIndex::new(vec![0.7]).unwrap();
        let conv = PotentialRequest::new(Setting::LaguerreConv(a.clone()), 0.6).unwrap();
        let herm = PotentialRequest::new(Setting::LaguerreHermite(a), 0.6).unwrap();
        let (x, y) = (0.8, 1.9);
        let k = potential_kernel(&conv, &[x], &[y]).unwrap();
        let kh = potential_kernel(&herm, &[x], &[y]).unwrap();
        assert!((kh * (x * y).powf(-1.2) / k - 1.0).abs() < 1e-10);
    }
}
