use crate::error::{Error, Result};
use crate::quad::GaussLegendre;

/// int_R exp(v(s)) ds in log form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogIntegral {
    pub ln_value: f64,
    /// Relative change under panel halving (0 if not certified).
    pub rel_err: f64,
    pub s_lo: f64,
    pub s_hi: f64,
}

const DROP: f64 = 38.0;
const S_MIN: f64 = -120.0;
const S_MAX: f64 = 12.0;

/// Integrate exp(v(s)) over the real line, where s = ln t, splitting at s = 0
/// (t = 1). The range is found by scanning outwards until v falls DROP below
/// its peak. When the lower scan reaches S_MIN while v still decays only
/// exponentially, the remaining tail is added analytically; a non-decaying
/// lower tail is reported as divergence.
pub fn log_time_integral<F: Fn(f64) -> f64>(
    v: F,
    panel: f64,
    order: usize,
    certify: bool,
) -> Result<LogIntegral> {
    let mut peak = f64::NEG_INFINITY;
    let mut prev = v(0.0);
    peak = peak.max(prev);
    let mut s_hi = 0.0;
    loop {
        let s = s_hi + 1.0;
        let val = v(s);
        peak = peak.max(val);
        s_hi = s;
        if (val < peak - DROP && val <= prev) || val == f64::NEG_INFINITY {
            break;
        }
        if s >= S_MAX {
            return Err(Error::Tolerance { estimate: f64::INFINITY, tol: 0.0 });
        }
        prev = val;
    }
    let mut s_lo = 0.0;
    let mut prev = v(0.0);
    let mut tail_slope = None;
    loop {
        let s = s_lo - 1.0;
        let val = v(s);
        peak = peak.max(val);
        s_lo = s;
        if (val < peak - DROP && val <= prev) || val == f64::NEG_INFINITY {
            break;
        }
        if s <= S_MIN {
            let kappa = prev - val;
            if !(kappa > 1e-2) {
                return Err(Error::Divergent { sigma: f64::NAN, threshold: f64::NAN });
            }
            tail_slope = Some((val, kappa));
            break;
        }
        prev = val;
    }
    if !peak.is_finite() {
        return Ok(LogIntegral { ln_value: f64::NEG_INFINITY, rel_err: 0.0, s_lo, s_hi });
    }
    let tail = tail_slope.map_or(0.0, |(val, kappa)| (val - peak).exp() / kappa);
    let g = GaussLegendre::get(order);
    let run = |h: f64| -> f64 {
        let mut total = tail;
        for (a, b) in [(s_lo, 0.0), (0.0, s_hi)] {
            let n = ((b - a) / h).ceil().max(1.0) as usize;
            let w = (b - a) / n as f64;
            for i in 0..n {
                let lo = a + i as f64 * w;
                total += g.integrate(lo, lo + w, |s| (v(s) - peak).exp());
            }
        }
        total
    };
    let base = run(panel);
    let (value, rel_err) = if certify {
        let fine = run(0.5 * panel);
        (fine, ((fine - base) / fine).abs())
    } else {
        (base, 0.0)
    };
    Ok(LogIntegral { ln_value: peak + value.ln(), rel_err, s_lo, s_hi })
}
