//! Quadrature rules: Gauss-Legendre, tanh-sinh and composite panel rules.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

/// Gauss-Legendre nodes and weights on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Newton iteration on the Legendre recurrence, nodes symmetric about 0.
    pub fn compute(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = (n + 1) / 2;
        for i in 0..m {
            let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_pd(n, z);
                dp = d;
                let dz = p / d;
                z -= dz;
                if dz.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_pd(n, z);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - z * z) * dp * dp);
            nodes[i] = -z;
            nodes[n - 1 - i] = z;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        GaussLegendre { nodes, weights }
    }

    /// Shared, cached rule of order `n`.
    pub fn get(n: usize) -> Arc<GaussLegendre> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GaussLegendre>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().unwrap();
        guard
            .entry(n)
            .or_insert_with(|| Arc::new(GaussLegendre::compute(n)))
            .clone()
    }

    /// Integrate `f` over [a, b].
    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        let mut s = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            s += w * f(c + h * x);
        }
        s * h
    }
}

fn legendre_pd(n: usize, z: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = z;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (z * p1 - p0) / (z * z - 1.0);
    (p1, d)
}

/// Tanh-sinh rule on [-1, 1]. `gap[i]` is `1 - |x_i|`, kept separately so that
/// endpoint-singular integrands can be evaluated without cancellation.
#[derive(Debug, Clone)]
pub struct TanhSinh {
    pub nodes: Vec<f64>,
    pub gap: Vec<f64>,
    pub weights: Vec<f64>,
}

impl TanhSinh {
    /// Step `h` with abscissae `k h` for |k h| <= `tmax`.
    pub fn compute(h: f64, tmax: f64) -> Self {
        let mut nodes = Vec::new();
        let mut gap = Vec::new();
        let mut weights = Vec::new();
        let kmax = (tmax / h).ceil() as i64;
        for k in -kmax..=kmax {
            let t = k as f64 * h;
            let u = 0.5 * PI * t.sinh();
            let ch = u.cosh();
            let x = u.tanh();
            let g = 1.0 / (u.abs().exp() * ch);
            let w = h * 0.5 * PI * t.cosh() / (ch * ch);
            if w < 1e-300 || g <= 0.0 {
                continue;
            }
            nodes.push(x);
            gap.push(g);
            weights.push(w);
        }
        TanhSinh { nodes, gap, weights }
    }

    pub fn get(level: u32) -> Arc<TanhSinh> {
        static CACHE: OnceLock<Mutex<HashMap<u32, Arc<TanhSinh>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().unwrap();
        guard
            .entry(level)
            .or_insert_with(|| Arc::new(TanhSinh::compute(0.5f64.powi(level as i32), 5.0)))
            .clone()
    }

    /// Append the mapped nodes for [a, b] to `out`. Nodes closest to `a`
    /// are placed at `a + (b-a) gap / 2` exactly.
    pub fn push_mapped(&self, a: f64, b: f64, out: &mut Rule1D) {
        let h = 0.5 * (b - a);
        for i in 0..self.nodes.len() {
            let x = self.nodes[i];
            let y = if x < 0.0 { a + h * self.gap[i] } else { b - h * self.gap[i] };
            out.nodes.push(y);
            out.weights.push(h * self.weights[i]);
        }
    }
}

/// A one-dimensional rule as a flat list of nodes and weights.
#[derive(Debug, Clone, Default)]
pub struct Rule1D {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule1D {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn sum<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    /// Composite rule over the sorted breakpoints `breaks`. Panels that touch a
    /// point in `singular` use tanh-sinh at `ts_level`, the others Gauss-Legendre
    /// of order `order`.
    pub fn composite(breaks: &[f64], singular: &[f64], order: usize, ts_level: u32) -> Rule1D {
        let gl = GaussLegendre::get(order);
        let ts = TanhSinh::get(ts_level);
        let mut out = Rule1D::default();
        for w in breaks.windows(2) {
            let (a, b) = (w[0], w[1]);
            if !(b > a) {
                continue;
            }
            let touches = singular.iter().any(|&s| s == a || s == b);
            if touches {
                ts.push_mapped(a, b, &mut out);
            } else {
                let c = 0.5 * (a + b);
                let h = 0.5 * (b - a);
                for (x, wt) in gl.nodes.iter().zip(&gl.weights) {
                    out.nodes.push(c + h * x);
                    out.weights.push(h * wt);
                }
            }
        }
        out
    }
}

/// Sort, deduplicate and clip breakpoints to [lo, hi], always keeping both ends.
pub fn clean_breaks(lo: f64, hi: f64, extra: impl IntoIterator<Item = f64>) -> Vec<f64> {
    let mut v: Vec<f64> = extra.into_iter().filter(|&x| x > lo && x < hi).collect();
    v.push(lo);
    v.push(hi);
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v.dedup_by(|a, b| (*a - *b).abs() <= 1e-14 * (1.0 + b.abs()));
    v
}

/// Adaptive Gauss-Legendre: bisect until the 10-point and 20-point rules agree.
pub fn adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> (f64, f64) {
    let g1 = GaussLegendre::get(10);
    let g2 = GaussLegendre::get(20);
    fn rec<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        b: f64,
        tol: f64,
        depth: u32,
        g1: &GaussLegendre,
        g2: &GaussLegendre,
    ) -> (f64, f64) {
        let coarse = g1.integrate(a, b, f);
        let fine = g2.integrate(a, b, f);
        let err = (fine - coarse).abs();
        if err <= tol.max(1e-300) || depth >= 40 {
            return (fine, err);
        }
        let m = 0.5 * (a + b);
        let (l, el) = rec(f, a, m, 0.5 * tol, depth + 1, g1, g2);
        let (r, er) = rec(f, m, b, 0.5 * tol, depth + 1, g1, g2);
        (l + r, el + er)
    }
    rec(f, a, b, tol, 0, &g1, &g2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let g = GaussLegendre::compute(12);
        let s: f64 = g.weights.iter().sum();
        assert!((s - 2.0).abs() < 1e-14);
        let v = g.integrate(0.0, 1.0, |x| x.powi(23));
        assert!((v - 1.0 / 24.0).abs() < 1e-15);
    }

    #[test]
    fn tanh_sinh_endpoint_singularity() {
        let ts = TanhSinh::get(4);
        let mut r = Rule1D::default();
        ts.push_mapped(0.0, 1.0, &mut r);
        let v = r.sum(|y| y.powf(-0.9));
        assert!((v - 10.0).abs() < 1e-8, "{v}");
    }

    #[test]
    fn adaptive_matches_closed_form() {
        let (v, _) = adaptive(&|x: f64| (-x).exp(), 0.0, 40.0, 1e-13);
        assert!((v - (1.0 - (-40f64).exp())).abs() < 1e-12);
    }
}
