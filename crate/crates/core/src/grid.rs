//! Input functions for the operators and sampled functions on tensor grids.

use std::sync::Arc;

use crate::heatkernel::Setting;
use crate::quad::Rule1D;
use crate::specfun::{MultiIndex, TypeIndex};

/// Reference measure of a setting.
#[derive(Debug, Clone, PartialEq)]
pub enum Measure {
    /// dx on R^d or R^d_+
    Lebesgue,
    /// mu_alpha = prod x_i^{2 alpha_i + 1} dx on R^d_+
    Laguerre(TypeIndex),
    /// w_alpha = prod |x_i|^{2 alpha_i + 1} dx on R^d
    Dunkl(TypeIndex),
}

impl Measure {
    pub fn density(&self, y: &[f64]) -> f64 {
        match self {
            Measure::Lebesgue => 1.0,
            Measure::Laguerre(a) | Measure::Dunkl(a) => y
                .iter()
                .zip(&a.0)
                .map(|(v, ai)| {
                    let p = 2.0 * ai + 1.0;
                    if p == 0.0 {
                        1.0
                    } else {
                        v.abs().powf(p)
                    }
                })
                .product(),
        }
    }
}

impl Setting {
    pub fn measure(&self) -> Measure {
        match self {
            Setting::LaguerreConv(a) => Measure::Laguerre(a.clone()),
            Setting::Dunkl(a) => Measure::Dunkl(a.clone()),
            _ => Measure::Lebesgue,
        }
    }
}

type Func = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;
type Factor = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A function on R^d together with quadrature hints: the box outside which it
/// is negligible, breakpoints where it has kinks or sharp features, and the
/// smallest length scale on which it varies.
#[derive(Clone)]
pub struct Source {
    d: usize,
    f: Func,
    factors: Option<Vec<Factor>>,
    pub support: Vec<(f64, f64)>,
    pub breaks: Vec<Vec<f64>>,
    pub scale: f64,
}

impl std::fmt::Debug for Source {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Source")
            .field("d", &self.d)
            .field("support", &self.support)
            .field("scale", &self.scale)
            .finish()
    }
}

impl Source {
    pub fn new<F>(d: usize, support: Vec<(f64, f64)>, f: F) -> Self
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        assert_eq!(support.len(), d);
        Source { d, f: Arc::new(f), factors: None, support, breaks: vec![Vec::new(); d], scale: 1.0 }
    }

    /// f(y) = prod_i g_i(y_i).
    pub fn separable(support: Vec<(f64, f64)>, factors: Vec<Factor>) -> Self {
        let d = factors.len();
        assert_eq!(support.len(), d);
        let fs = factors.clone();
        let f: Func = Arc::new(move |y: &[f64]| fs.iter().zip(y).map(|(g, v)| g(*v)).product());
        Source { d, f, factors: Some(factors), support, breaks: vec![Vec::new(); d], scale: 1.0 }
    }

    /// Per-axis factors when the function is a tensor product.
    pub fn factors(&self) -> Option<&[Factor]> {
        self.factors.as_deref()
    }

    pub fn with_breaks(mut self, axis: usize, pts: impl IntoIterator<Item = f64>) -> Self {
        self.breaks[axis].extend(pts);
        self
    }

    pub fn with_scale(mut self, scale: f64) -> Self {
        self.scale = scale;
        self
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn eval(&self, y: &[f64]) -> f64 {
        (self.f)(y)
    }

    pub fn is_zero(&self) -> bool {
        self.support.iter().any(|(a, b)| !(b > a))
    }

    pub fn zero(d: usize) -> Self {
        Source::new(d, vec![(0.0, 0.0); d], |_| 0.0)
    }

    /// exp(-|y - c|^2 / (2 s^2))
    pub fn gaussian(center: Vec<f64>, s: f64) -> Self {
        let factors = center
            .iter()
            .map(|&ci| Arc::new(move |v: f64| (-0.5 * (v - ci) * (v - ci) / (s * s)).exp()) as Factor)
            .collect();
        let mut src =
            Source::separable(center.iter().map(|&ci| (ci - 12.0 * s, ci + 12.0 * s)).collect(), factors).with_scale(s);
        for (i, &ci) in center.iter().enumerate() {
            src = src.with_breaks(i, [-8.0, -4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0, 8.0].map(|k| ci + k * s));
        }
        src
    }

    /// Smoothed indicator of the cube of side s centred at c (logistic edges of width s/50).
    pub fn plateau(center: Vec<f64>, s: f64) -> Self {
        let w = 0.02 * s;
        let factors = center
            .iter()
            .map(|&ci| {
                Arc::new(move |v: f64| {
                    let z = (0.5 * s - (v - ci).abs()) / w;
                    1.0 / (1.0 + (-z).exp())
                }) as Factor
            })
            .collect();
        let mut src =
            Source::separable(center.iter().map(|&ci| (ci - 1.5 * s, ci + 1.5 * s)).collect(), factors).with_scale(w);
        for (i, &ci) in center.iter().enumerate() {
            let mut b = vec![ci];
            for side in [-1.0, 1.0] {
                for k in [-20.0, -8.0, -4.0, -2.0, 0.0, 2.0, 4.0, 8.0, 20.0] {
                    b.push(ci + side * (0.5 * s + k * w));
                }
            }
            src = src.with_breaks(i, b);
        }
        src
    }

    /// The k-th eigenfunction of `setting`.
    pub fn eigenfunction(setting: &Setting, k: &MultiIndex) -> Self {
        let d = setting.dim();
        let support = (0..d)
            .map(|i| {
                let r = match setting {
                    Setting::LaguerreStandard(_) => 4.0 * k.0[i] as f64 + 80.0,
                    _ => (4.0 * k.0[i] as f64 + 2.0).sqrt() + 9.0,
                };
                if setting.half_line() {
                    (0.0, r)
                } else {
                    (-r, r)
                }
            })
            .collect();
        let factors = (0..d)
            .map(|i| {
                let s = setting.clone();
                let ki = k.0[i];
                Arc::new(move |v: f64| {
                    if s.half_line() && v < 0.0 {
                        return 0.0;
                    }
                    s.eigen_1d_all(i, ki, v)[ki]
                }) as Factor
            })
            .collect();
        Source::separable(support, factors)
    }

    /// Pointwise product with a function of y that keeps the hints of `self`.
    pub fn map<G>(self, g: G) -> Self
    where
        G: Fn(&[f64], f64) -> f64 + Send + Sync + 'static,
    {
        let f = self.f.clone();
        Source { f: Arc::new(move |y| g(y, f(y))), factors: None, ..self }
    }

    /// f1^lambda f2^{1-lambda} for nonnegative f1, f2.
    pub fn geometric_mean(f1: &Source, f2: &Source, lambda: f64) -> Self {
        let (a, b) = (f1.f.clone(), f2.f.clone());
        let support = f1
            .support
            .iter()
            .zip(&f2.support)
            .map(|(p, q)| (p.0.max(q.0), p.1.min(q.1)))
            .collect();
        let mut breaks = f1.breaks.clone();
        for (i, bb) in f2.breaks.iter().enumerate() {
            breaks[i].extend(bb);
        }
        let factors = match (&f1.factors, &f2.factors) {
            (Some(p), Some(q)) => Some(
                p.iter()
                    .zip(q)
                    .map(|(g1, g2)| {
                        let (g1, g2) = (g1.clone(), g2.clone());
                        Arc::new(move |v: f64| g1(v).max(0.0).powf(lambda) * g2(v).max(0.0).powf(1.0 - lambda)) as Factor
                    })
                    .collect(),
            ),
            _ => None,
        };
        Source {
            d: f1.d,
            f: Arc::new(move |y| a(y).max(0.0).powf(lambda) * b(y).max(0.0).powf(1.0 - lambda)),
            factors,
            support,
            breaks,
            scale: f1.scale.min(f2.scale),
        }
    }
}

/// A function sampled on a tensor grid with attached measure.
#[derive(Debug, Clone)]
pub struct GridFunction {
    pub axes: Vec<Rule1D>,
    pub values: Vec<f64>,
    pub measure: Measure,
}

impl GridFunction {
    pub fn sample(source: &Source, axes: Vec<Rule1D>, measure: Measure) -> Self {
        let mut values = Vec::new();
        for_each_node(&axes, |y, _| values.push(source.eval(y)));
        GridFunction { axes, values, measure }
    }

    pub fn from_values(axes: Vec<Rule1D>, values: Vec<f64>, measure: Measure) -> Self {
        assert_eq!(values.len(), axes.iter().map(|a| a.len()).product::<usize>());
        GridFunction { axes, values, measure }
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    /// Sample `source` on `panels` equal Gauss-Legendre panels per axis of its
    /// support box, refined at its breakpoints (tanh-sinh on panels ending at 0).
    pub fn on_support(source: &Source, panels: usize, order: usize, measure: Measure) -> Self {
        let axes = (0..source.dim())
            .map(|i| {
                let (lo, hi) = source.support[i];
                let w = (hi - lo) / panels.max(1) as f64;
                let extra = (1..panels).map(|j| lo + j as f64 * w).chain(source.breaks[i].iter().copied());
                Rule1D::composite(&crate::quad::clean_breaks(lo, hi, extra), &[0.0], order, 5)
            })
            .collect();
        GridFunction::sample(source, axes, measure)
    }

    /// (int |f|^p weight dmeasure)^{1/p}; for p = inf the max of |f| over nodes with weight > 0.
    pub fn weighted_norm<W: Fn(&[f64]) -> f64>(&self, p: f64, weight: W) -> f64 {
        if p.is_infinite() {
            let mut m: f64 = 0.0;
            let mut idx = 0;
            for_each_node(&self.axes, |y, _| {
                if weight(y) > 0.0 {
                    m = m.max(self.values[idx].abs());
                }
                idx += 1;
            });
            return m;
        }
        self.integrate(|y, v| v.abs().powf(p) * weight(y)).powf(1.0 / p)
    }

    pub fn norm(&self, p: f64) -> f64 {
        self.weighted_norm(p, |_| 1.0)
    }

    /// All tensor nodes in row-major order.
    pub fn points(&self) -> Vec<Vec<f64>> {
        let mut pts = Vec::with_capacity(self.values.len());
        for_each_node(&self.axes, |y, _| pts.push(y.to_vec()));
        pts
    }

    /// sum over nodes of weight * g(y, f(y)) * measure density(y)
    pub fn integrate<G: FnMut(&[f64], f64) -> f64>(&self, mut g: G) -> f64 {
        let mut s = 0.0;
        let mut idx = 0;
        let vals = &self.values;
        let m = &self.measure;
        for_each_node(&self.axes, |y, w| {
            s += w * m.density(y) * g(y, vals[idx]);
            idx += 1;
        });
        s
    }
}

/// Visit every node of the tensor grid with its product weight.
pub fn for_each_node<F: FnMut(&[f64], f64)>(axes: &[Rule1D], mut visit: F) {
    let d = axes.len();
    if axes.iter().any(|a| a.is_empty()) {
        return;
    }
    let mut idx = vec![0usize; d];
    let mut y = vec![0.0; d];
    loop {
        let mut w = 1.0;
        for i in 0..d {
            y[i] = axes[i].nodes[idx[i]];
            w *= axes[i].weights[idx[i]];
        }
        visit(&y, w);
        let mut i = d;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < axes[i].len() {
                break;
            }
            idx[i] = 0;
        }
    }
}
