//! Admissibility predicates for the L^p - L^q theorems and the parameter
//! calculus of the type-index interpolation.
//!
//! Clauses are evaluated in exact rational arithmetic on the given floats
//! (every finite f64 is a dyadic rational), with 1/inf = 0.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::TypeIndex;

type Q = BigRational;

/// Exponents entering a weighted L^p - L^q estimate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExponentTuple {
    pub d: usize,
    pub p: f64,
    pub q: f64,
    /// L^p(||x||^{ap}) on the source side
    pub a: f64,
    /// L^q(||x||^{-bq}) on the target side
    pub b: f64,
    pub sigma: f64,
    pub alpha: Option<TypeIndex>,
    /// Weights x^{Ap}, x^{-Bq} of the one-dimensional variants.
    pub big_a: Option<f64>,
    pub big_b: Option<f64>,
    /// Kernel exponents of the weighted convolution inequality.
    pub r: Option<f64>,
    pub eta: Option<f64>,
}

impl ExponentTuple {
    pub fn new(d: usize, p: f64, q: f64, sigma: f64) -> Result<Self> {
        if d == 0 {
            return Err(Error::Invalid("dimension must be positive".into()));
        }
        for (name, v) in [("p", p), ("q", q)] {
            if !(v >= 1.0) {
                return Err(Error::Invalid(format!("{name} = {v} must lie in [1, inf]")));
            }
        }
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::Invalid(format!("sigma = {sigma} must be positive")));
        }
        Ok(ExponentTuple { d, p, q, a: 0.0, b: 0.0, sigma, alpha: None, big_a: None, big_b: None, r: None, eta: None })
    }

    pub fn weights(mut self, a: f64, b: f64) -> Self {
        self.a = a;
        self.b = b;
        self
    }

    pub fn alpha(mut self, alpha: Vec<f64>) -> Result<Self> {
        self.alpha = Some(TypeIndex::new(alpha)?);
        Ok(self)
    }

    pub fn big(mut self, big_a: f64, big_b: f64) -> Self {
        self.big_a = Some(big_a);
        self.big_b = Some(big_b);
        self
    }

    pub fn kernel(mut self, r: f64, eta: f64) -> Self {
        self.r = Some(r);
        self.eta = Some(eta);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    Admissible,
    Excluded,
    WeakTypeOnly,
    OutsideTheoremScope,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Admissible => "admissible",
            Status::Excluded => "excluded",
            Status::WeakTypeOnly => "weak-type-only",
            Status::OutsideTheoremScope => "outside-scope",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    /// Keys of the violated clauses (for WeakTypeOnly: the strong-type exclusion hit).
    pub violated: Vec<String>,
    pub note: Option<String>,
}

impl Verdict {
    pub fn is_admissible(&self) -> bool {
        self.status == Status::Admissible
    }
}

/// The encoded estimates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Theorem {
    /// Riesz potential, unweighted.
    Hls,
    /// Riesz potential, power weights.
    SteinWeiss,
    Hermite,
    HermiteWeighted,
    LaguerreHermite,
    LaguerreHermiteWeighted,
    Laguerre,
    LaguerreWeighted,
    Dunkl,
    DunklWeighted,
    /// Hermite-type Laguerre potentials in d = 1 with weights x^{Ap}, x^{-Bq}.
    LaguerreHermite1d,
    /// Standard Laguerre potentials in d = 1, alpha >= -1/2.
    Standard1d,
    /// Standard Laguerre potentials in d = 1, alpha >= 0.
    Standard1dPositive,
    /// Weighted Young inequality for convolutions.
    WeightedYoung,
}

impl Theorem {
    pub const ALL: [Theorem; 14] = [
        Theorem::Hls,
        Theorem::SteinWeiss,
        Theorem::Hermite,
        Theorem::HermiteWeighted,
        Theorem::LaguerreHermite,
        Theorem::LaguerreHermiteWeighted,
        Theorem::Laguerre,
        Theorem::LaguerreWeighted,
        Theorem::Dunkl,
        Theorem::DunklWeighted,
        Theorem::LaguerreHermite1d,
        Theorem::Standard1d,
        Theorem::Standard1dPositive,
        Theorem::WeightedYoung,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            Theorem::Hls => "hls",
            Theorem::SteinWeiss => "stein-weiss",
            Theorem::Hermite => "hermite",
            Theorem::HermiteWeighted => "hermite-weighted",
            Theorem::LaguerreHermite => "laguerre-hermite",
            Theorem::LaguerreHermiteWeighted => "laguerre-hermite-weighted",
            Theorem::Laguerre => "laguerre",
            Theorem::LaguerreWeighted => "laguerre-weighted",
            Theorem::Dunkl => "dunkl",
            Theorem::DunklWeighted => "dunkl-weighted",
            Theorem::LaguerreHermite1d => "laguerre-hermite-1d",
            Theorem::Standard1d => "standard-1d",
            Theorem::Standard1dPositive => "standard-1d-positive",
            Theorem::WeightedYoung => "weighted-young",
        }
    }

    /// Remarks that are not verdicts (sharpness statements).
    pub fn remark(&self) -> Option<&'static str> {
        match self {
            Theorem::Hermite | Theorem::LaguerreHermite => {
                Some("for sigma < d/2 and p = 1 the q-range 1 <= q < d/(d-2 sigma) is optimal")
            }
            Theorem::HermiteWeighted => Some("the q-range depending on p is not optimal"),
            Theorem::LaguerreWeighted => Some("not optimal in the admissible power weights"),
            _ => None,
        }
    }

    fn needs_alpha(&self) -> bool {
        !matches!(self, Theorem::Hls | Theorem::SteinWeiss | Theorem::Hermite | Theorem::HermiteWeighted | Theorem::WeightedYoung)
    }
}

impl FromStr for Theorem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Theorem::ALL.iter().copied().find(|t| t.id() == s).ok_or_else(|| Error::UnknownTheorem(s.to_string()))
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

fn rat(x: f64) -> Q {
    Q::from_float(x).expect("finite value")
}

fn int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn half() -> Q {
    Q::new(BigInt::one(), BigInt::from(2))
}

fn inv(p: f64) -> Q {
    if p.is_infinite() {
        Q::zero()
    } else {
        rat(p).recip()
    }
}

/// Exact parameters of one classification.
#[derive(Debug, Clone)]
struct Exact {
    d: Q,
    ip: Q,
    iq: Q,
    p_inf: bool,
    q_inf: bool,
    sigma: Q,
    a: Q,
    b: Q,
    alpha: Vec<Q>,
}

impl Exact {
    fn from_tuple(t: &ExponentTuple) -> Self {
        Exact {
            d: int(t.d as i64),
            ip: inv(t.p),
            iq: inv(t.q),
            p_inf: t.p.is_infinite(),
            q_inf: t.q.is_infinite(),
            sigma: rat(t.sigma),
            a: rat(t.a),
            b: rat(t.b),
            alpha: t.alpha.as_ref().map(|a| a.0.iter().map(|v| rat(*v)).collect()).unwrap_or_default(),
        }
    }

    fn abs_alpha(&self) -> Q {
        self.alpha.iter().fold(Q::zero(), |s, v| s + v)
    }

    fn p_is_one(&self) -> bool {
        self.ip.is_one()
    }
}

#[derive(Default)]
struct Clauses {
    violated: Vec<String>,
    note: Option<String>,
}

impl Clauses {
    fn check(&mut self, key: &str, ok: bool) {
        if !ok {
            self.violated.push(key.to_string());
        }
    }

    fn verdict(self) -> Verdict {
        let status = if self.violated.is_empty() { Status::Admissible } else { Status::Excluded };
        Verdict { status, violated: self.violated, note: self.note }
    }
}

fn check_alpha_range(c: &mut Clauses, e: &Exact) {
    let lo = -half();
    c.check("α∈[−1/2,∞)^d", e.alpha.iter().all(|a| *a >= lo));
}

/// Strong-type region of the unweighted Hermite-type estimate with dimension `dim`.
fn hermite_unweighted(e: &Exact, dim: &Q) -> Verdict {
    let mut c = Clauses::default();
    let s = &e.sigma;
    let half_dim = dim * half();
    if *s >= half_dim {
        if *s == half_dim {
            if e.p_inf && e.iq.is_one() {
                c.check("σ=d/2 excludes p=∞, q=1", false);
            }
            if e.p_is_one() && e.q_inf {
                c.check("σ=d/2 excludes p=1, q=∞", false);
            }
        }
        if e.iq > e.ip {
            c.note = Some("q < p with σ ≥ d/2: asserted in the statement, argued by interpolation".into());
        }
        return c.verdict();
    }
    let two_s_d = int(2) * s / dim;
    c.check("1/p−2σ/d≤1/q", &e.ip - &two_s_d <= e.iq);
    c.check("1/q<1/p+2σ/d", e.iq < &e.ip + &two_s_d);
    if !c.violated.is_empty() {
        return c.verdict();
    }
    if e.p_is_one() && e.iq == Q::one() - &two_s_d {
        return Verdict { status: Status::WeakTypeOnly, violated: vec!["p=1, q=d/(d−2σ)".into()], note: None };
    }
    if e.ip == two_s_d && e.q_inf {
        c.check("p=d/(2σ), q=∞ excluded", false);
    }
    c.verdict()
}

/// Shared hypotheses 1 < p <= q < inf, a < D/p', b < D/q, a + b >= 0, and the
/// additional q-condition below `sigma_split`.
fn weighted_core(e: &Exact, c: &mut Clauses, dim: &Q, dim_key: &str, sigma_split: &Q) {
    c.check("1<p", e.ip < Q::one());
    c.check("p≤q", e.iq <= e.ip);
    c.check("q<∞", !e.q_inf);
    c.check(&format!("a<{dim_key}/p′"), e.a < dim * (Q::one() - &e.ip));
    c.check(&format!("b<{dim_key}/q"), e.b < dim * &e.iq);
    c.check("a+b≥0", &e.a + &e.b >= Q::zero());
    if e.sigma < *sigma_split {
        let rhs = &e.ip - (int(2) * &e.sigma - &e.a - &e.b) / dim;
        c.check(&format!("1/q≥1/p−(2σ−a−b)/{dim_key}"), e.iq >= rhs);
    }
}

fn laguerre_unweighted(e: &Exact) -> Verdict {
    let mut c = Clauses::default();
    check_alpha_range(&mut c, e);
    c.check("p<∞", !e.p_inf);
    c.check("q<∞", !e.q_inf);
    let n = e.abs_alpha() + &e.d;
    if e.sigma < n {
        let r = &e.sigma / &n;
        c.check("1/p−σ/(|α|+d)≤1/q", &e.ip - &r <= e.iq);
        c.check("1/q<1/p+σ/(|α|+d)", e.iq < &e.ip + &r);
        if c.violated.is_empty() && e.p_is_one() && e.iq == Q::one() - &r {
            c.check("p=1, q=(|α|+d)/(|α|+d−σ) excluded", false);
        }
    }
    c.verdict()
}

fn laguerre_weighted(e: &Exact) -> Verdict {
    let mut c = Clauses::default();
    check_alpha_range(&mut c, e);
    let n = e.abs_alpha() + &e.d;
    weighted_core(e, &mut c, &(int(2) * &n), "(2|α|+2d)", &n);
    c.verdict()
}

fn one_dim_variant(t: &ExponentTuple, e: &Exact, which: Theorem) -> Result<Verdict> {
    let (Some(ba), Some(bb)) = (t.big_a, t.big_b) else {
        return Err(Error::Invalid(format!("{which} needs the weight exponents A and B")));
    };
    if t.d != 1 {
        return Ok(Verdict {
            status: Status::OutsideTheoremScope,
            violated: vec!["d=1".into()],
            note: None,
        });
    }
    let (ba, bb) = (rat(ba), rat(bb));
    let al = e.alpha[0].clone();
    let mut c = Clauses::default();
    match which {
        Theorem::Standard1dPositive => c.check("α≥0", al >= Q::zero()),
        _ => c.check("α≥−1/2", al >= -half()),
    }
    c.check("1<p", e.ip < Q::one());
    c.check("p≤q", e.iq <= e.ip);
    c.check("q<∞", !e.q_inf);
    let ipp = Q::one() - &e.ip;
    let delta = &e.ip - &e.iq;
    let sum = &ba + &bb;
    match which {
        Theorem::LaguerreHermite1d => {
            c.check("A<1/p′+α+1/2", ba < &ipp + &al + half());
            c.check("B<1/q+α+1/2", bb < &e.iq + &al + half());
            c.check("A+B≥(2α+1)(1/p−1/q)", sum >= (int(2) * &al + Q::one()) * &delta);
            if e.sigma < &al + Q::one() {
                c.check("1/q≥1/p+A+B−2σ", e.iq >= &e.ip + &sum - int(2) * &e.sigma);
            }
        }
        Theorem::Standard1d => {
            c.check("A<1/p′+α/2", ba < &ipp + &al * half());
            c.check("B<1/q+α/2", bb < &e.iq + &al * half());
            c.check("A+B≥α(1/p−1/q)", sum >= &al * &delta);
            if e.sigma < &al + Q::one() {
                c.check("1/q≥1/p+A+B−σ", e.iq >= &e.ip + &sum - &e.sigma);
            }
        }
        _ => {
            c.check("A<1/p′", ba < ipp);
            c.check("B<1/q", bb < e.iq);
            c.check("A+B≥0", sum >= Q::zero());
            if e.sigma < Q::one() {
                c.check("1/q≥1/p+A+B−σ", e.iq >= &e.ip + &sum - &e.sigma);
            }
        }
    }
    Ok(c.verdict())
}

fn weighted_young(t: &ExponentTuple, e: &Exact) -> Result<Verdict> {
    let (Some(r), Some(eta)) = (t.r, t.eta) else {
        return Err(Error::Invalid("weighted-young needs r and eta".into()));
    };
    if !(r >= 1.0) {
        return Err(Error::Invalid(format!("r = {r} must lie in [1, inf]")));
    }
    let ir = inv(r);
    let eta = rat(eta);
    let one = Q::one();
    let mut c = Clauses::default();
    c.check("1<p<∞", e.ip < one && !e.p_inf);
    c.check("1<q<∞", e.iq < one && !e.q_inf);
    c.check("1<r<∞", ir < one && !r.is_infinite());
    c.check("1/q≤1/p+1/r", e.iq <= &e.ip + &ir);
    let lhs = &e.iq - &e.ip - ((&e.a + &e.b) / &e.d - &one);
    c.check("1/q−1/p−((a+b)/d−1)=1/r+η/d", lhs == &ir + &eta / &e.d);
    c.check("a<d/p′", e.a < &e.d * (&one - &e.ip));
    c.check("b<d/q", e.b < &e.d * &e.iq);
    c.check("η<d/r′", eta < &e.d * (&one - &ir));
    c.check("a+b≥0", &e.a + &e.b >= Q::zero());
    c.check("a+η≥0", &e.a + &eta >= Q::zero());
    c.check("b+η≥0", &e.b + &eta >= Q::zero());
    Ok(c.verdict())
}

/// Classify a tuple against the hypotheses of `theorem`.
pub fn classify(theorem: &str, t: &ExponentTuple) -> Result<Verdict> {
    classify_theorem(theorem.parse()?, t)
}

pub fn classify_theorem(th: Theorem, t: &ExponentTuple) -> Result<Verdict> {
    if th.needs_alpha() {
        match &t.alpha {
            None => return Err(Error::Invalid(format!("{th} needs a type index alpha"))),
            Some(a) if a.dim() != t.d => {
                return Err(Error::Invalid(format!("alpha has {} entries but d = {}", a.dim(), t.d)))
            }
            _ => {}
        }
    }
    let e = Exact::from_tuple(t);
    classify_exact(th, t, &e)
}

fn classify_exact(th: Theorem, t: &ExponentTuple, e: &Exact) -> Result<Verdict> {
    let d = &e.d;
    Ok(match th {
        Theorem::Hls => {
            let mut c = Clauses::default();
            c.check("σ<d", e.sigma < *d);
            c.check("1≤p<d/σ", e.ip > &e.sigma / d);
            c.check("1/q=1/p−σ/d", e.iq == &e.ip - &e.sigma / d);
            if c.violated.is_empty() && e.p_is_one() {
                return Ok(Verdict { status: Status::WeakTypeOnly, violated: vec!["p=1".into()], note: None });
            }
            c.verdict()
        }
        Theorem::SteinWeiss => {
            let mut c = Clauses::default();
            c.check("σ<d", e.sigma < *d);
            c.check("1<p", e.ip < Q::one());
            c.check("p≤q", e.iq <= e.ip);
            c.check("q<∞", !e.q_inf);
            c.check("a<d/p′", e.a < d * (Q::one() - &e.ip));
            c.check("b<d/q", e.b < d * &e.iq);
            c.check("a+b≥0", &e.a + &e.b >= Q::zero());
            c.check("1/q=1/p−(σ−a−b)/d", e.iq == &e.ip - (&e.sigma - &e.a - &e.b) / d);
            c.verdict()
        }
        Theorem::Hermite => hermite_unweighted(e, d),
        Theorem::HermiteWeighted => {
            let mut c = Clauses::default();
            weighted_core(e, &mut c, d, "d", &(d * half()));
            c.verdict()
        }
        Theorem::LaguerreHermite => {
            let mut c = Clauses::default();
            check_alpha_range(&mut c, e);
            let v = hermite_unweighted(e, d);
            if c.violated.is_empty() {
                v
            } else {
                c.violated.extend(v.violated);
                c.verdict()
            }
        }
        Theorem::LaguerreHermiteWeighted => {
            let mut c = Clauses::default();
            check_alpha_range(&mut c, e);
            weighted_core(e, &mut c, d, "d", &(d * half()));
            c.verdict()
        }
        Theorem::Laguerre | Theorem::Dunkl => laguerre_unweighted(e),
        Theorem::LaguerreWeighted | Theorem::DunklWeighted => laguerre_weighted(e),
        Theorem::LaguerreHermite1d | Theorem::Standard1d | Theorem::Standard1dPositive => one_dim_variant(t, e, th)?,
        Theorem::WeightedYoung => weighted_young(t, e)?,
    })
}

/// Bracketing of the first non-half-integer coordinate of alpha between
/// adjacent half-integers, with the rescaled sigma and weight exponents.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InterpolationPlan {
    pub alpha: TypeIndex,
    /// None when alpha is already half-integer (then beta = gamma = alpha).
    pub axis: Option<usize>,
    pub beta: TypeIndex,
    pub gamma: TypeIndex,
    pub lambda: f64,
    pub sigma: f64,
    pub a: f64,
    pub b: f64,
    pub sigma_beta: f64,
    pub sigma_gamma: f64,
    pub a_beta: f64,
    pub b_beta: f64,
    pub a_gamma: f64,
    pub b_gamma: f64,
}

impl InterpolationPlan {
    /// Largest of |alpha - lambda beta - (1-lambda) gamma| and the same for sigma, a, b, relative
    /// to max(1, |value|).
    pub fn residual(&self) -> f64 {
        let l = self.lambda;
        let comb = |x: f64, y: f64, v: f64| (v - l * x - (1.0 - l) * y).abs() / v.abs().max(1.0);
        let mut r: f64 = 0.0;
        for i in 0..self.alpha.dim() {
            r = r.max(comb(self.beta.0[i], self.gamma.0[i], self.alpha.0[i]));
        }
        r.max(comb(self.sigma_beta, self.sigma_gamma, self.sigma))
            .max(comb(self.a_beta, self.a_gamma, self.a))
            .max(comb(self.b_beta, self.b_gamma, self.b))
    }
}

fn is_half_integer(v: f64) -> bool {
    (2.0 * v).fract() == 0.0
}

pub fn interpolation_plan(alpha: &TypeIndex, sigma: f64, a: f64, b: f64) -> Result<InterpolationPlan> {
    if alpha.0.iter().any(|v| *v < -0.5) {
        return Err(Error::Domain("interpolation needs alpha_i >= -1/2".into()));
    }
    let d = alpha.dim() as f64;
    let axis = alpha.0.iter().position(|v| !is_half_integer(*v));
    let Some(i) = axis else {
        return Ok(InterpolationPlan {
            alpha: alpha.clone(),
            axis: None,
            beta: alpha.clone(),
            gamma: alpha.clone(),
            lambda: 0.5,
            sigma,
            a,
            b,
            sigma_beta: sigma,
            sigma_gamma: sigma,
            a_beta: a,
            b_beta: b,
            a_gamma: a,
            b_gamma: b,
        });
    };
    let ai = alpha.0[i];
    let (bi, gi) = ((2.0 * ai).floor() / 2.0, (2.0 * ai).ceil() / 2.0);
    let mut beta = alpha.clone();
    let mut gamma = alpha.clone();
    beta.0[i] = bi;
    gamma.0[i] = gi;
    let lambda = (gi - ai) / (gi - bi);
    let na = alpha.sum() + d;
    let rb = (beta.sum() + d) / na;
    let rg = (gamma.sum() + d) / na;
    Ok(InterpolationPlan {
        alpha: alpha.clone(),
        axis: Some(i),
        beta,
        gamma,
        lambda,
        sigma,
        a,
        b,
        sigma_beta: sigma * rb,
        sigma_gamma: sigma * rg,
        a_beta: a * rb,
        b_beta: b * rb,
        a_gamma: a * rg,
        b_gamma: b * rg,
    })
}

/// Verdicts for alpha and for the two bracketing indices of its plan.
#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceReport {
    pub plan: InterpolationPlan,
    pub alpha: Verdict,
    pub beta: Verdict,
    pub gamma: Verdict,
    /// The case split sigma >= |.| + d agrees across the three.
    pub same_split: bool,
    pub consistent: bool,
}

/// The hypotheses of the weighted Laguerre estimate hold for (alpha, sigma, a, b)
/// iff they hold for both (beta, sigma_beta, a_beta, b_beta) and
/// (gamma, sigma_gamma, a_gamma, b_gamma). The rescaled parameters are formed
/// exactly, so the comparison involves no rounding.
pub fn equivalence_check(t: &ExponentTuple) -> Result<EquivalenceReport> {
    let alpha = t.alpha.clone().ok_or_else(|| Error::Invalid("equivalence check needs alpha".into()))?;
    let plan = interpolation_plan(&alpha, t.sigma, t.a, t.b)?;
    let e = Exact::from_tuple(t);
    let na = e.abs_alpha() + &e.d;
    let scaled = |idx: &TypeIndex| -> Exact {
        let al: Vec<Q> = idx.0.iter().map(|v| rat(*v)).collect();
        let nb = al.iter().fold(Q::zero(), |s, v| s + v) + &e.d;
        let r = &nb / &na;
        Exact { alpha: al, sigma: &e.sigma * &r, a: &e.a * &r, b: &e.b * &r, ..e.clone() }
    };
    let (eb, eg) = (scaled(&plan.beta), scaled(&plan.gamma));
    let va = laguerre_weighted(&e);
    let vb = laguerre_weighted(&eb);
    let vg = laguerre_weighted(&eg);
    let split = |x: &Exact| x.sigma >= x.abs_alpha() + &x.d;
    let same_split = split(&e) == split(&eb) && split(&e) == split(&eg);
    let consistent = va.is_admissible() == (vb.is_admissible() && vg.is_admissible()) && same_split;
    Ok(EquivalenceReport { plan, alpha: va, beta: vb, gamma: vg, same_split, consistent })
}

/// Partner settings linked by a multiplication/substitution operator.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightLink {
    /// Convolution-type Laguerre with L^p(U dmu_alpha) to Hermite-type Laguerre with L^p(U~).
    ConvolutionToHermiteType(TypeIndex),
    /// Standard Laguerre with L^p(U) to Hermite-type Laguerre with L^p(U^), d = 1.
    StandardToHermiteType,
}

/// Power weights U = prod x_i^{u_i}, V = prod x_i^{v_i} mapped to the partner setting.
pub fn weight_translation(link: &WeightLink, p: f64, q: f64, u: &[f64], v: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    match link {
        WeightLink::ConvolutionToHermiteType(alpha) => {
            if u.len() != alpha.dim() || v.len() != alpha.dim() {
                return Err(Error::Invalid("weight exponents must match the dimension of alpha".into()));
            }
            let su = |c: &[f64], r: f64| -> Vec<f64> {
                c.iter().zip(&alpha.0).map(|(ci, ai)| ci + (2.0 * ai + 1.0) * (1.0 - 0.5 * r)).collect()
            };
            Ok((su(u, p), su(v, q)))
        }
        WeightLink::StandardToHermiteType => {
            if u.len() != 1 || v.len() != 1 {
                return Err(Error::Invalid("the standard link is one-dimensional".into()));
            }
            Ok((vec![2.0 * u[0] + 1.0 - 0.5 * p], vec![2.0 * v[0] + 1.0 - 0.5 * q]))
        }
    }
}

/// (a, b) of the weighted Laguerre estimate in d = 1 as (A, B) of the Hermite-type 1-d variant.
pub fn laguerre_to_hermite_type_exponents(alpha: f64, p: f64, q: f64, a: f64, b: f64) -> Result<(f64, f64)> {
    let link = WeightLink::ConvolutionToHermiteType(TypeIndex::new(vec![alpha])?);
    let (u, v) = weight_translation(&link, p, q, &[a * p], &[-b * q])?;
    Ok((u[0] / p, -v[0] / q))
}

/// (A, B) of the standard 1-d estimate as (A, B) of the Hermite-type 1-d variant.
pub fn standard_to_hermite_type_exponents(p: f64, q: f64, big_a: f64, big_b: f64) -> Result<(f64, f64)> {
    let (u, v) = weight_translation(&WeightLink::StandardToHermiteType, p, q, &[big_a * p], &[-big_b * q])?;
    Ok((u[0] / p, -v[0] / q))
}

fn fmt_exp(v: f64) -> String {
    if v.is_infinite() {
        "inf".into()
    } else {
        format!("{v}")
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_exp).unwrap_or_default()
}

pub const RECORD_HEADER: [&str; 15] =
    ["theorem", "d", "p", "q", "a", "b", "sigma", "alpha", "A", "B", "r", "eta", "status", "violated", "note"];

/// One export line: theorem, tuple fields, status, violated clauses (comma-joined), note.
pub fn record(th: Theorem, t: &ExponentTuple, v: &Verdict) -> Vec<String> {
    vec![
        th.id().into(),
        t.d.to_string(),
        fmt_exp(t.p),
        fmt_exp(t.q),
        fmt_exp(t.a),
        fmt_exp(t.b),
        fmt_exp(t.sigma),
        t.alpha.as_ref().map(|a| a.0.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";")).unwrap_or_default(),
        fmt_opt(t.big_a),
        fmt_opt(t.big_b),
        fmt_opt(t.r),
        fmt_opt(t.eta),
        v.status.to_string(),
        v.violated.join(","),
        v.note.clone().unwrap_or_default(),
    ]
}

/// Lower and upper ends (in 1/q) of the admissible set along a sampled sweep, for diagnostics.
pub fn admissible_inverse_q_range(th: Theorem, base: &ExponentTuple, qs: &[f64]) -> Result<Option<(f64, f64)>> {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &q in qs {
        let t = ExponentTuple { q, ..base.clone() };
        if classify_theorem(th, &t)?.is_admissible() {
            let iq = inv(q).to_f64().unwrap_or(f64::NAN);
            lo = lo.min(iq);
            hi = hi.max(iq);
        }
    }
    Ok(if lo.is_finite() { Some((lo, hi)) } else { None })
}
