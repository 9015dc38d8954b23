use proptest::prelude::*;

use potentia::quad::adaptive;
use potentia::regions::{classify, equivalence_check, interpolation_plan, ExponentTuple, Status, Theorem};
use potentia::relations::{reflect, sign_patterns};
use potentia::specfun::{bessel_i_ratio, generalized_hermite_1d_all, laguerre_ell_1d_all, laguerre_phi_1d_all};
use potentia::{MultiIndex, Setting, TypeIndex};

fn setting(kind: usize, alpha: Vec<f64>) -> Setting {
    let d = alpha.len();
    let a = TypeIndex::new(alpha).unwrap();
    match kind {
        0 => Setting::hermite(d),
        1 => Setting::LaguerreHermite(a),
        2 => Setting::LaguerreConv(a),
        3 => Setting::Dunkl(a),
        _ => Setting::LaguerreStandard(a.0[0]),
    }
}

fn arb_setting() -> impl Strategy<Value = Setting> {
    (0..5usize, prop::collection::vec(-0.5f64..3.0, 1..=2)).prop_map(|(k, a)| {
        if k == 4 {
            setting(4, vec![a[0]])
        } else {
            setting(k, a)
        }
    })
}

/// Quarter-step type indices in [-1/2, 3], some half-integer.
fn arb_alpha(d: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec((0..15i32).prop_map(|n| -0.5 + 0.25 * n as f64), d)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn eigenvalues_follow_the_spectra(s in arb_setting(), k in prop::collection::vec(0..20usize, 2)) {
        let d = s.dim();
        let k = MultiIndex(k[..d].to_vec());
        let n = k.length() as f64;
        let al: f64 = (0..d).map(|i| s.alpha_at(i)).sum();
        let want = match s {
            Setting::Hermite { .. } => 2.0 * n + d as f64,
            Setting::LaguerreHermite(_) | Setting::LaguerreConv(_) => 4.0 * n + 2.0 * al + 2.0 * d as f64,
            Setting::Dunkl(_) => 2.0 * n + 2.0 * al + 2.0 * d as f64,
            Setting::LaguerreStandard(a) => n + a / 2.0 + 0.5,
        };
        prop_assert!((s.eigenvalue(&k) - want).abs() <= 1e-12 * want);
    }

    #[test]
    fn type_index_flags(a in prop::collection::vec(-0.99f64..4.0, 1..4), halves in prop::collection::vec(-1i32..8, 1..4)) {
        let t = TypeIndex::new(a.clone()).unwrap();
        prop_assert_eq!(t.is_half_integer(), a.iter().all(|v| (2.0 * v).fract() == 0.0));
        prop_assert_eq!(t.in_admissible_range(), a.iter().all(|v| *v >= -0.5));
        let h = TypeIndex::new(halves.iter().map(|n| *n as f64 / 2.0).collect()).unwrap();
        prop_assert!(h.is_half_integer());
    }

    #[test]
    fn bessel_ratio_positive_and_increasing(nu in -0.5f64..5.0, s1 in 0.0f64..50.0, ds in 1e-3f64..5.0) {
        let s2 = (s1 + ds).min(50.0);
        let (v1, v2) = (bessel_i_ratio(nu, s1).value(), bessel_i_ratio(nu, s2).value());
        prop_assert!(v1 > 0.0 && v1.is_finite());
        prop_assert!(v2 >= v1 * (1.0 - 1e-13), "nu={} s {} -> {}: {} {}", nu, s1, s2, v1, v2);
    }

    #[test]
    fn eigenfunctions_stay_finite(s in arb_setting(), x in 1e-3f64..30.0, neg in any::<bool>()) {
        let x = if neg && !s.half_line() { -x } else { x };
        for v in s.eigen_1d_all(0, 200, x) {
            prop_assert!(v.is_finite());
        }
    }

    #[test]
    fn phi_is_ell_times_power(a in -0.5f64..3.0, x in 0.01f64..10.0) {
        let phi = laguerre_phi_1d_all(30, a, x);
        let ell = laguerre_ell_1d_all(30, a, x);
        let w = x.powf(a + 0.5);
        // near a sign change the error is set by the neighbouring terms
        for k in 0..phi.len() {
            let env = phi[k.saturating_sub(1)..(k + 2).min(phi.len())].iter().fold(0.0f64, |m, v| m.max(v.abs()));
            prop_assert!((phi[k] - w * ell[k]).abs() <= 1e-12 * env.max(1e-290), "k={}", k);
        }
    }

    #[test]
    fn even_generalized_hermite_is_half_ell(ai in 0..3usize, x in 0.01f64..8.0) {
        let a = [-0.5, 0.0, 1.5][ai];
        let h = generalized_hermite_1d_all(8, a, x);
        let l = laguerre_ell_1d_all(5, a, x);
        let env = |k: usize| l[k.saturating_sub(1)..=k + 1].iter().fold(0.0f64, |m, v| m.max(v * v));
        for k in 0..=4 {
            let (lhs, rhs) = (h[2 * k].powi(2), 0.5 * l[k].powi(2));
            prop_assert!((lhs - rhs).abs() <= 1e-12 * env(k).max(1e-290), "k={}", k);
        }
    }

    #[test]
    fn heat_kernels_positive_and_symmetric(
        s in arb_setting(),
        t in 0.01f64..5.0,
        x in prop::collection::vec(0.01f64..4.0, 2),
        y in prop::collection::vec(0.01f64..4.0, 2),
        flip in any::<bool>(),
    ) {
        let d = s.dim();
        let (mut x, y) = (x[..d].to_vec(), y[..d].to_vec());
        if flip && !s.half_line() {
            x[0] = -x[0];
        }
        let (g, h) = (s.heat(t, &x, &y), s.heat(t, &y, &x));
        prop_assert!(g > 0.0 && g.is_finite());
        prop_assert!((g - h).abs() <= 1e-13 * g);
    }

    #[test]
    fn reflections_preserve_the_density(a in prop::collection::vec(-0.5f64..3.0, 1..=3), x in prop::collection::vec(-5.0f64..5.0, 3)) {
        let d = a.len();
        let s = Setting::Dunkl(TypeIndex::new(a).unwrap());
        let x = &x[..d];
        for e in sign_patterns(d) {
            prop_assert_eq!(s.density(&reflect(&e, x)), s.density(x));
        }
    }

    #[test]
    fn weighted_hermite_matches_unweighted_at_zero_weights(
        d in 1..4usize,
        ip in 0.01f64..0.99,
        frac in 0.0f64..1.0,
        sigma in 0.05f64..2.5,
    ) {
        // 1 < p <= q < inf, a = b = 0
        let p = 1.0 / ip;
        let q = 1.0 / (ip * frac).max(1e-3);
        let t = ExponentTuple::new(d, p, q.max(p), sigma).unwrap();
        let her = classify("hermite", &t).unwrap().status == Status::Admissible;
        let hwt = classify("hermite-weighted", &t).unwrap().status == Status::Admissible;
        prop_assert_eq!(her, hwt);
    }

    #[test]
    fn admissible_q_form_an_interval(
        th in prop::sample::select(vec!["hermite", "hermite-weighted", "laguerre-hermite", "laguerre", "laguerre-weighted", "dunkl", "dunkl-weighted"]),
        alpha in arb_alpha(2),
        d in 1..=2usize,
        p in prop::sample::select(vec![1.0, 1.25, 1.5, 2.0, 3.0, 4.0, 8.0, f64::INFINITY]),
        sigma in 0.05f64..2.0,
        a in -0.2f64..0.4,
        b in -0.2f64..0.4,
    ) {
        let base = ExponentTuple::new(d, p, 1.0, sigma).unwrap().weights(a, b).alpha(alpha[..d].to_vec()).unwrap();
        let flags: Vec<bool> = (0..=64)
            .map(|i| {
                let iq = i as f64 / 64.0;
                let t = ExponentTuple { q: if iq == 0.0 { f64::INFINITY } else { 1.0 / iq }, ..base.clone() };
                classify(th, &t).unwrap().status == Status::Admissible
            })
            .collect();
        let changes = flags.windows(2).filter(|w| w[0] != w[1]).count();
        prop_assert!(changes <= 2, "{:?}", flags);
        if changes == 2 {
            prop_assert!(!flags[0] || !flags[64]);
        }
    }

    #[test]
    fn classify_is_total(
        th in prop::sample::select(Theorem::ALL.to_vec()),
        d in 1..=2usize,
        alpha in arb_alpha(2),
        p in 1.0f64..10.0,
        q in 1.0f64..10.0,
        sigma in 0.05f64..3.0,
        a in -1.0f64..1.0,
        b in -1.0f64..1.0,
        r in 1.0f64..8.0,
        eta in -1.0f64..1.0,
    ) {
        let t = ExponentTuple::new(d, p, q, sigma).unwrap()
            .weights(a, b)
            .alpha(alpha[..d].to_vec()).unwrap()
            .big(a, b)
            .kernel(r, eta);
        let v = classify(th.id(), &t).unwrap();
        prop_assert_eq!(v.status == Status::Admissible, v.violated.is_empty());
    }

    #[test]
    fn interpolation_plans_are_consistent(
        alpha in prop::collection::vec(-0.5f64..3.0, 1..=3),
        p in 1.0f64..4.0,
        dq in 0.0f64..4.0,
        sigma in 0.05f64..2.05,
        a in -0.1f64..0.2,
        b in -0.1f64..0.2,
    ) {
        let d = alpha.len();
        let plan = interpolation_plan(&TypeIndex::new(alpha.clone()).unwrap(), sigma, a, b).unwrap();
        prop_assert!(plan.residual() <= 1e-14);
        prop_assert!((0.0..=1.0).contains(&plan.lambda));
        prop_assert!(plan.beta.is_half_integer() || plan.axis.is_some());
        let t = ExponentTuple::new(d, p, p + dq, sigma).unwrap().weights(a, b).alpha(alpha).unwrap();
        prop_assert!(equivalence_check(&t).unwrap().consistent);
    }
}

fn inner(s: &Setting, j: usize, k: usize, lo: f64, hi: f64) -> f64 {
    let f = |x: f64| {
        let e = s.eigen_1d_all(0, j.max(k), x);
        e[j] * e[k] * s.density_1d(0, x)
    };
    let n = 16;
    (0..n)
        .map(|i| {
            let (a, b) = (lo + (hi - lo) * i as f64 / n as f64, lo + (hi - lo) * (i + 1) as f64 / n as f64);
            adaptive(&f, a, b, 1e-14).0
        })
        .sum()
}

#[test]
fn eigenfunctions_are_orthonormal() {
    let cases = [
        (setting(0, vec![0.0]), -12.0, 12.0),
        (setting(1, vec![-0.5]), 0.0, 12.0),
        (setting(1, vec![0.7]), 0.0, 12.0),
        (setting(2, vec![0.0]), 0.0, 12.0),
        (setting(2, vec![1.5]), 0.0, 12.0),
        (setting(3, vec![0.5]), -12.0, 12.0),
        (setting(4, vec![0.7]), 0.0, 120.0),
    ];
    for (s, lo, hi) in &cases {
        for j in 0..=8 {
            for k in j..=8 {
                let v = inner(s, j, k, *lo, *hi);
                let want = if j == k { 1.0 } else { 0.0 };
                assert!((v - want).abs() < 1e-8, "{s:?} <{j},{k}> = {v}");
            }
        }
    }
}

#[test]
fn semigroup_property() {
    let cases = [
        (setting(0, vec![0.0]), -10.0, 10.0),
        (setting(1, vec![0.7]), 0.0, 10.0),
        (setting(2, vec![0.5]), 0.0, 10.0),
        (setting(3, vec![0.5]), -10.0, 10.0),
        (setting(4, vec![0.5]), 0.0, 80.0),
    ];
    let (t, s) = (0.3, 0.5);
    for (st, lo, hi) in &cases {
        let heat = |t: f64, x: f64, y: f64| st.heat(t, &[x], &[y]);
        for &(x, y) in &[(0.4, 1.1), (1.3, 0.2), (0.9, 0.9)] {
            let f = |z: f64| heat(t, x, z) * heat(s, z, y) * st.density_1d(0, z);
            let n = 32;
            let v: f64 = (0..n)
                .map(|i| adaptive(&f, lo + (hi - lo) * i as f64 / n as f64, lo + (hi - lo) * (i + 1) as f64 / n as f64, 1e-13).0)
                .sum();
            let want = heat(t + s, x, y);
            assert!(((v - want) / want).abs() < 1e-6, "{st:?} x={x} y={y}: {v} vs {want}");
        }
    }
}
