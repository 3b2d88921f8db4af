use normctl::algebra::{self, AlgebraKind, UnitizedElement};
use normctl::fourier::{self, FunctionOnG, SpectralVector};
use normctl::harness::{sample_trial, SampleSpec, Strategy as Sampling};
use normctl::inversion::{self, Theorem};
use normctl::{Complex64, Group};
use proptest::prelude::*;

fn group() -> impl Strategy<Value = Group> {
    prop::collection::vec(1usize..=5, 1..=3).prop_map(|orders| Group::new(orders).unwrap())
}

fn values(n: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-5.0f64..5.0, -5.0f64..5.0), n)
        .prop_map(|v| v.into_iter().map(|(re, im)| Complex64::new(re, im)).collect())
}

fn function() -> impl Strategy<Value = FunctionOnG> {
    group().prop_flat_map(|g| values(g.size()).prop_map(move |v| FunctionOnG::new(g.clone(), v).unwrap()))
}

fn function_pair() -> impl Strategy<Value = (FunctionOnG, FunctionOnG)> {
    group().prop_flat_map(|g| {
        let h = g.clone();
        (values(g.size()), values(g.size())).prop_map(move |(a, b)| {
            (FunctionOnG::new(h.clone(), a).unwrap(), FunctionOnG::new(h.clone(), b).unwrap())
        })
    })
}

fn element_pair() -> impl Strategy<Value = (UnitizedElement, UnitizedElement)> {
    (function_pair(), (-2.0f64..2.0, -2.0f64..2.0), (-2.0f64..2.0, -2.0f64..2.0)).prop_map(|((f, g), a, b)| {
        (
            UnitizedElement::new(Complex64::new(a.0, a.1), f),
            UnitizedElement::new(Complex64::new(b.0, b.1), g),
        )
    })
}

fn kind() -> impl Strategy<Value = AlgebraKind> {
    (any::<bool>(), 1.0f64..6.0).prop_map(|(ap, p)| {
        if ap {
            AlgebraKind::ap(p).unwrap()
        } else {
            AlgebraKind::lp(p).unwrap()
        }
    })
}

fn scale(a: f64) -> f64 {
    a.max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn round_trip_and_direct_agree(f in function()) {
        let fh = fourier::forward(&f);
        let m = scale(fourier::norm_lp_g(&f, f64::INFINITY).unwrap());
        prop_assert!(fourier::inverse(&fh).max_abs_diff(&f) <= 1e-12 * m);
        prop_assert!(fourier::forward_direct(&f).max_abs_diff(&fh) <= 1e-12 * m);
        prop_assert!(fourier::inverse_direct(&fh).max_abs_diff(&f) <= 1e-12 * m);
    }

    #[test]
    fn plancherel(f in function()) {
        let lhs = fourier::norm_lp_g(&f, 2.0).unwrap();
        let rhs = fourier::norm_lp_dual(&fourier::forward(&f), 2.0).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * scale(lhs));
    }

    #[test]
    fn hausdorff_young_both_directions(f in function(), p in 1.0f64..=2.0) {
        let q = fourier::conjugate_exponent(p);
        let fh = fourier::forward(&f);
        let fwd = fourier::norm_lp_g(&f, p).unwrap();
        prop_assert!(fourier::norm_lp_dual(&fh, q).unwrap() <= fwd + 1e-12 * scale(fwd));
        let b = SpectralVector::new(f.group().clone(), f.values().to_vec()).unwrap();
        let inv = fourier::norm_lp_dual(&b, p).unwrap();
        prop_assert!(fourier::norm_lp_g(&fourier::inverse(&b), q).unwrap() <= inv + 1e-12 * scale(inv));
    }

    #[test]
    fn norms_nest(f in function(), p in 1.0f64..4.0, dp in 0.0f64..3.0) {
        let r = p + dp;
        let tol = 1e-12 * scale(fourier::norm_lp_g(&f, f64::INFINITY).unwrap());
        prop_assert!(fourier::norm_lp_g(&f, p).unwrap() <= fourier::norm_lp_g(&f, r).unwrap() + tol);
        let b = fourier::forward(&f);
        prop_assert!(fourier::norm_lp_dual(&b, r).unwrap() <= fourier::norm_lp_dual(&b, p).unwrap() + tol * b.len() as f64);
    }

    #[test]
    fn convolution_theorem((f, g) in function_pair()) {
        let lhs = fourier::forward(&algebra::convolve(&f, &g).unwrap());
        let rhs = fourier::forward(&f).hadamard(&fourier::forward(&g)).unwrap();
        let m = scale(fourier::norm_lp_g(&f, 1.0).unwrap() * fourier::norm_lp_g(&g, 1.0).unwrap());
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-12 * m);
    }

    #[test]
    fn gelfand_is_multiplicative((x, y) in element_pair()) {
        let xy = algebra::unitized_multiply(&x, &y).unwrap().gelfand();
        let (gx, gy) = (x.gelfand(), y.gelfand());
        let m = scale(gx.spectral_radius() * gy.spectral_radius());
        for ((a, b), c) in gx.spectrum().iter().zip(gy.spectrum()).zip(xy.spectrum()) {
            prop_assert!((a * b - c).norm() <= 1e-11 * m);
        }
    }

    #[test]
    fn norm_is_submultiplicative((x, y) in element_pair(), k in kind()) {
        let xy = algebra::unitized_multiply(&x, &y).unwrap();
        let rhs = x.norm(k) * y.norm(k);
        prop_assert!(xy.norm(k) <= rhs + 1e-12 * scale(rhs));
    }

    #[test]
    fn involution_is_isometric_and_conjugates((x, _) in element_pair(), k in kind()) {
        let xs = x.involution();
        prop_assert!((xs.norm(k) - x.norm(k)).abs() <= 1e-12 * scale(x.norm(k)));
        for (a, b) in x.gelfand().spectrum().iter().zip(xs.gelfand().spectrum()) {
            prop_assert!((a.conj() - b).norm() <= 1e-12 * scale(a.norm()));
        }
    }

    #[test]
    fn spectral_radius_below_norm((x, _) in element_pair(), k in kind()) {
        prop_assert!(x.gelfand().spectral_radius() <= x.norm(k) * (1.0 + 1e-12));
    }

    #[test]
    fn pipelines_agree_with_oracle(seed in any::<u64>(), k in kind(), delta in 0.05f64..1.0, boundary in any::<bool>()) {
        let strategy = if boundary { Sampling::BoundaryBiased } else { Sampling::SpectralRejection };
        let spec = SampleSpec::new(Group::new(vec![2, 3]).unwrap(), k, delta, seed, strategy).unwrap();
        let x = sample_trial(&spec, 0).unwrap();
        for theorem in Theorem::ALL {
            if theorem.check_applicable(k, delta).is_err() {
                continue;
            }
            let out = inversion::invert_with(theorem, &x, k, Some(delta)).unwrap();
            prop_assert!(out.is_sound(), "{theorem} {k} delta={delta}: {:?}", out.diagnostics);
            if let Some(d) = out.diagnostics.oracle_distance {
                prop_assert!(d <= 1e-9 * scale(out.actual_norm), "{theorem}: {d}");
            }
        }
    }

    #[test]
    fn sampling_is_deterministic(seed in any::<u64>(), trial in 0u64..1000, k in kind(), delta in 0.05f64..=1.0) {
        let spec = SampleSpec::new(Group::cyclic(6).unwrap(), k, delta, seed, Sampling::BoundaryBiased).unwrap();
        prop_assert_eq!(sample_trial(&spec, trial).unwrap(), sample_trial(&spec, trial).unwrap());
    }
}
