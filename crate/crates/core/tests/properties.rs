//! Randomized structural properties over small fields and grids.

use std::sync::Arc;

use num_complex::Complex64;
use proptest::prelude::*;

use lfbesov::besov::{besov_norm, lp_decompose, BesovParams};
use lfbesov::field::FieldParams;
use lfbesov::fourier::{fourier, inverse_fourier, naive_fourier};
use lfbesov::operators::dilate;
use lfbesov::step::{Side, StepFunction};

#[derive(Debug, Clone)]
struct Sketch {
    p: u64,
    terms: Vec<(i32, u64, f64, f64)>,
}

fn sketches() -> impl Strategy<Value = Sketch> {
    let term = (-1..=2i32, 0u64..81, -4.0..4.0f64, -4.0..4.0f64);
    (prop_oneof![Just(2u64), Just(3u64)], prop::collection::vec(term, 1..6))
        .prop_map(|(p, terms)| Sketch { p, terms })
}

fn build(sk: &Sketch) -> (Arc<FieldParams>, StepFunction) {
    let params = FieldParams::new_shared(sk.p, 1).unwrap();
    let mut terms = Vec::new();
    for &(level, pick, re, im) in &sk.terms {
        let grid = params.grid_size(level, 2).unwrap();
        let center = params.rep_from_index(level, 2, pick % grid).unwrap();
        terms.push((center, level, Complex64::new(re, im)));
    }
    let f = StepFunction::from_terms(params.clone(), Side::Spatial, 2, 2, &terms).unwrap();
    (params, f)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn transform_round_trips(sk in sketches()) {
        let (_, f) = build(&sk);
        let back = inverse_fourier(&fourier(&f).unwrap()).unwrap();
        prop_assert!(f.max_abs_diff(&back).unwrap() < 1e-12);
    }

    #[test]
    fn fast_and_naive_paths_agree(sk in sketches()) {
        let (_, f) = build(&sk);
        let a = fourier(&f).unwrap();
        let b = naive_fourier(&f).unwrap();
        prop_assert!(a.max_abs_diff(&b).unwrap() < 1e-12);
    }

    #[test]
    fn plancherel_holds(sk in sketches()) {
        let (_, f) = build(&sk);
        let g = fourier(&f).unwrap();
        prop_assert!((f.lr_norm(2.0) - g.lr_norm(2.0)).abs() < 1e-11);
    }

    #[test]
    fn blocks_reconstruct(sk in sketches()) {
        let (_, f) = build(&sk);
        let back = lp_decompose(&f).unwrap().reconstruct().unwrap();
        prop_assert!(f.max_abs_diff(&back).unwrap() < 1e-12);
    }

    #[test]
    fn lr_triangle_inequality(a in sketches(), b in sketches()) {
        prop_assume!(a.p == b.p);
        let (_, f) = build(&a);
        let (_, g) = build(&b);
        let sum = f.add(&g).unwrap();
        for r in [1.0, 2.0, f64::INFINITY] {
            prop_assert!(sum.lr_norm(r) <= f.lr_norm(r) + g.lr_norm(r) + 1e-11);
        }
        // subadditivity of the r-th power below r = 1
        let r = 0.5;
        prop_assert!(
            sum.lr_norm(r).powf(r) <= f.lr_norm(r).powf(r) + g.lr_norm(r).powf(r) + 1e-11
        );
    }

    #[test]
    fn besov_norm_is_translation_invariant(sk in sketches(), shift in 0u64..27) {
        let (params, f) = build(&sk);
        prop_assume!(!f.is_zero());
        let grid = params.grid_size(0, 3).unwrap();
        let z = params.rep_from_index(0, 3, shift % grid).unwrap();
        let bp = BesovParams::new(0.9, 2.0, 1.0).unwrap();
        let a = besov_norm(&f, &bp).unwrap();
        let b = besov_norm(&f.translate(&z), &bp).unwrap();
        prop_assert!((a - b).abs() <= 1e-10 * a.max(1.0));
    }

    #[test]
    fn dilation_round_trips_and_scales(sk in sketches(), k in 1i32..4) {
        let (params, f) = build(&sk);
        let g = dilate(&f, k).unwrap();
        let back = dilate(&g, -k).unwrap();
        prop_assert!(f.max_abs_diff(&back).unwrap() < 1e-12);
        let scale = params.qf().powf(-(k as f64));
        prop_assert!((g.lr_norm(1.0) - scale * f.lr_norm(1.0)).abs() < 1e-11);
    }

    #[test]
    fn eval_agrees_with_stored_cells(sk in sketches()) {
        let (params, f) = build(&sk);
        for (key, &v) in f.values() {
            prop_assert_eq!(f.eval(key.rep()), v);
            // any point of the cell evaluates identically
            let probe = params.add(
                key.rep(),
                &params.monomial(1, key.level()).unwrap(),
            );
            prop_assert_eq!(f.eval(&probe), v);
        }
        let outside = params.monomial(1, -(f.support_bound() + 1)).unwrap();
        prop_assert_eq!(f.eval(&outside), Complex64::new(0.0, 0.0));
    }
}
