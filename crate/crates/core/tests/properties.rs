mod common;

use birkhoff::birkhoff::{random_matrix_with, rng_from_seed, sample_convex, sample_sinkhorn};
use birkhoff::{
    birkhoff_decompose, bounding_ball_radius_s2, central_form_decompose, chebyshev_radius,
    frobenius_norm, jn, min_trace_hungarian, radius_bounds_s2, schatten_norm, singular_values,
    DoublyStochasticMatrix, Error, PermutationMatrix, SchattenExponent, SquareMatrix,
};
use proptest::prelude::*;

fn matrix(max_n: usize) -> impl Strategy<Value = SquareMatrix> {
    (1..=max_n, any::<u64>())
        .prop_map(|(n, seed)| random_matrix_with(n, -5.0, 5.0, &mut rng_from_seed(seed)))
}

fn doubly_stochastic(max_n: usize) -> impl Strategy<Value = DoublyStochasticMatrix> {
    (1..=max_n, any::<u64>(), any::<bool>(), 1usize..12).prop_map(|(n, seed, convex, k)| {
        if convex {
            sample_convex(n, k, seed).unwrap()
        } else {
            sample_sinkhorn(n, seed, 10_000, 1e-13).unwrap()
        }
    })
}

fn exponent() -> impl Strategy<Value = SchattenExponent> {
    (1.0f64..8.0).prop_map(|p| SchattenExponent::new(p).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn singular_values_sorted_and_nonnegative(a in matrix(9)) {
        let s = singular_values(&a).unwrap();
        prop_assert!(s.values().windows(2).all(|w| w[0] >= w[1]));
        prop_assert!(s.values().iter().all(|&v| v >= 0.0));
        let sq: f64 = s.values().iter().map(|v| v * v).sum();
        prop_assert!((sq.sqrt() - frobenius_norm(&a)).abs() <= 1e-10 * (1.0 + frobenius_norm(&a)));
    }

    #[test]
    fn schatten_is_homogeneous(a in matrix(7), c in -4.0f64..4.0, p in exponent()) {
        let lhs = schatten_norm(&a.scale(c), p).unwrap();
        let rhs = c.abs() * schatten_norm(&a, p).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-10 * (1.0 + rhs));
    }

    #[test]
    fn schatten_triangle_inequality(a in matrix(6), seed in any::<u64>(), p in exponent()) {
        let b = random_matrix_with(a.dim(), -5.0, 5.0, &mut rng_from_seed(seed));
        let lhs = schatten_norm(&a.add(&b).unwrap(), p).unwrap();
        prop_assert!(lhs <= schatten_norm(&a, p).unwrap() + schatten_norm(&b, p).unwrap() + 1e-9);
    }

    #[test]
    fn transpose_preserves_spectrum(a in matrix(8)) {
        let s = singular_values(&a).unwrap();
        let t = singular_values(&a.transpose()).unwrap();
        for (x, y) in s.values().iter().zip(t.values()) {
            prop_assert!((x - y).abs() <= 1e-10 * (1.0 + s.max()));
        }
    }

    #[test]
    fn min_trace_matches_oracle(a in matrix(7)) {
        prop_assert!((min_trace_hungarian(&a).value - common::min_trace_oracle(&a)).abs() <= 1e-9);
    }

    #[test]
    fn min_trace_is_invariant_under_relabeling(a in matrix(8), seed in any::<u64>()) {
        let mut rng = rng_from_seed(seed);
        let l = PermutationMatrix::random(a.dim(), &mut rng);
        let r = PermutationMatrix::random(a.dim(), &mut rng);
        let b = a.permute_rows(&l).unwrap().permute_cols(&r).unwrap();
        prop_assert!((min_trace_hungarian(&a).value - min_trace_hungarian(&b).value).abs() <= 1e-9);
    }

    #[test]
    fn min_trace_on_polytope_is_in_unit_interval(d in doubly_stochastic(12)) {
        let t = min_trace_hungarian(&d).value;
        prop_assert!((-1e-9..=1.0 + 1e-9).contains(&t));
    }

    #[test]
    fn radius_within_bounds(d in doubly_stochastic(12)) {
        let r = bounding_ball_radius_s2(&d).radius;
        let b = radius_bounds_s2(&d);
        prop_assert!(b.contains(r, 1e-9));
        let n = d.dim() as f64;
        prop_assert!(r * r >= n - 1.0 - 1e-9 && r * r <= 2.0 * n + 1e-9);
    }

    #[test]
    fn radius_at_jn_is_chebyshev_radius(n in 1usize..=12) {
        let r = bounding_ball_radius_s2(&jn(n)).radius;
        let c = chebyshev_radius(n, SchattenExponent::TWO).unwrap().radius;
        prop_assert!((r - c).abs() <= 1e-12);
    }

    #[test]
    fn decomposition_reconstructs(d in doubly_stochastic(10)) {
        let dec = birkhoff_decompose(&d).unwrap();
        prop_assert!(dec.len() <= birkhoff::BirkhoffDecomposition::max_terms(d.dim()));
        prop_assert!((dec.weight_sum() - 1.0).abs() <= 1e-9);
        prop_assert!(dec.terms.iter().all(|t| t.weight > 0.0 && t.weight <= 1.0 + 1e-12));
        prop_assert!(frobenius_norm(&dec.reconstruct().sub(&d).unwrap()) <= 1e-8);
    }

    #[test]
    fn products_stay_in_polytope(d in doubly_stochastic(8), seed in any::<u64>()) {
        let e = sample_sinkhorn(d.dim(), seed, 10_000, 1e-13).unwrap();
        prop_assert!(DoublyStochasticMatrix::with_default_tol(d.matmul(&e).unwrap()).is_ok());
    }

    #[test]
    fn central_form_roundtrip(n in 2usize..9, a in -10.0f64..10.0, b in -10.0f64..10.0) {
        let m = SquareMatrix::identity(n).scale(a).add(&jn(n).scale(b)).unwrap();
        let cf = central_form_decompose(&m, 1e-12).unwrap();
        prop_assert!((cf.a - a).abs() <= 1e-10 && (cf.b - b).abs() <= 1e-10);
        prop_assert!(cf.reconstruct(n).max_abs_diff(&m).unwrap() <= 1e-12);
    }

    #[test]
    fn perturbed_rows_are_rejected(d in doubly_stochastic(8), i in any::<prop::sample::Index>(), eps in 1e-6f64..1e-2) {
        let n = d.dim();
        let i = i.index(n);
        let mut rows = d.to_rows();
        rows[i][0] += eps;
        let m = SquareMatrix::from_rows(&rows).unwrap();
        let rejected = matches!(
            DoublyStochasticMatrix::new(m, 1e-9),
            Err(Error::NotDoublyStochastic { .. })
        );
        prop_assert!(rejected);
    }

    #[test]
    fn samplers_are_seeded(n in 1usize..8, seed in any::<u64>(), k in 1usize..6) {
        prop_assert_eq!(sample_convex(n, k, seed).unwrap(), sample_convex(n, k, seed).unwrap());
        prop_assert_eq!(
            sample_sinkhorn(n, seed, 10_000, 1e-13).unwrap(),
            sample_sinkhorn(n, seed, 10_000, 1e-13).unwrap()
        );
    }
}
