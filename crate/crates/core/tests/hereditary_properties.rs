use proptest::prelude::*;

use qsi::linalg::Rationals;
use qsi::quiver::{euler_form, DimensionVector, Quiver};
use qsi::rep::{ext_dim, hom_dim, hom_space, random_rep, sample_rng, Sampling};
use qsi::roots::{canonical_decomposition, classify_root, RootClass};

/// Arrows go from a lower to a higher vertex, so the quiver is acyclic.
fn quiver_and_dims() -> impl Strategy<Value = (Quiver, DimensionVector, DimensionVector)> {
    (2usize..=4).prop_flat_map(|n| {
        let arrow = (0..n - 1).prop_flat_map(move |t| (Just(t), t + 1..n));
        let dims = prop::collection::vec(0u32..=3, n);
        (Just(n), prop::collection::vec(arrow, 1..=5), dims.clone(), dims)
    })
    .prop_map(|(n, arrows, a, b)| {
        let vertices: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let arrows: Vec<(String, String, String)> =
            arrows.iter().enumerate().map(|(i, &(t, h))| (format!("a{i}"), t.to_string(), h.to_string())).collect();
        (Quiver::new(&vertices, &arrows).unwrap(), DimensionVector(a), DimensionVector(b))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn hom_minus_ext_is_the_euler_form((q, a, b) in quiver_and_dims(), seed in 0u64..1000) {
        let mut rng = sample_rng(seed, 0);
        let (v, w) = (random_rep(&q, &a, &mut rng), random_rep(&q, &b, &mut rng));
        let hom = hom_dim(&Rationals, &v, &w).unwrap() as i64;
        let ext = ext_dim(&Rationals, &v, &w).unwrap() as i64;
        prop_assert_eq!(hom - ext, euler_form(&q, &a, &b).unwrap());
    }

    #[test]
    fn hom_basis_elements_intertwine((q, a, b) in quiver_and_dims(), seed in 0u64..1000) {
        let mut rng = sample_rng(seed, 1);
        let (v, w) = (random_rep(&q, &a, &mut rng), random_rep(&q, &b, &mut rng));
        let h = hom_space(&Rationals, &v, &w).unwrap();
        prop_assert_eq!(h.basis.len(), h.dim);
        for g in &h.basis {
            for (i, arrow) in q.arrows().iter().enumerate() {
                prop_assert_eq!(g[arrow.head].mul(&Rationals, v.mat(i)), w.mat(i).mul(&Rationals, &g[arrow.tail]));
            }
        }
    }

    #[test]
    fn decomposition_parts_are_schur_and_sum_to_beta((q, a, _) in quiver_and_dims()) {
        prop_assume!(!a.is_zero());
        let s = Sampling::default();
        let dec = canonical_decomposition(&q, &a, &s).unwrap();
        prop_assert_eq!(DimensionVector::sum(a.len(), &dec.parts), a);
        for p in &dec.parts {
            prop_assert!(classify_root(&q, p, &s).unwrap().is_schur());
        }
    }
}

#[test]
fn simple_roots_are_real() {
    let q = Quiver::new(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3"), ("c", "1", "3")]).unwrap();
    for x in 0..3 {
        let e = DimensionVector::unit(3, x);
        assert_eq!(classify_root(&q, &e, &Sampling::default()).unwrap(), RootClass::Real);
    }
}
