use proptest::prelude::*;

use hirzebruch::fixed_locus::{enumerate_components, normalize_c1};
use hirzebruch::poincare::{l_prime, poincare_polynomial};
use hirzebruch::rational::int;
use hirzebruch::{ChernData, Rational, SurfaceParams};

fn surface() -> impl Strategy<Value = SurfaceParams> {
    (1i64..=3, any::<bool>()).prop_map(|(p, s)| SurfaceParams::new(p, s && p >= 2).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn twist_keeps_component_count(params in surface(), r in 1usize..=3, m in -6i64..=6, extra in 0i64..=3, shift in -2i64..=2) {
        let d = params.denominator();
        let k = Rational::new(m, d);
        let (k0, _) = normalize_c1(r, k);
        // an admissible discriminant for k: the minimal one plus a few boxes
        let base = ChernData::new(r, k, int(extra) + int(params.p()) * k0 * (int(r as i64) - k0) / int(2 * r as i64));
        let twisted = ChernData::new(r, k + int(shift * r as i64), base.n);
        let a = enumerate_components(&params, &base).unwrap();
        let b = enumerate_components(&params, &twisted).unwrap();
        prop_assert_eq!(a.len(), b.len());
        prop_assert_eq!(poincare_polynomial(&params, &base).unwrap(), poincare_polynomial(&params, &twisted).unwrap());
    }

    #[test]
    fn l_prime_is_a_nonnegative_integer(p in 1i64..=5, a in -12i64..=12, b in -12i64..=12, stacky in any::<bool>()) {
        let d = if stacky { p } else { 1 };
        let v = l_prime(p, Rational::new(a, d), Rational::new(b, d));
        prop_assert!(v >= 0);
    }

    #[test]
    fn thread_count_is_irrelevant(params in surface(), r in 1usize..=3, m in 0i64..=5, n in 0i64..=12) {
        let chern = ChernData::new(r, Rational::new(m, params.denominator()), Rational::new(n, 2 * params.p() * r as i64));
        let compute = |threads| {
            rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap()
                .install(|| poincare_polynomial(&params, &chern).unwrap())
        };
        prop_assert_eq!(compute(1), compute(4));
    }
}
