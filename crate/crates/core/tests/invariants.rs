use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tworb::field::{FiniteQuadratic, QuadraticField, RationalQuadratic};
use tworb::linalg::{inverse, sigma_conjugate, Matrix};
use tworb::orbit::{
    centralizer_dim_oracle, enumerate_orbits, jordan_type_of, orbit_dimension, standard_representative, JordanType,
};
use tworb::parabolic::{induce_orbit, richardson_type, standard_parabolic, InduceConfig};
use tworb::zeta::{igusa_matrix_factor, scaling_check};

fn jordan_type(max_n: usize) -> impl Strategy<Value = JordanType> {
    (0..=max_n, any::<prop::sample::Index>()).prop_map(|(n, pick)| {
        let all = enumerate_orbits(n);
        all[pick.index(all.len())].clone()
    })
}

fn composition(max_n: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1usize..=3, 1..=max_n).prop_filter("size", move |c| c.iter().sum::<usize>() <= max_n)
}

fn random_invertible<K: QuadraticField>(k: &K, n: usize, seed: u64) -> Matrix<K::Elem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let h = Matrix::from_fn(n, n, |_, _| k.sample(&mut rng, 7));
        if inverse(k, &h).is_ok() {
            return h;
        }
    }
}

fn conjugation_preserves_type<K: QuadraticField>(k: &K, t: &JordanType, seed: u64) {
    let x = standard_representative(k, t);
    let h = random_invertible(k, t.n(), seed);
    let y = sigma_conjugate(k, &h, &x).unwrap();
    assert_eq!(&jordan_type_of(k, &y).unwrap(), t);
    assert_eq!(centralizer_dim_oracle(k, &y), orbit_dimension(t).centralizer_dim_f);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sigma_conjugation_keeps_type_rational(t in jordan_type(5), seed in any::<u64>()) {
        conjugation_preserves_type(&RationalQuadratic::new(2).unwrap(), &t, seed);
    }

    #[test]
    fn sigma_conjugation_keeps_type_finite(t in jordan_type(5), seed in any::<u64>()) {
        conjugation_preserves_type(&FiniteQuadratic::new(3, 1).unwrap(), &t, seed);
    }

    #[test]
    fn dual_is_an_involution(t in jordan_type(14)) {
        prop_assert_eq!(t.dual().dual(), t.clone());
        prop_assert_eq!(t.dual().n(), t.n());
        prop_assert_eq!(t.dual().r(), t.parts().len());
    }

    #[test]
    fn zero_levi_induces_dual(comp in composition(5), seed in any::<u64>()) {
        let k = RationalQuadratic::new(3).unwrap();
        let p = standard_parabolic(&comp).unwrap();
        let types: Vec<JordanType> = comp.iter().map(|&s| JordanType::zero(s)).collect();
        let ind = induce_orbit(&k, &p, &types, &InduceConfig { seed, ..InduceConfig::default() }).unwrap();
        prop_assert!(ind.certified);
        prop_assert_eq!(ind.induced_type, richardson_type(&comp));
    }

    #[test]
    fn scaling_holds(t in jordan_type(7), k in 1usize..=4) {
        prop_assert!(scaling_check(&t, k).unwrap().holds());
    }
}

/// Shell measures are nonnegative and their partial sums stay at most 1.
#[test]
fn igusa_series_are_sub_probability() {
    for d in 0..=3 {
        let series = igusa_matrix_factor(d).function.series_in_t(5).unwrap();
        for q in [2i64, 3, 5, 7] {
            let q = BigRational::from_integer(BigInt::from(q));
            let mut total = BigRational::zero();
            for c in &series {
                let v = c.eval(&q, &BigRational::zero()).unwrap();
                assert!(!v.is_negative());
                total += v;
            }
            assert!(total <= BigRational::one(), "d={d}: {total}");
        }
    }
}
