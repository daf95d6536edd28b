//! Property tests for the exact arithmetic kernel.

use proptest::prelude::*;

use cohall::rat::{rat, Rat};
use cohall::symfun::laurent::LaurentPoly;
use cohall::symfun::poly::MultiPoly;
use cohall::symfun::series::{laurent_to_series, TruncSeries};
use cohall::symfun::vars::VarSpec;
use cohall::DimVector;

fn spec2() -> VarSpec {
    VarSpec::new(&DimVector::new(vec![2])).unwrap()
}

fn spec21() -> VarSpec {
    VarSpec::new(&DimVector::new(vec![2, 1])).unwrap()
}

prop_compose! {
    fn small_rat()(n in -6i64..=6, d in 1i64..=4) -> Rat {
        rat(n, d)
    }
}

/// Random polynomial in the three variables of `spec21`, degree <= 3.
fn arb_poly() -> impl Strategy<Value = MultiPoly> {
    let term = (0u32..4, 0u32..3, 0u32..3, small_rat());
    proptest::collection::vec(term, 0..5).prop_map(|terms| {
        let spec = spec21();
        let mut p = MultiPoly::zero(&spec);
        for (e0, e1, e2, c) in terms {
            let (e0, e1, e2) = (e0.min(3) as i32, e1.min(2) as i32, e2.min(2) as i32);
            p.add_term(vec![e0, e1, e2], c);
        }
        p
    })
}

fn arb_laurent() -> impl Strategy<Value = LaurentPoly> {
    let term = (-2i32..=2, -2i32..=2, small_rat());
    proptest::collection::vec(term, 0..4).prop_map(|terms| {
        let spec = spec2();
        let mut p = LaurentPoly::zero(&spec);
        for (e0, e1, c) in terms {
            p.add_term(vec![e0, e1], c);
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn poly_mul_associative(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn poly_distributive(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn exact_divide_recovers_factor(a in arb_poly(), b in arb_poly()) {
        prop_assume!(!b.is_zero());
        let q = a.mul(&b).exact_divide(&b).unwrap();
        prop_assert_eq!(q, a);
    }

    #[test]
    fn laurent_divide_recovers_factor(a in arb_laurent(), b in arb_laurent()) {
        prop_assume!(!b.is_zero());
        let q = a.mul(&b).exact_divide(&b).unwrap();
        prop_assert_eq!(q, a);
    }

    #[test]
    fn chern_substitution_is_multiplicative(a in arb_laurent(), b in arb_laurent(), order in 2u32..6) {
        let lhs = laurent_to_series(&a.mul(&b), order);
        let rhs = laurent_to_series(&a, order).mul(&laurent_to_series(&b, order));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn series_inverse_is_two_sided(a in arb_poly(), c in small_rat(), order in 2u32..6) {
        prop_assume!(!c.numer().eq(&0.into()));
        // force an invertible constant term
        let spec = spec21();
        let s = TruncSeries::from_poly(
            &a.mul(&MultiPoly::var(&spec, 0)).add(&MultiPoly::constant(&spec, c)),
            order,
        );
        let inv = s.invert().unwrap();
        prop_assert_eq!(s.mul(&inv), TruncSeries::one(&spec, order));
        prop_assert_eq!(inv.mul(&s), TruncSeries::one(&spec, order));
    }

    #[test]
    fn symmetry_preserved_by_ring_ops(seed1 in 0u64..1000, seed2 in 0u64..1000) {
        let spec = spec21();
        let mut s1 = cohall::sampler::Sampler::new(seed1);
        let mut s2 = cohall::sampler::Sampler::new(seed2);
        let p = s1.sym_poly(&spec, 3, 2);
        let q = s2.sym_poly(&spec, 3, 2);
        prop_assert!(p.add(&q).is_symmetric());
        prop_assert!(p.mul(&q).is_symmetric());
    }
}
