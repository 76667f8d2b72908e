mod common;

use kodaira::dvr::{EisElem, Field, FpPoly, RatFunc, Residue, Valuation};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

const FIELDS: [&str; 7] = ["qp:2", "qp:3", "qp:7", "fqt:2", "fqt:5", "eis:2:x^2-2", "eis:5:x^3+5x+5"];

fn vp(n: &BigInt, p: u64) -> Valuation {
    if n.is_zero() {
        return Valuation::Infinity;
    }
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut k = 0;
    while n.is_multiple_of(&p) {
        n /= &p;
        k += 1;
    }
    Valuation::Finite(k)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn valuation_is_additive_and_ultrametric(seed in any::<u64>(), which in 0..FIELDS.len()) {
        let f = common::field(FIELDS[which]);
        let mut rng = common::rng(seed);
        let a = common::element(&f, &mut rng, false);
        let b = common::element(&f, &mut rng, false);
        prop_assert_eq!((&a * &b).valuation(), a.valuation() + b.valuation());
        let s = (&a + &b).valuation();
        let (va, vb) = (a.valuation(), b.valuation());
        prop_assert!(s >= va.min(vb));
        if va != vb {
            prop_assert_eq!(s, va.min(vb));
        }
    }

    #[test]
    fn division_inverts_multiplication(seed in any::<u64>(), which in 0..FIELDS.len()) {
        let f = common::field(FIELDS[which]);
        let mut rng = common::rng(seed);
        let a = common::element(&f, &mut rng, false);
        let b = common::nonzero(&f, &mut rng, false);
        prop_assert_eq!((&a * &b).try_div(&b).unwrap(), a);
        let inv = b.inverse().unwrap();
        prop_assert_eq!(inv.valuation(), Valuation::Finite(-b.valuation().finite().unwrap()));
    }

    #[test]
    fn reduction_is_a_ring_map(seed in any::<u64>(), which in 0..FIELDS.len()) {
        let f = common::field(FIELDS[which]);
        let mut rng = common::rng(seed);
        let a = common::element(&f, &mut rng, true);
        let b = common::element(&f, &mut rng, true);
        let (ra, rb) = (a.reduce().unwrap(), b.reduce().unwrap());
        prop_assert_eq!((&a + &b).reduce().unwrap(), ra + rb);
        prop_assert_eq!((&a * &b).reduce().unwrap(), ra * rb);
        prop_assert_eq!(f.lift(ra).reduce().unwrap(), ra);
    }

    #[test]
    fn rational_valuation_matches_trial_division(num in -1_000_000i64..1_000_000, den in 1i64..10_000, p in prop::sample::select(vec![2u64, 3, 5, 7, 11])) {
        let f = Field::rational_at(p).unwrap();
        let x = f.from_i64(num).try_div(&f.from_i64(den)).unwrap();
        let expect = match (vp(&BigInt::from(num), p), vp(&BigInt::from(den), p)) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a - b),
            _ => Valuation::Infinity,
        };
        prop_assert_eq!(x.valuation(), expect);
    }

    #[test]
    fn function_field_valuation_is_order_at_zero(num in prop::collection::vec(0u64..5, 1..8), den in prop::collection::vec(0u64..5, 1..5)) {
        let (n, d) = (FpPoly::new(num, 5), FpPoly::new(den, 5));
        prop_assume!(!d.is_zero());
        let f = Field::function_field(5).unwrap();
        let x = f.from_ratfunc(RatFunc::new(n.clone(), d.clone()));
        let expect = match (n.order_at_zero(), d.order_at_zero()) {
            (Some(a), Some(b)) => Valuation::Finite(a as i64 - b as i64),
            _ => Valuation::Infinity,
        };
        prop_assert_eq!(x.valuation(), expect);
    }

    /// Over `Q_2(sqrt 2)`, `v(a0 + a1 x) = v_2(a0^2 - 2 a1^2)`.
    #[test]
    fn quadratic_eisenstein_valuation_is_norm_valuation(a0 in -5000i64..5000, a1 in -5000i64..5000) {
        let f = Field::parse("eis:2:x^2-2").unwrap();
        let x = f.from_eis(EisElem::from_parts(vec![BigInt::from(a0), BigInt::from(a1)], BigInt::from(1)));
        let norm = BigInt::from(a0) * a0 - BigInt::from(2) * a1 * a1;
        prop_assert_eq!(x.valuation(), vp(&norm, 2));
    }

    #[test]
    fn residue_field_axioms(a in 0u64..97, b in 1u64..97) {
        let (a, b) = (Residue::from_u64(a, 97), Residue::from_u64(b, 97));
        prop_assert_eq!(b * b.inv().unwrap(), Residue::one(97));
        prop_assert_eq!((a - b) + b, a);
        if let Some(r) = a.sqrt() {
            prop_assert_eq!(r * r, a);
        }
    }
}

#[test]
fn pi_shifts_move_valuation() {
    let mut rng = common::rng(11);
    for desc in FIELDS {
        let f = common::field(desc);
        for k in -3..=3 {
            let a = common::nonzero(&f, &mut rng, false);
            assert_eq!(a.mul_pi_pow(k).valuation(), Valuation::Finite(a.valuation().finite().unwrap() + k));
        }
    }
}
