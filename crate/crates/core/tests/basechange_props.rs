mod common;

use kodaira::basechange::{extend_curve, predict_type, verify, Rule, TameExtensionSpec, ETH_LEDGER};
use kodaira::dvr::Valuation;
use kodaira::tate::{run_tate, KodairaType};
use proptest::prelude::*;
use rand::Rng;

fn additive_types() -> Vec<(KodairaType, u32)> {
    let mut v: Vec<_> = ETH_LEDGER
        .iter()
        .map(|&eth| (kodaira::basechange::type_of_eth(eth).unwrap(), eth))
        .collect();
    v.extend((1..=6).map(|n| (KodairaType::InStar(n), n + 6)));
    v.extend((1..=6).map(|n| (KodairaType::In(n), n)));
    v
}

#[test]
fn predictions_compose() {
    for p in [2u64, 3, 5, 7] {
        for (k, v) in additive_types() {
            for e1 in 1..=12u64 {
                for e2 in 1..=12u64 {
                    if (e1 * e2) % p == 0 {
                        continue;
                    }
                    let twice = predict_type(k, v, e1, p).unwrap().then(e2, p).unwrap();
                    let direct = predict_type(k, v, e1 * e2, p).unwrap();
                    assert_eq!((twice.type_f, twice.v_disc_f), (direct.type_f, direct.v_disc_f));
                }
            }
        }
    }
}

#[test]
fn e_one_mod_twelve_fixes_types() {
    for (k, v) in additive_types() {
        for e in [13u64, 25, 37, 49] {
            let p = predict_type(k, v, e, 11).unwrap();
            if p.rule_used == Rule::EthArithmetic {
                assert_eq!(p.type_f, k);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// `-v(j)` is multiplied by `e`, and so is the index of In.
    #[test]
    fn multiplicative_index_scales_like_j(seed in any::<u64>(), q in prop::sample::select(vec![3u64, 5, 7]), e in 1u64..=6) {
        prop_assume!(e % q != 0);
        let f = common::field(&format!("fqt:{q}"));
        let mut rng = common::rng(seed);
        let m = common::multiplicative_candidate(&f, &mut rng);
        prop_assume!(!m.is_singular());
        let ld = run_tate(&m).unwrap();
        let KodairaType::In(n) = ld.kodaira else { return Ok(()) };
        let ext = extend_curve(&m, &TameExtensionSpec::substitution(e)).unwrap();
        let vj = ext.j_invariant().unwrap().valuation();
        prop_assert_eq!(vj, Valuation::Finite(-((e as i64) * n as i64)));
        let r = verify(&m, &TameExtensionSpec::substitution(e)).unwrap();
        prop_assert!(r.matches);
        prop_assert_eq!(r.computed.kodaira, KodairaType::In(e as u32 * n));
    }

    /// Prediction against direct computation over `x^e - p`.
    #[test]
    fn radical_extensions_of_q_match(seed in any::<u64>(), p in prop::sample::select(vec![5u64, 7]), e in 2u64..=4) {
        let f = common::field(&format!("qp:{p}"));
        let mut rng = common::rng(seed);
        let m = if rng.gen_bool(0.7) {
            common::additive_candidate(&f, &mut rng)
        } else {
            common::multiplicative_candidate(&f, &mut rng)
        };
        prop_assume!(!m.is_singular());
        let r = verify(&m, &TameExtensionSpec::radical(e, p)).unwrap();
        prop_assert!(r.matches, "{} e={}: {:?} vs {} {}", m, e, r.predicted, r.computed.kodaira, r.computed.v_disc_min);
    }
}
