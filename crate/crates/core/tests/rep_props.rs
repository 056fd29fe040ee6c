mod oracles;

use num_bigint::BigInt;
use proptest::prelude::*;
use satake_core::rep_check::{
    admissible_a, freudenthal_multiplicities, mv_vs_character_check, rank_one_mv_multiplicities, tensor_multiplicity,
    weyl_dim,
};
use satake_core::twisted_dual::delta;
use satake_core::{CartanType, QVector, RootDatum, TwistedDualDatum, WeightDatum};

use oracles::{brauer_klimyk, character, dominant_weights, labels_of, qv};

fn rank_two_data() -> Vec<(String, WeightDatum)> {
    let mut out = Vec::new();
    for t in ["A1", "A2", "B2", "C2", "G2"] {
        let t: CartanType = t.parse().unwrap();
        for source in [RootDatum::simply_connected(t).unwrap(), RootDatum::adjoint(t).unwrap()] {
            out.push((format!("{t} {}", source.isogeny()), source.weight_datum()));
            for n in [2, 3, 4] {
                let dd = TwistedDualDatum::new(&source, n).unwrap();
                out.push((format!("{t} {} N={n}", source.isogeny()), dd.weight_datum()));
            }
        }
    }
    out
}

fn add(a: &[satake_core::Rational], b: &[satake_core::Rational]) -> QVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

#[test]
fn freudenthal_matches_weyl_alternating_sum() {
    for (name, w) in rank_two_data() {
        for lambda in dominant_weights(&w, 4) {
            let got = freudenthal_multiplicities(&w, &lambda).unwrap();
            let oracle = character(w.cartan_matrix(), &labels_of(&w, &lambda));
            let keyed: std::collections::BTreeMap<Vec<i64>, u64> =
                got.iter().map(|(v, &m)| (labels_of(&w, v), m)).collect();
            assert_eq!(keyed, oracle, "{name} λ = {lambda:?}");
            assert_eq!(BigInt::from(got.total()), weyl_dim(&w, &lambda).unwrap(), "{name}");
        }
    }
}

#[test]
fn total_multiplicity_is_weyl_dimension() {
    for t in CartanType::all_up_to_rank(4).into_iter().chain(["E6", "E7", "E8"].map(|s| s.parse().unwrap())) {
        let w = RootDatum::simply_connected(t).unwrap().weight_datum();
        let picks: Vec<usize> = if t.rank() > 4 { vec![0, t.rank() - 1] } else { (0..t.rank()).collect() };
        for i in picks {
            let lambda = w.fundamental_weight(i).unwrap();
            if t.rank() > 4 && weyl_dim(&w, &lambda).unwrap() > BigInt::from(300) {
                continue;
            }
            let m = freudenthal_multiplicities(&w, &lambda).unwrap();
            assert_eq!(BigInt::from(m.total()), weyl_dim(&w, &lambda).unwrap(), "{t} ϖ{}", i + 1);
        }
    }
    let e8 = RootDatum::simply_connected("E8".parse().unwrap()).unwrap().weight_datum();
    let adj = e8.fundamental_weight(7).unwrap();
    assert_eq!(weyl_dim(&e8, &adj).unwrap(), BigInt::from(248));
    assert_eq!(freudenthal_multiplicities(&e8, &adj).unwrap().get(&qv(&[0; 8])), 8);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn tensor_products_against_brauer_klimyk(pick in 0usize..1000, i in 0usize..1000, j in 0usize..1000, k in 0usize..1000) {
        let data = rank_two_data();
        let (name, w) = &data[pick % data.len()];
        let weights = dominant_weights(w, 2);
        let (l, m) = (&weights[i % weights.len()], &weights[j % weights.len()]);
        let top = add(l, m);
        prop_assert_eq!(tensor_multiplicity(w, l, m, &top).unwrap(), 1, "{}", name);
        let nu = &weights[k % weights.len()];
        let a = w.cartan_matrix();
        let expected = brauer_klimyk(a, &labels_of(w, l), &labels_of(w, m), &labels_of(w, nu));
        prop_assert_eq!(tensor_multiplicity(w, l, m, nu).unwrap() as i64, expected, "{}", name);
    }
}

#[test]
fn rank_one_counts_match_rank_one_characters() {
    let mut instances = 0;
    for t in CartanType::all_up_to_rank(3) {
        for source in [RootDatum::simply_connected(t).unwrap(), RootDatum::adjoint(t).unwrap()] {
            for n in 1..=6 {
                for i in 0..t.rank() {
                    let di = delta(&source, n, i).unwrap() as i64;
                    for a in admissible_a(&source, n, i, 2).unwrap() {
                        assert!(mv_vs_character_check(&source, n, i, a).unwrap(), "{t} N={n} i={i} a={a}");
                        let mv = rank_one_mv_multiplicities(&source, n, i, a).unwrap();
                        assert_eq!(mv.len() as i64, 2 * a + 1);
                        assert_eq!(mv.support().len() as i64, 2 * a / di + 1);
                        instances += 1;
                    }
                }
            }
        }
    }
    assert!(instances >= 200, "{instances}");
}
