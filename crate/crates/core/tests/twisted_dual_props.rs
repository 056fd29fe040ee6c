mod oracles;

use num_rational::Ratio;
use satake_core::twisted_dual::{
    delta_closed_form, delta_literal, examples_table, identify_weight_datum, TABLE_FAMILIES,
};
use satake_core::{CartanType, Isogeny, RootDatum, TwistedDualDatum};

use oracles::check_twisted_structure;

#[test]
fn structure_sweep_small_rank() {
    for t in CartanType::all_up_to_rank(4) {
        for source in [RootDatum::simply_connected(t).unwrap(), RootDatum::adjoint(t).unwrap()] {
            for n in 1..=8 {
                check_twisted_structure(&source, n);
            }
        }
    }
}

#[test]
fn delta_closed_form_agrees_with_definition() {
    for k in 1..=12u64 {
        for n in 1..=24u64 {
            let by_ratio = *Ratio::new(k as i64, n as i64).denom() as u64;
            assert_eq!(delta_literal(k, n), by_ratio);
            assert_eq!(delta_closed_form(k, n), by_ratio, "k={k} N={n}");
        }
    }
}

#[test]
fn n_one_is_the_langlands_dual() {
    for t in CartanType::all_up_to_rank(4) {
        for (iso, dual_iso) in [(Isogeny::SimplyConnected, Isogeny::Adjoint), (Isogeny::Adjoint, Isogeny::SimplyConnected)] {
            let source = RootDatum::new(t, iso).unwrap();
            let got = TwistedDualDatum::new(&source, 1).unwrap().identify().unwrap();
            let expected = identify_weight_datum(&RootDatum::new(t.dual(), dual_iso).unwrap().weight_datum()).unwrap();
            assert_eq!(got, expected, "{t} {}", source.isogeny());
        }
    }
}

#[test]
fn stated_delta_values() {
    let sp4: RootDatum = RootDatum::simply_connected("C2".parse().unwrap()).unwrap();
    assert_eq!(TwistedDualDatum::new(&sp4, 2).unwrap().delta(), &[1, 2]);
    let sl2 = RootDatum::simply_connected("A1".parse().unwrap()).unwrap();
    assert_eq!(TwistedDualDatum::new(&sl2, 3).unwrap().delta(), &[3]);
    assert_eq!(TwistedDualDatum::new(&sl2, 1).unwrap().identify().unwrap().canonical_name.as_deref(), Some("PSL2"));
    assert!(TwistedDualDatum::new(&sl2, 0).is_err());
}

#[test]
fn table_up_to_four_passes() {
    let rows = examples_table(4).unwrap();
    assert_eq!(rows.len(), 4 * TABLE_FAMILIES.len());
    for r in &rows {
        assert!(r.pass, "{}", r.to_tsv());
    }
}

#[test]
fn dual_datum_json_round_trip() {
    for t in ["A1", "A3", "C2", "B3", "G2", "D4", "E6"] {
        let t: CartanType = t.parse().unwrap();
        for source in [RootDatum::simply_connected(t).unwrap(), RootDatum::adjoint(t).unwrap()] {
            for n in 1..=4 {
                let dd = TwistedDualDatum::new(&source, n).unwrap();
                let json = serde_json::to_string(&dd).unwrap();
                let back: TwistedDualDatum = serde_json::from_str(&json).unwrap();
                assert_eq!(back, dd);
                assert_eq!(serde_json::to_string(&back).unwrap(), json);
            }
        }
    }
}
