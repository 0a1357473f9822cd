use zerodiv_core::analysis::{classify_cm, reisner_cm, CmCase, ReisnerCheck};
use zerodiv_core::cli::{corpus_specs, parse_spec};
use zerodiv_core::complexes::k_complex;
use zerodiv_core::formulas::local_summaries;
use zerodiv_core::homology::{homology, Coefficients};
use zerodiv_core::rings::FiniteRing;

fn ring(spec: &str) -> FiniteRing {
    parse_spec(spec).unwrap().build().unwrap()
}

#[test]
fn truncated_polynomial_rings() {
    let cm = |spec: &str| reisner_cm(&k_complex(&ring(spec)).unwrap(), Coefficients::Rationals).unwrap();
    assert!(cm("F2[x]/(x^3)").is_cm);
    for spec in ["F2[x]/(x^4)", "F2[x]/(x^5)", "F2[x]/(x^6)", "F2[x]/(x^7)"] {
        let v = cm(spec);
        assert!(!v.is_cm, "{spec}");
        let w = v.witness.unwrap();
        assert_eq!(w.dimension, 0, "{spec}");
        assert!(w.rank > 0);
    }
}

#[test]
fn quartic_truncation_is_not_pure() {
    // x^3 is joined to everything, x^2 and x^2 + x^3 only to each other and
    // x^3, so one triangle sits next to four bare edges.
    let k = k_complex(&ring("F2[x]/(x^4)")).unwrap();
    assert!(!k.is_pure());
    let mut sizes: Vec<usize> = k.facets().iter().map(Vec::len).collect();
    sizes.sort_unstable();
    assert_eq!(sizes, vec![2, 2, 2, 2, 3]);
}

#[test]
fn square_zero_pair_has_disconnected_link() {
    // Three triangles meeting only at xy.
    let k = k_complex(&ring("F2[x,y]/(x^2, y^2)")).unwrap();
    assert!(k.is_pure());
    assert_eq!(k.facets().len(), 3);
    let xy = k.vertex("xy").unwrap();
    let link = k.link(&[xy]).unwrap();
    assert_eq!(link.components().len(), 3);
    let v = reisner_cm(&k, Coefficients::Rationals).unwrap();
    assert!(!v.is_cm);
    assert_eq!(v.witness.unwrap().face, vec!["xy".to_string()]);
}

#[test]
fn large_socle_does_not_force_purity() {
    // m^3 = {0, 27, 54} has three elements, but valuation-one elements only
    // meet the socle, giving triangles beside an 8-vertex simplex.
    for spec in ["Z81", "F3[x]/(x^4)"] {
        let r = ring(spec);
        let c = classify_cm(&r, Coefficients::Rationals).unwrap();
        assert_eq!(c.case, CmCase::LocalLargeSocle);
        assert_eq!(c.agrees_with_reisner(), Some(false), "{spec}");
        let k = k_complex(&r).unwrap();
        assert!(!k.is_pure());
        assert_eq!(k.dimension(), Some(7));
    }
    for spec in ["Z27", "F3[x]/(x^3)", "Z25", "Z49", "F2[x,y]/(x^2, xy, y^2)"] {
        let c = classify_cm(&ring(spec), Coefficients::Rationals).unwrap();
        assert_eq!(c.case, CmCase::LocalLargeSocle, "{spec}");
        assert_eq!(c.agrees_with_reisner(), Some(true), "{spec}");
    }
}

#[test]
fn order_four_factor_with_a_field() {
    for spec in ["Z4 x Z3", "F2[x]/(x^2) x Z3", "Z4 x GF(2^2)", "F2[x]/(x^2) x Z5"] {
        let c = classify_cm(&ring(spec), Coefficients::Rationals).unwrap();
        assert_eq!(c.case, CmCase::Z2X2TimesField, "{spec}");
        assert_eq!(c.agrees_with_reisner(), Some(true), "{spec}");
    }
    let c = classify_cm(&ring("Z9 x Z2"), Coefficients::Rationals).unwrap();
    assert_eq!(c.case, CmCase::NotCM);
    assert_eq!(c.agrees_with_reisner(), Some(true));
}

#[test]
fn three_factors_fail_at_the_whole_complex() {
    for spec in ["Z30", "Z3 x Z3 x Z3", "Z2 x Z2 x Z2", "Z60"] {
        let r = ring(spec);
        let v = reisner_cm(&k_complex(&r).unwrap(), Coefficients::Rationals).unwrap();
        assert!(!v.is_cm);
        let w = v.witness.unwrap();
        let h = homology(&k_complex(&r).unwrap(), true, Coefficients::Rationals).unwrap();
        if h.rank(1) > 0 {
            assert!(w.face.is_empty(), "{spec}: {w:?}");
            assert!(w.dimension <= 1);
        }
        assert!(local_summaries(&r).unwrap().len() >= 3);
    }
}

#[test]
fn rational_and_mod_two_verdicts_agree_on_the_corpus() {
    for spec in corpus_specs(60) {
        let k = k_complex(&ring(&spec)).unwrap();
        if k.is_void() {
            continue;
        }
        let q = reisner_cm(&k, Coefficients::Rationals).unwrap();
        let f2 = reisner_cm(&k, Coefficients::PrimeField(2)).unwrap();
        assert_eq!(q.is_cm, f2.is_cm, "{spec}");
    }
}

#[test]
fn classification_matches_reisner_except_large_socle_counterexamples() {
    for spec in corpus_specs(120) {
        let c = classify_cm(&ring(&spec), Coefficients::Rationals).unwrap();
        assert!(matches!(c.reisner, ReisnerCheck::Computed(_)), "{spec}");
        let expected = !matches!(spec.as_str(), "Z81");
        assert_eq!(c.agrees_with_reisner(), Some(expected), "{spec}: {:?}", c.case);
    }
}
