//! Frozen serialization goldens: the canonical term ordering makes the JSON
//! byte-stable, so constructed functions can be diffed across revisions.

use mmba::arrangements::{build_coxeter, CoxeterLabel, Normalization};
use mmba::baker_akhiezer::{construct_berest, DEFAULT_TERM_BUDGET};
use mmba::export::phi_to_json;

fn rendered(label: CoxeterLabel) -> String {
    let (arr, _) = build_coxeter(label, Normalization::Norm2).unwrap();
    let phi = construct_berest(&arr, DEFAULT_TERM_BUDGET).unwrap();
    let json = phi_to_json(&phi).unwrap();
    serde_json::to_string_pretty(&json).unwrap()
}

#[test]
fn phi_golden_a1() {
    let expect = include_str!("goldens/phi_a1_m1.json");
    assert_eq!(rendered(CoxeterLabel::A(1)), expect.trim_end());
}

#[test]
fn phi_golden_a2() {
    let expect = include_str!("goldens/phi_a2_m1.json");
    assert_eq!(rendered(CoxeterLabel::A(2)), expect.trim_end());
}
