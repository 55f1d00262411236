use proptest::prelude::*;

use torsionlab_cli::JobDocument;

fn coefficient() -> impl Strategy<Value = String> {
    (-9i64..=9, 1i64..=4).prop_map(|(p, q)| format!("{p}/{q}"))
}

fn entry() -> impl Strategy<Value = String> {
    prop_oneof![
        coefficient(),
        prop::collection::vec(coefficient(), 1..=3).prop_map(|cs| format!("[{}]", cs.join(", "))),
        (prop::collection::vec(coefficient(), 1..=2), 1i64..=3)
            .prop_map(|(cs, d)| format!("[{}]/[{d}, 1]", cs.join(", "))),
    ]
}

fn two_term_complex() -> impl Strategy<Value = String> {
    (1usize..=3, 1usize..=3).prop_flat_map(|(a, b)| {
        prop::collection::vec(entry(), a * b).prop_map(move |d| {
            format!(
                "torsionlab-v1\n[field]\nbase = rationals\nvariable = t\n[complex]\ndims = [{a}, {b}]\nd0 = [{}]\n",
                d.join(", ")
            )
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_text_is_a_fixed_point(text in two_term_complex()) {
        let once = JobDocument::parse(&text).unwrap().to_text();
        let reparsed = JobDocument::parse(&once).unwrap();
        prop_assert_eq!(reparsed.to_text(), once);
    }
}
