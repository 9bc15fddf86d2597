use stirling_core::catalog::{catalog_list, compare_poly, find, reproduce_catalog, PolyVerdict};
use stirling_core::certify::{derive_difference, CertifyOptions};
use stirling_core::Direction;

#[test]
fn reproduction_is_deterministic_and_complete() {
    let opts = CertifyOptions::default();
    let a = reproduce_catalog(&opts);
    let b = reproduce_catalog(&opts);
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
    assert!(a.all_certified);
    assert_eq!(a.rows.len(), catalog_list().len());
    let names: Vec<&str> = a.rows.iter().map(|r| r.name.as_str()).collect();
    let mut sorted = names.clone();
    sorted.sort_unstable();
    assert_eq!(names, sorted);
}

#[test]
fn five_n_pair_matches_only_in_its_minus_form() {
    for name in ["five_n_lower", "five_n_upper"] {
        let e = find(name).unwrap();
        let printed = e.printed.as_ref().unwrap().poly.clone().unwrap();
        let derived = derive_difference(&e.spec).unwrap().poly;
        assert_ne!(compare_poly(&derived, &printed), PolyVerdict::Mismatch, "{name}");
    }
}

#[test]
fn directions_are_consistent_with_names() {
    for e in catalog_list() {
        let expect = if e.spec.name().ends_with("_lower") {
            Direction::Lower
        } else {
            Direction::Upper
        };
        assert_eq!(e.spec.direction(), expect, "{}", e.spec.name());
    }
}
