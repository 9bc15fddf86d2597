use proptest::prelude::*;

use stirling_core::catalog::{catalog_list, find, paired_entries, EntryKind};
use stirling_core::certify::{
    certify_bound, derive_difference, difference_sign_ok, duality_violation,
    eventual_sign_threshold, spot_check, CertifyOptions,
};
use stirling_core::exact::{int, rat};
use stirling_core::Certificate;

fn opts() -> CertifyOptions {
    CertifyOptions::default()
}

#[test]
fn c103_threshold_and_base_cases() {
    let spec = find("c103_upper").unwrap().spec;
    let cert = certify_bound(&spec, &opts()).unwrap();
    // p(14) = 64575203175 > 0 although the printed threshold is 14
    assert_eq!(cert.claim.threshold, 15);
    assert_eq!(
        cert.claim.p.eval(&int(14)),
        int(64_575_203_175)
    );
    let ns: Vec<u64> = cert.base_cases.iter().map(|b| b.n).collect();
    assert_eq!(ns, (1..15).collect::<Vec<_>>());
}

#[test]
fn c102_threshold() {
    let spec = find("c102_lower").unwrap().spec;
    let d = derive_difference(&spec).unwrap();
    let t = eventual_sign_threshold(&d.poly, d.required_sign, spec.claim_from(), 1_000_000).unwrap();
    assert_eq!(t.threshold, 10);
    assert_eq!(t.roots_above, 0);
}

#[test]
fn certificates_replay_and_survive_json() {
    for name in ["robbins_lower", "c102_lower", "t945_lower"] {
        let cert = certify_bound(&find(name).unwrap().spec, &opts()).unwrap();
        let text = serde_json::to_string(&cert).unwrap();
        let back: Certificate = serde_json::from_str(&text).unwrap();
        assert_eq!(back, cert);
        back.replay(&opts()).unwrap();
    }
}

#[test]
fn tampered_certificate_is_rejected() {
    let cert = certify_bound(&find("c102_lower").unwrap().spec, &opts()).unwrap();
    let mut bad = cert.clone();
    bad.claim.threshold += 1;
    assert!(bad.check().is_err());
    let mut bad = cert;
    bad.base_cases.pop();
    assert!(bad.check().is_err());
}

#[test]
fn certified_claims_hold_beyond_the_threshold() {
    for name in ["c103_upper", "t2375_lower"] {
        let cert = certify_bound(&find(name).unwrap().spec, &opts()).unwrap();
        assert_eq!(spot_check(&cert, 200, 16384).unwrap(), Vec::<u64>::new(), "{name}");
    }
}

#[test]
fn derived_difference_has_its_sign_past_the_threshold() {
    for entry in catalog_list().into_iter().filter(|e| e.kind == EntryKind::Derived) {
        let Ok(cert) = certify_bound(&entry.spec, &opts()) else {
            panic!("{} did not certify", entry.spec.name())
        };
        let d = derive_difference(&entry.spec).unwrap();
        for n in cert.claim.threshold..cert.claim.threshold + 300 {
            assert!(difference_sign_ok(&d, n), "{} at n = {n}", entry.spec.name());
        }
    }
}

#[test]
fn paired_terms_never_cross() {
    for (lo, hi, from) in paired_entries() {
        let l = find(lo).unwrap();
        let u = find(hi).unwrap();
        assert_eq!(duality_violation(l.spec.a(), u.spec.a(), from, 5000), None, "{lo}/{hi}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn threshold_is_invariant_under_positive_scaling(num in 1i64..10_000, den in 1i64..10_000) {
        let spec = find("t2376_upper").unwrap().spec;
        let d = derive_difference(&spec).unwrap();
        let base = eventual_sign_threshold(&d.poly, d.required_sign, 1, 1_000_000).unwrap();
        let scaled = d.poly.scale(&rat(num, den));
        let t = eventual_sign_threshold(&scaled, d.required_sign, 1, 1_000_000).unwrap();
        prop_assert_eq!(t.threshold, base.threshold);
    }
}
