use stirling_core::exact::rat;
use stirling_core::precision::{Verdict, DEFAULT_CEILING};
use stirling_core::wallis::{
    sandwich_gap, wallis_closed_form, wallis_integral, wallis_monotone_check,
    wallis_sandwich_check,
};

#[test]
fn recursion_matches_closed_form() {
    for n in 0..=300 {
        assert_eq!(wallis_integral(n), wallis_closed_form(n), "n = {n}");
    }
}

#[test]
fn integrals_strictly_decrease() {
    for n in 1..=300 {
        assert_eq!(wallis_monotone_check(n, DEFAULT_CEILING), Ok(Verdict::Holds), "n = {n}");
    }
}

#[test]
fn sandwich_holds() {
    for n in 1..=1000 {
        assert_eq!(wallis_sandwich_check(n, DEFAULT_CEILING), Ok(Verdict::Holds), "n = {n}");
    }
}

#[test]
fn sandwich_gap_shrinks_like_inverse_sqrt() {
    let g100 = sandwich_gap(100, 128);
    let g400 = sandwich_gap(400, 128);
    let ratio = g400.checked_div(&g100).unwrap();
    assert!(ratio.lo_rat() > rat(4, 10) && ratio.hi_rat() < rat(6, 10));
}
