use superhirota::kdv::{
    check_a1, check_am2_chain, check_bell_link, check_burgers, check_n2, check_two_boson,
    solve_a4_coefficients,
};
use superhirota::soliton::Params;
use superhirota::GaussianRational;

#[test]
fn a1_closes() {
    let rep = check_a1().unwrap();
    assert!(rep.passed(), "{rep}");
}

#[test]
fn two_boson_chain() {
    let rep = check_two_boson().unwrap();
    assert!(rep.passed(), "{rep}");
}

#[test]
fn a4_coefficients() {
    let out = solve_a4_coefficients().unwrap();
    assert!(out.report.passed(), "{}", out.report);
    let s = &out.solution;
    assert_eq!(s.alpha, GaussianRational::complex((0, 1), (2, 1)));
    assert_eq!(s.beta, GaussianRational::from_int(-2));
    assert_eq!(s.gamma, GaussianRational::complex((0, 1), (1, 8)));
    assert_eq!(s.delta, GaussianRational::complex((0, 1), (3, 8)));
    assert_eq!(out.alternatives.len(), 1);
}

#[test]
fn am2_chain_closes() {
    let rep = check_am2_chain(&Params::default()).unwrap();
    assert!(rep.passed(), "{rep}");
}

#[test]
fn am2_chain_with_other_wave_numbers() {
    let p = Params::from_json(
        r#"{"kappa": "2", "kappa_tilde": "-1/3", "kappa1": "1", "kappa2": "1/4"}"#,
    )
    .unwrap();
    let rep = check_am2_chain(&p).unwrap();
    assert!(rep.passed(), "{rep}");
}

#[test]
fn n2_closes() {
    let rep = check_n2(&GaussianRational::from_int(1)).unwrap();
    assert!(rep.passed(), "{rep}");
}

#[test]
fn burgers_closes() {
    let rep = check_burgers().unwrap();
    assert!(rep.passed(), "{rep}");
}

#[test]
fn bell_link_small_run() {
    let rep = check_bell_link(99, 2).unwrap();
    assert!(rep.passed(), "{rep}");
    assert_eq!(rep.items.len(), 2 * 19);
}
