//! Values frozen from independent 30-digit evaluations (mpmath) of the closed
//! forms, binomial sums and one-dimensional constrained optimizations.

use flashhelp::awgn::{
    capacity_awgn, chernoff_sphere_exponent, default_ordinary_exponent, flash_rate, helped_capacity,
    quantizer_step, variable_rate_step, worst_case_variance, wsp_awgn,
};
use flashhelp::mac::{
    helped_rc_exponent_symmetric, optimal_help_split, rc_exponent_symmetric, wsp_mac_branches, HelpSplit,
    MacParams, RatePair,
};
use flashhelp::modulo::{
    helper_failure_exponent, helper_set_log_size, overflow_exponent, overflow_exponent_dual, r_of_theta,
    wsp_modulo, ModuloParams,
};
use flashhelp::prob::{
    gaussian_kl_variance_ratio, gaussian_sphere_tail, kl_divergence, log_multinomial, renyi_entropy,
    shannon_entropy, type_count, EmpiricalType, Pmf,
};
use flashhelp::sim::{exact_error_modulo_fixed, exponent_from_probability};

fn close(got: f64, want: f64, tol: f64) {
    assert!((got - want).abs() <= tol, "got {got}, want {want} (tol {tol})");
}

fn p91() -> Pmf {
    Pmf::binary(0.1).unwrap()
}

#[test]
fn information_measures() {
    close(shannon_entropy(&p91()), 0.325_082_973_391_448_24, 1e-15);
    let q = Pmf::new(vec![1.0, 0.0]).unwrap();
    close(kl_divergence(&q, &Pmf::new(vec![0.9, 0.1]).unwrap()).unwrap().to_f64(), 0.105_360_515_657_826_3, 1e-15);
    close(renyi_entropy(&p91(), 2.0).unwrap(), 0.198_450_938_723_838_25, 1e-15);
    close(gaussian_kl_variance_ratio(2.0).unwrap(), 0.153_426_409_720_027_35, 1e-15);
    close(gaussian_kl_variance_ratio(0.5).unwrap(), 0.096_573_590_279_972_65, 1e-15);
}

#[test]
fn type_counting() {
    assert_eq!(type_count(3, 4), 15.0);
    close(log_multinomial(&EmpiricalType::new(vec![6, 6]).unwrap()), 924f64.ln(), 1e-12);
    close(helper_set_log_size(&p91(), 12, 1.0).unwrap().to_f64(), 6.677_083_461_247_136, 1e-12);
}

#[test]
fn sphere_tail() {
    close(gaussian_sphere_tail(2, 0.0).unwrap().prob, 0.367_879_441_171_442_32, 1e-14);
    let tail = gaussian_sphere_tail(200, 1.0).unwrap();
    assert!(-tail.ln_prob / 200.0 >= 0.153_426_409_720_027_35);
}

#[test]
fn awgn_closed_forms() {
    close(capacity_awgn(1.0).unwrap(), 0.346_573_590_279_972_65, 1e-15);
    close(capacity_awgn(1f64.exp().powi(2) - 1.0).unwrap(), 1.0, 1e-14);
    close(helped_capacity(1.0, 0.5).unwrap(), 0.846_573_590_279_972_65, 1e-15);
    close(quantizer_step(1.0, 0.0, 0.0, 0.1).unwrap(), 4.132_731_354_122_493, 1e-13);
    close(quantizer_step(1.0, 1.0, 0.5, 0.1).unwrap(), 0.039_380_367_387_807_246, 1e-15);
    close(variable_rate_step(1.0, 0.5, 0.1).unwrap(), 0.027_846_124_825_536_07, 1e-15);
    close(flash_rate(0.5, 0.1, 9.0, 1.0, 1.0).unwrap().rate, 0.384_870_745_350_297_7, 1e-15);
    close(chernoff_sphere_exponent(1.0).unwrap(), 0.153_426_409_720_027_35, 1e-15);
    close(default_ordinary_exponent(0.0, 1.0).to_f64(), 0.202_732_554_054_082_2, 1e-9);
    close(worst_case_variance(0.7, 0.5, 1.0).unwrap(), 2.033_244_781_719_736_4, 1e-13);
    close(wsp_awgn(0.6, 1.0, 0.5).unwrap().to_f64(), 1.004_441_882_578_237_4, 1e-13);
}

#[test]
fn modulo_optimizations() {
    let p = p91();
    // active constraint at q1 = (θ − ln(1/0.9)) / (ln 10 − ln(1/0.9))
    close(r_of_theta(&p, 0.6).unwrap().to_f64(), 0.533_312_372_699_543_3, 1e-9);
    close(helper_failure_exponent(&p, 1.5).unwrap().to_f64(), 0.843_608_555_038_391_3, 1e-9);
    close(helper_failure_exponent(&p, 10f64.ln()).unwrap().to_f64(), 10f64.ln(), 1e-9);
    close(overflow_exponent(&p, 0.45, 0.8).unwrap().to_f64(), 0.092_496_490_918_339_49, 1e-9);
    close(overflow_exponent_dual(&p, 0.45, 0.8).unwrap().to_f64(), 0.073_997_192_734_671_59, 1e-9);
    // R above ln 2 would be zero for counting reasons, so keep R < ln 2
    close(wsp_modulo(&p, 0.45, 0.25).unwrap().to_f64(), 0.040_292_365_469_214_75, 1e-9);
}

#[test]
fn exact_failure_probability() {
    let mp = ModuloParams::new(p91());
    close(exact_error_modulo_fixed(&mp, 1.0, 12).unwrap(), 0.004_329_343_27, 1e-15);
}

#[test]
fn mac_values() {
    let sym = rc_exponent_symmetric(RatePair::new(0.1, 0.1).unwrap(), 1.0);
    close(sym.value.to_f64(), 0.102_732_554_054_082_2, 1e-14);
    let helped = helped_rc_exponent_symmetric(RatePair::new(0.2, 0.2).unwrap(), 1.0, HelpSplit::equal(0.2));
    close(helped.value.to_f64(), 0.102_732_554_054_082_2, 1e-14);
    let split = optimal_help_split(RatePair::new(0.3, 0.1).unwrap(), 0.1);
    assert_eq!((split.rh1, split.rh2), (0.1, 0.0));
    let mac = MacParams::from_snr(1.0, 1.0).unwrap();
    let b = wsp_mac_branches(RatePair::new(0.3, 0.3).unwrap(), &mac, 0.2);
    close(b.e3.to_f64(), 0.071_083_791_041_633_8, 1e-12);
    assert!(b.value.to_f64() <= b.e3.to_f64());
}

#[test]
fn censored_exponent() {
    // rule of three after 10^6 clean trials at n = 100
    close(exponent_from_probability(3e-6, 100).to_f64(), 0.127_168_982_692_961_64, 1e-14);
}
