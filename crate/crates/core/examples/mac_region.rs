//! Two-user Gaussian MAC with a common helper: regime map, the helped
//! symmetric random-coding exponent under the best split of R_h, and the
//! weak sphere-packing branches.

use flashhelp::mac::{
    classify_rate_point, helped_rc_exponent_symmetric, optimal_help_split, wsp_mac_branches, HelpSplit,
    MacParams, RateClass, RatePair,
};

fn main() -> flashhelp::Result<()> {
    let mac = MacParams::from_snr(1.0, 1.0)?;
    let rh = 0.2;

    // regime map: '#' infinite, '+' finite, '.' zero
    for j in (0..16).rev() {
        let line: String = (0..32)
            .map(|i| {
                let rp = RatePair::new(0.9 * i as f64 / 31.0, 0.9 * j as f64 / 15.0).expect("rates");
                match classify_rate_point(rp, &mac, rh) {
                    RateClass::InfiniteExponent => '#',
                    RateClass::FiniteExponent => '+',
                    RateClass::ZeroExponent => '.',
                }
            })
            .collect();
        println!("{line}");
    }

    for (r1, r2) in [(0.1, 0.15), (0.3, 0.1), (0.25, 0.25)] {
        let rp = RatePair::new(r1, r2)?;
        let split = optimal_help_split(rp, rh);
        let best = helped_rc_exponent_symmetric(rp, 1.0, split);
        let equal = helped_rc_exponent_symmetric(rp, 1.0, HelpSplit::equal(rh));
        let w = wsp_mac_branches(rp, &mac, rh);
        println!(
            "({r1},{r2}): split ({:.3},{:.3}) -> {:.5} (equal split {:.5}); wsp min({:.4},{:.4},{:.4}) = {:.4}",
            split.rh1,
            split.rh2,
            best.value.to_f64(),
            equal.value.to_f64(),
            w.e1.to_f64(),
            w.e2.to_f64(),
            w.e3.to_f64(),
            w.value.to_f64()
        );
    }
    Ok(())
}
