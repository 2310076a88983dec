//! Weak sphere-packing converses: change only the noise law until the rate
//! exceeds the helped capacity, and pay the divergence.

use flashhelp::awgn::{capacity_awgn, worst_case_variance, wsp_awgn};
use flashhelp::modulo::{wsp_modulo, ModuloParams};
use flashhelp::prob::Pmf;

fn main() -> flashhelp::Result<()> {
    let (gamma, rh) = (1.0, 0.5);
    let c = capacity_awgn(gamma)?;
    println!("AWGN, gamma={gamma}, R_h={rh}: finite between {rh} and {:.6}", rh + c);
    for r in [0.45, 0.5, 0.55, 0.6, 0.7, 0.8, 0.85] {
        let v = worst_case_variance(r, rh, gamma);
        println!("  R={r:<5} E_wsp={:<12} worst-case variance {v:?}", format!("{:.6}", wsp_awgn(r, gamma, rh)?));
    }

    let mp = ModuloParams::new(Pmf::binary(0.1)?);
    let rh = 0.2;
    println!("modulo, p=(0.9,0.1), R_h={rh}, C0={:.5}", mp.capacity());
    for excess in [-0.1, 0.0, 0.1, 0.2, 0.3, 0.4, 0.5] {
        let r = rh + excess;
        println!("  R={r:.2}  E_wsp={}", wsp_modulo(&mp.noise, r, rh)?);
    }
    Ok(())
}
