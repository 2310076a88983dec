//! Exact probability that Gaussian noise leaves the sphere of radius
//! sqrt(t sigma^2 (1+s)), against its Chernoff bound.

use flashhelp::awgn::chernoff_sphere_exponent;
use flashhelp::prob::gaussian_sphere_tail;

fn main() -> flashhelp::Result<()> {
    for s in [0.5, 1.0, 2.0] {
        let e = chernoff_sphere_exponent(s)?;
        for t in [50u64, 100, 200, 1000, 5000] {
            let tail = gaussian_sphere_tail(t, s)?;
            println!(
                "s={s:<4} t={t:<5} ln P={:>11.4} Chernoff ln bound={:>11.4} -(1/t)ln P={:.5} (-> {e:.5}){}",
                tail.ln_prob,
                -(t as f64) * e,
                -tail.ln_prob / t as f64,
                if tail.underflow { " [prob underflows f64]" } else { "" }
            );
        }
    }
    Ok(())
}
