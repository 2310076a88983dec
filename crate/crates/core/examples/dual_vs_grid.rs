//! Checks the one-dimensional dual solvers against brute force over the
//! probability simplex.

use flashhelp::modulo::{helper_failure_exponent, min_divergence_with_entropy, r_of_theta};
use flashhelp::oracle::{
    default_resolution, grid_failure_exponent, grid_min_divergence_with_entropy, grid_r_of_theta,
};
use flashhelp::prob::Pmf;

fn main() -> flashhelp::Result<()> {
    for probs in [vec![0.9, 0.1], vec![0.6, 0.3, 0.1], vec![0.18, 0.41, 0.41]] {
        let p = Pmf::new(probs)?;
        let res = default_resolution(p.len());
        println!("p = {p}");
        for theta in [1.0, 1.3] {
            let r = r_of_theta(&p, theta)?.to_f64();
            let e = helper_failure_exponent(&p, theta)?.to_f64();
            println!(
                "  theta={theta}: r dual {r:.6} grid {:.6} | E dual {e:.6} grid {:.6}",
                grid_r_of_theta(&p, theta, res).unwrap_or(f64::NEG_INFINITY),
                grid_failure_exponent(&p, theta, res).unwrap_or(f64::INFINITY)
            );
        }
        let h = 0.5 * (p.len() as f64).ln() + 0.3;
        println!(
            "  min D s.t. H >= {h:.3}: tilted {:.6} grid {:.6}",
            min_divergence_with_entropy(&p, h).to_f64(),
            grid_min_divergence_with_entropy(&p, h, res).unwrap_or(f64::INFINITY)
        );
    }
    Ok(())
}
