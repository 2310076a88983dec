//! Types, type classes and the divergence that prices them.

use flashhelp::prob::{
    kl_divergence, log_multinomial, renyi_entropy, shannon_entropy, type_count, type_enumerate, Pmf,
};

fn main() -> flashhelp::Result<()> {
    let p: Pmf = "0.5,0.3,0.2".parse()?;
    let t = 30;
    println!("{} types of length {t} over 3 symbols", type_count(3, t));

    // the probability of a type class is exp(ln|T_Q| + t sum Q ln P) ~ exp(-t D(Q||P))
    let mut total = 0.0;
    let mut shown = 0;
    for tp in type_enumerate(3, t)? {
        let ln_class = log_multinomial(&tp);
        let prob = (ln_class + tp.log_prob(&p)).exp();
        total += prob;
        if tp.counts()[0] % 10 == 0 && tp.counts()[1] % 10 == 0 && shown < 6 {
            let d = kl_divergence(&tp.to_pmf(), &p)?;
            println!(
                "  type {:?}: P(class)={prob:.3e}  exp(-tD)={:.3e}  H={:.4}",
                tp.counts(),
                (-(t as f64) * d.to_f64()).exp(),
                tp.entropy()
            );
            shown += 1;
        }
    }
    println!("total probability over all classes: {total:.12}");

    for order in [0.0, 0.5, 1.0, 2.0, f64::INFINITY] {
        println!("H_{order} = {:.6}", renyi_entropy(&p, order)?);
    }
    println!("Shannon: {:.6}", shannon_entropy(&p));
    Ok(())
}
