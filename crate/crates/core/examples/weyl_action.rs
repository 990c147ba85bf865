//! The twelve Weyl elements of G2 acting on a symbolic character, with the
//! rank-one arguments of each `c(w, χ)` and the inversion sets behind them.
//!
//! ```bash
//! cargo run -p g2eis --example weyl_action
//! ```

use g2eis::cterm::c_factors;
use g2eis::rootsys::{degenerate_weyl_set, weyl_group};
use g2eis::{Orientation, Parabolic, TorsionClass, TorusChar};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let o = Orientation::BetaLong;
    let chi = TorusChar::parse("[-1, 3s - 1 + χ0]", &[TorsionClass::chi0(3)], o)?;
    println!("χ = {chi}");
    for w in weyl_group(o) {
        let inv: Vec<String> = w.inversion_set(o)?.iter().map(|r| r.to_string()).collect();
        println!(
            "{:>6}: wχ = {:<32} inversions {{{}}}",
            w.to_string(),
            chi.weyl_act(&w).to_string(),
            inv.join(", ")
        );
    }
    println!("\nshortest representatives for P\\G/P-type sums:");
    for w in degenerate_weyl_set(Parabolic::P, o) {
        let args: Vec<String> = c_factors(&w, &chi).iter().map(|a| a.to_string()).collect();
        println!("{:>6}: c-arguments [{}]", w.to_string(), args.join(", "));
    }
    Ok(())
}
