//! Edge poles in `Re(s) ≥ 1/2` of `c(w_i, χ)` for the six elements of the
//! `P`-sum, with `χ0` trivial, quadratic and cubic, plus the classification of
//! each rank-one pole source.
//!
//! ```bash
//! cargo run -p g2eis --example pole_table
//! ```

use g2eis::polescan::{classify_pole_sources, cvector, full_pole_table, standard_inducing};
use g2eis::rational::rat;
use g2eis::Order;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let table = full_pole_table()?;
    print!("{table}");
    println!();
    let chi = standard_inducing(Order::Finite(1));
    for arg in cvector(&chi)? {
        println!("c({arg}):");
        for source in classify_pole_sources(&arg, &rat(1, 2)) {
            println!("    {source:?}");
        }
    }
    Ok(())
}
