//! Certifies the second-term identity between the `Q`- and `P`-Eisenstein series
//! at `u = 0`, eigenspace by eigenspace.
//!
//! ```bash
//! cargo run -p g2eis --example second_term_identity
//! ```

use g2eis::cterm::verify_second_term_identity;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let report = verify_second_term_identity(1)?;
    for e in &report.eigenspaces {
        println!("f°{}", e.weight);
        println!("  Q side      {}", e.q_side);
        println!("  P side      {}", e.p_side);
        println!("  difference  {}", e.difference);
    }
    println!("[1,-1] part without c(3u+2): {}", report.reduced_p_display);
    println!("vanishes at u = 0: {}", report.passed);
    Ok(())
}
