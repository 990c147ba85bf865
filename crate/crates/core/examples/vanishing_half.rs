//! With `χ0` quadratic, the `P`-series vanishes at `s = 1/2`: the six Weyl terms
//! pair off in three eigenspaces and each pair cancels.
//!
//! ```bash
//! cargo run -p g2eis --example vanishing_half
//! ```

use g2eis::cterm::verify_vanishing_half;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let report = verify_vanishing_half()?;
    for f in &report.facts {
        println!(
            "{:<45} {}",
            f.statement,
            if f.holds { "holds" } else { "FAILS" }
        );
    }
    for e in &report.eigenspaces {
        println!("f°{} from {:?}: {}", e.weight, e.elements, e.series);
    }
    println!("vanishes at s = 1/2: {}", report.passed);
    Ok(())
}
