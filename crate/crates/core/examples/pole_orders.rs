//! Eisenstein-level pole orders of the `P`-series at the candidate points, for
//! `χ0` trivial, quadratic and cubic, after cancellation inside each eigenspace.
//!
//! ```bash
//! cargo run -p g2eis --example pole_orders
//! ```

use g2eis::cterm::verify_pole_orders;
use g2eis::rational::rat;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for n in 1..=3 {
        for point in [rat(1, 2), rat(5, 9), rat(2, 3), rat(1, 1)] {
            let report = verify_pole_orders(n, &point)?;
            println!(
                "order(χ0) = {n}, s = {point}: pole order {}",
                report.max_order
            );
            for e in report.eigenspaces.iter().filter(|e| e.order > 0) {
                println!(
                    "    f°{} from {:?}: order {}, leading {}",
                    e.weight, e.elements, e.order, e.leading
                );
            }
        }
    }
    Ok(())
}
