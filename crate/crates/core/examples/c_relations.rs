//! Relations among the Laurent coefficients `c_{i,j}` of `c(s) = ζ(s)/ζ(s+1)`
//! forced by `c(s)c(-s) = 1` and `c(0) = -1`, and the analogous relations at a
//! cubic twist.
//!
//! ```bash
//! cargo run -p g2eis --example c_relations
//! ```

use g2eis::laurent::{derive_c_relations, unit_relations};
use g2eis::rational::rat;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    print!("{}", derive_c_relations(3)?);
    println!("\nχ0 cubic, at ±(χ0 + 1/3):");
    print!("{}", unit_relations(3, &rat(1, 3), 2)?);
    Ok(())
}
