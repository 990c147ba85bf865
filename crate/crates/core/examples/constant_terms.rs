//! Constant terms of `E_Q f°_{[3u+2,-1]}` and `E_P f°_{[-1,u+1]}` as Weyl sums,
//! first term by term and then summed inside each eigenspace.
//!
//! ```bash
//! cargo run -p g2eis --example constant_terms
//! ```

use g2eis::cterm::{constant_term, second_term_p_spec, second_term_q_spec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for spec in [second_term_q_spec(), second_term_p_spec()] {
        println!("E_{:?} f°{}", spec.parabolic, spec.inducing);
        for t in spec.weyl_terms()? {
            let args: Vec<String> = t.factors.iter().map(|a| format!("c({a})")).collect();
            let prod = if args.is_empty() {
                "1".to_string()
            } else {
                args.join(" ")
            };
            println!("  {:>6}: {prod} f°{}", t.w.to_string(), t.image);
        }
        let ct = constant_term(&spec, 1)?;
        for (key, elements) in ct.grouping() {
            let names: Vec<String> = elements.iter().map(|w| w.to_string()).collect();
            println!("  f°{key} ← {{{}}}: {}", names.join(", "), ct.terms[&key]);
        }
        println!();
    }
    Ok(())
}
