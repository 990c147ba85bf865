//! The rank-two character identities linking the `P`- and `Q`-inductions,
//! evaluated under both orientations and both readings of `w_α w_β`.
//!
//! ```bash
//! cargo run -p g2eis --example character_identity
//! ```

use g2eis::charalg::verify_character_identity;
use g2eis::Orientation;

fn main() {
    for o in [Orientation::BetaLong, Orientation::AlphaLong] {
        println!("{o:?}");
        for c in verify_character_identity(o, true).checks {
            let reading = c.reading.map_or("-".to_string(), |r| format!("{r:?}"));
            let verdict = if c.holds { "holds" } else { "fails" };
            println!(
                "  {:<46} {:<11} {verdict}: {} vs {}",
                c.statement, reading, c.lhs, c.rhs
            );
        }
    }
}
