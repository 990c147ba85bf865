//! Unipotent matrices of the split 8-dimensional model and the orbit
//! decomposition of the quadric `{x ∈ V0 : _t x·x = 2ρ}` over `F_5` and `F_7`.
//!
//! ```bash
//! cargo run -p g2eis --release --example quadric_orbits
//! ```

use g2eis::g2matrix::{
    enumerate_quadric, form_value, orbit_class, v_rho, x_minus_alpha, OrbitClass,
};
use g2eis::rational::{int, rat};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = rat(3, 2);
    let rho = &a * &a;
    for r in [a.clone(), -a.clone(), int(1)] {
        let v = x_minus_alpha(&r).apply(&v_rho(&rho));
        let shown: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        println!(
            "x_-α({r}) v_{rho} = [{}], form {}, class {:?}",
            shown.join(", "),
            form_value(&v),
            orbit_class(&v, &rho, Some(&a))?
        );
    }
    for q in [5u64, 7] {
        for rho in 1..q {
            let counts = enumerate_quadric(q, rho, true)?;
            let cells: Vec<String> = OrbitClass::ALL
                .iter()
                .map(|c| format!("{} {}", c.name(), counts.count(*c)))
                .collect();
            println!(
                "q = {q}, ρ = {rho}: {} (total {})",
                cells.join(", "),
                counts.total
            );
        }
    }
    Ok(())
}
