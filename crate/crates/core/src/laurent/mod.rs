//! Truncated Laurent series over symbolic c-function coefficients.
//!
//! Coefficients live in a polynomial ring generated by
//!
//! - `c_{i,j}`, the `i`th Laurent coefficient of `c(s) = ζ(s)/ζ(s+1)` at the integer `j`,
//! - unit symbols `U{d}[x]`, the `d`th derivative of the relevant `c` at a point `x`
//!   where it is finite and nonzero (nontrivial torsion, or a non-integer value),
//! - the log symbols `ℓ1`, `ℓ2`, with `⟨c, d⟩ = c·ℓ1 + d·ℓ2`.
//!
//! Leading coefficients and unit values may appear with negative exponents.
//! [`Relations`] rewrites every symbol on the negative side of `c(x)c(-x) = 1`
//! (and the even coefficients at self-paired points) into free generators, so
//! normalized polynomials compare structurally.

mod expand;
mod poly;
mod relations;
mod series;

use thiserror::Error;

pub use expand::{
    apriori_valuation, base_point, expand_c, expand_c_with, split_argument, BasePoint,
    OffLatticePolicy,
};
pub use poly::{ord_c, CoeffPoly, CoeffSymbol, Monomial, UnitPoint};
pub use relations::{derive_c_relations, unit_relations, Relations, Rule, RuleSet};
pub use series::LaurentSeries;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LaurentError {
    #[error("series in `{0}` and `{1}` cannot be combined")]
    VariableMismatch(String, String),
    #[error("leading coefficient {0} is not a unit")]
    NonUnit(String),
    #[error("off-lattice point: c is not expanded at the non-integer trivial-torsion value {0}")]
    OffLattice(String),
    #[error("argument `{arg}` involves `{var}` besides the expansion variable")]
    UnexpectedVariable { arg: String, var: String },
    #[error("argument `{0}` is constant at a zero or pole of c")]
    DegenerateArgument(String),
    #[error("invalid order {0}")]
    InvalidOrder(i64),
    #[error("order too low: coefficients are known below degree {got}, {needed} required")]
    OrderTooLow { needed: i64, got: i64 },
}

/// `⟨c, d⟩ = c·ℓ1 + d·ℓ2`.
pub fn log_pairing(c: &crate::Rat, d: &crate::Rat) -> CoeffPoly {
    &CoeffPoly::symbol(CoeffSymbol::Log1).scale(c) + &CoeffPoly::symbol(CoeffSymbol::Log2).scale(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charalg::{Gl1Char, TorsionClass};
    use crate::rational::{int, rat};

    fn c(i: i64, j: i64) -> CoeffPoly {
        CoeffPoly::symbol(CoeffSymbol::zeta(i, j))
    }

    fn arg(s: &str) -> Gl1Char {
        Gl1Char::parse(s, &[TorsionClass::chi0(3)]).unwrap()
    }

    #[test]
    fn expansion_at_zero() {
        let s = expand_c(&arg("u"), "u", 3).unwrap();
        assert_eq!(s.coefficient(0), CoeffPoly::int(-1));
        assert_eq!(s.coefficient(1), c(1, 0));
        assert_eq!(s.coefficient(2), (&c(1, 0) * &c(1, 0)).scale(&rat(-1, 2)));
        assert_eq!(s.truncation(), 3);
    }

    #[test]
    fn expansion_at_minus_one() {
        let s = expand_c(&arg("3u - 1"), "u", 3).unwrap();
        let inv = c(-1, 1).inverse().unwrap();
        assert_eq!(s.valuation(), Some(1));
        assert_eq!(s.coefficient(1), inv.scale(&int(-3)));
        assert_eq!(
            s.coefficient(2),
            (&c(0, 1) * &inv.pow(2).unwrap()).scale(&int(-9))
        );
    }

    #[test]
    fn expansion_at_one() {
        let s = expand_c(&arg("2u + 1"), "u", 1).unwrap();
        assert_eq!(s.coefficient(-1), c(-1, 1).scale(&rat(1, 2)));
        assert_eq!(s.coefficient(0), c(0, 1));
        assert_eq!(s.truncation(), 1);
        assert_eq!(s.to_string(), "(1/2*c_{-1,1})*u^-1 + (c_{0,1}) + O(u^1)");
    }

    #[test]
    fn errors() {
        assert!(matches!(
            expand_c(&arg("u + 1/2"), "u", 2),
            Err(LaurentError::OffLattice(_))
        ));
        assert!(expand_c_with(&arg("u + 1/2"), "u", 2, OffLatticePolicy::AsUnit).is_ok());
        assert!(matches!(
            expand_c(&arg("u + s"), "u", 2),
            Err(LaurentError::UnexpectedVariable { .. })
        ));
        assert!(matches!(
            expand_c(&arg("1"), "u", 2),
            Err(LaurentError::DegenerateArgument(_))
        ));
    }

    #[test]
    fn torsion_expansion_uses_units() {
        let s = expand_c(&arg("χ0 + 2u - 1/3"), "u", 2).unwrap();
        assert!(s
            .coefficient(0)
            .symbols()
            .all(|sym| matches!(sym, CoeffSymbol::Unit { .. })));
        assert_eq!(s.valuation(), Some(0));
    }

    #[test]
    fn functional_equation_products() {
        for j in [-1i64, 0, 1, 2] {
            let x = &Gl1Char::var("u") + &Gl1Char::int(j);
            let a = expand_c(&x, "u", 4).unwrap();
            let b = expand_c(&-&x, "u", 4).unwrap();
            let prod = a.mul(&b).unwrap().truncate(3);
            assert_eq!(prod.coefficient(0), CoeffPoly::one(), "j = {j}");
            for k in 1..3 {
                assert!(prod.coefficient(k).is_zero(), "j = {j}, k = {k}");
            }
        }
    }

    #[test]
    fn leading_times_inverse() {
        let a = LaurentSeries::new("u", -1, vec![c(-1, 1)], 1);
        let rel = Relations::global();
        let b = LaurentSeries::new("u", 1, vec![-&c(1, -1)], 3);
        let prod = rel.normalize_series(&a.mul(&b).unwrap()).unwrap();
        assert_eq!(prod.coefficient(0), CoeffPoly::one());
        assert!(prod.coefficient(1).is_zero());
        assert_eq!(prod.truncation(), 2);
    }

    #[test]
    fn invert_unit_round_trip() {
        let a = expand_c(&arg("u + 1"), "u", 3).unwrap();
        let inv = a.invert_unit().unwrap();
        let prod = a.mul(&inv).unwrap();
        assert_eq!(prod.coefficient(0), CoeffPoly::one());
        assert!(prod.coefficient(1).is_zero());
        let z = expand_c(&arg("u + 2"), "u", 3).unwrap();
        let nonunit = z
            .add(&LaurentSeries::constant(
                "u",
                CoeffPoly::symbol(CoeffSymbol::Log1),
                3,
            ))
            .unwrap();
        assert!(matches!(
            nonunit.invert_unit(),
            Err(LaurentError::NonUnit(_))
        ));
    }

    #[test]
    fn log_pairing_is_additive() {
        let lhs = &log_pairing(&int(1), &int(2)) + &log_pairing(&int(3), &int(-4));
        assert_eq!(lhs, log_pairing(&int(4), &int(-2)));
    }
}
