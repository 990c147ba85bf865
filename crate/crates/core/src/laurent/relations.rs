//! Rewriting relations coming from `c(x)c(-x) = 1` and `c(0) = -1`.
//!
//! For a base point `x` write `A(s) = c(x+s) = Σ A_i s^i` (the free side, lowest
//! index `p`) and `B(s) = c(-x+s) = Σ B_i s^i` (the eliminated side). Equating
//! `A(s)B(-s) = 1` degree by degree gives
//!
//! ```text
//! B_{D-p} = (-1)^{D-p} A_p^{-1} [δ_{D,0} - Σ_{i=p+1}^{p+D} A_i B_{D-i} (-1)^{D-i}]
//! ```
//!
//! When `x = -x` (the point `0`, or a unit point of order dividing 2 at value 0)
//! the odd coefficients stay free and the even ones are determined by the lower ones.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_traits::One;

use super::poly::{ord_c, CoeffPoly, CoeffSymbol, UnitPoint};
use super::{LaurentError, LaurentSeries};
use crate::charalg::{Order, Torsion, TorsionClass};
use crate::rational::{factorial, int, rat, to_i64, Rat};

/// Normal forms of coefficient symbols, computed lazily and memoized.
#[derive(Debug, Default)]
pub struct Relations {
    cache: Mutex<HashMap<CoeffSymbol, CoeffPoly>>,
}

fn sign(k: i64) -> Rat {
    if k.rem_euclid(2) == 0 {
        Rat::one()
    } else {
        -Rat::one()
    }
}

impl Relations {
    pub fn new() -> Self {
        Self::default()
    }

    /// Process-wide shared instance.
    pub fn global() -> &'static Relations {
        static GLOBAL: OnceLock<Relations> = OnceLock::new();
        GLOBAL.get_or_init(Relations::new)
    }

    /// Whether a symbol is a free generator of the normalized ring.
    pub fn is_free(s: &CoeffSymbol) -> bool {
        match s {
            CoeffSymbol::Zeta { i, j } => *j > 0 || (*j == 0 && i.rem_euclid(2) == 1),
            CoeffSymbol::Unit { point, deriv } => {
                if point.is_self_paired() {
                    *deriv == 0 || deriv % 2 == 1
                } else {
                    point.is_canonical()
                }
            }
            CoeffSymbol::Log1 | CoeffSymbol::Log2 => true,
        }
    }

    /// Normal form of a single symbol.
    pub fn rewrite(&self, s: &CoeffSymbol) -> CoeffPoly {
        if Self::is_free(s) {
            return CoeffPoly::symbol(s.clone());
        }
        if let Some(hit) = self.cache.lock().expect("relations cache poisoned").get(s) {
            return hit.clone();
        }
        // computed without holding the lock: the recursion re-enters `rewrite`
        let value = self.derive(s);
        self.cache
            .lock()
            .expect("relations cache poisoned")
            .insert(s.clone(), value.clone());
        value
    }

    fn derive(&self, s: &CoeffSymbol) -> CoeffPoly {
        match s {
            CoeffSymbol::Zeta { i, j } if *j < 0 => {
                let a = |k: i64| {
                    if k < ord_c(-j) {
                        CoeffPoly::zero()
                    } else {
                        CoeffPoly::symbol(CoeffSymbol::zeta(k, -j))
                    }
                };
                let b = |k: i64| {
                    if k < ord_c(*j) {
                        CoeffPoly::zero()
                    } else {
                        self.rewrite(&CoeffSymbol::zeta(k, *j))
                    }
                };
                pair_solve(a, b, ord_c(-j), *i)
            }
            CoeffSymbol::Zeta { i, .. } => {
                // j = 0, i even
                if *i == 0 {
                    return CoeffPoly::int(-1);
                }
                let a = |k: i64| self.rewrite(&CoeffSymbol::zeta(k, 0));
                self_paired_solve(a, &CoeffPoly::int(-1), *i)
            }
            CoeffSymbol::Unit { point, deriv } => {
                let n = i64::from(*deriv);
                if point.is_self_paired() {
                    let a = |k: i64| self.taylor(point, k);
                    let a0 = CoeffPoly::symbol(CoeffSymbol::unit(point.clone(), 0));
                    return self_paired_solve(a, &a0, n).scale(&factorial(*deriv));
                }
                let other = point.negate();
                let a = |k: i64| {
                    CoeffPoly::symbol(CoeffSymbol::unit(other.clone(), k as u32))
                        .scale(&factorial(k as u32).recip())
                };
                let b = |k: i64| self.taylor(point, k);
                pair_solve(a, b, 0, n).scale(&factorial(*deriv))
            }
            CoeffSymbol::Log1 | CoeffSymbol::Log2 => CoeffPoly::symbol(s.clone()),
        }
    }

    /// Normalized Taylor coefficient `U_k/k!` at a unit point.
    fn taylor(&self, point: &UnitPoint, k: i64) -> CoeffPoly {
        let d = u32::try_from(k).expect("nonnegative derivative order");
        self.rewrite(&CoeffSymbol::unit(point.clone(), d))
            .scale(&factorial(d).recip())
    }

    /// Rewrites every symbol into free generators.
    pub fn normalize(&self, p: &CoeffPoly) -> Result<CoeffPoly, LaurentError> {
        let mut failure = None;
        let out = p.map_symbols(|s, e| {
            let r = self.rewrite(s);
            r.pow(e).unwrap_or_else(|| {
                failure = Some(format!("{s}^{e}"));
                CoeffPoly::zero()
            })
        });
        match failure {
            Some(f) => Err(LaurentError::NonUnit(f)),
            None => Ok(out),
        }
    }

    pub fn normalize_series(&self, s: &LaurentSeries) -> Result<LaurentSeries, LaurentError> {
        s.try_map_coefficients(|c| self.normalize(c))
    }
}

/// Solves for `B_n` given the free side `A` (lowest index `p`) and lower `B`'s.
fn pair_solve(
    a: impl Fn(i64) -> CoeffPoly,
    b: impl Fn(i64) -> CoeffPoly,
    p: i64,
    n: i64,
) -> CoeffPoly {
    let d = n + p;
    if d < 0 {
        return CoeffPoly::zero();
    }
    let mut bracket = if d == 0 {
        CoeffPoly::one()
    } else {
        CoeffPoly::zero()
    };
    for i in (p + 1)..=(p + d) {
        let term = &a(i) * &b(d - i);
        bracket = &bracket - &term.scale(&sign(d - i));
    }
    let lead_inv = a(p).inverse().expect("leading coefficient is a unit");
    (&lead_inv * &bracket).scale(&sign(d - p))
}

/// Solves `Σ_{i+k=D} (-1)^k A_i A_k = 0` for an even `D ≥ 2`, with `A_0² = 1`.
fn self_paired_solve(a: impl Fn(i64) -> CoeffPoly, a0: &CoeffPoly, d: i64) -> CoeffPoly {
    debug_assert!(d >= 2 && d % 2 == 0);
    let m = d / 2;
    let mut bracket = CoeffPoly::zero();
    for i in 1..m {
        bracket = &bracket + &(&a(i) * &a(d - i)).scale(&(sign(i) * int(2)));
    }
    bracket = &bracket + &(&a(m) * &a(m)).scale(&sign(m));
    (a0 * &bracket).scale(&rat(-1, 2))
}

/// An oriented rewrite `lhs = rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lhs: CoeffSymbol,
    pub rhs: CoeffPoly,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RuleSet {
    pub rules: Vec<Rule>,
}

impl RuleSet {
    pub fn get(&self, lhs: &CoeffSymbol) -> Option<&CoeffPoly> {
        self.rules.iter().find(|r| &r.lhs == lhs).map(|r| &r.rhs)
    }

    fn push(&mut self, relations: &Relations, lhs: CoeffSymbol) {
        let rhs = relations.rewrite(&lhs);
        self.rules.push(Rule { lhs, rhs });
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }
}

impl fmt::Display for RuleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rules {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

/// Zeta-coefficient relations up to `max_order`.
///
/// Produces `c_{i,-1}` for `1 ≤ i ≤ max_order+1`, `c_{0,0}` and the even `c_{i,0}`
/// for `i ≤ max_order+1`, and `c_{0,-j}` for `2 ≤ j ≤ max_order+1`.
pub fn derive_c_relations(max_order: i64) -> Result<RuleSet, LaurentError> {
    if max_order < 1 {
        return Err(LaurentError::InvalidOrder(max_order));
    }
    let rel = Relations::global();
    let mut set = RuleSet::default();
    for i in 1..=max_order + 1 {
        set.push(rel, CoeffSymbol::zeta(i, -1));
    }
    for i in (0..=max_order + 1).step_by(2) {
        set.push(rel, CoeffSymbol::zeta(i, 0));
    }
    for j in 2..=max_order + 1 {
        set.push(rel, CoeffSymbol::zeta(0, -j));
    }
    Ok(set)
}

/// Relations between c-values at `χ0 + value` and `-χ0 - value`, `χ0` of order `n`.
///
/// Lists the derivatives `0..=max_deriv` of the eliminated side. For `n = 1` and an
/// integral value the point is a lattice point and the zeta relations are listed.
pub fn unit_relations(n: u32, value: &Rat, max_deriv: u32) -> Result<RuleSet, LaurentError> {
    if n == 0 {
        return Err(LaurentError::InvalidOrder(0));
    }
    let rel = Relations::global();
    let mut set = RuleSet::default();
    let class = TorsionClass::new("χ0", Order::Finite(n));
    let torsion = Torsion::single(class, 1);
    if torsion.is_trivial() {
        if let Some(j) = to_i64(value) {
            let j = -j.abs();
            let lo = ord_c(j);
            for i in lo..=lo + i64::from(max_deriv) {
                let s = CoeffSymbol::zeta(i, j);
                if !Relations::is_free(&s) {
                    set.push(rel, s);
                }
            }
            return Ok(set);
        }
    }
    let point = UnitPoint::new(torsion, value.clone());
    let eliminated = if point.is_canonical() {
        point.negate()
    } else {
        point
    };
    for d in 0..=max_deriv {
        let s = CoeffSymbol::unit(eliminated.clone(), d);
        if !Relations::is_free(&s) {
            set.push(rel, s);
        }
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(i: i64, j: i64) -> CoeffPoly {
        CoeffPoly::symbol(CoeffSymbol::zeta(i, j))
    }

    #[test]
    fn first_relations() {
        let set = derive_c_relations(3).unwrap();
        let cm = c(-1, 1);
        assert_eq!(
            set.get(&CoeffSymbol::zeta(1, -1)).unwrap(),
            &-&cm.inverse().unwrap()
        );
        assert_eq!(
            set.get(&CoeffSymbol::zeta(0, 0)).unwrap(),
            &CoeffPoly::int(-1)
        );
        assert_eq!(
            set.get(&CoeffSymbol::zeta(2, 0)).unwrap(),
            &(&c(1, 0) * &c(1, 0)).scale(&rat(-1, 2))
        );
        assert_eq!(
            set.get(&CoeffSymbol::zeta(0, -2)).unwrap(),
            &c(0, 2).inverse().unwrap()
        );
    }

    #[test]
    fn rejects_order_zero() {
        assert!(derive_c_relations(0).is_err());
    }

    #[test]
    fn unit_pairs_multiply_to_one() {
        let rel = Relations::global();
        for n in [2u32, 3, 5] {
            let class = TorsionClass::chi0(n);
            let p = UnitPoint::new(Torsion::single(class, 1), rat(1, 2));
            let prod = &CoeffPoly::symbol(CoeffSymbol::unit(p.clone(), 0))
                * &CoeffPoly::symbol(CoeffSymbol::unit(p.negate(), 0));
            assert_eq!(rel.normalize(&prod).unwrap(), CoeffPoly::one());
        }
    }

    #[test]
    fn order_one_is_zeta() {
        let set = unit_relations(1, &int(1), 2).unwrap();
        let zeta = derive_c_relations(2).unwrap();
        for r in &set.rules {
            assert_eq!(zeta.get(&r.lhs), Some(&r.rhs));
        }
        assert_eq!(set.len(), 3);
    }
}
