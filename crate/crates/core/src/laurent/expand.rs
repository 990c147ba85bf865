//! Expansion of `c(arg)` around `var = 0`.

use num_traits::Zero;

use super::poly::{ord_c, CoeffPoly, CoeffSymbol, UnitPoint};
use super::{LaurentError, LaurentSeries, Relations};
use crate::charalg::Gl1Char;
use crate::rational::{factorial, pow_i, to_i64, Rat};

/// What to do with a trivial-torsion argument whose base value is not an integer.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OffLatticePolicy {
    /// Refuse with [`LaurentError::OffLattice`].
    #[default]
    Strict,
    /// Treat `c` there as an opaque unit: it is finite and nonzero off the integers.
    AsUnit,
}

/// Base point of `arg` at `var = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasePoint {
    Lattice(i64),
    Unit(UnitPoint),
}

/// Splits `arg = base + m·var`, rejecting other variables.
pub fn split_argument(arg: &Gl1Char, var: &str) -> Result<(Rat, Gl1Char), LaurentError> {
    if let Some(other) = arg.variables().find(|v| *v != var) {
        return Err(LaurentError::UnexpectedVariable {
            arg: arg.to_string(),
            var: other.to_string(),
        });
    }
    let m = arg.coefficient(var);
    let base = arg
        .substitute(var, &Gl1Char::zero())
        .expect("substituting zero never scales torsion");
    Ok((m, base))
}

pub fn base_point(base: &Gl1Char, policy: OffLatticePolicy) -> Result<BasePoint, LaurentError> {
    let value = base.constant_part().clone();
    if !base.torsion().is_trivial() {
        return Ok(BasePoint::Unit(UnitPoint::new(
            base.torsion().clone(),
            value,
        )));
    }
    match (to_i64(&value), policy) {
        (Some(j), _) => Ok(BasePoint::Lattice(j)),
        (None, OffLatticePolicy::AsUnit) => Ok(BasePoint::Unit(UnitPoint::new(
            base.torsion().clone(),
            value,
        ))),
        (None, OffLatticePolicy::Strict) => Err(LaurentError::OffLattice(base.to_string())),
    }
}

/// Order of `c(arg)` at `var = 0` read off the base point.
pub fn apriori_valuation(arg: &Gl1Char, var: &str) -> Result<i64, LaurentError> {
    let (m, base) = split_argument(arg, var)?;
    match base_point(&base, OffLatticePolicy::AsUnit)? {
        BasePoint::Lattice(j) if !m.is_zero() => Ok(ord_c(j)),
        BasePoint::Lattice(j) if ord_c(j) != 0 => {
            Err(LaurentError::DegenerateArgument(arg.to_string()))
        }
        _ => Ok(0),
    }
}

/// `c(arg)` as a series in `var`, known below degree `order`.
///
/// Trivial torsion at an integer `j` uses the `c_{i,j}`; nontrivial torsion uses
/// unit symbols with increasing derivative order.
pub fn expand_c(arg: &Gl1Char, var: &str, order: i64) -> Result<LaurentSeries, LaurentError> {
    expand_c_with(arg, var, order, OffLatticePolicy::Strict)
}

pub fn expand_c_with(
    arg: &Gl1Char,
    var: &str,
    order: i64,
    policy: OffLatticePolicy,
) -> Result<LaurentSeries, LaurentError> {
    let (m, base) = split_argument(arg, var)?;
    let point = base_point(&base, policy)?;
    let (start, coeff): (i64, Box<dyn Fn(i64) -> CoeffPoly>) = match point {
        BasePoint::Lattice(j) => {
            if m.is_zero() && ord_c(j) != 0 {
                return Err(LaurentError::DegenerateArgument(arg.to_string()));
            }
            (
                ord_c(j),
                Box::new(move |i| CoeffPoly::symbol(CoeffSymbol::zeta(i, j))),
            )
        }
        BasePoint::Unit(p) => (
            0,
            Box::new(move |i| {
                let d = i as u32;
                CoeffPoly::symbol(CoeffSymbol::unit(p.clone(), d)).scale(&factorial(d).recip())
            }),
        ),
    };
    let coeffs = (start..order)
        .map(|i| {
            if m.is_zero() {
                if i == 0 {
                    coeff(0)
                } else {
                    CoeffPoly::zero()
                }
            } else {
                coeff(i).scale(&pow_i(&m, i))
            }
        })
        .collect();
    let series = LaurentSeries::new(var, start, coeffs, order);
    Relations::global().normalize_series(&series)
}
