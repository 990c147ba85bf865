//! Coefficient symbols, monomials and the polynomial ring they generate.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::charalg::{Gl1Char, Torsion};
use crate::rational::{int, Rat};

/// Base point of a c-value that is a unit: nontrivial torsion, or an off-lattice real value.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnitPoint {
    pub torsion: Torsion,
    pub value: Rat,
}

impl UnitPoint {
    pub fn new(torsion: Torsion, value: Rat) -> Self {
        UnitPoint { torsion, value }
    }

    pub fn negate(&self) -> UnitPoint {
        UnitPoint::new(self.torsion.negate(), -&self.value)
    }

    pub fn is_self_paired(&self) -> bool {
        self.value.is_zero() && self.torsion == self.torsion.negate()
    }

    /// The member of `{p, -p}` whose symbols stay free.
    pub fn is_canonical(&self) -> bool {
        self.value.is_positive() || (self.value.is_zero() && self.torsion >= self.torsion.negate())
    }

    pub fn as_char(&self) -> Gl1Char {
        let mut c = Gl1Char::constant(self.value.clone());
        for (class, k) in self.torsion.iter() {
            c = c.with_torsion(class.clone(), k);
        }
        c
    }
}

impl fmt::Display for UnitPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Order of `c` at the integer `j`.
pub fn ord_c(j: i64) -> i64 {
    match j {
        -1 => 1,
        1 => -1,
        _ => 0,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoeffSymbol {
    /// `c_{i,j}`: the `i`th Laurent coefficient of `c` at the integer `j`.
    Zeta { i: i64, j: i64 },
    /// `deriv`-th derivative of the relevant c-function at a unit point.
    Unit { point: UnitPoint, deriv: u32 },
    /// `ℓ1`.
    Log1,
    /// `ℓ2`.
    Log2,
}

impl CoeffSymbol {
    pub fn zeta(i: i64, j: i64) -> Self {
        debug_assert!(i >= ord_c(j), "c_{{{i},{j}}} below the order of c at {j}");
        CoeffSymbol::Zeta { i, j }
    }

    pub fn unit(point: UnitPoint, deriv: u32) -> Self {
        CoeffSymbol::Unit { point, deriv }
    }

    /// Symbols that may carry negative exponents.
    pub fn is_invertible(&self) -> bool {
        match self {
            CoeffSymbol::Zeta { i, j } => *i == ord_c(*j),
            CoeffSymbol::Unit { deriv, .. } => *deriv == 0,
            _ => false,
        }
    }

    /// `x` with `x² = 1`, so exponents reduce mod 2.
    fn is_involution(&self) -> bool {
        matches!(self, CoeffSymbol::Unit { point, deriv: 0 } if point.is_self_paired())
    }
}

impl fmt::Display for CoeffSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffSymbol::Zeta { i, j } => write!(f, "c_{{{i},{j}}}"),
            CoeffSymbol::Unit { point, deriv } => write!(f, "U{deriv}[{point}]"),
            CoeffSymbol::Log1 => write!(f, "ℓ1"),
            CoeffSymbol::Log2 => write!(f, "ℓ2"),
        }
    }
}

/// Product of symbols with nonzero integer exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(BTreeMap<CoeffSymbol, i32>);

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn symbol(s: CoeffSymbol, exp: i32) -> Self {
        let mut m = Monomial::one();
        m.mul_symbol(&s, exp);
        m
    }

    fn mul_symbol(&mut self, s: &CoeffSymbol, exp: i32) {
        let e = self.0.entry(s.clone()).or_insert(0);
        *e += exp;
        if s.is_involution() {
            *e = e.rem_euclid(2);
        }
        if *e == 0 {
            self.0.remove(s);
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CoeffSymbol, i32)> {
        self.0.iter().map(|(s, e)| (s, *e))
    }

    pub fn degree_in(&self, s: &CoeffSymbol) -> i32 {
        self.0.get(s).copied().unwrap_or(0)
    }

    pub fn is_invertible(&self) -> bool {
        self.0.keys().all(CoeffSymbol::is_invertible)
    }

    pub fn inverse(&self) -> Option<Monomial> {
        self.is_invertible().then(|| {
            let mut m = Monomial::one();
            for (s, e) in self.iter() {
                m.mul_symbol(s, -e);
            }
            m
        })
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = self.clone();
        for (s, e) in other.iter() {
            m.mul_symbol(s, e);
        }
        m
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .iter()
            .map(|(s, e)| match e {
                1 => s.to_string(),
                e => format!("{s}^{e}"),
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Polynomial (Laurent in unit symbols) with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoeffPoly(BTreeMap<Monomial, Rat>);

impl CoeffPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(r: Rat) -> Self {
        Self::term(Monomial::one(), r)
    }

    pub fn int(n: i64) -> Self {
        Self::constant(int(n))
    }

    pub fn term(m: Monomial, r: Rat) -> Self {
        let mut p = CoeffPoly::zero();
        p.add_term(m, r);
        p
    }

    pub fn symbol(s: CoeffSymbol) -> Self {
        Self::term(Monomial::symbol(s, 1), Rat::one())
    }

    pub fn symbol_pow(s: CoeffSymbol, exp: i32) -> Self {
        Self::term(Monomial::symbol(s, exp), Rat::one())
    }

    fn add_term(&mut self, m: Monomial, r: Rat) {
        if r.is_zero() {
            return;
        }
        let entry = self.0.entry(m.clone()).or_insert_with(Rat::zero);
        *entry += r;
        if entry.is_zero() {
            self.0.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Coefficient of a given monomial.
    pub fn coefficient(&self, m: &Monomial) -> Rat {
        self.0.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn as_constant(&self) -> Option<Rat> {
        match self.0.len() {
            0 => Some(Rat::zero()),
            1 => self.0.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, r: &Rat) -> CoeffPoly {
        if r.is_zero() {
            return CoeffPoly::zero();
        }
        CoeffPoly(self.0.iter().map(|(m, c)| (m.clone(), c * r)).collect())
    }

    /// Inverse when the polynomial is a single invertible monomial.
    pub fn inverse(&self) -> Option<CoeffPoly> {
        let mut it = self.0.iter();
        let (m, c) = it.next()?;
        if it.next().is_some() {
            return None;
        }
        Some(CoeffPoly::term(m.inverse()?, c.recip()))
    }

    pub fn pow(&self, e: i32) -> Option<CoeffPoly> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        Some((0..e.unsigned_abs()).fold(CoeffPoly::one(), |acc, _| &acc * &base))
    }

    /// Replaces every occurrence of a symbol, the replacement raised to each exponent.
    pub fn map_symbols(&self, mut f: impl FnMut(&CoeffSymbol, i32) -> CoeffPoly) -> CoeffPoly {
        let mut out = CoeffPoly::zero();
        for (m, c) in self.terms() {
            let mut prod = CoeffPoly::constant(c.clone());
            for (s, e) in m.iter() {
                prod = &prod * &f(s, e);
            }
            out = &out + &prod;
        }
        out
    }

    pub fn symbols(&self) -> impl Iterator<Item = &CoeffSymbol> {
        self.0.keys().flat_map(|m| m.0.keys())
    }
}

impl Add for &CoeffPoly {
    type Output = CoeffPoly;

    fn add(self, rhs: &CoeffPoly) -> CoeffPoly {
        let mut out = self.clone();
        for (m, c) in rhs.terms() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &CoeffPoly {
    type Output = CoeffPoly;

    fn sub(self, rhs: &CoeffPoly) -> CoeffPoly {
        self + &(-rhs)
    }
}

impl Neg for &CoeffPoly {
    type Output = CoeffPoly;

    fn neg(self) -> CoeffPoly {
        CoeffPoly(self.0.iter().map(|(m, c)| (m.clone(), -c)).collect())
    }
}

impl Mul for &CoeffPoly {
    type Output = CoeffPoly;

    fn mul(self, rhs: &CoeffPoly) -> CoeffPoly {
        let mut out = CoeffPoly::zero();
        for (ma, ca) in self.terms() {
            for (mb, cb) in rhs.terms() {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for CoeffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms().enumerate() {
            let mag = c.abs();
            let body = match (m.is_one(), mag.is_one()) {
                (true, _) => mag.to_string(),
                (false, true) => m.to_string(),
                (false, false) => format!("{mag}*{m}"),
            };
            match (idx, c.is_negative()) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}
