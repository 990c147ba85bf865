//! Truncated Laurent series with [`CoeffPoly`] coefficients.

use std::fmt;

use super::poly::CoeffPoly;
use super::LaurentError;
use crate::rational::{int, pow_i, Rat};

/// `Σ_{k=start}^{trunc-1} coeffs[k-start]·var^k + O(var^trunc)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentSeries {
    var: String,
    start: i64,
    coeffs: Vec<CoeffPoly>,
    trunc: i64,
}

impl LaurentSeries {
    /// Builds a series; coefficients past `trunc` are dropped and missing ones are zero.
    pub fn new(var: &str, start: i64, mut coeffs: Vec<CoeffPoly>, trunc: i64) -> Self {
        let len = usize::try_from((trunc - start).max(0)).unwrap_or(0);
        coeffs.resize(len, CoeffPoly::zero());
        LaurentSeries {
            var: var.to_string(),
            start: start.min(trunc),
            coeffs,
            trunc,
        }
    }

    /// The exact zero series known up to `trunc`.
    pub fn zero(var: &str, trunc: i64) -> Self {
        Self::new(var, trunc, Vec::new(), trunc)
    }

    pub fn constant(var: &str, c: CoeffPoly, trunc: i64) -> Self {
        Self::new(var, 0, vec![c], trunc)
    }

    pub fn one(var: &str, trunc: i64) -> Self {
        Self::constant(var, CoeffPoly::one(), trunc)
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    /// Exclusive upper degree of known coefficients.
    pub fn truncation(&self) -> i64 {
        self.trunc
    }

    pub fn coefficient(&self, k: i64) -> CoeffPoly {
        if k < self.start || k >= self.trunc {
            return CoeffPoly::zero();
        }
        self.coeffs[(k - self.start) as usize].clone()
    }

    /// Known `(degree, coefficient)` pairs with nonzero coefficient.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &CoeffPoly)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.start + i as i64, c))
    }

    /// Degree of the first nonzero coefficient, `None` if zero up to truncation.
    pub fn valuation(&self) -> Option<i64> {
        self.terms().next().map(|(k, _)| k)
    }

    /// Lower bound on the valuation that is exact whenever the series is nonzero.
    fn valuation_or_trunc(&self) -> i64 {
        self.valuation().unwrap_or(self.trunc)
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    /// Drops every coefficient of degree ≥ `n`.
    pub fn truncate(&self, n: i64) -> LaurentSeries {
        let n = n.min(self.trunc);
        let coeffs = (self.start..n).map(|k| self.coefficient(k)).collect();
        Self::new(&self.var, self.start.min(n), coeffs, n)
    }

    fn check_var(&self, other: &LaurentSeries) -> Result<(), LaurentError> {
        if self.var == other.var {
            Ok(())
        } else {
            Err(LaurentError::VariableMismatch(
                self.var.clone(),
                other.var.clone(),
            ))
        }
    }

    pub fn add(&self, other: &LaurentSeries) -> Result<LaurentSeries, LaurentError> {
        self.check_var(other)?;
        let trunc = self.trunc.min(other.trunc);
        let start = self.start.min(other.start).min(trunc);
        let coeffs = (start..trunc)
            .map(|k| &self.coefficient(k) + &other.coefficient(k))
            .collect();
        Ok(Self::new(&self.var, start, coeffs, trunc))
    }

    pub fn sub(&self, other: &LaurentSeries) -> Result<LaurentSeries, LaurentError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LaurentSeries {
        self.map_coeffs(|c| -c)
    }

    pub fn scalar_mul(&self, r: &Rat) -> LaurentSeries {
        self.map_coeffs(|c| c.scale(r))
    }

    pub fn poly_mul(&self, p: &CoeffPoly) -> LaurentSeries {
        self.map_coeffs(|c| c * p)
    }

    fn map_coeffs(&self, f: impl Fn(&CoeffPoly) -> CoeffPoly) -> LaurentSeries {
        LaurentSeries {
            var: self.var.clone(),
            start: self.start,
            coeffs: self.coeffs.iter().map(f).collect(),
            trunc: self.trunc,
        }
    }

    /// Product; known up to `min(v(a) + N(b), v(b) + N(a))`.
    pub fn mul(&self, other: &LaurentSeries) -> Result<LaurentSeries, LaurentError> {
        self.check_var(other)?;
        let va = self.valuation_or_trunc();
        let vb = other.valuation_or_trunc();
        let trunc = (va + other.trunc).min(vb + self.trunc);
        let start = (va + vb).min(trunc);
        let mut coeffs = vec![CoeffPoly::zero(); (trunc - start).max(0) as usize];
        for (i, a) in self.terms() {
            for (j, b) in other.terms() {
                let k = i + j;
                if k < trunc {
                    let slot = &mut coeffs[(k - start) as usize];
                    *slot = &*slot + &(a * b);
                }
            }
        }
        Ok(Self::new(&self.var, start, coeffs, trunc))
    }

    /// Multiplies a list of series; the empty product is `1 + O(var^trunc)`.
    pub fn product<'a>(
        var: &str,
        factors: impl IntoIterator<Item = &'a LaurentSeries>,
        trunc: i64,
    ) -> Result<LaurentSeries, LaurentError> {
        factors
            .into_iter()
            .try_fold(LaurentSeries::one(var, trunc), |acc, f| acc.mul(f))
    }

    /// Inverse of a series whose leading coefficient is an invertible monomial.
    pub fn invert_unit(&self) -> Result<LaurentSeries, LaurentError> {
        let v = self
            .valuation()
            .ok_or_else(|| LaurentError::NonUnit("0".to_string()))?;
        let lead = self.coefficient(v);
        let lead_inv = lead
            .inverse()
            .ok_or_else(|| LaurentError::NonUnit(lead.to_string()))?;
        let rel = self.trunc - v;
        let mut inv: Vec<CoeffPoly> = Vec::with_capacity(rel as usize);
        for k in 0..rel {
            if k == 0 {
                inv.push(lead_inv.clone());
                continue;
            }
            let mut acc = CoeffPoly::zero();
            for i in 1..=k {
                let a = self.coefficient(v + i);
                if !a.is_zero() {
                    acc = &acc + &(&a * &inv[(k - i) as usize]);
                }
            }
            inv.push(-&(&lead_inv * &acc));
        }
        Ok(Self::new(&self.var, -v, inv, rel - v))
    }

    /// Rescales the variable: `f(var) ↦ f(λ·var)`.
    pub fn rescale(&self, lambda: &Rat) -> LaurentSeries {
        let coeffs = (self.start..self.trunc)
            .map(|k| self.coefficient(k).scale(&pow_i(lambda, k)))
            .collect();
        Self::new(&self.var, self.start, coeffs, self.trunc)
    }

    pub fn map_coefficients(&self, f: impl Fn(&CoeffPoly) -> CoeffPoly) -> LaurentSeries {
        self.map_coeffs(f)
    }

    pub fn try_map_coefficients<E>(
        &self,
        f: impl Fn(&CoeffPoly) -> Result<CoeffPoly, E>,
    ) -> Result<LaurentSeries, E> {
        Ok(LaurentSeries {
            var: self.var.clone(),
            start: self.start,
            coeffs: self.coeffs.iter().map(f).collect::<Result<_, _>>()?,
            trunc: self.trunc,
        })
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (k, c) in self.terms() {
            let power = match k {
                0 => String::new(),
                1 => self.var.clone(),
                k => format!("{}^{k}", self.var),
            };
            let body = if power.is_empty() {
                format!("({c})")
            } else if c.as_constant() == Some(int(1)) {
                power
            } else {
                format!("({c})*{power}")
            };
            parts.push(body);
        }
        parts.push(format!("O({}^{})", self.var, self.trunc));
        write!(f, "{}", parts.join(" + "))
    }
}
