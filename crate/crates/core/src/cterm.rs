//! Constant terms of degenerate Eisenstein series as Weyl sums.
//!
//! For an inducing character `χ` on the parabolic `P` (or `Q`), the constant term
//! along `B` is `Σ_w c(w, χ)·f°_{wχ}` over the six `w` with `wα > 0` (or `wβ > 0`),
//! where `c(w, χ)` is the product of `c(⟨χ, γ∨⟩)` over the inversion set of `w`.
//! Writing `wχ = [a, b] + u[c, d]`, the spherical vector expands as
//! `f°_{[a,b]}·exp(⟨c, d⟩u)`, so terms are grouped by the weight `[a, b]` at `u = 0`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::charalg::{CharError, Gl1Char, Order, TorsionClass, TorusChar};
use crate::laurent::{
    apriori_valuation, expand_c_with, log_pairing, CoeffPoly, LaurentError, LaurentSeries,
    OffLatticePolicy,
};
use crate::rational::{factorial, int, rat, Rat};
use crate::rootsys::{degenerate_weyl_set, Orientation, Parabolic, RootError, WeylElt};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CtermError {
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error(transparent)]
    Char(#[from] CharError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("inducing character {chi} is not on the degenerate locus of {parabolic:?}")]
    NotDegenerate { chi: String, parabolic: Parabolic },
    #[error("point {0} is not one of 1/2, 5/9, 2/3, 1")]
    UnsupportedPoint(String),
    #[error("torsion order {0} is not one of 1, 2, 3")]
    UnsupportedOrder(u32),
}

/// A degenerate Eisenstein series: parabolic plus inducing torus character in one variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EisensteinSpec {
    pub parabolic: Parabolic,
    pub inducing: TorusChar,
    pub var: String,
}

impl EisensteinSpec {
    /// Checks that the Levi coordinate is `-1` at `var = 0`.
    pub fn new(parabolic: Parabolic, inducing: TorusChar, var: &str) -> Result<Self, CtermError> {
        let levi = match parabolic {
            Parabolic::P => &inducing.c1,
            Parabolic::Q => &inducing.c2,
        };
        let at_zero = levi.substitute(var, &Gl1Char::zero())?;
        if at_zero.variables().next().is_some() || at_zero.constant_part() != &int(-1) {
            return Err(CtermError::NotDegenerate {
                chi: inducing.to_string(),
                parabolic,
            });
        }
        Ok(EisensteinSpec {
            parabolic,
            inducing,
            var: var.to_string(),
        })
    }

    pub fn orientation(&self) -> Orientation {
        self.inducing.orientation
    }

    pub fn weyl_terms(&self) -> Result<Vec<WeylTerm>, CtermError> {
        degenerate_weyl_set(self.parabolic, self.orientation())
            .into_iter()
            .map(|w| WeylTerm::new(w, &self.inducing, &self.var))
            .collect()
    }
}

/// Arguments of the rank-one c-factors of `c(w, χ)`, in the order the letters apply.
pub fn c_factors(w: &WeylElt, chi: &TorusChar) -> Vec<Gl1Char> {
    let mut current = chi.clone();
    let mut out = Vec::with_capacity(w.len());
    for s in w.application_order() {
        out.push(current.simple_pairing(s).clone());
        current = current.reflect(s);
    }
    out
}

/// The same multiset computed from the inversion set, sorted.
pub fn c_factors_by_inversion(w: &WeylElt, chi: &TorusChar) -> Result<Vec<Gl1Char>, CtermError> {
    let mut out = w
        .inversion_set(chi.orientation)?
        .iter()
        .map(|r| chi.coroot_pairing(r))
        .collect::<Result<Vec<_>, _>>()?;
    out.sort();
    Ok(out)
}

/// One summand `c(w, χ)·f°_{wχ}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylTerm {
    pub w: WeylElt,
    pub factors: Vec<Gl1Char>,
    pub image: TorusChar,
    /// `wχ` at `var = 0`.
    pub key: TorusChar,
    /// Coefficient of `var` in `wχ`.
    pub direction: [Rat; 2],
}

impl WeylTerm {
    pub fn new(w: WeylElt, chi: &TorusChar, var: &str) -> Result<Self, CtermError> {
        let image = chi.weyl_act(&w);
        let key = image.substitute(var, &Gl1Char::zero())?;
        let direction = [image.c1.coefficient(var), image.c2.coefficient(var)];
        Ok(WeylTerm {
            factors: c_factors(&w, chi),
            w,
            image,
            key,
            direction,
        })
    }

    pub fn sorted_factors(&self) -> Vec<Gl1Char> {
        let mut f = self.factors.clone();
        f.sort();
        f
    }

    /// Pole order at `var = 0` read off the arguments: `#{1} - #{-1}` at trivial torsion.
    pub fn apriori_pole_order(&self, var: &str) -> Result<i64, CtermError> {
        let mut v = 0;
        for f in &self.factors {
            v += apriori_valuation(f, var)?;
        }
        Ok(-v)
    }
}

/// `f°_{[a,b]+u[c,d]} = f°_{[a,b]}·Σ ⟨c,d⟩^m u^m / m!`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphericalTerm {
    pub base_weight: TorusChar,
    pub series: LaurentSeries,
}

pub fn spherical_expand(
    base: &TorusChar,
    direction: [&Rat; 2],
    var: &str,
    order: i64,
) -> SphericalTerm {
    let pairing = log_pairing(direction[0], direction[1]);
    let mut coeffs = Vec::new();
    let mut power = CoeffPoly::one();
    for m in 0..order.max(0) {
        coeffs.push(power.scale(&factorial(m as u32).recip()));
        power = &power * &pairing;
    }
    SphericalTerm {
        base_weight: base.clone(),
        series: LaurentSeries::new(var, 0, coeffs, order),
    }
}

/// Common factor multiplying every summand: `scalar·Π c(factor)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prefactor {
    pub scalar: Rat,
    pub factors: Vec<Gl1Char>,
}

impl Default for Prefactor {
    fn default() -> Self {
        Prefactor {
            scalar: Rat::one(),
            factors: Vec::new(),
        }
    }
}

/// `scalar·Π c(factors)·f°` for one summand, known below `target`.
pub fn term_series(
    factors: &[Gl1Char],
    direction: [&Rat; 2],
    var: &str,
    target: i64,
    scalar: &Rat,
    policy: OffLatticePolicy,
) -> Result<LaurentSeries, CtermError> {
    let vals = factors
        .iter()
        .map(|f| apriori_valuation(f, var))
        .collect::<Result<Vec<_>, _>>()?;
    let total: i64 = vals.iter().sum();
    let mut series = Vec::with_capacity(factors.len() + 1);
    for (f, v) in factors.iter().zip(&vals) {
        series.push(expand_c_with(f, var, target - (total - v), policy)?);
    }
    let base = TorusChar::constant(Rat::zero(), Rat::zero(), Orientation::default());
    series.push(spherical_expand(&base, direction, var, target - total).series);
    let product = LaurentSeries::product(var, &series, target - total)?;
    if product.truncation() < target {
        return Err(LaurentError::OrderTooLow {
            needed: target,
            got: product.truncation(),
        }
        .into());
    }
    Ok(product.truncate(target).scalar_mul(scalar))
}

/// The constant term grouped by weight at `var = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstantTerm {
    pub var: String,
    pub target: i64,
    pub weyl_terms: Vec<WeylTerm>,
    pub terms: BTreeMap<TorusChar, LaurentSeries>,
}

impl ConstantTerm {
    pub fn get(&self, key: &TorusChar) -> Option<&LaurentSeries> {
        self.terms.get(key)
    }

    /// Weyl elements contributing to each weight.
    pub fn grouping(&self) -> BTreeMap<TorusChar, Vec<WeylElt>> {
        let mut out: BTreeMap<TorusChar, Vec<WeylElt>> = BTreeMap::new();
        for t in &self.weyl_terms {
            out.entry(t.key.clone()).or_default().push(t.w.clone());
        }
        out
    }
}

impl fmt::Display for ConstantTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (key, series) in &self.terms {
            writeln!(f, "f°{key}: {series}")?;
        }
        Ok(())
    }
}

/// Constant term known below degree `target` in the expansion variable.
pub fn constant_term(spec: &EisensteinSpec, target: i64) -> Result<ConstantTerm, CtermError> {
    constant_term_with(
        spec,
        target,
        &Prefactor::default(),
        OffLatticePolicy::Strict,
    )
}

pub fn constant_term_with(
    spec: &EisensteinSpec,
    target: i64,
    prefactor: &Prefactor,
    policy: OffLatticePolicy,
) -> Result<ConstantTerm, CtermError> {
    let weyl_terms = spec.weyl_terms()?;
    let mut terms: BTreeMap<TorusChar, LaurentSeries> = BTreeMap::new();
    for t in &weyl_terms {
        let mut factors = prefactor.factors.clone();
        factors.extend(t.factors.iter().cloned());
        let s = term_series(
            &factors,
            [&t.direction[0], &t.direction[1]],
            &spec.var,
            target,
            &prefactor.scalar,
            policy,
        )?;
        let entry = terms
            .entry(t.key.clone())
            .or_insert_with(|| LaurentSeries::zero(&spec.var, target));
        *entry = entry.add(&s)?;
    }
    Ok(ConstantTerm {
        var: spec.var.clone(),
        target,
        weyl_terms,
        terms,
    })
}

/// Sum over the summands in one eigenspace, with one copy of `omit` removed from each.
pub fn eigenspace_without_factor(
    spec: &EisensteinSpec,
    key: &TorusChar,
    omit: &Gl1Char,
    prefactor: &Prefactor,
    target: i64,
) -> Result<LaurentSeries, CtermError> {
    let mut sum = LaurentSeries::zero(&spec.var, target);
    for t in spec.weyl_terms()?.iter().filter(|t| &t.key == key) {
        let mut factors = prefactor.factors.clone();
        factors.extend(t.factors.iter().cloned());
        if let Some(pos) = factors.iter().position(|f| f == omit) {
            factors.remove(pos);
        }
        let s = term_series(
            &factors,
            [&t.direction[0], &t.direction[1]],
            &spec.var,
            target,
            &prefactor.scalar,
            OffLatticePolicy::Strict,
        )?;
        sum = sum.add(&s)?;
    }
    Ok(sum)
}

fn gl1(s: &str, classes: &[TorsionClass]) -> Gl1Char {
    Gl1Char::parse(s, classes).expect("well-formed literal")
}

fn torus(a: &str, b: &str, classes: &[TorsionClass]) -> TorusChar {
    TorusChar::new(gl1(a, classes), gl1(b, classes), Orientation::BetaLong)
}

/// `E_Q f°_{[3u+2,-1]}`.
pub fn second_term_q_spec() -> EisensteinSpec {
    EisensteinSpec::new(Parabolic::Q, torus("3u + 2", "-1", &[]), "u").expect("degenerate")
}

/// `E_P f°_{[-1,u+1]}`.
pub fn second_term_p_spec() -> EisensteinSpec {
    EisensteinSpec::new(Parabolic::P, torus("-1", "u + 1", &[]), "u").expect("degenerate")
}

/// `(1/3)c(u)c(3u-1)`.
pub fn second_term_prefactor() -> Prefactor {
    Prefactor {
        scalar: rat(1, 3),
        factors: vec![gl1("u", &[]), gl1("3u - 1", &[])],
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenspaceDifference {
    pub weight: String,
    pub q_side: String,
    pub p_side: String,
    pub difference: String,
    /// Lowest degree with a nonzero coefficient in the difference, if any.
    pub valuation: Option<i64>,
    pub vanishes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SecondTermReport {
    pub order: i64,
    pub eigenspaces: Vec<EigenspaceDifference>,
    /// The `[1,-1]` part of the prefactored `P` side with `c(3u+2)` removed.
    pub reduced_p_display: String,
    pub passed: bool,
}

/// Certifies that every coefficient of `u^k`, `k ≤ 0`, of
/// `E_Q f°_{[3u+2,-1]} - (1/3)c(u)c(3u-1)E_P f°_{[-1,u+1]}` vanishes in every eigenspace.
pub fn verify_second_term_identity(order: i64) -> Result<SecondTermReport, CtermError> {
    if order < 1 {
        return Err(LaurentError::OrderTooLow {
            needed: 1,
            got: order,
        }
        .into());
    }
    let q = constant_term(&second_term_q_spec(), order)?;
    let p = constant_term_with(
        &second_term_p_spec(),
        order,
        &second_term_prefactor(),
        OffLatticePolicy::Strict,
    )?;
    let zero = LaurentSeries::zero("u", order);
    let keys: std::collections::BTreeSet<&TorusChar> =
        q.terms.keys().chain(p.terms.keys()).collect();
    let mut eigenspaces = Vec::new();
    for key in keys {
        let qs = q.get(key).unwrap_or(&zero);
        let ps = p.get(key).unwrap_or(&zero);
        let diff = qs.sub(ps)?;
        let vanishes = (diff.start()..=0).all(|k| diff.coefficient(k).is_zero());
        eigenspaces.push(EigenspaceDifference {
            weight: key.to_string(),
            q_side: qs.to_string(),
            p_side: ps.to_string(),
            difference: diff.to_string(),
            valuation: diff.valuation(),
            vanishes,
        });
    }
    let display = second_term_reduced_display(order)?;
    Ok(SecondTermReport {
        order,
        passed: eigenspaces.iter().all(|e| e.vanishes),
        eigenspaces,
        reduced_p_display: display.to_string(),
    })
}

/// `(1/3)c(u)c(3u-1)c(u+1)c(2u+1)f°_{[3u+1,-2u-1]}` expanded in the `[1,-1]` eigenspace.
pub fn second_term_reduced_display(order: i64) -> Result<LaurentSeries, CtermError> {
    let spec = second_term_p_spec();
    let key = TorusChar::from_ints(1, -1, Orientation::BetaLong);
    eigenspace_without_factor(
        &spec,
        &key,
        &gl1("3u + 2", &[]),
        &second_term_prefactor(),
        order,
    )
}

fn chi0(order: u32) -> TorsionClass {
    TorsionClass::new("χ0", Order::Finite(order))
}

/// `E_P` with inducing `[-1, 3(point+t)-1+χ0]`, `χ0` of order `n`.
pub fn p_series_at(point: &Rat, n: u32) -> Result<EisensteinSpec, CtermError> {
    let class = chi0(n);
    let base = Gl1Char::constant(int(3) * point - int(1))
        .with_var("t", int(3))
        .with_torsion(class, 1);
    let chi = TorusChar::new(Gl1Char::int(-1), base, Orientation::BetaLong);
    EisensteinSpec::new(Parabolic::P, chi, "t")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fact {
    pub statement: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenspaceValue {
    pub weight: String,
    pub elements: Vec<String>,
    pub series: String,
    pub vanishes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VanishingReport {
    pub facts: Vec<Fact>,
    pub eigenspaces: Vec<EigenspaceValue>,
    pub passed: bool,
}

/// Certifies that `E_P([-1, 3s-1+χ0])`, `χ0` quadratic, vanishes at `s = 1/2`.
pub fn verify_vanishing_half() -> Result<VanishingReport, CtermError> {
    let spec = p_series_at(&rat(1, 2), 2)?;
    let ct = constant_term(&spec, 1)?;
    let at_half = spec.inducing.substitute("t", &Gl1Char::zero())?;
    let w = |s: &str| WeylElt::parse(s).expect("valid word");
    let image = |s: &str| at_half.weyl_act(&w(s));
    let w5_product = {
        let t = WeylTerm::new(w("babab"), &spec.inducing, "t")?;
        term_series(
            &t.factors,
            [&Rat::zero(), &Rat::zero()],
            "t",
            1,
            &Rat::one(),
            OffLatticePolicy::Strict,
        )?
    };
    let facts = vec![
        Fact {
            statement: "w_5[-1, 1/2 + χ0] = [-1, 1/2 + χ0]".into(),
            holds: image("babab") == at_half,
        },
        Fact {
            statement: "w_4[-1, 1/2 + χ0] = w_1[-1, 1/2 + χ0]".into(),
            holds: image("abab") == image("b"),
        },
        Fact {
            statement: "w_3[-1, 1/2 + χ0] = w_2[-1, 1/2 + χ0]".into(),
            holds: image("bab") == image("ab"),
        },
        Fact {
            statement: "c(w_5, [-1, 3s-1+χ0]) = -1 + O(s-1/2)".into(),
            holds: w5_product.valuation() == Some(0)
                && w5_product.coefficient(0) == CoeffPoly::int(-1),
        },
    ];
    let grouping = ct.grouping();
    let eigenspaces: Vec<EigenspaceValue> = ct
        .terms
        .iter()
        .map(|(key, series)| EigenspaceValue {
            weight: key.to_string(),
            elements: grouping[key].iter().map(|w| w.to_string()).collect(),
            series: series.to_string(),
            vanishes: (series.start()..=0).all(|k| series.coefficient(k).is_zero()),
        })
        .collect();
    Ok(VanishingReport {
        passed: facts.iter().all(|f| f.holds) && eigenspaces.iter().all(|e| e.vanishes),
        facts,
        eigenspaces,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenspaceOrder {
    pub weight: String,
    pub elements: Vec<String>,
    pub order: i64,
    pub leading: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PoleOrderReport {
    pub chi_order: u32,
    pub point: String,
    pub eigenspaces: Vec<EigenspaceOrder>,
    /// Largest pole order over the eigenspaces; `0` means holomorphic.
    pub max_order: i64,
}

/// Pole order of the `P`-series at `s = point` after summing within each eigenspace.
pub fn verify_pole_orders(n: u32, point: &Rat) -> Result<PoleOrderReport, CtermError> {
    if !(1..=3).contains(&n) {
        return Err(CtermError::UnsupportedOrder(n));
    }
    let allowed = [rat(1, 2), rat(5, 9), rat(2, 3), int(1)];
    if !allowed.contains(point) {
        return Err(CtermError::UnsupportedPoint(point.to_string()));
    }
    let spec = p_series_at(point, n)?;
    let ct = constant_term_with(&spec, 1, &Prefactor::default(), OffLatticePolicy::AsUnit)?;
    let grouping = ct.grouping();
    let eigenspaces: Vec<EigenspaceOrder> = ct
        .terms
        .iter()
        .map(|(key, series)| {
            let v = series.valuation();
            EigenspaceOrder {
                weight: key.to_string(),
                elements: grouping[key].iter().map(|w| w.to_string()).collect(),
                order: v.map_or(0, |v| (-v).max(0)),
                leading: v.map_or_else(|| "0".to_string(), |v| series.coefficient(v).to_string()),
            }
        })
        .collect();
    Ok(PoleOrderReport {
        chi_order: n,
        point: point.to_string(),
        max_order: eigenspaces.iter().map(|e| e.order).max().unwrap_or(0),
        eigenspaces,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::CoeffSymbol;
    use crate::rootsys::reduced_words;

    fn free() -> TorsionClass {
        TorsionClass::new("χ0", Order::Free)
    }

    #[test]
    fn factors_of_w2() {
        let chi = torus("-1", "χ0 + 3s - 1", &[free()]);
        let f = c_factors(&WeylElt::parse("ab").unwrap(), &chi);
        assert_eq!(
            f,
            vec![
                gl1("χ0 + 3s - 1", &[free()]),
                gl1("3χ0 + 9s - 4", &[free()])
            ]
        );
        assert!(c_factors(&WeylElt::identity(), &chi).is_empty());
    }

    #[test]
    fn factors_match_inversion_sets() {
        let chi = torus("2 - s", "χ0 + 3s - 1", &[free()]);
        for group in reduced_words(Orientation::BetaLong) {
            let expected = c_factors_by_inversion(&group[0], &chi).unwrap();
            for w in &group {
                let mut f = c_factors(w, &chi);
                f.sort();
                assert_eq!(f, expected, "word {w}");
            }
        }
    }

    #[test]
    fn spherical_expansion() {
        let base = TorusChar::from_ints(1, -1, Orientation::BetaLong);
        let t = spherical_expand(&base, [&int(3), &int(-2)], "u", 2);
        assert_eq!(t.series.coefficient(0), CoeffPoly::one());
        assert_eq!(t.series.coefficient(1), log_pairing(&int(3), &int(-2)));
        let flat = spherical_expand(&base, [&Rat::zero(), &Rat::zero()], "u", 3);
        assert_eq!(flat.series, LaurentSeries::one("u", 3));
    }

    #[test]
    fn q_side_terms() {
        let spec = second_term_q_spec();
        let terms = spec.weyl_terms().unwrap();
        assert_eq!(terms[0].image, spec.inducing);
        assert_eq!(terms[1].factors, vec![gl1("3u + 2", &[])]);
        assert_eq!(terms[1].image, torus("-2 - 3u", "3u + 1", &[]));
    }

    #[test]
    fn p_side_length_three() {
        let terms = second_term_p_spec().weyl_terms().unwrap();
        let mut expected = vec![gl1("u + 1", &[]), gl1("3u + 2", &[]), gl1("2u + 1", &[])];
        expected.sort();
        assert_eq!(terms[3].sorted_factors(), expected);
        assert_eq!(terms[3].image, torus("3u + 1", "-2u - 1", &[]));
    }

    #[test]
    fn rejects_non_degenerate() {
        let chi = torus("0", "u", &[]);
        assert!(EisensteinSpec::new(Parabolic::P, chi, "u").is_err());
    }

    #[test]
    fn reduced_display() {
        let s = second_term_reduced_display(1).unwrap();
        let c = CoeffPoly::symbol(CoeffSymbol::zeta(-1, 1));
        assert_eq!(s.coefficient(-1), c.scale(&rat(1, 2)));
    }

    #[test]
    fn too_low_order() {
        assert!(matches!(
            verify_second_term_identity(0),
            Err(CtermError::Laurent(LaurentError::OrderTooLow { .. }))
        ));
    }
}
