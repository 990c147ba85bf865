//! Rule-based pole bookkeeping for the rank-one factors of the intertwining operators.
//!
//! For `χ = [-1, 3s-1+χ0]` the operators `M(w_i, χ)` factor along the reduced word
//! of `w_5`; the successive rank-one arguments form the vector `𝒞` and
//! `c(w_i, χ) = Π_{j≤i} c(𝒞_j)`. A factor contributes an edge pole where its argument
//! equals `1` with trivial torsion. Zeros of the global L-function in the
//! denominator and local L-factors are only located by region, never certified absent.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::charalg::{Assignment, CharError, Gl1Char, Order, TorsionClass, TorusChar};
use crate::cterm::c_factors;
use crate::rational::{int, rat, Rat};
use crate::rootsys::{degenerate_weyl_set, Orientation, Parabolic, Simple, WeylElt};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PoleScanError {
    #[error("expected a character of the form [-1, 3s-1+χ0], got {0}")]
    BadShape(String),
    #[error("torsion order {0} is not one of 1, 2, 3")]
    UnsupportedOrder(u32),
    #[error(transparent)]
    Char(#[from] CharError),
    #[error(transparent)]
    Csv(#[from] CsvError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("csv: {0}")]
pub struct CsvError(pub String);

/// Behaviour of a normalized rank-one operator at a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RankOneStatus {
    Pole,
    ScalarMinusOne,
    HasKernel,
    Isomorphism,
}

/// Specializes `arg` and reads off the rank-one behaviour.
pub fn rank_one_status(arg: &Gl1Char, point: &Assignment) -> Result<RankOneStatus, CharError> {
    let v = arg.specialize(point)?;
    let trivial = v.torsion().is_trivial();
    let value = v.constant_part();
    Ok(if trivial && value.is_one() {
        RankOneStatus::Pole
    } else if trivial && value.is_zero() {
        RankOneStatus::ScalarMinusOne
    } else if trivial && *value == int(-1) {
        RankOneStatus::HasKernel
    } else {
        RankOneStatus::Isomorphism
    })
}

/// `χ = [-1, 3s-1+χ0]` with `χ0` of the given order under the default orientation.
pub fn standard_inducing(order: Order) -> TorusChar {
    let c2 = Gl1Char::constant(int(-1))
        .with_var("s", int(3))
        .with_torsion(TorsionClass::new("χ0", order), 1);
    TorusChar::new(Gl1Char::int(-1), c2, Orientation::BetaLong)
}

/// The rank-one arguments along `w_5 = s_β s_α s_β s_α s_β`.
pub fn cvector(chi: &TorusChar) -> Result<Vec<Gl1Char>, PoleScanError> {
    let first = &chi.c1;
    let ok =
        first.is_constant() && first.torsion().is_trivial() && first.constant_part() == &int(-1);
    let second = &chi.c2;
    let shape = second.coefficient("s") == int(3)
        && second.variables().all(|v| v == "s")
        && second.constant_part() == &int(-1)
        && second.torsion().iter().count() <= 1;
    if !(ok && shape) {
        return Err(PoleScanError::BadShape(chi.to_string()));
    }
    let w5 = WeylElt::from_word(vec![Simple::B, Simple::A, Simple::B, Simple::A, Simple::B]);
    Ok(c_factors(&w5, chi))
}

/// Where a possible pole of `c(arg)` comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum PoleClass {
    /// Pole of the zeta factor in the numerator: argument `1`, trivial torsion.
    EdgePole,
    /// Zeros of `L(arg + 1)`: `-1 < Re(arg) < 0`.
    LZeroRegion,
    /// Local L-factor poles: `Re(arg) ≤ -1`.
    LocalLRegion,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Region {
    /// A single point `s = s0`.
    Point(String),
    /// The part `lo < Re(s) < hi` (bounds may be infinite) meeting the half-plane.
    Strip { lo: String, hi: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PoleSource {
    pub class: PoleClass,
    pub region: Region,
}

/// `arg = a·s + b` solved for `arg = x`.
fn solve(a: &Rat, b: &Rat, x: &Rat) -> Rat {
    (x - b) / a
}

/// Pole sources of `c(arg)` in `Re(s) ≥ half_plane`, in the single variable `s`.
///
/// Edge poles are certified; the zero region of the denominator and the local
/// region are reported whenever they meet the half-plane.
pub fn classify_pole_sources(arg: &Gl1Char, half_plane: &Rat) -> Vec<PoleSource> {
    let a = arg.coefficient("s");
    let b = arg.constant_part().clone();
    let mut out = Vec::new();
    if a.is_zero() {
        return out;
    }
    if arg.torsion().is_trivial() {
        let s0 = solve(&a, &b, &Rat::one());
        if &s0 >= half_plane {
            out.push(PoleSource {
                class: PoleClass::EdgePole,
                region: Region::Point(s0.to_string()),
            });
        }
    }
    // Re(arg) as a function of Re(s) is increasing when a > 0
    let at = |x: i64| solve(&a, &b, &int(x));
    let (zero_lo, zero_hi) = if a.is_positive() {
        (at(-1), at(0))
    } else {
        (at(0), at(-1))
    };
    if &zero_hi > half_plane {
        out.push(PoleSource {
            class: PoleClass::LZeroRegion,
            region: Region::Strip {
                lo: zero_lo.max(half_plane.clone()).to_string(),
                hi: zero_hi.to_string(),
            },
        });
    }
    let local_hits = if a.is_positive() {
        &at(-1) >= half_plane
    } else {
        true
    };
    if local_hits {
        let (lo, hi) = if a.is_positive() {
            (half_plane.to_string(), at(-1).to_string())
        } else {
            (at(-1).max(half_plane.clone()).to_string(), "∞".to_string())
        };
        out.push(PoleSource {
            class: PoleClass::LocalLRegion,
            region: Region::Strip { lo, hi },
        });
    }
    out
}

/// The strip `-1 < Re(arg) < 0` where `c(arg)` may have poles from L-zeros, as an `s`-interval.
pub fn zero_region(arg: &Gl1Char) -> Option<(Rat, Rat)> {
    let a = arg.coefficient("s");
    if a.is_zero() {
        return None;
    }
    let b = arg.constant_part();
    let lo = solve(&a, b, &int(-1));
    let hi = solve(&a, b, &Rat::zero());
    Some(if lo < hi { (lo, hi) } else { (hi, lo) })
}

/// Edge poles of `w_0 … w_5` for one torsion order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PoleColumn {
    pub order: u32,
    /// Per `w_i`: `(s0, multiplicity)` in order of first appearance.
    pub cells: Vec<Vec<(String, u32)>>,
}

impl PoleColumn {
    pub fn cell(&self, i: usize) -> BTreeMap<String, u32> {
        self.cells[i].iter().cloned().collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PoleTable {
    pub columns: Vec<PoleColumn>,
}

fn edge_point(arg: &Gl1Char) -> Option<Rat> {
    if !arg.torsion().is_trivial() {
        return None;
    }
    let a = arg.coefficient("s");
    (!a.is_zero()).then(|| solve(&a, arg.constant_part(), &Rat::one()))
}

/// One column of the table: edge poles in `Re(s) ≥ 1/2` of each `c(w_i, χ)`.
pub fn pole_table(n: u32) -> Result<PoleColumn, PoleScanError> {
    if !(1..=3).contains(&n) {
        return Err(PoleScanError::UnsupportedOrder(n));
    }
    let chi = standard_inducing(Order::Finite(n));
    let cvec = cvector(&chi)?;
    let half = rat(1, 2);
    let mut cells = Vec::with_capacity(6);
    for i in 0..=5 {
        let mut cell: Vec<(Rat, u32)> = Vec::new();
        for arg in &cvec[..i] {
            if let Some(s0) = edge_point(arg).filter(|s0| *s0 >= half) {
                match cell.iter_mut().find(|(p, _)| *p == s0) {
                    Some((_, m)) => *m += 1,
                    None => cell.push((s0, 1)),
                }
            }
        }
        cells.push(cell.into_iter().map(|(p, m)| (p.to_string(), m)).collect());
    }
    Ok(PoleColumn { order: n, cells })
}

pub fn full_pole_table() -> Result<PoleTable, PoleScanError> {
    Ok(PoleTable {
        columns: (1..=3).map(pole_table).collect::<Result<_, _>>()?,
    })
}

fn cell_text(cell: &[(String, u32)], rank: &[String]) -> String {
    if cell.is_empty() {
        return "holomorphic".to_string();
    }
    let mut sorted: Vec<&(String, u32)> = cell.iter().collect();
    sorted.sort_by_key(|(p, _)| rank.iter().position(|r| r == p));
    sorted
        .into_iter()
        .map(|(p, m)| match m {
            1 => p.clone(),
            2 => format!("{p} (double)"),
            3 => format!("{p} (triple)"),
            m => format!("{p} (x{m})"),
        })
        .collect::<Vec<_>>()
        .join(", ")
}

fn column_title(n: u32) -> &'static str {
    match n {
        1 => "trivial",
        2 => "nontrivial quadratic",
        3 => "nontrivial cubic",
        _ => "other",
    }
}

impl PoleTable {
    /// Points in order of first appearance, scanning rows `w_0 … w_5` left to right.
    pub fn point_order(&self) -> Vec<String> {
        let mut rank: Vec<String> = Vec::new();
        for i in 0..6 {
            for c in &self.columns {
                for (p, _) in &c.cells[i] {
                    if !rank.contains(p) {
                        rank.push(p.clone());
                    }
                }
            }
        }
        rank
    }

    /// Cell `(w_i, column)` as displayed, points ordered by [`PoleTable::point_order`].
    pub fn cell_text(&self, i: usize, column: usize) -> String {
        cell_text(&self.columns[column].cells[i], &self.point_order())
    }

    pub fn to_text(&self) -> String {
        let rank = self.point_order();
        let mut rows: Vec<Vec<String>> = vec![std::iter::once("χ".to_string())
            .chain(
                self.columns
                    .iter()
                    .map(|c| column_title(c.order).to_string()),
            )
            .collect()];
        for i in 0..6 {
            let mut row = vec![format!("w_{i}")];
            row.extend(self.columns.iter().map(|c| cell_text(&c.cells[i], &rank)));
            rows.push(row);
        }
        let widths: Vec<usize> = (0..rows[0].len())
            .map(|j| rows.iter().map(|r| r[j].chars().count()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for r in rows {
            let line: Vec<String> = r
                .iter()
                .zip(&widths)
                .map(|(cell, w)| format!("{cell:<w$}", w = *w))
                .collect();
            let _ = writeln!(out, "{}", line.join(" | ").trim_end());
        }
        out
    }

    /// Rows `element,order,point,multiplicity`; holomorphic cells produce no row.
    pub fn to_csv(&self) -> Result<String, PoleScanError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let err = |e: csv::Error| CsvError(e.to_string());
        w.write_record(["element", "chi_order", "point", "multiplicity"])
            .map_err(err)?;
        for c in &self.columns {
            for (i, cell) in c.cells.iter().enumerate() {
                for (p, m) in cell {
                    w.write_record([
                        format!("w_{i}"),
                        c.order.to_string(),
                        p.clone(),
                        m.to_string(),
                    ])
                    .map_err(err)?;
                }
            }
        }
        let bytes = w.into_inner().map_err(|e| CsvError(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

impl fmt::Display for PoleTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// A specialization column of the Weyl-image and pairing tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Specialization {
    pub label: String,
    pub s: String,
    pub chi_order: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ImageTables {
    pub columns: Vec<Specialization>,
    /// Per `w_i`: general image, then one entry per column.
    pub images: Vec<Vec<String>>,
    /// Per pairing `𝒞_j`: label, general value, then one entry per column.
    pub pairings: Vec<Vec<String>>,
}

/// The images `w_iχ` and the pairings `𝒞_j`, generically and at the three points.
pub fn image_tables() -> Result<ImageTables, PoleScanError> {
    let columns = [(rat(5, 9), 3u32), (rat(2, 3), 3), (rat(2, 3), 2)];
    let chi = standard_inducing(Order::Free);
    let ws = degenerate_weyl_set(Parabolic::P, Orientation::BetaLong);
    let assignments: Vec<Assignment> = columns
        .iter()
        .map(|(s, n)| Assignment::new().set("s", s.clone()).order("χ0", *n))
        .collect();
    let mut images = Vec::new();
    for w in &ws {
        let img = chi.weyl_act(w);
        let mut row = vec![img.to_string()];
        for a in &assignments {
            row.push(img.specialize(a)?.to_string());
        }
        images.push(row);
    }
    let labels = [
        "⟨β∨, χ⟩",
        "⟨α∨, w_1χ⟩",
        "⟨β∨, w_2χ⟩",
        "⟨α∨, w_3χ⟩",
        "⟨β∨, w_4χ⟩",
    ];
    let mut pairings = Vec::new();
    for (label, arg) in labels.iter().zip(cvector(&chi)?) {
        let mut row = vec![label.to_string(), arg.to_string()];
        for a in &assignments {
            row.push(arg.specialize(a)?.to_string());
        }
        pairings.push(row);
    }
    Ok(ImageTables {
        columns: columns
            .iter()
            .map(|(s, n)| Specialization {
                label: format!("(s = {s}, {n}χ0 = 0)"),
                s: s.to_string(),
                chi_order: *n,
            })
            .collect(),
        images,
        pairings,
    })
}
