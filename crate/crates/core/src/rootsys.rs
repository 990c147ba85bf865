//! The G2 root system in `[p, q]` coordinates.
//!
//! A weight `[p, q]` is recorded by its pairings with the two simple coroots:
//! `p = ⟨·, α∨⟩` and `q = ⟨·, β∨⟩`, so `[1, 0]` and `[0, 1]` are the
//! fundamental weights. Which of the two simple roots is long is not fixed
//! globally; every computation takes an [`Orientation`].
//!
//! Weyl elements are words in the simple reflections and act right to left.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("word `{0}` is not reduced")]
    NotReduced(String),
    #[error("invalid Weyl word `{0}`: letters must be `a` or `b`")]
    BadWord(String),
    #[error("root belongs to orientation {found:?}, expected {expected:?}")]
    OrientationMismatch {
        expected: Orientation,
        found: Orientation,
    },
}

/// Which simple root is the long one.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
pub enum Orientation {
    /// `α = [2, -3]`, `β = [-1, 2]`.
    AlphaLong,
    /// `α = [2, -1]`, `β = [-3, 2]`.
    #[default]
    BetaLong,
}

impl Orientation {
    pub const ALL: [Orientation; 2] = [Orientation::AlphaLong, Orientation::BetaLong];

    /// Coordinates of the simple root `s`.
    pub fn simple_coords(self, s: Simple) -> [i64; 2] {
        match (self, s) {
            (Orientation::BetaLong, Simple::A) => [2, -1],
            (Orientation::BetaLong, Simple::B) => [-3, 2],
            (Orientation::AlphaLong, Simple::A) => [2, -3],
            (Orientation::AlphaLong, Simple::B) => [-1, 2],
        }
    }

    /// Twice the invariant inner products `(α,α)`, `(β,β)`, `(α,β)`, scaled so short roots have norm 2.
    fn gram(self) -> (i64, i64, i64) {
        match self {
            Orientation::BetaLong => (2, 6, -3),
            Orientation::AlphaLong => (6, 2, -3),
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Orientation::AlphaLong => f.write_str("alpha-long"),
            Orientation::BetaLong => f.write_str("beta-long"),
        }
    }
}

impl FromStr for Orientation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "alpha-long" | "AlphaLong" => Ok(Orientation::AlphaLong),
            "beta-long" | "BetaLong" => Ok(Orientation::BetaLong),
            other => Err(format!("unknown orientation `{other}`")),
        }
    }
}

/// A simple reflection label: `A` is `s_α`, `B` is `s_β`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Simple {
    A,
    B,
}

impl Simple {
    pub fn other(self) -> Simple {
        match self {
            Simple::A => Simple::B,
            Simple::B => Simple::A,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RootLength {
    Short,
    Long,
}

/// The two maximal parabolics: `P` has Levi containing `U_α`, `Q` has Levi containing `U_β`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Parabolic {
    P,
    Q,
}

impl Parabolic {
    /// The simple root in the Levi.
    pub fn levi_root(self) -> Simple {
        match self {
            Parabolic::P => Simple::A,
            Parabolic::Q => Simple::B,
        }
    }
}

/// A root, stored by its simple-root coefficients `m α + n β`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    simple: [i64; 2],
    orientation: Orientation,
}

impl Root {
    /// `m α + n β`; returns `None` unless this is one of the 12 roots.
    pub fn from_simple_coeffs(m: i64, n: i64, orientation: Orientation) -> Option<Root> {
        let root = Root {
            simple: [m, n],
            orientation,
        };
        let norm = root.norm();
        let (short, long, _) = orientation.gram();
        let (short, long) = (short.min(long), short.max(long));
        ((m, n) != (0, 0) && (norm == short || norm == long)).then_some(root)
    }

    pub fn simple(s: Simple, orientation: Orientation) -> Root {
        let simple = match s {
            Simple::A => [1, 0],
            Simple::B => [0, 1],
        };
        Root {
            simple,
            orientation,
        }
    }

    pub fn simple_coeffs(&self) -> [i64; 2] {
        self.simple
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// `[⟨γ, α∨⟩, ⟨γ, β∨⟩]`.
    pub fn coords(&self) -> [i64; 2] {
        let a = self.orientation.simple_coords(Simple::A);
        let b = self.orientation.simple_coords(Simple::B);
        let [m, n] = self.simple;
        [m * a[0] + n * b[0], m * a[1] + n * b[1]]
    }

    fn norm(&self) -> i64 {
        let (aa, bb, ab) = self.orientation.gram();
        let [m, n] = self.simple;
        m * m * aa + 2 * m * n * ab + n * n * bb
    }

    pub fn length(&self) -> RootLength {
        let (aa, bb, _) = self.orientation.gram();
        if self.norm() == aa.min(bb) {
            RootLength::Short
        } else {
            RootLength::Long
        }
    }

    /// Coefficients `[a, b]` with `γ∨ = a α∨ + b β∨`.
    pub fn coroot_coeffs(&self) -> [i64; 2] {
        let (aa, bb, _) = self.orientation.gram();
        let norm = self.norm();
        let [m, n] = self.simple;
        [m * aa / norm, n * bb / norm]
    }

    pub fn is_positive(&self) -> bool {
        self.simple[0] >= 0 && self.simple[1] >= 0
    }

    pub fn neg(&self) -> Root {
        Root {
            simple: [-self.simple[0], -self.simple[1]],
            orientation: self.orientation,
        }
    }

    /// `s_i(γ) = γ - ⟨γ, i∨⟩ i`.
    pub fn reflect(&self, s: Simple) -> Root {
        let [p, q] = self.coords();
        let [m, n] = self.simple;
        let simple = match s {
            Simple::A => [m - p, n],
            Simple::B => [m, n - q],
        };
        Root {
            simple,
            orientation: self.orientation,
        }
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [p, q] = self.coords();
        write!(f, "[{p}, {q}]")
    }
}

/// All 12 roots, positive ones first.
pub fn roots(orientation: Orientation) -> Vec<Root> {
    let positive = positive_roots(orientation);
    let negative: Vec<Root> = positive.iter().map(Root::neg).collect();
    positive.into_iter().chain(negative).collect()
}

/// The six positive roots, generated from the simple roots by reflections.
pub fn positive_roots(orientation: Orientation) -> Vec<Root> {
    let mut found: BTreeSet<Root> = BTreeSet::new();
    let mut frontier = vec![
        Root::simple(Simple::A, orientation),
        Root::simple(Simple::B, orientation),
    ];
    while let Some(root) = frontier.pop() {
        let root = if root.is_positive() { root } else { root.neg() };
        if !found.insert(root) {
            continue;
        }
        for s in [Simple::A, Simple::B] {
            frontier.push(root.reflect(s));
        }
    }
    let mut out: Vec<Root> = found.into_iter().collect();
    out.sort_by_key(|r| (r.simple[0] + r.simple[1], r.simple));
    out
}

/// A Weyl group element given by a word in the simple reflections.
///
/// The word `[x1, x2, ..., xk]` denotes `s_x1 s_x2 ... s_xk`; `s_xk` is applied first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeylElt {
    word: Vec<Simple>,
}

impl WeylElt {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn from_word(word: Vec<Simple>) -> Self {
        WeylElt { word }
    }

    /// Parses a word like `"bab"`; `"e"` or `""` is the identity.
    pub fn parse(s: &str) -> Result<Self, RootError> {
        let s = s.trim();
        if s == "e" {
            return Ok(Self::identity());
        }
        s.chars()
            .filter(|c| !matches!(c, ' ' | '.' | '*'))
            .map(|c| match c {
                'a' | 'α' | 'A' => Ok(Simple::A),
                'b' | 'β' | 'B' => Ok(Simple::B),
                _ => Err(RootError::BadWord(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Self::from_word)
    }

    pub fn word(&self) -> &[Simple] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// Letters in the order they are applied (rightmost first).
    pub fn application_order(&self) -> impl Iterator<Item = Simple> + '_ {
        self.word.iter().rev().copied()
    }

    pub fn inverse(&self) -> WeylElt {
        WeylElt {
            word: self.word.iter().rev().copied().collect(),
        }
    }

    /// Composition `self ∘ other`.
    pub fn compose(&self, other: &WeylElt) -> WeylElt {
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        WeylElt { word }
    }

    pub fn act_root(&self, root: &Root) -> Root {
        self.application_order().fold(*root, |r, s| r.reflect(s))
    }

    fn inversions_unchecked(&self, orientation: Orientation) -> BTreeSet<Root> {
        positive_roots(orientation)
            .into_iter()
            .filter(|r| !self.act_root(r).is_positive())
            .collect()
    }

    pub fn is_reduced(&self, orientation: Orientation) -> bool {
        self.inversions_unchecked(orientation).len() == self.len()
    }

    /// `{γ > 0 : wγ < 0}`.
    pub fn inversion_set(&self, orientation: Orientation) -> Result<BTreeSet<Root>, RootError> {
        let set = self.inversions_unchecked(orientation);
        if set.len() != self.len() {
            return Err(RootError::NotReduced(self.to_string()));
        }
        Ok(set)
    }

    /// Equality as group elements, decided by the action on the positive roots.
    pub fn same_element(&self, other: &WeylElt, orientation: Orientation) -> bool {
        positive_roots(orientation)
            .iter()
            .all(|r| self.act_root(r) == other.act_root(r))
    }
}

impl fmt::Display for WeylElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("e");
        }
        for s in &self.word {
            f.write_str(match s {
                Simple::A => "a",
                Simple::B => "b",
            })?;
        }
        Ok(())
    }
}

/// Every word over `{a, b}` of length at most `max_len` with no letter repeated twice in a row.
fn alternating_words(max_len: usize) -> Vec<WeylElt> {
    let mut out = vec![WeylElt::identity()];
    for len in 1..=max_len {
        for first in [Simple::A, Simple::B] {
            let word = (0..len)
                .map(|i| if i % 2 == 0 { first } else { first.other() })
                .collect();
            out.push(WeylElt::from_word(word));
        }
    }
    out
}

/// The 12 group elements, each with a canonical reduced word, sorted by length.
pub fn weyl_group(orientation: Orientation) -> Vec<WeylElt> {
    let mut elements: Vec<WeylElt> = Vec::new();
    for w in alternating_words(6) {
        if !w.is_reduced(orientation) {
            continue;
        }
        if !elements.iter().any(|e| e.same_element(&w, orientation)) {
            elements.push(w);
        }
    }
    elements
}

/// Every reduced word of every element, grouped by element.
pub fn reduced_words(orientation: Orientation) -> Vec<Vec<WeylElt>> {
    let mut groups: Vec<Vec<WeylElt>> = Vec::new();
    for w in alternating_words(7) {
        if !w.is_reduced(orientation) {
            continue;
        }
        match groups
            .iter_mut()
            .find(|g| g[0].same_element(&w, orientation))
        {
            Some(g) => g.push(w),
            None => groups.push(vec![w]),
        }
    }
    groups
}

/// Minimal-length representatives summed over in the constant term along `parabolic`:
/// the six elements `w` with `w γ > 0` for the Levi root `γ`, ordered by length.
pub fn degenerate_weyl_set(parabolic: Parabolic, orientation: Orientation) -> Vec<WeylElt> {
    let levi = Root::simple(parabolic.levi_root(), orientation);
    let mut out: Vec<WeylElt> = weyl_group(orientation)
        .into_iter()
        .filter(|w| w.act_root(&levi).is_positive())
        .collect();
    out.sort_by_key(WeylElt::len);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coords(o: Orientation) -> Vec<[i64; 2]> {
        positive_roots(o).iter().map(Root::coords).collect()
    }

    #[test]
    fn simple_roots_per_orientation() {
        let beta = coords(Orientation::BetaLong);
        assert!(beta.contains(&[2, -1]) && beta.contains(&[-3, 2]));
        let alpha = coords(Orientation::AlphaLong);
        assert!(alpha.contains(&[2, -3]) && alpha.contains(&[-1, 2]));
        for o in Orientation::ALL {
            assert_eq!(positive_roots(o).len(), 6);
            for s in [Simple::A, Simple::B] {
                let r = Root::simple(s, o);
                let pairing = r.coroot_coeffs();
                let [p, q] = r.coords();
                assert_eq!(pairing[0] * p + pairing[1] * q, 2);
            }
        }
    }

    #[test]
    fn six_short_and_six_long() {
        for o in Orientation::ALL {
            let all = roots(o);
            assert_eq!(all.len(), 12);
            let short = all
                .iter()
                .filter(|r| r.length() == RootLength::Short)
                .count();
            assert_eq!(short, 6);
            for r in &all {
                assert!(all.contains(&r.neg()));
            }
        }
        assert_eq!(
            Root::simple(Simple::B, Orientation::BetaLong).length(),
            RootLength::Long
        );
        assert_eq!(
            Root::simple(Simple::A, Orientation::AlphaLong).length(),
            RootLength::Long
        );
    }

    #[test]
    fn from_simple_coeffs_rejects_non_roots() {
        let o = Orientation::BetaLong;
        assert!(Root::from_simple_coeffs(3, 2, o).is_some());
        assert!(Root::from_simple_coeffs(2, 2, o).is_none());
        assert!(Root::from_simple_coeffs(0, 0, o).is_none());
    }

    #[test]
    fn inversion_sets() {
        let o = Orientation::BetaLong;
        assert!(WeylElt::identity().inversion_set(o).unwrap().is_empty());
        let sb = WeylElt::parse("b").unwrap();
        let inv = sb.inversion_set(o).unwrap();
        assert_eq!(inv.len(), 1);
        assert!(inv.contains(&Root::simple(Simple::B, o)));
        let w5 = WeylElt::parse("babab").unwrap();
        assert_eq!(w5.inversion_set(o).unwrap().len(), 5);
        assert!(matches!(
            WeylElt::parse("bb").unwrap().inversion_set(o),
            Err(RootError::NotReduced(_))
        ));
    }

    #[test]
    fn group_has_twelve_elements() {
        for o in Orientation::ALL {
            let g = weyl_group(o);
            assert_eq!(g.len(), 12);
            for w in &g {
                assert_eq!(w.inversion_set(o).unwrap().len(), w.len());
            }
        }
    }

    #[test]
    fn degenerate_sets() {
        let o = Orientation::BetaLong;
        let p: Vec<String> = degenerate_weyl_set(Parabolic::P, o)
            .iter()
            .map(ToString::to_string)
            .collect();
        assert_eq!(p, ["e", "b", "ab", "bab", "abab", "babab"]);
        let q: Vec<String> = degenerate_weyl_set(Parabolic::Q, o)
            .iter()
            .map(ToString::to_string)
            .collect();
        assert_eq!(q, ["e", "a", "ba", "aba", "baba", "ababa"]);
        let w5 = &degenerate_weyl_set(Parabolic::P, o)[5];
        assert!(w5.same_element(&w5.inverse(), o));
    }

    #[test]
    fn q_set_matches_brute_force_filter() {
        for o in Orientation::ALL {
            let beta = Root::simple(Simple::B, o);
            let brute: Vec<WeylElt> = weyl_group(o)
                .into_iter()
                .filter(|w| w.act_root(&beta).is_positive())
                .collect();
            let lengths: BTreeSet<usize> = brute.iter().map(WeylElt::len).collect();
            assert_eq!(lengths, (0..6).collect());
            assert_eq!(brute.len(), degenerate_weyl_set(Parabolic::Q, o).len());
        }
    }

    #[test]
    fn inversion_sets_agree_across_reduced_words() {
        for o in Orientation::ALL {
            let groups = reduced_words(o);
            assert_eq!(groups.len(), 12);
            for g in groups {
                let first = g[0].inversion_set(o).unwrap();
                for w in &g[1..] {
                    assert_eq!(w.inversion_set(o).unwrap(), first);
                }
            }
        }
    }

    #[test]
    fn parse_rejects_junk() {
        assert!(WeylElt::parse("abc").is_err());
        assert_eq!(WeylElt::parse("e").unwrap(), WeylElt::identity());
    }
}
