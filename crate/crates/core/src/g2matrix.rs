//! Exact 8×8 matrix computations for G2 inside the split SO8 model.
//!
//! Vectors are `x = ᵗ[x1 … x8]` with the quadratic form `_t x·x = Σ x_i x_{9-i}`.
//! `V0` is the hyperplane `x4 = x5`. Indices in comments and docs are 1-based;
//! arrays are 0-based.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::rational::{int, Rat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum G2Error {
    #[error("determinant is {0}, expected 1")]
    DetNotOne(String),
    #[error("vector is not in V0 (x4 ≠ x5)")]
    NotInV0,
    #[error("form value is {found}, expected {expected}")]
    FormMismatch { found: String, expected: String },
    #[error("impossible point: x6 = x7 = x8 = 0 on the quadric of the nonsquare {0}")]
    ImpossiblePoint(String),
    #[error("x4 = {x4} is not ± the designated square root {root}")]
    RootMismatch { x4: String, root: String },
    #[error("unsupported field size {0}: need a prime q ≥ 5")]
    BadField(u64),
    #[error("ρ must be nonzero")]
    ZeroRho,
    #[error("csv: {0}")]
    Csv(String),
}

/// Exact field elements used by the matrix routines.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn inv(&self) -> Option<Self>;

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }
}

impl Scalar for Rat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(n: i64) -> Self {
        int(n)
    }
    fn inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
}

/// Element of the prime field `F_P`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub fn new(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn pow(self, mut e: u64) -> Self {
        let (mut base, mut acc) = (self, Fp(1 % P));
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fp((self.0 + rhs.0) % P)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp((self.0 + P - rhs.0) % P)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(self.0 * rhs.0 % P)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u64> Scalar for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1 % P)
    }
    fn from_i64(n: i64) -> Self {
        Fp::new(n)
    }
    fn inv(&self) -> Option<Self> {
        (self.0 != 0).then(|| self.pow(P - 2))
    }
}

pub type Vec8<S> = [S; 8];

#[derive(Clone, Debug, PartialEq)]
pub struct Mat8<S>(pub [[S; 8]; 8]);

impl<S: Scalar> Mat8<S> {
    pub fn zero() -> Self {
        Mat8(std::array::from_fn(|_| std::array::from_fn(|_| S::zero())))
    }

    pub fn identity() -> Self {
        Mat8(std::array::from_fn(|i| {
            std::array::from_fn(|j| if i == j { S::one() } else { S::zero() })
        }))
    }

    /// Sets the 1-based entry `(i, j)`.
    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.0[i - 1][j - 1] = v;
    }

    /// 1-based entry `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.0[i - 1][j - 1]
    }

    pub fn mul(&self, other: &Mat8<S>) -> Mat8<S> {
        Mat8(std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                (0..8).fold(S::zero(), |acc, k| {
                    acc + self.0[i][k].clone() * other.0[k][j].clone()
                })
            })
        }))
    }

    pub fn add(&self, other: &Mat8<S>) -> Mat8<S> {
        Mat8(std::array::from_fn(|i| {
            std::array::from_fn(|j| self.0[i][j].clone() + other.0[i][j].clone())
        }))
    }

    pub fn scale(&self, r: &S) -> Mat8<S> {
        Mat8(std::array::from_fn(|i| {
            std::array::from_fn(|j| self.0[i][j].clone() * r.clone())
        }))
    }

    pub fn apply(&self, x: &Vec8<S>) -> Vec8<S> {
        std::array::from_fn(|i| {
            (0..8).fold(S::zero(), |acc, k| {
                acc + self.0[i][k].clone() * x[k].clone()
            })
        })
    }

    pub fn transpose(&self) -> Mat8<S> {
        Mat8(std::array::from_fn(|i| {
            std::array::from_fn(|j| self.0[j][i].clone())
        }))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(S::is_zero)
    }

    /// `exp(N)` for nilpotent `N`; the series is summed until a power vanishes.
    pub fn exp_nilpotent(n: &Mat8<S>) -> Mat8<S> {
        let mut sum = Mat8::identity();
        let mut term = Mat8::identity();
        for k in 1..=8 {
            let k_inv = S::from_i64(k).inv().expect("characteristic exceeds 8");
            term = term.mul(n).scale(&k_inv);
            if term.is_zero() {
                break;
            }
            sum = sum.add(&term);
        }
        sum
    }
}

/// Gram matrix of the form: ones on the antidiagonal.
pub fn form_matrix<S: Scalar>() -> Mat8<S> {
    let mut j = Mat8::zero();
    for i in 1..=8 {
        j.set(i, 9 - i, S::one());
    }
    j
}

/// `_t x·x = Σ x_i x_{9-i} = 2(x1x8 + x2x7 + x3x6 + x4x5)`.
pub fn form_value<S: Scalar>(x: &Vec8<S>) -> S {
    (0..8).fold(S::zero(), |acc, i| acc + x[i].clone() * x[7 - i].clone())
}

/// Whether `ᵗM·J·M = J`.
pub fn preserves_form<S: Scalar>(m: &Mat8<S>) -> bool {
    let j = form_matrix::<S>();
    m.transpose().mul(&j).mul(m) == j
}

pub fn in_v0<S: Scalar>(x: &Vec8<S>) -> bool {
    x[3] == x[4]
}

/// `v_ρ = ᵗ[0 0 1 0 0 ρ 0 0]`.
pub fn v_rho<S: Scalar>(rho: &S) -> Vec8<S> {
    let mut v: Vec8<S> = std::array::from_fn(|_| S::zero());
    v[2] = S::one();
    v[5] = rho.clone();
    v
}

/// `v_ρ′ = ᵗ[ρ 0 … 0 1]`.
pub fn v_rho_prime<S: Scalar>(rho: &S) -> Vec8<S> {
    let mut v: Vec8<S> = std::array::from_fn(|_| S::zero());
    v[0] = rho.clone();
    v[7] = S::one();
    v
}

/// `X_{-α}`: `1` at `(2,1), (4,3), (5,3)` and `-1` at `(8,7), (6,5), (6,4)`.
pub fn x_minus_alpha_generator<S: Scalar>() -> Mat8<S> {
    let mut x = Mat8::zero();
    for (i, j) in [(2, 1), (4, 3), (5, 3)] {
        x.set(i, j, S::one());
    }
    for (i, j) in [(8, 7), (6, 5), (6, 4)] {
        x.set(i, j, -S::one());
    }
    x
}

/// `x_{-α}(r) = exp(r·X_{-α})`.
pub fn x_minus_alpha<S: Scalar>(r: &S) -> Mat8<S> {
    Mat8::exp_nilpotent(&x_minus_alpha_generator::<S>().scale(r))
}

fn check_det<S: Scalar>(g: &[[S; 2]; 2]) -> Result<(), G2Error> {
    let det = g[0][0].clone() * g[1][1].clone() - g[0][1].clone() * g[1][0].clone();
    if det == S::one() {
        Ok(())
    } else {
        Err(G2Error::DetNotOne(format!("{det:?}")))
    }
}

fn two_copies<S: Scalar>(first: &[[S; 2]; 2], second: &[[S; 2]; 2]) -> Mat8<S> {
    let mut m = Mat8::identity();
    for (idx, (lo, hi)) in [(1usize, 7usize), (2, 8)].into_iter().enumerate() {
        let g = if idx == 0 { first } else { second };
        m.set(lo, lo, g[0][0].clone());
        m.set(lo, hi, g[0][1].clone());
        m.set(hi, lo, g[1][0].clone());
        m.set(hi, hi, g[1][1].clone());
    }
    m
}

/// `g = [[a, b], [c, d]]` placed on coordinates `(1, 7)` and again on `(2, 8)`.
///
/// This is the displayed embedding verbatim. It fixes every `v_ρ` and is a
/// homomorphism, but it does not preserve the form unless `ac = bd = 0` and `ad + bc = 1`;
/// see [`phi32_isometric`].
pub fn phi32<S: Scalar>(g: &[[S; 2]; 2]) -> Result<Mat8<S>, G2Error> {
    check_det(g)?;
    Ok(two_copies(g, g))
}

/// Same as [`phi32`] with the second copy conjugated by `diag(1, -1)`, i.e.
/// `[[a, -b], [-c, d]]` on `(2, 8)`; this one preserves the form.
pub fn phi32_isometric<S: Scalar>(g: &[[S; 2]; 2]) -> Result<Mat8<S>, G2Error> {
    check_det(g)?;
    let twisted = [
        [g[0][0].clone(), -g[0][1].clone()],
        [-g[1][0].clone(), g[1][1].clone()],
    ];
    Ok(two_copies(g, &twisted))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum OrbitClass {
    /// `x8 ≠ 0`.
    Open,
    /// `x8 = 0` and `(x6, x7) ≠ (0, 0)`.
    Mid,
    /// `x6 = x7 = x8 = 0`, `x4 = a`.
    Plus,
    /// `x6 = x7 = x8 = 0`, `x4 = -a`.
    Minus,
}

impl OrbitClass {
    pub const ALL: [OrbitClass; 4] = [
        OrbitClass::Open,
        OrbitClass::Mid,
        OrbitClass::Plus,
        OrbitClass::Minus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OrbitClass::Open => "open",
            OrbitClass::Mid => "mid",
            OrbitClass::Plus => "plus",
            OrbitClass::Minus => "minus",
        }
    }
}

/// Orbit label of a point of the quadric `{x ∈ V0 : _t x·x = 2ρ}`.
///
/// `root` is the designated square root `a` of `ρ`, if `ρ` is a square.
pub fn orbit_class<S: Scalar>(
    x: &Vec8<S>,
    rho: &S,
    root: Option<&S>,
) -> Result<OrbitClass, G2Error> {
    if !in_v0(x) {
        return Err(G2Error::NotInV0);
    }
    let two_rho = rho.clone() + rho.clone();
    let value = form_value(x);
    if value != two_rho {
        return Err(G2Error::FormMismatch {
            found: format!("{value:?}"),
            expected: format!("{two_rho:?}"),
        });
    }
    if !x[7].is_zero() {
        return Ok(OrbitClass::Open);
    }
    if !x[5].is_zero() || !x[6].is_zero() {
        return Ok(OrbitClass::Mid);
    }
    let Some(a) = root else {
        return Err(G2Error::ImpossiblePoint(format!("{rho:?}")));
    };
    if x[3] == *a {
        Ok(OrbitClass::Plus)
    } else if x[3] == -a.clone() {
        Ok(OrbitClass::Minus)
    } else {
        Err(G2Error::RootMismatch {
            x4: format!("{:?}", x[3]),
            root: format!("{a:?}"),
        })
    }
}

fn is_prime(q: u64) -> bool {
    q >= 2
        && (2..)
            .take_while(|d| d * d <= q)
            .all(|d| !q.is_multiple_of(d))
}

/// Smallest `a` in `1..q` with `a² = ρ`, if any.
pub fn sqrt_mod(rho: u64, q: u64) -> Option<u64> {
    (1..q).find(|a| a * a % q == rho % q)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadricCounts {
    pub q: u64,
    pub rho: u64,
    pub root: Option<u64>,
    pub counts: BTreeMap<OrbitClass, u64>,
    /// Points with `x6 = x7 = x8 = 0` that fit no class.
    pub unclassified: u64,
    pub total: u64,
    /// Independent count of `{x ∈ F_q^8 : x4 = x5, _t x·x = 2ρ}`.
    pub recount: u64,
}

impl QuadricCounts {
    pub fn count(&self, c: OrbitClass) -> u64 {
        self.counts.get(&c).copied().unwrap_or(0)
    }

    pub fn is_exhaustive(&self) -> bool {
        self.unclassified == 0
            && self.total == self.recount
            && self.counts.values().sum::<u64>() == self.total
    }

    /// Rows `q,rho,class,count`.
    pub fn to_csv(&self) -> Result<String, G2Error> {
        let err = |e: csv::Error| G2Error::Csv(e.to_string());
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["q", "rho", "class", "count"])
            .map_err(err)?;
        for c in OrbitClass::ALL {
            w.write_record([
                self.q.to_string(),
                self.rho.to_string(),
                c.name().to_string(),
                self.count(c).to_string(),
            ])
            .map_err(err)?;
        }
        let bytes = w.into_inner().map_err(|e| G2Error::Csv(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

/// Counts per class for one value of `x1`; `[open, mid, plus, minus, unclassified]`.
fn count_slice(q: u64, rho: u64, root: Option<u64>, x1: u64) -> [u64; 5] {
    let mut out = [0u64; 5];
    let minus_root = root.map(|a| (q - a) % q);
    for x2 in 0..q {
        for x3 in 0..q {
            for x4 in 0..q {
                for x6 in 0..q {
                    for x7 in 0..q {
                        for x8 in 0..q {
                            let half = (x1 * x8 + x2 * x7 + x3 * x6 + x4 * x4) % q;
                            if half != rho {
                                continue;
                            }
                            let slot = if x8 != 0 {
                                0
                            } else if x6 != 0 || x7 != 0 {
                                1
                            } else if Some(x4) == root {
                                2
                            } else if Some(x4) == minus_root {
                                3
                            } else {
                                4
                            };
                            out[slot] += 1;
                        }
                    }
                }
            }
        }
    }
    out
}

/// Brute force over all 8-tuples, keeping those in `V0` on the quadric.
fn recount(q: u64, rho: u64, parallel: bool) -> u64 {
    let two_rho = 2 * rho % q;
    let slice = |x1: u64| -> u64 {
        let mut n = 0;
        let mut x = [0u64; 8];
        x[0] = x1;
        let cells = q.pow(7);
        for idx in 0..cells {
            let mut r = idx;
            for slot in x.iter_mut().skip(1) {
                *slot = r % q;
                r /= q;
            }
            if x[3] != x[4] {
                continue;
            }
            let value: u64 = (0..8).map(|i| x[i] * x[7 - i]).sum::<u64>() % q;
            if value == two_rho {
                n += 1;
            }
        }
        n
    };
    if parallel {
        (0..q).into_par_iter().map(slice).sum()
    } else {
        (0..q).map(slice).sum()
    }
}

/// Enumerates the `q^7` points of `V0` over `F_q` and classifies those on the quadric.
pub fn enumerate_quadric(q: u64, rho: u64, parallel: bool) -> Result<QuadricCounts, G2Error> {
    if q < 5 || !is_prime(q) {
        return Err(G2Error::BadField(q));
    }
    let rho = rho % q;
    if rho == 0 {
        return Err(G2Error::ZeroRho);
    }
    let root = sqrt_mod(rho, q);
    let slices: Vec<[u64; 5]> = if parallel {
        (0..q)
            .into_par_iter()
            .map(|x1| count_slice(q, rho, root, x1))
            .collect()
    } else {
        (0..q).map(|x1| count_slice(q, rho, root, x1)).collect()
    };
    let mut sums = [0u64; 5];
    for s in &slices {
        for (acc, v) in sums.iter_mut().zip(s) {
            *acc += v;
        }
    }
    let counts = OrbitClass::ALL
        .iter()
        .zip(sums)
        .map(|(c, n)| (*c, n))
        .collect();
    Ok(QuadricCounts {
        q,
        rho,
        root,
        counts,
        unclassified: sums[4],
        total: sums.iter().sum(),
        recount: recount(q, rho, parallel),
    })
}
