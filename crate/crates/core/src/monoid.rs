//! The affine lattice maps `G: (x,y) -> (x+y, y)` and
//! `S: (x,y) -> (3x-2y+1, 2x-y+1)`, their homogeneous 3x3 forms, and the
//! finite-range checks that the monoid they generate acts freely.
//!
//! Nonzero cells `(n,k)` of the matrix with `n >= 1` are exactly the orbit
//! of `(1,1)` under this monoid.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{precondition, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
}

impl LatticePoint {
    pub const fn new(x: i64, y: i64) -> Self {
        Self { x, y }
    }
}

impl From<(i64, i64)> for LatticePoint {
    fn from((x, y): (i64, i64)) -> Self {
        Self { x, y }
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

pub fn apply_g(p: LatticePoint) -> Result<LatticePoint> {
    let x = p.x.checked_add(p.y).ok_or(Error::Overflow("apply_g"))?;
    Ok(LatticePoint::new(x, p.y))
}

pub fn apply_s(p: LatticePoint) -> Result<LatticePoint> {
    let of = || Error::Overflow("apply_s");
    let x =
        p.x.checked_mul(3)
            .and_then(|v| v.checked_sub(p.y.checked_mul(2)?))
            .and_then(|v| v.checked_add(1))
            .ok_or_else(of)?;
    let y =
        p.x.checked_mul(2)
            .and_then(|v| v.checked_sub(p.y))
            .and_then(|v| v.checked_add(1))
            .ok_or_else(of)?;
    Ok(LatticePoint::new(x, y))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    G,
    S,
}

impl Letter {
    pub fn apply(self, p: LatticePoint) -> Result<LatticePoint> {
        match self {
            Letter::G => apply_g(p),
            Letter::S => apply_s(p),
        }
    }

    pub fn matrix(self) -> HomMatrix3 {
        match self {
            Letter::G => HomMatrix3::G,
            Letter::S => HomMatrix3::S,
        }
    }
}

/// A word over `{S, G}`, stored in written order. The rightmost letter acts
/// first, so `GS` sends `p` to `G(S(p))`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Self(letters)
    }

    pub fn power(letter: Letter, times: usize) -> Self {
        Self(vec![letter; times])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Concatenation `self · other`: `other` acts first.
    pub fn then_after(mut self, other: &Word) -> Self {
        self.0.extend_from_slice(&other.0);
        self
    }

    pub fn apply(&self, p: LatticePoint) -> Result<LatticePoint> {
        self.0.iter().rev().try_fold(p, |p, l| l.apply(p))
    }

    pub fn matrix(&self) -> Result<HomMatrix3> {
        self.0
            .iter()
            .try_fold(HomMatrix3::IDENTITY, |acc, l| acc.mul(&l.matrix()))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        for l in &self.0 {
            f.write_str(match l {
                Letter::G => "G",
                Letter::S => "S",
            })?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "e" {
            return Ok(Self::empty());
        }
        s.chars()
            .map(|c| match c {
                'G' | 'g' => Ok(Letter::G),
                'S' | 's' => Ok(Letter::S),
                other => Err(Error::Parse {
                    line: 1,
                    msg: format!("unexpected letter {other:?} in word"),
                }),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }
}

/// A 3x3 integer matrix acting on `(x, y, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HomMatrix3(pub [[i128; 3]; 3]);

impl HomMatrix3 {
    pub const IDENTITY: Self = Self([[1, 0, 0], [0, 1, 0], [0, 0, 1]]);
    pub const G: Self = Self([[1, 1, 0], [0, 1, 0], [0, 0, 1]]);
    pub const S: Self = Self([[3, -2, 1], [2, -1, 1], [0, 0, 1]]);

    pub fn entries(&self) -> &[[i128; 3]; 3] {
        &self.0
    }

    pub fn is_affine(&self) -> bool {
        self.0[2] == [0, 0, 1]
    }

    pub fn block_det(&self) -> i128 {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        let mut out = [[0i128; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let mut acc = 0i128;
                for t in 0..3 {
                    acc = self.0[i][t]
                        .checked_mul(rhs.0[t][j])
                        .and_then(|v| acc.checked_add(v))
                        .ok_or(Error::Overflow("matrix product"))?;
                }
                *cell = acc;
            }
        }
        Ok(Self(out))
    }

    /// Literal repeated product, used as the reference for the closed forms.
    pub fn pow(&self, exp: u32) -> Result<Self> {
        (0..exp).try_fold(Self::IDENTITY, |acc, _| acc.mul(self))
    }

    /// Exact integer inverse of an affine matrix whose linear block has
    /// determinant +-1.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_affine() {
            return None;
        }
        let det = self.block_det();
        if det != 1 && det != -1 {
            return None;
        }
        let m = &self.0;
        // det is +-1, so dividing by it equals multiplying by it.
        let a = [
            [m[1][1] * det, -m[0][1] * det],
            [-m[1][0] * det, m[0][0] * det],
        ];
        let t = [
            -(a[0][0] * m[0][2] + a[0][1] * m[1][2]),
            -(a[1][0] * m[0][2] + a[1][1] * m[1][2]),
        ];
        Some(Self([
            [a[0][0], a[0][1], t[0]],
            [a[1][0], a[1][1], t[1]],
            [0, 0, 1],
        ]))
    }

    pub fn apply(&self, p: LatticePoint) -> Result<LatticePoint> {
        let v = [p.x as i128, p.y as i128, 1];
        let row = |r: &[i128; 3]| -> Result<i64> {
            let mut acc = 0i128;
            for (a, b) in r.iter().zip(v.iter()) {
                acc = a
                    .checked_mul(*b)
                    .and_then(|t| acc.checked_add(t))
                    .ok_or(Error::Overflow("matrix action"))?;
            }
            i64::try_from(acc).map_err(|_| Error::Overflow("matrix action"))
        };
        Ok(LatticePoint::new(row(&self.0[0])?, row(&self.0[1])?))
    }
}

impl fmt::Display for HomMatrix3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .0
            .iter()
            .map(|r| format!("{} {} {}", r[0], r[1], r[2]))
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

/// The four integer sequences that parametrize `(SG)^i`.
///
/// `a`, `b`, `d` follow `u(n) = 4u(n-1) - u(n-2)`; `c` follows
/// `c(n) = 5c(n-1) - 5c(n-2) + c(n-3)` with `c(k) = 0` for `k <= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceQuad {
    pub a: Vec<i128>,
    pub b: Vec<i128>,
    pub c: Vec<i128>,
    pub d: Vec<i128>,
}

impl RecurrenceQuad {
    /// Terms with indices `0..len`.
    pub fn compute(len: usize) -> Result<Self> {
        let of = || Error::Overflow("recurrence");
        let four_term = |u0: i128, u1: i128| -> Result<Vec<i128>> {
            let mut v = vec![u0, u1];
            while v.len() < len {
                let n = v.len();
                let next = v[n - 1]
                    .checked_mul(4)
                    .and_then(|t| t.checked_sub(v[n - 2]))
                    .ok_or_else(of)?;
                v.push(next);
            }
            v.truncate(len);
            Ok(v)
        };
        let a = four_term(1, 3)?;
        let b = four_term(0, 1)?;
        let d = four_term(0, 2)?;
        let mut c: Vec<i128> = vec![0, 1];
        while c.len() < len {
            let n = c.len();
            let c3 = if n >= 3 { c[n - 3] } else { 0 };
            let next = c[n - 1]
                .checked_mul(5)
                .and_then(|t| t.checked_sub(c[n - 2].checked_mul(5)?))
                .and_then(|t| t.checked_add(c3))
                .ok_or_else(of)?;
            c.push(next);
        }
        c.truncate(len);
        Ok(Self { a, b, c, d })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClosedFormKind {
    /// `G^i`
    GPow,
    /// `S^i`
    SPow,
    /// `S^i G`
    SiG,
    /// `(SG)^i`, defined for `i >= 1`
    SgPow,
}

impl ClosedFormKind {
    pub const ALL: [ClosedFormKind; 4] = [Self::GPow, Self::SPow, Self::SiG, Self::SgPow];

    /// The same matrix computed by literal multiplication.
    pub fn direct(self, i: u32) -> Result<HomMatrix3> {
        match self {
            Self::GPow => HomMatrix3::G.pow(i),
            Self::SPow => HomMatrix3::S.pow(i),
            Self::SiG => HomMatrix3::S.pow(i)?.mul(&HomMatrix3::G),
            Self::SgPow => HomMatrix3::S.mul(&HomMatrix3::G)?.pow(i),
        }
    }
}

impl fmt::Display for ClosedFormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::GPow => "G^i",
            Self::SPow => "S^i",
            Self::SiG => "S^iG",
            Self::SgPow => "(SG)^i",
        })
    }
}

pub fn closed_form(kind: ClosedFormKind, i: u32) -> Result<HomMatrix3> {
    let ii = i as i128;
    let m = match kind {
        ClosedFormKind::GPow => [[1, ii, 0], [0, 1, 0], [0, 0, 1]],
        ClosedFormKind::SPow => [
            [2 * ii + 1, -2 * ii, ii],
            [2 * ii, -(2 * ii - 1), ii],
            [0, 0, 1],
        ],
        ClosedFormKind::SiG => [[2 * ii + 1, 1, ii], [2 * ii, 1, ii], [0, 0, 1]],
        ClosedFormKind::SgPow => {
            if i == 0 {
                return precondition("(SG)^i closed form needs i >= 1");
            }
            let q = RecurrenceQuad::compute(i as usize + 1)?;
            let i = i as usize;
            [
                [q.a[i], q.b[i], q.c[i]],
                [q.d[i], q.a[i - 1], q.b[i]],
                [0, 0, 1],
            ]
        }
    };
    Ok(HomMatrix3(m))
}

/// `(G S^{-1})^power`.
pub fn gs_inverse_power(power: u32) -> HomMatrix3 {
    let s_inv = HomMatrix3::S.inverse().expect("S has block determinant 1");
    HomMatrix3::G
        .mul(&s_inv)
        .and_then(|m| m.pow(power))
        .expect("small entries")
}

pub fn gs_inverse_identity() -> bool {
    gs_inverse_power(4) == HomMatrix3::IDENTITY
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegionLabel {
    X1,
    X2,
    Outside,
}

/// `x > -1/2` and `0 < y < x/2 + 1/4`, cleared of denominators.
pub fn in_x1(p: LatticePoint) -> bool {
    let (x, y) = (p.x as i128, p.y as i128);
    2 * x + 1 > 0 && y > 0 && 4 * y < 2 * x + 1
}

/// `x > -1/2` and `2x/3 + 1/3 < y < x + 1/2`, cleared of denominators.
pub fn in_x2(p: LatticePoint) -> bool {
    let (x, y) = (p.x as i128, p.y as i128);
    2 * x + 1 > 0 && 3 * y > 2 * x + 1 && 2 * y < 2 * x + 1
}

pub fn classify_region(p: LatticePoint) -> RegionLabel {
    if in_x1(p) {
        RegionLabel::X1
    } else if in_x2(p) {
        RegionLabel::X2
    } else {
        RegionLabel::Outside
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PingPongCounterexample {
    pub point: LatticePoint,
    pub letter: Letter,
    pub image: LatticePoint,
    pub image_region: RegionLabel,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PingPongReport {
    pub bound: i64,
    pub points_in_regions: u64,
    pub counterexamples: Vec<PingPongCounterexample>,
}

impl PingPongReport {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Checks `G(X1 ∪ X2) ⊆ X1` and `S(X1 ∪ X2) ⊆ X2` on the box `[0,bound]^2`.
pub fn verify_pingpong(bound: i64) -> Result<PingPongReport> {
    if bound < 1 {
        return precondition("ping-pong bound must be >= 1");
    }
    let mut report = PingPongReport {
        bound,
        points_in_regions: 0,
        counterexamples: Vec::new(),
    };
    for x in 0..=bound {
        for y in 0..=bound {
            let p = LatticePoint::new(x, y);
            if classify_region(p) == RegionLabel::Outside {
                continue;
            }
            report.points_in_regions += 1;
            for (letter, want) in [(Letter::G, RegionLabel::X1), (Letter::S, RegionLabel::X2)] {
                let image = letter.apply(p)?;
                let got = classify_region(image);
                if got != want {
                    report.counterexamples.push(PingPongCounterexample {
                        point: p,
                        letter,
                        image,
                        image_region: got,
                    });
                }
            }
        }
    }
    Ok(report)
}

/// Breadth-first walk of the orbit of `(1,1)`, pruning points with
/// `x > row_bound`. Both maps strictly increase `x` on `1 <= y <= x`, so the
/// pruned walk is exact. `visit` receives each point with its word length.
pub fn walk_orbit<F>(row_bound: i64, mut visit: F) -> Result<()>
where
    F: FnMut(LatticePoint, u32) -> Result<()>,
{
    if row_bound < 1 {
        return Ok(());
    }
    let mut queue = VecDeque::from([(LatticePoint::new(1, 1), 0u32)]);
    while let Some((p, depth)) = queue.pop_front() {
        visit(p, depth)?;
        for child in [apply_g(p)?, apply_s(p)?] {
            if child.x <= row_bound {
                queue.push_back((child, depth + 1));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreenessReport {
    pub row_bound: i64,
    pub orbit_size: u64,
    pub duplicates: Vec<LatticePoint>,
}

impl FreenessReport {
    pub fn is_free(&self) -> bool {
        self.duplicates.is_empty()
    }
}

pub fn certify_free_action(row_bound: i64) -> Result<FreenessReport> {
    if row_bound < 1 {
        return precondition("row bound must be >= 1");
    }
    let mut seen = HashSet::new();
    let mut duplicates = Vec::new();
    walk_orbit(row_bound, |p, _| {
        if !seen.insert(p) {
            duplicates.push(p);
        }
        Ok(())
    })?;
    Ok(FreenessReport {
        row_bound,
        orbit_size: seen.len() as u64,
        duplicates,
    })
}
