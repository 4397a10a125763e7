//! The matrix `F` built three independent ways: the step process, the
//! monoid orbit of `(1,1)`, and cell-by-cell modular descent.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::bits::TriangularBits;
use crate::error::{precondition, Error, Result};
use crate::monoid::{self, LatticePoint};

/// Largest row count for which a dense snapshot is materialized.
pub const MAX_SNAPSHOT_ROWS: u64 = 32_768;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellCoord {
    pub n: u64,
    pub k: u64,
}

impl CellCoord {
    pub const fn new(n: u64, k: u64) -> Self {
        Self { n, k }
    }
}

impl fmt::Display for CellCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.n, self.k)
    }
}

/// One application of the descent map `(n,k) -> (n-k, h)` with
/// `h = k mod (2(n-k)+1)`.
pub fn phi_step(c: CellCoord) -> Result<CellCoord> {
    if c.k < 1 || c.k > c.n {
        return precondition(format!("descent step needs 1 <= k <= n, got {c}"));
    }
    let x = c.n - c.k;
    Ok(CellCoord::new(x, c.k % (2 * x + 1)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DescentStage {
    pub n: u64,
    pub k: u64,
    pub modulus: u64,
    pub h: u64,
    /// `(k - h) / modulus`, the `i` in `(n,k) = S^i G (n-k, h)`.
    pub exponent: u64,
}

/// Full, unaccelerated descent of a cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentTrace {
    pub stages: Vec<DescentStage>,
    /// Where the descent stopped: a diagonal cell when the start is set.
    pub terminal: CellCoord,
}

impl DescentTrace {
    pub fn is_member(&self) -> bool {
        self.terminal.n == self.terminal.k
    }
}

pub fn descent_trace(c: CellCoord) -> DescentTrace {
    let mut stages = Vec::new();
    let mut cur = c;
    while cur.k >= 1 && cur.k < cur.n {
        let x = cur.n - cur.k;
        let modulus = 2 * x + 1;
        let h = cur.k % modulus;
        stages.push(DescentStage {
            n: cur.n,
            k: cur.k,
            modulus,
            h,
            exponent: (cur.k - h) / modulus,
        });
        cur = CellCoord::new(x, h);
    }
    DescentTrace {
        stages,
        terminal: cur,
    }
}

/// One step of the accelerated descent, or the final verdict.
enum Descent {
    Done(bool),
    /// Next cell and the number of descent-map applications skipped.
    Next(u64, u64, u64),
}

#[inline]
fn descend_once(n: u64, k: u64) -> Descent {
    if k >= n {
        return Descent::Done(k == n);
    }
    if k == 0 {
        return Descent::Done(false);
    }
    // While 2(n-k)+1 > k the step is (n,k) -> (n-k,k); take the whole run.
    let t = k + k.div_ceil(2);
    if n >= t {
        let j = (n - t) / k + 1;
        return Descent::Next(n - j * k, k, j);
    }
    let x = n - k;
    Descent::Next(x, k % (2 * x + 1), 1)
}

/// `F_{n,k}` by modular descent.
pub fn is_fixed_cell(c: CellCoord) -> bool {
    let (mut n, mut k) = (c.n, c.k);
    loop {
        match descend_once(n, k) {
            Descent::Done(v) => return v,
            Descent::Next(n2, k2, _) => (n, k) = (n2, k2),
        }
    }
}

/// Number of descent-map applications needed to reach a diagonal cell, or
/// `None` for a zero cell. Runs of `G` are skipped in one step.
pub fn descent_length(c: CellCoord) -> Option<u64> {
    let (mut n, mut k) = (c.n, c.k);
    let mut steps = 0;
    loop {
        match descend_once(n, k) {
            Descent::Done(true) => return Some(steps),
            Descent::Done(false) => return None,
            Descent::Next(n2, k2, applied) => {
                steps += applied;
                (n, k) = (n2, k2);
            }
        }
    }
}

/// Descent membership backed by a dense table of the low rows, filled
/// row by row from the one-step recursion.
#[derive(Debug, Clone)]
pub struct DescentOracle {
    dense: TriangularBits,
    limit: u64,
}

impl DescentOracle {
    pub const DEFAULT_LIMIT: u64 = 16_384;

    pub fn new(limit: u64) -> Self {
        let mut dense = TriangularBits::new(limit as usize);
        dense.set(0, 0);
        for n in 1..=limit as usize {
            dense.set(n, n);
            for x in 1..n {
                let h = (n - x) % (2 * x + 1);
                if h <= x && dense.get(x, h) {
                    dense.set(n, n - x);
                }
            }
        }
        Self { dense, limit }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn contains(&self, n: u64, k: u64) -> bool {
        let (mut n, mut k) = (n, k);
        loop {
            if n <= self.limit {
                return self.dense.get(n as usize, k as usize);
            }
            match descend_once(n, k) {
                Descent::Done(v) => return v,
                Descent::Next(n2, k2, _) => (n, k) = (n2, k2),
            }
        }
    }

    /// Set columns of row `n`, ascending.
    pub fn row(&self, n: u64) -> Vec<u64> {
        if n <= self.limit {
            return self.dense.row_ones(n as usize).map(|k| k as u64).collect();
        }
        (1..=n).filter(|&k| self.contains(n, k)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    Steps,
    Orbit,
    Descent,
}

impl Generator {
    pub const ALL: [Generator; 3] = [Self::Steps, Self::Orbit, Self::Descent];

    pub fn generate(self, max_row: u64) -> Result<MatrixSnapshot> {
        match self {
            Self::Steps => generate_by_steps(max_row),
            Self::Orbit => generate_by_orbit(max_row),
            Self::Descent => generate_by_descent(max_row),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Steps => "step",
            Self::Orbit => "orbit",
            Self::Descent => "descent",
        })
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "step" | "steps" => Ok(Self::Steps),
            "orbit" => Ok(Self::Orbit),
            "descent" => Ok(Self::Descent),
            other => precondition(format!("unknown generator {other:?}")),
        }
    }
}

/// Rows `0..=max_row` of `F`, with creation steps when the generator
/// produces them.
#[derive(Debug, Clone)]
pub struct MatrixSnapshot {
    max_row: u64,
    generator: Generator,
    bits: TriangularBits,
    steps: Option<HashMap<CellCoord, u32>>,
}

impl MatrixSnapshot {
    fn empty(max_row: u64, generator: Generator, with_steps: bool) -> Result<Self> {
        if max_row >= MAX_SNAPSHOT_ROWS {
            return Err(Error::SnapshotTooLarge {
                rows: max_row + 1,
                cap: MAX_SNAPSHOT_ROWS,
            });
        }
        Ok(Self {
            max_row,
            generator,
            bits: TriangularBits::new(max_row as usize),
            steps: with_steps.then(HashMap::new),
        })
    }

    /// Marks a cell; a second visit would push the entry to 2.
    fn mark(&mut self, c: CellCoord, step: Option<u32>) -> Result<()> {
        if self.bits.set(c.n as usize, c.k as usize) {
            return Err(Error::DuplicateVisit {
                x: c.n as i64,
                y: c.k as i64,
            });
        }
        if let (Some(steps), Some(s)) = (self.steps.as_mut(), step) {
            steps.insert(c, s);
        }
        Ok(())
    }

    pub fn max_row(&self) -> u64 {
        self.max_row
    }

    pub fn generator(&self) -> Generator {
        self.generator
    }

    pub fn bits(&self) -> &TriangularBits {
        &self.bits
    }

    pub fn has_steps(&self) -> bool {
        self.steps.is_some()
    }

    pub fn get(&self, n: u64, k: u64) -> bool {
        n <= self.max_row && self.bits.get(n as usize, k as usize)
    }

    pub fn row_sum(&self, n: u64) -> u64 {
        self.bits.row_count(n as usize)
    }

    pub fn row(&self, n: u64) -> Vec<u64> {
        self.bits.row_ones(n as usize).map(|k| k as u64).collect()
    }

    pub fn total(&self) -> u64 {
        self.bits.total_count()
    }

    pub fn creation_step(&self, c: CellCoord) -> Result<u32> {
        if !self.get(c.n, c.k) {
            return Err(Error::ZeroCell { n: c.n, k: c.k });
        }
        match &self.steps {
            Some(steps) => Ok(steps[&c]),
            None => precondition(format!(
                "the {} generator does not label creation steps",
                self.generator
            )),
        }
    }

    /// Set cells in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = CellCoord> + '_ {
        (0..=self.max_row).flat_map(move |n| {
            self.bits
                .row_ones(n as usize)
                .map(move |k| CellCoord::new(n, k as u64))
        })
    }

    /// Rows as space-separated 0/1 up to the diagonal, one per line.
    pub fn render_rows(&self) -> String {
        let mut out = String::new();
        for n in 0..=self.max_row as usize {
            for k in 0..=n {
                if k > 0 {
                    out.push(' ');
                }
                out.push(if self.bits.get(n, k) { '1' } else { '0' });
            }
            out.push('\n');
        }
        out
    }

    /// `n k step` per set cell, row-major.
    pub fn render_steps(&self) -> Result<String> {
        let mut out = String::new();
        for c in self.cells() {
            let s = self.creation_step(c)?;
            out.push_str(&format!("{} {} {}\n", c.n, c.k, s));
        }
        Ok(out)
    }
}

/// Runs the step process: step 0 sets `(0,0)`; at step `i` every cell
/// created at step `i-1` increments `(n+k, k)` and `(3n+1-2k, 2n+1-k)`.
/// The `G`-child of `(0,0)` is itself and is skipped.
pub fn generate_by_steps(max_row: u64) -> Result<MatrixSnapshot> {
    let mut snap = MatrixSnapshot::empty(max_row, Generator::Steps, true)?;
    let origin = CellCoord::new(0, 0);
    snap.mark(origin, Some(0))?;
    let mut frontier = vec![origin];
    let mut step = 0u32;
    while !frontier.is_empty() {
        step += 1;
        let mut next = Vec::new();
        for c in frontier {
            let (n, k) = (c.n, c.k);
            let s_child = CellCoord::new(3 * n + 1 - 2 * k, 2 * n + 1 - k);
            let g_child = (c != origin).then(|| CellCoord::new(n + k, k));
            for child in g_child.into_iter().chain([s_child]) {
                if child.n <= max_row {
                    snap.mark(child, Some(step))?;
                    next.push(child);
                }
            }
        }
        frontier = next;
    }
    Ok(snap)
}

/// Breadth-first orbit of `(1,1)` under the monoid; a cell at word length
/// `d` from `(1,1)` is labelled with step `d + 1`.
pub fn generate_by_orbit(max_row: u64) -> Result<MatrixSnapshot> {
    let mut snap = MatrixSnapshot::empty(max_row, Generator::Orbit, true)?;
    snap.mark(CellCoord::new(0, 0), Some(0))?;
    monoid::walk_orbit(max_row as i64, |p: LatticePoint, depth| {
        snap.mark(CellCoord::new(p.x as u64, p.y as u64), Some(depth + 1))
    })?;
    Ok(snap)
}

/// Evaluates [`is_fixed_cell`] on every cell of the triangle.
pub fn generate_by_descent(max_row: u64) -> Result<MatrixSnapshot> {
    let mut snap = MatrixSnapshot::empty(max_row, Generator::Descent, false)?;
    for n in 0..=max_row {
        for k in 0..=n {
            if is_fixed_cell(CellCoord::new(n, k)) {
                snap.mark(CellCoord::new(n, k), None)?;
            }
        }
    }
    Ok(snap)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mismatch {
    Bit {
        left: Generator,
        right: Generator,
        cell: CellCoord,
    },
    Step {
        cell: CellCoord,
        by_steps: u32,
        by_orbit: u32,
    },
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mismatch::Bit { left, right, cell } => {
                write!(f, "{left} and {right} differ at {cell}")
            }
            Mismatch::Step {
                cell,
                by_steps,
                by_orbit,
            } => write!(
                f,
                "creation step at {cell}: step={by_steps} orbit={by_orbit}"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AgreementReport {
    pub max_row: u64,
    pub cells: u64,
    pub mismatch: Option<Mismatch>,
}

impl AgreementReport {
    pub fn agree(&self) -> bool {
        self.mismatch.is_none()
    }
}

pub fn methods_agree(max_row: u64) -> Result<AgreementReport> {
    let steps = generate_by_steps(max_row)?;
    let orbit = generate_by_orbit(max_row)?;
    let descent = generate_by_descent(max_row)?;
    let mut mismatch = None;
    for other in [&orbit, &descent] {
        if let Some((n, k)) = steps.bits.first_difference(&other.bits) {
            mismatch = Some(Mismatch::Bit {
                left: Generator::Steps,
                right: other.generator,
                cell: CellCoord::new(n as u64, k as u64),
            });
            break;
        }
    }
    if mismatch.is_none() {
        for c in steps.cells() {
            let (a, b) = (steps.creation_step(c)?, orbit.creation_step(c)?);
            if a != b {
                mismatch = Some(Mismatch::Step {
                    cell: c,
                    by_steps: a,
                    by_orbit: b,
                });
                break;
            }
        }
    }
    Ok(AgreementReport {
        max_row,
        cells: steps.total(),
        mismatch,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::{Letter, Word};
    use proptest::prelude::*;

    fn c(n: u64, k: u64) -> CellCoord {
        CellCoord::new(n, k)
    }

    /// Unaccelerated descent, straight from the recursion.
    fn naive_member(mut n: u64, mut k: u64) -> bool {
        loop {
            if k > n {
                return false;
            }
            if k == n {
                return true;
            }
            if k == 0 {
                return false;
            }
            let x = n - k;
            k %= 2 * x + 1;
            n = x;
        }
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi_step(c(5, 4)).unwrap(), c(1, 1));
        assert_eq!(phi_step(c(9, 9)).unwrap(), c(0, 0));
        assert_eq!(phi_step(c(35, 15)).unwrap(), c(20, 15));
        assert!(phi_step(c(3, 0)).is_err());
        assert!(phi_step(c(3, 4)).is_err());
    }

    #[test]
    fn membership_examples() {
        assert!(is_fixed_cell(c(8, 4)));
        assert!(!is_fixed_cell(c(7, 3)));
        assert!(is_fixed_cell(c(12, 3)));
        assert!(is_fixed_cell(c(0, 0)));
        assert!(!is_fixed_cell(c(0, 1)));
        assert!(!is_fixed_cell(c(5, 0)));
    }

    #[test]
    fn step_process_small() {
        let s = generate_by_steps(1).unwrap();
        assert_eq!(s.cells().collect::<Vec<_>>(), vec![c(0, 0), c(1, 1)]);
        assert_eq!(s.creation_step(c(0, 0)).unwrap(), 0);
        assert_eq!(s.creation_step(c(1, 1)).unwrap(), 1);

        let s = generate_by_steps(2).unwrap();
        assert_eq!(s.row(2), vec![1, 2]);
        assert_eq!(s.creation_step(c(2, 1)).unwrap(), 2);
        assert_eq!(s.creation_step(c(2, 2)).unwrap(), 2);
    }

    #[test]
    fn zero_rows() {
        for g in Generator::ALL {
            let s = g.generate(0).unwrap();
            assert_eq!(s.render_rows(), "1\n");
        }
    }

    #[test]
    fn row_35_step_labels() {
        let s = generate_by_orbit(35).unwrap();
        assert_eq!(s.creation_step(c(35, 15)).unwrap(), 6);
        assert_eq!(s.creation_step(c(35, 26)).unwrap(), 6);
        for k in s.row(35) {
            assert!(is_fixed_cell(c(35, k)));
        }
        for m in 1..=35 {
            assert_eq!(s.creation_step(c(m, m)).unwrap(), m as u32);
        }
    }

    #[test]
    fn creation_step_errors() {
        let s = generate_by_orbit(10).unwrap();
        assert!(matches!(
            s.creation_step(c(7, 3)),
            Err(Error::ZeroCell { .. })
        ));
        let d = generate_by_descent(10).unwrap();
        assert!(matches!(
            d.creation_step(c(7, 1)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn snapshot_cap() {
        assert!(matches!(
            generate_by_descent(MAX_SNAPSHOT_ROWS),
            Err(Error::SnapshotTooLarge { .. })
        ));
    }

    #[test]
    fn generators_agree_to_300() {
        assert!(methods_agree(300).unwrap().agree());
        assert!(methods_agree(0).unwrap().agree());
    }

    #[test]
    fn oracle_matches_per_cell_descent() {
        let oracle = DescentOracle::new(200);
        for n in 0..=400 {
            for k in 0..=n + 1 {
                assert_eq!(oracle.contains(n, k), is_fixed_cell(c(n, k)), "({n},{k})");
            }
        }
        assert_eq!(
            oracle.row(300),
            (1..=300)
                .filter(|&k| is_fixed_cell(c(300, k)))
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn trace_of_35_15() {
        let t = descent_trace(c(35, 15));
        assert!(t.is_member());
        assert_eq!(t.terminal, c(1, 1));
        let exps: Vec<u64> = t.stages.iter().map(|s| s.exponent).collect();
        assert_eq!(exps, vec![0, 1, 1]);
        assert!(!descent_trace(c(7, 3)).is_member());
    }

    proptest! {
        #[test]
        fn accelerated_descent_matches_naive(n in 0u64..200_000, k in 0u64..200_000) {
            prop_assert_eq!(is_fixed_cell(c(n, k)), naive_member(n, k));
        }

        #[test]
        fn descent_length_counts_stages(n in 1u64..5_000, k in 1u64..5_000) {
            let t = descent_trace(c(n, k));
            let len = descent_length(c(n, k));
            prop_assert_eq!(len, t.is_member().then_some(t.stages.len() as u64));
        }

        #[test]
        fn descent_inverts_s_i_g(n in 2u64..20_000, pick in 0usize..1000) {
            let row: Vec<u64> = (1..n).filter(|&k| is_fixed_cell(c(n, k))).collect();
            prop_assume!(!row.is_empty());
            let k = row[pick % row.len()];
            let prev = phi_step(c(n, k)).unwrap();
            let modulus = 2 * (n - k) + 1;
            prop_assert_eq!((k - prev.k) % modulus, 0);
            let i = (k - prev.k) / modulus;
            let w = Word::power(Letter::S, i as usize).then_after(&Word::power(Letter::G, 1));
            let img = w.apply(LatticePoint::new(prev.n as i64, prev.k as i64)).unwrap();
            prop_assert_eq!(img, LatticePoint::new(n as i64, k as i64));
        }

        #[test]
        fn divisors_and_diagonal_are_set(n in 1u64..100_000, d in 1u64..1_000) {
            prop_assert!(is_fixed_cell(c(n, n)));
            if n % d == 0 {
                prop_assert!(is_fixed_cell(c(n, d)));
            }
            prop_assert!(!is_fixed_cell(c(n, n + d)));
        }
    }
}
