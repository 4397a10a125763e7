//! Track vectors and breadth, periodicity of diagonals and columns, the
//! parametric families of set cells, and per-step creation statistics.

use std::fmt;

use crate::error::{precondition, Error, Result};
use crate::matrix::{descent_length, descent_trace, is_fixed_cell, CellCoord, DescentOracle};
use crate::monoid::{apply_g, apply_s, LatticePoint, Letter, RecurrenceQuad, Word};
use crate::par::map_range;
use crate::sequences::{Provenance, SeqName, SequenceTable};

/// `(i_0+1, …, i_l+1)` for a cell `S^{i_l} G … G S^{i_0} (1,1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TrackVector(Vec<u64>);

impl TrackVector {
    pub fn new(entries: Vec<u64>) -> Result<Self> {
        if entries.is_empty() || entries.contains(&0) {
            return precondition("track entries must be a nonempty list of positive integers");
        }
        Ok(Self(entries))
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn breadth(&self) -> u64 {
        self.0.len() as u64 - 1
    }

    /// Equals the creation step of the cell.
    pub fn sum(&self) -> u64 {
        self.0.iter().sum()
    }

    /// The normal-form word `S^{i_l} G … G S^{i_0}`.
    pub fn word(&self) -> Word {
        let mut letters = Vec::new();
        for (idx, &e) in self.0.iter().rev().enumerate() {
            if idx > 0 {
                letters.push(Letter::G);
            }
            letters.extend(std::iter::repeat_n(Letter::S, e as usize - 1));
        }
        Word::from_letters(letters)
    }

    pub fn cell(&self) -> Result<CellCoord> {
        let p = self.word().apply(LatticePoint::new(1, 1))?;
        Ok(CellCoord::new(p.x as u64, p.y as u64))
    }

    /// `(a, 1^p, b)` with `a, b >= 1` and `p >= 0`, i.e. the cell
    /// `S^{b-1} G^{p+1} S^{a-1} (1,1)`.
    pub fn matches_a1b(&self) -> bool {
        let e = &self.0;
        e.len() >= 2 && e[1..e.len() - 1].iter().all(|&v| v == 1)
    }

    /// `(1^p, a, 1^q)` with `p, q >= 0` and `a >= 2`.
    pub fn matches_1a1(&self) -> bool {
        self.0.iter().filter(|&&v| v != 1).count() == 1
    }
}

impl fmt::Display for TrackVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn track_vector(c: CellCoord) -> Result<TrackVector> {
    if c.n == 0 {
        return precondition("track vectors are defined for n >= 1");
    }
    let trace = descent_trace(c);
    if !trace.is_member() {
        return Err(Error::ZeroCell { n: c.n, k: c.k });
    }
    let mut entries: Vec<u64> = trace.stages.iter().map(|s| s.exponent + 1).collect();
    entries.push(trace.terminal.n);
    entries.reverse();
    TrackVector::new(entries)
}

/// Descent applications needed to reach the diagonal.
pub fn breadth(c: CellCoord) -> Result<u64> {
    if c.n == 0 {
        return precondition("breadth is defined for n >= 1");
    }
    descent_length(c).ok_or(Error::ZeroCell { n: c.n, k: c.k })
}

fn row_cells(n: u64) -> impl Iterator<Item = u64> {
    (1..=n).filter(move |&k| is_fixed_cell(CellCoord::new(n, k)))
}

/// Cells of row `n` whose track is `(a,1^p,b)` and `(1^p,a,1^q)`.
pub fn count_track_patterns(n: u64) -> Result<(u64, u64)> {
    if n == 0 {
        return precondition("row must be >= 1");
    }
    let (mut a1b, mut one_a_one) = (0, 0);
    for k in row_cells(n) {
        let t = track_vector(CellCoord::new(n, k))?;
        a1b += u64::from(t.matches_a1b());
        one_a_one += u64::from(t.matches_1a1());
    }
    Ok((a1b, one_a_one))
}

pub fn count_breadth3(n: u64) -> Result<u64> {
    if n == 0 {
        return precondition("row must be >= 1");
    }
    Ok(row_cells(n)
        .filter(|&k| descent_length(CellCoord::new(n, k)) == Some(3))
        .count() as u64)
}

/// `c_1..=c_max`, the breadth-3 counts per row.
pub fn breadth3_table(max: u64, threads: usize) -> SequenceTable {
    let oracle = DescentOracle::new(max.min(DescentOracle::DEFAULT_LIMIT));
    let values = map_range(1..=max, threads, |n| {
        oracle
            .row(n)
            .into_iter()
            .filter(|&k| descent_length(CellCoord::new(n, k)) == Some(3))
            .count() as u64
    });
    SequenceTable {
        name: SeqName::Breadth3,
        method: Provenance::TrackScan,
        start: 1,
        values,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodReport {
    pub index: u64,
    pub period: u64,
    /// Rows compared, inclusive.
    pub from: u64,
    pub to: u64,
    /// Rows `n` whose entry differs from row `n - period`.
    pub violations: Vec<u64>,
}

impl PeriodReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Subdiagonal `a` (cells `(n, n-a)`, `n > a`) has period `2a + 1`.
pub fn check_subdiagonal_period(a: u64, max_row: u64) -> Result<PeriodReport> {
    let period = 2 * a + 1;
    if max_row <= a + 2 * period {
        return precondition(format!("need max_row > {}", a + 2 * period));
    }
    let entry = |n: u64| is_fixed_cell(CellCoord::new(n, n - a));
    let from = a + 1 + period;
    let violations = (from..=max_row)
        .filter(|&n| entry(n) != entry(n - period))
        .collect();
    Ok(PeriodReport {
        index: a,
        period,
        from,
        to: max_row,
        violations,
    })
}

/// Column `a` satisfies `F_{n,a} = F_{n-a,a}` once `2(n-a)+1 > a`.
pub fn check_column_period(a: u64, max_row: u64) -> Result<PeriodReport> {
    if a == 0 {
        return precondition("column index must be >= 1");
    }
    // Smallest n with 2(n-a)+1 > a.
    let from = a + a.div_ceil(2);
    let entry = |n: u64| is_fixed_cell(CellCoord::new(n, a));
    let violations = (from..=max_row)
        .filter(|&n| entry(n) != entry(n - a))
        .collect();
    Ok(PeriodReport {
        index: a,
        period: a,
        from,
        to: max_row,
        violations,
    })
}

/// Row and column of `G^i S^j (kd, d)`.
pub fn kdij_cell(k: u64, d: u64, i: u64, j: u64) -> CellCoord {
    let step = 2 * (k - 1) * d + 1;
    CellCoord::new(k * d + i * d + j * (i + 1) * step, d + j * step)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyReport {
    pub checked: u64,
    /// Parameters and cell of each failure.
    pub failures: Vec<(Vec<u64>, CellCoord)>,
}

impl FamilyReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Every `(k, d, i, j)` with `1 <= k <= max_k` and the others from 0 to
/// their bounds. Each cell is checked by descent, and its coordinates are
/// recomputed by applying `G^i S^j` to `(kd, d)`.
pub fn check_family_kdij(max_k: u64, max_d: u64, max_i: u64, max_j: u64) -> Result<FamilyReport> {
    let mut report = FamilyReport {
        checked: 0,
        failures: Vec::new(),
    };
    for k in 1..=max_k {
        for d in 0..=max_d {
            for i in 0..=max_i {
                for j in 0..=max_j {
                    let c = kdij_cell(k, d, i, j);
                    let word = Word::power(Letter::G, i as usize)
                        .then_after(&Word::power(Letter::S, j as usize));
                    let image = word.apply(LatticePoint::new((k * d) as i64, d as i64))?;
                    report.checked += 1;
                    let same = image == LatticePoint::new(c.n as i64, c.k as i64);
                    if !same || !is_fixed_cell(c) {
                        report.failures.push((vec![k, d, i, j], c));
                    }
                }
            }
        }
    }
    Ok(report)
}

/// `F_{3t+2, 2t+2} = 1` for `t = 0..=t_max`.
pub fn check_corollary_3t2(t_max: u64) -> FamilyReport {
    family_line(t_max, |t| CellCoord::new(3 * t + 2, 2 * t + 2))
}

/// `F_{5t+4, 2t+2} = 1` for `t = 0..=t_max`.
pub fn check_corollary_5t4(t_max: u64) -> FamilyReport {
    family_line(t_max, |t| CellCoord::new(5 * t + 4, 2 * t + 2))
}

fn family_line(t_max: u64, cell: impl Fn(u64) -> CellCoord) -> FamilyReport {
    let failures = (0..=t_max)
        .map(|t| (t, cell(t)))
        .filter(|&(_, c)| !is_fixed_cell(c))
        .map(|(t, c)| (vec![t], c))
        .collect();
    FamilyReport {
        checked: t_max + 1,
        failures,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CreationRowStat {
    pub step: u32,
    /// Number of cells created at this step.
    pub created: u64,
    /// Largest row containing a cell created at this step.
    pub max_row: u64,
    /// Columns of the step's cells in `max_row`, ascending.
    pub columns: Vec<u64>,
}

pub const MAX_CREATION_STEP: u32 = 28;

/// Layer-by-layer orbit of `(1,1)` with no row bound: the cells created at
/// step `i` are the words of length `i - 1`.
pub fn creation_row_stats(max_step: u32) -> Result<Vec<CreationRowStat>> {
    if max_step < 1 {
        return precondition("max_step must be >= 1");
    }
    if max_step > MAX_CREATION_STEP {
        return precondition(format!(
            "max_step above {MAX_CREATION_STEP} is not supported: layers hold 2^(step-1) cells"
        ));
    }
    let mut layer = vec![LatticePoint::new(1, 1)];
    let mut out = Vec::new();
    for step in 1..=max_step {
        let max_row = layer.iter().map(|p| p.x).max().expect("nonempty layer");
        let mut columns: Vec<u64> = layer
            .iter()
            .filter(|p| p.x == max_row)
            .map(|p| p.y as u64)
            .collect();
        columns.sort_unstable();
        out.push(CreationRowStat {
            step,
            created: layer.len() as u64,
            max_row: max_row as u64,
            columns,
        });
        if step < max_step {
            let mut next = Vec::with_capacity(layer.len() * 2);
            for p in &layer {
                next.push(apply_g(*p)?);
                next.push(apply_s(*p)?);
            }
            layer = next;
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddStepAlignment {
    pub step: u32,
    pub max_row: u64,
    /// The `c` term of the `(SG)^i` recurrences at index `(step + 1) / 2`.
    pub c_term: u64,
}

impl OddStepAlignment {
    pub fn agrees(&self) -> bool {
        self.max_row == self.c_term
    }
}

/// Pairs `r_{2j+1}` with `c(j+1)`.
pub fn odd_step_alignment(stats: &[CreationRowStat]) -> Result<Vec<OddStepAlignment>> {
    let max_idx = stats
        .iter()
        .map(|s| s.step as usize / 2 + 2)
        .max()
        .unwrap_or(2);
    let quad = RecurrenceQuad::compute(max_idx)?;
    Ok(stats
        .iter()
        .filter(|s| s.step % 2 == 1)
        .map(|s| OddStepAlignment {
            step: s.step,
            max_row: s.max_row,
            c_term: quad.c[(s.step as usize).div_ceil(2)] as u64,
        })
        .collect())
}

/// `(step, cells in r_step, expected)` where two are expected on even
/// steps and one on odd steps. Evidence only.
pub fn parity_claim(stats: &[CreationRowStat]) -> Vec<(u32, usize, usize)> {
    stats
        .iter()
        .map(|s| (s.step, s.columns.len(), if s.step % 2 == 0 { 2 } else { 1 }))
        .collect()
}
