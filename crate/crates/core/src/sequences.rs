//! Row sums `F_n`, the certified counts `a_n`, the bounds relating them to
//! divisor functions, and numerical scans of the open growth questions.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::arithmetic::DivisorSieve;
use crate::error::{precondition, Error, Result};
use crate::matrix::{is_fixed_cell, CellCoord, DescentOracle, Generator, MAX_SNAPSHOT_ROWS};
use crate::par::map_range;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeqName {
    /// Row sums of the matrix.
    F,
    /// Cells certified by a divisor witness.
    A,
    /// Cells of breadth 3 per row.
    Breadth3,
}

/// Which formula produced a table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    Matrix(Generator),
    Definition,
    Diophantine,
    DivisorSum,
    TrackScan,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Matrix(g) => write!(f, "{g}"),
            Provenance::Definition => f.write_str("definition"),
            Provenance::Diophantine => f.write_str("diophantine"),
            Provenance::DivisorSum => f.write_str("divsum"),
            Provenance::TrackScan => f.write_str("track-scan"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AMethod {
    Definition,
    Diophantine,
    DivisorSum,
}

impl AMethod {
    pub const ALL: [AMethod; 3] = [Self::Definition, Self::Diophantine, Self::DivisorSum];

    pub fn provenance(self) -> Provenance {
        match self {
            Self::Definition => Provenance::Definition,
            Self::Diophantine => Provenance::Diophantine,
            Self::DivisorSum => Provenance::DivisorSum,
        }
    }
}

impl FromStr for AMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "definition" | "def" => Ok(Self::Definition),
            "diophantine" | "dioph" => Ok(Self::Diophantine),
            "divsum" | "divisor-sum" => Ok(Self::DivisorSum),
            other => precondition(format!("unknown a_n method {other:?}")),
        }
    }
}

/// Consecutive terms of a sequence starting at index `start`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceTable {
    pub name: SeqName,
    pub method: Provenance,
    pub start: u64,
    pub values: Vec<u64>,
}

impl SequenceTable {
    pub fn get(&self, n: u64) -> Option<u64> {
        n.checked_sub(self.start)
            .and_then(|i| self.values.get(i as usize).copied())
    }

    pub fn end(&self) -> u64 {
        self.start + self.values.len() as u64 - 1
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(move |(i, &v)| (self.start + i as u64, v))
    }
}

pub fn row_sum_f(n: u64) -> u64 {
    (0..=n)
        .filter(|&k| is_fixed_cell(CellCoord::new(n, k)))
        .count() as u64
}

/// `F_0..=F_max`. Step and orbit tables come from a dense snapshot; the
/// descent table scans rows through a [`DescentOracle`] and has no size cap.
pub fn f_table(max: u64, method: Generator, threads: usize) -> Result<SequenceTable> {
    let values = match method {
        Generator::Steps | Generator::Orbit => {
            if max >= MAX_SNAPSHOT_ROWS {
                return Err(Error::SnapshotTooLarge {
                    rows: max + 1,
                    cap: MAX_SNAPSHOT_ROWS,
                });
            }
            let snap = method.generate(max)?;
            (0..=max).map(|n| snap.row_sum(n)).collect()
        }
        Generator::Descent => {
            let oracle = DescentOracle::new(max.min(DescentOracle::DEFAULT_LIMIT));
            map_range(0..=max, threads, |n| oracle.row(n).len() as u64)
        }
    };
    Ok(SequenceTable {
        name: SeqName::F,
        method: Provenance::Matrix(method),
        start: 0,
        values,
    })
}

fn need_sieve(sieve: &DivisorSieve, n: u64) -> Result<()> {
    if n > sieve.limit() {
        return Err(Error::OutOfRange {
            value: n,
            limit: sieve.limit(),
        });
    }
    Ok(())
}

/// `1 + #{x in [1,n-1] : some h | x has (2x+1) | (2n-2h+1)}`.
pub fn a_by_definition(n: u64, sieve: &DivisorSieve) -> Result<u64> {
    if n == 0 {
        return precondition("a_n needs n >= 1");
    }
    need_sieve(sieve, n.saturating_sub(1).max(1))?;
    let mut count = 1;
    for x in 1..n {
        let modulus = 2 * x + 1;
        if sieve
            .divisors(x)?
            .into_iter()
            .any(|h| (2 * n - 2 * h + 1).is_multiple_of(modulus))
        {
            count += 1;
        }
    }
    Ok(count)
}

/// `1 + #{(x,y,z) : y,z >= 1, x >= 0, n = 2xyz + yz + x + y}`.
pub fn a_by_diophantine(n: u64) -> Result<u64> {
    if n == 0 {
        return precondition("a_n needs n >= 1");
    }
    let mut count = 1;
    // n = x(2yz + 1) + y(z + 1)
    for y in 1..=n {
        if 2 * y > n {
            break;
        }
        let mut z = 1;
        while y * (z + 1) <= n {
            if (n - y * (z + 1)).is_multiple_of(2 * y * z + 1) {
                count += 1;
            }
            z += 1;
        }
    }
    Ok(count)
}

/// `1 + Σ_{0<=j<n} D_{2j+1}(n-j)`.
pub fn a_by_divisor_sum(n: u64, sieve: &DivisorSieve) -> Result<u64> {
    if n == 0 {
        return precondition("a_n needs n >= 1");
    }
    need_sieve(sieve, n)?;
    let mut total = 1;
    for j in 0..n {
        total += sieve.d_congruent(2 * j + 1, n - j)?;
    }
    Ok(total)
}

pub fn a_single(n: u64, method: AMethod, sieve: &DivisorSieve) -> Result<u64> {
    match method {
        AMethod::Definition => a_by_definition(n, sieve),
        AMethod::Diophantine => a_by_diophantine(n),
        AMethod::DivisorSum => a_by_divisor_sum(n, sieve),
    }
}

/// `a_1..=a_max` from the divisor-sum formula, evaluated as a sieve: every
/// divisor `d = (2j+1)t + 1` of `m` contributes to `a_{m+j}`.
pub fn a_table(max: u64) -> SequenceTable {
    let mut values = vec![1u64; max as usize];
    for j in 0..max {
        let modulus = 2 * j + 1;
        let mut d = modulus + 1;
        while d + j <= max {
            let mut n = d + j;
            while n <= max {
                values[(n - 1) as usize] += 1;
                n += d;
            }
            d += modulus;
        }
    }
    SequenceTable {
        name: SeqName::A,
        method: Provenance::DivisorSum,
        start: 1,
        values,
    }
}

/// `a_1..=a_max` by one of the per-term formulas.
pub fn a_table_with(max: u64, method: AMethod, threads: usize) -> Result<SequenceTable> {
    if method == AMethod::DivisorSum {
        return Ok(a_table(max));
    }
    let sieve = DivisorSieve::new(max.max(1) as u32);
    let values = map_range(1..=max, threads, |n| a_single(n, method, &sieve))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(SequenceTable {
        name: SeqName::A,
        method: method.provenance(),
        start: 1,
        values,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundKind {
    /// `a_n >= max{τ(n), τ(2n-1), τ_o(n+1)}`
    ALowerMax,
    /// `a_n >= τ(n) + τ(2n-1) + τ_o(n+1) - 3 - [2|n] - [n≡2 mod 3]`
    ALowerRefined,
    FAtLeastA,
    FAtLeastTau,
    /// `F_n >= 3`, stated for `n > 7`
    FAtLeastThree,
    FUpperRow,
    /// `F_n <= φ(2n+1)`
    FUpperTotient,
    /// `12 F_n <= 10n - 13`, the linear bound with constant `-13/12`
    FUpperLinear,
    /// `12 F_n <= 10n + 11`, the linear bound the region count supports
    FUpperLinearCorrected,
    /// number of set cells with `gcd(k, 2n+1) != 1`, must be 0
    CellsCoprime,
    /// number of set cells with `n/2 + 1/4 <= k <= 2n/3 + 1/3`, must be 0
    CellsInRegion,
}

impl BoundKind {
    pub fn is_lower(self) -> bool {
        matches!(
            self,
            Self::ALowerMax
                | Self::ALowerRefined
                | Self::FAtLeastA
                | Self::FAtLeastTau
                | Self::FAtLeastThree
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::ALowerMax => "a>=max(tau(n),tau(2n-1),tau_o(n+1))",
            Self::ALowerRefined => "a>=refined-divisor-sum",
            Self::FAtLeastA => "F>=a",
            Self::FAtLeastTau => "F>=tau(n)",
            Self::FAtLeastThree => "F>=3",
            Self::FUpperRow => "F<=n",
            Self::FUpperTotient => "F<=phi(2n+1)",
            Self::FUpperLinear => "12F<=10n-13",
            Self::FUpperLinearCorrected => "12F<=10n+11",
            Self::CellsCoprime => "cells:gcd(k,2n+1)=1",
            Self::CellsInRegion => "cells:region",
        }
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundReport {
    pub n: u64,
    pub kind: BoundKind,
    pub lhs: i64,
    pub rhs: i64,
    pub satisfied: bool,
}

impl BoundReport {
    fn new(n: u64, kind: BoundKind, lhs: i64, rhs: i64) -> Self {
        let satisfied = if kind.is_lower() {
            lhs >= rhs
        } else {
            lhs <= rhs
        };
        Self {
            n,
            kind,
            lhs,
            rhs,
            satisfied,
        }
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = if self.kind.is_lower() { ">=" } else { "<=" };
        write!(
            f,
            "{}\t{}\t{}\t{}\t{}\t{}",
            self.n,
            self.kind,
            self.lhs,
            rel,
            self.rhs,
            if self.satisfied { "ok" } else { "VIOLATED" }
        )
    }
}

/// Lower bounds given precomputed `a_n` and `F_n`.
pub fn lower_bounds(n: u64, a_n: u64, f_n: u64, sieve: &DivisorSieve) -> Result<Vec<BoundReport>> {
    if n == 0 {
        return precondition("bounds need n >= 1");
    }
    let t_n = sieve.tau(n)? as i64;
    let t_2n1 = sieve.tau(2 * n - 1)? as i64;
    let t_odd = sieve.tau_odd(n + 1)? as i64;
    let refined = t_n + t_2n1 + t_odd - 3 - i64::from(n.is_multiple_of(2)) - i64::from(n % 3 == 2);
    let (a, f) = (a_n as i64, f_n as i64);
    Ok(vec![
        BoundReport::new(n, BoundKind::ALowerMax, a, t_n.max(t_2n1).max(t_odd)),
        BoundReport::new(n, BoundKind::ALowerRefined, a, refined),
        BoundReport::new(n, BoundKind::FAtLeastA, f, a),
        BoundReport::new(n, BoundKind::FAtLeastTau, f, t_n),
    ])
}

/// Upper bounds and per-cell constraints given the set columns of row `n`.
pub fn upper_bounds(n: u64, cells: &[u64], sieve: &DivisorSieve) -> Result<Vec<BoundReport>> {
    if n < 2 {
        return precondition("upper bounds need n >= 2");
    }
    let f = cells.len() as i64;
    let ni = n as i64;
    let m = 2 * n + 1;
    let not_coprime = cells.iter().filter(|&&k| k.gcd(&m) != 1).count() as i64;
    // Outside the region: 4k < 2n+1 or 3k > 2n+1.
    let in_gap = cells
        .iter()
        .filter(|&&k| !(4 * k < 2 * n + 1 || 3 * k > 2 * n + 1))
        .count() as i64;
    Ok(vec![
        BoundReport::new(n, BoundKind::FUpperRow, f, ni),
        BoundReport::new(n, BoundKind::FUpperTotient, f, sieve.totient(m)? as i64),
        BoundReport::new(n, BoundKind::FUpperLinear, 12 * f, 10 * ni - 13),
        BoundReport::new(n, BoundKind::FUpperLinearCorrected, 12 * f, 10 * ni + 11),
        BoundReport::new(n, BoundKind::CellsCoprime, not_coprime, 0),
        BoundReport::new(n, BoundKind::CellsInRegion, in_gap, 0),
    ])
}

fn row_by_descent(n: u64) -> Vec<u64> {
    (1..=n)
        .filter(|&k| is_fixed_cell(CellCoord::new(n, k)))
        .collect()
}

/// Lower bounds at a single `n`, with `F_n` by descent and `a_n` by the
/// divisor-sum formula. The sieve must reach `2n - 1`.
pub fn check_lower_bounds(n: u64, sieve: &DivisorSieve) -> Result<Vec<BoundReport>> {
    need_sieve(sieve, (2 * n).saturating_sub(1).max(n + 1))?;
    let a = a_by_divisor_sum(n, sieve)?;
    lower_bounds(n, a, row_sum_f(n), sieve)
}

/// Upper bounds at a single `n`. The sieve must reach `2n + 1`.
pub fn check_upper_bounds(n: u64, sieve: &DivisorSieve) -> Result<Vec<BoundReport>> {
    need_sieve(sieve, 2 * n + 1)?;
    upper_bounds(n, &row_by_descent(n), sieve)
}

pub fn check_fn_at_least_3(n: u64) -> Result<bool> {
    if n <= 7 {
        return precondition("the F_n >= 3 check applies to n > 7");
    }
    Ok(row_sum_f(n) >= 3)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KindTally {
    pub kind: BoundKind,
    pub checked: u64,
    pub violations: u64,
    pub first_violation: Option<BoundReport>,
}

impl KindTally {
    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

/// Every bound over a range of rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremScanReport {
    pub from: u64,
    pub to: u64,
    pub cells: u64,
    pub tallies: Vec<KindTally>,
}

impl TheoremScanReport {
    pub fn tally(&self, kind: BoundKind) -> Option<&KindTally> {
        self.tallies.iter().find(|t| t.kind == kind)
    }
}

/// All bounds for `from <= n <= to`, with row membership by descent and
/// `a_n` from [`a_table`]. Lower bounds start at `n = 1`, upper bounds and
/// cell constraints at `n = 2`, and `F_n >= 3` at `n = 8`.
pub fn theorem_scan(from: u64, to: u64, threads: usize) -> Result<TheoremScanReport> {
    if from == 0 || to < from {
        return precondition("theorem scan needs 1 <= from <= to");
    }
    let sieve =
        DivisorSieve::new(u32::try_from(2 * to + 1).map_err(|_| Error::Overflow("sieve limit"))?);
    let a = a_table(to);
    let oracle = DescentOracle::new(to.min(DescentOracle::DEFAULT_LIMIT));
    let per_row = map_range(from..=to, threads, |n| -> Result<(u64, Vec<BoundReport>)> {
        let cells = oracle.row(n);
        let f = cells.len() as u64;
        let mut reports = lower_bounds(n, a.get(n).expect("a_n in range"), f, &sieve)?;
        if n >= 2 {
            reports.extend(upper_bounds(n, &cells, &sieve)?);
        }
        if n > 7 {
            reports.push(BoundReport::new(n, BoundKind::FAtLeastThree, f as i64, 3));
        }
        Ok((f, reports))
    });
    let mut tallies: BTreeMap<BoundKind, KindTally> = BTreeMap::new();
    let mut cells = 0;
    for row in per_row {
        let (f, reports) = row?;
        cells += f;
        for r in reports {
            let t = tallies.entry(r.kind).or_insert(KindTally {
                kind: r.kind,
                checked: 0,
                violations: 0,
                first_violation: None,
            });
            t.checked += 1;
            if !r.satisfied {
                t.violations += 1;
                t.first_violation.get_or_insert(r);
            }
        }
    }
    Ok(TheoremScanReport {
        from,
        to,
        cells,
        tallies: tallies.into_values().collect(),
    })
}

/// `⌊ln n⌋` for `n >= 1`.
pub fn floor_ln(n: u64) -> i64 {
    (n as f64).ln().floor() as i64
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureAReport {
    pub max: u64,
    /// Smallest `a_n - (⌊ln n⌋ - 1)` over the range, and where it occurs first.
    pub min_margin: i64,
    pub min_margin_at: u64,
    /// `n` with `a_n < ⌊ln n⌋ - 1`.
    pub violations: Vec<u64>,
    /// `(n, a_n, ⌊ln n⌋)` with `a_n < ⌊ln n⌋`.
    pub strict_failures: Vec<(u64, u64, i64)>,
}

/// Compares `a_n` with `⌊ln n⌋ - 1` for `2 <= n <= max`. Evidence only.
pub fn scan_conjecture_a(max: u64) -> Result<ConjectureAReport> {
    if max < 2 {
        return precondition("conjecture scan needs max >= 2");
    }
    let a = a_table(max);
    let mut report = ConjectureAReport {
        max,
        min_margin: i64::MAX,
        min_margin_at: 2,
        violations: Vec::new(),
        strict_failures: Vec::new(),
    };
    for n in 2..=max {
        let an = a.get(n).expect("in range");
        let l = floor_ln(n);
        let margin = an as i64 - (l - 1);
        if margin < report.min_margin {
            report.min_margin = margin;
            report.min_margin_at = n;
        }
        if margin < 0 {
            report.violations.push(n);
        }
        if (an as i64) < l {
            report.strict_failures.push((n, an, l));
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthReport {
    pub from: u64,
    pub to: u64,
    /// `min_{m in [n, to]} F_m` for each `n` in `from..=to`.
    pub suffix_min: Vec<u64>,
    /// `(n, F_n)` where `F_n` is lower than every earlier value in range.
    pub record_lows: Vec<(u64, u64)>,
    pub global_min: u64,
    pub global_min_at: Vec<u64>,
}

pub fn growth_report(from: u64, values: &[u64]) -> GrowthReport {
    let to = from + values.len() as u64 - 1;
    let mut suffix_min = values.to_vec();
    for i in (0..suffix_min.len().saturating_sub(1)).rev() {
        suffix_min[i] = suffix_min[i].min(suffix_min[i + 1]);
    }
    let mut record_lows = Vec::new();
    let mut best = u64::MAX;
    for (i, &v) in values.iter().enumerate() {
        if v < best {
            best = v;
            record_lows.push((from + i as u64, v));
        }
    }
    let global_min_at = values
        .iter()
        .enumerate()
        .filter(|&(_, &v)| v == best)
        .map(|(i, _)| from + i as u64)
        .collect();
    GrowthReport {
        from,
        to,
        suffix_min,
        record_lows,
        global_min: best,
        global_min_at,
    }
}

/// Suffix minima of `F_n` over `8..=max`. Evidence only.
pub fn scan_fn_growth(max: u64, threads: usize) -> Result<GrowthReport> {
    if max < 8 {
        return precondition("growth scan needs max >= 8");
    }
    let f = f_table(max, Generator::Descent, threads)?;
    Ok(growth_report(8, &f.values[8..]))
}
