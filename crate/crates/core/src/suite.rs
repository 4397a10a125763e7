//! Named verification suites producing one report line per check.

use std::fmt;
use std::str::FromStr;

use crate::arithmetic::{catalan_case_scan, DivisorSieve};
use crate::error::{precondition, Error, Result};
use crate::matrix::{methods_agree, Generator, MAX_SNAPSHOT_ROWS};
use crate::monoid::{
    certify_free_action, closed_form, gs_inverse_identity, verify_pingpong, ClosedFormKind,
};
use crate::sequences::{
    a_single, a_table, check_lower_bounds, check_upper_bounds, f_table, row_sum_f, theorem_scan,
    AMethod, BoundKind, BoundReport,
};
use crate::structure::{
    check_column_period, check_corollary_3t2, check_corollary_5t4, check_family_kdij,
    check_subdiagonal_period, count_track_patterns,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    All,
    Bounds,
    Periodicity,
    Patterns,
    Pingpong,
    Closedforms,
    Methods,
    Families,
    Catalan,
}

impl Suite {
    pub const EACH: [Suite; 8] = [
        Self::Bounds,
        Self::Periodicity,
        Self::Patterns,
        Self::Pingpong,
        Self::Closedforms,
        Self::Methods,
        Self::Families,
        Self::Catalan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::All => "all",
            Self::Bounds => "bounds",
            Self::Periodicity => "periodicity",
            Self::Patterns => "patterns",
            Self::Pingpong => "pingpong",
            Self::Closedforms => "closedforms",
            Self::Methods => "methods",
            Self::Families => "families",
            Self::Catalan => "catalan",
        }
    }

    /// Largest accepted `--max`.
    pub fn max_limit(self) -> u64 {
        match self {
            Self::Pingpong | Self::Patterns => 5_000,
            Self::Methods => MAX_SNAPSHOT_ROWS.min(20_000),
            Self::Periodicity => 100_000,
            _ => 1_000_000,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        std::iter::once(Self::All)
            .chain(Self::EACH)
            .find(|suite| suite.name() == s)
            .map_or_else(|| precondition(format!("unknown suite {s:?}")), Ok)
    }
}

/// One check: `STATUS<TAB>name<TAB>range<TAB>detail`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckLine {
    pub passed: bool,
    pub name: String,
    pub range: String,
    pub detail: String,
}

impl CheckLine {
    fn new(
        passed: bool,
        name: impl Into<String>,
        range: impl Into<String>,
        detail: impl Into<String>,
    ) -> Self {
        Self {
            passed,
            name: name.into(),
            range: range.into(),
            detail: detail.into(),
        }
    }
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status}\t{}\t{}\t{}",
            self.name, self.range, self.detail
        )
    }
}

pub fn all_passed(lines: &[CheckLine]) -> bool {
    lines.iter().all(|l| l.passed)
}

pub fn run_suite(suite: Suite, max: u64, threads: usize) -> Result<Vec<CheckLine>> {
    if suite != Suite::All && max > suite.max_limit() {
        return Err(Error::OutOfRange {
            value: max,
            limit: suite.max_limit(),
        });
    }
    match suite {
        Suite::All => {
            let mut out = Vec::new();
            for s in Suite::EACH {
                out.extend(run_suite(s, max.min(s.max_limit()), threads)?);
            }
            Ok(out)
        }
        Suite::Bounds => bounds(max, threads),
        Suite::Periodicity => periodicity(max),
        Suite::Patterns => patterns(max),
        Suite::Pingpong => pingpong(max),
        Suite::Closedforms => closedforms(),
        Suite::Methods => methods(max),
        Suite::Families => families(max),
        Suite::Catalan => catalan(),
    }
}

/// First row of the bounds range.
pub const BOUNDS_FROM: u64 = 8;

fn bounds(max: u64, threads: usize) -> Result<Vec<CheckLine>> {
    if max < BOUNDS_FROM {
        return precondition(format!("bounds suite needs --max >= {BOUNDS_FROM}"));
    }
    let report = theorem_scan(BOUNDS_FROM, max, threads)?;
    let range = format!("{BOUNDS_FROM}..={max}");
    Ok(report
        .tallies
        .iter()
        .map(|t| {
            let detail = match &t.first_violation {
                None => format!("checked={}", t.checked),
                Some(v) => format!(
                    "checked={} violations={} first: n={} lhs={} rhs={}",
                    t.checked, t.violations, v.n, v.lhs, v.rhs
                ),
            };
            CheckLine::new(t.holds(), t.kind.name(), range.clone(), detail)
        })
        .collect())
}

/// Every bound evaluated at each `n` in `from..=to`, for tabulation.
pub fn bound_table(from: u64, to: u64) -> Result<Vec<BoundReport>> {
    if from < 2 || to < from {
        return precondition("bound table needs 2 <= from <= to");
    }
    let sieve =
        DivisorSieve::new(u32::try_from(2 * to + 1).map_err(|_| Error::Overflow("sieve limit"))?);
    let mut out = Vec::new();
    for n in from..=to {
        out.extend(check_lower_bounds(n, &sieve)?);
        out.extend(check_upper_bounds(n, &sieve)?);
        if n > 7 {
            let f = row_sum_f(n) as i64;
            out.push(BoundReport {
                n,
                kind: BoundKind::FAtLeastThree,
                lhs: f,
                rhs: 3,
                satisfied: f >= 3,
            });
        }
    }
    Ok(out)
}

/// Largest index whose subdiagonal shows five full periods within `max` rows.
fn subdiagonal_reach(max: u64) -> Option<u64> {
    (0..=200u64).rev().find(|&a| a + 1 + 6 * (2 * a + 1) <= max)
}

fn periodicity(max: u64) -> Result<Vec<CheckLine>> {
    let mut out = Vec::new();
    match subdiagonal_reach(max) {
        None => out.push(CheckLine::new(
            false,
            "subdiagonal-period",
            format!("rows<={max}"),
            "too few rows",
        )),
        Some(top) => {
            let mut bad = Vec::new();
            for a in 0..=top {
                if !check_subdiagonal_period(a, max)?.holds() {
                    bad.push(a);
                }
            }
            out.push(CheckLine::new(
                bad.is_empty(),
                "subdiagonal-period-2a+1",
                format!("a<={top} rows<={max}"),
                format!("failing={bad:?}"),
            ));
        }
    }
    let top = (1..=200u64)
        .rev()
        .find(|&a| a + a.div_ceil(2) + 5 * a <= max);
    match top {
        None => out.push(CheckLine::new(
            false,
            "column-period",
            format!("rows<={max}"),
            "too few rows",
        )),
        Some(top) => {
            let mut bad = Vec::new();
            for a in 1..=top {
                if !check_column_period(a, max)?.holds() {
                    bad.push(a);
                }
            }
            out.push(CheckLine::new(
                bad.is_empty(),
                "column-period-a",
                format!("1<=a<={top} rows<={max}"),
                format!("failing={bad:?}"),
            ));
        }
    }
    Ok(out)
}

fn patterns(max: u64) -> Result<Vec<CheckLine>> {
    if max == 0 {
        return precondition("patterns suite needs --max >= 1");
    }
    let a = a_table(max);
    let mut first_bad = None;
    for n in 1..=max {
        let (a1b, one_a_one) = count_track_patterns(n)?;
        let want = a.get(n).expect("in range") - 1;
        if a1b != want || one_a_one != want {
            first_bad = Some((n, a1b, one_a_one, want));
            break;
        }
    }
    let detail = match first_bad {
        None => "count_a1b=count_1a1=a_n-1".to_string(),
        Some((n, x, y, w)) => format!("n={n} a1b={x} 1a1={y} expected={w}"),
    };
    Ok(vec![CheckLine::new(
        first_bad.is_none(),
        "track-patterns",
        format!("1..={max}"),
        detail,
    )])
}

fn pingpong(max: u64) -> Result<Vec<CheckLine>> {
    let bound = max.max(1) as i64;
    let pp = verify_pingpong(bound)?;
    let mut out = vec![CheckLine::new(
        pp.holds(),
        "pingpong",
        format!("[0,{bound}]^2"),
        format!(
            "points={} counterexamples={}",
            pp.points_in_regions,
            pp.counterexamples.len()
        ),
    )];
    let free = certify_free_action(bound)?;
    let total: u64 = f_table(max.max(1), Generator::Descent, 1)?.values[1..]
        .iter()
        .sum();
    out.push(CheckLine::new(
        free.is_free() && free.orbit_size == total,
        "free-action",
        format!("rows 1..={bound}"),
        format!(
            "orbit={} sum_F={} duplicates={}",
            free.orbit_size,
            total,
            free.duplicates.len()
        ),
    ));
    Ok(out)
}

fn closedforms() -> Result<Vec<CheckLine>> {
    let mut out = Vec::new();
    for kind in ClosedFormKind::ALL {
        let (lo, hi) = if kind == ClosedFormKind::SgPow {
            (1, 30)
        } else {
            (0, 60)
        };
        let mut bad = Vec::new();
        for i in lo..=hi {
            if closed_form(kind, i)? != kind.direct(i)? {
                bad.push(i);
            }
        }
        out.push(CheckLine::new(
            bad.is_empty(),
            format!("closed-form {kind}"),
            format!("i={lo}..={hi}"),
            format!("failing={bad:?}"),
        ));
    }
    out.push(CheckLine::new(
        gs_inverse_identity(),
        "(GS^-1)^4=I",
        "-",
        "-",
    ));
    Ok(out)
}

fn methods(max: u64) -> Result<Vec<CheckLine>> {
    let rep = methods_agree(max)?;
    let detail = match &rep.mismatch {
        None => format!("cells={}", rep.cells),
        Some(m) => m.to_string(),
    };
    let mut out = vec![CheckLine::new(
        rep.agree(),
        "generators-agree",
        format!("0..={max}"),
        detail,
    )];
    if max >= 1 {
        let sieve = DivisorSieve::new(
            u32::try_from(2 * max + 1).map_err(|_| Error::Overflow("sieve limit"))?,
        );
        let batch = a_table(max);
        let mut first_bad = None;
        'rows: for n in 1..=max {
            let want = batch.get(n).expect("in range");
            for m in AMethod::ALL {
                let got = a_single(n, m, &sieve)?;
                if got != want {
                    first_bad = Some(format!("n={n} {}={got} table={want}", m.provenance()));
                    break 'rows;
                }
            }
        }
        out.push(CheckLine::new(
            first_bad.is_none(),
            "a-methods-agree",
            format!("1..={max}"),
            first_bad.unwrap_or_else(|| "definition=diophantine=divsum".into()),
        ));
    }
    Ok(out)
}

fn families(max: u64) -> Result<Vec<CheckLine>> {
    let kdij = check_family_kdij(12, 12, 12, 12)?;
    let t = max.max(1);
    let mut out = vec![CheckLine::new(
        kdij.holds(),
        "family-kdij",
        "k,d,i,j<=12",
        format!("checked={} failures={}", kdij.checked, kdij.failures.len()),
    )];
    for (name, rep) in [
        ("family-(3t+2,2t+2)", check_corollary_3t2(t)),
        ("family-(5t+4,2t+2)", check_corollary_5t4(t)),
    ] {
        out.push(CheckLine::new(
            rep.holds(),
            name,
            format!("t<={t}"),
            format!("checked={} failures={}", rep.checked, rep.failures.len()),
        ));
    }
    Ok(out)
}

fn catalan() -> Result<Vec<CheckLine>> {
    let found = catalan_case_scan(64, 40)?;
    Ok(vec![CheckLine::new(
        found == [(3, 1)],
        "2^(q-1)-3^r=1",
        "q<=64 r<=40",
        format!("solutions={found:?}"),
    )])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in std::iter::once(Suite::All).chain(Suite::EACH) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn line_format() {
        let l = CheckLine::new(true, "x", "1..=2", "d");
        assert_eq!(l.to_string(), "PASS\tx\t1..=2\td");
    }

    #[test]
    fn small_suites_pass() {
        for s in [
            Suite::Periodicity,
            Suite::Patterns,
            Suite::Pingpong,
            Suite::Closedforms,
            Suite::Methods,
            Suite::Families,
            Suite::Catalan,
        ] {
            let lines = run_suite(s, 300, 1).unwrap();
            assert!(all_passed(&lines), "{s}: {lines:?}");
        }
    }

    #[test]
    fn bounds_suite_flags_only_the_linear_bound() {
        let lines = run_suite(Suite::Bounds, 300, 2).unwrap();
        let failing: Vec<_> = lines
            .iter()
            .filter(|l| !l.passed)
            .map(|l| l.name.as_str())
            .collect();
        assert_eq!(failing, vec![BoundKind::FUpperLinear.name()]);
        assert!(run_suite(Suite::Bounds, 7, 1).is_err());
    }

    #[test]
    fn bound_table_rows() {
        let t = bound_table(8, 17).unwrap();
        let bad: Vec<_> = t
            .iter()
            .filter(|r| !r.satisfied)
            .map(|r| (r.n, r.kind))
            .collect();
        assert_eq!(bad, vec![(8, BoundKind::FUpperLinear)]);
    }
}
