use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fixmat_core::bfile::write_bfile;
use fixmat_core::matrix::descent_trace;
use fixmat_core::sequences::{
    a_table_with, growth_report, scan_conjecture_a, scan_fn_growth, GrowthReport,
};
use fixmat_core::structure::{
    creation_row_stats, odd_step_alignment, parity_claim, MAX_CREATION_STEP,
};
use fixmat_core::suite::{all_passed, bound_table, run_suite, Suite, BOUNDS_FROM};
use fixmat_core::{
    breadth3_table, f_table, track_vector, AMethod, CellCoord, Error, Generator, SequenceTable,
};

#[derive(Parser)]
#[command(
    name = "fixmat",
    version,
    about = "Generate and check the 0-1 matrix of gamma-fixed Dyck words"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print rows 0..=N of the matrix.
    Matrix {
        #[arg(long)]
        rows: u64,
        #[arg(long, default_value = "step")]
        method: Generator,
        /// Print `n k step` for every set cell instead of the rows.
        #[arg(long)]
        show_steps: bool,
    },
    /// Print `n value` lines for F_n or a_n.
    Seq {
        name: SeqArg,
        #[arg(long)]
        max: u64,
        /// step|orbit|descent for F, definition|diophantine|divsum for a.
        #[arg(long)]
        method: Option<String>,
        /// Write a b-file here instead of printing.
        #[arg(long)]
        bfile: Option<PathBuf>,
        /// Recompute with every other method and fail on disagreement.
        #[arg(long)]
        cross_check: bool,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Run verification suites; one `STATUS name range detail` line per check.
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 2000)]
        max: u64,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// With the bounds suite, also print every bound at every n.
        #[arg(long)]
        table: bool,
    },
    /// Evidence for the open growth questions. Never fails on the data.
    Conjectures {
        #[arg(long)]
        max: u64,
        /// Creation steps to enumerate for the r_i table.
        #[arg(long, default_value_t = 20)]
        steps: u32,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Track vector, breadth, creation step and descent trace of a cell.
    Track { n: u64, k: u64 },
}

#[derive(Clone, Copy, ValueEnum)]
enum SeqArg {
    #[value(name = "F")]
    F,
    #[value(name = "a")]
    A,
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Precondition(_) | Error::OutOfRange { .. } | Error::SnapshotTooLarge { .. } => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Check(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Check(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = match cli.command {
        Command::Matrix {
            rows,
            method,
            show_steps,
        } => matrix(&mut out, rows, method, show_steps),
        Command::Seq {
            name,
            max,
            method,
            bfile,
            cross_check,
            threads,
        } => seq(
            &mut out,
            name,
            max,
            method.as_deref(),
            bfile,
            cross_check,
            threads,
        ),
        Command::Verify {
            suite,
            max,
            threads,
            table,
        } => verify(&mut out, suite, max, threads, table),
        Command::Conjectures {
            max,
            steps,
            threads,
        } => conjectures(&mut out, max, steps, threads),
        Command::Track { n, k } => track(&mut out, n, k),
    };
    let flushed = out.flush();
    match (result, flushed) {
        (Ok(()), Ok(())) => ExitCode::SUCCESS,
        (Err(Failure::Usage(msg)), _) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        (Err(Failure::Check(msg)), _) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        (Ok(()), Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn matrix(out: &mut impl Write, rows: u64, method: Generator, show_steps: bool) -> Outcome {
    if show_steps && method == Generator::Descent {
        return Err(Failure::Usage(
            "--show-steps needs --method step or orbit; descent does not record creation steps"
                .into(),
        ));
    }
    let snap = method.generate(rows)?;
    if show_steps {
        out.write_all(snap.render_steps()?.as_bytes())?;
    } else {
        out.write_all(snap.render_rows().as_bytes())?;
    }
    Ok(())
}

fn seq(
    out: &mut impl Write,
    name: SeqArg,
    max: u64,
    method: Option<&str>,
    bfile: Option<PathBuf>,
    cross_check: bool,
    threads: usize,
) -> Outcome {
    let (table, others) = match name {
        SeqArg::F => {
            let g: Generator = method.unwrap_or("descent").parse()?;
            let table = f_table(max, g, threads)?;
            let mut others = Vec::new();
            if cross_check {
                for other in Generator::ALL.into_iter().filter(|&o| o != g) {
                    others.push(f_table(max, other, threads)?);
                }
            }
            (table, others)
        }
        SeqArg::A => {
            if max == 0 {
                return Err(Failure::Usage("a_n starts at n = 1; use --max >= 1".into()));
            }
            let m: AMethod = method.unwrap_or("divsum").parse()?;
            let table = a_table_with(max, m, threads)?;
            let mut others = Vec::new();
            if cross_check {
                for other in AMethod::ALL.into_iter().filter(|&o| o != m) {
                    others.push(a_table_with(max, other, threads)?);
                }
            }
            (table, others)
        }
    };
    for other in &others {
        if let Some((n, want)) = first_difference(&table, other) {
            return Err(Failure::Check(format!(
                "cross-check failed at n={n}: {}={} {}={want}",
                table.method,
                table.get(n).unwrap_or_default(),
                other.method
            )));
        }
    }
    match bfile {
        Some(path) => {
            let file = File::create(&path)?;
            write_bfile(BufWriter::new(file), &table)?;
        }
        None => write_bfile(out, &table)?,
    }
    Ok(())
}

fn first_difference(a: &SequenceTable, b: &SequenceTable) -> Option<(u64, u64)> {
    a.iter()
        .zip(b.iter())
        .find(|(x, y)| x != y)
        .map(|(_, (n, v))| (n, v))
}

fn verify(out: &mut impl Write, suite: Suite, max: u64, threads: usize, table: bool) -> Outcome {
    if table && suite == Suite::Bounds {
        if max < BOUNDS_FROM {
            return Err(Failure::Usage(format!(
                "bounds suite needs --max >= {BOUNDS_FROM}"
            )));
        }
        writeln!(out, "# n\tbound\tlhs\trel\trhs\tstatus")?;
        for row in bound_table(BOUNDS_FROM, max)? {
            writeln!(out, "{row}")?;
        }
    }
    let lines = run_suite(suite, max, threads)?;
    for line in &lines {
        writeln!(out, "{line}")?;
    }
    if all_passed(&lines) {
        Ok(())
    } else {
        let failed = lines.iter().filter(|l| !l.passed).count();
        Err(Failure::Check(format!("{failed} check(s) failed")))
    }
}

fn conjectures(out: &mut impl Write, max: u64, steps: u32, threads: usize) -> Outcome {
    if max < 8 {
        return Err(Failure::Usage("conjectures needs --max >= 8".into()));
    }
    if steps == 0 || steps > MAX_CREATION_STEP {
        return Err(Failure::Usage(format!(
            "--steps must be in 1..={MAX_CREATION_STEP}"
        )));
    }

    writeln!(out, "# F_n for 8 <= n <= {max}")?;
    write_growth(out, "F", &scan_fn_growth(max, threads)?)?;

    let a = scan_conjecture_a(max)?;
    writeln!(out, "# a_n against floor(ln n) - 1 for 2 <= n <= {max}")?;
    writeln!(
        out,
        "min_margin\t{}\tat n={}",
        a.min_margin, a.min_margin_at
    )?;
    writeln!(out, "violations\t{}", a.violations.len())?;
    for &n in a.violations.iter().take(20) {
        writeln!(out, "violation\tn={n}")?;
    }
    writeln!(out, "a_n<floor(ln n)\t{}", a.strict_failures.len())?;
    for &(n, an, l) in &a.strict_failures {
        writeln!(out, "near-miss\tn={n}\ta_n={an}\tfloor(ln n)={l}")?;
    }

    let c = breadth3_table(max, threads);
    writeln!(out, "# breadth-3 counts c_n for 8 <= n <= {max}")?;
    write_growth(out, "c", &growth_report(8, &c.values[7..]))?;

    let stats = creation_row_stats(steps)?;
    writeln!(out, "# creation rows: step\tr_i\tcells in row r_i")?;
    for s in &stats {
        writeln!(out, "{} {} {}", s.step, s.max_row, s.columns.len())?;
    }
    writeln!(out, "# odd steps: step\tr_i\tc((step+1)/2)\tagrees")?;
    for al in odd_step_alignment(&stats)? {
        writeln!(
            out,
            "{}\t{}\t{}\t{}",
            al.step,
            al.max_row,
            al.c_term,
            al.agrees()
        )?;
    }
    let parity = parity_claim(&stats);
    let held = parity.iter().filter(|(_, got, want)| got == want).count();
    writeln!(
        out,
        "# cells per r_i row, 2 on even and 1 on odd steps: {held}/{} steps",
        parity.len()
    )?;
    writeln!(out, "# even steps: step\tr_i")?;
    for s in stats.iter().filter(|s| s.step % 2 == 0) {
        writeln!(out, "{}\t{}", s.step, s.max_row)?;
    }
    Ok(())
}

fn write_growth(out: &mut impl Write, label: &str, g: &GrowthReport) -> io::Result<()> {
    writeln!(
        out,
        "min_{label}\t{}\tat n={:?}",
        g.global_min, g.global_min_at
    )?;
    for (n, v) in &g.record_lows {
        writeln!(out, "record_low\tn={n}\t{label}={v}")?;
    }
    let mut n = 8;
    while n <= g.to {
        writeln!(
            out,
            "suffix_min\tn>={n}\t{}",
            g.suffix_min[(n - g.from) as usize]
        )?;
        n *= 2;
    }
    Ok(())
}

fn track(out: &mut impl Write, n: u64, k: u64) -> Outcome {
    if n == 0 {
        if k == 0 {
            writeln!(
                out,
                "cell (0,0) is the seed, set at step 0; it has no track vector"
            )?;
            return Ok(());
        }
        return Err(Failure::Check(format!(
            "F({n},{k}) = 0: not a fixed-point cell"
        )));
    }
    let t = match track_vector(CellCoord::new(n, k)) {
        Ok(t) => t,
        Err(Error::ZeroCell { .. }) => {
            writeln!(out, "F({n},{k}) = 0")?;
            return Err(Failure::Check(format!(
                "F({n},{k}) = 0: not a fixed-point cell"
            )));
        }
        Err(e) => return Err(e.into()),
    };
    writeln!(out, "track={t} breadth={} step={}", t.breadth(), t.sum())?;
    writeln!(out, "word={}", t.word())?;
    writeln!(out, "# n\tk\th\ti")?;
    let trace = descent_trace(CellCoord::new(n, k));
    for s in &trace.stages {
        writeln!(out, "{}\t{}\t{}\t{}", s.n, s.k, s.h, s.exponent)?;
    }
    writeln!(out, "{}\t{}\t-\t-", trace.terminal.n, trace.terminal.k)?;
    Ok(())
}
