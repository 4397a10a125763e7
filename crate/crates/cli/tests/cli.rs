use std::process::{Command, Output};

fn fixmat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fixmat"))
        .args(args)
        .output()
        .expect("run fixmat")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

const ROWS_0_TO_4: &str = "1\n0 1\n0 1 1\n0 1 0 1\n0 1 1 0 1\n";

#[test]
fn matrix_rows() {
    let o = fixmat(&["matrix", "--rows", "0"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "1\n");
    let o = fixmat(&["matrix", "--rows", "4"]);
    assert_eq!(stdout(&o), ROWS_0_TO_4);
    let last = stdout(&fixmat(&["matrix", "--rows", "17"]));
    assert_eq!(
        last.lines().last().unwrap(),
        "0 1 0 0 1 0 0 0 0 0 0 0 1 1 0 0 1 1"
    );
}

#[test]
fn matrix_methods_are_byte_identical() {
    let d = fixmat(&["matrix", "--rows", "17", "--method", "descent"]);
    let o = fixmat(&["matrix", "--rows", "17", "--method", "orbit"]);
    let s = fixmat(&["matrix", "--rows", "17", "--method", "step"]);
    assert_eq!(d.stdout, o.stdout);
    assert_eq!(d.stdout, s.stdout);
}

#[test]
fn matrix_steps() {
    let o = fixmat(&["matrix", "--rows", "35", "--show-steps"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.starts_with("0 0 0\n1 1 1\n"));
    assert!(text.lines().any(|l| l == "35 15 6"));
    assert!(text.lines().any(|l| l == "35 26 6"));
    let orbit = fixmat(&[
        "matrix",
        "--rows",
        "35",
        "--show-steps",
        "--method",
        "orbit",
    ]);
    assert_eq!(orbit.stdout, o.stdout);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(
        code(&fixmat(&[
            "matrix",
            "--rows",
            "5",
            "--method",
            "descent",
            "--show-steps"
        ])),
        2
    );
    assert_eq!(
        code(&fixmat(&["matrix", "--rows", "5", "--method", "nope"])),
        2
    );
    assert_eq!(code(&fixmat(&["matrix", "--bogus"])), 2);
    assert_eq!(code(&fixmat(&["seq", "a", "--max", "0"])), 2);
    assert_eq!(
        code(&fixmat(&["seq", "a", "--max", "5", "--method", "orbit"])),
        2
    );
    assert_eq!(code(&fixmat(&["seq", "b", "--max", "5"])), 2);
    assert_eq!(code(&fixmat(&["verify", "--suite", "nope"])), 2);
    assert_eq!(code(&fixmat(&["conjectures", "--max", "7"])), 2);
    assert_eq!(code(&fixmat(&["track", "x", "1"])), 2);
}

#[test]
fn seq_values() {
    let o = fixmat(&["seq", "F", "--max", "17"]);
    assert_eq!(code(&o), 0);
    let values: Vec<String> = stdout(&o)
        .lines()
        .map(|l| l.split(' ').nth(1).unwrap().to_string())
        .collect();
    assert_eq!(values.join(","), "1,1,2,2,3,3,4,2,6,5,4,4,6,5,8,6,6,6");
    let o = fixmat(&["seq", "a", "--max", "7", "--method", "divsum"]);
    assert_eq!(stdout(&o).lines().last().unwrap(), "7 2");
    let o = fixmat(&["seq", "a", "--max", "18007"]);
    assert_eq!(stdout(&o).lines().last().unwrap(), "18007 8");
}

#[test]
fn seq_cross_check() {
    let o = fixmat(&["seq", "a", "--max", "400", "--cross-check"]);
    assert_eq!(code(&o), 0);
    let o = fixmat(&[
        "seq",
        "F",
        "--max",
        "300",
        "--method",
        "orbit",
        "--cross-check",
    ]);
    assert_eq!(code(&o), 0);
}

#[test]
fn bfile_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b.txt");
    let o = fixmat(&["seq", "F", "--max", "50", "--bfile", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, stdout(&fixmat(&["seq", "F", "--max", "50"])));
    assert!(written.starts_with("0 1\n1 1\n2 2\n"));
    assert!(!written.contains('\r'));
}

#[test]
fn verify_pingpong_passes() {
    let o = fixmat(&["verify", "--suite", "pingpong", "--max", "500"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.lines().all(|l| l.starts_with("PASS\t")));
    assert_eq!(text.lines().next().unwrap().split('\t').count(), 4);
}

#[test]
fn verify_closedforms_passes() {
    let o = fixmat(&["verify", "--suite", "closedforms"]);
    assert_eq!(code(&o), 0);
}

/// Every check passes except `12F <= 10n - 13`, which is false at n = 8
/// (F_8 = 6); the run therefore exits 1.
#[test]
fn verify_all_reports_the_linear_bound() {
    let o = fixmat(&["verify", "--suite", "all", "--max", "2000"]);
    let text = stdout(&o);
    let failing: Vec<&str> = text.lines().filter(|l| l.starts_with("FAIL")).collect();
    assert_eq!(failing.len(), 1, "{text}");
    assert!(failing[0].starts_with("FAIL\t12F<=10n-13\t8..=2000\t"));
    assert!(failing[0].contains("first: n=8 lhs=72 rhs=67"));
    assert!(text.lines().any(|l| l.starts_with("PASS\t12F<=10n+11\t")));
    assert_eq!(code(&o), 1);
}

#[test]
fn verify_bounds_table() {
    let o = fixmat(&["verify", "--suite", "bounds", "--max", "17", "--table"]);
    let text = stdout(&o);
    assert!(text.lines().any(|l| l == "8\tF<=n\t6\t<=\t8\tok"));
    assert!(text.lines().any(|l| l == "17\tF>=3\t6\t>=\t3\tok"));
    assert!(text
        .lines()
        .any(|l| l == "8\t12F<=10n-13\t72\t<=\t67\tVIOLATED"));
    assert_eq!(code(&o), 1);
}

#[test]
fn conjectures_report() {
    let o = fixmat(&["conjectures", "--max", "100", "--steps", "8"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).lines().any(|l| l == "6 35 2"));
    let o = fixmat(&["conjectures", "--max", "8", "--steps", "3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("min_F\t6\tat n=[8]"));
}

#[test]
fn conjectures_near_miss() {
    let o = fixmat(&["conjectures", "--max", "18007", "--steps", "6"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o)
        .lines()
        .any(|l| l == "near-miss\tn=18007\ta_n=8\tfloor(ln n)=9"));
}

#[test]
fn track_cells() {
    let o = fixmat(&["track", "35", "15"]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        stdout(&o).lines().next().unwrap(),
        "track=(1,2,2,1) breadth=3 step=6"
    );
    let o = fixmat(&["track", "9", "9"]);
    assert_eq!(
        stdout(&o).lines().next().unwrap(),
        "track=(9) breadth=0 step=9"
    );
    let o = fixmat(&["track", "7", "3"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("F(7,3) = 0"));
}

#[test]
fn output_is_deterministic() {
    let a = fixmat(&[
        "conjectures",
        "--max",
        "500",
        "--steps",
        "10",
        "--threads",
        "4",
    ]);
    let b = fixmat(&["conjectures", "--max", "500", "--steps", "10"]);
    assert_eq!(a.stdout, b.stdout);
}
