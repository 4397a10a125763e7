use fixmat_core::bfile::{parse_bfile, to_bfile_string};
use fixmat_core::matrix::descent_trace;
use fixmat_core::{
    a_table, f_table, is_fixed_cell, phi_step, track_vector, CellCoord, DescentOracle, Generator,
    LatticePoint,
};
use proptest::prelude::*;

#[test]
fn oracle_rows_sum_to_f() {
    let f = f_table(3000, Generator::Steps, 1).unwrap();
    let oracle = DescentOracle::new(1000);
    for n in 0..=3000 {
        assert_eq!(oracle.row(n).len() as u64, f.get(n).unwrap(), "n={n}");
    }
}

#[test]
fn f_dominates_a() {
    let f = f_table(5000, Generator::Descent, 4).unwrap();
    let a = a_table(5000);
    for n in 1..=5000 {
        assert!(f.get(n).unwrap() >= a.get(n).unwrap(), "n={n}");
    }
}

proptest! {
    #[test]
    fn track_word_rebuilds_cell(n in 1u64..100_000, pick in 0usize..10_000) {
        let oracle = DescentOracle::new(256);
        let row = oracle.row(n);
        let k = row[pick % row.len()];
        let t = track_vector(CellCoord::new(n, k)).unwrap();
        let p = t.word().apply(LatticePoint::new(1, 1)).unwrap();
        prop_assert_eq!(p, LatticePoint::new(n as i64, k as i64));
        prop_assert_eq!(t.breadth() as usize, descent_trace(CellCoord::new(n, k)).stages.len());
    }

    #[test]
    fn descent_preserves_membership(n in 2u64..100_000, k in 1u64..100_000) {
        prop_assume!(k < n);
        let prev = phi_step(CellCoord::new(n, k)).unwrap();
        prop_assert!(prev.n < n);
        prop_assert_eq!(is_fixed_cell(CellCoord::new(n, k)), is_fixed_cell(prev));
    }

    #[test]
    fn bfile_round_trips_every_table(max in 0u64..2_000, descent in any::<bool>()) {
        let g = if descent { Generator::Descent } else { Generator::Orbit };
        let t = f_table(max, g, 1).unwrap();
        let parsed = parse_bfile(&to_bfile_string(&t)).unwrap();
        prop_assert_eq!(parsed, t.iter().collect::<Vec<_>>());
    }
}
