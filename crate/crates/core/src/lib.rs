//! Generators, sequences and theorem checks for the lower-triangular 0-1
//! matrix `F` whose nonzero cells are the orbit of `(1,1)` under the affine
//! maps `G: (x,y) -> (x+y, y)` and `S: (x,y) -> (3x-2y+1, 2x-y+1)`.
//!
//! `F_{n,k}` counts Dyck words of semilength `n` with principal prefix `k`
//! fixed by a certain bijection; `F_n` is the row sum.

pub mod arithmetic;
pub mod bfile;
pub mod bits;
pub mod error;
pub mod matrix;
pub mod monoid;
mod par;
pub mod sequences;
pub mod structure;
pub mod suite;

pub use arithmetic::{catalan_case_scan, DivisorSieve};
pub use error::{Error, Result};
pub use matrix::{
    generate_by_descent, generate_by_orbit, generate_by_steps, is_fixed_cell, methods_agree,
    phi_step, CellCoord, DescentOracle, Generator, MatrixSnapshot,
};
pub use monoid::{
    apply_g, apply_s, certify_free_action, classify_region, closed_form, gs_inverse_identity,
    verify_pingpong, ClosedFormKind, HomMatrix3, LatticePoint, Letter, RegionLabel, Word,
};
pub use par::map_range;
pub use sequences::{
    a_by_definition, a_by_diophantine, a_by_divisor_sum, a_table, f_table, row_sum_f, AMethod,
    BoundKind, BoundReport, SequenceTable,
};
pub use structure::{
    breadth, breadth3_table, count_breadth3, count_track_patterns, track_vector, TrackVector,
};
