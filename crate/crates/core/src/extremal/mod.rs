//! Minimization of `F(x) = Σx³ − (3 − 2β)Σx² + 2N(1 − β)` over
//! `{Σx = N, x_i + x_j >= −2(β − 1)}`: closed-form critical families, grid
//! scans of the boundary families, and a multistart descent oracle.

mod critical;
mod descent;
mod enumerate;
mod feasible;

pub use critical::{
    boundary_critical, boundary_gap, boundary_is_feasible, boundary_k0_value, boundary_profile,
    boundary_profile_constant, boundary_profile_direct, boundary_roots, boundary_slope,
    boundary_slope_bound, boundary_value, interior_critical, interior_roots, interior_value,
    CriticalKind, CriticalPoint,
};
pub use descent::{descend, multistart_descent, repair, DescentOptions, DescentOutcome, RestartResult};
pub use enumerate::{
    a_grid, critical_table, enumerate_minimum, ordering_chain, ChainReport, EnumerationOptions,
    ExtremalReport, TableEntry,
};
pub use feasible::{big_f, min_pair, FeasibleSet, PAIR_TOL, SUM_TOL};
