//! Weak dominance drawings of directed acyclic graphs.
//!
//! Two topological sortings of a DAG give every vertex an `(x, y)` grid
//! position such that each path runs up and to the right. Incomparable pairs
//! that end up dominated anyway are falsely implied paths (fips). The crate
//! builds such drawings, minimizes their fips exactly and heuristically, and
//! ties the minimum to the linear extension diameter of the reachability
//! poset: `min fip = inc − led`.

mod bits;
pub mod dag;
pub mod drawing;
pub mod error;
pub mod linext;
pub mod solver;

pub use dag::{
    count_incomparable, gen_antichain, gen_chain, gen_crown, gen_grid, gen_random_dag,
    parse_edge_list, transitive_closure, Dag, Reachability,
};
pub use drawing::{
    count_fips, diagonal_drawing, emit_drawing, intersection_cardinality, is_dominance_drawing,
    make_drawing, topological_sort, DrawingFormat, TopoOrder, WeakDominanceDrawing,
};
pub use error::{Error, Result};
pub use linext::{
    build_linext_graph, count_extensions, distance, enumerate_extensions, graph_distance,
    ExtensionSet, LinExtGraph, DEFAULT_CAP,
};
pub use solver::{
    dimension_exact, dimension_report, led_exact, led_report, minfip_exact, minfip_heuristic,
    solve_exact, verify_bounds, BoundCheck, LedResult, Method, Realizer, SolveReport,
    DEFAULT_MAX_DIM,
};
