//! Tangles realize multisets of swaps: given n wires hanging in a fixed
//! initial order and a count per unordered wire pair, a tangle is a sequence
//! of layers whose consecutive orders differ by disjoint adjacent swaps, and
//! it realizes the list when every pair swaps exactly its prescribed number
//! of times.
//!
//! This crate decides whether a list is realizable at all (with a verified
//! witness either way the answer can be checked), finds realizations of
//! provably minimum height, enumerates all realizations of small lists,
//! realizes simple lists near-optimally by odd-even transposition sort,
//! builds the swap-list gadgets that encode Positive NAE 3-SAT Diff
//! formulas, explores the open question whether every non-separable even
//! list is feasible, and renders tangles as text or SVG.
//!
//! The `tangles` binary in the companion CLI crate exposes all of this on
//! the command line; the file formats live in [`formats`].

pub mod explore;
pub mod formats;
pub mod list;
pub mod ln;
pub mod render;
pub mod search;
pub mod simple;
pub mod tangle;

pub mod reduction;

pub use list::{CyclicOrderError, ListClasses, ListError, SwapList, WireId};
pub use ln::{gen_ln, ln_realization};
pub use search::{
    check_unique_swap_order, decide_feasible, enumerate_realizations, minimize_height,
    Feasibility, FeasibilityResult, MoveMode, SearchError, SearchOptions, SearchStats,
    SwapOrderReport, DEFAULT_NODE_BUDGET,
};
pub use simple::{odd_even_realize, target_permutation, SimpleError, SimpleListTarget};
pub use tangle::{
    apply_move, move_between, verify_realizes, Layer, Move, Tangle, TangleError, Verdict,
    VerifyError, Violation,
};
