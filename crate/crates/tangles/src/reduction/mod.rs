//! Executable reduction from NAE 3-SAT to list feasibility: the normal-form
//! transformation, the gadget construction, and the assignment embedding.

pub mod embed;
pub mod formula;
pub mod gadgets;

pub use embed::{embed_assignment, EmbedError, LoopPlan, FALSE_LOOPS, TRUE_LOOPS};
pub use formula::{
    brute_force_nae, parse_nae, parse_positive_diff, to_positive_diff, write_nae,
    write_positive_diff, Assignment, DiffTrace, DimacsError, FormulaError, Lit, NaeFormula,
    NaeProblem, PositiveDiffFormula, MAX_BRUTE_FORCE_VARS,
};
pub use gadgets::{
    build_list, build_list_with, pair_multiplicity, GadgetMap, GadgetRole, ReductionInstance,
    VariablePairSwaps,
};
