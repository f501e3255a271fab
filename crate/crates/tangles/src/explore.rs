//! Systematic search for counterexamples to the conjecture that every
//! non-separable even list is feasible.
//!
//! The conjecture is open; this module only reports findings. A list that
//! comes back infeasible from the engine is re-verified with the naive
//! unpruned search before it is ever reported as a counterexample.

use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::formats::write_list;
use crate::list::{SwapList, WireId};
use crate::search::{self, naive, SearchOptions};

/// Outcome of one exploration run.
#[derive(Clone, Debug)]
pub struct ConjectureReport {
    pub wires: u16,
    pub max_mult: u32,
    pub tested: u64,
    pub feasible: u64,
    /// Lists the engine and the naive oracle both judged infeasible.
    pub counterexamples: Vec<SwapList>,
    /// Lists whose verdict is unknown because the node budget ran out.
    pub unknowns: Vec<SwapList>,
    pub elapsed: Duration,
}

impl ConjectureReport {
    /// The deterministic part of the report: everything except timing.
    pub fn canonical_text(&self) -> String {
        use std::fmt::Write as _;
        let mut out = String::new();
        writeln!(out, "conjecture-report").unwrap();
        writeln!(out, "wires {}", self.wires).unwrap();
        writeln!(out, "max-mult {}", self.max_mult).unwrap();
        writeln!(out, "tested {}", self.tested).unwrap();
        writeln!(out, "feasible {}", self.feasible).unwrap();
        writeln!(out, "counterexamples {}", self.counterexamples.len()).unwrap();
        writeln!(out, "unknowns {}", self.unknowns.len()).unwrap();
        for (index, list) in self.counterexamples.iter().enumerate() {
            writeln!(out, "counterexample {}", index + 1).unwrap();
            for line in write_list(list).lines() {
                writeln!(out, "  {line}").unwrap();
            }
        }
        for (index, list) in self.unknowns.iter().enumerate() {
            writeln!(out, "unknown {}", index + 1).unwrap();
            for line in write_list(list).lines() {
                writeln!(out, "  {line}").unwrap();
            }
        }
        out
    }
}

impl fmt::Display for ConjectureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical_text())?;
        writeln!(f, "# elapsed-ms {}", self.elapsed.as_millis())
    }
}

/// Visits every list on `wires` wires with all counts even and at most
/// `max_mult` that is non-separable, exactly once, in lexicographic order of
/// the count vectors; returns how many were visited.
pub fn enumerate_nonseparable_even(
    wires: u16,
    max_mult: u32,
    mut visitor: impl FnMut(&SwapList),
) -> u64 {
    debug_assert!(max_mult.is_multiple_of(2), "max multiplicity should be even");
    let pairs: Vec<(WireId, WireId)> = (1..=wires)
        .flat_map(|i| {
            ((i + 1)..=wires).map(move |j| {
                (
                    WireId::new(i, wires).unwrap(),
                    WireId::new(j, wires).unwrap(),
                )
            })
        })
        .collect();
    let mut counts = vec![0u32; pairs.len()];
    let mut visited = 0;
    loop {
        let mut list = SwapList::empty(wires).expect("wires >= 1");
        for (&(a, b), &c) in pairs.iter().zip(&counts) {
            list.set_count(a, b, c);
        }
        if list.classify().nonseparable {
            visited += 1;
            visitor(&list);
        }
        // odometer over even counts, most significant pair first
        let mut slot = counts.len();
        loop {
            if slot == 0 {
                return visited;
            }
            slot -= 1;
            if counts[slot] + 2 <= max_mult {
                counts[slot] += 2;
                break;
            }
            counts[slot] = 0;
        }
    }
}

/// Runs the feasibility engine over every non-separable even list in range.
///
/// Lists are decided in parallel; the report orders counterexamples and
/// unknowns by enumeration rank, so its content is deterministic. An engine
/// "infeasible" is cross-checked against the naive unpruned depth-first
/// search; disagreement would mean an engine bug and panics loudly.
pub fn test_conjecture(wires: u16, max_mult: u32, opts: &SearchOptions) -> ConjectureReport {
    let started = Instant::now();
    let mut lists = Vec::new();
    enumerate_nonseparable_even(wires, max_mult, |list| lists.push(list.clone()));
    let verdicts: Vec<Option<bool>> = lists
        .par_iter()
        .map(|list| match search::decide_feasible(list, opts) {
            Ok(result) => Some(result.is_feasible()),
            Err(search::SearchError::BudgetExhausted { .. }) => None,
        })
        .collect();
    let mut report = ConjectureReport {
        wires,
        max_mult,
        tested: lists.len() as u64,
        feasible: 0,
        counterexamples: Vec::new(),
        unknowns: Vec::new(),
        elapsed: Duration::ZERO,
    };
    for (list, verdict) in lists.into_iter().zip(verdicts) {
        match verdict {
            Some(true) => report.feasible += 1,
            Some(false) => {
                let confirmed = !naive::feasible(&list)
                    && !search::decide_feasible(
                        &list,
                        &SearchOptions {
                            prune: false,
                            node_budget: None,
                            ..*opts
                        },
                    )
                    .expect("no budget configured")
                    .is_feasible();
                assert!(
                    confirmed,
                    "engine and oracle disagree on {:?}",
                    write_list(&list)
                );
                report.counterexamples.push(list);
            }
            None => report.unknowns.push(list),
        }
    }
    debug_assert_eq!(
        report.tested,
        report.feasible + report.counterexamples.len() as u64 + report.unknowns.len() as u64
    );
    report.elapsed = started.elapsed();
    report
}
