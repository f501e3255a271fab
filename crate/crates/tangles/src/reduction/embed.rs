//! Embedding a satisfying assignment into the loop structure of a reduction
//! instance.
//!
//! A realizing tangle has four lambda'-lambda loops; the first two are
//! true-loops, the last two false-loops. A variable wire works inside the
//! loops of its side only, and the three variable wires of a clause must
//! meet the clause wire in three different loops, which is possible exactly
//! when the assignment leaves no clause monochromatic. Within one loop the
//! clause arms visited by a variable wire must be consecutive: only eight
//! swaps are reserved per pair of variable wires, two per loop, which rules
//! out interleaving visit patterns.

use thiserror::Error;

use crate::reduction::formula::{Assignment, NaeProblem, PositiveDiffFormula};

pub const TRUE_LOOPS: [u8; 2] = [1, 2];
pub const FALSE_LOOPS: [u8; 2] = [3, 4];

/// A consistent placement of every clause-variable meeting into a loop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopPlan {
    /// Truth value per variable; true-side variables use loops 1 and 2.
    pub sides: Vec<bool>,
    /// Per clause, the loop (1..=4) in which its k-th variable meets it.
    pub clause_loops: Vec<[u8; 3]>,
    /// Per loop, the clauses with a visited arm, in an order that keeps
    /// every variable's visits consecutive.
    pub arm_orders: [Vec<u32>; 4],
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EmbedError {
    #[error("assignment is not NAE: clause {clause} is monochromatic")]
    NotNae { clause: usize },
    #[error("no consecutive arm order exists in loop {looop}")]
    ArmInterleaving { looop: u8 },
}

/// Plans the loops for an NAE assignment of `formula`.
///
/// Greedy placement: within each clause, true variables take the first free
/// true-loop, false variables the first free false-loop; an NAE assignment
/// puts at most two variables on a side, so distinct loops always exist.
/// The arm order of each loop is then searched for one that keeps each
/// variable's arms consecutive; the lexicographically smallest such order is
/// reported.
pub fn embed_assignment(
    formula: &PositiveDiffFormula,
    assignment: &Assignment,
) -> Result<LoopPlan, EmbedError> {
    if let Some(index) = formula.monochromatic_clause(assignment) {
        return Err(EmbedError::NotNae { clause: index + 1 });
    }
    let sides: Vec<bool> = (1..=formula.vars()).map(|v| assignment.get(v)).collect();
    let mut clause_loops = Vec::with_capacity(formula.clauses().len());
    for clause in formula.clauses() {
        let mut next_true = 0;
        let mut next_false = 0;
        let mut loops = [0u8; 3];
        for (slot, &var) in loops.iter_mut().zip(clause) {
            if assignment.get(var) {
                *slot = TRUE_LOOPS[next_true];
                next_true += 1;
            } else {
                *slot = FALSE_LOOPS[next_false];
                next_false += 1;
            }
        }
        clause_loops.push(loops);
    }

    let mut arm_orders: [Vec<u32>; 4] = Default::default();
    for looop in 1..=4u8 {
        // visits[clause] = variables whose wire enters this clause's arm here
        let mut visited: Vec<u32> = Vec::new();
        let mut visits: Vec<(u32, Vec<u32>)> = Vec::new();
        for (index, (clause, loops)) in formula.clauses().iter().zip(&clause_loops).enumerate() {
            let members: Vec<u32> = clause
                .iter()
                .zip(loops)
                .filter(|&(_, &l)| l == looop)
                .map(|(&var, _)| var)
                .collect();
            if !members.is_empty() {
                let id = index as u32 + 1;
                visited.push(id);
                visits.push((id, members));
            }
        }
        arm_orders[looop as usize - 1] = consecutive_order(&visited, &visits)
            .ok_or(EmbedError::ArmInterleaving { looop })?;
    }

    Ok(LoopPlan {
        sides,
        clause_loops,
        arm_orders,
    })
}

/// Searches for an order of `clauses` in which, for every variable, the set
/// of clauses it visits forms a consecutive block. Returns the
/// lexicographically smallest solution, or `None` when every order leaves
/// some variable's visits interleaved with another's.
fn consecutive_order(clauses: &[u32], visits: &[(u32, Vec<u32>)]) -> Option<Vec<u32>> {
    // variable -> how many of its clauses are placed, and whether its block
    // has been interrupted
    struct Search<'a> {
        clauses: &'a [u32],
        sets: Vec<(u32, &'a [u32])>, // (variable, clauses it visits)
        order: Vec<u32>,
        used: Vec<bool>,
    }

    impl Search<'_> {
        fn consistent(&self) -> bool {
            for &(_, set) in &self.sets {
                if set.len() < 2 {
                    continue;
                }
                let positions: Vec<usize> = self
                    .order
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| set.contains(c))
                    .map(|(i, _)| i)
                    .collect();
                if positions.is_empty() {
                    continue;
                }
                let span = positions.last().unwrap() - positions[0] + 1;
                let complete = positions.len() == set.len();
                // a started block must stay gap-free; an unfinished block
                // must still end at the frontier
                if complete {
                    if span != set.len() {
                        return false;
                    }
                } else if *positions.last().unwrap() != self.order.len() - 1
                    || span != positions.len()
                {
                    return false;
                }
            }
            true
        }

        fn extend(&mut self) -> bool {
            if self.order.len() == self.clauses.len() {
                return true;
            }
            for (i, &clause) in self.clauses.iter().enumerate() {
                if self.used[i] {
                    continue;
                }
                self.used[i] = true;
                self.order.push(clause);
                if self.consistent() && self.extend() {
                    return true;
                }
                self.order.pop();
                self.used[i] = false;
            }
            false
        }
    }

    // Group the visit lists per variable.
    let mut per_var: Vec<(u32, Vec<u32>)> = Vec::new();
    for (clause, members) in visits {
        for &var in members {
            match per_var.iter_mut().find(|(v, _)| *v == var) {
                Some((_, list)) => list.push(*clause),
                None => per_var.push((var, vec![*clause])),
            }
        }
    }
    let mut search = Search {
        clauses,
        sets: per_var.iter().map(|(v, list)| (*v, list.as_slice())).collect(),
        order: Vec::with_capacity(clauses.len()),
        used: vec![false; clauses.len()],
    };
    search.extend().then_some(search.order)
}
