//! Exact search over tangle states: feasibility, minimum height, exhaustive
//! enumeration, and swap-order analysis.
//!
//! A search state is the pair (current layer, remaining counts). Every move
//! consumes at least one remaining swap, so the state graph is a directed
//! acyclic graph whose depth is bounded by the total multiplicity, and
//! exhausting it is a complete decision procedure. States are memoized by
//! their canonical encoding; feasibility from a state depends only on the
//! state, never on the path that reached it.
//!
//! The optional prune discards states whose parity tournament (relative
//! order in the current layer toggled by the parity of the remaining count)
//! is cyclic. That is a sound necessary condition: it can never flip a
//! verdict, only reduce the number of expanded nodes.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use rustc_hash::FxHashMap;
use thiserror::Error;

use crate::list::SwapList;
use crate::tangle::{verify_realizes, Layer, Move, Tangle};

/// Default node budget for the feasibility and height searches.
pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;

/// How successor moves are generated.
///
/// `Serial` restricts moves to a single swap each; any parallel move can be
/// serialized, so the feasibility verdict is unchanged while the branching
/// factor shrinks. Height minimization and enumeration always work with full
/// parallel moves.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoveMode {
    Serial,
    Parallel,
}

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub move_mode: MoveMode,
    /// Enable the parity-tournament prune.
    pub prune: bool,
    /// Node budget; `None` searches without limit.
    pub node_budget: Option<u64>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            move_mode: MoveMode::Serial,
            prune: true,
            node_budget: Some(DEFAULT_NODE_BUDGET),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Feasibility {
    Feasible,
    Infeasible,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SearchStats {
    pub nodes_expanded: u64,
    pub states_memoized: u64,
    pub elapsed: Duration,
}

/// Verdict plus witness. The witness is present exactly for feasible lists
/// and always verifies against the searched list.
#[derive(Clone, Debug)]
pub struct FeasibilityResult {
    pub status: Feasibility,
    pub witness: Option<Tangle>,
    pub stats: SearchStats,
}

impl FeasibilityResult {
    pub fn is_feasible(&self) -> bool {
        self.status == Feasibility::Feasible
    }
}

#[derive(Debug, Error)]
pub enum SearchError {
    /// The node budget ran out; the verdict is unknown, which is distinct
    /// from infeasible.
    #[error("node budget exhausted after {} nodes", stats.nodes_expanded)]
    BudgetExhausted { stats: SearchStats },
}

#[derive(Debug, Error)]
pub enum EnumerateError {
    #[error("realization limit reached after {visited} tangles")]
    LimitReached { visited: u64 },
}

#[derive(Debug, Error)]
pub enum UniqueOrderError {
    #[error("list admits no realization")]
    InfeasibleList,
    #[error("realization limit reached after {visited} tangles")]
    LimitReached { visited: u64 },
}

/// Per-wire swap order across all realizations of a list.
#[derive(Clone, Debug)]
pub struct SwapOrderReport {
    /// True when all realizations share the same order of swaps along every wire.
    pub unique: bool,
    pub distinct_signatures: usize,
    pub realizations: u64,
}

struct Exhausted;

/// Triangular slot of the unordered pair {a, b} of 1-based wire ids.
#[inline]
fn slot(n: usize, a: u16, b: u16) -> usize {
    let (i, j) = if a < b {
        (a as usize - 1, b as usize - 1)
    } else {
        (b as usize - 1, a as usize - 1)
    };
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

fn remaining_counts(list: &SwapList) -> Vec<u32> {
    let n = list.wires() as usize;
    let mut counts = vec![0u32; n * (n - 1) / 2];
    for (a, b, c) in list.nonzero_pairs() {
        counts[slot(n, a.get(), b.get())] = c;
    }
    counts
}

enum Ordering {
    /// Canonical order: moves compared lexicographically by their position
    /// sequences. Pinned for enumeration and witness tie-breaking.
    Lex,
    /// Swaps of pairs with the highest remaining count first; faster at
    /// finding witnesses. Serial moves only.
    GreedyRemaining,
}

struct Engine {
    n: usize,
    prune: bool,
    move_mode: MoveMode,
    ordering: Ordering,
    node_budget: Option<u64>,
    memo: FxHashMap<Box<[u32]>, bool>,
    nodes: u64,
    key_buf: Vec<u32>,
    // parity-prune scratch
    pos: Vec<usize>,
    score: Vec<usize>,
    order: Vec<usize>,
}

impl Engine {
    fn new(n: usize, opts: &SearchOptions, ordering: Ordering) -> Self {
        Engine {
            n,
            prune: opts.prune,
            move_mode: opts.move_mode,
            ordering,
            node_budget: opts.node_budget,
            memo: FxHashMap::default(),
            nodes: 0,
            key_buf: Vec::new(),
            pos: vec![0; n],
            score: vec![0; n],
            order: vec![0; n],
        }
    }

    fn charge_node(&mut self) -> Result<(), Exhausted> {
        self.nodes += 1;
        match self.node_budget {
            Some(limit) if self.nodes > limit => Err(Exhausted),
            _ => Ok(()),
        }
    }

    fn build_key(&mut self, layer: &[u16], rem: &[u32]) {
        self.key_buf.clear();
        self.key_buf.extend(layer.iter().map(|&w| w as u32));
        self.key_buf.extend_from_slice(rem);
    }

    /// True when the parity tournament relative to `layer` is cyclic, i.e.
    /// no final order is compatible with the remaining counts.
    fn parity_cyclic(&mut self, layer: &[u16], rem: &[u32]) -> bool {
        let n = self.n;
        for (p, &w) in layer.iter().enumerate() {
            self.pos[w as usize - 1] = p;
        }
        // beats(u, v): wire u+1 must end left of wire v+1
        macro_rules! beats {
            ($u:expr, $v:expr) => {{
                let (u, v) = ($u, $v);
                let odd = rem[slot(n, u as u16 + 1, v as u16 + 1)] % 2 == 1;
                (self.pos[u] < self.pos[v]) != odd
            }};
        }
        for u in 0..n {
            self.score[u] = 0;
        }
        for u in 0..n {
            for v in (u + 1)..n {
                if beats!(u, v) {
                    self.score[u] += 1;
                } else {
                    self.score[v] += 1;
                }
            }
        }
        for (i, o) in self.order.iter_mut().enumerate() {
            *o = i;
        }
        let score = &self.score;
        self.order.sort_unstable_by(|&a, &b| score[b].cmp(&score[a]));
        for x in 0..n {
            for y in (x + 1)..n {
                if !beats!(self.order[x], self.order[y]) {
                    return true;
                }
            }
        }
        false
    }

    /// Positions whose pair still has remaining swaps, ascending.
    fn eligible_positions(&self, layer: &[u16], rem: &[u32]) -> Vec<u16> {
        (1..self.n)
            .filter(|&p| rem[slot(self.n, layer[p - 1], layer[p])] > 0)
            .map(|p| p as u16)
            .collect()
    }

    /// Successor moves in the engine's deterministic order.
    fn successor_moves(&self, layer: &[u16], rem: &[u32]) -> Vec<Vec<u16>> {
        let eligible = self.eligible_positions(layer, rem);
        match self.move_mode {
            MoveMode::Serial => {
                let mut singles: Vec<Vec<u16>> = eligible.iter().map(|&p| vec![p]).collect();
                if let Ordering::GreedyRemaining = self.ordering {
                    singles.sort_by_key(|m| {
                        let p = m[0] as usize;
                        let r = rem[slot(self.n, layer[p - 1], layer[p])];
                        (std::cmp::Reverse(r), m[0])
                    });
                }
                singles
            }
            MoveMode::Parallel => {
                let mut out = Vec::new();
                let mut current = Vec::new();
                push_subsets(&eligible, 0, &mut current, &mut out);
                out
            }
        }
    }

    fn apply(&self, layer: &mut [u16], rem: &mut [u32], positions: &[u16]) -> u64 {
        let mut consumed = 0;
        for &p in positions {
            let p = p as usize;
            rem[slot(self.n, layer[p - 1], layer[p])] -= 1;
            layer.swap(p - 1, p);
            consumed += 1;
        }
        consumed
    }

    fn undo(&self, layer: &mut [u16], rem: &mut [u32], positions: &[u16]) {
        for &p in positions {
            let p = p as usize;
            layer.swap(p - 1, p);
            rem[slot(self.n, layer[p - 1], layer[p])] += 1;
        }
    }

    /// Memoized: can the remaining counts be consumed from this layer?
    fn feasible(
        &mut self,
        layer: &mut Vec<u16>,
        rem: &mut Vec<u32>,
        total: u64,
    ) -> Result<bool, Exhausted> {
        if total == 0 {
            return Ok(true);
        }
        if self.prune && self.parity_cyclic(layer, rem) {
            return Ok(false);
        }
        self.build_key(layer, rem);
        if let Some(&known) = self.memo.get(self.key_buf.as_slice()) {
            return Ok(known);
        }
        self.charge_node()?;
        let mut outcome = false;
        for positions in self.successor_moves(layer, rem) {
            let consumed = self.apply(layer, rem, &positions);
            let sub = self.feasible(layer, rem, total - consumed);
            self.undo(layer, rem, &positions);
            if sub? {
                outcome = true;
                break;
            }
        }
        self.build_key(layer, rem);
        self.memo
            .insert(self.key_buf.clone().into_boxed_slice(), outcome);
        Ok(outcome)
    }

    /// Rebuilds one realization by walking feasible successors in order.
    fn witness_moves(
        &mut self,
        layer: &mut Vec<u16>,
        rem: &mut Vec<u32>,
        mut total: u64,
    ) -> Result<Vec<Move>, Exhausted> {
        let mut moves = Vec::new();
        'outer: while total > 0 {
            for positions in self.successor_moves(layer, rem) {
                let consumed = self.apply(layer, rem, &positions);
                if self.feasible(layer, rem, total - consumed)? {
                    total -= consumed;
                    moves.push(Move::new(positions).expect("valid by construction"));
                    continue 'outer;
                }
                self.undo(layer, rem, &positions);
            }
            unreachable!("feasible state must have a feasible successor");
        }
        Ok(moves)
    }

    fn stats(&self, started: Instant) -> SearchStats {
        SearchStats {
            nodes_expanded: self.nodes,
            states_memoized: self.memo.len() as u64,
            elapsed: started.elapsed(),
        }
    }
}

/// Emits all non-empty sets of pairwise disjoint positions, in lexicographic
/// order of the position sequences.
fn push_subsets(eligible: &[u16], from: usize, current: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
    for k in from..eligible.len() {
        let p = eligible[k];
        if let Some(&last) = current.last() {
            if p - last < 2 {
                continue;
            }
        }
        current.push(p);
        out.push(current.clone());
        push_subsets(eligible, k + 1, current, out);
        current.pop();
    }
}

fn identity_layer_ids(n: usize) -> Vec<u16> {
    (1..=n as u16).collect()
}

/// Decides whether any tangle realizes `list`.
///
/// Feasible results carry a verified witness. Exhausting the finite state
/// space proves infeasibility; running out of budget returns an error rather
/// than a wrong verdict.
pub fn decide_feasible(
    list: &SwapList,
    opts: &SearchOptions,
) -> Result<FeasibilityResult, SearchError> {
    let started = Instant::now();
    let n = list.wires() as usize;
    let ordering = match opts.move_mode {
        MoveMode::Serial => Ordering::GreedyRemaining,
        MoveMode::Parallel => Ordering::Lex,
    };
    let mut engine = Engine::new(n, opts, ordering);
    let mut layer = identity_layer_ids(n);
    let mut rem = remaining_counts(list);
    let total = list.total();
    let feasible = engine
        .feasible(&mut layer, &mut rem, total)
        .map_err(|_| SearchError::BudgetExhausted {
            stats: engine.stats(started),
        })?;
    if !feasible {
        return Ok(FeasibilityResult {
            status: Feasibility::Infeasible,
            witness: None,
            stats: engine.stats(started),
        });
    }
    let moves = engine
        .witness_moves(&mut layer, &mut rem, total)
        .map_err(|_| SearchError::BudgetExhausted {
            stats: engine.stats(started),
        })?;
    let witness = Tangle::new(Layer::identity(list.wires()), moves).expect("witness moves valid");
    debug_assert!(verify_realizes(&witness, list).unwrap().ok());
    Ok(FeasibilityResult {
        status: Feasibility::Feasible,
        witness: Some(witness),
        stats: engine.stats(started),
    })
}

/// Least number of moves conceivably sufficient for `rem`.
///
/// Admissible: a wire joins at most one swap per move, and a move holds at
/// most floor(n / 2) swaps.
fn moves_lower_bound(n: usize, rem: &[u32], total: u64) -> u64 {
    if total == 0 {
        return 0;
    }
    let mut load = vec![0u64; n];
    let mut idx = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            let c = rem[idx] as u64;
            load[i] += c;
            load[j] += c;
            idx += 1;
        }
    }
    let per_wire = load.iter().copied().max().unwrap_or(0);
    let capacity = (n / 2) as u64;
    per_wire.max(total.div_ceil(capacity.max(1)))
}

/// Finds a realization with provably minimum height via iterative deepening
/// on the move count, seeded at the combinatorial lower bound.
///
/// Among all minimum-height realizations the witness is the one with the
/// lexicographically smallest move sequence. Always searches with parallel
/// moves regardless of `opts.move_mode`.
pub fn minimize_height(
    list: &SwapList,
    opts: &SearchOptions,
) -> Result<FeasibilityResult, SearchError> {
    struct Deepening {
        engine: Engine,
        fail_depth: FxHashMap<Box<[u32]>, u64>,
    }

    impl Deepening {
        fn bounded(
            &mut self,
            layer: &mut Vec<u16>,
            rem: &mut Vec<u32>,
            total: u64,
            depth: u64,
            path: &mut Vec<Move>,
        ) -> Result<bool, Exhausted> {
            if total == 0 {
                return Ok(true);
            }
            if moves_lower_bound(self.engine.n, rem, total) > depth {
                return Ok(false);
            }
            if self.engine.prune && self.engine.parity_cyclic(layer, rem) {
                return Ok(false);
            }
            self.engine.build_key(layer, rem);
            if let Some(&failed) = self.fail_depth.get(self.engine.key_buf.as_slice()) {
                if failed >= depth {
                    return Ok(false);
                }
            }
            self.engine.charge_node()?;
            for positions in self.engine.successor_moves(layer, rem) {
                let consumed = self.engine.apply(layer, rem, &positions);
                let found = self.bounded(layer, rem, total - consumed, depth - 1, path);
                match found {
                    Ok(true) => {
                        path.push(Move::new(positions).expect("valid by construction"));
                        return Ok(true);
                    }
                    Ok(false) => self.engine.undo(layer, rem, &positions),
                    Err(e) => {
                        self.engine.undo(layer, rem, &positions);
                        return Err(e);
                    }
                }
            }
            self.engine.build_key(layer, rem);
            let entry = self
                .fail_depth
                .entry(self.engine.key_buf.clone().into_boxed_slice())
                .or_insert(0);
            *entry = (*entry).max(depth);
            Ok(false)
        }
    }

    let started = Instant::now();
    let n = list.wires() as usize;
    let opts = SearchOptions {
        move_mode: MoveMode::Parallel,
        ..*opts
    };
    let mut search = Deepening {
        engine: Engine::new(n, &opts, Ordering::Lex),
        fail_depth: FxHashMap::default(),
    };
    let total = list.total();
    let mut layer = identity_layer_ids(n);
    let mut rem = remaining_counts(list);
    let stats = |search: &Deepening, started| SearchStats {
        states_memoized: search.fail_depth.len() as u64,
        ..search.engine.stats(started)
    };
    for depth in moves_lower_bound(n, &rem, total)..=total {
        let mut path = Vec::new();
        let found = search
            .bounded(&mut layer, &mut rem, total, depth, &mut path)
            .map_err(|_| SearchError::BudgetExhausted {
                stats: stats(&search, started),
            })?;
        if found {
            path.reverse();
            let witness =
                Tangle::new(Layer::identity(list.wires()), path).expect("witness moves valid");
            debug_assert!(verify_realizes(&witness, list).unwrap().ok());
            debug_assert_eq!(witness.height() as u64, depth + 1);
            return Ok(FeasibilityResult {
                status: Feasibility::Feasible,
                witness: Some(witness),
                stats: stats(&search, started),
            });
        }
    }
    Ok(FeasibilityResult {
        status: Feasibility::Infeasible,
        witness: None,
        stats: stats(&search, started),
    })
}

/// Visits every realizing tangle exactly once, in lexicographic order of the
/// encoded move sequences, and returns how many were visited.
///
/// The walk only descends into states that can still complete (checked with
/// the memoized feasibility search), so the cost is proportional to the
/// realizations themselves. Intended for lists whose total multiplicity the
/// caller judged small enough to exhaust.
pub fn enumerate_realizations(
    list: &SwapList,
    mut visitor: impl FnMut(&Tangle),
    limit: Option<u64>,
) -> Result<u64, EnumerateError> {
    struct Walk<'v> {
        engine: Engine,
        wires: u16,
        visited: u64,
        limit: Option<u64>,
        visitor: &'v mut dyn FnMut(&Tangle),
    }

    impl Walk<'_> {
        fn go(
            &mut self,
            layer: &mut Vec<u16>,
            rem: &mut Vec<u32>,
            total: u64,
            path: &mut Vec<Move>,
        ) -> Result<(), EnumerateError> {
            if total == 0 {
                if self.limit.is_some_and(|lim| self.visited >= lim) {
                    return Err(EnumerateError::LimitReached {
                        visited: self.visited,
                    });
                }
                self.visited += 1;
                let tangle = Tangle::new(Layer::identity(self.wires), path.clone())
                    .expect("valid by construction");
                (self.visitor)(&tangle);
                return Ok(());
            }
            for positions in self.engine.successor_moves(layer, rem) {
                let consumed = self.engine.apply(layer, rem, &positions);
                let viable = self
                    .engine
                    .feasible(layer, rem, total - consumed)
                    .unwrap_or_else(|_| unreachable!("no budget configured"));
                if viable {
                    path.push(Move::new(positions.clone()).expect("valid by construction"));
                    let result = self.go(layer, rem, total - consumed, path);
                    path.pop();
                    self.engine.undo(layer, rem, &positions);
                    result?;
                } else {
                    self.engine.undo(layer, rem, &positions);
                }
            }
            Ok(())
        }
    }

    let n = list.wires() as usize;
    let opts = SearchOptions {
        move_mode: MoveMode::Parallel,
        prune: true,
        node_budget: None,
    };
    let mut walk = Walk {
        engine: Engine::new(n, &opts, Ordering::Lex),
        wires: list.wires(),
        visited: 0,
        limit,
        visitor: &mut visitor,
    };
    let mut layer = identity_layer_ids(n);
    let mut rem = remaining_counts(list);
    let total = list.total();
    let root_viable = walk
        .engine
        .feasible(&mut layer, &mut rem, total)
        .unwrap_or_else(|_| unreachable!("no budget configured"));
    if !root_viable {
        return Ok(0);
    }
    let mut path = Vec::new();
    walk.go(&mut layer, &mut rem, total, &mut path)?;
    Ok(walk.visited)
}

/// Checks whether all realizations of `list` perform the same order of swaps
/// along each wire.
///
/// The signature of one realization lists, per wire, the sequence of partner
/// wires it swaps with, in tangle order; swaps inside one move touch
/// disjoint wires and so never compete for a slot in the same sequence.
pub fn check_unique_swap_order(
    list: &SwapList,
    limit: Option<u64>,
) -> Result<SwapOrderReport, UniqueOrderError> {
    let mut signatures: HashSet<Vec<Vec<u16>>> = HashSet::new();
    let n = list.wires() as usize;
    let realizations = enumerate_realizations(
        list,
        |tangle| {
            let mut signature = vec![Vec::new(); n];
            let mut layer = tangle.start().clone();
            for mv in tangle.moves() {
                for &p in mv.positions() {
                    let a = layer.wire_at(p as usize);
                    let b = layer.wire_at(p as usize + 1);
                    signature[a.index()].push(b.get());
                    signature[b.index()].push(a.get());
                }
                layer = crate::tangle::apply_move(&layer, mv).expect("tangle is valid");
            }
            debug_assert_eq!(
                signature.iter().map(|s| s.len() as u64).sum::<u64>(),
                2 * list.total(),
                "each swap appears in exactly two wire signatures"
            );
            signatures.insert(signature);
        },
        limit,
    )
    .map_err(|EnumerateError::LimitReached { visited }| UniqueOrderError::LimitReached { visited })?;
    if realizations == 0 {
        return Err(UniqueOrderError::InfeasibleList);
    }
    Ok(SwapOrderReport {
        unique: signatures.len() == 1,
        distinct_signatures: signatures.len(),
        realizations,
    })
}

pub mod naive {
    //! Deliberately simple reference implementations: depth-first searches
    //! with no memoization, no pruning and no ordering tricks. They exist as
    //! independent oracles for the engine above and for double-checking
    //! would-be counterexamples; keep them boring.

    use crate::list::SwapList;
    use crate::tangle::{Layer, Move, Tangle};

    use super::{identity_layer_ids, push_subsets, remaining_counts, slot};

    fn moves_of(layer: &[u16], rem: &[u32], n: usize) -> Vec<Vec<u16>> {
        let eligible: Vec<u16> = (1..n)
            .filter(|&p| rem[slot(n, layer[p - 1], layer[p])] > 0)
            .map(|p| p as u16)
            .collect();
        let mut out = Vec::new();
        push_subsets(&eligible, 0, &mut Vec::new(), &mut out);
        out
    }

    fn apply(layer: &mut [u16], rem: &mut [u32], positions: &[u16], n: usize) -> u64 {
        let mut consumed = 0;
        for &p in positions {
            let p = p as usize;
            rem[slot(n, layer[p - 1], layer[p])] -= 1;
            layer.swap(p - 1, p);
            consumed += 1;
        }
        consumed
    }

    fn undo(layer: &mut [u16], rem: &mut [u32], positions: &[u16], n: usize) {
        for &p in positions {
            let p = p as usize;
            layer.swap(p - 1, p);
            rem[slot(n, layer[p - 1], layer[p])] += 1;
        }
    }

    fn dfs(layer: &mut Vec<u16>, rem: &mut Vec<u32>, total: u64, n: usize) -> bool {
        if total == 0 {
            return true;
        }
        for positions in moves_of(layer, rem, n) {
            let consumed = apply(layer, rem, &positions, n);
            let found = dfs(layer, rem, total - consumed, n);
            undo(layer, rem, &positions, n);
            if found {
                return true;
            }
        }
        false
    }

    /// Plain depth-first feasibility check.
    pub fn feasible(list: &SwapList) -> bool {
        let n = list.wires() as usize;
        let mut layer = identity_layer_ids(n);
        let mut rem = remaining_counts(list);
        dfs(&mut layer, &mut rem, list.total(), n)
    }

    /// All realizing tangles, in the same lexicographic order the engine
    /// promises.
    pub fn realizations(list: &SwapList) -> Vec<Tangle> {
        fn walk(
            layer: &mut Vec<u16>,
            rem: &mut Vec<u32>,
            total: u64,
            n: usize,
            wires: u16,
            path: &mut Vec<Move>,
            out: &mut Vec<Tangle>,
        ) {
            if total == 0 {
                out.push(
                    Tangle::new(Layer::identity(wires), path.clone())
                        .expect("valid by construction"),
                );
                return;
            }
            for positions in moves_of(layer, rem, n) {
                let consumed = apply(layer, rem, &positions, n);
                path.push(Move::new(positions.clone()).expect("valid by construction"));
                walk(layer, rem, total - consumed, n, wires, path, out);
                path.pop();
                undo(layer, rem, &positions, n);
            }
        }

        let n = list.wires() as usize;
        let mut layer = identity_layer_ids(n);
        let mut rem = remaining_counts(list);
        let mut out = Vec::new();
        walk(
            &mut layer,
            &mut rem,
            list.total(),
            n,
            list.wires(),
            &mut Vec::new(),
            &mut out,
        );
        out
    }

    /// Minimum height by trying every move budget in turn, without memoizing.
    pub fn min_height(list: &SwapList) -> Option<usize> {
        fn bounded(layer: &mut Vec<u16>, rem: &mut Vec<u32>, total: u64, n: usize, depth: u64) -> bool {
            if total == 0 {
                return true;
            }
            if depth == 0 {
                return false;
            }
            for positions in moves_of(layer, rem, n) {
                let consumed = apply(layer, rem, &positions, n);
                let found = bounded(layer, rem, total - consumed, n, depth - 1);
                undo(layer, rem, &positions, n);
                if found {
                    return true;
                }
            }
            false
        }

        let n = list.wires() as usize;
        let total = list.total();
        let mut layer = identity_layer_ids(n);
        let mut rem = remaining_counts(list);
        (0..=total).find(|&d| bounded(&mut layer, &mut rem, total, n, d)).map(|d| d as usize + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::list::WireId;
    use crate::tangle::verify_realizes;

    fn list(n: u16, entries: &[(i64, i64, i64)]) -> SwapList {
        SwapList::from_entries(n, entries.iter().copied()).unwrap()
    }

    fn fig1_l() -> SwapList {
        list(3, &[(1, 2, 1), (1, 3, 1)])
    }

    fn fig1_l_prime() -> SwapList {
        list(3, &[(1, 2, 2), (1, 3, 1)])
    }

    #[test]
    fn feasible_list_yields_verified_witness() {
        let l = fig1_l();
        let result = decide_feasible(&l, &SearchOptions::default()).unwrap();
        assert_eq!(result.status, Feasibility::Feasible);
        let witness = result.witness.unwrap();
        assert!(verify_realizes(&witness, &l).unwrap().ok());
    }

    #[test]
    fn infeasible_sibling_is_rejected() {
        let result = decide_feasible(&fig1_l_prime(), &SearchOptions::default()).unwrap();
        assert_eq!(result.status, Feasibility::Infeasible);
        assert!(result.witness.is_none());
    }

    #[test]
    fn two_wires_swap_and_swap_back() {
        let l = list(2, &[(1, 2, 2)]);
        let result = decide_feasible(&l, &SearchOptions::default()).unwrap();
        assert_eq!(result.status, Feasibility::Feasible);
    }

    #[test]
    fn budget_exhaustion_is_an_error_not_a_verdict() {
        let opts = SearchOptions {
            node_budget: Some(1),
            ..SearchOptions::default()
        };
        let err = decide_feasible(&gen_l5(), &opts).unwrap_err();
        let SearchError::BudgetExhausted { stats } = err;
        assert!(stats.nodes_expanded >= 1);
    }

    fn gen_l5() -> SwapList {
        crate::ln::gen_ln(5).unwrap()
    }

    #[test]
    fn minimize_height_of_fig1_list_is_three() {
        let result = minimize_height(&fig1_l(), &SearchOptions::default()).unwrap();
        let witness = result.witness.unwrap();
        assert_eq!(witness.height(), 3);
        assert_eq!(naive::min_height(&fig1_l()), Some(3));
    }

    #[test]
    fn minimize_height_of_empty_list_is_one() {
        let l = SwapList::empty(5).unwrap();
        let result = minimize_height(&l, &SearchOptions::default()).unwrap();
        assert_eq!(result.witness.unwrap().height(), 1);
    }

    #[test]
    fn minimize_height_uses_parallel_moves() {
        let l = list(4, &[(1, 2, 1), (3, 4, 1)]);
        let result = minimize_height(&l, &SearchOptions::default()).unwrap();
        let witness = result.witness.unwrap();
        assert_eq!(witness.height(), 2);
        assert_eq!(naive::min_height(&l), Some(2));
    }

    #[test]
    fn minimize_height_picks_lexicographically_smallest_witness() {
        let l = list(4, &[(1, 2, 1), (3, 4, 1)]);
        let witness = minimize_height(&l, &SearchOptions::default())
            .unwrap()
            .witness
            .unwrap();
        assert_eq!(witness.moves(), &[Move::new(vec![1, 3]).unwrap()]);
    }

    #[test]
    #[allow(clippy::int_plus_one)] // the bound is stated as height - 1 >= load
    fn height_never_beats_wire_load_bound() {
        for l in [fig1_l(), list(4, &[(1, 2, 1), (3, 4, 1)]), gen_l5()] {
            let result = minimize_height(&l, &SearchOptions::default()).unwrap();
            let height = result.witness.unwrap().height() as u64;
            let max_load = (1..=l.wires())
                .map(|w| l.wire_load(WireId::new(w, l.wires()).unwrap()))
                .max()
                .unwrap();
            assert!(height - 1 >= max_load);
        }
    }

    #[test]
    fn minimize_matches_naive_oracle_on_small_grid() {
        // every list on 3 wires with total multiplicity <= 4
        let mut counts = [0u32; 3];
        loop {
            if counts.iter().sum::<u32>() <= 4 {
                let l = list(
                    3,
                    &[
                        (1, 2, counts[0] as i64),
                        (1, 3, counts[1] as i64),
                        (2, 3, counts[2] as i64),
                    ],
                );
                let expected = naive::min_height(&l);
                for prune in [true, false] {
                    let opts = SearchOptions {
                        prune,
                        node_budget: None,
                        ..SearchOptions::default()
                    };
                    let result = minimize_height(&l, &opts).unwrap();
                    let got = result.witness.map(|w| w.height());
                    assert_eq!(got, expected, "{counts:?} prune={prune}");
                }
            }
            let mut slot = counts.len();
            loop {
                if slot == 0 {
                    return;
                }
                slot -= 1;
                if counts[slot] < 4 {
                    counts[slot] += 1;
                    break;
                }
                counts[slot] = 0;
            }
        }
    }

    #[test]
    fn enumerate_single_swap() {
        let l = list(2, &[(1, 2, 1)]);
        let mut seen = Vec::new();
        let count = enumerate_realizations(&l, |t| seen.push(t.clone()), None).unwrap();
        assert_eq!(count, 1);
        assert_eq!(seen[0].height(), 2);
    }

    #[test]
    fn enumerate_disjoint_pair_has_three_realizations() {
        let l = list(4, &[(1, 2, 1), (3, 4, 1)]);
        let mut sequences = Vec::new();
        let count = enumerate_realizations(
            &l,
            |t| sequences.push(t.moves().to_vec()),
            None,
        )
        .unwrap();
        assert_eq!(count, 3);
        let mv = |ps: &[u16]| Move::new(ps.to_vec()).unwrap();
        assert_eq!(
            sequences,
            vec![
                vec![mv(&[1]), mv(&[3])],
                vec![mv(&[1, 3])],
                vec![mv(&[3]), mv(&[1])],
            ]
        );
    }

    #[test]
    fn enumerate_infeasible_list_visits_nothing() {
        let count = enumerate_realizations(&fig1_l_prime(), |_| {}, None).unwrap();
        assert_eq!(count, 0);
    }

    #[test]
    fn enumerate_respects_limit() {
        let l = list(4, &[(1, 2, 1), (3, 4, 1)]);
        let err = enumerate_realizations(&l, |_| {}, Some(2)).unwrap_err();
        let EnumerateError::LimitReached { visited } = err;
        assert_eq!(visited, 2);
    }

    #[test]
    fn enumeration_matches_naive_oracle_on_small_lists() {
        for l in [
            fig1_l(),
            fig1_l_prime(),
            list(3, &[(1, 2, 2), (2, 3, 2)]),
            list(4, &[(1, 2, 1), (2, 3, 1), (3, 4, 1)]),
        ] {
            let mut fast = Vec::new();
            enumerate_realizations(&l, |t| fast.push(t.clone()), None).unwrap();
            assert_eq!(fast, naive::realizations(&l));
        }
    }

    #[test]
    fn swap_order_is_not_unique_for_independent_loops() {
        let l = list(3, &[(1, 2, 2), (2, 3, 2)]);
        let report = check_unique_swap_order(&l, None).unwrap();
        assert!(!report.unique);
        assert_eq!(report.distinct_signatures, 2);
        assert_eq!(report.realizations, 2);
    }

    #[test]
    fn swap_order_unique_for_l5_but_not_l4() {
        // For even n the last swap of the (n-1, n) pair leaves wire n
        // exposed on the left, so odd wires may also dive after it; the
        // swap order along wire n is then not unique. Odd n blocks that
        // tail region and the order is forced.
        let l4 = check_unique_swap_order(&crate::ln::gen_ln(4).unwrap(), None).unwrap();
        assert!(!l4.unique);
        assert_eq!(l4.realizations, 13);
        assert_eq!(l4.distinct_signatures, 3);
        let l5 = check_unique_swap_order(&crate::ln::gen_ln(5).unwrap(), None).unwrap();
        assert!(l5.unique, "{l5:?}");
        assert_eq!(l5.realizations, 57);
    }

    #[test]
    fn unique_swap_order_rejects_infeasible_list() {
        assert!(matches!(
            check_unique_swap_order(&fig1_l_prime(), None),
            Err(UniqueOrderError::InfeasibleList)
        ));
    }

    #[test]
    fn serial_and_parallel_modes_agree_with_naive() {
        // spot checks; the acceptance suite runs the exhaustive grid
        for l in [
            fig1_l(),
            fig1_l_prime(),
            list(2, &[(1, 2, 2)]),
            list(3, &[(1, 3, 2)]),
            list(4, &[(1, 4, 2), (2, 3, 2)]),
        ] {
            let expected = naive::feasible(&l);
            for move_mode in [MoveMode::Serial, MoveMode::Parallel] {
                for prune in [false, true] {
                    let opts = SearchOptions {
                        move_mode,
                        prune,
                        node_budget: None,
                    };
                    let got = decide_feasible(&l, &opts).unwrap().is_feasible();
                    assert_eq!(got, expected, "{l:?} {move_mode:?} prune={prune}");
                }
            }
        }
    }
}
