//! Near-optimal realization of simple lists.
//!
//! A simple list (every count 0 or 1) whose parity-forced final order exists
//! is realized by odd-even transposition sort toward that order: a compared
//! pair swaps only when out of order relative to the target, so every
//! inverted pair swaps exactly once and no pair swaps twice. The cited
//! guarantee for this sort is at most one layer more than the minimum.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::list::{CyclicOrderError, SwapList, WireId};
use crate::tangle::{apply_move, Layer, Move, Tangle};

/// The unique final order a simple list must reach, together with the pairs
/// that must swap exactly once (equivalently, the inversions between the
/// identity and the target).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleListTarget {
    pub target: Layer,
    pub inversion_pairs: BTreeSet<(WireId, WireId)>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SimpleError {
    #[error("list is not simple: some pair swaps more than once")]
    NotSimple,
    #[error(transparent)]
    Cyclic(#[from] CyclicOrderError),
    #[error("start and target have different wire counts")]
    LengthMismatch,
}

/// Resolves a simple list into its forced target permutation.
pub fn target_permutation(list: &SwapList) -> Result<SimpleListTarget, SimpleError> {
    if !list.classify().simple {
        return Err(SimpleError::NotSimple);
    }
    let target = list.required_final_order()?;
    let inversion_pairs = list.nonzero_pairs().map(|(a, b, _)| (a, b)).collect();
    Ok(SimpleListTarget {
        target,
        inversion_pairs,
    })
}

/// Sorts `start` into `target` by odd-even transposition.
///
/// Odd phases compare positions (1,2), (3,4), ...; even phases (2,3),
/// (4,5), ...; a compared pair swaps exactly when its wires appear in the
/// opposite order in `target`. The sort stops once a full odd+even cycle
/// makes no swap, and phases without swaps contribute no move, so the
/// result has no empty moves.
pub fn odd_even_realize(start: &Layer, target: &Layer) -> Result<Tangle, SimpleError> {
    if start.len() != target.len() {
        return Err(SimpleError::LengthMismatch);
    }
    let n = start.len();
    // rank[w] = position of wire w in the target
    let mut rank = vec![0usize; n];
    for (position, w) in target.wires().iter().enumerate() {
        rank[w.index()] = position;
    }
    let mut layer = start.clone();
    let mut moves = Vec::new();
    let mut idle_phases = 0;
    let mut phase = 0usize;
    while idle_phases < 2 {
        let first = 1 + phase % 2;
        let swaps: Vec<u16> = (first..n)
            .step_by(2)
            .filter(|&p| {
                rank[layer.wire_at(p).index()] > rank[layer.wire_at(p + 1).index()]
            })
            .map(|p| p as u16)
            .collect();
        if swaps.is_empty() {
            idle_phases += 1;
        } else {
            idle_phases = 0;
            let mv = Move::new(swaps).expect("odd-even positions are disjoint");
            layer = apply_move(&layer, &mv).expect("positions in range");
            moves.push(mv);
        }
        phase += 1;
    }
    debug_assert_eq!(&layer, target, "odd-even sort must reach the target");
    Ok(Tangle::new(start.clone(), moves).expect("moves were applied while building"))
}
