//! The rigid list family `L_n` and a canonical tangle realizing it.
//!
//! For n wires: every pair among wires 1..n-2 swaps once, wires n-1 and n
//! swap n-1 times, and each wire i <= n-2 additionally swaps twice with
//! exactly one of the last two wires, alternating by the parity of i. These
//! lists admit realizations, but every realization performs the same order
//! of swaps along each wire, which makes them useful as rigid building
//! blocks.

use crate::list::{ListError, SwapList, WireId};
use crate::tangle::{Layer, Move, Tangle};

/// Builds `L_n` for `n >= 3` wires.
///
/// Odd wires i <= n-2 swap twice with wire n, even ones twice with wire n-1;
/// this single parity rule also yields the exchanged pair of entries at
/// i = n-2 when n is even.
pub fn gen_ln(n: u16) -> Result<SwapList, ListError> {
    if n < 3 {
        return Err(ListError::TooFewWires(n));
    }
    let mut list = SwapList::empty(n)?;
    let w = |i: u16| WireId::new(i, n).unwrap();
    for i in 1..=(n - 2) {
        for j in (i + 1)..=(n - 2) {
            list.set_count(w(i), w(j), 1);
        }
    }
    list.set_count(w(n - 1), w(n), (n - 1) as u32);
    for i in 1..=(n - 2) {
        if i.is_multiple_of(2) {
            list.set_count(w(i), w(n - 1), 2);
        } else {
            list.set_count(w(i), w(n), 2);
        }
    }
    Ok(list)
}

/// A concrete tangle realizing `gen_ln(n)`, built move by move.
///
/// Wires n-1 and n swap n-1 times, opening a sequence of intervals. Working
/// from wire n-2 down to wire 1, each wire dives into the currently open
/// interval (crossing whichever of the last two wires is on the left, twice)
/// and then walks left across all smaller wires, which reverses the order of
/// wires 1..n-2 one single swap at a time. When n is even, wire n-2 dives
/// before the first swap of the last pair.
pub fn ln_realization(n: u16) -> Result<Tangle, ListError> {
    if n < 3 {
        return Err(ListError::TooFewWires(n));
    }
    let pair_swap = n - 1; // position of the (n-1, n) pair
    let dive = n - 2; // position just left of the pair
    let mut moves = Vec::new();
    let even = n.is_multiple_of(2);
    for i in (1..=(n - 2)).rev() {
        let first_turn = i == n - 2;
        if !(even && first_turn) {
            moves.push(Move::single(pair_swap));
        }
        moves.push(Move::single(dive));
        moves.push(Move::single(dive));
        for p in ((n - 1 - i)..=(n - 3)).rev() {
            moves.push(Move::single(p));
        }
    }
    moves.push(Move::single(pair_swap));
    if even {
        moves.push(Move::single(pair_swap));
    }
    Ok(Tangle::new(Layer::identity(n), moves).expect("construction stays in range"))
}
