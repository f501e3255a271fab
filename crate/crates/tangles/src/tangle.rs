//! Tangles: a start layer plus a sequence of moves.
//!
//! A layer is a permutation of the wires read left to right; a move is a
//! non-empty set of disjoint adjacent transpositions applied simultaneously.
//! The height of a tangle is its number of layers, so a tangle with no moves
//! has height 1.

use std::fmt;

use thiserror::Error;

use crate::list::{SwapList, WireId};

/// One horizontal level of a tangle: a left-to-right permutation of the wires.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Layer(Vec<WireId>);

impl Layer {
    /// The identity layer `[1, 2, ..., n]`.
    pub fn identity(wires: u16) -> Self {
        Layer((1..=wires).map(|i| WireId::new(i, wires).unwrap()).collect())
    }

    /// Builds a layer from wire numbers, checking that they form a permutation.
    pub fn new(wires: Vec<u16>) -> Result<Self, TangleError> {
        let n = wires.len() as u16;
        let mut seen = vec![false; wires.len()];
        let mut out = Vec::with_capacity(wires.len());
        for &w in &wires {
            if w == 0 || w > n || seen[w as usize - 1] {
                return Err(TangleError::NotAPermutation { layer: wires });
            }
            seen[w as usize - 1] = true;
            out.push(WireId::new(w, n).unwrap());
        }
        Ok(Layer(out))
    }

    pub(crate) fn from_wires_unchecked(wires: Vec<WireId>) -> Self {
        Layer(wires)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The wire at 1-based position `pos`.
    pub fn wire_at(&self, pos: usize) -> WireId {
        self.0[pos - 1]
    }

    pub fn wires(&self) -> &[WireId] {
        &self.0
    }

    /// Wire numbers as plain integers, handy for assertions and output.
    pub fn wire_numbers(&self) -> Vec<u16> {
        self.0.iter().map(|w| w.get()).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, w)| w.index() == i)
    }
}

impl fmt::Display for Layer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, w) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

/// A set of disjoint adjacent swaps performed between two consecutive layers.
///
/// Stored as the sorted left positions `p`, meaning the wires at positions
/// `p` and `p + 1` exchange. Two positions may not touch the same wire, so
/// they differ by at least 2.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Move(Vec<u16>);

impl Move {
    pub fn new(mut positions: Vec<u16>) -> Result<Self, TangleError> {
        if positions.is_empty() {
            return Err(TangleError::EmptyMove);
        }
        positions.sort_unstable();
        for pair in positions.windows(2) {
            if pair[1] - pair[0] <= 1 {
                return Err(TangleError::OverlappingPositions {
                    a: pair[0],
                    b: pair[1],
                });
            }
        }
        if positions[0] == 0 {
            return Err(TangleError::PositionOutOfRange { position: 0 });
        }
        Ok(Move(positions))
    }

    pub fn single(position: u16) -> Self {
        Move(vec![position])
    }

    pub(crate) fn from_sorted_unchecked(positions: Vec<u16>) -> Self {
        Move(positions)
    }

    /// Sorted 1-based left positions of the swaps.
    pub fn positions(&self) -> &[u16] {
        &self.0
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TangleError {
    #[error("layer {layer:?} is not a permutation of its wires")]
    NotAPermutation { layer: Vec<u16> },
    #[error("move positions {a} and {b} touch the same wire")]
    OverlappingPositions { a: u16, b: u16 },
    #[error("move position {position} out of range")]
    PositionOutOfRange { position: u16 },
    #[error("a move must contain at least one swap")]
    EmptyMove,
    #[error("move {index} is invalid at its layer: {source}")]
    InvalidTangle {
        index: usize,
        #[source]
        source: Box<TangleError>,
    },
    #[error("consecutive layers {index} and {} differ in a way that is not a move", index + 1)]
    NotAMove { index: usize },
    #[error("tangle has no layers")]
    NoLayers,
}

/// Applies a move to a layer, exchanging the wires at each chosen position.
pub fn apply_move(layer: &Layer, mv: &Move) -> Result<Layer, TangleError> {
    let n = layer.len();
    let mut wires = layer.wires().to_vec();
    for &p in mv.positions() {
        if p as usize >= n || p == 0 {
            return Err(TangleError::PositionOutOfRange { position: p });
        }
        wires.swap(p as usize - 1, p as usize);
    }
    Ok(Layer::from_wires_unchecked(wires))
}

/// A start layer plus a sequence of moves. Structural validity (every move in
/// range for its layer) is established at construction, so the accessors and
/// [`Tangle::realized_multiset`] cannot fail afterwards.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Tangle {
    start: Layer,
    moves: Vec<Move>,
}

impl Tangle {
    pub fn new(start: Layer, moves: Vec<Move>) -> Result<Self, TangleError> {
        let mut layer = start.clone();
        for (index, mv) in moves.iter().enumerate() {
            layer = apply_move(&layer, mv).map_err(|source| TangleError::InvalidTangle {
                index,
                source: Box::new(source),
            })?;
        }
        Ok(Tangle { start, moves })
    }

    /// The height-1 tangle on the identity layer.
    pub fn identity(wires: u16) -> Self {
        Tangle {
            start: Layer::identity(wires),
            moves: Vec::new(),
        }
    }

    /// Reconstructs a tangle from its layer sequence, deriving the moves.
    pub fn from_layers(layers: &[Layer]) -> Result<Self, TangleError> {
        let start = layers.first().ok_or(TangleError::NoLayers)?.clone();
        let mut moves = Vec::with_capacity(layers.len().saturating_sub(1));
        for (index, pair) in layers.windows(2).enumerate() {
            moves.push(move_between(&pair[0], &pair[1]).ok_or(TangleError::NotAMove { index })?);
        }
        Tangle::new(start, moves)
    }

    pub fn start(&self) -> &Layer {
        &self.start
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    /// Number of layers; one more than the number of moves.
    pub fn height(&self) -> usize {
        self.moves.len() + 1
    }

    pub fn wires(&self) -> u16 {
        self.start.len() as u16
    }

    /// All layers from start to final order.
    pub fn layers(&self) -> Vec<Layer> {
        let mut out = Vec::with_capacity(self.height());
        out.push(self.start.clone());
        for mv in &self.moves {
            let next = apply_move(out.last().unwrap(), mv).expect("validated at construction");
            out.push(next);
        }
        out
    }

    pub fn final_layer(&self) -> Layer {
        self.layers().pop().unwrap()
    }

    /// Counts, for every unordered pair, how many moves swapped those two wires.
    pub fn realized_multiset(&self) -> SwapList {
        let mut list = SwapList::empty(self.wires()).expect("tangle has at least one wire");
        let mut layer = self.start.clone();
        for mv in &self.moves {
            for &p in mv.positions() {
                let a = layer.wire_at(p as usize);
                let b = layer.wire_at(p as usize + 1);
                let c = list.count(a, b);
                list.set_count(a, b, c + 1);
            }
            layer = apply_move(&layer, mv).expect("validated at construction");
        }
        list
    }
}

/// Derives the move turning `from` into `to`, if the two layers differ by one.
pub fn move_between(from: &Layer, to: &Layer) -> Option<Move> {
    if from.len() != to.len() {
        return None;
    }
    let n = from.len();
    let mut positions = Vec::new();
    let mut pos = 1;
    while pos <= n {
        if from.wire_at(pos) == to.wire_at(pos) {
            pos += 1;
            continue;
        }
        if pos == n
            || from.wire_at(pos) != to.wire_at(pos + 1)
            || from.wire_at(pos + 1) != to.wire_at(pos)
        {
            return None;
        }
        positions.push(pos as u16);
        pos += 2;
    }
    if positions.is_empty() {
        return None; // equal layers: moves must be non-empty
    }
    Some(Move::from_sorted_unchecked(positions))
}

/// Mismatch found while checking a tangle against a list: the first pair (in
/// ascending order) whose realized count differs from the prescribed one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub pair: (WireId, WireId),
    pub expected: u32,
    pub actual: u32,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "pair ({}, {}) expected {} swaps, got {}",
            self.pair.0, self.pair.1, self.expected, self.actual
        )
    }
}

/// Outcome of [`verify_realizes`]: ok exactly when no violation exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    violation: Option<Violation>,
}

impl Verdict {
    pub fn ok(&self) -> bool {
        self.violation.is_none()
    }

    pub fn violation(&self) -> Option<&Violation> {
        self.violation.as_ref()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error("tangle has {tangle} wires but list has {list}")]
    WireCountMismatch { tangle: u16, list: u16 },
    #[error("tangle must start on the identity layer")]
    NonIdentityStart,
}

/// Checks whether `tangle` realizes `list`: every pair must swap exactly as
/// often as prescribed. The tangle must start on the identity layer, since
/// wires are named by their initial position.
pub fn verify_realizes(tangle: &Tangle, list: &SwapList) -> Result<Verdict, VerifyError> {
    if tangle.wires() != list.wires() {
        return Err(VerifyError::WireCountMismatch {
            tangle: tangle.wires(),
            list: list.wires(),
        });
    }
    if !tangle.start().is_identity() {
        return Err(VerifyError::NonIdentityStart);
    }
    let realized = tangle.realized_multiset();
    let n = list.wires();
    for i in 1..=n {
        for j in (i + 1)..=n {
            let (a, b) = (WireId::new(i, n).unwrap(), WireId::new(j, n).unwrap());
            let (expected, actual) = (list.count(a, b), realized.count(a, b));
            if expected != actual {
                return Ok(Verdict {
                    violation: Some(Violation {
                        pair: (a, b),
                        expected,
                        actual,
                    }),
                });
            }
        }
    }
    Ok(Verdict { violation: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn layer(wires: &[u16]) -> Layer {
        Layer::new(wires.to_vec()).unwrap()
    }

    fn mv(positions: &[u16]) -> Move {
        Move::new(positions.to_vec()).unwrap()
    }

    /// The tangle 123 -> 213 -> 231 realizing the feasible list of the
    /// two-swap example: one (1,2) swap followed by one (1,3) swap.
    fn fig1_tangle() -> Tangle {
        Tangle::new(Layer::identity(3), vec![mv(&[1]), mv(&[2])]).unwrap()
    }

    #[test]
    fn apply_move_swaps_single_pair() {
        let next = apply_move(&layer(&[1, 2, 3]), &mv(&[1])).unwrap();
        assert_eq!(next.wire_numbers(), vec![2, 1, 3]);
    }

    #[test]
    fn apply_move_swaps_disjoint_pairs_simultaneously() {
        let next = apply_move(&layer(&[1, 2, 3, 4]), &mv(&[1, 3])).unwrap();
        assert_eq!(next.wire_numbers(), vec![2, 1, 4, 3]);
    }

    #[test]
    fn overlapping_positions_are_rejected() {
        assert_eq!(
            Move::new(vec![1, 2]).unwrap_err(),
            TangleError::OverlappingPositions { a: 1, b: 2 }
        );
    }

    #[test]
    fn out_of_range_position_is_rejected() {
        let err = apply_move(&layer(&[1, 2]), &mv(&[2])).unwrap_err();
        assert_eq!(err, TangleError::PositionOutOfRange { position: 2 });
    }

    #[test]
    fn apply_move_twice_is_identity() {
        let base = layer(&[3, 1, 4, 2]);
        let m = mv(&[1, 3]);
        let there = apply_move(&base, &m).unwrap();
        let back = apply_move(&there, &m).unwrap();
        assert_eq!(back, base);
    }

    #[test]
    fn realized_multiset_of_fig1_tangle() {
        let realized = fig1_tangle().realized_multiset();
        let w = |i| WireId::new(i, 3).unwrap();
        assert_eq!(realized.count(w(1), w(2)), 1);
        assert_eq!(realized.count(w(1), w(3)), 1);
        assert_eq!(realized.count(w(2), w(3)), 0);
    }

    #[test]
    fn realized_multiset_without_moves_is_empty() {
        assert!(Tangle::identity(3).realized_multiset().is_empty());
    }

    #[test]
    fn realized_multiset_counts_swap_back() {
        let t = Tangle::new(Layer::identity(2), vec![mv(&[1]), mv(&[1])]).unwrap();
        let w = |i| WireId::new(i, 2).unwrap();
        assert_eq!(t.realized_multiset().count(w(1), w(2)), 2);
    }

    #[test]
    fn verify_realizes_accepts_fig1_pair() {
        let l = SwapList::from_entries(3, [(1, 2, 1), (1, 3, 1)]).unwrap();
        assert!(verify_realizes(&fig1_tangle(), &l).unwrap().ok());
    }

    #[test]
    fn verify_reports_first_differing_pair() {
        let l = SwapList::from_entries(3, [(1, 2, 1), (1, 3, 1)]).unwrap();
        let verdict = verify_realizes(&Tangle::identity(3), &l).unwrap();
        let violation = verdict.violation().unwrap();
        assert_eq!(
            (violation.pair.0.get(), violation.pair.1.get()),
            (1, 2)
        );
        assert_eq!((violation.expected, violation.actual), (1, 0));
    }

    #[test]
    fn verify_rejects_infeasible_sibling_list() {
        let l_prime = SwapList::from_entries(3, [(1, 2, 2), (1, 3, 1)]).unwrap();
        let verdict = verify_realizes(&fig1_tangle(), &l_prime).unwrap();
        let violation = verdict.violation().unwrap();
        assert_eq!(
            (violation.pair.0.get(), violation.pair.1.get()),
            (1, 2)
        );
    }

    #[test]
    fn from_layers_round_trips() {
        let t = fig1_tangle();
        let rebuilt = Tangle::from_layers(&t.layers()).unwrap();
        assert_eq!(rebuilt, t);
    }

    #[test]
    fn from_layers_rejects_repeated_layer() {
        let layers = vec![layer(&[1, 2]), layer(&[1, 2])];
        assert_eq!(
            Tangle::from_layers(&layers).unwrap_err(),
            TangleError::NotAMove { index: 0 }
        );
    }

    #[test]
    fn parity_of_realized_multiset_matches_final_layer() {
        let t = Tangle::new(
            Layer::identity(4),
            vec![mv(&[1, 3]), mv(&[2]), mv(&[1])],
        )
        .unwrap();
        let order = t.realized_multiset().required_final_order().unwrap();
        assert_eq!(order, t.final_layer());
    }
}
