//! Swap lists: symmetric multisets of swap counts over unordered wire pairs.
//!
//! A list prescribes, for every pair of wires, how often the two wires must
//! exchange their relative order in a tangle. Wires are named by their
//! position in the initial layer, so wire 1 starts leftmost.

use std::fmt;

use thiserror::Error;

use crate::tangle::Layer;

/// A wire, identified by its 1-based position in the initial layer.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct WireId(u16);

impl WireId {
    /// Checked constructor: `id` must lie in `1..=wires`.
    pub fn new(id: u16, wires: u16) -> Result<Self, ListError> {
        if id == 0 || id > wires {
            return Err(ListError::OutOfRange { id: id as i64, wires });
        }
        Ok(WireId(id))
    }

    /// The 1-based wire number.
    pub fn get(self) -> u16 {
        self.0
    }

    /// The 0-based index used for array storage.
    pub fn index(self) -> usize {
        self.0 as usize - 1
    }

    pub(crate) fn from_index(index: usize) -> Self {
        WireId(index as u16 + 1)
    }
}

impl fmt::Display for WireId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Errors from list construction and validation.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ListError {
    #[error("wire count must be at least 1")]
    InvalidWireCount,
    #[error("negative swap count for pair ({i}, {j})")]
    NegativeCount { i: i64, j: i64 },
    #[error("pair ({i}, {i}) swaps a wire with itself")]
    SelfPair { i: i64 },
    #[error("wire {id} out of range for {wires} wires")]
    OutOfRange { id: i64, wires: u16 },
    #[error("duplicate entry for pair ({i}, {j})")]
    DuplicatePair { i: u16, j: u16 },
    #[error("the L_n family needs at least 3 wires, got {0}")]
    TooFewWires(u16),
}

/// The parity-forced final order does not exist: three wires demand a
/// cyclic left-to-right relation.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("parity-forced order is cyclic: {} left of {} left of {} left of {}", cycle[0], cycle[1], cycle[2], cycle[0])]
pub struct CyclicOrderError {
    /// Witness wires u, v, w with u forced left of v, v of w, w of u.
    pub cycle: [WireId; 3],
}

/// Classification flags computed from the count multiset alone.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ListClasses {
    /// Every count is 0 or 1.
    pub simple: bool,
    /// Every nonzero count is odd.
    pub odd: bool,
    /// Every count is even.
    pub even: bool,
    /// No triple i < k < j with count(i,k) = count(k,j) = 0 but count(i,j) > 0.
    pub nonseparable: bool,
}

/// A symmetric multiset of swaps: a nonnegative count per unordered wire pair.
///
/// Counts are stored once per pair in a triangular vector; pairs never
/// mentioned have count 0, and self-pairs do not exist.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SwapList {
    wires: u16,
    counts: Vec<u32>,
}

fn triangle_len(n: usize) -> usize {
    n * (n - 1) / 2
}

impl SwapList {
    /// An all-zero list over `wires` wires.
    pub fn empty(wires: u16) -> Result<Self, ListError> {
        if wires == 0 {
            return Err(ListError::InvalidWireCount);
        }
        Ok(SwapList {
            wires,
            counts: vec![0; triangle_len(wires as usize)],
        })
    }

    /// Validates raw `(i, j, count)` entries into a canonical list.
    ///
    /// Entries are taken as written: a duplicate entry for the same unordered
    /// pair is rejected rather than summed, so data bugs surface early.
    pub fn from_entries(
        wires: u16,
        entries: impl IntoIterator<Item = (i64, i64, i64)>,
    ) -> Result<Self, ListError> {
        let mut list = SwapList::empty(wires)?;
        let mut seen = vec![false; list.counts.len()];
        for (i, j, count) in entries {
            if i == j {
                return Err(ListError::SelfPair { i });
            }
            let id = |x: i64| -> Result<WireId, ListError> {
                if x < 1 || x > wires as i64 {
                    return Err(ListError::OutOfRange { id: x, wires });
                }
                Ok(WireId(x as u16))
            };
            let (a, b) = (id(i)?, id(j)?);
            if count < 0 {
                return Err(ListError::NegativeCount { i, j });
            }
            let slot = list.slot(a, b);
            if seen[slot] {
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                return Err(ListError::DuplicatePair {
                    i: lo.get(),
                    j: hi.get(),
                });
            }
            seen[slot] = true;
            list.counts[slot] = count as u32;
        }
        Ok(list)
    }

    pub fn wires(&self) -> u16 {
        self.wires
    }

    fn slot(&self, a: WireId, b: WireId) -> usize {
        debug_assert_ne!(a, b);
        let (i, j) = if a < b {
            (a.index(), b.index())
        } else {
            (b.index(), a.index())
        };
        let n = self.wires as usize;
        // Row-major triangular index for 0 <= i < j < n.
        i * n - i * (i + 1) / 2 + (j - i - 1)
    }

    /// The count of the unordered pair `{a, b}`.
    pub fn count(&self, a: WireId, b: WireId) -> u32 {
        self.counts[self.slot(a, b)]
    }

    pub fn set_count(&mut self, a: WireId, b: WireId, count: u32) {
        let slot = self.slot(a, b);
        self.counts[slot] = count;
    }

    /// Sum of all counts; every move of a realizing tangle consumes at least one.
    pub fn total(&self) -> u64 {
        self.counts.iter().map(|&c| c as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.iter().all(|&c| c == 0)
    }

    /// Nonzero pairs in ascending `(i, j)` order.
    pub fn nonzero_pairs(&self) -> impl Iterator<Item = (WireId, WireId, u32)> + '_ {
        let n = self.wires as usize;
        (0..n).flat_map(move |i| {
            ((i + 1)..n).filter_map(move |j| {
                let a = WireId::from_index(i);
                let b = WireId::from_index(j);
                let c = self.count(a, b);
                (c > 0).then_some((a, b, c))
            })
        })
    }

    /// Total swaps in which a single wire takes part.
    pub fn wire_load(&self, w: WireId) -> u64 {
        (1..=self.wires)
            .filter(|&o| o != w.get())
            .map(|o| self.count(w, WireId(o)) as u64)
            .sum()
    }

    /// Computes the classification flags; each flag follows its definition
    /// independently of the others.
    pub fn classify(&self) -> ListClasses {
        let simple = self.counts.iter().all(|&c| c <= 1);
        let odd = self.counts.iter().all(|&c| c == 0 || c % 2 == 1);
        let even = self.counts.iter().all(|&c| c % 2 == 0);
        let n = self.wires;
        let mut nonseparable = true;
        'outer: for i in 1..=n {
            for k in (i + 1)..=n {
                for j in (k + 1)..=n {
                    let (wi, wk, wj) = (WireId(i), WireId(k), WireId(j));
                    if self.count(wi, wk) == 0
                        && self.count(wk, wj) == 0
                        && self.count(wi, wj) > 0
                    {
                        nonseparable = false;
                        break 'outer;
                    }
                }
            }
        }
        ListClasses {
            simple,
            odd,
            even,
            nonseparable,
        }
    }

    /// The final wire order forced by count parities, if it exists.
    ///
    /// Each swap of a pair toggles its relative order, so wire i ends left of
    /// wire j exactly when `(i < j) XOR (count(i, j) is odd)`. If this
    /// relation is transitive it determines the final layer uniquely;
    /// otherwise the list is infeasible and a cyclic witness is returned.
    /// Passing this check is necessary but not sufficient for feasibility.
    pub fn required_final_order(&self) -> Result<Layer, CyclicOrderError> {
        let n = self.wires as usize;
        let beats = |a: usize, b: usize| -> bool {
            // true iff wire (a+1) ends left of wire (b+1)
            let (wa, wb) = (WireId::from_index(a), WireId::from_index(b));
            let odd = self.count(wa, wb) % 2 == 1;
            (a < b) != odd
        };
        // In a transitive tournament the out-degrees are pairwise distinct;
        // sort by them and verify every pair against the candidate order.
        let mut score = vec![0usize; n];
        for a in 0..n {
            for b in (a + 1)..n {
                if beats(a, b) {
                    score[a] += 1;
                } else {
                    score[b] += 1;
                }
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| score[b].cmp(&score[a]).then(a.cmp(&b)));
        for x in 0..n {
            for y in (x + 1)..n {
                if !beats(order[x], order[y]) {
                    return Err(CyclicOrderError {
                        cycle: self.find_cycle(&beats),
                    });
                }
            }
        }
        let wires = order.iter().map(|&i| WireId::from_index(i)).collect();
        Ok(Layer::from_wires_unchecked(wires))
    }

    fn find_cycle(&self, beats: &dyn Fn(usize, usize) -> bool) -> [WireId; 3] {
        let n = self.wires as usize;
        for a in 0..n {
            for b in 0..n {
                if a == b || !beats(a, b) {
                    continue;
                }
                for c in 0..n {
                    if c != a && c != b && beats(b, c) && beats(c, a) {
                        return [
                            WireId::from_index(a),
                            WireId::from_index(b),
                            WireId::from_index(c),
                        ];
                    }
                }
            }
        }
        unreachable!("non-transitive tournament always contains a 3-cycle")
    }
}
