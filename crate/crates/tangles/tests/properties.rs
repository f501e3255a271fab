//! Property tests for the structural invariants: round trips, parity
//! soundness, determinism, and the normal-form transformation.

use proptest::collection::vec;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use tangles::reduction::{
    brute_force_nae, embed_assignment, to_positive_diff, Assignment, Lit, NaeFormula, NaeProblem,
    PositiveDiffFormula,
};
use tangles::render::{parse_ascii, render_tangle, RenderFormat, RenderOptions};
use tangles::{
    apply_move, enumerate_realizations, formats, gen_ln, odd_even_realize, target_permutation,
    verify_realizes, Layer, Move, SimpleError, SwapList, Tangle,
};

/// A random valid tangle: pick a wire count, then repeatedly pick one of the
/// valid moves at the current layer by index.
fn tangle_strategy(max_wires: u16, max_moves: usize) -> impl Strategy<Value = Tangle> {
    (2..=max_wires, vec(any::<u32>(), 0..=max_moves)).prop_map(|(wires, picks)| {
        let mut layers = vec![Layer::identity(wires)];
        let mut moves = Vec::new();
        for pick in picks {
            let eligible: Vec<u16> = (1..wires).collect();
            let mut options = Vec::new();
            subsets_no_adjacent(&eligible, 0, &mut Vec::new(), &mut options);
            let mv = Move::new(options[pick as usize % options.len()].clone()).unwrap();
            layers.push(apply_move(layers.last().unwrap(), &mv).unwrap());
            moves.push(mv);
        }
        Tangle::new(Layer::identity(wires), moves).unwrap()
    })
}

fn subsets_no_adjacent(
    eligible: &[u16],
    from: usize,
    current: &mut Vec<u16>,
    out: &mut Vec<Vec<u16>>,
) {
    for k in from..eligible.len() {
        let p = eligible[k];
        if current.last().is_some_and(|&last| p - last < 2) {
            continue;
        }
        current.push(p);
        out.push(current.clone());
        subsets_no_adjacent(eligible, k + 1, current, out);
        current.pop();
    }
}

fn nae_strategy(max_vars: u32, max_clauses: usize) -> impl Strategy<Value = NaeFormula> {
    (1..=max_vars).prop_flat_map(move |vars| {
        vec(vec((1..=vars, any::<bool>()), 3), 0..=max_clauses).prop_map(move |raw| {
            let clauses = raw
                .into_iter()
                .map(|lits| {
                    [
                        Lit { var: lits[0].0, positive: lits[0].1 },
                        Lit { var: lits[1].0, positive: lits[1].1 },
                        Lit { var: lits[2].0, positive: lits[2].1 },
                    ]
                })
                .collect();
            NaeFormula::new(vars, clauses).unwrap()
        })
    })
}

proptest! {
    /// Every tangle realizes exactly the multiset it performs.
    #[test]
    fn realization_round_trip(t in tangle_strategy(6, 10)) {
        let realized = t.realized_multiset();
        prop_assert!(verify_realizes(&t, &realized).unwrap().ok());
    }

    /// The parity-forced final order of a realized multiset exists and is
    /// the tangle's final layer.
    #[test]
    fn parity_soundness(t in tangle_strategy(6, 10)) {
        let order = t.realized_multiset().required_final_order().unwrap();
        prop_assert_eq!(order, t.final_layer());
    }

    /// Applying a move twice restores the layer.
    #[test]
    fn move_involution(t in tangle_strategy(6, 6)) {
        let layers = t.layers();
        for (layer, mv) in layers.iter().zip(t.moves()) {
            let once = apply_move(layer, mv).unwrap();
            prop_assert_eq!(&apply_move(&once, mv).unwrap(), layer);
        }
    }

    /// List and tangle text formats round-trip exactly.
    #[test]
    fn text_formats_round_trip(t in tangle_strategy(6, 8)) {
        let list = t.realized_multiset();
        let list_text = formats::write_list(&list);
        prop_assert_eq!(formats::parse_list(&list_text).unwrap(), list);
        prop_assert_eq!(formats::write_list(&formats::parse_list(&list_text).unwrap()), list_text);

        let tangle_text = formats::write_tangle(&t);
        prop_assert_eq!(&formats::parse_tangle(&tangle_text).unwrap(), &t);
    }

    /// ASCII rendering parses back to the exact layer sequence, and
    /// rendering twice yields identical bytes.
    #[test]
    fn ascii_render_round_trip(t in tangle_strategy(9, 8)) {
        let opts = RenderOptions::new(RenderFormat::Ascii);
        let text = render_tangle(&t, &opts).unwrap();
        prop_assert_eq!(parse_ascii(&text).unwrap(), t.layers());
        prop_assert_eq!(render_tangle(&t, &opts).unwrap(), text);
    }

    /// Classification flags do not depend on the order entries were listed.
    #[test]
    fn classification_is_representation_independent(
        t in tangle_strategy(5, 8),
        seed in any::<u64>(),
    ) {
        let list = t.realized_multiset();
        let mut entries: Vec<(i64, i64, i64)> = list
            .nonzero_pairs()
            .map(|(a, b, c)| (a.get() as i64, b.get() as i64, c as i64))
            .collect();
        // deterministic shuffle driven by the seed
        let mut state = seed;
        for i in (1..entries.len()).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            entries.swap(i, (state >> 33) as usize % (i + 1));
        }
        let reordered: Vec<(i64, i64, i64)> =
            entries.iter().map(|&(i, j, c)| (j, i, c)).collect();
        let rebuilt = SwapList::from_entries(list.wires(), reordered).unwrap();
        prop_assert_eq!(rebuilt.classify(), list.classify());
        prop_assert_eq!(rebuilt, list);
    }

    /// Enumeration emits the same tangle sequence on every run.
    #[test]
    fn enumeration_is_deterministic(t in tangle_strategy(4, 5)) {
        let list = t.realized_multiset();
        let mut first = Vec::new();
        let mut second = Vec::new();
        enumerate_realizations(&list, |r| first.push(r.clone()), Some(500)).ok();
        enumerate_realizations(&list, |r| second.push(r.clone()), Some(500)).ok();
        prop_assert_eq!(first, second);
    }

    /// The normal form is always positive with three distinct variables per
    /// clause, and NAE-satisfiability is preserved.
    #[test]
    fn positive_diff_preserves_satisfiability(f in nae_strategy(4, 4)) {
        let (g, trace) = to_positive_diff(&f);
        // construction re-validated from raw parts
        prop_assert!(
            PositiveDiffFormula::new(g.vars(), g.clauses().to_vec()).is_ok()
        );
        prop_assert_eq!(g.vars() as usize, trace.x.len() + trace.y.len() + 3);
        let before = brute_force_nae(&f).unwrap();
        let after = brute_force_nae(&g).unwrap();
        prop_assert_eq!(before.is_some(), after.is_some());
        if let Some(witness) = before {
            prop_assert!(f.nae_satisfied(&witness));
        }
        if let Some(witness) = after {
            prop_assert!(g.nae_satisfied(&witness));
        }
    }
}

/// Every realization found for the rigid family verifies against its list.
#[test]
fn enumerated_family_realizations_verify() {
    for n in 3..=5u16 {
        let l = gen_ln(n).unwrap();
        let mut count = 0u64;
        enumerate_realizations(
            &l,
            |t| {
                assert!(verify_realizes(t, &l).unwrap().ok(), "n = {n}");
                count += 1;
            },
            None,
        )
        .unwrap();
        assert!(count > 0, "family list must be feasible for n = {n}");
    }
}

/// Every simple list on up to 6 wires whose forced order exists is realized
/// exactly by odd-even transposition sort.
#[test]
fn odd_even_realizes_every_feasible_simple_list_up_to_six_wires() {
    for n in 1..=6u16 {
        let pairs: Vec<(u16, u16)> = (1..=n)
            .flat_map(|i| ((i + 1)..=n).map(move |j| (i, j)))
            .collect();
        for mask in 0u32..(1 << pairs.len()) {
            let entries: Vec<(i64, i64, i64)> = pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &(i, j))| (i as i64, j as i64, 1))
                .collect();
            let l = SwapList::from_entries(n, entries).unwrap();
            let target = match target_permutation(&l) {
                Ok(t) => t,
                Err(SimpleError::Cyclic(_)) => continue,
                Err(other) => panic!("{other}"),
            };
            let tangle = odd_even_realize(&Layer::identity(n), &target.target).unwrap();
            assert!(verify_realizes(&tangle, &l).unwrap().ok(), "mask {mask} n {n}");
        }
    }
}

/// With every variable in at most two clauses, arm interleaving cannot be
/// forced: embedding succeeds exactly on the NAE assignments.
#[test]
fn embedding_succeeds_on_occurrence_capped_formulas() {
    let mut rng = StdRng::seed_from_u64(0x656d_6264);
    for round in 0..60 {
        let vars = rng.random_range(3..=9u32);
        let mut occurrences = vec![0u8; vars as usize + 1];
        let mut clauses = Vec::new();
        'clauses: for _ in 0..rng.random_range(1..=4usize) {
            let mut picked = Vec::new();
            for _ in 0..40 {
                let v = rng.random_range(1..=vars);
                if occurrences[v as usize] < 2 && !picked.contains(&v) {
                    picked.push(v);
                    if picked.len() == 3 {
                        for &p in &picked {
                            occurrences[p as usize] += 1;
                        }
                        clauses.push([picked[0], picked[1], picked[2]]);
                        continue 'clauses;
                    }
                }
            }
            break;
        }
        if clauses.is_empty() {
            continue;
        }
        let f = PositiveDiffFormula::new(vars, clauses).unwrap();
        for rank in 0..(1u64 << vars) {
            let a = Assignment::from_rank(rank, vars);
            let embedded = embed_assignment(&f, &a);
            assert_eq!(
                embedded.is_ok(),
                f.nae_satisfied(&a),
                "round {round} rank {rank}: {embedded:?}"
            );
        }
    }
}
