//! Wire gadgets turning a positive distinct-variable NAE 3-SAT formula into
//! a swap list that is feasible exactly when the formula is satisfiable.
//!
//! Two inner wires lambda and lambda' swap eight times, creating four
//! loops in which lambda' runs left of lambda; the first two act as
//! true-loops, the last two as false-loops. Each variable contributes a
//! 13-wire gadget (a rigid beta-ladder on either side plus alpha guards and
//! the variable wire itself) that can reach either the true-loops or the
//! false-loops but never both. Each clause contributes a 13-wire gadget (a
//! clause wire plus three protected occurrence groups) whose arms meet their
//! three variable wires in three different loops. The instance uses
//! 9 + 13(n + m) wires and never asks any pair to swap more than eight
//! times.

use std::fmt;

use rustc_hash::FxHashMap;

use crate::list::{SwapList, WireId};
use crate::reduction::formula::PositiveDiffFormula;

/// The role a wire plays in the construction.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum GadgetRole {
    /// Ladder wire beta_{i,t} in V_i, t in 1..=5.
    Beta { var: u32, index: u8 },
    /// Guard alpha_i, rightmost wire of V_i.
    Alpha { var: u32 },
    /// Ladder wire psi_{j,t}^k in the occurrence group D_j^k, t in 1..=3.
    Psi { clause: u32, occ: u8, index: u8 },
    /// Protector gamma_j^k, rightmost wire of D_j^k.
    Gamma { clause: u32, occ: u8 },
    /// Clause wire c_j, rightmost wire of C_j.
    ClauseWire { clause: u32 },
    Lambda,
    LambdaPrime,
    /// Rigidity wire phi_k, k in 1..=7.
    Phi { index: u8 },
    /// Guard alpha'_i, leftmost wire of V'_i.
    AlphaPrime { var: u32 },
    /// Ladder wire beta'_{i,t} in V'_i, t in 1..=5.
    BetaPrime { var: u32, index: u8 },
    /// Variable wire v_i, rightmost wire of V'_i.
    VarWire { var: u32 },
}

impl fmt::Display for GadgetRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GadgetRole::Beta { var, index } => write!(f, "beta_{var}_{index}"),
            GadgetRole::Alpha { var } => write!(f, "alpha_{var}"),
            GadgetRole::Psi { clause, occ, index } => write!(f, "psi_{clause}_{occ}_{index}"),
            GadgetRole::Gamma { clause, occ } => write!(f, "gamma_{clause}_{occ}"),
            GadgetRole::ClauseWire { clause } => write!(f, "c_{clause}"),
            GadgetRole::Lambda => write!(f, "lambda"),
            GadgetRole::LambdaPrime => write!(f, "lambda'"),
            GadgetRole::Phi { index } => write!(f, "phi_{index}"),
            GadgetRole::AlphaPrime { var } => write!(f, "alpha'_{var}"),
            GadgetRole::BetaPrime { var, index } => write!(f, "beta'_{var}_{index}"),
            GadgetRole::VarWire { var } => write!(f, "v_{var}"),
        }
    }
}

/// Bijection between wires (by initial position) and gadget roles.
#[derive(Clone, Debug)]
pub struct GadgetMap {
    vars: u32,
    clauses: u32,
    roles: Vec<GadgetRole>,
    wires: FxHashMap<GadgetRole, WireId>,
}

impl GadgetMap {
    /// Lays the wire universe out in the fixed initial order
    /// V_n < ... < V_1 < C_m < ... < C_1 < lambda < lambda' < E < V'_1 < ... < V'_n,
    /// with V_i = beta_{i,5} < ... < beta_{i,1} < alpha_i,
    /// C_j = D_j^3 < D_j^2 < D_j^1 < c_j (each D_j^k = psi_{j,3}^k < psi_{j,2}^k < psi_{j,1}^k < gamma_j^k),
    /// E = phi_1 < ... < phi_7 and V'_i = alpha'_i < beta'_{i,1} < ... < beta'_{i,5} < v_i.
    pub fn layout(vars: u32, clauses: u32) -> Self {
        let mut roles = Vec::new();
        for var in (1..=vars).rev() {
            for index in (1..=5u8).rev() {
                roles.push(GadgetRole::Beta { var, index });
            }
            roles.push(GadgetRole::Alpha { var });
        }
        for clause in (1..=clauses).rev() {
            for occ in (1..=3u8).rev() {
                for index in (1..=3u8).rev() {
                    roles.push(GadgetRole::Psi { clause, occ, index });
                }
                roles.push(GadgetRole::Gamma { clause, occ });
            }
            roles.push(GadgetRole::ClauseWire { clause });
        }
        roles.push(GadgetRole::Lambda);
        roles.push(GadgetRole::LambdaPrime);
        for index in 1..=7u8 {
            roles.push(GadgetRole::Phi { index });
        }
        for var in 1..=vars {
            roles.push(GadgetRole::AlphaPrime { var });
            for index in 1..=5u8 {
                roles.push(GadgetRole::BetaPrime { var, index });
            }
            roles.push(GadgetRole::VarWire { var });
        }
        let total = roles.len();
        assert!(total <= u16::MAX as usize, "instance too large for u16 wires");
        let wires = roles
            .iter()
            .enumerate()
            .map(|(i, &role)| (role, WireId::new(i as u16 + 1, total as u16).unwrap()))
            .collect();
        GadgetMap {
            vars,
            clauses,
            roles,
            wires,
        }
    }

    pub fn wire_count(&self) -> u16 {
        self.roles.len() as u16
    }

    pub fn vars(&self) -> u32 {
        self.vars
    }

    pub fn clauses(&self) -> u32 {
        self.clauses
    }

    pub fn role_of(&self, wire: WireId) -> GadgetRole {
        self.roles[wire.index()]
    }

    pub fn wire_of(&self, role: GadgetRole) -> Option<WireId> {
        self.wires.get(&role).copied()
    }

    pub fn roles(&self) -> impl Iterator<Item = (WireId, GadgetRole)> + '_ {
        self.roles
            .iter()
            .enumerate()
            .map(|(i, &role)| (WireId::new(i as u16 + 1, self.roles.len() as u16).unwrap(), role))
    }
}

/// Count reserved for a pair of variable wires v_j, v_i.
///
/// Two sentences disagree: the cross-gadget paragraph gives six swaps with
/// every wire of V'_i, while the correctness argument reserves eight swaps
/// per variable-wire pair (two for each loop) and leans on them. The eight
/// reading is the default; the six reading stays available for comparison.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum VariablePairSwaps {
    #[default]
    ReservedEight,
    BlanketSix,
}

impl VariablePairSwaps {
    fn count(self) -> u32 {
        match self {
            VariablePairSwaps::ReservedEight => 8,
            VariablePairSwaps::BlanketSix => 6,
        }
    }
}

/// The full multiplicity ledger as a total function over role pairs; any
/// pair not covered by a rule swaps zero times.
pub fn pair_multiplicity(
    a: GadgetRole,
    b: GadgetRole,
    formula: &PositiveDiffFormula,
    vv: VariablePairSwaps,
) -> u32 {
    use GadgetRole::*;

    debug_assert_ne!(a, b, "a wire does not swap with itself");

    // Match an unordered pair by trying both orientations. Symmetric rules
    // make the flipped arm redundant, which is fine.
    macro_rules! both {
        ($pat_a:pat, $pat_b:pat => $value:expr) => {
            #[allow(unreachable_patterns)]
            match (a, b) {
                ($pat_a, $pat_b) | ($pat_b, $pat_a) => return $value,
                _ => {}
            }
        };
    }

    // lambda and lambda': eight swaps, four closed lambda'-lambda loops.
    both!(Lambda, LambdaPrime => 8);

    // Variable wires: four swaps with lambda, none with lambda'.
    both!(VarWire { .. }, Lambda => 4);
    both!(VarWire { .. }, LambdaPrime => 0);

    // Guards swap twice with both inner wires.
    both!(Alpha { .. } | AlphaPrime { .. }, Lambda | LambdaPrime => 2);

    // Ladder wires alternate sides: beta_{i,1}, beta_{i,3}, beta_{i,5} and
    // beta'_{i,2}, beta'_{i,4} touch lambda; the complementary ones touch
    // lambda'.
    both!(Beta { index, .. }, Lambda => if index % 2 == 1 { 2 } else { 0 });
    both!(Beta { index, .. }, LambdaPrime => if index % 2 == 0 { 2 } else { 0 });
    both!(BetaPrime { index, .. }, Lambda => if index % 2 == 0 { 2 } else { 0 });
    both!(BetaPrime { index, .. }, LambdaPrime => if index % 2 == 1 { 2 } else { 0 });

    // Odd phi wires dip to lambda, even ones to lambda'.
    both!(Phi { index }, Lambda => if index % 2 == 1 { 2 } else { 0 });
    both!(Phi { index }, LambdaPrime => if index % 2 == 0 { 2 } else { 0 });

    // Clause wires and protectors live inside the lambda'-lambda loops:
    // eight swaps with lambda', none with lambda. Of each psi group only the
    // middle wire touches lambda'.
    both!(ClauseWire { .. } | Gamma { .. }, LambdaPrime => 8);
    both!(Psi { index, .. }, LambdaPrime => if index == 2 { 2 } else { 0 });
    both!(ClauseWire { .. } | Gamma { .. } | Psi { .. }, Lambda => 0);

    // The rigidity set E.
    both!(Phi { .. }, Phi { .. } => 1);
    both!(Phi { index }, ClauseWire { .. } => if index % 2 == 1 { 2 } else { 0 });
    both!(Phi { index }, Gamma { .. } => if index % 2 == 1 { 2 } else { 0 });
    both!(Phi { .. }, Psi { .. } => 0);
    both!(Phi { .. }, Alpha { .. } | AlphaPrime { .. } => 2);
    both!(Phi { .. }, Beta { .. } | BetaPrime { .. } | VarWire { .. } => 0);

    // Pairs inside one variable gadget.
    if let (Some(va), Some(vb)) = (variable_of(a), variable_of(b)) {
        if va == vb {
            both!(Alpha { .. }, AlphaPrime { .. } => 0);
            both!(Alpha { .. } | AlphaPrime { .. }, VarWire { .. } => 0);
            both!(Beta { .. }, Beta { .. } => 1);
            both!(BetaPrime { .. }, BetaPrime { .. } => 1);
            both!(Beta { .. }, BetaPrime { .. } => 0);
            both!(BetaPrime { .. }, VarWire { .. } => 4);
            both!(Beta { .. }, VarWire { .. } => 0);
            both!(Beta { .. } | BetaPrime { .. }, Alpha { .. } | AlphaPrime { .. } => 0);
        } else {
            // Cross-variable pairs, phrased for the gadget of the larger
            // index moving through the gadget of the smaller one.
            let (hi, lo) = if va > vb { (a, b) } else { (b, a) };
            macro_rules! cross {
                ($pat_hi:pat, $pat_lo:pat => $value:expr) => {
                    if matches!(hi, $pat_hi) && matches!(lo, $pat_lo) {
                        return $value;
                    }
                };
            }
            cross!(Alpha { .. } | AlphaPrime { .. }, _ => 2);
            cross!(Beta { .. }, AlphaPrime { .. } | Beta { .. } | Alpha { .. } => 2);
            cross!(Beta { .. }, BetaPrime { .. } | VarWire { .. } => 0);
            cross!(BetaPrime { .. }, Alpha { .. } | AlphaPrime { .. } | BetaPrime { .. } => 2);
            cross!(BetaPrime { .. }, VarWire { .. } => 2);
            cross!(BetaPrime { .. }, Beta { .. } => 0);
            cross!(VarWire { .. }, VarWire { .. } => vv.count());
            cross!(VarWire { .. }, Alpha { .. } | AlphaPrime { .. } | BetaPrime { .. } => 6);
            cross!(VarWire { .. }, Beta { .. } => 0);
        }
    }

    // Pairs inside one clause gadget.
    if let (Some(ca), Some(cb)) = (clause_of(a), clause_of(b)) {
        if ca == cb {
            both!(Gamma { .. }, ClauseWire { .. } => 2);
            both!(Psi { index, .. }, ClauseWire { .. } => if index == 2 { 0 } else { 2 });
            if let (Some(oa), Some(ob)) = (occurrence_of(a), occurrence_of(b)) {
                if oa == ob {
                    both!(Psi { .. }, Psi { .. } => 1);
                    both!(Psi { .. }, Gamma { .. } => 0);
                } else {
                    // The group of the later occurrence crosses the earlier
                    // one: its protector eight times per wire, its psi wires
                    // twice per wire.
                    let hi = if oa > ob { a } else { b };
                    match hi {
                        Gamma { .. } => return 8,
                        Psi { .. } => return 2,
                        _ => unreachable!("occurrence wires are gamma or psi"),
                    }
                }
            }
        } else {
            // Gadgets of different clauses never swap with each other.
            return 0;
        }
    }

    // Clause wires against variable gadgets: the designated meetings...
    if let (ClauseWire { clause }, VarWire { var }) | (VarWire { var }, ClauseWire { clause }) =
        (a, b)
    {
        let members = formula.clauses()[clause as usize - 1];
        return if members.contains(&var) { 2 } else { 0 };
    }
    if let (Psi { clause, occ, index }, VarWire { var })
    | (VarWire { var }, Psi { clause, occ, index }) = (a, b)
    {
        let kth = formula.clauses()[clause as usize - 1][occ as usize - 1];
        return if index == 2 && kth == var { 2 } else { 0 };
    }
    both!(ClauseWire { .. } | Gamma { .. } | Psi { .. }, VarWire { .. } => 0);

    // ...and the blanket crossings: every wire of C passes every wire of V
    // and every alpha' twice; beta' wires are never entered.
    both!(
        ClauseWire { .. } | Gamma { .. } | Psi { .. },
        Beta { .. } | Alpha { .. } | AlphaPrime { .. } => 2
    );
    both!(ClauseWire { .. } | Gamma { .. } | Psi { .. }, BetaPrime { .. } => 0);

    0
}

fn variable_of(role: GadgetRole) -> Option<u32> {
    match role {
        GadgetRole::Beta { var, .. }
        | GadgetRole::Alpha { var }
        | GadgetRole::AlphaPrime { var }
        | GadgetRole::BetaPrime { var, .. }
        | GadgetRole::VarWire { var } => Some(var),
        _ => None,
    }
}

fn clause_of(role: GadgetRole) -> Option<u32> {
    match role {
        GadgetRole::Psi { clause, .. }
        | GadgetRole::Gamma { clause, .. }
        | GadgetRole::ClauseWire { clause } => Some(clause),
        _ => None,
    }
}

fn occurrence_of(role: GadgetRole) -> Option<u8> {
    match role {
        GadgetRole::Psi { occ, .. } | GadgetRole::Gamma { occ, .. } => Some(occ),
        _ => None,
    }
}

/// A reduction instance: the swap list plus the role of every wire.
#[derive(Clone, Debug)]
pub struct ReductionInstance {
    pub list: SwapList,
    pub gadget_map: GadgetMap,
}

/// Builds the reduction list for a formula with the default eight swaps per
/// variable-wire pair.
pub fn build_list(formula: &PositiveDiffFormula) -> ReductionInstance {
    build_list_with(formula, VariablePairSwaps::default())
}

pub fn build_list_with(formula: &PositiveDiffFormula, vv: VariablePairSwaps) -> ReductionInstance {
    let map = GadgetMap::layout(formula.vars(), formula.clauses().len() as u32);
    let total = map.wire_count();
    let mut list = SwapList::empty(total).expect("at least lambda and lambda'");
    for i in 1..=total {
        let a = WireId::new(i, total).unwrap();
        for j in (i + 1)..=total {
            let b = WireId::new(j, total).unwrap();
            let count = pair_multiplicity(map.role_of(a), map.role_of(b), formula, vv);
            if count > 0 {
                list.set_count(a, b, count);
            }
        }
    }
    ReductionInstance {
        list,
        gadget_map: map,
    }
}

impl ReductionInstance {
    /// List text format preceded by one `# role <wire> <name>` comment per wire.
    pub fn to_text(&self) -> String {
        use std::fmt::Write as _;
        let mut out = String::new();
        for (wire, role) in self.gadget_map.roles() {
            writeln!(out, "# role {wire} {role}").unwrap();
        }
        out.push_str(&crate::formats::write_list(&self.list));
        out
    }
}
