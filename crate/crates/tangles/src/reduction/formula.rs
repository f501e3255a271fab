//! Not-All-Equal 3-SAT formulas, the positive distinct-variable normal form,
//! and a brute-force satisfiability oracle.
//!
//! The normal form transformation replaces each variable v by a positive
//! pair x (for v) and y (for not v), linked by the clause (x or y or y),
//! and eliminates repeated variables inside a clause by the shared-triple
//! trick: with fresh variables a, b, d constrained by the clause
//! (a or b or d), a clause (x or x or y) becomes the three clauses
//! (x or y or a), (x or y or b), (x or y or d), which hold exactly when
//! x differs from y. NAE-satisfiability is preserved exactly.

use std::fmt;
use std::fmt::Write as _;

use rayon::prelude::*;
use thiserror::Error;

/// Above this many variables the 2^n enumeration is refused.
pub const MAX_BRUTE_FORCE_VARS: u32 = 26;

/// One literal: a 1-based variable with a polarity.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Lit {
    pub var: u32,
    pub positive: bool,
}

impl Lit {
    pub fn pos(var: u32) -> Self {
        Lit { var, positive: true }
    }

    pub fn neg(var: u32) -> Self {
        Lit {
            var,
            positive: false,
        }
    }

    /// DIMACS-style signed integer encoding.
    pub fn code(self) -> i64 {
        if self.positive {
            self.var as i64
        } else {
            -(self.var as i64)
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormulaError {
    #[error("variable {var} out of range for {vars} variables")]
    VarOutOfRange { var: u32, vars: u32 },
    #[error("clause {clause} repeats variable {var}")]
    RepeatedVariable { clause: usize, var: u32 },
    #[error("clause {clause} contains a negative literal")]
    NegativeLiteral { clause: usize },
    #[error("{0} variables exceed the brute-force cap of {MAX_BRUTE_FORCE_VARS}")]
    TooManyVariables(u32),
}

/// A Not-All-Equal 3-SAT formula: three literals per clause, repeats allowed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NaeFormula {
    vars: u32,
    clauses: Vec<[Lit; 3]>,
}

impl NaeFormula {
    pub fn new(vars: u32, clauses: Vec<[Lit; 3]>) -> Result<Self, FormulaError> {
        for clause in &clauses {
            for lit in clause {
                if lit.var == 0 || lit.var > vars {
                    return Err(FormulaError::VarOutOfRange {
                        var: lit.var,
                        vars,
                    });
                }
            }
        }
        Ok(NaeFormula { vars, clauses })
    }

    pub fn vars(&self) -> u32 {
        self.vars
    }

    pub fn clauses(&self) -> &[[Lit; 3]] {
        &self.clauses
    }
}

/// The positive normal form: all literals positive and, in every clause,
/// three different variables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PositiveDiffFormula {
    vars: u32,
    clauses: Vec<[u32; 3]>,
}

impl PositiveDiffFormula {
    pub fn new(vars: u32, clauses: Vec<[u32; 3]>) -> Result<Self, FormulaError> {
        for (index, clause) in clauses.iter().enumerate() {
            for &var in clause {
                if var == 0 || var > vars {
                    return Err(FormulaError::VarOutOfRange { var, vars });
                }
            }
            for (a, b) in [(0, 1), (0, 2), (1, 2)] {
                if clause[a] == clause[b] {
                    return Err(FormulaError::RepeatedVariable {
                        clause: index + 1,
                        var: clause[a],
                    });
                }
            }
        }
        Ok(PositiveDiffFormula { vars, clauses })
    }

    pub fn vars(&self) -> u32 {
        self.vars
    }

    pub fn clauses(&self) -> &[[u32; 3]] {
        &self.clauses
    }
}

/// A total truth assignment, indexed by variable.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Assignment(Vec<bool>);

impl Assignment {
    pub fn new(values: Vec<bool>) -> Self {
        Assignment(values)
    }

    /// Decodes the `index`-th assignment in lexicographic order, where
    /// variable 1 is the most significant digit and false sorts first.
    pub fn from_rank(rank: u64, vars: u32) -> Self {
        let values = (0..vars)
            .map(|i| rank >> (vars - 1 - i) & 1 == 1)
            .collect();
        Assignment(values)
    }

    pub fn get(&self, var: u32) -> bool {
        self.0[var as usize - 1]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[bool] {
        &self.0
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}{}", if v { "" } else { "-" }, i + 1)?;
        }
        Ok(())
    }
}

/// Anything a truth assignment can NAE-satisfy.
pub trait NaeProblem {
    fn var_count(&self) -> u32;

    /// Index of the first clause whose three literals evaluate equal, if any.
    fn monochromatic_clause(&self, assignment: &Assignment) -> Option<usize>;

    fn nae_satisfied(&self, assignment: &Assignment) -> bool {
        self.monochromatic_clause(assignment).is_none()
    }
}

impl NaeProblem for NaeFormula {
    fn var_count(&self) -> u32 {
        self.vars
    }

    fn monochromatic_clause(&self, assignment: &Assignment) -> Option<usize> {
        self.clauses.iter().position(|clause| {
            let value = |lit: Lit| assignment.get(lit.var) == lit.positive;
            let (a, b, c) = (value(clause[0]), value(clause[1]), value(clause[2]));
            a == b && b == c
        })
    }
}

impl NaeProblem for PositiveDiffFormula {
    fn var_count(&self) -> u32 {
        self.vars
    }

    fn monochromatic_clause(&self, assignment: &Assignment) -> Option<usize> {
        self.clauses.iter().position(|clause| {
            let (a, b, c) = (
                assignment.get(clause[0]),
                assignment.get(clause[1]),
                assignment.get(clause[2]),
            );
            a == b && b == c
        })
    }
}

/// Enumerates assignments and returns the lexicographically first one under
/// which no clause is monochromatic, or `None` when the formula is
/// NAE-unsatisfiable.
///
/// Large instances are split across threads; `find_first` keeps the returned
/// witness the lexicographic first either way.
pub fn brute_force_nae<F: NaeProblem + Sync>(
    formula: &F,
) -> Result<Option<Assignment>, FormulaError> {
    let vars = formula.var_count();
    if vars > MAX_BRUTE_FORCE_VARS {
        return Err(FormulaError::TooManyVariables(vars));
    }
    let space = 1u64 << vars;
    let witness = if vars >= 18 {
        (0..space)
            .into_par_iter()
            .find_first(|&rank| formula.nae_satisfied(&Assignment::from_rank(rank, vars)))
    } else {
        (0..space).find(|&rank| formula.nae_satisfied(&Assignment::from_rank(rank, vars)))
    };
    Ok(witness.map(|rank| Assignment::from_rank(rank, vars)))
}

/// Where the variables of a transformed formula came from.
#[derive(Clone, Debug)]
pub struct DiffTrace {
    /// Output variable standing for each input variable.
    pub x: Vec<u32>,
    /// Output variable standing for each negated input variable.
    pub y: Vec<u32>,
    /// The shared triple constrained by the clause (a or b or d).
    pub a: u32,
    pub b: u32,
    pub d: u32,
    /// Helper variable introduced when some clause repeats one literal three
    /// times; such a clause is unsatisfiable and is rewritten into the two
    /// clauses (l or l or m) and (l or l or not m) before the main pass.
    pub helper: Option<u32>,
}

/// Transforms an arbitrary NAE 3-SAT formula into the positive
/// distinct-variable form, preserving NAE-satisfiability exactly.
///
/// Every occurrence of v becomes x_v, every occurrence of not v becomes
/// y_v, and the link clause (x_v or y_v or y_v) forces the two apart. Link
/// clauses repeat a variable by construction, so they are expanded through
/// the shared a/b/d triple just like any mapped clause with a repeat.
pub fn to_positive_diff(formula: &NaeFormula) -> (PositiveDiffFormula, DiffTrace) {
    let mut work: Vec<[Lit; 3]> = Vec::with_capacity(formula.clauses.len());
    let mut helper = None;
    for clause in &formula.clauses {
        if clause[0] == clause[1] && clause[1] == clause[2] {
            let m = *helper.get_or_insert(formula.vars + 1);
            work.push([clause[0], clause[1], Lit::pos(m)]);
            work.push([clause[0], clause[1], Lit::neg(m)]);
        } else {
            work.push(*clause);
        }
    }
    let source_vars = formula.vars + u32::from(helper.is_some());

    // Output numbering: x_1..x_k, y_1..y_k, then a, b, d.
    let x = |var: u32| var;
    let y = |var: u32| source_vars + var;
    let a = 2 * source_vars + 1;
    let b = 2 * source_vars + 2;
    let d = 2 * source_vars + 3;

    let mut mapped: Vec<[u32; 3]> = work
        .iter()
        .map(|clause| clause.map(|lit| if lit.positive { x(lit.var) } else { y(lit.var) }))
        .collect();
    for var in 1..=source_vars {
        mapped.push([x(var), y(var), y(var)]);
    }

    let mut clauses = Vec::with_capacity(mapped.len() + 1);
    for clause in mapped {
        match repeated_pair(clause) {
            Some((repeated, other)) => {
                for fresh in [a, b, d] {
                    clauses.push([repeated, other, fresh]);
                }
            }
            None => clauses.push(clause),
        }
    }
    clauses.push([a, b, d]);

    let trace = DiffTrace {
        x: (1..=source_vars).map(x).collect(),
        y: (1..=source_vars).map(y).collect(),
        a,
        b,
        d,
        helper: helper.map(|_| source_vars),
    };
    let out = PositiveDiffFormula::new(2 * source_vars + 3, clauses)
        .expect("transformation yields positive distinct clauses");
    (out, trace)
}

/// For a clause with exactly two occurrences of one variable, returns
/// (repeated, other). Three equal variables cannot occur here: the helper
/// pre-pass removed triple literals, and x/y namespaces never collide.
fn repeated_pair(clause: [u32; 3]) -> Option<(u32, u32)> {
    let [p, q, r] = clause;
    if p == q && q == r {
        unreachable!("triple repeats are rewritten before mapping");
    }
    if p == q {
        Some((p, r))
    } else if p == r {
        Some((p, q))
    } else if q == r {
        Some((q, p))
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// DIMACS-flavored text format: `p nae3 <vars> <clauses>` header, one clause
// per line as three signed integers terminated by 0, `c` comment lines.
// ---------------------------------------------------------------------------

#[derive(Debug, Error)]
pub enum DimacsError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Formula(#[from] FormulaError),
}

pub fn parse_nae(text: &str) -> Result<NaeFormula, DimacsError> {
    let syntax = |line: usize, message: &str| DimacsError::Syntax {
        line,
        message: message.to_string(),
    };
    let mut header: Option<(u32, u64)> = None;
    let mut clauses = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('#') {
            continue;
        }
        if header.is_none() {
            let mut tokens = line.split_whitespace();
            if tokens.next() != Some("p") || tokens.next() != Some("nae3") {
                return Err(syntax(line_no, "expected `p nae3 <vars> <clauses>` header"));
            }
            let vars = tokens
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| syntax(line_no, "expected variable count"))?;
            let count = tokens
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| syntax(line_no, "expected clause count"))?;
            header = Some((vars, count));
            continue;
        }
        let codes: Vec<i64> = line
            .split_whitespace()
            .map(|t| {
                t.parse::<i64>()
                    .map_err(|_| syntax(line_no, &format!("bad literal `{t}`")))
            })
            .collect::<Result<_, _>>()?;
        if codes.len() != 4 || codes[3] != 0 {
            return Err(syntax(
                line_no,
                "expected exactly three literals and a 0 terminator",
            ));
        }
        let mut lits = [Lit::pos(1); 3];
        for (slot, &code) in lits.iter_mut().zip(&codes[..3]) {
            if code == 0 {
                return Err(syntax(line_no, "literal 0 is reserved for the terminator"));
            }
            *slot = Lit {
                var: code.unsigned_abs() as u32,
                positive: code > 0,
            };
        }
        clauses.push(lits);
    }
    let (vars, declared) = header.ok_or_else(|| DimacsError::Syntax {
        line: text.lines().count(),
        message: "missing `p nae3` header".to_string(),
    })?;
    if clauses.len() as u64 != declared {
        return Err(DimacsError::Syntax {
            line: text.lines().count(),
            message: format!("header declares {declared} clauses, found {}", clauses.len()),
        });
    }
    Ok(NaeFormula::new(vars, clauses)?)
}

pub fn parse_positive_diff(text: &str) -> Result<PositiveDiffFormula, DimacsError> {
    let nae = parse_nae(text)?;
    let mut clauses = Vec::with_capacity(nae.clauses().len());
    for (index, clause) in nae.clauses().iter().enumerate() {
        if clause.iter().any(|lit| !lit.positive) {
            return Err(FormulaError::NegativeLiteral { clause: index + 1 }.into());
        }
        clauses.push([clause[0].var, clause[1].var, clause[2].var]);
    }
    Ok(PositiveDiffFormula::new(nae.vars(), clauses)?)
}

pub fn write_nae(formula: &NaeFormula) -> String {
    let mut out = String::new();
    writeln!(out, "p nae3 {} {}", formula.vars(), formula.clauses().len()).unwrap();
    for clause in formula.clauses() {
        writeln!(
            out,
            "{} {} {} 0",
            clause[0].code(),
            clause[1].code(),
            clause[2].code()
        )
        .unwrap();
    }
    out
}

pub fn write_positive_diff(formula: &PositiveDiffFormula) -> String {
    let mut out = String::new();
    writeln!(out, "p nae3 {} {}", formula.vars(), formula.clauses().len()).unwrap();
    for clause in formula.clauses() {
        writeln!(out, "{} {} {} 0", clause[0], clause[1], clause[2]).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nae(vars: u32, clauses: &[[i64; 3]]) -> NaeFormula {
        let lits = clauses
            .iter()
            .map(|c| {
                c.map(|code| Lit {
                    var: code.unsigned_abs() as u32,
                    positive: code > 0,
                })
            })
            .collect();
        NaeFormula::new(vars, lits).unwrap()
    }

    #[test]
    fn single_positive_clause_is_satisfiable() {
        let f = nae(3, &[[1, 2, 3]]);
        let witness = brute_force_nae(&f).unwrap().unwrap();
        assert!(f.nae_satisfied(&witness));
        // lexicographic first: variable 1 false, 2 false, 3 true
        assert_eq!(witness.values(), &[false, false, true]);
    }

    #[test]
    fn triple_repeat_is_unsatisfiable() {
        let f = nae(1, &[[1, 1, 1]]);
        assert!(brute_force_nae(&f).unwrap().is_none());
    }

    #[test]
    fn two_clause_example_is_satisfiable() {
        let f = nae(3, &[[1, 2, 3], [1, 2, -3]]);
        assert!(brute_force_nae(&f).unwrap().is_some());
    }

    #[test]
    fn brute_force_refuses_huge_formulas() {
        let f = NaeFormula::new(27, vec![]).unwrap();
        assert_eq!(
            brute_force_nae(&f).unwrap_err(),
            FormulaError::TooManyVariables(27)
        );
    }

    /// 18 variables crosses the threading threshold; the witness must still
    /// be the lexicographically first assignment.
    #[test]
    fn parallel_brute_force_keeps_lexicographic_first_witness() {
        let f = PositiveDiffFormula::new(18, vec![[1, 2, 3]]).unwrap();
        let witness = brute_force_nae(&f).unwrap().unwrap();
        let mut expected = vec![false; 18];
        expected[2] = true; // all-false fails, flipping variable 3 is the first fix
        assert_eq!(witness.values(), expected.as_slice());
    }

    #[test]
    fn transformation_of_three_var_clause_counts() {
        let (g, trace) = to_positive_diff(&nae(3, &[[1, 2, -3]]));
        // x1..x3, y1..y3, a, b, d
        assert_eq!(g.vars(), 9);
        // 1 mapped clause + 3 expansions per link clause + (a b d)
        assert_eq!(g.clauses().len(), 11);
        assert_eq!(g.clauses()[0], [1, 2, 6]);
        assert_eq!(g.clauses().last(), Some(&[7, 8, 9]));
        assert_eq!((trace.a, trace.b, trace.d), (7, 8, 9));
        assert_eq!(trace.helper, None);
    }

    #[test]
    fn repeated_variable_expands_through_shared_triple() {
        let (g, trace) = to_positive_diff(&nae(2, &[[1, 1, 2]]));
        // mapped (x1 x1 x2) -> (x1 x2 a), (x1 x2 b), (x1 x2 d)
        assert_eq!(g.clauses()[0], [1, 2, trace.a]);
        assert_eq!(g.clauses()[1], [1, 2, trace.b]);
        assert_eq!(g.clauses()[2], [1, 2, trace.d]);
    }

    #[test]
    fn transformation_preserves_satisfiability_on_spot_checks() {
        let cases = [
            nae(3, &[[1, 2, 3]]),
            nae(1, &[[1, 1, 1]]),
            nae(1, &[[1, -1, 1]]),
            nae(2, &[[1, 1, 2], [1, 2, 2]]),
            nae(3, &[[1, 2, 3], [-1, -2, -3], [1, -2, 3]]),
            nae(2, &[[1, 1, 1], [2, 2, 2]]),
            nae(2, &[[-2, -2, -2]]),
        ];
        for f in cases {
            let (g, _) = to_positive_diff(&f);
            assert_eq!(
                brute_force_nae(&f).unwrap().is_some(),
                brute_force_nae(&g).unwrap().is_some(),
                "{f:?}"
            );
        }
    }

    #[test]
    fn triple_literal_clause_uses_helper_variable() {
        let (g, trace) = to_positive_diff(&nae(2, &[[1, 1, 1], [1, 2, 2]]));
        assert_eq!(trace.helper, Some(3));
        assert_eq!(g.vars(), 2 * 3 + 3);
        assert!(brute_force_nae(&g).unwrap().is_none());
    }

    #[test]
    fn dimacs_round_trip() {
        let f = nae(3, &[[1, 2, -3], [2, -1, 3]]);
        let text = write_nae(&f);
        assert_eq!(text, "p nae3 3 2\n1 2 -3 0\n2 -1 3 0\n");
        assert_eq!(parse_nae(&text).unwrap(), f);
    }

    #[test]
    fn dimacs_rejects_clause_count_mismatch() {
        assert!(matches!(
            parse_nae("p nae3 2 2\n1 2 1 0\n"),
            Err(DimacsError::Syntax { .. })
        ));
    }

    #[test]
    fn positive_diff_parser_rejects_negative_literal() {
        let err = parse_positive_diff("p nae3 3 1\n1 -2 3 0\n").unwrap_err();
        assert!(matches!(
            err,
            DimacsError::Formula(FormulaError::NegativeLiteral { clause: 1 })
        ));
    }

    #[test]
    fn positive_diff_parser_rejects_repeats() {
        let err = parse_positive_diff("p nae3 3 1\n1 1 3 0\n").unwrap_err();
        assert!(matches!(
            err,
            DimacsError::Formula(FormulaError::RepeatedVariable { clause: 1, var: 1 })
        ));
    }
}
