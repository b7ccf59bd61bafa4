//! DIMACS CNF encoding of "a good placement of exactly `q` queens exists on
//! the `n`-board".
//!
//! Variables, in id order:
//! - one queen variable per square, row-major;
//! - a witness `t(L, s)` for every line `L` with at least three squares and
//!   every square `s` on it, in (slope, intercept, square) order; `t(L, s)`
//!   implies two queens on `L` other than `s`;
//! - sequential-counter variables `R(i, j)`, meaning "at least `j` queens
//!   among the first `i` squares", for `j <= min(i, q)`.
//!
//! Clauses come in four groups: at-most-two per line triple, one
//! maximality clause per square, witness implications, and the counter.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::board::{BoardError, Line, Placement, Slope, Square};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CnfError {
    #[error("board size must be at least 1")]
    EmptyBoard,
    #[error("queen count {q} outside 1..={max}")]
    BadQueenCount { q: usize, max: usize },
    #[error("assignment has no value for variable {0}")]
    Unassigned(u32),
    #[error("literal {lit} outside 1..={num_vars}")]
    LiteralRange { lit: i64, num_vars: u32 },
    #[error("model sets {got} queens, instance wants {want}")]
    Cardinality { got: usize, want: usize },
    #[error("placement is on a {got}-board, instance is for {want}")]
    BoardMismatch { got: usize, want: usize },
    #[error("DIMACS line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Board(#[from] BoardError),
}

/// A positive variable id.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Var(pub u32);

impl Var {
    pub fn pos(self) -> i32 {
        self.0 as i32
    }

    pub fn neg(self) -> i32 {
        -(self.0 as i32)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClauseGroup {
    AtMostTwo,
    Maximality,
    Witness,
    Cardinality,
}

impl ClauseGroup {
    pub fn name(self) -> &'static str {
        match self {
            ClauseGroup::AtMostTwo => "at-most-two",
            ClauseGroup::Maximality => "maximality",
            ClauseGroup::Witness => "witness",
            ClauseGroup::Cardinality => "cardinality",
        }
    }
}

/// Where a clause came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClauseRef {
    /// 0-based position in the clause list.
    pub index: usize,
    pub group: ClauseGroup,
    /// The square a maximality clause belongs to.
    pub square: Option<Square>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfInstance {
    n: usize,
    q: usize,
    num_vars: u32,
    witnesses: Vec<(Line, Square, Var)>,
    counter_start: u32,
    counter: BTreeMap<(usize, usize), Var>,
    clauses: Vec<Vec<i32>>,
    groups: Vec<(ClauseGroup, usize, usize)>,
}

/// Builds the instance for `(n, q)`.
pub fn encode(n: usize, q: usize) -> Result<CnfInstance, CnfError> {
    if n == 0 {
        return Err(CnfError::EmptyBoard);
    }
    let cells = n * n;
    if q == 0 || q > cells {
        return Err(CnfError::BadQueenCount { q, max: cells });
    }
    let queen = |s: Square| Var(s.index(n) as u32 + 1);
    let mut next = cells as u32 + 1;

    let long_lines: Vec<(Line, Vec<Square>)> = Slope::ALL
        .iter()
        .flat_map(|&slope| {
            let span = if matches!(slope, Slope::Vertical | Slope::Horizontal) {
                0..n as i64
            } else if slope == Slope::DiagPlus {
                -(n as i64 - 1)..n as i64
            } else {
                0..2 * n as i64 - 1
            };
            span.map(move |c| Line::new(slope, c))
        })
        .map(|l| (l, l.squares(n)))
        .filter(|(_, sq)| sq.len() >= 3)
        .collect();

    let mut witnesses = Vec::new();
    let mut witness_of: BTreeMap<Square, Vec<Var>> = BTreeMap::new();
    for (line, squares) in &long_lines {
        for &s in squares {
            let v = Var(next);
            next += 1;
            witnesses.push((*line, s, v));
            witness_of.entry(s).or_default().push(v);
        }
    }

    let counter_start = next;
    let mut counter = BTreeMap::new();
    for i in 1..=cells {
        for j in 1..=i.min(q) {
            counter.insert((i, j), Var(next));
            next += 1;
        }
    }
    let num_vars = next - 1;

    let mut clauses: Vec<Vec<i32>> = Vec::new();
    let mut groups = Vec::new();
    let open = |g: ClauseGroup, clauses: &Vec<Vec<i32>>, groups: &mut Vec<(ClauseGroup, usize, usize)>| {
        if let Some(last) = groups.last_mut() {
            last.2 = clauses.len();
        }
        groups.push((g, clauses.len(), clauses.len()));
    };

    open(ClauseGroup::AtMostTwo, &clauses, &mut groups);
    for (_, squares) in &long_lines {
        let m = squares.len();
        for a in 0..m {
            for b in a + 1..m {
                for c in b + 1..m {
                    clauses.push(vec![queen(squares[a]).neg(), queen(squares[b]).neg(), queen(squares[c]).neg()]);
                }
            }
        }
    }

    open(ClauseGroup::Maximality, &clauses, &mut groups);
    for i in 0..cells {
        let s = Square::from_index(i, n);
        let mut clause = vec![queen(s).pos()];
        clause.extend(witness_of.get(&s).into_iter().flatten().map(|v| v.pos()));
        clauses.push(clause);
    }

    open(ClauseGroup::Witness, &clauses, &mut groups);
    let mut witness_iter = witnesses.iter();
    for (_, squares) in &long_lines {
        for &s in squares {
            let t = witness_iter.next().expect("one witness per line square").2;
            let others: Vec<Square> = squares.iter().copied().filter(|&o| o != s).collect();
            for drop in 0..others.len() {
                let mut clause = vec![t.neg()];
                clause.extend(others.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &o)| queen(o).pos()));
                clauses.push(clause);
            }
        }
    }

    open(ClauseGroup::Cardinality, &clauses, &mut groups);
    let r = |i: usize, j: usize| counter[&(i, j)];
    for i in 1..=cells {
        let x = Var(i as u32);
        for j in 1..=i.min(q) {
            let rij = r(i, j);
            if j < i {
                clauses.push(vec![r(i - 1, j).neg(), rij.pos()]);
            }
            if j == 1 {
                clauses.push(vec![x.neg(), rij.pos()]);
            } else {
                clauses.push(vec![x.neg(), r(i - 1, j - 1).neg(), rij.pos()]);
            }
            if j < i {
                clauses.push(vec![rij.neg(), r(i - 1, j).pos(), x.pos()]);
            } else {
                clauses.push(vec![rij.neg(), x.pos()]);
            }
            if j > 1 {
                if j < i {
                    clauses.push(vec![rij.neg(), r(i - 1, j).pos(), r(i - 1, j - 1).pos()]);
                } else {
                    clauses.push(vec![rij.neg(), r(i - 1, j - 1).pos()]);
                }
            }
        }
        if q < i {
            clauses.push(vec![x.neg(), r(i - 1, q).neg()]);
        }
    }
    clauses.push(vec![r(cells, q).pos()]);
    if let Some(last) = groups.last_mut() {
        last.2 = clauses.len();
    }

    Ok(CnfInstance { n, q, num_vars, witnesses, counter_start, counter, clauses, groups })
}

impl CnfInstance {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }

    pub fn queen_var(&self, s: Square) -> Var {
        Var(s.index(self.n) as u32 + 1)
    }

    pub fn witness_vars(&self) -> &[(Line, Square, Var)] {
        &self.witnesses
    }

    pub fn group_ranges(&self) -> &[(ClauseGroup, usize, usize)] {
        &self.groups
    }

    pub fn clause_ref(&self, index: usize) -> ClauseRef {
        let &(group, start, _) = self.groups.iter().find(|&&(_, a, b)| (a..b).contains(&index)).expect("clause in a group");
        let square = (group == ClauseGroup::Maximality).then(|| Square::from_index(index - start, self.n));
        ClauseRef { index, group, square }
    }

    /// Queen variables from the placement, auxiliaries derived from them.
    pub fn assignment_for(&self, p: &Placement) -> Result<Assignment, CnfError> {
        if p.n() != self.n {
            return Err(CnfError::BoardMismatch { got: p.n(), want: self.n });
        }
        let mut values = vec![Some(false); self.num_vars as usize];
        for &s in p.queens() {
            values[self.queen_var(s).0 as usize - 1] = Some(true);
        }
        for (line, s, v) in &self.witnesses {
            let others = line.squares(self.n).into_iter().filter(|o| o != s && p.contains(*o)).count();
            values[v.0 as usize - 1] = Some(others >= 2);
        }
        let mut seen = 0;
        for i in 1..=self.n * self.n {
            if p.contains(Square::from_index(i - 1, self.n)) {
                seen += 1;
            }
            for j in 1..=i.min(self.q) {
                values[self.counter[&(i, j)].0 as usize - 1] = Some(seen >= j);
            }
        }
        Ok(Assignment(values))
    }

    /// Indices of unsatisfied clauses.
    pub fn violations(&self, a: &Assignment) -> Result<Vec<ClauseRef>, CnfError> {
        a.require_total(self.num_vars)?;
        Ok(self
            .clauses
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.iter().any(|&lit| a.satisfies(lit)))
            .map(|(i, _)| self.clause_ref(i))
            .collect())
    }

    pub fn check_assignment(&self, a: &Assignment) -> Result<bool, CnfError> {
        Ok(self.violations(a)?.is_empty())
    }

    pub fn first_violation(&self, a: &Assignment) -> Result<Option<ClauseRef>, CnfError> {
        Ok(self.violations(a)?.into_iter().next())
    }

    /// The placement given by a model's true queen variables.
    pub fn decode_model(&self, model: &[i32]) -> Result<Placement, CnfError> {
        let a = Assignment::from_literals(model, self.num_vars)?;
        let cells = self.n * self.n;
        let mut queens = Vec::new();
        for i in 0..cells {
            match a.0[i] {
                None => return Err(CnfError::Unassigned(i as u32 + 1)),
                Some(true) => queens.push(Square::from_index(i, self.n)),
                Some(false) => {}
            }
        }
        if queens.len() != self.q {
            return Err(CnfError::Cardinality { got: queens.len(), want: self.q });
        }
        Ok(Placement::new(self.n, queens)?)
    }

    /// DIMACS text; identical for identical `(n, q)`.
    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        let cells = self.n * self.n;
        let _ = writeln!(out, "c good placement, exactly q queens, no three on a line");
        let _ = writeln!(out, "c n {} q {}", self.n, self.q);
        for i in 0..cells {
            let s = Square::from_index(i, self.n);
            let _ = writeln!(out, "c var {} = queen {},{}", i + 1, s.col, s.row);
        }
        if let (Some(first), Some(last)) = (self.witnesses.first(), self.witnesses.last()) {
            let _ = writeln!(out, "c vars {}..{} witness", first.2 .0, last.2 .0);
        }
        let _ = writeln!(out, "c vars {}..{} counter", self.counter_start, self.num_vars);
        for &(g, a, b) in &self.groups {
            if a < b {
                let _ = writeln!(out, "c group {} clauses {}..{}", g.name(), a + 1, b);
            }
        }
        let _ = writeln!(out, "p cnf {} {}", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            for lit in c {
                let _ = write!(out, "{lit} ");
            }
            out.push_str("0\n");
        }
        out
    }
}

/// Per-variable truth values, index `v - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment(pub Vec<Option<bool>>);

impl Assignment {
    pub fn all(num_vars: u32, value: bool) -> Self {
        Assignment(vec![Some(value); num_vars as usize])
    }

    /// Signed literals; unmentioned variables stay unassigned.
    pub fn from_literals(lits: &[i32], num_vars: u32) -> Result<Self, CnfError> {
        let mut values = vec![None; num_vars as usize];
        for &lit in lits {
            let v = lit.unsigned_abs();
            if lit == 0 || v > num_vars {
                return Err(CnfError::LiteralRange { lit: lit as i64, num_vars });
            }
            values[v as usize - 1] = Some(lit > 0);
        }
        Ok(Assignment(values))
    }

    pub fn get(&self, v: Var) -> Option<bool> {
        self.0.get(v.0 as usize - 1).copied().flatten()
    }

    pub fn set(&mut self, v: Var, value: bool) {
        self.0[v.0 as usize - 1] = Some(value);
    }

    fn require_total(&self, num_vars: u32) -> Result<(), CnfError> {
        match (0..num_vars as usize).find(|&i| self.0.get(i).copied().flatten().is_none()) {
            Some(i) => Err(CnfError::Unassigned(i as u32 + 1)),
            None => Ok(()),
        }
    }

    fn satisfies(&self, lit: i32) -> bool {
        self.0[lit.unsigned_abs() as usize - 1] == Some(lit > 0)
    }
}

/// A parsed DIMACS file, with the queen map read back from its comments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dimacs {
    pub num_vars: u32,
    pub clauses: Vec<Vec<i32>>,
    pub n: Option<usize>,
    pub q: Option<usize>,
    pub queen_vars: Vec<(u32, Square)>,
}

impl Dimacs {
    pub fn parse(text: &str) -> Result<Self, CnfError> {
        let err = |line: usize, msg: &str| CnfError::Parse { line, msg: msg.to_string() };
        let mut header = None;
        let mut clauses = Vec::new();
        let mut current = Vec::new();
        let (mut n, mut q) = (None, None);
        let mut queen_vars = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let no = no + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('c') {
                let words: Vec<&str> = comment.split_whitespace().collect();
                match words.as_slice() {
                    ["n", nv, "q", qv] => {
                        n = nv.parse().ok();
                        q = qv.parse().ok();
                    }
                    ["var", id, "=", "queen", at] => {
                        let id: u32 = id.parse().map_err(|_| err(no, "bad variable id"))?;
                        let (c, r) = at.split_once(',').ok_or_else(|| err(no, "bad queen square"))?;
                        let col = c.parse().map_err(|_| err(no, "bad column"))?;
                        let row = r.parse().map_err(|_| err(no, "bad row"))?;
                        queen_vars.push((id, Square::new(col, row)));
                    }
                    _ => {}
                }
                continue;
            }
            if let Some(rest) = line.strip_prefix("p ") {
                let words: Vec<&str> = rest.split_whitespace().collect();
                let ["cnf", v, c] = words.as_slice() else { return Err(err(no, "expected `p cnf <vars> <clauses>`")) };
                let v: u32 = v.parse().map_err(|_| err(no, "bad variable count"))?;
                let c: usize = c.parse().map_err(|_| err(no, "bad clause count"))?;
                header = Some((v, c));
                continue;
            }
            let Some((num_vars, _)) = header else { return Err(err(no, "clause before header")) };
            for tok in line.split_whitespace() {
                let lit: i64 = tok.parse().map_err(|_| err(no, "bad literal"))?;
                if lit == 0 {
                    clauses.push(std::mem::take(&mut current));
                } else if lit.unsigned_abs() > num_vars as u64 {
                    return Err(CnfError::LiteralRange { lit, num_vars });
                } else {
                    current.push(lit as i32);
                }
            }
        }
        let (num_vars, count) = header.ok_or_else(|| err(0, "missing header"))?;
        if !current.is_empty() {
            return Err(err(0, "last clause is not terminated"));
        }
        if clauses.len() != count {
            return Err(err(0, &format!("header says {count} clauses, body has {}", clauses.len())));
        }
        Ok(Dimacs { num_vars, clauses, n, q, queen_vars })
    }

    /// 0-based indices of clauses the model does not satisfy.
    pub fn unsatisfied(&self, a: &Assignment) -> Result<Vec<usize>, CnfError> {
        a.require_total(self.num_vars)?;
        Ok(self.clauses.iter().enumerate().filter(|(_, c)| !c.iter().any(|&l| a.satisfies(l))).map(|(i, _)| i).collect())
    }

    /// Placement of the true queen variables; needs the board size comment.
    pub fn decode(&self, a: &Assignment) -> Result<Placement, CnfError> {
        let n = self.n.ok_or_else(|| CnfError::Parse { line: 0, msg: "no `c n .. q ..` comment".into() })?;
        let mut queens = Vec::new();
        for &(id, s) in &self.queen_vars {
            match a.get(Var(id)) {
                None => return Err(CnfError::Unassigned(id)),
                Some(true) => queens.push(s),
                Some(false) => {}
            }
        }
        if let Some(q) = self.q {
            if queens.len() != q {
                return Err(CnfError::Cardinality { got: queens.len(), want: q });
            }
        }
        Ok(Placement::new(n, queens)?)
    }
}

/// A solver's answer: optional status line plus the literals of its `v` lines.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Model {
    pub status: Option<String>,
    pub literals: Vec<i32>,
}

/// Reads `s ...` and `v ...` lines; bare lines of integers count as `v` lines.
pub fn parse_model(text: &str) -> Result<Model, CnfError> {
    let mut m = Model::default();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if let Some(status) = line.strip_prefix("s ") {
            m.status = Some(status.trim().to_string());
            continue;
        }
        let body = line.strip_prefix('v').unwrap_or(line);
        for tok in body.split_whitespace() {
            let lit: i32 = tok.parse().map_err(|_| CnfError::Parse { line: no + 1, msg: format!("bad literal {tok:?}") })?;
            if lit != 0 {
                m.literals.push(lit);
            }
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn one_by_one() {
        let inst = encode(1, 1).unwrap();
        assert!(inst.check_assignment(&Assignment::all(inst.num_vars(), true)).unwrap());
        assert!(!inst.check_assignment(&Assignment::all(inst.num_vars(), false)).unwrap());
        let p = inst.decode_model(&[1, 2]).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(inst.decode_model(&[]), Err(CnfError::Unassigned(1)));
        assert_eq!(encode(1, 2).unwrap_err(), CnfError::BadQueenCount { q: 2, max: 1 });
        assert_eq!(encode(0, 1).unwrap_err(), CnfError::EmptyBoard);
    }

    #[test]
    fn partial_assignment_rejected() {
        let inst = encode(3, 2).unwrap();
        let a = Assignment::from_literals(&[1, -2], inst.num_vars()).unwrap();
        assert_eq!(inst.check_assignment(&a), Err(CnfError::Unassigned(3)));
    }

    #[test]
    fn figure_one_satisfies() {
        let inst = encode(9, 10).unwrap();
        let a = inst.assignment_for(&fixtures::figure1()).unwrap();
        assert_eq!(inst.violations(&a).unwrap(), vec![]);
        let lits: Vec<i32> = (1..=inst.num_vars()).map(|v| if a.get(Var(v)).unwrap() { v as i32 } else { -(v as i32) }).collect();
        assert_eq!(inst.decode_model(&lits).unwrap(), fixtures::figure1());
    }

    #[test]
    fn figure_three_fails_on_crosses() {
        let inst = encode(9, 9).unwrap();
        let p = fixtures::figure3();
        let a = inst.assignment_for(&p).unwrap();
        let bad = inst.violations(&a).unwrap();
        assert!(bad.iter().all(|c| c.group == ClauseGroup::Maximality));
        let squares: Vec<Square> = bad.iter().map(|c| c.square.unwrap()).collect();
        assert_eq!(squares, p.addable_squares().unwrap().into_iter().collect::<Vec<_>>());
        assert_eq!(squares.len(), 12);
    }

    #[test]
    fn wrong_cardinality_decode_fails() {
        let inst = encode(2, 3).unwrap();
        let lits: Vec<i32> = (1..=inst.num_vars() as i32).collect();
        assert_eq!(inst.decode_model(&lits), Err(CnfError::Cardinality { got: 4, want: 3 }));
    }

    #[test]
    fn dimacs_roundtrip() {
        let inst = encode(4, 4).unwrap();
        let text = inst.to_dimacs();
        assert_eq!(text, encode(4, 4).unwrap().to_dimacs());
        assert!(text.contains("c var 5 = queen 0,1\n"));
        let d = Dimacs::parse(&text).unwrap();
        assert_eq!(d.num_vars, inst.num_vars());
        assert_eq!(d.clauses, inst.clauses());
        assert_eq!((d.n, d.q), (Some(4), Some(4)));
        assert_eq!(d.queen_vars.len(), 16);
        assert!(Dimacs::parse("1 2 0\n").is_err());
        assert!(Dimacs::parse("p cnf 2 2\n1 2 0\n").is_err());
        assert!(Dimacs::parse("p cnf 2 1\n1 3 0\n").is_err());
    }

    #[test]
    fn model_parsing() {
        let m = parse_model("c hi\ns SATISFIABLE\nv 1 -2\nv 3 0\n").unwrap();
        assert_eq!(m.status.as_deref(), Some("SATISFIABLE"));
        assert_eq!(m.literals, vec![1, -2, 3]);
        assert_eq!(parse_model("1 -2 0").unwrap().literals, vec![1, -2]);
        assert!(parse_model("v x").is_err());
    }

    #[test]
    fn counter_tracks_prefix_counts() {
        let inst = encode(3, 2).unwrap();
        let p = Placement::new(3, [Square::new(1, 0), Square::new(2, 2)]).unwrap();
        let a = inst.assignment_for(&p).unwrap();
        let by_clause = inst.violations(&a).unwrap();
        assert!(by_clause.iter().all(|c| c.group == ClauseGroup::Maximality));
        let three = Placement::new(3, [Square::new(0, 0), Square::new(1, 0), Square::new(2, 2)]).unwrap();
        let bad = inst.violations(&inst.assignment_for(&three).unwrap()).unwrap();
        assert!(bad.iter().any(|c| c.group == ClauseGroup::Cardinality));
    }
}
