//! CNF encodings of the st-connectivity principle on the `(n+1) x (n+1)`
//! grid, with paths given as edge sets (`stconn`) or as indexed edge
//! sequences (`stseq`), plus a small exhaustive checker and a plain DPLL.
//!
//! Each formula is the negation of the tautology, so it should be
//! unsatisfiable. Dropping the non-intersection clauses makes it satisfiable.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{Color, Edge, EdgeSequence, EdgeSet, GridPoint, SequenceKind};

/// Largest formula the exhaustive checker accepts.
pub const MAX_EXHAUSTIVE_VARS: usize = 26;

pub const GENERATOR_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Stconn,
    Stseq,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Stconn => "stconn",
            Family::Stseq => "stseq",
        })
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Family> {
        match s {
            "stconn" => Ok(Family::Stconn),
            "stseq" => Ok(Family::Stseq),
            _ => Err(Error::Format(format!("unknown family {s:?}"))),
        }
    }
}

/// What a clause says, so weakened variants can drop whole groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClauseKind {
    /// Degree constraints at the four corners.
    Corner,
    /// Degree zero or two away from the corners.
    Degree,
    /// No point touches both colors.
    NoIntersection,
    /// At most one edge per position.
    Position,
    /// First edge leaves the start corner.
    Start,
    /// Consecutive edges share a point, and the last one reaches the end corner.
    Chain,
    /// Empty positions only at the end.
    Padding,
}

impl FromStr for ClauseKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<ClauseKind> {
        match s {
            "no-intersection" => Ok(ClauseKind::NoIntersection),
            "corner" => Ok(ClauseKind::Corner),
            "degree" => Ok(ClauseKind::Degree),
            "position" => Ok(ClauseKind::Position),
            "start" => Ok(ClauseKind::Start),
            "chain" => Ok(ClauseKind::Chain),
            "padding" => Ok(ClauseKind::Padding),
            _ => Err(Error::Format(format!("unknown clause group {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CnfFormula {
    pub family: Family,
    pub n: u32,
    pub num_vars: usize,
    pub clauses: Vec<Vec<i32>>,
    /// Group of each clause, parallel to `clauses`.
    pub kinds: Vec<ClauseKind>,
    /// `var_map[v - 1]` describes variable `v`.
    pub var_map: Vec<String>,
    /// Groups removed by [`CnfFormula::weaken`].
    pub dropped: Vec<ClauseKind>,
}

/// Index of an edge slot: horizontal slots row by row, then vertical ones.
pub fn slot_index(n: u32, e: &Edge) -> usize {
    let (n, a) = (n as usize, e.a());
    if e.is_horizontal() {
        a.y as usize * n + a.x as usize
    } else {
        n * (n + 1) + a.y as usize * (n + 1) + a.x as usize
    }
}

pub fn slot_count(n: u32) -> usize {
    2 * n as usize * (n as usize + 1)
}

pub fn slots(n: u32) -> Vec<Edge> {
    let mut v: Vec<Edge> = Vec::with_capacity(slot_count(n));
    for y in 0..=n {
        v.extend((0..n).map(|x| Edge::horizontal(x, y)));
    }
    for y in 0..n {
        v.extend((0..=n).map(|x| Edge::vertical(x, y)));
    }
    v
}

fn incident(n: u32, p: GridPoint) -> Vec<usize> {
    p.neighbors(n)
        .into_iter()
        .map(|q| slot_index(n, &Edge::new(p, q).expect("neighbors are adjacent")))
        .collect()
}

/// A STCONN variable: edge slot and color.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StconnVar {
    pub edge: Edge,
    pub color: Color,
}

/// A STSEQ variable: edge slot, color and position `1..=n^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StseqVar {
    pub edge: Edge,
    pub color: Color,
    pub position: usize,
}

pub fn stconn_var(n: u32, v: StconnVar) -> i32 {
    (2 * slot_index(n, &v.edge) + v.color.index() + 1) as i32
}

pub fn stseq_var(n: u32, v: StseqVar) -> i32 {
    let slot = (v.position - 1) * slot_count(n) + slot_index(n, &v.edge);
    (2 * slot + v.color.index() + 1) as i32
}

fn corners(n: u32) -> [(GridPoint, Color); 4] {
    [
        (GridPoint::new(0, n), Color::Blue),
        (GridPoint::new(n, 0), Color::Blue),
        (GridPoint::new(0, 0), Color::Red),
        (GridPoint::new(n, n), Color::Red),
    ]
}

fn combos(k: usize, r: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return vec![vec![]];
    }
    (0..k)
        .flat_map(|i| {
            combos(i, r - 1).into_iter().map(move |mut c| {
                c.push(i);
                c
            })
        })
        .collect()
}

struct Builder {
    clauses: Vec<Vec<i32>>,
    kinds: Vec<ClauseKind>,
}

impl Builder {
    fn push(&mut self, kind: ClauseKind, clause: Vec<i32>) {
        debug_assert!(!clause.is_empty());
        self.clauses.push(clause);
        self.kinds.push(kind);
    }

    /// Degree of the literals `xs` is 0 or 2.
    fn zero_or_two(&mut self, kind: ClauseKind, xs: &[i32]) {
        for (i, &x) in xs.iter().enumerate() {
            let mut c = vec![-x];
            c.extend(xs.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &y)| y));
            self.push(kind, c);
        }
        for c in combos(xs.len(), 3) {
            self.push(kind, c.iter().map(|&i| -xs[i]).collect());
        }
    }

    fn exactly_one(&mut self, kind: ClauseKind, xs: &[i32]) {
        self.push(kind, xs.to_vec());
        for c in combos(xs.len(), 2) {
            self.push(kind, c.iter().map(|&i| -xs[i]).collect());
        }
    }
}

/// Negation of STCONN(n): blue has degree one at `(0,n)` and `(n,0)`, red
/// at `(0,0)` and `(n,n)`, the other color is absent there, all other points
/// have degree 0 or 2 in each color and touch at most one color.
pub fn gen_stconn(n: u32) -> Result<CnfFormula> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let var = |slot: usize, c: Color| (2 * slot + c.index() + 1) as i32;
    let mut b = Builder { clauses: vec![], kinds: vec![] };
    let corner_pts = corners(n);
    for y in 0..=n {
        for x in 0..=n {
            let p = GridPoint::new(x, y);
            let inc = incident(n, p);
            let of = |c: Color| inc.iter().map(|&s| var(s, c)).collect::<Vec<_>>();
            if let Some(&(_, color)) = corner_pts.iter().find(|(q, _)| *q == p) {
                b.exactly_one(ClauseKind::Corner, &of(color));
                let other = if color == Color::Blue { Color::Red } else { Color::Blue };
                for v in of(other) {
                    b.push(ClauseKind::Corner, vec![-v]);
                }
                continue;
            }
            for c in Color::ALL {
                b.zero_or_two(ClauseKind::Degree, &of(c));
            }
            for &bv in &of(Color::Blue) {
                for &rv in &of(Color::Red) {
                    b.push(ClauseKind::NoIntersection, vec![-bv, -rv]);
                }
            }
        }
    }
    let var_map = slots(n)
        .iter()
        .flat_map(|e| Color::ALL.map(|c| format!("{c} {e}")))
        .collect();
    Ok(CnfFormula {
        family: Family::Stconn,
        n,
        num_vars: 2 * slot_count(n),
        clauses: b.clauses,
        kinds: b.kinds,
        var_map,
        dropped: vec![],
    })
}

/// Closed-form clause count of [`gen_stconn`].
pub fn stconn_clause_count(n: u32) -> usize {
    let m = n as usize - 1;
    16 + 68 * m + 32 * m * m
}

/// Negation of STSEQ(n): position `i` of each color holds at most one edge,
/// the first blue edge touches `(0,n)` and the first red edge `(0,0)`,
/// consecutive edges share a point, empty positions form a suffix, the path
/// stops at the first edge touching `(n,0)` (blue) or `(n,n)` (red), and
/// no point carries both a blue and a red edge.
pub fn gen_stseq(n: u32) -> Result<CnfFormula> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let all = slots(n);
    let s = all.len();
    let len = (n * n) as usize;
    let var = |slot: usize, c: Color, i: usize| (2 * ((i - 1) * s + slot) + c.index() + 1) as i32;
    let ends = [
        (Color::Blue, GridPoint::new(0, n), GridPoint::new(n, 0)),
        (Color::Red, GridPoint::new(0, 0), GridPoint::new(n, n)),
    ];
    let mut b = Builder { clauses: vec![], kinds: vec![] };
    for &(c, start, end) in &ends {
        for i in 1..=len {
            for pair in combos(s, 2) {
                b.push(ClauseKind::Position, pair.iter().map(|&e| -var(e, c, i)).collect());
            }
        }
        b.push(ClauseKind::Start, incident(n, start).iter().map(|&e| var(e, c, 1)).collect());
        for (ei, e) in all.iter().enumerate() {
            let at_end = e.contains(end);
            for i in 1..=len {
                if at_end {
                    // the path stops at its first visit to the end corner
                    for fi in (0..s).filter(|_| i < len) {
                        b.push(ClauseKind::Chain, vec![-var(ei, c, i), -var(fi, c, i + 1)]);
                    }
                    continue;
                }
                let mut clause = vec![-var(ei, c, i)];
                if i < len {
                    clause.extend(
                        all.iter()
                            .enumerate()
                            .filter(|&(fi, f)| fi != ei && e.endpoints().iter().any(|&p| f.contains(p)))
                            .map(|(fi, _)| var(fi, c, i + 1)),
                    );
                }
                b.push(ClauseKind::Chain, clause);
            }
        }
        for i in 1..len {
            for ei in 0..s {
                let mut clause = vec![-var(ei, c, i + 1)];
                clause.extend((0..s).map(|fi| var(fi, c, i)));
                b.push(ClauseKind::Padding, clause);
            }
        }
    }
    for y in 0..=n {
        for x in 0..=n {
            let inc = incident(n, GridPoint::new(x, y));
            for &be in &inc {
                for &re in &inc {
                    for i in 1..=len {
                        for j in 1..=len {
                            b.push(ClauseKind::NoIntersection, vec![-var(be, Color::Blue, i), -var(re, Color::Red, j)]);
                        }
                    }
                }
            }
        }
    }
    let mut var_map = Vec::with_capacity(2 * s * len);
    for i in 1..=len {
        for e in &all {
            for c in Color::ALL {
                var_map.push(format!("{c} {e} at {i}"));
            }
        }
    }
    Ok(CnfFormula {
        family: Family::Stseq,
        n,
        num_vars: 2 * s * len,
        clauses: b.clauses,
        kinds: b.kinds,
        var_map,
        dropped: vec![],
    })
}

impl CnfFormula {
    pub fn generate(family: Family, n: u32) -> Result<CnfFormula> {
        match family {
            Family::Stconn => gen_stconn(n),
            Family::Stseq => gen_stseq(n),
        }
    }

    /// Copy without the clauses of group `kind`.
    pub fn weaken(&self, kind: ClauseKind) -> CnfFormula {
        let (clauses, kinds) = self
            .clauses
            .iter()
            .zip(&self.kinds)
            .filter(|(_, &k)| k != kind)
            .map(|(c, &k)| (c.clone(), k))
            .unzip();
        let mut dropped = self.dropped.clone();
        dropped.push(kind);
        CnfFormula { clauses, kinds, dropped, ..self.clone() }
    }

    pub fn count(&self, kind: ClauseKind) -> usize {
        self.kinds.iter().filter(|&&k| k == kind).count()
    }

    pub fn validate(&self) -> Result<()> {
        for (i, c) in self.clauses.iter().enumerate() {
            if c.is_empty() || c.iter().any(|&l| l == 0 || l.unsigned_abs() as usize > self.num_vars) {
                return Err(Error::Format(format!("clause {i} is empty or has a literal out of range")));
            }
        }
        Ok(())
    }

    /// First clause falsified by `assignment` (indexed by variable - 1).
    pub fn violated(&self, assignment: &[bool]) -> Option<usize> {
        self.clauses
            .iter()
            .position(|c| !c.iter().any(|&l| assignment[l.unsigned_abs() as usize - 1] == (l > 0)))
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "c family {}", self.family);
        let _ = writeln!(out, "c n {}", self.n);
        let _ = writeln!(out, "c generator jordan-grid {GENERATOR_VERSION}");
        if !self.dropped.is_empty() {
            let names: Vec<String> = self.dropped.iter().map(|k| format!("{k:?}")).collect();
            let _ = writeln!(out, "c weakened {}", names.join(","));
        }
        for (i, role) in self.var_map.iter().enumerate() {
            let _ = writeln!(out, "c var {} {role}", i + 1);
        }
        let _ = writeln!(out, "p cnf {} {}", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                let _ = write!(out, "{l} ");
            }
            out.push_str("0\n");
        }
        out
    }
}

/// Reads the clause list of a DIMACS file; comments are ignored.
pub fn parse_dimacs(text: &str) -> Result<(usize, Vec<Vec<i32>>)> {
    let mut header = None;
    let mut clauses = vec![];
    let mut cur = vec![];
    for line in text.lines().map(str::trim) {
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("p cnf") {
            let nums: Vec<usize> = rest.split_whitespace().map(|t| t.parse()).collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Format(format!("bad header: {e}")))?;
            if nums.len() != 2 {
                return Err(Error::Format("bad header".into()));
            }
            header = Some((nums[0], nums[1]));
            continue;
        }
        for t in line.split_whitespace() {
            let l: i32 = t.parse().map_err(|e| Error::Format(format!("bad literal {t:?}: {e}")))?;
            if l == 0 {
                clauses.push(std::mem::take(&mut cur));
            } else {
                cur.push(l);
            }
        }
    }
    let (vars, count) = header.ok_or_else(|| Error::Format("missing p cnf header".into()))?;
    if count != clauses.len() || !cur.is_empty() {
        return Err(Error::Format(format!("header says {count} clauses, found {}", clauses.len())));
    }
    Ok((vars, clauses))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolveMode {
    Exhaustive,
    Dpll,
}

impl FromStr for SolveMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<SolveMode> {
        match s {
            "exhaustive" => Ok(SolveMode::Exhaustive),
            "dpll" => Ok(SolveMode::Dpll),
            _ => Err(Error::Format(format!("unknown mode {s:?}"))),
        }
    }
}

/// A satisfying assignment (indexed by variable - 1), or `None`.
pub fn solve(f: &CnfFormula, mode: SolveMode) -> Result<Option<Vec<bool>>> {
    solve_clauses(f.num_vars, &f.clauses, mode)
}

pub fn check_unsat(f: &CnfFormula, mode: SolveMode) -> Result<bool> {
    Ok(solve(f, mode)?.is_none())
}

pub fn solve_clauses(num_vars: usize, clauses: &[Vec<i32>], mode: SolveMode) -> Result<Option<Vec<bool>>> {
    match mode {
        SolveMode::Exhaustive => exhaustive(num_vars, clauses),
        SolveMode::Dpll => Ok(Dpll::new(num_vars, clauses).run()),
    }
}

fn exhaustive(num_vars: usize, clauses: &[Vec<i32>]) -> Result<Option<Vec<bool>>> {
    if num_vars > MAX_EXHAUSTIVE_VARS {
        return Err(Error::TooManyVariables { max: MAX_EXHAUSTIVE_VARS, got: num_vars });
    }
    // bit v-1 of an assignment is variable v
    let masks: Vec<(u32, u32)> = clauses
        .iter()
        .map(|c| {
            c.iter().fold((0, 0), |(pos, neg), &l| {
                let bit = 1u32 << (l.unsigned_abs() - 1);
                if l > 0 { (pos | bit, neg) } else { (pos, neg | bit) }
            })
        })
        .collect();
    let sat = |a: u32| masks.iter().all(|&(pos, neg)| (a & pos) | (!a & neg) != 0);
    // split on the high bits for the thread pool
    let low = num_vars.min(12) as u32;
    let high_count = 1u64 << (num_vars as u32 - low);
    let found = (0..high_count).into_par_iter().find_map_first(|hi| {
        let base = (hi as u32) << low;
        (0..(1u32 << low)).map(|lo| base | lo).find(|&a| sat(a))
    });
    Ok(found.map(|a| (0..num_vars).map(|i| a >> i & 1 == 1).collect()))
}

/// Unit propagation plus branching on the lowest unassigned variable, true
/// first.
struct Dpll<'a> {
    num_vars: usize,
    clauses: &'a [Vec<i32>],
    occurs: Vec<Vec<usize>>,
}

impl<'a> Dpll<'a> {
    fn new(num_vars: usize, clauses: &'a [Vec<i32>]) -> Dpll<'a> {
        let mut occurs = vec![vec![]; num_vars + 1];
        for (i, c) in clauses.iter().enumerate() {
            for &l in c {
                occurs[l.unsigned_abs() as usize].push(i);
            }
        }
        Dpll { num_vars, clauses, occurs }
    }

    fn run(&self) -> Option<Vec<bool>> {
        let mut assign = vec![None; self.num_vars + 1];
        let all: Vec<usize> = (0..self.clauses.len()).collect();
        if !self.propagate(&mut assign, all) {
            return None;
        }
        self.search(assign)
            .map(|a| a[1..].iter().map(|v| v.unwrap_or(false)).collect())
    }

    fn value(assign: &[Option<bool>], l: i32) -> Option<bool> {
        assign[l.unsigned_abs() as usize].map(|v| v == (l > 0))
    }

    /// Propagates units starting from the clauses in `queue`; false on conflict.
    fn propagate(&self, assign: &mut [Option<bool>], mut queue: Vec<usize>) -> bool {
        while let Some(ci) = queue.pop() {
            let mut unit = None;
            let mut free = 0;
            let mut satisfied = false;
            for &l in &self.clauses[ci] {
                match Self::value(assign, l) {
                    Some(true) => {
                        satisfied = true;
                        break;
                    }
                    Some(false) => {}
                    None => {
                        free += 1;
                        unit = Some(l);
                    }
                }
            }
            if satisfied {
                continue;
            }
            match (free, unit) {
                (0, _) => return false,
                (1, Some(l)) => {
                    let v = l.unsigned_abs() as usize;
                    assign[v] = Some(l > 0);
                    queue.extend(&self.occurs[v]);
                }
                _ => {}
            }
        }
        true
    }

    fn search(&self, assign: Vec<Option<bool>>) -> Option<Vec<Option<bool>>> {
        let Some(v) = (1..=self.num_vars).find(|&v| assign[v].is_none()) else {
            return Some(assign);
        };
        for value in [true, false] {
            let mut next = assign.clone();
            next[v] = Some(value);
            if self.propagate(&mut next, self.occurs[v].clone()) {
                if let Some(a) = self.search(next) {
                    return Some(a);
                }
            }
        }
        None
    }
}

/// Blue and red objects described by an assignment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decoded {
    Sets { blue: EdgeSet, red: EdgeSet },
    /// Position-ordered edges of each color, trailing empty positions removed.
    Sequences { blue: Vec<Edge>, red: Vec<Edge> },
}

impl Decoded {
    /// Simple corner-to-corner paths inside the decoded edges: blue from
    /// `(0,n)` to `(n,0)`, red from `(0,0)` to `(n,n)`.
    pub fn paths(&self, n: u32) -> Result<(EdgeSequence, EdgeSequence)> {
        let (blue, red) = match self {
            Decoded::Sets { blue, red } => (blue.clone(), red.clone()),
            Decoded::Sequences { blue, red } => {
                // a chain may revisit an edge
                let dedup = |v: &[Edge]| v.iter().copied().collect::<std::collections::BTreeSet<Edge>>();
                (EdgeSet::from_edges(n, dedup(blue))?, EdgeSet::from_edges(n, dedup(red))?)
            }
        };
        let b = shortest_path(&blue, GridPoint::new(0, n), GridPoint::new(n, 0))?;
        let r = shortest_path(&red, GridPoint::new(0, 0), GridPoint::new(n, n))?;
        Ok((b, r))
    }
}

fn shortest_path(set: &EdgeSet, from: GridPoint, to: GridPoint) -> Result<EdgeSequence> {
    use std::collections::{HashMap, VecDeque};
    let mut prev: HashMap<GridPoint, GridPoint> = HashMap::new();
    let mut queue = VecDeque::from([from]);
    prev.insert(from, from);
    while let Some(p) = queue.pop_front() {
        if p == to {
            break;
        }
        for q in p.neighbors(set.n()) {
            if !prev.contains_key(&q) && set.contains(&Edge::new(p, q)?) {
                prev.insert(q, p);
                queue.push_back(q);
            }
        }
    }
    if !prev.contains_key(&to) {
        return Err(Error::Precondition(format!("edges do not join {from} and {to}")));
    }
    let mut pts = vec![to];
    while *pts.last().expect("nonempty") != from {
        pts.push(prev[pts.last().expect("nonempty")]);
    }
    pts.reverse();
    EdgeSequence::from_points(set.n(), SequenceKind::OpenPath, &pts)
}

/// Reads the edges an assignment describes, after checking that it
/// satisfies `f`.
pub fn decode_model(f: &CnfFormula, assignment: &[bool]) -> Result<Decoded> {
    if assignment.len() != f.num_vars {
        return Err(Error::Format(format!("assignment has {} values for {} variables", assignment.len(), f.num_vars)));
    }
    if let Some(index) = f.violated(assignment) {
        return Err(Error::ViolatedClause { index });
    }
    let all = slots(f.n);
    match f.family {
        Family::Stconn => {
            let pick = |c: Color| {
                EdgeSet::from_edges(
                    f.n,
                    all.iter().enumerate().filter(|(i, _)| assignment[2 * i + c.index()]).map(|(_, &e)| e),
                )
            };
            Ok(Decoded::Sets { blue: pick(Color::Blue)?, red: pick(Color::Red)? })
        }
        Family::Stseq => {
            let s = all.len();
            let pick = |c: Color| -> Vec<Edge> {
                (0..(f.n * f.n) as usize)
                    .filter_map(|i| (0..s).find(|&e| assignment[2 * (i * s + e) + c.index()]).map(|e| all[e]))
                    .collect()
            };
            Ok(Decoded::Sequences { blue: pick(Color::Blue), red: pick(Color::Red) })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn raw(num_vars: usize, clauses: Vec<Vec<i32>>) -> CnfFormula {
        let kinds = vec![ClauseKind::Degree; clauses.len()];
        CnfFormula { family: Family::Stconn, n: 1, num_vars, clauses, kinds, var_map: vec![], dropped: vec![] }
    }

    #[test]
    fn tiny_formulas() {
        for mode in [SolveMode::Exhaustive, SolveMode::Dpll] {
            assert!(check_unsat(&raw(1, vec![vec![1], vec![-1]]), mode).unwrap());
            let model = solve(&raw(2, vec![vec![1, 2]]), mode).unwrap().unwrap();
            assert!(model[0] || model[1]);
        }
    }

    #[test]
    fn variable_numbering() {
        let e = Edge::vertical(1, 0);
        assert_eq!(slot_index(1, &e), 3);
        assert_eq!(stconn_var(1, StconnVar { edge: e, color: Color::Red }), 8);
        assert_eq!(stseq_var(2, StseqVar { edge: Edge::horizontal(0, 0), color: Color::Blue, position: 2 }), 25);
        for n in 1..5 {
            for (i, e) in slots(n).iter().enumerate() {
                assert_eq!(slot_index(n, e), i);
            }
        }
    }

    #[test]
    fn stconn_sizes() {
        assert_eq!(gen_stconn(1).unwrap().num_vars, 8);
        assert_eq!(gen_stconn(2).unwrap().num_vars, 24);
        assert_eq!(gen_stseq(1).unwrap().num_vars, 8);
        for n in 1..8 {
            let f = gen_stconn(n).unwrap();
            f.validate().unwrap();
            assert_eq!(f.clauses.len(), stconn_clause_count(n), "n = {n}");
        }
    }

    #[test]
    fn small_families_unsat() {
        assert!(check_unsat(&gen_stconn(1).unwrap(), SolveMode::Exhaustive).unwrap());
        assert!(check_unsat(&gen_stconn(1).unwrap(), SolveMode::Dpll).unwrap());
        assert!(check_unsat(&gen_stseq(1).unwrap(), SolveMode::Dpll).unwrap());
    }

    #[test]
    fn weakened_stconn_decodes_to_paths() {
        let f = gen_stconn(2).unwrap().weaken(ClauseKind::NoIntersection);
        let model = solve(&f, SolveMode::Dpll).unwrap().expect("weakened formula is satisfiable");
        let Decoded::Sets { blue, red } = decode_model(&f, &model).unwrap() else { panic!() };
        assert!(blue.connects(GridPoint::new(0, 2), GridPoint::new(2, 0)));
        assert!(red.connects(GridPoint::new(0, 0), GridPoint::new(2, 2)));
    }

    #[test]
    fn all_false_is_rejected() {
        let f = gen_stconn(2).unwrap();
        let err = decode_model(&f, &vec![false; f.num_vars]).unwrap_err();
        let Error::ViolatedClause { index } = err else { panic!("{err}") };
        assert_eq!(f.kinds[index], ClauseKind::Corner);
    }

    #[test]
    fn dimacs_round_trip() {
        let f = gen_stconn(2).unwrap();
        let text = f.to_dimacs();
        assert!(text.contains("c family stconn"));
        let (vars, clauses) = parse_dimacs(&text).unwrap();
        assert_eq!((vars, clauses), (f.num_vars, f.clauses));
    }
}
