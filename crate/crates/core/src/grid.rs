//! Grid points, edges, edge sets and edge sequences.
//!
//! A grid with parameter `n` has the points `(x, y)` with `0 <= x, y <= n`
//! and unit edges between horizontally or vertically adjacent points. Edge
//! collections come in two input forms: an unordered [`EdgeSet`] and an
//! ordered, directed [`EdgeSequence`].

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The pairing code `<x, y> = (x + y)(x + y + 1) + 2y`.
///
/// Injective on pairs of naturals. Only used for ordering and tie-breaking;
/// dense row-major indices are used wherever numbering matters.
pub fn pair_code(x: u64, y: u64) -> u64 {
    let s = x + y;
    s * (s + 1) + 2 * y
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridPoint {
    pub x: u32,
    pub y: u32,
}

impl GridPoint {
    pub const fn new(x: u32, y: u32) -> Self {
        GridPoint { x, y }
    }

    pub fn code(self) -> u64 {
        pair_code(self.x as u64, self.y as u64)
    }

    pub fn within(self, n: u32) -> bool {
        self.x <= n && self.y <= n
    }

    pub fn manhattan(self, other: GridPoint) -> u32 {
        self.x.abs_diff(other.x) + self.y.abs_diff(other.y)
    }

    pub fn is_adjacent(self, other: GridPoint) -> bool {
        self.manhattan(other) == 1
    }

    /// The point one step in `dir`, if it stays in the nonnegative quadrant.
    pub fn step(self, dir: Direction) -> Option<GridPoint> {
        self.offset(dir.dx() as i64, dir.dy() as i64)
    }

    pub fn offset(self, dx: i64, dy: i64) -> Option<GridPoint> {
        let x = self.x as i64 + dx;
        let y = self.y as i64 + dy;
        if x < 0 || y < 0 || x > u32::MAX as i64 || y > u32::MAX as i64 {
            return None;
        }
        Some(GridPoint::new(x as u32, y as u32))
    }

    /// 4-neighbours inside the grid `[0, n]^2`.
    pub fn neighbors(self, n: u32) -> impl Iterator<Item = GridPoint> {
        Direction::ALL
            .into_iter()
            .filter_map(move |d| self.step(d))
            .filter(move |p| p.within(n))
    }

    pub fn scale(self, factor: u32) -> GridPoint {
        GridPoint::new(self.x * factor, self.y * factor)
    }
}

impl Ord for GridPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        self.code().cmp(&other.code())
    }
}

impl PartialOrd for GridPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GridPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Axis direction of a unit step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    East,
    North,
    West,
    South,
}

impl Direction {
    pub const ALL: [Direction; 4] = [
        Direction::East,
        Direction::North,
        Direction::West,
        Direction::South,
    ];

    pub fn dx(self) -> i32 {
        match self {
            Direction::East => 1,
            Direction::West => -1,
            _ => 0,
        }
    }

    pub fn dy(self) -> i32 {
        match self {
            Direction::North => 1,
            Direction::South => -1,
            _ => 0,
        }
    }

    /// 90 degrees counterclockwise.
    pub fn left(self) -> Direction {
        match self {
            Direction::East => Direction::North,
            Direction::North => Direction::West,
            Direction::West => Direction::South,
            Direction::South => Direction::East,
        }
    }

    /// 90 degrees clockwise.
    pub fn right(self) -> Direction {
        self.left().left().left()
    }

    pub fn reverse(self) -> Direction {
        self.left().left()
    }

    pub fn is_horizontal(self) -> bool {
        matches!(self, Direction::East | Direction::West)
    }

    pub fn between(from: GridPoint, to: GridPoint) -> Option<Direction> {
        let dx = to.x as i64 - from.x as i64;
        let dy = to.y as i64 - from.y as i64;
        match (dx, dy) {
            (1, 0) => Some(Direction::East),
            (-1, 0) => Some(Direction::West),
            (0, 1) => Some(Direction::North),
            (0, -1) => Some(Direction::South),
            _ => None,
        }
    }
}

/// An undirected unit edge, endpoints in canonical (pair-code) order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    a: GridPoint,
    b: GridPoint,
}

impl Edge {
    pub fn new(p: GridPoint, q: GridPoint) -> Result<Edge> {
        if !p.is_adjacent(q) {
            return Err(Error::NotAdjacent(p, q));
        }
        Ok(if p < q { Edge { a: p, b: q } } else { Edge { a: q, b: p } })
    }

    /// Horizontal edge on column `k` at height `y`: `(k, y) - (k + 1, y)`.
    pub fn horizontal(k: u32, y: u32) -> Edge {
        Edge::new(GridPoint::new(k, y), GridPoint::new(k + 1, y)).expect("adjacent")
    }

    /// Vertical edge `(x, y) - (x, y + 1)`.
    pub fn vertical(x: u32, y: u32) -> Edge {
        Edge::new(GridPoint::new(x, y), GridPoint::new(x, y + 1)).expect("adjacent")
    }

    pub fn a(&self) -> GridPoint {
        self.a
    }

    pub fn b(&self) -> GridPoint {
        self.b
    }

    pub fn endpoints(&self) -> [GridPoint; 2] {
        [self.a, self.b]
    }

    pub fn is_horizontal(&self) -> bool {
        self.a.y == self.b.y
    }

    /// Column `k` of a horizontal edge (endpoint abscissae `k` and `k + 1`).
    pub fn column(&self) -> Option<u32> {
        self.is_horizontal().then(|| self.a.x.min(self.b.x))
    }

    /// Common ordinate of a horizontal edge.
    pub fn height(&self) -> Option<u32> {
        self.is_horizontal().then_some(self.a.y)
    }

    pub fn contains(&self, p: GridPoint) -> bool {
        self.a == p || self.b == p
    }

    pub fn other(&self, p: GridPoint) -> Option<GridPoint> {
        if p == self.a {
            Some(self.b)
        } else if p == self.b {
            Some(self.a)
        } else {
            None
        }
    }

    pub fn max_coord(&self) -> u32 {
        self.a.x.max(self.a.y).max(self.b.x).max(self.b.y)
    }

    fn map(&self, f: impl Fn(GridPoint) -> GridPoint) -> Edge {
        Edge::new(f(self.a), f(self.b)).expect("maps preserve adjacency")
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.a, self.b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DirectedEdge {
    pub from: GridPoint,
    pub to: GridPoint,
}

impl DirectedEdge {
    pub fn new(from: GridPoint, to: GridPoint) -> Result<DirectedEdge> {
        if !from.is_adjacent(to) {
            return Err(Error::NotAdjacent(from, to));
        }
        Ok(DirectedEdge { from, to })
    }

    pub fn undirected(&self) -> Edge {
        Edge::new(self.from, self.to).expect("validated on construction")
    }

    pub fn direction(&self) -> Direction {
        Direction::between(self.from, self.to).expect("validated on construction")
    }

    pub fn reversed(&self) -> DirectedEdge {
        DirectedEdge { from: self.to, to: self.from }
    }

    pub fn is_horizontal(&self) -> bool {
        self.from.y == self.to.y
    }
}

impl fmt::Display for DirectedEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.from, self.to)
    }
}

fn check_within(p: GridPoint, n: u32) -> Result<()> {
    if p.within(n) {
        Ok(())
    } else {
        Err(Error::OutOfGrid { point: p, n })
    }
}

/// Unordered set of edges on the grid `[0, n]^2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeSet {
    n: u32,
    edges: BTreeSet<Edge>,
}

impl EdgeSet {
    pub fn new(n: u32) -> EdgeSet {
        EdgeSet { n, edges: BTreeSet::new() }
    }

    /// Builds a set, rejecting out-of-grid and duplicate edges by index.
    pub fn from_edges(n: u32, edges: impl IntoIterator<Item = Edge>) -> Result<EdgeSet> {
        let mut set = EdgeSet::new(n);
        for (index, e) in edges.into_iter().enumerate() {
            if e.max_coord() > n {
                return Err(Error::InvalidEdge {
                    index,
                    reason: format!("{e} leaves the grid [0, {n}]^2"),
                });
            }
            if !set.edges.insert(e) {
                return Err(Error::InvalidEdge { index, reason: format!("duplicate edge {e}") });
            }
        }
        Ok(set)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter()
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.edges.contains(e)
    }

    /// Inserts an edge; returns whether it was new.
    pub fn insert(&mut self, e: Edge) -> Result<bool> {
        if e.max_coord() > self.n {
            return Err(Error::InvalidEdge {
                index: self.edges.len(),
                reason: format!("{e} leaves the grid [0, {}]^2", self.n),
            });
        }
        Ok(self.edges.insert(e))
    }

    pub fn remove(&mut self, e: &Edge) -> bool {
        self.edges.remove(e)
    }

    /// Number of edges incident to `p`.
    pub fn degree(&self, p: GridPoint) -> usize {
        Direction::ALL
            .into_iter()
            .filter_map(|d| p.step(d))
            .filter(|q| {
                Edge::new(p, *q).map(|e| self.edges.contains(&e)).unwrap_or(false)
            })
            .count()
    }

    /// Degrees of every point touched by the set.
    pub fn degree_map(&self) -> HashMap<GridPoint, usize> {
        let mut deg = HashMap::new();
        for e in &self.edges {
            for p in e.endpoints() {
                *deg.entry(p).or_insert(0) += 1;
            }
        }
        deg
    }

    /// Points with degree at least one.
    pub fn points(&self) -> HashSet<GridPoint> {
        self.edges.iter().flat_map(|e| e.endpoints()).collect()
    }

    /// Nonempty, and every point has degree 0 or 2.
    pub fn is_curve(&self) -> bool {
        !self.edges.is_empty() && self.degree_map().values().all(|&d| d == 2)
    }

    /// `p1`, `p2` have degree 1; every other point degree 0 or 2.
    pub fn connects(&self, p1: GridPoint, p2: GridPoint) -> bool {
        if p1 == p2 {
            return false;
        }
        self.degree_map().iter().all(|(p, &d)| {
            if *p == p1 || *p == p2 {
                d == 1
            } else {
                d == 2
            }
        }) && self.degree(p1) == 1
            && self.degree(p2) == 1
    }

    /// Points of degree at least one in both sets, in pair-code order.
    pub fn shared_points(&self, other: &EdgeSet) -> Result<BTreeSet<GridPoint>> {
        if self.n != other.n {
            return Err(Error::GridMismatch(self.n, other.n));
        }
        let ours = self.points();
        Ok(other.points().into_iter().filter(|p| ours.contains(p)).collect())
    }

    /// Some point has degree at least one in both sets.
    pub fn intersects(&self, other: &EdgeSet) -> Result<bool> {
        if self.n != other.n {
            return Err(Error::GridMismatch(self.n, other.n));
        }
        let ours = self.points();
        Ok(other.edges.iter().flat_map(|e| e.endpoints()).any(|p| ours.contains(&p)))
    }

    /// `p1`, `p2` vertically two apart, both off the set, midpoint of degree 2.
    pub fn on_different_sides(&self, p1: GridPoint, p2: GridPoint) -> bool {
        if p1.x != p2.x || p1.y.abs_diff(p2.y) != 2 {
            return false;
        }
        let mid = GridPoint::new(p1.x, p1.y.min(p2.y) + 1);
        self.degree(p1) == 0 && self.degree(p2) == 0 && self.degree(mid) == 2
    }

    /// Scales coordinates by `factor`, splitting each edge into `factor` unit edges.
    pub fn refine(&self, factor: u32) -> EdgeSet {
        assert!(factor >= 1, "refinement factor must be positive");
        let mut out = EdgeSet::new(self.n * factor);
        for e in &self.edges {
            let (a, b) = (e.a.scale(factor), e.b.scale(factor));
            let dir = Direction::between(e.a, e.b).expect("adjacent");
            let mut p = a;
            for _ in 0..factor {
                let q = p.step(dir).expect("inside scaled grid");
                out.edges.insert(Edge::new(p, q).expect("adjacent"));
                p = q;
            }
            debug_assert_eq!(p, b);
        }
        out
    }

    /// `(x, y) -> (y, n - x)`.
    pub fn rotate_90(&self) -> EdgeSet {
        let n = self.n;
        EdgeSet {
            n,
            edges: self.edges.iter().map(|e| e.map(|p| rotate_point(p, n))).collect(),
        }
    }

    /// Translates every edge by `(dx, dy)` onto the grid `new_n`.
    pub fn translate(&self, dx: i64, dy: i64, new_n: u32) -> Result<EdgeSet> {
        let mut out = EdgeSet::new(new_n);
        for e in &self.edges {
            let [a, b] = e.endpoints();
            let (a, b) = (shift(a, dx, dy, new_n)?, shift(b, dx, dy, new_n)?);
            out.edges.insert(Edge::new(a, b)?);
        }
        Ok(out)
    }

    /// Union of two sets on the same grid.
    pub fn union(&self, other: &EdgeSet) -> Result<EdgeSet> {
        if self.n != other.n {
            return Err(Error::GridMismatch(self.n, other.n));
        }
        let mut out = self.clone();
        out.edges.extend(other.edges.iter().copied());
        Ok(out)
    }
}

pub(crate) fn rotate_point(p: GridPoint, n: u32) -> GridPoint {
    GridPoint::new(p.y, n - p.x)
}

pub(crate) fn shift(p: GridPoint, dx: i64, dy: i64, n: u32) -> Result<GridPoint> {
    let q = p.offset(dx, dy).ok_or(Error::OutOfGrid { point: p, n })?;
    check_within(q, n)?;
    Ok(q)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SequenceKind {
    #[serde(rename = "closed")]
    ClosedCurve,
    #[serde(rename = "open")]
    OpenPath,
}

/// Ordered list of chained directed edges: a simple closed curve or a simple
/// open path.
///
/// An open path may be empty (the zero-length connection of a point to
/// itself).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeSequence {
    n: u32,
    kind: SequenceKind,
    edges: Vec<DirectedEdge>,
}

impl EdgeSequence {
    pub fn new(n: u32, kind: SequenceKind, edges: Vec<DirectedEdge>) -> Result<EdgeSequence> {
        let invalid = |index: usize, reason: String| Error::InvalidSequence { index, reason };
        for (i, e) in edges.iter().enumerate() {
            if !e.from.within(n) || !e.to.within(n) {
                return Err(invalid(i, format!("{e} leaves the grid [0, {n}]^2")));
            }
            if !e.from.is_adjacent(e.to) {
                return Err(invalid(i, format!("{e} joins non-adjacent points")));
            }
            if i > 0 && edges[i - 1].to != e.from {
                return Err(invalid(i, format!("{e} does not continue from {}", edges[i - 1])));
            }
        }
        let mut seen = HashSet::new();
        match kind {
            SequenceKind::ClosedCurve => {
                if edges.len() < 4 {
                    return Err(invalid(0, format!("closed curve needs at least 4 edges, got {}", edges.len())));
                }
                if edges[edges.len() - 1].to != edges[0].from {
                    return Err(invalid(edges.len() - 1, "last edge does not return to the start".into()));
                }
                for (i, e) in edges.iter().enumerate() {
                    if !seen.insert(e.from) {
                        return Err(invalid(i, format!("point {} visited twice", e.from)));
                    }
                }
            }
            SequenceKind::OpenPath => {
                for (i, e) in edges.iter().enumerate() {
                    if !seen.insert(e.from) {
                        return Err(invalid(i, format!("point {} visited twice", e.from)));
                    }
                }
                if let Some(last) = edges.last() {
                    if !seen.insert(last.to) {
                        return Err(invalid(edges.len() - 1, format!("point {} visited twice", last.to)));
                    }
                }
            }
        }
        Ok(EdgeSequence { n, kind, edges })
    }

    /// Builds a sequence from its visited points. A closed curve lists each
    /// point once; the closing edge back to the first point is implied.
    pub fn from_points(n: u32, kind: SequenceKind, points: &[GridPoint]) -> Result<EdgeSequence> {
        let mut edges = Vec::with_capacity(points.len());
        for (i, w) in points.windows(2).enumerate() {
            edges.push(DirectedEdge::new(w[0], w[1]).map_err(|_| Error::InvalidSequence {
                index: i,
                reason: format!("{} and {} are not adjacent", w[0], w[1]),
            })?);
        }
        if kind == SequenceKind::ClosedCurve && points.len() > 1 {
            let (last, first) = (points[points.len() - 1], points[0]);
            edges.push(DirectedEdge::new(last, first).map_err(|_| Error::InvalidSequence {
                index: points.len() - 1,
                reason: format!("{last} and {first} are not adjacent"),
            })?);
        }
        EdgeSequence::new(n, kind, edges)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn kind(&self) -> SequenceKind {
        self.kind
    }

    pub fn is_closed(&self) -> bool {
        self.kind == SequenceKind::ClosedCurve
    }

    pub fn edges(&self) -> &[DirectedEdge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Visited points: `t` points for a closed curve, `len + 1` for a
    /// nonempty open path.
    pub fn points(&self) -> Vec<GridPoint> {
        let mut pts: Vec<GridPoint> = self.edges.iter().map(|e| e.from).collect();
        if self.kind == SequenceKind::OpenPath {
            if let Some(last) = self.edges.last() {
                pts.push(last.to);
            }
        }
        pts
    }

    pub fn start(&self) -> Option<GridPoint> {
        self.edges.first().map(|e| e.from)
    }

    pub fn end(&self) -> Option<GridPoint> {
        self.edges.last().map(|e| e.to)
    }

    pub fn to_edge_set(&self) -> EdgeSet {
        EdgeSet {
            n: self.n,
            edges: self.edges.iter().map(|e| e.undirected()).collect(),
        }
    }

    pub fn reversed(&self) -> EdgeSequence {
        let edges = self.edges.iter().rev().map(|e| e.reversed()).collect();
        EdgeSequence { n: self.n, kind: self.kind, edges }
    }

    /// Closed curves only: re-index so that point `i` comes first.
    pub fn rotate_start(&self, i: usize) -> EdgeSequence {
        assert!(self.is_closed(), "only closed curves can be re-indexed");
        let mut edges = self.edges.clone();
        edges.rotate_left(i % self.edges.len().max(1));
        EdgeSequence { n: self.n, kind: self.kind, edges }
    }

    /// Scales by `factor`, preserving order and direction.
    pub fn refine(&self, factor: u32) -> EdgeSequence {
        assert!(factor >= 1, "refinement factor must be positive");
        let mut edges = Vec::with_capacity(self.edges.len() * factor as usize);
        for e in &self.edges {
            let dir = e.direction();
            let mut p = e.from.scale(factor);
            for _ in 0..factor {
                let q = p.step(dir).expect("inside scaled grid");
                edges.push(DirectedEdge { from: p, to: q });
                p = q;
            }
        }
        EdgeSequence { n: self.n * factor, kind: self.kind, edges }
    }

    /// `(x, y) -> (y, n - x)`.
    pub fn rotate_90(&self) -> EdgeSequence {
        let n = self.n;
        let edges = self
            .edges
            .iter()
            .map(|e| DirectedEdge { from: rotate_point(e.from, n), to: rotate_point(e.to, n) })
            .collect();
        EdgeSequence { n, kind: self.kind, edges }
    }

    pub fn translate(&self, dx: i64, dy: i64, new_n: u32) -> Result<EdgeSequence> {
        let edges = self
            .edges
            .iter()
            .map(|e| {
                Ok(DirectedEdge {
                    from: shift(e.from, dx, dy, new_n)?,
                    to: shift(e.to, dx, dy, new_n)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(EdgeSequence { n: new_n, kind: self.kind, edges })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Blue,
    Red,
}

impl Color {
    pub const ALL: [Color; 2] = [Color::Blue, Color::Red];

    pub fn index(self) -> usize {
        match self {
            Color::Blue => 0,
            Color::Red => 1,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::Blue => "blue",
            Color::Red => "red",
        })
    }
}

/// Two points vertically two apart and the point between them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SidePair {
    pub p1: GridPoint,
    pub p2: GridPoint,
    pub mid: GridPoint,
}

impl SidePair {
    pub fn new(p1: GridPoint, p2: GridPoint) -> Result<SidePair> {
        if p1.x != p2.x || p1.y.abs_diff(p2.y) != 2 {
            return Err(Error::Precondition(format!(
                "{p1} and {p2} are not vertically two apart"
            )));
        }
        let mid = GridPoint::new(p1.x, p1.y.min(p2.y) + 1);
        Ok(SidePair { p1, p2, mid })
    }

    /// Pair below/above the point `mid`.
    pub fn around(mid: GridPoint) -> Result<SidePair> {
        if mid.y == 0 {
            return Err(Error::Precondition(format!("{mid} has no point below it")));
        }
        SidePair::new(GridPoint::new(mid.x, mid.y - 1), GridPoint::new(mid.x, mid.y + 1))
    }

    pub fn column(&self) -> u32 {
        self.mid.x
    }

    pub fn lower(&self) -> GridPoint {
        if self.p1.y < self.p2.y { self.p1 } else { self.p2 }
    }

    pub fn upper(&self) -> GridPoint {
        if self.p1.y < self.p2.y { self.p2 } else { self.p1 }
    }

    pub fn scale(&self, factor: u32) -> SidePair {
        SidePair { p1: self.p1.scale(factor), p2: self.p2.scale(factor), mid: self.mid.scale(factor) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: u32, y: u32) -> GridPoint {
        GridPoint::new(x, y)
    }

    pub(crate) fn unit_square(n: u32, x: u32, y: u32) -> EdgeSet {
        EdgeSet::from_edges(
            n,
            [
                Edge::horizontal(x, y),
                Edge::vertical(x + 1, y),
                Edge::horizontal(x, y + 1),
                Edge::vertical(x, y),
            ],
        )
        .unwrap()
    }

    #[test]
    fn pair_code_values() {
        assert_eq!(pair_code(0, 0), 0);
        assert_eq!(pair_code(1, 0), 2);
        assert_eq!(pair_code(0, 1), 4);
    }

    #[test]
    fn pair_code_injective_up_to_64() {
        let mut seen = HashSet::new();
        for x in 0..=64 {
            for y in 0..=64 {
                assert!(seen.insert(pair_code(x, y)), "collision at ({x}, {y})");
            }
        }
    }

    #[test]
    fn degrees() {
        let sq = unit_square(3, 0, 0);
        assert_eq!(sq.degree(p(0, 0)), 2);
        assert_eq!(EdgeSet::new(3).degree(p(1, 1)), 0);
        let single = EdgeSet::from_edges(3, [Edge::horizontal(0, 0)]).unwrap();
        assert_eq!(single.degree(p(1, 0)), 1);
        let total: usize = sq.degree_map().values().sum();
        assert_eq!(total, 2 * sq.len());
    }

    #[test]
    fn curve_predicate() {
        assert!(unit_square(3, 0, 0).is_curve());
        assert!(!EdgeSet::from_edges(3, [Edge::horizontal(0, 0)]).unwrap().is_curve());
        assert!(!EdgeSet::new(3).is_curve());
        let two = unit_square(4, 0, 0).union(&unit_square(4, 2, 2)).unwrap();
        assert!(two.is_curve());
    }

    #[test]
    fn connects_predicate() {
        let single = EdgeSet::from_edges(3, [Edge::horizontal(0, 0)]).unwrap();
        assert!(single.connects(p(0, 0), p(1, 0)));
        let sq = unit_square(3, 0, 0);
        assert!(!sq.connects(p(0, 0), p(1, 0)));
        let l_path = EdgeSet::from_edges(5, [Edge::horizontal(0, 0), Edge::vertical(1, 0)]).unwrap();
        let with_loop = l_path.union(&unit_square(5, 3, 3)).unwrap();
        assert!(with_loop.connects(p(0, 0), p(1, 1)));
        assert!(!with_loop.connects(p(0, 0), p(0, 0)));
    }

    #[test]
    fn intersection_is_pointwise() {
        let a = EdgeSet::from_edges(3, [Edge::horizontal(0, 1)]).unwrap();
        let b = EdgeSet::from_edges(3, [Edge::vertical(1, 1)]).unwrap();
        assert!(a.intersects(&b).unwrap());
        assert_eq!(a.shared_points(&b).unwrap().into_iter().collect::<Vec<_>>(), vec![p(1, 1)]);
        assert!(!unit_square(5, 0, 0).intersects(&unit_square(5, 3, 3)).unwrap());
        assert!(a.intersects(&a).unwrap());
        assert_eq!(a.intersects(&EdgeSet::new(4)), Err(Error::GridMismatch(3, 4)));
    }

    #[test]
    fn different_sides() {
        let line = EdgeSet::from_edges(4, (0..4).map(|k| Edge::horizontal(k, 2))).unwrap();
        assert!(line.on_different_sides(p(2, 1), p(2, 3)));
        assert!(!line.on_different_sides(p(2, 1), p(2, 2)));
        let empty = EdgeSet::new(4);
        assert!(!empty.on_different_sides(p(2, 1), p(2, 3)));
    }

    #[test]
    fn refine_square() {
        let sq = unit_square(2, 0, 0);
        assert_eq!(sq.refine(1), sq);
        let r = sq.refine(3);
        assert_eq!(r.n(), 6);
        assert_eq!(r.len(), 12);
        assert!(r.is_curve());
        assert_eq!(sq.refine(2).refine(3), sq.refine(6));
    }

    #[test]
    fn rotate_is_order_four() {
        let sq = unit_square(4, 1, 0);
        let r = sq.rotate_90().rotate_90().rotate_90().rotate_90();
        assert_eq!(r, sq);
        assert_ne!(sq.rotate_90(), sq);
    }

    #[test]
    fn sequence_validation() {
        let pts = [p(0, 0), p(1, 0), p(1, 1), p(0, 1)];
        let sq = EdgeSequence::from_points(2, SequenceKind::ClosedCurve, &pts).unwrap();
        assert_eq!(sq.len(), 4);
        assert!(sq.to_edge_set().is_curve());
        let bad = EdgeSequence::from_points(2, SequenceKind::ClosedCurve, &[p(0, 0), p(1, 0), p(1, 1)]);
        assert!(matches!(bad, Err(Error::InvalidSequence { .. })));
        let repeat = EdgeSequence::from_points(
            3,
            SequenceKind::OpenPath,
            &[p(0, 0), p(1, 0), p(1, 1), p(0, 1), p(0, 0)],
        );
        assert!(matches!(repeat, Err(Error::InvalidSequence { index: 3, .. })));
        let gap = EdgeSequence::new(
            3,
            SequenceKind::OpenPath,
            vec![
                DirectedEdge::new(p(0, 0), p(1, 0)).unwrap(),
                DirectedEdge::new(p(2, 0), p(3, 0)).unwrap(),
            ],
        );
        assert!(matches!(gap, Err(Error::InvalidSequence { index: 1, .. })));
        let path = EdgeSequence::from_points(3, SequenceKind::OpenPath, &[p(0, 0), p(1, 0), p(1, 1)]).unwrap();
        assert!(path.to_edge_set().connects(p(0, 0), p(1, 1)));
        let refined = path.refine(2);
        assert_eq!(refined.len(), 4);
        assert_eq!(refined.start(), Some(p(0, 0)));
        assert_eq!(refined.end(), Some(p(2, 2)));
    }

    #[test]
    fn side_pair_geometry() {
        let s = SidePair::new(p(3, 5), p(3, 3)).unwrap();
        assert_eq!(s.mid, p(3, 4));
        assert_eq!(s.lower(), p(3, 3));
        assert!(SidePair::new(p(3, 5), p(3, 4)).is_err());
    }
}
