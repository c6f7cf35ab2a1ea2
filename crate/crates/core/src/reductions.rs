//! Transformations between curve-crossing instances and st-connectivity
//! instances (two paths joining opposite grid corners), for edge sets and
//! for edge sequences.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{Color, DirectedEdge, Direction, Edge, EdgeSequence, EdgeSet, GridPoint, SequenceKind, SidePair};

/// Blue joins `(0, n)` to `(n, 0)`; red joins `(0, 0)` to `(n, n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StConnInstance<T> {
    pub n: u32,
    pub blue: T,
    pub red: T,
}

/// Blue is a curve, red connects the side pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JctInstance<T> {
    pub n: u32,
    pub blue: T,
    pub red: T,
    pub sides: SidePair,
    /// Translation applied to the source coordinates, if any.
    pub offset: (i64, i64),
}

fn blue_ends(n: u32) -> (GridPoint, GridPoint) {
    (GridPoint::new(0, n), GridPoint::new(n, 0))
}

fn red_ends(n: u32) -> (GridPoint, GridPoint) {
    (GridPoint::new(0, 0), GridPoint::new(n, n))
}

impl StConnInstance<EdgeSet> {
    pub fn validate(&self) -> Result<()> {
        if self.blue.n() != self.n || self.red.n() != self.n {
            return Err(Error::GridMismatch(self.blue.n(), self.red.n()));
        }
        let (b1, b2) = blue_ends(self.n);
        let (r1, r2) = red_ends(self.n);
        if !self.blue.connects(b1, b2) {
            return Err(Error::Precondition(format!("blue does not connect {b1} and {b2}")));
        }
        if !self.red.connects(r1, r2) {
            return Err(Error::Precondition(format!("red does not connect {r1} and {r2}")));
        }
        Ok(())
    }
}

fn oriented(path: &EdgeSequence, from: GridPoint, to: GridPoint, what: &str) -> Result<EdgeSequence> {
    if path.is_closed() || path.is_empty() {
        return Err(Error::Precondition(format!("{what} is not a nonempty open path")));
    }
    match (path.start(), path.end()) {
        (Some(s), Some(e)) if s == from && e == to => Ok(path.clone()),
        (Some(s), Some(e)) if s == to && e == from => Ok(path.reversed()),
        _ => Err(Error::Precondition(format!("{what} does not join {from} and {to}"))),
    }
}

impl StConnInstance<EdgeSequence> {
    /// Checks endpoints and returns both paths oriented blue `(0, n) -> (n, 0)`
    /// and red `(0, 0) -> (n, n)`.
    pub fn oriented(&self) -> Result<(EdgeSequence, EdgeSequence)> {
        if self.blue.n() != self.n || self.red.n() != self.n {
            return Err(Error::GridMismatch(self.blue.n(), self.red.n()));
        }
        let (b1, b2) = blue_ends(self.n);
        let (r1, r2) = red_ends(self.n);
        Ok((oriented(&self.blue, b1, b2, "blue")?, oriented(&self.red, r1, r2, "red")?))
    }

    pub fn validate(&self) -> Result<()> {
        self.oriented().map(|_| ())
    }

    pub fn to_sets(&self) -> StConnInstance<EdgeSet> {
        StConnInstance { n: self.n, blue: self.blue.to_edge_set(), red: self.red.to_edge_set() }
    }
}

impl JctInstance<EdgeSet> {
    pub fn validate(&self) -> Result<()> {
        if self.blue.n() != self.n || self.red.n() != self.n {
            return Err(Error::GridMismatch(self.blue.n(), self.red.n()));
        }
        if !self.blue.is_curve() {
            return Err(Error::Precondition("blue edges do not form a curve".into()));
        }
        if !self.red.connects(self.sides.p1, self.sides.p2) {
            return Err(Error::Precondition("red edges do not connect p1 and p2".into()));
        }
        if !self.blue.on_different_sides(self.sides.p1, self.sides.p2) {
            return Err(Error::Precondition("p1 and p2 are not on different sides of blue".into()));
        }
        Ok(())
    }
}

impl JctInstance<EdgeSequence> {
    pub fn validate(&self) -> Result<()> {
        if self.blue.n() != self.n || self.red.n() != self.n {
            return Err(Error::GridMismatch(self.blue.n(), self.red.n()));
        }
        if !self.blue.is_closed() {
            return Err(Error::Precondition("blue is not a closed curve".into()));
        }
        oriented(&self.red, self.sides.lower(), self.sides.upper(), "red")?;
        if !self.blue.to_edge_set().on_different_sides(self.sides.p1, self.sides.p2) {
            return Err(Error::Precondition("p1 and p2 are not on different sides of blue".into()));
        }
        Ok(())
    }

    pub fn to_sets(&self) -> JctInstance<EdgeSet> {
        JctInstance {
            n: self.n,
            blue: self.blue.to_edge_set(),
            red: self.red.to_edge_set(),
            sides: self.sides,
            offset: self.offset,
        }
    }
}

// ---------------------------------------------------------------------------
// st-connectivity to curve crossing

/// Blue edges closing the blue path into a curve, before the `+1` shift in y.
fn closing_blue(n: u32) -> Vec<(i64, i64, i64, i64)> {
    let n = n as i64;
    let mut v = vec![(0, n, 0, n + 1)];
    v.extend((0..=n + 1).map(|i| (i, n + 1, i + 1, n + 1)));
    v.extend((0..=n).map(|j| (n + 2, j + 1, n + 2, j)));
    v.push((n + 1, 0, n, 0));
    v.push((n + 2, 0, n + 1, 0));
    v
}

/// Red edges extending the red path to the side pair, before the shift.
fn extending_red(n: u32) -> Vec<(i64, i64, i64, i64)> {
    let n = n as i64;
    let mut v = vec![(0, -1, 0, 0)];
    v.extend((0..=n).map(|i| (i + 1, -1, i, -1)));
    v.push((n, n, n + 1, n));
    v.extend((1..=n - 1).map(|i| (n + 1, i + 1, n + 1, i)));
    v
}

/// Number of blue edges added when closing an st-connectivity blue path.
pub fn added_blue_edges(n: u32) -> usize {
    2 * n as usize + 6
}

fn shifted(x: i64, y: i64) -> GridPoint {
    GridPoint::new(x as u32, (y + 1) as u32)
}

fn shifted_edge(e: (i64, i64, i64, i64)) -> Edge {
    Edge::new(shifted(e.0, e.1), shifted(e.2, e.3)).expect("unit edges")
}

fn stconn_sides(n: u32) -> SidePair {
    SidePair::new(shifted(n as i64 + 1, -1), shifted(n as i64 + 1, 1)).expect("vertical pair")
}

/// Closes blue around the grid and extends red to a side pair below the
/// bottom-right corner. The grid grows to `n + 2` and every point moves up
/// by one; the two outputs intersect iff the inputs do.
pub fn stconn_to_jct_set(inst: &StConnInstance<EdgeSet>) -> Result<JctInstance<EdgeSet>> {
    inst.validate()?;
    let n = inst.n;
    let big = n + 2;
    let mut blue = inst.blue.translate(0, 1, big)?;
    let mut red = inst.red.translate(0, 1, big)?;
    for e in closing_blue(n) {
        blue.insert(shifted_edge(e))?;
    }
    for e in extending_red(n) {
        red.insert(shifted_edge(e))?;
    }
    Ok(JctInstance { n: big, blue, red, sides: stconn_sides(n), offset: (0, 1) })
}

/// Points of the output of [`stconn_to_jct_set`] that came from the input.
pub fn stconn_map_back(n: u32, p: GridPoint) -> Option<GridPoint> {
    (p.y >= 1 && p.x <= n && p.y - 1 <= n).then(|| GridPoint::new(p.x, p.y - 1))
}

/// Sequence form of [`stconn_to_jct_set`], with constant-time access to
/// every output edge.
#[derive(Clone, Debug)]
pub struct StConnToJct {
    n: u32,
    blue: EdgeSequence,
    red: EdgeSequence,
}

pub fn stconn_to_jct_seq(inst: &StConnInstance<EdgeSequence>) -> Result<StConnToJct> {
    let (blue, red) = inst.oriented()?;
    Ok(StConnToJct { n: inst.n, blue, red })
}

fn step_edge(x: i64, y: i64, dx: i64, dy: i64) -> DirectedEdge {
    DirectedEdge { from: shifted(x, y), to: shifted(x + dx, y + dy) }
}

impl StConnToJct {
    pub fn grid(&self) -> u32 {
        self.n + 2
    }

    pub fn sides(&self) -> SidePair {
        stconn_sides(self.n)
    }

    pub fn len(&self, color: Color) -> usize {
        let n = self.n as usize;
        match color {
            Color::Blue => self.blue.len() + 2 * n + 6,
            Color::Red => self.red.len() + 2 * n + 2,
        }
    }

    /// Edge `j` of the blue curve (starting at `(0, n)`) or of the red path
    /// (starting at p1).
    pub fn edge_at(&self, color: Color, j: usize) -> Result<DirectedEdge> {
        let len = self.len(color);
        if j >= len {
            return Err(Error::IndexOutOfRange { index: j, len });
        }
        let n = self.n as i64;
        let lift = |e: &DirectedEdge| DirectedEdge {
            from: GridPoint::new(e.from.x, e.from.y + 1),
            to: GridPoint::new(e.to.x, e.to.y + 1),
        };
        Ok(match color {
            Color::Blue => {
                if j < self.blue.len() {
                    return Ok(lift(&self.blue.edges()[j]));
                }
                let k = (j - self.blue.len()) as i64;
                match k {
                    0 => step_edge(n, 0, 1, 0),
                    1 => step_edge(n + 1, 0, 1, 0),
                    k if k < n + 3 => step_edge(n + 2, k - 2, 0, 1),
                    k if k < 2 * n + 5 => step_edge(n + 2 - (k - n - 3), n + 1, -1, 0),
                    _ => step_edge(0, n + 1, 0, -1),
                }
            }
            Color::Red => {
                let j = j as i64;
                let head = n + 2;
                if j < n + 1 {
                    step_edge(n + 1 - j, -1, -1, 0)
                } else if j == n + 1 {
                    step_edge(0, -1, 0, 1)
                } else if ((j - head) as usize) < self.red.len() {
                    lift(&self.red.edges()[(j - head) as usize])
                } else {
                    let k = j - head - self.red.len() as i64;
                    if k == 0 {
                        step_edge(n, n, 1, 0)
                    } else {
                        step_edge(n + 1, n - k + 1, 0, -1)
                    }
                }
            }
        })
    }

    pub fn materialize(&self) -> Result<JctInstance<EdgeSequence>> {
        let collect = |c: Color| (0..self.len(c)).map(|j| self.edge_at(c, j)).collect::<Result<Vec<_>>>();
        let blue = EdgeSequence::new(self.grid(), SequenceKind::ClosedCurve, collect(Color::Blue)?)?;
        let red = EdgeSequence::new(self.grid(), SequenceKind::OpenPath, collect(Color::Red)?)?;
        Ok(JctInstance { n: self.grid(), blue, red, sides: self.sides(), offset: (0, 1) })
    }
}

// ---------------------------------------------------------------------------
// curve crossing to st-connectivity

/// One of the four triangles cut out of the centred grid by its diagonals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Quarter {
    Bottom,
    Right,
    Top,
    Left,
}

impl Quarter {
    pub const ALL: [Quarter; 4] = [Quarter::Bottom, Quarter::Right, Quarter::Top, Quarter::Left];
}

/// The centred grid `[0, 2c]^2` with centre `(c, c)`; images live on
/// `[0, 4c]^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Reflection {
    pub c: u32,
}

/// Axis-parallel run joining the two images of a diagonal point through the
/// corner of its ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Connector {
    pub start: GridPoint,
    pub corner: GridPoint,
    pub end: GridPoint,
    /// Length of each of the two legs.
    pub leg: u32,
}

impl Connector {
    pub fn points(&self) -> Vec<GridPoint> {
        let mut pts = walk(self.start, self.corner);
        pts.extend(walk(self.corner, self.end).into_iter().skip(1));
        pts
    }
}

fn toward(from: GridPoint, to: GridPoint) -> Option<Direction> {
    use std::cmp::Ordering::*;
    match (from.x.cmp(&to.x), from.y.cmp(&to.y)) {
        (Less, Equal) => Some(Direction::East),
        (Greater, Equal) => Some(Direction::West),
        (Equal, Less) => Some(Direction::North),
        (Equal, Greater) => Some(Direction::South),
        _ => None,
    }
}

/// Points of the straight run from `from` to `to`, both included.
fn walk(from: GridPoint, to: GridPoint) -> Vec<GridPoint> {
    let mut pts = vec![from];
    if let Some(d) = toward(from, to) {
        let mut p = from;
        while p != to {
            p = p.step(d).expect("run stays in grid");
            pts.push(p);
        }
    }
    pts
}

impl Reflection {
    pub fn n0(&self) -> u32 {
        2 * self.c
    }

    pub fn output_n(&self) -> u32 {
        4 * self.c
    }

    pub fn contains(&self, q: Quarter, p: GridPoint) -> bool {
        let (x, y, n0) = (p.x as i64, p.y as i64, self.n0() as i64);
        if x > n0 || y > n0 {
            return false;
        }
        match q {
            Quarter::Bottom => y <= x && y <= n0 - x,
            Quarter::Top => y >= x && y >= n0 - x,
            Quarter::Left => x <= y && x <= n0 - y,
            Quarter::Right => x >= y && x >= n0 - y,
        }
    }

    /// The unique quarter holding both endpoints.
    pub fn quarter_of(&self, u: GridPoint, v: GridPoint) -> Quarter {
        Quarter::ALL
            .into_iter()
            .find(|&q| self.contains(q, u) && self.contains(q, v))
            .expect("every grid edge lies in one quarter")
    }

    /// Reflection of `p` through the base of quarter `q`, placed so the
    /// centre lands on `(2c, 2c)`.
    pub fn image(&self, q: Quarter, p: GridPoint) -> GridPoint {
        let c = self.c;
        match q {
            Quarter::Bottom => GridPoint::new(p.x + c, c - p.y),
            Quarter::Top => GridPoint::new(p.x + c, 5 * c - p.y),
            Quarter::Left => GridPoint::new(c - p.x, p.y + c),
            Quarter::Right => GridPoint::new(5 * c - p.x, p.y + c),
        }
    }

    pub fn preimage(&self, q: Quarter, w: GridPoint) -> Option<GridPoint> {
        let c = self.c as i64;
        let (x, y) = (w.x as i64, w.y as i64);
        let (px, py) = match q {
            Quarter::Bottom => (x - c, c - y),
            Quarter::Top => (x - c, 5 * c - y),
            Quarter::Left => (c - x, y - c),
            Quarter::Right => (5 * c - x, y - c),
        };
        if px < 0 || py < 0 {
            return None;
        }
        let p = GridPoint::new(px as u32, py as u32);
        self.contains(q, p).then_some(p)
    }

    /// Distance from the centre along a diagonal, if `r` lies on one.
    pub fn diagonal_distance(&self, r: GridPoint) -> Option<u32> {
        let (dx, dy) = (r.x.abs_diff(self.c), r.y.abs_diff(self.c));
        (dx == dy && r.x <= self.n0() && r.y <= self.n0()).then_some(dx)
    }

    /// Connector for a path crossing from quarter `from` into quarter `to` at
    /// the diagonal point `r`; `None` for the grid corners, whose images
    /// coincide.
    pub fn connector(&self, r: GridPoint, from: Quarter, to: Quarter) -> Option<Connector> {
        let d = self.diagonal_distance(r)?;
        if from == to || d == 0 || d >= self.c {
            return None;
        }
        let far = 4 * self.c - d;
        let corner = GridPoint::new(if r.x < self.c { d } else { far }, if r.y < self.c { d } else { far });
        Some(Connector { start: self.image(from, r), corner, end: self.image(to, r), leg: self.n0() - 2 * d })
    }

    /// Source point of an image or connector point, if any.
    pub fn map_back(&self, w: GridPoint) -> Option<GridPoint> {
        if let Some(p) = Quarter::ALL.into_iter().find_map(|q| self.preimage(q, w)) {
            return Some(p);
        }
        let (c, full) = (self.c, self.output_n());
        let fold = |v: u32| if v <= 2 * c { v } else { full - v };
        let (x, y) = (fold(w.x), fold(w.y));
        let d = x.min(y);
        if d == 0 || d >= c || x.max(y) > 2 * c - d {
            return None;
        }
        let rx = if w.x <= 2 * c { c - d } else { c + d };
        let ry = if w.y <= 2 * c { c - d } else { c + d };
        Some(GridPoint::new(rx, ry))
    }
}

/// Centring data shared by the set and sequence forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Centering {
    pub source_n: u32,
    pub shift: (i64, i64),
    pub reflection: Reflection,
}

impl Centering {
    fn new(n: u32, sides: &SidePair) -> Result<Centering> {
        let p = sides.mid;
        let c = p.x.max(n - p.x).max(p.y).max(n - p.y);
        if c < 2 {
            return Err(Error::Precondition("grid too small to centre the side pair".into()));
        }
        Ok(Centering {
            source_n: n,
            shift: ((c - p.x) as i64, (c - p.y) as i64),
            reflection: Reflection { c },
        })
    }

    /// Source point behind an output point, if any.
    pub fn map_back(&self, w: GridPoint) -> Option<GridPoint> {
        let r = self.reflection.map_back(w)?;
        let x = r.x as i64 - self.shift.0;
        let y = r.y as i64 - self.shift.1;
        (x >= 0 && y >= 0 && x <= self.source_n as i64 && y <= self.source_n as i64)
            .then(|| GridPoint::new(x as u32, y as u32))
    }
}

fn reject_center(red_points: impl IntoIterator<Item = GridPoint>, mid: GridPoint) -> Result<()> {
    if red_points.into_iter().any(|q| q == mid) {
        return Err(Error::Precondition(format!("red path passes through the midpoint {mid}")));
    }
    Ok(())
}

/// Output of [`jct_to_stconn_set`].
#[derive(Clone, Debug)]
pub struct ReflectedSets {
    pub centering: Centering,
    pub output: StConnInstance<EdgeSet>,
}

fn insert_run(set: &mut EdgeSet, pts: &[GridPoint]) -> Result<()> {
    for w in pts.windows(2) {
        set.insert(Edge::new(w[0], w[1])?)?;
    }
    Ok(())
}

fn reflect_set(src: &EdgeSet, refl: &Reflection) -> Result<EdgeSet> {
    let mut out = EdgeSet::new(refl.output_n());
    let mut quarters: std::collections::HashMap<GridPoint, Vec<Quarter>> = Default::default();
    for e in src.iter() {
        let q = refl.quarter_of(e.a(), e.b());
        out.insert(Edge::new(refl.image(q, e.a()), refl.image(q, e.b()))?)?;
        for p in e.endpoints() {
            quarters.entry(p).or_default().push(q);
        }
    }
    let mut switches: Vec<_> = quarters.into_iter().filter(|(_, qs)| qs.len() == 2 && qs[0] != qs[1]).collect();
    switches.sort_by_key(|(p, _)| *p);
    for (r, qs) in switches {
        if let Some(conn) = refl.connector(r, qs[0], qs[1]) {
            insert_run(&mut out, &conn.points())?;
        }
    }
    Ok(out)
}

/// Corner legs of the red path: `(0,0) -> q0 -> p1'` and `p2' -> q2 -> (4c,4c)`.
fn red_legs(refl: &Reflection) -> [Vec<GridPoint>; 2] {
    let (c2, full) = (refl.n0(), refl.output_n());
    let p = GridPoint::new;
    [vec![p(0, 0), p(c2, 0), p(c2, 1)], vec![p(c2, full - 1), p(c2, full), p(full, full)]]
}

/// Corner legs of the blue path: `(0,4c) -> q3` and `q1 -> (4c,0)`.
fn blue_legs(refl: &Reflection) -> [Vec<GridPoint>; 2] {
    let (c2, full) = (refl.n0(), refl.output_n());
    let p = GridPoint::new;
    [vec![p(0, full), p(0, c2)], vec![p(full, c2), p(full, 0)]]
}

fn insert_legs(set: &mut EdgeSet, legs: &[Vec<GridPoint>; 2]) -> Result<()> {
    for leg in legs {
        for w in leg.windows(2) {
            insert_run(set, &walk(w[0], w[1]))?;
        }
    }
    Ok(())
}

/// Reflects the four diagonal quarters of a centred copy of the instance
/// outwards through their bases, rejoins the images of each path with
/// connectors, and runs red from `(0, 0)` to `(4c, 4c)` and blue from
/// `(0, 4c)` to `(4c, 0)`. Disjoint inputs give disjoint outputs.
pub fn jct_to_stconn_set(inst: &JctInstance<EdgeSet>) -> Result<ReflectedSets> {
    inst.validate()?;
    reject_center(inst.red.points(), inst.sides.mid)?;
    let centering = Centering::new(inst.n, &inst.sides)?;
    let refl = centering.reflection;
    let (dx, dy) = centering.shift;
    let blue_c = inst.blue.translate(dx, dy, refl.n0())?;
    let red_c = inst.red.translate(dx, dy, refl.n0())?;
    let mut blue = reflect_set(&blue_c, &refl)?;
    let mut red = reflect_set(&red_c, &refl)?;
    insert_legs(&mut blue, &blue_legs(&refl))?;
    insert_legs(&mut red, &red_legs(&refl))?;
    Ok(ReflectedSets { centering, output: StConnInstance { n: refl.output_n(), blue, red } })
}

/// Whether a source edge is followed by a connector in the output.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EdgeKind {
    Inward,
    /// Followed by a connector whose legs have length `leg` each.
    Outward { leg: u32 },
}

/// One source edge, as seen in the coarse output.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Block {
    tail: GridPoint,
    dir: Direction,
    connector: Option<Connector>,
}

impl Block {
    fn kind(&self) -> EdgeKind {
        match self.connector {
            Some(c) => EdgeKind::Outward { leg: c.leg },
            None => EdgeKind::Inward,
        }
    }
}

/// A straight run on the coarse output grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Leg {
    start: GridPoint,
    dir: Direction,
    len: u32,
}

fn legs_of(points: &[GridPoint]) -> Vec<Leg> {
    points
        .windows(2)
        .map(|w| Leg { start: w[0], dir: toward(w[0], w[1]).expect("axis run"), len: w[0].manhattan(w[1]) })
        .collect()
}

#[derive(Clone, Debug)]
struct Track {
    head: Vec<Leg>,
    blocks: Vec<Block>,
    tail: Vec<Leg>,
}

fn blocks_of(points: &[GridPoint], refl: &Reflection) -> Vec<Block> {
    let quarters: Vec<Quarter> = points.windows(2).map(|w| refl.quarter_of(w[0], w[1])).collect();
    (0..quarters.len())
        .map(|i| {
            let q = quarters[i];
            let (u, v) = (points[i], points[i + 1]);
            let tail = refl.image(q, u);
            let dir = toward(tail, refl.image(q, v)).expect("unit image edge");
            let connector = quarters.get(i + 1).and_then(|&next| refl.connector(v, q, next));
            Block { tail, dir, connector }
        })
        .collect()
}

/// Sequence form of the reflection with every source edge stretched to
/// exactly `16 n^2` output edges, where `n = 2c` is the centred grid size.
///
/// The output grid is refined `8n`-fold. Each block first zig-zags `2n`
/// times into the quarter cell on its right (`h` steps out and back), then
/// runs the remaining half edge, then any connector. `h` is `4n - 2` for
/// inward edges and `4n - 4l - 2` for edges followed by a connector with
/// legs of length `l`.
#[derive(Clone, Debug)]
pub struct ReflectedSequences {
    pub centering: Centering,
    blue: Track,
    red: Track,
}

pub fn jct_to_stconn_seq(inst: &JctInstance<EdgeSequence>) -> Result<ReflectedSequences> {
    inst.validate()?;
    let red = oriented(&inst.red, inst.sides.lower(), inst.sides.upper(), "red")?;
    reject_center(red.points(), inst.sides.mid)?;
    let centering = Centering::new(inst.n, &inst.sides)?;
    let refl = centering.reflection;
    let (dx, dy) = centering.shift;
    let mid_c = GridPoint::new(refl.c, refl.c);
    let west = GridPoint::new(refl.c - 1, refl.c);

    let blue = inst.blue.translate(dx, dy, refl.n0())?;
    let find = |b: &EdgeSequence| b.edges().iter().position(|e| e.from == mid_c && e.to == west);
    let blue = match find(&blue) {
        Some(i) => blue.rotate_start(i),
        None => {
            let r = blue.reversed();
            let i = find(&r).ok_or_else(|| Error::Precondition("blue is not horizontal at the midpoint".into()))?;
            r.rotate_start(i)
        }
    };
    let mut blue_pts = blue.points();
    blue_pts.push(mid_c);
    let red_pts = red.translate(dx, dy, refl.n0())?.points();

    let n = refl.n0();
    let make = |pts: &[GridPoint], legs: [Vec<GridPoint>; 2]| -> Result<Track> {
        let blocks = blocks_of(pts, &refl);
        for b in &blocks {
            if let Some(c) = b.connector {
                if !(1..n).contains(&c.leg) {
                    return Err(Error::Precondition(format!(
                        "connector leg {} at {} is not in [1, {n})",
                        c.leg, c.start
                    )));
                }
            }
        }
        let [h, t] = legs;
        Ok(Track { head: legs_of(&h), blocks, tail: legs_of(&t) })
    };
    Ok(ReflectedSequences {
        centering,
        blue: make(&blue_pts, blue_legs(&refl))?,
        red: make(&red_pts, red_legs(&refl))?,
    })
}

fn offset_point(p: GridPoint, d: Direction, k: u64) -> GridPoint {
    let x = p.x as i64 + d.dx() as i64 * k as i64;
    let y = p.y as i64 + d.dy() as i64 * k as i64;
    GridPoint::new(x as u32, y as u32)
}

impl ReflectedSequences {
    /// Size of the centred source grid (the `n` of `16 n^2`).
    pub fn n(&self) -> u32 {
        self.centering.reflection.n0()
    }

    pub fn factor(&self) -> u32 {
        8 * self.n()
    }

    pub fn block_len(&self) -> u64 {
        16 * (self.n() as u64).pow(2)
    }

    pub fn output_n(&self) -> u32 {
        self.centering.reflection.output_n() * self.factor()
    }

    fn track(&self, color: Color) -> &Track {
        match color {
            Color::Blue => &self.blue,
            Color::Red => &self.red,
        }
    }

    pub fn edge_kinds(&self, color: Color) -> Vec<EdgeKind> {
        self.track(color).blocks.iter().map(Block::kind).collect()
    }

    /// Excursion height for a block.
    pub fn excursion(&self, kind: EdgeKind) -> u32 {
        let n = self.n();
        match kind {
            EdgeKind::Inward => 4 * n - 2,
            EdgeKind::Outward { leg } => 4 * n - 4 * leg - 2,
        }
    }

    /// Edges before the first block: the corner leg at the start.
    pub fn head_len(&self, color: Color) -> u64 {
        self.track(color).head.iter().map(|l| l.len as u64).sum::<u64>() * self.factor() as u64
    }

    fn tail_len(&self, color: Color) -> u64 {
        self.track(color).tail.iter().map(|l| l.len as u64).sum::<u64>() * self.factor() as u64
    }

    /// Number of block edges: `16 n^2` per source edge.
    pub fn blocks_len(&self, color: Color) -> u64 {
        self.track(color).blocks.len() as u64 * self.block_len()
    }

    /// Total length of the output path, corner legs included.
    pub fn len(&self, color: Color) -> u64 {
        self.head_len(color) + self.blocks_len(color) + self.tail_len(color)
    }

    /// Edge `j` of the stretched source edges; block `j / 16n^2` belongs to
    /// source edge `j / 16n^2`.
    pub fn edge_at(&self, color: Color, j: u64) -> Result<DirectedEdge> {
        let total = self.blocks_len(color);
        if j >= total {
            return Err(Error::IndexOutOfRange { index: j as usize, len: total as usize });
        }
        let block = &self.track(color).blocks[(j / self.block_len()) as usize];
        Ok(self.block_edge(block, j % self.block_len()))
    }

    /// Edge `j` of the full output path from its start corner.
    pub fn path_edge_at(&self, color: Color, j: u64) -> Result<DirectedEdge> {
        let total = self.len(color);
        if j >= total {
            return Err(Error::IndexOutOfRange { index: j as usize, len: total as usize });
        }
        let head = self.head_len(color);
        if j < head {
            return Ok(self.leg_edge(&self.track(color).head, j));
        }
        if j < head + self.blocks_len(color) {
            return self.edge_at(color, j - head);
        }
        Ok(self.leg_edge(&self.track(color).tail, j - head - self.blocks_len(color)))
    }

    fn leg_edge(&self, legs: &[Leg], mut j: u64) -> DirectedEdge {
        let f = self.factor();
        for leg in legs {
            let len = leg.len as u64 * f as u64;
            if j < len {
                let from = offset_point(leg.start.scale(f), leg.dir, j);
                return DirectedEdge { from, to: offset_point(from, leg.dir, 1) };
            }
            j -= len;
        }
        unreachable!("index checked against leg lengths")
    }

    fn block_edge(&self, b: &Block, o: u64) -> DirectedEdge {
        let n = self.n() as u64;
        let f = self.factor();
        let h = self.excursion(b.kind()) as u64;
        let origin = b.tail.scale(f);
        let right = b.dir.right();
        let local = |a: u64, s: u64| offset_point(offset_point(origin, b.dir, a), right, s);
        let rep = 2 + 2 * h;
        let phase_a = 2 * n * rep;
        let (from, to) = if o < phase_a {
            let (k, r) = (o / rep, o % rep);
            let a = 2 * k;
            if r == 0 {
                (local(a, 0), local(a + 1, 0))
            } else if r <= h {
                (local(a + 1, r - 1), local(a + 1, r))
            } else if r == h + 1 {
                (local(a + 1, h), local(a + 2, h))
            } else {
                let s = h - (r - h - 2);
                (local(a + 2, s), local(a + 2, s - 1))
            }
        } else if o < phase_a + 4 * n {
            let a = 4 * n + (o - phase_a);
            (local(a, 0), local(a + 1, 0))
        } else {
            let c = b.connector.expect("only outward blocks run past their edge");
            let k = o - phase_a - 4 * n;
            let leg = c.leg as u64 * f as u64;
            let (start, dir, k) = if k < leg {
                (c.start, toward(c.start, c.corner), k)
            } else {
                (c.corner, toward(c.corner, c.end), k - leg)
            };
            let dir = dir.expect("axis-parallel connector");
            let from = offset_point(start.scale(f), dir, k);
            (from, offset_point(from, dir, 1))
        };
        DirectedEdge { from, to }
    }

    /// Builds the output by walking every block step by step, independently
    /// of [`Self::edge_at`].
    pub fn materialize(&self) -> Result<StConnInstance<EdgeSequence>> {
        let out = self.output_n();
        let f = self.factor() as u64;
        let n = self.n() as u64;
        let build = |color: Color| -> Result<EdgeSequence> {
            let track = self.track(color);
            let mut pts = vec![track.head[0].start.scale(self.factor())];
            let go = |pts: &mut Vec<GridPoint>, d: Direction, k: u64| {
                for _ in 0..k {
                    let last = *pts.last().expect("nonempty");
                    pts.push(offset_point(last, d, 1));
                }
            };
            for leg in &track.head {
                go(&mut pts, leg.dir, leg.len as u64 * f);
            }
            for b in &track.blocks {
                let h = self.excursion(b.kind()) as u64;
                for _ in 0..2 * n {
                    go(&mut pts, b.dir, 1);
                    go(&mut pts, b.dir.right(), h);
                    go(&mut pts, b.dir, 1);
                    go(&mut pts, b.dir.left(), h);
                }
                go(&mut pts, b.dir, 4 * n);
                if let Some(c) = b.connector {
                    for w in [c.start, c.corner, c.end].windows(2) {
                        go(&mut pts, toward(w[0], w[1]).expect("axis run"), c.leg as u64 * f);
                    }
                }
            }
            for leg in &track.tail {
                go(&mut pts, leg.dir, leg.len as u64 * f);
            }
            EdgeSequence::from_points(out, SequenceKind::OpenPath, &pts)
        };
        Ok(StConnInstance { n: out, blue: build(Color::Blue)?, red: build(Color::Red)? })
    }

    /// Source point behind a point of the refined output, if any. Points off
    /// the coarse lines belong to excursions and map to the cell corner below
    /// and to the left of them.
    pub fn map_back(&self, w: GridPoint) -> Option<GridPoint> {
        let f = self.factor();
        self.centering.map_back(GridPoint::new(w.x / f, w.y / f))
    }

    /// The coarse (unrefined) output paths, for comparison with the set form.
    pub fn coarse(&self) -> Result<StConnInstance<EdgeSequence>> {
        let refl = self.centering.reflection;
        let build = |color: Color| -> Result<EdgeSequence> {
            let track = self.track(color);
            let mut pts: Vec<GridPoint> = Vec::new();
            let mut extend = |run: Vec<GridPoint>| {
                let skip = usize::from(!pts.is_empty());
                pts.extend(run.into_iter().skip(skip));
            };
            for l in &track.head {
                extend(walk(l.start, offset_point(l.start, l.dir, l.len as u64)));
            }
            for b in &track.blocks {
                extend(vec![b.tail, offset_point(b.tail, b.dir, 1)]);
                if let Some(c) = b.connector {
                    extend(c.points());
                }
            }
            for l in &track.tail {
                extend(walk(l.start, offset_point(l.start, l.dir, l.len as u64)));
            }
            EdgeSequence::from_points(refl.output_n(), SequenceKind::OpenPath, &pts)
        };
        Ok(StConnInstance { n: refl.output_n(), blue: build(Color::Blue)?, red: build(Color::Red)? })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn p(x: u32, y: u32) -> GridPoint {
        GridPoint::new(x, y)
    }

    fn path(n: u32, pts: &[GridPoint]) -> EdgeSequence {
        EdgeSequence::from_points(n, SequenceKind::OpenPath, pts).unwrap()
    }

    fn staircase_n2() -> StConnInstance<EdgeSequence> {
        // the two staircases meet at (1, 1) and (1, 2)
        let blue = path(2, &[p(0, 2), p(1, 2), p(1, 1), p(2, 1), p(2, 0)]);
        let red = path(2, &[p(0, 0), p(0, 1), p(1, 1), p(1, 2), p(2, 2)]);
        StConnInstance { n: 2, blue, red }
    }

    #[test]
    fn closing_edges_match_lists() {
        for n in 1..6 {
            assert_eq!(closing_blue(n).len(), added_blue_edges(n));
            assert_eq!(extending_red(n).len(), 2 * n as usize + 2);
        }
        let blue = closing_blue(2);
        assert_eq!(blue[0], (0, 2, 0, 3));
        assert!(blue.contains(&(3, 0, 2, 0)));
        assert!(blue.contains(&(4, 0, 3, 0)));
        assert!(blue.contains(&(4, 3, 4, 2)));
    }

    #[test]
    fn stconn_to_jct_preserves_witness() {
        let inst = staircase_n2();
        let sets = inst.to_sets();
        let out = stconn_to_jct_set(&sets).unwrap();
        out.validate().unwrap();
        let before = sets.blue.shared_points(&sets.red).unwrap();
        let after = out.blue.shared_points(&out.red).unwrap();
        let mapped: BTreeSet<GridPoint> = after.iter().filter_map(|&q| stconn_map_back(2, q)).collect();
        assert_eq!(mapped, before);
        assert_eq!(after.len(), before.len());
    }

    #[test]
    fn stconn_seq_matches_set_form() {
        let inst = staircase_n2();
        let red = stconn_to_jct_seq(&inst).unwrap();
        let seq = red.materialize().unwrap();
        seq.validate().unwrap();
        let set = stconn_to_jct_set(&inst.to_sets()).unwrap();
        assert_eq!(seq.blue.to_edge_set(), set.blue);
        assert_eq!(seq.red.to_edge_set(), set.red);
        assert_eq!(seq.blue.len(), inst.blue.len() + added_blue_edges(2));
    }

    #[test]
    fn reflection_maps_back() {
        let r = Reflection { c: 4 };
        for x in 0..=8 {
            for y in 0..=8 {
                let q = p(x, y);
                for quarter in Quarter::ALL {
                    if r.contains(quarter, q) {
                        let w = r.image(quarter, q);
                        assert_eq!(r.preimage(quarter, w), Some(q));
                        assert_eq!(r.map_back(w), Some(q));
                    }
                }
            }
        }
        // both images of a diagonal point are joined through the ring corner
        let c = r.connector(p(2, 2), Quarter::Bottom, Quarter::Left).unwrap();
        assert_eq!((c.start, c.corner, c.end, c.leg), (p(6, 2), p(2, 2), p(2, 6), 4));
        for w in c.points() {
            assert_eq!(r.map_back(w), Some(p(2, 2)));
        }
        assert!(r.connector(p(0, 0), Quarter::Bottom, Quarter::Left).is_none());
    }

    fn crossing_rect() -> JctInstance<EdgeSequence> {
        let mut ring = vec![];
        ring.extend((1..5).map(|x| p(x, 1)));
        ring.extend((1..5).map(|y| p(5, y)));
        ring.extend((2..=5).rev().map(|x| p(x, 5)));
        ring.extend((2..=5).rev().map(|y| p(1, y)));
        let blue = EdgeSequence::from_points(6, SequenceKind::ClosedCurve, &ring).unwrap();
        let mut red = vec![p(3, 4), p(3, 3), p(3, 2), p(3, 1), p(3, 0)];
        red.extend((4..=6).map(|x| p(x, 0)));
        red.extend((1..=6).map(|y| p(6, y)));
        red.extend([p(5, 6), p(4, 6), p(3, 6)]);
        JctInstance { n: 6, blue, red: path(6, &red), sides: SidePair::around(p(3, 5)).unwrap(), offset: (0, 0) }
    }

    #[test]
    fn reflected_set_keeps_intersections_sound() {
        let inst = crossing_rect().to_sets();
        let out = jct_to_stconn_set(&inst).unwrap();
        assert_eq!(out.centering.reflection.c, 5);
        out.output.validate().unwrap();
        let original = inst.blue.shared_points(&inst.red).unwrap();
        let shared = out.output.blue.shared_points(&out.output.red).unwrap();
        assert!(!shared.is_empty());
        for w in shared {
            let q = out.centering.map_back(w).unwrap();
            assert!(original.contains(&q), "{w} maps to {q}");
        }
    }

    #[test]
    fn reflected_sequences_agree() {
        let inst = crossing_rect();
        let seq = jct_to_stconn_seq(&inst).unwrap();
        let set = jct_to_stconn_set(&inst.to_sets()).unwrap();
        let coarse = seq.coarse().unwrap();
        assert_eq!(coarse.blue.to_edge_set(), set.output.blue);
        assert_eq!(coarse.red.to_edge_set(), set.output.red);
        let fine = seq.materialize().unwrap();
        fine.validate().unwrap();
        for color in Color::ALL {
            let path = match color {
                Color::Blue => &fine.blue,
                Color::Red => &fine.red,
            };
            assert_eq!(path.len() as u64, seq.len(color));
            let blocks = seq.edge_kinds(color).len() as u64;
            assert_eq!(seq.blocks_len(color), blocks * seq.block_len());
            for (j, e) in path.edges().iter().enumerate() {
                assert_eq!(seq.path_edge_at(color, j as u64).unwrap(), *e, "{color} edge {j}");
            }
        }
        let original = inst.blue.to_edge_set().shared_points(&inst.red.to_edge_set()).unwrap();
        let shared = fine.blue.to_edge_set().shared_points(&fine.red.to_edge_set()).unwrap();
        assert!(!shared.is_empty());
        for w in shared {
            assert!(original.contains(&seq.map_back(w).unwrap()));
        }
    }
}
