//! Curves given as directed edge sequences: alternating sets, sticking
//! segments, the edge alternation check, merging a path into a curve, and
//! the two-region structure of a refined curve.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{DirectedEdge, Direction, EdgeSequence, EdgeSet, GridPoint, SequenceKind, SidePair};
use crate::parity::{end_fix, normalize_point, normalized_n, EndFix, IntersectionWitness, NORMALIZE_MARGIN};

/// Whether `x` and `y` interleave: between any two elements of one set lies
/// an element of the other.
pub fn alternate(x: &BTreeSet<u32>, y: &BTreeSet<u32>) -> Result<bool> {
    if let Some(v) = x.intersection(y).next() {
        return Err(Error::NotDisjoint(*v as i64));
    }
    Ok(separated(x, y) && separated(y, x))
}

fn separated(x: &BTreeSet<u32>, y: &BTreeSet<u32>) -> bool {
    x.iter()
        .zip(x.iter().skip(1))
        .all(|(&lo, &hi)| y.range(lo + 1..hi).next().is_some())
}

/// Arcs `z -> f(z)` drawn above the number line do not cross.
///
/// `pairs` must be the graph of a bijection between disjoint sets.
pub fn check_crossing_condition(pairs: &[(u32, u32)]) -> Result<bool> {
    check_bijection(pairs)?;
    for (i, &(z1, f1)) in pairs.iter().enumerate() {
        for &(z2, f2) in &pairs[i + 1..] {
            let a: BTreeSet<u32> = [z1, f1].into();
            let b: BTreeSet<u32> = [z2, f2].into();
            if alternate(&a, &b)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn check_bijection(pairs: &[(u32, u32)]) -> Result<()> {
    let mut dom = HashSet::new();
    let mut img = HashSet::new();
    for &(x, y) in pairs {
        if !dom.insert(x) {
            return Err(Error::NotBijection(format!("{x} has two images")));
        }
        if !img.insert(y) {
            return Err(Error::NotBijection(format!("{y} has two preimages")));
        }
    }
    if let Some(v) = dom.intersection(&img).next() {
        return Err(Error::NotBijection(format!("{v} lies in both domain and image")));
    }
    Ok(())
}

/// Finds `z` in `x` outside `[x1, x2]` whose image lies strictly inside
/// `(x1, x2)`.
///
/// Requires `x`, `y` alternating, `f` a non-crossing bijection from `x` onto
/// `y`, `x1 < x2` in `x`, and neither `f(x1)` nor `f(x2)` in `(x1, x2)`.
pub fn alternation_lemma_witness(
    x: &BTreeSet<u32>,
    y: &BTreeSet<u32>,
    f: &BTreeMap<u32, u32>,
    x1: u32,
    x2: u32,
) -> Result<u32> {
    if !alternate(x, y)? {
        return Err(Error::Precondition("X and Y do not alternate".into()));
    }
    let pairs: Vec<(u32, u32)> = f.iter().map(|(&a, &b)| (a, b)).collect();
    check_bijection(&pairs)?;
    if f.keys().copied().collect::<BTreeSet<_>>() != *x || f.values().copied().collect::<BTreeSet<_>>() != *y {
        return Err(Error::NotBijection("f is not a map from X onto Y".into()));
    }
    if !check_crossing_condition(&pairs)? {
        return Err(Error::Precondition("f has crossing arcs".into()));
    }
    if !(x1 < x2 && x.contains(&x1) && x.contains(&x2)) {
        return Err(Error::Precondition(format!("need x1 < x2 in X, got {x1}, {x2}")));
    }
    let inside = |v: u32, lo: u32, hi: u32| lo < v && v < hi;
    if inside(f[&x1], x1, x2) || inside(f[&x2], x1, x2) {
        return Err(Error::Precondition("f(x1) or f(x2) lies in (x1, x2)".into()));
    }
    let preimage: BTreeMap<u32, u32> = f.iter().map(|(&a, &b)| (b, a)).collect();

    // shrink the right end until the preimage of the top Y point escapes
    let mut hi = x2;
    let z = loop {
        let Some(&y1) = y.range(..hi).next_back().filter(|&&v| v > x1) else {
            return Err(Error::LemmaViolation(format!("no Y point between {x1} and {hi}")));
        };
        let z = preimage[&y1];
        if z < x1 || z > hi {
            break z;
        }
        if z == x1 || z == hi {
            return Err(Error::LemmaViolation(format!("{z} maps into its own interval")));
        }
        hi = z;
    };
    if (z < x1 || z > x2) && inside(f[&z], x1, x2) {
        Ok(z)
    } else {
        Err(Error::LemmaViolation(format!("{z} is not a witness for ({x1}, {x2})")))
    }
}

/// The points `p_a..=p_b` of a closed curve, both ends on the line `x = line`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Segment {
    pub a: usize,
    pub b: usize,
    pub line: u32,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentClass {
    pub sticks: bool,
    pub minimal: bool,
    pub entirely_on: bool,
}

/// Flags of the segment `p_a..=p_b` of `p` (indices as given) with respect to
/// the line `x = m`.
pub fn classify_segment(p: &EdgeSequence, a: usize, b: usize, m: u32) -> Result<SegmentClass> {
    if !p.is_closed() {
        return Err(Error::Precondition("segments are taken on closed curves".into()));
    }
    let pts = p.points();
    if b >= pts.len() {
        return Err(Error::IndexOutOfRange { index: b, len: pts.len() });
    }
    if a > b {
        return Err(Error::IndexOutOfRange { index: a, len: b + 1 });
    }
    Ok(classify_points(&pts, a, b, m))
}

fn classify_points(pts: &[GridPoint], a: usize, b: usize, m: u32) -> SegmentClass {
    let ends = pts[a].x == m && pts[b].x == m;
    let interior = &pts[(a + 1).min(b)..b];
    let sticks = ends && interior.iter().all(|q| q.x <= m);
    SegmentClass {
        sticks,
        minimal: sticks && b - a > 1 && interior.iter().all(|q| q.x < m),
        entirely_on: pts[a..=b].iter().all(|q| q.x == m),
    }
}

/// Re-indexes a closed curve so its last edge is a vertical edge on the
/// rightmost occupied column. Among such edges the one whose forward end has
/// the least pair code is chosen. With this indexing no segment sticking to
/// any line wraps past the last index.
pub fn canonical_indexing(p: &EdgeSequence) -> EdgeSequence {
    assert!(p.is_closed(), "canonical indexing applies to closed curves");
    let right = p.edges().iter().map(|e| e.from.x).max().unwrap_or(0);
    let start = p
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| !e.is_horizontal() && e.from.x == right)
        .min_by_key(|(_, e)| e.to.code())
        .map(|(i, _)| (i + 1) % p.len())
        .expect("every point on the rightmost column has a vertical neighbour");
    p.rotate_start(start)
}

/// A closed curve in canonical indexing, with segment queries.
#[derive(Clone, Debug)]
pub struct IndexedCurve {
    seq: EdgeSequence,
    pts: Vec<GridPoint>,
}

impl IndexedCurve {
    pub fn new(p: &EdgeSequence) -> Result<IndexedCurve> {
        if !p.is_closed() {
            return Err(Error::Precondition("expected a closed curve".into()));
        }
        let seq = canonical_indexing(p);
        let pts = seq.points();
        Ok(IndexedCurve { seq, pts })
    }

    pub fn sequence(&self) -> &EdgeSequence {
        &self.seq
    }

    pub fn points(&self) -> &[GridPoint] {
        &self.pts
    }

    pub fn classify(&self, a: usize, b: usize, m: u32) -> Result<SegmentClass> {
        classify_segment(&self.seq, a, b, m)
    }

    /// Minimal sticking segments on `x = m`, in index order.
    pub fn minimal_segments(&self, m: u32) -> Vec<Segment> {
        let pts = &self.pts;
        let mut out = Vec::new();
        let mut i = 0;
        while i + 1 < pts.len() {
            if pts[i].x == m && pts[i + 1].x + 1 == m {
                let mut j = i + 1;
                while j < pts.len() && pts[j].x < m {
                    j += 1;
                }
                if j < pts.len() && pts[j].x == m {
                    out.push(Segment { a: i, b: j, line: m });
                }
                i = j;
            } else {
                i += 1;
            }
        }
        out
    }

    /// Every segment `[a, b]` with `a < b` sticking to `x = m`.
    pub fn sticking_segments(&self, m: u32) -> Vec<Segment> {
        let pts = &self.pts;
        let mut out = Vec::new();
        for a in (0..pts.len()).filter(|&a| pts[a].x == m) {
            for b in a + 1..pts.len() {
                if pts[b].x > m {
                    break;
                }
                if pts[b].x == m {
                    out.push(Segment { a, b, line: m });
                }
            }
        }
        out
    }

    fn end_heights(&self, segs: &[Segment]) -> (BTreeSet<u32>, BTreeSet<u32>) {
        (
            segs.iter().map(|s| self.pts[s.a].y).collect(),
            segs.iter().map(|s| self.pts[s.b].y).collect(),
        )
    }

    /// No two index-disjoint sticking segments on `x = m` have alternating
    /// end heights. Returns the first offending pair, if any.
    pub fn disjoint_pair_violation(&self, m: u32) -> Option<(Segment, Segment)> {
        let segs = self.sticking_segments(m);
        for s in &segs {
            for t in segs.iter().filter(|t| t.a > s.b) {
                let x: BTreeSet<u32> = [self.pts[s.a].y, self.pts[s.b].y].into();
                let y: BTreeSet<u32> = [self.pts[t.a].y, self.pts[t.b].y].into();
                if alternate(&x, &y).unwrap_or(false) {
                    return Some((*s, *t));
                }
            }
        }
        None
    }

    /// For each sticking segment on `x = m`, the start and end heights of its
    /// minimal subsegments alternate. Returns the first failing segment.
    pub fn subsegment_alternation_violation(&self, m: u32) -> Option<Segment> {
        let minimal = self.minimal_segments(m);
        self.sticking_segments(m).into_iter().find(|s| {
            let inner: Vec<Segment> =
                minimal.iter().copied().filter(|q| q.a >= s.a && q.b <= s.b).collect();
            let (a, b) = self.end_heights(&inner);
            !alternate(&a, &b).unwrap_or(false)
        })
    }
}

/// Minimal segments sticking to `x = m`, indexed canonically (see
/// [`canonical_indexing`]).
pub fn minimal_segments(p: &EdgeSequence, m: u32) -> Result<Vec<Segment>> {
    Ok(IndexedCurve::new(p)?.minimal_segments(m))
}

/// Heights of the left-pointing (`a`) and right-pointing (`b`) horizontal
/// edges in column `m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnAlternation {
    pub m: u32,
    pub a: BTreeSet<u32>,
    pub b: BTreeSet<u32>,
}

impl ColumnAlternation {
    pub fn alternates(&self) -> bool {
        alternate(&self.a, &self.b).unwrap_or(false)
    }
}

pub fn column_sets(p: &EdgeSequence, m: u32) -> ColumnAlternation {
    column_sets_of_edges(p.edges(), m)
}

/// [`column_sets`] for an arbitrary list of directed edges.
pub fn column_sets_of_edges(edges: &[DirectedEdge], m: u32) -> ColumnAlternation {
    let mut col = ColumnAlternation { m, a: BTreeSet::new(), b: BTreeSet::new() };
    for e in edges {
        match e.direction() {
            Direction::West if e.to.x == m => {
                col.a.insert(e.to.y);
            }
            Direction::East if e.from.x == m => {
                col.b.insert(e.from.y);
            }
            _ => {}
        }
    }
    col
}

/// Same sets read off the minimal segments sticking to `x = m + 1`: their
/// first edges point left, their last edges point right.
pub fn column_sets_from_segments(p: &EdgeSequence, m: u32) -> Result<ColumnAlternation> {
    let curve = IndexedCurve::new(p)?;
    let segs = curve.minimal_segments(m + 1);
    let (a, b) = curve.end_heights(&segs);
    Ok(ColumnAlternation { m, a, b })
}

/// Every column's left- and right-pointing edge heights alternate.
pub fn check_edge_alternation(p: &EdgeSequence) -> bool {
    edges_alternate(p.edges(), p.n())
}

/// [`check_edge_alternation`] for a list of directed edges that need not
/// form a simple curve. A slot used in both directions counts as a failure.
pub fn edges_alternate(edges: &[DirectedEdge], n: u32) -> bool {
    (0..n).all(|m| column_sets_of_edges(edges, m).alternates())
}

fn oriented_from(red: &EdgeSequence, start: GridPoint) -> Result<EdgeSequence> {
    match (red.start(), red.end()) {
        (Some(s), _) if s == start => Ok(red.clone()),
        (_, Some(e)) if e == start => Ok(red.reversed()),
        _ => Err(Error::Precondition(format!("red path does not end at {start}"))),
    }
}

fn check_seq_hypotheses(blue: &EdgeSequence, red: &EdgeSequence, sides: &SidePair) -> Result<EdgeSequence> {
    if blue.n() != red.n() {
        return Err(Error::GridMismatch(blue.n(), red.n()));
    }
    if !blue.is_closed() {
        return Err(Error::Precondition("blue sequence is not a closed curve".into()));
    }
    if red.is_closed() || red.is_empty() {
        return Err(Error::Precondition("red sequence is not an open path".into()));
    }
    let red = oriented_from(red, sides.lower())?;
    if red.end() != Some(sides.upper()) {
        return Err(Error::Precondition("red path does not connect p1 and p2".into()));
    }
    if !blue.to_edge_set().on_different_sides(sides.p1, sides.p2) {
        return Err(Error::Precondition("p1 and p2 do not lie on different sides of blue".into()));
    }
    Ok(red)
}

/// Sequence form of the doubling-and-detour normalisation: the red path is
/// returned oriented from the lower side point to the upper one, leaving the
/// lower point leftwards and entering the upper point from the left.
pub fn normalize_sequences(
    blue: &EdgeSequence,
    red: &EdgeSequence,
    sides: &SidePair,
) -> Result<(EdgeSequence, EdgeSequence, SidePair)> {
    let red = check_seq_hypotheses(blue, red, sides)?;
    let big = normalized_n(blue.n());
    let m = NORMALIZE_MARGIN as i64;
    let blue2 = blue.refine(2).translate(m, m, big)?;
    let red2 = red.refine(2).translate(m, m, big)?;
    let red_set = red2.to_edge_set();
    let mut pts = red2.points();

    let lo = normalize_point(sides.lower());
    let hi = normalize_point(sides.upper());
    let step = |q: GridPoint, dx: i64, dy: i64| q.offset(dx, dy).expect("margin");

    let lo_left = step(lo, -1, 0);
    let mut head = vec![step(lo, 0, 1), step(lo_left, 0, 1), lo_left];
    match end_fix(&red_set, lo, 1)? {
        EndFix::Degenerate => {
            pts.remove(0);
            pts.remove(0);
        }
        EndFix::Detour => {
            pts.remove(0);
            head.push(lo);
        }
    }
    let hi_left = step(hi, -1, 0);
    let mut tail = vec![hi_left, step(hi_left, 0, -1), step(hi, 0, -1)];
    match end_fix(&red_set, hi, -1)? {
        EndFix::Degenerate => {
            pts.pop();
            pts.pop();
        }
        EndFix::Detour => {
            pts.pop();
            tail.insert(0, hi);
        }
    }
    let all: Vec<GridPoint> = head.into_iter().chain(pts).chain(tail).collect();
    let red_out = EdgeSequence::from_points(big, SequenceKind::OpenPath, &all)?;
    let sides2 = SidePair::new(all[0], *all.last().expect("nonempty"))?;
    Ok((blue2, red_out, sides2))
}

fn merge_ready(blue: &EdgeSet, red: &EdgeSequence, sides: &SidePair) -> bool {
    let p1 = sides.lower();
    let (m, j) = (sides.mid.x, sides.mid.y);
    let n = blue.n();
    if m == 0 || m + 1 > n {
        return false;
    }
    let corner = GridPoint::new(m + 1, j - 1);
    let red_pts: HashSet<GridPoint> = red.points().into_iter().collect();
    red.edges()[0].to == GridPoint::new(m - 1, p1.y)
        && blue.degree(corner) == 0
        && !red_pts.contains(&corner)
}

/// Splices a red path that avoids the blue curve into it, producing a simple
/// closed curve whose edges r1 (leaving p1) and b1 (leaving the midpoint)
/// point the same way in adjacent rows of one column. The result therefore
/// fails [`check_edge_alternation`].
///
/// Inputs not already in the required shape are normalised first, so the
/// output may live on a larger grid.
pub fn merge_paths(blue: &EdgeSequence, red: &EdgeSequence, sides: &SidePair) -> Result<EdgeSequence> {
    let red = check_seq_hypotheses(blue, red, sides)?;
    let blue_set = blue.to_edge_set();
    if let Some(p) = blue_set.shared_points(&red.to_edge_set())?.into_iter().next() {
        return Err(Error::Precondition(format!("blue and red intersect at {p}")));
    }
    let (blue, red, sides) = if merge_ready(&blue_set, &red, sides) {
        (blue.clone(), red, *sides)
    } else {
        normalize_sequences(blue, &red, sides)?
    };
    let edges = splice_edges(&blue, &red, &sides)?;
    EdgeSequence::new(blue.n(), SequenceKind::ClosedCurve, edges)
}

/// The raw edge chain of the merge: blue from the midpoint westwards round
/// to its east neighbour, down to the corner beside p1, then red from p1 to
/// p2 and back up to the midpoint. No simplicity check is made, so red paths
/// that touch blue give chains revisiting points.
///
/// Requires blue closed and horizontal through the midpoint, and red an open
/// path from the lower side point to the upper one.
pub fn splice_edges(blue: &EdgeSequence, red: &EdgeSequence, sides: &SidePair) -> Result<Vec<DirectedEdge>> {
    let (m, j) = (sides.mid.x, sides.mid.y);
    if m == 0 || j == 0 || m + 1 > blue.n() {
        return Err(Error::Precondition("midpoint too close to the border".into()));
    }
    let mid = sides.mid;
    let west = GridPoint::new(m - 1, j);
    let east = GridPoint::new(m + 1, j);
    let shape = || Error::Precondition("blue does not pass horizontally through the midpoint".into());

    let find = |b: &EdgeSequence| b.edges().iter().position(|e| e.from == mid && e.to == west);
    let blue = match find(blue) {
        Some(i) => blue.rotate_start(i),
        None => {
            let r = blue.reversed();
            let i = find(&r).ok_or_else(shape)?;
            r.rotate_start(i)
        }
    };
    let mut edges = blue.edges().to_vec();
    if edges.pop().map(|e| e.from) != Some(east) {
        return Err(shape());
    }
    let corner = GridPoint::new(m + 1, j - 1);
    let red = oriented_from(red, sides.lower())?;
    edges.push(directed(east, corner));
    edges.push(directed(corner, sides.lower()));
    edges.extend_from_slice(red.edges());
    let end = red.end().unwrap_or(sides.lower());
    edges.push(DirectedEdge::new(end, mid).map_err(|_| Error::Precondition("red path does not end at p2".into()))?);
    Ok(edges)
}

/// Shared point of least pair code of a closed blue curve and a red path
/// joining two points on different sides of it.
pub fn find_intersection_seq(
    blue: &EdgeSequence,
    red: &EdgeSequence,
    sides: &SidePair,
) -> Result<IntersectionWitness> {
    let red_oriented = check_seq_hypotheses(blue, red, sides)?;
    let (bs, rs) = (blue.to_edge_set(), red_oriented.to_edge_set());
    match bs.shared_points(&rs)?.into_iter().next() {
        Some(p) => Ok(IntersectionWitness::at(p, &bs, &rs)),
        None => {
            let detail = match merge_paths(blue, &red_oriented, sides) {
                Ok(merged) => format!("merged curve alternates: {}", check_edge_alternation(&merged)),
                Err(e) => format!("merge failed: {e}"),
            };
            Err(Error::TheoremViolation(format!("blue curve and red path are disjoint ({detail})")))
        }
    }
}

/// Refinement factor used for the two-region construction.
pub const REGION_REFINEMENT: u32 = 3;

/// Offset rings around a refined curve: `q1` one unit to the left of travel,
/// `q2` one unit to the right. Every point of either ring is off `refined`
/// and within Chebyshev distance 1 of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SideSequences {
    pub refined: EdgeSequence,
    pub q1: EdgeSequence,
    pub q2: EdgeSequence,
}

fn touches_border(p: &EdgeSequence) -> bool {
    let n = p.n();
    p.points().iter().any(|q| q.x == 0 || q.y == 0 || q.x == n || q.y == n)
}

fn toward(from: GridPoint, to: GridPoint) -> Option<Direction> {
    match (from.x.cmp(&to.x), from.y.cmp(&to.y)) {
        (std::cmp::Ordering::Less, std::cmp::Ordering::Equal) => Some(Direction::East),
        (std::cmp::Ordering::Greater, std::cmp::Ordering::Equal) => Some(Direction::West),
        (std::cmp::Ordering::Equal, std::cmp::Ordering::Less) => Some(Direction::North),
        (std::cmp::Ordering::Equal, std::cmp::Ordering::Greater) => Some(Direction::South),
        _ => None,
    }
}

fn offset_ring(pts: &[GridPoint], n: u32, side: fn(Direction) -> Direction) -> Result<EdgeSequence> {
    let t = pts.len();
    let dir = |i: usize| Direction::between(pts[i % t], pts[(i + 1) % t]).expect("adjacent");
    let corners: Vec<GridPoint> = (0..t)
        .map(|i| {
            let (d_in, d_out) = (dir(i + t - 1), dir(i));
            let (mut dx, mut dy) = (side(d_in).dx() as i64, side(d_in).dy() as i64);
            if d_in != d_out {
                dx += side(d_out).dx() as i64;
                dy += side(d_out).dy() as i64;
            }
            pts[i].offset(dx, dy).expect("no border points")
        })
        .collect();
    let mut ring: Vec<GridPoint> = Vec::new();
    for i in 0..t {
        let (c, next) = (corners[i], corners[(i + 1) % t]);
        if ring.last() != Some(&c) {
            ring.push(c);
        }
        if c == next {
            continue;
        }
        let d = toward(c, next).ok_or_else(|| {
            Error::TheoremViolation(format!("offset corners {c} and {next} are not aligned"))
        })?;
        let mut q = c.step(d).expect("inside grid");
        while q != next {
            ring.push(q);
            q = q.step(d).expect("inside grid");
        }
    }
    if ring.len() > 1 && ring.first() == ring.last() {
        ring.pop();
    }
    EdgeSequence::from_points(n, SequenceKind::ClosedCurve, &ring)
        .map_err(|e| Error::TheoremViolation(format!("offset ring is not a simple curve: {e}")))
}

/// Refines `p` three times and builds the two offset rings.
pub fn side_sequences(p: &EdgeSequence) -> Result<SideSequences> {
    if !p.is_closed() {
        return Err(Error::Precondition("expected a closed curve".into()));
    }
    if touches_border(p) {
        return Err(Error::Precondition("curve has a point on the grid border".into()));
    }
    let refined = p.refine(REGION_REFINEMENT);
    let pts = refined.points();
    let n = refined.n();
    let q1 = offset_ring(&pts, n, Direction::left)?;
    let q2 = offset_ring(&pts, n, Direction::right)?;
    Ok(SideSequences { refined, q1, q2 })
}

/// Open path from a refined-grid point to one of the side points, avoiding
/// the refined curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connection {
    pub target: GridPoint,
    pub path: EdgeSequence,
}

/// Joins `p` (on the refined grid, off the refined curve) to whichever of
/// `sides.p1`, `sides.p2` lies on the offset ring nearest to `p`, by a
/// staircase to the nearest ring point (x-moves first) and then along the
/// ring the shorter way round. Ring distance ties go to `q1`; equally near
/// ring points are broken by least pair code.
pub fn region_connect(p: &EdgeSequence, point: GridPoint, sides: &SidePair) -> Result<Connection> {
    let rings = side_sequences(p)?;
    let n = rings.refined.n();
    let curve = rings.refined.to_edge_set();
    if !point.within(n) {
        return Err(Error::OutOfGrid { point, n });
    }
    if curve.degree(point) > 0 {
        return Err(Error::Precondition(format!("{point} lies on the refined curve")));
    }
    if !curve.on_different_sides(sides.p1, sides.p2) {
        return Err(Error::Precondition("p1 and p2 do not lie on different sides of the refined curve".into()));
    }
    if point == sides.p1 || point == sides.p2 {
        return Ok(Connection { target: point, path: EdgeSequence::new(n, SequenceKind::OpenPath, vec![])? });
    }

    let nearest = |ring: &EdgeSequence| {
        ring.points()
            .into_iter()
            .enumerate()
            .min_by_key(|(_, q)| (point.manhattan(*q), q.code()))
            .expect("rings are nonempty")
    };
    let (i1, c1) = nearest(&rings.q1);
    let (i2, c2) = nearest(&rings.q2);
    let (ring, start, q) = if point.manhattan(c1) <= point.manhattan(c2) {
        (&rings.q1, i1, c1)
    } else {
        (&rings.q2, i2, c2)
    };

    let mut path = vec![point];
    let mut cur = point;
    while cur != q {
        let d = if cur.x != q.x {
            if cur.x < q.x { Direction::East } else { Direction::West }
        } else if cur.y < q.y {
            Direction::North
        } else {
            Direction::South
        };
        cur = cur.step(d).expect("inside grid");
        path.push(cur);
    }

    let ring_pts = ring.points();
    let t = ring_pts.len();
    let target_idx = ring_pts
        .iter()
        .position(|r| *r == sides.p1 || *r == sides.p2)
        .ok_or_else(|| Error::TheoremViolation("nearest ring holds neither side point".into()))?;
    let forward = (target_idx + t - start) % t;
    if forward <= t - forward {
        path.extend((1..=forward).map(|k| ring_pts[(start + k) % t]));
    } else {
        path.extend((1..=t - forward).map(|k| ring_pts[(start + t - k) % t]));
    }
    let path = EdgeSequence::from_points(n, SequenceKind::OpenPath, &path)
        .map_err(|e| Error::TheoremViolation(format!("connection is not a simple path: {e}")))?;
    Ok(Connection { target: ring_pts[target_idx], path })
}

/// Connected components of the points off the curve refined by `factor`,
/// under 4-adjacency.
pub fn count_regions_with_factor(p: &EdgeSequence, factor: u32) -> usize {
    let refined = p.refine(factor);
    let n = refined.n();
    let side = n as usize + 1;
    let mut blocked = vec![false; side * side];
    for q in refined.points() {
        blocked[q.y as usize * side + q.x as usize] = true;
    }
    let mut regions = 0;
    for start in 0..blocked.len() {
        if blocked[start] {
            continue;
        }
        regions += 1;
        blocked[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(idx) = queue.pop_front() {
            let here = GridPoint::new((idx % side) as u32, (idx / side) as u32);
            for q in here.neighbors(n) {
                let j = q.y as usize * side + q.x as usize;
                if !blocked[j] {
                    blocked[j] = true;
                    queue.push_back(j);
                }
            }
        }
    }
    regions
}

/// Regions cut out by the curve after threefold refinement.
pub fn count_regions(p: &EdgeSequence) -> usize {
    count_regions_with_factor(p, REGION_REFINEMENT)
}

/// Component label of every point of the grid refined by `factor`; `None`
/// for points on the curve.
pub fn region_labels(p: &EdgeSequence, factor: u32) -> Vec<Option<usize>> {
    let refined = p.refine(factor);
    let n = refined.n();
    let side = n as usize + 1;
    let on_curve: HashSet<GridPoint> = refined.points().into_iter().collect();
    let mut labels: Vec<Option<usize>> = vec![None; side * side];
    let mut next = 0;
    for start in 0..labels.len() {
        let sp = GridPoint::new((start % side) as u32, (start / side) as u32);
        if labels[start].is_some() || on_curve.contains(&sp) {
            continue;
        }
        labels[start] = Some(next);
        let mut queue = VecDeque::from([sp]);
        while let Some(here) = queue.pop_front() {
            for q in here.neighbors(n) {
                let j = q.y as usize * side + q.x as usize;
                if labels[j].is_none() && !on_curve.contains(&q) {
                    labels[j] = Some(next);
                    queue.push_back(q);
                }
            }
        }
        next += 1;
    }
    labels
}

pub(crate) fn directed(from: GridPoint, to: GridPoint) -> DirectedEdge {
    DirectedEdge::new(from, to).expect("adjacent points")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: u32, y: u32) -> GridPoint {
        GridPoint::new(x, y)
    }

    fn set(v: &[u32]) -> BTreeSet<u32> {
        v.iter().copied().collect()
    }

    /// Counterclockwise rectangle starting at its lower-left corner.
    fn rect(n: u32, x0: u32, y0: u32, x1: u32, y1: u32) -> EdgeSequence {
        let mut pts = Vec::new();
        pts.extend((x0..x1).map(|x| p(x, y0)));
        pts.extend((y0..y1).map(|y| p(x1, y)));
        pts.extend((x0 + 1..=x1).rev().map(|x| p(x, y1)));
        pts.extend((y0 + 1..=y1).rev().map(|y| p(x0, y)));
        EdgeSequence::from_points(n, SequenceKind::ClosedCurve, &pts).unwrap()
    }

    /// A curve whose outside has a two-point pocket reachable only through a
    /// gap between two curve points.
    fn pocket() -> EdgeSequence {
        let mut pts = vec![p(2, 3), p(2, 2), p(3, 2), p(4, 2), p(5, 2), p(5, 3), p(5, 4)];
        pts.extend([p(4, 4), p(3, 4), p(2, 4), p(2, 5), p(2, 6)]);
        pts.extend((3..=7).map(|x| p(x, 6)));
        pts.extend((1..=5).rev().map(|y| p(7, y)));
        pts.extend((1..=6).rev().map(|x| p(x, 1)));
        pts.extend([p(1, 2), p(1, 3)]);
        EdgeSequence::from_points(8, SequenceKind::ClosedCurve, &pts).unwrap()
    }

    #[test]
    fn alternate_examples() {
        assert!(alternate(&set(&[1, 5]), &set(&[3])).unwrap());
        assert!(!alternate(&set(&[1, 3]), &set(&[5, 7])).unwrap());
        assert!(alternate(&set(&[]), &set(&[2, 9])).unwrap() == false);
        assert!(alternate(&set(&[]), &set(&[4])).unwrap());
        assert!(matches!(alternate(&set(&[1, 2]), &set(&[2])), Err(Error::NotDisjoint(2))));
    }

    #[test]
    fn crossing_examples() {
        assert!(!check_crossing_condition(&[(1, 4), (6, 3)]).unwrap());
        assert!(check_crossing_condition(&[(1, 2), (5, 6)]).unwrap());
        assert!(check_crossing_condition(&[(1, 6), (2, 5)]).unwrap());
        assert!(matches!(check_crossing_condition(&[(1, 2), (1, 3)]), Err(Error::NotBijection(_))));
        assert!(matches!(check_crossing_condition(&[(1, 2), (2, 3)]), Err(Error::NotBijection(_))));
    }

    #[test]
    fn lemma_witness_on_three_points() {
        let x = set(&[2, 6, 10]);
        let y = set(&[4, 8, 12]);
        let f: BTreeMap<u32, u32> = [(2, 8), (6, 4), (10, 12)].into();
        assert!(check_crossing_condition(&[(2, 8), (6, 4), (10, 12)]).unwrap());
        assert_eq!(alternation_lemma_witness(&x, &y, &f, 6, 10).unwrap(), 2);
        // f(2) = 8 lies in (2, 10)
        assert!(matches!(alternation_lemma_witness(&x, &y, &f, 2, 10), Err(Error::Precondition(_))));
        let crossing: BTreeMap<u32, u32> = [(2, 8), (6, 12), (10, 4)].into();
        assert!(matches!(alternation_lemma_witness(&x, &y, &crossing, 6, 10), Err(Error::Precondition(_))));
    }

    #[test]
    fn lemma_witness_scan() {
        let x = set(&[1, 3, 5, 7]);
        let y = set(&[2, 4, 6, 8]);
        let f: BTreeMap<u32, u32> = [(1, 8), (3, 2), (5, 6), (7, 4)].into();
        let pairs: Vec<(u32, u32)> = f.iter().map(|(a, b)| (*a, *b)).collect();
        assert!(check_crossing_condition(&pairs).unwrap());
        // (3, 5): f(3) = 2, f(5) = 6 outside; the Y point 4 comes from 7
        let z = alternation_lemma_witness(&x, &y, &f, 3, 5).unwrap();
        assert_eq!(z, 7);
    }

    #[test]
    fn classify_and_segments_on_rectangle() {
        let r = rect(6, 1, 1, 4, 3);
        let c = IndexedCurve::new(&r).unwrap();
        let pts = c.points().to_vec();
        // last edge vertical on x = 4
        assert_eq!(pts[0].x, 4);
        assert_eq!(pts[pts.len() - 1].x, 4);
        let segs = c.minimal_segments(4);
        assert_eq!(segs.len(), 1);
        let s = segs[0];
        assert_eq!((pts[s.a], pts[s.b]), (p(4, 3), p(4, 1)));
        assert_eq!(c.minimal_segments(2).len(), 1);
        assert!(c.minimal_segments(0).is_empty());
        assert!(c.minimal_segments(1).is_empty());
        let cls = c.classify(s.a, s.b, 4).unwrap();
        assert!(cls.sticks && cls.minimal && !cls.entirely_on);
        let single = c.classify(0, 0, 4).unwrap();
        assert!(single.sticks && !single.minimal && single.entirely_on);
        assert!(matches!(c.classify(0, 99, 4), Err(Error::IndexOutOfRange { .. })));
        let right = classify_segment(&r, 0, 3, 1).unwrap();
        assert_eq!(right, SegmentClass::default());
    }

    #[test]
    fn column_sets_on_rectangle() {
        let r = rect(6, 0, 0, 3, 2);
        for m in 0..3 {
            let col = column_sets(&r, m);
            assert_eq!(col.a, set(&[2]));
            assert_eq!(col.b, set(&[0]));
            assert_eq!(column_sets_from_segments(&r, m).unwrap(), col);
        }
        let col = column_sets(&r, 4);
        assert!(col.a.is_empty() && col.b.is_empty());
        let rev = column_sets(&r.reversed(), 1);
        assert_eq!((rev.a, rev.b), (set(&[0]), set(&[2])));
        assert!(check_edge_alternation(&r));
    }

    #[test]
    fn pocket_curve_alternates() {
        let c = pocket();
        assert!(check_edge_alternation(&c));
        for m in 0..8 {
            assert_eq!(column_sets_from_segments(&c, m).unwrap(), column_sets(&c, m));
        }
    }

    #[test]
    fn merge_rejects_intersecting_input() {
        let blue = rect(10, 3, 4, 6, 7);
        let sides = SidePair::new(p(4, 3), p(4, 5)).unwrap();
        let red = EdgeSequence::from_points(10, SequenceKind::OpenPath, &[p(4, 3), p(4, 4), p(4, 5)]).unwrap();
        assert!(matches!(merge_paths(&blue, &red, &sides), Err(Error::Precondition(_))));
        assert_eq!(find_intersection_seq(&blue, &red, &sides).unwrap().point, p(4, 4));
    }

    #[test]
    fn splice_breaks_alternation() {
        // red leaves p1 westwards and tunnels through the blue square to p2
        let blue = rect(10, 3, 4, 6, 7);
        let sides = SidePair::new(p(4, 3), p(4, 5)).unwrap();
        let red = EdgeSequence::from_points(
            10,
            SequenceKind::OpenPath,
            &[p(4, 3), p(3, 3), p(2, 3), p(2, 4), p(2, 5), p(3, 5), p(4, 5)],
        )
        .unwrap();
        let edges = splice_edges(&blue, &red, &sides).unwrap();
        for w in edges.windows(2) {
            assert_eq!(w[0].to, w[1].from);
        }
        assert_eq!(edges.last().unwrap().to, edges[0].from);
        let col = column_sets_of_edges(&edges, 3);
        assert!(col.a.contains(&3) && col.a.contains(&4));
        assert!(!edges_alternate(&edges, 10));
        assert!(EdgeSequence::new(10, SequenceKind::ClosedCurve, edges).is_err());
    }

    #[test]
    fn side_rings_of_rectangle() {
        let r = rect(6, 1, 1, 4, 3);
        let s = side_sequences(&r).unwrap();
        assert_eq!(s.refined.n(), 18);
        // counterclockwise: the left ring is inside
        let inner = s.q1.to_edge_set();
        let outer = s.q2.to_edge_set();
        assert_eq!(inner.len(), 2 * (7 + 4));
        assert_eq!(outer.len(), 2 * (11 + 8));
        let curve = s.refined.to_edge_set();
        assert!(!curve.intersects(&inner).unwrap());
        assert!(!curve.intersects(&outer).unwrap());
        assert!(matches!(side_sequences(&rect(4, 0, 0, 2, 2)), Err(Error::Precondition(_))));
    }

    #[test]
    fn pocket_needs_refinement() {
        let c = pocket();
        assert_eq!(count_regions_with_factor(&c, 1), 3);
        assert_eq!(count_regions(&c), 2);
        let s = side_sequences(&c).unwrap();
        let curve = s.refined.to_edge_set();
        assert!(!curve.intersects(&s.q1.to_edge_set()).unwrap());
        assert!(!curve.intersects(&s.q2.to_edge_set()).unwrap());
    }

    #[test]
    fn connect_inside_and_outside() {
        let r = rect(6, 1, 1, 4, 3);
        let s = side_sequences(&r).unwrap();
        // midpoint on the refined bottom edge y = 3
        let sides = SidePair::around(p(6, 3)).unwrap();
        let inside = region_connect(&r, p(6, 6), &sides).unwrap();
        assert_eq!(inside.target, p(6, 4));
        let outside = region_connect(&r, p(16, 16), &sides).unwrap();
        assert_eq!(outside.target, p(6, 2));
        let curve = s.refined.to_edge_set();
        for c in [&inside, &outside] {
            assert!(!curve.intersects(&c.path.to_edge_set()).unwrap());
            assert_eq!(c.path.end(), Some(c.target));
        }
        let trivial = region_connect(&r, p(6, 2), &sides).unwrap();
        assert!(trivial.path.is_empty());
        assert!(matches!(region_connect(&r, p(3, 3), &sides), Err(Error::Precondition(_))));
    }

    #[test]
    fn pocket_point_connects_outside() {
        let c = pocket();
        // midpoint on the refined top edge; p2 above it is outside
        let sides = SidePair::around(p(10, 18)).unwrap();
        let conn = region_connect(&c, p(10, 10), &sides).unwrap();
        assert_eq!(conn.target, p(10, 19));
        let labels = region_labels(&c, 3);
        let side = 25;
        let lab = |q: GridPoint| labels[q.y as usize * side + q.x as usize];
        assert_eq!(lab(p(10, 10)), lab(p(0, 0)));
        assert_eq!(lab(conn.target), lab(p(10, 10)));
    }
}
