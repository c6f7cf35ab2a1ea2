//! Parity argument for curves given as edge sets.
//!
//! A horizontal red edge is *odd* when an odd number of horizontal blue edges
//! lie strictly below it in the same column. The parity of the number of odd
//! red edges per column forms the [`ParityProfile`]; for a blue curve and a
//! red path joining two points on different sides of it, that profile cannot
//! be consistent unless the two sets share a point.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{Edge, EdgeSet, GridPoint, SidePair};

/// Per-column parities of the odd red edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityProfile {
    /// `bits[k]` for columns `0..n`.
    pub bits: Vec<u8>,
    pub m: Option<u32>,
}

impl ParityProfile {
    /// Column boundaries `k` (between `k` and `k + 1`) where the bit changes.
    pub fn flips(&self) -> Vec<u32> {
        self.bits
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] != w[1])
            .map(|(k, _)| k as u32)
            .collect()
    }

    pub fn to_bit_string(&self) -> String {
        self.bits.iter().map(|b| if *b == 1 { '1' } else { '0' }).collect()
    }
}

impl fmt::Display for ParityProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bit_string())
    }
}

/// A point touched by both colours.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionWitness {
    pub point: GridPoint,
    pub blue_degree: usize,
    pub red_degree: usize,
}

impl IntersectionWitness {
    pub(crate) fn at(point: GridPoint, blue: &EdgeSet, red: &EdgeSet) -> IntersectionWitness {
        IntersectionWitness { point, blue_degree: blue.degree(point), red_degree: red.degree(point) }
    }
}

fn blue_heights_by_column(blue: &EdgeSet) -> HashMap<u32, Vec<u32>> {
    let mut cols: HashMap<u32, Vec<u32>> = HashMap::new();
    for e in blue.iter() {
        if let (Some(k), Some(y)) = (e.column(), e.height()) {
            cols.entry(k).or_default().push(y);
        }
    }
    for ys in cols.values_mut() {
        ys.sort_unstable();
    }
    cols
}

/// Whether the horizontal edge `r` has an odd number of horizontal `blue`
/// edges strictly below it in its column.
pub fn is_odd_edge(blue: &EdgeSet, r: &Edge) -> Result<bool> {
    let (k, y) = match (r.column(), r.height()) {
        (Some(k), Some(y)) => (k, y),
        _ => return Err(Error::NotHorizontal(r.to_string())),
    };
    let below = (0..y).filter(|&j| blue.contains(&Edge::horizontal(k, j))).count();
    Ok(below % 2 == 1)
}

/// Parity of the odd red edges in each column `0..n`.
pub fn parity_profile(blue: &EdgeSet, red: &EdgeSet) -> Result<ParityProfile> {
    if blue.n() != red.n() {
        return Err(Error::GridMismatch(blue.n(), red.n()));
    }
    let cols = blue_heights_by_column(blue);
    let mut bits = vec![0u8; blue.n() as usize];
    for r in red.iter() {
        let (Some(k), Some(y)) = (r.column(), r.height()) else { continue };
        let below = cols.get(&k).map_or(0, |ys| ys.partition_point(|&h| h < y));
        bits[k as usize] ^= (below % 2) as u8;
    }
    Ok(ParityProfile { bits, m: None })
}

/// Parities of the odd-edge sets along the interpolating lists between the
/// columns `k` and `k + 1`.
///
/// List `j` (for `1 <= j <= n`) reads the edges `e(k+1, 0..j)`, then the
/// vertical edge `(k+1, j-1)-(k+1, j)`, then `e(k, j..=n)`; list `0` is column
/// `k` and list `n + 1` is column `k + 1`. A red edge is odd in a list when an
/// odd number of blue edges precede it. Entry `j` of the result is the parity
/// of the odd red edges in list `j`, so the first and last entries equal the
/// profile bits of columns `k` and `k + 1`.
pub fn column_sweep(blue: &EdgeSet, red: &EdgeSet, k: u32) -> Result<Vec<u8>> {
    let n = blue.n();
    if red.n() != n {
        return Err(Error::GridMismatch(n, red.n()));
    }
    if n < 2 || k > n - 2 {
        return Err(Error::Precondition(format!("column pair {k}, {} outside grid {n}", k + 1)));
    }
    let list = |j: u32| -> Vec<Edge> {
        if j == 0 {
            (0..=n).map(|y| Edge::horizontal(k, y)).collect()
        } else if j == n + 1 {
            (0..=n).map(|y| Edge::horizontal(k + 1, y)).collect()
        } else {
            let mut l: Vec<Edge> = (0..j).map(|y| Edge::horizontal(k + 1, y)).collect();
            l.push(Edge::vertical(k + 1, j - 1));
            l.extend((j..=n).map(|y| Edge::horizontal(k, y)));
            l
        }
    };
    Ok((0..=n + 1)
        .map(|j| {
            let mut blue_seen = 0usize;
            let mut odd = 0u8;
            for e in list(j) {
                if red.contains(&e) && blue_seen % 2 == 1 {
                    odd ^= 1;
                }
                if blue.contains(&e) {
                    blue_seen += 1;
                }
            }
            odd
        })
        .collect())
}

/// Hypotheses of the parity lemma, named for reporting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Precondition {
    BlueIsCurve,
    RedConnectsSides,
    OnDifferentSides,
    Disjoint,
    ApproachFromLeft,
    ColumnInRange,
    BoundaryColumnsEmpty,
}

impl fmt::Display for Precondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Precondition::BlueIsCurve => "blue edges form a curve",
            Precondition::RedConnectsSides => "red edges connect p1 and p2",
            Precondition::OnDifferentSides => "p1 and p2 lie on different sides of blue",
            Precondition::Disjoint => "blue and red do not intersect",
            Precondition::ApproachFromLeft => "red reaches p1 and p2 along column m-1",
            Precondition::ColumnInRange => "2 <= m <= n-2",
            Precondition::BoundaryColumnsEmpty => "columns 0 and n-1 hold no edges",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaReport {
    pub failed_preconditions: Vec<Precondition>,
    pub profile: ParityProfile,
    /// `bits[m-1] != bits[m]`.
    pub part_a: bool,
    /// Boundaries `k != m - 1` with `bits[k] != bits[k + 1]`.
    pub part_b_failures: Vec<u32>,
}

impl LemmaReport {
    pub fn preconditions_hold(&self) -> bool {
        self.failed_preconditions.is_empty()
    }

    /// Both lemma parts hold and the boundary columns are even. Never true
    /// when all preconditions hold.
    pub fn consistent(&self) -> bool {
        let bits = &self.profile.bits;
        self.part_a
            && self.part_b_failures.is_empty()
            && bits.first() == Some(&0)
            && bits.last() == Some(&0)
    }
}

fn approaches_from_left(red: &EdgeSet, p: GridPoint) -> bool {
    p.x >= 1 && red.degree(p) == 1 && red.contains(&Edge::horizontal(p.x - 1, p.y))
}

/// Evaluates both parts of the parity lemma, naming any failed hypothesis.
pub fn check_parity_lemma(blue: &EdgeSet, red: &EdgeSet, sides: &SidePair) -> Result<LemmaReport> {
    let n = blue.n();
    let mut profile = parity_profile(blue, red)?;
    let m = sides.column();
    profile.m = Some(m);

    let mut failed = Vec::new();
    if !blue.is_curve() {
        failed.push(Precondition::BlueIsCurve);
    }
    if !red.connects(sides.p1, sides.p2) {
        failed.push(Precondition::RedConnectsSides);
    }
    if !blue.on_different_sides(sides.p1, sides.p2) {
        failed.push(Precondition::OnDifferentSides);
    }
    if blue.intersects(red)? {
        failed.push(Precondition::Disjoint);
    }
    if !(approaches_from_left(red, sides.p1) && approaches_from_left(red, sides.p2)) {
        failed.push(Precondition::ApproachFromLeft);
    }
    if !(n >= 4 && (2..=n - 2).contains(&m)) {
        failed.push(Precondition::ColumnInRange);
    }
    let last = n.saturating_sub(1);
    let boundary_edge = |e: &Edge| e.column().is_some_and(|k| k == 0 || k == last);
    if blue.iter().chain(red.iter()).any(boundary_edge) {
        failed.push(Precondition::BoundaryColumnsEmpty);
    }

    let bits = &profile.bits;
    let part_a = m >= 1 && (m as usize) < bits.len() && bits[m as usize - 1] != bits[m as usize];
    let part_b_failures = profile.flips().into_iter().filter(|&k| k + 1 != m).collect();
    Ok(LemmaReport { failed_preconditions: failed, profile, part_a, part_b_failures })
}

/// Margin (in refined units) added on every side by [`normalize_instance`].
pub const NORMALIZE_MARGIN: u32 = 2;

pub(crate) fn normalize_point(p: GridPoint) -> GridPoint {
    GridPoint::new(2 * p.x + NORMALIZE_MARGIN, 2 * p.y + NORMALIZE_MARGIN)
}

pub(crate) fn normalized_n(n: u32) -> u32 {
    2 * n + 2 * NORMALIZE_MARGIN
}

/// How the red end at a refined side point is rerouted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum EndFix {
    /// The red end already arrived from the left: drop that half-edge and
    /// step sideways around the corner.
    Degenerate,
    /// Three-edge C detour: left, towards the midpoint, right.
    Detour,
}

/// Classifies the red end `q` (refined) whose midpoint lies in direction
/// `towards` (+1 up, -1 down). Errors when red runs straight into the
/// midpoint.
pub(crate) fn end_fix(red: &EdgeSet, q: GridPoint, towards: i64) -> Result<EndFix> {
    let left = q.offset(-1, 0).expect("margin keeps x positive");
    if red.contains(&Edge::new(left, q)?) {
        return Ok(EndFix::Degenerate);
    }
    let toward_mid = q.offset(0, towards).expect("margin keeps y positive");
    if red.contains(&Edge::new(q, toward_mid)?) {
        return Err(Error::Precondition(format!(
            "red path runs from {q} straight into the midpoint"
        )));
    }
    Ok(EndFix::Detour)
}

fn check_jct_hypotheses(blue: &EdgeSet, red: &EdgeSet, sides: &SidePair) -> Result<()> {
    if blue.n() != red.n() {
        return Err(Error::GridMismatch(blue.n(), red.n()));
    }
    if !blue.is_curve() {
        return Err(Error::Precondition(Precondition::BlueIsCurve.to_string()));
    }
    if !red.connects(sides.p1, sides.p2) {
        return Err(Error::Precondition(Precondition::RedConnectsSides.to_string()));
    }
    if !blue.on_different_sides(sides.p1, sides.p2) {
        return Err(Error::Precondition(Precondition::OnDifferentSides.to_string()));
    }
    Ok(())
}

/// Doubles the grid (plus a two-unit margin) and reroutes both red ends with
/// C-shaped detours so they arrive at points one unit from the blue curve
/// along column `m - 1`.
///
/// The output lives on the grid `2n + 4`; columns `0` and `last` are empty,
/// `2 <= m <= n - 2`, and the output intersects iff the input does.
pub fn normalize_instance(
    blue: &EdgeSet,
    red: &EdgeSet,
    sides: &SidePair,
) -> Result<(EdgeSet, EdgeSet, SidePair)> {
    check_jct_hypotheses(blue, red, sides)?;
    let big = normalized_n(blue.n());
    let m = NORMALIZE_MARGIN as i64;
    let blue2 = blue.refine(2).translate(m, m, big)?;
    let mut red2 = red.refine(2).translate(m, m, big)?;

    let mut ends = [GridPoint::new(0, 0); 2];
    for (slot, (end, towards)) in [(sides.lower(), 1i64), (sides.upper(), -1i64)].into_iter().enumerate() {
        let q = normalize_point(end);
        let left = q.offset(-1, 0).expect("margin");
        let corner = left.offset(0, towards).expect("margin");
        let target = q.offset(0, towards).expect("margin");
        match end_fix(&red2, q, towards)? {
            EndFix::Degenerate => {
                red2.remove(&Edge::new(left, q)?);
            }
            EndFix::Detour => {
                red2.insert(Edge::new(q, left)?)?;
            }
        }
        red2.insert(Edge::new(left, corner)?)?;
        red2.insert(Edge::new(corner, target)?)?;
        ends[slot] = target;
    }
    let sides2 = SidePair::new(ends[0], ends[1])?;
    Ok((blue2, red2, sides2))
}

/// Returns the shared point of least pair code, which must exist whenever
/// `blue` is a curve and `red` connects two points on different sides of it.
pub fn find_intersection_set(
    blue: &EdgeSet,
    red: &EdgeSet,
    sides: &SidePair,
) -> Result<IntersectionWitness> {
    check_jct_hypotheses(blue, red, sides)?;
    match blue.shared_points(red)?.into_iter().next() {
        Some(p) => Ok(IntersectionWitness::at(p, blue, red)),
        None => {
            let report = check_parity_lemma(blue, red, sides)?;
            Err(Error::TheoremViolation(format!(
                "blue curve and red path are disjoint (parity profile {})",
                report.profile
            )))
        }
    }
}
