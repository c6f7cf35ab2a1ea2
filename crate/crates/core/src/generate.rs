//! Seeded random test instances: polyomino boundaries and curve-crossing
//! instances.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::grid::{Direction, EdgeSequence, EdgeSet, GridPoint, SequenceKind, SidePair};
use crate::reductions::JctInstance;

/// Seeded generator used by every random routine in the crate.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Unit cells `[x, x+1] x [y, y+1]` of an `n x n` cell grid.
struct Cells {
    n: u32,
    occupied: Vec<bool>,
}

impl Cells {
    fn get(&self, x: i64, y: i64) -> bool {
        x >= 0 && y >= 0 && x < self.n as i64 && y < self.n as i64 && self.occupied[(y * self.n as i64 + x) as usize]
    }

    fn set(&mut self, x: u32, y: u32, v: bool) {
        self.occupied[(y * self.n + x) as usize] = v;
    }

    /// Two cells meeting only at a corner would make that corner degree 4.
    fn pinched_at(&self, vx: i64, vy: i64) -> bool {
        let (a, b, c, d) = (self.get(vx - 1, vy - 1), self.get(vx, vy - 1), self.get(vx - 1, vy), self.get(vx, vy));
        (a && d && !b && !c) || (b && c && !a && !d)
    }

    /// Every empty cell is reachable from the outside through empty cells.
    fn no_holes(&self) -> bool {
        let n = self.n as i64;
        let empty = self.occupied.iter().filter(|&&o| !o).count();
        let mut seen = vec![false; self.occupied.len()];
        let mut stack: Vec<(i64, i64)> = Vec::new();
        for i in 0..n {
            for c in [(i, 0), (i, n - 1), (0, i), (n - 1, i)] {
                let k = (c.1 * n + c.0) as usize;
                if !self.get(c.0, c.1) && !seen[k] {
                    seen[k] = true;
                    stack.push(c);
                }
            }
        }
        let mut count = stack.len();
        while let Some((x, y)) = stack.pop() {
            for d in Direction::ALL {
                let (nx, ny) = (x + d.dx() as i64, y + d.dy() as i64);
                if nx < 0 || ny < 0 || nx >= n || ny >= n || self.get(nx, ny) {
                    continue;
                }
                let k = (ny * n + nx) as usize;
                if !seen[k] {
                    seen[k] = true;
                    count += 1;
                    stack.push((nx, ny));
                }
            }
        }
        count == empty
    }

    /// Counterclockwise boundary, interior on the left.
    fn boundary(&self) -> Vec<(GridPoint, GridPoint)> {
        let mut out = Vec::new();
        let p = GridPoint::new;
        for y in 0..self.n {
            for x in 0..self.n {
                if !self.get(x as i64, y as i64) {
                    continue;
                }
                let (xi, yi) = (x as i64, y as i64);
                if !self.get(xi, yi - 1) {
                    out.push((p(x, y), p(x + 1, y)));
                }
                if !self.get(xi + 1, yi) {
                    out.push((p(x + 1, y), p(x + 1, y + 1)));
                }
                if !self.get(xi, yi + 1) {
                    out.push((p(x + 1, y + 1), p(x, y + 1)));
                }
                if !self.get(xi - 1, yi) {
                    out.push((p(x, y + 1), p(x, y)));
                }
            }
        }
        out
    }
}

/// Boundary of a random simply connected polyomino, traced
/// counterclockwise. For `n >= 3` all points stay at distance at least 1
/// from the grid border. Deterministic per seed.
pub fn gen_random_curve(n: u32, seed: u64) -> Result<EdgeSequence> {
    if n < 2 {
        return Err(Error::Precondition(format!("random curves need n >= 2, got {n}")));
    }
    let mut rng = rng(seed);
    // cells lo..=hi keep the boundary off the border
    let (lo, hi) = if n >= 3 { (1, n - 2) } else { (0, 1) };
    let side = hi - lo + 1;
    let mut cells = Cells { n, occupied: vec![false; (n * n) as usize] };
    let seed_cell = (rng.gen_range(lo..=hi), rng.gen_range(lo..=hi));
    cells.set(seed_cell.0, seed_cell.1, true);
    let mut members = vec![seed_cell];
    // at least a 2 x 2 block is possible on small grids
    let area = (side * side) as usize;
    let target = rng.gen_range(1..=(area / 2).max(4).min(area));
    let mut attempts = 0;
    while members.len() < target && attempts < 40 * target {
        attempts += 1;
        let &(x, y) = members.choose(&mut rng).expect("nonempty");
        let d = Direction::ALL[rng.gen_range(0..4)];
        let (nx, ny) = (x as i64 + d.dx() as i64, y as i64 + d.dy() as i64);
        if nx < lo as i64 || ny < lo as i64 || nx > hi as i64 || ny > hi as i64 || cells.get(nx, ny) {
            continue;
        }
        let (nx, ny) = (nx as u32, ny as u32);
        cells.set(nx, ny, true);
        let pinched = [(0, 0), (1, 0), (0, 1), (1, 1)]
            .iter()
            .any(|&(dx, dy)| cells.pinched_at(nx as i64 + dx, ny as i64 + dy));
        if pinched || !cells.no_holes() {
            cells.set(nx, ny, false);
            continue;
        }
        members.push((nx, ny));
    }
    trace(n, &cells.boundary())
}

fn trace(n: u32, edges: &[(GridPoint, GridPoint)]) -> Result<EdgeSequence> {
    let next: std::collections::HashMap<GridPoint, GridPoint> = edges.iter().copied().collect();
    let start = *next.keys().min().expect("nonempty boundary");
    let mut pts = vec![start];
    let mut cur = next[&start];
    while cur != start {
        pts.push(cur);
        cur = next[&cur];
    }
    EdgeSequence::from_points(n, SequenceKind::ClosedCurve, &pts)
}

/// Midpoints where the curve runs horizontally straight through and both
/// vertical neighbours are off the curve.
pub fn side_pair_candidates(blue: &EdgeSet) -> Vec<SidePair> {
    let mut out: Vec<SidePair> = blue
        .points()
        .into_iter()
        .filter_map(|mid| SidePair::around(mid).ok())
        .filter(|s| s.p2.within(blue.n()) && blue.on_different_sides(s.p1, s.p2))
        .collect();
    out.sort_by_key(|s| s.mid);
    out
}

/// A random curve, a side pair on it, and a random simple red path between
/// the pair that avoids the midpoint but may touch the curve elsewhere.
pub fn gen_crossing_instance(n: u32, seed: u64) -> Result<JctInstance<EdgeSequence>> {
    if n < 4 {
        return Err(Error::Precondition(format!("crossing instances need n >= 4, got {n}")));
    }
    let mut rng = rng(seed);
    for round in 0..=64 {
        // small polyominoes may offer no side pair; the inner square always does
        let blue = if round < 64 { gen_random_curve(n, rng.gen())? } else { rectangle(n, 1, 1, n - 1, n - 1)? };
        let set = blue.to_edge_set();
        let candidates = side_pair_candidates(&set);
        let Some(&sides) = candidates.choose(&mut rng) else { continue };
        if let Some(pts) = random_path(n, sides.lower(), sides.upper(), sides.mid, &mut rng) {
            let red = EdgeSequence::from_points(n, SequenceKind::OpenPath, &pts)?;
            return Ok(JctInstance { n, blue, red, sides, offset: (0, 0) });
        }
    }
    Err(Error::TheoremViolation(format!("the inner square of grid {n} has no usable side pair")))
}

/// Randomized depth-first search; the stack order gives winding paths.
fn random_path(n: u32, from: GridPoint, to: GridPoint, avoid: GridPoint, rng: &mut ChaCha8Rng) -> Option<Vec<GridPoint>> {
    let mut seen: HashSet<GridPoint> = HashSet::from([from, avoid]);
    let mut path = vec![from];
    let mut options: Vec<Vec<GridPoint>> = vec![shuffled(from, n, rng)];
    while let Some(top) = options.last_mut() {
        match top.pop() {
            Some(q) if q == to => {
                path.push(q);
                return Some(path);
            }
            Some(q) if seen.insert(q) => {
                path.push(q);
                options.push(shuffled(q, n, rng));
            }
            Some(_) => {}
            None => {
                options.pop();
                path.pop();
            }
        }
    }
    None
}

fn shuffled(p: GridPoint, n: u32, rng: &mut ChaCha8Rng) -> Vec<GridPoint> {
    let mut v: Vec<GridPoint> = p.neighbors(n).collect();
    v.shuffle(rng);
    v
}

/// Every edge set of a random curve, for tests that need a set form.
pub fn gen_random_curve_set(n: u32, seed: u64) -> Result<EdgeSet> {
    Ok(gen_random_curve(n, seed)?.to_edge_set())
}

/// Edges of the boundary of the axis-parallel rectangle with the given
/// corners, counterclockwise from `(x0, y0)`.
pub fn rectangle(n: u32, x0: u32, y0: u32, x1: u32, y1: u32) -> Result<EdgeSequence> {
    let mut pts = Vec::new();
    pts.extend((x0..x1).map(|x| GridPoint::new(x, y0)));
    pts.extend((y0..y1).map(|y| GridPoint::new(x1, y)));
    pts.extend((x0 + 1..=x1).rev().map(|x| GridPoint::new(x, y1)));
    pts.extend((y0 + 1..=y1).rev().map(|y| GridPoint::new(x0, y)));
    EdgeSequence::from_points(n, SequenceKind::ClosedCurve, &pts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curves_are_deterministic_and_closed() {
        for seed in 0..50 {
            let a = gen_random_curve(10, seed).unwrap();
            assert_eq!(a, gen_random_curve(10, seed).unwrap());
            assert!(a.is_closed());
            assert!(a.to_edge_set().is_curve());
            assert!(a.points().iter().all(|p| p.x >= 1 && p.y >= 1 && p.x < 10 && p.y < 10));
        }
    }

    #[test]
    fn crossing_instances_validate() {
        for seed in 0..400 {
            let inst = gen_crossing_instance(4 + (seed % 8) as u32, seed).unwrap();
            inst.validate().unwrap();
            assert!(!inst.red.points().contains(&inst.sides.mid));
        }
    }
}
