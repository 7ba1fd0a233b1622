//! Singer-cycle action on lines: orbit decomposition, the Desarguesian
//! (t-1)-spread, the S1/S2 subgroup split, and starter-set computation.
//!
//! In Singer indexing the whole machinery is index arithmetic mod theta:
//! the spread of rank-t subspaces is the partition of Z_theta into cosets
//! of the subgroup generated by (q^n-1)/(q^t-1).

use crate::error::{Error, Result};
use crate::projgeom::{count_lines, Line, PointIndex, ProjectiveSpace};
use std::collections::HashMap;

/// One Singer orbit of lines, stored by canonical representative.
///
/// Member k of the orbit is the representative shifted by +k mod theta;
/// shifting by `length` reproduces it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Orbit {
    pub representative: Line,
    pub length: u64,
}

/// A (t-1)-spread: pairwise disjoint rank-t subspaces partitioning the
/// points, stored as sorted point-index lists.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Spread {
    rank: u32,
    elements: Vec<Vec<PointIndex>>,
}

impl Spread {
    pub fn new(rank: u32, mut elements: Vec<Vec<PointIndex>>) -> Spread {
        for e in elements.iter_mut() {
            e.sort_unstable();
        }
        elements.sort();
        Spread { rank, elements }
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn elements(&self) -> &[Vec<PointIndex>] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Line views of the elements (rank 2 only).
    pub fn lines(&self) -> Option<Vec<Line>> {
        if self.rank != 2 {
            return None;
        }
        Some(
            self.elements
                .iter()
                .map(|e| Line::from_sorted(e.clone()))
                .collect(),
        )
    }

    pub fn contains_line(&self, line: &Line) -> bool {
        self.rank == 2
            && self
                .elements
                .binary_search_by(|e| e.as_slice().cmp(line.points()))
                .is_ok()
    }
}

/// One starter line per orbit, all through a common base point.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StarterSet {
    pub base_point: PointIndex,
    pub lines: Vec<Line>,
    pub orbit_keys: Vec<Line>,
}

/// Generators (as point shifts) and orders of the subgroups S1 and S2 of
/// the Singer cycle attached to a divisor t of n.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SubgroupPair {
    pub s1_shift: u64,
    pub s1_order: u64,
    pub s2_shift: u64,
    pub s2_order: u64,
}

/// Image of a line under the k-th Singer power: indices shift by +k mod theta.
pub fn apply_singer(space: &ProjectiveSpace, k: u64, line: &Line) -> Line {
    let theta = space.theta();
    let mut points: Vec<PointIndex> = line
        .points()
        .iter()
        .map(|p| PointIndex(((p.0 as u64 + k) % theta) as u32))
        .collect();
    points.sort_unstable();
    Line::from_sorted(points)
}

/// Orbit length: the smallest divisor d of theta whose shift fixes the line.
fn orbit_length(space: &ProjectiveSpace, line: &Line) -> u64 {
    let theta = space.theta();
    let mut divisors: Vec<u64> = Vec::new();
    let mut d = 1;
    while d * d <= theta {
        if theta % d == 0 {
            divisors.push(d);
            divisors.push(theta / d);
        }
        d += 1;
    }
    divisors.sort_unstable();
    divisors.dedup();
    for d in divisors {
        if apply_singer(space, d, line) == *line {
            return d;
        }
    }
    unreachable!("shift by theta always fixes a line")
}

/// Lexicographically smallest member of the line's orbit.
pub fn canonical_representative(space: &ProjectiveSpace, line: &Line) -> Line {
    let theta = space.theta();
    let mut best = line.clone();
    for k in 1..theta {
        let shifted = apply_singer(space, k, line);
        if shifted < best {
            best = shifted;
        }
    }
    best
}

/// The full orbit of a line.
pub fn line_orbit(space: &ProjectiveSpace, line: &Line) -> Orbit {
    Orbit {
        representative: canonical_representative(space, line),
        length: orbit_length(space, line),
    }
}

/// Decompose the line set of PG(n-1,q) into Singer orbits.
///
/// Only lines through point 0 are enumerated: every orbit contains a line
/// through every point, so this reaches each orbit while doing a theta-th
/// of the work of full enumeration. Ordering: short orbits first, then by
/// lexicographic representative.
pub fn decompose_lines(space: &ProjectiveSpace) -> Vec<Orbit> {
    let mut orbits: Vec<Orbit> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for line in space.lines_through(PointIndex(0)) {
        let rep = canonical_representative(space, &line);
        if seen.insert(rep.clone()) {
            orbits.push(Orbit {
                length: orbit_length(space, &line),
                representative: rep,
            });
        }
    }
    orbits.sort_by(|a, b| {
        (a.length, &a.representative).cmp(&(b.length, &b.representative))
    });
    let total: u64 = orbits.iter().map(|o| o.length).sum();
    assert_eq!(
        total,
        count_lines(space.n(), space.q()),
        "orbit lengths must partition the line count"
    );
    orbits
}

/// The Desarguesian (t-1)-spread left invariant by the Singer cycle: its
/// elements are the cosets of the subgroup of Z_theta generated by
/// s = (q^n-1)/(q^t-1).
pub fn desarguesian_spread(space: &ProjectiveSpace, t: u32) -> Result<Spread> {
    let n = space.n();
    if t == 0 || n % t != 0 || t >= n {
        return Err(Error::NonDivisorRank { t, n });
    }
    let s = space.tower().subfield_exponent(t)?;
    let theta = space.theta();
    let per_element = theta / s;
    let elements = (0..s)
        .map(|j| {
            (0..per_element)
                .map(|k| PointIndex((j + k * s) as u32))
                .collect()
        })
        .collect();
    Ok(Spread {
        rank: t,
        elements,
    })
}

/// S1 and S2 for a divisor t of n: S1 has order (q^t-1)/(q-1) and is
/// generated by the shift (q^n-1)/(q^t-1); S2 is the subgroup of order
/// (q^n-1)/(q^t-1).
pub fn subgroup_decomposition(space: &ProjectiveSpace, t: u32) -> Result<SubgroupPair> {
    let n = space.n();
    if t == 0 || n % t != 0 || t >= n {
        return Err(Error::NonDivisorRank { t, n });
    }
    let q = space.q();
    let theta = space.theta();
    let s1_order = (q.pow(t) - 1) / (q - 1);
    let s2_order = space.tower().subfield_exponent(t)?;
    debug_assert_eq!(s1_order * s2_order, theta);
    Ok(SubgroupPair {
        s1_shift: theta / s1_order,
        s1_order,
        s2_shift: theta / s2_order,
        s2_order,
    })
}

fn shift_points(points: &[PointIndex], k: u64, theta: u64) -> Vec<PointIndex> {
    let mut out: Vec<PointIndex> = points
        .iter()
        .map(|p| PointIndex(((p.0 as u64 + k) % theta) as u32))
        .collect();
    out.sort_unstable();
    out
}

/// Whether every element of S1 fixes every spread element setwise.
pub fn s1_fixes_spread(space: &ProjectiveSpace, sub: &SubgroupPair, spread: &Spread) -> bool {
    let theta = space.theta();
    spread.elements().iter().all(|e| {
        (1..sub.s1_order).all(|k| shift_points(e, k * sub.s1_shift % theta, theta) == *e)
    })
}

/// Whether S2 acts regularly on the spread elements: for each ordered pair
/// of elements exactly one S2 element maps the first onto the second.
pub fn s2_acts_regularly(space: &ProjectiveSpace, sub: &SubgroupPair, spread: &Spread) -> bool {
    let theta = space.theta();
    let index: HashMap<&[PointIndex], usize> = spread
        .elements()
        .iter()
        .enumerate()
        .map(|(i, e)| (e.as_slice(), i))
        .collect();
    for e in spread.elements() {
        let mut hits = vec![0usize; spread.len()];
        for k in 0..sub.s2_order {
            let img = shift_points(e, k * sub.s2_shift % theta, theta);
            match index.get(img.as_slice()) {
                Some(&i) => hits[i] += 1,
                None => return false, // S2 does not even preserve the spread
            }
        }
        if hits.iter().any(|&h| h != 1) {
            return false;
        }
    }
    true
}

/// Orbit of a single point under S1 (used to check that S1 restricted to a
/// spread element is again a Singer-type action on its points).
pub fn s1_point_orbit(space: &ProjectiveSpace, sub: &SubgroupPair, p: PointIndex) -> Vec<PointIndex> {
    let theta = space.theta();
    let mut out: Vec<PointIndex> = (0..sub.s1_order)
        .map(|k| PointIndex(((p.0 as u64 + k * sub.s1_shift) % theta) as u32))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Compute a starter set: scan the lines through `base_point` in
/// lexicographic order and keep each line whose orbit has not been seen.
pub fn starter_set(space: &ProjectiveSpace, base_point: PointIndex) -> Result<StarterSet> {
    if base_point.0 as u64 >= space.theta() {
        return Err(Error::ZeroVector);
    }
    let orbit_count = decompose_lines(space).len();
    let mut lines = Vec::new();
    let mut orbit_keys = Vec::new();
    for line in space.lines_through(base_point) {
        let key = canonical_representative(space, &line);
        if !orbit_keys.contains(&key) {
            lines.push(line);
            orbit_keys.push(key);
            if lines.len() == orbit_count {
                break;
            }
        }
    }
    assert_eq!(
        lines.len(),
        orbit_count,
        "every orbit has a member through every point"
    );
    Ok(StarterSet {
        base_point,
        lines,
        orbit_keys,
    })
}

/// Check the two starter-set conditions exhaustively: the orbits of the
/// starter lines are pairwise disjoint and their union is the full line set.
pub fn starter_covers_all_lines(space: &ProjectiveSpace, starter: &StarterSet) -> bool {
    // disjointness of orbits is equivalent to distinct canonical keys
    let mut keys = starter.orbit_keys.clone();
    keys.sort();
    keys.dedup();
    if keys.len() != starter.lines.len() {
        return false;
    }
    let theta = space.theta();
    let mut seen = std::collections::HashSet::new();
    for line in &starter.lines {
        for k in 0..theta {
            seen.insert(apply_singer(space, k, line));
        }
    }
    seen.len() as u64 == count_lines(space.n(), space.q())
}
