//! Elliptic quadrics of PG(3,q) for even q: the canonical quadric, the
//! S2-orbit construction compatible with the Singer spread, the partition
//! of the point set into q+1 quadrics, tangency classification, and the
//! geometric starter set made of the tangent lines at a point.
//!
//! Everything here is verified by exact intersection counting; a claimed
//! quadric that fails any invariant is rejected, never silently accepted.

use crate::error::{Error, Result};
use crate::galois::FieldElement;
use crate::orbits::{
    canonical_representative, decompose_lines, desarguesian_spread, StarterSet,
};
use crate::projgeom::{Line, PointIndex, ProjectiveSpace};

/// The point set of an elliptic quadric of PG(3,q).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Quadric {
    points: Vec<PointIndex>,
    source: QuadricSource,
}

/// How a quadric was produced.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum QuadricSource {
    /// Zero set of X0X1 + X2^2 + bX2X3 + cX3^2.
    Canonical,
    /// Orbit of a seed point under the order-(q^2+1) subgroup of the
    /// Singer cycle that stabilises the spread.
    SingerOrbit { seed: PointIndex },
}

impl Quadric {
    pub fn points(&self) -> &[PointIndex] {
        &self.points
    }

    pub fn source(&self) -> QuadricSource {
        self.source
    }

    pub fn contains(&self, p: PointIndex) -> bool {
        self.points.binary_search(&p).is_ok()
    }

    /// Number of quadric points on the line.
    pub fn section(&self, line: &Line) -> usize {
        line.points().iter().filter(|&&p| self.contains(p)).count()
    }
}

/// Counts of the line classification against one quadric.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct TangencyReport {
    pub tangent: usize,
    pub secant: usize,
    pub external: usize,
}

fn check_space(space: &ProjectiveSpace) -> Result<()> {
    if space.n() != 4 {
        return Err(Error::RankMismatch(format!(
            "elliptic quadrics live in PG(3,q); this space has n = {}",
            space.n()
        )));
    }
    if space.q() % 2 != 0 {
        return Err(Error::UnsupportedOrder(space.q()));
    }
    Ok(())
}

/// Enumerate all theta normalized coordinate vectors (first nonzero entry
/// is 1), in a fixed deterministic order.
fn normalized_vectors(space: &ProjectiveSpace) -> Vec<Vec<u32>> {
    let n = space.n() as usize;
    let scalars = space.tower().scalars().to_vec();
    let mut out = Vec::with_capacity(space.num_points());
    for lead in 0..n {
        let free = n - lead - 1;
        let mut idx = vec![0usize; free];
        loop {
            let mut v = vec![0u32; n];
            v[lead] = 1;
            for (off, &k) in idx.iter().enumerate() {
                v[lead + 1 + off] = scalars[k];
            }
            out.push(v);
            let mut i = 0;
            loop {
                if i == free {
                    break;
                }
                idx[i] += 1;
                if idx[i] < scalars.len() {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
            if i == free {
                break;
            }
        }
    }
    debug_assert_eq!(out.len(), space.num_points());
    out
}

/// The canonical elliptic quadric X0X1 + X2^2 + bX2X3 + cX3^2 = 0, for b, c
/// in GF(q) making x^2 + bx + c irreducible (checked by exhaustive root
/// search over the subfield).
pub fn canonical_quadric(
    space: &ProjectiveSpace,
    b: FieldElement,
    c: FieldElement,
) -> Result<Quadric> {
    check_space(space)?;
    let tower = space.tower();
    let top = tower.top();
    let bp = b.packed();
    let cp = c.packed();
    if !tower.is_subfield_scalar(bp) || !tower.is_subfield_scalar(cp) {
        return Err(Error::FieldMismatch);
    }
    for &s in tower.scalars() {
        let val = top.padd(top.padd(top.pmul(s, s), top.pmul(bp, s)), cp);
        if val == 0 {
            return Err(Error::ReducibleForm(space.q()));
        }
    }
    let mut points = Vec::new();
    for v in normalized_vectors(space) {
        let form = top.padd(
            top.padd(top.pmul(v[0], v[1]), top.pmul(v[2], v[2])),
            top.padd(
                top.pmul(bp, top.pmul(v[2], v[3])),
                top.pmul(cp, top.pmul(v[3], v[3])),
            ),
        );
        if form == 0 {
            points.push(space.ppoint_from_coords(&v).expect("nonzero vector"));
        }
    }
    points.sort_unstable();
    points.dedup();
    let q = space.q();
    assert_eq!(points.len() as u64, q * q + 1);
    Ok(Quadric {
        points,
        source: QuadricSource::Canonical,
    })
}

/// The quadric invariants, checked exhaustively. Returns the failure reason.
fn verify_ovoid(space: &ProjectiveSpace, points: &[PointIndex]) -> std::result::Result<(), String> {
    let q = space.q();
    if points.len() as u64 != q * q + 1 {
        return Err(format!("expected {} points, got {}", q * q + 1, points.len()));
    }
    let member: std::collections::HashSet<PointIndex> = points.iter().copied().collect();

    // cap property: the line through any two members meets the set twice
    for (i, &a) in points.iter().enumerate() {
        for &b in points.iter().skip(i + 1) {
            let line = space.line_through(a, b).expect("distinct");
            let hits = line.points().iter().filter(|p| member.contains(p)).count();
            if hits != 2 {
                return Err(format!(
                    "points {}..{} lie on a line with {} members (three collinear)",
                    a.0, b.0, hits
                ));
            }
        }
    }

    // plane sections are 1 or q+1
    let coords: Vec<Vec<u32>> = points.iter().map(|&p| space.pcoords(p)).collect();
    let top = space.tower().top();
    for plane in normalized_vectors(space) {
        let cut = coords
            .iter()
            .filter(|c| {
                let mut acc = 0u32;
                for (x, a) in c.iter().zip(plane.iter()) {
                    acc = top.padd(acc, top.pmul(*x, *a));
                }
                acc == 0
            })
            .count();
        if cut != 1 && cut as u64 != q + 1 {
            return Err(format!("a plane meets the set in {cut} points"));
        }
    }

    // every line of the Desarguesian spread is tangent
    let spread = desarguesian_spread(space, 2).expect("t=2 divides n=4");
    for e in spread.elements() {
        let hits = e.iter().filter(|p| member.contains(p)).count();
        if hits != 1 {
            return Err(format!("a spread line meets the set in {hits} points"));
        }
    }
    Ok(())
}

/// The orbit of `seed` under S2, the order-(q^2+1) subgroup of the Singer
/// cycle stabilising the spread. The result is verified to be an elliptic
/// quadric compatible with the spread before being returned.
pub fn singer_quadric(space: &ProjectiveSpace, seed: PointIndex) -> Result<Quadric> {
    check_space(space)?;
    let q = space.q();
    let theta = space.theta();
    if (seed.0 as u64) >= theta {
        return Err(Error::ZeroVector);
    }
    let step = q + 1; // generator shift of S2
    let mut points: Vec<PointIndex> = (0..q * q + 1)
        .map(|k| PointIndex(((seed.0 as u64 + k * step) % theta) as u32))
        .collect();
    points.sort_unstable();
    points.dedup();
    verify_ovoid(space, &points).map_err(Error::NotAnOvoid)?;
    Ok(Quadric {
        points,
        source: QuadricSource::SingerOrbit { seed },
    })
}

/// The partition {O_0, ..., O_q} of the points of PG(3,q): O_i is the image
/// of O under the i-th power of the S1 generator (shift by q^2+1).
pub fn quadric_partition(space: &ProjectiveSpace, quadric: &Quadric) -> Vec<Quadric> {
    assert!(
        matches!(quadric.source, QuadricSource::SingerOrbit { .. }),
        "partition requires a Singer-orbit quadric"
    );
    let q = space.q();
    let theta = space.theta();
    let tau = q * q + 1; // generator shift of S1
    let seed = match quadric.source {
        QuadricSource::SingerOrbit { seed } => seed,
        QuadricSource::Canonical => unreachable!(),
    };
    let mut out = Vec::with_capacity(q as usize + 1);
    let mut covered = vec![false; space.num_points()];
    for i in 0..=q {
        let mut points: Vec<PointIndex> = quadric
            .points
            .iter()
            .map(|p| PointIndex(((p.0 as u64 + i * tau) % theta) as u32))
            .collect();
        points.sort_unstable();
        for p in &points {
            assert!(!covered[p.index()], "quadric images must be disjoint");
            covered[p.index()] = true;
        }
        out.push(Quadric {
            points,
            source: QuadricSource::SingerOrbit {
                seed: PointIndex(((seed.0 as u64 + i * tau) % theta) as u32),
            },
        });
    }
    assert!(covered.iter().all(|&c| c), "images must cover every point");
    out
}

fn is_spread_line(space: &ProjectiveSpace, line: &Line) -> bool {
    let s = space.q() * space.q() + 1;
    let first = line.points()[0].0 as u64;
    line.points()
        .iter()
        .all(|p| (p.0 as u64) % s == first % s)
}

/// For a line not in the spread, the index of the unique partition member
/// it is tangent to. Spread lines are tangent to all q+1 members and are
/// rejected.
pub fn unique_tangent_quadric(
    space: &ProjectiveSpace,
    line: &Line,
    partition: &[Quadric],
) -> Result<usize> {
    if is_spread_line(space, line) {
        return Err(Error::SpreadLine);
    }
    let tangent_to: Vec<usize> = partition
        .iter()
        .enumerate()
        .filter(|(_, o)| o.section(line) == 1)
        .map(|(i, _)| i)
        .collect();
    assert_eq!(
        tangent_to.len(),
        1,
        "a non-spread line is tangent to exactly one partition member"
    );
    Ok(tangent_to[0])
}

/// Classify every line of the space against the quadric.
pub fn tangency_report(space: &ProjectiveSpace, quadric: &Quadric) -> TangencyReport {
    let mut report = TangencyReport {
        tangent: 0,
        secant: 0,
        external: 0,
    };
    for line in space.all_lines() {
        match quadric.section(&line) {
            0 => report.external += 1,
            1 => report.tangent += 1,
            2 => report.secant += 1,
            k => panic!("a line meets an elliptic quadric in at most 2 points, got {k}"),
        }
    }
    report
}

/// The q+1 lines through `p` meeting the quadric only in `p`.
pub fn tangent_lines_at(
    space: &ProjectiveSpace,
    quadric: &Quadric,
    p: PointIndex,
) -> Result<Vec<Line>> {
    if !quadric.contains(p) {
        return Err(Error::PointNotOnQuadric);
    }
    let lines: Vec<Line> = space
        .lines_through(p)
        .into_iter()
        .filter(|l| quadric.section(l) == 1)
        .collect();
    assert_eq!(lines.len() as u64, space.q() + 1);
    Ok(lines)
}

/// The geometric starter set: the q+1 tangent lines to the quadric at `p`.
/// Exactly one of them belongs to the spread; their orbits partition the
/// full line set, which is verified against the orbit decomposition.
pub fn starter_from_quadric(
    space: &ProjectiveSpace,
    quadric: &Quadric,
    p: PointIndex,
) -> Result<StarterSet> {
    check_space(space)?;
    assert!(
        matches!(quadric.source, QuadricSource::SingerOrbit { .. }),
        "the starter construction requires a Singer-orbit quadric"
    );
    let lines = tangent_lines_at(space, quadric, p)?;
    let in_spread = lines.iter().filter(|l| is_spread_line(space, l)).count();
    assert_eq!(in_spread, 1, "exactly one tangent at p lies in the spread");

    let orbit_keys: Vec<Line> = lines
        .iter()
        .map(|l| canonical_representative(space, l))
        .collect();
    let mut sorted_keys = orbit_keys.clone();
    sorted_keys.sort_unstable();
    sorted_keys.dedup();
    assert_eq!(sorted_keys.len(), lines.len(), "orbit keys must be distinct");

    let decomposition = decompose_lines(space);
    let mut reps: Vec<Line> = decomposition
        .iter()
        .map(|o| o.representative.clone())
        .collect();
    reps.sort_unstable();
    assert_eq!(
        sorted_keys, reps,
        "tangent-line orbits must cover every line orbit"
    );

    Ok(StarterSet {
        base_point: p,
        lines,
        orbit_keys,
    })
}
