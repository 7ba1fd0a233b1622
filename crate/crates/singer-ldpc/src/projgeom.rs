//! The projective space PG(n-1,q) with points indexed by Singer exponent.
//!
//! Point i is the projective class of alpha^i, so the Singer collineation
//! x -> alpha*x acts on indices as i -> i+1 mod theta. Lines are canonical
//! sorted point-index lists; subspaces carry a reduced-echelon basis over
//! the GF(q) copy inside the top field.

use crate::error::{Error, Result};
use crate::galois::{Field, FieldElement, Tower, DEFAULT_SIZE_GUARD};

/// Index of a projective point in Singer order: point i is <alpha^i>.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PointIndex(pub u32);

impl PointIndex {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A line stored as its sorted list of exactly q+1 point indices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Line {
    points: Vec<PointIndex>,
}

impl Line {
    pub(crate) fn from_sorted(points: Vec<PointIndex>) -> Line {
        debug_assert!(points.windows(2).all(|w| w[0] < w[1]));
        Line { points }
    }

    pub fn points(&self) -> &[PointIndex] {
        &self.points
    }

    pub fn contains(&self, p: PointIndex) -> bool {
        self.points.binary_search(&p).is_ok()
    }

    /// Number of common points with another line (0, 1, or q+1).
    pub fn meet_count(&self, other: &Line) -> usize {
        let mut i = 0;
        let mut j = 0;
        let mut count = 0;
        while i < self.points.len() && j < other.points.len() {
            match self.points[i].cmp(&other.points[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    count += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        count
    }
}

/// A rank-t subspace held as a canonical reduced-echelon basis of length-n
/// coordinate vectors over GF(q).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    basis: Vec<Vec<u32>>,
}

impl Subspace {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }
}

/// A finite incidence structure: blocks are subsets of [0, num_points).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IncidenceStructure {
    pub num_points: usize,
    pub blocks: Vec<Vec<u32>>,
}

impl IncidenceStructure {
    pub fn new(num_points: usize, mut blocks: Vec<Vec<u32>>) -> IncidenceStructure {
        for b in blocks.iter_mut() {
            b.sort_unstable();
            b.dedup();
            assert!(b.iter().all(|&p| (p as usize) < num_points));
        }
        IncidenceStructure { num_points, blocks }
    }
}

/// Number of points of PG(n-1,q): (q^n - 1)/(q - 1).
pub fn count_points(n: u32, q: u64) -> u64 {
    let q = q as u128;
    (((q.pow(n)) - 1) / (q - 1)) as u64
}

/// Number of lines of PG(n-1,q): (q^n - 1)(q^{n-1} - 1) / ((q^2 - 1)(q - 1)).
pub fn count_lines(n: u32, q: u64) -> u64 {
    let q = q as u128;
    ((q.pow(n) - 1) * (q.pow(n - 1) - 1) / ((q * q - 1) * (q - 1))) as u64
}

/// PG(n-1,q) realized as PG(GF(q^n), GF(q)).
#[derive(Debug)]
pub struct ProjectiveSpace {
    tower: Tower,
    theta: u32,
}

impl ProjectiveSpace {
    /// Build PG(n-1,q). `q` must be a prime power; the tower is constructed
    /// with deterministic (lexicographically smallest primitive) moduli.
    pub fn new(q: u64, n: u32) -> Result<ProjectiveSpace> {
        Self::with_guard(q, n, DEFAULT_SIZE_GUARD)
    }

    pub fn with_guard(q: u64, n: u32, guard: u64) -> Result<ProjectiveSpace> {
        let (p, e) = prime_power(q)?;
        let base = Field::create_guarded(p, e, None, guard)?;
        let tower = Tower::create_guarded(base, n, guard)?;
        Ok(Self::from_tower(tower))
    }

    pub fn from_tower(tower: Tower) -> ProjectiveSpace {
        let theta = tower.theta() as u32;
        ProjectiveSpace { tower, theta }
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    pub fn q(&self) -> u64 {
        self.tower.q()
    }

    pub fn n(&self) -> u32 {
        self.tower.n()
    }

    /// Point count (q^n - 1)/(q - 1), which is also the Singer cycle order.
    pub fn theta(&self) -> u64 {
        self.theta as u64
    }

    pub fn num_points(&self) -> usize {
        self.theta as usize
    }

    /// The point <x> of a nonzero top-field element.
    pub fn point_from_element(&self, x: FieldElement) -> Result<PointIndex> {
        if x.is_zero() {
            return Err(Error::ZeroVector);
        }
        let k = self.tower.top().discrete_log(x)?;
        Ok(PointIndex((k % self.theta as u64) as u32))
    }

    /// A representative top-field element of point p, namely alpha^p.
    pub fn point_element(&self, p: PointIndex) -> FieldElement {
        self.tower.top().exp(p.0 as u64)
    }

    fn point_of_packed(&self, packed: u32) -> PointIndex {
        debug_assert_ne!(packed, 0);
        PointIndex((self.tower.top().plog(packed) % self.theta as u64) as u32)
    }

    /// The unique line through two distinct points.
    pub fn line_through(&self, a: PointIndex, b: PointIndex) -> Result<Line> {
        if a == b {
            return Err(Error::EqualPoints);
        }
        let top = self.tower.top();
        let x = top.pexp(a.0 as u64);
        let y = top.pexp(b.0 as u64);
        let mut points = Vec::with_capacity(self.q() as usize + 1);
        points.push(b);
        for &s in self.tower.scalars() {
            let z = top.padd(x, top.pmul(s, y));
            debug_assert_ne!(z, 0, "independent representatives never cancel");
            points.push(self.point_of_packed(z));
        }
        points.sort_unstable();
        points.dedup();
        debug_assert_eq!(points.len(), self.q() as usize + 1);
        Ok(Line::from_sorted(points))
    }

    /// All lines through p, sorted lexicographically. Each line appears once.
    pub fn lines_through(&self, p: PointIndex) -> Vec<Line> {
        let mut out = Vec::new();
        for r in 0..self.theta {
            let r = PointIndex(r);
            if r == p {
                continue;
            }
            let line = self.line_through(p, r).expect("distinct points");
            // keep the line only when generated from its smallest non-p point
            let first_other = *line.points().iter().find(|&&x| x != p).unwrap();
            if first_other == r {
                out.push(line);
            }
        }
        out.sort_unstable();
        out
    }

    /// Exhaustive enumeration of every line, sorted lexicographically.
    /// Each line is generated exactly once, from its two smallest points.
    pub fn all_lines(&self) -> Vec<Line> {
        let mut out = Vec::new();
        for a in 0..self.theta {
            for b in a + 1..self.theta {
                let line = self
                    .line_through(PointIndex(a), PointIndex(b))
                    .expect("distinct points");
                if line.points()[0].0 == a && line.points()[1].0 == b {
                    out.push(line);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Homogeneous coordinates of p over the basis {1, alpha, ...,
    /// alpha^{n-1}}, normalized so the first nonzero coordinate is 1.
    pub fn point_coords(&self, p: PointIndex) -> Vec<FieldElement> {
        let v = self.pcoords(p);
        let top = self.tower.top();
        v.into_iter().map(|c| top.element(c)).collect()
    }

    pub(crate) fn pcoords(&self, p: PointIndex) -> Vec<u32> {
        let top = self.tower.top();
        let mut v = self.tower.pto_vector(top.pexp(p.0 as u64));
        let lead = *v.iter().find(|&&c| c != 0).expect("nonzero representative");
        if lead != 1 {
            let inv = top.pinv(lead);
            for c in v.iter_mut() {
                *c = top.pmul(*c, inv);
            }
        }
        v
    }

    /// The point with the given homogeneous coordinates.
    pub fn point_from_coords(&self, coords: &[FieldElement]) -> Result<PointIndex> {
        let x = self.tower.from_vector(coords)?;
        self.point_from_element(x)
    }

    pub(crate) fn ppoint_from_coords(&self, coords: &[u32]) -> Result<PointIndex> {
        let packed = self.tower.pfrom_vector(coords);
        if packed == 0 {
            return Err(Error::ZeroVector);
        }
        Ok(self.point_of_packed(packed))
    }

    // ---- subspace algebra ----

    /// Reduced-echelon span of coordinate vectors.
    pub fn span(&self, vectors: &[Vec<FieldElement>]) -> Result<Subspace> {
        let mut rows = Vec::with_capacity(vectors.len());
        for v in vectors {
            if v.len() != self.n() as usize {
                return Err(Error::LengthMismatch {
                    expected: self.n() as usize,
                    got: v.len(),
                });
            }
            rows.push(v.iter().map(|c| c.packed()).collect());
        }
        Ok(self.pspan(rows))
    }

    pub(crate) fn pspan(&self, mut rows: Vec<Vec<u32>>) -> Subspace {
        self.rref(&mut rows);
        Subspace { basis: rows }
    }

    /// Span of a set of points.
    pub fn span_of_points(&self, points: &[PointIndex]) -> Subspace {
        self.pspan(points.iter().map(|&p| self.pcoords(p)).collect())
    }

    fn rref(&self, rows: &mut Vec<Vec<u32>>) {
        let top = self.tower.top();
        let n = self.n() as usize;
        let mut r = 0;
        for c in 0..n {
            let Some(pivot) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
                continue;
            };
            rows.swap(r, pivot);
            let inv = top.pinv(rows[r][c]);
            for x in rows[r].iter_mut() {
                *x = top.pmul(*x, inv);
            }
            for i in 0..rows.len() {
                if i != r && rows[i][c] != 0 {
                    let f = rows[i][c];
                    for cc in 0..n {
                        let sub = top.pmul(f, rows[r][cc]);
                        rows[i][cc] = top.padd(rows[i][cc], top.pneg(sub));
                    }
                }
            }
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
    }

    /// Whether a point lies in the subspace (rank test against the basis).
    pub fn subspace_contains(&self, s: &Subspace, p: PointIndex) -> bool {
        let top = self.tower.top();
        let mut v = self.pcoords(p);
        for row in &s.basis {
            let c = row.iter().position(|&x| x == 1).expect("pivot");
            if v[c] != 0 {
                let f = v[c];
                for (vc, &rc) in v.iter_mut().zip(row.iter()) {
                    *vc = top.padd(*vc, top.pneg(top.pmul(f, rc)));
                }
            }
        }
        v.iter().all(|&c| c == 0)
    }

    /// All (q^t - 1)/(q - 1) points of a rank-t subspace, sorted.
    pub fn subspace_points(&self, s: &Subspace) -> Vec<PointIndex> {
        let top = self.tower.top();
        let q = self.q() as usize;
        let t = s.basis.len();
        if t == 0 {
            return Vec::new();
        }
        let scalars = self.tower.scalars();
        let mut out = Vec::new();
        let mut idx = vec![0usize; t];
        loop {
            // advance odometer
            let mut i = 0;
            loop {
                idx[i] += 1;
                if idx[i] < q {
                    break;
                }
                idx[i] = 0;
                i += 1;
                if i == t {
                    out.sort_unstable();
                    out.dedup();
                    return out;
                }
            }
            let mut v = vec![0u32; self.n() as usize];
            for (row, &k) in s.basis.iter().zip(idx.iter()) {
                if k == 0 {
                    continue;
                }
                let sc = scalars[k];
                for (vc, &rc) in v.iter_mut().zip(row.iter()) {
                    *vc = top.padd(*vc, top.pmul(sc, rc));
                }
            }
            let packed = self.tower.pfrom_vector(&v);
            if packed != 0 {
                out.push(self.point_of_packed(packed));
            }
        }
    }

    /// Intersection of two subspaces.
    pub fn subspace_meet(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let (small, large) = if a.rank() <= b.rank() { (a, b) } else { (b, a) };
        let pts: Vec<PointIndex> = self
            .subspace_points(small)
            .into_iter()
            .filter(|&p| self.subspace_contains(large, p))
            .collect();
        self.span_of_points(&pts)
    }

    /// The rank-2 subspace view of a line.
    pub fn line_subspace(&self, line: &Line) -> Subspace {
        self.span_of_points(line.points())
    }
}

fn prime_power(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::InvalidFieldOrder(q));
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            let mut m = q;
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            if m != 1 {
                return Err(Error::InvalidFieldOrder(q));
            }
            return Ok((p, e));
        }
        p += 1;
    }
    Ok((q, 1))
}
