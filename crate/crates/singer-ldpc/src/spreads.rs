//! Spread validators: regulus computation and regularity (the r = 2
//! characterization of Desarguesian spreads), normality (the r > 2
//! characterization), and the GF(q)-linear representation of PG(r-1,q^t).

use crate::error::{Error, Result};
use crate::orbits::Spread;
use crate::projgeom::{Line, PointIndex, ProjectiveSpace, Subspace};

/// A regulus: q+1 pairwise disjoint lines of PG(3,q) such that every line
/// meeting three of them meets all of them.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Regulus {
    elements: Vec<Line>,
}

impl Regulus {
    pub fn elements(&self) -> &[Line] {
        &self.elements
    }

    pub fn contains(&self, line: &Line) -> bool {
        self.elements.binary_search(line).is_ok()
    }
}

fn check_pg3(space: &ProjectiveSpace) -> Result<()> {
    if space.n() != 4 {
        return Err(Error::RankMismatch(format!(
            "reguli live in PG(3,q); this space has n = {}",
            space.n()
        )));
    }
    Ok(())
}

/// All lines meeting each of the given pairwise disjoint lines in one point.
fn transversals(all: &[Line], a: &Line, b: &Line, c: &Line) -> Vec<Line> {
    all.iter()
        .filter(|l| l.meet_count(a) == 1 && l.meet_count(b) == 1 && l.meet_count(c) == 1)
        .cloned()
        .collect()
}

fn regulus_from_lines(
    space: &ProjectiveSpace,
    all: &[Line],
    a: &Line,
    b: &Line,
    c: &Line,
) -> Result<Regulus> {
    if a.meet_count(b) != 0 || a.meet_count(c) != 0 || b.meet_count(c) != 0 {
        return Err(Error::NotDisjoint);
    }
    let q = space.q() as usize;
    let trans = transversals(all, a, b, c);
    assert_eq!(
        trans.len(),
        q + 1,
        "three pairwise disjoint lines of PG(3,q) have exactly q+1 transversals"
    );
    let mut elements: Vec<Line> = all
        .iter()
        .filter(|l| trans.iter().all(|t| l.meet_count(t) == 1))
        .cloned()
        .collect();
    elements.sort_unstable();
    assert_eq!(elements.len(), q + 1, "the regulus has exactly q+1 elements");
    for x in [a, b, c] {
        debug_assert!(elements.binary_search(x).is_ok());
    }
    Ok(Regulus { elements })
}

/// The unique regulus of PG(3,q) through three pairwise disjoint lines.
pub fn compute_regulus(
    space: &ProjectiveSpace,
    a: &Line,
    b: &Line,
    c: &Line,
) -> Result<Regulus> {
    check_pg3(space)?;
    let all = space.all_lines();
    regulus_from_lines(space, &all, a, b, c)
}

/// The opposite regulus: the q+1 common transversals.
pub fn opposite_regulus(space: &ProjectiveSpace, r: &Regulus) -> Result<Regulus> {
    check_pg3(space)?;
    let all = space.all_lines();
    let e = r.elements();
    let mut elements = transversals(&all, &e[0], &e[1], &e[2]);
    elements.sort_unstable();
    assert_eq!(elements.len(), space.q() as usize + 1);
    Ok(Regulus { elements })
}

/// Bruck-Bose regularity test for a line spread of PG(3,q), q > 2: every
/// regulus through three spread elements stays inside the spread.
///
/// All triples are tested when the spread has at most 20 elements;
/// otherwise a deterministic covering sample is used (all triples through
/// the two lexicographically smallest elements plus the first 1000
/// triples in lexicographic index order).
pub fn is_regular(space: &ProjectiveSpace, spread: &Spread) -> Result<bool> {
    check_pg3(space)?;
    let q = space.q();
    if q == 2 {
        return Err(Error::UnsupportedOrder(2));
    }
    let lines = spread
        .lines()
        .ok_or_else(|| Error::NotASpread("elements must be lines".into()))?;
    validate_line_spread(space, &lines)?;
    let all = space.all_lines();
    let m = lines.len();

    let mut triples: Vec<(usize, usize, usize)> = Vec::new();
    if m <= 20 {
        for i in 0..m {
            for j in i + 1..m {
                for k in j + 1..m {
                    triples.push((i, j, k));
                }
            }
        }
    } else {
        for k in 2..m {
            triples.push((0, 1, k));
        }
        'outer: for i in 0..m {
            for j in i + 1..m {
                for k in j + 1..m {
                    triples.push((i, j, k));
                    if triples.len() >= m - 2 + 1000 {
                        break 'outer;
                    }
                }
            }
        }
        triples.sort_unstable();
        triples.dedup();
    }

    for (i, j, k) in triples {
        let reg = regulus_from_lines(space, &all, &lines[i], &lines[j], &lines[k])?;
        if reg.elements().iter().any(|l| !spread.contains_line(l)) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn validate_line_spread(space: &ProjectiveSpace, lines: &[Line]) -> Result<()> {
    let mut covered = vec![false; space.num_points()];
    for l in lines {
        for p in l.points() {
            if covered[p.index()] {
                return Err(Error::NotASpread(format!("point {} covered twice", p.0)));
            }
            covered[p.index()] = true;
        }
    }
    if !covered.iter().all(|&c| c) {
        return Err(Error::NotASpread("points left uncovered".into()));
    }
    Ok(())
}

/// Barlotti-Cofman normality test for a (t-1)-spread of PG(rt-1,q) with
/// r > 2: for every pair A, B the spread induces a spread of the subspace
/// they generate. The family is not validated as a spread first, so a
/// mutated family simply comes back non-normal.
pub fn is_normal(space: &ProjectiveSpace, spread: &Spread) -> Result<bool> {
    let t = spread.rank();
    let n = space.n();
    if t == 0 || n % t != 0 {
        return Err(Error::NonDivisorRank { t, n });
    }
    let r = n / t;
    if r <= 2 {
        return Err(Error::RankMismatch(format!(
            "normality requires r > 2, got r = {r}"
        )));
    }
    let elements = spread.elements();
    for (i, a) in elements.iter().enumerate() {
        for b in elements.iter().skip(i + 1) {
            let mut gen_pts: Vec<PointIndex> = a.iter().chain(b.iter()).copied().collect();
            gen_pts.sort_unstable();
            let span: Subspace = space.span_of_points(&gen_pts);
            let span_points = space.subspace_points(&span);
            let in_span: std::collections::HashSet<PointIndex> =
                span_points.iter().copied().collect();
            let mut covered = 0usize;
            for c in elements {
                let inside = c.iter().filter(|p| in_span.contains(p)).count();
                if inside == 0 {
                    continue;
                }
                if inside != c.len() {
                    return Ok(false); // straddles the generated subspace
                }
                covered += inside;
            }
            if covered != span_points.len() {
                return Ok(false); // contained elements do not partition it
            }
        }
    }
    Ok(true)
}

/// The GF(q)-linear representation of PG(r-1,q^t) inside PG(rt-1,q): each
/// point <x> of the small space becomes the rank-t subspace GF(q^t)x.
///
/// This is the element-arithmetic route to the same spread that
/// [`crate::orbits::desarguesian_spread`] builds by pure index arithmetic;
/// the two must agree elementwise under the shared tower.
pub fn linear_representation(space: &ProjectiveSpace, t: u32) -> Result<Spread> {
    let n = space.n();
    if t == 0 || n % t != 0 || t >= n {
        return Err(Error::NonDivisorRank { t, n });
    }
    let tower = space.tower();
    let top = tower.top();
    let s = tower.subfield_exponent(t)?;
    let subfield_order = space.q().pow(t);
    let theta = space.theta();
    let mut elements = Vec::with_capacity(s as usize);
    for j in 0..s {
        let x = top.exp(j);
        let mut pts: Vec<PointIndex> = Vec::new();
        for k in 0..subfield_order - 1 {
            let c = top.exp(s * k);
            let y = top.mul(c, x).expect("same field");
            let idx = (top.discrete_log(y).expect("nonzero") % theta) as u32;
            pts.push(PointIndex(idx));
        }
        pts.sort_unstable();
        pts.dedup();
        assert_eq!(pts.len() as u64, (subfield_order - 1) / (space.q() - 1));
        elements.push(pts);
    }
    Ok(Spread::new(t, elements))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbits::desarguesian_spread;

    #[test]
    fn regulus_of_spread_triple_stays_inside() {
        let s = ProjectiveSpace::new(3, 4).unwrap();
        let spread = desarguesian_spread(&s, 2).unwrap();
        let lines = spread.lines().unwrap();
        let reg = compute_regulus(&s, &lines[0], &lines[1], &lines[2]).unwrap();
        assert_eq!(reg.elements().len(), 4);
        assert!(reg.elements().iter().all(|l| spread.contains_line(l)));
        for x in [&lines[0], &lines[1], &lines[2]] {
            assert!(reg.contains(x));
        }
    }

    #[test]
    fn regulus_is_symmetric_in_its_arguments() {
        let s = ProjectiveSpace::new(3, 4).unwrap();
        let spread = desarguesian_spread(&s, 2).unwrap();
        let l = spread.lines().unwrap();
        let base = compute_regulus(&s, &l[0], &l[1], &l[2]).unwrap();
        for (a, b, c) in [(0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)] {
            let other = compute_regulus(&s, &l[a], &l[b], &l[c]).unwrap();
            assert_eq!(base, other);
        }
    }

    #[test]
    fn disjoint_triples_have_q_plus_one_transversals() {
        // exhaustive over all pairwise disjoint line triples
        for q in [2u64, 3] {
            let s = ProjectiveSpace::new(q, 4).unwrap();
            let all = s.all_lines();
            let mut checked = 0usize;
            for i in 0..all.len() {
                for j in i + 1..all.len() {
                    if all[i].meet_count(&all[j]) != 0 {
                        continue;
                    }
                    for k in j + 1..all.len() {
                        if all[i].meet_count(&all[k]) != 0 || all[j].meet_count(&all[k]) != 0 {
                            continue;
                        }
                        let t = transversals(&all, &all[i], &all[j], &all[k]);
                        assert_eq!(t.len() as u64, q + 1);
                        checked += 1;
                    }
                }
            }
            assert!(checked > 0);
        }
    }

    #[test]
    fn intersecting_lines_rejected() {
        let s = ProjectiveSpace::new(3, 4).unwrap();
        let all = s.all_lines();
        let a = &all[0];
        let b = all.iter().find(|l| l.meet_count(a) == 1).unwrap();
        let c = all.iter().find(|l| l.meet_count(a) == 0).unwrap();
        assert_eq!(compute_regulus(&s, a, b, c).unwrap_err(), Error::NotDisjoint);
    }

    #[test]
    fn desarguesian_spreads_are_regular() {
        for q in [3u64, 4] {
            let s = ProjectiveSpace::new(q, 4).unwrap();
            let spread = desarguesian_spread(&s, 2).unwrap();
            assert!(is_regular(&s, &spread).unwrap(), "q = {q}");
        }
    }

    #[test]
    fn regularity_refused_for_q2() {
        let s = ProjectiveSpace::new(2, 4).unwrap();
        let spread = desarguesian_spread(&s, 2).unwrap();
        assert_eq!(
            is_regular(&s, &spread).unwrap_err(),
            Error::UnsupportedOrder(2)
        );
    }

    #[test]
    fn regulus_switched_spread_is_not_regular() {
        let s = ProjectiveSpace::new(3, 4).unwrap();
        let spread = desarguesian_spread(&s, 2).unwrap();
        let lines = spread.lines().unwrap();
        let reg = compute_regulus(&s, &lines[0], &lines[1], &lines[2]).unwrap();
        let opp = opposite_regulus(&s, &reg).unwrap();
        let mut switched: Vec<Vec<PointIndex>> = lines
            .iter()
            .filter(|l| !reg.contains(l))
            .map(|l| l.points().to_vec())
            .collect();
        switched.extend(opp.elements().iter().map(|l| l.points().to_vec()));
        let switched = Spread::new(2, switched);
        assert_eq!(switched.len(), spread.len());
        assert!(!is_regular(&s, &switched).unwrap());
    }

    #[test]
    fn desarguesian_line_spread_of_pg52_is_normal() {
        let s = ProjectiveSpace::new(2, 6).unwrap();
        let spread = desarguesian_spread(&s, 2).unwrap();
        assert!(is_normal(&s, &spread).unwrap());
    }

    #[test]
    fn normality_requires_r_greater_than_two() {
        let s = ProjectiveSpace::new(2, 6).unwrap();
        let spread = desarguesian_spread(&s, 3).unwrap(); // r = 2
        assert!(matches!(
            is_normal(&s, &spread).unwrap_err(),
            Error::RankMismatch(_)
        ));
    }

    #[test]
    fn mutated_spread_fails_normality() {
        let s = ProjectiveSpace::new(2, 6).unwrap();
        let spread = desarguesian_spread(&s, 2).unwrap();
        let mut elements: Vec<Vec<PointIndex>> = spread.elements().to_vec();
        // replace one element by a line that crosses other spread members
        let foreign = s
            .all_lines()
            .into_iter()
            .find(|l| !spread.contains_line(l))
            .unwrap();
        elements[0] = foreign.points().to_vec();
        let mutated = Spread::new(2, elements);
        assert!(!is_normal(&s, &mutated).unwrap());
    }

    #[test]
    fn linear_representation_matches_index_route() {
        for (q, n, t) in [(2u64, 4u32, 2u32), (2, 6, 2), (2, 6, 3), (4, 4, 2), (3, 4, 2)] {
            let s = ProjectiveSpace::new(q, n).unwrap();
            let via_elements = linear_representation(&s, t).unwrap();
            let via_indices = desarguesian_spread(&s, t).unwrap();
            assert_eq!(via_elements, via_indices, "q={q} n={n} t={t}");
        }
    }

    #[test]
    fn linear_representation_of_pg52_is_normal() {
        let s = ProjectiveSpace::new(2, 6).unwrap();
        let spread = linear_representation(&s, 2).unwrap();
        assert_eq!(spread.len(), 21);
        assert!(is_normal(&s, &spread).unwrap());
    }
}
