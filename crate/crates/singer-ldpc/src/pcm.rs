//! Parity-check matrix assembly from starter sets and orbits, structural
//! LDPC checks (constant weights, column overlap, Tanner girth), and the
//! alist interchange format.

use crate::error::{Error, Result};
use crate::orbits::{apply_singer, Orbit, Spread, StarterSet};
use crate::projgeom::{IncidenceStructure, ProjectiveSpace};
use serde::{Deserialize, Serialize};

/// Row-major sparse 0/1 matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparseBinaryMatrix {
    num_rows: usize,
    num_cols: usize,
    row_support: Vec<Vec<u32>>,
}

impl SparseBinaryMatrix {
    /// Rows are sorted and deduplicated; indices must be below `num_cols`.
    pub fn new(num_cols: usize, mut rows: Vec<Vec<u32>>) -> Result<SparseBinaryMatrix> {
        for r in rows.iter_mut() {
            r.sort_unstable();
            r.dedup();
            if r.last().is_some_and(|&c| c as usize >= num_cols) {
                return Err(Error::MalformedAlist(format!(
                    "column index {} out of range ({num_cols} columns)",
                    r.last().unwrap()
                )));
            }
        }
        Ok(SparseBinaryMatrix {
            num_rows: rows.len(),
            num_cols,
            row_support: rows,
        })
    }

    pub fn num_rows(&self) -> usize {
        self.num_rows
    }

    pub fn num_cols(&self) -> usize {
        self.num_cols
    }

    pub fn row_support(&self) -> &[Vec<u32>] {
        &self.row_support
    }

    pub fn row_weights(&self) -> Vec<usize> {
        self.row_support.iter().map(|r| r.len()).collect()
    }

    pub fn col_support(&self) -> Vec<Vec<u32>> {
        let mut cols = vec![Vec::new(); self.num_cols];
        for (ri, row) in self.row_support.iter().enumerate() {
            for &c in row {
                cols[c as usize].push(ri as u32);
            }
        }
        cols
    }

    pub fn col_weights(&self) -> Vec<usize> {
        let mut w = vec![0usize; self.num_cols];
        for row in &self.row_support {
            for &c in row {
                w[c as usize] += 1;
            }
        }
        w
    }

    pub fn entry(&self, row: usize, col: u32) -> bool {
        self.row_support[row].binary_search(&col).is_ok()
    }

    pub fn nnz(&self) -> usize {
        self.row_support.iter().map(|r| r.len()).sum()
    }

    pub fn transpose(&self) -> SparseBinaryMatrix {
        SparseBinaryMatrix {
            num_rows: self.num_cols,
            num_cols: self.num_rows,
            row_support: self.col_support(),
        }
    }

    /// Apply a column permutation: new column i holds old column `perm[i]`.
    pub fn permute_columns(&self, perm: &[u32]) -> Result<SparseBinaryMatrix> {
        if perm.len() != self.num_cols {
            return Err(Error::LengthMismatch {
                expected: self.num_cols,
                got: perm.len(),
            });
        }
        let mut inverse = vec![u32::MAX; self.num_cols];
        for (new, &old) in perm.iter().enumerate() {
            inverse[old as usize] = new as u32;
        }
        let rows = self
            .row_support
            .iter()
            .map(|r| r.iter().map(|&c| inverse[c as usize]).collect())
            .collect();
        SparseBinaryMatrix::new(self.num_cols, rows)
    }
}

/// Incidence structure <-> matrix correspondence: m_ij = 1 iff point j is
/// in block i.
pub fn incidence_matrix(s: &IncidenceStructure) -> SparseBinaryMatrix {
    SparseBinaryMatrix::new(s.num_points, s.blocks.clone()).expect("blocks are in range")
}

pub fn structure_from_matrix(m: &SparseBinaryMatrix) -> IncidenceStructure {
    IncidenceStructure::new(m.num_cols, m.row_support.clone())
}

/// Metadata for one orbit block of an assembled matrix.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct BlockInfo {
    pub start_row: usize,
    pub num_rows: usize,
    pub circulant: bool,
    pub orbit_length: u64,
}

/// A parity-check matrix together with its orbit block structure.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AssembledMatrix {
    pub matrix: SparseBinaryMatrix,
    pub blocks: Vec<BlockInfo>,
}

/// Stack one block per orbit, rows inside a block being the successive
/// Singer shifts of that orbit's starter line. Full-length blocks are
/// theta x theta circulant; a short (spread) orbit gives a non-square
/// block and is flagged accordingly. Columns are points in Singer order.
pub fn assemble(
    space: &ProjectiveSpace,
    starter: &StarterSet,
    decomposition: &[Orbit],
) -> Result<AssembledMatrix> {
    if starter.lines.len() != decomposition.len() {
        return Err(Error::OrbitMismatch(format!(
            "{} starter lines for {} orbits",
            starter.lines.len(),
            decomposition.len()
        )));
    }
    let theta = space.theta();
    let mut rows: Vec<Vec<u32>> = Vec::new();
    let mut blocks = Vec::with_capacity(decomposition.len());
    for orbit in decomposition {
        let idx = starter
            .orbit_keys
            .iter()
            .position(|k| *k == orbit.representative)
            .ok_or_else(|| {
                Error::OrbitMismatch("an orbit has no matching starter line".into())
            })?;
        let line = &starter.lines[idx];
        let start_row = rows.len();
        for k in 0..orbit.length {
            let shifted = apply_singer(space, k, line);
            rows.push(shifted.points().iter().map(|p| p.0).collect());
        }
        blocks.push(BlockInfo {
            start_row,
            num_rows: orbit.length as usize,
            circulant: orbit.length == theta,
            orbit_length: orbit.length,
        });
    }
    let matrix = SparseBinaryMatrix::new(theta as usize, rows)?;
    Ok(AssembledMatrix { matrix, blocks })
}

/// Literal circulant check: inside every block flagged circulant, each row
/// is the previous row with every index shifted by +1 mod num_cols.
pub fn verify_circulant_blocks(m: &AssembledMatrix) -> bool {
    let cols = m.matrix.num_cols() as u32;
    let rows = m.matrix.row_support();
    let mut covered = 0usize;
    for b in &m.blocks {
        if b.start_row != covered {
            return false;
        }
        covered += b.num_rows;
        if !b.circulant {
            continue;
        }
        for j in b.start_row..b.start_row + b.num_rows - 1 {
            let mut expect: Vec<u32> = rows[j].iter().map(|&c| (c + 1) % cols).collect();
            expect.sort_unstable();
            if rows[j + 1] != expect {
                return false;
            }
        }
    }
    covered == m.matrix.num_rows()
}

/// A spread incidence matrix together with the column permutation that
/// exhibits it as q+1 horizontally concatenated identity blocks.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SpreadBlock {
    pub matrix: SparseBinaryMatrix,
    /// New column i holds old column `column_permutation[i]`.
    pub column_permutation: Vec<u32>,
}

/// Incidence matrix of a line spread: |S| rows of weight q+1, every column
/// weight 1. The emitted permutation groups columns by position-within-
/// element (ordered by element), under which the matrix becomes
/// (I | I | ... | I).
pub fn spread_block(space: &ProjectiveSpace, spread: &Spread) -> Result<SpreadBlock> {
    if spread.rank() != 2 {
        return Err(Error::NotASpread("elements must be lines".into()));
    }
    let theta = space.num_points();
    let mut covered = vec![false; theta];
    for e in spread.elements() {
        for p in e {
            if covered[p.index()] {
                return Err(Error::NotASpread(format!("point {} covered twice", p.0)));
            }
            covered[p.index()] = true;
        }
    }
    if !covered.iter().all(|&c| c) {
        return Err(Error::NotASpread("points left uncovered".into()));
    }
    let rows: Vec<Vec<u32>> = spread
        .elements()
        .iter()
        .map(|e| e.iter().map(|p| p.0).collect())
        .collect();
    let matrix = SparseBinaryMatrix::new(theta, rows)?;
    // group k holds the k-th smallest point of every element, element order
    let s = spread.len();
    let per_element = spread.elements()[0].len();
    let mut column_permutation = vec![0u32; theta];
    for (j, e) in spread.elements().iter().enumerate() {
        for (k, p) in e.iter().enumerate() {
            column_permutation[k * s + j] = p.0;
        }
    }
    debug_assert_eq!(per_element * s, theta);
    Ok(SpreadBlock {
        matrix,
        column_permutation,
    })
}

/// The full point-line incidence matrix of PG(n-1,q), rows in lexicographic
/// line order. This is the exhaustive-enumeration route; stacking orbit
/// blocks with [`assemble`] reaches the same multiset of rows.
pub fn pg1_matrix(space: &ProjectiveSpace) -> SparseBinaryMatrix {
    let rows: Vec<Vec<u32>> = space
        .all_lines()
        .into_iter()
        .map(|l| l.points().iter().map(|p| p.0).collect())
        .collect();
    SparseBinaryMatrix::new(space.num_points(), rows).expect("valid point indices")
}

/// The transposed incidence matrix.
pub fn pg2_matrix(space: &ProjectiveSpace) -> SparseBinaryMatrix {
    pg1_matrix(space).transpose()
}

/// Structural report on a 0/1 matrix.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct LdpcReport {
    pub num_rows: usize,
    pub num_cols: usize,
    /// Sorted (weight, count) pairs.
    pub row_weight_histogram: Vec<(usize, usize)>,
    pub col_weight_histogram: Vec<(usize, usize)>,
    /// Constant positive row weight, when rows are regular.
    pub constant_row_weight: Option<usize>,
    /// Constant positive column weight, when columns are regular.
    pub constant_col_weight: Option<usize>,
    pub max_col_overlap: usize,
    /// Overlap bounded by one.
    pub overlap_at_most_one: bool,
    /// max(row weight, column weight) / min(num_rows, num_cols); reported,
    /// never judged against a threshold.
    pub sparsity_ratio: f64,
    pub density: f64,
    /// Shortest cycle length of the Tanner graph; None when acyclic.
    pub girth: Option<usize>,
}

fn histogram(weights: &[usize]) -> Vec<(usize, usize)> {
    let mut map = std::collections::BTreeMap::new();
    for &w in weights {
        *map.entry(w).or_insert(0usize) += 1;
    }
    map.into_iter().collect()
}

fn constant_positive(weights: &[usize]) -> Option<usize> {
    match weights.first() {
        Some(&w) if w > 0 && weights.iter().all(|&x| x == w) => Some(w),
        _ => None,
    }
}

/// Exact maximum number of rows shared by two distinct columns.
fn max_column_overlap(m: &SparseBinaryMatrix) -> usize {
    let words = m.num_rows.div_ceil(64);
    let mut bits = vec![vec![0u64; words]; m.num_cols];
    for (ri, row) in m.row_support().iter().enumerate() {
        for &c in row {
            bits[c as usize][ri / 64] |= 1u64 << (ri % 64);
        }
    }
    let mut best = 0usize;
    for i in 0..m.num_cols {
        for j in i + 1..m.num_cols {
            let overlap: u32 = bits[i]
                .iter()
                .zip(bits[j].iter())
                .map(|(a, b)| (a & b).count_ones())
                .sum();
            best = best.max(overlap as usize);
        }
    }
    best
}

/// Exact Tanner-graph girth by breadth-first search from every vertex.
fn tanner_girth(m: &SparseBinaryMatrix) -> Option<usize> {
    let r = m.num_rows;
    let n = r + m.num_cols;
    // vertices: rows then columns; flat adjacency
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (ri, row) in m.row_support().iter().enumerate() {
        for &c in row {
            adj[ri].push(r as u32 + c);
            adj[r + c as usize].push(ri as u32);
        }
    }
    let mut best = usize::MAX;
    let mut dist = vec![u32::MAX; n];
    let mut parent = vec![u32::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    for start in 0..n {
        dist.iter_mut().for_each(|d| *d = u32::MAX);
        queue.clear();
        dist[start] = 0;
        parent[start] = u32::MAX;
        queue.push_back(start as u32);
        while let Some(u) = queue.pop_front() {
            let du = dist[u as usize] as usize;
            if 2 * du >= best {
                break; // no shorter cycle can be found from here
            }
            for &v in &adj[u as usize] {
                if v == parent[u as usize] {
                    continue;
                }
                if dist[v as usize] == u32::MAX {
                    dist[v as usize] = du as u32 + 1;
                    parent[v as usize] = u;
                    queue.push_back(v);
                } else {
                    // non-tree edge closes a cycle through the BFS root
                    let cycle = du + dist[v as usize] as usize + 1;
                    best = best.min(cycle);
                }
            }
        }
    }
    (best != usize::MAX).then_some(best)
}

/// Compute the full structural report.
pub fn ldpc_check(m: &SparseBinaryMatrix) -> LdpcReport {
    let row_w = m.row_weights();
    let col_w = m.col_weights();
    let constant_row_weight = constant_positive(&row_w);
    let constant_col_weight = constant_positive(&col_w);
    let max_col_overlap = max_column_overlap(m);
    let kmax = row_w.iter().copied().max().unwrap_or(0);
    let rmax = col_w.iter().copied().max().unwrap_or(0);
    let denom = m.num_rows.min(m.num_cols).max(1);
    let cells = (m.num_rows * m.num_cols).max(1);
    LdpcReport {
        num_rows: m.num_rows,
        num_cols: m.num_cols,
        row_weight_histogram: histogram(&row_w),
        col_weight_histogram: histogram(&col_w),
        constant_row_weight,
        constant_col_weight,
        max_col_overlap,
        overlap_at_most_one: max_col_overlap <= 1,
        sparsity_ratio: kmax.max(rmax) as f64 / denom as f64,
        density: m.nnz() as f64 / cells as f64,
        girth: tanner_girth(m),
    }
}

// ---- JSON report (sidecar next to the alist file) ----

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct BlockReport {
    pub rows: usize,
    pub circulant: bool,
    pub orbit_length: u64,
}

/// The machine-readable construction report; also serves as the block
/// metadata sidecar for an exported alist file.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct MatrixReport {
    pub n: u32,
    pub q: u64,
    pub num_rows: usize,
    pub num_cols: usize,
    /// Sorted (weight, count) pairs.
    pub row_weights: Vec<(usize, usize)>,
    pub col_weights: Vec<(usize, usize)>,
    pub max_col_overlap: usize,
    pub girth: Option<usize>,
    pub blocks: Vec<BlockReport>,
}

pub fn build_report(
    n: u32,
    q: u64,
    matrix: &SparseBinaryMatrix,
    blocks: &[BlockInfo],
) -> MatrixReport {
    let check = ldpc_check(matrix);
    MatrixReport {
        n,
        q,
        num_rows: matrix.num_rows(),
        num_cols: matrix.num_cols(),
        row_weights: check.row_weight_histogram,
        col_weights: check.col_weight_histogram,
        max_col_overlap: check.max_col_overlap,
        girth: check.girth,
        blocks: blocks
            .iter()
            .map(|b| BlockReport {
                rows: b.num_rows,
                circulant: b.circulant,
                orbit_length: b.orbit_length,
            })
            .collect(),
    }
}

// ---- alist interchange format ----

/// Serialize in alist format: "N M" header (N = columns), "cmax rmax",
/// column weights, row weights, then per-column and per-row 1-based
/// supports padded with 0s. Single spaces, LF endings, trailing newline.
pub fn export_alist(m: &SparseBinaryMatrix) -> String {
    let cols = m.col_support();
    let rows = m.row_support();
    let cmax = cols.iter().map(|c| c.len()).max().unwrap_or(0);
    let rmax = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let mut out = String::new();
    out.push_str(&format!("{} {}\n", m.num_cols, m.num_rows));
    out.push_str(&format!("{cmax} {rmax}\n"));
    let weights =
        |v: &[Vec<u32>]| v.iter().map(|x| x.len().to_string()).collect::<Vec<_>>().join(" ");
    out.push_str(&weights(&cols));
    out.push('\n');
    out.push_str(&weights(rows));
    out.push('\n');
    let padded = |support: &[u32], width: usize| {
        let mut toks: Vec<String> = support.iter().map(|&x| (x + 1).to_string()).collect();
        toks.resize(width, "0".to_string());
        toks.join(" ")
    };
    for c in &cols {
        out.push_str(&padded(c, cmax));
        out.push('\n');
    }
    for r in rows {
        out.push_str(&padded(r, rmax));
        out.push('\n');
    }
    out
}

/// Parse an alist file. The row- and column-support sections must describe
/// the same matrix.
pub fn import_alist(text: &str) -> Result<SparseBinaryMatrix> {
    let bad = |msg: &str| Error::MalformedAlist(msg.to_string());
    let mut lines = text.split('\n');
    let mut next_line = |what: &str| {
        lines
            .next()
            .ok_or_else(|| Error::MalformedAlist(format!("missing {what}")))
    };
    let parse_nums = |line: &str, what: &str| -> Result<Vec<u64>> {
        line.split(' ')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<u64>()
                    .map_err(|_| Error::MalformedAlist(format!("bad integer in {what}: {t:?}")))
            })
            .collect()
    };

    let header = parse_nums(next_line("header")?, "header")?;
    if header.len() != 2 {
        return Err(bad("header must be \"N M\""));
    }
    let (n, m) = (header[0] as usize, header[1] as usize);
    let maxima = parse_nums(next_line("weight maxima")?, "weight maxima")?;
    if maxima.len() != 2 {
        return Err(bad("second line must be \"cmax rmax\""));
    }
    let (cmax, rmax) = (maxima[0] as usize, maxima[1] as usize);
    let col_weights = parse_nums(next_line("column weights")?, "column weights")?;
    if col_weights.len() != n {
        return Err(bad("column weight count does not match N"));
    }
    let row_weights = parse_nums(next_line("row weights")?, "row weights")?;
    if row_weights.len() != m {
        return Err(bad("row weight count does not match M"));
    }

    let read_supports = |lines: &mut std::str::Split<'_, char>,
                         count: usize,
                         width: usize,
                         weights: &[u64],
                         limit: usize,
                         what: &str|
     -> Result<Vec<Vec<u32>>> {
        let mut out = Vec::with_capacity(count);
        for (i, &w) in weights.iter().enumerate() {
            let line = lines
                .next()
                .ok_or_else(|| Error::MalformedAlist(format!("missing {what} support {i}")))?;
            let toks = parse_nums(line, what)?;
            if toks.len() != width {
                return Err(Error::MalformedAlist(format!(
                    "{what} support {i} has {} entries, expected {width}",
                    toks.len()
                )));
            }
            let (support, padding) = toks.split_at(w as usize);
            if padding.iter().any(|&x| x != 0) {
                return Err(Error::MalformedAlist(format!(
                    "{what} support {i}: nonzero entry in padding"
                )));
            }
            let mut prev = 0u64;
            let mut s = Vec::with_capacity(support.len());
            for &x in support {
                if x == 0 || x <= prev {
                    return Err(Error::MalformedAlist(format!(
                        "{what} support {i}: indices must be strictly increasing, 1-based"
                    )));
                }
                if x as usize > limit {
                    return Err(Error::MalformedAlist(format!(
                        "{what} support {i}: index {x} out of range"
                    )));
                }
                prev = x;
                s.push((x - 1) as u32);
            }
            out.push(s);
        }
        Ok(out)
    };

    let col_support = read_supports(&mut lines, n, cmax, &col_weights, m, "column")?;
    let row_support = read_supports(&mut lines, m, rmax, &row_weights, n, "row")?;
    for rest in lines {
        if !rest.trim().is_empty() {
            return Err(bad("trailing content after supports"));
        }
    }

    let matrix = SparseBinaryMatrix::new(n, row_support)?;
    if matrix.col_support() != col_support {
        return Err(bad("row and column supports describe different matrices"));
    }
    if matrix
        .col_weights()
        .iter()
        .zip(col_weights.iter())
        .any(|(&a, &b)| a as u64 != b)
    {
        return Err(bad("column weights disagree with supports"));
    }
    Ok(matrix)
}
