//! Binary codes from parity-check matrices: rank and systematic generator
//! over GF(2), encoding, and hard-decision bit-flip decoding.

use crate::error::{Error, Result};
use crate::pcm::SparseBinaryMatrix;

/// Dense GF(2) matrix in 64-bit words, used for elimination.
struct BitMatrix {
    rows: Vec<Vec<u64>>,
}

impl BitMatrix {
    fn from_sparse(m: &SparseBinaryMatrix) -> BitMatrix {
        let words = m.num_cols().div_ceil(64);
        let rows = m
            .row_support()
            .iter()
            .map(|r| {
                let mut w = vec![0u64; words];
                for &c in r {
                    w[c as usize / 64] |= 1 << (c % 64);
                }
                w
            })
            .collect();
        BitMatrix { rows }
    }

    fn bit(&self, r: usize, c: usize) -> bool {
        self.rows[r][c / 64] >> (c % 64) & 1 == 1
    }

    fn xor_row(&mut self, target: usize, source: usize) {
        let (a, b) = if target < source {
            let (lo, hi) = self.rows.split_at_mut(source);
            (&mut lo[target], &hi[0])
        } else {
            let (lo, hi) = self.rows.split_at_mut(target);
            (&mut hi[0], &lo[source])
        };
        for (x, y) in a.iter_mut().zip(b.iter()) {
            *x ^= y;
        }
    }
}

/// Reduced echelon form with lowest-column pivots; returns pivot columns.
fn rref2(m: &mut BitMatrix, num_cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..num_cols {
        let Some(pr) = (r..m.rows.len()).find(|&i| m.bit(i, c)) else {
            continue;
        };
        m.rows.swap(r, pr);
        for i in 0..m.rows.len() {
            if i != r && m.bit(i, c) {
                m.xor_row(i, r);
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.rows.len() {
            break;
        }
    }
    pivots
}

/// A binary linear code presented by a parity-check matrix.
#[derive(Clone, Debug)]
pub struct BinaryCode {
    parity: SparseBinaryMatrix,
    dimension: usize,
    /// Systematic null-space basis: row i restricted to the free columns is
    /// the i-th unit vector.
    generator: Vec<Vec<u8>>,
}

impl BinaryCode {
    pub fn parity(&self) -> &SparseBinaryMatrix {
        &self.parity
    }

    pub fn length(&self) -> usize {
        self.parity.num_cols()
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn generator(&self) -> &[Vec<u8>] {
        &self.generator
    }

    pub fn encode(&self, message: &[u8]) -> Result<Vec<u8>> {
        encode(self, message)
    }

    pub fn decode_bit_flip(&self, received: &[u8], max_iter: usize) -> Result<DecodeOutcome> {
        decode_bit_flip(&self.parity, received, max_iter)
    }
}

/// Compute rank and a systematic generator by Gaussian elimination over
/// GF(2), pivoting on the lowest available column.
pub fn code_from_matrix(parity: &SparseBinaryMatrix) -> Result<BinaryCode> {
    if parity.nnz() == 0 {
        return Err(Error::ZeroMatrix);
    }
    let n = parity.num_cols();
    let mut bits = BitMatrix::from_sparse(parity);
    let pivots = rref2(&mut bits, n);
    let rank = pivots.len();
    let dimension = n - rank;
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
    let mut generator = Vec::with_capacity(dimension);
    for &f in &free {
        let mut v = vec![0u8; n];
        v[f] = 1;
        for (row, &p) in pivots.iter().enumerate() {
            if bits.bit(row, f) {
                v[p] = 1;
            }
        }
        generator.push(v);
    }
    Ok(BinaryCode {
        parity: parity.clone(),
        dimension,
        generator,
    })
}

/// Systematic encoding: the message bits appear at the free columns of the
/// parity-check matrix; the rest are determined.
pub fn encode(code: &BinaryCode, message: &[u8]) -> Result<Vec<u8>> {
    if message.len() != code.dimension {
        return Err(Error::LengthMismatch {
            expected: code.dimension,
            got: message.len(),
        });
    }
    let mut word = vec![0u8; code.length()];
    for (bit, row) in message.iter().zip(code.generator.iter()) {
        if *bit & 1 == 1 {
            for (w, g) in word.iter_mut().zip(row.iter()) {
                *w ^= g;
            }
        }
    }
    Ok(word)
}

/// Parity of each check for the given word.
pub fn syndrome(parity: &SparseBinaryMatrix, word: &[u8]) -> Result<Vec<u8>> {
    if word.len() != parity.num_cols() {
        return Err(Error::LengthMismatch {
            expected: parity.num_cols(),
            got: word.len(),
        });
    }
    Ok(parity
        .row_support()
        .iter()
        .map(|r| r.iter().fold(0u8, |acc, &c| acc ^ (word[c as usize] & 1)))
        .collect())
}

/// Result of a bit-flip decoding attempt. On success `word` is a codeword;
/// on failure it is the state at the last iteration.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DecodeOutcome {
    pub success: bool,
    pub word: Vec<u8>,
    pub iterations: usize,
}

/// Hard-decision bit flipping: each iteration simultaneously flips every
/// bit whose number of unsatisfied incident checks exceeds
/// ceil((r+1)/2), r being that bit's column weight. Stops at zero
/// syndrome, after `max_iter` iterations, or when an iteration flips
/// nothing.
pub fn decode_bit_flip(
    parity: &SparseBinaryMatrix,
    received: &[u8],
    max_iter: usize,
) -> Result<DecodeOutcome> {
    let mut word: Vec<u8> = received.iter().map(|&b| b & 1).collect();
    if word.len() != parity.num_cols() {
        return Err(Error::LengthMismatch {
            expected: parity.num_cols(),
            got: word.len(),
        });
    }
    let cols = parity.col_support();
    let thresholds: Vec<usize> = cols.iter().map(|c| (c.len() + 2) / 2).collect();
    let mut iterations = 0;
    loop {
        let syn = syndrome(parity, &word)?;
        if syn.iter().all(|&s| s == 0) {
            return Ok(DecodeOutcome {
                success: true,
                word,
                iterations,
            });
        }
        if iterations == max_iter {
            return Ok(DecodeOutcome {
                success: false,
                word,
                iterations,
            });
        }
        let flips: Vec<usize> = (0..word.len())
            .filter(|&j| {
                let unsat = cols[j].iter().filter(|&&r| syn[r as usize] == 1).count();
                unsat > thresholds[j]
            })
            .collect();
        if flips.is_empty() {
            return Ok(DecodeOutcome {
                success: false,
                word,
                iterations,
            });
        }
        for j in flips {
            word[j] ^= 1;
        }
        iterations += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcm::pg1_matrix;
    use crate::projgeom::ProjectiveSpace;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn pg_code(q: u64, n: u32) -> BinaryCode {
        let s = ProjectiveSpace::new(q, n).unwrap();
        code_from_matrix(&pg1_matrix(&s)).unwrap()
    }

    /// Brute-force null-space size by enumerating all 2^n words.
    fn null_space_size(m: &SparseBinaryMatrix) -> usize {
        let n = m.num_cols();
        assert!(n <= 22);
        (0u32..1 << n)
            .filter(|&w| {
                let word: Vec<u8> = (0..n).map(|j| (w >> j & 1) as u8).collect();
                syndrome(m, &word).unwrap().iter().all(|&s| s == 0)
            })
            .count()
    }

    #[test]
    fn fano_dimension_against_exhaustive_oracle() {
        let code = pg_code(2, 3);
        let m = code.parity();
        assert_eq!(null_space_size(m), 1 << code.dimension());
        assert_eq!(code.dimension(), 3); // regression constant
    }

    #[test]
    fn pg32_dimension_against_exhaustive_oracle() {
        let code = pg_code(2, 4);
        assert_eq!(null_space_size(code.parity()), 1 << code.dimension());
        assert_eq!(code.dimension(), 4); // regression constant
    }

    #[test]
    fn pg24_dimension_against_exhaustive_oracle() {
        let code = pg_code(4, 3);
        assert_eq!(null_space_size(code.parity()), 1 << code.dimension());
        assert_eq!(code.dimension(), 11); // regression constant
    }

    #[test]
    fn identity_matrix_has_zero_dimension() {
        let m = SparseBinaryMatrix::new(4, vec![vec![0], vec![1], vec![2], vec![3]]).unwrap();
        let code = code_from_matrix(&m).unwrap();
        assert_eq!(code.dimension(), 0);
    }

    #[test]
    fn zero_row_does_not_change_dimension() {
        let s = ProjectiveSpace::new(2, 3).unwrap();
        let m = pg1_matrix(&s);
        let mut rows = m.row_support().to_vec();
        rows.push(vec![]);
        let extended = SparseBinaryMatrix::new(m.num_cols(), rows).unwrap();
        assert_eq!(
            code_from_matrix(&extended).unwrap().dimension(),
            code_from_matrix(&m).unwrap().dimension()
        );
    }

    #[test]
    fn zero_matrix_rejected() {
        let m = SparseBinaryMatrix::new(3, vec![vec![], vec![]]).unwrap();
        assert_eq!(code_from_matrix(&m).unwrap_err(), Error::ZeroMatrix);
    }

    #[test]
    fn generator_rows_are_codewords() {
        for (q, n) in [(2u64, 3u32), (2, 4), (4, 3)] {
            let code = pg_code(q, n);
            for row in code.generator() {
                let syn = syndrome(code.parity(), row).unwrap();
                assert!(syn.iter().all(|&s| s == 0), "q={q} n={n}");
            }
        }
    }

    #[test]
    fn encode_zero_and_units() {
        let code = pg_code(4, 3);
        let k = code.dimension();
        assert_eq!(code.encode(&vec![0; k]).unwrap(), vec![0; code.length()]);
        for i in 0..k {
            let mut msg = vec![0u8; k];
            msg[i] = 1;
            assert_eq!(code.encode(&msg).unwrap(), code.generator()[i]);
        }
        assert_eq!(
            code.encode(&vec![0; k + 1]).unwrap_err(),
            Error::LengthMismatch {
                expected: k,
                got: k + 1
            }
        );
    }

    #[test]
    fn random_messages_have_zero_syndrome() {
        let code = pg_code(4, 3);
        let mut rng = StdRng::seed_from_u64(42);
        for _ in 0..1000 {
            let msg: Vec<u8> = (0..code.dimension()).map(|_| rng.gen_range(0..2)).collect();
            let word = code.encode(&msg).unwrap();
            let syn = syndrome(code.parity(), &word).unwrap();
            assert!(syn.iter().all(|&s| s == 0));
        }
    }

    #[test]
    fn codeword_is_a_fixed_point() {
        let code = pg_code(4, 3);
        let msg: Vec<u8> = (0..code.dimension()).map(|i| (i % 2) as u8).collect();
        let word = code.encode(&msg).unwrap();
        let out = code.decode_bit_flip(&word, 50).unwrap();
        assert!(out.success);
        assert_eq!(out.iterations, 0);
        assert_eq!(out.word, word);
    }

    #[test]
    fn single_bit_errors_corrected_exhaustively() {
        // by linearity it suffices to correct every weight-1 error on the
        // zero codeword
        for (q, n) in [(2u64, 3u32), (4, 3), (2, 4)] {
            let code = pg_code(q, n);
            for pos in 0..code.length() {
                let mut word = vec![0u8; code.length()];
                word[pos] = 1;
                let out = code.decode_bit_flip(&word, 50).unwrap();
                assert!(out.success, "q={q} n={n} pos={pos}");
                assert_eq!(out.word, vec![0u8; code.length()]);
            }
        }
    }

    #[test]
    fn decoding_is_translation_invariant() {
        let code = pg_code(4, 3);
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..50 {
            let msg: Vec<u8> = (0..code.dimension()).map(|_| rng.gen_range(0..2)).collect();
            let c = code.encode(&msg).unwrap();
            let mut error = vec![0u8; code.length()];
            for _ in 0..2 {
                error[rng.gen_range(0..code.length())] ^= 1;
            }
            let from_c: Vec<u8> = c.iter().zip(error.iter()).map(|(a, b)| a ^ b).collect();
            let out_c = code.decode_bit_flip(&from_c, 50).unwrap();
            let out_0 = code.decode_bit_flip(&error, 50).unwrap();
            assert_eq!(out_c.success, out_0.success);
            if out_c.success {
                assert_eq!(out_c.word, c);
                assert_eq!(out_0.word, vec![0u8; code.length()]);
            }
        }
    }

    #[test]
    fn garbage_terminates_without_panic() {
        let code = pg_code(4, 3);
        let word = vec![1u8; code.length()];
        let out = code.decode_bit_flip(&word, 50).unwrap();
        assert!(out.iterations <= 50);
    }
}
