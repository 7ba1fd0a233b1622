//! wasm-bindgen surface for the browser demo.
//!
//! Every export takes plain scalars and returns a JSON string; errors come
//! back as `{"error": "..."}` so the page can render them without
//! exception plumbing. The same functions compile and run natively, which
//! is how they are tested.

use serde::Serialize;
use wasm_bindgen::prelude::wasm_bindgen;

use singer_ldpc::codec::{decode_bit_flip, syndrome};
use singer_ldpc::orbits::{decompose_lines, starter_set, StarterSet};
use singer_ldpc::pcm::{assemble, build_report, pg1_matrix, BlockInfo, MatrixReport, SparseBinaryMatrix};
use singer_ldpc::projgeom::{PointIndex, ProjectiveSpace};
use singer_ldpc::quadrics::{singer_quadric, starter_from_quadric};
use singer_ldpc::Result;

#[derive(Serialize)]
struct MatrixPayload {
    report: MatrixReport,
    rows: Vec<Vec<u32>>,
    block_of_row: Vec<usize>,
}

#[derive(Serialize)]
struct OrbitsPayload {
    q: u64,
    n: u32,
    theta: u64,
    num_lines: u64,
    orbits: Vec<u64>,
    starter: Vec<Vec<u32>>,
}

#[derive(Serialize)]
struct TraceStep {
    word: Vec<u8>,
    syndrome_weight: usize,
    flipped: Vec<u32>,
}

#[derive(Serialize)]
struct DecodePayload {
    success: bool,
    iterations: usize,
    steps: Vec<TraceStep>,
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("serializable payload")
}

fn error_json(message: impl std::fmt::Display) -> String {
    json(&serde_json::json!({ "error": message.to_string() }))
}

fn build(q: u64, n: u32, method: &str, point: u32) -> Result<(SparseBinaryMatrix, Vec<BlockInfo>)> {
    let space = ProjectiveSpace::new(q, n)?;
    let with_starter = |starter: StarterSet| -> Result<(SparseBinaryMatrix, Vec<BlockInfo>)> {
        let orbits = decompose_lines(&space);
        let am = assemble(&space, &starter, &orbits)?;
        Ok((am.matrix, am.blocks))
    };
    match method {
        "full" => Ok((pg1_matrix(&space), Vec::new())),
        "starter" => with_starter(starter_set(&space, PointIndex(point))?),
        "quadric" => {
            let quad = singer_quadric(&space, PointIndex(point))?;
            with_starter(starter_from_quadric(&space, &quad, PointIndex(point))?)
        }
        other => Err(singer_ldpc::Error::OrbitMismatch(format!(
            "unknown method {other:?} (expected full, starter, or quadric)"
        ))),
    }
}

fn construct_impl(q: u64, n: u32, method: &str, point: u32) -> Result<String> {
    let (matrix, blocks) = build(q, n, method, point)?;
    let mut block_of_row = vec![0usize; matrix.num_rows()];
    for (i, b) in blocks.iter().enumerate() {
        for r in b.start_row..b.start_row + b.num_rows {
            block_of_row[r] = i;
        }
    }
    let payload = MatrixPayload {
        report: build_report(n, q, &matrix, &blocks),
        rows: matrix.row_support().to_vec(),
        block_of_row,
    };
    Ok(json(&payload))
}

/// Build a parity-check matrix and return its support plus the structural
/// report. Methods: "full", "starter", "quadric" (n = 4, even q).
#[wasm_bindgen]
pub fn construct_matrix(q: u32, n: u32, method: &str, point: u32) -> String {
    match construct_impl(q as u64, n, method, point) {
        Ok(s) => s,
        Err(e) => error_json(e),
    }
}

fn orbits_impl(q: u64, n: u32) -> Result<String> {
    let space = ProjectiveSpace::new(q, n)?;
    let decomposition = decompose_lines(&space);
    let starter = starter_set(&space, PointIndex(0))?;
    let payload = OrbitsPayload {
        q,
        n,
        theta: space.theta(),
        num_lines: singer_ldpc::projgeom::count_lines(n, q),
        orbits: decomposition.iter().map(|o| o.length).collect(),
        starter: starter
            .lines
            .iter()
            .map(|l| l.points().iter().map(|p| p.0).collect())
            .collect(),
    };
    Ok(json(&payload))
}

/// Singer line-orbit decomposition and the starter set through point 0.
#[wasm_bindgen]
pub fn orbit_summary(q: u32, n: u32) -> String {
    match orbits_impl(q as u64, n) {
        Ok(s) => s,
        Err(e) => error_json(e),
    }
}

fn decode_impl(q: u64, n: u32, method: &str, point: u32, errors: &[u32], max_iter: u32) -> Result<String> {
    let (matrix, _) = build(q, n, method, point)?;
    let mut word = vec![0u8; matrix.num_cols()];
    for &e in errors {
        if (e as usize) < word.len() {
            word[e as usize] ^= 1;
        }
    }
    // replay the decoder with growing iteration budgets to capture a trace
    let mut steps = Vec::new();
    let mut prev = word.clone();
    let syn0 = syndrome(&matrix, &word)?;
    steps.push(TraceStep {
        word: word.clone(),
        syndrome_weight: syn0.iter().filter(|&&s| s == 1).count(),
        flipped: Vec::new(),
    });
    let final_outcome = decode_bit_flip(&matrix, &word, max_iter as usize)?;
    for budget in 1..=final_outcome.iterations {
        let out = decode_bit_flip(&matrix, &word, budget)?;
        let flipped: Vec<u32> = out
            .word
            .iter()
            .zip(prev.iter())
            .enumerate()
            .filter(|(_, (a, b))| a != b)
            .map(|(i, _)| i as u32)
            .collect();
        let syn = syndrome(&matrix, &out.word)?;
        steps.push(TraceStep {
            word: out.word.clone(),
            syndrome_weight: syn.iter().filter(|&&s| s == 1).count(),
            flipped,
        });
        prev = out.word;
    }
    Ok(json(&DecodePayload {
        success: final_outcome.success,
        iterations: final_outcome.iterations,
        steps,
    }))
}

/// Flip the given bits of the zero codeword and bit-flip decode, returning
/// the per-iteration trace.
#[wasm_bindgen]
pub fn decode_trace(q: u32, n: u32, method: &str, point: u32, errors: &[u32], max_iter: u32) -> String {
    match decode_impl(q as u64, n, method, point, errors, max_iter) {
        Ok(s) => s,
        Err(e) => error_json(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construct_payload_shape() {
        let out = construct_matrix(2, 4, "quadric", 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!(v.get("error").is_none(), "{out}");
        assert_eq!(v["report"]["num_rows"], 35);
        assert_eq!(v["report"]["num_cols"], 15);
        assert_eq!(v["rows"].as_array().unwrap().len(), 35);
        assert_eq!(v["block_of_row"][0], 0);
        assert_eq!(v["block_of_row"][34], 2);
    }

    #[test]
    fn starter_method_on_odd_dimension() {
        let out = construct_matrix(2, 5, "starter", 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["report"]["num_rows"], 155);
        assert_eq!(v["report"]["blocks"].as_array().unwrap().len(), 5);
    }

    #[test]
    fn errors_come_back_as_json() {
        let out = construct_matrix(3, 4, "quadric", 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!(v["error"].as_str().unwrap().contains("order"));

        let out = construct_matrix(2, 4, "bogus", 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!(v["error"].as_str().unwrap().contains("bogus"));
    }

    #[test]
    fn orbit_summary_matches_decomposition() {
        let out = orbit_summary(2, 4);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["orbits"], serde_json::json!([5, 15, 15]));
        assert_eq!(v["theta"], 15);
        assert_eq!(v["num_lines"], 35);
    }

    #[test]
    fn decode_trace_corrects_single_error() {
        let out = decode_trace(4, 3, "full", 0, &[7], 50);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["success"], true);
        assert_eq!(v["iterations"], 1);
        let steps = v["steps"].as_array().unwrap();
        assert_eq!(steps.len(), 2);
        assert_eq!(steps[0]["syndrome_weight"], 5);
        assert_eq!(steps[1]["syndrome_weight"], 0);
        assert_eq!(steps[1]["flipped"], serde_json::json!([7]));
    }
}
