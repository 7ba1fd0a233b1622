import init, { construct_matrix, orbit_summary, decode_trace } from "./pkg/singer_ldpc_demo.js";

const $ = (id) => document.getElementById(id);
const BLOCK_COLORS = ["#4477aa", "#ee6677", "#228833", "#ccbb44", "#66ccee", "#aa3377", "#bbbbbb"];

let matrixPayload = null;
let trace = null;

function params() {
  return {
    q: Number($("q").value),
    n: Number($("n").value),
    method: $("method").value,
    point: Number($("point").value),
  };
}

function fail(el, message) {
  el.innerHTML = `<span class="error">${message}</span>`;
}

function drawMatrix(payload) {
  const canvas = $("matrix-canvas");
  const ctx = canvas.getContext("2d");
  const rows = payload.rows.length;
  const cols = payload.report.num_cols;
  // integer cells when the matrix fits, density plot otherwise
  const fit = Math.floor(Math.min(620 / cols, 460 / rows));
  const cellW = fit >= 1 ? fit : 620 / cols;
  const cellH = fit >= 1 ? fit : 460 / rows;
  canvas.width = Math.ceil(cols * cellW);
  canvas.height = Math.ceil(rows * cellH);
  ctx.fillStyle = "#8881";
  ctx.fillRect(0, 0, canvas.width, canvas.height);
  payload.rows.forEach((support, r) => {
    const block = payload.block_of_row[r] ?? 0;
    ctx.fillStyle = BLOCK_COLORS[block % BLOCK_COLORS.length];
    for (const c of support) {
      ctx.fillRect(c * cellW, r * cellH, Math.ceil(cellW), Math.ceil(cellH));
    }
  });
}

function renderReport(report) {
  const rows = [
    ["size", `${report.num_rows} × ${report.num_cols}`],
    ["row weights", report.row_weights.map(([w, c]) => `${w} ×${c}`).join(", ")],
    ["column weights", report.col_weights.map(([w, c]) => `${w} ×${c}`).join(", ")],
    ["max column overlap", report.max_col_overlap],
    ["Tanner girth", report.girth ?? "acyclic"],
    ["blocks", report.blocks.map((b) => `${b.rows}${b.circulant ? " (circulant)" : ""}`).join(", ") || "none"],
  ];
  $("report").innerHTML = `<tbody>${rows
    .map(([k, v]) => `<tr><th>${k}</th><td>${v}</td></tr>`)
    .join("")}</tbody>`;
}

function renderOrbits({ q, n }) {
  const out = JSON.parse(orbit_summary(q, n));
  const el = $("orbits");
  if (out.error) return fail(el, out.error);
  el.innerHTML = `
    <p>${out.num_lines} lines of PG(${n - 1},${q}) fall into ${out.orbits.length}
    orbit(s) of length(s) ${out.orbits.join(", ")} (θ = ${out.theta}).</p>
    <p>Starter lines through point 0:
    ${out.starter.map((l) => `{${l.join(",")}}`).join(" ")} </p>`;
}

function build() {
  const p = params();
  $("status").textContent = "building…";
  setTimeout(() => {
    const out = JSON.parse(construct_matrix(p.q, p.n, p.method, p.point));
    if (out.error) {
      $("status").textContent = "";
      fail($("report"), out.error);
      return;
    }
    matrixPayload = out;
    drawMatrix(out);
    renderReport(out.report);
    renderOrbits(p);
    $("status").textContent = `${out.report.num_rows}×${out.report.num_cols} built`;
    $("errors").max = out.report.num_cols - 1;
  }, 10);
}

function drawWord(step) {
  if (!trace) return;
  const { word, flipped } = trace.steps[step];
  const canvas = $("word-canvas");
  const ctx = canvas.getContext("2d");
  const cell = Math.max(2, Math.floor(canvas.width / word.length));
  canvas.width = cell * word.length;
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  word.forEach((bit, i) => {
    ctx.fillStyle = bit ? "#ee6677" : "#8882";
    ctx.fillRect(i * cell, 0, cell - 1, canvas.height - 12);
  });
  ctx.fillStyle = "#228833";
  for (const f of flipped) ctx.fillRect(f * cell, canvas.height - 8, cell - 1, 8);
  const weight = trace.steps[step].syndrome_weight;
  $("step-label").textContent =
    `step ${step}/${trace.steps.length - 1} — ${word.reduce((a, b) => a + b, 0)} ones, ` +
    `${weight} unsatisfied check(s)` +
    (flipped.length ? `, flipped ${flipped.length} bit(s)` : "");
}

function decode() {
  if (!matrixPayload) build();
  const p = params();
  const errors = $("errors").value
    .split(",")
    .map((s) => parseInt(s.trim(), 10))
    .filter((x) => Number.isFinite(x) && x >= 0);
  const out = JSON.parse(decode_trace(p.q, p.n, p.method, p.point, Uint32Array.from(errors), 50));
  const status = $("decode-status");
  if (out.error) return fail(status, out.error);
  trace = out;
  $("step").max = out.steps.length - 1;
  $("step").value = out.steps.length - 1;
  status.innerHTML = out.success
    ? `decoded back to the zero codeword in ${out.iterations} iteration(s)`
    : `<span class="error">failed after ${out.iterations} iteration(s)</span>`;
  drawWord(out.steps.length - 1);
}

function randomize() {
  const cols = matrixPayload ? matrixPayload.report.num_cols : 15;
  const a = Math.floor(Math.random() * cols);
  let b = Math.floor(Math.random() * cols);
  if (b === a) b = (b + 1) % cols;
  $("errors").value = `${a}, ${b}`;
}

async function main() {
  await init();
  $("build").addEventListener("click", build);
  $("decode").addEventListener("click", decode);
  $("randomize").addEventListener("click", randomize);
  $("step").addEventListener("input", (e) => drawWord(Number(e.target.value)));
  build();
}

main();
