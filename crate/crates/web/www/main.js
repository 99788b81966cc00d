import init, { censusReport, incidenceMatrix, ratioCurve } from "./pkg/iterate_census_web.js";

const $ = (id) => document.getElementById(id);

function showError(el, e) {
  el.innerHTML = "";
  const p = document.createElement("p");
  p.className = "error";
  p.textContent = String(e);
  el.appendChild(p);
}

function row(cells, tag = "td") {
  const tr = document.createElement("tr");
  for (const c of cells) {
    const td = document.createElement(tag);
    td.textContent = c;
    if (String(c).length > 40) td.className = "big";
    tr.appendChild(td);
  }
  return tr;
}

function runCensus() {
  const n = Number($("census-n").value);
  const out = $("census-out");
  let report;
  try {
    report = JSON.parse(censusReport(n));
  } catch (e) {
    showError(out, e);
    return;
  }
  $("census-note").textContent =
    report.method.I_AB === "both-agree"
      ? "Brute force over the tableaux and the closed forms agree."
      : "Closed forms only (brute force runs up to n = 7 in the browser).";
  const table = document.createElement("table");
  table.appendChild(row(["quantity", "A", "A⊕B"], "th"));
  table.appendChild(row(["S_n", report.S_n, report.S_n]));
  table.appendChild(row(["reducible", report.I_A, report.I_AB]));
  table.appendChild(row(["irreducible", report.irreducible_A, report.irreducible_AB]));
  const ks = new Set([...Object.keys(report.T_A), ...Object.keys(report.T_AB)]);
  for (const k of [...ks].sort((a, b) => a - b)) {
    table.appendChild(row([`iterates with multiplicity ${k}`, report.T_A[k] ?? "0", report.T_AB[k] ?? "0"]));
  }
  out.innerHTML = "";
  out.appendChild(table);
}

let matrixState = null;

function drawMatrix() {
  const canvas = $("matrix");
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  try {
    matrixState = JSON.parse(incidenceMatrix(Number($("matrix-n").value), $("matrix-kind").value));
  } catch (e) {
    matrixState = null;
    $("iterate-name").textContent = String(e);
    return;
  }
  const m = matrixState.matrix;
  const cell = canvas.width / m.length;
  for (let i = 0; i < m.length; i++) {
    for (let j = 0; j < m.length; j++) {
      ctx.fillStyle = m[i][j] ? (i === j ? "#2a5d9f" : "#5b8fd6") : "#f2f2f2";
      ctx.fillRect(j * cell, i * cell, cell - (m.length > 40 ? 0 : 1), cell - (m.length > 40 ? 0 : 1));
    }
  }
  $("iterate-name").textContent = `${m.length} iterates`;
}

function hoverMatrix(ev) {
  if (!matrixState) return;
  const canvas = $("matrix");
  const rect = canvas.getBoundingClientRect();
  const m = matrixState.matrix;
  const cell = rect.width / m.length;
  const i = Math.floor((ev.clientY - rect.top) / cell);
  const j = Math.floor((ev.clientX - rect.left) / cell);
  if (i < 0 || j < 0 || i >= m.length || j >= m.length) return;
  const w = matrixState.iterates;
  const mult = matrixState.multiplicity;
  const verdict = m[i][j] ? "reducible" : "irreducible";
  $("iterate-name").textContent =
    `${w[i]} = ${w[j]}  (${verdict}; multiplicities ${mult[i]}, ${mult[j]})`;
}

const SERIES = [
  { key: "exact_ratio", label: "exact reducible fraction", color: "#2a5d9f" },
  { key: "estimate_ratio", label: "(n+2)/n·(1−e^(−n/16))", color: "#d9822b" },
  { key: "irreducible_exact_ratio", label: "exact irreducible fraction", color: "#3a9a5b" },
  { key: "theorem_bound_ratio", label: "|(n+2)/n·e^(−n/16) − 2/n|", color: "#a33" },
];

function drawCurve() {
  const nMax = Number($("curve-n").value);
  $("curve-n-value").textContent = nMax;
  const step = Math.max(1, Math.floor(nMax / 150));
  let data;
  try {
    data = JSON.parse(ratioCurve(nMax, step));
  } catch (e) {
    return;
  }
  const rows = data.rows;
  const canvas = $("curve");
  const ctx = canvas.getContext("2d");
  const pad = 40;
  const w = canvas.width - 2 * pad;
  const h = canvas.height - 2 * pad;
  const yMax = 1.25;
  const x = (n) => pad + ((n - 2) / Math.max(1, nMax - 2)) * w;
  const y = (v) => pad + h - (Math.min(v, yMax) / yMax) * h;
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  ctx.strokeStyle = "#999";
  ctx.fillStyle = "#444";
  ctx.font = "12px sans-serif";
  ctx.beginPath();
  ctx.moveTo(pad, pad);
  ctx.lineTo(pad, pad + h);
  ctx.lineTo(pad + w, pad + h);
  ctx.stroke();
  for (const v of [0, 0.25, 0.5, 0.75, 1, 1.25]) {
    ctx.fillText(v.toFixed(2), 4, y(v) + 4);
  }
  ctx.fillText(`n = ${nMax}`, pad + w - 50, pad + h + 28);
  ctx.fillText("2", pad, pad + h + 16);
  for (const s of SERIES) {
    ctx.strokeStyle = s.color;
    ctx.beginPath();
    rows.forEach((r, idx) => {
      const px = x(r.n);
      const py = y(r[s.key]);
      if (idx === 0) ctx.moveTo(px, py);
      else ctx.lineTo(px, py);
    });
    ctx.stroke();
  }
  $("legend").innerHTML = SERIES.map(
    (s) => `<span style="color:${s.color}">&#9632; ${s.label}</span>`
  ).join("");
}

async function main() {
  await init();
  $("census-run").addEventListener("click", runCensus);
  $("census-n").addEventListener("change", runCensus);
  $("matrix-n").addEventListener("change", drawMatrix);
  $("matrix-kind").addEventListener("change", drawMatrix);
  $("matrix").addEventListener("mousemove", hoverMatrix);
  $("curve-n").addEventListener("input", drawCurve);
  runCensus();
  drawMatrix();
  drawCurve();
}

main();
