import init, { rouge, minhash, filter } from "./pkg/dpf_wasm.js";

const $ = (id) => document.getElementById(id);
const fmt = (x) => (typeof x === "number" ? x.toFixed(4) : String(x));

function table(rows) {
  const t = document.createElement("table");
  for (const [k, v, cls] of rows) {
    const tr = t.insertRow();
    tr.insertCell().textContent = k;
    const td = tr.insertCell();
    td.textContent = fmt(v);
    if (cls) td.className = cls;
  }
  return t;
}

function show(target, fn) {
  const out = $(target);
  out.replaceChildren();
  try {
    out.append(fn());
  } catch (e) {
    const p = document.createElement("p");
    p.className = "err";
    p.textContent = e.message ?? String(e);
    out.append(p);
  }
}

function updateRouge() {
  show("r-out", () => {
    const r = JSON.parse(rouge($("r-cand").value, $("r-ref").value, $("r-mode").value));
    return table([["LCS length", r.lcs], ["precision", r.precision], ["recall", r.recall], ["F1", r.f1]]);
  });
}

function drawCurve(bands, rows, threshold, j) {
  const c = $("m-curve");
  const g = c.getContext("2d");
  const [w, h, pad] = [c.width, c.height, 30];
  const x = (s) => pad + s * (w - 2 * pad);
  const y = (p) => h - pad - p * (h - 2 * pad);
  g.clearRect(0, 0, w, h);
  g.strokeStyle = "#999";
  g.strokeRect(pad, pad, w - 2 * pad, h - 2 * pad);
  g.fillStyle = "#555";
  g.font = "11px system-ui";
  g.fillText("Jaccard", w / 2 - 18, h - 8);
  g.fillText("P(candidate)", 2, 18);
  g.beginPath();
  g.strokeStyle = "#2b59c3";
  for (let i = 0; i <= 200; i++) {
    const s = i / 200;
    const p = 1 - Math.pow(1 - Math.pow(s, rows), bands);
    i === 0 ? g.moveTo(x(s), y(p)) : g.lineTo(x(s), y(p));
  }
  g.stroke();
  g.setLineDash([4, 4]);
  g.strokeStyle = "#b3261e";
  g.beginPath();
  g.moveTo(x(threshold), y(0));
  g.lineTo(x(threshold), y(1));
  g.stroke();
  g.setLineDash([]);
  g.fillStyle = "#1b6e20";
  const p = 1 - Math.pow(1 - Math.pow(j, rows), bands);
  g.beginPath();
  g.arc(x(j), y(p), 4, 0, 2 * Math.PI);
  g.fill();
}

function updateMinhash() {
  show("m-out", () => {
    const [k, b, r] = [+$("m-k").value, +$("m-b-n").value, +$("m-r").value];
    const m = JSON.parse(minhash($("m-a").value, $("m-b").value, k, b, r));
    drawCurve(b, r, m.threshold, m.exact_jaccard);
    const dup = m.exact_jaccard >= m.threshold;
    return table([
      ["shingles (A / B)", `${m.shingles_a} / ${m.shingles_b}`],
      ["exact Jaccard", m.exact_jaccard, dup ? "bad" : "good"],
      [`MinHash estimate (${b * r} permutations)`, m.estimate],
      ["bands that collide", `${m.bands_matching} of ${b}`],
      ["P(candidate) at this Jaccard", m.candidate_probability],
    ]);
  });
}

const LIMIT = {
  char_rep: "max_char_rep",
  word_rep: "max_word_rep",
  special_ratio: "max_special_ratio",
  perplexity: "max_perplexity",
  too_short: "min_chars",
};

function updateFilter() {
  show("f-out", () => {
    const v = JSON.parse(filter($("f-text").value));
    const rows = [["verdict", v.kept ? "keep" : "reject", v.kept ? "good" : "bad"]];
    for (const [rule, value] of Object.entries(v.measured)) {
      const fired = v.fired_rules.includes(rule);
      rows.push([`${rule} (limit ${v.limits[LIMIT[rule]]})`, value, fired ? "bad" : ""]);
    }
    return table(rows);
  });
}

await init();
$("status").textContent = "Everything below runs locally in WebAssembly.";
for (const id of ["r-cand", "r-ref", "r-mode"]) $(id).addEventListener("input", updateRouge);
for (const id of ["m-a", "m-b", "m-k", "m-b-n", "m-r"]) $(id).addEventListener("input", updateMinhash);
$("f-text").addEventListener("input", updateFilter);
updateRouge();
updateMinhash();
updateFilter();
