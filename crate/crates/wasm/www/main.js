import init, { inspect, tau_table, survey } from "./pkg/sumtrees_wasm.js";

const $ = (id) => document.getElementById(id);
const SVG = "http://www.w3.org/2000/svg";

function fill(dl, pairs) {
  dl.replaceChildren();
  for (const [k, v] of pairs) {
    const dt = document.createElement("dt");
    const dd = document.createElement("dd");
    dt.textContent = k;
    dd.textContent = v;
    dl.append(dt, dd);
  }
}

function svgEl(name, attrs) {
  const el = document.createElementNS(SVG, name);
  for (const [k, v] of Object.entries(attrs)) el.setAttribute(k, v);
  return el;
}

function drawTree(svg, nodes) {
  svg.replaceChildren();
  const leaves = nodes.filter((n) => n.leaf).length;
  const depth = Math.max(...nodes.map((n) => n.depth));
  const w = 600, h = 300, pad = 24;
  const px = (x) => pad + (leaves > 1 ? (x / (leaves - 1)) * (w - 2 * pad) : (w - 2 * pad) / 2);
  const py = (d) => pad + (depth > 0 ? (d / depth) * (h - 2 * pad) : 0);
  for (const n of nodes) {
    if (n.parent === null) continue;
    const p = nodes[n.parent];
    svg.append(svgEl("line", { x1: px(p.x), y1: py(p.depth), x2: px(n.x), y2: py(n.depth), stroke: "#999" }));
  }
  for (const n of nodes) {
    const g = svgEl("g", { class: n.leaf ? "leaf" : n.text });
    g.append(svgEl("circle", { cx: px(n.x), cy: py(n.depth), r: 11 }));
    const t = svgEl("text", { x: px(n.x), y: py(n.depth) });
    t.textContent = n.text;
    g.append(t);
    svg.append(g);
  }
}

function runInspect() {
  $("inspect-error").textContent = "";
  try {
    const r = JSON.parse(inspect($("expr").value));
    drawTree($("tree"), r.nodes);
    fill($("inspect-out"), [
      ["leaves", r.leaves],
      ["S / D nodes", `${r.s_nodes} / ${r.d_nodes}`],
      ["canonical form", r.canonical_labeled ?? "(labels repeat)"],
      ["canonical shape", r.canonical_shape],
      ["inequivalent labelings", r.class_count],
      ["n!/2^S", r.class_count_formula],
    ]);
  } catch (e) {
    $("inspect-error").textContent = e.message ?? String(e);
  }
}

function runTable() {
  const maxN = Number($("max-n").value);
  $("max-n-value").textContent = maxN;
  const { rows } = JSON.parse(tau_table(maxN));
  const table = $("table");
  table.replaceChildren();
  const head = table.insertRow();
  for (const label of ["n", ...Array.from({ length: maxN - 1 }, (_, i) => `s=${i + 1}`), "total"]) {
    const th = document.createElement("th");
    th.textContent = label;
    head.append(th);
  }
  for (const row of rows) {
    const tr = table.insertRow();
    const cells = [String(row.n), ...row.tau, ...Array(maxN - 1 - row.tau.length).fill(""), row.alpha];
    cells.forEach((c, i) => {
      const td = tr.insertCell();
      td.textContent = c;
      if (c === "0" && i > 0 && i < cells.length - 1) td.className = "zero";
    });
  }
}

function runSurvey() {
  $("survey-error").textContent = "";
  let selector = $("selector").value;
  try {
    if (selector === "shape") selector = "shape:" + $("expr").value;
    const r = JSON.parse(survey($("binding").value + "\n", selector, $("precision").value));
    fill($("survey-out"), [
      ["classes", r.classes],
      ["distinct results", `${r.distinct}: ${r.distinct_hex.join(", ")}`],
      ["exact sum", r.exact],
      ["abs error min / mean / max", `${r.min_abs_error} / ${r.mean_abs_error} / ${r.max_abs_error}`],
      ["most accurate", r.argmin],
      ["least accurate", r.argmax],
      ["compensated sum", `${r.compensated} (error ${r.compensated_abs_error})`],
      ["overflowed", r.overflowed],
    ]);
  } catch (e) {
    $("survey-out").replaceChildren();
    $("survey-error").textContent = e.message ?? String(e);
  }
}

await init();
$("expr").addEventListener("input", runInspect);
$("max-n").addEventListener("input", runTable);
$("run-survey").addEventListener("click", runSurvey);
runInspect();
runTable();
runSurvey();
