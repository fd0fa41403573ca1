import init, { randomBasis, gateFromBasis, recoverBasis, evaluateGrid } from "./pkg/holant_wasm.js";

const $ = (id) => document.getElementById(id);

const B3_GRID = {
  domain: 3,
  signatures: [{
    name: "g", arity: 3,
    generator: {
      weights: [[1, 0], [1, 0], [1, 0]],
      vectors: [[[1, 0], [1, 0], [-2, 0]], [[1, 0], [-1, 0], [0, 0]], [[1, 0], [1, 0], [1, 0]]],
    },
  }],
  vertices: ["g", "g"],
  edges: [[0, 1], [0, 1], [0, 1]],
};

function fmt([re, im]) {
  const r = Math.abs(re) < 1e-12 ? 0 : re;
  const i = Math.abs(im) < 1e-12 ? 0 : im;
  const show = (v) => Number.isInteger(v) ? String(v) : v.toPrecision(4);
  return i === 0 ? show(r) : `${show(r)}${i < 0 ? "-" : "+"}${show(Math.abs(i))}i`;
}

function shade(value, max) {
  const mag = Math.hypot(value[0], value[1]);
  const a = max > 0 ? mag / max : 0;
  const hue = value[0] >= 0 ? 210 : 10;
  return `hsla(${hue}, 70%, 55%, ${0.1 + 0.7 * a})`;
}

// Rows of a triangle share the first count; domain 4 is drawn layer by layer.
function drawGate(gate) {
  const root = $("triangle");
  root.innerHTML = "";
  const max = Math.max(...gate.entries.map((e) => Math.hypot(...e.value)));
  const groups = new Map();
  for (const e of gate.entries) {
    const key = gate.domain === 4 ? e.counts[3] : 0;
    if (!groups.has(key)) groups.set(key, new Map());
    const rows = groups.get(key);
    const row = e.counts[0];
    if (!rows.has(row)) rows.set(row, []);
    rows.get(row).push(e);
  }
  for (const [layer, rows] of [...groups.entries()].sort((a, b) => a[0] - b[0])) {
    const div = document.createElement("div");
    div.className = "layer";
    if (gate.domain === 4) div.innerHTML = `<h4>fourth color count ${layer}</h4>`;
    for (const [, cells] of [...rows.entries()].sort((a, b) => b[0] - a[0])) {
      const r = document.createElement("div");
      r.className = "row";
      for (const e of cells) {
        const c = document.createElement("div");
        c.className = "cell";
        c.style.background = shade(e.value, max);
        c.title = `g(${e.counts.join(",")})`;
        c.textContent = fmt(e.value);
        r.appendChild(c);
      }
      div.appendChild(r);
    }
    root.appendChild(div);
  }
  const params = Object.entries(gate.params).filter(([k]) => k !== "domain").map(([k, v]) => `${k} = ${fmt(v)}`);
  $("gate-params").textContent = `verified: ${gate.verified}\n${params.join("\n")}`;
}

function guard(out, f) {
  try {
    f();
    out.classList.remove("err");
  } catch (e) {
    out.textContent = String(e.message ?? e);
    out.classList.add("err");
  }
}

function generate() {
  guard($("gate-params"), () => drawGate(JSON.parse(gateFromBasis($("basis").value, Number($("arity").value)))));
}

function newBasis() {
  const spec = JSON.parse(randomBasis(Number($("domain").value), Number($("seed").value)));
  $("basis").value = JSON.stringify(spec);
  generate();
}

await init();
$("grid").value = JSON.stringify(B3_GRID, null, 1);
$("random").onclick = newBasis;
$("generate").onclick = generate;
$("arity").oninput = generate;
$("recover").onclick = () => guard($("recovered"), () => {
  const v = ["s", "x", "y", "t"].map((k) => Number($(k).value));
  const rep = JSON.parse(recoverBasis(...v));
  const lines = [`roots {a, c, e}: ${rep.roots.map(fmt).join(", ")}`];
  if (rep.vectors) lines.push(...rep.vectors.map((col) => `(${col.map(fmt).join(", ")})`));
  if (rep.degeneracy) lines.push(rep.degeneracy);
  $("recovered").textContent = lines.join("\n");
});
$("evaluate").onclick = () => guard($("holant"), () => {
  const params = $("params").value.trim();
  const rep = JSON.parse(evaluateGrid($("grid").value, params || undefined));
  $("holant").textContent = [
    `engine: ${fmt(rep.engine)}`,
    `oracle: ${rep.oracle ? fmt(rep.oracle) : "too many edge colorings"}`,
    rep.relative_error != null ? `relative error: ${rep.relative_error.toExponential(2)}` : "",
    `merges: ${rep.merges}, largest intermediate arity: ${rep.max_arity}, violations: ${rep.merge_violations}`,
  ].filter(Boolean).join("\n");
});
$("basis").value = JSON.stringify(B3_GRID.signatures[0].generator);
generate();
