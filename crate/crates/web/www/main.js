import init, { star_curves, integral_means, janowski_coefficients } from "./pkg/starmeans_web.js";

const COLORS = ["#1f6fd1", "#d1561f"];
const $ = (id) => document.getElementById(id);

function readInputs() {
  const random = $("member").value === "random";
  return {
    alpha: Number($("alpha").value),
    n: Number($("n").value),
    a: Number($("a").value),
    b: Number($("b").value),
    r: Number($("r").value),
    seed: random ? Number($("seed").value) : -1,
    gamma: Number($("gamma").value),
    degree: Number($("degree").value),
    grid: Number($("grid").value),
  };
}

function plot(canvas, curves) {
  const ctx = canvas.getContext("2d");
  const { width, height } = canvas;
  const pad = 36;
  ctx.clearRect(0, 0, width, height);
  let [x0, x1, y0, y1] = [Infinity, -Infinity, Infinity, -Infinity];
  for (const c of curves) {
    for (const t of c.theta) { x0 = Math.min(x0, t); x1 = Math.max(x1, t); }
    for (const v of c.values) { y0 = Math.min(y0, v); y1 = Math.max(y1, v); }
  }
  if (y1 - y0 < 1e-12) { y0 -= 1; y1 += 1; }
  const sx = (t) => pad + ((t - x0) / (x1 - x0)) * (width - 2 * pad);
  const sy = (v) => height - pad - ((v - y0) / (y1 - y0)) * (height - 2 * pad);

  ctx.strokeStyle = "#999";
  ctx.fillStyle = "#444";
  ctx.font = "11px sans-serif";
  ctx.strokeRect(pad, pad, width - 2 * pad, height - 2 * pad);
  ctx.fillText(y1.toPrecision(3), 2, pad + 4);
  ctx.fillText(y0.toPrecision(3), 2, height - pad);
  ctx.fillText(x0.toFixed(2), pad, height - pad + 14);
  ctx.fillText(x1.toFixed(2), width - pad - 20, height - pad + 14);
  if (y0 < 0 && y1 > 0) {
    ctx.setLineDash([3, 3]);
    ctx.beginPath();
    ctx.moveTo(pad, sy(0));
    ctx.lineTo(width - pad, sy(0));
    ctx.stroke();
    ctx.setLineDash([]);
  }

  curves.forEach((c, i) => {
    ctx.strokeStyle = COLORS[i % COLORS.length];
    ctx.lineWidth = 1.5;
    ctx.beginPath();
    c.theta.forEach((t, j) => (j ? ctx.lineTo(sx(t), sy(c.values[j])) : ctx.moveTo(sx(t), sy(c.values[j]))));
    ctx.stroke();
  });
}

function fillTable(means) {
  const body = $("means").querySelector("tbody");
  body.replaceChildren();
  for (const [name, rows] of [["first (+log)", means.theorem1], ["second (−log)", means.theorem2]]) {
    for (const row of rows) {
      const tr = document.createElement("tr");
      const ok = row.margin >= -1e-8 * (1 + Math.abs(row.rhs));
      const cells = [name, row.phi, row.lhs.toPrecision(8), row.rhs.toPrecision(8), row.margin.toExponential(3)];
      cells.forEach((text, k) => {
        const td = document.createElement("td");
        td.textContent = text;
        if (k === 4 && !ok) td.className = "bad";
        tr.appendChild(td);
      });
      body.appendChild(tr);
    }
  }
}

function update() {
  const p = readInputs();
  $("r-out").textContent = p.r.toFixed(2);
  try {
    const curves = JSON.parse(star_curves(p.alpha, p.n, p.a, p.b, p.r, p.seed, p.gamma, p.degree, p.grid));
    plot($("integrands"), curves.integrands);
    plot($("stars"), curves.stars);
    fillTable(JSON.parse(integral_means(p.alpha, p.n, p.a, p.b, p.r, p.seed, p.gamma, p.degree, p.grid)));
    const coeffs = JSON.parse(janowski_coefficients(p.alpha, p.n, p.a, p.b, 8));
    $("coeffs").textContent = coeffs.map((c) => c.toPrecision(6)).join(", ");
    $("error").textContent = "";
  } catch (e) {
    $("error").textContent = String(e);
  }
}

await init();
$("controls").addEventListener("input", update);
update();
