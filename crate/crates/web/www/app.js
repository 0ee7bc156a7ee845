// Expects the output of `wasm-bindgen --target web` in ./pkg.
import init, { path_ratio_curve, boost_sequence, implement } from "./pkg/hcgl_web.js";

const $ = (id) => document.getElementById(id);

function show(el, text, isError) {
  el.textContent = text;
  el.classList.toggle("error", !!isError);
}

function call(fn, ...args) {
  const v = JSON.parse(fn(...args));
  if (v.error) throw new Error(v.error);
  return v;
}

function drawCurve(points) {
  const c = $("curve"), ctx = c.getContext("2d");
  ctx.clearRect(0, 0, c.width, c.height);
  const ys = points.map((p) => p.ratio).filter((y) => y !== null && isFinite(y));
  if (!ys.length) return;
  // Clip outliers near poles so the rest stays readable.
  const lo = Math.max(Math.min(...ys), -10), hi = Math.min(Math.max(...ys), 10);
  const pad = 20, w = c.width - 2 * pad, h = c.height - 2 * pad;
  const x = (n) => pad + (w * (n - 1)) / Math.max(points.length - 1, 1);
  const y = (v) => pad + h - (h * (Math.min(Math.max(v, lo), hi) - lo)) / (hi - lo || 1);
  ctx.strokeStyle = "#bbb";
  ctx.beginPath();
  for (const ref of [0, -1]) {
    if (ref >= lo && ref <= hi) { ctx.moveTo(pad, y(ref)); ctx.lineTo(pad + w, y(ref)); }
  }
  ctx.stroke();
  ctx.fillStyle = "#1f5fa8";
  for (const p of points) {
    if (p.ratio === null) {
      ctx.fillStyle = "#b00";
      ctx.fillRect(x(p.n) - 1, pad, 2, h);
      ctx.fillStyle = "#1f5fa8";
      continue;
    }
    ctx.beginPath();
    ctx.arc(x(p.n), y(p.ratio), 2.5, 0, 2 * Math.PI);
    ctx.fill();
  }
  ctx.fillStyle = "#444";
  ctx.fillText(hi.toFixed(3), 2, pad - 6);
  ctx.fillText(lo.toFixed(3), 2, c.height - 4);
}

function drawGadget(v) {
  const c = $("gadget"), ctx = c.getContext("2d");
  ctx.clearRect(0, 0, c.width, c.height);
  if (!v.edge_list) {
    ctx.fillText(`${v.vertices} vertices: too large to draw`, 10, 20);
    return;
  }
  // Breadth-first layers from the terminal.
  const adj = Array.from({ length: v.vertices }, () => []);
  for (const [a, b] of v.edge_list) { adj[a].push(b); adj[b].push(a); }
  const depth = new Array(v.vertices).fill(-1);
  depth[v.terminal] = 0;
  const queue = [v.terminal];
  while (queue.length) {
    const u = queue.shift();
    for (const w of adj[u]) if (depth[w] < 0) { depth[w] = depth[u] + 1; queue.push(w); }
  }
  const layers = [];
  depth.forEach((d, u) => { (layers[Math.max(d, 0)] ||= []).push(u); });
  const pos = [];
  layers.forEach((layer, d) => layer.forEach((u, i) => {
    pos[u] = [20 + ((c.width - 40) * d) / Math.max(layers.length - 1, 1),
              20 + ((c.height - 40) * (i + 0.5)) / layer.length];
  }));
  ctx.strokeStyle = "#999";
  ctx.beginPath();
  for (const [a, b] of v.edge_list) { ctx.moveTo(...pos[a]); ctx.lineTo(...pos[b]); }
  ctx.stroke();
  pos.forEach(([px, py], u) => {
    ctx.fillStyle = u === v.terminal ? "#b00" : "#1f5fa8";
    ctx.beginPath();
    ctx.arc(px, py, u === v.terminal ? 5 : 3, 0, 2 * Math.PI);
    ctx.fill();
  });
}

function onSubmit(id, handler) {
  $(id).addEventListener("submit", (e) => {
    e.preventDefault();
    handler(Object.fromEntries(new FormData(e.target)));
  });
}

await init();

onSubmit("curve-form", ({ lambda, n }) => {
  try {
    const v = call(path_ratio_curve, lambda, Number(n));
    drawCurve(v.points);
    const poles = v.points.filter((p) => p.ratio === null).map((p) => p.n);
    const last = v.points[v.points.length - 1];
    show($("curve-info"), `lambda = ${v.lambda}; last ratio ${last.exact ?? last.ratio}` +
      (poles.length ? `; undefined at n = ${poles.slice(0, 12).join(", ")}` : ""));
  } catch (err) { show($("curve-info"), err.message, true); }
});

onSubmit("boost-form", ({ delta, lambda }) => {
  const table = $("boost-table");
  table.innerHTML = "";
  try {
    const v = call(boost_sequence, Number(delta), lambda);
    table.innerHTML = "<tr><th>j</th><th>x_j</th><th>approx</th></tr>" +
      v.iterates.map((x, j) => `<tr><td>${j}</td><td>${x}</td><td>${v.iterates_approx[j].toFixed(6)}</td></tr>`).join("");
    show($("boost-info"), `h = ${v.height}, lambda_hat = ${v.lambda_hat} (${v.lambda_hat_approx.toFixed(6)}), tree T_h has ${v.tree_vertices} vertices`);
  } catch (err) { show($("boost-info"), err.message, true); }
});

onSubmit("implement-form", ({ delta, lambda, target, eps }) => {
  try {
    const v = call(implement, Number(delta), lambda, target, eps);
    show($("implement-info"), `ratio ${v.ratio} (error ${v.error})\n${v.vertices} vertices, max degree ${v.max_degree}\n` +
      `route: ${JSON.stringify(v.trace)}`);
    drawGadget(v);
  } catch (err) {
    show($("implement-info"), err.message, true);
    $("gadget").getContext("2d").clearRect(0, 0, 720, 360);
  }
});
