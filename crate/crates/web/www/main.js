import init, { coverage, estimate, rmse_vs_snr } from "./pkg/coprime_spectra_web.js";

const $ = (id) => document.getElementById(id);

function numbers(id) {
  return $(id).value.split(",").map((s) => s.trim()).filter((s) => s.length > 0).map(Number);
}

function common() {
  return { ratios: numbers("ratios"), m: Number($("m").value), l: Number($("l").value) };
}

function report(id, fn) {
  const out = $(id);
  out.classList.remove("err");
  try {
    out.textContent = fn();
  } catch (e) {
    out.classList.add("err");
    out.textContent = e.message ?? String(e);
  }
}

// Axes with a linear x range and a caller-supplied y range.
function plotFrame(ctx, xr, yr, xlabel, ylabel) {
  const { width: w, height: h } = ctx.canvas;
  const pad = { l: 55, r: 10, t: 10, b: 35 };
  ctx.clearRect(0, 0, w, h);
  ctx.strokeStyle = "#999";
  ctx.strokeRect(pad.l, pad.t, w - pad.l - pad.r, h - pad.t - pad.b);
  ctx.fillStyle = "#444";
  ctx.font = "12px system-ui";
  ctx.fillText(xlabel, w / 2 - 20, h - 5);
  ctx.save();
  ctx.translate(14, h / 2 + 20);
  ctx.rotate(-Math.PI / 2);
  ctx.fillText(ylabel, 0, 0);
  ctx.restore();
  const x = (v) => pad.l + ((v - xr[0]) / (xr[1] - xr[0])) * (w - pad.l - pad.r);
  const y = (v) => h - pad.b - ((v - yr[0]) / (yr[1] - yr[0])) * (h - pad.t - pad.b);
  for (const v of [xr[0], (xr[0] + xr[1]) / 2, xr[1]]) ctx.fillText(v.toFixed(2), x(v) - 12, h - pad.b + 14);
  for (const v of [yr[0], yr[1]]) ctx.fillText(Number(v.toPrecision(3)).toString(), 4, y(v) + 4);
  return { x, y, top: pad.t, bottom: h - pad.b };
}

function drawCoverage() {
  const { ratios, m, l } = common();
  const view = coverage(ratios, m, l);
  const counts = view.counts;
  const max = Math.max(...counts);
  const ctx = $("coverage-canvas").getContext("2d");
  const cell = ctx.canvas.width / m;
  ctx.clearRect(0, 0, ctx.canvas.width, ctx.canvas.height);
  for (let i = 0; i < m; i++) {
    for (let j = 0; j < m; j++) {
      const c = counts[i * m + j];
      const shade = Math.round(255 - (200 * c) / max);
      ctx.fillStyle = c === 0 ? "#d33" : `rgb(${shade},${shade},255)`;
      ctx.fillRect(j * cell, i * cell, cell - 1, cell - 1);
    }
  }
  const text =
    `observed indices (${view.indices.length} of ${m + l - 1}): ${Array.from(view.indices).join(" ")}\n` +
    `counts from ${Math.min(...counts)} to ${max}, ${view.zero_entries} unobserved entries\n` +
    (view.min_snapshots > 0 ? `L >= ${view.min_snapshots} always gives full coverage` : "no L gives full coverage");
  view.free();
  return text;
}

function drawEstimate() {
  const { ratios, m, l } = common();
  const snr = $("snr").value.trim() === "inf" ? Infinity : Number($("snr").value);
  const view = estimate(ratios, m, l, numbers("freqs"), numbers("amps"), snr, Number($("seed").value), 4096);
  const grid = view.grid;
  const db = view.spectrum_db;
  const floor = Math.max(Math.min(...db), -80);
  const ctx = $("spectrum-canvas").getContext("2d");
  const ax = plotFrame(ctx, [0, 1], [floor, 0], "normalized frequency", "MUSIC dB");
  const vline = (f, color) => {
    ctx.strokeStyle = color;
    ctx.beginPath();
    ctx.moveTo(ax.x(f), ax.top);
    ctx.lineTo(ax.x(f), ax.bottom);
    ctx.stroke();
  };
  ctx.setLineDash([4, 4]);
  view.truths.forEach((f) => vline(f, "#2a2"));
  ctx.setLineDash([]);
  view.esprit.forEach((f) => vline(f, "#d60"));
  ctx.strokeStyle = "#236";
  ctx.beginPath();
  grid.forEach((f, i) => {
    const v = ax.y(Math.max(db[i], floor));
    i === 0 ? ctx.moveTo(ax.x(f), v) : ctx.lineTo(ax.x(f), v);
  });
  ctx.stroke();
  const fmt = (a) => Array.from(a).map((f) => f.toFixed(6)).join(" ");
  const text =
    `samples used: ${view.samples}\n` +
    `true:   ${fmt(view.truths)}\n` +
    `ESPRIT: ${fmt(view.esprit)}  (orange)\n` +
    `MUSIC:  ${fmt(view.music)}\n` +
    `ESPRIT RMSE: ${view.rmse.toExponential(3)}`;
  view.free();
  return text;
}

function drawSweep() {
  const { ratios, m, l } = common();
  const snrs = numbers("sweep-snr");
  const curve = rmse_vs_snr(ratios, m, l, Number($("sweep-k").value), snrs, Number($("sweep-trials").value), 0);
  const logs = Array.from(curve, (v) => Math.log10(v));
  const finite = logs.filter(Number.isFinite);
  const ctx = $("sweep-canvas").getContext("2d");
  const ax = plotFrame(
    ctx,
    [Math.min(...snrs), Math.max(...snrs)],
    [Math.min(...finite) - 0.2, Math.max(...finite) + 0.2],
    "SNR dB",
    "log10 RMSE",
  );
  ctx.strokeStyle = "#236";
  ctx.fillStyle = "#236";
  ctx.beginPath();
  logs.forEach((v, i) => {
    if (!Number.isFinite(v)) return;
    ctx.lineTo(ax.x(snrs[i]), ax.y(v));
    ctx.fillRect(ax.x(snrs[i]) - 2, ax.y(v) - 2, 4, 4);
  });
  ctx.stroke();
  return snrs.map((s, i) => `${s} dB: ${Number.isNaN(curve[i]) ? "all trials failed" : curve[i].toExponential(3)}`).join("\n");
}

await init();
$("run-coverage").onclick = () => report("coverage-out", drawCoverage);
$("run-estimate").onclick = () => report("estimate-out", drawEstimate);
$("run-sweep").onclick = () => report("sweep-out", drawSweep);
report("coverage-out", drawCoverage);
report("estimate-out", drawEstimate);
