/**
 * Pure SVG builders. Geometry is scaled for layout only; the numbers shown
 * in labels and title attributes come straight from the view models.
 */

import { escapeHtml } from "./format";
import type { CdfPoint } from "./state";
import type { OutputRow, TornadoRow } from "./state";

const BAR_W = 560;
const ROW_H = 26;

export function outputBarsSvg(rows: OutputRow[]): string {
  const bars = rows.filter((r) => r.probability !== null);
  const height = bars.length * ROW_H + 10;
  const parts: string[] = [
    `<svg viewBox="0 0 ${BAR_W} ${height}" class="bars" role="img">`,
  ];
  bars.forEach((row, i) => {
    const p = row.probability!;
    const se = row.stdError!;
    const y = i * ROW_H + 5;
    const x0 = 230;
    const scale = BAR_W - x0 - 90;
    const w = p.value * scale;
    const whisker = se.value * scale;
    parts.push(
      `<text x="${x0 - 6}" y="${y + 13}" text-anchor="end" class="label">${escapeHtml(shortId(row.node))}</text>`,
      `<rect x="${x0}" y="${y}" width="${w.toFixed(2)}" height="16" class="bar"><title>${p.full}</title></rect>`,
      `<line x1="${(x0 + w - whisker).toFixed(2)}" y1="${y + 8}" x2="${(x0 + w + whisker).toFixed(2)}" y2="${y + 8}" class="whisker"/>`,
      `<text x="${x0 + scale + 6}" y="${y + 13}" class="value" title="${p.full}">${p.display} <tspan class="se">${se.display}</tspan></text>`
    );
  });
  parts.push("</svg>");
  return parts.join("");
}

export function cdfLineSvg(points: CdfPoint[], neverMass: number | null = null): string {
  if (points.length === 0) return "<svg class='cdf'></svg>";
  const w = 620;
  const h = 220;
  const padL = 44;
  const padB = 24;
  const years = points.map((p) => p.year);
  const minYear = Math.min(...years);
  const maxYear = Math.max(...years);
  const x = (year: number) => padL + ((year - minYear) / (maxYear - minYear)) * (w - padL - 10);
  const y = (v: number) => 8 + (1 - v) * (h - padB - 8);
  const path = points
    .map((p, i) => `${i === 0 ? "M" : "L"}${x(p.year).toFixed(1)},${y(p.value).toFixed(1)}`)
    .join(" ");
  const gridYears = [minYear, Math.round((minYear + maxYear) / 2), maxYear];
  const parts = [
    `<svg viewBox="0 0 ${w} ${h}" class="cdf" role="img">`,
    `<path d="${path}" class="cdf-line"/>`,
  ];
  for (const v of [0, 0.25, 0.5, 0.75, 1]) {
    parts.push(
      `<line x1="${padL}" y1="${y(v)}" x2="${w - 10}" y2="${y(v)}" class="grid"/>`,
      `<text x="${padL - 6}" y="${y(v) + 4}" text-anchor="end" class="tick">${v}</text>`
    );
  }
  for (const year of gridYears) {
    parts.push(`<text x="${x(year)}" y="${h - 6}" text-anchor="middle" class="tick">${year}</text>`);
  }
  if (neverMass !== null) {
    parts.push(
      `<text x="${w - 12}" y="16" text-anchor="end" class="tick" title="${neverMass}">never: ${neverMass.toFixed(3)}</text>`
    );
  }
  parts.push("</svg>");
  return parts.join("");
}

export function tornadoSvg(rows: TornadoRow[]): string {
  const h = rows.length * ROW_H + 10;
  const w = 620;
  const mid = 320;
  const scale = 230;
  const parts = [`<svg viewBox="0 0 ${w} ${h}" class="tornado" role="img">`];
  parts.push(`<line x1="${mid}" y1="0" x2="${mid}" y2="${h}" class="axis"/>`);
  rows.forEach((row, i) => {
    const y = i * ROW_H + 5;
    const width = Math.abs(row.delta.value) * scale;
    const x = row.delta.value < 0 ? mid - width : mid;
    parts.push(
      `<text x="${mid - scale - 8}" y="${y + 13}" text-anchor="end" class="label">${escapeHtml(shortId(row.crux))}</text>`,
      `<rect x="${x.toFixed(2)}" y="${y}" width="${width.toFixed(2)}" height="16" class="${row.delta.value < 0 ? "bar-neg" : "bar-pos"}"><title>${row.delta.full}</title></rect>`,
      `<text x="${mid + scale + 6}" y="${y + 13}" class="value" title="${row.delta.full}">${row.delta.display}</text>`
    );
  });
  parts.push("</svg>");
  return parts.join("");
}

export function shortId(id: string): string {
  const dot = id.indexOf(".");
  return dot >= 0 ? id.slice(dot + 1) : id;
}
