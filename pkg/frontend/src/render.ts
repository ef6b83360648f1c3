/**
 * HTML builders for the panels. Pure string functions so the contract tests
 * can assert that rendered markup carries the API's numbers verbatim.
 */

import { escapeHtml } from "./format";
import type { ModelNode, ModelStructure, OverrideValue } from "./types";
import { cdfLineSvg, outputBarsSvg, shortId, tornadoSvg } from "./charts";
import type { OutputRow, SessionState, TornadoRow } from "./state";
import { controlValue, cruxesByModule, timelinePoints } from "./state";

function cruxControl(node: ModelNode, forced: OverrideValue | null): string {
  const labels: [string, OverrideValue | null][] =
    node.value_kind.type === "category"
      ? [["default", null], ...(node.value_kind.labels ?? []).map((l): [string, OverrideValue] => [l, l])]
      : [["default", null], ["true", true], ["false", false]];
  const buttons = labels
    .map(([text, value]) => {
      const active =
        (value === null && forced === null) || (value !== null && forced === value);
      const encoded = value === null ? "" : encodeURIComponent(JSON.stringify(value));
      return `<button class="tri${active ? " active" : ""}" data-node="${escapeHtml(node.id)}" data-value="${encoded}">${escapeHtml(text)}</button>`;
    })
    .join("");
  const badge = node.placeholder ? `<span class="badge" title="placeholder elicitation">placeholder</span>` : "";
  return `<div class="crux" title="${escapeHtml(node.doc)}"><span class="crux-name">${escapeHtml(shortId(node.id))}</span>${badge}<span class="tri-group">${buttons}</span></div>`;
}

export function renderCruxPanel(state: SessionState): string {
  const structure = state.structure;
  if (!structure) return "<p>loading model…</p>";
  const groups = cruxesByModule(structure);
  const sections: string[] = [];
  for (const [module, nodes] of groups) {
    const controls = nodes.map((n) => cruxControl(n, controlValue(state, n.id))).join("");
    sections.push(`<details open><summary>${escapeHtml(module)}</summary>${controls}</details>`);
  }
  return sections.join("");
}

export function renderPresetBar(state: SessionState): string {
  const names = Object.keys(state.structure?.presets ?? {});
  const buttons = names
    .map(
      (name) =>
        `<button class="preset${state.preset === name ? " active" : ""}" data-preset="${escapeHtml(name)}">${escapeHtml(name)}</button>`
    )
    .join("");
  return `${buttons}<button class="preset${state.preset === null && Object.keys(state.overrides).length === 0 ? " active" : ""}" data-preset="">clear</button>`;
}

export function renderOutputs(rows: OutputRow[], seed: number): string {
  const bars = outputBarsSvg(rows);
  const others = rows
    .filter((r) => r.probability === null)
    .map((r) => {
      if (r.categories) {
        const cells = r.categories
          .map((c) => `<span class="cat" title="${c.probability.full}">${escapeHtml(c.label)} ${c.probability.display}</span>`)
          .join(" ");
        return `<div class="row">${escapeHtml(shortId(r.node))}: ${cells}</div>`;
      }
      return `<div class="row">${escapeHtml(shortId(r.node))}: ${escapeHtml(r.text ?? "")}</div>`;
    })
    .join("");
  return `<div class="seed-tag">seed ${seed}</div>${bars}${others}`;
}

export function renderTimeline(state: SessionState): string {
  if (!state.lastRun) return "";
  const points = timelinePoints(state.lastRun, "timelines.hlmi_cdf");
  const timeline = state.lastRun.timelines.find((t) => t.node === "timelines.hlmi_cdf");
  return cdfLineSvg(points, timeline ? timeline.never_mass : null);
}

export function renderTornado(rows: TornadoRow[]): string {
  if (rows.length === 0) return "<p>run a sensitivity sweep to populate the tornado.</p>";
  return tornadoSvg(rows);
}

export function renderWarnings(warnings: string[]): string {
  if (warnings.length === 0) return "";
  return warnings.map((w) => `<div class="warning">${escapeHtml(w)}</div>`).join("");
}

export function targetOptions(structure: ModelStructure): string {
  return structure.outputs
    .map((id) => `<option value="${escapeHtml(id)}">${escapeHtml(id)}</option>`)
    .join("");
}
