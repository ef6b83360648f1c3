/**
 * Session state and the pure transitions behind the explorer.
 *
 * Crux controls are three-state: forced true, forced false, or "model
 * default" (sample from the elicited distribution). Only forced values
 * enter the override set sent to the API. Results always carry the seed
 * and run counter that produced them so stale responses can be dropped.
 */

import type {
  ModelNode,
  ModelStructure,
  OutputSummary,
  OverrideValue,
  RunRequestBody,
  RunResponse,
  SensitivityResponse,
} from "./types";
import { Shown, showDelta, showProbability, showStdError } from "./format";

export interface SessionState {
  structure: ModelStructure | null;
  overrides: Record<string, OverrideValue>;
  preset: string | null;
  samples: number;
  seed: number;
  lastRun: RunResponse | null;
  lastSensitivity: SensitivityResponse | null;
  runCounter: number;
  inFlight: boolean;
  warnings: string[];
}

export function initialState(): SessionState {
  return {
    structure: null,
    overrides: {},
    preset: null,
    samples: 10_000,
    seed: 7,
    lastRun: null,
    lastSensitivity: null,
    runCounter: 0,
    inFlight: false,
    warnings: [],
  };
}

export function withStructure(state: SessionState, structure: ModelStructure): SessionState {
  return { ...state, structure };
}

/** Force a crux value, or clear it back to "model default" with null. */
export function setOverride(
  state: SessionState,
  nodeId: string,
  value: OverrideValue | null
): SessionState {
  const overrides = { ...state.overrides };
  if (value === null) {
    delete overrides[nodeId];
  } else {
    overrides[nodeId] = value;
  }
  // hand-edited overrides break the pure preset association
  return { ...state, overrides, preset: null };
}

/** Replace the override set with a named preset's documented values. */
export function applyPreset(state: SessionState, name: string | null): SessionState {
  if (name === null) return { ...state, overrides: {}, preset: null };
  const presets = state.structure?.presets ?? {};
  const values = presets[name];
  if (!values) {
    return { ...state, warnings: [...state.warnings, `unknown preset ${name}`] };
  }
  return { ...state, overrides: { ...values }, preset: name };
}

/** The value a crux control should show: forced value or null for default. */
export function controlValue(state: SessionState, nodeId: string): OverrideValue | null {
  return Object.prototype.hasOwnProperty.call(state.overrides, nodeId)
    ? state.overrides[nodeId]
    : null;
}

export function buildRunRequest(state: SessionState, targets?: string[]): RunRequestBody {
  const body: RunRequestBody = {
    overrides: { ...state.overrides },
    preset: null, // overrides already contain the preset's values
    samples: state.samples,
    seed: state.seed,
  };
  if (targets) body.targets = targets;
  return body;
}

export function acceptRun(
  state: SessionState,
  counter: number,
  response: RunResponse
): SessionState {
  if (counter !== state.runCounter) return state; // stale response
  return { ...state, lastRun: response, inFlight: false };
}

export function cruxesByModule(structure: ModelStructure): Map<string, ModelNode[]> {
  const byId = new Map(structure.nodes.map((n) => [n.id, n]));
  const grouped = new Map<string, ModelNode[]>();
  for (const id of structure.cruxes) {
    const node = byId.get(id);
    if (!node) continue;
    const list = grouped.get(node.module) ?? [];
    list.push(node);
    grouped.set(node.module, list);
  }
  return grouped;
}

// --- view models ------------------------------------------------------------

export interface OutputRow {
  node: string;
  kind: string;
  probability: Shown | null;
  stdError: Shown | null;
  categories: { label: string; probability: Shown }[] | null;
  text: string | null; // year/real summaries shown as-is
}

export function outputRows(run: RunResponse): OutputRow[] {
  return run.outputs.map((entry) => outputRow(entry));
}

function outputRow(entry: OutputSummary): OutputRow {
  if (entry.probability_true !== undefined) {
    return {
      node: entry.node,
      kind: entry.kind,
      probability: showProbability(entry.probability_true),
      stdError: showStdError(entry.std_error ?? 0),
      categories: null,
      text: null,
    };
  }
  if (entry.category_probs) {
    const categories = Object.entries(entry.category_probs).map(([label, p]) => ({
      label,
      probability: showProbability(p),
    }));
    return { node: entry.node, kind: entry.kind, probability: null, stdError: null, categories, text: null };
  }
  const mean = entry.mean === null || entry.mean === undefined ? "n/a" : String(entry.mean);
  return { node: entry.node, kind: entry.kind, probability: null, stdError: null, categories: null, text: mean };
}

export interface CdfPoint {
  year: number;
  value: number;
}

export function timelinePoints(run: RunResponse, node?: string): CdfPoint[] {
  const timeline = node
    ? run.timelines.find((t) => t.node === node)
    : run.timelines[run.timelines.length - 1];
  if (!timeline) return [];
  return timeline.cdf.map((value, i) => ({ year: timeline.start + i, value }));
}

export interface TornadoRow {
  crux: string;
  valueA: OverrideValue;
  valueB: OverrideValue;
  pA: Shown;
  pB: Shown;
  delta: Shown;
}

export function tornadoRows(resp: SensitivityResponse): TornadoRow[] {
  return resp.rows.map((row) => ({
    crux: row.crux,
    valueA: row.value_a,
    valueB: row.value_b,
    pA: showProbability(row.p_a),
    pB: showProbability(row.p_b),
    delta: showDelta(row.delta),
  }));
}
