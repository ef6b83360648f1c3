/**
 * DOM wiring for the explorer. One run in flight at a time: controls are
 * disabled while a request is out, and responses are matched to the run
 * counter that issued them so a stale reply can never overwrite a newer one.
 */

import { ApiClient, ApiError, HttpTransport } from "./api";
import { decodePermalink, encodePermalink } from "./permalink";
import {
  acceptRun,
  applyPreset,
  buildRunRequest,
  initialState,
  outputRows,
  setOverride,
  tornadoRows,
  withStructure,
  type SessionState,
} from "./state";
import {
  renderCruxPanel,
  renderOutputs,
  renderPresetBar,
  renderTimeline,
  renderTornado,
  renderWarnings,
  targetOptions,
} from "./render";
import type { OverrideValue } from "./types";

const client = new ApiClient(new HttpTransport(""));
let state: SessionState = initialState();

const el = (id: string) => document.getElementById(id)!;

function redraw(): void {
  el("presets").innerHTML = renderPresetBar(state);
  el("cruxes").innerHTML = renderCruxPanel(state);
  el("warnings").innerHTML = renderWarnings(state.warnings);
  if (state.lastRun) {
    el("outputs").innerHTML = renderOutputs(outputRows(state.lastRun), state.lastRun.config.seed);
    el("timeline").innerHTML = renderTimeline(state);
  }
  if (state.lastSensitivity) {
    el("tornado").innerHTML = renderTornado(tornadoRows(state.lastSensitivity));
  }
  (el("samples") as HTMLInputElement).value = String(state.samples);
  (el("seed") as HTMLInputElement).value = String(state.seed);
  const busy = state.inFlight;
  document.querySelectorAll("button, input, select").forEach((node) => {
    (node as HTMLButtonElement).disabled = busy;
  });
  window.location.hash = encodePermalink({
    overrides: state.overrides,
    seed: state.seed,
    samples: state.samples,
    preset: state.preset,
  });
}

function setBanner(text: string | null): void {
  const banner = el("banner");
  banner.textContent = text ?? "";
  banner.classList.toggle("visible", text !== null);
}

async function runNow(): Promise<void> {
  if (!state.structure || state.inFlight) return;
  state = { ...state, inFlight: true, runCounter: state.runCounter + 1 };
  const counter = state.runCounter;
  redraw();
  setBanner(null);
  try {
    const response = await client.run(buildRunRequest(state));
    state = acceptRun({ ...state, inFlight: false }, counter, response);
  } catch (err) {
    state = { ...state, inFlight: false };
    setBanner(err instanceof ApiError ? err.message : `connection failed - retry (${err})`);
  }
  redraw();
}

async function runSensitivity(): Promise<void> {
  if (!state.structure || state.inFlight) return;
  const target = (el("target") as HTMLSelectElement).value;
  state = { ...state, inFlight: true };
  redraw();
  try {
    const response = await client.sensitivity(target, state.samples, state.seed, state.overrides, null);
    state = { ...state, lastSensitivity: response, inFlight: false };
  } catch (err) {
    state = { ...state, inFlight: false };
    setBanner(err instanceof ApiError ? err.message : `connection failed - retry (${err})`);
  }
  redraw();
}

function wireEvents(): void {
  el("cruxes").addEventListener("click", (event) => {
    const button = (event.target as HTMLElement).closest("button.tri") as HTMLButtonElement | null;
    if (!button) return;
    const raw = button.dataset.value ?? "";
    const value: OverrideValue | null = raw === "" ? null : JSON.parse(decodeURIComponent(raw));
    state = setOverride(state, button.dataset.node!, value);
    redraw();
  });
  el("presets").addEventListener("click", (event) => {
    const button = (event.target as HTMLElement).closest("button.preset") as HTMLButtonElement | null;
    if (!button) return;
    state = applyPreset(state, button.dataset.preset || null);
    redraw();
  });
  el("run").addEventListener("click", () => void runNow());
  el("sensitivity").addEventListener("click", () => void runSensitivity());
  el("samples").addEventListener("change", (e) => {
    state = { ...state, samples: Math.max(1, Number((e.target as HTMLInputElement).value) || 1) };
  });
  el("seed").addEventListener("change", (e) => {
    state = { ...state, seed: Math.trunc(Number((e.target as HTMLInputElement).value) || 0) };
  });
}

async function boot(): Promise<void> {
  wireEvents();
  try {
    const structure = await client.fetchModel();
    state = withStructure(state, structure);
    el("title").textContent = structure.title;
    el("target").innerHTML = targetOptions(structure);
    const decoded = decodePermalink(window.location.hash, structure);
    if (decoded) {
      state = {
        ...state,
        overrides: decoded.payload.overrides,
        seed: decoded.payload.seed,
        samples: decoded.payload.samples,
        preset: decoded.payload.preset,
        warnings:
          decoded.unknownIds.length > 0
            ? [`permalink referenced unknown nodes (ignored): ${decoded.unknownIds.join(", ")}`]
            : [],
      };
    }
    redraw();
    await runNow();
  } catch (err) {
    setBanner(`cannot reach the engine API - retry (${err})`);
  }
}

void boot();
