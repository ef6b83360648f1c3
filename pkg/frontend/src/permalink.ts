/**
 * Shareable links: the URL fragment carries the override set, seed, and
 * sample count. Decoding against a loaded structure drops overrides whose
 * ids are unknown, reporting them so the UI can show a visible warning.
 */

import type { ModelStructure, OverrideValue } from "./types";

export interface PermalinkPayload {
  overrides: Record<string, OverrideValue>;
  seed: number;
  samples: number;
  preset: string | null;
}

export function encodePermalink(payload: PermalinkPayload): string {
  const parts = [`v=1`, `s=${payload.seed}`, `n=${payload.samples}`];
  if (payload.preset) parts.push(`p=${encodeURIComponent(payload.preset)}`);
  const keys = Object.keys(payload.overrides);
  if (keys.length > 0) {
    parts.push(`o=${encodeURIComponent(JSON.stringify(payload.overrides))}`);
  }
  return "#" + parts.join("&");
}

export interface DecodedPermalink {
  payload: PermalinkPayload;
  unknownIds: string[];
}

export function decodePermalink(
  fragment: string,
  structure: ModelStructure | null
): DecodedPermalink | null {
  const raw = fragment.startsWith("#") ? fragment.slice(1) : fragment;
  if (!raw) return null;
  const params = new URLSearchParams(raw);
  if (params.get("v") !== "1") return null;
  const seed = Number(params.get("s") ?? "7");
  const samples = Number(params.get("n") ?? "10000");
  if (!Number.isFinite(seed) || !Number.isFinite(samples)) return null;
  let overrides: Record<string, OverrideValue> = {};
  const encoded = params.get("o");
  if (encoded) {
    try {
      overrides = JSON.parse(decodeURIComponent(encoded));
    } catch {
      return null;
    }
  }
  const unknownIds: string[] = [];
  if (structure) {
    const known = new Set(structure.nodes.map((n) => n.id));
    for (const id of Object.keys(overrides)) {
      if (!known.has(id)) {
        unknownIds.push(id);
        delete overrides[id];
      }
    }
  }
  return {
    payload: {
      overrides,
      seed: Math.trunc(seed),
      samples: Math.trunc(samples),
      preset: params.get("p"),
    },
    unknownIds,
  };
}
