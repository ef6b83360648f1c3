import { describe, expect, it } from "vitest";

import { decodePermalink, encodePermalink } from "../src/permalink";
import type { ModelStructure } from "../src/types";
import { loadFixture } from "./fixtures";

const structure = loadFixture<ModelStructure>("model.json");

describe("permalink round trip", () => {
  it("encode then decode reproduces overrides and run parameters exactly", () => {
    const payload = {
      overrides: {
        "takeoff.discontinuity": true,
        "takeoff.takeoff_speed_class": "weeks_to_months",
        "timelines.hard_paths": false,
      },
      seed: 424242,
      samples: 50_000,
      preset: null,
    };
    const decoded = decodePermalink(encodePermalink(payload), structure);
    expect(decoded).not.toBeNull();
    expect(decoded!.payload).toEqual(payload);
    expect(decoded!.unknownIds).toEqual([]);
  });

  it("preserves preset names and empty override sets", () => {
    const payload = { overrides: {}, seed: 7, samples: 10_000, preset: "Hanson" };
    const decoded = decodePermalink(encodePermalink(payload), structure)!;
    expect(decoded.payload).toEqual(payload);
  });

  it("unknown node ids are dropped and reported", () => {
    const fragment = encodePermalink({
      overrides: { "ghost.node": true, "takeoff.discontinuity": false },
      seed: 1,
      samples: 100,
      preset: null,
    });
    const decoded = decodePermalink(fragment, structure)!;
    expect(decoded.unknownIds).toEqual(["ghost.node"]);
    expect(decoded.payload.overrides).toEqual({ "takeoff.discontinuity": false });
  });

  it("rejects malformed fragments instead of guessing", () => {
    expect(decodePermalink("#v=2&s=1&n=10", structure)).toBeNull();
    expect(decodePermalink("#v=1&s=abc&n=10", structure)).toBeNull();
    expect(decodePermalink("", structure)).toBeNull();
  });
});
