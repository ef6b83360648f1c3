/**
 * Payload types mirroring the engine's HTTP API. The UI performs no
 * probability math: everything rendered comes verbatim from these bodies.
 */

export type OverrideValue = boolean | number | string;

export interface ValueKind {
  type: "bool" | "real" | "category" | "year" | "series";
  unit?: string;
  labels?: string[];
  start?: number;
  end?: number;
}

export interface ModelNode {
  id: string;
  module: string;
  kind: "chance" | "formula" | "classifier" | "alias" | "unknown";
  value_kind: ValueKind;
  parents: string[];
  doc: string;
  tags: string[];
  paper_ref: string;
  placeholder: boolean;
  target?: string;
}

export interface ModuleDecl {
  id: string;
  parent: string | null;
  doc: string;
}

export interface ModelStructure {
  title: string;
  horizon: [number, number];
  modules: ModuleDecl[];
  nodes: ModelNode[];
  outputs: string[];
  cruxes: string[];
  presets: Record<string, Record<string, OverrideValue>>;
}

export interface OutputSummary {
  node: string;
  kind: string;
  n: number;
  probability_true?: number;
  std_error?: number;
  category_probs?: Record<string, number>;
  series_means?: number[];
  mean?: number | string | null;
  p_never?: number;
  quantiles?: Record<string, number | string>;
}

export interface TimelineSummary {
  node: string;
  start: number;
  end: number;
  cdf: number[];
  never_mass: number;
}

export interface RunResponse {
  engine_version: string;
  model: string;
  config: {
    samples: number;
    seed: number;
    preset: string | null;
    overrides: Record<string, OverrideValue>;
  };
  outputs: OutputSummary[];
  timelines: TimelineSummary[];
}

export interface SensitivityRow {
  crux: string;
  value_a: OverrideValue;
  value_b: OverrideValue;
  p_a: number;
  p_b: number;
  delta: number;
}

export interface SensitivityResponse {
  target: string;
  samples: number;
  seed: number;
  rows: SensitivityRow[];
}

export interface RunRequestBody {
  overrides: Record<string, OverrideValue>;
  preset: string | null;
  samples: number;
  seed: number;
  targets?: string[];
}
