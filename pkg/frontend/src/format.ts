/**
 * Display formatting. Every formatted string is derived from the exact API
 * value, and the exact value always rides along (e.g. into title attributes)
 * so nothing is lost to rounding.
 */

export interface Shown {
  /** exact value from the API payload */
  value: number;
  /** short form for the widget */
  display: string;
  /** full-precision form for hover */
  full: string;
}

export function showProbability(value: number): Shown {
  return { value, display: value.toFixed(3), full: String(value) };
}

export function showStdError(value: number): Shown {
  return { value, display: "±" + value.toFixed(4), full: String(value) };
}

export function showDelta(value: number): Shown {
  const sign = value > 0 ? "+" : "";
  return { value, display: sign + value.toFixed(3), full: String(value) };
}

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}
