/**
 * Display helpers. Formatting is presentational only; the verbatim server
 * value always travels alongside in a data attribute.
 */

export function pct(value: number): string {
  return `${(value * 100).toFixed(2)}%`;
}

export function fixed(value: number, digits = 4): string {
  return value.toFixed(digits);
}

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  if (text !== undefined) {
    node.textContent = text;
  }
  return node;
}
