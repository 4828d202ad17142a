/**
 * Pure rendering: ReviewInfo + ResolvedView -> a plain node tree.
 *
 * Keeping this DOM-free lets tests assert on exactly what the user sees
 * (fragment text, tooltip text, highlight flag) without a browser. The
 * thin adapter in dom.ts turns the tree into real elements.
 */

import type { BlockJson, ResolvedFragment, ResolvedView, ReviewInfo } from "./api.js";

export interface VNode {
  tag: string;
  attrs: Record<string, string>;
  children: Array<VNode | string>;
}

export function el(tag: string, attrs: Record<string, string> = {}, children: Array<VNode | string> = []): VNode {
  return { tag, attrs, children };
}

export function fragmentSpan(fragment: ResolvedFragment): VNode {
  const classes = ["llr-fragment", `llr-${fragment.kind}`];
  if (fragment.highlighted) {
    classes.push("llr-highlight");
  }
  const attrs: Record<string, string> = {
    class: classes.join(" "),
    "data-fragment": fragment.id,
  };
  if (fragment.tooltip_value !== null) {
    attrs["data-tooltip"] = fragment.tooltip_value;
  }
  return el("span", attrs, [fragment.display_value]);
}

/** Splice a block's fragments into its text, replacing each anchored span
 * with the fragment's display value. */
export function renderBlock(block: BlockJson, fragments: ResolvedFragment[]): VNode {
  const own = fragments
    .filter((f) => f.block === block.id)
    .sort((a, b) => a.start - b.start);
  const children: Array<VNode | string> = [];
  let cursor = 0;
  for (const fragment of own) {
    if (fragment.start > cursor) {
      children.push(block.text.slice(cursor, fragment.start));
    }
    children.push(fragmentSpan(fragment));
    cursor = fragment.end;
  }
  if (cursor < block.text.length) {
    children.push(block.text.slice(cursor));
  }
  return el("p", { class: "llr-block", "data-block": block.id }, children);
}

export function renderDocument(info: ReviewInfo, view: ResolvedView): VNode {
  const children: Array<VNode | string> = [el("h1", {}, [info.title])];
  for (const section of info.sections) {
    if (section.heading) {
      children.push(el("h2", {}, [section.heading]));
    }
    for (const block of section.blocks) {
      children.push(renderBlock(block, view.fragments));
    }
  }
  return el("article", { class: "llr-document", "data-mode": view.mode }, children);
}

/** Collect (fragment id -> rendered display/tooltip) from a tree, for
 * parity checks and debugging. */
export function renderedFragments(root: VNode): Map<string, { display: string; tooltip: string | null }> {
  const out = new Map<string, { display: string; tooltip: string | null }>();
  const walk = (node: VNode | string): void => {
    if (typeof node === "string") {
      return;
    }
    const id = node.attrs["data-fragment"];
    if (id !== undefined) {
      const display = node.children.map((c) => (typeof c === "string" ? c : "")).join("");
      out.set(id, { display, tooltip: node.attrs["data-tooltip"] ?? null });
    }
    node.children.forEach(walk);
  };
  walk(root);
  return out;
}
