import { readFileSync } from "node:fs";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import type { ResolvedView, ReviewInfo } from "../src/api.js";
import { renderBlock, renderDocument, renderedFragments } from "../src/render.js";

const GOLDEN = join(__dirname, "..", "..", "fixtures", "golden", "e2e");

function golden<T>(name: string): T {
  return JSON.parse(readFileSync(join(GOLDEN, `${name}.json`), "utf-8")) as T;
}

const info = golden<ReviewInfo>("review");
const MODES = ["original", "tooltip-l", "tooltip-o", "latest"] as const;

describe("document rendering parity with the API", () => {
  it.each(MODES)("mode %s renders display/tooltip strings verbatim", (mode) => {
    const view = golden<ResolvedView>(`view-${mode}`);
    const tree = renderDocument(info, view);
    const rendered = renderedFragments(tree);
    expect(rendered.size).toBe(view.fragments.length);
    for (const fragment of view.fragments) {
      const got = rendered.get(fragment.id);
      expect(got).toBeDefined();
      expect(got!.display).toBe(fragment.display_value);
      expect(got!.tooltip).toBe(fragment.tooltip_value);
    }
  });

  it("highlights exactly the fragments the API marks", () => {
    for (const mode of MODES) {
      const view = golden<ResolvedView>(`view-${mode}`);
      const tree = renderDocument(info, view);
      const spans: Array<{ id: string; highlighted: boolean }> = [];
      const walk = (node: unknown): void => {
        if (typeof node !== "object" || node === null) return;
        const vnode = node as { attrs: Record<string, string>; children: unknown[] };
        const id = vnode.attrs?.["data-fragment"];
        if (id) {
          spans.push({ id, highlighted: (vnode.attrs["class"] ?? "").includes("llr-highlight") });
        }
        (vnode.children ?? []).forEach(walk);
      };
      walk(tree);
      for (const span of spans) {
        const fragment = view.fragments.find((f) => f.id === span.id)!;
        expect(span.highlighted).toBe(fragment.highlighted);
      }
    }
  });

  it("fresh document never highlights in original mode", () => {
    const view = golden<ResolvedView>("view-original");
    expect(view.fragments.every((f) => !f.highlighted)).toBe(true);
    const rendered = renderDocument(info, view);
    const text = JSON.stringify(rendered);
    expect(text).not.toContain("llr-highlight");
  });

  it("the review metadata offers exactly the four modes", () => {
    expect(info.modes).toEqual([...MODES]);
  });

  it("splices a fragment's display value into the surrounding block text", () => {
    const block = { id: "b9", text: "Before 44.44% after." };
    const fragment = {
      id: "f",
      kind: "metric",
      block: "b9",
      start: 7,
      end: 13,
      display_value: "50.00%",
      tooltip_value: "44.44%",
      highlighted: true,
    };
    const node = renderBlock(block, [fragment]);
    const flat = node.children.map((c) => (typeof c === "string" ? c : `[${c.children.join("")}]`)).join("");
    expect(flat).toBe("Before [50.00%] after.");
  });

  it("renders plain text when the mode carries no tooltip", () => {
    const view = golden<ResolvedView>("view-latest");
    const tree = renderDocument(info, view);
    expect(JSON.stringify(tree)).not.toContain("data-tooltip");
  });
});
