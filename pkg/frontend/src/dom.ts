/** Thin adapter: node tree -> real DOM. */

import type { VNode } from "./render.js";

export function toElement(node: VNode | string): Node {
  if (typeof node === "string") {
    return document.createTextNode(node);
  }
  const element = document.createElement(node.tag);
  for (const [name, value] of Object.entries(node.attrs)) {
    element.setAttribute(name, value);
  }
  for (const child of node.children) {
    element.appendChild(toElement(child));
  }
  return element;
}

export function replaceChildren(container: Element, node: VNode): void {
  container.replaceChildren(toElement(node));
}
