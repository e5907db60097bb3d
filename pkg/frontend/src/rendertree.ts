/**
 * Pure transformation from a service response to a render tree.
 *
 * The tree is plain data so tests can assert structure without a DOM;
 * dom.ts turns it into elements. Malformed spans become error chips
 * instead of breaking the rest of the response.
 */

import { Followup, ServiceResponse, Span, spanProblem } from "./model.js";

export type RenderNode =
  | { kind: "text"; text: string }
  | { kind: "entity-link"; text: string; target: string }
  | { kind: "action-link"; text: string; target: string; action: string }
  | { kind: "error-chip"; message: string }
  | { kind: "list"; items: RenderNode[][] };

export interface ResponseView {
  title: RenderNode[];
  body: RenderNode[];
  followups: Followup[];
}

function spanNode(span: Span): RenderNode {
  const problem = spanProblem(span);
  if (problem !== null) return { kind: "error-chip", message: problem };
  if (span.kind === "entity")
    return { kind: "entity-link", text: span.text, target: span.target! };
  if (span.kind === "action")
    return {
      kind: "action-link",
      text: span.text,
      target: span.target!,
      action: span.action!,
    };
  return { kind: "text", text: span.text };
}

/** Group spans into flowing nodes and bullet lists (by bullet_index). */
export function spansToNodes(spans: Span[]): RenderNode[] {
  const nodes: RenderNode[] = [];
  let list: RenderNode[][] | null = null;
  let currentBullet: number | null = null;
  for (const span of spans) {
    const bullet = span.bullet_index ?? null;
    if (bullet === null) {
      list = null;
      currentBullet = null;
      nodes.push(spanNode(span));
      continue;
    }
    if (list === null) {
      list = [];
      nodes.push({ kind: "list", items: list });
      currentBullet = null;
    }
    if (bullet !== currentBullet) {
      list.push([]);
      currentBullet = bullet;
    }
    list[list.length - 1].push(spanNode(span));
  }
  return nodes;
}

export function renderResponse(response: ServiceResponse): ResponseView {
  return {
    title: spansToNodes(response.title),
    body: spansToNodes(response.body),
    followups: Array.isArray(response.followups) ? response.followups : [],
  };
}

export function nodeText(nodes: RenderNode[]): string {
  return nodes
    .map((n) => {
      if (n.kind === "list")
        return n.items.map((item) => nodeText(item)).join("\n");
      if (n.kind === "error-chip") return `[${n.message}]`;
      return n.text;
    })
    .join("");
}

export function linksIn(nodes: RenderNode[]): RenderNode[] {
  const out: RenderNode[] = [];
  for (const n of nodes) {
    if (n.kind === "entity-link" || n.kind === "action-link") out.push(n);
    if (n.kind === "list") for (const item of n.items) out.push(...linksIn(item));
  }
  return out;
}
