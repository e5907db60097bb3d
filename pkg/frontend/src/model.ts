/** Wire types for the documentation service. */

export type SpanKind = "plain" | "entity" | "action";

export interface Span {
  text: string;
  kind: SpanKind;
  target?: string;
  action?: string;
  bullet_index?: number;
}

export interface Followup {
  question: string;
  component: string;
  label: string;
}

export interface ServiceResponse {
  title: Span[];
  body: Span[];
  followups: Followup[];
  elapsed_ms: number;
}

export interface QueryRequest {
  question: string;
  component: string;
  action?: string;
}

export interface ComponentNode {
  id: string;
  name: string;
  children: ComponentNode[];
}

export interface ServiceError {
  error: { kind: string; message: string; [key: string]: unknown };
}

export const QUESTION_LABELS: Record<string, string> = {
  WhatIsIt: "What is it?",
  WhereIsIt: "Where is it?",
  WhatAreItsParts: "What are its parts?",
  WhatAreItsSpecs: "What are its specs?",
  WhatIsItsPurpose: "What is its purpose?",
  WhatDoesItConnectTo: "What does it connect to?",
  HowDoIPerform: "How do I use it?",
};

export function spanText(spans: Span[]): string {
  return spans.map((s) => s.text).join("");
}

/** A span is renderable if it has text and its links are well formed. */
export function spanProblem(span: Span): string | null {
  if (typeof span.text !== "string") return "span has no text";
  if (span.kind === "entity" && !span.target) return "entity span lacks target";
  if (span.kind === "action" && (!span.target || !span.action))
    return "action span lacks target or action";
  if (span.kind !== "plain" && span.kind !== "entity" && span.kind !== "action")
    return `unknown span kind ${String(span.kind)}`;
  return null;
}
