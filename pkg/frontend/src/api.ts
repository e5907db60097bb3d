/** Thin typed client over the service's documented HTTP surface. */

import type { ComponentNode, QueryRequest, ServiceResponse } from "./model.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<globalThis.Response>;

export class ApiError extends Error {
  readonly kind: string;
  readonly status: number;

  constructor(status: number, kind: string, message: string) {
    super(message);
    this.kind = kind;
    this.status = status;
  }
}

async function parseError(response: globalThis.Response): Promise<ApiError> {
  let kind = "http-error";
  let message = `${response.status} ${response.statusText}`;
  try {
    const payload = await response.json();
    if (payload && payload.error) {
      kind = payload.error.kind ?? kind;
      message = payload.error.message ?? message;
    }
  } catch {
    // non-JSON error body; keep the status line
  }
  return new ApiError(response.status, kind, message);
}

export class Client {
  constructor(
    readonly base: string,
    private readonly fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await this.fetchFn(this.base + path, {
      method,
      headers: body === undefined ? {} : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!response.ok) throw await parseError(response);
    if (response.status === 204) return undefined as T;
    return (await response.json()) as T;
  }

  async createSession(expertise: string, task: string): Promise<string> {
    const out = await this.request<{ session_id: string }>("POST", "/sessions", {
      expertise,
      task,
    });
    return out.session_id;
  }

  changeModel(sessionId: string, change: { expertise?: string; task?: string }): Promise<void> {
    return this.request("PUT", `/sessions/${sessionId}/model`, change);
  }

  query(sessionId: string, query: QueryRequest): Promise<ServiceResponse> {
    return this.request("POST", `/sessions/${sessionId}/query`, query);
  }

  components(): Promise<{ roots: ComponentNode[] }> {
    return this.request("GET", "/kb/components");
  }

  questions(): Promise<{ questions: string[] }> {
    return this.request("GET", "/kb/questions");
  }

  models(): Promise<{ expertise: string[]; tasks: string[] }> {
    return this.request("GET", "/kb/models");
  }
}
