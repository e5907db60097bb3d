/**
 * View state and navigation.
 *
 * All state round-trips through the service: the navigation stack holds
 * the queries themselves and replays them over HTTP, so back/forward
 * reproduce exactly what the engine generates for the current session
 * models. One query is in flight at a time.
 */

import { Client } from "./api.js";
import { QueryRequest, ServiceResponse } from "./model.js";

export interface ViewState {
  sessionId: string;
  expertise: string;
  task: string;
  current: ServiceResponse | null;
  currentQuery: QueryRequest | null;
}

export type Listener = (controller: Controller) => void;

export class Controller {
  state: ViewState;
  private stack: QueryRequest[] = [];
  private position = -1;
  private pending = false;
  private listeners: Listener[] = [];
  lastError: string | null = null;

  constructor(
    private readonly client: Client,
    sessionId: string,
    expertise: string,
    task: string,
  ) {
    this.state = { sessionId, expertise, task, current: null, currentQuery: null };
  }

  static async start(client: Client, expertise: string, task: string): Promise<Controller> {
    const sessionId = await client.createSession(expertise, task);
    return new Controller(client, sessionId, expertise, task);
  }

  onChange(listener: Listener): void {
    this.listeners.push(listener);
  }

  private notify(): void {
    for (const listener of this.listeners) listener(this);
  }

  get busy(): boolean {
    return this.pending;
  }

  get canGoBack(): boolean {
    return this.position > 0;
  }

  get canGoForward(): boolean {
    return this.position >= 0 && this.position < this.stack.length - 1;
  }

  /** Issue a query and push it onto the navigation stack. */
  async issue(query: QueryRequest): Promise<void> {
    await this.run(query, () => {
      this.stack = this.stack.slice(0, this.position + 1);
      this.stack.push(query);
      this.position = this.stack.length - 1;
    });
  }

  async back(): Promise<void> {
    if (!this.canGoBack) return;
    const query = this.stack[this.position - 1];
    await this.run(query, () => {
      this.position -= 1;
    });
  }

  async forward(): Promise<void> {
    if (!this.canGoForward) return;
    const query = this.stack[this.position + 1];
    await this.run(query, () => {
      this.position += 1;
    });
  }

  /**
   * Switch models, then re-issue the current query so the visible text
   * reflects the new context. On failure the prior view is retained.
   */
  async applyModelChange(change: { expertise?: string; task?: string }): Promise<void> {
    if (this.pending) return;
    this.pending = true;
    this.lastError = null;
    this.notify();
    try {
      await this.client.changeModel(this.state.sessionId, change);
      if (change.expertise) this.state.expertise = change.expertise;
      if (change.task) this.state.task = change.task;
      const query = this.state.currentQuery;
      if (query) {
        this.state.current = await this.client.query(this.state.sessionId, query);
      }
    } catch (err) {
      this.lastError = err instanceof Error ? err.message : String(err);
    } finally {
      this.pending = false;
      this.notify();
    }
  }

  private async run(query: QueryRequest, onSuccess: () => void): Promise<void> {
    if (this.pending) return;
    this.pending = true;
    this.lastError = null;
    this.notify();
    try {
      const response = await this.client.query(this.state.sessionId, query);
      onSuccess();
      this.state.current = response;
      this.state.currentQuery = query;
    } catch (err) {
      this.lastError = err instanceof Error ? err.message : String(err);
    } finally {
      this.pending = false;
      this.notify();
    }
  }
}
