/**
 * Session state and the debounced solve scheduler.
 *
 * Edits land in a draft copy of the scenario's model; the stored
 * scenario only changes on an explicit save. Each edit schedules a solve
 * after a debounce window, and a later edit supersedes any in-flight
 * request: its response is dropped (and the request aborted), so exactly
 * one final rendered state matches the last edit.
 */

import { ApiClient } from "./api.js";
import type { DashboardReport, ModelDocument, PlannerSolution, ScenarioDocument } from "./types.js";

export interface SessionState {
  activeScenarioId: string | null;
  draftModel: ModelDocument | null;
  lastSolution: PlannerSolution | null;
  lastDashboard: DashboardReport | null;
  pendingRequest: boolean;
  lastError: string | null;
  /** Control id of the edit that triggered the failing request, if any. */
  lastErrorControl: string | null;
}

export const emptySession = (): SessionState => ({
  activeScenarioId: null,
  draftModel: null,
  lastSolution: null,
  lastDashboard: null,
  pendingRequest: false,
  lastError: null,
  lastErrorControl: null,
});

export const cloneModel = (model: ModelDocument): ModelDocument =>
  JSON.parse(JSON.stringify(model)) as ModelDocument;

export const modelFromScenario = (doc: ScenarioDocument): ModelDocument =>
  cloneModel({ pillars: doc.pillars, theta: doc.theta, openness: doc.openness, budget: doc.budget });

export interface SchedulerOptions {
  debounceMs?: number;
  randomSeed?: number;
}

export class SolveScheduler {
  private readonly debounceMs: number;
  private readonly randomSeed: number;
  private timer: ReturnType<typeof setTimeout> | null = null;
  private latestIssued = 0;
  private controller: AbortController | null = null;

  constructor(
    private readonly client: ApiClient,
    private readonly session: SessionState,
    private readonly onChange: (state: SessionState) => void,
    options: SchedulerOptions = {},
  ) {
    this.debounceMs = options.debounceMs ?? 250;
    this.randomSeed = options.randomSeed ?? 0;
  }

  /** Record a draft edit and schedule a solve after the debounce window. */
  edit(model: ModelDocument, sourceControl?: string): void {
    this.session.draftModel = model;
    if (this.timer !== null) {
      clearTimeout(this.timer);
    }
    this.timer = setTimeout(() => {
      this.timer = null;
      void this.fire(model, sourceControl);
    }, this.debounceMs);
  }

  /** Solve immediately, bypassing the debounce (initial load, tests). */
  solveNow(model: ModelDocument): Promise<void> {
    this.session.draftModel = model;
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    return this.fire(model);
  }

  private async fire(model: ModelDocument, sourceControl?: string): Promise<void> {
    const seq = ++this.latestIssued;
    this.controller?.abort();
    const controller = typeof AbortController === "undefined" ? null : new AbortController();
    this.controller = controller;
    this.session.pendingRequest = true;
    this.onChange(this.session);
    try {
      const solution = await this.client.solve(
        model,
        { randomSeed: this.randomSeed },
        controller?.signal,
      );
      if (seq !== this.latestIssued) {
        return; // superseded by a newer edit
      }
      this.session.lastSolution = solution;
      this.session.lastError = null;
      this.session.lastErrorControl = null;
    } catch (error) {
      if (seq !== this.latestIssued) {
        return; // abort or failure of a superseded request
      }
      this.session.lastError = error instanceof Error ? error.message : String(error);
      this.session.lastErrorControl = sourceControl ?? null;
    } finally {
      if (seq === this.latestIssued) {
        this.session.pendingRequest = false;
        this.onChange(this.session);
      }
    }
  }
}

/**
 * Write the draft back to the store under compare-and-set, then reload
 * the stored document so controls reflect exactly what was persisted.
 */
export async function saveDraft(
  client: ApiClient,
  session: SessionState,
  stored: ScenarioDocument,
): Promise<ScenarioDocument> {
  if (!session.draftModel) {
    throw new Error("nothing to save: no draft edits");
  }
  const document: ScenarioDocument = {
    ...stored,
    pillars: session.draftModel.pillars,
    theta: session.draftModel.theta,
    openness: session.draftModel.openness,
    budget: session.draftModel.budget,
  };
  await client.putScenario(document.id, document);
  const reloaded = await client.getScenario(document.id);
  session.draftModel = modelFromScenario(reloaded);
  return reloaded;
}
