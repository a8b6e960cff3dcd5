/**
 * Typed fetch client for the sovplan service. Solve requests accept an
 * AbortSignal so the scheduler can cancel superseded ones.
 */

import type {
  DashboardReport,
  ModelDocument,
  PlannerSolution,
  ScenarioDocument,
  SolveOptionsBody,
  WeightResult,
} from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiRequestError extends Error {
  constructor(
    public readonly status: number,
    public readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown, signal?: AbortSignal): Promise<T> {
    const response = await this.fetchFn(this.baseUrl + path, {
      method,
      headers: body === undefined ? undefined : { "content-type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
      signal,
    });
    if (!response.ok) {
      let code = "internal";
      let message = `${method} ${path} failed with ${response.status}`;
      try {
        const payload = await response.json();
        code = payload.code ?? code;
        message = payload.message ?? message;
      } catch {
        // non-JSON error body; keep the defaults
      }
      throw new ApiRequestError(response.status, code, message);
    }
    return (await response.json()) as T;
  }

  listScenarios(): Promise<Array<{ id: string; name: string; version: number }>> {
    return this.request("GET", "/scenarios");
  }

  getScenario(id: string): Promise<ScenarioDocument> {
    return this.request("GET", `/scenarios/${id}`);
  }

  putScenario(id: string, document: ScenarioDocument): Promise<ScenarioDocument> {
    return this.request("PUT", `/scenarios/${id}`, document);
  }

  solve(model: ModelDocument, options?: SolveOptionsBody, signal?: AbortSignal): Promise<PlannerSolution> {
    return this.request("POST", "/solve", { model, options }, signal);
  }

  gate(model: ModelDocument, mu: number): Promise<unknown> {
    return this.request("POST", "/gate", { model, mu });
  }

  dashboard(
    scenarioId: string,
    observations: Array<{ metricId: string; value: number; period: string }>,
    period: string,
  ): Promise<DashboardReport> {
    return this.request("POST", `/scenarios/${scenarioId}/dashboard`, { observations, period });
  }

  ahpWeights(matrix: number[][]): Promise<WeightResult> {
    return this.request("POST", "/weights/ahp", { matrix });
  }
}
