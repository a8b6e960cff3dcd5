/**
 * DOM glue: loads a scenario, wires the parameter controls to the solve
 * scheduler, and swaps rendered panels in as responses arrive.
 */

import { ApiClient } from "./api.js";
import {
  dashboardView,
  errorView,
  parameterPanel,
  solutionView,
} from "./render.js";
import {
  SolveScheduler,
  emptySession,
  modelFromScenario,
  saveDraft,
} from "./state.js";
import type { ModelDocument, PillarName, ScenarioDocument, WeightResult } from "./types.js";
import { PILLARS } from "./types.js";

const client = new ApiClient("");
const session = emptySession();
let stored: ScenarioDocument | null = null;
let lastWeights: WeightResult | null = null;

const $ = <T extends HTMLElement = HTMLElement>(selector: string): T | null =>
  document.querySelector<T>(selector);

const renderAll = (): void => {
  const panel = $("#parameters");
  const results = $("#results");
  if (!panel || !results) return;
  if (session.draftModel) {
    const inlineError =
      session.lastError && session.lastErrorControl
        ? { control: session.lastErrorControl, message: session.lastError }
        : null;
    panel.innerHTML = parameterPanel(session.draftModel, lastWeights, inlineError);
    wireControls();
  }
  const status = $("#status");
  if (status) {
    status.textContent = session.pendingRequest ? "solving…" : "";
  }
  if (session.lastError && !session.lastErrorControl) {
    results.innerHTML = errorView(session.lastError);
    return;
  }
  const pieces: string[] = [];
  if (session.lastSolution) pieces.push(solutionView(session.lastSolution));
  if (session.lastDashboard) pieces.push(dashboardView(session.lastDashboard));
  results.innerHTML = pieces.join("\n");
};

const scheduler = new SolveScheduler(client, session, () => renderAll());

const readDraft = (): ModelDocument | null => {
  if (!session.draftModel) return null;
  const draft = JSON.parse(JSON.stringify(session.draftModel)) as ModelDocument;
  const numeric = (id: string, fallback: number): number => {
    const el = $(`#${id}-num`) as HTMLInputElement | null;
    const alt = $(`#${id}`) as HTMLInputElement | null;
    const raw = el?.value ?? alt?.value;
    const value = raw === undefined ? NaN : Number(raw);
    return Number.isFinite(value) ? value : fallback;
  };
  draft.openness.alpha = numeric("alpha", draft.openness.alpha);
  draft.openness.lambda = numeric("lambda", draft.openness.lambda);
  draft.openness.g = numeric("g", draft.openness.g);
  draft.openness.k = numeric("k", draft.openness.k);
  draft.openness.p = numeric("p", draft.openness.p);
  draft.theta = numeric("theta", draft.theta);
  draft.budget = numeric("budget", draft.budget);
  for (const pillar of PILLARS) {
    const a = $(`#a-${pillar}`) as HTMLInputElement | null;
    const w = $(`#w-${pillar}`) as HTMLInputElement | null;
    if (a && Number.isFinite(Number(a.value))) draft.pillars[pillar].a = Number(a.value);
    if (w && Number.isFinite(Number(w.value))) draft.pillars[pillar].w_raw = Number(w.value);
  }
  return draft;
};

const wireControls = (): void => {
  const panel = $("#parameters");
  if (!panel) return;
  panel.querySelectorAll("input").forEach((input) => {
    input.addEventListener("input", () => {
      const draft = readDraft();
      if (draft) scheduler.edit(draft, input.id.replace(/-num$/, ""));
    });
  });
  const apply = $("#ahp-apply");
  apply?.addEventListener("click", () => void applyAhp());
};

const readAhpMatrix = (): number[][] | null => {
  const cells = document.querySelectorAll<HTMLInputElement>(".ahp-cell");
  if (cells.length !== PILLARS.length * PILLARS.length) return null;
  const matrix = PILLARS.map(() => PILLARS.map(() => 1));
  let filled = true;
  cells.forEach((cell) => {
    const i = Number(cell.dataset.row);
    const j = Number(cell.dataset.col);
    if (i === j) return;
    const value = Number(cell.value);
    if (!Number.isFinite(value) || value <= 0) {
      filled = false;
      return;
    }
    matrix[i][j] = value;
    matrix[j][i] = 1 / value;
  });
  return filled ? matrix : null;
};

/** Score pillar weights from the matrix server-side, then write them
 * into the draft and re-solve. */
const applyAhp = async (): Promise<void> => {
  const matrix = readAhpMatrix();
  if (!matrix || !session.draftModel) return;
  try {
    lastWeights = await client.ahpWeights(matrix);
    const draft = JSON.parse(JSON.stringify(session.draftModel)) as ModelDocument;
    for (const pillar of PILLARS as PillarName[]) {
      draft.pillars[pillar].w_raw = lastWeights.weights[pillar];
    }
    scheduler.edit(draft);
  } catch (error) {
    session.lastError = error instanceof Error ? error.message : String(error);
  }
  renderAll();
};

const loadScenario = async (id: string): Promise<void> => {
  stored = await client.getScenario(id);
  session.activeScenarioId = id;
  session.draftModel = modelFromScenario(stored);
  session.lastDashboard = await client
    .dashboard(id, [], "")
    .catch(() => null);
  renderAll();
  await scheduler.solveNow(session.draftModel);
};

const boot = async (): Promise<void> => {
  const picker = $("#scenario-picker") as HTMLSelectElement | null;
  const scenarios = await client.listScenarios();
  if (picker) {
    picker.innerHTML = scenarios
      .map((s) => `<option value="${s.id}">${s.name}</option>`)
      .join("");
    picker.addEventListener("change", () => void loadScenario(picker.value));
  }
  $("#save")?.addEventListener("click", () => {
    if (!stored) return;
    void saveDraft(client, session, stored).then((doc) => {
      stored = doc;
      renderAll();
    });
  });
  if (scenarios.length > 0) {
    await loadScenario(scenarios[0].id);
  }
};

if (typeof document !== "undefined" && document.readyState !== "loading") {
  void boot();
} else if (typeof document !== "undefined") {
  document.addEventListener("DOMContentLoaded", () => void boot());
}
