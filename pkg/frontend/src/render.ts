/**
 * Pure rendering: state in, HTML strings out. No DOM access and no model
 * math here; every displayed number is a value read from a service
 * response, rendered verbatim via String().
 */

import type {
  DashboardReport,
  ModelDocument,
  PillarName,
  PlannerSolution,
  WeightResult,
} from "./types.js";
import { PILLARS } from "./types.js";

const esc = (value: unknown): string =>
  String(value ?? "")
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");

const CHART_WIDTH = 360;
const CHART_HEIGHT = 160;

export interface ChartGeometry {
  bars: Array<{ pillar: PillarName; value: number; height: number }>;
  lineY: number;
  barValue: number;
}

/**
 * Scale marginal returns and the funding bar into one chart. Geometry is
 * a monotone rescaling of the response values, so "bar tops the line"
 * holds exactly when marginalReturn >= bar.
 */
export const marginalChartGeometry = (report: DashboardReport): ChartGeometry => {
  const rows = PILLARS.map((p) => report.perPillar[p]);
  const barValue = rows[0]?.bar ?? 0;
  const top = Math.max(barValue, ...rows.map((r) => r.marginalReturn)) || 1;
  const scale = CHART_HEIGHT / (1.05 * top);
  return {
    bars: PILLARS.map((p) => ({
      pillar: p,
      value: report.perPillar[p].marginalReturn,
      height: report.perPillar[p].marginalReturn * scale,
    })),
    lineY: CHART_HEIGHT - barValue * scale,
    barValue,
  };
};

const verdictBadge = (verdict: "fund" | "defer"): string =>
  `<span class="badge badge-${verdict}" data-role="verdict">${verdict}</span>`;

export const marginalReturnsChart = (report: DashboardReport): string => {
  const geometry = marginalChartGeometry(report);
  const slot = CHART_WIDTH / geometry.bars.length;
  const bars = geometry.bars
    .map((bar, i) => {
      const width = slot * 0.55;
      const x = i * slot + slot * 0.2;
      const y = CHART_HEIGHT - bar.height;
      return (
        `<rect data-pillar="${bar.pillar}" data-value="${bar.value}" x="${x.toFixed(2)}" ` +
        `y="${y.toFixed(4)}" width="${width.toFixed(2)}" height="${bar.height.toFixed(4)}" class="bar"></rect>` +
        `<text x="${(i * slot + slot / 2).toFixed(2)}" y="${CHART_HEIGHT + 14}" class="bar-label">${bar.pillar}</text>`
      );
    })
    .join("");
  const line =
    `<line data-role="bar-line" data-value="${geometry.barValue}" x1="0" x2="${CHART_WIDTH}" ` +
    `y1="${geometry.lineY.toFixed(4)}" y2="${geometry.lineY.toFixed(4)}" class="funding-bar"></line>`;
  return (
    `<svg viewBox="0 0 ${CHART_WIDTH} ${CHART_HEIGHT + 20}" class="marginal-chart" role="img" ` +
    `aria-label="marginal returns against the funding bar">${bars}${line}</svg>`
  );
};

export const opennessGauge = (o: number, atBound: boolean): string => {
  const width = 240;
  const fill = Math.max(0, Math.min(1, o)) * width;
  return (
    `<div class="gauge" data-role="openness-gauge" data-value="${o}">` +
    `<div class="gauge-track"><div class="gauge-fill" style="width:${fill.toFixed(2)}px"></div></div>` +
    `<span class="gauge-value">O* = ${o}${atBound ? " (at bound)" : ""}</span>` +
    `</div>`
  );
};

export interface InlineError {
  control: string;
  message: string;
}

export const parameterPanel = (
  model: ModelDocument,
  weights?: WeightResult | null,
  inlineError?: InlineError | null,
): string => {
  const errorSpan = (controlId: string): string =>
    inlineError && inlineError.control === controlId
      ? `<span class="control-error" data-role="inline-error">${esc(inlineError.message)}</span>`
      : "";
  const scalar = (id: string, label: string, value: number, min: number, max: number, step: number) =>
    `<label class="control" data-param="${id}">${label}` +
    `<input type="range" id="${id}" min="${min}" max="${max}" step="${step}" value="${value}">` +
    `<input type="number" id="${id}-num" step="${step}" value="${value}">` +
    `${errorSpan(id)}</label>`;
  const pillarRows = PILLARS.map(
    (p) =>
      `<tr data-pillar="${p}"><th>${p}${errorSpan(`a-${p}`)}${errorSpan(`w-${p}`)}</th>` +
      `<td><input type="number" id="a-${p}" step="0.1" min="0.0001" value="${model.pillars[p].a}"></td>` +
      `<td><input type="number" id="w-${p}" step="0.05" min="0" value="${model.pillars[p].w_raw}"></td></tr>`,
  ).join("");
  const weightBars = weights
    ? PILLARS.map(
        (p) =>
          `<div class="weight-bar" data-pillar="${p}" data-value="${weights.weights[p]}">` +
          `<span>${p}</span><div style="width:${(weights.weights[p] * 200).toFixed(1)}px"></div>` +
          `<span>${weights.weights[p]}</span></div>`,
      ).join("")
    : "";
  return `
<section class="panel parameters">
  <h2>Parameters</h2>
  ${scalar("alpha", "sovereignty weight α", model.openness.alpha, 0, 1, 0.01)}
  ${scalar("lambda", "risk sensitivity λ", model.openness.lambda, 0, 4, 0.05)}
  ${scalar("g", "openness benefit scale g", model.openness.g, 0.1, 4, 0.05)}
  ${scalar("k", "benefit curvature k", model.openness.k, 0.2, 12, 0.1)}
  ${scalar("p", "exposure slope p", model.openness.p, 0, 2, 0.01)}
  ${scalar("theta", "complementarity θ", model.theta, 0, 3, 0.05)}
  ${scalar("budget", "budget B", model.budget, 0.1, 10, 0.1)}
  <table class="pillar-table"><thead><tr><th></th><th>productivity a</th><th>raw weight</th></tr></thead>
  <tbody>${pillarRows}</tbody></table>
  <details class="ahp"><summary>AHP matrix editor</summary>
    <table class="ahp-matrix">${PILLARS.map(
      (row, i) =>
        `<tr>${PILLARS.map(
          (col, j) =>
            `<td><input type="number" class="ahp-cell" data-row="${i}" data-col="${j}" ` +
            `value="${i === j ? 1 : ""}" step="any" ${i === j ? "disabled" : ""}></td>`,
        ).join("")}</tr>`,
    ).join("")}</table>
    <button id="ahp-apply" type="button">Score weights</button>
    <div id="ahp-result">${weightBars}</div>
  </details>
</section>`;
};

export const solutionView = (solution: PlannerSolution): string => {
  const caps: Record<PillarName, number> = {
    data: solution.capacities.d,
    compute: solution.capacities.c,
    model: solution.capacities.m,
    norms: solution.capacities.n,
  };
  const rows = PILLARS.map((p) => {
    const funded = solution.fundedSet.includes(p);
    return (
      `<tr data-pillar="${p}"><th>${p}</th>` +
      `<td data-role="allocation">${solution.allocation[p]}</td>` +
      `<td data-role="capacity">${caps[p]}</td>` +
      `<td>${funded ? "funded" : "zero"}</td></tr>`
    );
  }).join("");
  const flags = [
    solution.flags.mClipped ? "autonomy clipped" : "",
    solution.flags.budgetBinding ? "budget binding" : "budget slack",
    solution.flags.globalityVerified ? "oracle-verified" : "",
  ]
    .filter(Boolean)
    .join(" · ");
  return `
<section class="panel solution">
  <h2>Allocation</h2>
  <table class="solution-table"><thead><tr><th></th><th>spend</th><th>capacity</th><th></th></tr></thead>
  <tbody>${rows}</tbody></table>
  <p>multiplier μ* = <b data-role="multiplier">${solution.multiplier}</b></p>
  ${opennessGauge(solution.openness, solution.flags.opennessAtBound)}
  <p>welfare W = <b data-role="welfare">${solution.welfare.w}</b> (S = <span data-role="sovereignty">${solution.welfare.s}</span>)</p>
  <p class="flags">${esc(flags)}</p>
</section>`;
};

export const dashboardView = (report: DashboardReport): string => {
  const pillarRows = PILLARS.map((p) => {
    const row = report.perPillar[p];
    return (
      `<tr data-pillar="${p}"><th>${p}</th>` +
      `<td data-role="marginal">${row.marginalReturn}</td>` +
      `<td data-role="bar">${row.bar}</td>` +
      `<td>${verdictBadge(row.verdict)}</td>` +
      `<td data-role="allocation">${row.allocation}</td>` +
      `<td data-role="capacity">${row.capacity}</td></tr>`
    );
  }).join("");
  const checklist = report.checklistDecisions
    .map(
      (d) =>
        `<tr data-name="${esc(d.name)}"><td>${esc(d.name)}</td>` +
        `<td data-role="decision">${d.approved ? "approve" : "reject"}</td>` +
        `<td data-role="margin">${d.margin}</td></tr>`,
    )
    .join("");
  const guardrails = report.guardrailResults
    .map(
      (g) =>
        `<span class="chip chip-${g.status}" data-metric="${esc(g.metricId)}">` +
        `${esc(g.metricId)} ${esc(g.comparator)} ${g.threshold}: ` +
        `${g.observed === null ? "no data" : g.observed} (${g.status.replace("_", " ")})</span>`,
    )
    .join("");
  return `
<section class="panel dashboard" data-period="${esc(report.period)}">
  <h2>Marginal returns vs funding bar ${report.period ? `(${esc(report.period)})` : ""}</h2>
  ${marginalReturnsChart(report)}
  <table class="dashboard-table">
    <thead><tr><th></th><th>marginal</th><th>bar μ/α</th><th>verdict</th><th>spend</th><th>capacity</th></tr></thead>
    <tbody>${pillarRows}</tbody>
  </table>
  ${opennessGauge(report.openness.o, report.openness.atBound)}
  <p>openness benefit <span data-role="benefit">${report.openness.benefit}</span>,
     exposure <span data-role="exposure">${report.openness.exposure}</span></p>
  <h3>Openness checklist</h3>
  <table class="checklist-table"><tbody>${checklist}</tbody></table>
  <h3>Guardrails</h3>
  <div class="guardrails">${guardrails}</div>
  <p>welfare W = <b data-role="welfare">${report.welfare.w}</b></p>
</section>`;
};

export const compareView = (left: string, leftBody: string, right: string, rightBody: string): string => `
<section class="panel compare">
  <div class="compare-col"><h2>${esc(left)}</h2>${leftBody}</div>
  <div class="compare-col"><h2>${esc(right)}</h2>${rightBody}</div>
</section>`;

export const errorView = (message: string): string =>
  `<section class="panel error" data-role="error"><b>solve failed:</b> ${esc(message)}</section>`;
