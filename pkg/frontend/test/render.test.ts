/**
 * Thin-client checks: rendering a canned service response must show its
 * numbers verbatim; nothing is recomputed in the UI.
 */

import { describe, expect, it } from "vitest";
import {
  dashboardView,
  errorView,
  marginalChartGeometry,
  opennessGauge,
  parameterPanel,
  solutionView,
} from "../src/render.js";
import { modelFromScenario } from "../src/state.js";
import { PILLARS } from "../src/types.js";
import { AHP_RESPONSE, INDIA_DASHBOARD, INDIA_DOCUMENT, SOLVE_RESPONSE } from "./fixtures.js";

describe("solution view", () => {
  const html = solutionView(SOLVE_RESPONSE);

  it("renders every allocation figure verbatim", () => {
    for (const pillar of PILLARS) {
      expect(html).toContain(`>${SOLVE_RESPONSE.allocation[pillar]}<`);
    }
  });

  it("renders capacities, multiplier, openness, and welfare verbatim", () => {
    expect(html).toContain(String(SOLVE_RESPONSE.capacities.d));
    expect(html).toContain(String(SOLVE_RESPONSE.capacities.m));
    expect(html).toContain(`>${SOLVE_RESPONSE.multiplier}<`);
    expect(html).toContain(`data-value="${SOLVE_RESPONSE.openness}"`);
    expect(html).toContain(`>${SOLVE_RESPONSE.welfare.w}<`);
    expect(html).toContain(`>${SOLVE_RESPONSE.welfare.s}<`);
  });

  it("marks funded pillars from the response, not from recomputation", () => {
    for (const pillar of SOLVE_RESPONSE.fundedSet) {
      expect(html).toMatch(new RegExp(`data-pillar="${pillar}"[\\s\\S]*?funded`));
    }
  });
});

describe("dashboard view", () => {
  const html = dashboardView(INDIA_DASHBOARD);

  it("renders marginal returns, bars, spends, and capacities verbatim", () => {
    for (const pillar of PILLARS) {
      const row = INDIA_DASHBOARD.perPillar[pillar];
      expect(html).toContain(`>${row.marginalReturn}<`);
      expect(html).toContain(`>${row.bar}<`);
      expect(html).toContain(`>${row.allocation}<`);
      expect(html).toContain(`>${row.capacity}<`);
    }
  });

  it("renders verdict badges from the response field", () => {
    for (const pillar of PILLARS) {
      const row = INDIA_DASHBOARD.perPillar[pillar];
      expect(html).toMatch(
        new RegExp(`data-pillar="${pillar}"[\\s\\S]*?badge-${row.verdict}`),
      );
    }
  });

  it("renders checklist margins and guardrail observations verbatim", () => {
    for (const decision of INDIA_DASHBOARD.checklistDecisions) {
      expect(html).toContain(`>${decision.margin}<`);
      expect(html).toContain(decision.approved ? "approve" : "reject");
    }
    for (const result of INDIA_DASHBOARD.guardrailResults) {
      expect(html).toContain(result.metricId);
      if (result.observed !== null) {
        expect(html).toContain(String(result.observed));
      } else {
        expect(html).toContain("no data");
      }
    }
  });

  it("renders the openness block verbatim", () => {
    expect(html).toContain(`data-value="${INDIA_DASHBOARD.openness.o}"`);
    expect(html).toContain(`>${INDIA_DASHBOARD.openness.benefit}<`);
    expect(html).toContain(`>${INDIA_DASHBOARD.openness.exposure}<`);
  });
});

describe("parameter panel", () => {
  const model = modelFromScenario(INDIA_DOCUMENT);
  const html = parameterPanel(model, AHP_RESPONSE);

  it("shows the loaded values exactly", () => {
    expect(html).toContain(`value="${model.openness.alpha}"`);
    expect(html).toContain(`value="${model.openness.lambda}"`);
    expect(html).toContain(`value="${model.budget}"`);
    for (const pillar of PILLARS) {
      expect(html).toContain(`value="${model.pillars[pillar].a}"`);
    }
  });

  it("shows scored weights verbatim when present", () => {
    for (const pillar of PILLARS) {
      expect(html).toContain(`data-value="${AHP_RESPONSE.weights[pillar]}"`);
    }
  });
});

describe("inline validation errors", () => {
  const model = modelFromScenario(INDIA_DOCUMENT);

  it("renders the message at the offending scalar control", () => {
    const html = parameterPanel(model, null, { control: "lambda", message: "must be non-negative" });
    expect(html).toMatch(
      /data-param="lambda"[\s\S]*?data-role="inline-error">must be non-negative<[\s\S]*?<\/label>/,
    );
    expect(html.match(/data-role="inline-error"/g)).toHaveLength(1);
  });

  it("renders the message at the offending pillar row", () => {
    const html = parameterPanel(model, null, { control: "a-compute", message: "must be positive" });
    expect(html).toMatch(/data-pillar="compute"[\s\S]*?inline-error/);
  });

  it("renders nothing without an error", () => {
    expect(parameterPanel(model, null, null)).not.toContain("inline-error");
  });
});

describe("compare view", () => {
  it("renders two columns side by side", async () => {
    const { compareView } = await import("../src/render.js");
    const html = compareView("left-id", solutionView(SOLVE_RESPONSE), "right-id", solutionView(SOLVE_RESPONSE));
    expect(html).toContain("left-id");
    expect(html).toContain("right-id");
    expect(html.match(/compare-col/g)).toHaveLength(2);
  });
});

describe("chart geometry", () => {
  it("is a monotone rescaling of the response values", () => {
    const geometry = marginalChartGeometry(INDIA_DASHBOARD);
    const byValue = [...geometry.bars].sort((a, b) => a.value - b.value);
    const byHeight = [...geometry.bars].sort((a, b) => a.height - b.height);
    expect(byValue.map((b) => b.pillar)).toEqual(byHeight.map((b) => b.pillar));
  });
});

describe("error view", () => {
  it("escapes the message", () => {
    expect(errorView("<script>")).toContain("&lt;script&gt;");
  });
});

describe("openness gauge", () => {
  it("carries the raw value", () => {
    expect(opennessGauge(0.75, false)).toContain('data-value="0.75"');
    expect(opennessGauge(1, true)).toContain("(at bound)");
  });
});
