/**
 * Wire types mirroring the service JSON schemas. The UI never computes
 * model quantities itself; these shapes are read-only views of responses.
 */

export type PillarName = "data" | "compute" | "model" | "norms";

export const PILLARS: PillarName[] = ["data", "compute", "model", "norms"];

export interface PillarBlock {
  a: number;
  w_raw: number;
  provenance?: string;
}

export interface OpennessBlock {
  g: number;
  k: number;
  p: number;
  lambda: number;
  alpha: number;
}

export interface ModelDocument {
  pillars: Record<PillarName, PillarBlock>;
  theta: number;
  openness: OpennessBlock;
  budget: number;
}

export interface MuMode {
  mode: "endogenous" | "exogenous";
  mu?: number;
}

export interface ScenarioDocument extends ModelDocument {
  id: string;
  name: string;
  description: string;
  version: number;
  mu_mode: MuMode;
  checklist: Array<{ name: string; benefit_score: number; exposure_score: number; notes?: string }>;
  guardrails: Array<{ metric_id: string; comparator: string; threshold: number; unit?: string }>;
  provenance: Record<string, string>;
}

export interface SolveOptionsBody {
  tolerance?: number;
  maxIterations?: number;
  multistartCount?: number;
  randomSeed?: number;
  oracleResolution?: number;
}

export interface PlannerSolution {
  allocation: Record<PillarName, number>;
  openness: number;
  multiplier: number;
  capacities: { d: number; c: number; m: number; n: number; mClipped: boolean };
  welfare: { s: number; g: number; p: number; w: number };
  fundedSet: PillarName[];
  kktResiduals: {
    perPillar: Record<PillarName, number>;
    openness: number;
    complementarySlackness: number;
  };
  flags: {
    budgetBinding: boolean;
    mClipped: boolean;
    opennessAtBound: boolean;
    globalityVerified: boolean;
  };
}

export interface PillarRow {
  marginalReturn: number;
  bar: number;
  verdict: "fund" | "defer";
  allocation: number;
  capacity: number;
}

export interface DashboardReport {
  period: string;
  perPillar: Record<PillarName, PillarRow>;
  openness: { o: number; atBound: boolean; benefit: number; exposure: number };
  checklistDecisions: Array<{ name: string; approved: boolean; margin: number }>;
  guardrailResults: Array<{
    metricId: string;
    comparator: string;
    threshold: number;
    unit: string;
    observed: number | null;
    period: string | null;
    status: "pass" | "fail" | "no_data";
  }>;
  welfare: { s: number; g: number; p: number; w: number };
}

export interface WeightResult {
  weights: Record<PillarName, number>;
  principalEigenvalue: number;
  consistencyRatio: number;
  consistent: boolean;
}

export interface ApiError {
  code: string;
  message: string;
  details: Array<{ path: string; reason: string }>;
}
