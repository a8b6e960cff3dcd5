/**
 * Canned service responses, frozen from a real backend run so tests
 * exercise rendering against genuine wire payloads.
 */

import type { DashboardReport, PlannerSolution, ScenarioDocument, WeightResult } from "../src/types.js";

export const SOLVE_RESPONSE: PlannerSolution = {
  "allocation": {
    "data": 0.278913095912,
    "compute": 0.296192006568,
    "model": 0.078018477824,
    "norms": 0.346876419696
  },
  "openness": 0.75,
  "multiplier": 0.104809390686,
  "capacities": {
    "d": 0.964808726919,
    "c": 0.948280483094,
    "m": 1.0,
    "n": 0.87522691585,
    "mClipped": true
  },
  "welfare": {
    "s": 0.951558122019,
    "g": 1.38629436112,
    "p": 0.225,
    "w": 0.856978993749
  },
  "fundedSet": [
    "data",
    "compute",
    "model",
    "norms"
  ],
  "kktResiduals": {
    "perPillar": {
      "data": -0.0161273825212,
      "compute": -0.0143002361003,
      "model": -0.104809390686,
      "norms": 0.0
    },
    "openness": 0.0,
    "complementarySlackness": 0.0
  },
  "flags": {
    "budgetBinding": true,
    "mClipped": true,
    "opennessAtBound": false,
    "globalityVerified": false
  }
};

export const INDIA_DASHBOARD: DashboardReport = {
  "period": "2025-Q3",
  "perPillar": {
    "data": {
      "marginalReturn": 3.1,
      "bar": 3.1,
      "verdict": "fund",
      "allocation": 0.0124609778309,
      "capacity": 0.138888888889
    },
    "compute": {
      "marginalReturn": 2.77777777778,
      "bar": 3.1,
      "verdict": "defer",
      "allocation": 0.0,
      "capacity": 0.0
    },
    "model": {
      "marginalReturn": 1.0,
      "bar": 3.1,
      "verdict": "defer",
      "allocation": 0.0,
      "capacity": 0.0
    },
    "norms": {
      "marginalReturn": 1.2,
      "bar": 3.1,
      "verdict": "defer",
      "allocation": 0.0,
      "capacity": 0.0
    }
  },
  "openness": {
    "o": 0.75,
    "atBound": false,
    "benefit": 1.38629436112,
    "exposure": 0.225
  },
  "checklistDecisions": [
    {
      "name": "research-partnerships",
      "approved": true,
      "margin": 2.0
    },
    {
      "name": "open-source-participation",
      "approved": true,
      "margin": 3.0
    },
    {
      "name": "foreign-cloud-inference-for-sensitive-services",
      "approved": false,
      "margin": -2.0
    },
    {
      "name": "chip-imports-with-exit-clauses",
      "approved": true,
      "margin": 2.0
    }
  ],
  "guardrailResults": [
    {
      "metricId": "gpu_utilization",
      "comparator": ">",
      "threshold": 0.75,
      "unit": "fraction",
      "observed": 0.8,
      "period": "2025-Q3",
      "status": "pass"
    },
    {
      "metricId": "indic_dataset_hours_share",
      "comparator": ">",
      "threshold": 0.4,
      "unit": "fraction",
      "observed": null,
      "period": null,
      "status": "no_data"
    }
  ],
  "welfare": {
    "s": 0.0416666666667,
    "g": 1.38629436112,
    "p": 0.225,
    "w": 0.220054975003
  }
} as DashboardReport;

export const INDIA_DOCUMENT: ScenarioDocument = {
  "id": "india-mcpf-low",
  "name": "India (MCPF 1.54)",
  "description": "Tight-fiscal archetype: strong data and compute footholds, weaker model autonomy, spending gated by the marginal cost of public funds.",
  "version": 1,
  "pillars": {
    "data": {
      "a": 12.0,
      "w_raw": 0.3,
      "provenance": "illustrative"
    },
    "compute": {
      "a": 10.0,
      "w_raw": 0.25,
      "provenance": "illustrative"
    },
    "model": {
      "a": 4.0,
      "w_raw": 0.25,
      "provenance": "illustrative"
    },
    "norms": {
      "a": 6.0,
      "w_raw": 0.2,
      "provenance": "illustrative"
    }
  },
  "theta": 0.8,
  "openness": {
    "g": 1.0,
    "k": 4.0,
    "p": 0.3,
    "lambda": 1.0,
    "alpha": 0.7
  },
  "budget": 1.0,
  "mu_mode": {
    "mode": "exogenous",
    "mu": 1.54
  },
  "checklist": [
    {
      "name": "research-partnerships",
      "benefit_score": 4.0,
      "exposure_score": 2.0,
      "notes": "joint labs and exchanges"
    },
    {
      "name": "open-source-participation",
      "benefit_score": 4.0,
      "exposure_score": 1.0,
      "notes": "upstream contributions"
    },
    {
      "name": "foreign-cloud-inference-for-sensitive-services",
      "benefit_score": 2.0,
      "exposure_score": 4.0,
      "notes": "prefer on-shore inference"
    },
    {
      "name": "chip-imports-with-exit-clauses",
      "benefit_score": 5.0,
      "exposure_score": 3.0,
      "notes": "staged access, escrowed terms"
    }
  ],
  "guardrails": [
    {
      "metric_id": "gpu_utilization",
      "comparator": ">",
      "threshold": 0.75,
      "unit": "fraction"
    },
    {
      "metric_id": "indic_dataset_hours_share",
      "comparator": ">",
      "threshold": 0.4,
      "unit": "fraction"
    }
  ],
  "provenance": {
    "openness.alpha": "paper",
    "mu_mode.mu": "paper",
    "guardrails.gpu_utilization.threshold": "paper",
    "guardrails.indic_dataset_hours_share.threshold": "paper",
    "theta": "illustrative",
    "budget": "illustrative",
    "openness.g": "illustrative",
    "openness.k": "illustrative",
    "openness.p": "illustrative",
    "openness.lambda": "illustrative",
    "checklist": "illustrative",
    "pillars.data": "illustrative",
    "pillars.compute": "illustrative",
    "pillars.model": "illustrative",
    "pillars.norms": "illustrative"
  }
} as ScenarioDocument;

export const AHP_RESPONSE: WeightResult = {
  "weights": {
    "data": 0.444444444444,
    "compute": 0.222222222222,
    "model": 0.111111111111,
    "norms": 0.222222222222
  },
  "principalEigenvalue": 4.0,
  "consistencyRatio": 0.0,
  "consistent": true
};

/** Risk-sensitivity steps with the solver responses they produce. */
export const LAMBDA_SWEEP: Array<{ lambda: number; response: PlannerSolution }> = [
  {
    "lambda": 0.6,
    "response": {
      "allocation": {
        "data": 0.278913095912,
        "compute": 0.296192006568,
        "model": 0.078018477824,
        "norms": 0.346876419696
      },
      "openness": 1.0,
      "multiplier": 0.104809390686,
      "capacities": {
        "d": 0.964808726919,
        "c": 0.948280483094,
        "m": 1.0,
        "n": 0.87522691585,
        "mClipped": true
      },
      "welfare": {
        "s": 0.951558122019,
        "g": 1.60943791243,
        "p": 0.3,
        "w": 0.968922059143
      },
      "fundedSet": [
        "data",
        "compute",
        "model",
        "norms"
      ],
      "kktResiduals": {
        "perPillar": {
          "data": -0.0161273825212,
          "compute": -0.0143002361003,
          "model": -0.104809390686,
          "norms": 0.0
        },
        "openness": 0.0,
        "complementarySlackness": 0.0
      },
      "flags": {
        "budgetBinding": true,
        "mClipped": true,
        "opennessAtBound": true,
        "globalityVerified": false
      }
    }
  },
  {
    "lambda": 1.0,
    "response": {
      "allocation": {
        "data": 0.278913095912,
        "compute": 0.296192006568,
        "model": 0.078018477824,
        "norms": 0.346876419696
      },
      "openness": 0.75,
      "multiplier": 0.104809390686,
      "capacities": {
        "d": 0.964808726919,
        "c": 0.948280483094,
        "m": 1.0,
        "n": 0.87522691585,
        "mClipped": true
      },
      "welfare": {
        "s": 0.951558122019,
        "g": 1.38629436112,
        "p": 0.225,
        "w": 0.856978993749
      },
      "fundedSet": [
        "data",
        "compute",
        "model",
        "norms"
      ],
      "kktResiduals": {
        "perPillar": {
          "data": -0.0161273825212,
          "compute": -0.0143002361003,
          "model": -0.104809390686,
          "norms": 0.0
        },
        "openness": 0.0,
        "complementarySlackness": 0.0
      },
      "flags": {
        "budgetBinding": true,
        "mClipped": true,
        "opennessAtBound": false,
        "globalityVerified": false
      }
    }
  },
  {
    "lambda": 1.4,
    "response": {
      "allocation": {
        "data": 0.278913095912,
        "compute": 0.296192006568,
        "model": 0.078018477824,
        "norms": 0.346876419696
      },
      "openness": 0.464285714286,
      "multiplier": 0.104809390686,
      "capacities": {
        "d": 0.964808726919,
        "c": 0.948280483094,
        "m": 1.0,
        "n": 0.87522691585,
        "mClipped": true
      },
      "welfare": {
        "s": 0.951558122019,
        "g": 1.0498221245,
        "p": 0.139285714286,
        "w": 0.786037322763
      },
      "fundedSet": [
        "data",
        "compute",
        "model",
        "norms"
      ],
      "kktResiduals": {
        "perPillar": {
          "data": -0.0161273825212,
          "compute": -0.0143002361003,
          "model": -0.104809390686,
          "norms": 0.0
        },
        "openness": 0.0,
        "complementarySlackness": 0.0
      },
      "flags": {
        "budgetBinding": true,
        "mClipped": true,
        "opennessAtBound": false,
        "globalityVerified": false
      }
    }
  }
];
