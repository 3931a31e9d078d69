/** Payload shapes of the read-only results API. */

export interface ObjectiveDescriptor {
  name: string;
  direction: "minimize" | "maximize";
}

export interface FrontSolution {
  index: number;
  genotype: Record<string, number[]>;
  objectives: number[];
  workflow_file: string;
}

export interface FrontDocument {
  run_id: string;
  objectives: ObjectiveDescriptor[];
  solutions: FrontSolution[];
}

export interface RunSummary {
  run_id: string;
  objectives: ObjectiveDescriptor[];
  solution_count: number;
}

export interface SolutionAction {
  id: string;
  name: string;
  executor: "human" | "cobot" | null;
  properties: Record<string, string | number | boolean>;
}

export interface SolutionDetail extends FrontSolution {
  workflow_name: string;
  actions: SolutionAction[];
}

/** Client-side view models. */

export interface FilterBounds {
  min: number | null;
  max: number | null;
}

export interface FrontViewModel {
  runId: string;
  objectives: ObjectiveDescriptor[];
  solutions: FrontSolution[];
  filters: FilterBounds[];
  selection: number | null;
}

export interface ActionRow {
  actionId: string;
  name: string;
  executor: "human" | "cobot" | null;
  humanTime: number | null;
  cobotTime: number | null;
  ergonomicPenalty: number | null;
}

export interface SolutionDetailViewModel {
  index: number;
  workflowName: string;
  rows: ActionRow[];
  objectives: number[];
  /** Totals recomputed from the rows; null when the objectives are not the
   * makespan/penalty pair this client knows how to recompute. */
  recomputedTotals: number[] | null;
  consistent: boolean | null;
}
