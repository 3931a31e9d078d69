/** Pure view-model logic: filtering, selection, chart mode and the
 * client-side consistency check of solution details. */

import type {
  ActionRow,
  FilterBounds,
  FrontDocument,
  FrontSolution,
  FrontViewModel,
  SolutionDetail,
  SolutionDetailViewModel,
} from "./types.js";

const HUMAN_TIME = "ExecutionTimeHuman";
const COBOT_TIME = "CobotExecutionTime";
const PENALTY = "ErgonomicPenaltyHuman";

export const MAKESPAN_OBJECTIVE = "makespan_seconds";
export const PENALTY_OBJECTIVE = "ergonomic_penalty";

export function buildFrontViewModel(front: FrontDocument): FrontViewModel {
  return {
    runId: front.run_id,
    objectives: front.objectives,
    solutions: front.solutions,
    filters: front.objectives.map(() => ({ min: null, max: null })),
    selection: null,
  };
}

export function chartMode(vm: FrontViewModel): "scatter" | "parallel" {
  return vm.objectives.length === 2 ? "scatter" : "parallel";
}

export function validateBounds(bounds: FilterBounds): string | null {
  if (bounds.min !== null && bounds.max !== null && bounds.min > bounds.max) {
    return `lower bound ${bounds.min} exceeds upper bound ${bounds.max}`;
  }
  return null;
}

/** New view model with the given per-objective bounds applied; the selection
 * is cleared when the selected solution drops out of the visible set. */
export function applyFilter(
  vm: FrontViewModel,
  objectiveIndex: number,
  bounds: FilterBounds,
): FrontViewModel {
  if (objectiveIndex < 0 || objectiveIndex >= vm.objectives.length) {
    throw new RangeError(`no objective ${objectiveIndex}`);
  }
  const problem = validateBounds(bounds);
  if (problem !== null) {
    throw new RangeError(problem);
  }
  const filters = vm.filters.map((existing, i) =>
    i === objectiveIndex ? { ...bounds } : existing,
  );
  const next: FrontViewModel = { ...vm, filters };
  if (
    next.selection !== null &&
    !visibleSolutions(next).some((s) => s.index === next.selection)
  ) {
    next.selection = null;
  }
  return next;
}

export function clearFilters(vm: FrontViewModel): FrontViewModel {
  return {
    ...vm,
    filters: vm.objectives.map(() => ({ min: null, max: null })),
  };
}

export function visibleSolutions(vm: FrontViewModel): FrontSolution[] {
  return vm.solutions.filter((solution) =>
    solution.objectives.every((value, m) => {
      const bounds = vm.filters[m];
      if (bounds.min !== null && value < bounds.min) return false;
      if (bounds.max !== null && value > bounds.max) return false;
      return true;
    }),
  );
}

export function selectSolution(vm: FrontViewModel, index: number): FrontViewModel {
  if (!visibleSolutions(vm).some((s) => s.index === index)) {
    throw new RangeError(`solution ${index} is not visible`);
  }
  return { ...vm, selection: index };
}

export function clearSelection(vm: FrontViewModel): FrontViewModel {
  return { ...vm, selection: null };
}

function numberProperty(
  properties: Record<string, string | number | boolean>,
  key: string,
): number | null {
  const value = properties[key];
  return typeof value === "number" ? value : null;
}

export function buildDetailViewModel(
  detail: SolutionDetail,
  vm: FrontViewModel,
): SolutionDetailViewModel {
  const rows: ActionRow[] = detail.actions.map((action) => ({
    actionId: action.id,
    name: action.name,
    executor: action.executor,
    humanTime: numberProperty(action.properties, HUMAN_TIME),
    cobotTime: numberProperty(action.properties, COBOT_TIME),
    ergonomicPenalty: numberProperty(action.properties, PENALTY),
  }));
  const recomputedTotals = recomputeTotals(rows, vm);
  const consistent =
    recomputedTotals === null
      ? null
      : recomputedTotals.every(
          (total, m) => Math.abs(total - detail.objectives[m]) <= 1e-9,
        );
  return {
    index: detail.index,
    workflowName: detail.workflow_name,
    rows,
    objectives: detail.objectives,
    recomputedTotals,
    consistent,
  };
}

/** Client-side totals for the makespan/penalty objective pair; null when the
 * run's objectives are something else or a row lacks the needed numbers. */
export function recomputeTotals(
  rows: ActionRow[],
  vm: FrontViewModel,
): number[] | null {
  const names = vm.objectives.map((o) => o.name);
  if (
    names.length !== 2 ||
    names[0] !== MAKESPAN_OBJECTIVE ||
    names[1] !== PENALTY_OBJECTIVE
  ) {
    return null;
  }
  let makespan = 0;
  let penalty = 0;
  for (const row of rows) {
    if (row.executor === "cobot") {
      if (row.cobotTime === null) return null;
      makespan += row.cobotTime;
    } else if (row.executor === "human") {
      if (row.humanTime === null || row.ergonomicPenalty === null) return null;
      makespan += row.humanTime;
      penalty += row.ergonomicPenalty;
    } else {
      return null;
    }
  }
  return [makespan, penalty];
}
