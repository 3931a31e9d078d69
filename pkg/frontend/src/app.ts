/** DOM wiring: run picker, front chart with per-objective filters, solution
 * detail table and canonical XML export. All server traffic is GET; stale
 * responses are dropped via request sequence numbers (last completed wins).
 */

import { ApiClient, ApiError } from "./api.js";
import { renderChart } from "./charts.js";
import {
  applyFilter,
  buildDetailViewModel,
  buildFrontViewModel,
  chartMode,
  selectSolution,
  validateBounds,
  visibleSolutions,
} from "./model.js";
import type {
  FilterBounds,
  FrontViewModel,
  SolutionDetailViewModel,
} from "./types.js";

export class App {
  private vm: FrontViewModel | null = null;
  private detail: SolutionDetailViewModel | null = null;
  private frontRequest = 0;
  private detailRequest = 0;

  constructor(
    private readonly api: ApiClient,
    private readonly root: HTMLElement,
  ) {}

  async start(): Promise<void> {
    this.root.innerHTML = `
      <header>
        <h1>Pareto explorer</h1>
        <label>Run
          <select id="run-picker"><option value="">loading runs…</option></select>
        </label>
      </header>
      <p id="status" class="status" hidden></p>
      <section id="front-section" hidden>
        <div id="filters"></div>
        <div id="chart"></div>
        <p id="visible-count" class="muted"></p>
      </section>
      <section id="detail-section" hidden></section>
    `;
    this.element("run-picker").addEventListener("change", () => {
      const runId = (this.element("run-picker") as HTMLSelectElement).value;
      if (runId) void this.loadRun(runId);
    });
    this.element("chart").addEventListener("click", (event) => {
      const mark = (event.target as Element).closest("[data-index]");
      if (mark) void this.onSelect(Number(mark.getAttribute("data-index")));
    });
    await this.refreshRuns();
  }

  private element(id: string): HTMLElement {
    const found = this.root.querySelector(`#${id}`);
    if (!found) throw new Error(`missing #${id}`);
    return found as HTMLElement;
  }

  private status(message: string | null, retry?: () => void): void {
    const banner = this.element("status");
    banner.hidden = message === null;
    banner.textContent = message ?? "";
    if (message !== null && retry) {
      const button = document.createElement("button");
      button.textContent = "retry";
      button.addEventListener("click", retry);
      banner.append(" ", button);
    }
  }

  async refreshRuns(): Promise<void> {
    const picker = this.element("run-picker") as HTMLSelectElement;
    try {
      const runs = await this.api.listRuns();
      picker.innerHTML =
        '<option value="">select a run…</option>' +
        runs
          .map(
            (r) =>
              `<option value="${r.run_id}">${r.run_id} (${r.solution_count} solutions)</option>`,
          )
          .join("");
      this.status(null);
    } catch (error) {
      this.status(this.describe(error), () => void this.refreshRuns());
    }
  }

  async loadRun(runId: string): Promise<void> {
    const request = ++this.frontRequest;
    try {
      const front = await this.api.front(runId);
      if (request !== this.frontRequest) return; // a newer load finished first
      this.vm = buildFrontViewModel(front);
      this.detail = null;
      this.status(null);
      this.renderFront();
      this.renderDetail();
    } catch (error) {
      if (request !== this.frontRequest) return;
      if (error instanceof ApiError && error.isNotFound) {
        this.status(`run not found: ${runId}`);
      } else {
        this.status(this.describe(error), () => void this.loadRun(runId));
      }
    }
  }

  private async onSelect(index: number): Promise<void> {
    if (!this.vm) return;
    try {
      this.vm = selectSolution(this.vm, index);
    } catch {
      return; // click on a filtered-out mark that is no longer visible
    }
    this.renderFront();
    const request = ++this.detailRequest;
    try {
      const detail = await this.api.solution(this.vm.runId, index);
      if (request !== this.detailRequest) return;
      this.detail = buildDetailViewModel(detail, this.vm);
      this.status(null);
      this.renderDetail();
    } catch (error) {
      if (request !== this.detailRequest) return;
      this.status(this.describe(error));
    }
  }

  private onFilterEdit(objectiveIndex: number, bounds: FilterBounds): void {
    if (!this.vm) return;
    const problem = validateBounds(bounds);
    if (problem !== null) {
      this.status(`invalid filter: ${problem}`);
      return;
    }
    const hadSelection = this.vm.selection;
    this.vm = applyFilter(this.vm, objectiveIndex, bounds);
    if (hadSelection !== null && this.vm.selection === null) {
      this.detail = null;
      this.renderDetail();
    }
    this.status(null);
    this.renderFront();
  }

  private renderFront(): void {
    if (!this.vm) return;
    const vm = this.vm;
    this.element("front-section").hidden = false;

    const filters = this.element("filters");
    filters.innerHTML = vm.objectives
      .map((objective, m) => {
        const bounds = vm.filters[m];
        return `
          <fieldset data-objective="${m}">
            <legend>${objective.name} (${objective.direction})</legend>
            <input type="number" step="any" class="filter-min" placeholder="min"
                   value="${bounds.min ?? ""}">
            <input type="number" step="any" class="filter-max" placeholder="max"
                   value="${bounds.max ?? ""}">
          </fieldset>`;
      })
      .join("");
    filters.querySelectorAll("fieldset").forEach((fieldset) => {
      const m = Number(fieldset.getAttribute("data-objective"));
      const read = (): FilterBounds => {
        const parse = (selector: string) => {
          const raw = (fieldset.querySelector(selector) as HTMLInputElement).value;
          return raw === "" ? null : Number(raw);
        };
        return { min: parse(".filter-min"), max: parse(".filter-max") };
      };
      fieldset.querySelectorAll("input").forEach((input) =>
        input.addEventListener("change", () => this.onFilterEdit(m, read())),
      );
    });

    const visible = visibleSolutions(vm);
    this.element("chart").innerHTML = renderChart(visible, vm);
    const counter = this.element("visible-count");
    if (visible.length === 0) {
      counter.textContent =
        "No solutions match the active filters; relax the bounds to see the front.";
    } else {
      counter.textContent =
        `${visible.length} of ${vm.solutions.length} solutions shown ` +
        `(${chartMode(vm)} view)`;
    }
  }

  private renderDetail(): void {
    const section = this.element("detail-section");
    if (!this.vm || this.vm.selection === null || !this.detail) {
      section.hidden = true;
      section.innerHTML = "";
      return;
    }
    const detail = this.detail;
    section.hidden = false;
    const totals =
      detail.recomputedTotals === null
        ? ""
        : detail.consistent
          ? `<p class="consistent">client totals (${detail.recomputedTotals.join(", ")}) match the server objectives</p>`
          : `<p class="inconsistent">client totals (${detail.recomputedTotals.join(", ")}) DIFFER from server objectives (${detail.objectives.join(", ")})</p>`;
    section.innerHTML = `
      <h2>Solution #${detail.index} — ${detail.workflowName}</h2>
      <p>objectives: (${detail.objectives.join(", ")})</p>
      ${totals}
      <table>
        <thead><tr><th>action</th><th>name</th><th>executor</th>
          <th>human time [s]</th><th>cobot time [s]</th><th>ergonomic penalty</th></tr></thead>
        <tbody>
          ${detail.rows
            .map(
              (row) => `<tr class="executor-${row.executor ?? "unknown"}">
                <td>${row.actionId}</td><td>${row.name}</td>
                <td>${row.executor ?? "?"}</td>
                <td>${row.humanTime ?? ""}</td><td>${row.cobotTime ?? ""}</td>
                <td>${row.ergonomicPenalty ?? ""}</td></tr>`,
            )
            .join("")}
        </tbody>
      </table>
      <button id="export-button">Export workflow XML</button>
    `;
    this.element("export-button").addEventListener("click", () =>
      void this.exportSelected(),
    );
  }

  async exportSelected(): Promise<void> {
    if (!this.vm || this.vm.selection === null) return; // control is hidden anyway
    const index = this.vm.selection;
    try {
      const blob = await this.api.workflowXml(this.vm.runId, index);
      const url = URL.createObjectURL(blob);
      const anchor = document.createElement("a");
      anchor.href = url;
      anchor.download = `${this.vm.runId}_solution_${index}.xml`;
      anchor.click();
      URL.revokeObjectURL(url);
    } catch (error) {
      this.status(this.describe(error));
    }
  }

  private describe(error: unknown): string {
    if (error instanceof ApiError) {
      return error.status === null
        ? `network failure: ${error.message}`
        : `${error.status}: ${error.message}`;
    }
    return String(error);
  }

  /** Read-only state accessors (used by tests). */
  get viewModel(): FrontViewModel | null {
    return this.vm;
  }

  get detailViewModel(): SolutionDetailViewModel | null {
    return this.detail;
  }
}
