/** Thin typed client over the read-only results API (GET requests only). */

import type { FrontDocument, RunSummary, SolutionDetail } from "./types.js";

export class ApiError extends Error {
  constructor(
    message: string,
    readonly status: number | null,
  ) {
    super(message);
  }

  get isNotFound(): boolean {
    return this.status === 404;
  }
}

async function getJson<T>(url: string): Promise<T> {
  let response: Response;
  try {
    response = await fetch(url);
  } catch (cause) {
    throw new ApiError(`network failure fetching ${url}`, null);
  }
  if (!response.ok) {
    let detail = response.statusText;
    try {
      const body = (await response.json()) as { detail?: string };
      if (body.detail) detail = body.detail;
    } catch {
      // non-JSON error body; keep the status text
    }
    throw new ApiError(detail, response.status);
  }
  return (await response.json()) as T;
}

export class ApiClient {
  constructor(readonly baseUrl: string = "") {}

  listRuns(): Promise<RunSummary[]> {
    return getJson<RunSummary[]>(`${this.baseUrl}/api/runs`);
  }

  front(runId: string): Promise<FrontDocument> {
    return getJson<FrontDocument>(
      `${this.baseUrl}/api/runs/${encodeURIComponent(runId)}/front`,
    );
  }

  solution(runId: string, index: number): Promise<SolutionDetail> {
    return getJson<SolutionDetail>(
      `${this.baseUrl}/api/runs/${encodeURIComponent(runId)}/solutions/${index}`,
    );
  }

  workflowXmlUrl(runId: string, index: number): string {
    return `${this.baseUrl}/api/runs/${encodeURIComponent(runId)}/solutions/${index}/workflow.xml`;
  }

  /** Exact bytes of the canonical workflow document of one solution. */
  async workflowXml(runId: string, index: number): Promise<Blob> {
    let response: Response;
    const url = this.workflowXmlUrl(runId, index);
    try {
      response = await fetch(url);
    } catch {
      throw new ApiError(`network failure fetching ${url}`, null);
    }
    if (!response.ok) {
      throw new ApiError(`could not fetch ${url}`, response.status);
    }
    return response.blob();
  }
}
