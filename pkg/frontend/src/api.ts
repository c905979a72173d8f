// Thin typed client for the annotation service HTTP API. The fetch function
// is injectable so tests can run without a server or a browser.

import {
  AnnotationsPayload,
  AnnotationStatus,
  DocPayload,
  DocSummary,
  EntryOut,
  GamePayload,
  Issue,
} from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  readonly status: number;

  constructor(status: number, message: string) {
    super(message);
    this.name = "ApiError";
    this.status = status;
  }
}

// Outcome of a write. Validation rejections (422) and submit locks (409) are
// expected states the UI must render, so they are results, not exceptions;
// network failures still reject the promise.
export type SaveOutcome =
  | { ok: true; status: AnnotationStatus; entryCount: number }
  | { ok: false; httpStatus: number; issues: Issue[]; message: string };

async function detailOf(response: Response): Promise<string> {
  try {
    const body = await response.json();
    if (body && typeof body.detail === "string") {
      return body.detail;
    }
    return JSON.stringify(body);
  } catch {
    return response.statusText || `HTTP ${response.status}`;
  }
}

export class ApiClient {
  private readonly fetchFn: FetchLike;
  private readonly base: string;

  constructor(fetchFn?: FetchLike, base = "") {
    this.fetchFn = fetchFn ?? ((input, init) => fetch(input, init));
    this.base = base.replace(/\/$/, "");
  }

  private url(path: string): string {
    return `${this.base}${path}`;
  }

  private async getJson<T>(path: string): Promise<T> {
    const response = await this.fetchFn(this.url(path), {
      headers: { Accept: "application/json" },
    });
    if (!response.ok) {
      throw new ApiError(response.status, await detailOf(response));
    }
    return (await response.json()) as T;
  }

  listDocs(annotator?: string): Promise<DocSummary[]> {
    const query = annotator ? `?annotator=${encodeURIComponent(annotator)}` : "";
    return this.getJson<DocSummary[]>(`/api/docs${query}`);
  }

  getDoc(docId: string): Promise<DocPayload> {
    return this.getJson<DocPayload>(`/api/docs/${encodeURIComponent(docId)}`);
  }

  getGame(gameId: string): Promise<GamePayload> {
    return this.getJson<GamePayload>(`/api/games/${encodeURIComponent(gameId)}`);
  }

  getAnnotations(annotator: string, docId: string): Promise<AnnotationsPayload> {
    return this.getJson<AnnotationsPayload>(
      `/api/annotations/${encodeURIComponent(annotator)}/${encodeURIComponent(docId)}`,
    );
  }

  private async writeOutcome(response: Response): Promise<SaveOutcome> {
    if (response.ok) {
      const body = await response.json();
      return {
        ok: true,
        status: body.status as AnnotationStatus,
        entryCount: typeof body.entry_count === "number" ? body.entry_count : 0,
      };
    }
    if (response.status === 422) {
      let issues: Issue[] = [];
      let message = "annotation rejected";
      try {
        const body = await response.json();
        if (Array.isArray(body.issues)) {
          issues = body.issues as Issue[];
          message = issues.map((i) => i.message).join("; ") || message;
        } else if (typeof body.detail === "string") {
          message = body.detail;
        }
      } catch {
        // keep defaults
      }
      return { ok: false, httpStatus: 422, issues, message };
    }
    return {
      ok: false,
      httpStatus: response.status,
      issues: [],
      message: await detailOf(response),
    };
  }

  async saveAnnotations(
    annotator: string,
    docId: string,
    entries: EntryOut[],
  ): Promise<SaveOutcome> {
    const response = await this.fetchFn(
      this.url(
        `/api/annotations/${encodeURIComponent(annotator)}/${encodeURIComponent(docId)}`,
      ),
      {
        method: "POST",
        headers: { "Content-Type": "application/json", Accept: "application/json" },
        body: JSON.stringify(entries),
      },
    );
    return this.writeOutcome(response);
  }

  async submit(annotator: string, docId: string): Promise<SaveOutcome> {
    const response = await this.fetchFn(
      this.url(
        `/api/annotations/${encodeURIComponent(annotator)}/${encodeURIComponent(docId)}/submit`,
      ),
      { method: "POST", headers: { Accept: "application/json" } },
    );
    return this.writeOutcome(response);
  }
}
