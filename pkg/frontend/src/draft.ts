// Client-side draft of one annotator's mistake list for one document. The
// store only accepts spans that are valid for the document, so the request
// bodies it produces are always server-valid; overlap is allowed but
// reported so the UI can warn.

import { Category, EntryOut, ServerEntry, CATEGORIES, isCategory } from "./types.js";
import { Span } from "./selection.js";

export interface DraftEntry {
  draftId: number;
  startToken: number;
  endToken: number;
  category: Category;
}

function categoryRank(category: Category): number {
  return CATEGORIES.indexOf(category);
}

function spansOverlap(aStart: number, aEnd: number, bStart: number, bEnd: number): boolean {
  return Math.min(aEnd, bEnd) >= Math.max(aStart, bStart);
}

export class DraftStore {
  readonly tokenCount: number;
  private nextId = 1;
  private entries: DraftEntry[] = [];
  private submitted = false;

  constructor(tokenCount: number) {
    if (!Number.isInteger(tokenCount) || tokenCount < 0) {
      throw new RangeError(`token count must be a non-negative integer, got ${tokenCount}`);
    }
    this.tokenCount = tokenCount;
  }

  get isSubmitted(): boolean {
    return this.submitted;
  }

  markSubmitted(): void {
    this.submitted = true;
  }

  private validSpan(start: number, end: number): boolean {
    return (
      Number.isInteger(start) &&
      Number.isInteger(end) &&
      start >= 0 &&
      start <= end &&
      end < this.tokenCount
    );
  }

  private isDuplicate(start: number, end: number, category: Category): boolean {
    return this.entries.some(
      (e) => e.startToken === start && e.endToken === end && e.category === category,
    );
  }

  // Add a span with its category. Returns the new entry, or null when the
  // draft is read-only, the span is invalid, or an identical entry exists.
  add(span: Span, category: Category): DraftEntry | null {
    if (this.submitted || !this.validSpan(span.start, span.end)) {
      return null;
    }
    if (this.isDuplicate(span.start, span.end, category)) {
      return null;
    }
    const entry: DraftEntry = {
      draftId: this.nextId++,
      startToken: span.start,
      endToken: span.end,
      category,
    };
    this.entries.push(entry);
    return entry;
  }

  remove(draftId: number): boolean {
    if (this.submitted) {
      return false;
    }
    const before = this.entries.length;
    this.entries = this.entries.filter((e) => e.draftId !== draftId);
    return this.entries.length < before;
  }

  // Replace local state with what the server has persisted, so a reload
  // shows exactly the server-side draft. Entries with spans or categories
  // the document cannot hold are dropped rather than rendered wrongly.
  loadServerEntries(entries: ServerEntry[], status?: string): void {
    this.entries = [];
    this.nextId = 1;
    for (const entry of entries) {
      if (!this.validSpan(entry.start_token, entry.end_token)) {
        continue;
      }
      if (!isCategory(entry.category)) {
        continue;
      }
      this.entries.push({
        draftId: this.nextId++,
        startToken: entry.start_token,
        endToken: entry.end_token,
        category: entry.category,
      });
    }
    if (status === "SUBMITTED") {
      this.submitted = true;
    }
  }

  // Entries in canonical order: by start, then end, then category rank.
  list(): DraftEntry[] {
    return [...this.entries].sort(
      (a, b) =>
        a.startToken - b.startToken ||
        a.endToken - b.endToken ||
        categoryRank(a.category) - categoryRank(b.category) ||
        a.draftId - b.draftId,
    );
  }

  get size(): number {
    return this.entries.length;
  }

  // Existing entries a prospective span would overlap; used for the
  // "overlaps one of your annotations" warning (overlap is legal).
  overlapping(span: Span): DraftEntry[] {
    return this.list().filter((e) =>
      spansOverlap(e.startToken, e.endToken, span.start, span.end),
    );
  }

  // Entries covering a token index, for highlighting.
  at(index: number): DraftEntry[] {
    return this.list().filter((e) => index >= e.startToken && index <= e.endToken);
  }

  // Body for POST /api/annotations/{annotator}/{doc_id}, in canonical order
  // so the ids the server assigns match the displayed order.
  toRequestBody(): EntryOut[] {
    return this.list().map((e) => ({
      start_token: e.startToken,
      end_token: e.endToken,
      category: e.category,
    }));
  }
}
