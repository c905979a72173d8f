// Client-side draft of one annotator's mistake list for one document. The
// store only accepts spans that are valid for the document, so the request
// bodies it produces are always server-valid; overlap is allowed but
// reported so the UI can warn.
import { CATEGORIES, isCategory } from "./types.js";
function categoryRank(category) {
    return CATEGORIES.indexOf(category);
}
function spansOverlap(aStart, aEnd, bStart, bEnd) {
    return Math.min(aEnd, bEnd) >= Math.max(aStart, bStart);
}
export class DraftStore {
    constructor(tokenCount) {
        this.nextId = 1;
        this.entries = [];
        this.submitted = false;
        if (!Number.isInteger(tokenCount) || tokenCount < 0) {
            throw new RangeError(`token count must be a non-negative integer, got ${tokenCount}`);
        }
        this.tokenCount = tokenCount;
    }
    get isSubmitted() {
        return this.submitted;
    }
    markSubmitted() {
        this.submitted = true;
    }
    validSpan(start, end) {
        return (Number.isInteger(start) &&
            Number.isInteger(end) &&
            start >= 0 &&
            start <= end &&
            end < this.tokenCount);
    }
    isDuplicate(start, end, category) {
        return this.entries.some((e) => e.startToken === start && e.endToken === end && e.category === category);
    }
    // Add a span with its category. Returns the new entry, or null when the
    // draft is read-only, the span is invalid, or an identical entry exists.
    add(span, category) {
        if (this.submitted || !this.validSpan(span.start, span.end)) {
            return null;
        }
        if (this.isDuplicate(span.start, span.end, category)) {
            return null;
        }
        const entry = {
            draftId: this.nextId++,
            startToken: span.start,
            endToken: span.end,
            category,
        };
        this.entries.push(entry);
        return entry;
    }
    remove(draftId) {
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
    loadServerEntries(entries, status) {
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
    list() {
        return [...this.entries].sort((a, b) => a.startToken - b.startToken ||
            a.endToken - b.endToken ||
            categoryRank(a.category) - categoryRank(b.category) ||
            a.draftId - b.draftId);
    }
    get size() {
        return this.entries.length;
    }
    // Existing entries a prospective span would overlap; used for the
    // "overlaps one of your annotations" warning (overlap is legal).
    overlapping(span) {
        return this.list().filter((e) => spansOverlap(e.startToken, e.endToken, span.start, span.end));
    }
    // Entries covering a token index, for highlighting.
    at(index) {
        return this.list().filter((e) => index >= e.startToken && index <= e.endToken);
    }
    // Body for POST /api/annotations/{annotator}/{doc_id}, in canonical order
    // so the ids the server assigns match the displayed order.
    toRequestBody() {
        return this.list().map((e) => ({
            start_token: e.startToken,
            end_token: e.endToken,
            category: e.category,
        }));
    }
}
