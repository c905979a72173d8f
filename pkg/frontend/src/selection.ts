// Token-level span selection. Tokens are addressed by 0-based index and a
// selection is always a contiguous inclusive range of valid indices, so no
// interaction sequence can produce an out-of-range or inverted span.

export interface Span {
  start: number;
  end: number;
}

export class SpanSelection {
  readonly tokenCount: number;
  private anchor: number | null = null;
  private focus: number | null = null;

  constructor(tokenCount: number) {
    if (!Number.isInteger(tokenCount) || tokenCount < 0) {
      throw new RangeError(`token count must be a non-negative integer, got ${tokenCount}`);
    }
    this.tokenCount = tokenCount;
  }

  private inRange(index: number): boolean {
    return Number.isInteger(index) && index >= 0 && index < this.tokenCount;
  }

  get isActive(): boolean {
    return this.anchor !== null;
  }

  // Start a new selection at a token. Ignored (returns false) for indices
  // outside the document.
  begin(index: number): boolean {
    if (!this.inRange(index)) {
      return false;
    }
    this.anchor = index;
    this.focus = index;
    return true;
  }

  // Grow or shrink the active selection toward a token (drag or shift-click).
  // Ignored when nothing is active or the index is outside the document.
  extend(index: number): boolean {
    if (this.anchor === null || !this.inRange(index)) {
      return false;
    }
    this.focus = index;
    return true;
  }

  clear(): void {
    this.anchor = null;
    this.focus = null;
  }

  // The selected range, normalized so start <= end; null when inactive.
  get span(): Span | null {
    if (this.anchor === null || this.focus === null) {
      return null;
    }
    return {
      start: Math.min(this.anchor, this.focus),
      end: Math.max(this.anchor, this.focus),
    };
  }

  covers(index: number): boolean {
    const span = this.span;
    return span !== null && index >= span.start && index <= span.end;
  }
}
