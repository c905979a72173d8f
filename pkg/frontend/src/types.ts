// Shared types mirroring the annotation service's JSON payloads, plus the
// category metadata the UI needs (display color, keyboard shortcut).

export const CATEGORIES = [
  "NUMBER",
  "NAME",
  "WORD",
  "CONTEXT",
  "NOT_CHECKABLE",
  "OTHER",
] as const;

export type Category = (typeof CATEGORIES)[number];

export function isCategory(value: string): value is Category {
  return (CATEGORIES as readonly string[]).includes(value);
}

// Digit keys 1-6 map onto the categories in canonical order.
export function categoryForDigit(digit: number): Category | null {
  if (!Number.isInteger(digit) || digit < 1 || digit > CATEGORIES.length) {
    return null;
  }
  return CATEGORIES[digit - 1];
}

export const CATEGORY_LABELS: Record<Category, string> = {
  NUMBER: "Number",
  NAME: "Name",
  WORD: "Word",
  CONTEXT: "Context",
  NOT_CHECKABLE: "Not checkable",
  OTHER: "Other",
};

export type AnnotationStatus = "NONE" | "IN_PROGRESS" | "SUBMITTED";

export interface DocSummary {
  doc_id: string;
  system_id: string | null;
  token_count: number;
  annotation_status: AnnotationStatus;
}

export interface DocPayload {
  doc_id: string;
  tokens: string[];
  game_id: string | null;
  reference_text: string | null;
}

export interface ServerEntry {
  mistake_id: string;
  start_token: number;
  end_token: number;
  text: string;
  category: string;
}

export interface AnnotationsPayload {
  doc_id: string;
  annotator: string;
  status: AnnotationStatus;
  entries: ServerEntry[];
}

// Request body element for POST /api/annotations/{annotator}/{doc_id}.
export interface EntryOut {
  start_token: number;
  end_token: number;
  category: Category;
}

export interface Issue {
  severity: string;
  code: string;
  doc_id: string | null;
  mistake_id: string | null;
  message: string;
}

export interface GameTeam {
  name: string;
  wins: number;
  losses: number;
  total_points: number;
  quarter_points?: number[] | null;
}

export interface GamePayload {
  game_id: string;
  date: string;
  arena: string;
  home: GameTeam;
  away: GameTeam;
  players?: Array<Record<string, unknown>>;
}
