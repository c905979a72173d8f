// Shared types mirroring the annotation service's JSON payloads, plus the
// category metadata the UI needs (display color, keyboard shortcut).
export const CATEGORIES = [
    "NUMBER",
    "NAME",
    "WORD",
    "CONTEXT",
    "NOT_CHECKABLE",
    "OTHER",
];
export function isCategory(value) {
    return CATEGORIES.includes(value);
}
// Digit keys 1-6 map onto the categories in canonical order.
export function categoryForDigit(digit) {
    if (!Number.isInteger(digit) || digit < 1 || digit > CATEGORIES.length) {
        return null;
    }
    return CATEGORIES[digit - 1];
}
export const CATEGORY_LABELS = {
    NUMBER: "Number",
    NAME: "Name",
    WORD: "Word",
    CONTEXT: "Context",
    NOT_CHECKABLE: "Not checkable",
    OTHER: "Other",
};
