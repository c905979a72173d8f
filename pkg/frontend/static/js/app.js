// Browser entry point: wires the pure selection/draft/api modules to the DOM.
// All state that matters lives in SpanSelection and DraftStore; this file
// only renders and forwards events.
import { ApiClient, ApiError } from "./api.js";
import { DraftStore } from "./draft.js";
import { SpanSelection } from "./selection.js";
import { CATEGORIES, CATEGORY_LABELS, categoryForDigit, } from "./types.js";
const api = new ApiClient();
const state = {
    annotator: localStorage.getItem("annotator") ?? "",
    docs: [],
    doc: null,
    game: null,
    selection: new SpanSelection(0),
    draft: new DraftStore(0),
    dragging: false,
    issuesByDraftId: new Map(),
};
function must(id) {
    const el = document.getElementById(id);
    if (!el) {
        throw new Error(`missing element #${id}`);
    }
    return el;
}
function clearChildren(el) {
    while (el.firstChild) {
        el.removeChild(el.firstChild);
    }
}
// --- banner -----------------------------------------------------------
function setBanner(kind, text, retry) {
    const banner = must("banner");
    clearChildren(banner);
    banner.className = kind ? `banner ${kind}` : "banner hidden";
    if (!kind) {
        return;
    }
    const span = document.createElement("span");
    span.textContent = text;
    banner.appendChild(span);
    if (retry) {
        const button = document.createElement("button");
        button.type = "button";
        button.textContent = "Retry";
        button.addEventListener("click", () => {
            setBanner("", "");
            retry();
        });
        banner.appendChild(button);
    }
}
function describeFailure(err) {
    if (err instanceof ApiError) {
        return `server error ${err.status}: ${err.message}`;
    }
    return "network failure: the service could not be reached";
}
// --- document list ----------------------------------------------------
async function refreshDocList() {
    const picker = must("doc-picker");
    try {
        const docs = await api.listDocs(state.annotator || undefined);
        state.docs = docs;
        const current = state.doc?.doc_id ?? "";
        clearChildren(picker);
        const placeholder = document.createElement("option");
        placeholder.value = "";
        placeholder.textContent = "choose a document";
        picker.appendChild(placeholder);
        for (const doc of docs) {
            const option = document.createElement("option");
            option.value = doc.doc_id;
            const status = doc.annotation_status === "NONE" ? "" : ` [${doc.annotation_status}]`;
            option.textContent = `${doc.doc_id} (${doc.token_count} tokens)${status}`;
            option.selected = doc.doc_id === current;
            picker.appendChild(option);
        }
    }
    catch (err) {
        setBanner("error", `could not list documents; ${describeFailure(err)}`, refreshDocList);
    }
}
// --- document loading -------------------------------------------------
async function openDoc(docId) {
    if (!docId) {
        return;
    }
    if (!state.annotator) {
        setBanner("warning", "enter an annotator id before annotating");
        return;
    }
    try {
        const doc = await api.getDoc(docId);
        const annotations = await api.getAnnotations(state.annotator, docId);
        state.doc = doc;
        state.selection = new SpanSelection(doc.tokens.length);
        state.draft = new DraftStore(doc.tokens.length);
        state.draft.loadServerEntries(annotations.entries, annotations.status);
        state.issuesByDraftId = new Map();
        state.game = null;
        if (doc.game_id) {
            try {
                state.game = await api.getGame(doc.game_id);
            }
            catch {
                state.game = null; // game panel degrades to "no linked game"
            }
        }
        setBanner("", "");
        renderAll();
    }
    catch (err) {
        setBanner("error", `could not load ${docId}; ${describeFailure(err)}`, () => openDoc(docId));
    }
}
// --- rendering --------------------------------------------------------
function renderAll() {
    renderTokens();
    renderEntries();
    renderGamePanel();
    renderControls();
}
function tokenClasses(index) {
    const classes = ["token"];
    if (state.selection.covers(index)) {
        classes.push("selected");
    }
    const covering = state.draft.at(index);
    if (covering.length > 0) {
        classes.push("annotated", `cat-${covering[0].category}`);
        if (covering.length > 1) {
            classes.push("stacked");
        }
    }
    for (const entry of covering) {
        if (state.issuesByDraftId.has(entry.draftId)) {
            classes.push("has-issue");
        }
    }
    return classes.join(" ");
}
function renderTokens() {
    const host = must("summary");
    clearChildren(host);
    if (!state.doc) {
        const hint = document.createElement("p");
        hint.className = "hint";
        hint.textContent = "Pick a document to start annotating.";
        host.appendChild(hint);
        return;
    }
    const readOnly = state.draft.isSubmitted;
    state.doc.tokens.forEach((token, index) => {
        const el = document.createElement("span");
        el.className = tokenClasses(index);
        el.textContent = token;
        el.dataset.index = String(index);
        el.title = `token ${index}`;
        if (!readOnly) {
            el.addEventListener("mousedown", (ev) => {
                ev.preventDefault();
                if (ev.shiftKey && state.selection.isActive) {
                    state.selection.extend(index);
                }
                else {
                    state.selection.begin(index);
                    state.dragging = true;
                }
                renderTokens();
            });
            el.addEventListener("mouseenter", () => {
                if (state.dragging && state.selection.extend(index)) {
                    renderTokens();
                }
            });
        }
        host.appendChild(el);
        host.appendChild(document.createTextNode(" "));
    });
    if (readOnly) {
        const note = document.createElement("p");
        note.className = "hint";
        note.textContent = "This document is submitted and read-only.";
        host.appendChild(note);
    }
}
function entryLabel(entry) {
    const doc = state.doc;
    const text = doc
        ? doc.tokens.slice(entry.startToken, entry.endToken + 1).join(" ")
        : "";
    return `${entry.startToken}-${entry.endToken} ${CATEGORY_LABELS[entry.category]}: "${text}"`;
}
function renderEntries() {
    const host = must("entries");
    clearChildren(host);
    const readOnly = state.draft.isSubmitted;
    for (const entry of state.draft.list()) {
        const li = document.createElement("li");
        li.className = `entry cat-${entry.category}`;
        const label = document.createElement("span");
        label.textContent = entryLabel(entry);
        li.appendChild(label);
        if (!readOnly) {
            const remove = document.createElement("button");
            remove.type = "button";
            remove.textContent = "remove";
            remove.addEventListener("click", () => {
                state.draft.remove(entry.draftId);
                state.issuesByDraftId.delete(entry.draftId);
                renderAll();
                void save();
            });
            li.appendChild(remove);
        }
        const issues = state.issuesByDraftId.get(entry.draftId) ?? [];
        for (const issue of issues) {
            const msg = document.createElement("span");
            msg.className = "issue";
            msg.textContent = `[${issue.code}] ${issue.message}`;
            li.appendChild(msg);
        }
        host.appendChild(li);
    }
    must("entry-count").textContent = String(state.draft.size);
}
function renderTeamRow(table, team, side) {
    const row = table.insertRow();
    row.insertCell().textContent = side;
    row.insertCell().textContent = team.name;
    row.insertCell().textContent = `${team.wins}-${team.losses}`;
    row.insertCell().textContent = String(team.total_points);
    row.insertCell().textContent = (team.quarter_points ?? []).join(" / ");
}
function renderGamePanel() {
    const host = must("game-panel");
    clearChildren(host);
    const game = state.game;
    if (!state.doc) {
        return;
    }
    if (!game) {
        const note = document.createElement("p");
        note.className = "hint";
        note.textContent = "No linked game record.";
        host.appendChild(note);
    }
    else {
        const heading = document.createElement("h3");
        heading.textContent = `${game.away.name} at ${game.home.name}`;
        host.appendChild(heading);
        const meta = document.createElement("p");
        meta.textContent = `${game.date} at ${game.arena}`;
        host.appendChild(meta);
        const table = document.createElement("table");
        const head = table.insertRow();
        for (const title of ["", "team", "record", "pts", "quarters"]) {
            const cell = document.createElement("th");
            cell.textContent = title;
            head.appendChild(cell);
        }
        renderTeamRow(table, game.home, "home");
        renderTeamRow(table, game.away, "away");
        host.appendChild(table);
        const players = game.players ?? [];
        if (players.length > 0) {
            const playerTable = document.createElement("table");
            const columns = ["name", "team", "points", "rebounds", "assists"];
            const headRow = playerTable.insertRow();
            for (const column of columns) {
                const cell = document.createElement("th");
                cell.textContent = column;
                headRow.appendChild(cell);
            }
            for (const player of players) {
                const row = playerTable.insertRow();
                for (const column of columns) {
                    const value = player[column];
                    row.insertCell().textContent =
                        value === undefined || value === null ? "" : String(value);
                }
            }
            host.appendChild(playerTable);
        }
    }
    const reference = must("reference");
    clearChildren(reference);
    if (state.doc.reference_text) {
        const heading = document.createElement("h3");
        heading.textContent = "Reference summary";
        reference.appendChild(heading);
        const body = document.createElement("p");
        body.textContent = state.doc.reference_text;
        reference.appendChild(body);
    }
}
function renderControls() {
    const palette = must("palette");
    const readOnly = state.draft.isSubmitted || !state.doc;
    palette.querySelectorAll("button").forEach((button) => {
        button.disabled = readOnly;
    });
    must("submit").disabled = readOnly;
}
// --- actions ----------------------------------------------------------
async function save() {
    const doc = state.doc;
    if (!doc || state.draft.isSubmitted) {
        return;
    }
    let outcome;
    try {
        outcome = await api.saveAnnotations(state.annotator, doc.doc_id, state.draft.toRequestBody());
    }
    catch {
        setBanner("error", "network failure: your draft is kept locally and was not saved yet", () => void save());
        return;
    }
    if (outcome.ok) {
        state.issuesByDraftId = new Map();
        renderAll();
        return;
    }
    if (outcome.httpStatus === 422) {
        // The server names entries GSM-<n> by their position in the request
        // body, which is the canonical order of the draft; map each issue back
        // onto the offending entry so it shows up at the span itself.
        const ordered = state.draft.list();
        state.issuesByDraftId = new Map();
        for (const issue of outcome.issues) {
            const match = /^GSM-(\d+)$/.exec(issue.mistake_id ?? "");
            const entry = match ? ordered[Number(match[1]) - 1] : undefined;
            if (entry) {
                const existing = state.issuesByDraftId.get(entry.draftId) ?? [];
                existing.push(issue);
                state.issuesByDraftId.set(entry.draftId, existing);
            }
        }
        setBanner("error", `the server rejected the draft: ${outcome.message}`);
        renderAll();
        return;
    }
    setBanner("error", `could not save: ${outcome.message}`);
}
function addSelection(category) {
    const span = state.selection.span;
    if (!span || !state.doc || state.draft.isSubmitted) {
        return;
    }
    const overlaps = state.draft.overlapping(span);
    const entry = state.draft.add(span, category);
    if (!entry) {
        setBanner("warning", "an identical annotation already exists");
        return;
    }
    if (overlaps.length > 0) {
        setBanner("warning", `note: the new span overlaps ${overlaps.length} of your existing annotation(s)`);
    }
    else {
        setBanner("", "");
    }
    state.selection.clear();
    renderAll();
    void save();
}
async function submit() {
    const doc = state.doc;
    if (!doc || state.draft.isSubmitted) {
        return;
    }
    if (state.draft.size === 0) {
        const sure = window.confirm("You are about to submit with zero annotations. Are you sure the summary has no mistakes?");
        if (!sure) {
            return;
        }
    }
    let outcome;
    try {
        await api.saveAnnotations(state.annotator, doc.doc_id, state.draft.toRequestBody());
        outcome = await api.submit(state.annotator, doc.doc_id);
    }
    catch {
        setBanner("error", "network failure: the document was not submitted; your draft is retained", () => void submit());
        return;
    }
    if (!outcome.ok) {
        setBanner("error", `could not submit: ${outcome.message}`);
        return;
    }
    state.draft.markSubmitted();
    setBanner("", "");
    renderAll();
    void refreshDocList();
}
// --- wiring -----------------------------------------------------------
function buildPalette() {
    const palette = must("palette");
    CATEGORIES.forEach((category, index) => {
        const button = document.createElement("button");
        button.type = "button";
        button.className = `cat-${category}`;
        button.textContent = `${index + 1} ${CATEGORY_LABELS[category]}`;
        button.addEventListener("click", () => addSelection(category));
        palette.appendChild(button);
    });
}
function init() {
    buildPalette();
    const annotatorInput = must("annotator");
    annotatorInput.value = state.annotator;
    annotatorInput.addEventListener("change", () => {
        state.annotator = annotatorInput.value.trim();
        localStorage.setItem("annotator", state.annotator);
        state.doc = null;
        state.game = null;
        renderAll();
        void refreshDocList();
    });
    must("doc-picker").addEventListener("change", (ev) => {
        const picker = ev.target;
        void openDoc(picker.value);
    });
    must("submit").addEventListener("click", () => void submit());
    document.addEventListener("mouseup", () => {
        state.dragging = false;
    });
    document.addEventListener("keydown", (ev) => {
        if (ev.target instanceof HTMLInputElement) {
            return;
        }
        if (ev.key === "Escape") {
            state.selection.clear();
            renderTokens();
            return;
        }
        const category = categoryForDigit(Number(ev.key));
        if (category) {
            addSelection(category);
        }
    });
    renderAll();
    void refreshDocList();
}
init();
