// Thin typed client for the annotation service HTTP API. The fetch function
// is injectable so tests can run without a server or a browser.
export class ApiError extends Error {
    constructor(status, message) {
        super(message);
        this.name = "ApiError";
        this.status = status;
    }
}
async function detailOf(response) {
    try {
        const body = await response.json();
        if (body && typeof body.detail === "string") {
            return body.detail;
        }
        return JSON.stringify(body);
    }
    catch {
        return response.statusText || `HTTP ${response.status}`;
    }
}
export class ApiClient {
    constructor(fetchFn, base = "") {
        this.fetchFn = fetchFn ?? ((input, init) => fetch(input, init));
        this.base = base.replace(/\/$/, "");
    }
    url(path) {
        return `${this.base}${path}`;
    }
    async getJson(path) {
        const response = await this.fetchFn(this.url(path), {
            headers: { Accept: "application/json" },
        });
        if (!response.ok) {
            throw new ApiError(response.status, await detailOf(response));
        }
        return (await response.json());
    }
    listDocs(annotator) {
        const query = annotator ? `?annotator=${encodeURIComponent(annotator)}` : "";
        return this.getJson(`/api/docs${query}`);
    }
    getDoc(docId) {
        return this.getJson(`/api/docs/${encodeURIComponent(docId)}`);
    }
    getGame(gameId) {
        return this.getJson(`/api/games/${encodeURIComponent(gameId)}`);
    }
    getAnnotations(annotator, docId) {
        return this.getJson(`/api/annotations/${encodeURIComponent(annotator)}/${encodeURIComponent(docId)}`);
    }
    async writeOutcome(response) {
        if (response.ok) {
            const body = await response.json();
            return {
                ok: true,
                status: body.status,
                entryCount: typeof body.entry_count === "number" ? body.entry_count : 0,
            };
        }
        if (response.status === 422) {
            let issues = [];
            let message = "annotation rejected";
            try {
                const body = await response.json();
                if (Array.isArray(body.issues)) {
                    issues = body.issues;
                    message = issues.map((i) => i.message).join("; ") || message;
                }
                else if (typeof body.detail === "string") {
                    message = body.detail;
                }
            }
            catch {
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
    async saveAnnotations(annotator, docId, entries) {
        const response = await this.fetchFn(this.url(`/api/annotations/${encodeURIComponent(annotator)}/${encodeURIComponent(docId)}`), {
            method: "POST",
            headers: { "Content-Type": "application/json", Accept: "application/json" },
            body: JSON.stringify(entries),
        });
        return this.writeOutcome(response);
    }
    async submit(annotator, docId) {
        const response = await this.fetchFn(this.url(`/api/annotations/${encodeURIComponent(annotator)}/${encodeURIComponent(docId)}/submit`), { method: "POST", headers: { Accept: "application/json" } });
        return this.writeOutcome(response);
    }
}
