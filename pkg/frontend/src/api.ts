import type {
  ModelEntry,
  QueryDocument,
  SelectionDocument,
  SessionCreated,
  StateDocument,
} from "./types.js";

export class GatewayError extends Error {
  constructor(
    public status: number,
    public kind: string,
    detail: string,
  ) {
    super(detail);
  }
}

async function parse<T>(res: Response): Promise<T> {
  if (res.ok) {
    return (await res.json()) as T;
  }
  let kind = "HTTPError";
  let detail = `${res.status} ${res.statusText}`;
  try {
    const body = await res.json();
    if (body && typeof body.error === "string") {
      kind = body.error;
      detail = body.detail ?? detail;
    }
  } catch {
    // non-JSON error body, keep the status line
  }
  throw new GatewayError(res.status, kind, detail);
}

/** Thin typed wrapper over the gateway HTTP API. One base URL, no state. */
export class GatewayClient {
  constructor(
    private baseUrl: string,
    private fetchFn: typeof fetch = fetch,
  ) {
    this.baseUrl = baseUrl.replace(/\/+$/, "");
  }

  private post<T>(path: string, body?: unknown): Promise<T> {
    return this.fetchFn(this.baseUrl + path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    }).then((res) => parse<T>(res));
  }

  async models(): Promise<ModelEntry[]> {
    const res = await this.fetchFn(this.baseUrl + "/models");
    const doc = await parse<{ models: ModelEntry[] }>(res);
    return doc.models;
  }

  createSession(model: string): Promise<SessionCreated> {
    return this.post("/sessions", { model });
  }

  query(sessionId: string, text: string): Promise<QueryDocument> {
    return this.post(`/sessions/${sessionId}/query`, { text });
  }

  select(sessionId: string, index: number): Promise<SelectionDocument> {
    return this.post(`/sessions/${sessionId}/select`, { index });
  }

  async state(sessionId: string): Promise<StateDocument> {
    const res = await this.fetchFn(`${this.baseUrl}/sessions/${sessionId}/state`);
    return parse<StateDocument>(res);
  }

  speechComplete(sessionId: string): Promise<{ signals: string[] }> {
    return this.post(`/sessions/${sessionId}/speech-complete`);
  }
}
