/** Typed client for the read-only browse API. */

export interface Meta {
  node_count: number;
  edge_count: number;
  label: string;
}

export interface EdgeRef {
  id: string;
  label: string;
  size: number;
}

export interface MemberRef {
  id: string;
  title: string;
  snippet: string;
}

export interface NodeView {
  id: string;
  title: string;
  text: string;
  hyperedges: EdgeRef[];
}

export interface EdgeView {
  id: string;
  label: string;
  members: MemberRef[];
}

export interface SearchResults {
  query: string;
  nodes: MemberRef[];
  edges: EdgeRef[];
}

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
    this.name = "ApiError";
  }
}

export class ApiClient {
  constructor(private readonly base: string = "") {}

  private async get<T>(path: string): Promise<T> {
    let response: Response;
    try {
      response = await fetch(this.base + path);
    } catch (err) {
      throw new ApiError(0, `network failure: ${String(err)}`);
    }
    if (!response.ok) {
      let detail = `${response.status}`;
      try {
        const body = (await response.json()) as { detail?: unknown };
        if (typeof body.detail === "string") detail = body.detail;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(response.status, detail);
    }
    return (await response.json()) as T;
  }

  meta(): Promise<Meta> {
    return this.get<Meta>("/api/meta");
  }

  node(id: string): Promise<NodeView> {
    return this.get<NodeView>(`/api/nodes/${encodeURIComponent(id)}`);
  }

  edge(id: string): Promise<EdgeView> {
    return this.get<EdgeView>(`/api/hyperedges/${encodeURIComponent(id)}`);
  }

  search(q: string, limit = 30): Promise<SearchResults> {
    return this.get<SearchResults>(
      `/api/search?q=${encodeURIComponent(q)}&limit=${limit}`,
    );
  }
}
