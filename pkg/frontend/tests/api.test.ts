import { afterEach, describe, expect, it, vi } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";

function mockFetch(handler: (url: string) => Response | Promise<Response>) {
  const spy = vi.fn((input: RequestInfo | URL) => Promise.resolve(handler(String(input))));
  vi.stubGlobal("fetch", spy);
  return spy;
}

afterEach(() => {
  vi.unstubAllGlobals();
});

describe("ApiClient", () => {
  it("fetches and decodes a node", async () => {
    const payload = { id: "doc-1", title: "T", text: "body", hyperedges: [] };
    const spy = mockFetch(() => new Response(JSON.stringify(payload), { status: 200 }));
    const client = new ApiClient();
    await expect(client.node("doc-1")).resolves.toEqual(payload);
    expect(spy).toHaveBeenCalledWith("/api/nodes/doc-1");
  });

  it("percent-encodes ids in paths and queries", async () => {
    const spy = mockFetch(() => new Response("{}", { status: 200 }));
    const client = new ApiClient();
    await client.node("https://x/a b");
    await client.search("a&b", 5);
    expect(spy).toHaveBeenCalledWith("/api/nodes/https%3A%2F%2Fx%2Fa%20b");
    expect(spy).toHaveBeenCalledWith("/api/search?q=a%26b&limit=5");
  });

  it("404 raises ApiError with the server detail", async () => {
    mockFetch(() => new Response(JSON.stringify({ detail: "unknown node id: ghost" }), { status: 404 }));
    const client = new ApiClient();
    const error = await client.node("ghost").catch((e) => e);
    expect(error).toBeInstanceOf(ApiError);
    expect(error.status).toBe(404);
    expect(error.message).toContain("ghost");
  });

  it("network failures surface as status 0", async () => {
    vi.stubGlobal("fetch", vi.fn(() => Promise.reject(new TypeError("connection refused"))));
    const client = new ApiClient();
    const error = await client.meta().catch((e) => e);
    expect(error).toBeInstanceOf(ApiError);
    expect(error.status).toBe(0);
  });

  it("respects a base url", async () => {
    const spy = mockFetch(() => new Response("{}", { status: 200 }));
    const client = new ApiClient("http://127.0.0.1:9999");
    await client.meta();
    expect(spy).toHaveBeenCalledWith("http://127.0.0.1:9999/api/meta");
  });
});
