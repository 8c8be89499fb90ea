/** Live checks against the real service on the committed 20-node fixture:
 * deep links render fully, hops update the trail, and a crawl of every
 * rendered link resolves with zero 404s. */

import { spawn, type ChildProcess } from "node:child_process";
import { fileURLToPath } from "node:url";
import path from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";
import { renderEdge, renderNode, renderSearch } from "../src/render.js";
import { parseHash } from "../src/router.js";
import { NavigationTrail } from "../src/trail.js";

const PORT = 8942;
const BASE = `http://127.0.0.1:${PORT}`;
const FIXTURE = path.join(path.dirname(fileURLToPath(import.meta.url)), "fixture", "hot.json");

let server: ChildProcess;
const api = new ApiClient(BASE);

async function waitForServer(): Promise<void> {
  for (let attempt = 0; attempt < 60; attempt++) {
    try {
      await api.meta();
      return;
    } catch {
      await new Promise((resolve) => setTimeout(resolve, 400));
    }
  }
  throw new Error("service did not come up on " + BASE);
}

beforeAll(async () => {
  server = spawn("hotnav", ["serve", FIXTURE, "--host", "127.0.0.1", "--port", String(PORT)], {
    stdio: "ignore",
  });
  await waitForServer();
}, 30_000);

afterAll(() => {
  server?.kill();
});

function extractLinks(html: string): { kind: "node" | "edge"; id: string }[] {
  const out: { kind: "node" | "edge"; id: string }[] = [];
  for (const match of html.matchAll(/href="(#\/(?:node|edge)\/[^"]+)"/g)) {
    const route = parseHash(match[1]!);
    if (route.kind === "node" || route.kind === "edge") {
      out.push({ kind: route.kind, id: route.id });
    }
  }
  return out;
}

describe("served fixture", () => {
  it("deep-linking a node renders its text and all its hyperedges", async () => {
    const node = await api.node("doc-01");
    const html = renderNode(node);
    expect(html).toContain("Glacier survey expands");
    expect(node.hyperedges.length).toBeGreaterThan(0);
    for (const edge of node.hyperedges) {
      expect(html).toContain(`href="#/edge/${encodeURIComponent(edge.id)}"`);
    }
  });

  it("hopping node -> edge -> node extends the trail", async () => {
    const trail = new NavigationTrail();
    const node = await api.node("doc-01");
    trail.visit({ kind: "node", id: node.id, label: node.title });
    const edgeRef = node.hyperedges[0]!;
    const edge = await api.edge(edgeRef.id);
    trail.visit({ kind: "edge", id: edge.id, label: edge.label });
    const other = edge.members.find((m) => m.id !== node.id)!;
    const next = await api.node(other.id);
    trail.visit({ kind: "node", id: next.id, label: next.title });
    expect(trail.items.map((i) => i.kind)).toEqual(["node", "edge", "node"]);
    expect(trail.items[2]!.id).not.toBe(trail.items[0]!.id);
  });

  it("unknown ids produce the 404 the UI maps to its not-found state", async () => {
    const error = await api.node("no-such-doc").catch((e) => e);
    expect(error).toBeInstanceOf(ApiError);
    expect(error.status).toBe(404);
  });

  it("a crawl of every rendered link resolves with zero 404s", async () => {
    const meta = await api.meta();
    const everything = await api.search("", 10_000);
    expect(everything.nodes.length).toBe(meta.node_count);
    expect(everything.edges.length).toBe(meta.edge_count);

    const pending: { kind: "node" | "edge"; id: string }[] = [
      ...extractLinks(renderSearch(everything)),
    ];
    const seen = new Set<string>();
    const misses: string[] = [];
    while (pending.length > 0) {
      const link = pending.pop()!;
      const key = `${link.kind}:${link.id}`;
      if (seen.has(key)) continue;
      seen.add(key);
      try {
        const html =
          link.kind === "node"
            ? renderNode(await api.node(link.id))
            : renderEdge(await api.edge(link.id), 0);
        pending.push(...extractLinks(html));
      } catch (err) {
        misses.push(`${key} -> ${String(err)}`);
      }
    }
    expect(misses).toEqual([]);
    // the crawl reached the whole fixture
    const nodesSeen = [...seen].filter((k) => k.startsWith("node:")).length;
    expect(nodesSeen).toBe(meta.node_count);
  }, 30_000);
});
