import { describe, expect, it } from "vitest";

import type { EdgeView, MemberRef, NodeView, SearchResults } from "../src/api.js";
import {
  EDGE_PAGE_SIZE,
  renderBreadcrumbs,
  renderEdge,
  renderNode,
  renderSearch,
  snippet,
} from "../src/render.js";

const member = (n: number): MemberRef => ({
  id: `doc-${n}`,
  title: `Document ${n}`,
  snippet: `Body of document ${n}.`,
});

describe("snippet", () => {
  it("keeps short text intact", () => {
    expect(snippet("short text")).toBe("short text");
  });

  it("truncates at a word boundary at 240 chars", () => {
    const text = Array.from({ length: 60 }, (_, i) => `word${i}`).join(" ");
    const out = snippet(text);
    expect(out.length).toBeLessThanOrEqual(241);
    expect(out.endsWith("…")).toBe(true);
    expect(out.slice(0, -1).trimEnd()).toBe(out.slice(0, -1)); // no dangling partial gap
    const lastWord = out.slice(0, -1).split(" ").pop()!;
    expect(text.split(" ")).toContain(lastWord); // nothing cut mid-word
  });

  it("collapses whitespace", () => {
    expect(snippet("a\n  b\t c")).toBe("a b c");
  });
});

describe("renderNode", () => {
  const node: NodeView = {
    id: "doc-1",
    title: "Glacier survey expands",
    text: "Glacier survey expands\nTeams mapped the edge.",
    hyperedges: [
      { id: "glacier", label: "glacier", size: 4 },
      { id: "survey", label: "survey", size: 2 },
    ],
  };

  it("renders title, text and a chip per hyperedge", () => {
    const html = renderNode(node);
    expect(html).toContain("Glacier survey expands");
    expect(html).toContain("Teams mapped the edge.");
    expect(html).toContain('href="#/edge/glacier"');
    expect(html).toContain('href="#/edge/survey"');
  });

  it("isolated nodes get an empty state", () => {
    const html = renderNode({ ...node, hyperedges: [] });
    expect(html).toContain("no hyperedge");
    expect(html).not.toContain("#/edge/");
  });

  it("escapes markup in payloads", () => {
    const html = renderNode({ ...node, text: "<script>alert(1)</script>" });
    expect(html).not.toContain("<script>");
    expect(html).toContain("&lt;script&gt;");
  });
});

describe("renderEdge", () => {
  it("small edges render every member without a pager", () => {
    const edge: EdgeView = { id: "t", label: "topic", members: [member(1), member(2)] };
    const html = renderEdge(edge);
    expect(html).toContain('href="#/node/doc-1"');
    expect(html).toContain('href="#/node/doc-2"');
    expect(html).not.toContain("data-page");
  });

  it("an edge of 40 members paginates", () => {
    const edge: EdgeView = {
      id: "big",
      label: "big topic",
      members: Array.from({ length: 40 }, (_, i) => member(i)),
    };
    const page0 = renderEdge(edge, 0);
    expect(page0).toContain("data-page");
    expect(page0).toContain('href="#/node/doc-0"');
    expect(page0).not.toContain(`href="#/node/doc-${EDGE_PAGE_SIZE}"`);
    const page1 = renderEdge(edge, 1);
    expect(page1).toContain(`href="#/node/doc-${EDGE_PAGE_SIZE}"`);
    expect(page1).not.toContain('href="#/node/doc-0"');
  });

  it("out-of-range pages clamp", () => {
    const edge: EdgeView = { id: "t", label: "topic", members: [member(1)] };
    expect(renderEdge(edge, 99)).toContain('href="#/node/doc-1"');
  });
});

describe("renderSearch", () => {
  it("groups edges and documents", () => {
    const results: SearchResults = {
      query: "gla",
      edges: [{ id: "glacier", label: "glacier", size: 4 }],
      nodes: [member(3)],
    };
    const html = renderSearch(results);
    expect(html).toContain("Hyperedges");
    expect(html).toContain("Documents");
    expect(html.indexOf("Hyperedges")).toBeLessThan(html.indexOf("Documents"));
  });

  it("no matches renders the empty state", () => {
    const html = renderSearch({ query: "zzz", edges: [], nodes: [] });
    expect(html).toContain("No matches");
  });
});

describe("renderBreadcrumbs", () => {
  it("renders one link per trail item with its index", () => {
    const html = renderBreadcrumbs([
      { kind: "node", id: "doc-1", label: "Document 1" },
      { kind: "edge", id: "glacier", label: "glacier" },
    ]);
    expect(html).toContain('data-trail-index="0"');
    expect(html).toContain('data-trail-index="1"');
    expect(html).toContain('href="#/node/doc-1"');
    expect(html).toContain('href="#/edge/glacier"');
  });

  it("empty trail renders nothing", () => {
    expect(renderBreadcrumbs([])).toBe("");
  });
});
