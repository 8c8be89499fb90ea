import { describe, expect, it } from "vitest";

import { parseHash, routeHash, type Route } from "../src/router.js";

describe("router", () => {
  it("round-trips node and edge routes", () => {
    const routes: Route[] = [
      { kind: "node", id: "doc-01" },
      { kind: "edge", id: "glacier" },
      { kind: "search", q: "harbor walls" },
      { kind: "home" },
    ];
    for (const route of routes) {
      expect(parseHash(routeHash(route))).toEqual(route);
    }
  });

  it("survives ids containing slashes and spaces", () => {
    const id = "https://example.org/articles/2024?x=1 b";
    const hash = routeHash({ kind: "node", id });
    expect(hash).not.toContain(" ");
    expect(parseHash(hash)).toEqual({ kind: "node", id });
  });

  it("unknown hashes fall back to home", () => {
    expect(parseHash("")).toEqual({ kind: "home" });
    expect(parseHash("#/")).toEqual({ kind: "home" });
    expect(parseHash("#/bogus/route")).toEqual({ kind: "home" });
  });

  it("search without a query is empty", () => {
    expect(parseHash("#/search")).toEqual({ kind: "search", q: "" });
  });
});
