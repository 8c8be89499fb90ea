/** Hash-based routes so deep links work from a statically served bundle.
 * Node ids may contain slashes (URLs are common ids), hence the encoding. */

export type Route =
  | { kind: "home" }
  | { kind: "node"; id: string }
  | { kind: "edge"; id: string }
  | { kind: "search"; q: string };

export function parseHash(hash: string): Route {
  const raw = hash.startsWith("#") ? hash.slice(1) : hash;
  if (raw.startsWith("/node/")) {
    return { kind: "node", id: decodeURIComponent(raw.slice("/node/".length)) };
  }
  if (raw.startsWith("/edge/")) {
    return { kind: "edge", id: decodeURIComponent(raw.slice("/edge/".length)) };
  }
  if (raw.startsWith("/search")) {
    const queryStart = raw.indexOf("?");
    const params = new URLSearchParams(queryStart >= 0 ? raw.slice(queryStart + 1) : "");
    return { kind: "search", q: params.get("q") ?? "" };
  }
  return { kind: "home" };
}

export function routeHash(route: Route): string {
  switch (route.kind) {
    case "home":
      return "#/";
    case "node":
      return `#/node/${encodeURIComponent(route.id)}`;
    case "edge":
      return `#/edge/${encodeURIComponent(route.id)}`;
    case "search":
      return `#/search?q=${encodeURIComponent(route.q)}`;
  }
}
