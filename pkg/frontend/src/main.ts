/** DOM wiring: routes hash changes to API calls and renderers. Only this
 * module touches the document; stale responses from superseded navigations
 * are discarded via a request token. */

import { ApiClient, ApiError, type EdgeView } from "./api.js";
import { parseHash, routeHash, type Route } from "./router.js";
import * as render from "./render.js";
import { NavigationTrail } from "./trail.js";

const api = new ApiClient();
const trail = new NavigationTrail();

const content = document.getElementById("content") as HTMLElement;
const crumbs = document.getElementById("breadcrumbs") as HTMLElement;
const searchForm = document.getElementById("search-form") as HTMLFormElement;
const searchInput = document.getElementById("search-input") as HTMLInputElement;

let requestToken = 0;
let currentRoute: Route = { kind: "home" };
let currentEdge: EdgeView | null = null;

function redrawCrumbs(): void {
  crumbs.innerHTML = render.renderBreadcrumbs(trail.items);
}

async function show(route: Route): Promise<void> {
  currentRoute = route;
  currentEdge = null;
  const token = ++requestToken;
  content.innerHTML = render.renderLoading();
  try {
    if (route.kind === "node") {
      const node = await api.node(route.id);
      if (token !== requestToken) return; // superseded navigation
      content.innerHTML = render.renderNode(node);
      trail.visit({ kind: "node", id: node.id, label: node.title });
      redrawCrumbs();
    } else if (route.kind === "edge") {
      const edge = await api.edge(route.id);
      if (token !== requestToken) return;
      currentEdge = edge;
      content.innerHTML = render.renderEdge(edge, 0);
      trail.visit({ kind: "edge", id: edge.id, label: edge.label });
      redrawCrumbs();
    } else if (route.kind === "search") {
      const results = await api.search(route.q);
      if (token !== requestToken) return;
      content.innerHTML = render.renderSearch(results);
    } else {
      const meta = await api.meta();
      if (token !== requestToken) return;
      document.title = `${meta.label} · hotnav`;
      content.innerHTML = render.renderHome(meta);
    }
  } catch (err) {
    if (token !== requestToken) return;
    if (err instanceof ApiError && err.status === 404 && (route.kind === "node" || route.kind === "edge")) {
      content.innerHTML = render.renderNotFound(route.kind, route.id); // trail unchanged
    } else {
      content.innerHTML = render.renderError(err instanceof Error ? err.message : String(err));
    }
  }
}

searchForm.addEventListener("submit", (event) => {
  event.preventDefault();
  const q = searchInput.value.trim();
  if (q) {
    window.location.hash = routeHash({ kind: "search", q });
  }
});

crumbs.addEventListener("click", (event) => {
  const target = (event.target as HTMLElement).closest("[data-trail-index]");
  if (!(target instanceof HTMLAnchorElement)) return;
  const index = Number(target.dataset.trailIndex);
  trail.truncateTo(index);
  redrawCrumbs();
  // the anchor's href drives the actual navigation via hashchange
});

content.addEventListener("click", (event) => {
  const element = event.target as HTMLElement;
  const pageButton = element.closest("[data-page]");
  if (pageButton instanceof HTMLButtonElement && currentEdge) {
    content.innerHTML = render.renderEdge(currentEdge, Number(pageButton.dataset.page));
    return;
  }
  if (element.closest("[data-retry]")) {
    void show(currentRoute);
  }
});

window.addEventListener("hashchange", () => {
  void show(parseHash(window.location.hash));
});

void show(parseHash(window.location.hash));
