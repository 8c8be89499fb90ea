/** Pure view renderers: every function maps API data to an HTML string, so
 * the whole UI is a function of (API responses, trail, route). */

import type { EdgeRef, EdgeView, MemberRef, Meta, NodeView, SearchResults } from "./api.js";
import { routeHash } from "./router.js";
import type { TrailItem } from "./trail.js";

export const SNIPPET_CHARS = 240;
export const EDGE_PAGE_SIZE = 20;

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

/** Truncate at a word boundary, 240 characters by default. */
export function snippet(text: string, limit: number = SNIPPET_CHARS): string {
  const clean = text.replace(/\s+/g, " ").trim();
  if (clean.length <= limit) {
    return clean;
  }
  const cut = clean.slice(0, limit);
  const space = cut.lastIndexOf(" ");
  return (space > 0 ? cut.slice(0, space) : cut) + "…";
}

function nodeHref(id: string): string {
  return routeHash({ kind: "node", id });
}

function edgeHref(id: string): string {
  return routeHash({ kind: "edge", id });
}

function edgeChip(edge: EdgeRef): string {
  return (
    `<a class="chip" href="${edgeHref(edge.id)}">` +
    `${escapeHtml(edge.label)} <span class="chip-size">${edge.size}</span></a>`
  );
}

function memberRow(member: MemberRef): string {
  const body = member.snippet ? `<p class="snippet">${escapeHtml(snippet(member.snippet))}</p>` : "";
  return (
    `<li class="member"><a href="${nodeHref(member.id)}">${escapeHtml(member.title)}</a>` +
    body +
    `</li>`
  );
}

export function renderBreadcrumbs(items: readonly TrailItem[]): string {
  if (items.length === 0) {
    return "";
  }
  const crumbs = items.map((item, i) => {
    const href = routeHash(item.kind === "node" ? { kind: "node", id: item.id } : { kind: "edge", id: item.id });
    return (
      `<a class="crumb crumb-${item.kind}" data-trail-index="${i}" href="${href}">` +
      `${escapeHtml(item.label)}</a>`
    );
  });
  return crumbs.join('<span class="crumb-sep">›</span>');
}

export function renderHome(meta: Meta): string {
  return (
    `<section class="home"><h2>${escapeHtml(meta.label)}</h2>` +
    `<p>${meta.node_count} documents connected by ${meta.edge_count} hyperedges.</p>` +
    `<p>Search above, or jump to a random-looking place and start hopping:` +
    ` document → topic → document.</p></section>`
  );
}

export function renderNode(node: NodeView): string {
  const chips = node.hyperedges.length
    ? `<div class="chips">${node.hyperedges.map(edgeChip).join("")}</div>`
    : `<p class="empty">This document is in no hyperedge; nothing links here yet.</p>`;
  return (
    `<article class="node-view"><h2>${escapeHtml(node.title)}</h2>` +
    `<h3>Hyperedges</h3>${chips}` +
    `<h3>Text</h3><pre class="doc-text">${escapeHtml(node.text)}</pre></article>`
  );
}

export function renderEdge(edge: EdgeView, page = 0): string {
  const pages = Math.max(1, Math.ceil(edge.members.length / EDGE_PAGE_SIZE));
  const current = Math.min(Math.max(page, 0), pages - 1);
  const start = current * EDGE_PAGE_SIZE;
  const visible = edge.members.slice(start, start + EDGE_PAGE_SIZE);
  const rows = visible.map(memberRow).join("");
  let pager = "";
  if (pages > 1) {
    const buttons = [];
    for (let p = 0; p < pages; p++) {
      const cls = p === current ? "page-btn current" : "page-btn";
      buttons.push(`<button class="${cls}" data-page="${p}">${p + 1}</button>`);
    }
    pager = `<nav class="pager">${buttons.join("")}</nav>`;
  }
  return (
    `<article class="edge-view"><h2>${escapeHtml(edge.label)}</h2>` +
    `<p class="edge-size">${edge.members.length} member document(s)</p>` +
    `<ul class="members">${rows}</ul>${pager}</article>`
  );
}

export function renderSearch(results: SearchResults): string {
  if (results.edges.length === 0 && results.nodes.length === 0) {
    return `<section class="search-view"><p class="empty">No matches for “${escapeHtml(results.query)}”.</p></section>`;
  }
  const edges = results.edges.length
    ? `<h3>Hyperedges</h3><div class="chips">${results.edges.map(edgeChip).join("")}</div>`
    : "";
  const nodes = results.nodes.length
    ? `<h3>Documents</h3><ul class="members">${results.nodes.map(memberRow).join("")}</ul>`
    : "";
  return `<section class="search-view">${edges}${nodes}</section>`;
}

export function renderNotFound(kind: "node" | "edge", id: string): string {
  const noun = kind === "node" ? "document" : "hyperedge";
  return `<section class="not-found"><p>No ${noun} with id <code>${escapeHtml(id)}</code>.</p></section>`;
}

export function renderError(message: string): string {
  return (
    `<section class="error-banner"><p>Request failed: ${escapeHtml(message)}</p>` +
    `<button data-retry>Retry</button></section>`
  );
}

export function renderLoading(): string {
  return `<p class="loading">Loading…</p>`;
}
