/** The navigation trail: every view visited this session, capped, rendered
 * as clickable breadcrumbs. Append-only except when the user jumps back via
 * a breadcrumb, which truncates everything after it. */

export type TrailKind = "node" | "edge";

export interface TrailItem {
  kind: TrailKind;
  id: string;
  label: string;
}

export const TRAIL_CAP = 50;

export class NavigationTrail {
  private entries: TrailItem[] = [];

  constructor(private readonly cap: number = TRAIL_CAP) {}

  get items(): readonly TrailItem[] {
    return this.entries;
  }

  /** Append a visited item; reloading the current view is a no-op. */
  visit(item: TrailItem): void {
    const last = this.entries[this.entries.length - 1];
    if (last && last.kind === item.kind && last.id === item.id) {
      return;
    }
    this.entries.push(item);
    while (this.entries.length > this.cap) {
      this.entries.shift(); // evict oldest
    }
  }

  /** Back-navigation: keep entries up to and including `index`. */
  truncateTo(index: number): TrailItem | undefined {
    if (index < 0 || index >= this.entries.length) {
      return undefined;
    }
    this.entries = this.entries.slice(0, index + 1);
    return this.entries[index];
  }

  clear(): void {
    this.entries = [];
  }
}
