import type { NodeRef, StateDocument } from "./types.js";

export type ConnectionStatus = "connecting" | "live" | "lost";

export interface ChatLine {
  who: "you" | "guide";
  text: string;
}

/**
 * Client-side mirror of one gateway session. Never authoritative: options
 * and scene data always come from the latest snapshot, chat lines from the
 * replies we actually received. The one rule that must hold is that the
 * chips the user can click are exactly the snapshot's pending options.
 */
export class ViewModel {
  snapshot: StateDocument | null = null;
  chat: ChatLine[] = [];
  status: ConnectionStatus = "connecting";
  busy = false; // a query or selection is in flight

  private revision = 0;
  private lastSerialized = "";

  /** Options to render as chips. Always the snapshot's, capped at two. */
  get options(): NodeRef[] {
    if (!this.snapshot) return [];
    return this.snapshot.options.slice(0, 2);
  }

  /** Monotone counter, bumped only when the snapshot actually changed. */
  get sceneRevision(): number {
    return this.revision;
  }

  /** Returns true when the snapshot differs from the previous one. */
  applySnapshot(state: StateDocument): boolean {
    const serialized = JSON.stringify(state);
    this.status = "live";
    if (serialized === this.lastSerialized) {
      return false;
    }
    this.lastSerialized = serialized;
    this.snapshot = state;
    this.revision += 1;
    return true;
  }

  connectionLost(): void {
    this.status = "lost";
  }

  say(who: ChatLine["who"], text: string): void {
    if (text) this.chat.push({ who, text });
  }
}
