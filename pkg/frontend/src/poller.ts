import type { GatewayClient } from "./api.js";
import type { StateDocument } from "./types.js";
import type { ViewModel } from "./viewmodel.js";

export const POLL_INTERVAL_MS = 500;
const BACKOFF_CAP_MS = 8000;

/**
 * Polls GET state on a fixed interval and feeds the view model. On request
 * failure the status flips to "lost" and the interval backs off (doubling,
 * capped); the first successful poll restores it.
 */
export class Poller {
  private timer: ReturnType<typeof setTimeout> | null = null;
  private stopped = false;
  private delay = POLL_INTERVAL_MS;

  constructor(
    private client: GatewayClient,
    private sessionId: string,
    private vm: ViewModel,
    private onUpdate: (state: StateDocument) => void,
  ) {}

  start(): void {
    this.stopped = false;
    void this.tick();
  }

  stop(): void {
    this.stopped = true;
    if (this.timer !== null) clearTimeout(this.timer);
    this.timer = null;
  }

  private async tick(): Promise<void> {
    if (this.stopped) return;
    try {
      const state = await this.client.state(this.sessionId);
      this.delay = POLL_INTERVAL_MS;
      if (this.vm.applySnapshot(state)) {
        this.onUpdate(state);
      }
    } catch {
      this.vm.connectionLost();
      this.delay = Math.min(this.delay * 2, BACKOFF_CAP_MS);
    }
    if (!this.stopped) {
      this.timer = setTimeout(() => void this.tick(), this.delay);
    }
  }
}
