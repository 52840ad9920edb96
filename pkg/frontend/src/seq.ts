// Request sequencing for the what-if loop.
//
// Each panel keeps at most one in-flight expensive request; anything the
// user supersedes before the response lands is discarded by sequence
// number rather than cancelled, since the server is stateless and cheap
// to abandon.

export interface GateOutcome<T> {
  /** False when a newer call superseded this one before it settled. */
  current: boolean;
  value?: T;
  error?: unknown;
}

export class LatestGate {
  private seq = 0;
  private inFlight = 0;

  /** True while any call started through this gate has not settled. */
  get busy(): boolean {
    return this.inFlight > 0;
  }

  /**
   * Run one async producer; the result is marked stale if a newer run
   * started in the meantime. Callers apply `value` only when `current`.
   */
  async run<T>(producer: () => Promise<T>): Promise<GateOutcome<T>> {
    const ticket = ++this.seq;
    this.inFlight++;
    try {
      const value = await producer();
      return { current: ticket === this.seq, value };
    } catch (error) {
      return { current: ticket === this.seq, error };
    } finally {
      this.inFlight--;
    }
  }

  /** Invalidate whatever is in flight without starting a new run. */
  supersede(): void {
    this.seq++;
  }
}

export interface Debounced<A extends unknown[]> {
  (...args: A): void;
  /** Run immediately with the most recent arguments, if any are pending. */
  flush(): void;
  cancel(): void;
}

/**
 * Trailing-edge debounce. `flush` exists so slider release can skip the
 * wait: drag events coalesce, the release applies at once.
 */
export function debounce<A extends unknown[]>(fn: (...args: A) => void, waitMs: number): Debounced<A> {
  let timer: ReturnType<typeof setTimeout> | null = null;
  let pending: A | null = null;

  const debounced = (...args: A) => {
    pending = args;
    if (timer !== null) clearTimeout(timer);
    timer = setTimeout(() => {
      timer = null;
      const args2 = pending;
      pending = null;
      if (args2) fn(...args2);
    }, waitMs);
  };
  debounced.flush = () => {
    if (timer !== null) {
      clearTimeout(timer);
      timer = null;
    }
    if (pending) {
      const args = pending;
      pending = null;
      fn(...args);
    }
  };
  debounced.cancel = () => {
    if (timer !== null) clearTimeout(timer);
    timer = null;
    pending = null;
  };
  return debounced;
}
