import { KeyEvent } from './keymap.js';

// Client-driven key repeat: browser autorepeat is ignored and a fixed
// interval timer re-emits the held key instead, so the rotation rate does
// not depend on OS keyboard settings.

export const MIN_REPEAT_MS = 16;

export interface RepeatTimers {
  set(fn: () => void, ms: number): ReturnType<typeof setInterval>;
  clear(id: ReturnType<typeof setInterval>): void;
}

const defaultTimers: RepeatTimers = {
  set: (fn, ms) => setInterval(fn, ms),
  clear: (id) => clearInterval(id),
};

export class KeyRepeater {
  private code: string | null = null;
  private timer: ReturnType<typeof setInterval> | null = null;

  constructor(
    private emit: (ev: KeyEvent) => void,
    private intervalMs: number = 30,
    private timers: RepeatTimers = defaultTimers,
  ) {
    if (!(intervalMs >= MIN_REPEAT_MS)) {
      throw new RangeError(`repeat interval must be >= ${MIN_REPEAT_MS} ms, got ${intervalMs}`);
    }
  }

  // Keydown entry point: emits once straight away, then at the repeat
  // interval until release(code).  A repeated press of the held code is
  // browser autorepeat and is ignored; a different code takes over.
  press(code: string, ev: KeyEvent): void {
    if (code === this.code) {
      return;
    }
    this.stop();
    this.code = code;
    this.emit(ev);
    this.timer = this.timers.set(() => this.emit(ev), this.intervalMs);
  }

  // Release matches on the physical code, not the symbol: letting go of
  // Shift before the digit must still stop the stream.
  release(code: string): void {
    if (code === this.code) {
      this.stop();
    }
  }

  stop(): void {
    if (this.timer !== null) {
      this.timers.clear(this.timer);
      this.timer = null;
    }
    this.code = null;
  }
}
