/**
 * Coalesces pointer events into engine touch frames.
 *
 * Positions are normalized to the capture surface; timestamps are integer
 * milliseconds, strictly increasing (a requirement of the engine). While
 * any pointer is down, keepalive frames go out at the scan interval so
 * dwell timers advance even when nothing moves. The DOM wiring lives in
 * `attachPointerCapture`; the class itself is plain data in, frames out.
 */
import type { FrameRecord, TouchPointData } from "./protocol.js";

export interface PointerSample {
  pointerId: number;
  x: number; // normalized 0..1
  y: number;
}

export type FrameSink = (frame: FrameRecord) => void;

export class TouchFrameBuilder {
  private held = new Map<number, TouchPointData>();
  private lastT = 0;
  private origin: number | null = null;

  constructor(private readonly sink: FrameSink) {}

  get activePointers(): number {
    return this.held.size;
  }

  private stamp(nowMs: number): number {
    if (this.origin === null) {
      this.origin = nowMs;
    }
    let t = Math.round(nowMs - this.origin) + 1;
    if (t <= this.lastT) {
      t = this.lastT + 1;
    }
    this.lastT = t;
    return t;
  }

  /** Monotone timestamp for non-touch records (speech commands). */
  stampNow(nowMs: number): number {
    return this.stamp(nowMs);
  }

  down(sample: PointerSample, nowMs: number): void {
    this.held.set(sample.pointerId, {
      pid: sample.pointerId,
      x: clamp01(sample.x),
      y: clamp01(sample.y),
    });
    this.emit(nowMs);
  }

  move(sample: PointerSample, nowMs: number): void {
    if (!this.held.has(sample.pointerId)) return;
    this.held.set(sample.pointerId, {
      pid: sample.pointerId,
      x: clamp01(sample.x),
      y: clamp01(sample.y),
    });
    this.emit(nowMs);
  }

  up(pointerId: number, nowMs: number): void {
    if (!this.held.delete(pointerId)) return;
    this.emit(nowMs);
  }

  /** Keepalive; emits only while pointers are held. */
  tick(nowMs: number): void {
    if (this.held.size > 0) {
      this.emit(nowMs);
    }
  }

  private emit(nowMs: number): void {
    const touches = [...this.held.values()].sort((a, b) => a.pid - b.pid);
    this.sink({ type: "frame", t: this.stamp(nowMs), touches });
  }
}

function clamp01(v: number): number {
  return Math.min(Math.max(v, 0), 1);
}

export interface CaptureHandle {
  stop(): void;
  builder: TouchFrameBuilder;
}

/** Wire a builder to an element's pointer events at the given scan rate. */
export function attachPointerCapture(
  element: HTMLElement,
  sink: FrameSink,
  scanIntervalMs = 16,
): CaptureHandle {
  const builder = new TouchFrameBuilder(sink);

  const normalize = (ev: PointerEvent): PointerSample => {
    const rect = element.getBoundingClientRect();
    return {
      pointerId: ev.pointerId,
      x: (ev.clientX - rect.left) / rect.width,
      y: (ev.clientY - rect.top) / rect.height,
    };
  };

  const onDown = (ev: PointerEvent) => {
    element.setPointerCapture(ev.pointerId);
    builder.down(normalize(ev), performance.now());
    ev.preventDefault();
  };
  const onMove = (ev: PointerEvent) => {
    builder.move(normalize(ev), performance.now());
  };
  const onUp = (ev: PointerEvent) => {
    builder.up(ev.pointerId, performance.now());
  };

  element.addEventListener("pointerdown", onDown);
  element.addEventListener("pointermove", onMove);
  element.addEventListener("pointerup", onUp);
  element.addEventListener("pointercancel", onUp);
  const timer = setInterval(() => builder.tick(performance.now()), scanIntervalMs);

  return {
    builder,
    stop() {
      clearInterval(timer);
      element.removeEventListener("pointerdown", onDown);
      element.removeEventListener("pointermove", onMove);
      element.removeEventListener("pointerup", onUp);
      element.removeEventListener("pointercancel", onUp);
    },
  };
}
