/**
 * Session recording: every frame and speech command sent to the engine,
 * serialized in the trace format for headless replay.
 */
import {
  FrameRecord,
  SpeechRecord,
  TraceRecord,
  serializeTrace,
} from "./protocol.js";

export class SessionRecorder {
  private records: TraceRecord[] = [];
  recording = false;

  start(): void {
    this.records = [];
    this.recording = true;
  }

  stop(): void {
    this.recording = false;
  }

  addFrame(frame: FrameRecord): void {
    if (this.recording) this.records.push(frame);
  }

  addSpeech(record: SpeechRecord): void {
    if (this.recording) this.records.push(record);
  }

  get length(): number {
    return this.records.length;
  }

  toTraceText(): string {
    return serializeTrace(this.records);
  }
}
