/**
 * Wire types and serialization shared with the engine.
 *
 * The trace text format must match the engine byte for byte so sessions
 * recorded here replay headlessly to identical logs:
 *
 *     t=<ms> touches=[(pid,x,y);(pid,x,y);...]
 *     t=<ms> speech="<command text>"
 */

export interface TouchPointData {
  pid: number;
  x: number;
  y: number;
}

export interface FrameRecord {
  type: "frame";
  t: number;
  touches: TouchPointData[];
}

export interface SpeechRecord {
  type: "speech";
  t: number;
  text: string;
}

export type TraceRecord = FrameRecord | SpeechRecord;

export interface InteractionEventData {
  kind: string;
  t: number;
  pointer: number | null;
  [field: string]: unknown;
}

export interface AudioEventData {
  kind: string;
  t: number;
  pointer: number | null;
  element: string | null;
  freq?: number;
  duration_ms?: number | null;
  volume?: number | null;
  on?: boolean;
  text?: string;
  interruptible?: boolean;
}

export interface FilterStateData {
  active: boolean;
  attribute: string;
  value: string;
  passing: string[];
  passing_links: string[];
}

export interface SearchTargetData {
  kind: string;
  id: string;
  x: number;
  y: number;
}

export interface EngineStateData {
  listening: boolean;
  filter: FilterStateData;
  search_target: SearchTargetData | null;
}

export interface EventsMessage {
  type: "events";
  t: number;
  interaction: InteractionEventData[];
  audio: AudioEventData[];
  state: EngineStateData;
}

export interface ErrorMessage {
  type: "error";
  error: string;
  message: string;
}

export type ServerMessage = EventsMessage | ErrorMessage;

export interface DiagramNodeData {
  id: string;
  label: string;
  x: number;
  y: number;
  radius: number;
  attributes: [string, string][];
}

export interface DiagramLinkData {
  id: string;
  source: string;
  target: string;
  label: string;
  attributes: [string, string][];
}

export interface DiagramData {
  title: string;
  alt_text: string;
  warnings: string[];
  nodes: DiagramNodeData[];
  links: DiagramLinkData[];
}

/** Six-decimal fixed formatting, matching the engine's float fields. */
export function f6(value: number): string {
  const formatted = value.toFixed(6);
  return formatted === "-0.000000" ? "0.000000" : formatted;
}

export function frameToLine(record: FrameRecord): string {
  const touches = record.touches
    .map((tp) => `(${tp.pid},${f6(tp.x)},${f6(tp.y)})`)
    .join(";");
  return `t=${record.t} touches=[${touches}]`;
}

export function speechToLine(record: SpeechRecord): string {
  const escaped = record.text.replace(/\\/g, "\\\\").replace(/"/g, '\\"');
  return `t=${record.t} speech="${escaped}"`;
}

export function recordToLine(record: TraceRecord): string {
  return record.type === "frame" ? frameToLine(record) : speechToLine(record);
}

export function serializeTrace(records: TraceRecord[]): string {
  return records.map((record) => recordToLine(record) + "\n").join("");
}

/** Parse one `t=.. ev kind=..` line from a session log. */
export function parseEventLine(line: string): InteractionEventData | null {
  const parts = line.split(" ");
  if (parts.length < 3 || parts[1] !== "ev") {
    return null;
  }
  const out: InteractionEventData = { kind: "", t: 0, pointer: null };
  out.t = Number(parts[0]!.slice(2));
  for (const part of parts.slice(2)) {
    const eq = part.indexOf("=");
    if (eq < 0) continue;
    const key = part.slice(0, eq);
    const raw = part.slice(eq + 1);
    if (key === "kind") out.kind = raw;
    else if (key === "pointer") out.pointer = Number(raw);
    else out[key] = raw;
  }
  return out;
}

export function eventKindsInLog(logText: string): string[] {
  const kinds: string[] = [];
  for (const line of logText.split("\n")) {
    const parsed = parseEventLine(line);
    if (parsed) kinds.push(parsed.kind);
  }
  return kinds;
}
