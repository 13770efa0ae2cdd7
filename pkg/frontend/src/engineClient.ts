/**
 * Thin WebSocket client to the engine bridge: frames and speech out,
 * interaction/audio events and engine state in.
 */
import type {
  DiagramData,
  EventsMessage,
  FrameRecord,
  ServerMessage,
} from "./protocol.js";

export class EngineClient {
  private ws: WebSocket | null = null;
  onEvents: ((message: EventsMessage) => void) | null = null;
  onError: ((error: string, message: string) => void) | null = null;

  async connect(url: string): Promise<void> {
    await new Promise<void>((resolve, reject) => {
      const ws = new WebSocket(url);
      ws.onopen = () => {
        this.ws = ws;
        resolve();
      };
      ws.onerror = () => reject(new Error(`cannot reach engine at ${url}`));
      ws.onmessage = (raw) => {
        const message = JSON.parse(raw.data as string) as ServerMessage;
        if (message.type === "events") {
          this.onEvents?.(message);
        } else {
          this.onError?.(message.error, message.message);
        }
      };
    });
  }

  sendFrame(frame: FrameRecord): void {
    this.ws?.send(
      JSON.stringify({
        type: "frame",
        t: frame.t,
        touches: frame.touches.map((tp) => [tp.pid, tp.x, tp.y]),
      }),
    );
  }

  sendSpeech(t: number, text: string): void {
    this.ws?.send(JSON.stringify({ type: "speech", t, text }));
  }
}

export async function fetchDiagram(base = ""): Promise<DiagramData> {
  const response = await fetch(`${base}/api/diagram`);
  if (!response.ok) {
    throw new Error(`diagram fetch failed: ${response.status}`);
  }
  return (await response.json()) as DiagramData;
}
