/**
 * App wiring: diagram in, touches out, sound and mirror back.
 *
 * Audio requires a user gesture to start; the first pointer contact (or
 * the start button) unlocks the context. Sessions can be recorded and
 * downloaded as trace files that replay headlessly through the CLI.
 */
import { AudioRenderer, platformSpeech } from "./audio.js";
import { attachPointerCapture } from "./capture.js";
import { attachCommandBar } from "./commandBar.js";
import { EngineClient, fetchDiagram } from "./engineClient.js";
import { MirrorState, drawMirror } from "./mirror.js";
import type { DiagramData, EventsMessage, FrameRecord } from "./protocol.js";
import { SessionRecorder } from "./recorder.js";

function el<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (!found) throw new Error(`missing #${id}`);
  return found as T;
}

async function start(): Promise<void> {
  const canvas = el<HTMLCanvasElement>("mirror");
  const captions = el<HTMLDivElement>("captions");
  const status = el<HTMLSpanElement>("status");
  const recordButton = el<HTMLButtonElement>("record");
  const commandForm = el<HTMLFormElement>("command-form");
  const commandInput = el<HTMLInputElement>("command-input");

  const diagram: DiagramData = await fetchDiagram();
  document.title = `sonigraph: ${diagram.title || "diagram"}`;

  const client = new EngineClient();
  const scheme = location.protocol === "https:" ? "wss" : "ws";
  await client.connect(`${scheme}://${location.host}/ws`);

  const mirror = new MirrorState();
  const recorder = new SessionRecorder();

  let audio: AudioRenderer | null = null;
  const caption = (text: string) => {
    captions.textContent = text;
  };
  const ensureAudio = () => {
    if (!audio) {
      const ctx = new AudioContext();
      audio = new AudioRenderer(ctx, platformSpeech(caption));
    }
    return audio;
  };

  client.onEvents = (message: EventsMessage) => {
    mirror.applyEvents(message.interaction);
    mirror.engine = message.state;
    status.textContent = message.state.listening ? "listening..." : "";
    const renderer = audio;
    if (renderer) {
      for (const event of message.audio) {
        renderer.handle(event);
      }
    } else {
      for (const event of message.audio) {
        if (event.kind === "Speech") caption(event.text ?? "");
      }
    }
    drawMirror(canvas, diagram, mirror);
  };
  client.onError = (_error, message) => caption(message);

  const capture = attachPointerCapture(canvas, (frame: FrameRecord) => {
    ensureAudio();
    recorder.addFrame(frame);
    for (const tp of frame.touches) {
      mirror.touches.set(tp.pid, [tp.x, tp.y]);
    }
    for (const pid of [...mirror.touches.keys()]) {
      if (!frame.touches.some((tp) => tp.pid === pid)) {
        mirror.touches.delete(pid);
      }
    }
    client.sendFrame(frame);
  });

  attachCommandBar(commandForm, commandInput, {
    submit(text: string) {
      ensureAudio();
      const t = capture.builder.stampNow(performance.now());
      recorder.addSpeech({ type: "speech", t, text });
      client.sendSpeech(t, text);
    },
  });

  recordButton.addEventListener("click", () => {
    if (!recorder.recording) {
      recorder.start();
      recordButton.textContent = "stop & save trace";
      return;
    }
    recorder.stop();
    recordButton.textContent = "record session";
    const blob = new Blob([recorder.toTraceText()], { type: "text/plain" });
    const link = document.createElement("a");
    link.href = URL.createObjectURL(blob);
    link.download = `${diagram.title || "session"}.trace`;
    link.click();
    URL.revokeObjectURL(link.href);
  });

  caption(diagram.alt_text || "diagram loaded");
  drawMirror(canvas, diagram, mirror);
}

start().catch((error) => {
  const captions = document.getElementById("captions");
  if (captions) captions.textContent = String(error);
});
