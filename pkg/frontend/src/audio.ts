/**
 * Realizes the engine's abstract audio events with Web Audio and the
 * platform speech synthesizer.
 *
 * Voices: horn-like (detuned saws through a lowpass), plucked-string-like
 * (triangle with a fast exponential decay), a pure 150 Hz proximity tone,
 * a bell (two decaying partials), an arrival fanfare (two quick horn
 * notes) and a white-noise overlay for filtered-out elements. Sustained
 * notes hold per pointer until the matching stop arrives.
 *
 * The proximity tone plays a looped buffer produced by `toneWave`, so an
 * offline test can measure the realized frequency without an AudioContext.
 */
import type { AudioEventData } from "./protocol.js";

export const TONE150_HZ = 150;

/** Pure sine wave block; the realization source for the proximity tone. */
export function toneWave(
  freq: number,
  sampleRate: number,
  numSamples: number,
): Float32Array {
  const out = new Float32Array(numSamples);
  const step = (2 * Math.PI * freq) / sampleRate;
  for (let i = 0; i < numSamples; i++) {
    out[i] = Math.sin(step * i);
  }
  return out;
}

/** Estimate a (near-)periodic signal's frequency from zero crossings. */
export function estimateFrequency(
  samples: Float32Array,
  sampleRate: number,
): number {
  let first = -1;
  let last = -1;
  let crossings = 0;
  for (let i = 1; i < samples.length; i++) {
    const a = samples[i - 1]!;
    const b = samples[i]!;
    if (a <= 0 && b > 0) {
      // linear interpolation of the upward crossing position
      const position = i - 1 + -a / (b - a);
      if (first < 0) {
        first = position;
      } else {
        last = position;
        crossings++;
      }
    }
  }
  if (crossings < 1 || last <= first) {
    return 0;
  }
  return (crossings * sampleRate) / (last - first);
}

interface SustainedVoice {
  stop(): void;
  setVolume?(volume: number): void;
}

export interface SpeechSink {
  speak(text: string, interruptible: boolean): void;
}

/** Default speech sink: platform synthesis with a caption fallback. */
export function platformSpeech(
  caption?: (text: string) => void,
): SpeechSink {
  return {
    speak(text: string, interruptible: boolean) {
      caption?.(text);
      const synth = (globalThis as { speechSynthesis?: SpeechSynthesis })
        .speechSynthesis;
      if (!synth) return;
      if (interruptible) {
        synth.cancel();
      }
      synth.speak(new SpeechSynthesisUtterance(text));
    },
  };
}

export class AudioRenderer {
  private horns = new Map<number | null, SustainedVoice>();
  private strings = new Map<number | null, SustainedVoice>();
  private tones = new Map<number | null, { gain: GainNode; src: AudioBufferSourceNode }>();
  private noise: { gain: GainNode; src: AudioBufferSourceNode } | null = null;
  private master: GainNode;

  constructor(
    private readonly ctx: AudioContext,
    private readonly speech: SpeechSink,
  ) {
    this.master = ctx.createGain();
    this.master.gain.value = 0.6;
    this.master.connect(ctx.destination);
  }

  handle(event: AudioEventData): void {
    switch (event.kind) {
      case "HornNote":
        this.hornNote(event);
        break;
      case "HornStop":
        this.stopVoice(this.horns, event.pointer);
        break;
      case "StringPluck":
        this.stringPluck(event);
        break;
      case "StringStop":
        this.stopVoice(this.strings, event.pointer);
        break;
      case "Tone150":
        this.tone(event);
        break;
      case "Bell":
        this.bell();
        break;
      case "Fanfare":
        this.fanfare(event.freq ?? 220, event.volume ?? 1);
        break;
      case "NoiseOverlay":
        this.noiseOverlay(event.on ?? false);
        break;
      case "Speech":
        this.speech.speak(event.text ?? "", event.interruptible ?? false);
        break;
      case "Silence":
        this.silenceAll();
        break;
    }
  }

  private hornVoice(freq: number, volume: number): SustainedVoice {
    const now = this.ctx.currentTime;
    const gain = this.ctx.createGain();
    gain.gain.setValueAtTime(0, now);
    gain.gain.linearRampToValueAtTime(volume * 0.5, now + 0.02);
    const filter = this.ctx.createBiquadFilter();
    filter.type = "lowpass";
    filter.frequency.value = freq * 4;
    const oscA = this.ctx.createOscillator();
    const oscB = this.ctx.createOscillator();
    oscA.type = "sawtooth";
    oscB.type = "sawtooth";
    oscA.frequency.value = freq;
    oscB.frequency.value = freq * 1.005;
    oscA.connect(filter);
    oscB.connect(filter);
    filter.connect(gain);
    gain.connect(this.master);
    oscA.start(now);
    oscB.start(now);
    const ctx = this.ctx;
    return {
      stop() {
        const at = ctx.currentTime;
        gain.gain.cancelScheduledValues(at);
        gain.gain.setTargetAtTime(0, at, 0.03);
        oscA.stop(at + 0.2);
        oscB.stop(at + 0.2);
      },
    };
  }

  private hornNote(event: AudioEventData): void {
    this.stopVoice(this.horns, event.pointer);
    const voice = this.hornVoice(event.freq ?? 220, event.volume ?? 1);
    if (event.duration_ms == null) {
      this.horns.set(event.pointer, voice);
    } else {
      setTimeout(() => voice.stop(), event.duration_ms);
    }
  }

  private stringVoice(freq: number, volume: number, sustained: boolean): SustainedVoice {
    const now = this.ctx.currentTime;
    const gain = this.ctx.createGain();
    gain.gain.setValueAtTime(volume * 0.6, now);
    if (!sustained) {
      gain.gain.exponentialRampToValueAtTime(0.001, now + 0.8);
    }
    const osc = this.ctx.createOscillator();
    osc.type = "triangle";
    osc.frequency.value = freq;
    osc.connect(gain);
    gain.connect(this.master);
    osc.start(now);
    if (!sustained) {
      osc.stop(now + 0.9);
    }
    const ctx = this.ctx;
    return {
      stop() {
        const at = ctx.currentTime;
        gain.gain.cancelScheduledValues(at);
        gain.gain.setTargetAtTime(0, at, 0.02);
        osc.stop(at + 0.15);
      },
    };
  }

  private stringPluck(event: AudioEventData): void {
    const sustained = event.duration_ms == null;
    if (sustained) {
      this.stopVoice(this.strings, event.pointer);
    }
    const voice = this.stringVoice(event.freq ?? 330, event.volume ?? 1, sustained);
    if (sustained) {
      this.strings.set(event.pointer, voice);
    }
  }

  private stopVoice(
    voices: Map<number | null, SustainedVoice>,
    pointer: number | null,
  ): void {
    const voice = voices.get(pointer);
    if (voice) {
      voices.delete(pointer);
      voice.stop();
    }
  }

  private tone(event: AudioEventData): void {
    const existing = this.tones.get(event.pointer);
    if (event.volume == null) {
      if (existing) {
        this.tones.delete(event.pointer);
        existing.gain.gain.setTargetAtTime(0, this.ctx.currentTime, 0.02);
        existing.src.stop(this.ctx.currentTime + 0.1);
      }
      return;
    }
    if (existing) {
      existing.gain.gain.setTargetAtTime(
        event.volume * 0.4,
        this.ctx.currentTime,
        0.02,
      );
      return;
    }
    // one-second looped pure-tone buffer rendered by toneWave
    const sampleRate = this.ctx.sampleRate;
    const buffer = this.ctx.createBuffer(1, sampleRate, sampleRate);
    buffer.getChannelData(0).set(toneWave(TONE150_HZ, sampleRate, sampleRate));
    const src = this.ctx.createBufferSource();
    src.buffer = buffer;
    src.loop = true;
    const gain = this.ctx.createGain();
    gain.gain.value = event.volume * 0.4;
    src.connect(gain);
    gain.connect(this.master);
    src.start();
    this.tones.set(event.pointer, { gain, src });
  }

  private bell(): void {
    const now = this.ctx.currentTime;
    for (const [partial, level] of [
      [1046.5, 0.3],
      [1568, 0.15],
    ] as const) {
      const osc = this.ctx.createOscillator();
      osc.frequency.value = partial;
      const gain = this.ctx.createGain();
      gain.gain.setValueAtTime(level, now);
      gain.gain.exponentialRampToValueAtTime(0.001, now + 1.2);
      osc.connect(gain);
      gain.connect(this.master);
      osc.start(now);
      osc.stop(now + 1.3);
    }
  }

  private fanfare(freq: number, volume: number): void {
    const first = this.hornVoice(freq, volume);
    setTimeout(() => first.stop(), 150);
    setTimeout(() => {
      const second = this.hornVoice(freq * 1.5, volume);
      setTimeout(() => second.stop(), 300);
    }, 160);
  }

  private noiseOverlay(on: boolean): void {
    if (!on) {
      if (this.noise) {
        this.noise.gain.gain.setTargetAtTime(0, this.ctx.currentTime, 0.03);
        this.noise.src.stop(this.ctx.currentTime + 0.15);
        this.noise = null;
      }
      return;
    }
    if (this.noise) return;
    const sampleRate = this.ctx.sampleRate;
    const buffer = this.ctx.createBuffer(1, sampleRate, sampleRate);
    const channel = buffer.getChannelData(0);
    // deterministic-enough static; audible texture only
    for (let i = 0; i < channel.length; i++) {
      channel[i] = Math.random() * 2 - 1;
    }
    const src = this.ctx.createBufferSource();
    src.buffer = buffer;
    src.loop = true;
    const gain = this.ctx.createGain();
    gain.gain.value = 0.05;
    src.connect(gain);
    gain.connect(this.master);
    src.start();
    this.noise = { gain, src };
  }

  private silenceAll(): void {
    for (const pointer of [...this.horns.keys()]) {
      this.stopVoice(this.horns, pointer);
    }
    for (const pointer of [...this.strings.keys()]) {
      this.stopVoice(this.strings, pointer);
    }
    for (const pointer of [...this.tones.keys()]) {
      this.tone({ kind: "Tone150", t: 0, pointer, element: null, volume: null });
    }
    this.noiseOverlay(false);
  }
}
