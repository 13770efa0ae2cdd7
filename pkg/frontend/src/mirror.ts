/**
 * Canvas mirror of the diagram for low-vision users and sighted
 * collaborators. Purely informational: it draws what the engine reports
 * (dwells, dome hulls, the active search target, filter dimming) and never
 * computes interaction logic of its own.
 */
import type {
  DiagramData,
  EngineStateData,
  InteractionEventData,
} from "./protocol.js";

export class MirrorState {
  dwellNodes = new Set<string>();
  dwellLinks = new Set<string>();
  domeHull: [number, number][] | null = null;
  touches = new Map<number, [number, number]>();
  engine: EngineStateData | null = null;

  applyEvents(events: InteractionEventData[]): void {
    for (const ev of events) {
      switch (ev.kind) {
        case "NodeDwellStart":
          this.dwellNodes.add(String(ev.node));
          break;
        case "NodeDwellEnd":
          this.dwellNodes.delete(String(ev.node));
          break;
        case "LinkDwellStart":
          this.dwellLinks.add(String(ev.link));
          break;
        case "LinkDwellEnd":
          this.dwellLinks.delete(String(ev.link));
          break;
        case "DomeStart":
        case "DomeUpdate":
          this.domeHull = (ev.hull as [number, number][]) ?? null;
          break;
        case "DomeEnd":
          this.domeHull = null;
          break;
      }
    }
  }
}

const COLORS = {
  background: "#10141a",
  link: "#8898aa",
  linkDim: "#3a4250",
  node: "#e8b44c",
  nodeDim: "#5a4a28",
  dwell: "#7fe3a0",
  label: "#cfd8e3",
  dome: "rgba(127, 180, 255, 0.25)",
  target: "#ff7f7f",
  touch: "rgba(255,255,255,0.35)",
};

export function drawMirror(
  canvas: HTMLCanvasElement,
  diagram: DiagramData,
  state: MirrorState,
): void {
  const ctx = canvas.getContext("2d");
  if (!ctx) return;
  const w = canvas.width;
  const h = canvas.height;
  const px = (x: number) => x * w;
  const py = (y: number) => y * h;
  const filter = state.engine?.filter;
  const passes = (kind: "node" | "link", id: string): boolean => {
    if (!filter || !filter.active) return true;
    const pool = kind === "node" ? filter.passing : filter.passing_links;
    return pool.includes(id);
  };

  ctx.fillStyle = COLORS.background;
  ctx.fillRect(0, 0, w, h);

  if (state.domeHull && state.domeHull.length >= 3) {
    ctx.beginPath();
    const hull = state.domeHull;
    ctx.moveTo(px(hull[0]![0]), py(hull[0]![1]));
    for (const [x, y] of hull.slice(1)) {
      ctx.lineTo(px(x), py(y));
    }
    ctx.closePath();
    ctx.fillStyle = COLORS.dome;
    ctx.fill();
    ctx.strokeStyle = "#7fb4ff";
    ctx.stroke();
  }

  const nodeById = new Map(diagram.nodes.map((n) => [n.id, n]));
  for (const link of diagram.links) {
    const a = nodeById.get(link.source);
    const b = nodeById.get(link.target);
    if (!a || !b) continue;
    ctx.beginPath();
    ctx.moveTo(px(a.x), py(a.y));
    ctx.lineTo(px(b.x), py(b.y));
    ctx.lineWidth = state.dwellLinks.has(link.id) ? 4 : 2;
    ctx.strokeStyle = state.dwellLinks.has(link.id)
      ? COLORS.dwell
      : passes("link", link.id)
        ? COLORS.link
        : COLORS.linkDim;
    ctx.stroke();
  }

  for (const node of diagram.nodes) {
    ctx.beginPath();
    ctx.arc(px(node.x), py(node.y), node.radius * w, 0, 2 * Math.PI);
    ctx.fillStyle = state.dwellNodes.has(node.id)
      ? COLORS.dwell
      : passes("node", node.id)
        ? COLORS.node
        : COLORS.nodeDim;
    ctx.fill();
    ctx.fillStyle = COLORS.label;
    ctx.font = "12px system-ui";
    ctx.textAlign = "center";
    ctx.fillText(node.label, px(node.x), py(node.y) - node.radius * w - 4);
  }

  const target = state.engine?.search_target;
  if (target) {
    ctx.beginPath();
    ctx.arc(px(target.x), py(target.y), 14, 0, 2 * Math.PI);
    ctx.strokeStyle = COLORS.target;
    ctx.lineWidth = 3;
    ctx.stroke();
  }

  for (const [, [x, y]] of state.touches) {
    ctx.beginPath();
    ctx.arc(px(x), py(y), 10, 0, 2 * Math.PI);
    ctx.fillStyle = COLORS.touch;
    ctx.fill();
  }
}
