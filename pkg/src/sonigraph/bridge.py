"""Local message-passing bridge for the browser companion app.

All interaction logic stays in this package; the browser only captures
pointer input, renders audio and mirrors the diagram. One WebSocket session
owns one engine. Wire format (JSON, one message per WebSocket frame):

    client -> server
        {"type": "frame", "t": <ms>, "touches": [[pid, x, y], ...]}
        {"type": "speech", "t": <ms>, "text": "<command>"}
    server -> client
        {"type": "events", "t": <ms>,
         "interaction": [<event dict>, ...], "audio": [<audio dict>, ...]}
        {"type": "error", "error": "<name>", "message": "..."}

HTTP endpoints: GET /api/diagram and GET /api/config serve the loaded model
and configuration; the frontend bundle is served from the directory given
with --frontend.

Run:  python3 -m sonigraph.bridge --diagram fixtures/bob.graphml
"""
from __future__ import annotations

import argparse
from dataclasses import asdict
from pathlib import Path

from .audio import AudioEvent, Speech
from .config import EngineConfig, load_config, serialize_config
from .errors import NonMonotoneTime, NotListening, SonigraphError
from .events import InteractionEvent
from .session import Engine
from .model import Diagram, load_graphml
from .traces import TouchFrame, TouchPoint


def diagram_payload(d: Diagram) -> dict:
    return {
        "title": d.title,
        "alt_text": d.alt_text,
        "warnings": list(d.warnings),
        "nodes": [
            {
                "id": n.id,
                "label": n.label,
                "x": n.position[0],
                "y": n.position[1],
                "radius": n.radius,
                "attributes": [list(kv) for kv in n.attributes],
            }
            for n in d.nodes
        ],
        "links": [
            {
                "id": l.id,
                "source": l.endpoints[0],
                "target": l.endpoints[1],
                "label": l.label,
                "attributes": [list(kv) for kv in l.attributes],
            }
            for l in d.links
        ],
    }


def event_payload(ev: InteractionEvent) -> dict:
    out = {"kind": ev.kind, "t": ev.t, "pointer": ev.pointer}
    for key, value in vars(ev).items():
        if key in ("t", "pointer"):
            continue
        if key == "region":
            out["contacts"] = [list(p) for p in value.contact_points]
            out["hull"] = [list(p) for p in value.hull]
        elif key == "command":
            out["command"] = asdict(value)
        else:
            out[key] = value
    return out


def audio_payload(au: AudioEvent) -> dict:
    out = {"kind": au.kind, "t": au.t, "pointer": au.pointer,
           "element": au.element}
    for key, value in vars(au).items():
        if key not in ("t", "pointer", "element"):
            out[key] = value
    return out


class BridgeSession:
    """One live engine fed by a single client."""

    def __init__(self, diagram: Diagram, config: EngineConfig):
        self.diagram = diagram
        self.config = config
        self.engine = Engine(diagram, config, live=True)

    def handle(self, message: dict) -> dict:
        kind = message.get("type")
        if kind == "frame":
            frame = TouchFrame(
                int(message["t"]),
                tuple(
                    TouchPoint(int(pid), float(x), float(y))
                    for pid, x, y in message.get("touches", [])
                ),
            )
            events, audio = self.engine.step_frame_live(frame)
            return self._events_message(frame.t, events, audio)
        if kind == "speech":
            t = int(message["t"])
            try:
                events, audio = self.engine.submit_speech_live(
                    message.get("text", ""), t
                )
            except NotListening:
                refusal = Speech(t, None, None, "not listening", False)
                return self._events_message(t, [], [refusal])
            return self._events_message(t, events, audio)
        raise SonigraphError(f"unknown message type {kind!r}")

    def _events_message(self, t, events, audio) -> dict:
        filter_state = self.engine.filter_state
        target = None
        if self.engine.search_state and self.engine.search_state.active_target:
            result = self.engine.search_state.active_target
            target = {
                "kind": result.kind,
                "id": result.element_id,
                "x": result.position[0],
                "y": result.position[1],
            }
        return {
            "type": "events",
            "t": t,
            "interaction": [event_payload(e) for e in events],
            "audio": [audio_payload(a) for a in audio],
            "state": {
                "listening": self.engine.gestures.listening,
                "filter": {
                    "active": filter_state.active,
                    "attribute": filter_state.attribute,
                    "value": filter_state.value,
                    "passing": sorted(filter_state.passing),
                    "passing_links": sorted(filter_state.passing_links),
                },
                "search_target": target,
            },
        }


def create_app(diagram_path: str | Path, config_path: str | Path | None = None,
               frontend_dir: str | Path | None = None):
    """Build the FastAPI app. Requires the `bridge` extra (fastapi)."""
    from fastapi import FastAPI, WebSocket, WebSocketDisconnect
    from fastapi.responses import JSONResponse

    diagram = load_graphml(Path(diagram_path).read_bytes())
    config = load_config(config_path) if config_path else EngineConfig()
    app = FastAPI(title="sonigraph bridge")

    @app.get("/api/diagram")
    def get_diagram():
        return JSONResponse(diagram_payload(diagram))

    @app.get("/api/config")
    def get_config():
        return JSONResponse({"text": serialize_config(config)})

    async def session(ws):
        await ws.accept()
        live = BridgeSession(diagram, config)
        try:
            while True:
                message = await ws.receive_json()
                try:
                    await ws.send_json(live.handle(message))
                except (SonigraphError, NonMonotoneTime, KeyError,
                        ValueError) as exc:
                    await ws.send_json({
                        "type": "error",
                        "error": type(exc).__name__,
                        "message": str(exc),
                    })
        except WebSocketDisconnect:
            return

    # fastapi is imported lazily (optional extra), so the deferred string
    # annotation would not resolve; bind the parameter type explicitly.
    session.__annotations__ = {"ws": WebSocket}
    app.websocket("/ws")(session)

    if frontend_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=str(frontend_dir), html=True),
                  name="frontend")
    return app


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="sonigraph.bridge",
        description="Serve a diagram to the browser companion app",
    )
    parser.add_argument("--diagram", required=True)
    parser.add_argument("--config", default=None)
    parser.add_argument("--frontend", default=None,
                        help="directory with the built frontend (index.html)")
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8765)
    args = parser.parse_args(argv)
    import uvicorn

    app = create_app(args.diagram, args.config, args.frontend)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
