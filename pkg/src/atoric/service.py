"""JSON-over-HTTP session service for diagrams.

Endpoints
---------
- ``POST /diagram`` with ``{"template": {...}}`` or ``{"diagram": {...}}``
  creates a session and returns its state.
- ``GET /diagram/{id}`` returns the state.
- ``POST /diagram/{id}/apply`` with a move object applies one move.
- ``POST /diagram/{id}/undo`` removes the most recent move.
- ``GET /diagram/{id}/render.svg`` renders the current diagram.
- ``DELETE /diagram/{id}`` discards the session.
- ``GET /singularity/{n}/{a}`` classifies one singularity type.
- ``POST /presolutions`` with ``{"n": .., "a": ..}`` enumerates them.
- ``GET /healthz`` liveness probe.

Errors are JSON ``{"code", "message"}``: 400 ``bad_request``/``invalid_move``,
404 ``not_found``, 409 ``mutation_blocked``/``nothing_to_undo``.

State is kept in memory; pass ``state_path`` to also append every event to a
JSONL file that is replayed on startup, which makes sessions durable.
"""

from __future__ import annotations

import json
import re
import threading
import uuid
from fractions import Fraction
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, urlparse

from .cqs import (check_type, hj_expand, milnor_invariants, t_classify,
                  type_label)
from .diagram import Diagram, MutationBlocked
from .jsonio import (apply_move, diagram_from_json, diagram_to_json, frac_str,
                     milnor_to_json, t_to_json, template_diagram,
                     vertex_info_to_json)
from .presolution import enumerate_p_resolutions
from .render import render_svg
from .resolution import discrepancies, singularity_class

_MAX_BODY = 2 * 1024 * 1024


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


class Session:
    def __init__(self, baseline: dict, diagram: Diagram):
        self.baseline = baseline
        self.moves: list[dict] = []
        self.diagram = diagram


def _build(baseline: dict) -> Diagram:
    if "template" in baseline:
        return template_diagram(baseline["template"])
    if "diagram" in baseline:
        return diagram_from_json(baseline["diagram"])
    raise ValueError("body must contain 'template' or 'diagram'")


class Store:
    """Session table with optional JSONL persistence."""

    def __init__(self, state_path=None):
        self.lock = threading.Lock()
        self.sessions: dict[str, Session] = {}
        self.state_path = state_path
        self._fh = None
        if state_path is not None:
            self._load(state_path)
            self._fh = open(state_path, "a", encoding="utf-8")

    def _load(self, path):
        try:
            fh = open(path, encoding="utf-8")
        except FileNotFoundError:
            return
        with fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                ev = json.loads(line)
                kind, sid = ev["event"], ev.get("id")
                if kind == "create":
                    self.sessions[sid] = Session(ev["baseline"],
                                                 _build(ev["baseline"]))
                elif kind == "apply":
                    s = self.sessions[sid]
                    s.diagram = apply_move(s.diagram, ev["move"])
                    s.moves.append(ev["move"])
                elif kind == "undo":
                    s = self.sessions[sid]
                    s.moves.pop()
                    s.diagram = self._replay(s)
                elif kind == "delete":
                    self.sessions.pop(sid, None)

    @staticmethod
    def _replay(s: Session) -> Diagram:
        d = _build(s.baseline)
        for mv in s.moves:
            d = apply_move(d, mv)
        return d

    def _persist(self, event: dict):
        if self._fh is not None:
            self._fh.write(json.dumps(event, sort_keys=True) + "\n")
            self._fh.flush()

    def create(self, baseline: dict) -> tuple[str, Session]:
        d = _build(baseline)
        sid = uuid.uuid4().hex
        with self.lock:
            self.sessions[sid] = Session(baseline, d)
            self._persist({"event": "create", "id": sid, "baseline": baseline})
        return sid, self.sessions[sid]

    def get(self, sid: str) -> Session:
        with self.lock:
            s = self.sessions.get(sid)
        if s is None:
            raise ApiError(404, "not_found", f"no session {sid}")
        return s

    def apply(self, sid: str, move: dict) -> Session:
        with self.lock:
            s = self.sessions.get(sid)
            if s is None:
                raise ApiError(404, "not_found", f"no session {sid}")
            try:
                nd = apply_move(s.diagram, move)
            except MutationBlocked as e:
                raise ApiError(409, "mutation_blocked", str(e)) from e
            except (ValueError, KeyError, IndexError, TypeError,
                    ZeroDivisionError) as e:
                raise ApiError(400, "invalid_move", str(e)) from e
            s.diagram = nd
            s.moves.append(move)
            self._persist({"event": "apply", "id": sid, "move": move})
        return s

    def undo(self, sid: str) -> Session:
        with self.lock:
            s = self.sessions.get(sid)
            if s is None:
                raise ApiError(404, "not_found", f"no session {sid}")
            if not s.moves:
                raise ApiError(409, "nothing_to_undo", "no move to undo")
            s.moves.pop()
            s.diagram = self._replay(s)
            self._persist({"event": "undo", "id": sid})
        return s

    def delete(self, sid: str):
        with self.lock:
            if sid not in self.sessions:
                raise ApiError(404, "not_found", f"no session {sid}")
            del self.sessions[sid]
            self._persist({"event": "delete", "id": sid})

    def close(self):
        if self._fh is not None:
            self._fh.close()
            self._fh = None


def _session_body(sid: str, s: Session) -> dict:
    d = s.diagram
    return {
        "id": sid,
        "diagram": diagram_to_json(d),
        "vertices": [vertex_info_to_json(v) for v in d.classify_vertices()],
        "bounded": d.boundary.bounded,
        "area2": frac_str(d.area2()) if d.boundary.bounded else None,
        "moves": len(s.moves),
    }


def _singularity_body(n: int, a: int) -> dict:
    check_type(n, a)
    bs = hj_expand(n, a)
    ks = discrepancies(bs) if bs else ()
    t = t_classify(n, a)
    return {
        "n": n, "a": a,
        "label": type_label(n, a),
        "hj": list(bs),
        "discrepancies": [frac_str(k) for k in ks],
        "alphas": [frac_str(k + 1) for k in ks],
        "class": singularity_class(ks),
        "t": t_to_json(t),
        "milnor": milnor_to_json(milnor_invariants(t)) if t else None,
    }


def _presolutions_body(n: int, a: int) -> dict:
    check_type(n, a)
    items = []
    for e in enumerate_p_resolutions(n, a):
        items.append({
            "kept": [list(r) for r in e.pr.kept],
            "vertex_types": [list(t) for t in e.vertex_types],
            "k_degrees": [frac_str(x) for x in e.k_degrees],
        })
    return {"n": n, "a": a, "count": len(items), "items": items}


class Handler(BaseHTTPRequestHandler):
    server_version = "atoric/0.1"
    protocol_version = "HTTP/1.1"

    def log_message(self, fmt, *args):  # quiet by default
        if getattr(self.server, "verbose", False):
            super().log_message(fmt, *args)

    # -- plumbing ---------------------------------------------------------

    @property
    def store(self) -> Store:
        return self.server.store  # type: ignore[attr-defined]

    def _drain_body(self) -> bytes:
        """Read the request body exactly once (keep-alive requires it)."""
        if not hasattr(self, "_raw_body"):
            length = int(self.headers.get("Content-Length") or 0)
            if length > _MAX_BODY:
                # still drain so the connection stays parseable
                remaining = length
                while remaining > 0:
                    chunk = self.rfile.read(min(remaining, 65536))
                    if not chunk:
                        break
                    remaining -= len(chunk)
                self._raw_body = None
            else:
                self._raw_body = self.rfile.read(length) if length else b""
        if self._raw_body is None:
            raise ApiError(400, "bad_request", "body too large")
        return self._raw_body

    def _json_body(self) -> dict:
        raw = self._drain_body()
        if not raw:
            raise ApiError(400, "bad_request", "empty body")
        try:
            obj = json.loads(raw)
        except json.JSONDecodeError as e:
            raise ApiError(400, "bad_request", f"invalid JSON: {e}") from e
        if not isinstance(obj, dict):
            raise ApiError(400, "bad_request", "body must be a JSON object")
        return obj

    def _send(self, status: int, payload, content_type="application/json"):
        data = (payload if isinstance(payload, bytes)
                else json.dumps(payload).encode())
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(data)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(data)

    def _dispatch(self, method: str):
        if hasattr(self, "_raw_body"):
            del self._raw_body  # new request on a kept-alive connection
        try:
            try:
                self._route(method)
            finally:
                # drain any unread body so keep-alive parsing stays aligned
                try:
                    self._drain_body()
                except ApiError:
                    pass
        except ApiError as e:
            self._send(e.status, {"code": e.code, "message": e.message})
        except Exception as e:  # pragma: no cover - last-resort guard
            self._send(500, {"code": "internal", "message": str(e)})

    def do_GET(self):
        self._dispatch("GET")

    def do_POST(self):
        self._dispatch("POST")

    def do_DELETE(self):
        self._dispatch("DELETE")

    def do_OPTIONS(self):
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Content-Length", "0")
        self.end_headers()

    # -- routing ----------------------------------------------------------

    def _route(self, method: str):
        url = urlparse(self.path)
        parts = [p for p in url.path.split("/") if p]
        query = parse_qs(url.query)

        if method == "GET" and parts == ["healthz"]:
            return self._send(200, {"ok": True})

        if parts and parts[0] == "diagram":
            return self._route_diagram(method, parts, query)

        if method == "GET" and len(parts) == 3 and parts[0] == "singularity":
            try:
                n, a = int(parts[1]), int(parts[2])
                body = _singularity_body(n, a)
            except (ValueError, TypeError) as e:
                raise ApiError(400, "bad_request", str(e)) from e
            return self._send(200, body)

        if method == "POST" and parts == ["presolutions"]:
            obj = self._json_body()
            try:
                body = _presolutions_body(int(obj["n"]), int(obj["a"]))
            except KeyError as e:
                raise ApiError(400, "bad_request", f"missing field {e}") from e
            except (ValueError, TypeError) as e:
                raise ApiError(400, "bad_request", str(e)) from e
            return self._send(200, body)

        raise ApiError(404, "not_found", f"no route {method} {url.path}")

    def _route_diagram(self, method: str, parts: list[str], query: dict):
        if method == "POST" and len(parts) == 1:
            obj = self._json_body()
            try:
                sid, s = self.store.create(obj)
            except (ValueError, KeyError, TypeError) as e:
                raise ApiError(400, "bad_request", str(e)) from e
            return self._send(201, _session_body(sid, s))

        if len(parts) < 2:
            raise ApiError(404, "not_found", "missing session id")
        sid = parts[1]
        if not re.fullmatch(r"[0-9a-f]{32}", sid):
            raise ApiError(404, "not_found", f"no session {sid}")

        if method == "GET" and len(parts) == 2:
            return self._send(200, _session_body(sid, self.store.get(sid)))

        if method == "DELETE" and len(parts) == 2:
            self.store.delete(sid)
            return self._send(200, {"ok": True, "id": sid})

        if method == "POST" and len(parts) == 3 and parts[2] == "apply":
            move = self._json_body()
            s = self.store.apply(sid, move)
            return self._send(200, _session_body(sid, s))

        if method == "POST" and len(parts) == 3 and parts[2] == "undo":
            s = self.store.undo(sid)
            return self._send(200, _session_body(sid, s))

        if method == "GET" and len(parts) == 3 and parts[2] == "render.svg":
            s = self.store.get(sid)
            try:
                kw = {}
                if "width" in query:
                    kw["width"] = int(query["width"][0])
                if "height" in query:
                    kw["height"] = int(query["height"][0])
                if "window" in query:
                    kw["window"] = tuple(
                        Fraction(x) for x in query["window"][0].split(","))
                if "labels" in query:
                    kw["labels"] = query["labels"][0] not in ("0", "false")
                svg = render_svg(s.diagram, **kw)
            except (ValueError, ZeroDivisionError) as e:
                raise ApiError(400, "bad_request", str(e)) from e
            return self._send(200, svg.encode(), "image/svg+xml")

        raise ApiError(404, "not_found", f"no route {method} /{'/'.join(parts)}")


def make_server(host: str = "127.0.0.1", port: int = 0,
                state_path=None, verbose: bool = False) -> ThreadingHTTPServer:
    server = ThreadingHTTPServer((host, port), Handler)
    server.store = Store(state_path)  # type: ignore[attr-defined]
    server.verbose = verbose  # type: ignore[attr-defined]
    return server


def main(argv=None):
    import argparse

    ap = argparse.ArgumentParser(prog="atoric-serve",
                                 description="diagram session service")
    ap.add_argument("--host", default="127.0.0.1")
    ap.add_argument("--port", type=int, default=8323)
    ap.add_argument("--state", default=None,
                    help="JSONL file for durable sessions")
    ap.add_argument("--verbose", action="store_true")
    args = ap.parse_args(argv)
    server = make_server(args.host, args.port, args.state, args.verbose)
    host, port = server.server_address[:2]
    print(f"listening on http://{host}:{port}", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.store.close()  # type: ignore[attr-defined]


if __name__ == "__main__":
    main()
