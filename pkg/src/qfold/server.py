"""HTTP/JSON service exposing sessions of quiver folding and mutation.

Endpoints (all under /api):
  POST /api/session                  -> {"id": ...}
  GET  /api/session/{id}/quiver
  PUT  /api/session/{id}/quiver
  PUT  /api/session/{id}/action
  POST /api/session/{id}/mutate      {"vertex": k} or {"orbit": k, "rule": "auto"}
  GET  /api/session/{id}/folded
  GET  /api/session/{id}/framed
  POST /api/session/{id}/undo
  POST /api/session/{id}/isomorphic    {"quiver": {...}}
  GET  /api/session/{id}/graph?budget=N

Errors are {"error": code, "detail": text} plus a "witness" field when a
failed automorphism check can point at a concrete arrow.  Each session's
state is guarded by its own lock, so concurrent requests against one
session are serialized while separate sessions proceed in parallel.
"""

from __future__ import annotations

import json
import re
import threading
import uuid
from dataclasses import dataclass, field
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from typing import Optional
from urllib.parse import parse_qs, urlparse

from .explore import exchange_graph
from .folding import QuiverAction, act_on_quiver, fold, orbit_mutation_sequence
from .groups import PermGroup
from .quivers import Quiver, apply_sequence, are_isomorphic, frame, mutate, vertex_color
from .special import diagonal_rule_kind


class ApiError(Exception):
    def __init__(self, status: int, code: str, detail: str, witness=None):
        super().__init__(detail)
        self.status = status
        self.code = code
        self.detail = detail
        self.witness = witness


_WITNESS = re.compile(
    r"generator (\d+) is not an automorphism: arrow count (\d+)->(\d+)"
)


def _action_error(exc: ValueError) -> ApiError:
    text = str(exc)
    m = _WITNESS.search(text)
    witness = None
    if m:
        witness = {
            "generator": int(m.group(1)),
            "arrow": [int(m.group(2)), int(m.group(3))],
        }
    return ApiError(409, "invalid-action", text, witness)


@dataclass
class Session:
    quiver: Optional[Quiver] = None
    framed: Optional[Quiver] = None
    action_data: Optional[dict] = None
    qa: Optional[QuiverAction] = None
    history: list = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock)

    def snapshot(self) -> None:
        self.history.append((self.quiver, self.framed, self.action_data, self.qa))
        del self.history[:-100]

    def require_quiver(self) -> Quiver:
        if self.quiver is None:
            raise ApiError(409, "no-quiver", "the session has no quiver yet")
        return self.quiver

    def require_action(self) -> QuiverAction:
        if self.qa is None:
            raise ApiError(409, "no-action", "the session has no group action yet")
        return self.qa

    def rebuild_action(self, quiver: Quiver) -> Optional[QuiverAction]:
        if self.action_data is None:
            return None
        group = PermGroup.from_json({"generators": self.action_data["generators"]})
        reps = self.action_data.get("reps")
        if reps is not None:
            reps = tuple(int(r) for r in reps)
        return act_on_quiver(group, quiver, self.action_data["vertex_maps"], reps)


_sessions: dict[str, Session] = {}
_sessions_lock = threading.Lock()


def _get_session(sid: str) -> Session:
    with _sessions_lock:
        sess = _sessions.get(sid)
    if sess is None:
        raise ApiError(404, "no-session", f"unknown session id {sid}")
    return sess


def _folded_payload(qa: QuiverAction) -> dict:
    B = fold(qa)
    data = B.to_json()
    data["pretty"] = B.pretty()
    data["orbits"] = [list(orb) for orb in qa.orbits]
    return data


def _framed_payload(sess: Session) -> dict:
    fq = sess.framed
    if fq is None:
        raise ApiError(409, "no-quiver", "the session has no quiver yet")
    colors = {str(i): vertex_color(fq, i) for i in fq.mutable}
    return {"quiver": fq.to_json(), "colors": colors}


def _quiver_payload(sess: Session) -> dict:
    data = sess.require_quiver().to_json()
    if sess.qa is not None:
        data["orbits"] = [list(orb) for orb in sess.qa.orbits]
        data["reps"] = list(sess.qa.representatives)
    return data


def handle_create_session() -> dict:
    sid = uuid.uuid4().hex[:12]
    with _sessions_lock:
        _sessions[sid] = Session()
    return {"id": sid}


def handle_put_quiver(sess: Session, body: dict) -> dict:
    try:
        quiver = Quiver.from_json(body)
    except (KeyError, TypeError, ValueError) as exc:
        raise ApiError(400, "bad-quiver", f"malformed quiver: {exc}")
    sess.snapshot()
    sess.quiver = quiver
    sess.framed = quiver if quiver.frozen else frame(quiver)
    sess.action_data = None
    sess.qa = None
    return _quiver_payload(sess)


def handle_put_action(sess: Session, body: dict) -> dict:
    quiver = sess.require_quiver()
    if body is None or not body:
        sess.snapshot()
        sess.action_data = None
        sess.qa = None
        return {"cleared": True}
    if "generators" not in body or "vertex_maps" not in body:
        raise ApiError(400, "bad-action", "action needs generators and vertex_maps")
    try:
        group = PermGroup.from_json({"generators": body["generators"]})
        reps = body.get("reps")
        if reps is not None:
            reps = tuple(int(r) for r in reps)
        qa = act_on_quiver(group, quiver, body["vertex_maps"], reps)
    except ValueError as exc:
        raise _action_error(exc)
    sess.snapshot()
    sess.action_data = {
        "generators": body["generators"],
        "vertex_maps": [list(m) for m in body["vertex_maps"]],
    }
    if reps is not None:
        sess.action_data["reps"] = list(reps)
    sess.qa = qa
    return {
        "orbits": [list(orb) for orb in qa.orbits],
        "reps": list(qa.representatives),
        "stab_orders": list(qa.stab_orders),
    }


def _mutate_vertex(sess: Session, k: int) -> dict:
    quiver = sess.require_quiver()
    if not 1 <= k <= quiver.n:
        raise ApiError(400, "bad-vertex", f"vertex {k} out of range 1..{quiver.n}")
    if k in quiver.frozen:
        raise ApiError(409, "frozen-vertex", f"vertex {k} is frozen")
    new_q = mutate(quiver, k)
    new_framed = mutate(sess.framed, k) if sess.framed is not quiver else new_q
    try:
        new_qa = sess.rebuild_action(new_q)
    except ValueError as exc:
        raise ApiError(
            409,
            "symmetry-broken",
            f"mutating vertex {k} breaks the group action: {exc}",
        )
    sess.snapshot()
    sess.quiver = new_q
    sess.framed = new_framed
    sess.qa = new_qa
    return {"mutated": {"vertex": k}, "quiver": _quiver_payload(sess)}


def _mutate_orbit(sess: Session, k: int, rule: str) -> dict:
    qa = sess.require_action()
    if not 1 <= k <= qa.m:
        raise ApiError(400, "bad-orbit", f"orbit {k} out of range 1..{qa.m}")
    kind, _ = diagonal_rule_kind(fold(qa), k)
    if kind is None:
        raise ApiError(409, "rule-unsupported", f"no mutation rule fits orbit {k}")
    if rule not in ("auto", kind):
        raise ApiError(
            409, "rule-mismatch", f"orbit {k} takes the {kind} rule, not {rule}"
        )
    try:
        seq = orbit_mutation_sequence(qa, k)
    except ValueError as exc:
        raise ApiError(409, "rule-unsupported", str(exc))
    new_q = apply_sequence(qa.quiver, seq)
    new_framed = apply_sequence(sess.framed, seq) if sess.framed is not qa.quiver else new_q
    try:
        new_qa = sess.rebuild_action(new_q)
    except ValueError as exc:  # pragma: no cover - orbit mutation preserves the action
        raise ApiError(500, "internal", f"orbit mutation broke the action: {exc}")
    sess.snapshot()
    sess.quiver = new_q
    sess.framed = new_framed
    sess.qa = new_qa
    return {
        "mutated": {"orbit": k, "rule": kind, "steps": list(seq.steps)},
        "quiver": _quiver_payload(sess),
    }


def handle_mutate(sess: Session, body: dict) -> dict:
    if not isinstance(body, dict):
        raise ApiError(400, "bad-request", "mutate expects a JSON object")
    if "vertex" in body:
        return _mutate_vertex(sess, int(body["vertex"]))
    if "orbit" in body:
        return _mutate_orbit(sess, int(body["orbit"]), body.get("rule", "auto"))
    raise ApiError(400, "bad-request", "mutate needs a vertex or an orbit")


def handle_undo(sess: Session) -> dict:
    if not sess.history:
        raise ApiError(409, "nothing-to-undo", "the session has no earlier state")
    sess.quiver, sess.framed, sess.action_data, sess.qa = sess.history.pop()
    out = {"undone": True}
    if sess.quiver is not None:
        out["quiver"] = _quiver_payload(sess)
    return out


def handle_isomorphic(sess: Session, body: dict) -> dict:
    current = sess.require_quiver()
    try:
        other = Quiver.from_json(body["quiver"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ApiError(400, "bad-quiver", f"malformed quiver: {exc}")
    if other.n != current.n:
        return {"isomorphic": False}
    witness = are_isomorphic(current, other, fix_frozen=bool(current.frozen))
    if witness is None:
        return {"isomorphic": False}
    return {"isomorphic": True, "witness": list(witness)}


def handle_graph(sess: Session, query: dict) -> dict:
    budget = int(query.get("budget", ["100000"])[0])
    start = fold(sess.qa) if sess.qa is not None else sess.require_quiver()
    try:
        graph = exchange_graph(start, budget=budget)
    except ValueError as exc:
        raise ApiError(400, "bad-request", str(exc))
    out = {
        "nodes": len(graph.nodes),
        "edges": [list(e) for e in graph.edges],
        "complete": graph.complete,
    }
    if graph.blocked:
        out["blocked"] = [list(b) for b in graph.blocked]
    return out


class Handler(BaseHTTPRequestHandler):
    server_version = "qfold"
    protocol_version = "HTTP/1.1"

    def log_message(self, fmt, *args):  # quiet by default
        pass

    def _send(self, status: int, payload: dict) -> None:
        blob = json.dumps(payload).encode()
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(blob)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, PUT, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.end_headers()
        self.wfile.write(blob)

    def _body(self) -> dict:
        length = int(self.headers.get("Content-Length") or 0)
        if length == 0:
            return {}
        raw = self.rfile.read(length)
        try:
            return json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ApiError(400, "bad-json", f"request body is not JSON: {exc}")

    def _route(self, method: str) -> None:
        url = urlparse(self.path)
        parts = [p for p in url.path.split("/") if p]
        try:
            payload = self._dispatch(method, parts, url)
            self._send(200, payload)
        except ApiError as exc:
            body = {"error": exc.code, "detail": exc.detail}
            if exc.witness is not None:
                body["witness"] = exc.witness
            self._send(exc.status, body)
        except Exception as exc:  # pragma: no cover - last-resort guard
            self._send(500, {"error": "internal", "detail": str(exc)})

    def _dispatch(self, method: str, parts: list[str], url) -> dict:
        if parts == ["api", "session"] and method == "POST":
            return handle_create_session()
        if len(parts) == 4 and parts[:2] == ["api", "session"]:
            sess = _get_session(parts[2])
            leaf = parts[3]
            with sess.lock:
                if leaf == "quiver" and method == "GET":
                    return _quiver_payload(sess)
                if leaf == "quiver" and method == "PUT":
                    return handle_put_quiver(sess, self._body())
                if leaf == "action" and method == "PUT":
                    return handle_put_action(sess, self._body())
                if leaf == "mutate" and method == "POST":
                    return handle_mutate(sess, self._body())
                if leaf == "folded" and method == "GET":
                    return _folded_payload(sess.require_action())
                if leaf == "framed" and method == "GET":
                    return _framed_payload(sess)
                if leaf == "undo" and method == "POST":
                    return handle_undo(sess)
                if leaf == "isomorphic" and method == "POST":
                    return handle_isomorphic(sess, self._body())
                if leaf == "graph" and method == "GET":
                    return handle_graph(sess, parse_qs(url.query))
        raise ApiError(404, "not-found", f"no route for {method} {url.path}")

    def do_GET(self):
        self._route("GET")

    def do_PUT(self):
        self._route("PUT")

    def do_POST(self):
        self._route("POST")

    def do_OPTIONS(self):
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, PUT, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Content-Length", "0")
        self.end_headers()


def make_server(port: int = 0) -> ThreadingHTTPServer:
    server = ThreadingHTTPServer(("127.0.0.1", port), Handler)
    server.daemon_threads = True
    return server


def serve(port: int = 7070) -> None:
    server = make_server(port)
    host, bound = server.server_address[:2]
    print(f"qfold service listening on http://{host}:{bound}")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        server.shutdown()
