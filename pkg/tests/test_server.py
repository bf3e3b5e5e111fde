import json
import threading
import urllib.error
import urllib.request

import pytest

from qfold import corpus
from qfold.server import make_server


@pytest.fixture(scope="module")
def base_url():
    server = make_server(0)
    port = server.server_address[1]
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    yield f"http://127.0.0.1:{port}/api"
    server.shutdown()


def call(base, method, path, body=None):
    data = json.dumps(body).encode() if body is not None else None
    req = urllib.request.Request(
        base + path, data=data, method=method,
        headers={"Content-Type": "application/json"},
    )
    try:
        with urllib.request.urlopen(req) as resp:
            return resp.status, json.loads(resp.read())
    except urllib.error.HTTPError as err:
        return err.code, json.loads(err.read())


def crossed_chains_payloads():
    qa = corpus.crossed_chains_action()
    quiver = qa.quiver.to_json()
    action = {
        "generators": [g.to_json() for g in qa.group.generators],
        "vertex_maps": [list(m) for m in qa.action.gen_maps],
    }
    return quiver, action


def new_session(base):
    status, out = call(base, "POST", "/session")
    assert status == 200
    return out["id"]


def test_session_lifecycle_with_folding_and_undo(base_url):
    quiver, action = crossed_chains_payloads()
    sid = new_session(base_url)

    status, out = call(base_url, "PUT", f"/session/{sid}/quiver", quiver)
    assert status == 200 and out["n"] == 6

    status, out = call(base_url, "PUT", f"/session/{sid}/action", action)
    assert status == 200
    assert out["orbits"] == [[1, 2], [3, 4], [5, 6]]

    status, folded0 = call(base_url, "GET", f"/session/{sid}/folded")
    assert status == 200
    assert folded0["pretty"] == [
        ["0", "1", "0"],
        ["-1", "0", "-1 + eps"],
        ["0", "1 - eps", "0"],
    ]

    status, out = call(base_url, "POST", f"/session/{sid}/mutate", {"orbit": 2, "rule": "auto"})
    assert status == 200
    assert out["mutated"]["rule"] == "standard"

    status, folded1 = call(base_url, "GET", f"/session/{sid}/folded")
    assert folded1 != folded0

    status, out = call(base_url, "POST", f"/session/{sid}/undo")
    assert status == 200

    status, folded2 = call(base_url, "GET", f"/session/{sid}/folded")
    assert json.dumps(folded2) == json.dumps(folded0)


def test_vertex_mutation_updates_framed_colors(base_url):
    sid = new_session(base_url)
    call(base_url, "PUT", f"/session/{sid}/quiver",
         {"n": 2, "frozen": [], "b": [[0, 1], [-1, 0]]})

    status, framed = call(base_url, "GET", f"/session/{sid}/framed")
    assert status == 200
    assert framed["colors"] == {"1": "green", "2": "green"}
    assert framed["quiver"]["n"] == 4

    call(base_url, "POST", f"/session/{sid}/mutate", {"vertex": 1})
    _, framed = call(base_url, "GET", f"/session/{sid}/framed")
    assert framed["colors"] == {"1": "red", "2": "green"}

    call(base_url, "POST", f"/session/{sid}/mutate", {"vertex": 2})
    _, framed = call(base_url, "GET", f"/session/{sid}/framed")
    assert framed["colors"] == {"1": "red", "2": "red"}


def test_orbit_mutation_with_cyclic_orbit(base_url):
    qa = corpus.triple_chain_action(2)
    sid = new_session(base_url)
    call(base_url, "PUT", f"/session/{sid}/quiver", qa.quiver.to_json())
    action = {
        "generators": [g.to_json() for g in qa.group.generators],
        "vertex_maps": [list(m) for m in qa.action.gen_maps],
    }
    status, out = call(base_url, "PUT", f"/session/{sid}/action", action)
    assert status == 200

    status, out = call(base_url, "POST", f"/session/{sid}/mutate", {"orbit": 1})
    assert status == 200
    assert out["mutated"]["rule"] == "diag3"
    assert out["mutated"]["steps"] == [1, 2, 3, 1]

    status, out = call(base_url, "POST", f"/session/{sid}/mutate", {"orbit": 1})
    assert status == 200
    _, folded = call(base_url, "GET", f"/session/{sid}/folded")
    from qfold.folding import fold

    assert folded["entries"] == fold(qa).to_json()["entries"]


def test_graph_endpoint(base_url):
    sid = new_session(base_url)
    call(base_url, "PUT", f"/session/{sid}/quiver",
         {"n": 2, "frozen": [], "b": [[0, 1], [-1, 0]]})
    status, out = call(base_url, "GET", f"/session/{sid}/graph?budget=100")
    assert status == 200
    assert out["nodes"] == 2
    assert out["complete"] is True


def test_error_shapes(base_url):
    status, out = call(base_url, "GET", "/session/nope/quiver")
    assert status == 404 and out["error"] == "no-session"

    sid = new_session(base_url)
    status, out = call(base_url, "GET", f"/session/{sid}/folded")
    assert status == 409 and out["error"] == "no-action"

    status, out = call(base_url, "POST", f"/session/{sid}/undo")
    assert status == 409 and out["error"] == "nothing-to-undo"

    quiver, action = crossed_chains_payloads()
    call(base_url, "PUT", f"/session/{sid}/quiver", quiver)
    bad = dict(action)
    bad["vertex_maps"] = [[2, 1, 3, 4, 5, 6]]
    status, out = call(base_url, "PUT", f"/session/{sid}/action", bad)
    assert status == 409 and out["error"] == "invalid-action"
    assert out["witness"]["generator"] == 1

    status, out = call(base_url, "POST", f"/session/{sid}/mutate", {"vertex": 99})
    assert status == 400 and out["error"] == "bad-vertex"

    status, out = call(base_url, "POST", f"/session/{sid}/mutate", {})
    assert status == 400 and out["error"] == "bad-request"


def test_isomorphic_endpoint(base_url):
    sid = new_session(base_url)
    start = {"n": 4, "frozen": [],
             "b": [[0, 1, 0, -1], [-1, 0, 1, 0], [0, -1, 0, 1], [1, 0, -1, 0]]}
    call(base_url, "PUT", f"/session/{sid}/quiver", start)
    for k in (1, 2, 3, 4, 2, 1):
        status, _ = call(base_url, "POST", f"/session/{sid}/mutate", {"vertex": k})
        assert status == 200
    status, out = call(base_url, "POST", f"/session/{sid}/isomorphic", {"quiver": start})
    assert status == 200
    assert out["isomorphic"] is True
    swapped = sorted(out["witness"][2:])
    assert out["witness"][:2] == [1, 2] and swapped == [3, 4]

    other = {"n": 4, "frozen": [], "b": [[0, 0, 0, 0]] * 4}
    status, out = call(base_url, "POST", f"/session/{sid}/isomorphic", {"quiver": other})
    assert out["isomorphic"] is False


def test_put_quiver_clears_action(base_url):
    quiver, action = crossed_chains_payloads()
    sid = new_session(base_url)
    call(base_url, "PUT", f"/session/{sid}/quiver", quiver)
    call(base_url, "PUT", f"/session/{sid}/action", action)
    call(base_url, "PUT", f"/session/{sid}/quiver", quiver)
    status, out = call(base_url, "GET", f"/session/{sid}/folded")
    assert status == 409 and out["error"] == "no-action"


def test_sessions_are_independent(base_url):
    quiver, action = crossed_chains_payloads()
    sids = [new_session(base_url) for _ in range(4)]
    threads = []
    failures = []

    def drive(sid):
        try:
            call(base_url, "PUT", f"/session/{sid}/quiver", quiver)
            call(base_url, "PUT", f"/session/{sid}/action", action)
            for _ in range(3):
                status, _ = call(base_url, "POST", f"/session/{sid}/mutate", {"orbit": 1})
                assert status == 200
            status, folded = call(base_url, "GET", f"/session/{sid}/folded")
            assert status == 200
        except AssertionError as exc:
            failures.append((sid, exc))

    for sid in sids:
        t = threading.Thread(target=drive, args=(sid,))
        threads.append(t)
        t.start()
    for t in threads:
        t.join()
    assert not failures
