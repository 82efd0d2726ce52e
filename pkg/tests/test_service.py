"""HTTP session service: endpoints, error codes, durable state."""

import threading

from atoric.service import Store, make_server


def test_healthz(client):
    r = client.get("/healthz")
    assert r.status_code == 200
    assert r.json() == {"ok": True}


def test_create_get_delete_session(client):
    r = client.post("/diagram", json={"template": {"kind": "wedge", "n": 4, "a": 1}})
    assert r.status_code == 201
    body = r.json()
    sid = body["id"]
    assert len(sid) == 32
    assert body["bounded"] is False
    assert body["area2"] is None
    assert body["moves"] == 0
    assert body["vertices"][0]["label"] == "1/4(1,1)"

    r = client.get(f"/diagram/{sid}")
    assert r.status_code == 200
    assert r.json() == body

    r = client.delete(f"/diagram/{sid}")
    assert r.status_code == 200
    r = client.get(f"/diagram/{sid}")
    assert r.status_code == 404
    assert r.json()["code"] == "not_found"


def test_create_from_diagram_json(client):
    r = client.post("/diagram", json={"template": {"kind": "pi-minus"}})
    sid = r.json()["id"]
    snapshot = r.json()["diagram"]
    r2 = client.post("/diagram", json={"diagram": snapshot})
    assert r2.status_code == 201
    assert r2.json()["diagram"] == snapshot
    assert r2.json()["id"] != sid


def test_apply_undo_flow(client):
    r = client.post("/diagram", json={"template": {"kind": "wedge", "n": 4, "a": 1}})
    sid = r.json()["id"]

    r = client.post(f"/diagram/{sid}/apply", json={"move": "smooth", "vertex": 0})
    assert r.status_code == 200
    assert r.json()["moves"] == 1

    r = client.post(f"/diagram/{sid}/apply",
                    json={"move": "truncate", "where": "end",
                          "direction": [-1, 0], "depth": "3"})
    assert r.status_code == 200
    body = r.json()
    assert body["bounded"] is True
    assert body["area2"] == "36"
    assert [v["label"] for v in body["vertices"]] == ["B_{2,1}", "smooth", "smooth"]

    r = client.post(f"/diagram/{sid}/undo", json={})
    assert r.status_code == 200
    assert r.json()["moves"] == 1
    assert r.json()["bounded"] is False

    r = client.post(f"/diagram/{sid}/undo", json={})
    assert r.status_code == 200 and r.json()["moves"] == 0
    r = client.post(f"/diagram/{sid}/undo", json={})
    assert r.status_code == 409
    assert r.json()["code"] == "nothing_to_undo"


def test_blocked_mutation_is_409_and_state_survives(client):
    r = client.post("/diagram", json={"template": {"kind": "pi-minus"}})
    sid = r.json()["id"]
    r = client.post(f"/diagram/{sid}/apply", json={"move": "trade", "vertex": 0})
    assert r.status_code == 200
    before = client.get(f"/diagram/{sid}").json()

    r = client.post(f"/diagram/{sid}/apply", json={"move": "mutate", "cut": 1})
    assert r.status_code == 409
    err = r.json()
    assert err["code"] == "mutation_blocked"
    assert "crosses another cut" in err["message"]
    assert client.get(f"/diagram/{sid}").json() == before


def test_invalid_moves_are_400(client):
    r = client.post("/diagram", json={"template": {"kind": "wedge", "n": 4, "a": 1}})
    sid = r.json()["id"]
    r = client.post(f"/diagram/{sid}/apply", json={"move": "teleport"})
    assert r.status_code == 400
    assert r.json()["code"] == "invalid_move"
    r = client.post(f"/diagram/{sid}/apply", json={"move": "smooth", "vertex": 9})
    assert r.status_code == 400
    r = client.post("/diagram", json={"template": {"kind": "wedge", "n": 4, "a": 2}})
    assert r.status_code == 400
    assert r.json()["code"] == "bad_request"


def test_render_endpoint(client):
    r = client.post("/diagram", json={"template": {"kind": "wedge", "n": 4, "a": 1}})
    sid = r.json()["id"]
    # unbounded without window: 400
    r = client.get(f"/diagram/{sid}/render.svg")
    assert r.status_code == 400
    r = client.get(f"/diagram/{sid}/render.svg",
                   params={"window": "-1,-1,8,5", "width": "300", "height": "200"})
    assert r.status_code == 200
    assert r.headers["content-type"].startswith("image/svg+xml")
    assert r.text.startswith("<svg")
    assert 'width="300" height="200"' in r.text
    r = client.get(f"/diagram/{sid}/render.svg",
                   params={"window": "-1,-1,8,5", "labels": "0"})
    assert "<text" not in r.text


def test_singularity_endpoint(client):
    r = client.get("/singularity/11/3")
    assert r.status_code == 200
    b = r.json()
    assert b["label"] == "1/11(1,3)"
    assert b["hj"] == [4, 3]
    assert b["discrepancies"] == ["-7/11", "-6/11"]
    assert b["alphas"] == ["4/11", "5/11"]
    assert b["class"] == "log-terminal"
    assert b["t"] is None

    b = client.get("/singularity/25/14").json()
    assert b["t"] == {"d": 1, "p": 5, "q": 3}
    assert b["milnor"]["rational_ball"] is True

    assert client.get("/singularity/4/2").status_code == 400
    assert client.get("/singularity/x/y").status_code == 400


def test_presolutions_endpoint(client):
    r = client.post("/presolutions", json={"n": 19, "a": 7})
    assert r.status_code == 200
    b = r.json()
    assert b["count"] == 3
    multisets = sorted(sorted(tuple(t) for t in item["vertex_types"]
                              if tuple(t) != (1, 0)) for item in b["items"])
    assert multisets == [[(2, 1)], [(4, 1)], [(4, 1), (9, 2)]]
    assert client.post("/presolutions", json={"n": 4}).status_code == 400
    assert client.post("/presolutions", json={"n": 4, "a": 2}).status_code == 400


def test_404_and_bad_ids(client):
    assert client.get("/nothing/here").status_code == 404
    assert client.get("/diagram/zzzz").status_code == 404
    assert client.get("/diagram/" + "0" * 32).status_code == 404
    assert client.post("/diagram/" + "0" * 32 + "/apply",
                       json={"move": "mutate", "cut": 0}).status_code == 404


def test_cors_preflight(client):
    r = client.options("/diagram")
    assert r.status_code == 204
    assert r.headers["access-control-allow-origin"] == "*"


def test_persistence_across_restart(tmp_path):
    state = str(tmp_path / "state.jsonl")
    store = Store(state)
    sid, _ = store.create({"template": {"kind": "wedge", "n": 4, "a": 1}})
    store.apply(sid, {"move": "smooth", "vertex": 0})
    store.apply(sid, {"move": "truncate", "where": "end",
                      "direction": [-1, 0], "depth": "3"})
    sid2, _ = store.create({"template": {"kind": "pi-minus"}})
    store.apply(sid2, {"move": "trade", "vertex": 0})
    store.undo(sid2)
    store.delete(sid2)
    snapshot = store.get(sid).diagram
    store.close()

    again = Store(state)
    try:
        d = again.get(sid).diagram
        assert d.boundary == snapshot.boundary
        assert d.cuts == snapshot.cuts
        assert d.log == snapshot.log
        from atoric.service import ApiError

        try:
            again.get(sid2)
            raise AssertionError("deleted session survived restart")
        except ApiError as e:
            assert e.status == 404
    finally:
        again.close()


def test_concurrent_applies_serialize(client):
    r = client.post("/diagram", json={"template": {"kind": "wedge", "n": 4, "a": 1}})
    sid = r.json()["id"]
    client.post(f"/diagram/{sid}/apply", json={"move": "smooth", "vertex": 0})
    client.post(f"/diagram/{sid}/apply",
                json={"move": "truncate", "where": "end",
                      "direction": [-1, 0], "depth": "3"})

    codes = []

    def worker():
        import httpx

        with httpx.Client(base_url=str(client.base_url), timeout=10.0) as c:
            for _ in range(5):
                r1 = c.post(f"/diagram/{sid}/apply", json={"move": "mutate", "cut": 0})
                codes.append(r1.status_code)

    threads = [threading.Thread(target=worker) for _ in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    # every request either applied or was cleanly rejected; state stays sane
    assert all(c in (200, 409) for c in codes)
    final = client.get(f"/diagram/{sid}")
    assert final.status_code == 200
    assert final.json()["moves"] == 2 + codes.count(200)
    assert final.json()["area2"] == "36"
