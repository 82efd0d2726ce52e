"""Shared fixtures: a live service instance and an HTTP client bound to it."""

from __future__ import annotations

import threading

import httpx
import pytest

from atoric.service import make_server


@pytest.fixture()
def server(tmp_path):
    srv = make_server(host="127.0.0.1", port=0, state_path=str(tmp_path / "state.jsonl"))
    thread = threading.Thread(target=srv.serve_forever, daemon=True)
    thread.start()
    yield srv
    srv.shutdown()
    thread.join(timeout=5)
    srv.server_close()
    srv.store.close()


@pytest.fixture()
def client(server):
    base = f"http://127.0.0.1:{server.server_address[1]}"
    with httpx.Client(base_url=base, timeout=10.0) as c:
        yield c
