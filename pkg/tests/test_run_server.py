import importlib
import json
import os
import sys
import types

import pytest


class DummyMCP:
    def __init__(self):
        self.called = None
        self.registered = []

    def run(self, transport="stdio"):
        self.called = transport

    def tool(self):
        def deco(f):
            self.registered.append(f.__name__)
            return f

        return deco


def _load_server(monkeypatch, tmp_path, cfg):
    (tmp_path / "config.json").write_text(json.dumps(cfg))
    monkeypatch.chdir(tmp_path)
    sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))
    sys.modules.pop("server", None)
    server = importlib.import_module("server")
    monkeypatch.setattr(server, "mcp", DummyMCP())
    return server


def _fake_uvicorn(monkeypatch, called):
    def fake_uvicorn_run(app, host="0.0.0.0", port=8000, **kw):
        called["port"] = port
        called["middleware_count"] = len(app.user_middleware)
        called["paths"] = [r.path for r in app.router.routes]
        called.update(kw)

    monkeypatch.setitem(
        sys.modules, "uvicorn", types.SimpleNamespace(run=fake_uvicorn_run)
    )


def test_stdio(monkeypatch, tmp_path):
    server = _load_server(monkeypatch, tmp_path, {"transport_mode": "stdio"})
    server.run_server(["--config", "config.json"])
    assert server.mcp.called == "stdio"


def test_default_transport_is_stdio(monkeypatch, tmp_path):
    server = _load_server(monkeypatch, tmp_path, {})
    server.run_server([])
    assert server.mcp.called == "stdio"


def test_sse(monkeypatch, tmp_path):
    server = _load_server(monkeypatch, tmp_path, {"transport_mode": "sse"})
    called = {}
    _fake_uvicorn(monkeypatch, called)
    server.run_server(["--config", "config.json"])
    assert called["port"] == 8000
    assert "ssl_keyfile" not in called
    assert "/mcp/sse" in called["paths"]
    assert "/messages" in called["paths"]


def test_sse_https(monkeypatch, tmp_path):
    server = _load_server(
        monkeypatch,
        tmp_path,
        {
            "transport_mode": "sse",
            "ssl_keyfile": "key.pem",
            "ssl_certfile": "cert.pem",
        },
    )
    called = {}
    _fake_uvicorn(monkeypatch, called)
    server.run_server(["--config", "config.json"])
    assert called.get("ssl_keyfile") == "key.pem"
    assert called.get("ssl_certfile") == "cert.pem"


def test_port_and_debug(monkeypatch, tmp_path):
    server = _load_server(
        monkeypatch, tmp_path, {"transport_mode": "sse", "port": 1234, "debug": True}
    )
    called = {}
    _fake_uvicorn(monkeypatch, called)
    server.run_server(["--config", "config.json"])
    assert called["port"] == 1234
    assert called["middleware_count"] == 1


def test_enabled_tools(monkeypatch, tmp_path):
    server = _load_server(
        monkeypatch,
        tmp_path,
        {"transport_mode": "stdio", "enabled_tools": ["classify", "scan"]},
    )
    server.run_server(["--config", "config.json"])
    assert sorted(server.mcp.registered) == ["classify", "scan"]


def test_config_reaches_tools(monkeypatch, tmp_path):
    server = _load_server(
        monkeypatch, tmp_path, {"transport_mode": "stdio", "prime_bound": 40}
    )
    monkeypatch.delenv("NILORBIT_PRIME_BOUND", raising=False)
    server.run_server(["--config", "config.json"])
    assert server.scan("1,1", 1)["bound"] == 40


def test_invalid_transport(monkeypatch, tmp_path):
    server = _load_server(monkeypatch, tmp_path, {"transport_mode": "carrier-pigeon"})
    with pytest.raises(ValueError, match="Invalid TRANSPORT_MODE"):
        server.run_server(["--config", "config.json"])


def test_missing_config_path(monkeypatch, tmp_path):
    server = _load_server(monkeypatch, tmp_path, {})
    with pytest.raises(ValueError, match="Invalid config file path"):
        server.run_server(["--config", "nope.json"])
