from __future__ import annotations

import argparse
import logging
import os
from pathlib import Path
from typing import Any

from mcp.server.fastmcp import FastMCP

from nilorbit import tools
from nilorbit.config import load_config
from nilorbit.tools import classify, explore, list_suites, mod_p, orbit, scan, verify_suite

logger = logging.getLogger(__name__)
_debug = False

mcp = FastMCP("nilorbit")
CURRENT_CONFIG: dict[str, Any] = {}


def _init_from_config(cfg: dict[str, Any]) -> None:
    """Apply logging settings and register tools from a config dict."""
    tools.configure(cfg)
    global _debug
    _debug = bool(cfg.get("debug", False))
    if _debug and not logging.getLogger().handlers:
        logging.basicConfig(level=logging.DEBUG)
    elif _debug:
        logging.getLogger().setLevel(logging.DEBUG)
    enabled = set(cfg.get("enabled_tools", []))
    tools.register(mcp, enabled)


# Load the default config on import; run_server reuses it when --config is absent.
CURRENT_CONFIG = load_config()
_init_from_config(CURRENT_CONFIG)


def run_server(argv: list[str] | None = None) -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--config", default=None)
    args = parser.parse_args(argv)

    if args.config:
        config_path = os.path.abspath(args.config)
        if not os.path.isfile(config_path):
            raise ValueError(f"Invalid config file path: {config_path}")
        cfg = load_config(Path(config_path))
        _init_from_config(cfg)
        globals()["CURRENT_CONFIG"] = cfg
    else:
        current_dir_config = Path("config.json")
        if current_dir_config.exists():
            cfg = load_config(current_dir_config)
            _init_from_config(cfg)
            globals()["CURRENT_CONFIG"] = cfg
        else:
            cfg = CURRENT_CONFIG

    transport_mode = str(cfg.get("transport_mode", "stdio")).lower()
    port = int(cfg.get("port", 8000))
    ssl_keyfile = cfg.get("ssl_keyfile")
    ssl_certfile = cfg.get("ssl_certfile")

    uvicorn_kwargs = {}
    if ssl_keyfile and ssl_certfile:
        uvicorn_kwargs["ssl_keyfile"] = ssl_keyfile
        uvicorn_kwargs["ssl_certfile"] = ssl_certfile

    match transport_mode:
        case "stdio":
            mcp.run(transport="stdio")
        case "sse":
            try:
                import uvicorn
                from fastapi import FastAPI, Request
            except Exception as exc:
                raise RuntimeError("fastapi and uvicorn are required for SSE mode") from exc

            from nilorbit.transports.sse import mount_sse_routes

            app = FastAPI(title="nilorbit MCP")
            if _debug:

                @app.middleware("http")
                async def log_requests(request: Request, call_next):
                    logger.debug(
                        "Request from %s to %s",
                        request.client.host if request.client else "unknown",
                        request.url.path,
                    )
                    return await call_next(request)

            mount_sse_routes(app, mcp)
            uvicorn.run(app, host="0.0.0.0", port=port, **uvicorn_kwargs)
        case _:
            raise ValueError(f"Invalid TRANSPORT_MODE '{transport_mode}'")


__all__ = [
    "mcp",
    "run_server",
    "tools",
    "orbit",
    "mod_p",
    "scan",
    "classify",
    "explore",
    "verify_suite",
    "list_suites",
]

if __name__ == "__main__":
    run_server()
