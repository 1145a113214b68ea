from fastapi import FastAPI, Request
from mcp.server.fastmcp import FastMCP
from mcp.server.sse import SseServerTransport

MESSAGES_PATH = "/messages"
SSE_PATH = "/mcp/sse"


def mount_sse_routes(app: FastAPI, mcp: FastMCP) -> None:
    """Expose ``mcp`` over server-sent events on ``app``."""
    transport = SseServerTransport(MESSAGES_PATH)

    async def sse_endpoint(request: Request):
        async with transport.connect_sse(
            request.scope, request.receive, request._send
        ) as streams:
            await mcp._mcp_server.run(
                streams[0], streams[1], mcp._mcp_server.create_initialization_options()
            )

    app.add_api_route(SSE_PATH, sse_endpoint, methods=["GET"])
    app.mount(MESSAGES_PATH, transport.handle_post_message)
