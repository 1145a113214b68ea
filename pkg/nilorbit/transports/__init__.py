"""Network transports for the MCP server."""
