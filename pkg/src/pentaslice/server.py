"""WebSocket host for the session protocol.

One connection owns one independent session; its messages are handled
strictly in arrival order by a single coroutine, and connections share
no mutable state.  WebSocket text frames carry the protocol's JSON
texts (the frame header is the length delimiter), which lets the
browser viewer speak the wire format directly.

Malformed WebSocket framing closes the connection (library behavior);
well-framed garbage is answered with an error message and the
connection stays open.
"""

from __future__ import annotations

import asyncio
import threading

from websockets.asyncio.server import serve

from .protocol import ProtocolSession

__all__ = ["SliceServer"]


class SliceServer:
    """Serves sessions over WebSocket, blocking or on a background thread.

    ``session_kwargs`` become each connection's new_session defaults.
    Use run() for the CLI (blocks until interrupted) or start()/stop()
    when embedding, e.g. in tests; start() returns the bound port,
    which matters when asking for port 0.
    """

    def __init__(self, host: str = "127.0.0.1", port: int = 8765, **session_kwargs):
        self.host = host
        self.port = port
        self._session_kwargs = session_kwargs
        self._loop: asyncio.AbstractEventLoop | None = None
        self._stop: asyncio.Future | None = None
        self._thread: threading.Thread | None = None
        self._started = threading.Event()

    async def _handler(self, connection) -> None:
        session = ProtocolSession(**self._session_kwargs)
        async for message in connection:
            if isinstance(message, bytes):
                replies = [
                    ProtocolSession._error(
                        "bad_message", "binary frames are not part of the protocol"
                    )
                ]
            else:
                replies = session.handle_text(message)
            for reply in replies:
                await connection.send(reply)

    async def _serve(self, ready=None) -> None:
        self._loop = asyncio.get_running_loop()
        self._stop = self._loop.create_future()
        async with serve(self._handler, self.host, self.port) as server:
            self.port = next(
                sock.getsockname()[1] for sock in server.sockets
            )
            print(f"listening on ws://{self.host}:{self.port}", flush=True)
            if ready is not None:
                ready.set()
            await self._stop

    def run(self) -> None:
        """Serve until interrupted (Ctrl-C returns cleanly)."""
        try:
            asyncio.run(self._serve())
        except KeyboardInterrupt:
            pass

    def start(self) -> int:
        """Serve on a daemon thread; returns the actually bound port."""
        self._thread = threading.Thread(
            target=lambda: asyncio.run(self._serve(ready=self._started)), daemon=True
        )
        self._thread.start()
        if not self._started.wait(timeout=10.0):
            raise RuntimeError("server failed to start within 10 s")
        return self.port

    def stop(self) -> None:
        if self._loop is not None and self._stop is not None:
            self._loop.call_soon_threadsafe(
                lambda: self._stop.done() or self._stop.set_result(None)
            )
        if self._thread is not None:
            self._thread.join(timeout=10.0)
            self._thread = None
