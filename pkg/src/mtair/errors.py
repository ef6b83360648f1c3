"""Error type shared across the package.

Every failure carries a stable machine-readable code so the CLI and the
HTTP API can map errors without parsing message text.
"""

from __future__ import annotations


class MtairError(Exception):
    """Exception with a stable code string (e.g. "KIND_MISMATCH")."""

    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code
        self.message = message


def require(condition: bool, code: str, message: str) -> None:
    if not condition:
        raise MtairError(code, message)
