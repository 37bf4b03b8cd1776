"""On-disk cache for graph enumerations and rank tables.

Each entry is one file: a SHA-256 line followed by the payload bytes.  Entries
whose checksum does not match (truncated, edited, half-written) are deleted
and recomputed.  Writes go to a temporary file that is renamed into place.
"""

from __future__ import annotations

import hashlib
import logging
import os
import re
import tempfile
from pathlib import Path
from typing import Callable

log = logging.getLogger(__name__)

ENV_VAR = "COHFTVOA_CACHE"

_SAFE = re.compile(r"[^A-Za-z0-9_.-]+")


def default_directory() -> Path | None:
    path = os.environ.get(ENV_VAR)
    return Path(path) if path else None


class Cache:
    def __init__(self, directory: str | os.PathLike):
        self.directory = Path(directory)

    def _path(self, key: str) -> Path:
        return self.directory / (_SAFE.sub("_", key) + ".cache")

    def get(self, key: str) -> bytes | None:
        path = self._path(key)
        try:
            raw = path.read_bytes()
        except FileNotFoundError:
            return None
        head, sep, payload = raw.partition(b"\n")
        if not sep or hashlib.sha256(payload).hexdigest().encode() != head:
            log.warning("discarding corrupt cache entry %s", path)
            path.unlink(missing_ok=True)
            return None
        return payload

    def put(self, key: str, payload: bytes) -> None:
        self.directory.mkdir(parents=True, exist_ok=True)
        digest = hashlib.sha256(payload).hexdigest().encode()
        fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=".tmp-")
        try:
            with os.fdopen(fd, "wb") as fh:
                fh.write(digest + b"\n" + payload)
            os.replace(tmp, self._path(key))
        except BaseException:
            Path(tmp).unlink(missing_ok=True)
            raise

    def roundtrip(self, key: str, compute: Callable[[], bytes], accept: Callable[[bytes], bool] | None = None) -> bytes:
        """Return the cached payload for ``key``, computing and storing it on a miss.

        ``accept`` can reject a payload that passes the checksum but fails to
        parse; it is then recomputed like any other corrupt entry.
        """
        payload = self.get(key)
        if payload is not None and (accept is None or accept(payload)):
            return payload
        payload = compute()
        self.put(key, payload)
        return payload
