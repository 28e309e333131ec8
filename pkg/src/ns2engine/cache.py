"""Content-addressed result cache with atomic file replacement.

Entries are keyed by the operation name plus canonical parameters; a key
collision therefore implies payload equality, and re-running a command
may serve the stored payload verbatim.  Entries carry the engine version
tag; entries written by a different version are ignored and overwritten.
"""

from __future__ import annotations

import hashlib
import json
import os
import sys
import tempfile

ENGINE_VERSION = "ns2engine-0.1.0"

ENV_CACHE_DIR = "NS2ENGINE_CACHE_DIR"


def default_cache_dir() -> str:
    env = os.environ.get(ENV_CACHE_DIR)
    if env:
        return env
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(
        os.path.expanduser("~"), ".cache")
    return os.path.join(base, "ns2engine")


class ResultCache:
    """File-per-entry cache; disabled (with a warning) when the directory
    cannot be created or written, in which case every lookup misses."""

    def __init__(self, directory: str | None = None, enabled: bool = True):
        self.directory = directory or default_cache_dir()
        self.enabled = enabled
        if enabled:
            try:
                os.makedirs(self.directory, exist_ok=True)
                probe = tempfile.NamedTemporaryFile(dir=self.directory,
                                                    delete=True)
                probe.close()
            except OSError as exc:
                self.enabled = False
                print("warning: cache disabled (%s)" % exc, file=sys.stderr)

    def _path(self, key: str) -> str:
        digest = hashlib.sha256(key.encode("utf-8")).hexdigest()
        return os.path.join(self.directory, digest + ".json")

    def get(self, key: str) -> str | None:
        if not self.enabled:
            return None
        try:
            with open(self._path(key), "r", encoding="utf-8") as fh:
                entry = json.load(fh)
        except (OSError, ValueError):
            return None
        if entry.get("version") != ENGINE_VERSION or entry.get("key") != key:
            return None
        payload = entry.get("payload")
        return payload if isinstance(payload, str) else None

    def put(self, key: str, payload: str) -> None:
        if not self.enabled:
            return
        entry = {"key": key, "version": ENGINE_VERSION, "payload": payload}
        data = json.dumps(entry, sort_keys=True)
        # write-to-temp then atomic rename: readers never see partial writes
        try:
            fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
            try:
                with os.fdopen(fd, "w", encoding="utf-8") as fh:
                    fh.write(data)
                os.replace(tmp, self._path(key))
            except OSError:
                os.unlink(tmp)
                raise
        except OSError as exc:
            self.enabled = False
            print("warning: cache disabled (%s)" % exc, file=sys.stderr)


def cache_roundtrip(cache: ResultCache, key: str, compute) -> tuple[str, bool]:
    """Serve the payload for the key, computing on a miss.  Returns
    (payload, hit)."""
    payload = cache.get(key)
    if payload is not None:
        return payload, True
    payload = compute()
    cache.put(key, payload)
    return payload, False
