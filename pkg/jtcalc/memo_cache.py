"""Persistent memo cache for Kostant and Kostka values.

File schema (JSON, versioned):
  {"version": 2,
   "kostant": {"<n>": {"<v1,v2,...>": "<p(v)>"}},
   "kostka":  {"<lam>|<tau>": "<K>"},
   "digest":  "<sha256 of the canonical payload>"}

Values are decimal strings. The cache is an optimization only: a missing,
unreadable, wrong-version or digest-mismatched file is logged and rebuilt
from scratch, never trusted partially.
"""

import hashlib
import json
import logging
import os
import tempfile

import weights

logger = logging.getLogger(__name__)

CACHE_VERSION = 2


class CacheFormatError(Exception):
    pass


class MemoCache:
    def __init__(self, path: str):
        self.path = path

    # --- Load ---

    def load(self) -> bool:
        """Seed the in-memory memo tables from disk. Returns True if the file was used."""
        if not self.path or not os.path.exists(self.path):
            logger.info(f"No memo cache at {self.path or '<unset>'}, starting empty")
            return False
        try:
            with open(self.path, encoding="utf-8") as f:
                document = json.load(f)
            kostant, kostka = self._decode(document)
        except (OSError, ValueError, CacheFormatError) as e:
            logger.warning(f"Ignoring corrupt memo cache {self.path}: {e}; it will be rebuilt")
            return False
        weights.seed_memo(kostant, kostka)
        logger.info(f"Loaded memo cache {self.path}: {sum(len(v) for v in kostant.values())} Kostant, {len(kostka)} Kostka")
        return True

    @staticmethod
    def _decode(document) -> tuple[dict[int, dict[tuple[int, ...], int]], dict]:
        if not isinstance(document, dict) or document.get("version") != CACHE_VERSION:
            raise CacheFormatError(f"expected version {CACHE_VERSION}")
        payload = {key: value for key, value in document.items() if key != "digest"}
        if document.get("digest") != payload_digest(payload):
            raise CacheFormatError("digest mismatch")
        kostant: dict[int, dict[tuple[int, ...], int]] = {}
        for rank, values in document.get("kostant", {}).items():
            n = int(rank)
            table = {}
            for key, value in values.items():
                vector = _vector(key)
                if len(vector) != n:
                    raise CacheFormatError(f"Kostant key {key!r} has wrong rank for n={n}")
                table[vector] = _count(value)
            kostant[n] = table
        kostka = {}
        for key, value in document.get("kostka", {}).items():
            lam_text, sep, tau_text = key.partition("|")
            if not sep:
                raise CacheFormatError(f"Malformed Kostka key {key!r}")
            kostka[(_vector(lam_text), _vector(tau_text))] = _count(value)
        return kostant, kostka

    # --- Save ---

    def save(self) -> None:
        """Write the current memo tables atomically (temp file + rename)."""
        if not self.path:
            return
        snapshot = weights.export_memo()
        payload = {
            "version": CACHE_VERSION,
            "kostant": {
                str(n): {_key(v): str(p) for v, p in sorted(values.items())}
                for n, values in snapshot["kostant"].items()
            },
            "kostka": {f"{_key(lam)}|{_key(tau)}": str(k) for (lam, tau), k in sorted(snapshot["kostka"].items())},
        }
        document = {**payload, "digest": payload_digest(payload)}
        directory = os.path.dirname(os.path.abspath(self.path))
        os.makedirs(directory, exist_ok=True)
        fd, tmp_path = tempfile.mkstemp(prefix=".memo-", dir=directory)
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as f:
                json.dump(document, f, sort_keys=True)
            os.replace(tmp_path, self.path)
        except OSError:
            logger.exception(f"Failed to write memo cache {self.path}")
            if os.path.exists(tmp_path):
                os.unlink(tmp_path)
            return
        logger.info(f"Saved memo cache {self.path}")

    def clear(self) -> None:
        """Delete the cache file and the in-memory tables."""
        weights.clear_memo()
        if self.path and os.path.exists(self.path):
            os.unlink(self.path)


def payload_digest(payload: dict) -> str:
    """sha256 over the sorted, whitespace-free JSON of everything except the digest."""
    canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def _key(vector: tuple[int, ...]) -> str:
    return ",".join(str(v) for v in vector)


def _vector(text: str) -> tuple[int, ...]:
    if not text:
        return ()
    return tuple(int(part) for part in text.split(","))


def _count(value) -> int:
    if not isinstance(value, str):
        raise CacheFormatError(f"Cache values must be decimal strings, got {value!r}")
    count = int(value)
    if count < 0:
        raise CacheFormatError(f"Negative cached count {count}")
    return count
