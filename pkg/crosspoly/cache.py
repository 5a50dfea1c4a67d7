"""
Persistent cache of outer angles γ(n, j).

File format, one entry per line after a version header::

    # crossbound-gamma-cache v1
    n,j,log_gamma,fingerprint

``log_gamma`` is written with 17 significant digits so a reload reproduces
the float bit for bit. Entries are keyed by the quadrature fingerprint; a
lookup under a different quadrature setup is a miss.
"""

import logging
import os
import tempfile
import threading
from collections import Counter
from pathlib import Path

logger = logging.getLogger(__name__)

HEADER = "# crossbound-gamma-cache v1"

Key = tuple[int, int, str]


class GammaCache:
    def __init__(self, path: Path | str | None = None):
        self.path = Path(path) if path is not None else None
        self.entries: dict[Key, float] = {}
        self.hits = 0
        self.misses = 0
        self._dirty = False
        self._lock = threading.Lock()

    @classmethod
    def load(cls, path: Path | str) -> "GammaCache":
        cache = cls(path)
        if not cache.path.exists():
            logger.info("No gamma cache at %s; starting empty", cache.path)
            return cache
        with cache.path.open(encoding="utf-8") as handle:
            first = handle.readline().rstrip("\n")
            if first != HEADER:
                logger.warning("Ignoring gamma cache %s with unknown header %r", cache.path, first)
                return cache
            for line_number, line in enumerate(handle, start=2):
                line = line.strip()
                if not line:
                    continue
                try:
                    n, j, log_gamma, fingerprint = line.split(",")
                    cache.entries[(int(n), int(j), fingerprint)] = float(log_gamma)
                except ValueError:
                    logger.warning("Skipping malformed gamma cache line %d: %r", line_number, line)
        logger.info("Loaded %d gamma cache entries from %s", len(cache.entries), cache.path)
        return cache

    def get(self, n: int, j: int, fingerprint: str) -> float | None:
        value = self.entries.get((n, j, fingerprint))
        if value is None:
            self.misses += 1
        else:
            self.hits += 1
        return value

    def put(self, n: int, j: int, log_gamma: float, fingerprint: str) -> None:
        with self._lock:
            self.entries[(n, j, fingerprint)] = log_gamma
            self._dirty = True

    def __len__(self) -> int:
        return len(self.entries)

    def save(self) -> None:
        """Atomically replace the cache file with the current entries."""
        if self.path is None:
            return
        with self._lock:
            if not self._dirty:
                return
            rows = sorted(self.entries.items())
            self.path.parent.mkdir(parents=True, exist_ok=True)
            descriptor, temporary = tempfile.mkstemp(
                dir=self.path.parent, prefix=".gamma-", suffix=".tmp"
            )
            try:
                with os.fdopen(descriptor, "w", encoding="utf-8") as handle:
                    handle.write(HEADER + "\n")
                    for (n, j, fingerprint), log_gamma in rows:
                        handle.write(f"{n},{j},{log_gamma:.17g},{fingerprint}\n")
                os.replace(temporary, self.path)
            except BaseException:
                Path(temporary).unlink(missing_ok=True)
                raise
            self._dirty = False
        logger.info("Saved %d gamma cache entries to %s (%d hits, %d misses)",
                    len(rows), self.path, self.hits, self.misses)

    def clear(self) -> int:
        """Drop every entry and delete the file; returns how many entries were dropped."""
        with self._lock:
            dropped = len(self.entries)
            self.entries.clear()
            self._dirty = False
            if self.path is not None:
                self.path.unlink(missing_ok=True)
        logger.info("Cleared %d gamma cache entries", dropped)
        return dropped

    def summary(self) -> dict:
        dimensions = sorted({n for n, _, _ in self.entries})
        return {
            "path": str(self.path) if self.path else None,
            "entries": len(self.entries),
            "dimensions": len(dimensions),
            "min_n": dimensions[0] if dimensions else None,
            "max_n": dimensions[-1] if dimensions else None,
            "fingerprints": dict(sorted(Counter(f for _, _, f in self.entries).items())),
        }
