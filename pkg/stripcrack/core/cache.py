"""
In-process memo cache for kernel evaluations.
"""
import threading
from collections import OrderedDict
from typing import Any, Dict, Hashable, Iterable, List, Optional, Tuple

import structlog

logger = structlog.get_logger(__name__)


class KernelCache:
    """Thread-safe LRU memo keyed by (namespace, key)."""

    def __init__(self, max_entries: int = 500_000):
        self.max_entries = max_entries
        self._store: "OrderedDict[Tuple[Hashable, Hashable], Any]" = OrderedDict()
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    def get(self, namespace: Hashable, key: Hashable) -> Optional[Any]:
        """Get a cached value, or None."""
        with self._lock:
            full_key = (namespace, key)
            if full_key in self._store:
                self._store.move_to_end(full_key)
                self.hits += 1
                return self._store[full_key]
            self.misses += 1
            return None

    def get_many(self, namespace: Hashable, keys: Iterable[Hashable]) -> Dict[Hashable, Any]:
        """Return the cached subset of keys."""
        found = {}
        with self._lock:
            for key in keys:
                full_key = (namespace, key)
                if full_key in self._store:
                    self._store.move_to_end(full_key)
                    found[key] = self._store[full_key]
                    self.hits += 1
                else:
                    self.misses += 1
        return found

    def set(self, namespace: Hashable, key: Hashable, value: Any) -> bool:
        """Store a value unless one is already present. Returns True if stored."""
        return self.set_many(namespace, [(key, value)]) == 1

    def set_many(self, namespace: Hashable, items: List[Tuple[Hashable, Any]]) -> int:
        """Store values; existing entries win so fills are idempotent."""
        stored = 0
        with self._lock:
            for key, value in items:
                full_key = (namespace, key)
                if full_key in self._store:
                    continue
                self._store[full_key] = value
                stored += 1
            while len(self._store) > self.max_entries:
                self._store.popitem(last=False)
        return stored

    def exists(self, namespace: Hashable, key: Hashable) -> bool:
        """Check if a key is cached."""
        with self._lock:
            return (namespace, key) in self._store

    def clear(self) -> None:
        """Drop every entry and reset counters."""
        with self._lock:
            self._store.clear()
            self.hits = 0
            self.misses = 0
        logger.debug("kernel_cache_cleared")

    def __len__(self) -> int:
        with self._lock:
            return len(self._store)

    def stats(self) -> Dict[str, int]:
        """Hit/miss counters and current size."""
        with self._lock:
            return {"hits": self.hits, "misses": self.misses, "entries": len(self._store)}


# Global cache instance
kernel_cache = KernelCache()
